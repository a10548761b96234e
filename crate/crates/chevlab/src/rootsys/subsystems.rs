//! Closed-subsystem enumeration by the Borel-de Siebenthal algorithm:
//! recursively extend each irreducible component of a base by its lowest root
//! and delete nodes, collecting the results up to Weyl conjugacy.

use super::{LengthClass, RootError, RootIx, RootSystem};
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};

#[derive(Clone, Debug, Serialize)]
pub struct Subsystem {
    /// Type label; tilde-prefixed components consist of short roots, e.g. "A1x~A1".
    pub label: String,
    /// An embedded simple system for the subsystem.
    pub simple_roots: Vec<RootIx>,
    /// Every root of the closed subsystem, sorted by index.
    pub all_roots: Vec<RootIx>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsystemAnnotation {
    pub label: String,
    pub roots: Vec<RootIx>,
    pub note: String,
}

/// Roots of the closed subsystem generated by a base: close {+/-base} under
/// addition of roots.
fn closed_span(sys: &RootSystem, base: &[RootIx]) -> BTreeSet<RootIx> {
    let mut set: BTreeSet<RootIx> = base.iter().copied().collect();
    for &b in base {
        set.insert(sys.neg(b));
    }
    loop {
        let mut grew = false;
        let items: Vec<RootIx> = set.iter().copied().collect();
        for &a in &items {
            for &b in &items {
                if let Some(c) = sys.root_sum(a, b) {
                    if set.insert(c) {
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    set
}

/// Exhaustive closure check: the sum of two member roots that is a root is a member.
pub fn is_closed(sys: &RootSystem, roots: &[RootIx]) -> bool {
    let set: HashSet<RootIx> = roots.iter().copied().collect();
    for &a in roots {
        for &b in roots {
            if let Some(c) = sys.root_sum(a, b) {
                if !set.contains(&c) {
                    return false;
                }
            }
        }
    }
    true
}

/// Canonical representative of a root set under the Weyl group: the minimum
/// sorted index vector over the orbit.
fn weyl_canonical(sys: &RootSystem, roots: &BTreeSet<RootIx>) -> Vec<RootIx> {
    let start: Vec<RootIx> = roots.iter().copied().collect();
    let mut best = start.clone();
    let mut seen: HashSet<Vec<RootIx>> = HashSet::new();
    seen.insert(start.clone());
    let mut stack = vec![start];
    while let Some(cur) = stack.pop() {
        for i in 0..sys.rank() {
            let mut img: Vec<RootIx> = cur.iter().map(|&r| sys.reflect(sys.simple(i), r)).collect();
            img.sort_unstable();
            if seen.insert(img.clone()) {
                if img < best {
                    best = img.clone();
                }
                stack.push(img);
            }
        }
    }
    best
}

/// Irreducible components of a base (indices into `base`).
fn components(sys: &RootSystem, base: &[RootIx]) -> Vec<Vec<usize>> {
    let n = base.len();
    let mut comp: Vec<Option<usize>> = vec![None; n];
    let mut out: Vec<Vec<usize>> = vec![];
    for s in 0..n {
        if comp[s].is_some() {
            continue;
        }
        let id = out.len();
        let mut stack = vec![s];
        comp[s] = Some(id);
        let mut members = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if comp[j].is_none()
                    && sys.inner(&sys.root(base[i]).coeffs, &sys.root(base[j]).coeffs) != 0
                {
                    comp[j] = Some(id);
                    members.push(j);
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Highest root of the subsystem generated by an irreducible base, relative to
/// that base: climb from a base root by adding base roots while the sum stays
/// in the span. Every positive root of an irreducible system climbs to the
/// highest root this way.
fn component_highest(sys: &RootSystem, base: &[RootIx]) -> RootIx {
    let span = closed_span(sys, base);
    let mut cur = base[0];
    'climb: loop {
        for &b in base {
            if let Some(s) = sys.root_sum(cur, b) {
                if span.contains(&s) {
                    cur = s;
                    continue 'climb;
                }
            }
        }
        return cur;
    }
}

fn classify_component(sys: &RootSystem, base: &[RootIx]) -> String {
    let n = base.len();
    let two_lengths = sys
        .roots()
        .iter()
        .any(|r| r.length_class == LengthClass::Short);
    let all_short = two_lengths
        && base
            .iter()
            .all(|&b| sys.root(b).length_class == LengthClass::Short);
    let tilde = if all_short { "~" } else { "" };
    if n == 1 {
        return format!("{}A1", tilde);
    }
    // bond multiplicity between i and j: <a_i, a_j^vee> * <a_j, a_i^vee>
    let mut deg = vec![0usize; n];
    let mut bonds = vec![];
    for i in 0..n {
        for j in i + 1..n {
            let m = sys.pairing(base[i], base[j]) * sys.pairing(base[j], base[i]);
            if m != 0 {
                deg[i] += 1;
                deg[j] += 1;
                bonds.push((i, j, m));
            }
        }
    }
    let max_bond = bonds.iter().map(|&(_, _, m)| m).max().unwrap_or(0);
    let letter = match max_bond {
        3 => "G".to_string(),
        2 => {
            if n == 2 {
                "B".to_string()
            } else {
                // B has one short simple root, C has n-1
                let shorts = base
                    .iter()
                    .filter(|&&b| sys.root(b).length_class == LengthClass::Short)
                    .count();
                if shorts == 1 { "B".to_string() } else { "C".to_string() }
            }
        }
        _ => {
            // simply laced: A (chain), D (fork arms 1,1,k), E (arms 1,2,k)
            if deg.iter().all(|&d| d <= 2) {
                "A".to_string()
            } else {
                let center = deg.iter().position(|&d| d == 3).unwrap();
                let mut arms: Vec<usize> = vec![];
                for (i, j, _) in bonds.iter().filter(|&&(i, j, _)| i == center || j == center) {
                    let start = if *i == center { *j } else { *i };
                    // walk away from center
                    let mut len = 1;
                    let mut prev = center;
                    let mut cur = start;
                    loop {
                        let next = bonds
                            .iter()
                            .filter(|&&(a, b, _)| a == cur || b == cur)
                            .map(|&(a, b, _)| if a == cur { b } else { a })
                            .find(|&x| x != prev);
                        match next {
                            Some(x) => {
                                prev = cur;
                                cur = x;
                                len += 1;
                            }
                            None => break,
                        }
                    }
                    arms.push(len);
                }
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, _] => "D".to_string(),
                    [1, 2, _] => "E".to_string(),
                    _ => "?".to_string(),
                }
            }
        }
    };
    if n == 4 && letter == "B" {
        // distinguish B4 from F4-shaped bases: F4 never arises as a proper base here
    }
    if max_bond == 2 && n >= 3 {
        // already resolved above
    }
    let letter = if max_bond == 2 && n == 2 {
        // rank-2 double bond: B2 = C2; use B when the first-listed simple is long
        "B".to_string()
    } else {
        letter
    };
    format!("{}{}{}", tilde, letter, n)
}

fn label_of(sys: &RootSystem, base: &[RootIx]) -> String {
    let comps = components(sys, base);
    let mut labels: Vec<String> = comps
        .iter()
        .map(|c| {
            let cb: Vec<RootIx> = c.iter().map(|&i| base[i]).collect();
            classify_component(sys, &cb)
        })
        .collect();
    labels.sort_by(|a, b| {
        let rank = |s: &str| -> usize { s.trim_start_matches('~')[1..].parse().unwrap_or(0) };
        rank(b).cmp(&rank(a)).then(a.cmp(b))
    });
    labels.join("x")
}

pub(crate) fn enumerate(sys: &RootSystem) -> Result<Vec<Subsystem>, RootError> {
    if sys.rank() > 4 {
        return Err(RootError::RankTooLarge(sys.rank()));
    }
    let full_base: Vec<RootIx> = (0..sys.rank()).map(|i| sys.simple(i)).collect();
    let full_span = closed_span(sys, &full_base);

    let mut seen_bases: HashSet<Vec<RootIx>> = HashSet::new();
    let mut by_canonical: std::collections::HashMap<Vec<RootIx>, Subsystem> =
        std::collections::HashMap::new();
    let mut queue: Vec<Vec<RootIx>> = vec![full_base.clone()];
    seen_bases.insert(full_base.clone());

    while let Some(base) = queue.pop() {
        if base.is_empty() {
            continue;
        }
        let span = closed_span(sys, &base);
        if span.len() < full_span.len() {
            let canon = weyl_canonical(sys, &span);
            by_canonical.entry(canon).or_insert_with(|| {
                let mut all: Vec<RootIx> = span.iter().copied().collect();
                all.sort_unstable();
                Subsystem {
                    label: label_of(sys, &base),
                    simple_roots: base.clone(),
                    all_roots: all,
                }
            });
        }
        // children: delete one node
        for k in 0..base.len() {
            let mut child = base.clone();
            child.remove(k);
            child.sort_unstable();
            if !child.is_empty() && seen_bases.insert(child.clone()) {
                queue.push(child);
            }
        }
        // children: extend one irreducible component by its lowest root, then
        // delete one node of that component
        for comp in components(sys, &base) {
            let cb: Vec<RootIx> = comp.iter().map(|&i| base[i]).collect();
            let lowest = sys.neg(component_highest(sys, &cb));
            if cb.contains(&lowest) {
                continue;
            }
            for &del in &comp {
                let mut child: Vec<RootIx> = base
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != del)
                    .map(|(_, &r)| r)
                    .collect();
                child.push(lowest);
                child.sort_unstable();
                if seen_bases.insert(child.clone()) {
                    queue.push(child);
                }
            }
        }
    }

    let mut out: Vec<Subsystem> = by_canonical.into_values().collect();
    if out.is_empty() {
        // no proper nonempty closed subsystem (type A1): report the system itself
        let mut all: Vec<RootIx> = full_span.iter().copied().collect();
        all.sort_unstable();
        out.push(Subsystem {
            label: label_of(sys, &full_base),
            simple_roots: full_base,
            all_roots: all,
        });
    }
    for s in &out {
        debug_assert!(is_closed(sys, &s.all_roots));
    }
    out.sort_by(|a, b| {
        b.all_roots
            .len()
            .cmp(&a.all_roots.len())
            .then(a.label.cmp(&b.label))
            .then(a.all_roots.cmp(&b.all_roots))
    });
    Ok(out)
}

/// Duality-tagged annotations: images of enumerated subsystems under the
/// graph morphism tau that are not themselves closed subsystems. These are the
/// special-characteristic configurations (C4 and short D4 in F4 at p = 2, the
/// short A2 in G2 at p = 3).
pub(crate) fn annotations(sys: &RootSystem) -> Vec<SubsystemAnnotation> {
    let Ok(tau) = sys.duality_map() else {
        return vec![];
    };
    let Ok(subs) = sys.enumerate_subsystems() else {
        return vec![];
    };
    let p = if sys.label() == "G2" { 3 } else { 2 };
    let mut out: Vec<SubsystemAnnotation> = vec![];
    let mut seen: HashSet<Vec<RootIx>> = HashSet::new();
    for s in &subs {
        let mut img: Vec<RootIx> = s.all_roots.iter().map(|&r| tau[r]).collect();
        img.sort_unstable();
        if is_closed(sys, &img) {
            continue;
        }
        if !seen.insert(img.clone()) {
            continue;
        }
        let dual_label: String = s
            .label
            .split('x')
            .map(|c| {
                let (tilde, rest) = if let Some(r) = c.strip_prefix('~') {
                    (true, r)
                } else {
                    (false, c)
                };
                let flipped = match rest.chars().next().unwrap() {
                    'B' => format!("C{}", &rest[1..]),
                    'C' => format!("B{}", &rest[1..]),
                    _ => rest.to_string(),
                };
                if tilde { flipped } else { format!("~{}", flipped) }
            })
            .collect::<Vec<_>>()
            .join("x");
        // drop the tilde marker on mixed-length images
        let has_long = img
            .iter()
            .any(|&r| sys.root(r).length_class == LengthClass::Long);
        let has_short = img
            .iter()
            .any(|&r| sys.root(r).length_class == LengthClass::Short);
        let label = if has_long && has_short {
            dual_label.replace('~', "")
        } else if has_long {
            dual_label.replace('~', "")
        } else {
            dual_label
        };
        out.push(SubsystemAnnotation {
            label,
            roots: img,
            note: format!(
                "image of {} under the graph morphism; closed as a subgroup only when p = {}",
                s.label, p
            ),
        });
    }
    out.sort_by(|a, b| b.roots.len().cmp(&a.roots.len()).then(a.label.cmp(&b.label)));
    out
}
