//! Command-line front end: root-system and parabolic reports, pre-cocycle
//! spaces, relation verification of the published complement families, lift
//! searches, restriction reports and Jordan data.
//!
//! Exit codes: 0 on success/pass, 1 on a failed verification or exhausted
//! lift, 2 on usage or input errors.

use chevlab::chevrep::{RepSpec, build_rep};
use chevlab::complab::{
    self, Family, LiftOutcome, build_complement, check_a1_relations, check_borel_relations,
    lift::LiftAnsatz, lift_search, restriction_report, subsystem_module,
};
use chevlab::ff::{FF, Fq, gf};
use chevlab::modax;
use chevlab::parab;
use chevlab::rootsys::RootSystem;
use chevlab::sl2coh::{self, A1ProductEmbedding};
use clap::{Parser, Subcommand};
use serde::Deserialize;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "chevlab", version, about = "Exceptional Chevalley group laboratory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Level/shape filtration of a standard parabolic.
    Levels {
        #[arg(long)]
        system: String,
        /// 1-based simple roots of the Levi, comma separated (empty = Borel)
        #[arg(long, default_value = "")]
        parabolic: String,
        #[arg(long)]
        json: bool,
    },
    /// Closed subsystems (Borel-de Siebenthal) and duality annotations.
    Subsystems {
        #[arg(long)]
        system: String,
        #[arg(long)]
        json: bool,
    },
    /// Jordan partition of a unipotent word on the 26-space (F4) or 7-space (G2).
    Jordan {
        /// product of root elements, e.g. "0001=1" or "0001=1,0010=z"
        #[arg(long)]
        element: String,
        #[arg(long, default_value = "F4")]
        system: String,
        #[arg(long)]
        p: u32,
        /// field size for coefficients (default p)
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Pre-cocycle space of an embedded subgroup (spec file).
    Precocycle {
        specfile: String,
        #[arg(long)]
        json: bool,
    },
    /// Verify the rank-one relations of a published family (spec file).
    Verify {
        specfile: String,
        #[arg(long)]
        json: bool,
    },
    /// Search for cocycle lifts within the correction ansatz (spec file).
    Lift {
        specfile: String,
        #[arg(long)]
        json: bool,
    },
    /// Restriction report of a family or subsystem on the module (spec file).
    Restrict {
        specfile: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Export the parametrized root-element matrices as JSON.
    Export {
        #[arg(long)]
        system: String,
        #[arg(long)]
        p: u32,
        /// one of: folded (27/8-space), quotient (26/7-space)
        #[arg(long, default_value = "quotient")]
        module: String,
    },
}

/// The JSON task description consumed by precocycle/verify/lift/restrict.
/// Unknown keys are rejected.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    system: String,
    p: u32,
    /// analysis field size; default p^2
    #[serde(default)]
    q: Option<u32>,
    /// 1-based simple roots of the Levi (precocycle)
    #[serde(default)]
    parabolic: Option<Vec<usize>>,
    #[serde(default)]
    embedding: Option<EmbeddingSpec>,
    /// family name (verify/lift/restrict):
    /// long-a1 | a1a1-p24 | a1a1-p13 | b3-001 | b3-021 | g2-long-a1
    #[serde(default)]
    family: Option<String>,
    /// family twists (r) or (r, s)
    #[serde(default)]
    twists: Option<Vec<u32>>,
    #[serde(default)]
    cocycle: Option<CocycleSpec>,
    /// subsystem label for restriction (restrict)
    #[serde(default)]
    subsystem: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct EmbeddingSpec {
    /// "a1-product" or "catalog"
    kind: String,
    /// catalog label, e.g. "A2"
    #[serde(default)]
    subsystem: Option<String>,
    /// factors of an A1 product: lists of (root coefficients, twist)
    #[serde(default)]
    factors: Option<Vec<Vec<SlotSpec>>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct SlotSpec {
    root: Vec<i32>,
    twist: u32,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct CocycleSpec {
    slots: Vec<CocycleSlot>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct CocycleSlot {
    /// shape string, informational (e.g. "1100")
    #[serde(default)]
    shape: Option<String>,
    /// field element over the analysis field, e.g. "1", "z", "z+1"
    value: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_subset(s: &str) -> Result<Vec<usize>, String> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad index `{x}`"))
                .and_then(|v| {
                    if v == 0 {
                        Err("simple roots are 1-based".into())
                    } else {
                        Ok(v - 1)
                    }
                })
        })
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Levels { system, parabolic, json } => {
            let sys = RootSystem::build(&system).map_err(|e| e.to_string())?;
            let j = parse_subset(&parabolic)?;
            let pd = parab::levels(&sys, &j).map_err(|e| e.to_string())?;
            if json {
                let levels: Vec<serde_json::Value> = pd
                    .levels
                    .iter()
                    .map(|l| {
                        serde_json::json!({
                            "index": l.index,
                            "dim": l.members.len(),
                            "shapes": l.shapes.iter().map(|s| serde_json::json!({
                                "shape": s.shape,
                                "members": s.members.iter().map(|&m| sys.root(m).coeffs.clone()).collect::<Vec<_>>(),
                                "high_root": sys.root(s.high_root).coeffs,
                                "high_weight": pd.shape_high_weight(s),
                            })).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let out = serde_json::json!({
                    "system": sys.label(),
                    "levi": j.iter().map(|x| x + 1).collect::<Vec<_>>(),
                    "radical_dim": pd.dims().iter().sum::<usize>(),
                    "levels": levels,
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!(
                    "{} parabolic, Levi on simple roots {:?}: {} levels, radical dimension {}",
                    sys.label(),
                    j.iter().map(|x| x + 1).collect::<Vec<_>>(),
                    pd.n_levels(),
                    pd.dims().iter().sum::<usize>()
                );
                for l in &pd.levels {
                    println!("level {}: dim {}", l.index, l.members.len());
                    for s in &l.shapes {
                        println!(
                            "  shape {:?}: {} roots, high root {:?}, Levi high weight {:?}",
                            s.shape,
                            s.members.len(),
                            sys.root(s.high_root).coeffs,
                            pd.shape_high_weight(s)
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Subsystems { system, json } => {
            let sys = RootSystem::build(&system).map_err(|e| e.to_string())?;
            let subs = sys.enumerate_subsystems().map_err(|e| e.to_string())?;
            let notes = sys.subsystem_annotations();
            if json {
                let out = serde_json::json!({
                    "system": sys.label(),
                    "subsystems": subs.iter().map(|s| serde_json::json!({
                        "label": s.label,
                        "rank": s.simple_roots.len(),
                        "n_roots": s.all_roots.len(),
                        "simple_roots": s.simple_roots.iter().map(|&r| sys.root(r).coeffs.clone()).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                    "annotations": notes.iter().map(|a| serde_json::json!({
                        "label": a.label,
                        "n_roots": a.roots.len(),
                        "note": a.note,
                    })).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("closed subsystems of {} up to Weyl conjugacy:", sys.label());
                for s in &subs {
                    println!(
                        "  {:12} rank {} | {} roots | simples {:?}",
                        s.label,
                        s.simple_roots.len(),
                        s.all_roots.len(),
                        s.simple_roots.iter().map(|&r| sys.root(r).coeffs.clone()).collect::<Vec<_>>()
                    );
                }
                if !notes.is_empty() {
                    println!("special-characteristic annotations:");
                    for a in &notes {
                        println!("  {:12} {} roots | {}", a.label, a.roots.len(), a.note);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Jordan { element, system, p, q, json } => {
            let spec = RepSpec::FoldedQuotient(system.clone());
            let rep = build_rep(&spec).map_err(|e| e.to_string())?;
            let field = gf(p, field_degree(q.unwrap_or(p), p)?);
            let mut m = chevlab::ff::FMatrix::identity(field.clone(), rep.dim);
            for part in element.split(',') {
                let (root, val) = part
                    .split_once('=')
                    .ok_or_else(|| format!("bad element factor `{part}`, want root=value"))?;
                let coeffs: Vec<i32> = root
                    .trim()
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as i32)
                            .ok_or_else(|| format!("bad root `{root}`"))
                    })
                    .collect::<Result<_, _>>()?;
                let ix = rep
                    .sys
                    .index_of(&coeffs)
                    .ok_or_else(|| format!("`{root}` is not a root of {system}"))?;
                let v = field
                    .parse(val.trim())
                    .ok_or_else(|| format!("bad field element `{val}`"))?;
                m = m.mul(&rep.x_const(ix, v, &field));
            }
            let part = modax::jordan_partition(&m).map_err(|e| e.to_string())?;
            if json {
                let out = serde_json::json!({
                    "system": system,
                    "module_dim": rep.dim,
                    "p": p,
                    "partition": part.iter().map(|&(s, c)| serde_json::json!({"size": s, "count": c})).collect::<Vec<_>>(),
                    "rendered": modax::render_partition(&part),
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("{}", modax::render_partition(&part));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Precocycle { specfile, json } => {
            let spec = read_spec(&specfile)?;
            let sys = RootSystem::build(&spec.system).map_err(|e| e.to_string())?;
            let j: Vec<usize> = spec
                .parabolic
                .clone()
                .ok_or("spec file needs `parabolic`")?
                .iter()
                .map(|&x| {
                    if x == 0 { Err("simple roots are 1-based".to_string()) } else { Ok(x - 1) }
                })
                .collect::<Result<_, _>>()?;
            let pd = parab::levels(&sys, &j).map_err(|e| e.to_string())?;
            let emb = spec.embedding.as_ref().ok_or("spec file needs `embedding`")?;
            let report = match emb.kind.as_str() {
                "catalog" => {
                    let label = emb.subsystem.as_ref().ok_or("catalog embedding needs `subsystem`")?;
                    sl2coh::precocycle_cataloged(&pd, label, spec.p).map_err(|e| e.to_string())?
                }
                "a1-product" => {
                    let factors = emb.factors.as_ref().ok_or("a1-product embedding needs `factors`")?;
                    let mut fs = vec![];
                    for f in factors {
                        let mut slots = vec![];
                        for s in f {
                            let ix = sys
                                .index_of(&s.root)
                                .ok_or_else(|| format!("{:?} is not a root", s.root))?;
                            slots.push((ix, s.twist));
                        }
                        fs.push(slots);
                    }
                    sl2coh::precocycle_a1(&pd, &A1ProductEmbedding { factors: fs }, spec.p)
                        .map_err(|e| e.to_string())?
                }
                k => return Err(format!("unknown embedding kind `{k}`")),
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!(
                    "pre-cocycle space: dim V = {}",
                    render_bound(&report.v_dim)
                );
                for l in &report.levels {
                    println!(
                        "level {}: dim {} | H0 {} | H1 {}",
                        l.index,
                        l.dim,
                        l.h0,
                        render_bound(&l.h1)
                    );
                    for s in &l.summands {
                        println!(
                            "  {} (dim {}): H1 {}{}",
                            s.desc,
                            s.dim,
                            render_bound(&s.h1),
                            if s.blocker { "  [potential blocker]" } else { "" }
                        );
                    }
                }
                if !report.blockers.is_empty() {
                    println!("potential blockers: {:?}", report.blockers);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { specfile, json } => {
            let spec = read_spec(&specfile)?;
            let (family, rep, scan) = family_from_spec(&spec)?;
            let verdict = match family {
                Family::B3Rst001 { .. } | Family::B3Rst021 { .. } => {
                    let gens = build_complement(&family, &rep, &scan).map_err(|e| e.to_string())?;
                    let torus = complab::lift::torus_slots(&family, &rep);
                    check_borel_relations(&gens, &rep, &torus)
                }
                _ => {
                    let gens = build_complement(&family, &rep, &scan).map_err(|e| e.to_string())?;
                    check_a1_relations(&gens, &rep)
                }
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&verdict).unwrap());
            } else if verdict.pass {
                println!("pass");
            } else {
                println!("FAIL");
                for f in &verdict.failures {
                    println!("  {f}");
                }
            }
            Ok(if verdict.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Lift { specfile, json } => {
            let spec = read_spec(&specfile)?;
            let (family, rep, scan) = family_from_spec(&spec)?;
            let out = lift_search(&family, &rep, &scan, &LiftAnsatz::default())
                .map_err(|e| e.to_string())?;
            let witness = matches!(out, LiftOutcome::Witness { .. });
            if json {
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                match &out {
                    LiftOutcome::Witness { corrections } => {
                        if corrections.is_empty() {
                            println!("lift exists (zero correction)");
                        } else {
                            println!("lift exists with corrections {corrections:?}");
                        }
                    }
                    LiftOutcome::Exhausted { ansatz } => {
                        println!("no lift within the ansatz: {ansatz}");
                    }
                }
            }
            Ok(if witness { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Restrict { specfile, json, seed } => {
            let spec = read_spec(&specfile)?;
            let seed = seed.or(spec.seed).unwrap_or(modax::DEFAULT_SEED);
            let report = if let Some(label) = &spec.subsystem {
                // restriction of the module to a closed subsystem over GF(q)
                let repm = build_rep(&RepSpec::FoldedQuotient(spec.system.clone()))
                    .map_err(|e| e.to_string())?;
                let q = spec.q.unwrap_or(spec.p * spec.p);
                let field = gf(spec.p, field_degree(q, spec.p)?);
                let subs = repm.sys.enumerate_subsystems().map_err(|e| e.to_string())?;
                let sub = subs
                    .iter()
                    .find(|s| s.label == *label)
                    .ok_or_else(|| format!("no subsystem labeled `{label}`"))?;
                let module = subsystem_module(&repm, &sub.simple_roots, &field);
                modax::analyze(&module, &[], seed)
            } else {
                let (family, repm, scan) = family_from_spec(&spec)?;
                let gens = build_complement(&family, &repm, &scan).map_err(|e| e.to_string())?;
                restriction_report(&gens, &repm, &[], seed).map_err(|e| e.to_string())?
            };
            if json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!("module dim {}", report.dim);
                let f: Vec<String> = report
                    .factors
                    .iter()
                    .map(|e| {
                        let name = e.name.clone().unwrap_or_default();
                        if e.mult == 1 {
                            format!("{}{}", e.dim, if name.is_empty() { String::new() } else { format!(" ({name})") })
                        } else {
                            format!("{}^{}", e.dim, e.mult)
                        }
                    })
                    .collect();
                println!("composition factors: {}", f.join(" + "));
                println!("socle layers (bottom to top): {:?}", report.socle_layers);
                println!("direct summand dims: {:?}", report.summands);
                println!("indecomposable: {}", report.indecomposable);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Export { system, p, module } => {
            let spec = match module.as_str() {
                "folded" => RepSpec::Folded(system.clone()),
                "quotient" => RepSpec::FoldedQuotient(system.clone()),
                m => return Err(format!("unknown module `{m}` (want folded|quotient)")),
            };
            let rep = build_rep(&spec).map_err(|e| e.to_string())?;
            let field = gf(p, 1);
            println!("{}", serde_json::to_string_pretty(&rep.export_json(&field)).unwrap());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn render_bound(b: &sl2coh::Bound) -> String {
    match b {
        sl2coh::Bound::Exact(n) => n.to_string(),
        sl2coh::Bound::AtMost(n) => format!("<= {n}"),
        sl2coh::Bound::Unknown => "unknown".to_string(),
    }
}

fn field_degree(q: u32, p: u32) -> Result<u32, String> {
    let mut k = 0;
    let mut x = 1u64;
    while x < q as u64 {
        x *= p as u64;
        k += 1;
    }
    if x != q as u64 {
        return Err(format!("q = {q} is not a power of p = {p}"));
    }
    Ok(k.max(1))
}

fn read_spec(path: &str) -> Result<SpecFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))
}

fn family_from_spec(spec: &SpecFile) -> Result<(Family, chevlab::Rep, Arc<Fq>), String> {
    let name = spec.family.as_ref().ok_or("spec file needs `family`")?;
    let q = spec.q.unwrap_or(spec.p * spec.p);
    let coeff_field = gf(spec.p, field_degree(q, spec.p)?);
    let values: Vec<FF> = spec
        .cocycle
        .as_ref()
        .map(|c| {
            c.slots
                .iter()
                .map(|s| {
                    coeff_field
                        .parse(&s.value)
                        .ok_or_else(|| format!("bad field element `{}`", s.value))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?
        .unwrap_or_default();
    let twists = spec.twists.clone().unwrap_or_default();
    let get = |i: usize| -> FF { values.get(i).copied().unwrap_or(0) };
    let (family, sys_label) = match name.as_str() {
        "long-a1" => (
            Family::LongA1F4 {
                r: twists.first().copied().unwrap_or(1),
                k: core::array::from_fn(|i| get(i)),
                field: coeff_field.clone(),
            },
            "F4",
        ),
        "a1a1-p24" => (
            Family::A1A1P24 {
                r: twists.first().copied().unwrap_or(1),
                s: twists.get(1).copied().unwrap_or(2),
                k: core::array::from_fn(|i| get(i)),
                field: coeff_field.clone(),
            },
            "F4",
        ),
        "a1a1-p13" => (
            Family::A1A1P13 {
                r: twists.first().copied().unwrap_or(1),
                s: twists.get(1).copied().unwrap_or(2),
                m: core::array::from_fn(|i| get(i)),
                field: coeff_field.clone(),
            },
            "F4",
        ),
        "b3-001" => (
            Family::B3Rst001 { k: get(0), l: get(1), field: coeff_field.clone() },
            "F4",
        ),
        "b3-021" => (
            Family::B3Rst021 { k: get(0), l: get(1), field: coeff_field.clone() },
            "F4",
        ),
        "g2-long-a1" => (
            Family::G2LongA1 {
                r: twists.first().copied().unwrap_or(1),
                k: core::array::from_fn(|i| get(i)),
                field: coeff_field.clone(),
            },
            "G2",
        ),
        other => return Err(format!("unknown family `{other}`")),
    };
    if spec.system != sys_label {
        return Err(format!(
            "family `{name}` lives in {sys_label}, spec says {}",
            spec.system
        ));
    }
    let rep = build_rep(&RepSpec::FoldedQuotient(sys_label.to_string())).map_err(|e| e.to_string())?;
    let scan_deg = lcm_deg(coeff_field.degree(), 4);
    let scan = gf(spec.p, scan_deg);
    Ok((family, rep, scan))
}

fn lcm_deg(a: u32, b: u32) -> u32 {
    let g = {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        x
    };
    a / g * b
}
