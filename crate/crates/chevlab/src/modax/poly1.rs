//! Dense univariate polynomials over GF(q): arithmetic, gcd, minimal
//! polynomials, and factorization into irreducibles (squarefree split,
//! distinct-degree, Cantor-Zassenhaus equal-degree).

use crate::ff::{FF, Fq};
use rand::Rng;
use std::sync::Arc;

/// Coefficients low-first; normalized (no trailing zeros).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    pub c: Vec<FF>,
}

impl UPoly {
    pub fn zero() -> UPoly {
        UPoly { c: vec![] }
    }
    pub fn one() -> UPoly {
        UPoly { c: vec![1] }
    }
    pub fn x() -> UPoly {
        UPoly { c: vec![0, 1] }
    }
    pub fn constant(a: FF) -> UPoly {
        if a == 0 { UPoly::zero() } else { UPoly { c: vec![a] } }
    }
    pub fn from_coeffs(mut c: Vec<FF>) -> UPoly {
        while c.last() == Some(&0) {
            c.pop();
        }
        UPoly { c }
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }
    pub fn lead(&self) -> FF {
        *self.c.last().unwrap()
    }

    pub fn add(&self, o: &UPoly, f: &Fq) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let mut r = vec![0; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            r[i] = f.add(a, b);
        }
        UPoly::from_coeffs(r)
    }

    pub fn sub(&self, o: &UPoly, f: &Fq) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let mut r = vec![0; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            r[i] = f.sub(a, b);
        }
        UPoly::from_coeffs(r)
    }

    pub fn mul(&self, o: &UPoly, f: &Fq) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut r = vec![0; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                r[i + j] = f.add(r[i + j], f.mul(a, b));
            }
        }
        UPoly::from_coeffs(r)
    }

    pub fn scale(&self, a: FF, f: &Fq) -> UPoly {
        UPoly::from_coeffs(self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    pub fn monic(&self, f: &Fq) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(f.inv(self.lead()), f)
    }

    /// (quotient, remainder) with divisor monic or arbitrary nonzero.
    pub fn divrem(&self, d: &UPoly, f: &Fq) -> (UPoly, UPoly) {
        assert!(!d.is_zero());
        let mut r = self.c.clone();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![0; self.degree() - dd + 1];
        let lead_inv = f.inv(d.lead());
        for k in (0..q.len()).rev() {
            let coef = f.mul(r[k + dd], lead_inv);
            q[k] = coef;
            if coef != 0 {
                for (i, &dc) in d.c.iter().enumerate() {
                    r[k + i] = f.sub(r[k + i], f.mul(coef, dc));
                }
            }
        }
        (UPoly::from_coeffs(q), UPoly::from_coeffs(r))
    }

    pub fn rem(&self, d: &UPoly, f: &Fq) -> UPoly {
        self.divrem(d, f).1
    }

    pub fn gcd(&self, o: &UPoly, f: &Fq) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        if a.is_zero() { a } else { a.monic(f) }
    }

    pub fn derivative(&self, f: &Fq) -> UPoly {
        if self.c.len() <= 1 {
            return UPoly::zero();
        }
        let mut r = vec![0; self.c.len() - 1];
        for i in 1..self.c.len() {
            let mut k = i as u32 % f.p();
            let mut acc = 0;
            // i * c_i in the prime field
            while k > 0 {
                acc = f.add(acc, self.c[i]);
                k -= 1;
            }
            r[i - 1] = acc;
        }
        UPoly::from_coeffs(r)
    }

    pub fn eval(&self, x: FF, f: &Fq) -> FF {
        let mut acc = 0;
        for &c in self.c.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// self^e mod m.
    pub fn powmod(&self, e: u64, m: &UPoly, f: &Fq) -> UPoly {
        let mut acc = UPoly::one();
        let mut base = self.rem(m, f);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(m, f);
            }
            base = base.mul(&base, f).rem(m, f);
            e >>= 1;
        }
        acc
    }

    pub fn render(&self, f: &Fq) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = vec![];
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = f.render(c);
            let term = match i {
                0 => cs,
                1 if cs == "1" => "x".into(),
                1 => format!("({})x", cs),
                _ if cs == "1" => format!("x^{}", i),
                _ => format!("({})x^{}", cs, i),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

/// Squarefree part of a monic polynomial.
fn squarefree_part(g: &UPoly, f: &Fq) -> UPoly {
    let d = g.derivative(f);
    if d.is_zero() {
        // g = h(x^p): take p-th root of the coefficient sequence and recurse
        let p = f.p() as usize;
        let mut h = vec![];
        let mut i = 0;
        while i < g.c.len() {
            // coefficient of x^{i} lives at x^{i/p}; its p-th root in GF(q)
            // is c^(q/p)
            let c = g.c[i];
            let root = f.pow(c, (f.order() as i64) / f.p() as i64);
            h.push(root);
            i += p;
        }
        return squarefree_part(&UPoly::from_coeffs(h), f);
    }
    let gc = g.gcd(&d, f);
    g.divrem(&gc, f).0.monic(f)
}

/// Full factorization of a nonzero polynomial into monic irreducibles with
/// multiplicities.
pub fn factor(g: &UPoly, f: &Arc<Fq>, rng: &mut impl Rng) -> Vec<(UPoly, usize)> {
    assert!(!g.is_zero());
    let mut out: Vec<(UPoly, usize)> = vec![];
    let monic = g.monic(f);
    let mut irreducibles = vec![];
    distinct_degree(&squarefree_part(&monic, f), f, rng, &mut irreducibles);
    for irr in irreducibles {
        // multiplicity by repeated division
        let mut m = 0;
        let mut rest = monic.clone();
        loop {
            let (q, r) = rest.divrem(&irr, f);
            if r.is_zero() {
                m += 1;
                rest = q;
            } else {
                break;
            }
        }
        out.push((irr, m));
    }
    out.sort_by_key(|(p, _)| (p.degree(), p.c.clone()));
    out
}

fn distinct_degree(g: &UPoly, f: &Arc<Fq>, rng: &mut impl Rng, out: &mut Vec<UPoly>) {
    let mut rest = g.clone();
    let q = f.order() as u64;
    let mut xq = UPoly::x(); // x^(q^d) mod rest, updated per degree
    let mut d = 0usize;
    while rest.degree() >= 1 {
        d += 1;
        if rest.degree() < 2 * d {
            // remainder is irreducible
            out.push(rest.monic(f));
            break;
        }
        xq = xq.powmod(q, &rest, f);
        let diff = xq.sub(&UPoly::x(), f);
        let gd = rest.gcd(&diff, f);
        if gd.degree() >= 1 {
            equal_degree(&gd, d, f, rng, out);
            rest = rest.divrem(&gd, f).0;
            xq = xq.rem(&rest, f);
        }
    }
}

fn equal_degree(g: &UPoly, d: usize, f: &Arc<Fq>, rng: &mut impl Rng, out: &mut Vec<UPoly>) {
    if g.degree() == d {
        out.push(g.monic(f));
        return;
    }
    let q = f.order() as u64;
    loop {
        // random polynomial of degree < deg g
        let h = UPoly::from_coeffs(
            (0..g.degree())
                .map(|_| rng.gen_range(0..f.order()))
                .collect(),
        );
        if h.is_zero() {
            continue;
        }
        let split = if f.p() == 2 {
            // trace map T(h) = h + h^2 + ... + h^(2^(kd-1)) mod g
            let k = f.degree() as usize * d;
            let mut t = h.clone().rem(g, f);
            let mut cur = h.rem(g, f);
            for _ in 1..k {
                cur = cur.mul(&cur, f).rem(g, f);
                t = t.add(&cur, f);
            }
            g.gcd(&t, f)
        } else {
            let e = (q.pow(d as u32) - 1) / 2;
            let hp = h.powmod(e, g, f);
            let hm1 = hp.sub(&UPoly::one(), f);
            g.gcd(&hm1, f)
        };
        if split.degree() >= 1 && split.degree() < g.degree() {
            equal_degree(&split, d, f, rng, out);
            let rest = g.divrem(&split, f).0;
            equal_degree(&rest, d, f, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::gf;
    use rand::SeedableRng;

    #[test]
    fn factor_product_of_irreducibles() {
        let f = gf(3, 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        // (x^2 + 1)(x + 2)^2 over GF(9)... build explicitly
        let a = UPoly::from_coeffs(vec![1, 0, 1]);
        let b = UPoly::from_coeffs(vec![2, 1]);
        let g = a.mul(&b, &f).mul(&b, &f);
        let fac = factor(&g, &f, &mut rng);
        let mut rebuilt = UPoly::one();
        for (p, m) in &fac {
            for _ in 0..*m {
                rebuilt = rebuilt.mul(p, &f);
            }
        }
        assert_eq!(rebuilt, g.monic(&f));
        let total: usize = fac.iter().map(|(p, m)| p.degree() * m).sum();
        assert_eq!(total, g.degree());
    }

    #[test]
    fn factor_char2_splitting() {
        let f = gf(2, 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        // x^4 + x has roots and repeated structure over GF(4): x(x+1)(x^2+x+1) = x^4+x... over GF(4) x^2+x+1 splits
        let g = UPoly::from_coeffs(vec![0, 1, 0, 0, 1]);
        let fac = factor(&g, &f, &mut rng);
        for (p, _) in &fac {
            assert_eq!(p.degree(), 1, "x^4+x splits into linear factors over GF(4)");
        }
        let total: usize = fac.iter().map(|(p, m)| p.degree() * m).sum();
        assert_eq!(total, 4);
    }
}
