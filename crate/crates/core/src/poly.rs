//! Sparse multivariate polynomials over ℚ(i, √2).
//!
//! Monomials pack up to eight exponents (one byte each) into a `u64`, with
//! variable 0 in the most significant byte, so comparing the raw value is a
//! lexicographic comparison. Terms are kept sorted by descending
//! graded-lexicographic order (leading term first).
//!
//! The gcd is the classical recursive content/primitive-part algorithm with
//! primitive pseudo-remainder sequences. It is only reached when a
//! denominator has more than one term; monomial denominators take the
//! cheap paths in [`gcd`].

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::numfield::Qi2;

pub const MAX_VARS: usize = 8;

const HIGH_BITS: u64 = 0x8080_8080_8080_8080;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Mono(pub u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    #[inline]
    fn shift(var: usize) -> u32 {
        debug_assert!(var < MAX_VARS);
        (8 * (MAX_VARS - 1 - var)) as u32
    }

    pub fn var(var: usize) -> Mono {
        Mono(1u64 << Self::shift(var))
    }

    pub fn from_exps(exps: &[u8]) -> Mono {
        assert!(exps.len() <= MAX_VARS);
        let mut m = 0u64;
        for (v, &e) in exps.iter().enumerate() {
            m |= (e as u64) << Self::shift(v);
        }
        Mono(m)
    }

    #[inline]
    pub fn exp(self, var: usize) -> u8 {
        (self.0 >> Self::shift(var)) as u8
    }

    #[inline]
    pub fn with_exp(self, var: usize, e: u8) -> Mono {
        let s = Self::shift(var);
        Mono((self.0 & !(0xffu64 << s)) | ((e as u64) << s))
    }

    #[inline]
    pub fn degree(self) -> u32 {
        self.0.to_be_bytes().iter().map(|&b| b as u32).sum()
    }

    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        if (self.0 | o.0) & HIGH_BITS == 0 {
            return Mono(self.0 + o.0);
        }
        let a = self.0.to_be_bytes();
        let b = o.0.to_be_bytes();
        let mut r = [0u8; 8];
        for k in 0..8 {
            r[k] = a[k].checked_add(b[k]).expect("monomial exponent overflow");
        }
        Mono(u64::from_be_bytes(r))
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(self, o: Mono) -> Option<Mono> {
        let a = self.0.to_be_bytes();
        let b = o.0.to_be_bytes();
        let mut r = [0u8; 8];
        for k in 0..8 {
            r[k] = a[k].checked_sub(b[k])?;
        }
        Some(Mono(u64::from_be_bytes(r)))
    }

    pub fn gcd(self, o: Mono) -> Mono {
        let a = self.0.to_be_bytes();
        let b = o.0.to_be_bytes();
        let mut r = [0u8; 8];
        for k in 0..8 {
            r[k] = a[k].min(b[k]);
        }
        Mono(u64::from_be_bytes(r))
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Highest-index variable with a nonzero exponent.
    pub fn top_var(self) -> Option<usize> {
        (0..MAX_VARS).rev().find(|&v| self.exp(v) != 0)
    }

    /// Graded-lexicographic comparison.
    #[inline]
    pub fn grlex(self, o: Mono) -> Ordering {
        self.degree().cmp(&o.degree()).then(self.0.cmp(&o.0))
    }
}

/// A polynomial as a list of `(monomial, coefficient)` pairs, leading
/// term first, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Qi2)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Qi2::one())
    }

    pub fn constant(c: Qi2) -> Poly {
        Poly::term(Mono::ONE, c)
    }

    pub fn term(m: Mono, c: Qi2) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: usize) -> Poly {
        Poly::term(Mono::var(v), Qi2::one())
    }

    /// Builds from unsorted terms, merging duplicates.
    pub fn from_terms(mut terms: Vec<(Mono, Qi2)>) -> Poly {
        terms.sort_by(|a, b| b.0.grlex(a.0));
        let mut out: Vec<(Mono, Qi2)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
            if out.last().is_some_and(|(_, c)| c.is_zero()) {
                out.pop();
            }
        }
        // a pop can expose a predecessor with the same monomial only if the
        // input repeated it non-contiguously, which sorting rules out
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Qi2)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value when the polynomial is constant (including zero).
    pub fn as_constant(&self) -> Option<Qi2> {
        match self.terms.as_slice() {
            [] => Some(Qi2::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Mono, Qi2)> {
        self.terms.first()
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, k: &Qi2) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.mul(k))).collect() }
    }

    /// Multiplication by a single term preserves the term order.
    pub fn mul_term(&self, m: Mono, k: &Qi2) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(tm, c)| (tm.mul(m), c.mul(k))).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.grlex(*mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ca.add(cb);
                    if !s.is_zero() {
                        out.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        Poly { terms: out }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.terms.len() == 1 {
            return self.mul_term(o.terms[0].0, &o.terms[0].1);
        }
        if self.terms.len() == 1 {
            return o.mul_term(self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Mono, Qi2> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let p = ca.mul(cb);
                acc.entry(ma.mul(*mb))
                    .and_modify(|c| *c = c.add(&p))
                    .or_insert(p);
            }
        }
        Poly::from_terms(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?.clone();
        if d.terms.len() == 1 {
            let inv = dc.inv()?;
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(dm)?, c.mul(&inv)));
            }
            return Some(Poly { terms });
        }
        let inv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            let qm = rm.div(dm)?;
            let qc = rc.mul(&inv);
            rem = rem.sub(&d.mul_term(qm, &qc));
            quot.push((qm, qc));
        }
        Some(Poly::from_terms(quot))
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Qi2) -> Qi2) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u8 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// Minimum exponent of each variable over all terms.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some((m, _)) => *m,
            None => return Mono::ONE,
        };
        it.fold(first, |g, (m, _)| g.gcd(*m))
    }

    pub fn top_var(&self) -> Option<usize> {
        self.terms.iter().filter_map(|(m, _)| m.top_var()).max()
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) != 0)
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_in(&self, v: usize, k: u8) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exp(v) == k)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone()))
                .collect(),
        )
    }

    /// Evaluates the variables listed in `vals` (by index) at constants.
    pub fn substitute(&self, vals: &[(usize, Qi2)]) -> Poly {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut mm = *m;
            let mut cc = c.clone();
            for (v, x) in vals {
                let e = mm.exp(*v);
                if e > 0 {
                    cc = cc.mul(&x.pow(e as u32));
                    mm = mm.with_exp(*v, 0);
                }
            }
            terms.push((mm, cc));
        }
        Poly::from_terms(terms)
    }
}

/// Monic gcd over ℚ(i, √2). `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Poly::one();
    }
    if a.is_monomial() || b.is_monomial() {
        let m = a.monomial_content().gcd(b.monomial_content());
        return Poly::term(m, Qi2::one());
    }
    // strip common monomial factors first; they are cheap and frequent
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    if !ma.is_one() || !mb.is_one() {
        let g = ma.gcd(mb);
        let ra = a.div_exact(&Poly::term(ma, Qi2::one())).expect("monomial content divides");
        let rb = b.div_exact(&Poly::term(mb, Qi2::one())).expect("monomial content divides");
        return gcd(&ra, &rb).mul_term(g, &Qi2::one());
    }
    let v = a.top_var().max(b.top_var()).expect("non-constant");
    match (a.uses_var(v), b.uses_var(v)) {
        (true, false) => gcd(&content(a, v), b),
        (false, true) => gcd(a, &content(b, v)),
        _ => {
            let ca = content(a, v);
            let cb = content(b, v);
            let pa = a.div_exact(&ca).expect("content divides");
            let pb = b.div_exact(&cb).expect("content divides");
            let g = gcd(&ca, &cb);
            g.mul(&primitive_gcd(pa, pb, v)).monic()
        }
    }
}

/// Gcd of the coefficients of `a` viewed as a polynomial in `v`.
fn content(a: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero();
    for k in (0..=a.degree_in(v)).rev() {
        let c = a.coeff_in(v, k);
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(a: &Poly, v: usize) -> Poly {
    let c = content(a, v);
    a.div_exact(&c).expect("content divides").monic()
}

/// Pseudo-remainder of `a` by `b` in the variable `v`.
fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let n = b.degree_in(v);
    let lcb = b.coeff_in(v, n);
    let mut r = a.clone();
    while !r.is_zero() && r.uses_var(v) && r.degree_in(v) >= n {
        let m = r.degree_in(v);
        let lcr = r.coeff_in(v, m);
        let shift = Poly::term(Mono::var(v).with_exp(v, m - n), Qi2::one());
        r = r.mul(&lcb).sub(&lcr.mul(&shift).mul(b));
    }
    if n == 0 {
        Poly::zero()
    } else {
        r
    }
}

fn primitive_gcd(mut a: Poly, mut b: Poly, v: usize) -> Poly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_zero() {
            return primitive_part(&a, v);
        }
        if !b.uses_var(v) {
            return Poly::one();
        }
        let r = prem(&a, &b, v);
        a = b;
        b = if r.is_zero() { r } else { primitive_part(&r, v) };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rat;

    fn x(v: usize) -> Poly {
        Poly::var(v)
    }

    fn k(n: i64) -> Poly {
        Poly::constant(Qi2::int(n))
    }

    #[test]
    fn grlex_ordering() {
        let s = Mono::var(0);
        let c1 = Mono::var(1);
        assert_eq!(s.grlex(c1), Ordering::Greater);
        assert_eq!(c1.mul(c1).grlex(s), Ordering::Greater);
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = x(0).add(&x(1)).add(&k(3));
        let b = x(0).sub(&x(2).mul(&x(1)));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert!(p.add(&k(1)).div_exact(&a).is_none());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = x(0).mul(&x(1)).add(&k(2)).add(&x(2));
        let a = g.mul(&x(0).add(&k(1)));
        let b = g.mul(&x(1).sub(&x(2)).add(&Poly::constant(Qi2::sqrt2())));
        assert_eq!(gcd(&a, &b), g.monic());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let a = x(0).mul(&x(0)).add(&k(1));
        let b = x(0).add(&Poly::constant(Qi2::new(Rat::ZERO, Rat::int(2), Rat::ZERO, Rat::ZERO)));
        assert!(gcd(&a, &b).is_one());
        // x^2 + 1 = (x+i)(x-i)
        let c = x(0).add(&Poly::constant(Qi2::i()));
        assert_eq!(gcd(&a, &c), c);
    }
}
