//! The coefficient field K = ℚ(i, √2)(s, c₁, …, c_m).
//!
//! A [`Scalar`] is a reduced fraction of two [`Poly`]s whose denominator has
//! leading coefficient 1, so equal field elements are structurally equal.
//! Variable 0 is `s` (with `t = s²/2`), variables `1..` are `c1, c2, …`.

use std::fmt;

use thiserror::Error;

use crate::numfield::Qi2;
use crate::poly::{gcd, Mono, Poly, MAX_VARS};
use crate::rational::Rat;

/// Number of orbit parameters that fit next to `s` in a packed monomial.
pub const MAX_ORBIT_PARAMS: usize = MAX_VARS - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

/// Ring operations shared by [`Qi2`] and [`Scalar`], so that Clifford and
/// matrix code can run over either.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn from_qi2(q: Qi2) -> Self;
    fn inv(&self) -> Option<Self>;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Coeff for Qi2 {
    fn zero() -> Self {
        Qi2::zero()
    }
    fn one() -> Self {
        Qi2::one()
    }
    fn is_zero(&self) -> bool {
        Qi2::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Qi2::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Qi2::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Qi2::mul(self, o)
    }
    fn neg(&self) -> Self {
        Qi2::neg(self)
    }
    fn conj(&self) -> Self {
        Qi2::conj(self)
    }
    fn from_qi2(q: Qi2) -> Self {
        q
    }
    fn inv(&self) -> Option<Self> {
        Qi2::inv(self)
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Scalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Scalar::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Scalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn conj(&self) -> Self {
        Scalar::conj(self)
    }
    fn from_qi2(q: Qi2) -> Self {
        Scalar::constant(q)
    }
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self).ok()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Scalar {
        Scalar::constant(Qi2::one())
    }

    pub fn constant(c: Qi2) -> Scalar {
        Scalar { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::constant(Qi2::int(n))
    }

    pub fn rat(n: i64, d: i64) -> Scalar {
        Scalar::constant(Qi2::rat(Rat::new(n, d)))
    }

    pub fn i() -> Scalar {
        Scalar::constant(Qi2::i())
    }

    pub fn sqrt2() -> Scalar {
        Scalar::constant(Qi2::sqrt2())
    }

    /// The parameter `s`.
    pub fn s() -> Scalar {
        Scalar::from_poly(Poly::var(0))
    }

    /// `t = s²/2`.
    pub fn t() -> Scalar {
        Scalar::from_poly(Poly::term(Mono::var(0).mul(Mono::var(0)), Qi2::rat(Rat::new(1, 2))))
    }

    /// The orbit parameter `c_k`, `k ≥ 1`.
    pub fn c(k: usize) -> Scalar {
        assert!((1..=MAX_ORBIT_PARAMS).contains(&k), "orbit parameter index out of range");
        Scalar::from_poly(Poly::var(k))
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar { num: p, den: Poly::one() }
    }

    /// Builds `num/den` in canonical form.
    pub fn fraction(num: Poly, den: Poly) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        let (num, den) = if den.as_constant().is_some() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.inv().expect("nonzero leading coefficient");
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The value when the scalar is a constant of ℚ(i, √2).
    pub fn as_constant(&self) -> Option<Qi2> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return Scalar { num: n, den: Poly::one() };
            }
            return Scalar::reduce(n, self.den.clone());
        }
        if self.den.is_monomial() && o.den.is_monomial() {
            // both denominators are monic monomials; use their lcm
            let (ma, mb) = (self.den.leading().unwrap().0, o.den.leading().unwrap().0);
            let g = ma.gcd(mb);
            let fa = mb.div(g).unwrap();
            let fb = ma.div(g).unwrap();
            let n = self.num.mul_term(fa, &Qi2::one()).add(&o.num.mul_term(fb, &Qi2::one()));
            let den = Poly::term(ma.mul(fa), Qi2::one());
            return Scalar::reduce(n, den);
        }
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Scalar::reduce(n, self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: Poly::one() };
        }
        if let Some(c) = o.as_constant() {
            return Scalar { num: self.num.scale(&c), den: self.den.clone() };
        }
        if let Some(c) = self.as_constant() {
            return Scalar { num: o.num.scale(&c), den: o.den.clone() };
        }
        // cross-cancel before multiplying so the final gcd works on smaller inputs
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading().unwrap().1.clone();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.inv().unwrap();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &Qi2) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Complex conjugation: `i ↦ −i`, fixing `r`, `s` and every `c_k`.
    pub fn conj(&self) -> Scalar {
        Scalar::reduce(self.num.map_coeffs(Qi2::conj), self.den.map_coeffs(Qi2::conj))
    }

    /// Evaluates the listed variables at constants. Fails when the
    /// denominator vanishes at the point.
    pub fn substitute(&self, vals: &[(usize, Qi2)]) -> Result<Scalar, ScalarError> {
        Scalar::fraction(self.num.substitute(vals), self.den.substitute(vals))
    }

    /// Renames variables: variable `v` becomes `map[v]`. Used to collapse
    /// all orbit parameters onto one.
    pub fn rename(&self, map: &[usize]) -> Scalar {
        let f = |p: &Poly| {
            Poly::from_terms(
                p.terms()
                    .iter()
                    .map(|(m, c)| {
                        let mut out = Mono::ONE;
                        for (v, &target) in map.iter().enumerate() {
                            let e = m.exp(v);
                            if e > 0 {
                                out = out.mul(Mono::ONE.with_exp(target, e));
                            }
                        }
                        (out, c.clone())
                    })
                    .collect(),
            )
        };
        Scalar::reduce(f(&self.num), f(&self.den))
    }

    /// Smallest total degree in the orbit parameters over the numerator
    /// terms, provided the denominator does not involve them.
    pub fn min_c_degree(&self) -> Option<u32> {
        let cdeg = |m: &Mono| m.degree() - m.exp(0) as u32;
        if self.den.terms().iter().any(|(m, _)| cdeg(m) > 0) {
            return None;
        }
        self.num.terms().iter().map(|(m, _)| cdeg(m)).min()
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Qi2> for Scalar {
    fn from(q: Qi2) -> Self {
        Scalar::constant(q)
    }
}

pub fn var_name(v: usize) -> String {
    if v == 0 {
        "s".to_string()
    } else {
        format!("c{v}")
    }
}

fn fmt_mono(m: Mono) -> String {
    let mut parts = Vec::new();
    for v in 0..MAX_VARS {
        match m.exp(v) {
            0 => {}
            1 => parts.push(var_name(v)),
            e => parts.push(format!("{}^{e}", var_name(v))),
        }
    }
    parts.join("*")
}

/// Canonical rendering of a polynomial, leading term first.
pub fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = Vec::with_capacity(p.terms().len());
    for (m, c) in p.terms() {
        let coeff = c.to_string();
        let s = if m.is_one() {
            coeff
        } else if c.is_one() {
            fmt_mono(*m)
        } else if *c == Qi2::int(-1) {
            format!("-{}", fmt_mono(*m))
        } else if c.weight() == 1 {
            format!("{coeff}*{}", fmt_mono(*m))
        } else {
            format!("({coeff})*{}", fmt_mono(*m))
        };
        out.push(s);
    }
    out.join(" + ")
}

/// `num` alone when the denominator is 1, otherwise `(num)/(den)`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            f.write_str(&fmt_poly(&self.num))
        } else {
            write!(f, "({})/({})", fmt_poly(&self.num), fmt_poly(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(Scalar::sqrt2().mul(&Scalar::sqrt2()), Scalar::int(2));
        let s = Scalar::s();
        assert!(s.mul(&s.inv().unwrap()).is_one());
        let t = Scalar::t();
        let two_over_s2 = Scalar::int(2).div(&s.mul(&s)).unwrap();
        assert!(t.mul(&two_over_s2).is_one());
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn conjugation() {
        let a = Scalar::s().add(&Scalar::i().mul(&Scalar::c(1)));
        let b = Scalar::s().sub(&Scalar::i().mul(&Scalar::c(1)));
        assert_eq!(a.conj(), b);
        let x = Scalar::i()
            .mul(&Scalar::sqrt2())
            .mul(&Scalar::s())
            .div(&Scalar::one().add(&Scalar::c(1)))
            .unwrap();
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn fractions_are_canonical() {
        let s = Scalar::s();
        let c = Scalar::c(1);
        // (s² − c²)/(s − c) = s + c
        let q = s.mul(&s).sub(&c.mul(&c)).div(&s.sub(&c)).unwrap();
        assert_eq!(q, s.add(&c));
        // the denominator is normalised to a leading coefficient of 1
        let h = Scalar::one().div(&Scalar::int(2).mul(&s).add(&c)).unwrap();
        assert!(h.denom().leading().unwrap().1.is_one());
        assert_eq!(h.mul(&Scalar::int(2).mul(&s).add(&c)), Scalar::one());
    }

    #[test]
    fn rendering() {
        let x = Scalar::t().sub(&Scalar::int(2).mul(&Scalar::c(1)));
        assert_eq!(x.to_string(), "1/2*s^2 + -2*c1");
        let y = Scalar::one().div(&Scalar::s()).unwrap();
        assert_eq!(y.to_string(), "(1)/(s)");
    }
}
