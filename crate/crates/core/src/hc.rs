//! `HC = H_{t,c} ⊗ C`: PBW terms of `H` tensored with Clifford blades. The
//! Z₂-grading comes from the Clifford factor alone.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::cherednik::Algebra;
use crate::clifford::{fmt_blade, star_sign, Clifford};
use crate::numfield::Qi2;
use crate::pin::PinElement;
use crate::poly::Mono;
use crate::scalar::Scalar;

/// Basis element `x^x y^y g ⊗ e_e`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub x: Mono,
    pub y: Mono,
    /// Group index.
    pub g: u32,
    /// Clifford blade mask.
    pub e: u8,
}

impl Key {
    pub const ONE: Key = Key { x: Mono::ONE, y: Mono::ONE, g: 0, e: 0 };

    pub fn degree(&self) -> u32 {
        self.x.degree() + self.y.degree()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HcElement {
    d: usize,
    /// Sorted by key, no zero coefficients.
    terms: Vec<(Key, Scalar)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HcError {
    #[error("graded bracket of a non-homogeneous element")]
    NotHomogeneous,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BracketKind {
    /// `ab − (−1)^{|a||b|} ba`.
    Graded,
    Commutator,
    Anticommutator,
}

impl HcElement {
    pub fn zero(d: usize) -> HcElement {
        HcElement { d, terms: Vec::new() }
    }

    pub fn term(d: usize, k: Key, c: Scalar) -> HcElement {
        let terms = if c.is_zero() { Vec::new() } else { vec![(k, c)] };
        HcElement { d, terms }
    }

    pub fn from_map(d: usize, m: HashMap<Key, Scalar>) -> HcElement {
        let mut terms: Vec<(Key, Scalar)> = m.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|a| a.0);
        HcElement { d, terms }
    }

    pub fn from_terms(d: usize, t: impl IntoIterator<Item = (Key, Scalar)>) -> HcElement {
        let mut m: HashMap<Key, Scalar> = HashMap::new();
        for (k, c) in t {
            match m.get_mut(&k) {
                Some(v) => *v = v.add(&c),
                None => {
                    m.insert(k, c);
                }
            }
        }
        HcElement::from_map(d, m)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &[(Key, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &Key) -> Scalar {
        match self.terms.binary_search_by(|p| p.0.cmp(k)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn add(&self, o: &HcElement) -> HcElement {
        assert_eq!(self.d, o.d, "dimension mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (a, b) = (&self.terms[i], &o.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a.1.add(&b.1);
                    if !c.is_zero() {
                        out.push((a.0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        HcElement { d: self.d, terms: out }
    }

    pub fn sub(&self, o: &HcElement) -> HcElement {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> HcElement {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, k: &Scalar) -> HcElement {
        if k.is_zero() {
            return HcElement::zero(self.d);
        }
        self.map_coeffs(|c| c.mul(k))
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> HcElement {
        HcElement {
            d: self.d,
            terms: self.terms.iter().map(|(k, c)| (*k, f(c))).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Fallible coefficient map (used for specialisation).
    pub fn try_map_coeffs<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<HcElement, E> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            let v = f(c)?;
            if !v.is_zero() {
                terms.push((*k, v));
            }
        }
        Ok(HcElement { d: self.d, terms })
    }

    /// `Some(0)` / `Some(1)` for homogeneous elements; zero is even.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.iter().map(|(k, _)| (k.e.count_ones() % 2) as u8);
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    /// Largest (x, y)-degree of a term.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(k, _)| k.degree()).max().unwrap_or(0)
    }

    /// The largest term in key order, a short witness for reports.
    pub fn witness(&self) -> Option<String> {
        self.terms.last().map(|(k, c)| fmt_term(self.d, k, c))
    }
}

fn fmt_exps(d: usize, m: Mono) -> String {
    let v: Vec<String> = (0..d).map(|i| m.exp(i).to_string()).collect();
    format!("({})", v.join(","))
}

/// `(coeff) x^(…) y^(…) [w] ⊗ e{…}` with `[w]` the group element index.
pub fn fmt_term(d: usize, k: &Key, c: &Scalar) -> String {
    format!("({c}) x^{} y^{} [{}] ⊗ {}", fmt_exps(d, k.x), fmt_exps(d, k.y), k.g, fmt_blade(k.e))
}

impl fmt::Display for HcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| fmt_term(self.d, k, c)).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Algebra {
    pub fn zero(&self) -> HcElement {
        HcElement::zero(self.d)
    }

    pub fn one(&self) -> HcElement {
        self.scalar(Scalar::one())
    }

    pub fn scalar(&self, c: Scalar) -> HcElement {
        HcElement::term(self.d, Key::ONE, c)
    }

    /// `x_i`, 1-based.
    pub fn x(&self, i: usize) -> HcElement {
        HcElement::term(self.d, Key { x: Mono::var(i - 1), ..Key::ONE }, Scalar::one())
    }

    /// `y_i`, 1-based.
    pub fn y(&self, i: usize) -> HcElement {
        HcElement::term(self.d, Key { y: Mono::var(i - 1), ..Key::ONE }, Scalar::one())
    }

    pub fn group_elem(&self, g: u32) -> HcElement {
        HcElement::term(self.d, Key { g, ..Key::ONE }, Scalar::one())
    }

    /// `1 ⊗ e_A`.
    pub fn blade(&self, mask: u8) -> HcElement {
        HcElement::term(self.d, Key { e: mask, ..Key::ONE }, Scalar::one())
    }

    /// `1 ⊗ e_j`, 1-based.
    pub fn e(&self, j: usize) -> HcElement {
        self.blade(1 << (j - 1))
    }

    /// Embeds `g ⊗ u` for a Clifford element `u`.
    pub fn tensor(&self, g: u32, u: &Clifford<Qi2>) -> HcElement {
        HcElement::from_terms(self.d, u.terms().map(|(m, c)| (Key { g, e: m, ..Key::ONE }, Scalar::constant(c.clone()))))
    }

    /// `ρ(w̃) = p(w̃) ⊗ w̃`.
    pub fn rho(&self, p: &PinElement) -> HcElement {
        self.tensor(p.g, &p.u)
    }

    pub fn bracket(&self, a: &HcElement, b: &HcElement, kind: BracketKind) -> Result<HcElement, HcError> {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        Ok(match kind {
            BracketKind::Commutator => ab.sub(&ba),
            BracketKind::Anticommutator => ab.add(&ba),
            BracketKind::Graded => {
                let pa = a.parity().ok_or(HcError::NotHomogeneous)?;
                let pb = b.parity().ok_or(HcError::NotHomogeneous)?;
                if pa & pb == 1 {
                    ab.add(&ba)
                } else {
                    ab.sub(&ba)
                }
            }
        })
    }

    /// Graded bracket, panicking on non-homogeneous input.
    pub fn gb(&self, a: &HcElement, b: &HcElement) -> HcElement {
        self.bracket(a, b, BracketKind::Graded).expect("homogeneous arguments")
    }

    /// `• = ∗ ⊗ ∗`.
    pub fn bullet(&self, a: &HcElement) -> HcElement {
        let h = self.h_star(a);
        h.map_keyed(|k, c| if star_sign(k.e) < 0 { c.neg() } else { c.clone() })
    }

    /// Sum of products `a_1 a_2 ⋯ a_k`.
    pub fn product(&self, factors: &[&HcElement]) -> HcElement {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }
}

impl HcElement {
    fn map_keyed(&self, f: impl Fn(&Key, &Scalar) -> Scalar) -> HcElement {
        HcElement { d: self.d, terms: self.terms.iter().map(|(k, c)| (*k, f(k, c))).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cherednik::Params;
    use crate::roots::{Family, RootDatum};
    use std::sync::Arc;

    fn algebra(f: Family, r: usize, a: usize) -> Algebra {
        let rd = RootDatum::build(f, r, a).unwrap();
        let g = rd.enumerate().unwrap();
        let p = Params::symbolic(rd.num_orbits);
        Algebra::new(Arc::new(rd), Arc::new(g), p)
    }

    #[test]
    fn tensor_products() {
        let h = algebra(Family::A1Product, 3, 3);
        let a = h.mul(&h.x(1), &h.e(1));
        let b = h.mul(&h.y(1), &h.e(1));
        assert_eq!(h.mul(&a, &b), h.mul(&h.x(1), &h.y(1)));
        let e12 = h.mul(&h.e(1), &h.e(2));
        assert_eq!(h.mul(&h.e(2), &h.e(1)), e12.neg());
        assert!(h.gb(&h.e(1), &h.e(2)).is_zero());
        assert_eq!(h.gb(&h.e(1), &h.e(1)), h.scalar(Scalar::int(2)));
        let s = h.mul(&h.y(1), &h.x(2));
        assert!(h.bracket(&s, &s, BracketKind::Commutator).unwrap().is_zero());
    }

    #[test]
    fn bullet_examples() {
        let h = algebra(Family::A1Product, 3, 3);
        let a = h.mul(&h.x(1), &h.e(1));
        assert_eq!(h.bullet(&a), h.mul(&h.y(1), &h.e(1)).neg());
        assert_eq!(h.bullet(&h.one()), h.one());
        let b = h.mul(&h.mul(&h.y(2), &h.e(3)), &h.group_elem(5)).add(&h.x(3).scale(&Scalar::i()));
        assert_eq!(h.bullet(&h.bullet(&b)), b);
        assert_eq!(h.bullet(&h.mul(&a, &b)), h.mul(&h.bullet(&b), &h.bullet(&a)));
    }

    #[test]
    fn non_homogeneous_graded_bracket_fails() {
        let h = algebra(Family::A1Product, 2, 2);
        let a = h.one().add(&h.e(1));
        assert_eq!(h.bracket(&a, &a, BracketKind::Graded), Err(HcError::NotHomogeneous));
    }

    #[test]
    fn display_format() {
        let h = algebra(Family::A1Product, 2, 2);
        let a = h.mul(&h.x(1), &h.e(2));
        assert_eq!(a.to_string(), "(1) x^(1,0) y^(0,0) [0] ⊗ e{2}");
    }
}
