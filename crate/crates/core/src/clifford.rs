//! The Clifford algebra on orthonormal generators `e_1, …, e_d` with
//! `e_j² = 1`. Basis blades `e_A` are bitmasks (bit `j-1` for `e_j`).

use std::collections::BTreeMap;
use std::fmt;

use crate::numfield::Qi2;
use crate::rational::Rat;
use crate::scalar::Coeff;

/// Product of basis blades: `e_a e_b = sign · e_{a xor b}`.
#[inline]
pub fn blade_mul(a: u8, b: u8) -> (u8, i8) {
    // count pairs (i in a, j in b) with i > j
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    (a ^ b, if swaps.is_multiple_of(2) { 1 } else { -1 })
}

/// Sign of the reversal `e_A^t = sign · e_A`.
#[inline]
pub fn reverse_sign(a: u8) -> i8 {
    let k = a.count_ones();
    if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of the anti-involution `e_A^* = (−1)^{|A|} e_A^t`.
#[inline]
pub fn star_sign(a: u8) -> i8 {
    let p = if a.count_ones().is_multiple_of(2) { 1 } else { -1 };
    p * reverse_sign(a)
}

pub fn mask_of(indices: &[usize]) -> u8 {
    indices.iter().fold(0u8, |m, &j| m | (1 << (j - 1)))
}

/// `e{1,3,4}` with 1-based sorted indices; the empty blade is `e{}`.
pub fn fmt_blade(a: u8) -> String {
    let idx: Vec<String> = (0..8).filter(|j| a & (1 << j) != 0).map(|j| (j + 1).to_string()).collect();
    format!("e{{{}}}", idx.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clifford<C: Coeff> {
    pub d: usize,
    terms: BTreeMap<u8, C>,
}

impl<C: Coeff> Clifford<C> {
    pub fn zero(d: usize) -> Self {
        Clifford { d, terms: BTreeMap::new() }
    }

    pub fn scalar(d: usize, c: C) -> Self {
        Self::blade(d, 0, c)
    }

    pub fn one(d: usize) -> Self {
        Self::scalar(d, C::one())
    }

    pub fn blade(d: usize, mask: u8, c: C) -> Self {
        let mut x = Self::zero(d);
        if !c.is_zero() {
            x.terms.insert(mask, c);
        }
        x
    }

    /// The generator `e_j`, `1 ≤ j ≤ d`.
    pub fn gen(d: usize, j: usize) -> Self {
        assert!((1..=d).contains(&j));
        Self::blade(d, 1 << (j - 1), C::one())
    }

    /// `γ(v) = Σ v_j e_j`.
    pub fn vector(d: usize, v: &[C]) -> Self {
        let mut x = Self::zero(d);
        for (j, c) in v.iter().enumerate() {
            x.add_term(1 << j, c.clone());
        }
        x
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, &C)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: u8) -> C {
        self.terms.get(&mask).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, mask: u8, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut x = self.clone();
        for (m, c) in &o.terms {
            x.add_term(*m, c.clone());
        }
        x
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut x = Self::zero(self.d);
        for (m, c) in &self.terms {
            x.add_term(*m, c.mul(k));
        }
        x
    }

    fn map(&self, f: impl Fn(&C) -> C) -> Self {
        Clifford { d: self.d, terms: self.terms.iter().map(|(m, c)| (*m, f(c))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.d, o.d, "Clifford dimension mismatch");
        let mut x = Self::zero(self.d);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let (m, s) = blade_mul(*ma, *mb);
                let c = ca.mul(cb);
                x.add_term(m, if s < 0 { c.neg() } else { c });
            }
        }
        x
    }

    /// `e_A ↦ (−1)^{|A|} e_A^t`, conjugating coefficients.
    pub fn star(&self) -> Self {
        Clifford {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = c.conj();
                    (*m, if star_sign(*m) < 0 { c.neg() } else { c })
                })
                .collect(),
        }
    }

    /// Reversal `e_A ↦ e_A^t` (coefficients untouched).
    pub fn reverse(&self) -> Self {
        self.map_masked(|m, c| if reverse_sign(m) < 0 { c.neg() } else { c.clone() })
    }

    fn map_masked(&self, f: impl Fn(u8, &C) -> C) -> Self {
        Clifford { d: self.d, terms: self.terms.iter().map(|(m, c)| (*m, f(*m, c))).collect() }
    }

    /// `Some(0)` / `Some(1)` for homogeneous elements, `None` otherwise.
    /// Zero counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|m| (m.count_ones() % 2) as u8);
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }
}

/// The pseudo-scalar `Γ = i^{d(d−1)/2} e_1⋯e_d`.
pub fn pseudo_scalar<C: Coeff>(d: usize) -> Clifford<C> {
    let k = (d * d.saturating_sub(1) / 2) % 4;
    let phase = match k {
        0 => Qi2::one(),
        1 => Qi2::i(),
        2 => Qi2::int(-1),
        _ => Qi2::i().neg(),
    };
    let full = if d == 8 { 0xff } else { ((1u16 << d) - 1) as u8 };
    Clifford::blade(d, full, C::from_qi2(phase))
}

/// Unit vector `α/|α|` for an integer vector with `|α|² ∈ {1, 2}` (or any
/// other perfect-square or twice-perfect-square norm).
pub fn unit_vector(alpha: &[i64]) -> Vec<Qi2> {
    let n2: i64 = alpha.iter().map(|a| a * a).sum();
    // |α| = √n2; supported cases n2 = k² or 2k²
    let root = |n: i64| -> Option<i64> {
        let r = (n as f64).sqrt().round() as i64;
        (r * r == n).then_some(r)
    };
    if let Some(k) = root(n2) {
        return alpha.iter().map(|&a| Qi2::rat(Rat::new(a, k))).collect();
    }
    let k = root(n2 / 2).filter(|_| n2 % 2 == 0).expect("norm is k² or 2k²");
    // a / (k√2) = a√2 / (2k)
    alpha.iter().map(|&a| Qi2::new(Rat::ZERO, Rat::ZERO, Rat::new(a, 2 * k), Rat::ZERO)).collect()
}

impl<C: Coeff + fmt::Display> fmt::Display for Clifford<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c}) {}", fmt_blade(*m))).collect();
        f.write_str(&parts.join(" + "))
    }
}
