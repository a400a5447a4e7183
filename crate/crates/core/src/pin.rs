//! The double cover W̃ ⊂ Pin realised by unit Clifford elements.
//!
//! An element is a pair `(w, u)` with `w ∈ W` and `u` a product of unit
//! root vectors (or its negative). The cover is closed by breadth-first
//! search from θ and the lifts `s̃_α = (s_α, γ(α/|α|))` of the simple
//! reflections; the first preimage of each `w` met in that order is its
//! canonical lift.

use std::collections::HashMap;

use crate::clifford::{unit_vector, Clifford};
use crate::numfield::Qi2;
use crate::roots::{class_labels, ConjugacyClass, Group, RootDatum, RootError};

pub type Cl = Clifford<Qi2>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PinElement {
    /// Index into the [`Group`].
    pub g: u32,
    pub u: Cl,
}

impl PinElement {
    pub fn parity(&self) -> u8 {
        self.u.parity().expect("pin elements are homogeneous")
    }
}

#[derive(Clone, Debug)]
pub struct PinCover {
    pub d: usize,
    pub elements: Vec<PinElement>,
    index: HashMap<PinElement, u32>,
    mult: Vec<u32>,
    inv: Vec<u32>,
    pub theta: u32,
    /// Canonical lift of each group element.
    pub lift: Vec<u32>,
    /// `elements[k] = sign[k] · lift[proj(k)]` in the Clifford component.
    pub sign: Vec<i8>,
}

/// Lift of the reflection in the positive root `k`.
pub fn lift_reflection(rd: &RootDatum, group: &Group, k: usize) -> PinElement {
    let g = group.index_of(&rd.reflections[k]).expect("reflection lies in the group");
    let u = Cl::vector(rd.d, &unit_vector(&rd.roots[k]));
    PinElement { g, u }
}

impl PinCover {
    pub fn build(rd: &RootDatum, group: &Group, bound: usize) -> Result<PinCover, RootError> {
        let d = rd.d;
        // θ is added explicitly: for odd m(α, β) the simple lifts satisfy the
        // Coxeter relations on their own and may generate a copy of W only
        let mut gens: Vec<PinElement> = rd.simple.iter().map(|&k| lift_reflection(rd, group, k)).collect();
        gens.push(PinElement { g: group.identity(), u: Cl::one(d).neg() });
        let id = PinElement { g: group.identity(), u: Cl::one(d) };
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut head = 0;
        while head < elements.len() {
            let a = elements[head].clone();
            head += 1;
            for s in &gens {
                let p = PinElement { g: group.mul(a.g, s.g), u: a.u.mul(&s.u) };
                if !index.contains_key(&p) {
                    if elements.len() >= bound {
                        return Err(RootError::BoundExceeded(bound));
                    }
                    index.insert(p.clone(), elements.len() as u32);
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let mut mult = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                let p = PinElement { g: group.mul(a.g, b.g), u: a.u.mul(&b.u) };
                mult.push(*index.get(&p).expect("cover is closed"));
            }
        }
        let inv: Vec<u32> = (0..n as u32)
            .map(|a| (0..n as u32).find(|&b| mult[a as usize * n + b as usize] == 0).expect("inverse exists"))
            .collect();
        let theta_elem = PinElement { g: group.identity(), u: Cl::one(d).neg() };
        let theta = *index.get(&theta_elem).expect("theta lies in the cover");
        let mut lift = vec![u32::MAX; group.order()];
        for (k, e) in elements.iter().enumerate() {
            if lift[e.g as usize] == u32::MAX {
                lift[e.g as usize] = k as u32;
            }
        }
        let sign = elements
            .iter()
            .map(|e| if e.u == elements[lift[e.g as usize] as usize].u { 1 } else { -1 })
            .collect();
        Ok(PinCover { d, elements, index, mult, inv, theta, lift, sign })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, p: &PinElement) -> Option<u32> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn proj(&self, a: u32) -> u32 {
        self.elements[a as usize].g
    }

    pub fn parity(&self, a: u32) -> u8 {
        self.elements[a as usize].parity()
    }

    /// Sign σ(g, h) with `lift(g)·lift(h) = σ · lift(gh)` after ρ.
    pub fn cocycle(&self, g: u32, h: u32) -> i8 {
        let p = self.mul(self.lift[g as usize], self.lift[h as usize]);
        self.sign[p as usize]
    }

    /// Twisted-conjugation check `u γ(v) u⁻¹ = (−1)^{|u|} γ(w v)` on every
    /// basis vector, with `u⁻¹` the reversal of `u`.
    pub fn twisted_conjugation_holds(&self, group: &Group, a: u32) -> bool {
        let e = &self.elements[a as usize];
        let u_inv = e.u.reverse();
        if e.u.mul(&u_inv) != Cl::one(self.d) {
            return false;
        }
        let w = group.elem(e.g);
        let sign = if e.parity() == 0 { Qi2::one() } else { Qi2::int(-1) };
        (0..self.d).all(|i| {
            let lhs = e.u.mul(&Cl::gen(self.d, i + 1)).mul(&u_inv);
            let (j, s) = w.apply(i);
            let rhs = Cl::gen(self.d, j + 1).scale(&Qi2::int(s as i64).mul(&sign));
            lhs == rhs
        })
    }

    /// Conjugacy classes of the cover, or of its even part `W̃₀` when
    /// `even_only` (the classes then cover only even elements).
    pub fn conjugacy_classes(&self, even_only: bool) -> Vec<Vec<u32>> {
        let n = self.order() as u32;
        let conj_by: Vec<u32> = (0..n).filter(|&h| !even_only || self.parity(h) == 0).collect();
        let mut seen = vec![false; n as usize];
        let mut out = Vec::new();
        for g in 0..n {
            if seen[g as usize] || (even_only && self.parity(g) != 0) {
                continue;
            }
            let mut members: Vec<u32> = conj_by.iter().map(|&h| self.mul(self.mul(self.inv(h), g), h)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                seen[m as usize] = true;
            }
            out.push(members);
        }
        out
    }
}

/// One row of the splitting report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitRow {
    pub label: String,
    pub parity: u8,
    /// `p⁻¹(C(g))` is two classes of W̃.
    pub splits_in_cover: bool,
    /// The W̃-class of the canonical lift of the representative splits in
    /// the even subgroup W̃₀ (always false for odd classes).
    pub splits_in_even: bool,
    /// Representative in W and its canonical lift.
    pub representative: u32,
    pub lift: u32,
}

pub fn pin_conjugacy(rd: &RootDatum, group: &Group, cover: &PinCover, classes: &[ConjugacyClass]) -> Vec<SplitRow> {
    let labels = class_labels(rd, group, classes);
    let cover_classes = cover.conjugacy_classes(false);
    let even_classes = cover.conjugacy_classes(true);
    let mut class_of = vec![usize::MAX; cover.order()];
    for (k, c) in cover_classes.iter().enumerate() {
        for &m in c {
            class_of[m as usize] = k;
        }
    }
    classes
        .iter()
        .zip(labels)
        .map(|(c, label)| {
            let rep = c.representative;
            let lift = cover.lift[rep as usize];
            let other = cover.mul(cover.theta, lift);
            let splits_in_cover = class_of[lift as usize] != class_of[other as usize];
            let parity = cover.parity(lift);
            let splits_in_even = parity == 0 && {
                let full = &cover_classes[class_of[lift as usize]];
                let sub = even_classes.iter().find(|e| e.contains(&lift)).expect("even class exists");
                sub.len() < full.len()
            };
            SplitRow { label, parity, splits_in_cover, splits_in_even, representative: rep, lift }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Family;

    fn cover(f: Family, r: usize, a: usize) -> (RootDatum, Group, PinCover) {
        let rd = RootDatum::build(f, r, a).unwrap();
        let g = rd.enumerate().unwrap();
        let c = PinCover::build(&rd, &g, 100_000).unwrap();
        (rd, g, c)
    }

    #[test]
    fn cover_orders() {
        assert_eq!(cover(Family::A, 2, 3).2.order(), 12);
        assert_eq!(cover(Family::A1Product, 3, 3).2.order(), 16);
        assert_eq!(cover(Family::B, 2, 2).2.order(), 16);
    }

    #[test]
    fn projection_is_two_to_one_homomorphism() {
        let (_, g, c) = cover(Family::B, 3, 3);
        let mut count = vec![0; g.order()];
        for a in 0..c.order() as u32 {
            count[c.proj(a) as usize] += 1;
            for b in 0..c.order() as u32 {
                assert_eq!(c.proj(c.mul(a, b)), g.mul(c.proj(a), c.proj(b)));
            }
            assert!(c.twisted_conjugation_holds(&g, a));
        }
        assert!(count.iter().all(|&k| k == 2));
    }

    #[test]
    fn reflection_lifts_square_to_one() {
        let (rd, g, c) = cover(Family::A, 2, 3);
        for k in 0..rd.roots.len() {
            let s = lift_reflection(&rd, &g, k);
            assert_eq!(s.u.mul(&s.u), Cl::one(3));
            assert!(c.index_of(&s).is_some());
        }
    }

    #[test]
    fn theta_is_central_of_order_two() {
        let (_, _, c) = cover(Family::A, 3, 4);
        assert_eq!(c.mul(c.theta, c.theta), 0);
        for a in 0..c.order() as u32 {
            assert_eq!(c.mul(c.theta, a), c.mul(a, c.theta));
        }
    }

    #[test]
    fn splitting_examples() {
        let (rd, g, c) = cover(Family::A, 2, 3);
        let rows = pin_conjugacy(&rd, &g, &c, &g.conjugacy_classes());
        let row = |l: &str| rows.iter().find(|r| r.label == l).unwrap().clone();
        assert!(row("(2,1)").splits_in_cover);

        let (rd, g, c) = cover(Family::A, 3, 4);
        let rows = pin_conjugacy(&rd, &g, &c, &g.conjugacy_classes());
        let row = |l: &str| rows.iter().find(|r| r.label == l).unwrap().clone();
        assert!(!row("(2,2)").splits_in_cover);
        assert!(row("(3,1)").splits_in_even);
    }
}
