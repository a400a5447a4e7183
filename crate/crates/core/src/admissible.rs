//! The twisted group algebra `ℂW̃₋ = ℂW̃/(θ + 1)`, its ε-centre, class sums
//! and admissible elements.
//!
//! An element is stored by its coordinates on the canonical lifts of the
//! group elements; `θ` acts as `−1`.

use std::sync::Arc;

use crate::cherednik::Algebra;
use crate::hc::HcElement;
use crate::linalg::{same_span, Matrix};
use crate::numfield::Qi2;
use crate::pin::{pin_conjugacy, PinCover, SplitRow};
use crate::roots::{cycle_type, Family, Group, RootDatum};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct CoverAlgebraElement {
    pub coeffs: Vec<Qi2>,
}

impl CoverAlgebraElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Qi2::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        CoverAlgebraElement { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CoverAlgebraElement { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, k: &Qi2) -> Self {
        CoverAlgebraElement { coeffs: self.coeffs.iter().map(|a| a.mul(k)).collect() }
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, &Qi2)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (w as u32, c))
    }
}

/// `ℂW̃₋` with multiplication through the cocycle of the canonical lifts.
pub struct TwistedGroupAlgebra {
    pub rd: Arc<RootDatum>,
    pub group: Arc<Group>,
    pub cover: Arc<PinCover>,
    pub d: usize,
    /// Parity of the canonical lift of each `w`.
    pub parity: Vec<u8>,
}

impl TwistedGroupAlgebra {
    pub fn new(rd: Arc<RootDatum>, group: Arc<Group>, cover: Arc<PinCover>) -> Self {
        let parity = (0..group.order()).map(|w| cover.parity(cover.lift[w])).collect();
        TwistedGroupAlgebra { d: rd.d, rd, group, cover, parity }
    }

    pub fn build(rd: Arc<RootDatum>, group: Arc<Group>, bound: usize) -> Result<Self, crate::roots::RootError> {
        let cover = PinCover::build(&rd, &group, bound)?;
        Ok(Self::new(rd, group, Arc::new(cover)))
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> CoverAlgebraElement {
        CoverAlgebraElement { coeffs: vec![Qi2::zero(); self.dim()] }
    }

    /// Image of the cover element with index `k`.
    pub fn from_cover(&self, k: u32) -> CoverAlgebraElement {
        let mut z = self.zero();
        z.coeffs[self.cover.proj(k) as usize] = Qi2::int(self.cover.sign[k as usize] as i64);
        z
    }

    pub fn mul(&self, a: &CoverAlgebraElement, b: &CoverAlgebraElement) -> CoverAlgebraElement {
        let mut out = self.zero();
        for (g, x) in a.support() {
            for (h, y) in b.support() {
                let gh = self.group.mul(g, h);
                let c = x.mul(y);
                let c = if self.cover.cocycle(g, h) < 0 { c.neg() } else { c };
                out.coeffs[gh as usize] = out.coeffs[gh as usize].add(&c);
            }
        }
        out
    }

    pub fn parity_of(&self, a: &CoverAlgebraElement) -> Option<u8> {
        let mut p = None;
        for (w, _) in a.support() {
            match p {
                None => p = Some(self.parity[w as usize]),
                Some(q) if q != self.parity[w as usize] => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(0))
    }

    /// `ε(w̃) = 1` for odd `d`, `(−1)^{|w̃|}` for even `d`.
    pub fn epsilon(&self, parity: u8) -> i8 {
        if self.d.is_multiple_of(2) && parity == 1 {
            -1
        } else {
            1
        }
    }

    /// `ω•`, from `ρ(w̃)• = (−1)^{|w̃|} ρ(w̃⁻¹)`, conjugate-linear.
    pub fn bullet(&self, a: &CoverAlgebraElement) -> CoverAlgebraElement {
        let mut out = self.zero();
        for (w, c) in a.support() {
            let k = self.cover.lift[w as usize];
            let mut term = self.from_cover(self.cover.inv(k)).scale(&c.conj());
            if self.parity[w as usize] == 1 {
                term = term.scale(&Qi2::int(-1));
            }
            out = out.add(&term);
        }
        out
    }

    fn generators(&self) -> Vec<u32> {
        let mut gens: Vec<u32> = self
            .rd
            .simple
            .iter()
            .map(|&k| {
                let p = crate::pin::lift_reflection(&self.rd, &self.group, k);
                self.cover.index_of(&p).expect("simple lift lies in the cover")
            })
            .collect();
        gens.sort_unstable();
        gens
    }

    /// `a ρ(w̃) = ε(w̃) ρ(w̃) a` for the simple lifts, which generate the
    /// cover modulo θ.
    pub fn is_epsilon_central(&self, a: &CoverAlgebraElement) -> bool {
        self.generators().into_iter().all(|s| {
            let g = self.from_cover(s);
            let lhs = self.mul(a, &g);
            let rhs = self.mul(&g, a);
            let rhs = if self.epsilon(self.cover.parity(s)) < 0 { rhs.scale(&Qi2::int(-1)) } else { rhs };
            lhs == rhs
        })
    }

    pub fn is_central(&self, a: &CoverAlgebraElement) -> bool {
        self.generators().into_iter().all(|s| {
            let g = self.from_cover(s);
            self.mul(a, &g) == self.mul(&g, a)
        })
    }

    /// The kernel of the ±1 system `a ρ(s̃) − ε(s̃) ρ(s̃) a = 0` over the
    /// simple lifts.
    pub fn brute_force_epsilon_centre(&self) -> Vec<CoverAlgebraElement> {
        let n = self.dim();
        let gens = self.generators();
        let mut m: Matrix<Qi2> = Matrix::zeros(n * gens.len(), n);
        for (gi, &s) in gens.iter().enumerate() {
            let g = self.from_cover(s);
            let eps = self.epsilon(self.cover.parity(s));
            for w in 0..n {
                let mut basis = self.zero();
                basis.coeffs[w] = Qi2::one();
                let lhs = self.mul(&basis, &g);
                let rhs = self.mul(&g, &basis);
                for r in 0..n {
                    let v = if eps < 0 { lhs.coeffs[r].add(&rhs.coeffs[r]) } else { lhs.coeffs[r].sub(&rhs.coeffs[r]) };
                    m.set(gi * n + r, w, v);
                }
            }
        }
        m.kernel().into_iter().map(|coeffs| CoverAlgebraElement { coeffs }).collect()
    }

    /// `Σ_{w̃ ∈ W̃} sgn(w̃) w̃⁻¹ g̃ w̃` in `ℂW̃₋`, with `sgn = (−1)^{|w̃|}` when
    /// `twisted` (the image of `T^θ_g̃`) and `1` otherwise (the image of
    /// `T_g̃`, equal to `(1−θ)/2 T_g̃`).
    pub fn class_sum(&self, g: u32, twisted: bool) -> CoverAlgebraElement {
        let mut out = self.zero();
        for w in 0..self.cover.order() as u32 {
            let c = self.cover.mul(self.cover.mul(self.cover.inv(w), g), w);
            let mut term = self.from_cover(c);
            if twisted && self.cover.parity(w) == 1 {
                term = term.scale(&Qi2::int(-1));
            }
            out = out.add(&term);
        }
        out
    }

    /// Image of `θ`-centre: brute-force solution of `a w̃ = θ^{|w̃|} w̃ a`
    /// in `ℂW̃`, pushed to `ℂW̃₋`.
    pub fn theta_centre_image(&self) -> Vec<CoverAlgebraElement> {
        let n = self.cover.order();
        let gens = self.generators();
        let mut m: Matrix<Qi2> = Matrix::zeros(n * gens.len(), n);
        for (gi, &s) in gens.iter().enumerate() {
            let odd = self.cover.parity(s) == 1;
            for w in 0..n as u32 {
                let mut l = self.cover.mul(w, s);
                let r = self.cover.mul(s, w);
                if odd {
                    l = self.cover.mul(self.cover.theta, l);
                }
                let (l, r) = (l as usize, r as usize);
                let old = m.get(gi * n + l, w as usize).add(&Qi2::one());
                m.set(gi * n + l, w as usize, old);
                let old = m.get(gi * n + r, w as usize).sub(&Qi2::one());
                m.set(gi * n + r, w as usize, old);
            }
        }
        m.kernel()
            .into_iter()
            .map(|v| {
                let mut out = self.zero();
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        out = out.add(&self.from_cover(k as u32).scale(c));
                    }
                }
                out
            })
            .filter(|e| !e.is_zero())
            .collect()
    }

    pub fn rho(&self, alg: &Algebra, a: &CoverAlgebraElement) -> HcElement {
        let mut out = alg.zero();
        for (w, c) in a.support() {
            let p = &self.cover.elements[self.cover.lift[w as usize] as usize];
            out = out.add(&alg.rho(p).scale(&Scalar::constant(c.clone())));
        }
        out
    }
}

fn coords(v: &[CoverAlgebraElement]) -> Vec<Vec<Qi2>> {
    v.iter().map(|e| e.coeffs.clone()).collect()
}

pub fn span_equal(a: &[CoverAlgebraElement], b: &[CoverAlgebraElement]) -> bool {
    same_span(&coords(a), &coords(b))
}

/// A linearly independent subfamily, in order.
pub fn independent(v: Vec<CoverAlgebraElement>) -> Vec<CoverAlgebraElement> {
    let mut out: Vec<CoverAlgebraElement> = Vec::new();
    for e in v {
        let mut trial = coords(&out);
        trial.push(e.coeffs.clone());
        if Matrix::from_rows(trial).rank() > out.len() {
            out.push(e);
        }
    }
    out
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SumKind {
    /// `(1−θ)/2 T_g̃`.
    Plain,
    /// `T^{(−1)}_g̃`.
    Twisted,
}

/// One row of the catalogue, per conjugacy class of `W`.
#[derive(Clone, Debug)]
pub struct CatalogRow {
    pub split: SplitRow,
    pub kind: SumKind,
    pub sum: CoverAlgebraElement,
    /// Why the sum vanishes, if it does.
    pub zero_reason: Option<&'static str>,
    /// The admissible normalisation of `sum`, when nonzero.
    pub admissible: Option<CoverAlgebraElement>,
    /// The stated phase (`i^{|g̃|}` for odd `d`, `1` for even `d`) already
    /// gives a •-fixed element; otherwise an extra factor `i` was needed.
    pub stated_phase: bool,
}

impl CatalogRow {
    pub fn nonzero(&self) -> bool {
        !self.sum.is_zero()
    }
}

pub struct AdmissibleCatalog {
    pub rows: Vec<CatalogRow>,
    pub epsilon_centre: Vec<CoverAlgebraElement>,
    pub brute_force: Vec<CoverAlgebraElement>,
    pub admissible: Vec<CoverAlgebraElement>,
}

impl TwistedGroupAlgebra {
    /// The spanning set: `(1−θ)/2 T_g̃` for odd `d`, `T^{(−1)}_g̃` for even
    /// `d`, one per class of `W`, with vanishing sums tagged.
    pub fn class_sums(&self) -> Vec<CatalogRow> {
        let classes = self.group.conjugacy_classes();
        let splits = pin_conjugacy(&self.rd, &self.group, &self.cover, &classes);
        let kind = if self.d % 2 == 1 { SumKind::Plain } else { SumKind::Twisted };
        splits
            .into_iter()
            .map(|split| {
                let sum = self.class_sum(split.lift, kind == SumKind::Twisted);
                let zero_reason = sum.is_zero().then_some(match kind {
                    SumKind::Plain => "class does not split in the cover",
                    SumKind::Twisted if split.parity == 1 => "odd class",
                    SumKind::Twisted => "class does not split in the even subgroup",
                });
                let (admissible, stated_phase) = match self.admissible_normalisation(&sum, split.parity) {
                    Some((w, stated)) => (Some(w), stated),
                    None => (None, false),
                };
                CatalogRow { split, kind, sum, zero_reason, admissible, stated_phase }
            })
            .collect()
    }

    /// `i^{|g̃|} T` for odd `d`, `T` for even `d`, or `i` times that when
    /// only the latter is •-fixed. The flag records whether the first
    /// choice worked.
    fn admissible_normalisation(&self, sum: &CoverAlgebraElement, parity: u8) -> Option<(CoverAlgebraElement, bool)> {
        if sum.is_zero() {
            return None;
        }
        let w = if self.d % 2 == 1 && parity == 1 { sum.scale(&Qi2::i()) } else { sum.clone() };
        if self.bullet(&w) == w {
            return Some((w, true));
        }
        let iw = w.scale(&Qi2::i());
        (self.bullet(&iw) == iw).then_some((iw, false))
    }

    pub fn epsilon_centre_basis(&self) -> Vec<CoverAlgebraElement> {
        independent(self.class_sums().into_iter().filter(CatalogRow::nonzero).map(|r| r.sum).collect())
    }

    pub fn catalog(&self) -> AdmissibleCatalog {
        let rows = self.class_sums();
        let epsilon_centre = independent(rows.iter().filter(|r| r.nonzero()).map(|r| r.sum.clone()).collect());
        let admissible = rows.iter().filter_map(|r| r.admissible.clone()).collect();
        AdmissibleCatalog { rows, epsilon_centre, brute_force: self.brute_force_epsilon_centre(), admissible }
    }
}

/// Partition of `n` for a type-A class.
pub fn partition_of(rd: &RootDatum, group: &Group, rep: u32) -> Option<Vec<usize>> {
    (rd.family == Family::A).then(|| cycle_type(group.elem(rep), rd.rank + 1))
}

/// Parts are pairwise distinct.
pub fn distinct_parts(p: &[usize]) -> bool {
    p.windows(2).all(|w| w[0] != w[1])
}

/// The permutation with cycle type `p` is even.
pub fn even_partition(p: &[usize]) -> bool {
    p.iter().filter(|&&k| k % 2 == 0).count() % 2 == 0
}

/// Prediction that the class contributes an admissible element: for odd
/// `d`, no even parts; for even `d`, distinct parts and an even permutation.
pub fn sn_prediction(p: &[usize], d_odd: bool) -> bool {
    if d_odd {
        p.iter().all(|k| k % 2 == 1)
    } else {
        distinct_parts(p) && even_partition(p)
    }
}

/// One S_n class compared against brute force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictionRow {
    pub partition: Vec<usize>,
    pub predicted: bool,
    pub computed: bool,
    /// Odd permutation with distinct parts: split by the classical
    /// criterion but excluded by the no-even-parts rule.
    pub odd_distinct: bool,
}

pub fn sn_partition_predictions(tga: &TwistedGroupAlgebra) -> Vec<PredictionRow> {
    let d_odd = tga.d % 2 == 1;
    let mut rows: Vec<PredictionRow> = tga
        .class_sums()
        .into_iter()
        .filter_map(|r| {
            let p = partition_of(&tga.rd, &tga.group, r.split.representative)?;
            Some(PredictionRow {
                predicted: sn_prediction(&p, d_odd),
                computed: r.admissible.is_some(),
                odd_distinct: distinct_parts(&p) && !even_partition(&p),
                partition: p,
            })
        })
        .collect();
    rows.sort_by(|a, b| b.partition.cmp(&a.partition));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tga(f: Family, r: usize, a: usize) -> TwistedGroupAlgebra {
        let rd = Arc::new(RootDatum::build(f, r, a).unwrap());
        let g = Arc::new(rd.enumerate().unwrap());
        TwistedGroupAlgebra::build(rd, g, 100_000).unwrap()
    }

    #[test]
    fn multiplication_is_associative_and_theta_is_minus_one() {
        let t = tga(Family::A, 2, 3);
        let n = t.cover.order() as u32;
        for a in 0..n {
            for b in 0..n {
                let ab = t.from_cover(t.cover.mul(a, b));
                assert_eq!(t.mul(&t.from_cover(a), &t.from_cover(b)), ab);
            }
        }
        assert_eq!(t.from_cover(t.cover.theta), t.from_cover(0).scale(&Qi2::int(-1)));
    }

    #[test]
    fn bullet_matches_hc() {
        use crate::cherednik::Params;
        let t = tga(Family::A, 2, 3);
        let alg = Algebra::new(t.rd.clone(), t.group.clone(), Params::symbolic(1));
        let mut a = t.zero();
        a.coeffs[1] = Qi2::i();
        a.coeffs[2] = Qi2::int(3);
        assert_eq!(t.rho(&alg, &t.bullet(&a)), alg.bullet(&t.rho(&alg, &a)));
    }

    #[test]
    fn epsilon_centre_agrees_with_brute_force() {
        for (f, r, a) in [(Family::A, 2, 3), (Family::A, 3, 4), (Family::A1Product, 3, 3)] {
            let t = tga(f, r, a);
            let c = t.catalog();
            assert!(span_equal(&c.epsilon_centre, &c.brute_force), "{f:?} {r}");
            for e in &c.epsilon_centre {
                assert!(t.is_epsilon_central(e));
            }
        }
    }

    #[test]
    fn s4_even_is_the_three_one_class() {
        let t = tga(Family::A, 3, 4);
        let rows = sn_partition_predictions(&t);
        let found: Vec<_> = rows.iter().filter(|r| r.computed).map(|r| r.partition.clone()).collect();
        assert_eq!(found, vec![vec![3, 1]]);
        assert!(rows.iter().all(|r| r.predicted == r.computed));
    }

    #[test]
    fn theta_centre_projects_onto_epsilon_centre_for_even_d() {
        let t = tga(Family::A, 3, 4);
        assert!(span_equal(&t.theta_centre_image(), &t.brute_force_epsilon_centre()));
    }
}
