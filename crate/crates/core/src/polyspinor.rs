//! The representation of `HC` on `ℂ[V] ⊗ S`, with `S` the spinor module:
//! `x` multiplies, `y` acts by Dunkl operators, `W` by substitution and
//! `e_j` by spinor matrices. Each degree `ℂ[V]_k ⊗ S` is finite-dimensional.

use std::collections::HashMap;
use std::sync::Mutex;

use thiserror::Error;

use crate::cherednik::Algebra;
use crate::hc::{HcElement, Key};
use crate::linalg::Matrix;
use crate::numfield::Qi2;
use crate::poly::Mono;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyspinorError {
    #[error("element does not shift degree uniformly: terms shift by {0} and {1}")]
    Inhomogeneous(i64, i64),
    #[error("element shifts degree by {0}, not 0")]
    NotDegreePreserving(i64),
    #[error("parameters are not rational: {0}")]
    NotRational(String),
}

/// Matrices `γ(e_1), …, γ(e_d)` of size `2^{⌊d/2⌋}`.
#[derive(Clone, Debug)]
pub struct SpinorRep {
    pub d: usize,
    pub size: usize,
    pub gammas: Vec<Matrix<Qi2>>,
}

fn kron(a: &Matrix<Qi2>, b: &Matrix<Qi2>) -> Matrix<Qi2> {
    let mut out = Matrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.set(i * b.rows + k, j * b.cols + l, a.get(i, j).mul(b.get(k, l)));
                }
            }
        }
    }
    out
}

impl SpinorRep {
    pub fn new(d: usize) -> SpinorRep {
        let q = |n: i64| Qi2::int(n);
        let s1 = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
        let s2 = Matrix::from_rows(vec![vec![q(0), Qi2::i().neg()], vec![Qi2::i(), q(0)]]);
        let s3 = Matrix::from_rows(vec![vec![q(1), q(0)], vec![q(0), q(-1)]]);
        let id2 = Matrix::<Qi2>::identity(2);
        let m = d / 2;
        let size = 1usize << m;
        let mut gammas = Vec::with_capacity(d);
        for k in 0..m {
            for s in [&s1, &s2] {
                let mut g = Matrix::identity(1);
                for slot in 0..m {
                    let f = match slot.cmp(&k) {
                        std::cmp::Ordering::Less => &s3,
                        std::cmp::Ordering::Equal => s,
                        std::cmp::Ordering::Greater => &id2,
                    };
                    g = kron(&g, f);
                }
                gammas.push(g);
            }
        }
        if d % 2 == 1 {
            // i^m e_1 ⋯ e_{2m} squares to 1 and anticommutes with each e_j
            let mut p = Matrix::identity(size);
            for g in &gammas {
                p = p.mul(g);
            }
            gammas.push(p.scale(&Qi2::i().pow(m as u32)));
        }
        SpinorRep { d, size, gammas }
    }

    /// `γ(e_A)` with the factors in increasing index order.
    pub fn blade(&self, mask: u8) -> Matrix<Qi2> {
        let mut out = Matrix::identity(self.size);
        for j in 0..self.d {
            if mask & (1 << j) != 0 {
                out = out.mul(&self.gammas[j]);
            }
        }
        out
    }

    pub fn clifford_relations_hold(&self) -> bool {
        let id = Matrix::<Qi2>::identity(self.size);
        (0..self.d).all(|i| {
            (0..self.d).all(|j| {
                let ac = self.gammas[i].mul(&self.gammas[j]).add(&self.gammas[j].mul(&self.gammas[i]));
                if i == j {
                    ac == id.scale(&Qi2::int(2))
                } else {
                    ac.is_zero()
                }
            })
        })
    }

    /// A nonzero Hermitian `B` with `γ(e_j)^† B = −B γ(e_j)`, making each
    /// `e_j` skew-adjoint; none exists for odd `d`.
    pub fn skew_form(&self) -> Option<Matrix<Qi2>> {
        let n = self.size;
        let mut sys: Matrix<Qi2> = Matrix::zeros(self.d * n * n, n * n);
        for (j, g) in self.gammas.iter().enumerate() {
            let gd = g.adjoint();
            for a in 0..n {
                for b in 0..n {
                    let mut unit: Matrix<Qi2> = Matrix::zeros(n, n);
                    unit.set(a, b, Qi2::one());
                    let r = gd.mul(&unit).add(&unit.mul(g));
                    for i in 0..n {
                        for k in 0..n {
                            sys.set(j * n * n + i * n + k, a * n + b, r.get(i, k).clone());
                        }
                    }
                }
            }
        }
        let v = sys.kernel().into_iter().next()?;
        let b = Matrix::from_rows(v.chunks(n).map(<[Qi2]>::to_vec).collect());
        let herm = b.add(&b.adjoint());
        if !herm.is_zero() {
            return Some(herm);
        }
        Some(b.sub(&b.adjoint()).scale(&Qi2::i()))
    }
}

/// Monomials of degree `k` in `d` variables, in increasing order.
pub fn monomials(d: usize, k: u32) -> Vec<Mono> {
    fn rec(d: usize, var: usize, left: u32, cur: &mut Vec<u8>, out: &mut Vec<Mono>) {
        if var == d - 1 {
            cur[var] = left as u8;
            out.push(Mono::from_exps(cur));
            return;
        }
        for e in 0..=left {
            cur[var] = e as u8;
            rec(d, var + 1, left - e, cur, out);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    rec(d, 0, k, &mut vec![0; d], &mut out);
    out.sort();
    out
}

type Vector = HashMap<(Mono, usize), Scalar>;

pub struct PolySpinor<'a> {
    pub alg: &'a Algebra,
    pub spin: SpinorRep,
    dunkl: Mutex<HashMap<(usize, Mono), Vec<(Mono, Scalar)>>>,
}

impl<'a> PolySpinor<'a> {
    pub fn new(alg: &'a Algebra) -> Self {
        PolySpinor { alg, spin: SpinorRep::new(alg.d), dunkl: Mutex::new(HashMap::new()) }
    }

    pub fn dim(&self, k: u32) -> usize {
        monomials(self.alg.d, k).len() * self.spin.size
    }

    /// Dunkl operator `y_i` (1-based) on `x^m`.
    pub fn dunkl(&self, i: usize, m: Mono) -> Vec<(Mono, Scalar)> {
        if let Some(v) = self.dunkl.lock().expect("dunkl lock").get(&(i, m)) {
            return v.clone();
        }
        let mut acc: HashMap<Mono, Scalar> = HashMap::new();
        for (x, _g, c) in self.alg.dunkl_commutator(i - 1, m) {
            let e = acc.entry(x).or_insert_with(Scalar::zero);
            *e = e.add(&c);
        }
        let mut v: Vec<(Mono, Scalar)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by_key(|a| a.0);
        self.dunkl.lock().expect("dunkl lock").insert((i, m), v.clone());
        v
    }

    fn apply_y(&self, y: Mono, poly: HashMap<Mono, Scalar>) -> HashMap<Mono, Scalar> {
        let mut cur = poly;
        for i in 0..self.alg.d {
            for _ in 0..y.exp(i) {
                let mut next: HashMap<Mono, Scalar> = HashMap::new();
                for (m, c) in &cur {
                    for (m2, c2) in self.dunkl(i + 1, *m) {
                        let e = next.entry(m2).or_insert_with(Scalar::zero);
                        *e = e.add(&c.mul(&c2));
                    }
                }
                next.retain(|_, c| !c.is_zero());
                cur = next;
            }
        }
        cur
    }

    /// `(x^a y^b g ⊗ e_A)(x^m ⊗ σ_s)`.
    fn apply_key(&self, key: &Key, m: Mono, s: usize, out: &mut Vector, coeff: &Scalar) {
        let (gm, neg) = self.alg.act(key.g, m);
        let c0 = if neg { coeff.neg() } else { coeff.clone() };
        let poly = self.apply_y(key.y, HashMap::from([(gm, c0)]));
        let blade = self.spin.blade(key.e);
        for (pm, pc) in poly {
            let xm = pm.mul(key.x);
            for r in 0..self.spin.size {
                let b = blade.get(r, s);
                if b.is_zero() {
                    continue;
                }
                let e = out.entry((xm, r)).or_insert_with(Scalar::zero);
                *e = e.add(&pc.mul(&Scalar::constant(b.clone())));
            }
        }
    }

    /// Degree shift of `a`, which must be uniform over its terms.
    pub fn degree_shift(a: &HcElement) -> Result<i64, PolyspinorError> {
        let mut shift = None;
        for (k, _) in a.terms() {
            let s = k.x.degree() as i64 - k.y.degree() as i64;
            match shift {
                None => shift = Some(s),
                Some(t) if t != s => return Err(PolyspinorError::Inhomogeneous(t, s)),
                _ => {}
            }
        }
        Ok(shift.unwrap_or(0))
    }

    /// Matrix of `a` from degree `k` to degree `k + shift(a)`; empty when
    /// the target degree is negative.
    pub fn operator(&self, a: &HcElement, k: u32) -> Result<Matrix<Scalar>, PolyspinorError> {
        let shift = Self::degree_shift(a)?;
        let src = monomials(self.alg.d, k);
        let tk = k as i64 + shift;
        let tgt = if tk < 0 { Vec::new() } else { monomials(self.alg.d, tk as u32) };
        let sz = self.spin.size;
        let index: HashMap<Mono, usize> = tgt.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut out: Matrix<Scalar> = Matrix::zeros(tgt.len() * sz, src.len() * sz);
        for (col_m, m) in src.iter().enumerate() {
            for s in 0..sz {
                let mut v = Vector::new();
                for (key, c) in a.terms() {
                    self.apply_key(key, *m, s, &mut v, c);
                }
                for ((pm, r), c) in v {
                    if c.is_zero() {
                        continue;
                    }
                    let row = index[&pm] * sz + r;
                    out.set(row, col_m * sz + s, c);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of a degree-preserving `a` on `ℂ[V]_k ⊗ S`.
    pub fn matrix_of(&self, a: &HcElement, k: u32) -> Result<Matrix<Scalar>, PolyspinorError> {
        match Self::degree_shift(a)? {
            0 => self.operator(a, k),
            s => Err(PolyspinorError::NotDegreePreserving(s)),
        }
    }

    /// `⟨x^p, x^q⟩ = constant term of y^p x^q` on degree `k`, conjugate-linear
    /// in the first slot (the monomial basis is real).
    pub fn fischer_gram(&self, k: u32) -> Matrix<Scalar> {
        let mons = monomials(self.alg.d, k);
        let mut g = Matrix::zeros(mons.len(), mons.len());
        for (i, p) in mons.iter().enumerate() {
            for (j, q) in mons.iter().enumerate() {
                let r = self.apply_y(*p, HashMap::from([(*q, Scalar::one())]));
                if let Some(c) = r.get(&Mono::ONE) {
                    g.set(i, j, c.clone());
                }
            }
        }
        g
    }
}

/// Converts a matrix with constant entries.
pub fn to_constant(m: &Matrix<Scalar>) -> Result<Matrix<Qi2>, PolyspinorError> {
    let mut out = Matrix::zeros(m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            let c = m.get(i, j).as_constant().ok_or_else(|| PolyspinorError::NotRational(m.get(i, j).to_string()))?;
            out.set(i, j, c);
        }
    }
    Ok(out)
}

fn kron_scalar(a: &Matrix<Qi2>, b: &Matrix<Qi2>) -> Matrix<Qi2> {
    kron(a, b)
}

/// Dimension of the intersection of the column spans of two bases.
fn intersection_dim(a: &[Vec<Qi2>], b: &[Vec<Qi2>]) -> usize {
    let rank = |v: &[Vec<Qi2>]| if v.is_empty() { 0 } else { Matrix::from_rows(v.to_vec()).rank() };
    let both: Vec<Vec<Qi2>> = a.iter().chain(b).cloned().collect();
    rank(a) + rank(b) - rank(&both)
}

fn column_basis(m: &Matrix<Qi2>) -> Vec<Vec<Qi2>> {
    let t = m.transpose();
    let mut r = t.clone();
    let piv = r.rref();
    (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
}

/// One degree of the cohomology table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyRow {
    pub degree: u32,
    pub dim: usize,
    pub ker: usize,
    pub ker_cap_im: usize,
    pub cohomology: usize,
    /// `ρ(s̃) ker D_ω ⊆ ker D_ω` for the simple lifts.
    pub cover_invariant: bool,
    /// `(Ω_osp − ρ(ω)² + ¼) ker D_ω ⊆ im D_ω`.
    pub central_character: bool,
}

impl PolySpinor<'_> {
    /// `H(X, ω)` degree by degree; `d_omega` must preserve degree and the
    /// parameters must be rational.
    pub fn cohomology(
        &self,
        d_omega: &HcElement,
        casimir_shift: &HcElement,
        simple_lifts: &[HcElement],
        max_degree: u32,
    ) -> Result<Vec<CohomologyRow>, PolyspinorError> {
        let mut rows = Vec::new();
        for k in 0..=max_degree {
            let dm = to_constant(&self.matrix_of(d_omega, k)?)?;
            let ker = dm.kernel();
            let im = column_basis(&dm);
            let cap = intersection_dim(&ker, &im);
            let cover_invariant = simple_lifts.iter().try_fold(true, |ok, s| {
                let r = to_constant(&self.matrix_of(s, k)?)?;
                Ok::<bool, PolyspinorError>(
                    ok && ker.iter().all(|v| {
                        let rv = r.mul(&Matrix::from_rows(vec![v.clone()]).transpose());
                        dm.mul(&rv).is_zero()
                    }),
                )
            })?;
            let shift = to_constant(&self.matrix_of(casimir_shift, k)?)?;
            let central_character = ker.iter().all(|v| {
                let w = shift.mul(&Matrix::from_rows(vec![v.clone()]).transpose()).column(0);
                let mut span = im.clone();
                let before = if span.is_empty() { 0 } else { Matrix::from_rows(span.clone()).rank() };
                span.push(w);
                Matrix::from_rows(span).rank() == before
            });
            rows.push(CohomologyRow {
                degree: k,
                dim: dm.cols,
                ker: ker.len(),
                ker_cap_im: cap,
                cohomology: ker.len() - cap,
                cover_invariant,
                central_character,
            });
        }
        Ok(rows)
    }
}

/// Result of the •-Hermitian form check on one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianRow {
    pub degree: u32,
    /// Generators `η` for which `π(η)^† G = G π(η•)` fails.
    pub failures: Vec<String>,
    /// Whether a spinor form with skew-adjoint `e_j` exists.
    pub spinor_form: bool,
    /// Leading principal minors of the polynomial Gram matrix are positive.
    pub positive_minors: bool,
}

impl HermitianRow {
    pub fn hermitian(&self) -> bool {
        self.spinor_form && self.failures.is_empty()
    }
}

impl PolySpinor<'_> {
    /// Checks the pairing `G = G_poly ⊗ B` against `x_i`, `y_i`, the
    /// reflections and `e_j` between degrees `k` and `k + 1`.
    pub fn hermitian_check(&self, k: u32) -> Result<HermitianRow, PolyspinorError> {
        let b = self.spin.skew_form();
        let spinor_form = b.is_some();
        let b = b.unwrap_or_else(|| Matrix::identity(self.spin.size));
        let g0 = to_constant(&self.fischer_gram(k))?;
        let g1 = to_constant(&self.fischer_gram(k + 1))?;
        let positive_minors = g0.leading_minors().iter().all(|m| m.as_rat().is_some_and(|r| r.signum() > 0));
        let gk = kron_scalar(&g0, &b);
        let gk1 = kron_scalar(&g1, &b);
        let alg = self.alg;
        let mut failures = Vec::new();
        let mut check = |name: String, eta: &HcElement, src: u32| -> Result<(), PolyspinorError> {
            let eb = alg.bullet(eta);
            let shift = Self::degree_shift(eta)?;
            let tgt = (src as i64 + shift) as u32;
            let (gs, gt) = if src == k { (&gk, if tgt == k { &gk } else { &gk1 }) } else { (&gk1, &gk) };
            let p = to_constant(&self.operator(eta, src)?)?;
            let q = to_constant(&self.operator(&eb, tgt)?)?;
            if p.adjoint().mul(gt) != gs.mul(&q) {
                failures.push(name);
            }
            Ok(())
        };
        for i in 1..=alg.d {
            check(format!("x{i}"), &alg.x(i), k)?;
            check(format!("y{i}"), &alg.y(i), k + 1)?;
            check(format!("e{i}"), &alg.e(i), k)?;
        }
        for (n, &g) in alg.refl.iter().enumerate() {
            check(format!("s{n}"), &alg.group_elem(g), k)?;
        }
        Ok(HermitianRow { degree: k, failures, spinor_form, positive_minors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cherednik::Params;
    use crate::osp::Osp;
    use crate::rational::Rat;
    use crate::roots::{Family, RootDatum};
    use std::sync::Arc;

    fn algebra(f: Family, r: usize, a: usize, p: Option<Params>) -> Algebra {
        let rd = RootDatum::build(f, r, a).unwrap();
        let g = rd.enumerate().unwrap();
        let p = p.unwrap_or_else(|| Params::symbolic(rd.num_orbits));
        Algebra::new(Arc::new(rd), Arc::new(g), p)
    }

    #[test]
    fn spinor_matrices() {
        for d in 1..=6 {
            let s = SpinorRep::new(d);
            assert_eq!(s.size, 1 << (d / 2));
            assert!(s.clifford_relations_hold(), "d = {d}");
            assert_eq!(s.skew_form().is_some(), d % 2 == 0, "d = {d}");
        }
    }

    #[test]
    fn dimensions() {
        let alg = algebra(Family::A1Product, 3, 3, None);
        let ps = PolySpinor::new(&alg);
        for k in 0..4 {
            let binom = ((k + 1) * (k + 2) / 2) as usize;
            assert_eq!(ps.dim(k), binom * 2);
        }
    }

    #[test]
    fn euler_action_at_c_zero() {
        let alg = algebra(Family::A1Product, 3, 3, None);
        let alg0 = alg.with_params(alg.params.zero_c());
        let ps = PolySpinor::new(&alg0);
        let m = ps.matrix_of(&alg0.mul(&alg0.x(1), &alg0.y(1)), 2).unwrap();
        let mons = monomials(3, 2);
        for (i, mono) in mons.iter().enumerate() {
            for s in 0..2 {
                let r = i * 2 + s;
                for c in 0..m.cols {
                    let expect = if c == r { Scalar::t().mul(&Scalar::int(mono.exp(0) as i64)) } else { Scalar::zero() };
                    assert_eq!(m.get(r, c), &expect);
                }
            }
        }
    }

    #[test]
    fn representation_is_multiplicative() {
        let alg = algebra(Family::A, 2, 3, None);
        let ps = PolySpinor::new(&alg);
        let a = alg.mul(&alg.x(1), &alg.e(2));
        let b = alg.mul(&alg.y(2), &alg.group_elem(alg.refl[0]));
        let ab = alg.mul(&a, &b);
        let lhs = ps.operator(&ab, 2).unwrap();
        let rhs = ps.operator(&a, 1).unwrap().mul(&ps.operator(&b, 2).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inhomogeneous_request_fails() {
        let alg = algebra(Family::A1Product, 3, 3, None);
        let ps = PolySpinor::new(&alg);
        assert!(ps.matrix_of(&alg.x(1), 1).is_err());
        assert!(ps.matrix_of(&alg.x(1).add(&alg.one()), 1).is_err());
    }

    #[test]
    fn fischer_form_at_c_zero() {
        let p = Params::specialized(Rat::int(1), &[Rat::ZERO]);
        let alg = algebra(Family::A, 2, 3, Some(p));
        let ps = PolySpinor::new(&alg);
        let g = to_constant(&ps.fischer_gram(2)).unwrap();
        assert!(g.leading_minors().iter().all(|m| m.as_rat().is_some_and(|r| r.signum() > 0)));
        let osp = Osp::build(&alg).unwrap();
        let m = ps.matrix_of(&osp.scasimir, 1).unwrap();
        assert_eq!(m.rows, 6);
    }
}
