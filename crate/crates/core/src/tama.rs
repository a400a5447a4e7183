//! The graded centraliser `O_{t,c}` of `osp(1|2)` in `H ⊗ C`: its
//! generators `Ǒ_j`, `O_ij`, `O_ijk`, `O_A`, the relations among them,
//! centre candidates, and the Dirac element `D = Γ𝒮` with its deformations.
//!
//! Conventions fixed by computation:
//!
//! * `Ǒ_j = −½ Σ_{α>0} ⟨y_j, α⟩ c(α) s_α ⊗ γ(α∨)`, which is the value of
//!   `−(t/2) P(e_j)`;
//! * `O_A = ((|A|−1)t/2 + Σ_a Ǒ_a e_a − Σ_{a<b} M_ab e_a e_b) e_A`, which
//!   equals `−(t/2) P(e_A)` and agrees with the displayed two- and
//!   three-index generators.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;
use thiserror::Error;

use crate::cherednik::Algebra;
use crate::clifford::{pseudo_scalar, unit_vector, Clifford};
use crate::hc::HcElement;
use crate::numfield::Qi2;
use crate::osp::{Osp, OspError};
use crate::pin::{lift_reflection, PinCover};
use crate::report::CheckRecord;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TamaError {
    #[error(transparent)]
    Osp(#[from] OspError),
    #[error("{name} is not in the centraliser; witness {witness}")]
    NotInCentraliser { name: String, witness: String },
    #[error("index {0} out of range")]
    BadIndex(usize),
}

pub struct Tama {
    pub osp: Osp,
    /// `Ǒ_1, …, Ǒ_d`.
    pub o_check: Vec<HcElement>,
    /// `1 ⊗ Γ`.
    pub gamma: HcElement,
    /// `D = Γ𝒮`.
    pub dirac: HcElement,
    cache: Mutex<HashMap<Vec<usize>, HcElement>>,
}

/// Sorts distinct indices, returning the permutation sign; `None` on a repeat.
pub fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, n, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], n, &mut out);
    out.into_iter()
        .map(|p| {
            let s = sort_sign(&p).expect("distinct").1;
            (p, s)
        })
        .collect()
}

/// `𝒜(f)(u_1, …, u_n) = (1/n!) Σ_σ sgn(σ) f(u_{σ(1)}, …, u_{σ(n)})`.
pub fn antisymmetrize(alg: &Algebra, idx: &[usize], f: impl Fn(&[usize]) -> HcElement) -> HcElement {
    let perms = permutations(idx.len());
    let mut acc = alg.zero();
    for (p, s) in &perms {
        let permuted: Vec<usize> = p.iter().map(|&k| idx[k]).collect();
        let v = f(&permuted);
        acc = if *s > 0 { acc.add(&v) } else { acc.sub(&v) };
    }
    acc.scale(&Scalar::rat(1, perms.len() as i64))
}

/// All ordered tuples of `k` distinct indices from `1..=d`.
pub fn index_tuples(k: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(k: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 1..=d {
            if !cur.contains(&i) {
                cur.push(i);
                rec(k, d, cur, out);
                cur.pop();
            }
        }
    }
    rec(k, d, &mut cur, &mut out);
    out
}

fn blade_of(alg: &Algebra, sorted: &[usize]) -> HcElement {
    alg.blade(sorted.iter().fold(0u8, |m, &j| m | (1 << (j - 1))))
}

impl Tama {
    pub fn build(alg: &Algebra) -> Result<Tama, TamaError> {
        Tama::from_osp(alg, Osp::build(alg)?)
    }

    pub fn from_osp(alg: &Algebra, osp: Osp) -> Result<Tama, TamaError> {
        let o_check: Vec<HcElement> = (1..=alg.d).map(|j| o_check_element(alg, j)).collect();
        let gamma = alg.tensor(0, &pseudo_scalar::<Qi2>(alg.d));
        let dirac = alg.mul(&gamma, &osp.scasimir);
        let tama = Tama { osp, o_check, gamma, dirac, cache: Mutex::new(HashMap::new()) };
        for (j, o) in tama.o_check.iter().enumerate() {
            if let Some(r) = tama.osp.centraliser_residuals(alg, o).into_iter().find(|r| !r.is_zero()) {
                return Err(TamaError::NotInCentraliser {
                    name: format!("Ǒ_{}", j + 1),
                    witness: r.witness().unwrap_or_default(),
                });
            }
        }
        Ok(tama)
    }

    /// `Ǒ_j`, 1-based.
    pub fn oc(&self, j: usize) -> &HcElement {
        &self.o_check[j - 1]
    }

    /// `M_ij = x_i y_j − x_j y_i`.
    pub fn m(&self, alg: &Algebra, i: usize, j: usize) -> HcElement {
        alg.mul(&alg.x(i), &alg.y(j)).sub(&alg.mul(&alg.x(j), &alg.y(i)))
    }

    /// `O_{u_1 … u_n}` for basis indices: skew-symmetric, zero on repeats,
    /// `O_j = Ǒ_j`.
    pub fn o(&self, alg: &Algebra, idx: &[usize]) -> HcElement {
        let Some((sorted, sign)) = sort_sign(idx) else {
            return alg.zero();
        };
        if sorted.is_empty() {
            return alg.scalar(alg.t().mul(&Scalar::rat(-1, 2)));
        }
        let cached = self.cache.lock().expect("cache lock").get(&sorted).cloned();
        let v = match cached {
            Some(v) => v,
            None => {
                let v = self.o_sorted(alg, &sorted);
                self.cache.lock().expect("cache lock").insert(sorted, v.clone());
                v
            }
        };
        if sign > 0 {
            v
        } else {
            v.neg()
        }
    }

    fn o_sorted(&self, alg: &Algebra, a: &[usize]) -> HcElement {
        let k = a.len() as i64;
        let mut inner = alg.scalar(alg.t().mul(&Scalar::rat(k - 1, 2)));
        for &i in a {
            inner = inner.add(&alg.mul(self.oc(i), &alg.e(i)));
        }
        for (p, &i) in a.iter().enumerate() {
            for &j in &a[p + 1..] {
                inner = inner.sub(&alg.mul(&self.m(alg, i, j), &alg.mul(&alg.e(i), &alg.e(j))));
            }
        }
        alg.mul(&inner, &blade_of(alg, a))
    }

    /// The two-index generator in its displayed form
    /// `M_ij + t e_i e_j / 2 + Ǒ_i e_j − Ǒ_j e_i`.
    pub fn o2_displayed(&self, alg: &Algebra, i: usize, j: usize) -> HcElement {
        let half_t = alg.t().mul(&Scalar::rat(1, 2));
        self.m(alg, i, j)
            .add(&alg.mul(&alg.e(i), &alg.e(j)).scale(&half_t))
            .add(&alg.mul(self.oc(i), &alg.e(j)))
            .sub(&alg.mul(self.oc(j), &alg.e(i)))
    }

    /// The three-index generator in its displayed form.
    pub fn o3_displayed(&self, alg: &Algebra, i: usize, j: usize, k: usize) -> HcElement {
        let e = |a: usize| alg.e(a);
        let ee = |a: usize, b: usize| alg.mul(&e(a), &e(b));
        self.m(alg, i, j)
            .mul_right(alg, &e(k))
            .sub(&self.m(alg, i, k).mul_right(alg, &e(j)))
            .add(&self.m(alg, j, k).mul_right(alg, &e(i)))
            .add(&alg.mul(&ee(i, j), &e(k)).scale(alg.t()))
            .add(&alg.mul(self.oc(i), &ee(j, k)))
            .sub(&alg.mul(self.oc(j), &ee(i, k)))
            .add(&alg.mul(self.oc(k), &ee(i, j)))
    }

    /// `−(t/2) P(e_A)`.
    pub fn o_from_projection(&self, alg: &Algebra, idx: &[usize]) -> HcElement {
        let Some((sorted, sign)) = sort_sign(idx) else {
            return alg.zero();
        };
        let p = self.osp.project_unchecked(alg, &blade_of(alg, &sorted));
        p.scale(&alg.t().mul(&Scalar::rat(-sign, 2)))
    }
}

trait MulRight {
    fn mul_right(&self, alg: &Algebra, o: &HcElement) -> HcElement;
}

impl MulRight for HcElement {
    fn mul_right(&self, alg: &Algebra, o: &HcElement) -> HcElement {
        alg.mul(self, o)
    }
}

/// `Ǒ_j = −½ Σ_{α>0} ⟨y_j, α⟩ c(α) s_α ⊗ γ(α∨)`.
pub fn o_check_element(alg: &Algebra, j: usize) -> HcElement {
    let d = alg.d;
    let mut acc = alg.zero();
    for (k, alpha) in alg.rd.roots.iter().enumerate() {
        if alpha[j - 1] == 0 {
            continue;
        }
        let v: Vec<Qi2> = alg.rd.coroots[k].iter().map(|&a| Qi2::int(a)).collect();
        let coeff = alg.root_c(k).mul(&Scalar::rat(-alpha[j - 1], 2));
        acc = acc.add(&alg.tensor(alg.refl[k], &Clifford::vector(d, &v)).scale(&coeff));
    }
    acc
}

/// The reading of `Ǒ_j` with the unit vector `α∨/|α∨|` and a positive sign.
/// It does not lie in the centraliser in general; kept for the record.
pub fn o_check_unit_reading(alg: &Algebra, j: usize) -> HcElement {
    let mut acc = alg.zero();
    for (k, alpha) in alg.rd.roots.iter().enumerate() {
        if alpha[j - 1] == 0 {
            continue;
        }
        let u = Clifford::vector(alg.d, &unit_vector(&alg.rd.coroots[k]));
        let coeff = alg.root_c(k).mul(&Scalar::rat(alpha[j - 1], 2));
        acc = acc.add(&alg.tensor(alg.refl[k], &u).scale(&coeff));
    }
    acc
}

/// A relation among the generators, evaluated as `lhs − rhs` on a tuple of
/// distinct indices.
pub struct Relation {
    pub id: &'static str,
    pub arity: usize,
    pub statement: &'static str,
    /// `false` for forms corrected from the displayed statement.
    pub as_displayed: bool,
    pub eval: fn(&Tama, &Algebra, &[usize]) -> HcElement,
}

fn comm(alg: &Algebra, a: &HcElement, b: &HcElement) -> HcElement {
    alg.mul(a, b).sub(&alg.mul(b, a))
}

fn acomm(alg: &Algebra, a: &HcElement, b: &HcElement) -> HcElement {
    alg.mul(a, b).add(&alg.mul(b, a))
}

pub fn relations() -> Vec<Relation> {
    vec![
        Relation {
            id: "o2-ocheck-cyclic",
            arity: 3,
            as_displayed: true,
            statement: "[O_ij,Ǒ_k] − [O_ik,Ǒ_j] + [O_jk,Ǒ_i] = 0",
            eval: |g, a, u| {
                let (i, j, k) = (u[0], u[1], u[2]);
                comm(a, &g.o(a, &[i, j]), g.oc(k))
                    .sub(&comm(a, &g.o(a, &[i, k]), g.oc(j)))
                    .add(&comm(a, &g.o(a, &[j, k]), g.oc(i)))
            },
        },
        Relation {
            id: "o3-ocheck-cyclic",
            arity: 4,
            as_displayed: true,
            statement: "{O_ijk,Ǒ_l} − {O_ijl,Ǒ_k} + {O_ikl,Ǒ_j} − {O_jkl,Ǒ_i} = 0",
            eval: |g, a, u| {
                let (i, j, k, l) = (u[0], u[1], u[2], u[3]);
                acomm(a, &g.o(a, &[i, j, k]), g.oc(l))
                    .sub(&acomm(a, &g.o(a, &[i, j, l]), g.oc(k)))
                    .add(&acomm(a, &g.o(a, &[i, k, l]), g.oc(j)))
                    .sub(&acomm(a, &g.o(a, &[j, k, l]), g.oc(i)))
            },
        },
        Relation {
            id: "o2-o2-shared",
            arity: 3,
            as_displayed: true,
            statement: "[O_ij,O_ki] = t O_jk + [Ǒ_i,Ǒ_j] + {O_ijk,Ǒ_i}",
            eval: |g, a, u| {
                let (i, j, k) = (u[0], u[1], u[2]);
                let lhs = comm(a, &g.o(a, &[i, j]), &g.o(a, &[k, i]));
                let rhs = g
                    .o(a, &[j, k])
                    .scale(a.t())
                    .add(&comm(a, g.oc(i), g.oc(j)))
                    .add(&acomm(a, &g.o(a, &[i, j, k]), g.oc(i)));
                lhs.sub(&rhs)
            },
        },
        Relation {
            id: "o2-o2-shared-corrected",
            arity: 3,
            as_displayed: false,
            statement: "[O_ij,O_ki] = t O_jk + [Ǒ_j,Ǒ_k] + {O_ijk,Ǒ_i}",
            eval: |g, a, u| {
                let (i, j, k) = (u[0], u[1], u[2]);
                let lhs = comm(a, &g.o(a, &[i, j]), &g.o(a, &[k, i]));
                let rhs = g
                    .o(a, &[j, k])
                    .scale(a.t())
                    .add(&comm(a, g.oc(j), g.oc(k)))
                    .add(&acomm(a, &g.o(a, &[i, j, k]), g.oc(i)));
                lhs.sub(&rhs)
            },
        },
        Relation {
            id: "o2-o2-disjoint",
            arity: 4,
            as_displayed: true,
            statement: "[O_ij,O_kl] = {Ǒ_i,O_jkl} − {Ǒ_j,O_ikl}",
            eval: |g, a, u| {
                let (i, j, k, l) = (u[0], u[1], u[2], u[3]);
                let lhs = comm(a, &g.o(a, &[i, j]), &g.o(a, &[k, l]));
                let rhs = acomm(a, g.oc(i), &g.o(a, &[j, k, l])).sub(&acomm(a, g.oc(j), &g.o(a, &[i, k, l])));
                lhs.sub(&rhs)
            },
        },
        Relation {
            id: "o2-o3-disjoint",
            arity: 5,
            as_displayed: true,
            statement: "[O_jk,O_lmn] = [Ǒ_j,O_klmn] − [Ǒ_k,O_jlmn]",
            eval: |g, a, u| {
                let (j, k, l, m, n) = (u[0], u[1], u[2], u[3], u[4]);
                let lhs = comm(a, &g.o(a, &[j, k]), &g.o(a, &[l, m, n]));
                let rhs = comm(a, g.oc(j), &g.o(a, &[k, l, m, n])).sub(&comm(a, g.oc(k), &g.o(a, &[j, l, m, n])));
                lhs.sub(&rhs)
            },
        },
        Relation {
            id: "o2-o3-one-shared",
            arity: 4,
            as_displayed: true,
            statement: "[O_jk,O_jlm] = −t O_klm − {Ǒ_k,O_lm} − [Ǒ_j,O_jklm]",
            eval: |g, a, u| {
                let (j, k, l, m) = (u[0], u[1], u[2], u[3]);
                let lhs = comm(a, &g.o(a, &[j, k]), &g.o(a, &[j, l, m]));
                let rhs = g
                    .o(a, &[k, l, m])
                    .scale(a.t())
                    .add(&acomm(a, g.oc(k), &g.o(a, &[l, m])))
                    .add(&comm(a, g.oc(j), &g.o(a, &[j, k, l, m])))
                    .neg();
                lhs.sub(&rhs)
            },
        },
        Relation {
            id: "o2-o3-two-shared",
            arity: 3,
            as_displayed: true,
            statement: "[O_jk,O_jkl] = −{Ǒ_j,O_jl} − {Ǒ_k,O_kl}",
            eval: |g, a, u| {
                let (j, k, l) = (u[0], u[1], u[2]);
                let lhs = comm(a, &g.o(a, &[j, k]), &g.o(a, &[j, k, l]));
                let rhs = acomm(a, g.oc(j), &g.o(a, &[j, l])).add(&acomm(a, g.oc(k), &g.o(a, &[k, l]))).neg();
                lhs.sub(&rhs)
            },
        },
        Relation {
            id: "o3-square",
            arity: 3,
            as_displayed: true,
            statement: "{O_ijk,O_ijk} = 2(Ǒ_i² + Ǒ_j² + Ǒ_k² + O_ij² + O_ik² + O_jk²) − t²/2",
            eval: |g, a, u| {
                let (i, j, k) = (u[0], u[1], u[2]);
                let o3 = g.o(a, &[i, j, k]);
                let lhs = acomm(a, &o3, &o3);
                let sq = |x: &HcElement| a.mul(x, x);
                let sum = sq(g.oc(i))
                    .add(&sq(g.oc(j)))
                    .add(&sq(g.oc(k)))
                    .add(&sq(&g.o(a, &[i, j])))
                    .add(&sq(&g.o(a, &[i, k])))
                    .add(&sq(&g.o(a, &[j, k])));
                let t2 = a.t().mul(a.t()).mul(&Scalar::rat(1, 2));
                let rhs = sum.scale(&Scalar::int(2)).sub(&a.scalar(t2));
                lhs.sub(&rhs)
            },
        },
        Relation {
            id: "o3-o3-two-shared",
            arity: 4,
            as_displayed: true,
            statement: "{O_ijk,O_ijl} = {Ǒ_k,Ǒ_l} + {O_ik,O_il} + {O_jk,O_jl}",
            eval: |g, a, u| {
                let (i, j, k, l) = (u[0], u[1], u[2], u[3]);
                let lhs = acomm(a, &g.o(a, &[i, j, k]), &g.o(a, &[i, j, l]));
                let rhs = acomm(a, g.oc(k), g.oc(l))
                    .add(&acomm(a, &g.o(a, &[i, k]), &g.o(a, &[i, l])))
                    .add(&acomm(a, &g.o(a, &[j, k]), &g.o(a, &[j, l])));
                lhs.sub(&rhs)
            },
        },
        Relation {
            id: "o3-o3-one-shared",
            arity: 5,
            as_displayed: true,
            statement: "{O_ijk,O_imn} = t O_jkmn + {O_jk,O_mn} + {Ǒ_i,O_ijkmn}",
            eval: |g, a, u| {
                let (i, j, k, m, n) = (u[0], u[1], u[2], u[3], u[4]);
                let lhs = acomm(a, &g.o(a, &[i, j, k]), &g.o(a, &[i, m, n]));
                let rhs = g
                    .o(a, &[j, k, m, n])
                    .scale(a.t())
                    .add(&acomm(a, &g.o(a, &[j, k]), &g.o(a, &[m, n])))
                    .add(&acomm(a, g.oc(i), &g.o(a, &[i, j, k, m, n])));
                lhs.sub(&rhs)
            },
        },
        Relation {
            id: "o3-o3-disjoint",
            arity: 6,
            as_displayed: true,
            statement: "{O_ijk,O_lmn} = {Ǒ_i,O_jklmn} − {Ǒ_j,O_iklmn} + {Ǒ_k,O_ijlmn}",
            eval: |g, a, u| {
                let (i, j, k, l, m, n) = (u[0], u[1], u[2], u[3], u[4], u[5]);
                let lhs = acomm(a, &g.o(a, &[i, j, k]), &g.o(a, &[l, m, n]));
                let rhs = acomm(a, g.oc(i), &g.o(a, &[j, k, l, m, n]))
                    .sub(&acomm(a, g.oc(j), &g.o(a, &[i, k, l, m, n])))
                    .add(&acomm(a, g.oc(k), &g.o(a, &[i, j, l, m, n])));
                lhs.sub(&rhs)
            },
        },
    ]
}

impl Tama {
    /// Evaluates one relation on every ordered tuple of distinct indices.
    /// Returns the tuples with a nonzero residual and its witness.
    pub fn relation_failures(&self, alg: &Algebra, rel: &Relation) -> Vec<(Vec<usize>, String)> {
        let tuples = index_tuples(rel.arity, alg.d);
        let mut out: Vec<(Vec<usize>, String)> = tuples
            .par_iter()
            .filter_map(|u| {
                let r = (rel.eval)(self, alg, u);
                (!r.is_zero()).then(|| (u.clone(), r.witness().unwrap_or_default()))
            })
            .collect();
        out.sort();
        out
    }

    pub fn relation_suite(&self, alg: &Algebra, which: Option<&[&str]>) -> Vec<CheckRecord> {
        relations()
            .into_iter()
            .filter(|r| which.is_none_or(|w| w.contains(&r.id)))
            .map(|rel| {
                if rel.arity > alg.d {
                    return CheckRecord::skipped(
                        "relations",
                        rel.id,
                        rel.statement,
                        format!("needs {} distinct indices, d = {}", rel.arity, alg.d),
                    );
                }
                let fails = self.relation_failures(alg, &rel);
                let n = index_tuples(rel.arity, alg.d).len();
                let mut rec = CheckRecord::bool("relations", rel.id, rel.statement, fails.is_empty())
                    .with_note(format!("{} index tuples, {} failing", n, fails.len()));
                if let Some((u, w)) = fails.first() {
                    rec = rec.with_witness(format!("{u:?}: {w}"));
                }
                rec
            })
            .collect()
    }

    /// `O_klmn − t^{−h}(6𝒜(O_kl O_mn) − 8𝒜(O_klm Ǒ_n))` with `h = 1` when
    /// `homogeneous`, `h = 0` for the form read at `t = 1`.
    pub fn reconstruction4(&self, alg: &Algebra, u: &[usize], homogeneous: bool) -> HcElement {
        let a = antisymmetrize(alg, u, |v| alg.mul(&self.o(alg, &v[0..2]), &self.o(alg, &v[2..4])));
        let b = antisymmetrize(alg, u, |v| alg.mul(&self.o(alg, &v[0..3]), self.oc(v[3])));
        let rhs = a.scale(&Scalar::int(6)).sub(&b.scale(&Scalar::int(8)));
        self.o(alg, u).sub(&rhs.scale(&self.t_power(alg, homogeneous, 1)))
    }

    fn t_power(&self, alg: &Algebra, homogeneous: bool, k: u32) -> Scalar {
        if homogeneous {
            alg.t().pow(k).inv().expect("t invertible")
        } else {
            Scalar::one()
        }
    }

    /// The expanded four-index form. With `corrected`, the third
    /// anticommutator is `{O_kn, O_lm}`; otherwise `{O_kn, O_ln}` as displayed.
    pub fn reconstruction4_expanded(&self, alg: &Algebra, u: &[usize], corrected: bool, homogeneous: bool) -> HcElement {
        let (k, l, m, n) = (u[0], u[1], u[2], u[3]);
        let o = |v: &[usize]| self.o(alg, v);
        let third = if corrected { acomm(alg, &o(&[k, n]), &o(&[l, m])) } else { acomm(alg, &o(&[k, n]), &o(&[l, n])) };
        let rhs = acomm(alg, &o(&[k, l]), &o(&[m, n]))
            .sub(&acomm(alg, &o(&[k, m]), &o(&[l, n])))
            .add(&third)
            .sub(
                &alg.mul(&o(&[k, l, m]), self.oc(n))
                    .sub(&alg.mul(&o(&[k, l, n]), self.oc(m)))
                    .add(&alg.mul(&o(&[k, m, n]), self.oc(l)))
                    .sub(&alg.mul(&o(&[l, m, n]), self.oc(k)))
                    .scale(&Scalar::int(2)),
            );
        o(u).sub(&rhs.scale(&self.t_power(alg, homogeneous, 1)))
    }

    /// `O_jklmn − (4t^{−h}𝒜(O_jkl O_mn) + 48t^{−2h}𝒜(O_jkl Ǒ_m Ǒ_n)
    /// − 36t^{−2h}𝒜(O_jk O_lm Ǒ_n))`, `h` as in [`Tama::reconstruction4`].
    pub fn reconstruction5(&self, alg: &Algebra, u: &[usize], homogeneous: bool) -> HcElement {
        let a = antisymmetrize(alg, u, |v| alg.mul(&self.o(alg, &v[0..3]), &self.o(alg, &v[3..5])));
        let b = antisymmetrize(alg, u, |v| alg.product(&[&self.o(alg, &v[0..3]), self.oc(v[3]), self.oc(v[4])]));
        let c = antisymmetrize(alg, u, |v| alg.product(&[&self.o(alg, &v[0..2]), &self.o(alg, &v[2..4]), self.oc(v[4])]));
        let t1 = self.t_power(alg, homogeneous, 1);
        let t2 = self.t_power(alg, homogeneous, 2);
        self.o(alg, u)
            .sub(&a.scale(&t1.mul(&Scalar::int(4))))
            .sub(&b.scale(&t2.mul(&Scalar::int(48))))
            .add(&c.scale(&t2.mul(&Scalar::int(36))))
    }

    /// `𝒮Γ − (i^{d(d−1)/2}/t) O_{1…d}`.
    pub fn s_gamma_residual(&self, alg: &Algebra) -> HcElement {
        let d = alg.d;
        let k = (d * (d - 1) / 2) % 4;
        let phase = [Scalar::one(), Scalar::i(), Scalar::int(-1), Scalar::i().neg()][k].clone();
        let all: Vec<usize> = (1..=d).collect();
        let rhs = self.o(alg, &all).scale(&phase.mul(&alg.t().inv().expect("t invertible")));
        alg.mul(&self.osp.scasimir, &self.gamma).sub(&rhs)
    }

    /// `𝒮² − ((d−1)(d−2)/8 − ((d−2)/t²) Σ Ǒ_j² − (1/t²) Σ_{j<k} O_jk²)`.
    pub fn s_square_expansion_residual(&self, alg: &Algebra) -> HcElement {
        let d = alg.d as i64;
        let inv_t2 = alg.t().mul(alg.t()).inv().expect("t invertible");
        let mut sum1 = alg.zero();
        for j in 1..=alg.d {
            sum1 = sum1.add(&alg.mul(self.oc(j), self.oc(j)));
        }
        let mut sum2 = alg.zero();
        for j in 1..=alg.d {
            for k in j + 1..=alg.d {
                let o = self.o(alg, &[j, k]);
                sum2 = sum2.add(&alg.mul(&o, &o));
            }
        }
        let rhs = alg
            .scalar(Scalar::rat((d - 1) * (d - 2), 8))
            .sub(&sum1.scale(&inv_t2.mul(&Scalar::int(d - 2))))
            .sub(&sum2.scale(&inv_t2));
        alg.mul(&self.osp.scasimir, &self.osp.scasimir).sub(&rhs)
    }

    /// `ρ(w̃) O_u − (−1)^{|w̃| n} O_{w·u} ρ(w̃)` for the lift `w̃` of the
    /// reflection in positive root `k`.
    pub fn covariance_residual(&self, alg: &Algebra, k: usize, u: &[usize]) -> HcElement {
        let lift = lift_reflection(&alg.rd, &alg.group, k);
        let r = alg.rho(&lift);
        let w = alg.group.elem(lift.g);
        let mut sign = if u.len() % 2 == 1 { -1 } else { 1 };
        let image: Vec<usize> = u
            .iter()
            .map(|&i| {
                let (j, s) = w.apply(i - 1);
                sign *= s as i64;
                j + 1
            })
            .collect();
        let lhs = alg.mul(&r, &self.o(alg, u));
        let rhs = alg.mul(&self.o(alg, &image), &r).scale(&Scalar::int(sign));
        lhs.sub(&rhs)
    }

    /// Generators of `O_{t,c}` used for centrality: ρ of the simple
    /// reflection lifts, all `O_ij` and all `O_ijk`.
    pub fn generator_set(&self, alg: &Algebra) -> Vec<(String, HcElement)> {
        let mut out = Vec::new();
        for &k in &alg.rd.simple {
            out.push((format!("rho(s~{})", k), alg.rho(&lift_reflection(&alg.rd, &alg.group, k))));
        }
        for u in index_tuples(2, alg.d).into_iter().filter(|u| u[0] < u[1]) {
            out.push((format!("O{u:?}"), self.o(alg, &u)));
        }
        for u in index_tuples(3, alg.d).into_iter().filter(|u| u[0] < u[1] && u[1] < u[2]) {
            out.push((format!("O{u:?}"), self.o(alg, &u)));
        }
        out
    }

    /// Names of generators that `z` fails to graded-commute with.
    pub fn centrality_failures(&self, alg: &Algebra, z: &HcElement, gens: &[(String, HcElement)]) -> Vec<String> {
        let mut out: Vec<String> = gens
            .par_iter()
            .filter_map(|(name, g)| (!alg.gb(z, g).is_zero()).then(|| name.clone()))
            .collect();
        out.sort();
        out
    }

    pub fn epsilon_formula(d: usize, parity: u8) -> i8 {
        if d.is_multiple_of(2) && parity == 1 {
            -1
        } else {
            1
        }
    }

    /// ε from the definition `D ρ = ε ρ D`, or `None` if neither sign holds.
    pub fn epsilon_of(&self, alg: &Algebra, rho: &HcElement) -> Option<i8> {
        let a = alg.mul(&self.dirac, rho);
        let b = alg.mul(rho, &self.dirac);
        if a == b {
            Some(1)
        } else if a == b.neg() {
            Some(-1)
        } else {
            None
        }
    }

    /// `D_ω = D + ρ(ω)`.
    pub fn dirac_deformed(&self, rho_omega: &HcElement) -> HcElement {
        self.dirac.add(rho_omega)
    }

    /// Residuals of the Dirac identities for `ρ(ω)`: the square lemma, the
    /// decomposition of `Ω_osp` and `ζ_ω(Ω_osp)` under `D_ω ↦ 0`.
    pub fn vogan_residuals(&self, alg: &Algebra, rho_omega: &HcElement, eps: i8) -> Vec<(&'static str, HcElement)> {
        let dw = self.dirac_deformed(rho_omega);
        let quarter = alg.scalar(Scalar::rat(1, 4));
        let w2 = alg.mul(rho_omega, rho_omega);
        let lemma = alg
            .mul(&dw, &dw)
            .sub(&self.osp.casimir)
            .sub(&w2)
            .sub(&alg.mul(rho_omega, &self.dirac).scale(&Scalar::int(1 + eps as i64)))
            .sub(&quarter);
        let a = dw.scale(&Scalar::rat(1, 2)).sub(rho_omega);
        let zeta = w2.sub(&quarter);
        let decomposition = self.osp.casimir.sub(&alg.mul(&dw, &a)).sub(&alg.mul(&a, &dw)).sub(&zeta);
        vec![("D_w^2 lemma", lemma), ("Omega = D_w a + a D_w + zeta(Omega)", decomposition)]
    }

    /// `(𝒮 or D) · w₀` in the two readings of `w₀`.
    pub fn centre_candidates(&self, alg: &Algebra, cover: &PinCover) -> Vec<(String, HcElement)> {
        let Some(w0) = alg.group.minus_identity() else {
            return Vec::new();
        };
        let plain = alg.group_elem(w0);
        let lifted = alg.rho(&cover.elements[cover.lift[w0 as usize] as usize]);
        vec![
            ("S (w0 ⊗ 1)".into(), alg.mul(&self.osp.scasimir, &plain)),
            ("S rho(w0~)".into(), alg.mul(&self.osp.scasimir, &lifted)),
            ("D (w0 ⊗ 1)".into(), alg.mul(&self.dirac, &plain)),
            ("D rho(w0~)".into(), alg.mul(&self.dirac, &lifted)),
        ]
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
    fn signs_and_permutations() {
        assert_eq!(sort_sign(&[2, 1, 3]), Some((vec![1, 2, 3], -1)));
        assert_eq!(sort_sign(&[3, 1, 2]), Some((vec![1, 2, 3], 1)));
        assert_eq!(sort_sign(&[1, 1]), None);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3).iter().map(|p| p.1).sum::<i64>(), 0);
        assert_eq!(index_tuples(2, 3).len(), 6);
    }

    #[test]
    fn generators_agree_with_projection() {
        for (f, r, a) in [(Family::A, 2, 3), (Family::A1Product, 3, 3), (Family::B, 2, 2)] {
            let alg = algebra(f, r, a);
            let tama = Tama::build(&alg).unwrap();
            for j in 1..=alg.d {
                assert_eq!(tama.o(&alg, &[j]), tama.o_from_projection(&alg, &[j]));
            }
            assert_eq!(tama.o(&alg, &[1, 2]), tama.o2_displayed(&alg, 1, 2));
            assert_eq!(tama.o(&alg, &[2, 1]), tama.o_from_projection(&alg, &[2, 1]));
            assert!(tama.osp.in_centraliser(&alg, &tama.o(&alg, &[1, 2])));
            if alg.d >= 3 {
                assert_eq!(tama.o(&alg, &[1, 2, 3]), tama.o3_displayed(&alg, 1, 2, 3));
                assert_eq!(tama.o(&alg, &[1, 2, 3]), tama.o_from_projection(&alg, &[1, 2, 3]));
            }
        }
    }

    #[test]
    fn weyl_two_index_generator() {
        let alg = algebra(Family::A, 2, 3);
        let alg0 = alg.with_params(alg.params.zero_c());
        let tama = Tama::build(&alg0).unwrap();
        let expect = tama.m(&alg0, 1, 2).add(&alg0.mul(&alg0.e(1), &alg0.e(2)).scale(&Scalar::t().mul(&Scalar::rat(1, 2))));
        assert_eq!(tama.o(&alg0, &[1, 2]), expect);
    }

    #[test]
    fn a1_ocheck_is_single_term() {
        let alg = algebra(Family::A1Product, 3, 3);
        let tama = Tama::build(&alg).unwrap();
        // α = x_1, α∨ = 2x_1: Ǒ_1 = −c_1 s_1 ⊗ e_1
        let expect = alg.mul(&alg.group_elem(alg.refl[0]), &alg.e(1)).scale(&Scalar::c(1).neg());
        assert_eq!(tama.oc(1), &expect);
    }

    #[test]
    fn unit_reading_leaves_centraliser() {
        let alg = algebra(Family::A, 2, 3);
        let tama = Tama::build(&alg).unwrap();
        let u = o_check_unit_reading(&alg, 1);
        assert!(!tama.osp.in_centraliser(&alg, &tama.o2_with(&alg, &u, 1, 2)));
    }

    impl Tama {
        fn o2_with(&self, alg: &Algebra, oc1: &HcElement, i: usize, j: usize) -> HcElement {
            let half_t = alg.t().mul(&Scalar::rat(1, 2));
            self.m(alg, i, j)
                .add(&alg.mul(&alg.e(i), &alg.e(j)).scale(&half_t))
                .add(&alg.mul(oc1, &alg.e(j)))
                .sub(&alg.mul(self.oc(j), &alg.e(i)))
        }
    }

    #[test]
    fn antisymmetrizer_basics() {
        let alg = algebra(Family::A1Product, 3, 3);
        let tama = Tama::build(&alg).unwrap();
        assert_eq!(antisymmetrize(&alg, &[1, 2], |v| tama.o(&alg, v)), tama.o(&alg, &[1, 2]));
        let sym = antisymmetrize(&alg, &[1, 2], |v| acomm(&alg, tama.oc(v[0]), tama.oc(v[1])));
        assert!(sym.is_zero());
    }
}
