//! The rational Cherednik algebra `H_{t,c}` in PBW normal form
//! `x^α y^β w`, with relations
//!
//! ```text
//! [x, x'] = 0,  [y, y'] = 0,  w x w⁻¹ = w(x),  w y w⁻¹ = w(y),
//! [y, x] = t⟨y, x⟩ − Σ_{α>0} c(α) ⟨y, α⟩⟨α∨, x⟩ s_α.
//! ```
//!
//! Elements of `H` are [`HcElement`]s supported on the empty Clifford
//! blade; the products here and in [`crate::hc`] share one kernel.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::hc::{HcElement, Key};
use crate::numfield::Qi2;
use crate::poly::{Mono, Poly};
use crate::rational::Rat;
use crate::roots::{Group, RootDatum};
use crate::scalar::Scalar;

/// Parameter assignment: `s = √(2t)` and one `c` per root orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub s: Scalar,
    /// Indexed by orbit label.
    pub c: Vec<Scalar>,
}

impl Params {
    /// `s` and `c_1, …, c_m` all symbolic.
    pub fn symbolic(num_orbits: usize) -> Params {
        Params { s: Scalar::s(), c: (1..=num_orbits).map(Scalar::c).collect() }
    }

    /// Every orbit carries the same symbol `c1`.
    pub fn single_c(num_orbits: usize) -> Params {
        Params { s: Scalar::s(), c: vec![Scalar::c(1); num_orbits] }
    }

    pub fn specialized(s: Rat, c: &[Rat]) -> Params {
        Params { s: Scalar::constant(Qi2::rat(s)), c: c.iter().map(|q| Scalar::constant(Qi2::rat(q.clone()))).collect() }
    }

    /// Same `s`, all `c` zero.
    pub fn zero_c(&self) -> Params {
        Params { s: self.s.clone(), c: vec![Scalar::zero(); self.c.len()] }
    }

    pub fn t(&self) -> Scalar {
        self.s.mul(&self.s).mul(&Scalar::rat(1, 2))
    }

    pub fn is_zero_c(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }
}

/// One normal-form term `k · x^p y^q g`.
pub type HTerm = (Mono, Mono, u32, Scalar);

/// Fixed data for computing in `H_{t,c} ⊗ C`: the root datum, its group,
/// the parameters and a shared straightening memo.
pub struct Algebra {
    pub rd: Arc<RootDatum>,
    pub group: Arc<Group>,
    pub params: Params,
    pub d: usize,
    t: Scalar,
    /// `c(α)` per positive root.
    root_c: Vec<Scalar>,
    /// Group index of `s_α` per positive root.
    pub refl: Vec<u32>,
    /// `α` as a linear form in the `x` variables.
    root_poly: Vec<Poly>,
    memo: RwLock<HashMap<(Mono, Mono), Arc<Vec<HTerm>>>>,
}

/// Products with at least this many term pairs are split across threads.
const PAR_THRESHOLD: usize = 64;

impl Algebra {
    pub fn new(rd: Arc<RootDatum>, group: Arc<Group>, params: Params) -> Algebra {
        assert_eq!(params.c.len(), rd.num_orbits, "one c per orbit");
        let d = rd.d;
        let root_c = rd.orbit.iter().map(|&o| params.c[o].clone()).collect();
        let refl = rd.reflections.iter().map(|r| group.index_of(r).expect("reflection in group")).collect();
        let root_poly = rd
            .roots
            .iter()
            .map(|a| {
                Poly::from_terms(
                    a.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (Mono::var(i), Qi2::int(v))).collect(),
                )
            })
            .collect();
        Algebra { t: params.t(), rd, group, params, d, root_c, refl, root_poly, memo: RwLock::new(HashMap::new()) }
    }

    /// Same root datum and group with different parameters (fresh memo).
    pub fn with_params(&self, params: Params) -> Algebra {
        Algebra::new(self.rd.clone(), self.group.clone(), params)
    }

    pub fn t(&self) -> &Scalar {
        &self.t
    }

    /// `c(α)` of the positive root with index `k`.
    pub fn root_c(&self, k: usize) -> &Scalar {
        &self.root_c[k]
    }

    /// `g · m` for a monomial in either `x` or `y` (both transform by the
    /// same signed permutation). Returns the image and whether it is negated.
    #[inline]
    pub fn act(&self, g: u32, m: Mono) -> (Mono, bool) {
        if g == 0 || m.is_one() {
            return (m, false);
        }
        let p = self.group.elem(g);
        let mut out = Mono::ONE;
        let mut neg = false;
        for i in 0..self.d {
            let e = m.exp(i);
            if e > 0 {
                let (j, s) = p.apply(i);
                out = out.with_exp(j, e);
                neg ^= s < 0 && e % 2 == 1;
            }
        }
        (out, neg)
    }

    fn act_poly(&self, g: u32, p: &Poly) -> Poly {
        Poly::from_terms(
            p.terms()
                .iter()
                .map(|(m, c)| {
                    let (m2, neg) = self.act(g, *m);
                    (m2, if neg { c.neg() } else { c.clone() })
                })
                .collect(),
        )
    }

    /// `[y_i, x^γ] = t ∂_i x^γ − Σ_α c(α) α_i ((x^γ − s_α x^γ)/α) s_α`,
    /// as `(x-monomial, group element, coefficient)` triples.
    pub fn dunkl_commutator(&self, i: usize, gamma: Mono) -> Vec<(Mono, u32, Scalar)> {
        let mut acc: HashMap<(Mono, u32), Scalar> = HashMap::new();
        let e = gamma.exp(i);
        if e > 0 {
            let m = gamma.div(Mono::var(i)).expect("exponent positive");
            acc.insert((m, 0), self.t.mul(&Scalar::int(e as i64)));
        }
        let p = Poly::term(gamma, Qi2::one());
        for (k, alpha) in self.rd.roots.iter().enumerate() {
            if alpha[i] == 0 || self.root_c[k].is_zero() {
                continue;
            }
            let diff = p.sub(&self.act_poly(self.refl[k], &p));
            if diff.is_zero() {
                continue;
            }
            let q = diff.div_exact(&self.root_poly[k]).expect("divided difference is exact");
            let base = self.root_c[k].mul(&Scalar::int(alpha[i])).neg();
            for (m, c) in q.terms() {
                let v = base.scale(c);
                let slot = acc.entry((*m, self.refl[k])).or_insert_with(Scalar::zero);
                *slot = slot.add(&v);
            }
        }
        let mut out: Vec<(Mono, u32, Scalar)> =
            acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((m, g), v)| (m, g, v)).collect();
        out.sort_by_key(|a| (a.0, a.1));
        out
    }

    /// Normal form of `y^β x^γ`.
    pub fn straighten(&self, beta: Mono, gamma: Mono) -> Arc<Vec<HTerm>> {
        if beta.is_one() || gamma.is_one() {
            return Arc::new(vec![(gamma, beta, 0, Scalar::one())]);
        }
        if let Some(v) = self.memo.read().expect("memo lock").get(&(beta, gamma)) {
            return v.clone();
        }
        let i = (0..self.d).find(|&i| beta.exp(i) > 0).expect("beta is not constant");
        let rest = beta.div(Mono::var(i)).expect("exponent positive");
        let mut acc: HashMap<(Mono, Mono, u32), Scalar> = HashMap::new();
        let mut push = |k: (Mono, Mono, u32), v: Scalar| {
            let slot = acc.entry(k).or_insert_with(Scalar::zero);
            *slot = slot.add(&v);
        };
        // y^β x^γ = (y^rest x^γ) y_i + Σ (y^rest x^δ) g over [y_i, x^γ]
        for (p, q, h, k) in self.straighten(rest, gamma).iter() {
            let (yi, neg) = self.act(*h, Mono::var(i));
            push((*p, q.mul(yi), *h), if neg { k.neg() } else { k.clone() });
        }
        for (delta, g, kc) in self.dunkl_commutator(i, gamma) {
            for (p, q, h, k) in self.straighten(rest, delta).iter() {
                push((*p, *q, self.group.mul(*h, g)), k.mul(&kc));
            }
        }
        let mut out: Vec<HTerm> = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((p, q, g), v)| (p, q, g, v)).collect();
        out.sort_by_key(|a| (a.0, a.1, a.2));
        let out = Arc::new(out);
        self.memo.write().expect("memo lock").insert((beta, gamma), out.clone());
        out
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    /// Product of two basis terms, accumulated into `acc`.
    fn mul_terms(&self, a: &(Key, Scalar), b: &(Key, Scalar), acc: &mut HashMap<Key, Scalar>) {
        let (ka, ca) = a;
        let (kb, cb) = b;
        let (gx, n1) = self.act(ka.g, kb.x);
        let (gy, n2) = self.act(ka.g, kb.y);
        let g12 = self.group.mul(ka.g, kb.g);
        let (e, cs) = crate::clifford::blade_mul(ka.e, kb.e);
        let mut coeff = ca.mul(cb);
        if n1 ^ n2 ^ (cs < 0) {
            coeff = coeff.neg();
        }
        let st = self.straighten(ka.y, gx);
        for (p, q, h, k) in st.iter() {
            let (hy, n3) = self.act(*h, gy);
            let key = Key { x: ka.x.mul(*p), y: q.mul(hy), g: self.group.mul(*h, g12), e };
            let mut v = if k.is_one() { coeff.clone() } else { coeff.mul(k) };
            if n3 {
                v = v.neg();
            }
            match acc.get_mut(&key) {
                Some(slot) => *slot = slot.add(&v),
                None => {
                    acc.insert(key, v);
                }
            }
        }
    }

    /// Product in `H ⊗ C` (no Koszul sign: `H` is even).
    pub fn mul(&self, a: &HcElement, b: &HcElement) -> HcElement {
        assert_eq!(a.d(), b.d(), "dimension mismatch");
        let (at, bt) = (a.terms(), b.terms());
        let acc = if at.len() * bt.len() < PAR_THRESHOLD {
            let mut acc = HashMap::new();
            for x in at {
                for y in bt {
                    self.mul_terms(x, y, &mut acc);
                }
            }
            acc
        } else {
            at.par_iter()
                .fold(HashMap::new, |mut acc, x| {
                    for y in bt {
                        self.mul_terms(x, y, &mut acc);
                    }
                    acc
                })
                .reduce(HashMap::new, merge)
        };
        HcElement::from_map(a.d(), acc)
    }

    /// The anti-involution `x_i ↦ y_i`, `y_i ↦ x_i`, `w ↦ w⁻¹`, conjugate
    /// linear on scalars. On `H ⊗ C` this acts on the `H` factor only.
    pub fn h_star(&self, a: &HcElement) -> HcElement {
        // (x^α y^β w)^* = w⁻¹ x^β y^α = w⁻¹(x^β) w⁻¹(y^α) w⁻¹
        let mut acc = HashMap::new();
        for (k, c) in a.terms() {
            let wi = self.group.inv(k.g);
            let (x, n1) = self.act(wi, k.y);
            let (y, n2) = self.act(wi, k.x);
            let v = c.conj();
            acc.insert(Key { x, y, g: wi, e: k.e }, if n1 ^ n2 { v.neg() } else { v });
        }
        HcElement::from_map(a.d(), acc)
    }

    /// Leading-term property of the bracket: for PBW monomials `ξ, η` of
    /// degrees `m, n`, `[ξ, η]_c − [ξ, η]_0` has (x, y)-degree at most
    /// `m + n − 2` and every coefficient has positive degree in the `c`.
    pub fn filtration_check(&self, xi: &HcElement, eta: &HcElement) -> bool {
        let zero = self.with_params(self.params.zero_c());
        let deg = |a: &HcElement| a.terms().iter().map(|(k, _)| k.x.degree() + k.y.degree()).max().unwrap_or(0);
        let (m, n) = (deg(xi), deg(eta));
        let bc = self.mul(xi, eta).sub(&self.mul(eta, xi));
        let b0 = zero.mul(xi, eta).sub(&zero.mul(eta, xi));
        bc.sub(&b0).terms().iter().all(|(k, c)| {
            k.x.degree() + k.y.degree() + 2 <= m + n && c.min_c_degree().is_some_and(|v| v >= 1)
        })
    }
}

fn merge(mut a: HashMap<Key, Scalar>, b: HashMap<Key, Scalar>) -> HashMap<Key, Scalar> {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        match a.get_mut(&k) {
            Some(slot) => *slot = slot.add(&v),
            None => {
                a.insert(k, v);
            }
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Family;

    pub(crate) fn algebra(f: Family, r: usize, a: usize) -> Algebra {
        let rd = RootDatum::build(f, r, a).unwrap();
        let g = rd.enumerate().unwrap();
        let p = Params::symbolic(rd.num_orbits);
        Algebra::new(Arc::new(rd), Arc::new(g), p)
    }

    #[test]
    fn a1_cubed_basic_commutator() {
        let h = algebra(Family::A1Product, 3, 3);
        let (x1, y1) = (h.x(1), h.y(1));
        let lhs = h.mul(&y1, &x1);
        let s1 = h.group_elem(h.refl[0]);
        let rhs = h.mul(&x1, &y1).add(&h.scalar(h.t().clone())).sub(&s1.scale(&Scalar::c(1).mul(&Scalar::int(2))));
        assert_eq!(lhs, rhs);
        assert_eq!(h.mul(&h.y(1), &h.x(2)), h.mul(&h.x(2), &h.y(1)));
    }

    #[test]
    fn weyl_case() {
        let h = algebra(Family::A, 2, 3);
        let h0 = h.with_params(h.params.zero_c());
        let x1 = h0.x(1);
        let mut xk = h0.one();
        for k in 1..=4 {
            let prev = xk.clone();
            xk = h0.mul(&xk, &x1);
            let br = h0.mul(&h0.y(1), &xk).sub(&h0.mul(&xk, &h0.y(1)));
            assert_eq!(br, h0.mul(&h0.scalar(h0.t().mul(&Scalar::int(k))), &prev));
        }
    }

    #[test]
    fn dunkl_matches_product() {
        for (f, r, a) in [(Family::A1Product, 3, 3), (Family::A, 2, 3), (Family::B, 2, 2)] {
            let h = algebra(f, r, a);
            let p = h.mul(&h.mul(&h.x(1), &h.x(1)), &h.x(2));
            for i in 1..=h.d {
                let br = h.mul(&h.y(i), &p).sub(&h.mul(&p, &h.y(i)));
                let gamma = p.terms()[0].0.x;
                let dk = h.dunkl_commutator(i - 1, gamma);
                let mut sum = h.zero();
                for (m, g, c) in dk {
                    sum = sum.add(&HcElement::term(h.d, Key { x: m, y: Mono::ONE, g, e: 0 }, c));
                }
                assert_eq!(br, sum);
            }
        }
    }

    #[test]
    fn commuting_variables() {
        let h = algebra(Family::A, 2, 3);
        let mono = |v: &dyn Fn(usize) -> HcElement, e: [u8; 3]| {
            let mut a = h.one();
            for (i, k) in e.iter().enumerate() {
                for _ in 0..*k {
                    a = h.mul(&a, &v(i + 1));
                }
            }
            a
        };
        let ys = |i| h.y(i);
        let xs = |i| h.x(i);
        for e1 in [[1, 0, 0], [0, 2, 1], [1, 1, 1]] {
            for e2 in [[0, 1, 0], [2, 0, 1]] {
                let (a, b) = (mono(&ys, e1), mono(&ys, e2));
                assert_eq!(h.mul(&a, &b), h.mul(&b, &a));
                let (a, b) = (mono(&xs, e1), mono(&xs, e2));
                assert_eq!(h.mul(&a, &b), h.mul(&b, &a));
            }
        }
    }

    #[test]
    fn equivariance() {
        let h = algebra(Family::B, 3, 3);
        for &k in &h.rd.simple {
            let w = h.group_elem(h.refl[k]);
            for i in 1..=3 {
                let lhs = h.mul(&h.mul(&w, &h.x(i)), &w);
                let (j, s) = h.group.elem(h.refl[k]).apply(i - 1);
                assert_eq!(lhs, h.x(j + 1).scale(&Scalar::int(s as i64)));
            }
        }
    }

    #[test]
    fn star_examples() {
        let h = algebra(Family::A, 2, 3);
        assert_eq!(h.h_star(&h.x(1)), h.y(1));
        assert_eq!(h.h_star(&h.one()), h.one());
        let w = h.group_elem(3);
        let a = h.mul(&h.mul(&h.x(1), &h.y(2)), &w);
        let winv = h.group_elem(h.group.inv(3));
        let expect = h.mul(&h.mul(&winv, &h.x(2)), &h.y(1));
        assert_eq!(h.h_star(&a), expect);
        let b = h.mul(&h.y(1), &h.x(1));
        assert_eq!(h.h_star(&h.h_star(&b)), b);
        assert_eq!(h.h_star(&h.mul(&a, &b)), h.mul(&h.h_star(&b), &h.h_star(&a)));
    }

    #[test]
    fn filtration_examples() {
        let h = algebra(Family::A1Product, 3, 3);
        assert!(h.filtration_check(&h.y(1), &h.x(1)));
        let h = algebra(Family::A, 2, 3);
        let xi = h.mul(&h.y(1), &h.y(2));
        let eta = h.mul(&h.x(1), &h.x(2));
        assert!(h.filtration_check(&xi, &eta));
        let h0 = h.with_params(h.params.zero_c());
        assert!(h0.filtration_check(&xi, &eta));
    }
}
