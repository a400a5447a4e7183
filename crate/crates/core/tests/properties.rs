//! Randomised algebraic invariants: field laws for the scalars, Clifford
//! anti-involution, associativity, graded Jacobi and the anti-involutions of
//! `H ⊗ C`, and the pin cover homomorphism.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use tama::cherednik::{Algebra, Params};
use tama::clifford::{pseudo_scalar, Clifford};
use tama::hc::{HcElement, Key};
use tama::numfield::Qi2;
use tama::pin::PinCover;
use tama::poly::Mono;
use tama::rational::Rat;
use tama::roots::{Family, RootDatum};
use tama::scalar::Scalar;

fn s3() -> &'static Algebra {
    static A: OnceLock<Algebra> = OnceLock::new();
    A.get_or_init(|| {
        let rd = Arc::new(RootDatum::build(Family::A, 2, 3).unwrap());
        let g = Arc::new(rd.enumerate().unwrap());
        Algebra::new(rd, g, Params::symbolic(1))
    })
}

fn b2() -> &'static Algebra {
    static A: OnceLock<Algebra> = OnceLock::new();
    A.get_or_init(|| {
        let rd = Arc::new(RootDatum::build(Family::B, 2, 2).unwrap());
        let g = Arc::new(rd.enumerate().unwrap());
        Algebra::new(rd, g, Params::symbolic(2))
    })
}

fn qi2() -> impl Strategy<Value = Qi2> {
    (-3i64..4, -3i64..4, -2i64..3, 1i64..4).prop_map(|(a, b, c, den)| {
        Qi2::new(Rat::new(a, den), Rat::int(b), Rat::new(c, 2), Rat::ZERO)
    })
}

/// Small rational functions in `s`, `c1`, `c2` over `ℚ(i, √2)`.
fn scalar() -> impl Strategy<Value = Scalar> {
    let atom = prop_oneof![Just(Scalar::one()), Just(Scalar::s()), Just(Scalar::c(1)), Just(Scalar::c(2))];
    (proptest::collection::vec((qi2(), atom.clone(), atom.clone()), 1..4), any::<bool>(), atom, 1i64..3).prop_map(
        |(terms, divide, den, k)| {
            let num = terms.iter().fold(Scalar::zero(), |acc, (q, a, b)| acc.add(&a.mul(b).scale(q)));
            if divide {
                num.div(&den.add(&Scalar::int(k))).unwrap()
            } else {
                num
            }
        },
    )
}

fn clifford(d: usize) -> impl Strategy<Value = Clifford<Qi2>> {
    proptest::collection::vec((0u8..(1 << d), qi2()), 0..5).prop_map(move |terms| {
        terms.into_iter().fold(Clifford::zero(d), |mut acc, (m, c)| {
            acc.add_term(m, c);
            acc
        })
    })
}

/// Sums of a few PBW terms `k x^a y^b w ⊗ e_A` of bounded degree; with
/// `parity` set, every Clifford blade has that parity.
fn element(alg: &'static Algebra, parity: Option<u8>) -> impl Strategy<Value = HcElement> {
    let d = alg.d;
    let n = alg.group.order() as u32;
    let term = (
        proptest::collection::vec(0u8..2, d),
        proptest::collection::vec(0u8..2, d),
        0..n,
        0u8..(1 << d),
        -2i64..3,
        prop_oneof![Just(Scalar::one()), Just(Scalar::c(1)), Just(Scalar::s())],
    );
    proptest::collection::vec(term, 1..3).prop_map(move |terms| {
        HcElement::from_terms(
            d,
            terms.into_iter().filter_map(|(x, y, g, mut e, k, sym)| {
                if let Some(p) = parity {
                    if (e.count_ones() % 2) as u8 != p {
                        e ^= 1;
                    }
                }
                let x = Mono::from_exps(&x);
                let y = Mono::from_exps(&y);
                (x.degree() + y.degree() <= 2).then(|| (Key { x, y, g, e }, sym.mul(&Scalar::int(k))))
            }),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }

    #[test]
    fn scalar_canonical_form(a in scalar(), b in scalar()) {
        // equal values print identically
        let x = a.add(&b).sub(&b);
        prop_assert_eq!(x.to_string(), a.to_string());
    }

    #[test]
    fn clifford_star_is_an_anti_involution(a in clifford(5), b in clifford(5), c in clifford(5)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b).star(), b.star().mul(&a.star()));
        prop_assert_eq!(a.star().star(), a);
    }

    #[test]
    fn pbw_associativity(a in element(s3(), None), b in element(s3(), None), c in element(s3(), None)) {
        let alg = s3();
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
    }

    #[test]
    fn pbw_associativity_two_orbits(a in element(b2(), None), b in element(b2(), None), c in element(b2(), None)) {
        let alg = b2();
        prop_assert_eq!(alg.mul(&alg.mul(&a, &b), &c), alg.mul(&a, &alg.mul(&b, &c)));
    }

    #[test]
    fn h_star_is_an_anti_involution(a in h_element(), b in h_element()) {
        let alg = s3();
        prop_assert_eq!(alg.h_star(&alg.h_star(&a)), a.clone());
        prop_assert_eq!(alg.h_star(&alg.mul(&a, &b)), alg.mul(&alg.h_star(&b), &alg.h_star(&a)));
    }

    #[test]
    fn bullet_is_an_anti_involution(a in element(s3(), None), b in element(s3(), None)) {
        let alg = s3();
        prop_assert_eq!(alg.bullet(&alg.bullet(&a)), a.clone());
        prop_assert_eq!(alg.bullet(&alg.mul(&a, &b)), alg.mul(&alg.bullet(&b), &alg.bullet(&a)));
    }

    #[test]
    fn graded_jacobi((pa, pb, a, b, c) in graded_triple()) {
        let alg = s3();
        // [a,[b,c]] = [[a,b],c] + (−1)^{|a||b|} [b,[a,c]]
        let lhs = alg.gb(&a, &alg.gb(&b, &c));
        let r1 = alg.gb(&alg.gb(&a, &b), &c);
        let r2 = alg.gb(&b, &alg.gb(&a, &c));
        let rhs = if pa & pb == 1 { r1.sub(&r2) } else { r1.add(&r2) };
        prop_assert_eq!(lhs, rhs);
    }
}

/// Elements of `H ⊗ 1`.
fn h_element() -> impl Strategy<Value = HcElement> {
    element(s3(), None).prop_map(|a| HcElement::from_terms(a.d(), a.terms().iter().map(|(k, c)| (Key { e: 0, ..*k }, c.clone()))))
}

fn graded_triple() -> impl Strategy<Value = (u8, u8, HcElement, HcElement, HcElement)> {
    (0u8..2, 0u8..2, 0u8..2).prop_flat_map(|(pa, pb, pc)| {
        (Just(pa), Just(pb), element(s3(), Some(pa)), element(s3(), Some(pb)), element(s3(), Some(pc)))
    })
}

#[test]
fn pseudo_scalar_squares_to_one_and_graded_commutes() {
    for d in 1..=6 {
        let g: Clifford<Qi2> = pseudo_scalar(d);
        assert_eq!(g.mul(&g), Clifford::one(d), "d = {d}");
        for j in 1..=d {
            let e = Clifford::gen(d, j);
            let sign = if d % 2 == 1 { Qi2::one() } else { Qi2::int(-1) };
            assert_eq!(g.mul(&e), e.mul(&g).scale(&sign), "d = {d}, j = {j}");
        }
    }
}

#[test]
fn rho_is_multiplicative_on_the_cover() {
    for alg in [s3(), b2()] {
        let cover = PinCover::build(&alg.rd, &alg.group, 1000).unwrap();
        let n = cover.order() as u32;
        for a in 0..n {
            for b in 0..n {
                let lhs = alg.mul(&alg.rho(&cover.elements[a as usize]), &alg.rho(&cover.elements[b as usize]));
                let rhs = alg.rho(&cover.elements[cover.mul(a, b) as usize]);
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn specialization_commutes_with_products() {
    let alg = s3();
    let spec = alg.with_params(Params::specialized(Rat::int(2), &[Rat::new(1, 3)]));
    let sub = |e: &HcElement| {
        e.try_map_coeffs(|c| c.substitute(&[(0, Qi2::int(2)), (1, Qi2::rat(Rat::new(1, 3)))])).unwrap()
    };
    let x = alg.x(1).add(&alg.y(2));
    let y = alg.mul(&alg.y(1), &alg.group_elem(alg.refl[0]));
    assert_eq!(sub(&alg.mul(&x, &y)), spec.mul(&sub(&x), &sub(&y)));
}
