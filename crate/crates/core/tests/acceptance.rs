//! The ten acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria with a documented deviation print FAIL with the reason and only
//! the parts that are expected to hold are asserted.

use std::time::Instant;

use tama::admissible::{sn_partition_predictions, span_equal, TwistedGroupAlgebra};
use tama::cherednik::{Algebra, Params};
use tama::osp::Osp;
use tama::polyspinor::PolySpinor;
use tama::report::{CheckRecord, Status};
use tama::roots::{fmt_partition, Family, RootDatum};
use tama::scalar::Scalar;
use tama::suites::{Context, RunConfig, Suite};
use tama::tama::Tama;

use std::sync::Arc;

fn context(family: &str, rank: Option<usize>, ambient: Option<usize>, single_c: bool) -> Context {
    let mut cfg = RunConfig::new(family, rank, ambient);
    cfg.single_c = single_c;
    Context::new(cfg).expect("valid config")
}

fn s3() -> Context {
    context("A", Some(2), Some(3), false)
}
fn s4() -> Context {
    context("A", Some(3), Some(4), false)
}
fn b3() -> Context {
    context("B", Some(3), None, false)
}
fn a1(d: usize) -> Context {
    context(&format!("A1^{d}"), None, None, false)
}

fn algebra(f: Family, r: usize, a: usize) -> Algebra {
    let rd = Arc::new(RootDatum::build(f, r, a).unwrap());
    let g = Arc::new(rd.enumerate().unwrap());
    let p = Params::symbolic(rd.num_orbits);
    Algebra::new(rd, g, p)
}

fn tga(f: Family, r: usize, a: usize) -> TwistedGroupAlgebra {
    let rd = Arc::new(RootDatum::build(f, r, a).unwrap());
    let g = Arc::new(rd.enumerate().unwrap());
    TwistedGroupAlgebra::build(rd, g, 100_000).unwrap()
}

fn line(n: usize, ok: bool, what: &str, start: Instant, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    let ms = start.elapsed().as_millis();
    if detail.is_empty() {
        println!("criterion {n:>2}: {status} {what} [{ms} ms]");
    } else {
        println!("criterion {n:>2}: {status} {what} [{ms} ms] {detail}");
    }
}

fn failing(recs: &[CheckRecord]) -> Vec<String> {
    recs.iter().filter(|r| r.failed()).map(|r| format!("{} {}", r.suite, r.check)).collect()
}

fn criterion_1_bracket_table() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for ctx in [s3(), s4(), b3(), a1(6)] {
        let osp = Osp::build_unchecked(&ctx.alg);
        for row in osp.bracket_table(&ctx.alg) {
            if !row.residual.is_zero() {
                bad.push(format!("{}: {}", ctx.rd.name(), row.relation));
            }
        }
    }
    line(1, bad.is_empty(), "osp(1|2) bracket table on S3, S4, B3, A1^6", start, &bad.join("; "));
    assert!(bad.is_empty());
}

fn criterion_2_scasimir_square() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for ctx in [s3(), s4(), b3(), a1(6)] {
        let osp = Osp::build_unchecked(&ctx.alg);
        if !osp.scasimir_square_check(&ctx.alg) {
            bad.push(ctx.rd.name());
        }
    }
    line(2, bad.is_empty(), "𝒮² = Ω_osp + ¼ on S3, S4, B3, A1^6", start, &bad.join("; "));
    assert!(bad.is_empty());
}

fn criterion_3_relations() {
    let start = Instant::now();
    let mut recs = Vec::new();
    for ctx in [s4(), b3()] {
        let tama = ctx.tama().unwrap();
        let name = ctx.rd.name();
        recs.extend(tama.relation_suite(&ctx.alg, None).into_iter().filter(|r| r.status != Status::Skipped).map(|mut r| {
            r.suite = name.clone();
            r
        }));
    }
    let ctx = context("A1^6", None, None, true);
    let tama = ctx.tama().unwrap();
    let six: Vec<CheckRecord> = tama
        .relation_suite(&ctx.alg, None)
        .into_iter()
        .map(|mut r| {
            r.suite = "A1^6".into();
            r
        })
        .collect();
    assert!(six.iter().all(|r| r.status != Status::Skipped), "A1^6 covers every arity");
    recs.extend(six);
    let bad = failing(&recs);
    let deviation = bad.iter().all(|b| b.ends_with(" o2-o2-shared"));
    let corrected = recs.iter().filter(|r| r.check == "o2-o2-shared-corrected").all(CheckRecord::passed);
    let detail = if bad.is_empty() {
        String::new()
    } else {
        format!(
            "known deviation: [O_ij,O_ki] = tO_jk + [Ǒ_i,Ǒ_j] + {{O_ijk,Ǒ_i}} fails as written; \
             with [Ǒ_j,Ǒ_k] it holds on every tuple ({}); failing: {}",
            if corrected { "verified" } else { "NOT verified" },
            bad.join(", ")
        )
    };
    line(3, bad.is_empty(), "relation suite on S4, B3 (≤ 4 indices) and A1^6 single-c (all arities)", start, &detail);
    assert!(deviation, "unexpected relation failures: {bad:?}");
    assert!(corrected);
}

fn criterion_4_projections() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for ctx in [s4(), a1(4)] {
        let alg = &ctx.alg;
        let tama = ctx.tama().unwrap();
        let osp = &tama.osp;
        let quarter = alg.scalar(Scalar::rat(1, 4));
        let ps = osp.project(alg, &osp.scasimir).unwrap();
        if ps != osp.casimir.add(&quarter).scale(&Scalar::int(-2)) {
            bad.push(format!("{}: P(𝒮)", ctx.rd.name()));
        }
        if osp.project(alg, &osp.casimir_sl2).unwrap() != osp.casimir.scale(&Scalar::int(3)) {
            bad.push(format!("{}: P(Ω_sl2)", ctx.rd.name()));
        }
        for k in 1..=3 {
            for u in tama::tama::index_tuples(k, alg.d) {
                if tama.o(alg, &u) != tama.o_from_projection(alg, &u) {
                    bad.push(format!("{}: O{u:?}", ctx.rd.name()));
                }
            }
        }
    }
    line(4, bad.is_empty(), "P(𝒮), P(Ω_sl2) and O_A = −(t/2)P(e_A), |A| ≤ 3, on S4 and A1^4", start, &bad.join("; "));
    assert!(bad.is_empty());
}

fn criterion_5_centre() {
    let start = Instant::now();
    let ctx = s4();
    let recs = ctx.run_suite(Suite::Centre);
    let casimir = recs.iter().find(|r| r.check == "casimir-central").unwrap().passed();
    let mut ok = casimir;
    let mut notes = vec![format!("S4 Ω_osp central: {casimir}")];
    for ctx in [a1(3), b3()] {
        let recs = ctx.run_suite(Suite::Centre);
        let w0 = recs.iter().find(|r| r.check == "w0-branch").unwrap();
        ok &= w0.passed();
        notes.push(format!("{}: {}", ctx.rd.name(), w0.note.clone().unwrap_or_default()));
    }
    line(5, ok, "graded centre: Ω_osp on S4, w₀ = −1 branch on A1^3 and B3", start, &notes.join(" | "));
    assert!(ok);
}

fn criterion_6_dirac() {
    let start = Instant::now();
    let mut recs = Vec::new();
    for ctx in [s4(), a1(3)] {
        let r = ctx.run_suite(Suite::Vogan);
        assert!(r.iter().any(|x| x.check.starts_with("omega ")), "{} has admissible elements", ctx.rd.name());
        recs.extend(r.into_iter().map(|x| (ctx.rd.name(), ctx.alg.d, x)));
    }
    let bad: Vec<_> = recs.iter().filter(|(_, _, r)| r.failed()).collect();
    // D• = (−1)^d D under the conjugate-linear •, so the bullet checks fail for odd d.
    let deviation = bad.iter().all(|(_, d, r)| d % 2 == 1 && (r.check == "dirac-bullet" || r.check.ends_with(" bullet")));
    let detail = if bad.is_empty() {
        String::new()
    } else {
        format!(
            "known deviation: D• = −D for odd d, so D• = D holds for S4 only; D², the D_ω² lemma and the decomposition hold everywhere; failing: {}",
            bad.iter().map(|(g, _, r)| format!("{g} {}", r.check)).collect::<Vec<_>>().join(", ")
        )
    };
    line(6, bad.is_empty(), "D• = D, D² = Ω_osp + ¼, D_ω² lemma and decomposition on S4 and A1^3", start, &detail);
    assert!(deviation, "unexpected Dirac failures");
}

fn criterion_7_epsilon_centre() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut dims = Vec::new();
    for (f, r, a) in [(Family::A, 2, 3), (Family::A, 3, 4), (Family::A, 4, 5), (Family::A1Product, 3, 3), (Family::A1Product, 4, 4)] {
        let t = tga(f, r, a);
        let basis = t.epsilon_centre_basis();
        let brute = t.brute_force_epsilon_centre();
        let name = t.rd.name();
        dims.push(format!("{name}: {}", basis.len()));
        if basis.len() != brute.len() || !span_equal(&basis, &brute) {
            bad.push(name);
        }
    }
    let detail = if bad.is_empty() { format!("dimensions {}", dims.join(", ")) } else { bad.join("; ") };
    line(7, bad.is_empty(), "ε-centre class sums = brute force on S3, S4, S5, A1^3, A1^4", start, &detail);
    assert!(bad.is_empty());
}

fn criterion_8_sn_predictions() {
    let start = Instant::now();
    let mut even_ok = true;
    let mut odd_mismatch = Vec::new();
    let mut all_odd_distinct = true;
    let mut s4_even = Vec::new();
    for n in 3..=5 {
        for d in [n, n + 1] {
            let t = tga(Family::A, n - 1, d);
            for p in sn_partition_predictions(&t) {
                if p.predicted == p.computed {
                    continue;
                }
                if d % 2 == 0 {
                    even_ok = false;
                } else {
                    all_odd_distinct &= p.odd_distinct && p.computed;
                    odd_mismatch.push(format!("S{n} on C^{d} {}", fmt_partition(&p.partition)));
                }
            }
            if n == 4 && d == 4 {
                s4_even = sn_partition_predictions(&t).into_iter().filter(|p| p.computed).map(|p| p.partition).collect();
            }
        }
    }
    let s4_ok = s4_even == vec![vec![3, 1]];
    let ok = even_ok && s4_ok && odd_mismatch.is_empty();
    let detail = if odd_mismatch.is_empty() {
        String::new()
    } else {
        format!(
            "known deviation (odd d): the no-even-parts rule misses the odd distinct-part classes, which split and give admissible elements: {}; \
             even d matches exactly, S4 on C^4 gives only (3,1)",
            odd_mismatch.join(", ")
        )
    };
    line(8, ok, "S_n partition criteria vs brute force, n = 3, 4, 5, both parities of d", start, &detail);
    assert!(even_ok && s4_ok, "even-d prediction mismatch");
    assert!(all_odd_distinct, "odd-d mismatch outside the odd distinct-part classes");
}

fn criterion_9_filtration() {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for ctx in [s3(), a1(3)] {
        let recs = ctx.run_suite(Suite::Filtration);
        let r = recs.iter().find(|r| r.check == "filtration").unwrap();
        ok &= r.passed();
        notes.push(format!("{}: {}", ctx.rd.name(), r.note.clone().unwrap_or_default()));
    }
    line(9, ok, "filtration property on 100 random pairs for S3 and A1^3", start, &notes.join(" | "));
    assert!(ok);
}

fn criterion_10_polyspinor() {
    let start = Instant::now();
    let alg = algebra(Family::A1Product, 3, 3);
    let tama = Tama::build(&alg).unwrap();
    let ps = PolySpinor::new(&alg);
    let rhs = tama.osp.casimir.add(&alg.scalar(Scalar::rat(1, 4)));
    let mut square_ok = true;
    for k in 0..=4 {
        let dm = ps.matrix_of(&tama.dirac, k).unwrap();
        square_ok &= dm.mul(&dm) == ps.matrix_of(&rhs, k).unwrap();
    }
    let mut notes = vec![format!("A1^3 π(D)² = π(Ω_osp) + ¼ on degrees ≤ 4: {square_ok}")];
    let mut implication = true;
    for ctx in [a1(3), s4()] {
        let recs = ctx.run_suite(Suite::Cohomology);
        let herm: Vec<&CheckRecord> = recs.iter().filter(|r| r.check.starts_with("hermitian")).collect();
        let coh: Vec<&CheckRecord> = recs.iter().filter(|r| r.check.ends_with(" cohomology")).collect();
        implication &= coh.iter().all(|r| r.passed()) && herm.iter().all(|r| !r.failed());
        let hermitian = herm.iter().filter(|r| r.passed()).count();
        notes.push(format!(
            "{}: Hermitian with positive minors on {hermitian}/{} degrees, {} cohomology tables with ker∩im = 0 where Hermitian",
            ctx.rd.name(),
            herm.len(),
            coh.len()
        ));
    }
    let ok = square_ok && implication;
    line(10, ok, "polyspinor D² and cohomology at s = 2, c = 1/3", start, &notes.join(" | "));
    assert!(ok);
}

#[test]
fn acceptance() {
    criterion_1_bracket_table();
    criterion_2_scasimir_square();
    criterion_3_relations();
    criterion_4_projections();
    criterion_5_centre();
    criterion_6_dirac();
    criterion_7_epsilon_centre();
    criterion_8_sn_predictions();
    criterion_9_filtration();
    criterion_10_polyspinor();
}
