//! Run configuration and the verification suites behind the `verify` binary.
//!
//! Each suite turns a [`Context`] into an ordered list of [`CheckRecord`]s.
//! Ordering is fixed by construction, so two runs with the same config give
//! byte-identical reports once timings are zeroed.

use std::str::FromStr;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::admissible::{sn_partition_predictions, span_equal, TwistedGroupAlgebra};
use crate::cherednik::{Algebra, Params};
use crate::hc::{HcElement, Key};
use crate::numfield::Qi2;
use crate::osp::Osp;
use crate::pin::lift_reflection;
use crate::poly::Mono;
use crate::polyspinor::{to_constant, PolySpinor};
use crate::rational::Rat;
use crate::report::{CheckRecord, Report, Status};
use crate::roots::{fmt_partition, Group, RootDatum, RootError, DEFAULT_GROUP_BOUND};
use crate::scalar::Scalar;
use crate::tama::{index_tuples, relations, Tama, TamaError};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Osp,
    Relations,
    Centre,
    Vogan,
    Admissible,
    Cohomology,
    Filtration,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Osp, Suite::Relations, Suite::Centre, Suite::Vogan, Suite::Admissible, Suite::Cohomology, Suite::Filtration];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Osp => "osp",
            Suite::Relations => "relations",
            Suite::Centre => "centre",
            Suite::Vogan => "vogan",
            Suite::Admissible => "admissible",
            Suite::Cohomology => "cohomology",
            Suite::Filtration => "filtration",
        }
    }
}

/// Expands `all` and removes duplicates, keeping the canonical order.
pub fn parse_suites(names: &[String]) -> Result<Vec<Suite>, ConfigError> {
    let mut out = Vec::new();
    for n in names {
        match n.as_str() {
            "all" => out.extend(Suite::ALL),
            s => out.push(
                Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| ConfigError::UnknownSuite(s.to_string()))?,
            ),
        }
    }
    if out.is_empty() {
        return Err(ConfigError::UnknownSuite(String::new()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown suite `{0}` (expected osp, relations, centre, vogan, admissible, cohomology, filtration or all)")]
    UnknownSuite(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("bad --specialize value: {0}")]
    Specialize(String),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cannot parse config: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// `A`, `B`, `D` or `A1^d`.
    pub family: String,
    pub rank: Option<usize>,
    pub ambient: Option<usize>,
    pub suites: Vec<String>,
    /// Collapse every `c_k` to one symbol `c1`.
    pub single_c: bool,
    /// `s=<rat>,c1=<rat>,…`.
    pub specialize: Option<String>,
    pub max_group: usize,
    pub max_degree: u32,
    pub max_arity: usize,
    /// Random pairs in the filtration suite.
    pub samples: usize,
    pub seed: u64,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: String::new(),
            rank: None,
            ambient: None,
            suites: vec!["all".into()],
            single_c: false,
            specialize: None,
            max_group: DEFAULT_GROUP_BOUND,
            max_degree: 2,
            max_arity: 6,
            samples: 100,
            seed: 7,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn new(family: &str, rank: Option<usize>, ambient: Option<usize>) -> RunConfig {
        RunConfig { family: family.into(), rank, ambient, ..RunConfig::default() }
    }

    pub fn with_suites(mut self, suites: &[&str]) -> RunConfig {
        self.suites = suites.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn from_json(text: &str) -> Result<RunConfig, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.max_group == 0 || self.max_arity == 0 || self.samples == 0 {
            return Err(ConfigError::Invalid("bounds must be positive".into()));
        }
        if self.single_c && self.specialize.is_some() {
            return Err(ConfigError::Invalid("--single-c and --specialize are exclusive".into()));
        }
        parse_suites(&self.suites)?;
        Ok(())
    }
}

/// Parses `s=<rat>,c1=<rat>,…`; every `c_k` for `k ≤ num_orbits` is required.
pub fn parse_specialization(spec: &str, num_orbits: usize) -> Result<Params, ConfigError> {
    let err = |m: String| ConfigError::Specialize(m);
    let mut s = None;
    let mut c: Vec<Option<Rat>> = vec![None; num_orbits];
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| err(format!("`{part}` is not key=value")))?;
        let v = Rat::from_str(v).map_err(|e| err(e.to_string()))?;
        match k.trim() {
            "s" => s = Some(v),
            key => {
                let idx: usize = key
                    .strip_prefix('c')
                    .and_then(|n| n.parse().ok())
                    .filter(|&n| (1..=num_orbits).contains(&n))
                    .ok_or_else(|| err(format!("unknown parameter `{key}` ({num_orbits} root orbit(s))")))?;
                c[idx - 1] = Some(v);
            }
        }
    }
    let s = s.ok_or_else(|| err("missing s".into()))?;
    if s.signum() <= 0 {
        return Err(err("s must be positive".into()));
    }
    let c: Vec<Rat> = c
        .into_iter()
        .enumerate()
        .map(|(k, v)| v.ok_or_else(|| err(format!("missing c{}", k + 1))))
        .collect::<Result<_, _>>()?;
    Ok(Params::specialized(s, &c))
}

/// The parameters are rational numbers.
pub fn params_are_constant(p: &Params) -> bool {
    p.s.as_constant().is_some() && p.c.iter().all(|c| c.as_constant().is_some())
}

/// Shared state for one run: the group, the algebra and lazily built data.
pub struct Context {
    pub config: RunConfig,
    pub rd: Arc<RootDatum>,
    pub group: Arc<Group>,
    pub alg: Algebra,
    tama: OnceLock<Result<Tama, TamaError>>,
    cover: OnceLock<Result<Arc<TwistedGroupAlgebra>, RootError>>,
}

impl Context {
    pub fn new(config: RunConfig) -> Result<Context, ConfigError> {
        config.validate()?;
        let rd = Arc::new(RootDatum::from_spec(&config.family, config.rank, config.ambient)?);
        let group = Arc::new(Group::generate(&rd, config.max_group)?);
        let params = if let Some(spec) = &config.specialize {
            parse_specialization(spec, rd.num_orbits)?
        } else if config.single_c {
            Params::single_c(rd.num_orbits)
        } else {
            Params::symbolic(rd.num_orbits)
        };
        let alg = Algebra::new(rd.clone(), group.clone(), params);
        Ok(Context { config, rd, group, alg, tama: OnceLock::new(), cover: OnceLock::new() })
    }

    pub fn tama(&self) -> Result<&Tama, &TamaError> {
        self.tama.get_or_init(|| Tama::build(&self.alg)).as_ref()
    }

    pub fn cover(&self) -> Result<&Arc<TwistedGroupAlgebra>, &RootError> {
        self.cover
            .get_or_init(|| {
                TwistedGroupAlgebra::build(self.rd.clone(), self.group.clone(), 2 * self.config.max_group).map(Arc::new)
            })
            .as_ref()
    }

    fn timed(&self, f: impl FnOnce() -> CheckRecord) -> CheckRecord {
        let start = Instant::now();
        let mut r = f();
        if self.config.timings {
            r.elapsed_ms = start.elapsed().as_millis() as u64;
        }
        r
    }

    /// Times a batch; each record gets an equal share.
    fn timed_batch(&self, f: impl FnOnce() -> Vec<CheckRecord>) -> Vec<CheckRecord> {
        let start = Instant::now();
        let mut v = f();
        if self.config.timings && !v.is_empty() {
            let share = start.elapsed().as_millis() as u64 / v.len() as u64;
            for r in &mut v {
                r.elapsed_ms = share;
            }
        }
        v
    }

    pub fn run_suite(&self, suite: Suite) -> Vec<CheckRecord> {
        match suite {
            Suite::Osp => osp_suite(self),
            Suite::Relations => relations_suite(self),
            Suite::Centre => centre_suite(self),
            Suite::Vogan => vogan_suite(self),
            Suite::Admissible => admissible_suite(self),
            Suite::Cohomology => cohomology_suite(self),
            Suite::Filtration => filtration_suite(self),
        }
    }
}

/// Runs every configured suite and assembles the report.
pub fn run(config: &RunConfig) -> Result<Report, ConfigError> {
    let ctx = Context::new(config.clone())?;
    let mut checks = Vec::new();
    for suite in parse_suites(&config.suites)? {
        checks.extend(ctx.run_suite(suite));
    }
    let mut echo = serde_json::to_value(config)?;
    echo["group"] = serde_json::Value::String(ctx.rd.name());
    echo["group_order"] = ctx.group.order().into();
    Ok(Report::new(echo, checks))
}

fn construction_failure(suite: &str, e: impl std::fmt::Display) -> Vec<CheckRecord> {
    vec![CheckRecord::bool(suite, "construction", "O_{t,c} generators lie in the centraliser", false).with_note(e.to_string())]
}

/// Sorted subsets of `{1..d}` of size `k`.
fn subsets(k: usize, d: usize) -> Vec<Vec<usize>> {
    index_tuples(k, d).into_iter().filter(|u| u.windows(2).all(|w| w[0] < w[1])).collect()
}

/// One record over many instances: passes iff no residual is nonzero.
fn aggregate(suite: &str, check: impl Into<String>, anchor: &str, results: Vec<(String, HcElement)>) -> CheckRecord {
    let n = results.len();
    let fails: Vec<&(String, HcElement)> = results.iter().filter(|(_, r)| !r.is_zero()).collect();
    let mut rec = CheckRecord::bool(suite, check, anchor, fails.is_empty()).with_note(format!("{n} instances, {} failing", fails.len()));
    if let Some((name, r)) = fails.first() {
        rec = rec.with_witness(format!("{name}: {}", r.witness().unwrap_or_default()));
    }
    rec
}

fn osp_suite(ctx: &Context) -> Vec<CheckRecord> {
    const S: &str = "osp";
    let alg = &ctx.alg;
    let mut out = Vec::new();
    if ctx.rd.small_dimension() {
        out.push(CheckRecord::skipped(S, "dimension", "generator formulas assume d ≥ 3", format!("d = {}", alg.d)));
    }
    let osp = Osp::build_unchecked(alg);
    out.extend(ctx.timed_batch(|| {
        osp.bracket_table(alg)
            .into_iter()
            .map(|row| CheckRecord::zero(S, format!("bracket {}", row.relation), "graded brackets of F±, E±, H close on osp(1|2)", &row.residual))
            .collect()
    }));
    out.push(ctx.timed(|| CheckRecord::zero(S, "scasimir-square", "𝒮² = Ω_osp + ¼", &osp.scasimir_square_residual(alg))));
    out.push(ctx.timed(|| {
        let r = osp.centraliser_residuals(alg, &osp.casimir);
        let bad = r.iter().find(|x| !x.is_zero());
        let rec = CheckRecord::bool(S, "casimir-in-centraliser", "Ω_osp graded-commutes with F±, E±, H", bad.is_none());
        match bad.and_then(HcElement::witness) {
            Some(w) => rec.with_witness(w),
            None => rec,
        }
    }));
    let quarter = alg.scalar(Scalar::rat(1, 4));
    out.push(ctx.timed(|| {
        let r = osp.project_unchecked(alg, &osp.scasimir).add(&osp.casimir.add(&quarter).scale(&Scalar::int(2)));
        CheckRecord::zero(S, "projection-scasimir", "P(𝒮) = −2(Ω_osp + ¼)", &r)
    }));
    out.push(ctx.timed(|| {
        let r = osp.project_unchecked(alg, &osp.casimir_sl2).sub(&osp.casimir.scale(&Scalar::int(3)));
        CheckRecord::zero(S, "projection-sl2-casimir", "P(Ω_sl2) = 3Ω_osp", &r)
    }));
    out.push(ctx.timed(|| {
        CheckRecord::zero(S, "projection-unit", "P(1) = 1", &osp.project_unchecked(alg, &alg.one()).sub(&alg.one()))
    }));
    let tama = match ctx.tama() {
        Ok(t) => t,
        Err(e) => {
            out.extend(construction_failure(S, e));
            return out;
        }
    };
    for k in 1..=alg.d.min(3) {
        out.push(ctx.timed(|| {
            let res = index_tuples(k, alg.d)
                .into_iter()
                .map(|u| (format!("{u:?}"), tama.o(alg, &u).sub(&tama.o_from_projection(alg, &u))))
                .collect();
            aggregate(S, format!("projection-generators-{k}"), "O_A = −(t/2) P(e_A)", res)
        }));
        out.push(ctx.timed(|| {
            let res = subsets(k, alg.d)
                .into_iter()
                .flat_map(|u| {
                    let o = tama.o(alg, &u);
                    osp.centraliser_residuals(alg, &o).into_iter().map(move |r| (format!("{u:?}"), r))
                })
                .collect();
            aggregate(S, format!("generators-in-centraliser-{k}"), "O_A lies in the graded centraliser O_{t,c}", res)
        }));
    }
    out
}

fn relations_suite(ctx: &Context) -> Vec<CheckRecord> {
    const S: &str = "relations";
    let alg = &ctx.alg;
    let tama = match ctx.tama() {
        Ok(t) => t,
        Err(e) => return construction_failure(S, e),
    };
    let mut out = Vec::new();
    for rel in relations() {
        if rel.arity > ctx.config.max_arity {
            out.push(CheckRecord::skipped(S, rel.id, rel.statement, format!("arity {} exceeds max_arity", rel.arity)));
            continue;
        }
        let mut recs = ctx.timed_batch(|| tama.relation_suite(alg, Some(&[rel.id])));
        if !rel.as_displayed {
            for r in &mut recs {
                let n = r.note.take().unwrap_or_default();
                r.note = Some(format!("{n}; corrected reading"));
            }
        }
        out.extend(recs);
    }
    let d = alg.d;
    let arity_ok = |k: usize| k <= d && k <= ctx.config.max_arity;
    let skip = |check: &str, anchor: &str, k: usize| {
        CheckRecord::skipped(S, check, anchor, format!("needs {k} distinct indices within d = {d} and max_arity"))
    };
    type Rec<'a> = (&'a str, &'a str, usize, Box<dyn Fn(&[usize]) -> HcElement + Sync + 'a>);
    let recon: Vec<Rec> = vec![
        (
            "reconstruction-4",
            "O_klmn = (1/t)(6𝒜(O_kl O_mn) − 8𝒜(O_klm Ǒ_n))",
            4,
            Box::new(|u| tama.reconstruction4(alg, u, true)),
        ),
        (
            "reconstruction-4-unit-t",
            "O_klmn = 6𝒜(O_kl O_mn) − 8𝒜(O_klm Ǒ_n), without the t factor",
            4,
            Box::new(|u| tama.reconstruction4(alg, u, false)),
        ),
        (
            "reconstruction-4-expanded",
            "O_klmn = (1/t)({O_kl,O_mn} − {O_km,O_ln} + {O_kn,O_lm} − 2(O_klmǑ_n − O_klnǑ_m + O_kmnǑ_l − O_lmnǑ_k))",
            4,
            Box::new(|u| tama.reconstruction4_expanded(alg, u, true, true)),
        ),
        (
            "reconstruction-4-expanded-ln",
            "O_klmn = {O_kl,O_mn} − {O_km,O_ln} + {O_kn,O_ln} − 2(O_klmǑ_n − O_klnǑ_m + O_kmnǑ_l − O_lmnǑ_k)",
            4,
            Box::new(|u| tama.reconstruction4_expanded(alg, u, false, false)),
        ),
        (
            "reconstruction-5",
            "O_jklmn = (4/t)𝒜(O_jkl O_mn) + (48/t²)𝒜(O_jkl Ǒ_m Ǒ_n) − (36/t²)𝒜(O_jk O_lm Ǒ_n)",
            5,
            Box::new(|u| tama.reconstruction5(alg, u, true)),
        ),
        (
            "reconstruction-5-unit-t",
            "O_jklmn = 4𝒜(O_jkl O_mn) + 48𝒜(O_jkl Ǒ_m Ǒ_n) − 36𝒜(O_jk O_lm Ǒ_n), without t factors",
            5,
            Box::new(|u| tama.reconstruction5(alg, u, false)),
        ),
    ];
    for (check, anchor, k, f) in &recon {
        if !arity_ok(*k) {
            out.push(skip(check, anchor, *k));
            continue;
        }
        out.push(ctx.timed(|| {
            use rayon::prelude::*;
            // Both sides are skew-symmetric in the indices, so sorted tuples suffice.
            let res: Vec<(String, HcElement)> =
                subsets(*k, d).par_iter().map(|u| (format!("{u:?}"), f(u))).collect();
            aggregate(S, *check, anchor, res)
        }));
    }
    out.push(ctx.timed(|| CheckRecord::zero(S, "scasimir-gamma", "𝒮Γ = (i^{d(d−1)/2}/t) O_{1…d}", &tama.s_gamma_residual(alg))));
    out.push(ctx.timed(|| {
        CheckRecord::zero(
            S,
            "scasimir-square-expansion",
            "𝒮² = (d−1)(d−2)/8 − ((d−2)/t²) Σ Ǒ_j² − (1/t²) Σ_{j<k} O_jk²",
            &tama.s_square_expansion_residual(alg),
        )
    }));
    out.push(ctx.timed(|| {
        let mut res = Vec::new();
        for k in 0..ctx.rd.roots.len() {
            for n in 1..=d.min(3) {
                for u in subsets(n, d) {
                    res.push((format!("root {k}, {u:?}"), tama.covariance_residual(alg, k, &u)));
                }
            }
        }
        aggregate(S, "covariance", "ρ(w̃) O_A ρ(w̃)⁻¹ = (−1)^{|w̃||A|} O_{w·A}", res)
    }));
    out
}

fn centre_suite(ctx: &Context) -> Vec<CheckRecord> {
    const S: &str = "centre";
    let alg = &ctx.alg;
    let tama = match ctx.tama() {
        Ok(t) => t,
        Err(e) => return construction_failure(S, e),
    };
    let gens = tama.generator_set(alg);
    let mut out = Vec::new();
    out.push(ctx.timed(|| {
        let fails = tama.centrality_failures(alg, &tama.osp.casimir, &gens);
        CheckRecord::bool(S, "casimir-central", "Ω_osp is graded-central in O_{t,c}", fails.is_empty())
            .with_note(format!("{} generators, {} failing", gens.len(), fails.len()))
    }));
    let cover = match ctx.cover() {
        Ok(c) => c,
        Err(e) => {
            out.push(CheckRecord::skipped(S, "w0-branch", "centre generator when w₀ = −1", e.to_string()));
            return out;
        }
    };
    let candidates = tama.centre_candidates(alg, &cover.cover);
    if candidates.is_empty() {
        out.push(CheckRecord::skipped(S, "w0-branch", "centre generator when w₀ = −1", "w₀ ≠ −1; the generator is Ω_osp"));
        return out;
    }
    let mut verdicts = Vec::new();
    for (name, z) in &candidates {
        let member = tama.osp.in_centraliser(alg, z);
        let central = member && tama.centrality_failures(alg, z, &gens).is_empty();
        verdicts.push((name.clone(), member, central));
    }
    let passing: Vec<&str> = verdicts.iter().filter(|v| v.1 && v.2).map(|v| v.0.as_str()).collect();
    let note = verdicts
        .iter()
        .map(|(n, m, c)| format!("{n}: {}, {}", if *m { "in O" } else { "not in O" }, if *c { "central" } else { "not central" }))
        .collect::<Vec<_>>()
        .join("; ");
    out.push(
        CheckRecord::bool(S, "w0-branch", "when w₀ = −1 some 𝕊 ∈ {𝒮w₀, Dw₀} lies in O_{t,c} and is graded-central", !passing.is_empty())
            .with_note(format!("passing: [{}]; {note}", passing.join(", "))),
    );
    for (name, anchor) in [("S (w0 ⊗ 1)", "𝕊 = 𝒮w₀ is graded-central in O_{t,c}"), ("D rho(w0~)", "𝕊 = Dw₀ is graded-central in O_{t,c}")] {
        let v = verdicts.iter().find(|v| v.0 == name).expect("candidate present");
        out.push(CheckRecord::bool(S, format!("generator {name}"), anchor, v.1 && v.2));
    }
    out.push(ctx.timed(|| {
        let w0 = alg.group.minus_identity().expect("w0 = -1");
        let plain = alg.group_elem(w0);
        let s_w0 = alg.mul(&tama.osp.scasimir, &plain);
        let r = tama.osp.project_unchecked(alg, &plain).add(&s_w0.scale(&Scalar::int(2)));
        let lifted = alg.rho(&cover.cover.elements[cover.cover.lift[w0 as usize] as usize]);
        let rl = tama.osp.project_unchecked(alg, &lifted).add(&alg.mul(&tama.osp.scasimir, &lifted).scale(&Scalar::int(2)));
        CheckRecord::zero(S, "projection-w0", "P(w₀) = −2𝒮w₀", &r).with_note(format!(
            "with w₀ read as ρ(w̃₀) the identity {}",
            if rl.is_zero() { "also holds" } else { "fails" }
        ))
    }));
    out
}

fn vogan_suite(ctx: &Context) -> Vec<CheckRecord> {
    const S: &str = "vogan";
    let alg = &ctx.alg;
    let tama = match ctx.tama() {
        Ok(t) => t,
        Err(e) => return construction_failure(S, e),
    };
    let d = alg.d;
    let quarter = alg.scalar(Scalar::rat(1, 4));
    let mut out = Vec::new();
    out.push(ctx.timed(|| {
        let r = alg.mul(&tama.dirac, &tama.dirac).sub(&tama.osp.casimir).sub(&quarter);
        CheckRecord::zero(S, "dirac-square", "D² = Ω_osp + ¼", &r)
    }));
    out.push(ctx.timed(|| {
        let p = tama.osp.project_unchecked(alg, &tama.gamma);
        CheckRecord::zero(S, "dirac-projection", "D = −½ P(Γ)", &tama.dirac.add(&p.scale(&Scalar::rat(1, 2))))
    }));
    out.push(ctx.timed(|| {
        let r = tama.osp.centraliser_residuals(alg, &tama.dirac).into_iter().fold(alg.zero(), |a, b| a.add(&b));
        CheckRecord::zero(S, "dirac-in-centraliser", "D lies in O_{t,c}", &r)
    }));
    out.push(ctx.timed(|| {
        let db = alg.bullet(&tama.dirac);
        let rec = CheckRecord::zero(S, "dirac-bullet", "D• = D", &db.sub(&tama.dirac));
        if db == tama.dirac.neg() {
            rec.with_note(format!("D• = −D (d = {d})"))
        } else {
            rec
        }
    }));
    let cover = match ctx.cover() {
        Ok(c) => c,
        Err(e) => {
            out.push(CheckRecord::skipped(S, "epsilon", "D ρ(w̃) = ε(w̃) ρ(w̃) D", e.to_string()));
            return out;
        }
    };
    out.push(ctx.timed(|| {
        use rayon::prelude::*;
        let pc = &cover.cover;
        let mut fails: Vec<u32> = (0..alg.group.order() as u32)
            .into_par_iter()
            .filter(|&w| {
                let k = pc.lift[w as usize];
                let rho = alg.rho(&pc.elements[k as usize]);
                tama.epsilon_of(alg, &rho) != Some(Tama::epsilon_formula(d, pc.parity(k)))
            })
            .collect();
        fails.sort_unstable();
        let rec = CheckRecord::bool(S, "epsilon", "D ρ(w̃) = ε(w̃) ρ(w̃) D with ε = (−1)^{(d−1)|w̃|}", fails.is_empty())
            .with_note(format!("{} group elements, {} failing", alg.group.order(), fails.len()));
        match fails.first() {
            Some(w) => rec.with_witness(format!("group element {w}")),
            None => rec,
        }
    }));
    let catalog = cover.catalog();
    let admissible: Vec<_> = catalog.rows.iter().filter_map(|r| r.admissible.clone().map(|a| (r.split.label.clone(), r.split.parity, a))).collect();
    if admissible.is_empty() {
        out.push(CheckRecord::skipped(S, "admissible", "Dirac identities for D_ω", "no admissible class sums"));
    }
    for (label, parity, w) in &admissible {
        let rho_w = cover.rho(alg, w);
        let eps = Tama::epsilon_formula(d, *parity);
        out.push(ctx.timed(|| {
            CheckRecord::bool(S, format!("omega {label} admissible"), "ω is ε-central and •-fixed", cover.is_epsilon_central(w) && cover.bullet(w) == *w)
        }));
        out.push(ctx.timed(|| {
            let ok = tama.epsilon_of(alg, &rho_w) == Some(eps);
            CheckRecord::bool(S, format!("omega {label} epsilon"), "D ρ(ω) = ε(ω) ρ(ω) D", ok)
        }));
        for (name, r) in tama.vogan_residuals(alg, &rho_w, eps) {
            let (check, anchor) = match name {
                "D_w^2 lemma" => ("lemma", "D_ω² = Ω_osp + ¼ + ρ(ω)² + (1 + ε) ρ(ω) D"),
                _ => ("decomposition", "Ω_osp = D_ω a + a D_ω + ρ(ω)² − ¼, a = ½D_ω − ρ(ω)"),
            };
            out.push(CheckRecord::zero(S, format!("omega {label} {check}"), anchor, &r));
        }
        out.push(ctx.timed(|| {
            let dw = tama.dirac_deformed(&rho_w);
            let db = alg.bullet(&dw);
            let rec = CheckRecord::zero(S, format!("omega {label} bullet"), "D_ω• = D_ω", &db.sub(&dw));
            if db == dw.neg() {
                rec.with_note("D_ω• = −D_ω")
            } else if db != dw {
                rec.with_note("D_ω• = −D + ρ(ω): only ρ(ω) is •-fixed")
            } else {
                rec
            }
        }));
    }
    out
}

fn admissible_suite(ctx: &Context) -> Vec<CheckRecord> {
    const S: &str = "admissible";
    let tga = match ctx.cover() {
        Ok(c) => c,
        Err(e) => return vec![CheckRecord::bool(S, "cover", "W̃ double cover of W", false).with_note(e.to_string())],
    };
    let pc = &tga.cover;
    let mut out = Vec::new();
    out.push(CheckRecord::bool(S, "cover-order", "|W̃| = 2|W|", pc.order() == 2 * ctx.group.order()).with_note(format!("|W̃| = {}", pc.order())));
    out.push(ctx.timed(|| {
        let ok = (0..pc.order() as u32).all(|a| pc.twisted_conjugation_holds(&ctx.group, a));
        CheckRecord::bool(S, "twisted-conjugation", "w̃ v w̃⁻¹ = (−1)^{|w̃|} w(v) in the Clifford algebra", ok)
    }));
    let catalog = tga.catalog();
    out.push(ctx.timed(|| {
        CheckRecord::bool(S, "epsilon-centre-oracle", "ε-centre of ℂW̃₋ is spanned by the class sums", span_equal(&catalog.epsilon_centre, &catalog.brute_force))
            .with_note(format!("class sums span {}, brute force {}", catalog.epsilon_centre.len(), catalog.brute_force.len()))
    }));
    out.push(CheckRecord::bool(
        S,
        "class-sums-epsilon-central",
        "each class sum is ε-central",
        catalog.rows.iter().filter(|r| r.nonzero()).all(|r| tga.is_epsilon_central(&r.sum)),
    ));
    if tga.d % 2 == 0 {
        out.push(ctx.timed(|| {
            CheckRecord::bool(S, "theta-centre-image", "for even d the θ-centre maps onto the ε-centre", span_equal(&tga.theta_centre_image(), &catalog.brute_force))
        }));
    } else {
        out.push(CheckRecord::skipped(S, "theta-centre-image", "for even d the θ-centre maps onto the ε-centre", "d is odd"));
    }
    for r in &catalog.rows {
        let label = &r.split.label;
        match (&r.zero_reason, &r.admissible) {
            (Some(why), _) => out.push(CheckRecord::new(S, format!("class {label}"), "class sum vanishes exactly when the class does not split", Status::Pass).with_note(format!("zero: {why}"))),
            (None, Some(w)) => {
                let ok = tga.is_epsilon_central(w) && tga.bullet(w) == *w;
                out.push(CheckRecord::bool(S, format!("class {label}"), "nonzero class sum normalises to an admissible element", ok));
                let rec = CheckRecord::bool(S, format!("phase {label}"), "admissible normalisation i^{|g̃|} T for odd d, T for even d", r.stated_phase);
                out.push(if r.stated_phase { rec } else { rec.with_note("the stated normalisation is •-anti-fixed; i times it is admissible") });
            }
            (None, None) => out.push(CheckRecord::bool(S, format!("class {label}"), "nonzero class sum normalises to an admissible element", false)),
        }
    }
    out.push(CheckRecord::new(S, "admissible-dimension", "real dimension of the admissible elements", Status::Pass).with_note(format!("{}", catalog.admissible.len())));
    if ctx.rd.family == crate::roots::Family::A {
        let d_odd = tga.d % 2 == 1;
        for p in sn_partition_predictions(tga) {
            let rule = if d_odd { "odd d: admissible iff the partition has no even parts" } else { "even d: admissible iff the parts are distinct and the permutation is even" };
            let rec = CheckRecord::bool(S, format!("partition {}", fmt_partition(&p.partition)), rule, p.predicted == p.computed)
                .with_note(format!("predicted {}, computed {}", p.predicted, p.computed));
            out.push(if p.predicted != p.computed && p.odd_distinct {
                let n = rec.note.clone().unwrap_or_default();
                rec.with_note(format!("{n}; odd permutation with distinct parts: its class splits, so the sum is nonzero and admissible"))
            } else {
                rec
            });
        }
    }
    out
}

fn cohomology_suite(ctx: &Context) -> Vec<CheckRecord> {
    const S: &str = "cohomology";
    let max_k = ctx.config.max_degree;
    let mut out = Vec::new();
    let tama = match ctx.tama() {
        Ok(t) => t,
        Err(e) => return construction_failure(S, e),
    };
    {
        let alg = &ctx.alg;
        let ps = PolySpinor::new(alg);
        let rhs = tama.osp.casimir.add(&alg.scalar(Scalar::rat(1, 4)));
        for k in 0..=max_k {
            out.push(ctx.timed(|| {
                let res = ps.matrix_of(&tama.dirac, k).and_then(|dm| Ok((dm.mul(&dm), ps.matrix_of(&rhs, k)?)));
                match res {
                    Ok((a, b)) => CheckRecord::bool(S, format!("dirac-square-matrix {k}"), "π(D)² = π(Ω_osp) + ¼ on degree-k polyspinors", a == b)
                        .with_note(format!("dimension {}", a.rows)),
                    Err(e) => CheckRecord::bool(S, format!("dirac-square-matrix {k}"), "π(D)² = π(Ω_osp) + ¼ on degree-k polyspinors", false).with_note(e.to_string()),
                }
            }));
        }
    }
    let (spec_alg, spec_note) = if params_are_constant(&ctx.alg.params) {
        (None, None)
    } else {
        let p = Params::specialized(Rat::int(2), &vec![Rat::new(1, 3); ctx.rd.num_orbits]);
        (Some(ctx.alg.with_params(p)), Some("parameters specialised to s = 2, c = 1/3"))
    };
    let alg = spec_alg.as_ref().unwrap_or(&ctx.alg);
    let tama_owned;
    let tama = if spec_alg.is_some() {
        match Tama::build(alg) {
            Ok(t) => {
                tama_owned = t;
                &tama_owned
            }
            Err(e) => {
                out.extend(construction_failure(S, e));
                return out;
            }
        }
    } else {
        tama
    };
    let ps = PolySpinor::new(alg);
    let mut hermitian = Vec::new();
    for k in 0..=max_k {
        out.push(ctx.timed(|| match ps.hermitian_check(k) {
            Ok(row) => {
                let ok = row.hermitian() && row.positive_minors;
                hermitian.push(ok);
                let mut notes = vec![format!("positive minors {}", row.positive_minors)];
                if !row.spinor_form {
                    notes.push("no spinor form with skew-adjoint e_j exists for odd d".into());
                }
                if let Some(n) = spec_note {
                    notes.push(n.into());
                }
                let anchor = "π(η)† G = G π(η•) for the Fischer form with positive minors";
                if !row.spinor_form {
                    let rec = CheckRecord::skipped(S, format!("hermitian {k}"), anchor, notes.join("; "));
                    return if row.failures.is_empty() { rec } else { rec.with_witness(format!("fails for {}", row.failures.join(", "))) };
                }
                let rec = CheckRecord::bool(S, format!("hermitian {k}"), anchor, ok).with_note(notes.join("; "));
                if row.failures.is_empty() {
                    rec
                } else {
                    rec.with_witness(format!("fails for {}", row.failures.join(", ")))
                }
            }
            Err(e) => {
                hermitian.push(false);
                CheckRecord::bool(S, format!("hermitian {k}"), "π(η)† G = G π(η•) for the Fischer form with positive minors", false).with_note(e.to_string())
            }
        }));
    }
    let cover = match ctx.cover() {
        Ok(c) => c,
        Err(e) => {
            out.push(CheckRecord::skipped(S, "cohomology", "H(X, ω) = ker D_ω / (ker D_ω ∩ im D_ω)", e.to_string()));
            return out;
        }
    };
    let simple: Vec<HcElement> = alg.rd.simple.iter().map(|&k| alg.rho(&lift_reflection(&alg.rd, &alg.group, k))).collect();
    let quarter = alg.scalar(Scalar::rat(1, 4));
    let mut omegas = vec![("0".to_string(), alg.zero())];
    for r in cover.catalog().rows {
        if let Some(w) = r.admissible {
            omegas.push((r.split.label.clone(), cover.rho(alg, &w)));
        }
    }
    for (label, rho_w) in &omegas {
        out.push(ctx.timed(|| {
            let dw = tama.dirac_deformed(rho_w);
            let shift = tama.osp.casimir.sub(&alg.mul(rho_w, rho_w)).add(&quarter);
            match ps.cohomology(&dw, &shift, &simple, max_k) {
                Ok(rows) => {
                    let ok = rows.iter().all(|r| !hermitian[r.degree as usize] || r.ker_cap_im == 0);
                    let table = rows
                        .iter()
                        .map(|r| format!("deg {}: dim {}, ker {}, ker∩im {}, H {}", r.degree, r.dim, r.ker, r.ker_cap_im, r.cohomology))
                        .collect::<Vec<_>>()
                        .join("; ");
                    CheckRecord::bool(S, format!("omega {label} cohomology"), "ker D_ω ∩ im D_ω = 0 on degrees where the form is Hermitian", ok).with_note(table)
                }
                Err(e) => CheckRecord::bool(S, format!("omega {label} cohomology"), "ker D_ω ∩ im D_ω = 0 on degrees where the form is Hermitian", false).with_note(e.to_string()),
            }
        }));
    }
    out.push(ctx.timed(|| kernel_search(&ps, tama, cover, &simple, max_k.min(1))));
    out
}

/// Scans `D + λρ(ω)` over a grid of rational `λ` for nonzero kernels and,
/// where one appears, checks the central character and `W̃`-invariance.
fn kernel_search(ps: &PolySpinor, tama: &Tama, cover: &TwistedGroupAlgebra, simple: &[HcElement], max_k: u32) -> CheckRecord {
    const ANCHOR: &str = "nonzero ker D_ω forces ζ_ω(Ω_osp) = ρ(ω)² − ¼ and is W̃-stable";
    let alg = ps.alg;
    let quarter = alg.scalar(Scalar::rat(1, 4));
    let mut grid: Vec<Rat> = (1..=4i64).flat_map(|q| (-8 * q..=8 * q).filter(|&p| p != 0).map(move |p| Rat::new(p, q))).collect();
    grid.sort();
    grid.dedup();
    let mut found = Vec::new();
    let mut ok = true;
    for r in cover.catalog().rows {
        let Some(w) = r.admissible else { continue };
        let rho_w = cover.rho(alg, &w);
        for k in 0..=max_k {
            let (Ok(dm), Ok(rm)) = (ps.matrix_of(&tama.dirac, k), ps.matrix_of(&rho_w, k)) else {
                return CheckRecord::bool("cohomology", "kernel-search", ANCHOR, false).with_note("operators not rational");
            };
            let (Ok(dm), Ok(rm)) = (to_constant(&dm), to_constant(&rm)) else {
                return CheckRecord::bool("cohomology", "kernel-search", ANCHOR, false).with_note("operators not rational");
            };
            for l in &grid {
                let lq = Qi2::rat(l.clone());
                if dm.add(&rm.scale(&lq)).kernel().is_empty() {
                    continue;
                }
                let rw = rho_w.scale(&Scalar::constant(lq));
                let dw = tama.dirac_deformed(&rw);
                let shift = tama.osp.casimir.sub(&alg.mul(&rw, &rw)).add(&quarter);
                match ps.cohomology(&dw, &shift, simple, k) {
                    Ok(rows) => {
                        let row = &rows[k as usize];
                        ok &= row.central_character && row.cover_invariant;
                        found.push(format!("ω = {l}·{}, deg {k}: ker {}, H {}", r.split.label, row.ker, row.cohomology));
                    }
                    Err(_) => ok = false,
                }
            }
        }
    }
    if found.is_empty() {
        return CheckRecord::skipped("cohomology", "kernel-search", ANCHOR, "no nonzero kernel for λ = p/q, q ≤ 4, |λ| ≤ 8");
    }
    let n = found.len();
    found.truncate(6);
    CheckRecord::bool("cohomology", "kernel-search", ANCHOR, ok).with_note(format!("{n} kernels; {}", found.join("; ")))
}

/// A random PBW monomial `x^α y^β w` of total degree at most `max_deg`.
fn random_monomial(rng: &mut ChaCha8Rng, alg: &Algebra, max_deg: u32, with_clifford: bool) -> HcElement {
    let d = alg.d;
    let mut xe = vec![0u8; d];
    let mut ye = vec![0u8; d];
    for _ in 0..rng.gen_range(0..=max_deg) {
        let v = rng.gen_range(0..2 * d);
        if v < d {
            xe[v] += 1;
        } else {
            ye[v - d] += 1;
        }
    }
    let g = rng.gen_range(0..alg.group.order() as u32);
    let e = if with_clifford { rng.gen_range(0..1u32 << d) as u8 } else { 0 };
    let c = if with_clifford { Scalar::constant(Qi2::new(Rat::int(rng.gen_range(-2..=2)), Rat::int(1), Rat::ZERO, Rat::ZERO)) } else { Scalar::one() };
    HcElement::term(d, Key { x: Mono::from_exps(&xe), y: Mono::from_exps(&ye), g, e }, c)
}

fn filtration_suite(ctx: &Context) -> Vec<CheckRecord> {
    const S: &str = "filtration";
    let symbolic_c = ctx.alg.params.c.iter().all(|c| c.min_c_degree().is_some_and(|k| k >= 1));
    let owned;
    let (alg, note) = if symbolic_c {
        (&ctx.alg, None)
    } else {
        owned = ctx.alg.with_params(Params { s: Scalar::s(), ..Params::symbolic(ctx.rd.num_orbits) });
        (&owned, Some("run with symbolic parameters"))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.config.seed);
    let n = ctx.config.samples;
    let pairs: Vec<(HcElement, HcElement)> = (0..n).map(|_| (random_monomial(&mut rng, alg, 3, false), random_monomial(&mut rng, alg, 3, false))).collect();
    let mut out = Vec::new();
    out.push(ctx.timed(|| {
        use rayon::prelude::*;
        let fails: Vec<usize> = (0..pairs.len()).into_par_iter().filter(|&i| !alg.filtration_check(&pairs[i].0, &pairs[i].1)).collect();
        let zero = alg.with_params(alg.params.zero_c());
        let deformed = pairs
            .iter()
            .filter(|(a, b)| {
                let bc = alg.mul(a, b).sub(&alg.mul(b, a));
                let b0 = zero.mul(a, b).sub(&zero.mul(b, a));
                bc != b0
            })
            .count();
        let mut rec = CheckRecord::bool(S, "filtration", "[ξ,η]_c − [ξ,η]_0 has degree ≤ m + n − 2 and positive c-degree", fails.is_empty())
            .with_note(format!(
                "{n} random pairs of degree ≤ 3 ({deformed} with a nonzero difference), {} failing{}",
                fails.len(),
                note.map(|s| format!("; {s}")).unwrap_or_default()
            ));
        if let Some(&i) = fails.first() {
            rec = rec.with_witness(format!("{} · {}", pairs[i].0.witness().unwrap_or_default(), pairs[i].1.witness().unwrap_or_default()));
        }
        rec
    }));
    let trials = (n / 4).max(1);
    let triples: Vec<[HcElement; 3]> = (0..trials).map(|_| std::array::from_fn(|_| random_monomial(&mut rng, alg, 2, true))).collect();
    out.push(ctx.timed(|| {
        let ok = triples.iter().all(|[a, b, c]| alg.mul(&alg.mul(a, b), c) == alg.mul(a, &alg.mul(b, c)));
        CheckRecord::bool(S, "associativity", "(ab)c = a(bc) in H ⊗ C", ok).with_note(format!("{trials} random triples"))
    }));
    out.push(ctx.timed(|| {
        let ok = triples.iter().all(|[a, b, _]| {
            let ha = alg.h_star(a);
            alg.h_star(&ha) == *a && alg.bullet(&alg.mul(a, b)) == alg.mul(&alg.bullet(b), &alg.bullet(a))
        });
        CheckRecord::bool(S, "anti-involution", "• is a conjugate-linear anti-involution", ok).with_note(format!("{trials} random pairs"))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!(parse_suites(&["all".into()]).unwrap(), Suite::ALL.to_vec());
        assert_eq!(parse_suites(&["vogan".into(), "osp".into(), "osp".into()]).unwrap(), vec![Suite::Osp, Suite::Vogan]);
        assert!(parse_suites(&["nope".into()]).is_err());
    }

    #[test]
    fn specialization_strings() {
        let p = parse_specialization("s=2, c1=1/3", 1).unwrap();
        assert_eq!(p, Params::specialized(Rat::int(2), &[Rat::new(1, 3)]));
        assert!(parse_specialization("s=2", 1).is_err());
        assert!(parse_specialization("s=-1,c1=0", 1).is_err());
        assert!(parse_specialization("s=1,c1=0,c2=1", 1).is_err());
    }

    #[test]
    fn config_json_roundtrip() {
        let c = RunConfig::new("A", Some(2), Some(3)).with_suites(&["osp"]);
        let back = RunConfig::from_json(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(c, back);
        assert!(RunConfig::from_json(r#"{"famly": "A"}"#).is_err());
    }
}
