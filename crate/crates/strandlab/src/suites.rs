//! One entry point per verification suite. The command-line interface, the C
//! interface, and the acceptance tests all call these functions, so a suite
//! means the same thing everywhere: same defaults, same check names, same
//! parameter echo. Parameters arrive as a JSON object; unknown fields and
//! unknown corruption labels are rejected rather than ignored.

use crate::actions::{
    max_abs_diff, verify_action_closure, verify_cancellation_pairings, verify_row_projection,
    ActionCorruption, PairingCase,
};
use crate::chains::{dual_path, enumerate_chains, Chain3Class};
use crate::compositions::{enumerate_compositions, Composition};
use crate::conditions::{distance_witness, is_four_consistent, membership_checks, FourMode};
use crate::cosimplicial::{
    sample_config_ladder, sample_numeric_ladder, verify_config_ladder, verify_exact_ladder,
    verify_numeric_ladder, verify_realized_ladder, BoundaryAnchors, ConfigCorruption, ExactLadder,
    Worst,
};
use crate::divided::{
    verify_alpha_morphism, verify_bimodule_axioms, verify_matrix_oracle, DividedCorruption,
};
use crate::error::{Error, Result};
use crate::phi::{verify_divided_carrier, verify_operad_axioms, FinitePointedSet, PhiCorruption};
use crate::report::Check;
use crate::rng::task_rng;
use crate::sphere::{
    gauss_map, normalize_configuration, random_unit_vector, sample_configuration,
    DecoratedConfiguration, SampleDomain, SphereMap,
};
use crate::tol::{
    DEFAULT_BUDGET, TOL_ALIGN, TOL_FOUR_REL, TOL_NORMALIZE, TOL_PAIRING, TOL_REP_INDEP, TOL_THREE,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// The eight suite names, in the order they are documented.
pub const SUITE_NAMES: [&str; 8] = [
    "operad",
    "bimodule",
    "alpha",
    "chains",
    "kontsevich",
    "closure",
    "cosimplicial",
    "config-model",
];

/// The outcome of one suite run: the checks, plus the fully resolved
/// parameters (defaults filled in, sweep statistics attached) for the report.
#[derive(Debug)]
pub struct SuiteRun {
    pub checks: Vec<Check>,
    pub parameters: Value,
}

/// Dispatch a suite by name. The parameter object may be empty; every field
/// has a default.
pub fn run_suite(suite: &str, params: &Value) -> Result<SuiteRun> {
    match suite {
        "operad" => run_operad(parse(params)?),
        "bimodule" => run_bimodule(parse(params)?),
        "alpha" => run_alpha(parse(params)?),
        "chains" => run_chains(parse(params)?),
        "kontsevich" => run_kontsevich(parse(params)?),
        "closure" => run_closure(parse(params)?),
        "cosimplicial" => run_cosimplicial(parse(params)?),
        "config-model" => run_config_model(parse(params)?),
        other => Err(Error::invalid(format!(
            "unknown suite {other:?}; expected one of {SUITE_NAMES:?}"
        ))),
    }
}

fn parse<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone())
        .map_err(|e| Error::invalid(format!("bad suite parameters: {e}")))
}

fn echo<T: Serialize>(p: &T) -> Result<Value> {
    serde_json::to_value(p).map_err(|e| Error::invalid(format!("parameter echo failed: {e}")))
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|mut c| {
            c.name = format!("{prefix}{}", c.name);
            c
        })
        .collect()
}

fn exact_check(name: &str, witness: Option<Value>) -> Check {
    match witness {
        None => Check::pass(name),
        Some(w) => Check::fail(name, w),
    }
}

fn bad_corruption(suite: &str, label: &str) -> Error {
    Error::invalid(format!("unknown corruption {label:?} for the {suite} suite"))
}

// ---------------------------------------------------------------------------
// operad

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
struct OperadParams {
    sizes: Vec<usize>,
    max_arity: usize,
    budget: u64,
    corrupt: Option<String>,
}

impl Default for OperadParams {
    fn default() -> Self {
        OperadParams {
            sizes: vec![1, 2, 3],
            max_arity: 4,
            budget: DEFAULT_BUDGET,
            corrupt: None,
        }
    }
}

fn run_operad(p: OperadParams) -> Result<SuiteRun> {
    let corruption = match p.corrupt.as_deref() {
        None => PhiCorruption::None,
        Some("cycle-first-entry") => PhiCorruption::CycleFirstEntry,
        Some(o) => return Err(bad_corruption("operad", o)),
    };
    let mut checks = Vec::new();
    let mut checked = 0u64;
    let mut exhausted = false;
    for &size in &p.sizes {
        let x = FinitePointedSet::new(size)?;
        // Larger carriers blow up combinatorially; cap them at arity 3.
        let cap = if size >= 3 {
            p.max_arity.min(3)
        } else {
            p.max_arity
        };
        let (cs, stats) = verify_operad_axioms(&x, cap, p.budget, corruption)?;
        checks.extend(prefixed(&format!("carrier-{size}-"), cs));
        checks.push(prefixed(
            &format!("carrier-{size}-"),
            vec![verify_divided_carrier(&x, 2, 2)],
        )
        .pop()
        .expect("one check in, one check out"));
        checked += stats.checked;
        exhausted |= stats.budget_exhausted;
    }
    let mut parameters = echo(&p)?;
    parameters["checked"] = json!(checked);
    parameters["budgetExhausted"] = json!(exhausted);
    Ok(SuiteRun { checks, parameters })
}

// ---------------------------------------------------------------------------
// bimodule

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
struct BimoduleParams {
    m: usize,
    /// Largest block count swept; defaults to 12 / m so that the number of
    /// matrix columns stays at most 12.
    max_arity: Option<usize>,
    budget: u64,
    corrupt: Option<String>,
}

impl Default for BimoduleParams {
    fn default() -> Self {
        BimoduleParams {
            m: 2,
            max_arity: None,
            budget: DEFAULT_BUDGET,
            corrupt: None,
        }
    }
}

fn divided_corruption(suite: &str, label: &Option<String>) -> Result<DividedCorruption> {
    match label.as_deref() {
        None => Ok(DividedCorruption::None),
        Some("drop-first-pair") => Ok(DividedCorruption::DropFirstPair),
        Some("mix-rows") => Ok(DividedCorruption::MixRows),
        Some(o) => Err(bad_corruption(suite, o)),
    }
}

fn run_bimodule(p: BimoduleParams) -> Result<SuiteRun> {
    if p.m < 1 {
        return Err(Error::invalid("row count m must be at least 1"));
    }
    let corruption = divided_corruption("bimodule", &p.corrupt)?;
    let nmax = p.max_arity.unwrap_or_else(|| (12 / p.m).max(1));
    let max_total = p.m * nmax;
    let (mut checks, axioms) = verify_bimodule_axioms(p.m, max_total, p.budget, corruption)?;
    let (oracle_checks, oracle) = verify_matrix_oracle(p.m, max_total, p.budget, corruption)?;
    checks.extend(oracle_checks);
    let mut parameters = echo(&p)?;
    parameters["maxArity"] = json!(nmax);
    parameters["checked"] = json!(axioms.checked + oracle.checked);
    parameters["budgetExhausted"] = json!(axioms.budget_exhausted || oracle.budget_exhausted);
    Ok(SuiteRun { checks, parameters })
}

// ---------------------------------------------------------------------------
// alpha

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
struct AlphaParams {
    m: usize,
    /// Largest arity for the exact embedding sweep.
    max_arity: Option<usize>,
    n: usize,
    samples: usize,
    seed: u64,
    corrupt: Option<String>,
}

impl Default for AlphaParams {
    fn default() -> Self {
        AlphaParams {
            m: 2,
            max_arity: None,
            n: 4,
            samples: 50,
            seed: 0,
            corrupt: None,
        }
    }
}

/// The composition family shared by the sampled sweeps: one and two parts,
/// totals up to three.
fn small_compositions() -> Result<Vec<Composition>> {
    let mut out = Vec::new();
    for parts in [
        vec![1],
        vec![2],
        vec![3],
        vec![1, 1],
        vec![1, 2],
        vec![2, 1],
    ] {
        out.push(Composition::new(parts)?);
    }
    Ok(out)
}

fn run_alpha(p: AlphaParams) -> Result<SuiteRun> {
    if p.m < 1 {
        return Err(Error::invalid("row count m must be at least 1"));
    }
    let corruption = divided_corruption("alpha", &p.corrupt)?;
    let nmax = p.max_arity.unwrap_or(4);
    let (mut checks, stats) = verify_alpha_morphism(p.m, p.m * nmax, corruption)?;

    // Numeric side: the row projections intertwine both actions bitwise on
    // sampled Gauss maps, with the samples spread over the composition
    // family.
    let comps = small_compositions()?;
    let base = p.samples / comps.len();
    let extra = p.samples % comps.len();
    let mut aggs: BTreeMap<String, Worst> = BTreeMap::new();
    for (idx, c) in comps.iter().enumerate() {
        let rounds = base + usize::from(idx < extra);
        if rounds == 0 {
            continue;
        }
        let mut rng = task_rng(p.seed, &format!("alpha-rows-{:?}", c.parts()));
        for check in verify_row_projection(&mut rng, rounds, p.m, c, p.n)? {
            let residual = check.residual.unwrap_or(f64::INFINITY);
            let parts = c.parts().to_vec();
            aggs.entry(check.name).or_insert_with(Worst::new).update(
                residual,
                || json!({ "parts": parts, "samples": rounds }),
            );
        }
    }
    for (name, agg) in aggs {
        checks.push(agg.into_check(&name, 0.0));
    }

    let mut parameters = echo(&p)?;
    parameters["maxArity"] = json!(nmax);
    parameters["checked"] = json!(stats.checked);
    Ok(SuiteRun { checks, parameters })
}

// ---------------------------------------------------------------------------
// chains

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
struct ChainsParams {
    n: usize,
    samples: usize,
    seed: u64,
    tol: Option<f64>,
    corrupt: Option<String>,
}

impl Default for ChainsParams {
    fn default() -> Self {
        ChainsParams {
            n: 4,
            samples: 100,
            seed: 0,
            tol: None,
            corrupt: None,
        }
    }
}

fn all_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 1..=4 {
        for b in 1..=4 {
            for c in 1..=4 {
                for d in 1..=4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 5];
                    if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn permutation_sign(p: &[usize; 4]) -> i32 {
    let mut inversions = 0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn run_chains(p: ChainsParams) -> Result<SuiteRun> {
    let crooked = match p.corrupt.as_deref() {
        None => false,
        Some("misread-dual") => true,
        Some(o) => return Err(bad_corruption("chains", o)),
    };
    // The suite recomputes duals itself so the corruption has a place to
    // live; the healthy path must match the library.
    let dual_rep = |rep: [usize; 4]| -> [usize; 4] {
        if crooked {
            [rep[1], rep[3], rep[2], rep[0]]
        } else {
            dual_path(rep)
        }
    };
    let tol = p.tol.unwrap_or(TOL_REP_INDEP);
    let mut checks = Vec::new();

    let strand_sets: [(&str, [usize; 4]); 2] =
        [("unit-strands", [1, 2, 3, 4]), ("spread-strands", [2, 5, 7, 11])];
    let mut involution: Option<Value> = None;
    let mut complement: Option<Value> = None;
    let mut parity: Option<Value> = None;

    for (label, t) in strand_sets {
        let classes = enumerate_chains(t)?;
        checks.push(if classes.len() == 12 {
            Check::pass(format!("{label}-have-twelve-classes"))
        } else {
            Check::fail(
                format!("{label}-have-twelve-classes"),
                json!({ "strands": t, "count": classes.len() }),
            )
        });

        for class in &classes {
            let d = Chain3Class::new(t, dual_rep(class.rep()))?;
            let dd = Chain3Class::new(t, dual_rep(d.rep()))?;
            if involution.is_none() && (dd.rep() != class.rep() || dd.t() != class.t()) {
                involution = Some(json!({
                    "strands": t, "rep": class.rep(), "doubleDual": dd.rep(),
                }));
            }
            if complement.is_none() {
                let mut edges: Vec<(usize, usize)> = class.edges().to_vec();
                edges.extend(d.edges());
                edges.sort();
                edges.dedup();
                let mut full = Vec::new();
                for a in 0..4 {
                    for b in (a + 1)..4 {
                        full.push((t[a].min(t[b]), t[a].max(t[b])));
                    }
                }
                full.sort();
                if edges != full {
                    complement = Some(json!({
                        "strands": t, "rep": class.rep(), "dual": d.rep(),
                        "edges": edges,
                    }));
                }
            }
        }

        if parity.is_none() {
            for sigma in all_permutations() {
                let class = Chain3Class::new(t, sigma)?;
                if class.parity() != permutation_sign(&sigma) {
                    parity = Some(json!({
                        "strands": t, "permutation": sigma,
                        "classParity": class.parity(),
                        "sign": permutation_sign(&sigma),
                    }));
                    break;
                }
            }
        }
    }

    checks.push(exact_check("duals-are-an-involution", involution));
    checks.push(exact_check(
        "dual-edge-sets-complement-the-six-edges",
        complement,
    ));
    checks.push(exact_check("parities-match-the-permutation-sign", parity));

    // A class summand must not depend on which of the two representative
    // paths evaluates it.
    let classes = enumerate_chains([1, 2, 3, 4])?;
    let mut worst = Worst::new();
    for i in 0..p.samples {
        let mut rng = task_rng(p.seed, &format!("chains-{i}"));
        let f = SphereMap::random(&mut rng, 4, p.n);
        let v = random_unit_vector(&mut rng, p.n);
        let w = random_unit_vector(&mut rng, p.n);
        for class in &classes {
            let rep = class.rep();
            let reversed = [rep[3], rep[2], rep[1], rep[0]];
            let a = crate::conditions::eq1_summand(&f, &[1, 2, 3, 4], rep, &v, &w);
            let b = crate::conditions::eq1_summand(&f, &[1, 2, 3, 4], reversed, &v, &w);
            worst.update((a - b).abs(), || {
                json!({ "sample": i, "rep": rep })
            });
        }
    }
    checks.push(worst.into_check("class-summands-are-representative-independent", tol));

    let parameters = echo(&p)?;
    Ok(SuiteRun { checks, parameters })
}

// ---------------------------------------------------------------------------
// kontsevich

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
struct KontsevichParams {
    samples: usize,
    mode: String,
    seed: u64,
    tol: Option<f64>,
    corrupt: Option<String>,
}

impl Default for KontsevichParams {
    fn default() -> Self {
        KontsevichParams {
            samples: 200,
            mode: "tensor".to_string(),
            seed: 0,
            tol: None,
            corrupt: None,
        }
    }
}

struct GaussSample {
    k: usize,
    n: usize,
    align: f64,
    three: f64,
    four: f64,
    distance: f64,
    normalize: f64,
}

fn run_kontsevich(p: KontsevichParams) -> Result<SuiteRun> {
    let corrupt = match p.corrupt.as_deref() {
        None => false,
        Some("perturb-entry") => true,
        Some(o) => return Err(bad_corruption("kontsevich", o)),
    };
    let mode: FourMode = p.mode.parse()?;
    let seed = p.seed;

    // Samples are independent tasks with per-task seeds, so the parallel
    // sweep is reproducible regardless of scheduling.
    let samples: Vec<GaussSample> = (0..p.samples)
        .into_par_iter()
        .map(|i| -> Result<GaussSample> {
            let mut rng = task_rng(seed, &format!("kontsevich-{i}"));
            let k = 3 + (i / 2) % 4;
            let n = 3 + i % 2;
            let config = sample_configuration(&mut rng, k, n, SampleDomain::Cube, 0.05)?;
            let mut f = gauss_map(&config)?;
            if corrupt {
                let mut table = f.table().to_vec();
                table[0] += 0.1;
                let len = crate::sphere::norm(&table[..n]);
                for x in &mut table[..n] {
                    *x /= len;
                }
                f = SphereMap::new(k, n, table)?;
            }

            let dc = DecoratedConfiguration::new(config.clone(), f.clone())?;
            let mem = membership_checks(&dc, &mut rng)?;
            let by_name = |name: &str| -> f64 {
                mem.iter()
                    .find(|c| c.name == name)
                    .and_then(|c| c.residual)
                    .unwrap_or(f64::INFINITY)
            };
            let align = by_name("pair-alignment");
            let three = by_name("three-dependence");

            let four = is_four_consistent(&f, p.tol.unwrap_or(TOL_FOUR_REL), mode, &mut rng)?
                .worst_residual;

            let mut distance = 0.0f64;
            for a in 1..=k {
                for b in (a + 1)..=k {
                    for c in (b + 1)..=k {
                        let w = distance_witness(&config, (a, b, c))?;
                        distance = distance.max(w.residual);
                    }
                }
            }

            let normed = normalize_configuration(&config)?;
            let normalize = max_abs_diff(&gauss_map(&normed)?, &f);

            Ok(GaussSample {
                k,
                n,
                align,
                three,
                four,
                distance,
                normalize,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let named: [(&str, fn(&GaussSample) -> f64, f64); 5] = [
        ("membership-pair-alignment", |s| s.align, TOL_ALIGN),
        ("membership-three-dependence", |s| s.three, TOL_THREE),
        ("membership-four-consistency", |s| s.four, TOL_FOUR_REL),
        (
            "distance-coefficients-witness-the-dependence",
            |s| s.distance,
            crate::tol::TOL_DISTANCE_WITNESS,
        ),
        (
            "normalized-configurations-keep-their-gauss-maps",
            |s| s.normalize,
            TOL_NORMALIZE,
        ),
    ];
    let mut checks = Vec::new();
    for (name, pick, default_tol) in named {
        let mut worst = Worst::new();
        for (i, s) in samples.iter().enumerate() {
            worst.update(pick(s), || json!({ "sample": i, "k": s.k, "n": s.n }));
        }
        checks.push(worst.into_check(name, p.tol.unwrap_or(default_tol)));
    }

    let parameters = echo(&p)?;
    Ok(SuiteRun { checks, parameters })
}

// ---------------------------------------------------------------------------
// closure

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
struct ClosureParams {
    m: usize,
    /// Largest part count of the swept compositions.
    k: usize,
    /// Largest composition total.
    max_arity: usize,
    n: usize,
    samples: usize,
    seed: u64,
    tol: Option<f64>,
    corrupt: Option<String>,
}

impl Default for ClosureParams {
    fn default() -> Self {
        ClosureParams {
            m: 2,
            k: 2,
            max_arity: 3,
            n: 4,
            samples: 50,
            seed: 0,
            tol: None,
            corrupt: None,
        }
    }
}

const PAIRING_PROBES: usize = 8;

fn run_closure(p: ClosureParams) -> Result<SuiteRun> {
    if p.m < 1 || p.k < 1 {
        return Err(Error::invalid("need m >= 1 and k >= 1"));
    }
    let corruption = match p.corrupt.as_deref() {
        None => ActionCorruption::None,
        Some("perturb-first-entry") => ActionCorruption::PerturbFirstEntry,
        Some("reuse-stale-cells") => ActionCorruption::ReuseStaleCells,
        Some(o) => return Err(bad_corruption("closure", o)),
    };
    let tol_three = p.tol.unwrap_or(TOL_THREE);
    let tol_four = p.tol.unwrap_or(TOL_FOUR_REL);
    let tol_pair = p.tol.unwrap_or(TOL_PAIRING);

    // Acted tables stay inside the mapping-space conditions, for every
    // composition shape with up to k parts and the given total.
    let mut aggs: BTreeMap<String, Worst> = BTreeMap::new();
    for parts in 1..=p.k {
        for total in 1..=p.max_arity {
            for c in enumerate_compositions(parts, total)? {
                let mut rng = task_rng(p.seed, &format!("closure-{:?}", c.parts()));
                let checks = verify_action_closure(
                    &mut rng, p.samples, p.m, &c, p.n, tol_three, tol_four, corruption,
                )?;
                for check in checks {
                    let residual = check.residual.unwrap_or(f64::INFINITY);
                    let parts = c.parts().to_vec();
                    let inner = check.witness.clone();
                    aggs.entry(check.name).or_insert_with(Worst::new).update(
                        residual,
                        || json!({ "parts": parts, "detail": inner }),
                    );
                }
            }
        }
    }
    let mut checks = Vec::new();
    for (name, agg) in aggs {
        let tol = if name.contains("three") { tol_three } else { tol_four };
        checks.push(agg.into_check(&name, tol));
    }

    // Both degenerate-overlap cases, on the reference instances: class
    // summands must cancel in the documented pairs.
    let mut pair_aggs: BTreeMap<String, Worst> = BTreeMap::new();
    for case in [PairingCase::MixedRows, PairingCase::SharedBlock] {
        let (arity, c, m, t) = match case {
            PairingCase::MixedRows => (8, Composition::new(vec![1, 1, 1, 1])?, 2, [1, 3, 6, 8]),
            PairingCase::SharedBlock => (4, Composition::new(vec![3, 1])?, 2, [1, 3, 5, 7]),
        };
        let mut rng = task_rng(p.seed, &format!("closure-pairings-{}", case.label()));
        for s in 0..p.samples {
            let f = SphereMap::random(&mut rng, arity, p.n);
            let checks =
                verify_cancellation_pairings(&mut rng, &f, &c, m, t, case, PAIRING_PROBES, tol_pair)?;
            for check in checks {
                let name = format!("{}-{}", case.label(), check.name);
                let residual = check.residual.unwrap_or(f64::INFINITY);
                pair_aggs.entry(name).or_insert_with(Worst::new).update(
                    residual,
                    || json!({ "sample": s }),
                );
            }
        }
    }
    for (name, agg) in pair_aggs {
        checks.push(agg.into_check(&name, tol_pair));
    }

    let parameters = echo(&p)?;
    Ok(SuiteRun { checks, parameters })
}

// ---------------------------------------------------------------------------
// cosimplicial

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
struct CosimplicialParams {
    m: usize,
    level: usize,
    n: usize,
    per_level: usize,
    seed: u64,
    tol: Option<f64>,
    corrupt: Option<String>,
}

impl Default for CosimplicialParams {
    fn default() -> Self {
        CosimplicialParams {
            m: 2,
            level: 5,
            n: 4,
            per_level: 4,
            seed: 0,
            tol: None,
            corrupt: None,
        }
    }
}

fn run_cosimplicial(p: CosimplicialParams) -> Result<SuiteRun> {
    if p.m < 1 {
        return Err(Error::invalid("row count m must be at least 1"));
    }
    let swapped = match p.corrupt.as_deref() {
        None => false,
        Some("swap-outer-cofaces") => true,
        Some(o) => return Err(bad_corruption("cosimplicial", o)),
    };
    let mut checks = Vec::new();

    let exact = if swapped {
        ExactLadder::with_swapped_cofaces(p.m, p.level, 1)?
    } else {
        ExactLadder::new(p.m, p.level)?
    };
    checks.extend(prefixed("exact-", verify_exact_ladder(&exact)?));

    // Realized ladders stay cheap only for tiny carriers and levels.
    for size in [1usize, 2] {
        let x = FinitePointedSet::new(size)?;
        let cs = verify_realized_ladder(&x, p.m, p.level.min(4))?;
        checks.extend(prefixed(&format!("realized-carrier-{size}-"), cs));
    }

    let mut rng = task_rng(p.seed, "cosimplicial-numeric");
    let ladder = sample_numeric_ladder(&mut rng, p.m, p.n, p.level.min(3), p.per_level)?;
    let ladder = if swapped {
        ladder.with_swapped_cofaces(1)
    } else {
        ladder
    };
    checks.extend(prefixed(
        "numeric-",
        verify_numeric_ladder(&ladder, p.tol.unwrap_or(0.0))?,
    ));

    let parameters = echo(&p)?;
    Ok(SuiteRun { checks, parameters })
}

// ---------------------------------------------------------------------------
// config-model

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
struct ConfigModelParams {
    m: usize,
    n: usize,
    level: usize,
    per_level: usize,
    u: Option<Vec<f64>>,
    seed: u64,
    corrupt: Option<String>,
}

impl Default for ConfigModelParams {
    fn default() -> Self {
        ConfigModelParams {
            m: 2,
            n: 4,
            level: 3,
            per_level: 2,
            u: None,
            seed: 0,
            corrupt: None,
        }
    }
}

fn run_config_model(p: ConfigModelParams) -> Result<SuiteRun> {
    if p.m < 1 {
        return Err(Error::invalid("row count m must be at least 1"));
    }
    let corruption = match p.corrupt.as_deref() {
        None => ConfigCorruption::None,
        Some("south-pole-on-copies") => ConfigCorruption::SouthPoleOnCopies,
        Some(o) => return Err(bad_corruption("config-model", o)),
    };
    let standard = BoundaryAnchors::standard(p.n)?;
    let anchors = match &p.u {
        None => standard,
        Some(u) => BoundaryAnchors::new(
            standard.x_minus().to_vec(),
            standard.x_plus().to_vec(),
            u.clone(),
        )?,
    };
    let anchor_echo = json!({
        "xMinus": anchors.x_minus(),
        "xPlus": anchors.x_plus(),
        "u": anchors.u(),
    });

    let mut rng = task_rng(p.seed, "config-ladder");
    let ladder = sample_config_ladder(&mut rng, p.m, p.n, p.level, p.per_level, anchors)?;
    let checks = verify_config_ladder(&ladder, &mut rng, corruption)?;

    let mut parameters = echo(&p)?;
    parameters["anchors"] = anchor_echo;
    Ok(SuiteRun { checks, parameters })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(suite: &str, params: Value) -> SuiteRun {
        run_suite(suite, &params).unwrap()
    }

    fn all_pass(run: &SuiteRun) -> bool {
        run.checks.iter().all(|c| c.passed())
    }

    #[test]
    fn every_suite_passes_on_small_parameters() {
        let cases = [
            ("operad", json!({ "sizes": [1, 2], "maxArity": 3 })),
            ("bimodule", json!({ "m": 2, "maxArity": 3 })),
            ("alpha", json!({ "m": 2, "maxArity": 3, "samples": 4 })),
            ("chains", json!({ "samples": 5 })),
            ("kontsevich", json!({ "samples": 6 })),
            ("closure", json!({ "samples": 3 })),
            ("cosimplicial", json!({ "level": 2, "perLevel": 2 })),
            ("config-model", json!({ "level": 2, "perLevel": 1 })),
        ];
        for (suite, params) in cases {
            let out = run(suite, params);
            assert!(!out.checks.is_empty(), "{suite} produced no checks");
            assert!(all_pass(&out), "{suite} failed: {:?}", out.checks);
        }
    }

    #[test]
    fn documented_corruptions_fail_with_witnesses() {
        let cases = [
            (
                "operad",
                json!({ "sizes": [2], "maxArity": 3, "corrupt": "cycle-first-entry" }),
            ),
            (
                "bimodule",
                json!({ "m": 1, "maxArity": 4, "corrupt": "drop-first-pair" }),
            ),
            (
                "alpha",
                json!({ "m": 2, "maxArity": 3, "samples": 2, "corrupt": "mix-rows" }),
            ),
            ("chains", json!({ "samples": 2, "corrupt": "misread-dual" })),
            (
                "kontsevich",
                json!({ "samples": 4, "corrupt": "perturb-entry" }),
            ),
            (
                "closure",
                json!({ "samples": 2, "corrupt": "perturb-first-entry" }),
            ),
            (
                "cosimplicial",
                json!({ "level": 3, "perLevel": 2, "corrupt": "swap-outer-cofaces" }),
            ),
            (
                "config-model",
                json!({ "m": 1, "level": 2, "perLevel": 1, "corrupt": "south-pole-on-copies" }),
            ),
        ];
        for (suite, params) in cases {
            let out = run(suite, params);
            let failed: Vec<_> = out.checks.iter().filter(|c| !c.passed()).collect();
            assert!(!failed.is_empty(), "{suite} corruption went unnoticed");
            assert!(
                failed.iter().all(|c| c.witness.is_some()),
                "{suite} failed without witness: {failed:?}"
            );
        }
    }

    #[test]
    fn unknown_suites_fields_and_corruptions_are_rejected() {
        assert!(run_suite("nonsense", &json!({})).is_err());
        assert!(run_suite("chains", &json!({ "bogus": 1 })).is_err());
        assert!(run_suite("chains", &json!({ "corrupt": "bogus" })).is_err());
    }

    #[test]
    fn parallel_sweeps_are_reproducible() {
        let params = json!({ "samples": 8, "seed": 11 });
        let a = run("kontsevich", params.clone());
        let b = run("kontsevich", params);
        let ja = serde_json::to_string(&a.checks).unwrap();
        let jb = serde_json::to_string(&b.checks).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn anchor_overrides_reach_the_config_ladder() {
        let out = run(
            "config-model",
            json!({ "m": 1, "level": 1, "perLevel": 1, "u": [0.0, 0.0, 0.6, 0.8] }),
        );
        assert!(all_pass(&out));
        assert_eq!(
            out.parameters["anchors"]["u"],
            json!([0.0, 0.0, 0.6, 0.8])
        );
    }
}
