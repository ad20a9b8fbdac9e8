//! The decision procedure: does a lowering element send the highest weight
//! vector to something nonzero?
//!
//! The search alternates two sound moves on a pair `(F, ω)` standing for the
//! vector `F·e⁺` in the module of highest weight `ω`:
//!
//! * **raise** — replace `F` by the symbolic image `r^ω_{(i,j),1}(F)` of the
//!   commutation-and-evaluation operator; nonvanishing of the image vector
//!   implies nonvanishing of the original.
//! * **descend** — drop a fundamental weight with positive coordinate,
//!   keeping `F`; the module map sending highest vector to highest vector
//!   carries `F·e⁺` along.
//!
//! Reaching a nonzero scalar certifies the answer, and the recorded step list
//! is a replayable [`Witness`]. Completeness of this search (the converse
//! direction) is exactly what the cross-validation against the tensor oracle
//! exercises.

use std::collections::HashSet;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Mutex;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Scalar};
use crate::hyperalgebra::{ev, r_raise, weight_components, weight_root_coords, UElem, UTMatrix};
use crate::oracle::WeylContext;
use crate::weights::WeightVec;

/// One move of the decision procedure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Step {
    Raise { i: usize, j: usize, m: u32 },
    Descend { fundamental: usize },
}

/// A replayable certificate: applying the steps to `(F, ω)` ends in an
/// element whose scalar part is `scalar ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub steps: Vec<Step>,
    pub scalar: Scalar,
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    steps: Vec<Step>,
    scalar: String,
}

fn parse_scalar(field: FieldCtx, s: &str) -> Result<Scalar> {
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim())
            .map_err(|e| Error::Input(format!("bad scalar literal {t:?}: {e}")))
    };
    match s.split_once('/') {
        None => Ok(field.from_bigint(&parse_int(s)?)),
        Some((num, den)) => field.from_ratio(&parse_int(num)?, &parse_int(den)?),
    }
}

impl Witness {
    /// A canonical, byte-stable JSON rendering.
    pub fn to_json(&self) -> String {
        let body = WitnessJson {
            steps: self.steps.clone(),
            scalar: self.scalar.to_string(),
        };
        serde_json::to_string(&body).expect("witness serialization cannot fail")
    }

    pub fn from_json(field: FieldCtx, text: &str) -> Result<Witness> {
        let body: WitnessJson = serde_json::from_str(text)
            .map_err(|e| Error::Input(format!("bad witness JSON: {e}")))?;
        Ok(Witness {
            steps: body.steps,
            scalar: parse_scalar(field, &body.scalar)?,
        })
    }
}

fn scalar_part(g: &UElem) -> Scalar {
    for (mono, c) in g.terms() {
        if mono.mat.is_zero() && mono.h.is_identity() {
            return c.clone();
        }
    }
    g.field().zero()
}

/// Depth-first search with memoized failures. `general_m` enables divided
/// powers beyond the first in raise moves; `allow_descend` enables the
/// weight-dropping move.
struct Search {
    failed: HashSet<(UElem, WeightVec)>,
    general_m: bool,
    allow_descend: bool,
}

impl Search {
    /// Once the element is a nonzero scalar, the remaining weight drains by
    /// descends alone, so the final state is `(c, 0)` as the witness format
    /// requires. Raising-only searches stop at `(c, ω)` instead.
    fn drain(&self, omega: &WeightVec) -> Vec<Step> {
        if !self.allow_descend {
            return Vec::new();
        }
        let mut steps = Vec::new();
        for l in 1..omega.n() {
            for _ in 0..omega.coord(l) {
                steps.push(Step::Descend { fundamental: l });
            }
        }
        steps
    }

    fn run(&mut self, g: &UElem, omega: &WeightVec) -> Result<Option<Witness>> {
        if let Some(c) = g.as_scalar() {
            if c.is_zero() {
                return Ok(None);
            }
            return Ok(Some(Witness { steps: self.drain(omega), scalar: c }));
        }
        let key = (g.normalized(), omega.clone());
        if self.failed.contains(&key) {
            return Ok(None);
        }
        let n = g.n();
        let coords = weight_root_coords(g)?;
        for i in 1..n {
            for j in i + 1..=n {
                let budget = if self.general_m {
                    (i..j).map(|l| coords[l - 1]).min().unwrap_or(0)
                } else {
                    (i..j).map(|l| coords[l - 1]).min().unwrap_or(0).min(1)
                };
                for m in 1..=budget {
                    let raised = r_raise(omega, i, j, m, g)?;
                    if raised.is_zero() {
                        continue;
                    }
                    if let Some(mut w) = self.run(&raised, omega)? {
                        w.steps.insert(0, Step::Raise { i, j, m });
                        return Ok(Some(w));
                    }
                }
            }
        }
        if self.allow_descend {
            for l in 1..n {
                if omega.coord(l) < 1 {
                    continue;
                }
                let lower = omega.minus_fundamental(l)?;
                if let Some(mut w) = self.run(g, &lower)? {
                    w.steps.insert(0, Step::Descend { fundamental: l });
                    return Ok(Some(w));
                }
            }
        }
        self.failed.insert(key);
        Ok(None)
    }
}

fn check_with(f: &UElem, omega: &WeightVec, general_m: bool, allow_descend: bool) -> Result<Option<Witness>> {
    if f.n() != omega.n() {
        return Err(Error::IndexRange(format!(
            "element rank {} does not match weight rank {}",
            f.n(),
            omega.n()
        )));
    }
    if !omega.is_dominant() {
        return Err(Error::Weight(format!("weight {omega} is not dominant")));
    }
    let g = ev(omega, f)?;
    if g.is_zero() {
        return Ok(None);
    }
    let mut search = Search { failed: HashSet::new(), general_m, allow_descend };
    for component in weight_components(&g) {
        if let Some(w) = search.run(&component, omega)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Decides `F·e⁺ ≠ 0` in the Weyl module of highest weight `omega`,
/// returning a replayable witness when the answer is yes.
pub fn check_nonzero(f: &UElem, omega: &WeightVec) -> Result<Option<Witness>> {
    check_with(f, omega, false, true)
}

/// Decides `F·v⁺ ≠ 0` in the irreducible head: raising moves only, with
/// divided powers bounded by the root coordinates of the current element.
pub fn check_irreducible_nonzero(f: &UElem, omega: &WeightVec) -> Result<Option<Witness>> {
    check_with(f, omega, true, false)
}

/// Replays a witness against `(F, ω)` and checks that the final state is
/// `(c, 0)` with the claimed scalar part. Errors spell out the first
/// discrepancy. Only full reductions (as produced by the Weyl-module
/// checker) replay; raising-only certificates end at a nonzero weight.
pub fn verify_witness(f: &UElem, omega: &WeightVec, witness: &Witness) -> Result<()> {
    if witness.scalar.is_zero() {
        return Err(Error::WitnessReplay("claimed scalar is zero".into()));
    }
    if witness.scalar.field() != f.field() {
        return Err(Error::WitnessReplay("witness scalar lives over the wrong field".into()));
    }
    if !omega.is_dominant() {
        return Err(Error::Weight(format!("weight {omega} is not dominant")));
    }
    let n = f.n();
    let mut g = ev(omega, f)?;
    let mut cur = omega.clone();
    for (k, step) in witness.steps.iter().enumerate() {
        match *step {
            Step::Raise { i, j, m } => {
                if i < 1 || i >= j || j > n {
                    return Err(Error::WitnessReplay(format!(
                        "step {k}: raise ({i},{j}) is not a positive root for n={n}"
                    )));
                }
                if m == 0 {
                    return Err(Error::WitnessReplay(format!("step {k}: raise with m=0")));
                }
                g = r_raise(&cur, i, j, m, &g)?;
                if g.is_zero() {
                    return Err(Error::WitnessReplay(format!(
                        "step {k}: raise ({i},{j}) annihilates the element"
                    )));
                }
            }
            Step::Descend { fundamental: l } => {
                if l < 1 || l >= n {
                    return Err(Error::WitnessReplay(format!(
                        "step {k}: descend level {l} out of range for n={n}"
                    )));
                }
                if cur.coord(l) < 1 {
                    return Err(Error::WitnessReplay(format!(
                        "step {k}: descend at level {l} but the weight coordinate is {}",
                        cur.coord(l)
                    )));
                }
                cur = cur.minus_fundamental(l)?;
            }
        }
    }
    if !cur.is_zero() {
        return Err(Error::WitnessReplay(format!(
            "final weight ({cur}) is not zero; the reduction is incomplete"
        )));
    }
    let got = scalar_part(&g);
    if got != witness.scalar {
        return Err(Error::WitnessReplay(format!(
            "final scalar part is {got}, witness claims {}",
            witness.scalar
        )));
    }
    Ok(())
}

/// Parameters for the exhaustive criterion-versus-oracle sweep.
#[derive(Clone, Debug)]
pub struct GridParams {
    /// Ranks to sweep.
    pub n_values: Vec<usize>,
    /// Ground fields.
    pub fields: Vec<FieldCtx>,
    /// Upper bound for each fundamental coordinate of ω.
    pub max_coeff: i64,
    /// Upper bound for the total root height of the lowering monomials.
    pub max_height: u32,
    /// Optional cap on the total of ω's coordinates.
    pub max_omega_height: Option<i64>,
    /// Worker threads.
    pub jobs: usize,
    /// Optional `(seed, max_cells)` subsampling of the full grid.
    pub sample: Option<(u64, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub field: String,
    pub omega: String,
    pub f: String,
    pub criterion_nonzero: bool,
    pub oracle_nonzero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub cells: u64,
    pub criterion_nonzero: u64,
    pub mismatches: Vec<Mismatch>,
    pub failures: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.failures.is_empty()
    }
}

/// Sweeps a grid of `(field, ω, F)` cells, comparing an arbitrary checker
/// against the tensor-space oracle and replaying every produced witness.
pub fn cross_validate_with<C>(params: &GridParams, checker: C) -> Result<Report>
where
    C: Fn(&UElem, &WeightVec) -> Result<Option<Witness>> + Sync,
{
    type Cell = (FieldCtx, WeightVec, UTMatrix);
    let mut cells: Vec<Cell> = Vec::new();
    for &n in &params.n_values {
        if n < 2 {
            return Err(Error::IndexRange("grid ranks must be at least 2".into()));
        }
        let mats = UTMatrix::enumerate_by_height(n, params.max_height);
        let mut omegas: Vec<WeightVec> = vec![WeightVec::zero(n)];
        for l in 1..n {
            let mut next = Vec::new();
            for w in &omegas {
                for c in 0..=params.max_coeff {
                    let mut v = w.0.clone();
                    v[l - 1] = c;
                    next.push(WeightVec(v));
                }
            }
            omegas = next;
        }
        if let Some(cap) = params.max_omega_height {
            omegas.retain(|w| w.height() <= cap);
        }
        for &field in &params.fields {
            for w in &omegas {
                for m in &mats {
                    cells.push((field, w.clone(), m.clone()));
                }
            }
        }
    }
    if let Some((seed, max_cells)) = params.sample {
        if cells.len() > max_cells {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            cells.shuffle(&mut rng);
            cells.truncate(max_cells);
            cells.sort_by(|a, b| (a.0.to_string(), &a.1, &a.2).cmp(&(b.0.to_string(), &b.1, &b.2)));
        }
    }

    // group by (field, ω) so each worker builds the tensor context once
    let mut groups: Vec<(FieldCtx, WeightVec, Vec<UTMatrix>)> = Vec::new();
    for (field, w, m) in cells {
        match groups.last_mut() {
            Some((gf, gw, mats)) if *gf == field && *gw == w => mats.push(m),
            _ => groups.push((field, w, vec![m])),
        }
    }

    let next = AtomicUsize::new(0);
    let out: Mutex<Report> = Mutex::new(Report {
        cells: 0,
        criterion_nonzero: 0,
        mismatches: Vec::new(),
        failures: Vec::new(),
    });
    let jobs = params.jobs.max(1).min(groups.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, AtomicOrdering::Relaxed);
                if k >= groups.len() {
                    break;
                }
                let (field, omega, mats) = &groups[k];
                let mut local_cells = 0u64;
                let mut local_nonzero = 0u64;
                let mut local_mismatches = Vec::new();
                let mut local_failures = Vec::new();
                match WeylContext::new(*field, omega) {
                    Err(e) => local_failures.push(format!("context ({field}, {omega}): {e}")),
                    Ok(ctx) => {
                        for mat in mats {
                            let f = UElem::monomial(*field, mat.clone());
                            local_cells += 1;
                            let described = || format!("({field}, ω={omega}, F={f})");
                            let claim = match checker(&f, omega) {
                                Ok(c) => c,
                                Err(e) => {
                                    local_failures.push(format!("checker {}: {e}", described()));
                                    continue;
                                }
                            };
                            let oracle_nonzero = match ctx.vector_of(&f) {
                                Ok(v) => !v.is_zero(),
                                Err(e) => {
                                    local_failures.push(format!("oracle {}: {e}", described()));
                                    continue;
                                }
                            };
                            if claim.is_some() {
                                local_nonzero += 1;
                            }
                            if claim.is_some() != oracle_nonzero {
                                local_mismatches.push(Mismatch {
                                    field: field.to_string(),
                                    omega: omega.to_string(),
                                    f: f.to_string(),
                                    criterion_nonzero: claim.is_some(),
                                    oracle_nonzero,
                                });
                            }
                            if let Some(w) = claim {
                                if let Err(e) = verify_witness(&f, omega, &w) {
                                    local_failures
                                        .push(format!("witness replay {}: {e}", described()));
                                }
                            }
                        }
                    }
                }
                let mut report = out.lock().unwrap();
                report.cells += local_cells;
                report.criterion_nonzero += local_nonzero;
                report.mismatches.extend(local_mismatches);
                report.failures.extend(local_failures);
            });
        }
    });
    Ok(out.into_inner().unwrap())
}

/// The standard sweep: the shipped decision procedure against the oracle.
pub fn cross_validate(params: &GridParams) -> Result<Report> {
    cross_validate_with(params, check_nonzero)
}
