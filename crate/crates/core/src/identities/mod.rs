//! Exact verification of the q-Genocchi identities over a parameter grid.
//!
//! Every identity with free `x`, `y` is compared as a symbolic `BiPoly`
//! equality; spot evaluations at the grid's points are extra checks on top.
//! There is no tolerance anywhere.
//!
//! Work is split into one task per (report, q) pair. Tasks are pure over an
//! immutable [`FamilyStore`], so they can run on any number of workers; the
//! merge keeps the failure with the smallest `(n, q index, alpha, beta, m)`
//! key, which makes reports independent of scheduling.

mod classical;
mod properties;
mod theorems;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::families::{FamilyId, FamilyKind, FamilyTable};
use crate::poly::{q_add_pow_poly, BiPoly};
use crate::qarith::{ratio, scalar, QCombinatorics, QContext, Scalar};

/// Free parameters the identities are quantified over.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub n_max: usize,
    pub alpha_set: BTreeSet<u32>,
    pub m_set: BTreeSet<u32>,
    pub q_set: Vec<Scalar>,
    pub x_points: Vec<Scalar>,
    pub y_points: Vec<Scalar>,
}

impl Default for Grid {
    /// `n <= 10`, `alpha` in 0..=3, `m` in 1..=3, `q` in {1/3, 1/2, 2/3, 1}.
    fn default() -> Self {
        Self {
            n_max: 10,
            alpha_set: (0..=3).collect(),
            m_set: (1..=3).collect(),
            q_set: vec![ratio(1, 3), ratio(1, 2), ratio(2, 3), scalar(1)],
            x_points: vec![scalar(0), ratio(1, 3), scalar(-2)],
            y_points: vec![scalar(0), ratio(1, 2), scalar(-1)],
        }
    }
}

impl Grid {
    /// A grid with nothing to check; every verifier reports `vacuous`.
    pub fn empty() -> Self {
        Self {
            n_max: 0,
            alpha_set: BTreeSet::new(),
            m_set: BTreeSet::new(),
            q_set: Vec::new(),
            x_points: Vec::new(),
            y_points: Vec::new(),
        }
    }

    /// Rejects `q <= 0` and `m = 0`; drops duplicate `q` values, keeping
    /// first occurrences.
    pub fn validated(mut self) -> Result<Self> {
        for q in &self.q_set {
            QContext::new(q.clone())?;
        }
        if self.m_set.contains(&0) {
            return Err(Error::BadRational("m must be a positive integer".into()));
        }
        let mut seen = BTreeSet::new();
        self.q_set.retain(|q| seen.insert(q.clone()));
        Ok(self)
    }

    pub fn max_alpha(&self) -> Option<u32> {
        self.alpha_set.iter().next_back().copied()
    }

    fn points(&self) -> Vec<(Scalar, Scalar)> {
        self.x_points
            .iter()
            .flat_map(|x| self.y_points.iter().map(move |y| (x.clone(), y.clone())))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
}

/// One side of a failed comparison.
#[derive(Clone, Debug, PartialEq)]
pub enum Side {
    Scalar(Scalar),
    Poly(BiPoly),
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        match self {
            Side::Scalar(s) => map.serialize_entry("scalar", &s.to_string())?,
            Side::Poly(p) => map.serialize_entry("poly", &p.to_wire())?,
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub formula: String,
    pub n: usize,
    pub alpha: Option<u32>,
    pub beta: Option<u32>,
    pub m: Option<u32>,
    pub q: Scalar,
    /// `Some((x, y))` when the mismatch was found at a spot evaluation.
    pub point: Option<(Scalar, Scalar)>,
    pub lhs: Side,
    pub rhs: Side,
}

impl Serialize for Counterexample {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Counterexample", 9)?;
        st.serialize_field("formula", &self.formula)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("alpha", &self.alpha)?;
        st.serialize_field("beta", &self.beta)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("q", &self.q.to_string())?;
        st.serialize_field(
            "point",
            &self
                .point
                .as_ref()
                .map(|(x, y)| [x.to_string(), y.to_string()]),
        )?;
        st.serialize_field("lhs", &self.lhs)?;
        st.serialize_field("rhs", &self.rhs)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictReport {
    pub identity_id: String,
    pub status: Status,
    pub checked_count: u64,
    /// Set for literal readings of statements that are expected to be
    /// misprinted; these never affect the aggregate verdict.
    pub erratum_candidate: bool,
    pub first_counterexample: Option<Counterexample>,
}

impl VerdictReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// True iff no non-erratum report failed.
pub fn all_pass(reports: &[VerdictReport]) -> bool {
    reports
        .iter()
        .filter(|r| !r.erratum_candidate)
        .all(VerdictReport::passed)
}

/// Which reading of Theorem S-P1 to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sp1Variant {
    /// The displayed statement, without the `[n k]_q` weight.
    AsPrinted,
    /// With the `[n k]_q` weight the proof's Cauchy product produces.
    WithBinomial,
}

/// Suites selectable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Property1,
    Property2,
    Property3,
    Property4,
    Property5,
    Property6,
    TheoremSp1,
    TheoremSp11,
    Corollaries,
    ClassicalLimits,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Property1,
        Suite::Property2,
        Suite::Property3,
        Suite::Property4,
        Suite::Property5,
        Suite::Property6,
        Suite::TheoremSp1,
        Suite::TheoremSp11,
        Suite::Corollaries,
        Suite::ClassicalLimits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Property1 => "property1",
            Suite::Property2 => "property2",
            Suite::Property3 => "property3",
            Suite::Property4 => "property4",
            Suite::Property5 => "property5",
            Suite::Property6 => "property6",
            Suite::TheoremSp1 => "theorem_sp1",
            Suite::TheoremSp11 => "theorem_sp11",
            Suite::Corollaries => "corollaries",
            Suite::ClassicalLimits => "classical_limits",
        }
    }

    fn checks(self) -> Vec<Check> {
        match self {
            Suite::Property1 => vec![Check::Property1],
            Suite::Property2 => vec![Check::Property2],
            Suite::Property3 => vec![Check::Property3],
            Suite::Property4 => vec![Check::Property4],
            Suite::Property5 => vec![Check::Property5],
            Suite::Property6 => vec![Check::Property6],
            Suite::TheoremSp1 => vec![
                Check::TheoremSp1(Sp1Variant::WithBinomial),
                Check::TheoremSp1(Sp1Variant::AsPrinted),
            ],
            Suite::TheoremSp11 => vec![Check::TheoremSp11],
            Suite::Corollaries => vec![Check::Corollaries, Check::Corollary4AsPrinted],
            Suite::ClassicalLimits => vec![Check::ClassicalLimits, Check::ScaledAsPrinted],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> std::result::Result<Self, UnknownSuite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// Parses a comma-separated suite list; `all` selects every suite.
pub fn parse_suites(list: &str) -> std::result::Result<Vec<Suite>, UnknownSuite> {
    let mut out = BTreeSet::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if name == "all" {
            out.extend(Suite::ALL);
        } else {
            out.insert(name.parse()?);
        }
    }
    if out.is_empty() {
        return Err(UnknownSuite(list.to_string()));
    }
    Ok(out.into_iter().collect())
}

/// One report's worth of checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Check {
    Property1,
    Property2,
    Property3,
    Property4,
    Property5,
    Property6,
    TheoremSp1(Sp1Variant),
    TheoremSp11,
    Corollaries,
    Corollary4AsPrinted,
    ClassicalLimits,
    ScaledAsPrinted,
}

impl Check {
    fn id(self) -> &'static str {
        match self {
            Check::Property1 => "property1",
            Check::Property2 => "property2",
            Check::Property3 => "property3",
            Check::Property4 => "property4",
            Check::Property5 => "property5",
            Check::Property6 => "property6",
            Check::TheoremSp1(Sp1Variant::WithBinomial) => "theorem_sp1/with_binomial",
            Check::TheoremSp1(Sp1Variant::AsPrinted) => "theorem_sp1/as_printed",
            Check::TheoremSp11 => "theorem_sp11",
            Check::Corollaries => "corollaries",
            Check::Corollary4AsPrinted => "corollaries/c4_as_printed",
            Check::ClassicalLimits => "classical_limits",
            Check::ScaledAsPrinted => "classical_limits/scaled_as_printed",
        }
    }

    fn erratum_candidate(self) -> bool {
        matches!(
            self,
            Check::TheoremSp1(Sp1Variant::AsPrinted)
                | Check::Corollary4AsPrinted
                | Check::ScaledAsPrinted
        )
    }

    fn classical_only(self) -> bool {
        matches!(self, Check::ClassicalLimits | Check::ScaledAsPrinted)
    }

    fn run(self, slice: &Slice<'_>, ck: &mut Checker) {
        match self {
            Check::Property1 => properties::property1(slice, ck),
            Check::Property2 => properties::property2(slice, ck),
            Check::Property3 => properties::property3(slice, ck),
            Check::Property4 => properties::property4(slice, ck),
            Check::Property5 => properties::property5(slice, ck),
            Check::Property6 => properties::property6(slice, ck),
            Check::TheoremSp1(variant) => theorems::theorem_sp1(slice, ck, variant),
            Check::TheoremSp11 => theorems::theorem_sp11(slice, ck),
            Check::Corollaries => theorems::corollaries(slice, ck),
            Check::Corollary4AsPrinted => theorems::corollary4_as_printed(slice, ck),
            Check::ClassicalLimits => classical::classical_limits(slice, ck),
            Check::ScaledAsPrinted => classical::scaled_as_printed(slice, ck),
        }
    }
}

/// Family tables for every `(kind, order, q)` a grid touches, built once
/// and shared read-only by all verification tasks.
#[derive(Clone, Debug)]
pub struct FamilyStore {
    tables: BTreeMap<(FamilyKind, u32, Scalar), FamilyTable>,
    combinatorics: BTreeMap<Scalar, QCombinatorics>,
    max_n: usize,
}

impl FamilyStore {
    /// Tables through `n_max + 2` for orders `0..=max(alpha_set, 1)`.
    pub fn for_grid(grid: &Grid) -> Self {
        let max_n = grid.n_max + 2;
        let max_order = grid.max_alpha().unwrap_or(0).max(1);
        let keys: Vec<(FamilyKind, u32, Scalar)> = grid
            .q_set
            .iter()
            .flat_map(|q| {
                [FamilyKind::Bernoulli, FamilyKind::Genocchi]
                    .into_iter()
                    .flat_map(move |kind| (0..=max_order).map(move |o| (kind, o, q.clone())))
            })
            .collect();
        let tables = keys
            .into_par_iter()
            .map(|(kind, order, q)| {
                let ctx = QContext::new(q.clone()).expect("grid q values are positive");
                let table = FamilyTable::with_polys(FamilyId::new(kind, order), &ctx, max_n);
                ((kind, order, q), table)
            })
            .collect();
        let combinatorics = grid
            .q_set
            .iter()
            .map(|q| {
                let ctx = QContext::new(q.clone()).expect("grid q values are positive");
                (q.clone(), QCombinatorics::new(&ctx, max_n as u64 + 1))
            })
            .collect();
        Self {
            tables,
            combinatorics,
            max_n,
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn table(&self, family: FamilyId, q: &Scalar) -> Option<&FamilyTable> {
        self.tables.get(&(family.kind, family.order, q.clone()))
    }

    /// Adds `delta` to one stored number and regenerates that table's
    /// polynomials, for mutation testing.
    pub fn perturb_number(
        &mut self,
        family: FamilyId,
        q: &Scalar,
        n: usize,
        delta: &Scalar,
    ) -> Result<()> {
        let table = self
            .tables
            .get_mut(&(family.kind, family.order, q.clone()))
            .filter(|t| n <= t.max_n())
            .ok_or_else(|| {
                Error::MalformedTable(format!(
                    "no stored entry {} order {} at q={} n={}",
                    family.kind, family.order, q, n
                ))
            })?;
        table.perturb_number(n, delta);
        Ok(())
    }
}

/// Everything a task needs for one value of `q`.
pub(crate) struct Slice<'a> {
    grid: &'a Grid,
    store: &'a FamilyStore,
    q: &'a Scalar,
    comb: &'a QCombinatorics,
    add_pow: Vec<BiPoly>,
}

impl<'a> Slice<'a> {
    fn new(grid: &'a Grid, store: &'a FamilyStore, q: &'a Scalar) -> Self {
        let comb = &store.combinatorics[q];
        let add_pow = (0..=store.max_n as u32)
            .map(|n| q_add_pow_poly(n, comb.ctx()))
            .collect();
        Self {
            grid,
            store,
            q,
            comb,
            add_pow,
        }
    }

    fn ctx(&self) -> &QContext {
        self.comb.ctx()
    }

    fn table(&self, kind: FamilyKind, order: u32) -> &'a FamilyTable {
        self.store
            .table(FamilyId::new(kind, order), self.q)
            .expect("store covers every order the grid asks for")
    }

    /// `G^(order)_n(x, y)`.
    fn g(&self, order: u32, n: usize) -> &'a BiPoly {
        self.table(FamilyKind::Genocchi, order).poly(n)
    }

    fn g_num(&self, order: u32, n: usize) -> &'a Scalar {
        self.table(FamilyKind::Genocchi, order).number(n)
    }

    /// `B^(order)_n(x, y)`.
    fn b(&self, order: u32, n: usize) -> &'a BiPoly {
        self.table(FamilyKind::Bernoulli, order).poly(n)
    }

    fn b_num(&self, order: u32, n: usize) -> &'a Scalar {
        self.table(FamilyKind::Bernoulli, order).number(n)
    }

    fn binom(&self, n: usize, k: usize) -> &Scalar {
        self.comb.binomial(n, k)
    }

    fn qnum(&self, n: usize) -> &Scalar {
        self.comb.number(n)
    }

    /// `(1/m - 1)_q^j` for `j = 0..=max_n`.
    fn shifted_pows(&self, m: u32) -> Vec<Scalar> {
        self.comb
            .add_pows(&ratio(1, m as i64), &scalar(-1), self.store.max_n + 1)
    }

    /// Orders `alpha >= 1` from the grid.
    fn positive_alphas(&self) -> Vec<u32> {
        self.grid
            .alpha_set
            .iter()
            .copied()
            .filter(|&a| a >= 1)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Params {
    n: usize,
    alpha: Option<u32>,
    beta: Option<u32>,
    m: Option<u32>,
}

impl Params {
    fn n(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    fn alpha(mut self, alpha: u32) -> Self {
        self.alpha = Some(alpha);
        self
    }

    fn beta(mut self, beta: u32) -> Self {
        self.beta = Some(beta);
        self
    }

    fn m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }
}

type FailureKey = (usize, usize, Option<u32>, Option<u32>, Option<u32>, u64);

/// Counts comparisons and keeps the smallest failing one.
pub(crate) struct Checker {
    q_index: usize,
    q: Scalar,
    points: Vec<(Scalar, Scalar)>,
    checked: u64,
    failure: Option<(FailureKey, Counterexample)>,
}

impl Checker {
    fn new(q_index: usize, q: &Scalar, points: Vec<(Scalar, Scalar)>) -> Self {
        Self {
            q_index,
            q: q.clone(),
            points,
            checked: 0,
            failure: None,
        }
    }

    fn record(
        &mut self,
        formula: &str,
        p: Params,
        point: Option<(Scalar, Scalar)>,
        lhs: Side,
        rhs: Side,
    ) {
        let key = (p.n, self.q_index, p.alpha, p.beta, p.m, self.checked);
        if self.failure.as_ref().is_some_and(|(k, _)| *k <= key) {
            return;
        }
        self.failure = Some((
            key,
            Counterexample {
                formula: formula.to_string(),
                n: p.n,
                alpha: p.alpha,
                beta: p.beta,
                m: p.m,
                q: self.q.clone(),
                point,
                lhs,
                rhs,
            },
        ));
    }

    /// Symbolic comparison, followed by spot evaluations at the grid points.
    fn poly(&mut self, formula: &str, p: Params, lhs: &BiPoly, rhs: &BiPoly) {
        self.checked += 1;
        if lhs != rhs {
            self.record(
                formula,
                p,
                None,
                Side::Poly(lhs.clone()),
                Side::Poly(rhs.clone()),
            );
            return;
        }
        for i in 0..self.points.len() {
            self.checked += 1;
            let (x, y) = &self.points[i];
            let (l, r) = (lhs.eval(x, y), rhs.eval(x, y));
            if l != r {
                let point = Some((x.clone(), y.clone()));
                self.record(formula, p, point, Side::Scalar(l), Side::Scalar(r));
            }
        }
    }

    fn scalar(&mut self, formula: &str, p: Params, lhs: &Scalar, rhs: &Scalar) {
        self.checked += 1;
        if lhs != rhs {
            self.record(
                formula,
                p,
                None,
                Side::Scalar(lhs.clone()),
                Side::Scalar(rhs.clone()),
            );
        }
    }
}

/// Runs verification suites against a [`FamilyStore`].
#[derive(Clone, Debug)]
pub struct Verifier {
    grid: Grid,
    store: FamilyStore,
    workers: usize,
}

impl Verifier {
    pub fn new(grid: Grid) -> Self {
        let store = FamilyStore::for_grid(&grid);
        Self {
            grid,
            store,
            workers: 1,
        }
    }

    /// Number of worker threads; 0 lets rayon decide.
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn store(&self) -> &FamilyStore {
        &self.store
    }

    pub fn store_mut(&mut self) -> &mut FamilyStore {
        &mut self.store
    }

    pub fn run(&self, suite: Suite) -> Vec<VerdictReport> {
        self.run_suites(&[suite])
    }

    pub fn run_all(&self) -> Vec<VerdictReport> {
        self.run_suites(&Suite::ALL)
    }

    pub fn run_suites(&self, suites: &[Suite]) -> Vec<VerdictReport> {
        let checks: Vec<Check> = suites.iter().flat_map(|s| s.checks()).collect();
        let tasks: Vec<(usize, usize)> = checks
            .iter()
            .enumerate()
            .flat_map(|(ci, check)| {
                self.grid
                    .q_set
                    .iter()
                    .enumerate()
                    .filter(move |(_, q)| !check.classical_only() || q.is_one())
                    .map(move |(qi, _)| (ci, qi))
            })
            .collect();
        let run_task = |&(ci, qi): &(usize, usize)| {
            let q = &self.grid.q_set[qi];
            let slice = Slice::new(&self.grid, &self.store, q);
            let mut ck = Checker::new(qi, q, self.grid.points());
            checks[ci].run(&slice, &mut ck);
            (ci, ck)
        };
        let results: Vec<(usize, Checker)> = if self.workers == 1 {
            tasks.iter().map(run_task).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build()
                .expect("thread pool");
            pool.install(|| tasks.par_iter().map(run_task).collect())
        };

        let mut merged: Vec<(u64, Option<(FailureKey, Counterexample)>)> =
            checks.iter().map(|_| (0, None)).collect();
        for (ci, ck) in results {
            let slot = &mut merged[ci];
            slot.0 += ck.checked;
            if let Some((key, cx)) = ck.failure {
                if slot.1.as_ref().is_none_or(|(k, _)| key < *k) {
                    slot.1 = Some((key, cx));
                }
            }
        }
        checks
            .iter()
            .zip(merged)
            .map(|(check, (checked, failure))| {
                let status = match (&failure, checked) {
                    (Some(_), _) => Status::Fail,
                    (None, 0) => Status::Vacuous,
                    (None, _) => Status::Pass,
                };
                VerdictReport {
                    identity_id: check.id().to_string(),
                    status,
                    checked_count: checked,
                    erratum_candidate: check.erratum_candidate(),
                    first_counterexample: failure.map(|(_, cx)| cx),
                }
            })
            .collect()
    }
}

fn single(grid: &Grid, check: Check) -> VerdictReport {
    let verifier = Verifier::new(grid.clone());
    let suite = Suite::ALL
        .into_iter()
        .find(|s| s.checks().contains(&check))
        .expect("every check belongs to a suite");
    verifier
        .run(suite)
        .into_iter()
        .find(|r| r.identity_id == check.id())
        .expect("suite produces its checks")
}

pub fn verify_property1(grid: &Grid) -> VerdictReport {
    single(grid, Check::Property1)
}

pub fn verify_property2(grid: &Grid) -> VerdictReport {
    single(grid, Check::Property2)
}

pub fn verify_property3(grid: &Grid) -> VerdictReport {
    single(grid, Check::Property3)
}

pub fn verify_property4(grid: &Grid) -> VerdictReport {
    single(grid, Check::Property4)
}

pub fn verify_property5(grid: &Grid) -> VerdictReport {
    single(grid, Check::Property5)
}

pub fn verify_property6(grid: &Grid) -> VerdictReport {
    single(grid, Check::Property6)
}

pub fn verify_theorem_sp1(grid: &Grid, variant: Sp1Variant) -> VerdictReport {
    single(grid, Check::TheoremSp1(variant))
}

pub fn verify_theorem_sp11(grid: &Grid) -> VerdictReport {
    single(grid, Check::TheoremSp11)
}

pub fn verify_corollaries(grid: &Grid) -> VerdictReport {
    single(grid, Check::Corollaries)
}

pub fn verify_classical_limits(grid: &Grid) -> VerdictReport {
    single(grid, Check::ClassicalLimits)
}

pub fn run_all(grid: &Grid) -> Vec<VerdictReport> {
    Verifier::new(grid.clone()).run_all()
}

/// `m^e` for a possibly negative exponent.
fn m_pow(m: u32, e: i64) -> Scalar {
    crate::qarith::pow_signed(&scalar(m as i64), e)
}
