//! Verdict tables for alternating relations between products of Dehn twists.
//!
//! Each check builds a pair of positive words `x, y` in an Artin monoid,
//! decides `prod(x, y; n) = prod(y, x; n)` for every `n` in a finite window
//! and compares the outcome with the predicted period. Every verdict is
//! cross-checked against the transvection representation and, for short
//! words, against the rewriting oracle.

use std::fmt::{self, Write as _};
use std::ops::RangeInclusive;
use std::sync::Arc;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::artin::{
    brute_force_equal, prod_word, words_equal, PositiveWord, DEFAULT_ORACLE_BUDGET,
};
use crate::coxeter::{CoxeterGraph, GraphSpec};
use crate::error::{Error, Result};
use crate::folding::{dihedral_folding, LcmHomReport, Orientation};
use crate::surface::{transvection_rep, CurveGraph, TransvectionRep};

/// Environment variable overriding the rewriting oracle's closure budget.
pub const ORACLE_BUDGET_ENV: &str = "ARTIN_MCG_ORACLE_BUDGET";

/// Words longer than this are not handed to the rewriting oracle.
pub const ORACLE_MAX_LETTERS: usize = 14;

pub fn oracle_budget() -> usize {
    std::env::var(ORACLE_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_BUDGET)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    EvenChain,
    OddChain,
    FoldA,
    FoldD,
    Conjecture,
    Corollary,
    ClaimsEven,
    ClaimsOdd,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremId::EvenChain => "even-chain",
            TheoremId::OddChain => "odd-chain",
            TheoremId::FoldA => "fold-A",
            TheoremId::FoldD => "fold-D",
            TheoremId::Conjecture => "conjecture",
            TheoremId::Corollary => "corollary",
            TheoremId::ClaimsEven => "claims-even",
            TheoremId::ClaimsOdd => "claims-odd",
        })
    }
}

/// Which check to run, on which window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoremConfig {
    pub theorem: TheoremId,
    pub k: usize,
    pub n_max: usize,
    pub period: usize,
}

impl TheoremConfig {
    /// Predicted period of the relation; `None` for the claim checks, which
    /// have no window.
    pub fn expected_period(theorem: TheoremId, k: usize) -> Option<usize> {
        match theorem {
            TheoremId::EvenChain | TheoremId::Conjecture => Some(2 * k + 4),
            TheoremId::OddChain => Some(2 * k + 1),
            TheoremId::FoldA => Some(k),
            TheoremId::FoldD => Some((2 * k).checked_sub(2)?),
            TheoremId::Corollary => Some(6),
            TheoremId::ClaimsEven | TheoremId::ClaimsOdd => None,
        }
    }

    /// `n_max` defaults to three periods and must cover at least two.
    pub fn new(theorem: TheoremId, k: usize, n_max: Option<usize>) -> Result<Self> {
        let period = Self::expected_period(theorem, k).filter(|&p| p > 0).ok_or_else(|| {
            Error::InvalidArgument(format!("{theorem} has no verdict window for k = {k}"))
        })?;
        let n_max = n_max.unwrap_or(3 * period);
        if n_max < 2 * period {
            return Err(Error::InvalidArgument(format!(
                "n_max = {n_max} is below twice the period {period}"
            )));
        }
        Ok(TheoremConfig { theorem, k, n_max, period })
    }
}

/// How a curve of the statement corresponds to a monoid generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexEntry {
    pub curve: String,
    pub generator: usize,
}

fn index_map(names: impl IntoIterator<Item = String>) -> Vec<IndexEntry> {
    names.into_iter().enumerate().map(|(i, curve)| IndexEntry { curve, generator: i + 1 }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictRow {
    pub n: usize,
    pub relation_holds: bool,
    pub expected: bool,
    pub agree: bool,
    /// Whether the twist matrices of the two sides differ; `None` on
    /// integer overflow.
    pub separated_by_matrix: Option<bool>,
    /// Rewriting-oracle verdict, when the words were short enough.
    pub oracle_verdict: Option<bool>,
    pub cross_check_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictTable {
    pub theorem: TheoremId,
    pub k: usize,
    pub period: usize,
    pub n_max: usize,
    pub graph: GraphSpec,
    pub x: String,
    pub y: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub index_map: Vec<IndexEntry>,
    pub rows: Vec<VerdictRow>,
    pub all_agree: bool,
    pub cross_checks_consistent: bool,
    pub periodicity_consistent: bool,
    pub wall_time_ms: f64,
}

impl VerdictTable {
    pub fn passed(&self) -> bool {
        self.all_agree && self.cross_checks_consistent && self.periodicity_consistent
    }

    pub fn row(&self, n: usize) -> Option<&VerdictRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{} k={} period={} n_max={}", self.theorem, self.k, self.period, self.n_max);
        if let Some(label) = &self.label {
            let _ = write!(out, " [{label}]");
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "graph {}  x = {}  y = {}", spec_name(&self.graph), self.x, self.y);
        let _ = writeln!(out, "index map: {}", render_index_map(&self.index_map));
        let _ = writeln!(out, "{:>4}  {:<6} {:<8} {:<5} {:<7} {:<6}", "n", "holds", "expected", "agree", "matrix", "oracle");
        for r in &self.rows {
            let matrix = match r.separated_by_matrix {
                Some(true) => "differ",
                Some(false) => "equal",
                None => "ovf",
            };
            let oracle = match r.oracle_verdict {
                Some(true) => "equal",
                Some(false) => "differ",
                None => "-",
            };
            let _ = writeln!(
                out,
                "{:>4}  {:<6} {:<8} {:<5} {:<7} {:<6}{}",
                r.n,
                yes_no(r.relation_holds),
                yes_no(r.expected),
                yes_no(r.agree),
                matrix,
                oracle,
                if r.cross_check_ok { "" } else { "  CROSS-CHECK FAILED" }
            );
        }
        let _ = writeln!(
            out,
            "{}  ({:.1} ms)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.wall_time_ms
        );
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn spec_name(spec: &GraphSpec) -> String {
    spec.build().map(|g| g.to_string()).unwrap_or_else(|_| "custom".into())
}

fn render_index_map(map: &[IndexEntry]) -> String {
    map.iter().map(|e| format!("{}->{}", e.curve, e.generator)).join(" ")
}

/// Words, curves and labelling for one family of relations.
#[derive(Debug, Clone)]
pub struct RelationSetup {
    pub graph: Arc<CoxeterGraph>,
    pub curves: CurveGraph,
    pub x: PositiveWord,
    pub y: PositiveWord,
    pub index_map: Vec<IndexEntry>,
}

/// Chain `a_0, ..., a_k` as generators `1..=k+1` of `A_{k+1}`; `x = a_0`
/// and `y = a_{σ(1)} ... a_{σ(k)}` (identity `σ` when `None`).
pub fn even_chain_setup(k: usize, sigma: Option<&[usize]>) -> Result<RelationSetup> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let graph = Arc::new(CoxeterGraph::a(k + 1)?);
    let order: Vec<usize> = match sigma {
        Some(s) => {
            let mut sorted = s.to_vec();
            sorted.sort_unstable();
            if sorted != (1..=k).collect::<Vec<_>>() {
                return Err(Error::InvalidArgument(format!("{s:?} is not a permutation of 1..={k}")));
            }
            s.to_vec()
        }
        None => (1..=k).collect(),
    };
    let x = PositiveWord::new(&graph, vec![1])?;
    let y = PositiveWord::new(&graph, order.iter().map(|&i| i + 1).collect())?;
    Ok(RelationSetup {
        curves: CurveGraph::chain(k + 1)?,
        index_map: index_map((0..=k).map(|j| format!("a{j}"))),
        graph,
        x,
        y,
    })
}

/// Chain `a_1, ..., a_k, b_1, ..., b_k` as generators `1..=2k` of `A_{2k}`.
pub fn odd_chain_setup(k: usize) -> Result<RelationSetup> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let graph = Arc::new(CoxeterGraph::a(2 * k)?);
    let x = PositiveWord::new(&graph, (1..=k).collect())?;
    let y = PositiveWord::new(&graph, (k + 1..=2 * k).collect())?;
    Ok(RelationSetup {
        curves: CurveGraph::chain(2 * k)?,
        index_map: index_map((1..=k).map(|i| format!("a{i}")).chain((1..=k).map(|i| format!("b{i}")))),
        graph,
        x,
        y,
    })
}

struct RowContext<'a> {
    setup: &'a RelationSetup,
    rep: &'a TransvectionRep,
    budget: usize,
}

impl RowContext<'_> {
    fn row(&self, n: usize, expected: bool) -> Result<VerdictRow> {
        let lhs = prod_word(&self.setup.x, &self.setup.y, n)?;
        let rhs = prod_word(&self.setup.y, &self.setup.x, n)?;
        let relation_holds = words_equal(&lhs, &rhs)?;
        let separated_by_matrix = match self.rep.separates(&lhs, &rhs) {
            Ok(b) => Some(b),
            Err(Error::Overflow) => None,
            Err(e) => return Err(e),
        };
        let oracle_verdict = if lhs.len() <= ORACLE_MAX_LETTERS {
            match brute_force_equal(&lhs, &rhs, self.budget) {
                Ok(b) => Some(b),
                Err(Error::BudgetExceeded(_)) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        let cross_check_ok = !(relation_holds && separated_by_matrix == Some(true))
            && oracle_verdict.is_none_or(|o| o == relation_holds);
        Ok(VerdictRow {
            n,
            relation_holds,
            expected,
            agree: relation_holds == expected,
            separated_by_matrix,
            oracle_verdict,
            cross_check_ok,
        })
    }
}

/// Evaluates rows `1..=n_max` in parallel.
pub fn run_table(config: &TheoremConfig, setup: &RelationSetup, label: Option<String>) -> Result<VerdictTable> {
    let start = Instant::now();
    let rep = transvection_rep(&setup.curves)?;
    let ctx = RowContext { setup, rep: &rep, budget: oracle_budget() };
    let period = config.period;
    let rows = (1..=config.n_max)
        .into_par_iter()
        .map(|n| ctx.row(n, n % period == 0))
        .collect::<Result<Vec<_>>>()?;
    let holding: Vec<usize> = rows.iter().filter(|r| r.relation_holds).map(|r| r.n).collect();
    let periodicity_consistent = holding
        .iter()
        .all(|&n0| (n0..=config.n_max).step_by(n0).all(|n| rows[n - 1].relation_holds));
    let all_agree = rows.iter().all(|r| r.agree);
    let cross_checks_consistent = rows.iter().all(|r| r.cross_check_ok);
    Ok(VerdictTable {
        theorem: config.theorem,
        k: config.k,
        period,
        n_max: config.n_max,
        graph: setup.graph.spec(),
        x: setup.x.to_string(),
        y: setup.y.to_string(),
        label,
        index_map: setup.index_map.clone(),
        rows,
        all_agree,
        cross_checks_consistent,
        periodicity_consistent,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// `x = a_0`, `y = a_1 ... a_k` on a chain of `k + 1` curves; period `2k + 4`.
///
/// For `k = 1` the two twists satisfy the braid relation, so the relation
/// already holds at length 3 and the predicted period fails; that case is
/// only run with `allow_degenerate`.
pub fn check_even_chain(k: usize, n_max: Option<usize>, allow_degenerate: bool) -> Result<VerdictTable> {
    if k == 0 || (k == 1 && !allow_degenerate) {
        return Err(Error::Precondition(format!(
            "even-chain needs k >= 2 (got k = {k}): for k = 1 the twists braid, xyx = yxy holds at \
             length 3 although 3 is not a multiple of 6, so the period is not necessary"
        )));
    }
    let config = TheoremConfig::new(TheoremId::EvenChain, k, n_max)?;
    run_table(&config, &even_chain_setup(k, None)?, None)
}

/// `x = a_1 ... a_k`, `y = b_1 ... b_k` on a chain of `2k` curves; period `2k + 1`.
pub fn check_odd_chain(k: usize, n_max: Option<usize>) -> Result<VerdictTable> {
    let config = TheoremConfig::new(TheoremId::OddChain, k, n_max)?;
    run_table(&config, &odd_chain_setup(k)?, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    A,
    D,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse(format!("unknown family {other:?}; expected A or D"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoldReport {
    pub family: Family,
    pub k: usize,
    pub table: VerdictTable,
    pub lcm_hom: LcmHomReport,
    pub respects_lcm: bool,
    /// The images agree with the parity formulas for `x`, `y`.
    pub images_match_closed_form: bool,
}

impl FoldReport {
    pub fn passed(&self) -> bool {
        self.table.passed() && self.lcm_hom.passed() && self.respects_lcm && self.images_match_closed_form
    }

    pub fn render(&self) -> String {
        let mut out = self.table.render();
        let _ = writeln!(
            out,
            "lcm-hom: relation at h={} {}, divisibility {}, shorter relation {}, lcm {}, closed form {}",
            self.lcm_hom.h,
            yes_no(self.lcm_hom.relation_at_h),
            yes_no(self.lcm_hom.divisibility),
            self.lcm_hom.first_shorter_relation.map_or("none".into(), |r| r.to_string()),
            if self.respects_lcm { "ok" } else { "WRONG" },
            if self.images_match_closed_form { "ok" } else { "WRONG" },
        );
        out
    }
}

/// `x` = twists about the odd-indexed curves, `y` = the even-indexed ones;
/// in type D the two leaves `k-1, k` sit with whichever class `k-2` avoids.
pub fn fold_closed_form(family: Family, k: usize) -> (Vec<usize>, Vec<usize>) {
    match family {
        Family::A => {
            let x = (1..k).filter(|i| i % 2 == 1).collect();
            let y = (1..k).filter(|i| i % 2 == 0).collect();
            (x, y)
        }
        Family::D => {
            let spine = k - 2;
            let mut x: Vec<usize> = (1..=spine).filter(|i| i % 2 == 1).collect();
            let mut y: Vec<usize> = (1..=spine).filter(|i| i % 2 == 0).collect();
            let leaves = if spine.is_multiple_of(2) { &mut x } else { &mut y };
            leaves.extend([k - 1, k]);
            (x, y)
        }
    }
}

/// Images of the dihedral folding of `A_{k-1}` (period `k`) or `D_k`
/// (period `2k - 2`).
pub fn check_fold(family: Family, k: usize, n_max: Option<usize>) -> Result<FoldReport> {
    let (graph, theorem, curves) = match family {
        Family::A if k >= 3 => (CoxeterGraph::a(k - 1)?, TheoremId::FoldA, CurveGraph::chain(k - 1)?),
        Family::D if k >= 4 => (CoxeterGraph::d(k)?, TheoremId::FoldD, CurveGraph::d_type(k)?),
        Family::A => return Err(Error::RankOutOfRange(format!("fold-A needs k >= 3, got {k}"))),
        Family::D => return Err(Error::RankOutOfRange(format!("fold-D needs k >= 4, got {k}"))),
    };
    let graph = Arc::new(graph);
    let config = TheoremConfig::new(theorem, k, n_max)?;
    let folding = dihedral_folding(&graph, Orientation::Positive)?;
    let (x, y) = folding.lcm_hom_images()?;
    let (cx, cy) = fold_closed_form(family, k);
    let images_match_closed_form = x.letters() == cx && y.letters() == cy;
    let setup = RelationSetup {
        index_map: index_map((1..=graph.rank()).map(|i| format!("s{i}"))),
        curves,
        graph,
        x,
        y,
    };
    let table = run_table(&config, &setup, None)?;
    if folding.h() as usize != config.period {
        return Err(Error::Precondition(format!(
            "Coxeter number {} differs from the predicted period {}",
            folding.h(),
            config.period
        )));
    }
    Ok(FoldReport {
        family,
        k,
        table,
        lcm_hom: folding.verify_lcm_hom()?,
        respects_lcm: folding.respects_lcm()?,
        images_match_closed_form,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub k: usize,
    /// `false` when `k` lies outside the range the period was predicted for.
    pub verified_range: bool,
    pub tables: Vec<VerdictTable>,
    pub all_pass: bool,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        self.all_pass
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            let _ = writeln!(
                out,
                "{:<28} {}  ({:.1} ms)",
                t.label.as_deref().unwrap_or(""),
                if t.passed() { "PASS" } else { "FAIL" },
                t.wall_time_ms
            );
        }
        let _ = writeln!(
            out,
            "conjecture k={}: {} of {} permutations pass{}",
            self.k,
            self.tables.iter().filter(|t| t.passed()).count(),
            self.tables.len(),
            if self.verified_range { "" } else { " (exploratory k)" }
        );
        out
    }
}

/// Even-chain check with `y = a_{σ(1)} ... a_{σ(k)}` for every `σ ∈ S_k`.
pub fn check_conjecture(k: usize, n_max: Option<usize>, allow_unverified: bool) -> Result<ConjectureReport> {
    let verified_range = (2..=4).contains(&k);
    if !verified_range && !(allow_unverified && k >= 1) {
        return Err(Error::InvalidArgument(format!(
            "conjecture check is limited to k in 2..=4 (got k = {k}); pass the override to explore"
        )));
    }
    let config = TheoremConfig::new(TheoremId::Conjecture, k, n_max)?;
    let tables = (1..=k)
        .permutations(k)
        .map(|sigma| {
            let setup = even_chain_setup(k, Some(&sigma))?;
            run_table(&config, &setup, Some(format!("sigma = {}", sigma.iter().join(" "))))
        })
        .collect::<Result<Vec<_>>>()?;
    let all_pass = tables.iter().all(VerdictTable::passed);
    Ok(ConjectureReport { k, verified_range, tables, all_pass })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryRow {
    pub r: usize,
    pub holds: bool,
    pub expected: bool,
    pub agree: bool,
    pub oracle_verdict: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub u: String,
    pub v: String,
    pub rows: Vec<CorollaryRow>,
    /// The length-6 relation between `x = s_1 s_3 s_4` and `y = s_2` in `A+(D_4)`,
    /// whose image under `s_1, s_3, s_4 -> a`, `s_2 -> b` is the `r = 3` row.
    pub d4_relation_holds: bool,
    pub all_agree: bool,
    pub wall_time_ms: f64,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.all_agree && self.d4_relation_holds
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "u = {}  v = {}  in A2", self.u, self.v);
        for r in &self.rows {
            let _ = writeln!(
                out,
                "r={}  u^r = v^r: {:<3} expected {:<3} {}",
                r.r,
                yes_no(r.holds),
                yes_no(r.expected),
                if r.agree { "ok" } else { "MISMATCH" }
            );
        }
        let _ = writeln!(out, "D4 lift holds: {}", yes_no(self.d4_relation_holds));
        let _ = writeln!(out, "{}  ({:.1} ms)", if self.passed() { "PASS" } else { "FAIL" }, self.wall_time_ms);
        out
    }
}

/// `(a^3 b)^r = (b a^3)^r` in `A+(A_2)` holds at `r = 3` and fails for `r = 1, 2`.
pub fn check_corollary() -> Result<CorollaryReport> {
    let start = Instant::now();
    let budget = oracle_budget();
    let a2 = Arc::new(CoxeterGraph::a(2)?);
    let u = PositiveWord::new(&a2, vec![1, 1, 1, 2])?;
    let v = PositiveWord::new(&a2, vec![2, 1, 1, 1])?;
    let rows = (1..=3)
        .map(|r| {
            let (ur, vr) = (u.pow(r), v.pow(r));
            let holds = words_equal(&ur, &vr)?;
            let oracle_verdict = if ur.len() <= ORACLE_MAX_LETTERS {
                match brute_force_equal(&ur, &vr, budget) {
                    Ok(b) => Some(b),
                    Err(Error::BudgetExceeded(_)) => None,
                    Err(e) => return Err(e),
                }
            } else {
                None
            };
            let expected = r == 3;
            let agree = holds == expected && oracle_verdict.is_none_or(|o| o == holds);
            Ok(CorollaryRow { r, holds, expected, agree, oracle_verdict })
        })
        .collect::<Result<Vec<_>>>()?;

    let d4 = Arc::new(CoxeterGraph::d(4)?);
    let x = PositiveWord::new(&d4, vec![1, 3, 4])?;
    let y = PositiveWord::new(&d4, vec![2])?;
    let d4_relation_holds = words_equal(&prod_word(&x, &y, 6)?, &prod_word(&y, &x, 6)?)?;

    let all_agree = rows.iter().all(|r| r.agree);
    Ok(CorollaryReport {
        u: u.to_string(),
        v: v.to_string(),
        rows,
        d4_relation_holds,
        all_agree,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    Even,
    Odd,
}

impl std::str::FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::Parse(format!("unknown parity {other:?}; expected even or odd"))),
        }
    }
}

/// The four reductions used to pin down the period, each stating that an
/// alternating relation holds iff a shorter equation between twists does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimKind {
    /// Even chain, length `2i - 1`: holds iff `T_{k-i+3} = T_1 ... T_k`.
    EvenChainOddLength,
    /// Even chain, length `2i`: holds iff `T_{k-i+2} = T_0`.
    EvenChainEvenLength,
    /// Odd chain, length `2m`, `m < k`.
    OddChainEvenLength,
    /// Odd chain, length `2m + 1`, `m <= k`.
    OddChainOddLength,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimRow {
    pub claim: ClaimKind,
    /// `i` for the even chain, `m` for the odd chain.
    pub index: usize,
    /// Length of the alternating relation.
    pub length: usize,
    /// `false` for the boundary row one past the stated range.
    pub in_stated_range: bool,
    pub relation_holds: bool,
    pub reduced_holds: bool,
    pub reduced_lhs: String,
    pub reduced_rhs: String,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimsReport {
    pub parity: Parity,
    pub k: usize,
    pub index_map: Vec<IndexEntry>,
    pub rows: Vec<ClaimRow>,
    pub all_agree: bool,
}

impl ClaimsReport {
    pub fn passed(&self) -> bool {
        self.all_agree
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "claims {:?} k={}", self.parity, self.k);
        let _ = writeln!(out, "index map: {}", render_index_map(&self.index_map));
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<24} idx={:<2} len={:<3} relation {:<3} reduced {:<3} [{} = {}]{}{}",
                format!("{:?}", r.claim),
                r.index,
                r.length,
                yes_no(r.relation_holds),
                yes_no(r.reduced_holds),
                r.reduced_lhs,
                r.reduced_rhs,
                if r.in_stated_range { "" } else { " (boundary)" },
                if r.agree { "" } else { "  MISMATCH" }
            );
        }
        let _ = writeln!(out, "{}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

fn claim_row(
    setup: &RelationSetup,
    claim: ClaimKind,
    index: usize,
    length: usize,
    in_stated_range: bool,
    lhs: Vec<usize>,
    rhs: Vec<usize>,
) -> Result<ClaimRow> {
    let relation_holds =
        words_equal(&prod_word(&setup.x, &setup.y, length)?, &prod_word(&setup.y, &setup.x, length)?)?;
    let lhs = PositiveWord::new(&setup.graph, lhs)?;
    let rhs = PositiveWord::new(&setup.graph, rhs)?;
    let reduced_holds = words_equal(&lhs, &rhs)?;
    Ok(ClaimRow {
        claim,
        index,
        length,
        in_stated_range,
        relation_holds,
        reduced_holds,
        reduced_lhs: lhs.to_string(),
        reduced_rhs: rhs.to_string(),
        agree: relation_holds == reduced_holds,
    })
}

/// Compares each alternating relation with its reduced equation.
///
/// Even chain: `i` ranges over `3..=k+1` (default all of it), plus a
/// boundary row at `i = k + 2` when no range is given. Odd chain: `m`
/// ranges over `1..=k`; the even-length reduction is only defined for
/// `m < k`.
pub fn check_claims(parity: Parity, k: usize, range: Option<RangeInclusive<usize>>) -> Result<ClaimsReport> {
    let (stated, setup) = match parity {
        Parity::Even if k >= 2 => (3..=k + 1, even_chain_setup(k, None)?),
        Parity::Odd if k >= 2 => (1..=k, odd_chain_setup(k)?),
        _ => return Err(Error::InvalidArgument(format!("claims need k >= 2, got {k}"))),
    };
    let indices = match &range {
        Some(r) => {
            if r.is_empty() || r.start() < stated.start() || r.end() > stated.end() {
                return Err(Error::InvalidArgument(format!(
                    "index range {}..={} outside {}..={}",
                    r.start(),
                    r.end(),
                    stated.start(),
                    stated.end()
                )));
            }
            r.clone()
        }
        None => stated.clone(),
    };

    let mut rows = Vec::new();
    match parity {
        Parity::Even => {
            // curve a_j is generator j + 1
            let t = |j: usize| j + 1;
            let all: Vec<usize> = (1..=k).map(t).collect();
            for i in indices {
                rows.push(claim_row(&setup, ClaimKind::EvenChainOddLength, i, 2 * i - 1, true, vec![t(k + 3 - i)], all.clone())?);
                rows.push(claim_row(&setup, ClaimKind::EvenChainEvenLength, i, 2 * i, true, vec![t(k + 2 - i)], vec![t(0)])?);
            }
            if range.is_none() {
                let i = k + 2;
                rows.push(claim_row(&setup, ClaimKind::EvenChainEvenLength, i, 2 * i, false, vec![t(0)], vec![t(0)])?);
            }
        }
        Parity::Odd => {
            let a = |i: usize| i;
            let b = |i: usize| k + i;
            for m in indices {
                if m < k {
                    let lhs = (k - m + 1..=k).map(a).chain((1..=k).map(b)).collect();
                    let rhs = (k - m + 1..k)
                        .flat_map(|j| [a(j + 1), a(j)])
                        .chain([b(1), a(k)])
                        .chain((2..=k - m + 1).map(b))
                        .collect();
                    rows.push(claim_row(&setup, ClaimKind::OddChainEvenLength, m, 2 * m, true, lhs, rhs)?);
                }
                let lhs = (1..=k).map(a).collect();
                let rhs = (k - m + 1..=k).map(a).chain((1..=k - m).map(b)).collect();
                rows.push(claim_row(&setup, ClaimKind::OddChainOddLength, m, 2 * m + 1, true, lhs, rhs)?);
            }
        }
    }
    let all_agree = rows.iter().all(|r| r.agree);
    Ok(ClaimsReport { parity, k, index_map: setup.index_map, rows, all_agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn config_window() {
        let c = TheoremConfig::new(TheoremId::EvenChain, 2, None).unwrap();
        assert_eq!((c.period, c.n_max), (8, 24));
        assert!(TheoremConfig::new(TheoremId::OddChain, 2, Some(9)).is_err());
        assert_eq!(TheoremConfig::new(TheoremId::FoldD, 5, None).unwrap().period, 8);
        assert!(TheoremConfig::new(TheoremId::ClaimsEven, 3, None).is_err());
    }

    #[test]
    fn even_chain_examples() {
        let t = check_even_chain(2, None, false).unwrap();
        assert!(t.row(8).unwrap().relation_holds);
        assert!(!t.row(7).unwrap().relation_holds);
        assert!(t.passed());
        let t3 = check_even_chain(3, Some(20), false).unwrap();
        assert!(!t3.row(8).unwrap().relation_holds);
        assert!(t3.row(10).unwrap().relation_holds);
    }

    #[test]
    fn even_chain_refuses_k1() {
        assert!(matches!(check_even_chain(1, None, false), Err(Error::Precondition(_))));
        let t = check_even_chain(1, None, true).unwrap();
        assert!(t.row(3).unwrap().relation_holds);
        assert!(!t.row(3).unwrap().agree);
        assert!(!t.passed());
    }

    #[test]
    fn odd_chain_examples() {
        let t1 = check_odd_chain(1, None).unwrap();
        assert!(t1.row(3).unwrap().relation_holds);
        let t2 = check_odd_chain(2, None).unwrap();
        assert!(t2.row(5).unwrap().relation_holds);
        assert!(!t2.row(4).unwrap().relation_holds);
        assert!(t1.passed() && t2.passed());
        assert_eq!(t2.index_map[2], IndexEntry { curve: "b1".into(), generator: 3 });
    }

    #[test]
    fn short_rows_are_oracle_checked() {
        let t = check_odd_chain(1, None).unwrap();
        assert!(t.rows.iter().filter(|r| r.n <= 7).all(|r| r.oracle_verdict == Some(r.relation_holds)));
        // unequal matrices never accompany a holding relation
        assert!(t.rows.iter().all(|r| !(r.relation_holds && r.separated_by_matrix == Some(true))));
    }

    #[test]
    fn fold_examples() {
        let a4 = check_fold(Family::A, 4, None).unwrap();
        assert_eq!((a4.table.x.as_str(), a4.table.y.as_str(), a4.table.period), ("1 3", "2", 4));
        let d4 = check_fold(Family::D, 4, None).unwrap();
        assert_eq!((d4.table.x.as_str(), d4.table.y.as_str(), d4.table.period), ("1 3 4", "2", 6));
        let a5 = check_fold(Family::A, 5, None).unwrap();
        assert_eq!((a5.table.x.as_str(), a5.table.y.as_str()), ("1 3", "2 4"));
        assert!(a4.passed() && d4.passed() && a5.passed());
        assert!(check_fold(Family::A, 2, None).is_err());
        assert!(check_fold(Family::D, 3, None).is_err());
    }

    #[test]
    fn fold_closed_forms() {
        assert_eq!(fold_closed_form(Family::D, 5), (vec![1, 3], vec![2, 4, 5]));
        assert_eq!(fold_closed_form(Family::D, 6), (vec![1, 3, 5, 6], vec![2, 4]));
        assert_eq!(fold_closed_form(Family::A, 6), (vec![1, 3, 5], vec![2, 4]));
    }

    #[test]
    fn conjecture_small() {
        let r = check_conjecture(2, None, false).unwrap();
        assert_eq!(r.tables.len(), 2);
        assert!(r.passed());
        assert!(check_conjecture(5, None, false).is_err());
        assert!(!check_conjecture(1, None, true).unwrap().verified_range);
    }

    #[test]
    fn corollary() {
        let r = check_corollary().unwrap();
        assert!(r.passed());
        assert_eq!(r.rows.iter().map(|r| r.holds).collect::<Vec<_>>(), [false, false, true]);
    }

    #[test]
    fn claims_examples() {
        let even2 = check_claims(Parity::Even, 2, None).unwrap();
        let boundary = even2.rows.iter().find(|r| !r.in_stated_range).unwrap();
        assert_eq!(boundary.length, 8);
        assert!(boundary.relation_holds && boundary.reduced_holds);

        let even4 = check_claims(Parity::Even, 4, Some(3..=3)).unwrap();
        assert!(even4.rows.iter().all(|r| !r.relation_holds && !r.reduced_holds));

        let odd2 = check_claims(Parity::Odd, 2, Some(2..=2)).unwrap();
        let row = odd2.rows.iter().find(|r| r.claim == ClaimKind::OddChainOddLength).unwrap();
        assert!(row.relation_holds && row.reduced_holds);
        assert!(odd2.passed());
    }

    #[test]
    fn claims_reject_ranges() {
        assert!(check_claims(Parity::Even, 4, Some(2..=3)).is_err());
        assert!(check_claims(Parity::Odd, 3, Some(1..=4)).is_err());
        assert!(check_claims(Parity::Odd, 1, None).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn tables_are_periodic_and_cross_checked(
            k in 2usize..=4,
            sigma in Just((1usize..=4).collect::<Vec<_>>()).prop_shuffle(),
        ) {
            let sigma: Vec<usize> = sigma.into_iter().filter(|&i| i <= k).collect();
            let config = TheoremConfig::new(TheoremId::Conjecture, k, Some(2 * (2 * k + 4))).unwrap();
            let t = run_table(&config, &even_chain_setup(k, Some(&sigma)).unwrap(), None).unwrap();
            prop_assert!(t.periodicity_consistent);
            prop_assert!(t.cross_checks_consistent);
            prop_assert_eq!(t.rows.iter().map(|r| r.n).collect::<Vec<_>>(), (1..=config.n_max).collect::<Vec<_>>());
        }
    }

    #[test]
    fn budget_from_env_default() {
        // only checks the fallback; the variable is not set under test
        if std::env::var(ORACLE_BUDGET_ENV).is_err() {
            assert_eq!(oracle_budget(), DEFAULT_ORACLE_BUDGET);
        }
    }
}
