//! Exact rational evaluation of anti-Ramsey closed forms, bounds and
//! threshold constants, with validity windows carried as data.
//!
//! Every value is an exact [`Rational`]; nothing here touches floating point.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::graph::PatternSpec;

pub type Rational = Ratio<i64>;

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

fn int(p: i64) -> Rational {
    Rational::from_integer(p)
}

fn binom2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("n = {n} is below the minimum {min} for this formula")]
    TooSmall { n: i64, min: i64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unrecognized family: {0}")]
    Unrecognized(String),
    #[error("no closed form covers {0}")]
    Uncovered(String),
    #[error("division guard violated: {0} must be positive")]
    DivisionGuard(String),
}

/// The set of `n` for which a bound is asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    AtLeast(Rational),
    Above(Rational),
}

impl Window {
    pub fn contains(&self, n: i64) -> bool {
        match self {
            Window::AtLeast(x) => int(n) >= *x,
            Window::Above(x) => int(n) > *x,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub value: Rational,
    pub valid: bool,
    pub window: Window,
    /// The window depends on an unspecified universal constant; `valid`
    /// only reflects the computable part of it.
    pub large_n: bool,
}

impl Bound {
    fn in_window(value: Rational, n: i64, window: Window) -> Self {
        Bound {
            value,
            valid: window.contains(n),
            window,
            large_n: false,
        }
    }

    fn caveat(mut self) -> Self {
        self.large_n = true;
        self
    }
}

pub const TAG_LARGE_N: &str = "large-n";
pub const TAG_TRIVIAL: &str = "trivial";
pub const TAG_PATH: &str = "path-closed-form";
pub const TAG_CYCLE: &str = "cycle-closed-form";
pub const TAG_MATCHING: &str = "matching-closed-form";
pub const TAG_PERFECT_MATCHING: &str = "perfect-matching-closed-form";
pub const TAG_TRANSFER_P2: &str = "matching-transfer-bound";
pub const TAG_TRANSFER_P3: &str = "cherry-transfer-bound";
pub const TAG_COVER: &str = "cover-construction";
pub const TAG_CLIQUE: &str = "clique-construction";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub family: PatternSpec,
    pub n: i64,
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    pub exact: Option<Bound>,
    pub provenance: Vec<String>,
}

impl BoundReport {
    fn new(family: &PatternSpec, n: i64) -> Self {
        BoundReport {
            family: family.clone(),
            n,
            lower: None,
            upper: None,
            exact: None,
            provenance: Vec::new(),
        }
    }

    fn tag(&mut self, tag: &str) {
        if !self.provenance.iter().any(|t| t == tag) {
            self.provenance.push(tag.to_string());
        }
    }

    /// Records an asserted equality. Inside its window the exact value is
    /// both the lower and the upper bound.
    fn set_exact(&mut self, exact: Bound) {
        if exact.valid {
            self.lower = Some(exact.clone());
            self.upper = Some(exact.clone());
        } else {
            self.upper = Some(exact.clone());
        }
        if exact.large_n {
            self.tag(TAG_LARGE_N);
        }
        self.exact = Some(exact);
    }

    pub fn exact_value(&self) -> Option<i64> {
        self.exact.as_ref().map(|b| b.value.to_integer())
    }

    /// Best integer bounds implied by the valid rational ones: ceiling of the
    /// lower bound, floor of the upper bound.
    pub fn integer_bounds(&self) -> (Option<i64>, Option<i64>) {
        let lo = self
            .lower
            .as_ref()
            .filter(|b| b.valid)
            .map(|b| b.value.ceil().to_integer());
        let hi = self
            .upper
            .as_ref()
            .filter(|b| b.valid)
            .map(|b| b.value.floor().to_integer());
        (lo, hi)
    }

    pub fn check_invariants(&self) -> Result<(), String> {
        if let (Some(lo), Some(hi)) = (&self.lower, &self.upper) {
            if lo.valid && hi.valid && lo.value > hi.value {
                return Err(format!("lower {} exceeds upper {}", lo.value, hi.value));
            }
        }
        if let Some(ex) = &self.exact {
            if !ex.value.is_integer() || !ex.value.is_positive() {
                return Err(format!("exact value {} is not a positive integer", ex.value));
            }
            if ex.valid {
                let lo = self.lower.as_ref().map(|b| b.value);
                let hi = self.upper.as_ref().map(|b| b.value);
                if lo != Some(ex.value) || hi != Some(ex.value) {
                    return Err("valid exact value must coincide with both bounds".into());
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut valid = Map::new();
        for (key, b) in [("lower", &self.lower), ("upper", &self.upper), ("exact", &self.exact)] {
            if let Some(b) = b {
                valid.insert(key.into(), Value::Bool(b.valid));
            }
        }
        json!({
            "family": self.family.to_string(),
            "n": self.n,
            "lower": self.lower.as_ref().map(|b| fmt_rational(&b.value)),
            "upper": self.upper.as_ref().map(|b| fmt_rational(&b.value)),
            "exact": self.exact_value(),
            "valid": valid,
            "provenance": self.provenance,
        })
    }
}

fn require_n(n: i64, min: i64) -> Result<(), FormulaError> {
    if n < min {
        Err(FormulaError::TooSmall { n, min })
    } else {
        Ok(())
    }
}

/// The shared shape `x (n - (x + 1) / 2)`: the number of edges of `K_n`
/// meeting a fixed `x`-set of vertices, extended to rational `x`.
fn covered_edges(x: Rational, n: i64) -> Rational {
    x * (int(n) - (x + 1) / 2)
}

/// Closed form for paths with `k >= 2` edges. Asserted only for large `n`
/// (the window involves an unspecified universal constant), hence the caveat.
pub fn ar_path(n: i64, k: i64) -> Result<BoundReport, FormulaError> {
    if k < 2 {
        return Err(FormulaError::InvalidParameter(format!(
            "path needs k >= 2 edges, got {k}"
        )));
    }
    require_n(n, k + 1)?;
    let mut report = BoundReport::new(&PatternSpec::Path(k as usize), n);
    report.set_exact(Bound::in_window(path_value(n, k), n, Window::AtLeast(int(k + 1))).caveat());
    report.tag(TAG_PATH);
    Ok(report)
}

fn path_value(n: i64, k: i64) -> Rational {
    let h = k / 2;
    covered_edges(int(h - 1), n) + 2 + k % 2
}

/// Closed form for cycles of length `k >= 3`, valid for every `n >= k`.
pub fn ar_cycle(n: i64, k: i64) -> Result<BoundReport, FormulaError> {
    if k < 3 {
        return Err(FormulaError::InvalidParameter(format!("cycle length {k} < 3")));
    }
    require_n(n, k)?;
    let mut report = BoundReport::new(&PatternSpec::Cycle(k as usize), n);
    report.set_exact(Bound::in_window(int(cycle_value(n, k)), n, Window::AtLeast(int(k))));
    report.tag(TAG_CYCLE);
    Ok(report)
}

fn cycle_value(n: i64, k: i64) -> i64 {
    let (q, rem) = n.div_rem(&(k - 1));
    binom2(k - 1) * q + Integer::div_ceil(&n, &(k - 1)) + binom2(rem)
}

/// Closed form for matchings of size `t >= 2`: the two-case form for
/// `n >= 2t + 1` (split at `n = (5t - 7)/2`, compared exactly) and the
/// perfect-matching form for `n = 2t`, `t >= 3`.
pub fn ar_matching(n: i64, t: i64) -> Result<BoundReport, FormulaError> {
    if t < 2 {
        return Err(FormulaError::InvalidParameter(format!(
            "matching needs t >= 2, got {t}"
        )));
    }
    require_n(n, 2 * t)?;
    let mut report = BoundReport::new(&PatternSpec::Matching(t as usize), n);
    let value = if n == 2 * t {
        report.tag(TAG_PERFECT_MATCHING);
        match t {
            2 => return Err(FormulaError::Uncovered(format!("perfect matchings of K_{n}"))),
            3..=6 => (t - 2) * (3 * t + 1) / 2 + 2,
            _ => (t - 2) * (2 * t - 3) + 3,
        }
    } else {
        report.tag(TAG_MATCHING);
        if int(n) <= rat(5 * t - 7, 2) {
            (t - 2) * (2 * t - 3) + 2
        } else {
            covered_edges(int(t - 2), n).to_integer() + 2
        }
    };
    report.set_exact(Bound::in_window(int(value), n, Window::AtLeast(int(2 * t))));
    // the matching transfer reproduces the same value above its own threshold
    if int(n) > rat(5 * t + 3, 2) {
        report.tag(TAG_TRANSFER_P2);
    }
    Ok(report)
}

/// Which disjoint-component step a transfer theorem adds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// add single edges, threshold `n > 5/2 t + gamma_2`
    P2,
    /// add two-edge paths, threshold `n > 5 k + gamma_3`
    P3,
}

/// Inputs of the transfer theorems: the base graph `L` (by vertex and edge
/// count), the base multiplicity, the linear-bound shape `(r, s)` and the
/// starting `n0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaParams {
    pub ell: i64,
    pub edge_count_l: i64,
    pub base: i64,
    pub r: Rational,
    pub s: Rational,
    pub n0: i64,
}

impl GammaParams {
    pub fn new(ell: i64, edge_count_l: i64, base: i64, r: Rational, s: Rational, n0: i64) -> Self {
        GammaParams {
            ell,
            edge_count_l,
            base,
            r,
            s,
            n0,
        }
    }

    fn check(&self, per_copy: i64) -> Result<(), FormulaError> {
        if self.base < 0 {
            return Err(FormulaError::InvalidParameter("base multiplicity must be >= 0".into()));
        }
        if self.n0 < self.ell + per_copy * self.base {
            return Err(FormulaError::InvalidParameter(format!(
                "n0 = {} below |V(L)| + {per_copy} * base = {}",
                self.n0,
                self.ell + per_copy * self.base
            )));
        }
        Ok(())
    }
}

/// Threshold constant for the single-edge transfer.
pub fn gamma2(p: &GammaParams) -> Result<Rational, FormulaError> {
    p.check(2)?;
    let GammaParams {
        ell,
        edge_count_l,
        base,
        r,
        s,
        n0,
    } = *p;
    let denom = int(base + 1) + r;
    if !denom.is_positive() {
        return Err(FormulaError::DivisionGuard("t1 + 1 + r".into()));
    }
    let l1 = int(ell - 1);
    let d = l1 * l1 - int(3) * l1 * r + int(2) * r * r - edge_count_l - s - 1;
    let start = int(n0 - 1) - rat(5, 2) * base;
    let second = if !d.is_negative() {
        int(3 * ell) - rat(3, 2) * r - rat(5, 2) + d / denom
    } else {
        (int(6 * ell) - int(3) * r - 6).ceil() / 2
    };
    Ok(start.max(second))
}

/// Threshold constant for the two-edge-path transfer.
pub fn gamma3(p: &GammaParams) -> Result<Rational, FormulaError> {
    p.check(3)?;
    let GammaParams {
        ell,
        edge_count_l,
        base,
        r,
        s,
        n0,
    } = *p;
    let denom = int(base) + r + rat(1, 2);
    if !denom.is_positive() {
        return Err(FormulaError::DivisionGuard("k1 + r + 1/2".into()));
    }
    let shifted = int(ell) - int(3) * r - rat(1, 2);
    let d = shifted * shifted / 2 + int(ell * ell) - edge_count_l - s - rat(9, 8);
    let start = int(n0 - 1 - 5 * base);
    let second = if !d.is_negative() {
        (int(3 * ell) - int(4) * r - 3 + d / denom).floor()
    } else {
        (int(3 * ell) - int(4) * r - 4).ceil()
    };
    Ok(start.max(second))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferBound {
    pub value: Rational,
    pub valid: bool,
    pub threshold: Rational,
}

/// Upper bound `(x + r)(n - (x + r + 1)/2) + s + 1` for `L` plus `x`
/// components, flagged valid when `n` exceeds the step's threshold.
pub fn thm_upper_bound(n: i64, x: i64, params: &GammaParams, step: Step) -> Result<TransferBound, FormulaError> {
    if x < params.base {
        return Err(FormulaError::InvalidParameter(format!(
            "multiplicity {x} below the base {}",
            params.base
        )));
    }
    let threshold = match step {
        Step::P2 => rat(5, 2) * x + gamma2(params)?,
        Step::P3 => int(5 * x) + gamma3(params)?,
    };
    let value = covered_edges(int(x) + params.r, n) + params.s + 1;
    Ok(TransferBound {
        value,
        valid: int(n) > threshold,
        threshold,
    })
}

/// Color count of the cover construction: `r1 (n - (r1 + 1)/2) + s`. The
/// anti-Ramsey number exceeds this whenever `q_s(G) > r1`.
pub fn lemma_lower_bound(n: i64, r1: i64, s: i64) -> Result<i64, FormulaError> {
    if r1 < 0 || s < 1 {
        return Err(FormulaError::InvalidParameter(format!(
            "need r1 >= 0 and s >= 1, got r1={r1}, s={s}"
        )));
    }
    require_n(n, r1)?;
    Ok(r1 * n - r1 * (r1 + 1) / 2 + s)
}

/// Upper bound for a cycle of length `k >= 4` plus `t` disjoint edges.
pub fn cycle_union_upper(n: i64, k: i64, t: i64) -> Rational {
    let a = cycle_slope_shift(k);
    (int(t) + a - 1) * (int(n) - (int(t) + a) / 2) + a * (a - 1) / 2
}

/// `k/2 + 1/(k-1)`, the shifted slope of the linear cycle bound.
fn cycle_slope_shift(k: i64) -> Rational {
    rat(k, 2) + rat(1, k - 1)
}

/// Transfer inputs whose upper bound is the linear cycle bound.
pub fn cycle_union_params(k: i64) -> GammaParams {
    let a = cycle_slope_shift(k);
    GammaParams::new(k, k, 0, a - 1, a * (a - 1) / 2 - 1, k)
}

/// Parameters `(r1, s)` of the cover construction certifying the lower
/// bound of a family: `AR > r1 (n - (r1+1)/2) + s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaParams {
    pub r1: i64,
    pub s: i64,
}

/// Families with a closed form or a bound pair, after normalizing unions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// a single edge
    Edge,
    /// `t >= 2` disjoint edges
    Matching {
        t: i64,
    },
    /// path with `k >= 3` edges alone (two-edge paths normalize to `TriplePaths`)
    Path {
        k: i64,
    },
    Cycle {
        k: i64,
    },
    /// `k >= 1` disjoint two-edge paths
    TriplePaths {
        k: i64,
    },
    /// path with `k >= 3` edges plus `t >= 1` disjoint edges
    PathMatching {
        k: i64,
        t: i64,
    },
    /// cycle of length `k` plus `t >= 1` disjoint edges
    CycleMatching {
        k: i64,
        t: i64,
    },
    /// path with `t >= 3` edges plus `k >= 1` two-edge paths
    PathTriplePaths {
        t: i64,
        k: i64,
    },
    /// `t >= 1` edges plus `k >= 1` two-edge paths
    MatchingTriplePaths {
        t: i64,
        k: i64,
    },
}

/// Normalizes a pattern spec (flattening unions, merging edge and two-edge
/// path components in any order) and identifies its family.
pub fn classify(spec: &PatternSpec) -> Result<Family, FormulaError> {
    spec.validate()
        .map_err(|e| FormulaError::InvalidParameter(e.to_string()))?;
    let unrecognized = || FormulaError::Unrecognized(spec.to_string());
    let (mut t, mut k) = (0i64, 0i64);
    let mut big = Vec::new();
    fn walk(s: &PatternSpec, t: &mut i64, k: &mut i64, big: &mut Vec<PatternSpec>) -> bool {
        match s {
            PatternSpec::Path(1) => *t += 1,
            PatternSpec::Path(2) => *k += 1,
            PatternSpec::Matching(m) => *t += *m as i64,
            PatternSpec::TriplePath(m) => *k += *m as i64,
            PatternSpec::Path(_) | PatternSpec::Cycle(_) => big.push(s.clone()),
            PatternSpec::Union(parts) => return parts.iter().all(|p| walk(p, t, k, big)),
            PatternSpec::Custom(_) => return false,
        }
        true
    }
    if !walk(spec, &mut t, &mut k, &mut big) || big.len() > 1 {
        return Err(unrecognized());
    }
    let family = match (big.first(), t, k) {
        (None, 1, 0) => Family::Edge,
        (None, t, 0) => Family::Matching { t },
        (None, 0, k) => Family::TriplePaths { k },
        (None, t, k) => Family::MatchingTriplePaths { t, k },
        (Some(PatternSpec::Path(p)), 0, 0) => Family::Path { k: *p as i64 },
        (Some(PatternSpec::Path(p)), t, 0) => Family::PathMatching { k: *p as i64, t },
        (Some(PatternSpec::Path(p)), 0, k) => Family::PathTriplePaths { t: *p as i64, k },
        (Some(PatternSpec::Cycle(c)), 0, 0) => Family::Cycle { k: *c as i64 },
        (Some(PatternSpec::Cycle(c)), t, 0) => Family::CycleMatching { k: *c as i64, t },
        _ => return Err(unrecognized()),
    };
    Ok(family)
}

impl Family {
    pub fn vertex_count(&self) -> i64 {
        match *self {
            Family::Edge => 2,
            Family::Matching { t } => 2 * t,
            Family::Path { k } => k + 1,
            Family::Cycle { k } => k,
            Family::TriplePaths { k } => 3 * k,
            Family::PathMatching { k, t } => k + 1 + 2 * t,
            Family::CycleMatching { k, t } => k + 2 * t,
            Family::PathTriplePaths { t, k } => t + 1 + 3 * k,
            Family::MatchingTriplePaths { t, k } => 2 * t + 3 * k,
        }
    }

    /// Canonical spec realizing this family (big component, then edges, then
    /// two-edge paths).
    pub fn spec(&self) -> PatternSpec {
        let u = |parts: Vec<PatternSpec>| PatternSpec::Union(parts);
        let (m, tp) = (
            |t: i64| PatternSpec::Matching(t as usize),
            |k: i64| PatternSpec::TriplePath(k as usize),
        );
        match *self {
            Family::Edge => PatternSpec::Path(1),
            Family::Matching { t } => m(t),
            Family::Path { k } => PatternSpec::Path(k as usize),
            Family::Cycle { k } => PatternSpec::Cycle(k as usize),
            Family::TriplePaths { k } => tp(k),
            Family::PathMatching { k, t } => u(vec![PatternSpec::Path(k as usize), m(t)]),
            Family::CycleMatching { k, t } => u(vec![PatternSpec::Cycle(k as usize), m(t)]),
            Family::PathTriplePaths { t, k } => u(vec![PatternSpec::Path(t as usize), tp(k)]),
            Family::MatchingTriplePaths { t, k } => u(vec![m(t), tp(k)]),
        }
    }

    /// Cover-construction parameters behind the family's lower bound, where
    /// one is known. The certified bound is `lemma_lower_bound(n, r1, s) + 1`.
    pub fn lemma_params(&self) -> Option<LemmaParams> {
        let p = |r1: i64, s: i64| Some(LemmaParams { r1, s });
        match *self {
            Family::Edge => None,
            Family::Matching { t } => p(t - 2, 1),
            Family::Path { k } => p(k / 2 - 1, 1 + k % 2),
            Family::Cycle { .. } => None,
            Family::TriplePaths { k } => p(k - 1, 1),
            Family::PathMatching { k: 3, t } => p(t, 1),
            Family::PathMatching { k, t } => p(t + (k + 1) / 2 - 2, 1),
            Family::CycleMatching { k: 3, t } => p(t, 1),
            Family::CycleMatching { k, t } => p(t + (k + 1) / 2 - 2, 1),
            Family::PathTriplePaths { t, k } => p(t / 2 + k - 1, 1 + t % 2),
            Family::MatchingTriplePaths { t: 1, k } => p(k - 1, 2),
            Family::MatchingTriplePaths { t, k } => p(t + k - 2, 1),
        }
    }

    /// Whether the family carries an asserted equality (as opposed to a bound pair).
    pub fn has_exact(&self) -> bool {
        !matches!(self, Family::PathMatching { k, .. } | Family::CycleMatching { k, .. } if *k >= 4)
    }
}

/// Lower and upper bound for a path with `k >= 4` edges plus `t >= 0`
/// disjoint edges. The upper window carries the unknown-constant caveat.
pub fn path_matching_bounds(n: i64, k: i64, t: i64) -> Result<(Bound, Bound), FormulaError> {
    if k < 4 || t < 0 {
        return Err(FormulaError::InvalidParameter(format!(
            "need k >= 4 and t >= 0, got k={k}, t={t}"
        )));
    }
    let lower = covered_edges(int(t + (k + 1) / 2 - 2), n) + 2;
    let lower = Bound::in_window(lower, n, Window::AtLeast(int(2 * t + k + 1)));
    let h = k / 2;
    let gamma = gamma2(&GammaParams::new(k + 1, k, 0, int(h - 1), int(k % 2 + 1), k + 1))?;
    let upper = covered_edges(int(t + h - 1), n) + 2 + k % 2;
    let upper = Bound::in_window(upper, n, Window::Above(rat(5, 2) * t + gamma)).caveat();
    Ok((lower, upper))
}

/// Lower and upper bound for a cycle of length `k >= 4` plus `t >= 0`
/// disjoint edges.
pub fn cycle_matching_bounds(n: i64, k: i64, t: i64) -> Result<(Bound, Bound), FormulaError> {
    if k < 4 || t < 0 {
        return Err(FormulaError::InvalidParameter(format!(
            "need k >= 4 and t >= 0, got k={k}, t={t}"
        )));
    }
    let lower = covered_edges(int(t + (k + 1) / 2 - 2), n) + 2;
    let lower = Bound::in_window(lower, n, Window::AtLeast(int(2 * t + k)));
    let threshold = rat(5, 2) * t + rat(9, 4) * k - rat(5, 4);
    let upper = Bound::in_window(cycle_union_upper(n, k, t), n, Window::Above(threshold));
    Ok((lower, upper))
}

/// Evaluates every applicable closed form or bound pair for `spec` at `n`.
pub fn ar_family(n: i64, spec: &PatternSpec) -> Result<BoundReport, FormulaError> {
    let family = classify(spec)?;
    require_n(n, family.vertex_count())?;
    let mut report = BoundReport::new(spec, n);
    let v = family.vertex_count();
    let cover_lower = |report: &mut BoundReport| {
        if let Some(LemmaParams { r1, s }) = family.lemma_params() {
            let value = lemma_lower_bound(n, r1, s).expect("family parameters are in range") + 1;
            if report.lower.is_none() {
                report.lower = Some(Bound::in_window(int(value), n, Window::AtLeast(int(v))));
            }
        }
    };
    match family {
        Family::Edge => {
            report.set_exact(Bound::in_window(int(1), n, Window::AtLeast(int(2))));
            report.tag(TAG_TRIVIAL);
        }
        Family::Matching { t } => {
            let eq = ar_matching(n, t)?;
            report.set_exact(eq.exact.expect("matching report carries an exact value"));
            report.provenance = eq.provenance;
        }
        Family::Path { k } => {
            let eq = ar_path(n, k)?;
            report.set_exact(eq.exact.expect("path report carries an exact value"));
            report.provenance = eq.provenance;
        }
        Family::Cycle { k } => {
            let eq = ar_cycle(n, k)?;
            report.set_exact(eq.exact.expect("cycle report carries an exact value"));
            report.provenance = eq.provenance;
        }
        Family::TriplePaths { k } => {
            let value = covered_edges(int(k - 1), n) + 2;
            let window = if k == 1 {
                Window::AtLeast(int(3))
            } else {
                Window::Above(int(5 * k + 1))
            };
            report.set_exact(Bound::in_window(value, n, window));
            report.tag(if k == 1 { TAG_TRIVIAL } else { TAG_TRANSFER_P3 });
            report.tag(TAG_COVER);
            cover_lower(&mut report);
            if n < 5 * k - 3 {
                let clique = int(k - 1) * (rat(9, 2) * k - 3) + 2;
                let lower = report.lower.as_ref().map(|b| b.value).unwrap_or_else(Rational::zero);
                if clique > lower {
                    report.lower = Some(Bound::in_window(clique, n, Window::AtLeast(int(3 * k))));
                    report.tag(TAG_CLIQUE);
                }
            }
        }
        Family::PathMatching { k: 3, t } => {
            let value = covered_edges(int(t), n) + 2;
            report.set_exact(Bound::in_window(value, n, Window::AtLeast(rat(5, 2) * t + 12)));
            report.tag(TAG_TRANSFER_P2);
            report.tag(TAG_COVER);
            cover_lower(&mut report);
        }
        Family::PathMatching { k, t } => {
            let (lower, upper) = path_matching_bounds(n, k, t)?;
            report.lower = Some(lower);
            report.upper = Some(upper);
            report.tag(TAG_COVER);
            report.tag(TAG_TRANSFER_P2);
            report.tag(TAG_LARGE_N);
        }
        Family::CycleMatching { k: 3, t } => {
            let value = covered_edges(int(t), n) + 2;
            report.set_exact(Bound::in_window(value, n, Window::Above(rat(5, 2) * t + 6)));
            report.tag(TAG_TRANSFER_P2);
            report.tag(TAG_COVER);
            cover_lower(&mut report);
        }
        Family::CycleMatching { k, t } => {
            let (lower, upper) = cycle_matching_bounds(n, k, t)?;
            report.lower = Some(lower);
            report.upper = Some(upper);
            report.tag(TAG_COVER);
            report.tag(TAG_TRANSFER_P2);
        }
        Family::PathTriplePaths { t, k } => {
            let h = t / 2;
            let value = covered_edges(int(k + h - 1), n) + 2 + t % 2;
            let gamma = gamma3(&GammaParams::new(t + 1, t, 0, int(h - 1), int(1 + t % 2), t + 1))?;
            report.set_exact(Bound::in_window(value, n, Window::Above(int(5 * k) + gamma)).caveat());
            report.tag(TAG_TRANSFER_P3);
            report.tag(TAG_COVER);
            cover_lower(&mut report);
        }
        Family::MatchingTriplePaths { t: 1, k } => {
            let value = covered_edges(int(k - 1), n) + 3;
            report.set_exact(Bound::in_window(value, n, Window::Above(int(5 * k + 27))));
            report.tag(TAG_TRANSFER_P3);
            report.tag(TAG_COVER);
            cover_lower(&mut report);
        }
        Family::MatchingTriplePaths { t, k: 1 } => {
            let value = covered_edges(int(t - 1), n) + 2;
            report.set_exact(Bound::in_window(value, n, Window::Above(rat(5, 2) * t + 12)));
            report.tag(TAG_TRANSFER_P2);
            report.tag(TAG_COVER);
            cover_lower(&mut report);
        }
        Family::MatchingTriplePaths { t, k } => {
            let value = covered_edges(int(k + t - 2), n) + 2;
            let threshold = (int(5 * k) + rat(13, 2) * t + 8).min(rat(5, 2) * t + rat(19, 2) * k + 7);
            report.set_exact(Bound::in_window(value, n, Window::Above(threshold)));
            report.tag(TAG_TRANSFER_P3);
            report.tag(TAG_TRANSFER_P2);
            report.tag(TAG_COVER);
            cover_lower(&mut report);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(r: &BoundReport) -> i64 {
        r.exact_value().expect("exact value present")
    }

    #[test]
    fn path_closed_form() {
        assert_eq!(exact(&ar_path(20, 5).unwrap()), 22);
        assert_eq!(exact(&ar_path(20, 4).unwrap()), 21);
        assert_eq!(exact(&ar_path(10, 2).unwrap()), 2);
        let r = ar_path(20, 5).unwrap();
        assert!(r.exact.as_ref().unwrap().valid && r.exact.as_ref().unwrap().large_n);
        assert!(r.provenance.iter().any(|t| t == TAG_LARGE_N));
        assert_eq!(ar_path(5, 5), Err(FormulaError::TooSmall { n: 5, min: 6 }));
        assert!(ar_path(5, 1).is_err());
    }

    #[test]
    fn cycle_closed_form() {
        assert_eq!(exact(&ar_cycle(6, 3).unwrap()), 6);
        assert_eq!(exact(&ar_cycle(10, 4).unwrap()), 13);
        assert_eq!(exact(&ar_cycle(7, 4).unwrap()), 9);
        assert_eq!(exact(&ar_cycle(3, 3).unwrap()), 3);
        assert!(ar_cycle(3, 4).is_err());
        assert!(ar_cycle(5, 2).is_err());
    }

    #[test]
    fn matching_closed_form() {
        assert_eq!(exact(&ar_matching(8, 3).unwrap()), 9);
        // n = (5t-7)/2 = 9 lies below 2t = 10 for t = 5, so it is out of range
        assert_eq!(ar_matching(9, 5), Err(FormulaError::TooSmall { n: 9, min: 10 }));
        assert_eq!(exact(&ar_matching(19, 9).unwrap()), 107);
        assert_eq!(exact(&ar_matching(14, 7).unwrap()), 58);
        // perfect matching, small t: (t-2)(3t+1)/2 + 2
        assert_eq!(exact(&ar_matching(6, 3).unwrap()), 7);
        assert_eq!(exact(&ar_matching(12, 6).unwrap()), 40);
        assert_eq!(exact(&ar_matching(5, 2).unwrap()), 2);
        assert!(matches!(ar_matching(4, 2), Err(FormulaError::Uncovered(_))));
        assert!(ar_matching(5, 3).is_err());
    }

    #[test]
    fn matching_branches_agree_on_boundary() {
        for t in 3..=40i64 {
            if (5 * t - 7) % 2 != 0 {
                continue;
            }
            let n = (5 * t - 7) / 2;
            if n < 2 * t + 1 {
                continue;
            }
            let low_branch = (t - 2) * (2 * t - 3) + 2;
            let high_branch = covered_edges(int(t - 2), n) + 2;
            assert_eq!(int(low_branch), high_branch, "t = {t}");
            assert_eq!(exact(&ar_matching(n, t).unwrap()), low_branch);
        }
    }

    #[test]
    fn family_examples() {
        let p3_2p2 = PatternSpec::Union(vec![PatternSpec::Path(2), PatternSpec::Matching(2)]);
        let r = ar_family(18, &p3_2p2).unwrap();
        assert_eq!(exact(&r), 19);
        assert!(r.exact.as_ref().unwrap().valid);
        assert!(!ar_family(17, &p3_2p2).unwrap().exact.unwrap().valid);

        let c4_p2 = PatternSpec::Union(vec![PatternSpec::Cycle(4), PatternSpec::Matching(1)]);
        let r = ar_family(11, &c4_p2).unwrap();
        assert_eq!(r.exact, None);
        assert_eq!(r.lower.as_ref().unwrap().value, int(12));
        // (t + 7/3 - 1)(n - (t + 7/3)/2) + 14/9 at t = 1, n = 11
        assert_eq!(r.upper.as_ref().unwrap().value, rat(70, 3));
        assert!(r.upper.as_ref().unwrap().valid);

        let r = ar_family(12, &PatternSpec::TriplePath(2)).unwrap();
        assert_eq!(exact(&r), 13);
        assert!(r.exact.as_ref().unwrap().valid);

        let r = ar_family(10, &PatternSpec::TriplePath(3)).unwrap();
        assert_eq!(r.lower.as_ref().unwrap().value, int(23));
        assert!(r.lower.as_ref().unwrap().valid);
        assert!(!r.exact.as_ref().unwrap().valid);
        assert!(r.provenance.iter().any(|t| t == TAG_CLIQUE));
    }

    #[test]
    fn family_normalization() {
        let a = PatternSpec::Union(vec![PatternSpec::Matching(2), PatternSpec::TriplePath(3)]);
        let b = PatternSpec::Union(vec![PatternSpec::TriplePath(3), PatternSpec::Matching(2)]);
        assert_eq!(classify(&a).unwrap(), classify(&b).unwrap());
        assert_eq!(classify(&PatternSpec::Path(2)).unwrap(), Family::TriplePaths { k: 1 });
        assert_eq!(classify(&PatternSpec::Path(1)).unwrap(), Family::Edge);
        let p3p2 = PatternSpec::Union(vec![PatternSpec::Path(2), PatternSpec::Path(1)]);
        assert_eq!(classify(&p3p2).unwrap(), Family::MatchingTriplePaths { t: 1, k: 1 });
        assert!(classify(&PatternSpec::Union(vec![PatternSpec::Cycle(3), PatternSpec::Cycle(4)])).is_err());
        assert!(classify(&PatternSpec::Union(vec![
            PatternSpec::Cycle(3),
            PatternSpec::TriplePath(1)
        ]))
        .is_err());
        assert!(classify(&PatternSpec::Custom(crate::graph::Graph::complete(3))).is_err());
        assert!(ar_family(3, &PatternSpec::Matching(2)).is_err());
    }

    #[test]
    fn transfer_upper_bound_examples() {
        let p3 = GammaParams::new(3, 2, 2, int(-1), int(1), 7);
        let b = thm_upper_bound(30, 4, &p3, Step::P2).unwrap();
        assert_eq!(b.value, int(86));
        assert!(b.valid);

        let empty = GammaParams::new(0, 0, 2, int(-1), int(1), 7);
        let b = thm_upper_bound(12, 2, &empty, Step::P3).unwrap();
        assert_eq!(b.value, int(13));
        assert!(b.valid);

        let two_edges = GammaParams::new(4, 2, 1, int(0), int(1), 18);
        let b = thm_upper_bound(40, 3, &two_edges, Step::P3).unwrap();
        assert_eq!(b.value, int(116));
        let cor = ar_family(
            40,
            &PatternSpec::Union(vec![PatternSpec::Matching(2), PatternSpec::TriplePath(3)]),
        )
        .unwrap();
        assert_eq!(b.value, cor.exact.unwrap().value);

        assert!(thm_upper_bound(30, 1, &p3, Step::P2).is_err());
        let b = thm_upper_bound(15, 4, &p3, Step::P2).unwrap();
        assert!(!b.valid);
        assert_eq!(b.value, int(3 * 13 + 2));
    }

    #[test]
    fn lemma_bound_examples() {
        assert_eq!(lemma_lower_bound(11, 1, 1).unwrap(), 11);
        assert_eq!(lemma_lower_bound(9, 0, 2).unwrap(), 2);
        assert_eq!(lemma_lower_bound(12, 2, 1).unwrap(), 22);
        assert!(lemma_lower_bound(2, 3, 1).is_err());
        assert!(lemma_lower_bound(5, 1, 0).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma2(&GammaParams::new(3, 2, 2, int(-1), int(1), 7)).unwrap(), int(12));
        assert_eq!(
            gamma2(&GammaParams::new(0, 0, 2, int(-2), int(1), 5)).unwrap(),
            rat(3, 2)
        );
        assert_eq!(gamma2(&GammaParams::new(3, 3, 1, int(0), int(1), 6)).unwrap(), int(6));
        assert_eq!(gamma3(&GammaParams::new(2, 1, 1, int(-1), int(2), 5)).unwrap(), int(27));
        assert_eq!(gamma3(&GammaParams::new(0, 0, 2, int(-1), int(1), 7)).unwrap(), int(1));
        assert_eq!(gamma3(&GammaParams::new(0, 0, 1, int(-1), int(1), 3)).unwrap(), int(3));
    }

    #[test]
    fn gamma_guards() {
        assert!(matches!(
            gamma2(&GammaParams::new(0, 0, 1, int(-2), int(1), 5)),
            Err(FormulaError::DivisionGuard(_))
        ));
        assert!(matches!(
            gamma3(&GammaParams::new(0, 0, 0, rat(-1, 2), int(1), 5)),
            Err(FormulaError::DivisionGuard(_))
        ));
        assert!(gamma2(&GammaParams::new(3, 2, 2, int(-1), int(1), 6)).is_err());
    }

    #[test]
    fn json_shape() {
        let c4_p2 = PatternSpec::Union(vec![PatternSpec::Cycle(4), PatternSpec::Matching(1)]);
        let v = ar_family(11, &c4_p2).unwrap().to_json();
        assert_eq!(v["family"], "C4+1P2");
        assert_eq!(v["lower"], "12/1");
        assert_eq!(v["upper"], "70/3");
        assert_eq!(v["exact"], Value::Null);
        assert_eq!(v["valid"]["upper"], true);
        let v = ar_matching(8, 3).unwrap().to_json();
        assert_eq!(v["exact"], 9);
    }

    #[test]
    fn integer_display_bounds() {
        let c4_p2 = PatternSpec::Union(vec![PatternSpec::Cycle(4), PatternSpec::Matching(1)]);
        let r = ar_family(11, &c4_p2).unwrap();
        assert_eq!(r.integer_bounds(), (Some(12), Some(23)));
    }
}
