//! Problems, strategies, weighings, syndromes and the observer's view.
//!
//! Coins are numbered `0..t`. Declared piles own contiguous index ranges in
//! declaration order, and the prover's arrangement is pile-granular: a pile
//! carries a fake count but the fakes are not located within it.
//!
//! Outcome convention: a weighing reports `+1` when the right pan is
//! heavier, `-1` when the left pan is heavier and `0` when balanced. Pans
//! always hold equally many coins and fakes are lighter, so the outcome is
//! `sign(fakes on left − fakes on right)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Problem parameters: `t` coins, `f` of them fake, `d` the count to disprove.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Params {
    pub t: usize,
    pub f: usize,
    pub d: usize,
}

impl Params {
    pub fn new(t: usize, f: usize, d: usize) -> Self {
        Params { t, f, d }
    }

    /// Whether a discreet outcome is possible at all: `1 < f < t − 1`.
    pub fn discreet_possible(&self) -> bool {
        1 < self.f && self.f + 1 < self.t
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pile {
    pub id: String,
    pub size: usize,
    /// Number of fakes the prover placed in this pile.
    pub fakes: usize,
}

impl Pile {
    pub fn new(id: impl Into<String>, size: usize, fakes: usize) -> Self {
        Pile {
            id: id.into(),
            size,
            fakes,
        }
    }
}

/// One use of the balance: pile ids on each pan.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Weighing {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

impl Weighing {
    pub fn new<L, R>(left: L, right: R) -> Self
    where
        L: IntoIterator,
        L::Item: Into<String>,
        R: IntoIterator,
        R::Item: Into<String>,
    {
        Weighing {
            left: left.into_iter().map(Into::into).collect(),
            right: right.into_iter().map(Into::into).collect(),
        }
    }
}

/// A fixed (oblivious) weighing strategy together with the prover's
/// arrangement of fakes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "StrategyFile", into = "StrategyFile")]
pub struct Strategy {
    pub params: Params,
    pub piles: Vec<Pile>,
    pub weighings: Vec<Weighing>,
}

/// On-disk layout of a strategy.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StrategyFile {
    t: usize,
    f: usize,
    d: usize,
    piles: Vec<Pile>,
    weighings: Vec<Weighing>,
}

impl From<StrategyFile> for Strategy {
    fn from(file: StrategyFile) -> Self {
        Strategy {
            params: Params::new(file.t, file.f, file.d),
            piles: file.piles,
            weighings: file.weighings,
        }
    }
}

impl From<Strategy> for StrategyFile {
    fn from(s: Strategy) -> Self {
        StrategyFile {
            t: s.params.t,
            f: s.params.f,
            d: s.params.d,
            piles: s.piles,
            weighings: s.weighings,
        }
    }
}

impl Strategy {
    pub fn new(params: Params, piles: Vec<Pile>, weighings: Vec<Weighing>) -> Self {
        Strategy {
            params,
            piles,
            weighings,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("strategy serialization is infallible")
    }

    pub fn num_weighings(&self) -> usize {
        self.weighings.len()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// Fails with the full report when a fatal issue is present.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = validate(self);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidStrategy(report))
        }
    }

    pub fn pile_index(&self, id: &str) -> Option<usize> {
        self.piles.iter().position(|p| p.id == id)
    }

    /// Coin index ranges of the declared piles.
    pub fn pile_ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.piles
            .iter()
            .map(|p| {
                let r = start..start + p.size;
                start += p.size;
                r
            })
            .collect()
    }

    /// Per pile, its pan in every weighing: `-1` left, `+1` right, `0` absent.
    /// Unknown ids are ignored; call on validated strategies.
    pub fn pile_columns(&self) -> Vec<Vec<i8>> {
        let index: HashMap<&str, usize> = self.piles.iter().enumerate().map(|(i, p)| (p.id.as_str(), i)).collect();
        let mut columns = vec![vec![0i8; self.weighings.len()]; self.piles.len()];
        for (w, weighing) in self.weighings.iter().enumerate() {
            for (ids, side) in [(&weighing.left, -1i8), (&weighing.right, 1i8)] {
                for id in ids {
                    if let Some(&p) = index.get(id.as_str()) {
                        columns[p][w] = side;
                    }
                }
            }
        }
        columns
    }

    /// Same piles, keeping only the weighings at `indices` (in that order).
    pub fn with_weighings(&self, indices: &[usize]) -> Strategy {
        Strategy {
            params: self.params,
            piles: self.piles.clone(),
            weighings: indices.iter().map(|&i| self.weighings[i].clone()).collect(),
        }
    }

    /// Rewrites the strategy so that every observational class is one pile.
    /// Pile ids become `K1`, `K2`, … in class order.
    pub fn over_classes(&self) -> Strategy {
        let classing = refine(self);
        let fakes = classing.prover_fakes(self);
        let id = |j: usize| format!("K{}", j + 1);
        let piles = classing
            .classes
            .iter()
            .zip(&fakes)
            .enumerate()
            .map(|(j, (c, &x))| Pile::new(id(j), c.size, x))
            .collect();
        let weighings = (0..self.weighings.len())
            .map(|w| {
                let side = |s: i8| {
                    classing
                        .classes
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| c.column[w] == s)
                        .map(|(j, _)| id(j))
                        .collect::<Vec<_>>()
                };
                Weighing {
                    left: side(-1),
                    right: side(1),
                }
            })
            .collect();
        Strategy::new(self.params, piles, weighings)
    }
}

/// Result of one weighing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    LeftHeavier,
    Balanced,
    RightHeavier,
}

impl Outcome {
    pub const ALL: [Outcome; 3] = [Outcome::Balanced, Outcome::RightHeavier, Outcome::LeftHeavier];

    /// Outcome when the left pan holds `excess` more fakes than the right.
    pub fn from_fake_excess(excess: i64) -> Self {
        match excess.signum() {
            1 => Outcome::RightHeavier,
            -1 => Outcome::LeftHeavier,
            _ => Outcome::Balanced,
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Outcome::LeftHeavier => -1,
            Outcome::Balanced => 0,
            Outcome::RightHeavier => 1,
        }
    }

    pub fn from_value(v: i64) -> Option<Self> {
        match v {
            -1 => Some(Outcome::LeftHeavier),
            0 => Some(Outcome::Balanced),
            1 => Some(Outcome::RightHeavier),
            _ => None,
        }
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.value())
    }
}

impl<'de> Deserialize<'de> for Outcome {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(deserializer)?;
        Outcome::from_value(v).ok_or_else(|| serde::de::Error::custom(format!("outcome must be -1, 0 or 1, got {v}")))
    }
}

/// Sequence of weighing outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Syndrome(pub Vec<Outcome>);

impl Syndrome {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn from_values(values: &[i64]) -> Option<Self> {
        values
            .iter()
            .map(|&v| Outcome::from_value(v))
            .collect::<Option<Vec<_>>>()
            .map(Syndrome)
    }

    pub fn values(&self) -> Vec<i8> {
        self.0.iter().map(|o| o.value()).collect()
    }

    pub fn project(&self, indices: &[usize]) -> Syndrome {
        Syndrome(indices.iter().map(|&i| self.0[i]).collect())
    }

    /// All `3^m` syndromes of length `m`.
    pub fn all(m: usize) -> impl Iterator<Item = Syndrome> {
        let total = 3usize.pow(m as u32);
        (0..total).map(move |mut code| {
            let mut out = Vec::with_capacity(m);
            for _ in 0..m {
                out.push(Outcome::ALL[code % 3]);
                code /= 3;
            }
            Syndrome(out)
        })
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, o) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", o.value())?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Fatal,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Params,
    Pile { index: usize, id: String },
    Weighing { index: usize },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Params => write!(f, "params"),
            Location::Pile { index, id } => write!(f, "pile #{index} ({id:?})"),
            Location::Weighing { index } => write!(f, "weighing #{index}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IssueKind {
    FakeCountExceedsTotal { f: usize, t: usize },
    DisprovedCountExceedsTotal { d: usize, t: usize },
    HypothesesCoincide,
    DuplicatePileId,
    EmptyPile,
    PileFakesExceedSize { fakes: usize, size: usize },
    PileSizesMismatch { total: usize, t: usize },
    PileFakesMismatch { total: usize, f: usize },
    UnknownPile(String),
    RepeatedPile(String),
    EmptyWeighing,
    UnequalPans { left: usize, right: usize },
    DiscreetImpossible,
}

impl fmt::Display for IssueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use IssueKind::*;
        match self {
            FakeCountExceedsTotal { f: n, t } => write!(f, "f = {n} exceeds t = {t}"),
            DisprovedCountExceedsTotal { d, t } => write!(f, "d = {d} exceeds t = {t}"),
            HypothesesCoincide => write!(f, "d must differ from f"),
            DuplicatePileId => write!(f, "duplicate pile id"),
            EmptyPile => write!(f, "pile size must be at least 1"),
            PileFakesExceedSize { fakes, size } => {
                write!(f, "{fakes} fakes do not fit in a pile of {size}")
            }
            PileSizesMismatch { total, t } => write!(f, "pile sizes sum to {total}, expected t = {t}"),
            PileFakesMismatch { total, f: n } => {
                write!(f, "pile fakes sum to {total}, expected f = {n}")
            }
            UnknownPile(id) => write!(f, "unknown pile {id:?}"),
            RepeatedPile(id) => write!(f, "pile {id:?} used more than once"),
            EmptyWeighing => write!(f, "weighing places no coins"),
            UnequalPans { left, right } => {
                write!(f, "unequal pans: {left} coins left, {right} coins right")
            }
            DiscreetImpossible => write!(f, "discreet impossible: needs 1 < f < t - 1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub severity: Severity,
    pub location: Location,
    pub kind: IssueKind,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Fatal => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}: {}", self.location, self.kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.iter().all(|i| i.severity != Severity::Fatal)
    }

    pub fn discreet_possible(&self) -> bool {
        !self.has(&IssueKind::DiscreetImpossible)
    }

    pub fn has(&self, kind: &IssueKind) -> bool {
        self.issues.iter().any(|i| &i.kind == kind)
    }

    pub fn fatal(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Fatal)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  {issue}")?;
        }
        Ok(())
    }
}

pub fn validate(strategy: &Strategy) -> ValidationReport {
    let mut issues = Vec::new();
    let mut fatal = |location: Location, kind: IssueKind| {
        issues.push(Issue {
            severity: Severity::Fatal,
            location,
            kind,
        })
    };
    let Params { t, f, d } = strategy.params;

    if f > t {
        fatal(Location::Params, IssueKind::FakeCountExceedsTotal { f, t });
    }
    if d > t {
        fatal(Location::Params, IssueKind::DisprovedCountExceedsTotal { d, t });
    }
    if d == f {
        fatal(Location::Params, IssueKind::HypothesesCoincide);
    }

    let mut sizes: HashMap<&str, usize> = HashMap::new();
    for (index, pile) in strategy.piles.iter().enumerate() {
        let loc = || Location::Pile {
            index,
            id: pile.id.clone(),
        };
        if sizes.insert(&pile.id, pile.size).is_some() {
            fatal(loc(), IssueKind::DuplicatePileId);
        }
        if pile.size == 0 {
            fatal(loc(), IssueKind::EmptyPile);
        }
        if pile.fakes > pile.size {
            fatal(
                loc(),
                IssueKind::PileFakesExceedSize {
                    fakes: pile.fakes,
                    size: pile.size,
                },
            );
        }
    }
    let total: usize = strategy.piles.iter().map(|p| p.size).sum();
    if total != t {
        fatal(Location::Params, IssueKind::PileSizesMismatch { total, t });
    }
    let total_fakes: usize = strategy.piles.iter().map(|p| p.fakes).sum();
    if total_fakes != f {
        fatal(Location::Params, IssueKind::PileFakesMismatch { total: total_fakes, f });
    }

    for (index, weighing) in strategy.weighings.iter().enumerate() {
        let loc = || Location::Weighing { index };
        let mut seen = HashSet::new();
        let mut pan = |ids: &[String], fatal: &mut dyn FnMut(Location, IssueKind)| {
            let mut coins = 0;
            for id in ids {
                if !seen.insert(id.clone()) {
                    fatal(loc(), IssueKind::RepeatedPile(id.clone()));
                }
                match sizes.get(id.as_str()) {
                    Some(&s) => coins += s,
                    None => fatal(loc(), IssueKind::UnknownPile(id.clone())),
                }
            }
            coins
        };
        let left = pan(&weighing.left, &mut fatal);
        let right = pan(&weighing.right, &mut fatal);
        if weighing.left.is_empty() && weighing.right.is_empty() {
            fatal(loc(), IssueKind::EmptyWeighing);
        } else if left != right {
            fatal(loc(), IssueKind::UnequalPans { left, right });
        }
    }

    if !strategy.params.discreet_possible() {
        issues.push(Issue {
            severity: Severity::Warning,
            location: Location::Params,
            kind: IssueKind::DiscreetImpossible,
        });
    }
    ValidationReport { issues }
}

/// Maximal set of coins that sit on the same pan in every weighing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationalClass {
    pub size: usize,
    /// Pan per weighing: `-1` left, `+1` right, `0` absent.
    pub column: Vec<i8>,
    /// Declared piles (by index) making up the class.
    pub piles: Vec<usize>,
    pub first_coin: usize,
}

/// Partition of the coins into observationally exchangeable classes.
///
/// Coins sharing a participation column are interchangeable in every
/// situation, so admissibility depends only on per-class fake counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationalClassing {
    pub classes: Vec<ObservationalClass>,
    /// Class index of every declared pile.
    pub pile_class: Vec<usize>,
}

impl ObservationalClassing {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }

    /// Class-level fake counts induced by the prover's pile arrangement.
    pub fn prover_fakes(&self, strategy: &Strategy) -> Vec<usize> {
        let mut fakes = vec![0; self.classes.len()];
        for (pile, &class) in strategy.piles.iter().zip(&self.pile_class) {
            fakes[class] += pile.fakes;
        }
        fakes
    }
}

/// Groups coins by participation column. Classes are ordered by their first
/// coin index.
pub fn refine(strategy: &Strategy) -> ObservationalClassing {
    let columns = strategy.pile_columns();
    let ranges = strategy.pile_ranges();
    let mut by_column: HashMap<&[i8], usize> = HashMap::new();
    let mut classes: Vec<ObservationalClass> = Vec::new();
    let mut pile_class = Vec::with_capacity(strategy.piles.len());
    for (p, column) in columns.iter().enumerate() {
        let size = strategy.piles[p].size;
        let j = *by_column.entry(column.as_slice()).or_insert_with(|| {
            classes.push(ObservationalClass {
                size: 0,
                column: column.clone(),
                piles: Vec::new(),
                first_coin: ranges[p].start,
            });
            classes.len() - 1
        });
        classes[j].size += size;
        classes[j].piles.push(p);
        pile_class.push(j);
    }
    ObservationalClassing { classes, pile_class }
}

/// Outcome the prover's own arrangement produces in every weighing.
pub fn expected_syndrome(strategy: &Strategy) -> Syndrome {
    let fakes: HashMap<&str, usize> = strategy.piles.iter().map(|p| (p.id.as_str(), p.fakes)).collect();
    let side = |ids: &[String]| -> i64 {
        ids.iter()
            .map(|id| fakes.get(id.as_str()).copied().unwrap_or(0) as i64)
            .sum()
    };
    Syndrome(
        strategy
            .weighings
            .iter()
            .map(|w| Outcome::from_fake_excess(side(&w.left) - side(&w.right)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::gen_shapovalov;

    fn single(left_fakes: usize, right_fakes: usize) -> Strategy {
        Strategy::new(
            Params::new(4, left_fakes + right_fakes, 3),
            vec![Pile::new("L", 2, left_fakes), Pile::new("R", 2, right_fakes)],
            vec![Weighing::new(["L"], ["R"])],
        )
    }

    #[test]
    fn shapovalov_is_valid_and_discreet_eligible() {
        let report = validate(&gen_shapovalov());
        assert!(report.is_valid(), "{report}");
        assert!(report.discreet_possible());
        assert!(report.issues.is_empty());
    }

    #[test]
    fn all_fake_is_flagged_but_valid() {
        let s = Strategy::new(Params::new(5, 5, 2), vec![Pile::new("A", 5, 5)], vec![]);
        let report = validate(&s);
        assert!(report.is_valid());
        assert!(!report.discreet_possible());
    }

    #[test]
    fn unequal_pans_are_fatal() {
        let s = Strategy::new(
            Params::new(5, 2, 1),
            vec![Pile::new("A", 3, 1), Pile::new("B", 2, 1)],
            vec![Weighing::new(["A"], ["B"])],
        );
        let report = validate(&s);
        assert!(!report.is_valid());
        assert!(report.has(&IssueKind::UnequalPans { left: 3, right: 2 }));
        assert!(report.to_string().contains("unequal pans"));
        assert!(matches!(s.ensure_valid(), Err(Error::InvalidStrategy(_))));
    }

    #[test]
    fn structural_errors_are_located() {
        let s = Strategy::new(
            Params::new(6, 2, 2),
            vec![Pile::new("A", 3, 4), Pile::new("A", 0, 0), Pile::new("B", 2, 0)],
            vec![
                Weighing::new(["A"], ["A"]),
                Weighing::new(["Z"], Vec::<String>::new()),
                Weighing::new(Vec::<String>::new(), Vec::<String>::new()),
            ],
        );
        let report = validate(&s);
        let kinds: Vec<_> = report.fatal().map(|i| i.kind.clone()).collect();
        assert!(kinds.contains(&IssueKind::HypothesesCoincide));
        assert!(kinds.contains(&IssueKind::DuplicatePileId));
        assert!(kinds.contains(&IssueKind::EmptyPile));
        assert!(kinds.contains(&IssueKind::PileFakesExceedSize { fakes: 4, size: 3 }));
        assert!(kinds.contains(&IssueKind::PileSizesMismatch { total: 5, t: 6 }));
        assert!(kinds.contains(&IssueKind::PileFakesMismatch { total: 4, f: 2 }));
        assert!(kinds.contains(&IssueKind::RepeatedPile("A".into())));
        assert!(kinds.contains(&IssueKind::UnknownPile("Z".into())));
        assert!(kinds.contains(&IssueKind::EmptyWeighing));
        let located = report
            .fatal()
            .find(|i| i.kind == IssueKind::UnknownPile("Z".into()))
            .unwrap();
        assert_eq!(located.location, Location::Weighing { index: 1 });
    }

    #[test]
    fn refine_shapovalov_has_five_classes() {
        let classing = refine(&gen_shapovalov());
        assert_eq!(classing.sizes(), vec![10, 10, 20, 20, 20]);
        let cols: HashSet<_> = classing.classes.iter().map(|c| c.column.clone()).collect();
        assert_eq!(cols.len(), 5);
        assert_eq!(classing.classes[0].column, vec![-1, -1, 1]);
    }

    #[test]
    fn refine_without_weighings_is_one_class() {
        let s = Strategy::new(
            Params::new(7, 2, 1),
            vec![Pile::new("A", 3, 1), Pile::new("B", 4, 1)],
            vec![],
        );
        let classing = refine(&s);
        assert_eq!(classing.sizes(), vec![7]);
        assert_eq!(classing.pile_class, vec![0, 0]);
    }

    #[test]
    fn refine_merges_idle_piles() {
        let s = Strategy::new(
            Params::new(8, 2, 1),
            vec![
                Pile::new("A", 2, 1),
                Pile::new("X", 3, 0),
                Pile::new("B", 2, 1),
                Pile::new("Y", 1, 0),
            ],
            vec![Weighing::new(["A"], ["B"])],
        );
        let classing = refine(&s);
        assert_eq!(classing.sizes(), vec![2, 4, 2]);
        assert_eq!(classing.classes[1].piles, vec![1, 3]);
        assert_eq!(classing.classes[1].first_coin, 2);
        assert_eq!(classing.prover_fakes(&s), vec![1, 0, 1]);
    }

    #[test]
    fn refine_is_idempotent_over_classes() {
        let s = gen_shapovalov();
        let once = refine(&s);
        let coarse = s.over_classes();
        assert!(validate(&coarse).is_valid());
        let twice = refine(&coarse);
        assert_eq!(once.sizes(), twice.sizes());
        let c1: Vec<_> = once.classes.iter().map(|c| &c.column).collect();
        let c2: Vec<_> = twice.classes.iter().map(|c| &c.column).collect();
        assert_eq!(c1, c2);
        assert_eq!(expected_syndrome(&coarse), expected_syndrome(&s));
    }

    #[test]
    fn shapovalov_syndrome() {
        assert_eq!(
            expected_syndrome(&gen_shapovalov()),
            Syndrome::from_values(&[0, 0, -1]).unwrap()
        );
    }

    #[test]
    fn sign_convention_left_fake_means_right_heavier() {
        assert_eq!(expected_syndrome(&single(1, 0)).0, vec![Outcome::RightHeavier]);
        assert_eq!(expected_syndrome(&single(0, 1)).0, vec![Outcome::LeftHeavier]);
        assert_eq!(expected_syndrome(&single(1, 1)).0, vec![Outcome::Balanced]);
    }

    #[test]
    fn syndrome_enumeration_is_complete() {
        let all: HashSet<_> = Syndrome::all(3).collect();
        assert_eq!(all.len(), 27);
        assert_eq!(Syndrome::all(0).count(), 1);
    }

    #[test]
    fn json_schema_round_trip_and_strictness() {
        let s = gen_shapovalov();
        let text = s.to_json_pretty();
        assert_eq!(Strategy::from_json(&text).unwrap(), s);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys.len(), 5);

        let extra = r#"{"t":2,"f":1,"d":0,"piles":[],"weighings":[],"comment":"x"}"#;
        let err = Strategy::from_json(extra).unwrap_err();
        assert!(err.to_string().contains("comment"), "{err}");
        let nested = r#"{"t":2,"f":1,"d":0,"piles":[{"id":"A","size":2,"fakes":1,"x":1}],"weighings":[]}"#;
        assert!(Strategy::from_json(nested).is_err());
        let missing = r#"{"t":2,"f":1,"piles":[],"weighings":[]}"#;
        let err = Strategy::from_json(missing).unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }
}
