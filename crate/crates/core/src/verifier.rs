//! What the observer can conclude from a strategy's weighings.
//!
//! Counting happens over observational classes: a situation is summarized by
//! its per-class fake counts `x_j`, which is exact because coins inside a
//! class are exchangeable in every weighing. The number of coin-level
//! situations behind a class-level vector is `Π_j C(g_j, x_j)`.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::combinatorics::{binomial_row, choose, count_string, Count, Ratio};
use crate::error::{Error, Result};
use crate::model::{expected_syndrome, refine, ObservationalClassing, Outcome, Params, Strategy, Syndrome};

/// Default ceiling on the number of coin subsets the brute-force oracle visits.
pub const DEFAULT_ORACLE_CAP: u64 = 500_000;

/// Subset tables enumerate `2^m` weighing subsets.
pub const MAX_TABLE_WEIGHINGS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleCount {
    /// `|W(s | Z_n, A)|`.
    pub count: Count,
    /// For every class, the fake counts it takes across consistent vectors.
    pub per_class: Vec<BTreeSet<usize>>,
    /// Number of consistent class-level vectors.
    pub vectors: usize,
}

/// Counts the size-`n` fake sets whose outcomes match `syndrome`.
pub fn admissible_count(strategy: &Strategy, n: usize, syndrome: &Syndrome) -> Result<AdmissibleCount> {
    let m = strategy.num_weighings();
    if syndrome.len() != m {
        return Err(Error::SyndromeLength {
            expected: m,
            got: syndrome.len(),
        });
    }
    if n > strategy.params.t {
        return Err(Error::pre(
            "admissible_count",
            format!("{n} fakes exceed t = {}", strategy.params.t),
        ));
    }
    Ok(count_over_classes(&refine(strategy), n, syndrome))
}

fn count_over_classes(classing: &ObservationalClassing, n: usize, syndrome: &Syndrome) -> AdmissibleCount {
    let classes = &classing.classes;
    let p = classes.len();
    let m = syndrome.len();
    // Placing x fakes in class j shifts weighing w's left-minus-right fake
    // excess by -column[w] * x.
    let shift: Vec<Vec<i64>> = classes
        .iter()
        .map(|c| c.column.iter().map(|&h| -(h as i64)).collect())
        .collect();
    // Suffix capacities: how far the remaining classes can push each excess
    // up or down, and how many fakes they can hold at all.
    let mut up = vec![vec![0i64; m]; p + 1];
    let mut down = vec![vec![0i64; m]; p + 1];
    let mut room = vec![0usize; p + 1];
    for j in (0..p).rev() {
        room[j] = room[j + 1] + classes[j].size;
        for w in 0..m {
            let g = classes[j].size as i64;
            up[j][w] = up[j + 1][w] + if shift[j][w] > 0 { g } else { 0 };
            down[j][w] = down[j + 1][w] + if shift[j][w] < 0 { g } else { 0 };
        }
    }
    let rows: Vec<Vec<Count>> = classes
        .iter()
        .map(|c| {
            let mut row = binomial_row(c.size);
            row.truncate(n + 1);
            row
        })
        .collect();
    let target: Vec<i64> = syndrome.0.iter().map(|o| o.value() as i64).collect();

    struct Walk<'a> {
        sizes: Vec<usize>,
        shift: &'a [Vec<i64>],
        up: &'a [Vec<i64>],
        down: &'a [Vec<i64>],
        room: &'a [usize],
        rows: &'a [Vec<Count>],
        target: &'a [i64],
        x: Vec<usize>,
        excess: Vec<i64>,
        count: Count,
        per_class: Vec<BTreeSet<usize>>,
        vectors: usize,
    }

    impl Walk<'_> {
        fn feasible(&self, j: usize, left: usize) -> bool {
            if self.room[j] < left {
                return false;
            }
            let r = left as i64;
            self.excess.iter().enumerate().all(|(w, &e)| {
                let hi = e + r.min(self.up[j][w]);
                let lo = e - r.min(self.down[j][w]);
                match self.target[w] {
                    0 => lo <= 0 && 0 <= hi,
                    1 => hi > 0,
                    _ => lo < 0,
                }
            })
        }

        fn go(&mut self, j: usize, left: usize, weight: &Count) {
            if j == self.sizes.len() {
                if left == 0 && self.excess.iter().zip(self.target).all(|(&e, &s)| e.signum() == s) {
                    self.count += weight;
                    self.vectors += 1;
                    for (k, &xk) in self.x.iter().enumerate() {
                        self.per_class[k].insert(xk);
                    }
                }
                return;
            }
            if !self.feasible(j, left) {
                return;
            }
            let cap = self.sizes[j].min(left);
            for xj in 0..=cap {
                for (e, s) in self.excess.iter_mut().zip(&self.shift[j]) {
                    *e += s * xj as i64;
                }
                self.x[j] = xj;
                let w = weight * &self.rows[j][xj];
                self.go(j + 1, left - xj, &w);
                for (e, s) in self.excess.iter_mut().zip(&self.shift[j]) {
                    *e -= s * xj as i64;
                }
            }
        }
    }

    let mut walk = Walk {
        sizes: classing.sizes(),
        shift: &shift,
        up: &up,
        down: &down,
        room: &room,
        rows: &rows,
        target: &target,
        x: vec![0; p],
        excess: vec![0; m],
        count: Count::zero(),
        per_class: vec![BTreeSet::new(); p],
        vectors: 0,
    };
    walk.go(0, n, &Count::from(1u32));
    AdmissibleCount {
        count: walk.count,
        per_class: walk.per_class,
        vectors: walk.vectors,
    }
}

/// Brute-force count over coin-level fake sets, evaluating every weighing
/// literally as `sign(x·h)` with `x` the real-coin indicator. Independent of
/// the class-level path.
pub fn oracle_admissible_count(strategy: &Strategy, n: usize, syndrome: &Syndrome, cap: u64) -> Result<Count> {
    let t = strategy.params.t;
    let m = strategy.weighings.len();
    if syndrome.len() != m {
        return Err(Error::SyndromeLength {
            expected: m,
            got: syndrome.len(),
        });
    }
    if n > t {
        return Err(Error::pre(
            "oracle_admissible_count",
            format!("{n} fakes exceed t = {t}"),
        ));
    }
    // C(t, n) by the multiplicative formula, stopping once past the cap.
    let mut subsets: u128 = 1;
    let k = n.min(t - n);
    for i in 0..k {
        subsets = subsets * (t - i) as u128 / (i + 1) as u128;
        if subsets > cap as u128 && i + 1 < k {
            return Err(Error::OracleOutOfRange {
                subsets: format!("more than {subsets}"),
                cap,
            });
        }
    }
    if subsets > cap as u128 {
        return Err(Error::OracleOutOfRange {
            subsets: subsets.to_string(),
            cap,
        });
    }

    // Coin-level weighing vectors h: -1 left pan, +1 right pan.
    let mut owner = Vec::with_capacity(t);
    for pile in &strategy.piles {
        owner.extend(std::iter::repeat_n(pile.id.as_str(), pile.size));
    }
    if owner.len() != t {
        return Err(Error::pre("oracle_admissible_count", "pile sizes must sum to t"));
    }
    let h: Vec<Vec<i64>> = strategy
        .weighings
        .iter()
        .map(|wg| {
            owner
                .iter()
                .map(|id| {
                    if wg.left.iter().any(|l| l == id) {
                        -1
                    } else if wg.right.iter().any(|r| r == id) {
                        1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let want: Vec<i64> = syndrome.0.iter().map(|o| o.value() as i64).collect();

    let mut matches: u64 = 0;
    let mut fake: Vec<usize> = (0..n).collect();
    let mut real = vec![1i64; t];
    loop {
        real.iter_mut().for_each(|r| *r = 1);
        for &i in &fake {
            real[i] = 0;
        }
        let consistent = h.iter().zip(&want).all(|(hw, &s)| {
            let dot: i64 = real.iter().zip(hw).map(|(x, h)| x * h).sum();
            dot.signum() == s
        });
        if consistent {
            matches += 1;
        }
        // next n-subset of 0..t in lexicographic order
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(Count::from(matches));
            }
            i -= 1;
            if fake[i] < t - n + i {
                break;
            }
        }
        fake[i] += 1;
        for k in i + 1..n {
            fake[k] = fake[k - 1] + 1;
        }
    }
}

/// Everything the observer learns from watching a strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleReport {
    #[serde(flatten)]
    pub params: Params,
    pub syndrome: Syndrome,
    /// `|Z_f| = C(t, f)`, the number of situations before any weighing.
    #[serde(with = "count_string")]
    pub prior_f: Count,
    #[serde(with = "count_string")]
    pub count_f: Count,
    #[serde(with = "count_string")]
    pub count_d: Count,
    pub success: bool,
    pub discreet: bool,
    /// Revealing factor `X = C(t, f) / count_f`.
    #[serde(rename = "X", serialize_with = "ser_ratio")]
    pub revealing_factor: Ratio,
    /// Revealing coefficient `R = 1 − 1/X`.
    #[serde(rename = "R", serialize_with = "ser_ratio")]
    pub revealing_coefficient: Ratio,
    pub class_sizes: Vec<usize>,
    pub per_class: Vec<BTreeSet<usize>>,
}

/// `{"fraction": "a/b", "decimal": x}`.
pub fn ser_ratio<S: Serializer>(r: &Ratio, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct R {
        fraction: String,
        decimal: f64,
    }
    R {
        fraction: r.to_string(),
        decimal: r.to_f64(),
    }
    .serialize(s)
}

impl AdmissibleReport {
    /// Classes whose coins are certainly real or certainly fake.
    pub fn exposed_classes(&self) -> Vec<usize> {
        self.per_class
            .iter()
            .zip(&self.class_sizes)
            .enumerate()
            .filter(|(_, (set, &g))| !class_hidden(set, g))
            .map(|(j, _)| j)
            .collect()
    }
}

fn class_hidden(set: &BTreeSet<usize>, size: usize) -> bool {
    let can_be_fake = set.last().is_some_and(|&x| x >= 1);
    let can_be_real = set.first().is_some_and(|&x| x < size);
    can_be_fake && can_be_real
}

/// Runs the strategy on the prover's arrangement and reports what the
/// observer may conclude.
///
/// Success means the realized syndrome admits no `d`-fake situation while
/// admitting some `f`-fake one.
pub fn verify(strategy: &Strategy) -> Result<AdmissibleReport> {
    strategy.ensure_valid()?;
    let Params { t, f, d } = strategy.params;
    let syndrome = expected_syndrome(strategy);
    let classing = refine(strategy);
    let on_f = count_over_classes(&classing, f, &syndrome);
    let on_d = count_over_classes(&classing, d, &syndrome);
    if on_f.count.is_zero() {
        return Err(Error::InconsistentArrangement { f });
    }
    let success = on_d.count.is_zero();
    let class_sizes = classing.sizes();
    let discreet = success
        && on_f
            .per_class
            .iter()
            .zip(&class_sizes)
            .all(|(set, &g)| class_hidden(set, g));
    let prior_f = choose(t, f);
    let x = Ratio::new(prior_f.clone(), on_f.count.clone())?;
    let r = &Ratio::one() - &x.recip();
    Ok(AdmissibleReport {
        params: strategy.params,
        syndrome,
        prior_f,
        count_f: on_f.count,
        count_d: on_d.count,
        success,
        discreet,
        revealing_factor: x,
        revealing_coefficient: r,
        class_sizes,
        per_class: on_f.per_class,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetRow {
    /// Indices of the weighings performed, ascending.
    pub weighings: Vec<usize>,
    #[serde(with = "count_string")]
    pub count_f: Count,
    #[serde(with = "count_string")]
    pub count_d: Count,
}

fn check_table_size(m: usize) -> Result<()> {
    if m > MAX_TABLE_WEIGHINGS {
        return Err(Error::TooManyWeighings {
            m,
            max: MAX_TABLE_WEIGHINGS,
        });
    }
    Ok(())
}

/// Admissible counts for every subset of the weighings under the realized
/// outcomes, ordered by subset size and then lexicographically.
pub fn subset_table(strategy: &Strategy) -> Result<Vec<SubsetRow>> {
    strategy.ensure_valid()?;
    let m = strategy.num_weighings();
    check_table_size(m)?;
    let syndrome = expected_syndrome(strategy);
    let mut subsets: Vec<Vec<usize>> = (0u32..1 << m)
        .map(|mask| (0..m).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let Params { f, d, .. } = strategy.params;
    subsets
        .into_iter()
        .map(|subset| {
            let sub = strategy.with_weighings(&subset);
            let s = syndrome.project(&subset);
            let classing = refine(&sub);
            Ok(SubsetRow {
                count_f: count_over_classes(&classing, f, &s).count,
                count_d: count_over_classes(&classing, d, &s).count,
                weighings: subset,
            })
        })
        .collect()
}

/// Greedy weighing order keeping as many `f`-fake situations open as
/// possible after every prefix. Ties go to the lower original index.
pub fn best_order(strategy: &Strategy) -> Result<Vec<usize>> {
    strategy.ensure_valid()?;
    let m = strategy.num_weighings();
    check_table_size(m)?;
    let syndrome = expected_syndrome(strategy);
    let f = strategy.params.f;
    let mut order: Vec<usize> = Vec::with_capacity(m);
    let mut rest: Vec<usize> = (0..m).collect();
    while !rest.is_empty() {
        let mut best: Option<(usize, Count)> = None;
        for (pos, &w) in rest.iter().enumerate() {
            let mut prefix = order.clone();
            prefix.push(w);
            let sub = strategy.with_weighings(&prefix);
            let count = count_over_classes(&refine(&sub), f, &syndrome.project(&prefix)).count;
            if best.as_ref().is_none_or(|(_, c)| count > *c) {
                best = Some((pos, count));
            }
        }
        let (pos, _) = best.expect("rest is non-empty");
        order.push(rest.remove(pos));
    }
    Ok(order)
}

/// Outcome of a lone weighing of pans with `left_fakes` and `right_fakes`.
pub fn single_outcome(left_fakes: usize, right_fakes: usize) -> Outcome {
    Outcome::from_fake_excess(left_fakes as i64 - right_fakes as i64)
}
