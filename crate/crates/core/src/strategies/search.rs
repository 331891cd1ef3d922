use std::cmp::Ordering;

use serde::Serialize;

use super::generators::{gen_three_family, gen_three_family_augmented, Family, LinCombConfig};
use super::solver::SolutionVector;
use crate::analytic::lincomb_count;
use crate::combinatorics::{count_string, Count};
use crate::error::{Error, Result};
use crate::verifier::verify;

/// Bounds for [`search_lincomb`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchLimits {
    /// Most groups `k` in a configuration.
    pub max_groups: usize,
    /// Cap on every `c_i` on top of `c_i ≤ f`.
    pub max_multiplicity: usize,
    /// Cap on every `g_i` on top of `g_i ≤ t/2`.
    pub max_pile: usize,
    /// Largest `t` accepted.
    pub max_t: usize,
    /// Configurations examined before giving up with a partial result.
    pub max_configs: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_groups: 3,
            max_multiplicity: usize::MAX,
            max_pile: usize::MAX,
            max_t: 120,
            max_configs: 5_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankedConfig {
    pub config: LinCombConfig,
    #[serde(with = "count_string")]
    pub count: Count,
    /// Solution vectors for `f`.
    pub solutions: Vec<SolutionVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    /// Best first.
    pub ranked: Vec<RankedConfig>,
    pub examined: usize,
    /// Set when `max_configs` stopped the enumeration early.
    pub partial: bool,
}

/// Exhaustive search over linear-combination configurations.
///
/// Configurations are multisets of `(c_i, g_i)` pairs, enumerated once each
/// in nondecreasing pair order. A configuration is kept when `f` has a
/// solution vector and `d` has none; results are ranked by admissible count,
/// largest first, ties broken by the configuration.
pub fn search_lincomb(t: usize, f: usize, d: usize, limits: &SearchLimits) -> Result<SearchOutcome> {
    const OP: &str = "search_lincomb";
    if limits.max_groups == 0 {
        return Err(Error::pre(OP, "needs at least one group"));
    }
    if t > limits.max_t {
        return Err(Error::pre(OP, format!("t = {t} exceeds the ceiling {}", limits.max_t)));
    }
    if f > t || d > t || f == d {
        return Err(Error::pre(
            OP,
            format!("needs f, d <= t and f != d, got ({t}, {f}, {d})"),
        ));
    }
    let pairs: Vec<(usize, usize)> = (2..=f.min(limits.max_multiplicity))
        .flat_map(|c| (1..=(t / 2).min(limits.max_pile)).map(move |g| (c, g)))
        .filter(|&(c, g)| c * g <= t)
        .collect();

    let mut state = Walk {
        pairs: &pairs,
        f,
        d,
        limits,
        chosen: Vec::new(),
        ranked: Vec::new(),
        examined: 0,
        partial: false,
    };
    state.descend(0, t);
    let Walk {
        mut ranked,
        examined,
        partial,
        ..
    } = state;
    ranked.sort_by(|a, b| match b.count.cmp(&a.count) {
        Ordering::Equal => a.config.cmp(&b.config),
        o => o,
    });
    Ok(SearchOutcome {
        ranked,
        examined,
        partial,
    })
}

struct Walk<'a> {
    pairs: &'a [(usize, usize)],
    f: usize,
    d: usize,
    limits: &'a SearchLimits,
    chosen: Vec<(usize, usize)>,
    ranked: Vec<RankedConfig>,
    examined: usize,
    partial: bool,
}

impl Walk<'_> {
    fn descend(&mut self, from: usize, rest: usize) {
        if self.partial {
            return;
        }
        if rest == 0 {
            self.examine();
            return;
        }
        if self.chosen.len() == self.limits.max_groups {
            return;
        }
        for i in from..self.pairs.len() {
            let (c, g) = self.pairs[i];
            if c * g > rest {
                continue;
            }
            self.chosen.push((c, g));
            self.descend(i, rest - c * g);
            self.chosen.pop();
            if self.partial {
                return;
            }
        }
    }

    fn examine(&mut self) {
        if self.examined == self.limits.max_configs {
            self.partial = true;
            return;
        }
        self.examined += 1;
        let config = LinCombConfig::new(
            self.chosen.iter().map(|p| p.0).collect(),
            self.chosen.iter().map(|p| p.1).collect(),
        );
        if !config.solutions(self.d).is_empty() {
            return;
        }
        let solutions = config.solutions(self.f);
        if solutions.is_empty() {
            return;
        }
        let count = lincomb_count(&config.c, &config.g, &solutions).expect("solutions come from the solver");
        self.ranked.push(RankedConfig {
            config,
            count,
            solutions,
        });
    }
}

/// Success of the base and augmented three-family strategies for one
/// parameter triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub t: usize,
    pub f: usize,
    pub d: usize,
    pub base_success: bool,
    pub augmented_success: bool,
    pub augmented_discreet: bool,
    pub augmented_weighings: usize,
    /// `d < f`, or `d` is none of `qf`, `qf − r`, `qf + r` for `q ≥ 1`, where
    /// `r = t mod f`. The augmented strategy is expected to succeed on
    /// these rows.
    pub expected: bool,
}

/// Whether `d` is one of the counts the augmented three-family strategy is
/// expected to exclude.
pub fn augmented_expected(t: usize, f: usize, d: usize) -> bool {
    let r = t % f;
    let near_multiple = (1..=d / f + 1).any(|q| {
        let qf = q * f;
        d == qf || d + r == qf || d == qf + r
    });
    d < f || !near_multiple
}

/// Runs both three-family variants (family A) for every admissible
/// `(t, f, d)` with `t ≤ max_t` and `d ≤ max_d`. Nothing is asserted about
/// the outcome.
pub fn augmented_sweep(max_t: usize, max_d: usize) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for t in 1..=max_t {
        for f in 2..=t / 4 {
            if t % f == 0 {
                continue;
            }
            for d in (1..=max_d.min(t)).filter(|&d| d != f) {
                let base = verify(&gen_three_family(t, f, d, Family::A)?)?;
                let aug_strategy = gen_three_family_augmented(t, f, d, Family::A)?;
                let aug = verify(&aug_strategy)?;
                rows.push(SweepRow {
                    t,
                    f,
                    d,
                    base_success: base.success,
                    augmented_success: aug.success,
                    augmented_discreet: aug.discreet,
                    augmented_weighings: aug_strategy.num_weighings(),
                    expected: augmented_expected(t, f, d),
                });
            }
        }
    }
    Ok(rows)
}
