//! Constructors for the strategy families.
//!
//! "Compare all piles with each other" is realized as a chain of adjacent
//! comparisons: the observer sees every result, so equality propagates along
//! the chain and the admissible set is the same as for all pairs.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::solver::{solve_solution_vectors, SolutionVector};
use crate::analytic::indiscreet_exponents;
use crate::error::{Error, Result};
use crate::model::{Params, Pile, Strategy, Weighing};

fn check_hypotheses(op: &'static str, t: usize, f: usize, d: usize) -> Result<()> {
    if f > t || d > t {
        return Err(Error::pre(op, format!("f = {f} and d = {d} must not exceed t = {t}")));
    }
    if f == d {
        return Err(Error::pre(op, "d must differ from f"));
    }
    Ok(())
}

fn chain(groups: &[Vec<String>]) -> Vec<Weighing> {
    groups
        .windows(2)
        .map(|w| Weighing::new(w[0].clone(), w[1].clone()))
        .collect()
}

/// The original 80-coin showcase: piles A(10), B(10), C(20), D(20), E(20)
/// with fakes in A, D and E.
pub fn gen_shapovalov() -> Strategy {
    Strategy::new(
        Params::new(80, 3, 2),
        vec![
            Pile::new("A", 10, 1),
            Pile::new("B", 10, 0),
            Pile::new("C", 20, 0),
            Pile::new("D", 20, 1),
            Pile::new("E", 20, 1),
        ],
        vec![
            Weighing::new(["A", "C"], ["B", "D"]),
            Weighing::new(["A", "B"], ["E"]),
            Weighing::new(["C", "D"], ["A", "B", "E"]),
        ],
    )
}

/// [`gen_shapovalov`] for callers passing parameters; only `(80, 3, 2)` exists.
pub fn gen_shapovalov_for(t: usize, f: usize, d: usize) -> Result<Strategy> {
    if (t, f, d) != (80, 3, 2) {
        return Err(Error::pre(
            "gen_shapovalov",
            format!("only t = 80, f = 3, d = 2 is defined, got ({t}, {f}, {d})"),
        ));
    }
    Ok(gen_shapovalov())
}

/// `a` equal piles with `f/a` fakes each, compared along a chain. Proves the
/// fake count is a multiple of `a`.
pub fn gen_divisibility(t: usize, f: usize, d: usize, a: usize) -> Result<Strategy> {
    const OP: &str = "gen_divisibility";
    check_hypotheses(OP, t, f, d)?;
    if a < 2 {
        return Err(Error::pre(OP, format!("needs a >= 2, got {a}")));
    }
    if t % a != 0 || f % a != 0 {
        return Err(Error::pre(OP, format!("a = {a} must divide both t = {t} and f = {f}")));
    }
    if d % a == 0 {
        return Err(Error::pre(OP, format!("a = {a} must not divide d = {d}")));
    }
    let piles: Vec<Pile> = (1..=a).map(|i| Pile::new(format!("P{i}"), t / a, f / a)).collect();
    let groups: Vec<Vec<String>> = piles.iter().map(|p| vec![p.id.clone()]).collect();
    Ok(Strategy::new(Params::new(t, f, d), piles, chain(&groups)))
}

/// Indiscreet generalization of the "three piles of 26" strategy.
///
/// `a` piles of `⌊t/a⌋` coins carry `f/a` fakes each; the `t mod a` leftover
/// coins are real singletons. When `d ≡ t (mod a)` the all-fake reading of
/// the leftovers would still allow `d`, so `d + 1 − (t mod a)` real coins are
/// borrowed out of the large piles as singletons (the first `e₁` piles give
/// `⌈d/a⌉`, the rest `⌊d/a⌋`) and all `d + 1` singletons are chained 1-vs-1.
/// Otherwise no coins are borrowed.
pub fn gen_indiscreet_piles(t: usize, f: usize, d: usize, a: usize) -> Result<Strategy> {
    const OP: &str = "gen_indiscreet_piles";
    check_hypotheses(OP, t, f, d)?;
    if a < 2 {
        return Err(Error::pre(OP, format!("needs a >= 2, got {a}")));
    }
    if f % a != 0 {
        return Err(Error::pre(OP, format!("a = {a} must divide f = {f}")));
    }
    if d % a == 0 {
        return Err(Error::pre(OP, format!("a = {a} must not divide d = {d}")));
    }
    let (side, leftover, per_pile) = (t / a, t % a, f / a);
    let borrow = d % a == leftover;
    let mut lost = vec![0usize; a];
    if borrow {
        if t <= 2 * a {
            return Err(Error::pre(OP, format!("needs t > 2a, got t = {t}, a = {a}")));
        }
        if side < d.div_ceil(a) || side - d.div_ceil(a) <= per_pile {
            return Err(Error::pre(OP, "needs floor(t/a) - ceil(d/a) > f/a"));
        }
        let (e1, _) = indiscreet_exponents(t, d, a);
        for (i, l) in lost.iter_mut().enumerate() {
            *l = if (i as i64) < e1 { d.div_ceil(a) } else { d / a };
        }
        debug_assert_eq!(lost.iter().sum::<usize>(), d + 1 - leftover);
    } else if side < per_pile {
        return Err(Error::pre(OP, format!("piles of {side} cannot hold {per_pile} fakes")));
    }

    let mut piles = Vec::new();
    let mut groups = Vec::new();
    let mut singles = Vec::new();
    for i in 1..=a {
        let main = format!("P{i}");
        piles.push(Pile::new(&main, side - lost[i - 1], per_pile));
        let mut group = vec![main];
        for k in 1..=lost[i - 1] {
            let id = format!("P{i}b{k}");
            piles.push(Pile::new(&id, 1, 0));
            group.push(id.clone());
            singles.push(id);
        }
        groups.push(group);
    }
    let mut leftovers: Vec<String> = (1..=leftover).map(|j| format!("L{j}")).collect();
    for id in &leftovers {
        piles.push(Pile::new(id, 1, 0));
    }
    leftovers.extend(singles);
    let mut weighings = chain(&groups);
    let singletons: Vec<Vec<String>> = leftovers.into_iter().map(|id| vec![id]).collect();
    weighings.extend(chain(&singletons));
    Ok(Strategy::new(Params::new(t, f, d), piles, weighings))
}

/// Which of the three families holds the prover's fakes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Family {
    #[default]
    A,
    B,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            _ => Err(Error::Parse(format!("family must be A, B or C, got {s:?}"))),
        }
    }
}

struct ThreeFamilyLayout {
    k: usize,
    r: usize,
}

impl ThreeFamilyLayout {
    fn new(op: &'static str, t: usize, f: usize) -> Result<Self> {
        if f == 0 {
            return Err(Error::pre(op, "needs f >= 1"));
        }
        let (k, r) = (t / f, t % f);
        if k < 4 {
            return Err(Error::pre(op, format!("needs floor(t/f) >= 4, got {k}")));
        }
        if r == 0 {
            return Err(Error::pre(op, "f divides t; use gen_divisibility instead"));
        }
        Ok(ThreeFamilyLayout { k, r })
    }

    /// Sizes of `(A_i, B_i, C_i)` for 1-based `i`.
    fn sizes(&self, i: usize) -> (usize, usize, usize) {
        if i <= self.r {
            (self.k - 2, 1, 2)
        } else {
            (self.k - 3, 2, 1)
        }
    }
}

fn id(family: char, i: usize) -> String {
    format!("{family}{i}")
}

/// Three-family discreet strategy for `t = fk + r` with `k ≥ 4`, `0 < r < f`.
///
/// Piles `A_i, B_i, C_i` for `i = 1..=f`, one fake in every pile of the
/// chosen family. Weighings chain `A_i + B_i` and `B_i + C_i` across `i`.
/// Succeeds whenever `0 < d < f`; for larger `d` the verifier decides.
pub fn gen_three_family(t: usize, f: usize, d: usize, family: Family) -> Result<Strategy> {
    const OP: &str = "gen_three_family";
    check_hypotheses(OP, t, f, d)?;
    let layout = ThreeFamilyLayout::new(OP, t, f)?;
    let mut piles = Vec::with_capacity(3 * f);
    for i in 1..=f {
        let (a, b, c) = layout.sizes(i);
        let fake = |fam: Family| usize::from(fam == family);
        piles.push(Pile::new(id('A', i), a, fake(Family::A)));
        piles.push(Pile::new(id('B', i), b, fake(Family::B)));
        piles.push(Pile::new(id('C', i), c, fake(Family::C)));
    }
    let ab: Vec<Vec<String>> = (1..=f).map(|i| vec![id('A', i), id('B', i)]).collect();
    let bc: Vec<Vec<String>> = (1..=f).map(|i| vec![id('B', i), id('C', i)]).collect();
    let mut weighings = chain(&ab);
    weighings.extend(chain(&bc));
    Ok(Strategy::new(Params::new(t, f, d), piles, weighings))
}

/// [`gen_three_family`] plus every comparison `A_w + B_x` vs `A_y + B_z` and
/// `B_w + C_x` vs `B_y + C_z` with `w ≠ y`, `x ≠ z` and all four indices in
/// `1..=r` or all in `r+1..=f`. Weighings already present are not repeated.
pub fn gen_three_family_augmented(t: usize, f: usize, d: usize, family: Family) -> Result<Strategy> {
    let mut strategy = gen_three_family(t, f, d, family)?;
    let layout = ThreeFamilyLayout::new("gen_three_family_augmented", t, f)?;
    let key = |w: &Weighing| {
        let mut l = w.left.clone();
        let mut r = w.right.clone();
        l.sort();
        r.sort();
        if l <= r {
            (l, r)
        } else {
            (r, l)
        }
    };
    let mut seen: HashSet<_> = strategy.weighings.iter().map(key).collect();
    for range in [1..=layout.r, layout.r + 1..=f] {
        let idx: Vec<usize> = range.collect();
        let pairs: Vec<(usize, usize)> = idx.iter().flat_map(|&w| idx.iter().map(move |&x| (w, x))).collect();
        for (fa, fb) in [('A', 'B'), ('B', 'C')] {
            for (p, &(w, x)) in pairs.iter().enumerate() {
                for &(y, z) in &pairs[p + 1..] {
                    if w == y || x == z {
                        continue;
                    }
                    let weighing = Weighing::new([id(fa, w), id(fb, x)], [id(fa, y), id(fb, z)]);
                    if seen.insert(key(&weighing)) {
                        strategy.weighings.push(weighing);
                    }
                }
            }
        }
    }
    Ok(strategy)
}

/// Groups of equal piles: `c[i]` piles of `g[i]` coins each.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinCombConfig {
    pub c: Vec<usize>,
    pub g: Vec<usize>,
}

impl LinCombConfig {
    pub fn new(c: Vec<usize>, g: Vec<usize>) -> Self {
        LinCombConfig { c, g }
    }

    pub fn groups(&self) -> usize {
        self.c.len()
    }

    /// Checks `Σ c_i g_i = t`, `2 ≤ c_i ≤ f`, `1 ≤ g_i ≤ t/2`.
    pub fn check(&self, t: usize, f: usize) -> Result<()> {
        const OP: &str = "LinCombConfig";
        if self.c.is_empty() || self.c.len() != self.g.len() {
            return Err(Error::pre(OP, "c and g must be non-empty and of equal length"));
        }
        let total: usize = self.c.iter().zip(&self.g).map(|(c, g)| c * g).sum();
        if total != t {
            return Err(Error::pre(OP, format!("sum of c_i * g_i is {total}, expected t = {t}")));
        }
        if let Some(c) = self.c.iter().find(|&&c| c < 2 || c > f) {
            return Err(Error::pre(OP, format!("multiplicity {c} outside 2..={f}")));
        }
        if let Some(g) = self.g.iter().find(|&&g| g < 1 || 2 * g > t) {
            return Err(Error::pre(OP, format!("pile size {g} outside 1..={}", t / 2)));
        }
        Ok(())
    }

    pub fn solutions(&self, target: usize) -> Vec<SolutionVector> {
        solve_solution_vectors(&self.c, &self.g, target).expect("lengths checked on construction")
    }
}

impl fmt::Display for LinCombConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "c=({}) g=({})", join(&self.c), join(&self.g))
    }
}

/// For every group some solution vector puts strictly between `0` and `g_i`
/// fakes into each of its piles. Sufficient for the linear-combination
/// strategy to be discreet.
pub fn interior_condition(config: &LinCombConfig, solutions: &[SolutionVector]) -> bool {
    (0..config.groups()).all(|i| solutions.iter().any(|x| 0 < x.0[i] && x.0[i] < config.g[i]))
}

/// Linear-combination strategy: group `i` has `c_i` piles of `g_i` coins with
/// `placement[i]` fakes each, its piles compared along a chain. Proves the
/// fake count is some `Σ c_i x_i`, which must not be able to equal `d`.
pub fn gen_linear_combination(
    t: usize,
    f: usize,
    d: usize,
    config: &LinCombConfig,
    placement: &SolutionVector,
) -> Result<Strategy> {
    check_hypotheses("gen_linear_combination", t, f, d)?;
    config.check(t, f)?;
    let feasible = placement.0.len() == config.groups()
        && placement.0.iter().zip(&config.g).all(|(x, g)| x <= g)
        && placement.value(&config.c) == f;
    if !feasible {
        return Err(Error::InfeasiblePlacement {
            f,
            placement: placement.0.clone(),
        });
    }
    if let Some(witness) = config.solutions(d).into_iter().next() {
        return Err(Error::DisprovedCountRepresentable { d, witness: witness.0 });
    }
    let mut piles = Vec::new();
    let mut weighings = Vec::new();
    for (i, (&c, &g)) in config.c.iter().zip(&config.g).enumerate() {
        let ids: Vec<Vec<String>> = (1..=c).map(|j| vec![format!("G{}P{j}", i + 1)]).collect();
        for pid in &ids {
            piles.push(Pile::new(&pid[0], g, placement.0[i]));
        }
        weighings.extend(chain(&ids));
    }
    Ok(Strategy::new(Params::new(t, f, d), piles, weighings))
}
