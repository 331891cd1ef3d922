//! Closed forms and bounds for single weighings and the strategy families.
//!
//! These are fast predictors; the test suites hold each of them against the
//! verifier.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::combinatorics::{binomial, choose, Count, Ratio};
use crate::error::{Error, Result};
use crate::strategies::SolutionVector;

/// Outcome counts of a single weighing with `n` coins per pan, assuming `f`
/// fakes among `t` coins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleWeighingCounts {
    pub t: usize,
    pub f: usize,
    pub n: usize,
    /// Situations in which the weighing balances.
    pub balanced: Count,
    /// Situations tilting to one given side; the two sides are symmetric.
    pub unbalanced: Count,
}

fn check_pan(op: &'static str, t: usize, f: usize, n: usize) -> Result<()> {
    if n == 0 || 2 * n > t {
        return Err(Error::pre(op, format!("pan size n = {n} must lie in 1..={}", t / 2)));
    }
    if f > t {
        return Err(Error::pre(op, format!("f = {f} exceeds t = {t}")));
    }
    Ok(())
}

/// Situations that balance a weighing of `n` against `n` coins:
/// `Σ_i C(n,i)² C(t−2n, f−2i)`.
pub fn balanced_count(t: usize, f: usize, n: usize) -> Result<Count> {
    check_pan("balanced_count", t, f, n)?;
    let rest = t - 2 * n;
    Ok((0..=n)
        .map(|i| {
            let c = choose(n, i);
            &c * &c * binomial(rest, f as i64 - 2 * i as i64)
        })
        .sum())
}

/// Situations with strictly more fakes on one given pan:
/// `Σ_{i<j} C(n,i) C(n,j) C(t−2n, f−i−j)`.
pub fn unbalanced_count(t: usize, f: usize, n: usize) -> Result<Count> {
    check_pan("unbalanced_count", t, f, n)?;
    let rest = t - 2 * n;
    let mut total = Count::zero();
    for i in 0..n {
        for j in i + 1..=n {
            total += choose(n, i) * choose(n, j) * binomial(rest, f as i64 - (i + j) as i64);
        }
    }
    Ok(total)
}

pub fn single_weighing_counts(t: usize, f: usize, n: usize) -> Result<SingleWeighingCounts> {
    Ok(SingleWeighingCounts {
        t,
        f,
        n,
        balanced: balanced_count(t, f, n)?,
        unbalanced: unbalanced_count(t, f, n)?,
    })
}

/// Range any successful discreet strategy's `count_f` must fall in:
/// `max(⌈t/f⌉, ⌈t/(t−f)⌉) ≤ count_f < C(t, f)`. Returns
/// `(lower, strict_upper)`.
pub fn discreet_count_bounds(t: usize, f: usize) -> Result<(Count, Count)> {
    if !(1 < f && f + 1 < t) {
        return Err(Error::pre(
            "discreet_count_bounds",
            format!("needs 1 < f < t - 1, got t = {t}, f = {f}"),
        ));
    }
    let lower = t.div_ceil(f).max(t.div_ceil(t - f));
    Ok((Count::from(lower), choose(t, f)))
}

/// Largest outcome class of any single weighing, over all pan sizes. With
/// `balanced_only` the unbalanced outcomes are left out.
pub fn single_weighing_cap(t: usize, f: usize, balanced_only: bool) -> Result<Count> {
    if t < 2 {
        return Err(Error::pre("single_weighing_cap", format!("needs t >= 2, got {t}")));
    }
    let mut best = Count::zero();
    for n in 1..=t / 2 {
        best = best.max(balanced_count(t, f, n)?);
        if !balanced_only {
            best = best.max(unbalanced_count(t, f, n)?);
        }
    }
    Ok(best)
}

/// Revealing factor of splitting into `a` equal piles with equal fakes:
/// `C(t,f) / C(t/a, f/a)^a`.
pub fn divisibility_revealing_factor(t: usize, f: usize, a: usize) -> Result<Ratio> {
    const OP: &str = "divisibility_revealing_factor";
    if a < 2 {
        return Err(Error::pre(OP, format!("needs a >= 2, got {a}")));
    }
    if f % a != 0 || t % a != 0 {
        return Err(Error::pre(OP, format!("a = {a} must divide both t = {t} and f = {f}")));
    }
    if f > t {
        return Err(Error::pre(OP, format!("f = {f} exceeds t = {t}")));
    }
    let per_pile = choose(t / a, f / a).pow(a as u32);
    Ratio::new(choose(t, f), per_pile)
}

/// Limit of [`divisibility_revealing_factor`] as `t` grows:
/// `(f^f / f!) · ((f/a)! / (f/a)^(f/a))^a`.
pub fn divisibility_revealing_factor_limit(f: usize, a: usize) -> Result<Ratio> {
    const OP: &str = "divisibility_revealing_factor_limit";
    if a < 2 {
        return Err(Error::pre(OP, format!("needs a >= 2, got {a}")));
    }
    if f % a != 0 {
        return Err(Error::pre(OP, format!("a = {a} must divide f = {f}")));
    }
    let q = f / a;
    let factorial = |n: usize| (1..=n).fold(Count::one(), |acc, k| acc * k);
    let head = Ratio::new(Count::from(f).pow(f as u32), factorial(f))?;
    let tail = Ratio::new(factorial(q), Count::from(q).pow(q as u32))?;
    Ok(&head * &tail.pow(a as u32))
}

/// Exponents `(e₁, e₂)` of the indiscreet lower bound:
/// `e₁ = a⌊t/a⌋ − a⌊d/a⌋ + d + 1 − t`, `e₂ = a − e₁`.
pub fn indiscreet_exponents(t: usize, d: usize, a: usize) -> (i64, i64) {
    let (t, d, a) = (t as i64, d as i64, a as i64);
    let e1 = a * (t / a) - a * (d / a) + d + 1 - t;
    (e1, a - e1)
}

fn check_indiscreet(op: &'static str, f: usize, d: usize, a: usize) -> Result<()> {
    if a < 2 {
        return Err(Error::pre(op, format!("needs a >= 2, got {a}")));
    }
    if f % a != 0 {
        return Err(Error::pre(op, format!("a = {a} must divide f = {f}")));
    }
    if d % a == 0 {
        return Err(Error::pre(op, format!("a = {a} must not divide d = {d}")));
    }
    Ok(())
}

/// Count every optimal indiscreet strategy is guaranteed to reach when
/// `a | f`, `a ∤ d`, `a ∤ t`, `t > 2a` and `⌊t/a⌋ − ⌈d/a⌉ > f/a`:
/// `C(⌊t/a⌋−⌈d/a⌉, f/a)^e₁ · C(⌊t/a⌋−⌊d/a⌋, f/a)^e₂`.
///
/// Rejects parameter sets where `e₁` would be negative (only possible for
/// `a ≥ 4`), since the product is then not a count.
pub fn indiscreet_lower_bound(t: usize, f: usize, d: usize, a: usize) -> Result<Count> {
    const OP: &str = "indiscreet_lower_bound";
    check_indiscreet(OP, f, d, a)?;
    if t % a == 0 {
        return Err(Error::pre(OP, format!("a = {a} must not divide t = {t}")));
    }
    if t <= 2 * a {
        return Err(Error::pre(OP, format!("needs t > 2a, got t = {t}, a = {a}")));
    }
    let q = f / a;
    if t / a < d.div_ceil(a) || t / a - d.div_ceil(a) <= q {
        return Err(Error::pre(OP, "needs floor(t/a) - ceil(d/a) > f/a"));
    }
    let (e1, e2) = indiscreet_exponents(t, d, a);
    if e1 < 0 {
        return Err(Error::pre(OP, format!("exponent e1 = {e1} is negative")));
    }
    let small = choose(t / a - d.div_ceil(a), q).pow(e1 as u32);
    let large = choose(t / a - d / a, q).pow(e2 as u32);
    Ok(small * large)
}

/// Exact count of the indiscreet pile strategy when `d` leaves a different
/// remainder mod `a` than `t`, so no borrowed coins are needed:
/// `C(⌊t/a⌋, f/a)^a`.
pub fn indiscreet_exact_count(t: usize, f: usize, d: usize, a: usize) -> Result<Count> {
    const OP: &str = "indiscreet_exact_count";
    check_indiscreet(OP, f, d, a)?;
    if d % a == t % a {
        return Err(Error::pre(OP, format!("d mod a must differ from t mod a ({})", t % a)));
    }
    if t / a < f / a {
        return Err(Error::pre(
            OP,
            format!("piles of {} cannot hold {} fakes", t / a, f / a),
        ));
    }
    Ok(choose(t / a, f / a).pow(a as u32))
}

/// Count of the three-family strategy for `t = fk + r`, `k ≥ 4`, `0 < r < f`:
/// `(k−2)^r (k−3)^(f−r) + 2^(f−r) + 2^r`.
pub fn three_family_count(t: usize, f: usize) -> Result<Count> {
    const OP: &str = "three_family_count";
    if f == 0 {
        return Err(Error::pre(OP, "needs f >= 1"));
    }
    let (k, r) = t.div_rem(&f);
    if k < 4 {
        return Err(Error::pre(OP, format!("needs floor(t/f) >= 4, got {k}")));
    }
    if r == 0 {
        return Err(Error::pre(OP, "f divides t; use the divisibility strategy"));
    }
    let (r32, rest) = (r as u32, (f - r) as u32);
    let a = Count::from(k - 2).pow(r32) * Count::from(k - 3).pow(rest);
    Ok(a + Count::from(2u32).pow(rest) + Count::from(2u32).pow(r32))
}

/// `Σ_x Π_i C(g_i, x_i)^c_i` over the given solution vectors.
pub fn lincomb_count(c: &[usize], g: &[usize], solutions: &[SolutionVector]) -> Result<Count> {
    const OP: &str = "lincomb_count";
    if c.len() != g.len() {
        return Err(Error::pre(OP, "c and g must have the same length"));
    }
    let mut target = None;
    let mut total = Count::zero();
    for x in solutions {
        if x.0.len() != c.len() {
            return Err(Error::pre(OP, format!("solution {:?} has the wrong length", x.0)));
        }
        if let Some((i, _)) = x.0.iter().zip(g).enumerate().find(|(_, (xi, gi))| xi > gi) {
            return Err(Error::pre(OP, format!("solution {:?} exceeds g at {i}", x.0)));
        }
        let value: usize = x.0.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
        if *target.get_or_insert(value) != value {
            return Err(Error::pre(OP, "solutions disagree on the represented total"));
        }
        total +=
            x.0.iter()
                .zip(g)
                .zip(c)
                .map(|((&xi, &gi), &ci)| choose(gi, xi).pow(ci as u32))
                .product::<Count>();
    }
    Ok(total)
}

/// Known upper bound on weighings to locate `m` fakes among `n` coins in the
/// traditional problem: `⌈log₃ C(n, m)⌉ + 15m`.
pub fn pyber_bound(n: usize, m: usize) -> Result<u64> {
    if m == 0 || m > n {
        return Err(Error::pre(
            "pyber_bound",
            format!("needs 1 <= m <= n, got n = {n}, m = {m}"),
        ));
    }
    let target = choose(n, m);
    let mut power = Count::one();
    let mut log = 0u64;
    while power < target {
        power *= 3u32;
        log += 1;
    }
    Ok(log + 15 * m as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn single_weighing_examples() {
        assert_eq!(balanced_count(80, 3, 30).unwrap(), n(19140));
        assert_eq!(balanced_count(80, 3, 20).unwrap(), n(25880));
        assert_eq!(balanced_count(17, 0, 4).unwrap(), n(1));
        assert_eq!(unbalanced_count(80, 3, 40).unwrap(), n(41080));
        // (C(80,3) - 19140) / 2
        assert_eq!(unbalanced_count(80, 3, 30).unwrap(), n(31510));
        assert_eq!(unbalanced_count(17, 0, 4).unwrap(), n(0));
    }

    #[test]
    fn single_weighing_domain() {
        assert!(balanced_count(10, 2, 0).is_err());
        assert!(balanced_count(10, 2, 6).is_err());
        assert!(unbalanced_count(10, 11, 2).is_err());
        assert!(single_weighing_counts(10, 2, 5).is_ok());
    }

    #[test]
    fn vandermonde_partition() {
        for t in 2..=60 {
            for f in 0..=5.min(t) {
                for pan in 1..=t / 2 {
                    let s = single_weighing_counts(t, f, pan).unwrap();
                    assert_eq!(&s.balanced + &s.unbalanced * 2u32, choose(t, f), "t={t} f={f} n={pan}");
                }
            }
        }
    }

    #[test]
    fn discreet_bounds_examples() {
        assert_eq!(discreet_count_bounds(80, 3).unwrap(), (n(27), n(82160)));
        assert_eq!(discreet_count_bounds(6, 3).unwrap(), (n(2), n(20)));
        assert_eq!(discreet_count_bounds(10, 8).unwrap(), (n(5), n(45)));
        assert!(discreet_count_bounds(10, 1).is_err());
        assert!(discreet_count_bounds(10, 9).is_err());
    }

    #[test]
    fn single_weighing_cap_examples() {
        assert_eq!(single_weighing_cap(10, 2, true).unwrap(), choose(8, 2) + 1u32);
        assert_eq!(single_weighing_cap(10, 0, false).unwrap(), n(1));
        assert_eq!(single_weighing_cap(10, 0, true).unwrap(), n(1));
        let cap = single_weighing_cap(80, 3, false).unwrap();
        let mut scan = Count::zero();
        for pan in 1..=40 {
            scan = scan.max(balanced_count(80, 3, pan).unwrap());
            scan = scan.max(unbalanced_count(80, 3, pan).unwrap());
        }
        assert_eq!(cap, scan);
        assert!(cap >= n(41080));
        assert!(single_weighing_cap(1, 0, false).is_err());
    }

    #[test]
    fn divisibility_factor_examples() {
        assert_eq!(
            divisibility_revealing_factor(8, 2, 2).unwrap(),
            Ratio::new(7u32, 4u32).unwrap()
        );
        assert_eq!(
            divisibility_revealing_factor_limit(2, 2).unwrap(),
            Ratio::from_integer(2u32)
        );
        let x = divisibility_revealing_factor(70, 7, 7).unwrap();
        assert_eq!(x, Ratio::new(choose(70, 7), n(10_000_000)).unwrap());
        assert_eq!(x.to_decimal(2), "119.88");
        assert!(divisibility_revealing_factor(9, 2, 2).is_err());
        assert!(divisibility_revealing_factor(8, 2, 1).is_err());
        assert!(divisibility_revealing_factor_limit(3, 2).is_err());
    }

    #[test]
    fn divisibility_factor_approaches_limit() {
        let limit = divisibility_revealing_factor_limit(6, 3).unwrap().to_f64();
        let mut prev = f64::INFINITY;
        for t in [60usize, 600, 6000] {
            let gap = (divisibility_revealing_factor(t, 6, 3).unwrap().to_f64() - limit).abs();
            assert!(gap < prev);
            prev = gap;
        }
        assert!(prev < 1e-2 * limit);
    }

    #[test]
    fn indiscreet_bound_examples() {
        assert_eq!(indiscreet_lower_bound(80, 3, 2, 3).unwrap(), n(25 * 26 * 26));
        for (t, d, a) in [(80, 2, 3), (41, 5, 4), (23, 1, 2), (100, 7, 3)] {
            let (e1, e2) = indiscreet_exponents(t, d, a);
            assert_eq!(e1 + e2, a as i64);
        }
        assert_eq!(indiscreet_exact_count(10, 2, 3, 2).unwrap(), n(25));
        assert!(indiscreet_lower_bound(10, 2, 3, 2).is_err(), "a divides t");
        assert!(indiscreet_lower_bound(80, 3, 3, 3).is_err());
        assert!(indiscreet_lower_bound(80, 4, 2, 3).is_err());
        assert!(indiscreet_lower_bound(5, 3, 1, 3).is_err(), "t > 2a");
        assert!(indiscreet_lower_bound(11, 6, 3, 2).is_err(), "floor condition");
        assert!(indiscreet_exact_count(80, 3, 2, 3).is_err(), "same remainder");
    }

    #[test]
    fn indiscreet_bound_rejects_negative_exponent() {
        // t mod 5 = 4, d mod 5 = 1
        assert_eq!(indiscreet_exponents(49, 6, 5).0, -2);
        assert!(indiscreet_lower_bound(49, 5, 6, 5).is_err());
    }

    #[test]
    fn three_family_examples() {
        assert_eq!(three_family_count(80, 3).unwrap(), n(24 * 24 * 23 + 2 + 4));
        assert_eq!(three_family_count(80, 3).unwrap(), n(13254));
        assert_eq!(three_family_count(9, 2).unwrap(), n(6));
        assert_eq!(three_family_count(13, 3).unwrap(), n(8));
        assert!(three_family_count(12, 3).is_err());
        assert!(three_family_count(11, 3).is_err());
    }

    #[test]
    fn lincomb_examples() {
        let sols = |v: &[&[usize]]| v.iter().map(|x| SolutionVector(x.to_vec())).collect::<Vec<_>>();
        let c = [2, 2, 3];
        let g = [10, 10, 10];
        let s = sols(&[&[0, 2, 1], &[1, 1, 1], &[2, 0, 1]]);
        assert_eq!(lincomb_count(&c, &g, &s).unwrap(), n(14_050_000));
        assert_eq!(lincomb_count(&c, &g, &sols(&[&[0, 0, 0]])).unwrap(), n(1));
        assert_eq!(lincomb_count(&[4], &[5], &sols(&[&[2]])).unwrap(), choose(5, 2).pow(4));
        assert!(lincomb_count(&c, &g, &sols(&[&[1, 1]])).is_err());
        assert!(lincomb_count(&c, &g, &sols(&[&[11, 0, 0]])).is_err());
        assert!(lincomb_count(&c, &g, &sols(&[&[1, 1, 1], &[1, 0, 0]])).is_err());
        assert!(lincomb_count(&c, &[1, 2], &[]).is_err());
    }

    #[test]
    fn pyber_examples() {
        assert_eq!(pyber_bound(80, 3).unwrap(), 56);
        assert_eq!(pyber_bound(3, 3).unwrap(), 45);
        assert_eq!(pyber_bound(12, 1).unwrap(), 18);
        assert_eq!(pyber_bound(9, 1).unwrap(), 17);
        assert!(pyber_bound(3, 4).is_err());
        assert!(pyber_bound(3, 0).is_err());
    }
}
