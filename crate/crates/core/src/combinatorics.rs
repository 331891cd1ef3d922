//! Exact counting primitives.
//!
//! Every cardinality in the crate is a [`Count`] (an arbitrary-precision
//! natural number) and every quotient of cardinalities is a [`Ratio`] kept in
//! lowest terms. Floating point only appears in presentation helpers and in
//! the closed-form trigonometric approximations, which are documented as
//! approximate.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Nonnegative arbitrary-precision count.
pub type Count = BigUint;

/// `C(n, k)`, zero whenever `k < 0` or `k > n`.
pub fn binomial(n: usize, k: i64) -> Count {
    if k < 0 || k as u64 > n as u64 {
        return Count::zero();
    }
    choose(n, k as usize)
}

/// `C(n, k)` for an unsigned lower index.
pub fn choose(n: usize, k: usize) -> Count {
    if k > n {
        return Count::zero();
    }
    let k = k.min(n - k);
    let mut acc = Count::one();
    // acc = C(n, i) after step i; the division is always exact.
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// The full row `C(n, 0..=n)` built additively.
pub fn binomial_row(n: usize) -> Vec<Count> {
    let mut row = Vec::with_capacity(n + 1);
    row.push(Count::one());
    for k in 0..n {
        let next = &row[k] * (n - k) / (k + 1);
        row.push(next);
    }
    row
}

fn check_modulus(op: &'static str, m: usize, p: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::pre(op, format!("modulus must be at least 2, got {m}")));
    }
    if p >= m {
        return Err(Error::pre(op, format!("residue {p} must be below the modulus {m}")));
    }
    Ok(())
}

/// `Σ_{s≥0} C(n, p + s·m)` by direct summation.
pub fn multisection_sum(n: usize, m: usize, p: usize) -> Result<Count> {
    check_modulus("multisection_sum", m, p)?;
    Ok((p..=n).step_by(m).map(|k| choose(n, k)).sum())
}

/// Cosine closed form of [`multisection_sum`]:
/// `(1/m) Σ_{j<m} cos(π(n−2p)j/m) · 2ⁿ cosⁿ(πj/m)`.
///
/// Approximate; the relative error grows with `n` as `2ⁿ` leaves the exact
/// range of `f64`.
pub fn multisection_trig(n: usize, m: usize, p: usize) -> Result<f64> {
    check_modulus("multisection_trig", m, p)?;
    let (nf, mf) = (n as f64, m as f64);
    let phase = nf - 2.0 * p as f64;
    let total: f64 = (0..m)
        .map(|j| {
            let j = j as f64;
            (PI * phase * j / mf).cos() * (2.0 * (PI * j / mf).cos()).powi(n as i32)
        })
        .sum();
    Ok(total / mf)
}

/// Exact nonnegative rational in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ratio(num_rational::Ratio<BigUint>);

impl Ratio {
    pub fn new(numer: impl Into<Count>, denom: impl Into<Count>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::pre("Ratio::new", "denominator must be positive"));
        }
        Ok(Ratio(num_rational::Ratio::new(numer.into(), denom)))
    }

    pub fn from_integer(value: impl Into<Count>) -> Self {
        Ratio(num_rational::Ratio::from_integer(value.into()))
    }

    pub fn one() -> Self {
        Ratio::from_integer(1u32)
    }

    pub fn numer(&self) -> &Count {
        self.0.numer()
    }

    pub fn denom(&self) -> &Count {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Panics on zero.
    pub fn recip(&self) -> Self {
        Ratio(self.0.recip())
    }

    pub fn pow(&self, exp: u32) -> Self {
        Ratio(num_rational::Ratio::new_raw(
            self.numer().pow(exp),
            self.denom().pow(exp),
        ))
    }

    pub fn checked_sub(&self, other: &Ratio) -> Option<Ratio> {
        (self >= other).then(|| Ratio(&self.0 - &other.0))
    }

    /// Close `f64` approximation, also for operands far beyond `f64` range.
    pub fn to_f64(&self) -> f64 {
        let (n, d) = (self.numer(), self.denom());
        if n.is_zero() {
            return 0.0;
        }
        // q = n / d scaled by 2^shift to carry about 64 significant bits
        let shift = d.bits() as i64 - n.bits() as i64 + 64;
        let q = if shift >= 0 {
            (n << shift as u64) / d
        } else {
            (n >> (-shift) as u64) / d
        };
        let mut value = q.to_f64().unwrap_or(f64::INFINITY);
        let mut exp = -shift;
        while exp > 0 && value.is_finite() {
            let step = exp.min(1000);
            value *= 2f64.powi(step as i32);
            exp -= step;
        }
        while exp < 0 && value != 0.0 {
            let step = (-exp).min(1000);
            value /= 2f64.powi(step as i32);
            exp += step;
        }
        value
    }

    /// Decimal rendering rounded half-up to `places` digits after the point.
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = Count::from(10u32).pow(places as u32);
        let twice = self.numer() * &scale * 2u32 + self.denom();
        let scaled = twice / (self.denom() * 2u32);
        if places == 0 {
            return scaled.to_string();
        }
        let (int, frac) = scaled.div_rem(&scale);
        format!("{int}.{:0>width$}", frac.to_string(), width = places)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ratio({self})")
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Mul for &Ratio {
    type Output = Ratio;
    fn mul(self, rhs: &Ratio) -> Ratio {
        Ratio(&self.0 * &rhs.0)
    }
}

impl Div for &Ratio {
    type Output = Ratio;
    /// Panics when `rhs` is zero.
    fn div(self, rhs: &Ratio) -> Ratio {
        Ratio(&self.0 / &rhs.0)
    }
}

impl Sub for &Ratio {
    type Output = Ratio;
    /// Panics when the difference would be negative.
    fn sub(self, rhs: &Ratio) -> Ratio {
        self.checked_sub(rhs)
            .expect("Ratio subtraction underflow: result would be negative")
    }
}

impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected \"numerator/denominator\", got {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: Count = n.parse().map_err(|_| bad())?;
        let d: Count = d.parse().map_err(|_| bad())?;
        Ratio::new(n, d)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a [`Count`] as a decimal string.
pub mod count_string {
    use super::Count;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Count, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Count, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(80, 3), Count::from(82160u32));
        assert_eq!(binomial(17, 0), Count::one());
        assert_eq!(binomial(0, 0), Count::one());
        assert_eq!(binomial(5, 7), Count::zero());
        assert_eq!(binomial(5, -1), Count::zero());
    }

    #[test]
    fn binomial_row_matches_choose() {
        for n in 0..40 {
            let row = binomial_row(n);
            assert_eq!(row.len(), n + 1);
            for (k, c) in row.iter().enumerate() {
                assert_eq!(*c, choose(n, k));
            }
        }
    }

    #[test]
    fn binomial_rows_sum_to_powers_of_two() {
        for n in 0..=64usize {
            let total: Count = (0..=n as i64).map(|k| binomial(n, k)).sum();
            assert_eq!(total, Count::one() << n);
        }
    }

    #[test]
    fn multisection_examples() {
        assert_eq!(multisection_sum(4, 2, 0).unwrap(), Count::from(8u32));
        // C(6,0) + C(6,3) + C(6,6)
        assert_eq!(multisection_sum(6, 3, 0).unwrap(), Count::from(22u32));
        assert!((multisection_trig(4, 2, 0).unwrap() - 8.0).abs() < 1e-9);
        assert!((multisection_trig(6, 3, 0).unwrap() - 22.0).abs() < 1e-9);
        let exact = multisection_sum(20, 5, 0).unwrap().to_f64().unwrap();
        let trig = multisection_trig(20, 5, 0).unwrap();
        assert!(((trig - exact) / exact).abs() < 1e-6);
    }

    #[test]
    fn multisection_rejects_bad_modulus() {
        assert!(multisection_sum(5, 1, 0).is_err());
        assert!(multisection_trig(5, 0, 0).is_err());
        assert!(multisection_sum(5, 3, 3).is_err());
    }

    #[test]
    fn multisection_matches_filtered_sum_and_trig() {
        for n in 0..=40usize {
            for m in 2..=8usize {
                for p in 0..m {
                    let mut filtered = Count::zero();
                    for k in 0..=n {
                        if k % m == p {
                            filtered += choose(n, k);
                        }
                    }
                    assert_eq!(multisection_sum(n, m, p).unwrap(), filtered, "n={n} m={m} p={p}");
                    let trig = multisection_trig(n, m, p).unwrap();
                    let exact = filtered.to_f64().unwrap();
                    if exact == 0.0 {
                        assert!(trig.abs() < 1e-6, "n={n} m={m} p={p} trig={trig}");
                    } else {
                        assert!(((trig - exact) / exact).abs() < 1e-6, "n={n} m={m} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn ratio_basics() {
        let x = Ratio::new(82160u32, 8000u32).unwrap();
        assert_eq!(x.to_string(), "1027/100");
        assert_eq!(x.to_decimal(4), "10.2700");
        assert_eq!(Ratio::new(2u32, 3u32).unwrap().to_decimal(4), "0.6667");
        assert_eq!(Ratio::new(7u32, 2u32).unwrap().to_decimal(0), "4");
        assert!(Ratio::new(1u32, 0u32).is_err());
        let r = &Ratio::one() - &x.recip();
        assert_eq!(r, Ratio::new(927u32, 1027u32).unwrap());
        assert!(Ratio::one().checked_sub(&x).is_none());
        assert_eq!("82160/8000".parse::<Ratio>().unwrap(), x);
        assert_eq!(serde_json::to_string(&x).unwrap(), "\"1027/100\"");
    }

    #[test]
    fn ratio_to_f64_handles_huge_operands() {
        let big = Count::one() << 5000usize;
        let r = Ratio::new(&big * 3u32, &big * 2u32).unwrap();
        assert_eq!(r.to_f64(), 1.5);
        let r = Ratio::new((Count::one() << 3000usize) + 1u32, (Count::one() << 2000usize) * 3u32).unwrap();
        assert!((r.to_f64() / 2f64.powi(1000) * 3.0 - 1.0).abs() < 1e-12);
        let r = Ratio::new(Count::one() << 5000usize, 3u32).unwrap();
        assert!(r.to_f64().is_infinite());
        let r = Ratio::new(Count::from(1u32), Count::one() << 400usize).unwrap();
        assert!(r.to_f64() > 0.0 && r.to_f64() < 1e-100);
    }

    proptest! {
        #[test]
        fn ratio_reduction_is_idempotent(a in 0u64..1_000_000, b in 1u64..1_000_000) {
            let r = Ratio::new(a, b).unwrap();
            let again = Ratio::new(r.numer().clone(), r.denom().clone()).unwrap();
            prop_assert_eq!(&again, &r);
            prop_assert_eq!(r.numer().gcd(r.denom()) == Count::one() || a == 0, true);
        }

        #[test]
        fn ratio_times_reciprocal_is_one(a in 1u64..1_000_000, b in 1u64..1_000_000) {
            let r = Ratio::new(a, b).unwrap();
            let inv = Ratio::new(b, a).unwrap();
            prop_assert_eq!(&r * &inv, Ratio::one());
        }

        #[test]
        fn ratio_string_round_trip(a in 0u64..u64::MAX, b in 1u64..u64::MAX) {
            let r = Ratio::new(a, b).unwrap();
            prop_assert_eq!(r.to_string().parse::<Ratio>().unwrap(), r);
        }
    }
}
