//! Average sensitivity of `MOD*_m`, the function that is 1 exactly when the
//! number of zero bits is a multiple of `m`.
//!
//! A lower bound for oblivious weighing algorithms is of order `α/√n`, where
//! `α` is the average sensitivity. Constants inside that Ω are not known, so
//! [`measurement_bound_order`] reports the order term alone.

use std::f64::consts::PI;

use num_traits::One;
use serde::Serialize;

use crate::combinatorics::{multisection_sum, Count, Ratio};
use crate::error::{Error, Result};
use crate::verifier::ser_ratio;

/// Largest `n` accepted by [`avg_sensitivity_enum`].
pub const MAX_ENUM_BITS: usize = 24;

fn check_modulus(op: &'static str, m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::pre(op, format!("needs m >= 2, got {m}")));
    }
    Ok(())
}

fn check_length(op: &'static str, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::pre(op, "needs n >= 1"));
    }
    Ok(())
}

/// Parses a string of `0` and `1` characters.
pub fn parse_bits(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse(format!(
                "bit string may only contain 0 and 1, found {ch:?}"
            ))),
        })
        .collect()
}

/// `MOD*_m(bits)`.
pub fn mod_m_star(bits: &[bool], m: usize) -> Result<bool> {
    check_modulus("mod_m_star", m)?;
    Ok(bits.iter().filter(|b| !**b).count() % m == 0)
}

/// Number of single-bit flips that change `MOD*_m(bits)`.
pub fn sensitivity_at(bits: &[bool], m: usize) -> Result<usize> {
    let base = mod_m_star(bits, m)?;
    let mut flipped = bits.to_vec();
    let mut changes = 0;
    for i in 0..bits.len() {
        flipped[i] = !flipped[i];
        if mod_m_star(&flipped, m)? != base {
            changes += 1;
        }
        flipped[i] = bits[i];
    }
    Ok(changes)
}

/// Average sensitivity by visiting all `2^n` inputs.
pub fn avg_sensitivity_enum(n: usize, m: usize) -> Result<Ratio> {
    const OP: &str = "avg_sensitivity_enum";
    check_modulus(OP, m)?;
    check_length(OP, n)?;
    if n > MAX_ENUM_BITS {
        return Err(Error::pre(OP, format!("n = {n} exceeds {MAX_ENUM_BITS}")));
    }
    let value = |mask: u32| (n as u32 - mask.count_ones()) as usize % m == 0;
    let mut total: u64 = 0;
    for mask in 0u32..1 << n {
        let base = value(mask);
        total += (0..n).filter(|&i| value(mask ^ (1 << i)) != base).count() as u64;
    }
    Ratio::new(total, Count::one() << n)
}

/// `α = n · Σ_s C(n, sm) / 2^(n−1)`, exactly.
pub fn avg_sensitivity_exact(n: usize, m: usize) -> Result<Ratio> {
    const OP: &str = "avg_sensitivity_exact";
    check_modulus(OP, m)?;
    check_length(OP, n)?;
    let sum = multisection_sum(n, m, 0)?;
    Ratio::new(sum * n, Count::one() << (n - 1))
}

/// `(2n/m) · [1 + Σ_{j=1}^{m−1} cos(πnj/m) cosⁿ(πj/m)]`.
pub fn avg_sensitivity_trig(n: usize, m: usize) -> Result<f64> {
    const OP: &str = "avg_sensitivity_trig";
    check_modulus(OP, m)?;
    check_length(OP, n)?;
    let tail: f64 = (1..m)
        .map(|j| {
            let theta = PI * j as f64 / m as f64;
            (theta * n as f64).cos() * theta.cos().powi(n as i32)
        })
        .sum();
    Ok(2.0 * n as f64 / m as f64 * (1.0 + tail))
}

/// `α/√n`, the order of the oblivious-measurement lower bound.
pub fn measurement_bound_order(n: usize, m: usize) -> Result<f64> {
    Ok(avg_sensitivity_exact(n, m)?.to_f64() / (n as f64).sqrt())
}

/// `|α·m/(2n) − 1|`, the distance from the `2n/m` asymptote.
pub fn relative_deviation(n: usize, m: usize) -> Result<f64> {
    let scaled = &avg_sensitivity_exact(n, m)? * &Ratio::new(m, 2 * n)?;
    let one = Ratio::one();
    let diff = scaled
        .checked_sub(&one)
        .or_else(|| one.checked_sub(&scaled))
        .expect("one side is nonnegative");
    Ok(diff.to_f64())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityResult {
    pub n: usize,
    pub m: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub exact: Ratio,
    pub trig: f64,
    /// `2n/m`.
    #[serde(serialize_with = "ser_ratio")]
    pub asymptote: Ratio,
    /// `α/√n`.
    pub bound_order: f64,
}

pub fn sensitivity_result(n: usize, m: usize) -> Result<SensitivityResult> {
    let exact = avg_sensitivity_exact(n, m)?;
    let bound_order = exact.to_f64() / (n as f64).sqrt();
    Ok(SensitivityResult {
        n,
        m,
        trig: avg_sensitivity_trig(n, m)?,
        asymptote: Ratio::new(2 * n, m)?,
        bound_order,
        exact,
    })
}
