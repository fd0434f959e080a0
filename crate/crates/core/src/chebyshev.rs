//! Chebyshev polynomials of the first and second kind.
//!
//! Everything runs on the forward three-term recurrence
//! `P_k = 2x P_{k-1} - P_{k-2}`. The walk only ever evaluates at
//! `x = cos(beta) cos(p + gamma)`, so the domain of interest is `[-1, 1]`.

use crate::error::{Result, WalkError};

/// Slack allowed outside `[-1, 1]` before [`cheb_pair`] rejects its argument.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// `T_n(x)` together with `U_{n-1}(x)`, the two values the n-step
/// evolution operator needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebPair {
    pub t_n: f64,
    /// `U_{n-1}(x)`, zero when `n = 0`.
    pub u_nm1: f64,
}

impl ChebPair {
    /// Residual of `T_n^2 + (1 - x^2) U_{n-1}^2 = 1`.
    pub fn pell_residual(&self, x: f64) -> f64 {
        (self.t_n * self.t_n + (1.0 - x * x) * self.u_nm1 * self.u_nm1 - 1.0).abs()
    }
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(WalkError::NonFinite("chebyshev argument"))
    }
}

fn clamp_unit(x: f64) -> Result<f64> {
    check_finite(x)?;
    if x.abs() > 1.0 + CLAMP_TOLERANCE {
        return Err(WalkError::OutOfRange(x));
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// `T_n(x)` by forward recurrence.
pub fn cheb_t(n: usize, x: f64) -> Result<f64> {
    check_finite(x)?;
    if n == 0 {
        return Ok(1.0);
    }
    let (mut prev, mut cur) = (1.0, x);
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `U_n(x)` by forward recurrence, with `U_{-1} = 0`.
pub fn cheb_u(n: i64, x: f64) -> Result<f64> {
    check_finite(x)?;
    if n < -1 {
        return Err(WalkError::NegativeDegree(n));
    }
    let (mut prev, mut cur) = (0.0, 1.0);
    if n == -1 {
        return Ok(prev);
    }
    for _ in 0..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `(T_n(x), U_{n-1}(x))` from one pass that advances both recurrences.
///
/// Arguments within [`CLAMP_TOLERANCE`] of the interval are clamped onto it.
pub fn cheb_pair(n: usize, x: f64) -> Result<ChebPair> {
    let x = clamp_unit(x)?;
    // (T_{k-1}, T_k) and (U_{k-2}, U_{k-1}) at k = 0
    let (mut t_prev, mut t_cur) = (x, 1.0);
    let (mut u_prev, mut u_cur) = (-1.0, 0.0);
    for _ in 0..n {
        let t_next = 2.0 * x * t_cur - t_prev;
        let u_next = 2.0 * x * u_cur - u_prev;
        t_prev = t_cur;
        t_cur = t_next;
        u_prev = u_cur;
        u_cur = u_next;
    }
    Ok(ChebPair {
        t_n: t_cur,
        u_nm1: u_cur,
    })
}

/// `(U_{n-1}(x), U_n(x))`, clamped like [`cheb_pair`].
pub fn cheb_u_adjacent(n: usize, x: f64) -> Result<(f64, f64)> {
    let x = clamp_unit(x)?;
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    Ok((prev, cur))
}
