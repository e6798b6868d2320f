//! Chebyshev polynomials, spherical functions `φ_s`, and the family `ψ_s`.
//!
//! For finite rank the spherical function with eigenvalue `s` is
//! `φ̇_s(n) = P_n(s)` where
//!
//! ```text
//! P_0 = 1,  P_1 = x,  P_{n+1} = ((q+1)/q) x P_n - (1/q) P_{n-1}
//! ```
//!
//! and for infinite rank `φ̇_s(n) = s^n`. Rank 1 (`q = 1`) is the integers,
//! where `P_n = T_n`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::words::Rank;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevKind {
    /// First kind, `T_1(x) = x`.
    T,
    /// Second kind, `U_1(x) = 2x`.
    U,
}

pub fn chebyshev<S: Scalar>(kind: ChebyshevKind, n: usize, x: &S) -> S {
    let two_x = S::from_i64(2) * x.clone();
    let mut prev = S::one();
    let mut cur = match kind {
        ChebyshevKind::T => x.clone(),
        ChebyshevKind::U => two_x.clone(),
    };
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = two_x.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Recurrence weights `(a, b)` with `P_{n+1} = a x P_n - b P_{n-1}`.
fn weights<S: Scalar>(rank: Rank) -> (S, S) {
    match rank.q() {
        Some(q) => {
            let q = q as i64;
            (S::ratio(q + 1, q), S::ratio(1, q))
        }
        None => (S::one(), S::zero()),
    }
}

/// `φ̇_s(n)`.
pub fn spherical_value<S: Scalar>(rank: Rank, s: &S, n: usize) -> S {
    spherical_values(rank, s, n).pop().expect("non-empty")
}

/// `φ̇_s(0..=depth)`.
pub fn spherical_values<S: Scalar>(rank: Rank, s: &S, depth: usize) -> Vec<S> {
    let (a, b) = weights::<S>(rank);
    let mut out = Vec::with_capacity(depth + 1);
    out.push(S::one());
    if depth >= 1 {
        out.push(s.clone());
    }
    let a_s = a * s.clone();
    for n in 1..depth {
        let next = a_s.clone() * out[n].clone() - b.clone() * out[n - 1].clone();
        out.push(next);
    }
    out
}

/// `P_n(s)` through the Chebyshev representation
/// `[2/(q+1) T_n(y) + (q-1)/(q+1) U_n(y)] q^{-n/2}` with `y = (q+1) s / (2 sqrt q)`.
///
/// The exact backend needs `sqrt q` rational, i.e. `q` a perfect square.
pub fn spherical_closed_form<S: Scalar>(rank: Rank, n: usize, s: &S) -> Result<S> {
    let q = rank.require_finite("closed form")? as i64;
    let qs = S::from_i64(q);
    let root = qs.sqrt().ok_or(Error::IrrationalRequired("sqrt(q)"))?;
    let y = S::from_i64(q + 1) * s.clone() / (S::from_i64(2) * root.clone());
    let t = chebyshev(ChebyshevKind::T, n, &y);
    let u = chebyshev(ChebyshevKind::U, n, &y);
    let bracket = S::ratio(2, q + 1) * t + S::ratio(q - 1, q + 1) * u;
    let n = u32::try_from(n).map_err(|_| Error::Overflow("q^{-n/2}"))?;
    Ok(bracket / root.powi(n))
}

/// Monomial coefficients `c_0..c_n` of a polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs<S>(pub Vec<S>);

impl<S: Scalar> PolyCoeffs<S> {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &S {
        self.0.last().expect("non-empty polynomial")
    }

    pub fn eval(&self, x: &S) -> S {
        self.0
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

/// Coefficients of `P_n`. Infinite rank yields the monomial `s^n`.
pub fn spherical_coeffs<S: Scalar>(rank: Rank, n: usize) -> PolyCoeffs<S> {
    spherical_coeff_rows(rank, n).pop().expect("non-empty")
}

/// Coefficients of `P_0..=P_depth`; row `n` has `n + 1` entries.
pub fn spherical_coeff_rows<S: Scalar>(rank: Rank, depth: usize) -> Vec<PolyCoeffs<S>> {
    let (a, b) = weights::<S>(rank);
    let mut rows: Vec<PolyCoeffs<S>> = vec![PolyCoeffs(vec![S::one()])];
    if depth >= 1 {
        rows.push(PolyCoeffs(vec![S::zero(), S::one()]));
    }
    for n in 1..depth {
        let mut next = vec![S::zero(); n + 2];
        for (k, c) in rows[n].0.iter().enumerate() {
            next[k + 1] = next[k + 1].clone() + a.clone() * c.clone();
        }
        for (k, c) in rows[n - 1].0.iter().enumerate() {
            next[k] = next[k].clone() - b.clone() * c.clone();
        }
        rows.push(PolyCoeffs(next));
    }
    rows
}

/// `ψ̇_s(n) = (1 - φ̇_s(n)) / (1 - s)`, with the `s = 1` limit given by [`psi_one`].
///
/// Evaluated division-free through `Q_0 = 0, Q_1 = 1,
/// Q_{n+1} = a + a s Q_n - b Q_{n-1}`, which follows from the `P_n`
/// recurrence because `a - b = 1`.
pub fn psi_value<S: Scalar>(rank: Rank, s: &S, n: usize) -> S {
    if *s == S::one() {
        return psi_one(rank, n);
    }
    psi_values(rank, s, n).pop().expect("non-empty")
}

/// `ψ̇_s(0..=depth)`.
pub fn psi_values<S: Scalar>(rank: Rank, s: &S, depth: usize) -> Vec<S> {
    if *s == S::one() {
        return (0..=depth).map(|n| psi_one(rank, n)).collect();
    }
    let (a, b) = weights::<S>(rank);
    let mut out = Vec::with_capacity(depth + 1);
    out.push(S::zero());
    if depth >= 1 {
        out.push(S::one());
    }
    let a_s = a.clone() * s.clone();
    for n in 1..depth {
        let next = a.clone() + a_s.clone() * out[n].clone() - b.clone() * out[n - 1].clone();
        out.push(next);
    }
    out
}

/// `ψ̇_1(n)`: `n(q+1)/(q-1) - 2q(1 - q^{-n})/(q-1)^2` for `q >= 3`,
/// `n^2` on the integers, `n` for infinite rank.
pub fn psi_one<S: Scalar>(rank: Rank, n: usize) -> S {
    let nn = S::from_i64(n as i64);
    match rank.q() {
        None => nn,
        Some(1) => nn.clone() * nn,
        Some(q) => {
            let q = q as i64;
            let qs = S::from_i64(q);
            let q_neg_n = S::one() / qs.powi(n as u32);
            let linear = nn * S::ratio(q + 1, q - 1);
            let correction = S::from_i64(2 * q) * (S::one() - q_neg_n) / S::from_i64((q - 1) * (q - 1));
            linear - correction
        }
    }
}

/// The `z` parametrization: `s = q/(q+1) (q^{-z} + q^{z-1})`.
pub fn s_from_z(rank: Rank, z: f64) -> Result<f64> {
    let q = rank.require_finite("s_from_z")? as f64;
    Ok(q / (q + 1.0) * (q.powf(-z) + q.powf(z - 1.0)))
}

/// [`s_from_z`] for integer `z`, where the value is rational.
pub fn s_from_z_int<S: Scalar>(rank: Rank, z: i64) -> Result<S> {
    let q = rank.require_finite("s_from_z")? as i64;
    let qs = S::from_i64(q);
    let pow = |e: i64| -> S {
        let p = qs.powi(e.unsigned_abs() as u32);
        if e < 0 {
            S::one() / p
        } else {
            p
        }
    };
    Ok(S::ratio(q, q + 1) * (pow(-z) + pow(z - 1)))
}
