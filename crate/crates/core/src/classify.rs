//! Decision procedures on radial value tables.
//!
//! A radial `φ` is positive definite iff `φ̇(n) = ∫ P_n dμ` for a positive
//! measure `μ` on `[-1, 1]`, and a radial `ψ` with `ψ(e) = 0` is
//! conditionally negative definite iff `ψ̇(n) = ∫ ψ̇_s(n) dν(s)`. A finite
//! table can only be refuted, never proved: the verdicts are either
//! "consistent up to this depth" or "certified not".

use crate::error::{Error, Result};
use crate::moments::{
    hausdorff_check, phi_to_moments, psi_to_moments, MomentStatus, MomentVerdict, RadialFunction, Role,
};
use crate::scalar::Scalar;
use crate::words::Rank;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    /// No obstruction to positive definiteness up to the given depth.
    ConsistentPd,
    /// No obstruction to conditional negative definiteness up to the given depth.
    ConsistentCnd,
    /// A moment matrix has a negative eigenvalue; the property fails.
    CertifiedNot,
    /// The moment test could not be carried out numerically.
    Indeterminate,
}

impl VerdictStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictStatus::ConsistentPd => "ConsistentPD",
            VerdictStatus::ConsistentCnd => "ConsistentCND",
            VerdictStatus::CertifiedNot => "CertifiedNot",
            VerdictStatus::Indeterminate => "Indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub moments: MomentVerdict,
    /// Recovered moments of the (normalized) candidate measure.
    pub moment_values: Vec<f64>,
    /// Largest word length used.
    pub depth: usize,
}

impl Verdict {
    pub fn is_certified_not(&self) -> bool {
        self.status == VerdictStatus::CertifiedNot
    }
}

fn verdict(consistent: VerdictStatus, moments: MomentVerdict, m: Vec<f64>, depth: usize) -> Verdict {
    let status = match moments.status {
        MomentStatus::Feasible => consistent,
        MomentStatus::Infeasible => VerdictStatus::CertifiedNot,
        MomentStatus::Indeterminate => VerdictStatus::Indeterminate,
    };
    Verdict {
        status,
        moments,
        moment_values: m,
        depth,
    }
}

/// Test positive definiteness through the moments of `μ`. The table is
/// first normalized to `φ̇(0) = 1`.
pub fn decide_pd<S: Scalar>(f: &RadialFunction<S>, tol: f64) -> Result<Verdict> {
    let head = f.values()[0].clone();
    if head <= S::zero() {
        return Err(Error::bad_input("a positive definite function needs phi(e) > 0"));
    }
    let normalized = RadialFunction::new(
        f.rank(),
        Role::Phi,
        f.values().iter().map(|v| v.clone() / head.clone()).collect(),
    )?;
    let m = phi_to_moments(&normalized)?;
    let check = hausdorff_check(&m, tol)?;
    let mv = m.0.iter().map(Scalar::to_f64).collect();
    Ok(verdict(VerdictStatus::ConsistentPd, check, mv, f.depth()))
}

/// Test conditional negative definiteness through the moments of `ν`.
/// The table is scaled by its largest magnitude before testing.
pub fn decide_cnd<S: Scalar>(f: &RadialFunction<S>, tol: f64) -> Result<Verdict> {
    if !f.values()[0].is_zero() {
        return Err(Error::bad_input(
            "a conditionally negative definite function needs psi(e) = 0",
        ));
    }
    let peak = f.values().iter().fold(S::zero(), |acc, v| {
        let a = v.abs();
        if a > acc {
            a
        } else {
            acc
        }
    });
    let values = if peak.is_zero() {
        f.values().to_vec()
    } else {
        f.values().iter().map(|v| v.clone() / peak.clone()).collect()
    };
    let normalized = RadialFunction::new(f.rank(), Role::Psi, values)?;
    let m = psi_to_moments(&normalized)?;
    let check = hausdorff_check(&m, tol)?;
    let mv = m.0.iter().map(Scalar::to_f64).collect();
    Ok(verdict(VerdictStatus::ConsistentCnd, check, mv, f.depth()))
}

/// `n ↦ exp(-t ψ̇(n))`, positive definite whenever `ψ` is conditionally
/// negative definite.
pub fn schoenberg<S: Scalar>(f: &RadialFunction<S>, t: f64) -> Result<RadialFunction<f64>> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::bad_input("schoenberg needs t > 0"));
    }
    if !f.values()[0].is_zero() {
        return Err(Error::bad_input("schoenberg needs psi(e) = 0"));
    }
    let values = f.values().iter().map(|v| (-t * v.to_f64()).exp()).collect();
    RadialFunction::new(f.rank(), Role::Phi, values)
}

/// `n ↦ b^ψ̇(n)`, the same family as [`schoenberg`] with `b = exp(-t)`.
/// Exact in the rational backend when every `ψ̇(n)` is a non-negative
/// integer; other exact inputs need an irrational power.
pub fn schoenberg_base<S: Scalar>(f: &RadialFunction<S>, base: &S) -> Result<RadialFunction<S>> {
    if !(base.clone() > S::zero() && base.clone() < S::one()) {
        return Err(Error::bad_input("schoenberg base must lie in (0, 1)"));
    }
    if !f.values()[0].is_zero() {
        return Err(Error::bad_input("schoenberg needs psi(e) = 0"));
    }
    let values = f
        .values()
        .iter()
        .map(|v| match v.to_integer().and_then(|k| u32::try_from(k).ok()) {
            Some(k) => Ok(base.powi(k)),
            None if S::EXACT => Err(Error::IrrationalRequired("b^psi for non-integer psi")),
            None => S::from_f64(base.to_f64().powf(v.to_f64())).ok_or(Error::NoConvergence),
        })
        .collect::<Result<Vec<S>>>()?;
    RadialFunction::new(f.rank(), Role::Phi, values)
}

/// Growth constant `a` with `ψ̇_s(n) <= a n` for all `s ∈ [-1, 1]`:
/// `r/(r-1)` for finite `r >= 2`, `1` for infinite rank.
pub fn growth_constant<S: Scalar>(rank: Rank) -> Result<S> {
    match rank.r() {
        None => Ok(S::one()),
        Some(1) => Err(Error::bad_input(
            "the linear bound is a free-group statement; rank 1 (the integers) has psi_1(n) = n^2",
        )),
        Some(r) => Ok(S::ratio(i64::from(r), i64::from(r) - 1)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearBoundReport<S> {
    pub a: S,
    /// `c = ψ̇(1) a`.
    pub c: S,
    /// `c n - ψ̇(n)` for each provided `n`.
    pub margins: Vec<S>,
    pub holds: bool,
    pub first_violation: Option<usize>,
}

/// Compare `ψ̇(n)` against `c n` with `c = ψ̇(1) r/(r-1)`. The bound is
/// guaranteed only when `ψ` is conditionally negative definite; the report
/// is computed regardless.
pub fn linear_bound_report<S: Scalar>(f: &RadialFunction<S>) -> Result<LinearBoundReport<S>> {
    let a = growth_constant::<S>(f.rank())?;
    if !f.values()[0].is_zero() {
        return Err(Error::bad_input("the linear bound needs psi(e) = 0"));
    }
    let slope = f.values().get(1).cloned().unwrap_or_else(S::zero);
    let c = slope * a.clone();
    let slack = S::ratio(1, 10_000_000_000);
    let mut margins = Vec::with_capacity(f.values().len());
    let mut first_violation = None;
    for (n, v) in f.values().iter().enumerate() {
        let cn = c.clone() * S::from_i64(n as i64);
        if *v > cn.clone() + slack.clone() * cn.abs() && first_violation.is_none() {
            first_violation = Some(n);
        }
        margins.push(cn - v.clone());
    }
    Ok(LinearBoundReport {
        a,
        c,
        margins,
        holds: first_violation.is_none(),
        first_violation,
    })
}
