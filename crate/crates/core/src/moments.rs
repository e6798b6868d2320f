//! Radial functions as moment sequences of measures on `[-1, 1]`.
//!
//! A radial positive definite function is `φ̇(n) = ∫ P_n(s) dμ(s)`, so its
//! values are a fixed lower-triangular transform of the power moments of
//! `μ`. The conditionally negative definite side uses
//! `Q_n(s) = (1 - P_n(s)) / (1 - s)` in place of `P_n`. Inverting the
//! transform and testing the truncated Hausdorff conditions on the result
//! either certifies that no representing measure exists or reports the
//! sequence as consistent up to the given depth.

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, gauss_from_jacobi, gauss_legendre};
use crate::scalar::Scalar;
use crate::spherical::{psi_values, spherical_coeff_rows, spherical_values, PolyCoeffs};
use crate::words::Rank;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Float triangular solves fail once rounding can be amplified past this factor.
pub const CONDITION_LIMIT: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Positive definite side, `φ(e) = μ([-1,1])`.
    Phi,
    /// Conditionally negative definite side, `ψ(e) = 0`.
    Psi,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Phi => "phi",
            Role::Psi => "psi",
        }
    }
}

/// A radial function given by its values on word lengths `0..=depth`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction<S> {
    rank: Rank,
    role: Role,
    values: Vec<S>,
}

impl<S: Scalar> RadialFunction<S> {
    pub fn new(rank: Rank, role: Role, values: Vec<S>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::bad_input("a radial function needs at least one value"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::bad_input(format!("value {i} is not finite")));
        }
        if role == Role::Psi && !values[0].is_zero() {
            return Err(Error::bad_input("psi-role values must start with psi(e) = 0"));
        }
        Ok(RadialFunction { rank, role, values })
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    /// Largest word length covered.
    pub fn depth(&self) -> usize {
        self.values.len() - 1
    }

    pub fn to_f64(&self) -> RadialFunction<f64> {
        RadialFunction {
            rank: self.rank,
            role: self.role,
            values: self.values.iter().map(Scalar::to_f64).collect(),
        }
    }

    pub fn map_values(&self, f: impl Fn(&S) -> S) -> Result<Self> {
        Self::new(self.rank, self.role, self.values.iter().map(f).collect())
    }
}

/// Power moments `m_0..m_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence<S>(pub Vec<S>);

impl<S: Scalar> MomentSequence<S> {
    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self) -> f64 {
        self.0.iter().fold(1.0f64, |acc, m| acc.max(m.to_f64().abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Atom<S> {
    pub node: S,
    pub weight: S,
}

/// Finitely many weighted point masses.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AtomicMeasure<S> {
    atoms: Vec<Atom<S>>,
}

impl<S: Scalar> AtomicMeasure<S> {
    /// Weights must be positive and nodes distinct. The support is checked
    /// by the synthesis routines, not here.
    pub fn new(atoms: Vec<Atom<S>>) -> Result<Self> {
        for (i, a) in atoms.iter().enumerate() {
            if !a.node.is_finite() || !a.weight.is_finite() {
                return Err(Error::bad_input(format!("atom {i} is not finite")));
            }
            if a.weight <= S::zero() {
                return Err(Error::bad_input(format!("atom {i} has non-positive weight")));
            }
            if atoms[..i].iter().any(|b| b.node == a.node) {
                return Err(Error::bad_input(format!("atom {i} repeats node {}", a.node)));
            }
        }
        Ok(AtomicMeasure { atoms })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (S, S)>) -> Result<Self> {
        Self::new(
            pairs
                .into_iter()
                .map(|(node, weight)| Atom { node, weight })
                .collect(),
        )
    }

    pub fn atoms(&self) -> &[Atom<S>] {
        &self.atoms
    }

    pub fn total_mass(&self) -> S {
        self.atoms.iter().fold(S::zero(), |acc, a| acc + a.weight.clone())
    }

    /// `∫ s^k dμ` for `k = 0..=depth`.
    pub fn power_moments(&self, depth: usize) -> MomentSequence<S> {
        let mut m = vec![S::zero(); depth + 1];
        for a in &self.atoms {
            let mut p = a.weight.clone();
            for slot in m.iter_mut() {
                *slot = slot.clone() + p.clone();
                p = p * a.node.clone();
            }
        }
        MomentSequence(m)
    }

    fn check_support(&self) -> Result<()> {
        let (lo, hi) = (-S::one(), S::one());
        match self.atoms.iter().find(|a| a.node < lo || a.node > hi) {
            Some(a) => Err(Error::bad_input(format!("node {} lies outside [-1, 1]", a.node))),
            None => Ok(()),
        }
    }
}

/// Forward substitution with `rows[n]` holding the coefficients of the
/// `n`-th basis polynomial (degree `n`, diagonal last).
fn solve_lower<S: Scalar>(rows: &[PolyCoeffs<S>], rhs: &[S]) -> Result<Vec<S>> {
    let mut sol: Vec<S> = Vec::with_capacity(rhs.len());
    let mut worst = 0.0f64;
    for (row, b) in rows.iter().zip(rhs) {
        let n = sol.len();
        let mut acc = b.clone();
        for (c, m) in row.0[..n].iter().zip(&sol) {
            acc = acc - c.clone() * m.clone();
        }
        let x = acc / row.0[n].clone();
        if !S::EXACT {
            let mass: f64 = row.0[..n]
                .iter()
                .zip(&sol)
                .map(|(c, m)| (c.to_f64() * m.to_f64()).abs())
                .sum::<f64>()
                + (row.0[n].to_f64() * x.to_f64()).abs();
            worst = worst.max(mass);
        }
        sol.push(x);
    }
    if !S::EXACT {
        let rhs_scale = rhs.iter().fold(0.0f64, |acc, v| acc.max(v.to_f64().abs()));
        if rhs_scale > 0.0 {
            let amplification = worst / rhs_scale;
            if !amplification.is_finite() || amplification > CONDITION_LIMIT {
                return Err(Error::ConditionLoss {
                    amplification,
                    limit: CONDITION_LIMIT,
                });
            }
        }
    }
    Ok(sol)
}

/// Moments of `μ` with `φ̇(n) = ∫ P_n dμ`.
pub fn phi_to_moments<S: Scalar>(f: &RadialFunction<S>) -> Result<MomentSequence<S>> {
    if f.role != Role::Phi {
        return Err(Error::bad_input("phi_to_moments expects a phi-role function"));
    }
    if f.rank == Rank::Infinite {
        return Ok(MomentSequence(f.values.clone()));
    }
    let rows = spherical_coeff_rows::<S>(f.rank, f.depth());
    solve_lower(&rows, &f.values).map(MomentSequence)
}

/// Coefficients of `Q_1..=Q_depth`, `Q_n = (1 - P_n)/(1 - s)` of degree `n - 1`,
/// by synthetic division. A float remainder above `1e-9` relative is reported.
pub fn psi_quotient_rows<S: Scalar>(rank: Rank, depth: usize) -> Result<Vec<PolyCoeffs<S>>> {
    let p_rows = spherical_coeff_rows::<S>(rank, depth);
    let mut out = Vec::with_capacity(depth);
    for (n, p) in p_rows.iter().enumerate().skip(1) {
        // r(s) = 1 - P_n(s)
        let mut r: Vec<S> = p.0.iter().map(|c| -c.clone()).collect();
        r[0] = r[0].clone() + S::one();
        // r(s) = (s - 1) d(s) + remainder
        let mut d = vec![S::zero(); n];
        let mut carry = S::zero();
        for k in (1..=n).rev() {
            carry = carry + r[k].clone();
            d[k - 1] = carry.clone();
        }
        let remainder = carry + r[0].clone();
        let size: f64 = r.iter().map(|c| c.to_f64().abs()).sum::<f64>().max(1.0);
        let bad = if S::EXACT {
            !remainder.is_zero()
        } else {
            remainder.to_f64().abs() > 1e-9 * size
        };
        if bad {
            return Err(Error::NonzeroRemainder {
                n,
                remainder: remainder.to_f64(),
            });
        }
        out.push(PolyCoeffs(d.into_iter().map(|c| -c).collect()));
    }
    Ok(out)
}

/// Moments of `ν` with `ψ̇(n) = ∫ Q_n dν`; the result has `depth` entries
/// and `m'_0 = ψ̇(1) = ν([-1,1])`.
pub fn psi_to_moments<S: Scalar>(f: &RadialFunction<S>) -> Result<MomentSequence<S>> {
    if !f.values[0].is_zero() {
        return Err(Error::bad_input("psi-role values must start with psi(e) = 0"));
    }
    if f.values.len() < 2 {
        return Err(Error::InsufficientDepth {
            needed: 2,
            got: f.values.len(),
        });
    }
    let rows = psi_quotient_rows::<S>(f.rank, f.depth())?;
    solve_lower(&rows, &f.values[1..]).map(MomentSequence)
}

/// The matrices whose positive semidefiniteness is necessary for a
/// measure on `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMatrix {
    /// `(m_{i+j})`
    Hankel,
    /// `(m_{i+j} - m_{i+j+1})`, weight `1 - s`
    LocalizerMinus,
    /// `(m_{i+j} + m_{i+j+1})`, weight `1 + s`
    LocalizerPlus,
    /// `(m_{i+j} - m_{i+j+2})`, weight `1 - s^2`
    LocalizerSquare,
}

impl MomentMatrix {
    pub fn name(self) -> &'static str {
        match self {
            MomentMatrix::Hankel => "hankel",
            MomentMatrix::LocalizerMinus => "localizer(1-s)",
            MomentMatrix::LocalizerPlus => "localizer(1+s)",
            MomentMatrix::LocalizerSquare => "localizer(1-s^2)",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            Self::Hankel,
            Self::LocalizerMinus,
            Self::LocalizerPlus,
            Self::LocalizerSquare,
        ]
        .into_iter()
        .find(|m| m.name() == name)
    }

    /// Side length for a sequence `m_0..m_last`, or `None` if it does not fit.
    fn size(self, last: usize) -> Option<usize> {
        let shrink = match self {
            MomentMatrix::Hankel => 0,
            MomentMatrix::LocalizerMinus | MomentMatrix::LocalizerPlus => 1,
            MomentMatrix::LocalizerSquare => 2,
        };
        last.checked_sub(shrink).map(|top| top / 2 + 1)
    }

    fn build(self, m: &[f64], size: usize) -> DMatrix<f64> {
        DMatrix::from_fn(size, size, |i, j| {
            let k = i + j;
            match self {
                MomentMatrix::Hankel => m[k],
                MomentMatrix::LocalizerMinus => m[k] - m[k + 1],
                MomentMatrix::LocalizerPlus => m[k] + m[k + 1],
                MomentMatrix::LocalizerSquare => m[k] - m[k + 2],
            }
        })
    }
}

impl fmt::Display for MomentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentStatus {
    /// Every tested matrix is PSD within tolerance: consistent to this depth.
    Feasible,
    /// Some matrix has a negative eigenvalue: no representing measure exists.
    Infeasible,
    /// The eigenvalue computation itself failed.
    Indeterminate,
}

impl MomentStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            MomentStatus::Feasible => "Feasible",
            MomentStatus::Infeasible => "Infeasible",
            MomentStatus::Indeterminate => "Indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixFloor {
    pub matrix: MomentMatrix,
    pub dim: usize,
    pub min_eig: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentVerdict {
    pub status: MomentStatus,
    /// The most negative tested matrix when infeasible.
    pub witness: Option<MatrixFloor>,
    pub floors: Vec<MatrixFloor>,
    pub scale: f64,
    pub tol: f64,
}

/// Truncated Hausdorff test on `[-1, 1]`.
pub fn hausdorff_check<S: Scalar>(m: &MomentSequence<S>, tol: f64) -> Result<MomentVerdict> {
    if m.is_empty() {
        return Err(Error::bad_input("empty moment sequence"));
    }
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::bad_input("tolerance must be a finite non-negative number"));
    }
    let mf: Vec<f64> = m.0.iter().map(Scalar::to_f64).collect();
    let scale = m.scale();
    let last = mf.len() - 1;
    let mut floors = Vec::new();
    let mut status = MomentStatus::Feasible;
    for kind in [
        MomentMatrix::Hankel,
        MomentMatrix::LocalizerMinus,
        MomentMatrix::LocalizerPlus,
        MomentMatrix::LocalizerSquare,
    ] {
        let Some(size) = kind.size(last) else { continue };
        match linalg::sym_eigen(&kind.build(&mf, size)) {
            Ok(eig) => floors.push(MatrixFloor {
                matrix: kind,
                dim: size,
                min_eig: eig.min(),
            }),
            Err(Error::NoConvergence) => status = MomentStatus::Indeterminate,
            Err(e) => return Err(e),
        }
    }
    let witness = floors
        .iter()
        .filter(|f| f.min_eig < -tol * scale)
        .min_by(|a, b| a.min_eig.total_cmp(&b.min_eig))
        .copied();
    if witness.is_some() {
        status = MomentStatus::Infeasible;
    }
    Ok(MomentVerdict {
        status,
        witness,
        floors,
        scale,
        tol,
    })
}

/// `φ̇(n) = Σ w_i φ̇_{s_i}(n)`.
pub fn synthesize_phi<S: Scalar>(
    rank: Rank,
    measure: &AtomicMeasure<S>,
    depth: usize,
) -> Result<RadialFunction<S>> {
    measure.check_support()?;
    let mut values = vec![S::zero(); depth + 1];
    for a in &measure.atoms {
        for (v, p) in values.iter_mut().zip(spherical_values(rank, &a.node, depth)) {
            *v = v.clone() + a.weight.clone() * p;
        }
    }
    RadialFunction::new(rank, Role::Phi, values)
}

/// `ψ̇(n) = Σ w_i ψ̇_{s_i}(n)`, the `s = 1` atom contributing `ψ̇_1`.
pub fn synthesize_psi<S: Scalar>(
    rank: Rank,
    measure: &AtomicMeasure<S>,
    depth: usize,
) -> Result<RadialFunction<S>> {
    measure.check_support()?;
    let mut values = vec![S::zero(); depth + 1];
    for a in &measure.atoms {
        for (v, p) in values.iter_mut().zip(psi_values(rank, &a.node, depth)) {
            *v = v.clone() + a.weight.clone() * p;
        }
    }
    RadialFunction::new(rank, Role::Psi, values)
}

/// Three-term recurrence coefficients `(alpha_j, beta_j)`, `j < k`, of the
/// monic orthogonal polynomials of the moment functional (Chebyshev
/// algorithm on raw moments). `beta_0 = m_0`.
fn recurrence_from_moments<S: Scalar>(m: &[S], k: usize, tol: f64) -> Result<(Vec<S>, Vec<S>)> {
    let scale = m.iter().fold(1.0f64, |acc, v| acc.max(v.to_f64().abs()));
    let positive = |v: &S, order: usize| -> Result<()> {
        if v.to_f64() > tol * scale && *v > S::zero() {
            Ok(())
        } else {
            Err(Error::SingularMoments { order })
        }
    };
    let len = 2 * k;
    positive(&m[0], 0)?;
    let mut alpha = vec![m[1].clone() / m[0].clone()];
    let mut beta = vec![m[0].clone()];
    let mut older: Vec<S> = vec![S::zero(); len];
    let mut prev: Vec<S> = m[..len].to_vec();
    for j in 1..k {
        let mut cur = vec![S::zero(); len];
        for l in j..(len - j) {
            cur[l] = prev[l + 1].clone()
                - alpha[j - 1].clone() * prev[l].clone()
                - beta[j - 1].clone() * older[l].clone();
        }
        positive(&cur[j], j)?;
        alpha.push(cur[j + 1].clone() / cur[j].clone() - prev[j].clone() / prev[j - 1].clone());
        beta.push(cur[j].clone() / prev[j - 1].clone());
        older = prev;
        prev = cur;
    }
    Ok((alpha, beta))
}

/// A `k`-point Gauss rule reproducing `m_0..m_{2k-1}`: nodes are the
/// eigenvalues of the Jacobi matrix built from the moments, weights
/// `m_0 v_0^2`. Exact for the rational backend when `k <= 2` and the
/// nodes are rational.
pub fn atoms_from_moments<S: Scalar>(m: &MomentSequence<S>, k: usize) -> Result<AtomicMeasure<S>> {
    if k == 0 {
        return Err(Error::bad_input("need at least one atom"));
    }
    if m.len() < 2 * k {
        return Err(Error::InsufficientDepth {
            needed: 2 * k,
            got: m.len(),
        });
    }
    let (alpha, beta) = recurrence_from_moments(&m.0, k, DEFAULT_TOL)?;
    let m0 = m.0[0].clone();
    let mut pairs: Vec<(S, S)> = match k {
        1 => vec![(alpha[0].clone(), m0)],
        2 => {
            let gap = alpha[0].clone() - alpha[1].clone();
            let disc = gap.clone() * gap + S::from_i64(4) * beta[1].clone();
            match disc.sqrt() {
                Some(root) => {
                    let two = S::from_i64(2);
                    let sum = alpha[0].clone() + alpha[1].clone();
                    let x1 = (sum.clone() - root.clone()) / two.clone();
                    let x2 = (sum + root) / two;
                    let w1 = (m.0[1].clone() - m0.clone() * x2.clone()) / (x1.clone() - x2.clone());
                    let w2 = m0 - w1.clone();
                    vec![(x1, w1), (x2, w2)]
                }
                None => float_gauss(&alpha, &beta)?,
            }
        }
        _ => float_gauss(&alpha, &beta)?,
    };
    if !S::EXACT {
        for (x, _) in pairs.iter_mut() {
            *x = S::from_f64(snap_endpoint(x.to_f64())).expect("finite node");
        }
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
    AtomicMeasure::from_pairs(pairs)
}

/// Rounding can push an endpoint atom just past ±1; pull it back.
fn snap_endpoint(x: f64) -> f64 {
    if x.abs() > 1.0 && x.abs() - 1.0 <= 1e-9 {
        x.signum()
    } else {
        x
    }
}

fn float_gauss<S: Scalar>(alpha: &[S], beta: &[S]) -> Result<Vec<(S, S)>> {
    let a: Vec<f64> = alpha.iter().map(Scalar::to_f64).collect();
    let b: Vec<f64> = beta[1..].iter().map(Scalar::to_f64).collect();
    gauss_from_jacobi(&a, &b, beta[0].to_f64())?
        .into_iter()
        .map(|(x, w)| (snap_endpoint(x), w))
        .map(|(x, w)| match (S::from_f64(x), S::from_f64(w)) {
            (Some(x), Some(w)) => Ok((x, w)),
            _ => Err(Error::NoConvergence),
        })
        .collect()
}

/// Discretize `density(s) ds` on `[-1, 1]` with an `npoints` Gauss-Legendre
/// rule. Zero-density nodes are dropped.
pub fn density_to_atoms(density: impl Fn(f64) -> f64, npoints: usize) -> Result<AtomicMeasure<f64>> {
    if npoints == 0 {
        return Err(Error::bad_input("npoints must be at least 1"));
    }
    let mut pairs = Vec::with_capacity(npoints);
    for (x, w) in gauss_legendre(npoints)? {
        let d = density(x);
        if !d.is_finite() || d < 0.0 {
            return Err(Error::bad_input(format!(
                "density({x}) = {d} is not a non-negative number"
            )));
        }
        if d > 0.0 {
            pairs.push((x, w * d));
        }
    }
    AtomicMeasure::from_pairs(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn qs(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| q(n, d)).collect()
    }

    fn rank(r: u32) -> Rank {
        Rank::finite(r).unwrap()
    }

    fn phi(r: Rank, v: Vec<Rational>) -> RadialFunction<Rational> {
        RadialFunction::new(r, Role::Phi, v).unwrap()
    }

    fn psi(r: Rank, v: Vec<Rational>) -> RadialFunction<Rational> {
        RadialFunction::new(r, Role::Psi, v).unwrap()
    }

    #[test]
    fn phi_to_moments_examples() {
        let f = phi(rank(2), qs(&[(1, 1), (1, 2), (0, 1)]));
        assert_eq!(phi_to_moments(&f).unwrap().0, qs(&[(1, 1), (1, 2), (1, 4)]));
        let f = RadialFunction::new(Rank::Infinite, Role::Phi, vec![1.0, 0.3, 0.09]).unwrap();
        assert_eq!(phi_to_moments(&f).unwrap().0, vec![1.0, 0.3, 0.09]);
        let f = phi(rank(1), qs(&[(1, 1), (0, 1), (-1, 1)]));
        assert_eq!(phi_to_moments(&f).unwrap().0, qs(&[(1, 1), (0, 1), (0, 1)]));
    }

    #[test]
    fn psi_to_moments_examples() {
        let f = psi(rank(2), qs(&[(0, 1), (1, 1), (2, 1)]));
        assert_eq!(psi_to_moments(&f).unwrap().0, qs(&[(1, 1), (1, 2)]));
        let f = psi(rank(2), qs(&[(0, 1), (1, 1), (2, 1), (3, 1)]));
        assert_eq!(psi_to_moments(&f).unwrap().0, qs(&[(1, 1), (1, 2), (5, 8)]));
        let f = psi(Rank::Infinite, (0..8).map(Rational::from_i64).collect());
        assert_eq!(psi_to_moments(&f).unwrap().0, vec![Rational::one(); 7]);
    }

    #[test]
    fn psi_to_moments_input_errors() {
        let f = psi(rank(2), vec![Rational::zero()]);
        assert!(matches!(psi_to_moments(&f), Err(Error::InsufficientDepth { .. })));
        let g = phi(rank(2), qs(&[(1, 1), (1, 2)]));
        assert!(matches!(psi_to_moments(&g), Err(Error::BadInput(_))));
        assert!(RadialFunction::new(rank(2), Role::Psi, qs(&[(1, 1), (1, 1)])).is_err());
        assert!(RadialFunction::new(rank(2), Role::Phi, vec![1.0, f64::NAN]).is_err());
        assert!(RadialFunction::<f64>::new(rank(2), Role::Phi, vec![]).is_err());
    }

    #[test]
    fn quotient_rows_divide_exactly() {
        let expected = qs(&[(1, 1), (16, 9), (16, 9)]);
        let rows = psi_quotient_rows::<Rational>(rank(2), 3).unwrap();
        assert_eq!(rows[2].0, expected);
        for r in [1, 2, 3, 5] {
            let rows = psi_quotient_rows::<Rational>(rank(r), 30).unwrap();
            for (i, row) in rows.iter().enumerate() {
                assert_eq!(row.degree(), i);
            }
        }
    }

    #[test]
    fn hausdorff_examples() {
        let v = hausdorff_check(&MomentSequence(vec![1.0, 0.0, 1.0]), DEFAULT_TOL).unwrap();
        assert_eq!(v.status, MomentStatus::Feasible);
        assert!(v.witness.is_none());

        let v = hausdorff_check(&MomentSequence(vec![1.0, 0.0, 2.0]), DEFAULT_TOL).unwrap();
        assert_eq!(v.status, MomentStatus::Infeasible);
        assert_eq!(v.witness.unwrap().matrix, MomentMatrix::LocalizerSquare);

        let v = hausdorff_check(&MomentSequence(vec![1.0, 1.0, 0.5]), DEFAULT_TOL).unwrap();
        assert_eq!(v.status, MomentStatus::Infeasible);
        let hankel = v
            .floors
            .iter()
            .find(|f| f.matrix == MomentMatrix::Hankel)
            .unwrap();
        assert!(hankel.min_eig < 0.0);

        assert!(hausdorff_check(&MomentSequence::<f64>(vec![]), DEFAULT_TOL).is_err());
        let v = hausdorff_check(&MomentSequence(vec![2.0]), DEFAULT_TOL).unwrap();
        assert_eq!(v.status, MomentStatus::Feasible);
        assert_eq!(v.floors.len(), 1);
    }

    #[test]
    fn hausdorff_rejects_node_outside_support() {
        let m = AtomicMeasure::from_pairs([(1.3, 1.0)]).unwrap().power_moments(6);
        let v = hausdorff_check(&m, DEFAULT_TOL).unwrap();
        assert_eq!(v.status, MomentStatus::Infeasible);
        assert_ne!(v.witness.unwrap().matrix, MomentMatrix::Hankel);
    }

    #[test]
    fn synthesize_examples() {
        let half = AtomicMeasure::from_pairs([(q(1, 2), Rational::one())]).unwrap();
        let f = synthesize_phi(rank(2), &half, 3).unwrap();
        assert_eq!(f.values(), qs(&[(1, 1), (1, 2), (0, 1), (-1, 6)]).as_slice());
        for r in [rank(1), rank(3), Rank::Infinite] {
            let c = AtomicMeasure::from_pairs([(Rational::one(), q(7, 3))]).unwrap();
            let f = synthesize_phi(r, &c, 6).unwrap();
            assert!(f.values().iter().all(|v| *v == q(7, 3)));
        }
        let pm = AtomicMeasure::from_pairs([(q(-1, 1), q(1, 2)), (q(1, 1), q(1, 2))]).unwrap();
        let f = synthesize_phi(Rank::Infinite, &pm, 5).unwrap();
        assert_eq!(
            f.values(),
            qs(&[(1, 1), (0, 1), (1, 1), (0, 1), (1, 1), (0, 1)]).as_slice()
        );

        let f = synthesize_psi(rank(2), &half, 2).unwrap();
        assert_eq!(f.values(), qs(&[(0, 1), (1, 1), (2, 1)]).as_slice());
        let w = AtomicMeasure::from_pairs([(q(-3, 7), q(5, 2))]).unwrap();
        assert_eq!(synthesize_psi(rank(3), &w, 4).unwrap().values()[1], q(5, 2));
        let one = AtomicMeasure::from_pairs([(Rational::one(), Rational::one())]).unwrap();
        let f = synthesize_psi(rank(2), &one, 3).unwrap();
        assert_eq!(f.values(), qs(&[(0, 1), (1, 1), (8, 3), (41, 9)]).as_slice());

        let outside = AtomicMeasure::from_pairs([(1.3, 1.0)]).unwrap();
        assert!(matches!(
            synthesize_phi(rank(2), &outside, 3),
            Err(Error::BadInput(_))
        ));
        assert!(matches!(
            synthesize_psi(rank(2), &outside, 3),
            Err(Error::BadInput(_))
        ));
    }

    #[test]
    fn measure_validation() {
        assert!(AtomicMeasure::from_pairs([(0.5, 0.0)]).is_err());
        assert!(AtomicMeasure::from_pairs([(0.5, 1.0), (0.5, 2.0)]).is_err());
        assert!(AtomicMeasure::from_pairs([(f64::NAN, 1.0)]).is_err());
        assert_eq!(AtomicMeasure::<f64>::default().total_mass(), 0.0);
    }

    #[test]
    fn atoms_from_moments_examples() {
        let m = MomentSequence(qs(&[(1, 1), (0, 1), (1, 1), (0, 1)]));
        let mu = atoms_from_moments(&m, 2).unwrap();
        let got: Vec<_> = mu
            .atoms()
            .iter()
            .map(|a| (a.node.clone(), a.weight.clone()))
            .collect();
        assert_eq!(got, vec![(q(-1, 1), q(1, 2)), (q(1, 1), q(1, 2))]);

        let m = MomentSequence(qs(&[(1, 1), (1, 2), (1, 4)]));
        let mu = atoms_from_moments(&m, 1).unwrap();
        assert_eq!(
            mu.atoms(),
            &[Atom {
                node: q(1, 2),
                weight: q(1, 1)
            }]
        );

        let mu = atoms_from_moments(&MomentSequence(vec![2.0, 0.0]), 1).unwrap();
        assert_eq!(
            mu.atoms(),
            &[Atom {
                node: 0.0,
                weight: 2.0
            }]
        );
    }

    #[test]
    fn atoms_from_moments_errors() {
        // one atom: second Hankel block is singular
        let m = AtomicMeasure::from_pairs([(0.25, 1.0)]).unwrap().power_moments(5);
        assert_eq!(
            atoms_from_moments(&m, 2),
            Err(Error::SingularMoments { order: 1 })
        );
        assert!(matches!(
            atoms_from_moments(&MomentSequence(vec![1.0, 0.0]), 2),
            Err(Error::InsufficientDepth { .. })
        ));
        assert!(atoms_from_moments(&MomentSequence(vec![1.0, 0.0]), 0).is_err());
    }

    #[test]
    fn atoms_from_moments_three_atoms() {
        let mu = AtomicMeasure::from_pairs([(-0.7, 0.2), (0.1, 0.5), (0.9, 0.3)]).unwrap();
        let got = atoms_from_moments(&mu.power_moments(5), 3).unwrap();
        for (a, b) in got.atoms().iter().zip(mu.atoms()) {
            assert!((a.node - b.node).abs() < 1e-10);
            assert!((a.weight - b.weight).abs() < 1e-10);
        }
    }

    #[test]
    fn endpoint_atoms_come_back_inside_the_interval() {
        let mu = AtomicMeasure::from_pairs([(-1.0, 1.0), (-0.2, 0.75), (0.5, 0.25)]).unwrap();
        let f = synthesize_phi(rank(2), &mu, 8).unwrap();
        let got = atoms_from_moments(&phi_to_moments(&f).unwrap(), 3).unwrap();
        assert!(got.atoms().iter().all(|a| (-1.0..=1.0).contains(&a.node)));
        assert!(synthesize_phi(rank(2), &got, 8).is_ok());
        let far = AtomicMeasure::from_pairs([(1.3, 1.0)]).unwrap();
        assert_eq!(
            atoms_from_moments(&far.power_moments(2), 1).unwrap().atoms()[0].node,
            1.3
        );
    }

    #[test]
    fn density_examples() {
        let mu = density_to_atoms(|_| 0.5, 5).unwrap();
        assert!((mu.total_mass() - 1.0).abs() < 1e-12);
        let m2: f64 = mu.atoms().iter().map(|a| a.weight * a.node * a.node).sum();
        assert!((m2 - 1.0 / 3.0).abs() < 1e-12);
        let mu = density_to_atoms(|s| (s * s).max(0.0), 8).unwrap();
        assert!((mu.total_mass() - 2.0 / 3.0).abs() < 1e-10);
        assert!(density_to_atoms(|s| s, 4).is_err());
        assert!(density_to_atoms(|_| 1.0, 0).is_err());
    }

    #[test]
    fn float_condition_loss_is_flagged() {
        let mu = AtomicMeasure::from_pairs([(0.3, 1.0), (-0.8, 0.5)]).unwrap();
        let f = synthesize_phi(rank(2), &mu, 60).unwrap();
        assert!(matches!(phi_to_moments(&f), Err(Error::ConditionLoss { .. })));
        let exact = AtomicMeasure::from_pairs([(q(3, 10), q(1, 1)), (q(-4, 5), q(1, 2))]).unwrap();
        let f = synthesize_phi(rank(2), &exact, 60).unwrap();
        assert_eq!(phi_to_moments(&f).unwrap(), exact.power_moments(60));
    }
}
