//! Brute-force checks on finite Cayley balls.
//!
//! Everything here works with explicit group elements: Gram matrices
//! `(φ(x_k^{-1} x_j))` over a ball, the Schoenberg kernel of a candidate
//! conditionally negative definite function, and literal group-algebra
//! convolution. Independent of the moment machinery, so the two can be
//! checked against each other.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{entry_scale, sym_eigen};
use crate::moments::RadialFunction;
use crate::scalar::Scalar;
use crate::words::{ball, sphere_size, Letter, Rank, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GramVerdict {
    Holds,
    Violated,
}

impl GramVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            GramVerdict::Holds => "holds",
            GramVerdict::Violated => "violated",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GramReport {
    pub radius: usize,
    pub dim: usize,
    /// Smallest eigenvalue of the Gram matrix (or of the Schoenberg kernel).
    pub min_eig: f64,
    pub scale: f64,
    pub verdict: GramVerdict,
    /// Unit eigenvector of `min_eig` when violated.
    pub witness: Option<Vec<f64>>,
}

fn report(radius: usize, m: &DMatrix<f64>, tol: f64) -> Result<GramReport> {
    let scale = entry_scale(m);
    let eig = sym_eigen(m)?;
    let min_eig = eig.min();
    let violated = min_eig < -tol * scale;
    Ok(GramReport {
        radius,
        dim: m.nrows(),
        min_eig,
        scale,
        verdict: if violated {
            GramVerdict::Violated
        } else {
            GramVerdict::Holds
        },
        witness: violated.then(|| eig.vector(0)),
    })
}

fn ball_and_values<S: Scalar>(f: &RadialFunction<S>, radius: usize) -> Result<(Vec<Word>, Vec<f64>)> {
    let needed = 2 * radius + 1;
    if f.values().len() < needed {
        return Err(Error::InsufficientDepth {
            needed,
            got: f.values().len(),
        });
    }
    let words = ball(f.rank(), radius)?;
    Ok((words, f.values().iter().map(Scalar::to_f64).collect()))
}

/// Gram matrix `M[j][k] = φ̇(|x_k^{-1} x_j|)` over `ball(rank, radius)`.
pub fn gram_matrix<S: Scalar>(f: &RadialFunction<S>, radius: usize) -> Result<DMatrix<f64>> {
    let (words, v) = ball_and_values(f, radius)?;
    let d = words.len();
    Ok(DMatrix::from_fn(d, d, |j, k| v[words[k].distance(&words[j])]))
}

/// Positive semidefiniteness of the Gram matrix on the ball.
pub fn gram_pd<S: Scalar>(f: &RadialFunction<S>, radius: usize, tol: f64) -> Result<GramReport> {
    report(radius, &gram_matrix(f, radius)?, tol)
}

/// Conditional negative definiteness on the ball, tested two ways that must
/// agree: the Gram matrix restricted to `Σ c = 0` (basis `e_i - e_0`) is
/// negative semidefinite, and the kernel
/// `K[j][k] = ψ̇(|x_j|) + ψ̇(|x_k|) - ψ̇(|x_k^{-1} x_j|)` is positive
/// semidefinite. The report describes the kernel.
pub fn gram_cnd<S: Scalar>(f: &RadialFunction<S>, radius: usize, tol: f64) -> Result<GramReport> {
    if !f.values()[0].is_zero() {
        return Err(Error::bad_input("gram_cnd needs psi(e) = 0"));
    }
    let (words, v) = ball_and_values(f, radius)?;
    let d = words.len();
    let gram = DMatrix::from_fn(d, d, |j, k| v[words[k].distance(&words[j])]);
    let kernel = DMatrix::from_fn(d, d, |j, k| v[words[j].len()] + v[words[k].len()] - gram[(j, k)]);
    let kernel_report = report(radius, &kernel, tol)?;

    // words[0] is the identity
    let projected = DMatrix::from_fn(d - 1, d - 1, |i, j| {
        gram[(i + 1, j + 1)] - gram[(i + 1, 0)] - gram[(0, j + 1)] + gram[(0, 0)]
    });
    let projected_top = -sym_eigen(&projected)?.max();
    let scale = kernel_report.scale.max(entry_scale(&projected));
    let kernel_floor = kernel_report.min_eig.min(0.0);
    let projected_floor = projected_top.min(0.0);
    let projected_violated = projected_floor < -tol * scale;
    let agree_tol = tol.max(1e-10) * scale;
    if (kernel_floor - projected_floor).abs() > agree_tol
        || projected_violated != (kernel_report.verdict == GramVerdict::Violated)
    {
        return Err(Error::InternalDisagreement {
            kernel: kernel_floor,
            projected: projected_floor,
        });
    }
    Ok(kernel_report)
}

/// Value table of `μ_n`: `1/|E_n|` at length `n`, zero elsewhere.
pub fn sphere_average<S: Scalar>(rank: Rank, n: usize) -> Result<Vec<S>> {
    let size = sphere_size(rank, n)?;
    let size = i64::try_from(size).map_err(|_| Error::Overflow("sphere size"))?;
    let mut table = vec![S::zero(); n + 1];
    table[n] = S::ratio(1, size);
    Ok(table)
}

fn support_degree<S: Scalar>(table: &[S]) -> usize {
    table.iter().rposition(|v| !v.is_zero()).unwrap_or(0)
}

/// Literal convolution `(f * g)(x) = Σ_y f(y) g(y^{-1} x)` of two finitely
/// supported radial functions, evaluated on every word of `ball(rank, radius)`
/// and returned as a table over lengths `0..=radius`. Entries past a table's
/// end are zero.
pub fn radial_convolve<S: Scalar>(rank: Rank, radius: usize, f: &[S], g: &[S]) -> Result<Vec<S>> {
    let (df, dg) = (support_degree(f), support_degree(g));
    if df + dg > radius {
        return Err(Error::InsufficientRadius {
            radius,
            needed: df + dg,
        });
    }
    let xs = ball(rank, radius)?;
    let ys = ball(rank, df)?;
    let mut table: Vec<Option<S>> = vec![None; radius + 1];
    for x in &xs {
        let mut acc = S::zero();
        for y in &ys {
            let fy = &f[y.len()];
            if fy.is_zero() {
                continue;
            }
            if let Some(gv) = g.get(y.distance(x)) {
                acc = acc + fy.clone() * gv.clone();
            }
        }
        match &table[x.len()] {
            None => table[x.len()] = Some(acc),
            Some(prev) if prev.close_to(&acc, 1e-12) => {}
            Some(_) => return Err(Error::NotRadial { length: x.len() }),
        }
    }
    Ok(table
        .into_iter()
        .map(|v| v.expect("every length occurs in the ball"))
        .collect())
}

/// `(ψ∘ρ)(x) = ρ(x)^2` with `ρ` the homomorphism onto the integers sending
/// generator `a_k` to `k`.
pub fn rho_squared(x: &Word) -> i128 {
    let r = x.weighted_exponent_sum();
    r * r
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerRow {
    pub n: usize,
    /// `(ψ∘ρ)(a_1^n) = n^2`
    pub value: i128,
    /// `|a_1^n| = n`
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonradialReport {
    pub gram: GramReport,
    pub powers: Vec<PowerRow>,
}

impl NonradialReport {
    /// Smallest `n` in the table with `(ψ∘ρ)(a_1^n) > c |a_1^n|`.
    pub fn first_violation(&self, c: f64) -> Option<usize> {
        self.powers
            .iter()
            .find(|row| row.value as f64 > c * row.length as f64)
            .map(|row| row.n)
    }
}

/// Schoenberg kernel of the non-radial CND function `ψ∘ρ` over `words`,
/// plus its values on the powers `a_1^n`, `n = 1..=max_power`.
pub fn nonradial_cnd_example(words: &[Word], max_power: usize, tol: f64) -> Result<NonradialReport> {
    let d = words.len();
    let psi: Vec<f64> = words.iter().map(|w| rho_squared(w) as f64).collect();
    let kernel = DMatrix::from_fn(d, d, |j, k| {
        let diff = words[k].inverse().multiply(&words[j]);
        psi[j] + psi[k] - rho_squared(&diff) as f64
    });
    let radius = words.iter().map(Word::len).max().unwrap_or(0);
    let gram = report(radius, &kernel, tol)?;
    let a1 = Letter::pos(1)?;
    let powers = (1..=max_power)
        .map(|n| {
            let x = Word::power(a1, n);
            PowerRow {
                n,
                value: rho_squared(&x),
                length: x.len(),
            }
        })
        .collect();
    Ok(NonradialReport { gram, powers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::Role;
    use crate::scalar::Rational;
    use crate::spherical::{psi_values, spherical_values};

    fn rank(r: u32) -> Rank {
        Rank::finite(r).unwrap()
    }

    fn phi(r: Rank, v: Vec<f64>) -> RadialFunction<f64> {
        RadialFunction::new(r, Role::Phi, v).unwrap()
    }

    #[test]
    fn gram_pd_singular_boundary() {
        let f = phi(rank(2), vec![1.0, 0.5, 0.0]);
        let rep = gram_pd(&f, 1, 1e-9).unwrap();
        assert_eq!(rep.dim, 5);
        assert!(rep.min_eig.abs() <= 1e-12);
        assert_eq!(rep.verdict, GramVerdict::Holds);
        let eig = sym_eigen(&gram_matrix(&f, 1).unwrap()).unwrap();
        for (got, want) in eig.values.iter().zip([0.0, 1.0, 1.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn gram_pd_violation_and_parity() {
        let f = phi(rank(2), vec![1.0, 1.05, 1.0]);
        let rep = gram_pd(&f, 1, 1e-9).unwrap();
        assert!(rep.min_eig <= -0.05 + 1e-12);
        assert_eq!(rep.verdict, GramVerdict::Violated);
        let w = rep.witness.unwrap();
        assert_eq!(w.len(), 5);

        let f = phi(rank(2), vec![1.0, -1.0, 1.0, -1.0, 1.0]);
        assert_eq!(gram_pd(&f, 2, 1e-9).unwrap().verdict, GramVerdict::Holds);

        assert!(matches!(
            gram_pd(&f, 3, 1e-9),
            Err(Error::InsufficientDepth { needed: 7, got: 5 })
        ));
        let inf = phi(Rank::Infinite, vec![1.0; 5]);
        assert!(gram_pd(&inf, 1, 1e-9).is_err());
    }

    #[test]
    fn gram_cnd_examples() {
        let len = RadialFunction::new(rank(2), Role::Psi, (0..5).map(|n| n as f64).collect()).unwrap();
        let rep = gram_cnd(&len, 2, 1e-9).unwrap();
        assert_eq!(rep.verdict, GramVerdict::Holds);
        assert!(rep.min_eig >= -1e-10);

        let bad = RadialFunction::new(rank(2), Role::Psi, vec![0.0, 1.0, 3.0]).unwrap();
        let rep = gram_cnd(&bad, 1, 1e-9).unwrap();
        assert_eq!(rep.verdict, GramVerdict::Violated);
        assert!((rep.min_eig + 1.0).abs() < 1e-12);

        for r in [1, 2, 3] {
            let zero = RadialFunction::new(rank(r), Role::Psi, vec![0.0; 5]).unwrap();
            assert_eq!(gram_cnd(&zero, 2, 1e-9).unwrap().verdict, GramVerdict::Holds);
        }
    }

    #[test]
    fn convolution_reproduces_sphere_recurrence() {
        for r in [2u32, 3] {
            let rk = rank(r);
            let q = 2 * i64::from(r) - 1;
            let mu1 = sphere_average::<Rational>(rk, 1).unwrap();
            for n in 1..=3 {
                let mun = sphere_average::<Rational>(rk, n).unwrap();
                let got = radial_convolve(rk, n + 1, &mu1, &mun).unwrap();
                let mut want = vec![Rational::zero(); n + 2];
                want[n - 1] =
                    Rational::ratio(1, q + 1) * sphere_average::<Rational>(rk, n - 1).unwrap()[n - 1].clone();
                want[n + 1] =
                    Rational::ratio(q, q + 1) * sphere_average::<Rational>(rk, n + 1).unwrap()[n + 1].clone();
                assert_eq!(got, want, "r={r} n={n}");
            }
        }
    }

    #[test]
    fn convolution_unit_and_eigenfunction() {
        let rk = rank(2);
        let delta = vec![1.0];
        let f = vec![0.3, -0.2, 0.7];
        assert_eq!(radial_convolve(rk, 2, &delta, &f).unwrap(), f);

        let s = 0.3;
        let phi_s = spherical_values(rk, &s, 4);
        let mu1 = sphere_average::<f64>(rk, 1).unwrap();
        let got = radial_convolve(rk, 5, &mu1, &phi_s).unwrap();
        for n in 0..=3 {
            assert!((got[n] - s * phi_s[n]).abs() <= 1e-12, "n={n}");
        }
        assert!(matches!(
            radial_convolve(rk, 3, &mu1, &phi_s),
            Err(Error::InsufficientRadius { radius: 3, needed: 5 })
        ));
    }

    #[test]
    fn psi_s_is_cnd_on_small_balls() {
        for i in 0..=10 {
            let s = -1.0 + 0.2 * i as f64;
            let f = RadialFunction::new(rank(2), Role::Psi, psi_values(rank(2), &s, 4)).unwrap();
            assert_eq!(
                gram_cnd(&f, 2, 1e-9).unwrap().verdict,
                GramVerdict::Holds,
                "s={s}"
            );
        }
    }

    #[test]
    fn nonradial_example() {
        let words: Vec<Word> = ["e", "a1", "a2", "a3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let rep = nonradial_cnd_example(&words, 6, 1e-9).unwrap();
        assert_eq!(rep.gram.verdict, GramVerdict::Holds);
        assert_eq!(
            rep.powers[3],
            PowerRow {
                n: 4,
                value: 16,
                length: 4
            }
        );
        assert_eq!(rho_squared(&"a3".parse().unwrap()), 9);
        assert_eq!(rho_squared(&"a1 a2^-1".parse().unwrap()), 1);
        assert_eq!(rep.first_violation(2.0), Some(3));
        assert_eq!(rep.first_violation(10.0), None);
    }
}
