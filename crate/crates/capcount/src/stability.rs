//! Real-rootedness and stability testing.
//!
//! A univariate real polynomial is real-rooted iff the Hankel matrix of its
//! root power sums is positive semidefinite (Hermite-Sylvester). The power
//! sums come from the coefficients alone via the Newton-Girard recurrence,
//! so no root finding happens anywhere in this module.
//!
//! Multivariate stability is only ever falsified here: random line
//! restrictions that fail the univariate test are counterexamples, while
//! surviving all trials proves nothing. Positive certificates come
//! exclusively from the closure constructions at the bottom of the module.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::FieldCoefficient;
use crate::error::{Error, Result};
use crate::poly::{SparsePolynomial, UnivariatePoly};

/// Relative tolerance for the numeric positive-semidefiniteness test.
/// Repeated roots make the Hankel matrix exactly singular, so the test must
/// accept rank-deficient matrices; the tolerance errs toward declaring
/// real-rooted at the boundary.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

/// Default number of random line restrictions in [`stability_test`].
pub const DEFAULT_TRIALS: u32 = 64;

/// Power sums `m_0, ..., m_{2d-2}` of the roots (with multiplicity) of a
/// non-constant polynomial of degree d, computed from the coefficients only
/// via Newton-Girard on the monic normalization.
pub fn power_sums<C: FieldCoefficient>(p: &UnivariatePoly<C>) -> Result<Vec<C>> {
    if p.is_zero() || p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let d = p.degree();
    let lead = p.coeff(d);
    // e_k = (-1)^k a_{d-k} / a_d, zero past the degree
    let elem: Vec<C> = (0..=d)
        .map(|k| {
            let v = p.coeff(d - k) / lead.clone();
            if k % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    let mut ms: Vec<C> = Vec::with_capacity(2 * d - 1);
    ms.push(C::from_u64(d as u64));
    for k in 1..=(2 * d - 2) {
        // m_k = sum_{j=1}^{min(k,d)} (-1)^{j-1} e_j m_{k-j}  (+ the k e_k
        // correction term when k <= d)
        let mut acc = C::zero();
        for j in 1..=k.min(d) {
            if j == k {
                continue;
            }
            let term = elem[j].clone() * ms[k - j].clone();
            acc = if j % 2 == 1 { acc + term } else { acc - term };
        }
        if k <= d {
            let term = elem[k].clone() * C::from_u64(k as u64);
            acc = if k % 2 == 1 { acc + term } else { acc - term };
        }
        ms.push(acc);
    }
    Ok(ms)
}

/// The d x d matrix `(m_{i+j-2})` of root power sums.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelMatrix<C> {
    d: usize,
    entries: Vec<Vec<C>>,
}

impl<C: FieldCoefficient> HankelMatrix<C> {
    /// Build from `m_0..m_{2d-2}` (odd length).
    pub fn from_power_sums(ms: &[C]) -> Self {
        assert!(ms.len() % 2 == 1, "need m_0..m_{{2d-2}}");
        let d = ms.len().div_ceil(2);
        let entries = (0..d)
            .map(|i| (0..d).map(|j| ms[i + j].clone()).collect())
            .collect();
        HankelMatrix { d, entries }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn entry(&self, i: usize, j: usize) -> &C {
        &self.entries[i][j]
    }

    /// Exact positive-semidefiniteness by symmetric Gaussian elimination
    /// with diagonal pivoting: a zero pivot forces its whole remaining row
    /// to vanish, otherwise the matrix is indefinite. Only meaningful for
    /// exact coefficient types.
    pub fn is_psd_exact(&self) -> bool {
        let mut a = self.entries.clone();
        let d = self.d;
        for k in 0..d {
            let pivot = a[k][k].clone();
            if pivot.is_negative() {
                return false;
            }
            if pivot.is_zero() {
                if (k + 1..d).any(|j| !a[k][j].is_zero()) {
                    return false;
                }
                continue;
            }
            for i in k + 1..d {
                let factor = a[i][k].clone() / pivot.clone();
                for j in k..d {
                    let delta = factor.clone() * a[k][j].clone();
                    a[i][j] = a[i][j].clone() - delta;
                }
            }
        }
        true
    }
}

impl HankelMatrix<f64> {
    /// Numeric positive-semidefiniteness: every pivot must stay above
    /// `-tol * scale` where scale is the largest absolute entry; pivots
    /// within tolerance of zero are treated as zero and skipped.
    pub fn is_psd(&self, tol: f64) -> bool {
        let d = self.d;
        let scale = self
            .entries
            .iter()
            .flatten()
            .fold(1.0f64, |m, &x| m.max(x.abs()));
        let cutoff = tol * scale;
        let mut a = self.entries.clone();
        for k in 0..d {
            let pivot = a[k][k];
            if pivot < -cutoff {
                return false;
            }
            if pivot <= cutoff {
                continue;
            }
            for i in k + 1..d {
                let factor = a[i][k] / pivot;
                for j in k..d {
                    a[i][j] -= factor * a[k][j];
                }
            }
        }
        true
    }
}

/// Numeric real-rootedness via Hermite-Sylvester. Constant polynomials
/// (including zero) are vacuously real-rooted.
pub fn is_real_rooted(p: &UnivariatePoly<f64>, tol: f64) -> bool {
    if p.is_zero() || p.degree() == 0 {
        return true;
    }
    let ms = power_sums(p).expect("non-constant by the check above");
    HankelMatrix::from_power_sums(&ms).is_psd(tol)
}

/// Exact real-rootedness via Hermite-Sylvester over the rationals.
pub fn is_real_rooted_exact(p: &UnivariatePoly<BigRational>) -> bool {
    if p.is_zero() || p.degree() == 0 {
        return true;
    }
    let ms = power_sums(p).expect("non-constant by the check above");
    HankelMatrix::from_power_sums(&ms).is_psd_exact()
}

/// A line `x = v + t u` witnessing a non-real-rooted restriction.
#[derive(Debug, Clone, PartialEq)]
pub struct LineWitness {
    pub base: Vec<f64>,
    pub direction: Vec<f64>,
}

/// Verdict of [`stability_test`]. `NotFalsified` is one-sided: surviving
/// the Monte-Carlo trials certifies nothing.
#[derive(Debug, Clone, PartialEq)]
pub enum StabilityVerdict {
    /// Univariate input decided directly by Hermite-Sylvester.
    CertifiedRealRooted,
    /// Some restriction failed the real-rootedness test.
    CertifiedNotStable { witness: LineWitness },
    /// Every sampled restriction was real-rooted.
    NotFalsified { trials: u32 },
}

impl StabilityVerdict {
    pub fn is_falsified(&self) -> bool {
        matches!(self, StabilityVerdict::CertifiedNotStable { .. })
    }
}

/// Randomized one-sided stability test: draw `v` uniformly from `[-1,1]^n`
/// and `u` from `[0.1,1.1]^n` (trial i is seeded with `seed ^ i`, so results
/// are reproducible regardless of scheduling), restrict to the line and test
/// real-rootedness. Identically-zero restrictions are re-drawn against a
/// budget of `10 * trials`.
pub fn stability_test(
    p: &SparsePolynomial<f64>,
    trials: u32,
    seed: u64,
) -> Result<StabilityVerdict> {
    if trials == 0 {
        return Err(Error::OutOfRange("trials must be >= 1".into()));
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.n_vars();
    if n == 0 {
        return Ok(StabilityVerdict::CertifiedRealRooted);
    }
    if n == 1 {
        let uni = p.to_univariate()?;
        return Ok(if is_real_rooted(&uni, DEFAULT_PSD_TOL) {
            StabilityVerdict::CertifiedRealRooted
        } else {
            StabilityVerdict::CertifiedNotStable {
                witness: LineWitness {
                    base: vec![0.0],
                    direction: vec![1.0],
                },
            }
        });
    }

    let budget = 10 * trials as usize;
    let mut redraws = 0usize;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(trial));
        let g = loop {
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            let u: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..=1.1)).collect();
            let g = p.restrict_to_line(&v, &u)?;
            if !g.is_zero() {
                break (g, v, u);
            }
            redraws += 1;
            if redraws >= budget {
                return Err(Error::RestrictionBudgetExhausted { attempts: redraws });
            }
        };
        let (restricted, v, u) = g;
        if !is_real_rooted(&restricted, DEFAULT_PSD_TOL) {
            return Ok(StabilityVerdict::CertifiedNotStable {
                witness: LineWitness {
                    base: v,
                    direction: u,
                },
            });
        }
    }
    Ok(StabilityVerdict::NotFalsified { trials })
}

/// The constructions known to produce real stable polynomials. These are
/// the only positive stability certificates in the crate; the bound logic
/// never trusts a Monte-Carlo pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureConstruction {
    /// Products of linear forms with positive coefficients, covering the
    /// graph polynomial and the bipartite counting polynomial.
    ProductOfPositiveLinearForms,
    /// Real substitution into a stable polynomial.
    RealSubstitutionOfStable,
    /// Partial derivative of a stable polynomial.
    PartialDerivativeOfStable,
    /// Coefficient slice of a stable polynomial (iterated inversion,
    /// derivative and substitution).
    CoefficientSliceOfStable,
}

impl ClosureConstruction {
    pub const ALL: [ClosureConstruction; 4] = [
        ClosureConstruction::ProductOfPositiveLinearForms,
        ClosureConstruction::RealSubstitutionOfStable,
        ClosureConstruction::PartialDerivativeOfStable,
        ClosureConstruction::CoefficientSliceOfStable,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            ClosureConstruction::ProductOfPositiveLinearForms => {
                "product-of-positive-linear-forms"
            }
            ClosureConstruction::RealSubstitutionOfStable => "real-substitution-of-stable",
            ClosureConstruction::PartialDerivativeOfStable => "partial-derivative-of-stable",
            ClosureConstruction::CoefficientSliceOfStable => "coefficient-slice-of-stable",
        }
    }
}

impl fmt::Display for ClosureConstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ClosureConstruction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClosureConstruction::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::UnknownConstruction(s.to_string()))
    }
}

/// Analytic stability certificate: every construction in
/// [`ClosureConstruction`] preserves (or establishes) real stability, so
/// the answer is always `true`. The value of the function is that call
/// sites have to name the construction they rely on.
pub fn certify_by_closure(construction: ClosureConstruction) -> bool {
    match construction {
        ClosureConstruction::ProductOfPositiveLinearForms
        | ClosureConstruction::RealSubstitutionOfStable
        | ClosureConstruction::PartialDerivativeOfStable
        | ClosureConstruction::CoefficientSliceOfStable => true,
    }
}
