//! Capacity `cap_alpha(P) = inf_{x > 0} P(x) / prod x_i^alpha_i`.
//!
//! The substitution `x_i = exp(y_i)` turns the quotient into the convex
//! objective `log sum_m c_m exp(<m, y>) - <alpha, y>`, minimized by gradient
//! descent with Armijo backtracking. Whether the infimum is zero, attained,
//! or approached on the boundary of the positive orthant is decided ahead
//! of time, exactly, from the position of `alpha` relative to the Newton
//! polytope:
//!
//! * outside the polytope the infimum is 0;
//! * in the relative interior the minimum is attained and the optimizer
//!   converges to it;
//! * on the relative boundary the infimum equals the capacity of the
//!   polynomial restricted to the minimal face containing `alpha` (the
//!   restriction is dominated pointwise and reached in the limit along a
//!   supporting direction), so the solver recurses onto that face, where
//!   `alpha` is relatively interior again and the optimizer converges.
//!
//! The face is found from the exact dual of the membership LP, so boundary
//! capacities come out as accurate as interior ones instead of depending on
//! how far a diverging iterate was allowed to run.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::bounds::g_factor;
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::poly::{ExponentVector, SparsePolynomial};
use crate::simplex::{solve_min, LpOutcome};

/// Default gradient-norm stopping tolerance.
pub const DEFAULT_GRAD_TOL: f64 = 1e-9;

/// Default iteration cap for the optimizer.
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// A capacity instance: a nonzero polynomial with non-negative coefficients
/// and a non-negative exponent vector (integrality is not required).
#[derive(Debug, Clone)]
pub struct CapacityProblem {
    poly: SparsePolynomial<f64>,
    alpha: Vec<f64>,
}

impl CapacityProblem {
    pub fn new(poly: SparsePolynomial<f64>, alpha: Vec<f64>) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if alpha.len() != poly.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: poly.n_vars(),
                got: alpha.len(),
            });
        }
        if let Some(i) = alpha.iter().position(|a| !a.is_finite() || *a < 0.0) {
            return Err(Error::OutOfRange(format!(
                "alpha[{i}] must be finite and non-negative, got {}",
                alpha[i]
            )));
        }
        if poly.terms().any(|(_, c)| !c.is_finite()) {
            return Err(Error::ObjectiveOverflow);
        }
        Ok(CapacityProblem { poly, alpha })
    }

    pub fn poly(&self) -> &SparsePolynomial<f64> {
        &self.poly
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }
}

/// How the infimum is approached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attainment {
    /// Minimum attained at a positive point (reported as `minimizer`).
    Attained,
    /// Infimum approached only on the boundary; `alpha` sits on a proper
    /// face of the Newton polytope and no positive minimizer exists.
    UnattainedBoundary,
    /// `alpha` lies outside the Newton polytope and the infimum is 0.
    ZeroCapacity,
}

impl std::fmt::Display for Attainment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Attainment::Attained => "attained",
            Attainment::UnattainedBoundary => "unattained-boundary",
            Attainment::ZeroCapacity => "zero-capacity",
        })
    }
}

/// Result of a capacity computation.
#[derive(Debug, Clone)]
pub struct CapacityResult {
    pub value: f64,
    pub minimizer: Option<Vec<f64>>,
    pub attainment: Attainment,
    pub iterations: usize,
    pub gradient_norm_final: f64,
    /// False when the optimizer hit its iteration cap before reaching the
    /// gradient tolerance; the reported value is then the best one seen.
    pub converged: bool,
}

/// Position of a point relative to the Newton polytope of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolytopePosition {
    /// Relative interior of the polytope.
    Interior,
    /// On the polytope but on a proper face (vertices included).
    Boundary,
    Outside,
}

fn rationalize(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::OutOfRange(format!("cannot rationalize {x}")))
}

enum RelintClass {
    Outside,
    Interior,
    /// Supporting function values `h(m) >= 0` per support point, zero
    /// exactly on a proper face containing alpha.
    Boundary { h: Vec<BigRational> },
}

/// Classify `alpha` against `conv(support)` with one exact LP:
/// maximize tau subject to `alpha = sum lambda_m m`, `sum lambda_m = 1`,
/// `lambda_m >= tau >= 0`. Infeasible means outside; a positive optimum
/// means every support point can carry positive weight, i.e. relative
/// interior; optimum zero means boundary, and the dual gives a supporting
/// hyperplane through alpha.
fn relint_classify(support: &[ExponentVector], alpha: &[BigRational]) -> RelintClass {
    let n = alpha.len();
    let s = support.len();
    let zero = BigRational::zero();
    // columns: mu_m (= lambda_m - tau), then tau
    let mut a = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row: Vec<BigRational> = support
            .iter()
            .map(|m| BigRational::from_integer(m.get(i).into()))
            .collect();
        let total: BigRational = row.iter().cloned().sum();
        row.push(total);
        a.push(row);
    }
    let mut last: Vec<BigRational> = vec![BigRational::from_integer(1.into()); s];
    last.push(BigRational::from_integer((s as i64).into()));
    a.push(last);

    let mut b = alpha.to_vec();
    b.push(BigRational::from_integer(1.into()));

    let mut c = vec![zero; s + 1];
    c[s] = -BigRational::from_integer(1.into());

    match solve_min(&a, &b, &c) {
        LpOutcome::Infeasible => RelintClass::Outside,
        LpOutcome::Unbounded => unreachable!("tau is bounded by 1 / support size"),
        LpOutcome::Optimal {
            objective, dual, ..
        } => {
            let tau = -objective;
            if tau.is_positive() {
                RelintClass::Interior
            } else {
                // reduced cost of mu_m is -(<nu, m> + c0) >= 0 with
                // nu = dual[..n], c0 = dual[n]; h(m) := -<nu, m> - c0
                let nu = &dual[..n];
                let c0 = &dual[n];
                let h = support
                    .iter()
                    .map(|m| {
                        let mut acc = -c0.clone();
                        for (i, nui) in nu.iter().enumerate() {
                            acc -= nui.clone() * BigRational::from_integer(m.get(i).into());
                        }
                        acc
                    })
                    .collect();
                RelintClass::Boundary { h }
            }
        }
    }
}

/// Decide where `alpha` sits relative to the Newton polytope
/// `conv{m : c_m > 0}` by exact rational linear programming.
pub fn newton_polytope_contains<C: Coefficient>(
    p: &SparsePolynomial<C>,
    alpha: &[f64],
) -> Result<PolytopePosition> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if alpha.len() != p.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: p.n_vars(),
            got: alpha.len(),
        });
    }
    let alpha_q: Vec<BigRational> = alpha.iter().map(|&x| rationalize(x)).collect::<Result<_>>()?;
    let support: Vec<ExponentVector> = p.terms().map(|(k, _)| k.clone()).collect();
    Ok(match relint_classify(&support, &alpha_q) {
        RelintClass::Outside => PolytopePosition::Outside,
        RelintClass::Interior => PolytopePosition::Interior,
        RelintClass::Boundary { .. } => PolytopePosition::Boundary,
    })
}

/// Log-domain objective used by the optimizer.
struct LogSumExp {
    /// (exponent vector, ln coefficient) per term, in a fixed order
    terms: Vec<(Vec<f64>, f64)>,
    alpha: Vec<f64>,
}

impl LogSumExp {
    fn new(terms: &[(ExponentVector, f64)], alpha: &[f64]) -> Result<Self> {
        let prepared = terms
            .iter()
            .map(|(k, c)| {
                let lc = c.ln();
                if !lc.is_finite() {
                    return Err(Error::ObjectiveOverflow);
                }
                Ok((
                    k.entries().iter().map(|&e| f64::from(e)).collect::<Vec<f64>>(),
                    lc,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LogSumExp {
            terms: prepared,
            alpha: alpha.to_vec(),
        })
    }

    fn shifted_exponents(&self, y: &[f64]) -> (f64, Vec<f64>) {
        let mut s = Vec::with_capacity(self.terms.len());
        let mut smax = f64::NEG_INFINITY;
        for (m, lc) in &self.terms {
            let dot: f64 = m.iter().zip(y).map(|(a, b)| a * b).sum();
            let v = lc + dot;
            smax = smax.max(v);
            s.push(v);
        }
        (smax, s)
    }

    fn value(&self, y: &[f64]) -> f64 {
        let (smax, s) = self.shifted_exponents(y);
        let total: f64 = s.iter().map(|v| (v - smax).exp()).sum();
        let ady: f64 = self.alpha.iter().zip(y).map(|(a, b)| a * b).sum();
        smax + total.ln() - ady
    }

    fn value_grad(&self, y: &[f64]) -> (f64, Vec<f64>) {
        let (smax, s) = self.shifted_exponents(y);
        let weights: Vec<f64> = s.iter().map(|v| (v - smax).exp()).collect();
        let total: f64 = weights.iter().sum();
        let mut grad = vec![0.0; y.len()];
        for ((m, _), w) in self.terms.iter().zip(&weights) {
            for (g, mi) in grad.iter_mut().zip(m) {
                *g += w / total * mi;
            }
        }
        for (g, a) in grad.iter_mut().zip(&self.alpha) {
            *g -= a;
        }
        let ady: f64 = self.alpha.iter().zip(y).map(|(a, b)| a * b).sum();
        (smax + total.ln() - ady, grad)
    }
}

/// Value and gradient of `log P(e^y) - <alpha, y>`, computed with max-shift
/// so large exponents cannot overflow. Convex in `y`.
pub fn log_objective(prob: &CapacityProblem, y: &[f64]) -> Result<(f64, Vec<f64>)> {
    if y.len() != prob.poly.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: prob.poly.n_vars(),
            got: y.len(),
        });
    }
    let terms: Vec<(ExponentVector, f64)> =
        prob.poly.terms().map(|(k, c)| (k.clone(), *c)).collect();
    let lse = LogSumExp::new(&terms, &prob.alpha)?;
    let (value, grad) = lse.value_grad(y);
    if !value.is_finite() {
        return Err(Error::ObjectiveOverflow);
    }
    Ok((value, grad))
}

struct GdRun {
    best_value: f64,
    y: Vec<f64>,
    iterations: usize,
    gradient_norm: f64,
    converged: bool,
}

const ARMIJO_C1: f64 = 1e-4;
const DIVERGENCE_NORM: f64 = 50.0;
const FLATTEN_REL: f64 = 1e-9;

/// Plain gradient descent with backtracking (Armijo, halving, initial step
/// 1.0 each iteration) from the given start.
///
/// Near the minimum the per-step objective decrease (about the squared
/// gradient norm) drops below the floating-point resolution of the
/// objective long before the gradient reaches tight tolerances, so once
/// the Armijo search cannot find a strict decrease the loop keeps stepping
/// on strict gradient-norm decrease instead; that measure has a far lower
/// noise floor.
fn gradient_descent(lse: &LogSumExp, y0: &[f64], tol: f64, max_iter: usize) -> GdRun {
    let mut y = y0.to_vec();
    let (mut f, mut grad) = lse.value_grad(&y);
    let mut gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
    let mut best = f;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        if gnorm <= tol {
            converged = true;
            break;
        }
        let mut step = 1.0;
        let mut accepted = None;
        while step > 1e-18 {
            let candidate: Vec<f64> = y.iter().zip(&grad).map(|(yi, g)| yi - step * g).collect();
            let fc = lse.value(&candidate);
            if fc.is_finite() && fc < f && fc <= f - ARMIJO_C1 * step * gnorm * gnorm {
                accepted = Some(candidate);
                break;
            }
            step *= 0.5;
        }
        let next = match accepted {
            Some(next) => next,
            None => {
                // objective flat to rounding; polish on the gradient norm
                let mut polish = None;
                let mut step = 1.0;
                while step > 1e-18 {
                    let candidate: Vec<f64> =
                        y.iter().zip(&grad).map(|(yi, g)| yi - step * g).collect();
                    let (fc, gc) = lse.value_grad(&candidate);
                    let gcnorm = gc.iter().map(|g| g * g).sum::<f64>().sqrt();
                    if fc.is_finite() && gcnorm < 0.999 * gnorm {
                        polish = Some(candidate);
                        break;
                    }
                    step *= 0.5;
                }
                match polish {
                    Some(candidate) => candidate,
                    None => break, // numerical floor on both measures
                }
            }
        };
        let prev = f;
        y = next;
        let vg = lse.value_grad(&y);
        f = vg.0;
        grad = vg.1;
        gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        best = best.min(f);
        iterations += 1;

        // an iterate running away while the objective keeps falling means
        // the infimum lives on the boundary; stop once the decrease flattens
        let norm: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > DIVERGENCE_NORM && (prev - f).abs() <= FLATTEN_REL * f.abs().max(1.0) {
            break;
        }
    }
    GdRun {
        best_value: best,
        y,
        iterations,
        gradient_norm: gnorm,
        converged,
    }
}

/// Compute the capacity with explicit tolerance and iteration budget. See
/// the module docs for how zero and boundary cases are classified.
pub fn capacity(prob: &CapacityProblem, tol: f64, max_iter: usize) -> Result<CapacityResult> {
    capacity_with_start(prob, tol, max_iter, None)
}

/// [`capacity`] with the defaults (gradient tolerance 1e-9, 10000
/// iterations).
pub fn capacity_default(prob: &CapacityProblem) -> Result<CapacityResult> {
    capacity(prob, DEFAULT_GRAD_TOL, DEFAULT_MAX_ITER)
}

/// [`capacity`] from a caller-chosen starting point in log coordinates
/// (defaults to the all-ones point `y = 0`).
pub fn capacity_with_start(
    prob: &CapacityProblem,
    tol: f64,
    max_iter: usize,
    start: Option<&[f64]>,
) -> Result<CapacityResult> {
    let alpha_q: Vec<BigRational> = prob
        .alpha
        .iter()
        .map(|&x| rationalize(x))
        .collect::<Result<_>>()?;
    let mut terms: Vec<(ExponentVector, f64)> =
        prob.poly.terms().map(|(k, c)| (k.clone(), *c)).collect();

    let mut on_boundary = false;
    loop {
        let support: Vec<ExponentVector> = terms.iter().map(|(k, _)| k.clone()).collect();
        match relint_classify(&support, &alpha_q) {
            RelintClass::Outside => {
                debug_assert!(!on_boundary, "faces of the polytope still contain alpha");
                return Ok(CapacityResult {
                    value: 0.0,
                    minimizer: None,
                    attainment: Attainment::ZeroCapacity,
                    iterations: 0,
                    gradient_norm_final: 0.0,
                    converged: true,
                });
            }
            RelintClass::Interior => break,
            RelintClass::Boundary { h } => {
                on_boundary = true;
                // keep exactly the face terms; the sum of h over the current
                // support is >= 1, so at least one term drops each round
                let keep: Vec<bool> = h.iter().map(Zero::is_zero).collect();
                debug_assert!(keep.iter().any(|k| !*k), "supporting hyperplane is proper");
                let mut it = keep.iter();
                terms.retain(|_| *it.next().expect("one flag per term"));
                debug_assert!(!terms.is_empty(), "alpha stays inside the face");
            }
        }
    }

    let lse = LogSumExp::new(&terms, &prob.alpha)?;
    let zero_start = vec![0.0; prob.alpha.len()];
    let run = gradient_descent(&lse, start.unwrap_or(&zero_start), tol, max_iter);
    let value = run.best_value.exp();
    if on_boundary {
        Ok(CapacityResult {
            value,
            minimizer: None,
            attainment: Attainment::UnattainedBoundary,
            iterations: run.iterations,
            gradient_norm_final: run.gradient_norm,
            converged: run.converged,
        })
    } else {
        Ok(CapacityResult {
            value,
            minimizer: Some(run.y.iter().map(|v| v.exp()).collect()),
            attainment: Attainment::Attained,
            iterations: run.iterations,
            gradient_norm_final: run.gradient_norm,
            converged: run.converged,
        })
    }
}

/// Check the capacity-preservation inequality for one coefficient slice:
/// with `Q` the coefficient of `x_i^r` in a stable `P` and `alpha_i = r`,
/// `cap_{alpha'}(Q) >= g(d, r) * cap_alpha(P)` up to `tol * scale`.
///
/// The caller is responsible for `P` actually being certified stable via a
/// closure construction; the inequality can fail for unstable input.
pub fn capacity_preservation_check(
    p: &SparsePolynomial<f64>,
    i: usize,
    r: u32,
    alpha: &[f64],
    tol: f64,
) -> Result<bool> {
    let d = p.degree_of(i)?;
    if r > d {
        return Err(Error::CoefficientIndexOutOfRange { r, d });
    }
    if alpha.len() != p.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: p.n_vars(),
            got: alpha.len(),
        });
    }
    if alpha[i] != f64::from(r) {
        return Err(Error::OutOfRange(format!(
            "alpha[{i}] = {} must equal r = {r}",
            alpha[i]
        )));
    }
    let cap_p = capacity_default(&CapacityProblem::new(p.clone(), alpha.to_vec())?)?;
    let q = p.slice_coefficient(i, r)?;
    let alpha_rest: Vec<f64> = alpha
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, a)| *a)
        .collect();
    if q.is_zero() {
        if cap_p.value > 0.0 {
            return Err(Error::ZeroSliceWithPositiveCapacity {
                capacity: cap_p.value,
            });
        }
        return Ok(true);
    }
    let cap_q = capacity_default(&CapacityProblem::new(q, alpha_rest)?)?;
    let rhs = g_factor(d, r)? * cap_p.value;
    let scale = rhs.abs().max(1.0);
    Ok(cap_q.value >= rhs - tol * scale)
}
