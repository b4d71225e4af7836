//! Lower-bound formulas and the verification driver.
//!
//! Everything here revolves around one quantity per vertex, the g-factor
//! `g(d, r) = C(d,r) (r/d)^r ((d-r)/d)^{d-r}` (with `0^0 = 1`): the product
//! of g-factors times the capacity of the graph polynomial lower-bounds the
//! number of orientations with prescribed in-degrees. Specializing the
//! in-degrees recovers Schrijver's perfect-matching and Eulerian-orientation
//! bounds in closed form, and Las Vergnas' sharpening of the latter.
//! [`verify`] runs an exact counter against every applicable bound and
//! reports the slack.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::capacity::{capacity_default, CapacityProblem, CapacityResult};
use crate::counting::{
    count_eulerian, count_orientations, count_perfect_matchings, DegreeTarget,
};
use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::poly::{graph_polynomial, UnivariatePoly};
use crate::stability::{is_real_rooted, DEFAULT_PSD_TOL};

/// Additive slack (relative to the bound magnitude) allowed when comparing
/// an exact count against a numerically computed bound.
pub const BOUND_TOL: f64 = 1e-7;

/// Exact binomial coefficient.
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// The per-variable capacity loss `C(d,r) (r/d)^r ((d-r)/d)^{d-r}`, with
/// the `0^0 = 1` convention at `r = 0` and `r = d`.
pub fn g_factor(d: u32, r: u32) -> Result<f64> {
    if d == 0 || r > d {
        return Err(Error::CoefficientIndexOutOfRange { r, d });
    }
    let df = f64::from(d);
    let rf = f64::from(r);
    let b = binomial(d, r).to_f64().expect("small binomial");
    let low = if r == 0 { 1.0 } else { (rf / df).powi(r as i32) };
    let high = if r == d {
        1.0
    } else {
        ((df - rf) / df).powi((d - r) as i32)
    };
    Ok(b * low * high)
}

/// General capacity-based lower bound on the number of orientations with
/// in-degrees `r`: the product of per-vertex g-factors times the capacity
/// of the graph polynomial at `alpha = r`. The caller supplies that
/// capacity. An infeasible `r_v > d_v` makes the bound 0.
pub fn capacity_lower_bound(g: &MultiGraph, r: &DegreeTarget, cap: &CapacityResult) -> f64 {
    let degrees = g.degrees();
    let mut product = 1.0;
    for (v, &d) in degrees.iter().enumerate() {
        let rv = r.entries()[v];
        if rv as usize > d {
            return 0.0;
        }
        if d == 0 {
            continue; // isolated vertex contributes nothing
        }
        product *= g_factor(d as u32, rv).expect("rv <= d checked");
    }
    product * cap.value
}

/// Schrijver's perfect-matching bound for d-regular bipartite graphs on
/// 2n vertices: `((d-1)^{d-1} / d^{d-2})^n`.
pub fn schrijver_matching_bound(n: u32, d: u32) -> f64 {
    if d == 0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let df = f64::from(d);
    let base = (df - 1.0).powi(d as i32 - 1) / df.powi(d as i32 - 2);
    base.powi(n as i32)
}

/// Schrijver's Eulerian-orientation bound `prod_v C(d_v, d_v/2) / 2^{d_v/2}`.
/// Requires every degree even.
pub fn schrijver_orientation_bound(degrees: &[usize]) -> Result<f64> {
    let mut product = 1.0;
    for (v, &d) in degrees.iter().enumerate() {
        if d % 2 != 0 {
            return Err(Error::OddDegree { vertex: v, degree: d });
        }
        let half = (d / 2) as u32;
        let b = binomial(d as u32, half).to_f64().expect("small binomial");
        product *= b / 2f64.powi(half as i32);
    }
    Ok(product)
}

/// Las Vergnas' sharpening: the orientation bound times `2^D / C(D, D/2)`
/// where D is the maximum degree. Tight on cycles.
pub fn lasvergnas_bound(degrees: &[usize]) -> Result<f64> {
    let base = schrijver_orientation_bound(degrees)?;
    let max_d = degrees.iter().copied().max().unwrap_or(0);
    let half = (max_d / 2) as u32;
    let b = binomial(max_d as u32, half).to_f64().expect("small binomial");
    Ok(base * 2f64.powi(max_d as i32) / b)
}

/// Closed-form capacity of the graph polynomial of a d-regular bipartite
/// graph on 2n vertices at alpha = (1 on A, d-1 on B):
/// `d^{nd} / (d-1)^{n(d-1)}`.
pub fn bipartite_capacity_closed_form(n: u32, d: u32) -> f64 {
    let df = f64::from(d);
    let per_edge_factor = df / (df - 1.0).powf((f64::from(d) - 1.0) / f64::from(d));
    // equals (d / (d-1)^{(d-1)/d})^{nd}; compute in logs for stability
    if d == 1 {
        return 1.0;
    }
    (f64::from(n * d) * per_edge_factor.ln()).exp()
}

/// Closed-form capacity of the graph polynomial at alpha = degrees/2:
/// `2^{e(G)}` for every graph.
pub fn even_capacity_closed_form(edge_count: usize) -> f64 {
    2f64.powi(edge_count as i32)
}

/// `inf_{t > 0} p(t) / t^r` for a univariate polynomial with non-negative
/// coefficients, by bisection on `log t` of the strictly increasing
/// weighted-degree function `t p'(t) / p(t)`. Support edge cases: the
/// infimum is 0 when `r` lies outside the support degrees and equals the
/// boundary coefficient when it sits exactly on one.
pub fn univariate_capacity(p: &UnivariatePoly<f64>, r: f64) -> Result<f64> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.coeffs().iter().any(|c| *c < 0.0) {
        return Err(Error::NegativeCoefficient);
    }
    let low = p.low_degree().expect("nonzero polynomial") as f64;
    let high = p.degree() as f64;
    if r < low || r > high {
        return Ok(0.0);
    }
    if r == low {
        return Ok(p.coeff(low as usize));
    }
    if r == high {
        return Ok(p.coeff(high as usize));
    }

    let terms: Vec<(f64, f64)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0.0)
        .map(|(k, c)| (k as f64, c.ln()))
        .collect();
    // weighted mean degree under the softmax weights at log t = s
    let phi = |s: f64| -> f64 {
        let smax = terms
            .iter()
            .map(|(k, lc)| lc + k * s)
            .fold(f64::NEG_INFINITY, f64::max);
        let mut num = 0.0;
        let mut den = 0.0;
        for (k, lc) in &terms {
            let w = (lc + k * s - smax).exp();
            num += w * k;
            den += w;
        }
        num / den
    };

    let mut lo = 0.0;
    let mut hi = 0.0;
    let mut step = 1.0;
    while phi(lo) >= r {
        lo -= step;
        step *= 2.0;
    }
    step = 1.0;
    while phi(hi) <= r {
        hi += step;
        step *= 2.0;
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if phi(mid) < r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = 0.5 * (lo + hi);
    let smax = terms
        .iter()
        .map(|(k, lc)| lc + k * s)
        .fold(f64::NEG_INFINITY, f64::max);
    let total: f64 = terms.iter().map(|(k, lc)| (lc + k * s - smax).exp()).sum();
    Ok((smax + total.ln() - r * s).exp())
}

/// Coefficient lower bound for a real-rooted polynomial with non-negative
/// coefficients: `a_r >= g(d, r) inf_{t>0} p(t)/t^r`. Returns the right
/// side. Tight on binomials `((1+t)/2)^d`.
pub fn coefficient_lemma_bound(p: &UnivariatePoly<f64>, r: u32) -> Result<f64> {
    if p.coeffs().iter().any(|c| *c < 0.0) {
        return Err(Error::NegativeCoefficient);
    }
    if !is_real_rooted(p, DEFAULT_PSD_TOL) {
        return Err(Error::NotRealRooted);
    }
    if p.is_zero() {
        return Ok(0.0);
    }
    let d = p.degree() as u32;
    if r > d {
        return Ok(0.0);
    }
    let inf = univariate_capacity(p, f64::from(r))?;
    if inf == 0.0 {
        return Ok(0.0);
    }
    Ok(g_factor(d, r)? * inf)
}

/// Window mass inequality for coefficient distributions of real-rooted
/// polynomials: with `p_k >= 0`, `sum p_k = 1`, mean `ds = sum k p_k` and
/// integers `b <= ds <= c`, the window mass `sum_{k=b}^{c} p_k` dominates
/// the corresponding binomial window mass at success probability `s`.
/// The real-rootedness of the underlying polynomial is the caller's
/// contract; the inequality can fail without it.
pub fn hoeffding_check(p: &[f64], b: u32, c: u32) -> Result<bool> {
    if p.is_empty() {
        return Err(Error::InvalidProbabilityVector("empty vector".into()));
    }
    if let Some(k) = p.iter().position(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::InvalidProbabilityVector(format!(
            "p[{k}] = {} must be finite and non-negative",
            p[k]
        )));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidProbabilityVector(format!(
            "mass sums to {total}, not 1"
        )));
    }
    let d = p.len() - 1;
    let ds: f64 = p.iter().enumerate().map(|(k, pk)| k as f64 * pk).sum();
    if f64::from(b) > ds + 1e-12 || ds > f64::from(c) + 1e-12 {
        return Err(Error::WindowExcludesMean { b, c, mean: ds });
    }
    if d == 0 {
        return Ok(true); // both sides are the full mass 1
    }
    let s = ds / d as f64;
    let hi = (c as usize).min(d);
    let lhs: f64 = (b as usize..=hi).map(|k| p[k]).sum();
    let rhs: f64 = (b as usize..=hi)
        .map(|k| {
            let bin = binomial(d as u32, k as u32).to_f64().expect("small binomial");
            let sk = if k == 0 { 1.0 } else { s.powi(k as i32) };
            let sq = if k == d {
                1.0
            } else {
                (1.0 - s).powi((d - k) as i32)
            };
            bin * sk * sq
        })
        .sum();
    Ok(lhs >= rhs - 1e-12)
}

/// `f_{d,r}(x)`: the probability that exactly `r` of `d` independent coins
/// with success probabilities `x_i` come up heads, i.e. the coefficient of
/// `z^r` in `prod (1 - x_i + x_i z)`. Minimized over the slice
/// `{sum x_i = r, 0 <= x_i <= 1}` at the constant vector, where it equals
/// `g(d, r)`.
pub fn f_dr(x: &[f64], r: u32) -> Result<f64> {
    let d = x.len();
    if r as usize > d {
        return Err(Error::CoefficientIndexOutOfRange { r, d: d as u32 });
    }
    if let Some(i) = x.iter().position(|v| !(0.0..=1.0).contains(v)) {
        return Err(Error::OutOfRange(format!(
            "x[{i}] = {} must lie in [0, 1]",
            x[i]
        )));
    }
    let mut coeffs = vec![0.0f64; d + 1];
    coeffs[0] = 1.0;
    for (i, &xi) in x.iter().enumerate() {
        for k in (0..=i + 1).rev() {
            let stay = if k <= i { coeffs[k] * (1.0 - xi) } else { 0.0 };
            let up = if k > 0 { coeffs[k - 1] * xi } else { 0.0 };
            coeffs[k] = stay + up;
        }
    }
    Ok(coeffs[r as usize])
}

/// What to verify on a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyTask {
    /// Count perfect matchings across the bipartition and compare against
    /// the matching bound.
    Matching { a: Vec<usize>, b: Vec<usize> },
    /// Count Eulerian orientations and compare against the orientation
    /// bounds (requires even degrees).
    Eulerian,
    /// Count orientations with the given in-degrees and compare against
    /// the general capacity bound.
    General { r: Vec<u32> },
}

impl VerifyTask {
    pub fn name(&self) -> &'static str {
        match self {
            VerifyTask::Matching { .. } => "matching",
            VerifyTask::Eulerian => "eulerian",
            VerifyTask::General { .. } => "general",
        }
    }
}

/// Count, bounds and slack for one graph/task pair.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub graph_id: String,
    pub task: String,
    pub exact_count: BigUint,
    /// g-factor product times the numeric capacity.
    pub capacity_bound: f64,
    /// Matching or orientation closed-form bound, when the task has one.
    pub specialized_bound: Option<f64>,
    /// Las Vergnas sharpening (even-degree tasks only).
    pub lasvergnas_bound: Option<f64>,
    /// Exact count over the strongest applicable bound (infinite when every
    /// bound is zero).
    pub slack_ratio: f64,
    pub capacity_value: f64,
    pub capacity_flag: String,
    /// True when the exact count dominates every applicable bound within
    /// the numeric allowance.
    pub passes: bool,
}

/// Format with 9 significant digits, stable across runs.
pub fn format_sig9(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{x:.8e}")
    }
}

impl BoundReport {
    pub const CSV_HEADER: &'static str = "graph_id,task,count,thm4_bound,specialized_bound,lasvergnas_bound,slack_ratio,capacity_value,capacity_flag";

    pub fn csv_row(&self) -> String {
        let opt = |v: &Option<f64>| v.map(format_sig9).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.graph_id,
            self.task,
            self.exact_count,
            format_sig9(self.capacity_bound),
            opt(&self.specialized_bound),
            opt(&self.lasvergnas_bound),
            format_sig9(self.slack_ratio),
            format_sig9(self.capacity_value),
            self.capacity_flag,
        )
    }
}

fn capacity_of_graph_polynomial(g: &MultiGraph, alpha: Vec<f64>) -> Result<CapacityResult> {
    let p = graph_polynomial::<f64>(g);
    capacity_default(&CapacityProblem::new(p, alpha)?)
}

/// Run the exact counter and every applicable lower bound for the task,
/// asserting `count >= bound` within the numeric allowance.
pub fn verify(g: &MultiGraph, graph_id: &str, task: &VerifyTask) -> Result<BoundReport> {
    let degrees = g.degrees();
    let (count, r, specialized, lasvergnas, cross_check_ok) = match task {
        VerifyTask::Matching { a, b } => {
            let pm = count_perfect_matchings(g, a, b)?;
            let r = DegreeTarget::matching_target(g, a);
            // second, independent route: matchings as orientations
            let orientations = count_orientations(g, &r)?;
            let agree = orientations.count == pm.count;
            let specialized = g
                .regular_degree()
                .filter(|&d| d >= 1 && a.len() == b.len())
                .map(|d| schrijver_matching_bound(a.len() as u32, d as u32));
            (pm.count, r, specialized, None, agree)
        }
        VerifyTask::Eulerian => {
            let count = count_eulerian(g)?;
            let r = DegreeTarget::half_degrees(g)?;
            let specialized = Some(schrijver_orientation_bound(&degrees)?);
            let lasvergnas = Some(lasvergnas_bound(&degrees)?);
            (count.count, r, specialized, lasvergnas, true)
        }
        VerifyTask::General { r } => {
            let r = DegreeTarget::new(r.clone());
            let count = count_orientations(g, &r)?;
            (count.count, r, None, None, true)
        }
    };

    let alpha: Vec<f64> = r.entries().iter().map(|&x| f64::from(x)).collect();
    let cap = capacity_of_graph_polynomial(g, alpha)?;
    let bound = capacity_lower_bound(g, &r, &cap);

    let count_f = count.to_f64().unwrap_or(f64::INFINITY);
    let holds = |b: f64| count_f >= b - BOUND_TOL * b.abs().max(1.0);
    let mut passes = cross_check_ok && holds(bound);
    let mut strongest = bound;
    for b in [specialized, lasvergnas].into_iter().flatten() {
        passes &= holds(b);
        strongest = strongest.max(b);
    }
    let slack_ratio = if strongest > 0.0 {
        count_f / strongest
    } else {
        f64::INFINITY
    };
    let capacity_flag = if cap.converged {
        cap.attainment.to_string()
    } else {
        format!("{}+maxiter", cap.attainment)
    };

    Ok(BoundReport {
        graph_id: graph_id.to_string(),
        task: task.name().to_string(),
        exact_count: count,
        capacity_bound: bound,
        specialized_bound: specialized,
        lasvergnas_bound: lasvergnas,
        slack_ratio,
        capacity_value: cap.value,
        capacity_flag,
        passes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, rel: f64) {
        assert!(
            (a - b).abs() <= rel * b.abs().max(1e-300),
            "{a} vs {b} (rel {rel})"
        );
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(10, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(24, 12), BigUint::from(2704156u32));
    }

    #[test]
    fn g_factor_examples() {
        assert_close(g_factor(3, 1).unwrap(), 4.0 / 9.0, 1e-15);
        for d in 1..=10 {
            assert_close(g_factor(d, 0).unwrap(), 1.0, 1e-15);
            assert_close(g_factor(d, d).unwrap(), 1.0, 1e-15);
        }
        assert_close(g_factor(4, 2).unwrap(), 3.0 / 8.0, 1e-15);
        assert!(g_factor(3, 4).is_err());
        assert!(g_factor(0, 0).is_err());
    }

    #[test]
    fn g_factor_symmetry_and_range() {
        for d in 1..=12u32 {
            for r in 0..=d {
                let g = g_factor(d, r).unwrap();
                assert!(g > 0.0 && g <= 1.0 + 1e-15, "g({d},{r}) = {g}");
                assert_close(g, g_factor(d, d - r).unwrap(), 1e-14);
            }
        }
    }

    #[test]
    fn matching_bound_values() {
        assert_close(schrijver_matching_bound(3, 3), 64.0 / 27.0, 1e-15);
        assert_close(schrijver_matching_bound(7, 2), 1.0, 1e-15);
        assert_close(schrijver_matching_bound(5, 1), 1.0, 1e-15);
    }

    #[test]
    fn orientation_bound_values() {
        assert_close(schrijver_orientation_bound(&[2, 2, 2, 2]).unwrap(), 1.0, 1e-15);
        assert_close(
            schrijver_orientation_bound(&[4, 4, 4, 4, 4]).unwrap(),
            7.59375,
            1e-15,
        );
        assert_close(schrijver_orientation_bound(&[6]).unwrap(), 2.5, 1e-15);
        assert!(matches!(
            schrijver_orientation_bound(&[2, 3]),
            Err(Error::OddDegree { vertex: 1, degree: 3 })
        ));
    }

    #[test]
    fn lasvergnas_values() {
        // cycles: bound 2, matching the true count exactly
        for n in 3..=8 {
            assert_close(lasvergnas_bound(&vec![2; n]).unwrap(), 2.0, 1e-15);
        }
        assert_close(lasvergnas_bound(&[4, 4, 4, 4, 4]).unwrap(), 20.25, 1e-12);
        // 4-regular on n vertices: (3/2)^n * 8/3
        for n in 2..=5 {
            assert_close(
                lasvergnas_bound(&vec![4; n]).unwrap(),
                1.5f64.powi(n as i32) * 8.0 / 3.0,
                1e-12,
            );
        }
    }

    #[test]
    fn closed_form_capacities() {
        assert_close(bipartite_capacity_closed_form(3, 3), 19683.0 / 64.0, 1e-12);
        assert_close(bipartite_capacity_closed_form(1, 2), 4.0, 1e-12);
        assert_close(bipartite_capacity_closed_form(4, 1), 1.0, 1e-12);
        assert_close(even_capacity_closed_form(4), 16.0, 0.0);
    }

    #[test]
    fn matching_specialization_identity() {
        // the product of g-factors against the closed-form capacity
        // collapses to the matching bound
        for d in 2..=4u32 {
            for n in 1..=4u32 {
                let g1 = g_factor(d, 1).unwrap();
                let gd1 = g_factor(d, d - 1).unwrap();
                let lhs = (g1 * gd1).powi(n as i32) * bipartite_capacity_closed_form(n, d);
                let rhs = schrijver_matching_bound(n, d);
                assert_close(lhs, rhs, 1e-10);
            }
        }
    }

    #[test]
    fn orientation_specialization_identity() {
        let degree_sets: Vec<Vec<usize>> = vec![
            vec![2; 4],
            vec![4; 5],
            vec![2, 2, 4, 4],
            vec![2, 4, 6, 4, 2],
            vec![4; 3],
        ];
        for degrees in degree_sets {
            let total: usize = degrees.iter().sum();
            assert_eq!(total % 2, 0);
            let e = total / 2;
            let mut gprod = 1.0;
            for &d in &degrees {
                gprod *= g_factor(d as u32, (d / 2) as u32).unwrap();
            }
            let lhs = gprod * even_capacity_closed_form(e);
            let rhs = schrijver_orientation_bound(&degrees).unwrap();
            assert_close(lhs, rhs, 1e-10);
        }
    }

    #[test]
    fn univariate_capacity_values() {
        // (1+t)^2 / t minimized at t = 1 gives 4
        let p = UnivariatePoly::new(vec![1.0, 2.0, 1.0]);
        assert_close(univariate_capacity(&p, 1.0).unwrap(), 4.0, 1e-10);
        // support edges
        assert_close(univariate_capacity(&p, 0.0).unwrap(), 1.0, 0.0);
        assert_close(univariate_capacity(&p, 2.0).unwrap(), 1.0, 0.0);
        assert_eq!(univariate_capacity(&p, 3.0).unwrap(), 0.0);
        // t^2: support is a single degree
        let t2 = UnivariatePoly::new(vec![0.0, 0.0, 1.0]);
        assert_close(univariate_capacity(&t2, 2.0).unwrap(), 1.0, 0.0);
        assert_eq!(univariate_capacity(&t2, 1.0).unwrap(), 0.0);
        assert!(univariate_capacity(&UnivariatePoly::new(vec![1.0, -1.0]), 0.0).is_err());
    }

    #[test]
    fn coefficient_lemma_tight_on_binomials() {
        for d in 2..=10u32 {
            // ((1+t)/2)^d has coefficients C(d,r)/2^d
            let p = UnivariatePoly::from_roots(&vec![-1.0; d as usize])
                .scaled(&2f64.powi(-(d as i32)));
            for r in 1..d {
                let bound = coefficient_lemma_bound(&p, r).unwrap();
                let exact = binomial(d, r).to_f64().unwrap() / 2f64.powi(d as i32);
                assert_close(bound, exact, 1e-9);
                // and it really is a lower bound on the coefficient
                assert!(p.coeff(r as usize) >= bound - 1e-12);
            }
        }
    }

    #[test]
    fn coefficient_lemma_edge_cases() {
        // single term t^r: inf p/t^r = 1 and g(r, r) = 1
        let t3 = UnivariatePoly::new(vec![0.0, 0.0, 0.0, 1.0]);
        assert_close(coefficient_lemma_bound(&t3, 3).unwrap(), 1.0, 1e-12);
        // r above the degree
        assert_eq!(coefficient_lemma_bound(&t3, 7).unwrap(), 0.0);
        // r below the lowest support degree
        assert_eq!(coefficient_lemma_bound(&t3, 1).unwrap(), 0.0);
        // non-real-rooted input is rejected
        let p = UnivariatePoly::new(vec![1.0, 0.0, 1.0]);
        assert!(matches!(
            coefficient_lemma_bound(&p, 1),
            Err(Error::NotRealRooted)
        ));
    }

    #[test]
    fn hoeffding_examples() {
        // binomial coefficients give equality
        let d = 5u32;
        let s = 0.3f64;
        let p: Vec<f64> = (0..=d)
            .map(|k| {
                binomial(d, k).to_f64().unwrap()
                    * s.powi(k as i32)
                    * (1.0 - s).powi((d - k) as i32)
            })
            .collect();
        let ds = s * f64::from(d);
        assert!(hoeffding_check(&p, ds.floor() as u32, ds.ceil() as u32).unwrap());

        // two coins 0.2, 0.8: p1 = 0.68 >= 0.5
        let p: Vec<f64> = vec![0.8 * 0.2, 0.2 * 0.2 + 0.8 * 0.8, 0.2 * 0.8];
        assert!((p[1] - 0.68f64).abs() < 1e-15);
        assert!(hoeffding_check(&p, 1, 1).unwrap());

        // d = 1: both sides 1
        assert!(hoeffding_check(&[0.7, 0.3], 0, 1).unwrap());

        // window missing the mean errors out
        assert!(matches!(
            hoeffding_check(&[0.5, 0.5], 1, 1),
            Err(Error::WindowExcludesMean { .. })
        ));
        assert!(hoeffding_check(&[0.5, 0.6], 0, 1).is_err());
    }

    #[test]
    fn f_dr_examples() {
        let d = 6u32;
        for r in 0..=d {
            let x = vec![f64::from(r) / f64::from(d); d as usize];
            assert_close(f_dr(&x, r).unwrap(), g_factor(d, r).unwrap(), 1e-12);
        }
        assert_close(f_dr(&[1.0, 1.0, 1.0], 3).unwrap(), 1.0, 1e-15);
        assert_close(f_dr(&[1.0, 0.5, 0.5], 2).unwrap(), 0.5, 1e-15);
        assert!(f_dr(&[1.5, 0.0], 1).is_err());
        assert!(f_dr(&[0.5, 0.5], 3).is_err());
    }

    #[test]
    fn verify_matching_k33() {
        let k33 = MultiGraph::complete_bipartite(3).unwrap();
        let report = verify(
            &k33,
            "k33",
            &VerifyTask::Matching {
                a: vec![0, 1, 2],
                b: vec![3, 4, 5],
            },
        )
        .unwrap();
        assert_eq!(report.exact_count, BigUint::from(6u32));
        assert_close(report.specialized_bound.unwrap(), 64.0 / 27.0, 1e-12);
        // the numeric capacity bound reproduces the closed-form bound
        assert_close(report.capacity_bound, 64.0 / 27.0, 1e-8);
        assert!(report.passes);
        assert!(report.slack_ratio > 2.0 && report.slack_ratio < 3.0);
    }

    #[test]
    fn verify_eulerian_cycle_tightness() {
        let c4 = MultiGraph::cycle(4).unwrap();
        let report = verify(&c4, "c4", &VerifyTask::Eulerian).unwrap();
        assert_eq!(report.exact_count, BigUint::from(2u32));
        assert_close(report.specialized_bound.unwrap(), 1.0, 1e-12);
        assert_close(report.capacity_bound, 1.0, 1e-8);
        assert_close(report.lasvergnas_bound.unwrap(), 2.0, 1e-12);
        assert!(report.passes);
        // Las Vergnas is tight on cycles
        assert_close(report.slack_ratio, 1.0, 1e-9);
    }

    #[test]
    fn verify_eulerian_k5() {
        let k5 = MultiGraph::complete(5).unwrap();
        let report = verify(&k5, "k5", &VerifyTask::Eulerian).unwrap();
        assert_close(report.specialized_bound.unwrap(), 7.59375, 1e-12);
        assert_close(report.capacity_bound, 7.59375, 1e-8);
        assert_close(report.lasvergnas_bound.unwrap(), 20.25, 1e-12);
        assert!(report.passes);
    }

    #[test]
    fn infeasible_target_gives_zero_bound() {
        let c3 = MultiGraph::cycle(3).unwrap();
        let r = DegreeTarget::new(vec![3, 0, 0]); // above the degree
        let p = graph_polynomial::<f64>(&c3);
        let cap = crate::capacity::capacity_default(
            &crate::capacity::CapacityProblem::new(p, vec![3.0, 0.0, 0.0]).unwrap(),
        )
        .unwrap();
        assert_eq!(capacity_lower_bound(&c3, &r, &cap), 0.0);
    }

    #[test]
    fn verify_general_task() {
        let c3 = MultiGraph::cycle(3).unwrap();
        let report = verify(&c3, "c3", &VerifyTask::General { r: vec![1, 1, 1] }).unwrap();
        assert_eq!(report.exact_count, BigUint::from(2u32));
        assert!(report.passes);
        assert!(report.specialized_bound.is_none());
    }

    #[test]
    fn verify_rejects_infeasible_tasks() {
        let path = MultiGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(verify(&path, "path", &VerifyTask::Eulerian).is_err());
        let c3 = MultiGraph::cycle(3).unwrap();
        assert!(verify(
            &c3,
            "c3",
            &VerifyTask::Matching {
                a: vec![0, 1],
                b: vec![2]
            }
        )
        .is_err());
    }

    #[test]
    fn csv_round_trip() {
        let k33 = MultiGraph::complete_bipartite(3).unwrap();
        let report = verify(
            &k33,
            "k33",
            &VerifyTask::Matching {
                a: vec![0, 1, 2],
                b: vec![3, 4, 5],
            },
        )
        .unwrap();
        let row = report.csv_row();
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(
            fields.len(),
            BoundReport::CSV_HEADER.split(',').count()
        );
        assert_eq!(fields[0], "k33");
        assert_eq!(fields[1], "matching");
        assert_eq!(fields[2], "6");
        let reparsed: f64 = fields[3].parse().unwrap();
        assert_close(reparsed, report.capacity_bound, 1e-8);
        let cap: f64 = fields[7].parse().unwrap();
        assert_close(cap, report.capacity_value, 1e-8);
    }

    #[test]
    fn sig9_formatting_is_parseable() {
        for x in [0.0, 1.0, 307.546875, 64.0 / 27.0, 1e-30, 7.2e20] {
            let s = format_sig9(x);
            let back: f64 = s.parse().unwrap();
            assert_close(back, x, 1e-8);
        }
        assert_eq!(format_sig9(f64::INFINITY), "inf");
    }
}
