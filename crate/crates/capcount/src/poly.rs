//! Sparse multivariate polynomials with non-negative coefficients, plus the
//! signed univariate polynomials produced by line restrictions.
//!
//! The multivariate type stores a map from exponent vectors to coefficients
//! and refuses negative coefficients: everything downstream (capacity,
//! counting, the coefficient bounds) lives in the non-negative regime. The
//! one place signs appear is the univariate restriction `g(t) = P(v + t u)`,
//! which gets its own dense type.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::graph::MultiGraph;

/// Integer exponent tuple indexing one monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// The monomial `x_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// True when no coordinate exceeds the cap.
    pub fn within_cap(&self, cap: &ExponentVector) -> bool {
        self.0.iter().zip(&cap.0).all(|(a, b)| a <= b)
    }

    /// Drop coordinate `i` (used by coefficient slices).
    pub fn without_index(&self, i: usize) -> ExponentVector {
        let mut e = self.0.clone();
        e.remove(i);
        ExponentVector(e)
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse multivariate polynomial with non-negative coefficients.
///
/// The coefficient type selects the mode: `BigRational`/`BigInt` for exact
/// arithmetic, `f64` for the numeric optimizer. No stored coefficient is
/// zero and every key has length `n_vars`.
#[derive(Clone, PartialEq)]
pub struct SparsePolynomial<C> {
    n_vars: usize,
    terms: BTreeMap<ExponentVector, C>,
}

impl<C: Coefficient> SparsePolynomial<C> {
    pub fn zero(n_vars: usize) -> Self {
        SparsePolynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: C) -> Result<Self> {
        Self::from_terms(n_vars, [(ExponentVector::zeros(n_vars), c)])
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, C::one()).expect("1 is a valid coefficient")
    }

    /// The monomial `x_i`.
    pub fn variable(n_vars: usize, i: usize) -> Result<Self> {
        if i >= n_vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: n_vars,
            });
        }
        Self::from_terms(n_vars, [(ExponentVector::unit(n_vars, i), C::one())])
    }

    /// Build from terms, merging duplicate keys, dropping zeros and
    /// rejecting negative coefficients or mismatched key lengths.
    pub fn from_terms(
        n_vars: usize,
        terms: impl IntoIterator<Item = (ExponentVector, C)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<ExponentVector, C> = BTreeMap::new();
        for (key, coeff) in terms {
            if key.len() != n_vars {
                return Err(Error::DimensionMismatch {
                    expected: n_vars,
                    got: key.len(),
                });
            }
            if coeff.is_negative() {
                return Err(Error::NegativeCoefficient);
            }
            let entry = map.entry(key).or_insert_with(C::zero);
            *entry = entry.clone() + coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(SparsePolynomial { n_vars, terms: map })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate terms in a fixed (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &C)> {
        self.terms.iter()
    }

    /// Stored coefficient at `r`, or zero.
    pub fn coefficient(&self, r: &ExponentVector) -> Result<C> {
        if r.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: r.len(),
            });
        }
        Ok(self.terms.get(r).cloned().unwrap_or_else(C::zero))
    }

    /// Largest exponent of variable `i` over the support.
    pub fn degree_of(&self, i: usize) -> Result<u32> {
        if i >= self.n_vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n_vars,
            });
        }
        Ok(self.terms.keys().map(|k| k.get(i)).max().unwrap_or(0))
    }

    /// Per-variable maximum exponents.
    pub fn degree_vector(&self) -> ExponentVector {
        let mut d = vec![0u32; self.n_vars];
        for key in self.terms.keys() {
            for (i, &e) in key.entries().iter().enumerate() {
                d[i] = d[i].max(e);
            }
        }
        ExponentVector::new(d)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(ExponentVector::total_degree).max().unwrap_or(0)
    }

    /// Evaluate at a point. Exact in exact mode; positivity of `x` is the
    /// caller's contract where the context requires it.
    pub fn evaluate(&self, x: &[C]) -> Result<C> {
        if x.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: x.len(),
            });
        }
        let mut acc = C::zero();
        for (key, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, &e) in key.entries().iter().enumerate() {
                for _ in 0..e {
                    term = term * x[i].clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Distributive product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.multiply_truncated(other, None)
    }

    /// Distributive product that drops any monomial exceeding `cap` in some
    /// coordinate. Extracting a single coefficient of a big product does not
    /// need the full expansion.
    pub fn multiply_truncated(&self, other: &Self, cap: Option<&ExponentVector>) -> Result<Self> {
        if other.n_vars != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: other.n_vars,
            });
        }
        if let Some(cap) = cap {
            if cap.len() != self.n_vars {
                return Err(Error::DimensionMismatch {
                    expected: self.n_vars,
                    got: cap.len(),
                });
            }
        }
        let mut map: BTreeMap<ExponentVector, C> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key = ka.add(kb);
                if let Some(cap) = cap {
                    if !key.within_cap(cap) {
                        continue;
                    }
                }
                let entry = map.entry(key).or_insert_with(C::zero);
                *entry = entry.clone() + ca.clone() * cb.clone();
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(SparsePolynomial {
            n_vars: self.n_vars,
            terms: map,
        })
    }

    /// Formal partial derivative with respect to `x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.n_vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n_vars,
            });
        }
        let mut map: BTreeMap<ExponentVector, C> = BTreeMap::new();
        for (key, coeff) in &self.terms {
            let e = key.get(i);
            if e == 0 {
                continue;
            }
            let mut entries = key.entries().to_vec();
            entries[i] -= 1;
            map.insert(
                ExponentVector::new(entries),
                coeff.clone() * C::from_u64(u64::from(e)),
            );
        }
        Ok(SparsePolynomial {
            n_vars: self.n_vars,
            terms: map,
        })
    }

    /// The polynomial in the remaining variables multiplying `x_i^r`.
    pub fn slice_coefficient(&self, i: usize, r: u32) -> Result<SparsePolynomial<C>> {
        if i >= self.n_vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n_vars,
            });
        }
        let mut map = BTreeMap::new();
        for (key, coeff) in &self.terms {
            if key.get(i) == r {
                map.insert(key.without_index(i), coeff.clone());
            }
        }
        Ok(SparsePolynomial {
            n_vars: self.n_vars - 1,
            terms: map,
        })
    }

    /// Substitute the non-negative constant `a` for `x_i`, producing a
    /// polynomial in the remaining variables. Negative substitution would
    /// break the coefficient invariant; use a line restriction instead.
    pub fn substitute(&self, i: usize, a: &C) -> Result<SparsePolynomial<C>> {
        if i >= self.n_vars {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n_vars,
            });
        }
        if a.is_negative() {
            return Err(Error::NegativeCoefficient);
        }
        let mut map: BTreeMap<ExponentVector, C> = BTreeMap::new();
        for (key, coeff) in &self.terms {
            let mut scaled = coeff.clone();
            for _ in 0..key.get(i) {
                scaled = scaled * a.clone();
            }
            if scaled.is_zero() {
                continue;
            }
            let entry = map.entry(key.without_index(i)).or_insert_with(C::zero);
            *entry = entry.clone() + scaled;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(SparsePolynomial {
            n_vars: self.n_vars - 1,
            terms: map,
        })
    }

    /// Restrict to the line `x = v + t u`, `u > 0` coordinatewise. The result
    /// is a general signed univariate polynomial.
    pub fn restrict_to_line(&self, v: &[C], u: &[C]) -> Result<UnivariatePoly<C>> {
        if v.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: v.len(),
            });
        }
        if u.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: u.len(),
            });
        }
        for (i, ui) in u.iter().enumerate() {
            if ui.is_negative() || ui.is_zero() {
                return Err(Error::NonPositiveDirection { index: i });
            }
        }
        let deg = self.total_degree() as usize;
        let mut acc = vec![C::zero(); deg + 1];
        for (key, coeff) in &self.terms {
            // expand prod_i (v_i + t u_i)^{m_i} one linear factor at a time
            let mut term = vec![coeff.clone()];
            for (i, &e) in key.entries().iter().enumerate() {
                for _ in 0..e {
                    let mut next = vec![C::zero(); term.len() + 1];
                    for (k, c) in term.iter().enumerate() {
                        next[k] = next[k].clone() + c.clone() * v[i].clone();
                        next[k + 1] = next[k + 1].clone() + c.clone() * u[i].clone();
                    }
                    term = next;
                }
            }
            for (k, c) in term.into_iter().enumerate() {
                acc[k] = acc[k].clone() + c;
            }
        }
        Ok(UnivariatePoly::new(acc))
    }

    /// Convert coefficients, re-validating the non-negativity invariant.
    pub fn map_coefficients<D: Coefficient>(
        &self,
        f: impl Fn(&C) -> D,
    ) -> Result<SparsePolynomial<D>> {
        SparsePolynomial::from_terms(
            self.n_vars,
            self.terms.iter().map(|(k, c)| (k.clone(), f(c))),
        )
    }

    /// View a one-variable polynomial as a dense univariate one.
    pub fn to_univariate(&self) -> Result<UnivariatePoly<C>> {
        if self.n_vars != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: self.n_vars,
            });
        }
        let deg = self.total_degree() as usize;
        let mut coeffs = vec![C::zero(); deg + 1];
        for (key, coeff) in &self.terms {
            coeffs[key.get(0) as usize] = coeff.clone();
        }
        Ok(UnivariatePoly::new(coeffs))
    }
}

impl<C: Coefficient> fmt::Debug for SparsePolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{coeff}")?;
            for (i, &e) in key.entries().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// The graph polynomial `P_G = prod_{(u,v) in E} (x_u + x_v)`, one variable
/// per vertex. Homogeneous of degree e(G); the degree of variable v is the
/// vertex degree d_v. Loops are unrepresentable in [`MultiGraph`], so the
/// product is always well-formed.
pub fn graph_polynomial<C: Coefficient>(g: &MultiGraph) -> SparsePolynomial<C> {
    graph_polynomial_truncated(g, None).expect("no cap to mismatch")
}

/// `P_G` with monomials exceeding `cap` pruned during the sequential
/// multiplication. With `cap = r` the coefficient at `r` is still exact.
pub fn graph_polynomial_truncated<C: Coefficient>(
    g: &MultiGraph,
    cap: Option<&ExponentVector>,
) -> Result<SparsePolynomial<C>> {
    let n = g.vertex_count();
    if let Some(cap) = cap {
        if cap.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: cap.len(),
            });
        }
    }
    let mut acc = SparsePolynomial::<C>::one(n);
    for &(u, v) in g.edges() {
        let factor = SparsePolynomial::from_terms(
            n,
            [
                (ExponentVector::unit(n, u), C::one()),
                (ExponentVector::unit(n, v), C::one()),
            ],
        )?;
        acc = acc.multiply_truncated(&factor, cap)?;
    }
    Ok(acc)
}

/// The bipartite counting polynomial `Q = prod_{v in B} (sum_{u ~ v} x_u)`
/// in variables indexed by A (in the order given), with edge multiplicity.
/// The coefficient of `prod_{u in A} x_u` is the number of perfect
/// matchings.
pub fn gurvits_polynomial<C: Coefficient>(
    g: &MultiGraph,
    a: &[usize],
    b: &[usize],
) -> Result<SparsePolynomial<C>> {
    g.validate_bipartition(a, b)?;
    let n = a.len();
    let mut index_in_a = vec![usize::MAX; g.vertex_count()];
    for (i, &u) in a.iter().enumerate() {
        index_in_a[u] = i;
    }
    let mut acc = SparsePolynomial::<C>::one(n);
    for &v in b {
        let mut neighbor_terms = Vec::new();
        for &(x, y) in g.edges() {
            let other = if x == v {
                y
            } else if y == v {
                x
            } else {
                continue;
            };
            neighbor_terms.push((ExponentVector::unit(n, index_in_a[other]), C::one()));
        }
        let form = SparsePolynomial::from_terms(n, neighbor_terms)?;
        acc = acc.multiply(&form)?;
    }
    Ok(acc)
}

/// Dense univariate polynomial; coefficients may be negative. Trailing
/// zeros are trimmed so `coeffs().len() == degree() + 1` for nonzero
/// polynomials.
#[derive(Clone, PartialEq)]
pub struct UnivariatePoly<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> UnivariatePoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(C::is_zero) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[C]) -> Self {
        let mut coeffs = vec![C::one()];
        for root in roots {
            let mut next = vec![C::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k] = next[k].clone() - c.clone() * root.clone();
                next[k + 1] = next[k + 1].clone() + c.clone();
            }
            coeffs = next;
        }
        UnivariatePoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with both the zero polynomial and constants reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    /// Smallest degree with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading_coefficient(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn evaluate(&self, t: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * C::from_u64(k as u64))
            .collect();
        UnivariatePoly::new(coeffs)
    }

    pub fn scaled(&self, factor: &C) -> Self {
        UnivariatePoly::new(
            self.coeffs
                .iter()
                .map(|c| c.clone() * factor.clone())
                .collect(),
        )
    }
}

impl<C: Coefficient> fmt::Debug for UnivariatePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ev(entries: &[u32]) -> ExponentVector {
        ExponentVector::new(entries.to_vec())
    }

    fn big(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    /// x + y over the rationals.
    fn x_plus_y() -> SparsePolynomial<BigRational> {
        SparsePolynomial::from_terms(2, [(ev(&[1, 0]), big(1)), (ev(&[0, 1]), big(1))]).unwrap()
    }

    #[test]
    fn evaluate_unit_examples() {
        let p = x_plus_y();
        assert_eq!(p.evaluate(&[big(1), big(1)]).unwrap(), big(2));
        assert_eq!(p.evaluate(&[big(1), big(3)]).unwrap(), big(4));
        let c3 = graph_polynomial::<BigRational>(&MultiGraph::cycle(3).unwrap());
        assert_eq!(c3.evaluate(&[big(1), big(1), big(1)]).unwrap(), big(8));
    }

    #[test]
    fn evaluate_checks_dimensions() {
        assert!(x_plus_y().evaluate(&[big(1)]).is_err());
    }

    #[test]
    fn multiply_examples() {
        let p = x_plus_y();
        let sq = p.multiply(&p).unwrap();
        assert_eq!(sq.coefficient(&ev(&[2, 0])).unwrap(), big(1));
        assert_eq!(sq.coefficient(&ev(&[1, 1])).unwrap(), big(2));
        assert_eq!(sq.coefficient(&ev(&[0, 2])).unwrap(), big(1));
        assert_eq!(sq.num_terms(), 3);

        let one = SparsePolynomial::one(2);
        assert_eq!(p.multiply(&one).unwrap(), p);

        let xy = SparsePolynomial::from_terms(
            3,
            [(ev(&[1, 0, 0]), big(1)), (ev(&[0, 1, 0]), big(1))],
        )
        .unwrap();
        let yz = SparsePolynomial::from_terms(
            3,
            [(ev(&[0, 1, 0]), big(1)), (ev(&[0, 0, 1]), big(1))],
        )
        .unwrap();
        let prod = xy.multiply(&yz).unwrap();
        for (key, want) in [
            (ev(&[1, 1, 0]), 1),
            (ev(&[1, 0, 1]), 1),
            (ev(&[0, 2, 0]), 1),
            (ev(&[0, 1, 1]), 1),
        ] {
            assert_eq!(prod.coefficient(&key).unwrap(), big(want));
        }
    }

    #[test]
    fn from_terms_rejects_negative_and_purges_zero() {
        assert!(
            SparsePolynomial::from_terms(1, [(ev(&[1]), big(-1))]).is_err(),
            "negative coefficients are outside the supported regime"
        );
        let p =
            SparsePolynomial::from_terms(1, [(ev(&[1]), big(1)), (ev(&[0]), big(0))]).unwrap();
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn graph_polynomial_single_edge_and_triangle() {
        let edge = MultiGraph::new(2, [(0, 1)]).unwrap();
        let p = graph_polynomial::<BigRational>(&edge);
        assert_eq!(p, x_plus_y());

        let c3 = graph_polynomial::<BigInt>(&MultiGraph::cycle(3).unwrap());
        assert_eq!(c3.coefficient(&ev(&[1, 1, 1])).unwrap(), BigInt::from(2));
    }

    #[test]
    fn graph_polynomial_total_mass_is_two_to_edges() {
        for g in [
            MultiGraph::cycle(4).unwrap(),
            MultiGraph::complete(4).unwrap(),
            MultiGraph::new(3, [(0, 1), (0, 1), (1, 2)]).unwrap(),
        ] {
            let p = graph_polynomial::<BigInt>(&g);
            let ones = vec![BigInt::from(1); g.vertex_count()];
            assert_eq!(
                p.evaluate(&ones).unwrap(),
                BigInt::from(1) << g.edge_count()
            );
        }
    }

    #[test]
    fn graph_polynomial_is_homogeneous_with_vertex_degrees() {
        let g = MultiGraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let p = graph_polynomial::<BigInt>(&g);
        let e = g.edge_count() as u32;
        for (key, _) in p.terms() {
            assert_eq!(key.total_degree(), e);
        }
        for v in 0..4 {
            assert_eq!(p.degree_of(v).unwrap() as usize, g.degree(v));
        }
    }

    #[test]
    fn graph_polynomial_reversal_symmetry() {
        // reversing every orientation swaps r with d - r
        let g = MultiGraph::complete(4).unwrap();
        let p = graph_polynomial::<BigInt>(&g);
        let d = p.degree_vector();
        for (key, coeff) in p.terms() {
            let flipped = ExponentVector::new(
                d.entries()
                    .iter()
                    .zip(key.entries())
                    .map(|(dv, rv)| dv - rv)
                    .collect(),
            );
            assert_eq!(&p.coefficient(&flipped).unwrap(), coeff);
        }
    }

    #[test]
    fn truncated_expansion_matches_full_coefficient() {
        let g = MultiGraph::complete(4).unwrap();
        let full = graph_polynomial::<BigInt>(&g);
        let r = ev(&[2, 2, 1, 1]);
        let truncated = graph_polynomial_truncated::<BigInt>(&g, Some(&r)).unwrap();
        assert_eq!(
            truncated.coefficient(&r).unwrap(),
            full.coefficient(&r).unwrap()
        );
        assert!(truncated.num_terms() < full.num_terms());
    }

    #[test]
    fn gurvits_polynomial_examples() {
        let k11 = MultiGraph::new(2, [(0, 1)]).unwrap();
        let q = gurvits_polynomial::<BigRational>(&k11, &[0], &[1]).unwrap();
        assert_eq!(q.coefficient(&ev(&[1])).unwrap(), big(1));
        assert_eq!(q.num_terms(), 1);

        let k22 = MultiGraph::complete_bipartite(2).unwrap();
        let q = gurvits_polynomial::<BigRational>(&k22, &[0, 1], &[2, 3]).unwrap();
        assert_eq!(q.coefficient(&ev(&[1, 1])).unwrap(), big(2));
        assert_eq!(q.coefficient(&ev(&[2, 0])).unwrap(), big(1));

        // multinomial oracle: coefficient of x0 x1 x2 in (x0+x1+x2)^3 is 3! = 6
        let k33 = MultiGraph::complete_bipartite(3).unwrap();
        let q = gurvits_polynomial::<BigRational>(&k33, &[0, 1, 2], &[3, 4, 5]).unwrap();
        let factorial = |n: u64| (1..=n).product::<u64>();
        assert_eq!(
            q.coefficient(&ev(&[1, 1, 1])).unwrap(),
            big(factorial(3) as i64)
        );
    }

    #[test]
    fn gurvits_polynomial_rejects_bad_bipartition() {
        let path = MultiGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(gurvits_polynomial::<BigRational>(&path, &[0, 1], &[2]).is_err());
    }

    #[test]
    fn coefficient_examples() {
        let sq = x_plus_y().multiply(&x_plus_y()).unwrap();
        assert_eq!(sq.coefficient(&ev(&[1, 1])).unwrap(), big(2));
        assert_eq!(x_plus_y().coefficient(&ev(&[1, 1])).unwrap(), big(0));

        // brute-force oracle over the 2^3 orientations of the triangle
        let c3 = MultiGraph::cycle(3).unwrap();
        let mut cyclic = 0;
        for mask in 0u32..8 {
            let mut indeg = [0u32; 3];
            for (j, &(u, v)) in c3.edges().iter().enumerate() {
                let head = if mask >> j & 1 == 0 { u } else { v };
                indeg[head] += 1;
            }
            if indeg == [1, 1, 1] {
                cyclic += 1;
            }
        }
        assert_eq!(cyclic, 2);
        let p = graph_polynomial::<BigInt>(&c3);
        assert_eq!(p.coefficient(&ev(&[1, 1, 1])).unwrap(), BigInt::from(cyclic));
    }

    #[test]
    fn partial_derivative_examples() {
        // d/dx (x^2 + 2xy) = 2x + 2y
        let p = SparsePolynomial::from_terms(
            2,
            [(ev(&[2, 0]), big(1)), (ev(&[1, 1]), big(2))],
        )
        .unwrap();
        let dp = p.partial_derivative(0).unwrap();
        assert_eq!(dp.coefficient(&ev(&[1, 0])).unwrap(), big(2));
        assert_eq!(dp.coefficient(&ev(&[0, 1])).unwrap(), big(2));

        let y = SparsePolynomial::from_terms(2, [(ev(&[0, 1]), big(1))]).unwrap();
        assert!(y.partial_derivative(0).unwrap().is_zero());

        let edge = graph_polynomial::<BigRational>(&MultiGraph::new(2, [(0, 1)]).unwrap());
        let d = edge.partial_derivative(0).unwrap();
        assert_eq!(d.coefficient(&ev(&[0, 0])).unwrap(), big(1));
        assert_eq!(d.num_terms(), 1);

        assert!(p.partial_derivative(5).is_err());
    }

    #[test]
    fn restrict_to_line_examples() {
        let p = x_plus_y();
        let g = p
            .restrict_to_line(&[big(0), big(0)], &[big(1), big(1)])
            .unwrap();
        assert_eq!(g, UnivariatePoly::new(vec![big(0), big(2)]));

        let xy = SparsePolynomial::from_terms(2, [(ev(&[1, 1]), big(1))]).unwrap();
        let g = xy
            .restrict_to_line(&[big(1), big(-1)], &[big(1), big(1)])
            .unwrap();
        // (1+t)(-1+t) = t^2 - 1: the restriction is allowed to go negative
        assert_eq!(g, UnivariatePoly::new(vec![big(-1), big(0), big(1)]));

        let c3 = graph_polynomial::<BigRational>(&MultiGraph::cycle(3).unwrap());
        let g = c3
            .restrict_to_line(&[big(0), big(0), big(0)], &[big(1), big(1), big(1)])
            .unwrap();
        assert_eq!(
            g,
            UnivariatePoly::new(vec![big(0), big(0), big(0), big(8)])
        );
    }

    #[test]
    fn restrict_to_line_rejects_bad_directions() {
        let p = x_plus_y();
        assert_eq!(
            p.restrict_to_line(&[big(0), big(0)], &[big(1), big(0)]),
            Err(Error::NonPositiveDirection { index: 1 })
        );
        assert_eq!(
            p.restrict_to_line(&[big(0), big(0)], &[big(1), big(-1)]),
            Err(Error::NonPositiveDirection { index: 1 })
        );
        assert!(p.restrict_to_line(&[big(0)], &[big(1), big(1)]).is_err());
    }

    #[test]
    fn slice_coefficient_examples() {
        // x^2 y + x y^2 + y^3, slice x^1 -> y^2
        let p = SparsePolynomial::from_terms(
            2,
            [
                (ev(&[2, 1]), big(1)),
                (ev(&[1, 2]), big(1)),
                (ev(&[0, 3]), big(1)),
            ],
        )
        .unwrap();
        let s = p.slice_coefficient(0, 1).unwrap();
        assert_eq!(s.n_vars(), 1);
        assert_eq!(s.coefficient(&ev(&[2])).unwrap(), big(1));
        assert_eq!(s.num_terms(), 1);

        let s0 = x_plus_y().slice_coefficient(0, 0).unwrap();
        assert_eq!(s0.coefficient(&ev(&[1])).unwrap(), big(1));
        assert_eq!(s0.num_terms(), 1);

        // iterated slices of P_{K_{2,2}} at x0^1, x1^1 leave coefficient 2 at y0 y1
        let k22 = MultiGraph::complete_bipartite(2).unwrap();
        let p = graph_polynomial::<BigInt>(&k22);
        let sliced = p
            .slice_coefficient(0, 1)
            .unwrap()
            .slice_coefficient(0, 1)
            .unwrap();
        assert_eq!(sliced.coefficient(&ev(&[1, 1])).unwrap(), BigInt::from(2));
    }

    #[test]
    fn slice_composition_recovers_coefficient() {
        let g = MultiGraph::cycle(4).unwrap();
        let p = graph_polynomial::<BigInt>(&g);
        for (key, coeff) in p.terms() {
            let mut q = p.clone();
            for &e in key.entries() {
                q = q.slice_coefficient(0, e).unwrap();
            }
            assert_eq!(q.coefficient(&ExponentVector::zeros(0)).unwrap(), *coeff);
        }
    }

    #[test]
    fn substitute_drops_variable() {
        let p = x_plus_y();
        let q = p.substitute(0, &big(3)).unwrap();
        assert_eq!(q.n_vars(), 1);
        assert_eq!(q.coefficient(&ev(&[0])).unwrap(), big(3));
        assert_eq!(q.coefficient(&ev(&[1])).unwrap(), big(1));
        assert!(p.substitute(0, &big(-1)).is_err());
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let g = MultiGraph::complete(4).unwrap();
        let p = graph_polynomial::<f64>(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let h = 1e-5;
        for _ in 0..20 {
            let x: Vec<f64> = (0..4).map(|_| 0.5 + rng.gen::<f64>()).collect();
            for i in 0..4 {
                let dp = p.partial_derivative(i).unwrap();
                let analytic = dp.evaluate(&x).unwrap();
                let mut hi = x.clone();
                let mut lo = x.clone();
                hi[i] += h;
                lo[i] -= h;
                let numeric =
                    (p.evaluate(&hi).unwrap() - p.evaluate(&lo).unwrap()) / (2.0 * h);
                assert!(
                    (analytic - numeric).abs() <= 1e-6 * analytic.abs().max(1.0),
                    "derivative mismatch at {x:?}: {analytic} vs {numeric}"
                );
            }
        }
    }

    #[test]
    fn exact_and_numeric_evaluation_agree() {
        let g = MultiGraph::complete_bipartite(3).unwrap();
        let exact = graph_polynomial::<BigRational>(&g);
        let numeric = graph_polynomial::<f64>(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            // dyadic points are exactly representable in both modes
            let pts: Vec<u32> = (0..6).map(|_| rng.gen_range(1..=64)).collect();
            let xr: Vec<BigRational> = pts
                .iter()
                .map(|&k| big(i64::from(k)) / big(16))
                .collect();
            let xf: Vec<f64> = pts.iter().map(|&k| f64::from(k) / 16.0).collect();
            let ve = exact.evaluate(&xr).unwrap().to_f64();
            let vf = numeric.evaluate(&xf).unwrap();
            assert!((ve - vf).abs() <= 1e-12 * ve.abs());
        }
    }

    #[test]
    fn univariate_basics() {
        let p = UnivariatePoly::new(vec![big(2), big(-3), big(1)]);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.evaluate(&big(1)), big(0));
        assert_eq!(p.evaluate(&big(2)), big(0));
        assert_eq!(p.evaluate(&big(3)), big(2));
        assert_eq!(p.derivative(), UnivariatePoly::new(vec![big(-3), big(2)]));
        assert_eq!(
            UnivariatePoly::from_roots(&[big(1), big(2)]),
            p,
            "from_roots builds the monic polynomial"
        );
        assert!(UnivariatePoly::<BigRational>::zero().is_zero());
        assert_eq!(p.low_degree(), Some(0));
        assert_eq!(
            UnivariatePoly::new(vec![big(0), big(0), big(5)]).low_degree(),
            Some(2)
        );
    }
}
