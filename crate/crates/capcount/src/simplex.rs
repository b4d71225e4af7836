//! Small dense exact-rational simplex solver.
//!
//! Solves `min c.x  s.t.  A x = b, x >= 0` with two phases. Pricing is
//! steepest-coefficient (Dantzig) with a switch to Bland's rule after a
//! stretch of degenerate pivots, so the solver is fast on the typical
//! instance and still provably terminating.
//!
//! Arithmetic is exact throughout. The instances here (Newton polytope
//! membership queries) carry single-digit integer data, so the tableau is
//! first run over word-sized rationals with overflow-checked operations;
//! any overflow restarts the solve over `BigRational`. Feasibility answers
//! and dual certificates are exact either way.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Outcome of an exact LP solve.
#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    /// Optimal basic solution with its exact dual vector (one multiplier
    /// per constraint row, in the caller's original row order and sign).
    Optimal {
        objective: BigRational,
        primal: Vec<BigRational>,
        dual: Vec<BigRational>,
    },
    Unbounded,
}

/// Exact scalar for the tableau: either word-sized with overflow checks or
/// arbitrary precision.
trait Scalar: Clone + PartialEq + PartialOrd + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_div(&self, other: &Self) -> Option<Self>;
    fn from_big(q: &BigRational) -> Option<Self>;
    fn to_big(&self) -> BigRational;
}

/// `i64` numerator/denominator rational, normalized with positive
/// denominator; every operation that could overflow reports `None`.
#[derive(Clone, Copy, PartialEq, Debug)]
struct Rat64 {
    num: i64,
    den: i64,
}

fn gcd64(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl Rat64 {
    fn make(num: i128, den: i128) -> Option<Rat64> {
        if den == 0 {
            return None;
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = {
            let mut a = num.unsigned_abs();
            let mut b = den.unsigned_abs();
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a.max(1)
        };
        let num = num / g as i128;
        let den = den / g as i128;
        Some(Rat64 {
            num: i64::try_from(num).ok()?,
            den: i64::try_from(den).ok()?,
        })
    }
}

impl PartialOrd for Rat64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        // denominators are positive, so cross-multiplication keeps order
        (i128::from(self.num) * i128::from(other.den))
            .partial_cmp(&(i128::from(other.num) * i128::from(self.den)))
    }
}

impl Scalar for Rat64 {
    fn zero() -> Self {
        Rat64 { num: 0, den: 1 }
    }

    fn one() -> Self {
        Rat64 { num: 1, den: 1 }
    }

    fn is_zero(&self) -> bool {
        self.num == 0
    }

    fn is_positive(&self) -> bool {
        self.num > 0
    }

    fn is_negative(&self) -> bool {
        self.num < 0
    }

    fn neg(&self) -> Self {
        Rat64 {
            num: -self.num,
            den: self.den,
        }
    }

    fn checked_add(&self, other: &Self) -> Option<Self> {
        Rat64::make(
            i128::from(self.num) * i128::from(other.den)
                + i128::from(other.num) * i128::from(self.den),
            i128::from(self.den) * i128::from(other.den),
        )
    }

    fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.checked_add(&other.neg())
    }

    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Rat64::make(
            i128::from(self.num) * i128::from(other.num),
            i128::from(self.den) * i128::from(other.den),
        )
    }

    fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.num == 0 {
            return None;
        }
        Rat64::make(
            i128::from(self.num) * i128::from(other.den),
            i128::from(self.den) * i128::from(other.num),
        )
    }

    fn from_big(q: &BigRational) -> Option<Self> {
        let num = i64::try_from(q.numer()).ok()?;
        let den = i64::try_from(q.denom()).ok()?;
        let g = gcd64(num, den);
        Some(Rat64 {
            num: num / g,
            den: den / g,
        })
    }

    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn neg(&self) -> Self {
        -self.clone()
    }

    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }

    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }

    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }

    fn checked_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }

    fn from_big(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }

    fn to_big(&self) -> BigRational {
        self.clone()
    }
}

enum SolveError {
    Overflow,
}

enum RawOutcome<S> {
    Infeasible,
    Unbounded,
    Optimal {
        objective: S,
        primal: Vec<S>,
        dual: Vec<S>,
    },
}

struct Tableau<S> {
    rows: usize,
    cols: usize, // structural columns
    /// rows x (cols + rows artificials + rhs)
    data: Vec<Vec<S>>,
    /// reduced-cost row, same width, last entry = -objective
    cost: Vec<S>,
    basis: Vec<usize>,
    /// pivots since the objective last strictly improved; used to switch
    /// from Dantzig to Bland pricing on long degenerate stretches
    stalled: usize,
}

impl<S: Scalar> Tableau<S> {
    fn width(&self) -> usize {
        self.cols + self.rows + 1
    }

    fn rhs_col(&self) -> usize {
        self.cols + self.rows
    }

    fn pivot(&mut self, row: usize, col: usize) -> Result<(), SolveError> {
        let inv = self.data[row][col].clone();
        for x in self.data[row].iter_mut() {
            *x = x.checked_div(&inv).ok_or(SolveError::Overflow)?;
        }
        for r in 0..self.rows {
            if r == row || self.data[r][col].is_zero() {
                continue;
            }
            let factor = self.data[r][col].clone();
            for j in 0..self.width() {
                let delta = factor
                    .checked_mul(&self.data[row][j])
                    .ok_or(SolveError::Overflow)?;
                self.data[r][j] = self.data[r][j]
                    .checked_sub(&delta)
                    .ok_or(SolveError::Overflow)?;
            }
        }
        if !self.cost[col].is_zero() {
            let factor = self.cost[col].clone();
            for j in 0..self.width() {
                let delta = factor
                    .checked_mul(&self.data[row][j])
                    .ok_or(SolveError::Overflow)?;
                self.cost[j] = self.cost[j]
                    .checked_sub(&delta)
                    .ok_or(SolveError::Overflow)?;
            }
        }
        self.basis[row] = col;
        Ok(())
    }

    /// Pivot until optimal (`Ok(true)`) or unbounded (`Ok(false)`).
    /// Columns at or past `col_limit` (phase-2 artificials) never enter.
    fn optimize(&mut self, col_limit: usize) -> Result<bool, SolveError> {
        let bland_after = 8 * (self.rows + self.cols) + 64;
        loop {
            let col = if self.stalled <= bland_after {
                // Dantzig: most negative reduced cost
                let mut best: Option<(usize, &S)> = None;
                for j in 0..col_limit {
                    if self.cost[j].is_negative()
                        && best.is_none_or(|(_, c)| self.cost[j] < *c)
                    {
                        best = Some((j, &self.cost[j]));
                    }
                }
                best.map(|(j, _)| j)
            } else {
                (0..col_limit).find(|&j| self.cost[j].is_negative())
            };
            let Some(col) = col else {
                return Ok(true);
            };
            let rhs = self.rhs_col();
            let mut leaving: Option<usize> = None;
            let mut best_ratio: Option<S> = None;
            for r in 0..self.rows {
                if !self.data[r][col].is_positive() {
                    continue;
                }
                let ratio = self.data[r][rhs]
                    .checked_div(&self.data[r][col])
                    .ok_or(SolveError::Overflow)?;
                let better = match &best_ratio {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && self.basis[r] < self.basis[leaving.unwrap()])
                    }
                };
                if better {
                    best_ratio = Some(ratio);
                    leaving = Some(r);
                }
            }
            match leaving {
                Some(row) => {
                    let degenerate = best_ratio.as_ref().is_some_and(S::is_zero);
                    self.stalled = if degenerate { self.stalled + 1 } else { 0 };
                    self.pivot(row, col)?;
                }
                None => return Ok(false),
            }
        }
    }
}

fn solve_generic<S: Scalar>(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    c: &[BigRational],
) -> Result<RawOutcome<S>, SolveError> {
    let rows = a.len();
    let cols = c.len();
    let convert = |q: &BigRational| S::from_big(q).ok_or(SolveError::Overflow);

    let mut data = Vec::with_capacity(rows);
    let mut flipped = vec![false; rows];
    for (i, row) in a.iter().enumerate() {
        let flip = Signed::is_negative(&b[i]);
        flipped[i] = flip;
        let mut full = Vec::with_capacity(cols + rows + 1);
        for x in row {
            let v = convert(x)?;
            full.push(if flip { v.neg() } else { v });
        }
        for j in 0..rows {
            full.push(if j == i { S::one() } else { S::zero() });
        }
        let rb = convert(&b[i])?;
        full.push(if flip { rb.neg() } else { rb });
        data.push(full);
    }

    let mut t = Tableau {
        rows,
        cols,
        data,
        cost: vec![S::zero(); cols + rows + 1],
        basis: (cols..cols + rows).collect(),
        stalled: 0,
    };

    // phase 1: minimize the artificial sum; the cost row is the unit cost
    // on artificials reduced against the all-artificial starting basis
    for j in 0..t.width() {
        let mut s = S::zero();
        for r in 0..rows {
            s = s.checked_add(&t.data[r][j]).ok_or(SolveError::Overflow)?;
        }
        t.cost[j] = if (t.cols..t.cols + t.rows).contains(&j) {
            S::one().checked_sub(&s).ok_or(SolveError::Overflow)?
        } else {
            s.neg()
        };
    }
    t.optimize(cols + rows)?;
    let rhs = t.rhs_col();
    let phase1 = t.cost[rhs].neg();
    if phase1.is_positive() {
        return Ok(RawOutcome::Infeasible);
    }

    // drive zero-level artificials out of the basis where possible
    for r in 0..rows {
        if t.basis[r] >= cols {
            if let Some(col) = (0..cols).find(|&j| !t.data[r][j].is_zero()) {
                t.pivot(r, col)?;
            }
        }
    }

    // phase 2: real objective, artificials blocked from entering
    t.cost = vec![S::zero(); t.width()];
    for (j, cj) in c.iter().enumerate() {
        t.cost[j] = convert(cj)?;
    }
    t.stalled = 0;
    for r in 0..rows {
        let var = t.basis[r];
        if var < cols && !t.cost[var].is_zero() {
            let factor = t.cost[var].clone();
            for j in 0..t.width() {
                let delta = factor
                    .checked_mul(&t.data[r][j])
                    .ok_or(SolveError::Overflow)?;
                t.cost[j] = t.cost[j].checked_sub(&delta).ok_or(SolveError::Overflow)?;
            }
        }
    }
    if !t.optimize(cols)? {
        return Ok(RawOutcome::Unbounded);
    }

    let mut primal = vec![S::zero(); cols];
    for r in 0..rows {
        if t.basis[r] < cols {
            primal[t.basis[r]] = t.data[r][rhs].clone();
        }
    }
    // dual multiplier for row i: y_i = -reduced_cost(artificial_i),
    // undoing the sign flip applied to rows with negative rhs
    let dual = (0..rows)
        .map(|i| {
            let y = t.cost[cols + i].neg();
            if flipped[i] {
                y.neg()
            } else {
                y
            }
        })
        .collect();
    Ok(RawOutcome::Optimal {
        objective: t.cost[rhs].neg(),
        primal,
        dual,
    })
}

fn finish<S: Scalar>(raw: RawOutcome<S>) -> LpOutcome {
    match raw {
        RawOutcome::Infeasible => LpOutcome::Infeasible,
        RawOutcome::Unbounded => LpOutcome::Unbounded,
        RawOutcome::Optimal {
            objective,
            primal,
            dual,
        } => LpOutcome::Optimal {
            objective: objective.to_big(),
            primal: primal.iter().map(Scalar::to_big).collect(),
            dual: dual.iter().map(Scalar::to_big).collect(),
        },
    }
}

/// Minimize `c.x` subject to `A x = b`, `x >= 0`, all exact.
pub fn solve_min(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let rows = a.len();
    assert_eq!(b.len(), rows, "one rhs entry per row");
    for row in a {
        assert_eq!(row.len(), c.len(), "ragged constraint matrix");
    }
    match solve_generic::<Rat64>(a, b, c) {
        Ok(out) => finish(out),
        Err(SolveError::Overflow) => match solve_generic::<BigRational>(a, b, c) {
            Ok(out) => finish(out),
            Err(SolveError::Overflow) => unreachable!("BigRational arithmetic cannot overflow"),
        },
    }
}
