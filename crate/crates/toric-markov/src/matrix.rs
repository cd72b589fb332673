//! Configuration matrices: admission, positive gradings, kernel access.
//!
//! A configuration matrix is an integer matrix whose kernel meets the
//! nonnegative orthant only in zero. That property is certified by a positive
//! grading - an integer row vector `c` with `c·a_j >= 1` for every column
//! `a_j` - and the grading doubles as the degree function that makes fiber
//! enumeration finite. Admission decides pointedness by one exact linear
//! program: the kernel-side program is feasible with positive value exactly
//! when a nonnegative kernel vector exists, and its dual at optimum zero is
//! the grading.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fiber::{FiberGraph, FiberKey};
use crate::lattice::{kernel_lattice_basis, LatticeBasis};
use crate::simplex::{self, LinearProgram, Solved};

/// Positive grading: integer `c` with `c·a_j >= 1` on every column `a_j`.
///
/// Scaled to the smallest integer vector the feasibility routine produced;
/// no canonical minimality is guaranteed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    c: Vec<BigInt>,
}

impl Grading {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.c
    }
}

/// Result of the pointedness test on a raw integer matrix.
pub enum PointednessCheck {
    /// The matrix is pointed; here is a positive grading.
    Graded(Grading),
    /// A nonzero nonnegative integer kernel vector, scaled to coprime entries.
    NotPointed(Vec<BigInt>),
}

/// An admitted configuration matrix. Immutable after admission; the fiber
/// cache behind it is interior state and does not affect observable results.
pub struct ConfigMatrix {
    entries: Vec<Vec<BigInt>>,
    d: usize,
    n: usize,
    grading: Grading,
    /// Cached `c·a_j` for every column; each is >= 1.
    col_degrees: Vec<BigInt>,
    fiber_limit: usize,
    pub(crate) cache: Mutex<BTreeMap<FiberKey, Arc<FiberGraph>>>,
}

/// Default cap on fiber size; exceeding it is an error, never a truncation.
pub const DEFAULT_FIBER_LIMIT: usize = 1_000_000;

fn validate_shape(rows: &[Vec<BigInt>]) -> Result<(usize, usize)> {
    let d = rows.len();
    if d == 0 || rows[0].is_empty() {
        return Err(Error::EmptyMatrix);
    }
    let n = rows[0].len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::RaggedRows {
                row: i,
                got: row.len(),
                expected: n,
            });
        }
    }
    Ok((d, n))
}

/// Scale a rational vector to integers with coprime entries.
fn scale_to_integers(v: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.iter().map(|x| x / &g).collect()
}

/// Decide pointedness of a raw integer matrix by exact LP feasibility.
///
/// Either returns a positive grading or a nonzero nonnegative kernel vector,
/// never both. The program solved is `max sum(x) : A x = 0, 0 <= x <= 1`; a
/// positive optimum yields the certificate, optimum zero yields the grading
/// as the dual of the kernel rows.
pub fn positive_grading(rows: &[Vec<BigInt>]) -> Result<PointednessCheck> {
    let (d, n) = validate_shape(rows)?;
    // Variables: x_1..x_n then slacks s_1..s_n.
    let mut constraints = Vec::with_capacity(d + n);
    for row in rows.iter() {
        let mut c: Vec<BigRational> = row
            .iter()
            .map(|v| BigRational::from_integer(v.clone()))
            .collect();
        c.extend(std::iter::repeat_n(BigRational::zero(), n));
        constraints.push(c);
    }
    for j in 0..n {
        let mut c = vec![BigRational::zero(); 2 * n];
        c[j] = BigRational::one();
        c[n + j] = BigRational::one();
        constraints.push(c);
    }
    let mut rhs = vec![BigRational::zero(); d];
    rhs.extend(std::iter::repeat_n(BigRational::one(), n));
    let mut objective = vec![-BigRational::one(); n];
    objective.extend(std::iter::repeat_n(BigRational::zero(), n));

    let lp = LinearProgram {
        constraints,
        rhs,
        objective,
    };
    match simplex::solve(&lp) {
        Solved::Optimal { x, dual, value } => {
            if value.is_zero() {
                // Dual of the kernel rows, negated, is the grading.
                let c_rat: Vec<BigRational> = dual[0..d].iter().map(|w| -w.clone()).collect();
                let c = scale_to_integers(&c_rat);
                for (j, cd) in column_degrees(rows, &c).iter().enumerate() {
                    assert!(
                        cd >= &BigInt::one(),
                        "grading must be strictly positive on column {j}"
                    );
                }
                Ok(PointednessCheck::Graded(Grading { c }))
            } else {
                let cert = scale_to_integers(&x[0..n]);
                debug_assert!(cert.iter().all(|v| !v.is_negative()));
                debug_assert!(cert.iter().any(|v| v.is_positive()));
                Ok(PointednessCheck::NotPointed(cert))
            }
        }
        // `x = 0` is feasible and the objective is bounded by the box.
        _ => unreachable!("pointedness program is feasible and bounded"),
    }
}

fn column_degrees(rows: &[Vec<BigInt>], c: &[BigInt]) -> Vec<BigInt> {
    let n = rows[0].len();
    (0..n)
        .map(|j| rows.iter().zip(c).map(|(row, ci)| &row[j] * ci).sum())
        .collect()
}

impl ConfigMatrix {
    /// Admit a raw integer matrix as a configuration matrix.
    ///
    /// Fails with `ZeroColumn` if some column is zero, or `NotConfiguration`
    /// with a kernel certificate if the kernel meets the nonnegative orthant.
    pub fn admit(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let (d, n) = validate_shape(&rows)?;
        for j in 0..n {
            if rows.iter().all(|row| row[j].is_zero()) {
                return Err(Error::ZeroColumn { col: j });
            }
        }
        match positive_grading(&rows)? {
            PointednessCheck::Graded(grading) => {
                let col_degrees = column_degrees(&rows, grading.coefficients());
                Ok(ConfigMatrix {
                    entries: rows,
                    d,
                    n,
                    grading,
                    col_degrees,
                    fiber_limit: DEFAULT_FIBER_LIMIT,
                    cache: Mutex::new(BTreeMap::new()),
                })
            }
            PointednessCheck::NotPointed(certificate) => {
                Err(Error::NotConfiguration { certificate })
            }
        }
    }

    /// Convenience admission from machine integers.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::admit(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    /// Replace the fiber-size cap (default one million elements). Clears the
    /// fiber cache, since cached graphs may have been admitted under a
    /// different cap.
    pub fn with_fiber_limit(mut self, limit: usize) -> Self {
        self.fiber_limit = limit;
        self.cache = Mutex::new(BTreeMap::new());
        self
    }

    pub fn row_count(&self) -> usize {
        self.d
    }

    pub fn col_count(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row][col]
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    /// `c·a_j` for column `j`; strictly positive by admission.
    pub fn col_degree(&self, j: usize) -> &BigInt {
        &self.col_degrees[j]
    }

    pub fn fiber_limit(&self) -> usize {
        self.fiber_limit
    }

    /// Weighted degree `c·t` of a fiber key.
    pub fn key_degree(&self, key: &FiberKey) -> BigInt {
        self.grading
            .coefficients()
            .iter()
            .zip(key.coords())
            .map(|(c, t)| c * t)
            .sum()
    }

    /// `A·u` for a nonnegative machine-integer vector.
    pub fn apply(&self, u: &[i64]) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(u).map(|(a, &v)| a * BigInt::from(v)).sum())
            .collect()
    }

    /// Exact test for `A·z = 0`.
    pub fn is_kernel_vector(&self, z: &[i64]) -> bool {
        z.len() == self.n && self.apply(z).iter().all(|v| v.is_zero())
    }

    /// Basis of the saturated integer kernel lattice of this matrix.
    pub fn kernel_basis(&self) -> LatticeBasis {
        kernel_lattice_basis(&self.entries)
    }
}

impl Clone for ConfigMatrix {
    fn clone(&self) -> Self {
        ConfigMatrix {
            entries: self.entries.clone(),
            d: self.d,
            n: self.n,
            grading: self.grading.clone(),
            col_degrees: self.col_degrees.clone(),
            fiber_limit: self.fiber_limit,
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for ConfigMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConfigMatrix")
            .field("entries", &self.entries)
            .field("grading", &self.grading)
            .finish()
    }
}
