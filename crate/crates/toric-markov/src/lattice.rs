//! Integer kernel lattices via column-style Hermite normal form.
//!
//! The kernel `{z in Z^n : A z = 0}` of an integer matrix is a saturated
//! lattice; a basis for it falls out of triangularizing `A` by unimodular
//! column operations while tracking the transform. All arithmetic is exact
//! `BigInt`; intermediate growth is accepted, matrices here are desk-scale.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Basis of the saturated kernel lattice `ker(A) ∩ Z^n`.
///
/// The vectors are linearly independent over `Q` and generate every integer
/// kernel vector as an integer combination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.vectors
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

fn col_sub(h: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in h.iter_mut() {
        let delta = q * &row[src];
        row[dst] -= delta;
    }
    for row in u.iter_mut() {
        let delta = q * &row[src];
        row[dst] -= delta;
    }
}

fn col_swap(h: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in h.iter_mut() {
        row.swap(a, b);
    }
    for row in u.iter_mut() {
        row.swap(a, b);
    }
}

fn col_negate(h: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], c: usize) {
    for row in h.iter_mut() {
        let v = std::mem::take(&mut row[c]);
        row[c] = -v;
    }
    for row in u.iter_mut() {
        let v = std::mem::take(&mut row[c]);
        row[c] = -v;
    }
}

/// Kernel lattice basis of a rectangular integer matrix (rows of length `n`).
///
/// Returns the columns of the unimodular transform that map to zero columns
/// of the Hermite form; their count is `n - rank_Q(A)`.
pub fn kernel_lattice_basis(entries: &[Vec<BigInt>]) -> LatticeBasis {
    let d = entries.len();
    let n = if d == 0 { 0 } else { entries[0].len() };
    let mut h: Vec<Vec<BigInt>> = entries.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::from(1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();

    let mut pivot = 0usize;
    for row in 0..d {
        if pivot >= n {
            break;
        }
        // Concentrate the gcd of this row's tail into the pivot column.
        loop {
            let mut best: Option<usize> = None;
            for j in pivot..n {
                if !h[row][j].is_zero() {
                    match best {
                        None => best = Some(j),
                        Some(b) => {
                            if h[row][j].abs() < h[row][b].abs() {
                                best = Some(j)
                            }
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            col_swap(&mut h, &mut u, pivot, b);
            let mut done = true;
            for j in pivot + 1..n {
                if !h[row][j].is_zero() {
                    let q = h[row][j].div_floor(&h[row][pivot]);
                    col_sub(&mut h, &mut u, j, pivot, &q);
                    if !h[row][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[row][pivot].is_zero() {
            continue;
        }
        if h[row][pivot].is_negative() {
            col_negate(&mut h, &mut u, pivot);
        }
        // Hermite reduction of the columns left of the pivot.
        for j in 0..pivot {
            let q = h[row][j].div_floor(&h[row][pivot]);
            col_sub(&mut h, &mut u, j, pivot, &q);
        }
        pivot += 1;
    }

    // Columns past the pivot count are zero in H; the matching transform
    // columns are the kernel basis.
    let mut vectors = Vec::with_capacity(n - pivot);
    for j in pivot..n {
        debug_assert!((0..d).all(|r| h[r][j].is_zero()));
        vectors.push((0..n).map(|i| u[i][j].clone()).collect());
    }
    LatticeBasis { vectors }
}

/// Does the integer lattice spanned by `generators` contain `target`?
///
/// Triangularizes the generators by unimodular column operations, then
/// forward-substitutes with exact divisibility checks.
pub fn lattice_contains(generators: &[Vec<BigInt>], target: &[BigInt]) -> bool {
    let k = generators.len();
    let n = target.len();
    if k == 0 {
        return target.iter().all(Zero::is_zero);
    }
    debug_assert!(generators.iter().all(|g| g.len() == n));
    let mut h: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..k).map(|j| generators[j][i].clone()).collect())
        .collect();
    let mut no_u: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pivot = 0usize;
    for row in 0..n {
        if pivot >= k {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in pivot..k {
                if !h[row][j].is_zero() {
                    match best {
                        None => best = Some(j),
                        Some(b) => {
                            if h[row][j].abs() < h[row][b].abs() {
                                best = Some(j)
                            }
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            col_swap(&mut h, &mut no_u, pivot, b);
            let mut done = true;
            for j in pivot + 1..k {
                if !h[row][j].is_zero() {
                    let q = h[row][j].div_floor(&h[row][pivot]);
                    col_sub(&mut h, &mut no_u, j, pivot, &q);
                    if !h[row][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if !h[row][pivot].is_zero() {
            pivots.push((row, pivot));
            pivot += 1;
        }
    }
    // Forward substitution over the staircase; pivot columns have zeros
    // above their pivot row, columns past the staircase are zero entirely.
    let mut y = vec![BigInt::zero(); k];
    for &(row, col) in &pivots {
        let mut rhs = target[row].clone();
        for c in 0..col {
            rhs -= &h[row][c] * &y[c];
        }
        let (q, r) = num_integer::Integer::div_rem(&rhs, &h[row][col]);
        if !r.is_zero() {
            return false;
        }
        y[col] = q;
    }
    for i in 0..n {
        let mut acc = target[i].clone();
        for c in 0..k {
            acc -= &h[i][c] * &y[c];
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

/// Rank of the matrix over the rationals, read off the same triangularization.
pub fn rational_rank(entries: &[Vec<BigInt>]) -> usize {
    let n = if entries.is_empty() {
        0
    } else {
        entries[0].len()
    };
    n - kernel_lattice_basis(entries).rank()
}
