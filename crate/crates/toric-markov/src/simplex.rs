//! Dense exact-arithmetic simplex over the rationals.
//!
//! Solves `min c·x` subject to `M x = b`, `x >= 0` with two phases and
//! Bland's pivoting rule, so termination is guaranteed and every number is an
//! exact `BigRational`. The optimal dual vector is recovered from the reduced
//! costs of the artificial columns, which is what the matrix-admission check
//! needs: the dual of the kernel feasibility program is a positive grading.
//!
//! Problem sizes here are tiny (tens of rows and columns), so the classic
//! full-tableau formulation is the right tool; no factorization, no scaling.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Equality-form linear program `min objective·x : constraints·x = rhs, x >= 0`.
pub struct LinearProgram {
    /// Constraint rows, each of length `num_vars`.
    pub constraints: Vec<Vec<BigRational>>,
    /// Right-hand side, one entry per constraint row.
    pub rhs: Vec<BigRational>,
    /// Objective coefficients, one per variable.
    pub objective: Vec<BigRational>,
}

/// Outcome of [`solve`].
pub enum Solved {
    Optimal {
        /// Optimal primal point, one entry per variable.
        x: Vec<BigRational>,
        /// Optimal dual vector, one entry per original constraint row.
        dual: Vec<BigRational>,
        /// Optimal objective value.
        value: BigRational,
    },
    Infeasible,
    Unbounded,
}

fn ratio(a: &BigRational, b: &BigRational) -> BigRational {
    a / b
}

struct Tableau {
    /// `rows x (num_vars + num_rows + 1)`: real columns, artificial columns,
    /// right-hand side. Artificial column `i` starts as the unit vector `e_i`.
    rows: Vec<Vec<BigRational>>,
    /// Basic variable (column index) of each row.
    basis: Vec<usize>,
    /// Original constraint-row index behind each tableau row.
    origin: Vec<usize>,
    /// Sign the original row was multiplied by to make the rhs nonnegative.
    row_sign: Vec<i32>,
    num_vars: usize,
    num_art: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &BigRational {
        let w = self.num_vars + self.num_art;
        &self.rows[r][w]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.num_vars + self.num_art + 1;
        let p = self.rows[row][col].clone();
        debug_assert!(!p.is_zero());
        for j in 0..width {
            let v = std::mem::take(&mut self.rows[row][j]);
            self.rows[row][j] = v / &p;
        }
        for r in 0..self.rows.len() {
            if r == row || self.rows[r][col].is_zero() {
                continue;
            }
            let f = self.rows[r][col].clone();
            for j in 0..width {
                let delta = &f * &self.rows[row][j];
                let v = std::mem::take(&mut self.rows[r][j]);
                self.rows[r][j] = v - delta;
            }
        }
        self.basis[row] = col;
    }

    /// Reduced costs `c_j - y·M_j` for the given per-column cost function.
    fn reduced_costs(&self, cost: &dyn Fn(usize) -> BigRational) -> Vec<BigRational> {
        let width = self.num_vars + self.num_art;
        let mut red = Vec::with_capacity(width);
        for j in 0..width {
            let mut r = cost(j);
            for (row, &b) in self.basis.iter().enumerate() {
                if !self.rows[row][j].is_zero() {
                    r -= cost(b) * &self.rows[row][j];
                }
            }
            red.push(r);
        }
        red
    }

    /// One phase of Bland simplex. `enterable` filters candidate columns.
    /// Returns false if an unbounded ray was detected.
    fn run_phase(
        &mut self,
        cost: &dyn Fn(usize) -> BigRational,
        enterable: &dyn Fn(usize) -> bool,
    ) -> bool {
        loop {
            let red = self.reduced_costs(cost);
            // Bland: lowest-index column with negative reduced cost.
            let entering = (0..red.len()).find(|&j| enterable(j) && red[j].is_negative());
            let Some(e) = entering else { return true };
            // Ratio test; ties broken by lowest basic-variable index.
            let mut leave: Option<(usize, BigRational)> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][e].is_positive() {
                    let t = ratio(self.rhs(r), &self.rows[r][e]);
                    match &leave {
                        None => leave = Some((r, t)),
                        Some((lr, lt)) => {
                            if t < *lt || (t == *lt && self.basis[r] < self.basis[*lr]) {
                                leave = Some((r, t));
                            }
                        }
                    }
                }
            }
            let Some((row, _)) = leave else { return false };
            self.pivot(row, e);
        }
    }
}

/// Solve the program exactly. Duals are reported for the original row
/// orientation; redundant rows dropped during phase one get dual zero.
pub fn solve(lp: &LinearProgram) -> Solved {
    let m = lp.constraints.len();
    let n = lp.objective.len();
    let mut rows = Vec::with_capacity(m);
    let mut row_sign = vec![1i32; m];
    for (i, row) in lp.constraints.iter().enumerate() {
        debug_assert_eq!(row.len(), n);
        let mut t: Vec<BigRational> = Vec::with_capacity(n + m + 1);
        t.extend(row.iter().cloned());
        let mut b = lp.rhs[i].clone();
        // Normalize to a nonnegative rhs first; the artificial columns are
        // appended afterwards so they stay an identity block.
        if b.is_negative() {
            row_sign[i] = -1;
            for v in t.iter_mut() {
                *v = -std::mem::take(v);
            }
            b = -b;
        }
        for j in 0..m {
            t.push(if j == i {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        t.push(b);
        rows.push(t);
    }
    let mut tab = Tableau {
        rows,
        basis: (n..n + m).collect(),
        origin: (0..m).collect(),
        row_sign,
        num_vars: n,
        num_art: m,
    };

    // Phase one: drive the artificial variables to zero.
    let art_cost = |j: usize| {
        if j >= n {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    };
    let ok = tab.run_phase(&art_cost, &|_| true);
    debug_assert!(ok, "phase one is bounded below by zero");
    let mut infeas = BigRational::zero();
    for (r, &b) in tab.basis.iter().enumerate() {
        if b >= n {
            infeas += tab.rhs(r);
        }
    }
    if !infeas.is_zero() {
        return Solved::Infeasible;
    }

    // Pivot remaining zero-valued artificials out of the basis; rows whose
    // real part is entirely zero are redundant and are removed.
    let mut r = 0;
    while r < tab.basis.len() {
        if tab.basis[r] >= n {
            if let Some(col) = (0..n).find(|&j| !tab.rows[r][j].is_zero()) {
                tab.pivot(r, col);
            } else {
                tab.rows.remove(r);
                tab.basis.remove(r);
                tab.origin.remove(r);
                tab.row_sign.remove(r);
                continue;
            }
        }
        r += 1;
    }

    // Phase two on the real objective; artificial columns stay in the tableau
    // (their reduced costs carry the dual) but may never re-enter.
    let real_cost = |j: usize| {
        if j < n {
            lp.objective[j].clone()
        } else {
            BigRational::zero()
        }
    };
    if !tab.run_phase(&real_cost, &|j| j < n) {
        return Solved::Unbounded;
    }

    let mut x = vec![BigRational::zero(); n];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.rhs(r).clone();
        }
    }
    let red = tab.reduced_costs(&real_cost);
    let mut dual = vec![BigRational::zero(); m];
    for (k, &orig) in tab.origin.iter().enumerate() {
        // Artificial column k equals B^{-1} e_k, so y_k = -reduced cost.
        let y = -red[n + k].clone();
        dual[orig] = if tab.row_sign[k] < 0 { -y } else { y };
    }
    let value = lp
        .objective
        .iter()
        .zip(&x)
        .map(|(c, v)| c * v)
        .fold(BigRational::zero(), |a, b| a + b);
    Solved::Optimal { x, dual, value }
}

/// Convenience: an integer as an exact rational.
pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
