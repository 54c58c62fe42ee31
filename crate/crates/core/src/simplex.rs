//! Dense primal simplex for small equality-form LPs
//! `min c·λ  s.t.  A λ = b, λ ≥ 0`, started from a caller-supplied feasible
//! basis. Entering and leaving variables follow Bland's rule.

use crate::error::{Error, Result};

pub const TOLERANCE: f64 = 1e-9;

const MAX_PIVOTS: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct DenseLp {
    rows: usize,
    cols: usize,
    // row-major rows x cols
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub objective: f64,
    pub x: Vec<f64>,
    pub pivots: usize,
}

impl DenseLp {
    pub fn new(rows: usize, cols: usize, a: Vec<f64>, b: Vec<f64>, c: Vec<f64>) -> Self {
        assert_eq!(a.len(), rows * cols);
        assert_eq!(b.len(), rows);
        assert_eq!(c.len(), cols);
        DenseLp { rows, cols, a, b, c }
    }

    pub fn cost(&self) -> &[f64] {
        &self.c
    }

    /// Same constraints with the objective negated.
    pub fn negated(&self) -> DenseLp {
        DenseLp {
            c: self.c.iter().map(|v| -v).collect(),
            ..self.clone()
        }
    }

    /// Solves the LP starting from `basis`, one column per row, which must be
    /// nonsingular and primal feasible.
    pub fn solve_from_basis(&self, basis: &[usize]) -> Result<LpSolution> {
        if basis.len() != self.rows {
            return Err(Error::InvariantViolation(format!(
                "basis has {} columns for {} rows",
                basis.len(),
                self.rows
            )));
        }
        let mut tab = Tableau::new(self, basis)?;
        let pivots = tab.run(&self.c)?;
        let mut x = vec![0.0; self.cols];
        for (r, &col) in tab.basis.iter().enumerate() {
            x[col] = tab.rhs(r).max(0.0);
        }
        let objective = x.iter().zip(&self.c).map(|(v, c)| v * c).sum();
        Ok(LpSolution { objective, x, pivots })
    }
}

struct Tableau {
    rows: usize,
    width: usize, // cols + 1, last column is the rhs
    t: Vec<f64>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
}

impl Tableau {
    fn new(lp: &DenseLp, basis: &[usize]) -> Result<Tableau> {
        let width = lp.cols + 1;
        let mut t = vec![0.0; lp.rows * width];
        for r in 0..lp.rows {
            t[r * width..r * width + lp.cols].copy_from_slice(&lp.a[r * lp.cols..(r + 1) * lp.cols]);
            t[r * width + lp.cols] = lp.b[r];
        }
        let mut tab = Tableau {
            rows: lp.rows,
            width,
            t,
            basis: vec![usize::MAX; lp.rows],
            is_basic: vec![false; lp.cols],
        };
        // bring the basis columns to identity form with partial pivoting
        let mut assigned = vec![false; lp.rows];
        for &col in basis {
            let row = (0..lp.rows)
                .filter(|&r| !assigned[r])
                .max_by(|&p, &q| tab.at(p, col).abs().total_cmp(&tab.at(q, col).abs()))
                .filter(|&r| tab.at(r, col).abs() > TOLERANCE)
                .ok_or_else(|| Error::InvariantViolation("initial basis is singular".into()))?;
            assigned[row] = true;
            tab.pivot(row, col);
            tab.basis[row] = col;
            tab.is_basic[col] = true;
        }
        for r in 0..tab.rows {
            let v = tab.rhs(r);
            if v < -TOLERANCE {
                return Err(Error::InvariantViolation(format!(
                    "initial basis is infeasible (basic value {v})"
                )));
            }
        }
        Ok(tab)
    }

    fn at(&self, r: usize, c: usize) -> f64 {
        self.t[r * self.width + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.width - 1)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.width;
        let p = self.t[row * w + col];
        for v in &mut self.t[row * w..(row + 1) * w] {
            *v /= p;
        }
        let pivot_row: Vec<f64> = self.t[row * w..(row + 1) * w].to_vec();
        for r in 0..self.rows {
            if r == row {
                continue;
            }
            let f = self.t[r * w + col];
            if f == 0.0 {
                continue;
            }
            for (v, pv) in self.t[r * w..(r + 1) * w].iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            self.t[r * w + col] = 0.0;
        }
    }

    fn run(&mut self, c: &[f64]) -> Result<usize> {
        let cols = self.width - 1;
        // reduced costs r_j = c_j - c_B B^{-1} A_j, kept up to date on each pivot
        let mut reduced: Vec<f64> = c.to_vec();
        for r in 0..self.rows {
            let cb = c[self.basis[r]];
            if cb != 0.0 {
                for (j, rc) in reduced.iter_mut().enumerate() {
                    *rc -= cb * self.at(r, j);
                }
            }
        }
        for pivots in 0..MAX_PIVOTS {
            let entering = (0..cols).find(|&j| !self.is_basic[j] && reduced[j] < -TOLERANCE);
            let Some(col) = entering else {
                return Ok(pivots);
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, col);
                if a <= TOLERANCE {
                    continue;
                }
                let ratio = self.rhs(r).max(0.0) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((best, best_ratio)) => {
                        if ratio < best_ratio - 1e-12
                            || (ratio <= best_ratio + 1e-12 && self.basis[r] < self.basis[best])
                        {
                            Some((r, ratio))
                        } else {
                            Some((best, best_ratio))
                        }
                    }
                };
            }
            let Some((row, _)) = leave else {
                return Err(Error::InvariantViolation("LP is unbounded".into()));
            };
            self.pivot(row, col);
            let f = reduced[col];
            for (j, rc) in reduced.iter_mut().enumerate() {
                *rc -= f * self.at(row, j);
            }
            reduced[col] = 0.0;
            self.is_basic[self.basis[row]] = false;
            self.basis[row] = col;
            self.is_basic[col] = true;
        }
        Err(Error::InvariantViolation(format!(
            "simplex did not terminate within {MAX_PIVOTS} pivots"
        )))
    }
}
