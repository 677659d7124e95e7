//! Two-phase primal simplex on a dense rational tableau.
//!
//! Pricing is Dantzig's rule (most negative reduced cost); after
//! `DEGENERATE_SWITCH` consecutive degenerate pivots it switches to Bland's
//! rule until the objective moves again. Cycling needs an unbroken run of
//! degenerate pivots, during which Bland's rule is in force, so the method
//! always terminates.

use super::{LinearProgram, LpSolution, Relation};
use crate::error::{Error, Result};
use crate::rational::Rational;

const DEGENERATE_SWITCH: usize = 50;

struct Tableau {
    /// `rows[i]` holds the columns followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs `c_B B⁻¹ A_j − c_j`, with the objective value last.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        if !inv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let nz: Vec<usize> = (0..=self.ncols).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for &j in &nz {
                let d = &f * &pivot_row[j];
                row[j] -= &d;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    fn set_objective(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> =
            (0..=self.ncols).map(|j| if j < self.ncols { -&cost[j] } else { Rational::zero() }).collect();
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero() {
                    obj[j] += &(&cost[b] * v);
                }
            }
        }
        self.obj = obj;
    }

    /// Runs simplex iterations over columns allowed by `allowed`.
    fn optimize(&mut self, allowed: &dyn Fn(usize) -> bool) -> Result<()> {
        let mut degenerate = 0usize;
        loop {
            let bland = degenerate >= DEGENERATE_SWITCH;
            let mut enter: Option<usize> = None;
            for j in 0..self.ncols {
                if !allowed(j) || !self.obj[j].is_negative() {
                    continue;
                }
                if bland {
                    enter = Some(j);
                    break;
                }
                if enter.map_or(true, |e| self.obj[j] < self.obj[e]) {
                    enter = Some(j);
                }
            }
            let Some(c) = enter else { return Ok(()) };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, ratio)) = leave else { return Err(Error::Unbounded) };
            if ratio.is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(r, c);
        }
    }
}

/// Solves `lp` with the exact two-phase simplex.
pub fn exact_simplex(lp: &LinearProgram) -> Result<LpSolution> {
    let n = lp.num_vars;
    let m = lp.constraints.len();
    // Columns: originals, one slack per inequality row, one artificial per
    // row that lacks a usable slack.
    let mut slack_of = vec![None; m];
    let mut next = n;
    for (i, row) in lp.constraints.iter().enumerate() {
        if row.relation != Relation::Eq {
            slack_of[i] = Some(next);
            next += 1;
        }
    }
    let mut sign = vec![Rational::one(); m];
    let mut init_col = vec![0usize; m];
    let mut artificial_of = vec![None; m];
    for (i, row) in lp.constraints.iter().enumerate() {
        if row.rhs.is_negative() {
            sign[i] = -Rational::one();
        }
        let slack_sign_positive = match row.relation {
            Relation::Le => !row.rhs.is_negative(),
            Relation::Ge => row.rhs.is_negative(),
            Relation::Eq => false,
        };
        if slack_sign_positive {
            init_col[i] = slack_of[i].expect("inequality rows have slacks");
        } else {
            artificial_of[i] = Some(next);
            init_col[i] = next;
            next += 1;
        }
    }
    let ncols = next;
    let first_artificial = n + slack_of.iter().flatten().count();
    let mut rows = vec![vec![Rational::zero(); ncols + 1]; m];
    for (i, row) in lp.constraints.iter().enumerate() {
        for (j, a) in &row.coeffs {
            rows[i][*j] += &(a * &sign[i]);
        }
        if let Some(s) = slack_of[i] {
            let base = if row.relation == Relation::Le { Rational::one() } else { -Rational::one() };
            rows[i][s] = &base * &sign[i];
        }
        if let Some(a) = artificial_of[i] {
            rows[i][a] = Rational::one();
        }
        rows[i][ncols] = &row.rhs * &sign[i];
    }
    let mut t = Tableau { rows, obj: Vec::new(), basis: init_col.clone(), ncols };

    if first_artificial < ncols {
        let cost: Vec<Rational> =
            (0..ncols).map(|j| if j >= first_artificial { -Rational::one() } else { Rational::zero() }).collect();
        t.set_objective(&cost);
        t.optimize(&|_| true)?;
        if t.obj[ncols].is_negative() {
            return Err(Error::Infeasible);
        }
        // Drive zero-level artificials out of the basis where possible; rows
        // where that fails are redundant and stay inert.
        for i in 0..m {
            if t.basis[i] >= first_artificial {
                if let Some(c) = (0..first_artificial).find(|&j| !t.rows[i][j].is_zero()) {
                    t.pivot(i, c);
                }
            }
        }
    }

    let mut cost = vec![Rational::zero(); ncols];
    for (j, c) in &lp.objective {
        cost[*j] += c;
    }
    t.set_objective(&cost);
    t.optimize(&|j| j < first_artificial)?;

    let mut primal = vec![Rational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            primal[b] = t.rhs(i).clone();
        }
    }
    // The reduced cost of the initial basis column of row i is c_B B⁻¹ e_i.
    let dual = (0..m).map(|i| &(&t.obj[init_col[i]] + &cost[init_col[i]]) * &sign[i]).collect();
    Ok(LpSolution { optimum: lp.objective_value(&primal), primal, dual })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6).
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![(0, r(3)), (1, r(5))];
        lp.add(vec![(0, r(1))], Relation::Le, r(4));
        lp.add(vec![(1, r(2))], Relation::Le, r(12));
        lp.add(vec![(0, r(3)), (1, r(2))], Relation::Le, r(18));
        let s = exact_simplex(&lp).unwrap();
        assert_eq!(s.optimum, r(36));
        assert_eq!(s.primal, vec![r(2), r(6)]);
        assert!(s.certifies(&lp));
    }

    #[test]
    fn negative_rhs_and_ge_rows() {
        // max -x - y, x + y ≥ 2, -x ≤ -1/2 → -2.
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![(0, r(-1)), (1, r(-1))];
        lp.add(vec![(0, r(1)), (1, r(1))], Relation::Ge, r(2));
        lp.add(vec![(0, r(-1))], Relation::Le, Rational::new(-1, 2));
        let s = exact_simplex(&lp).unwrap();
        assert_eq!(s.optimum, r(-2));
        assert!(s.certifies(&lp));
    }

    #[test]
    fn beale_cycling_example_terminates() {
        // Beale's example cycles under the textbook rule without anti-cycling.
        let q = |n, d| Rational::new(n, d);
        let mut lp = LinearProgram::new(4);
        lp.objective = vec![(0, q(3, 4)), (1, q(-150, 1)), (2, q(1, 50)), (3, q(-6, 1))];
        lp.add(vec![(0, q(1, 4)), (1, q(-60, 1)), (2, q(-1, 25)), (3, q(9, 1))], Relation::Le, r(0));
        lp.add(vec![(0, q(1, 2)), (1, q(-90, 1)), (2, q(-1, 50)), (3, q(3, 1))], Relation::Le, r(0));
        lp.add(vec![(2, r(1))], Relation::Le, r(1));
        let s = exact_simplex(&lp).unwrap();
        assert_eq!(s.optimum, q(1, 20));
        assert!(s.certifies(&lp));
    }
}
