//! Exact linear programming and the non-signaling value.
//!
//! Programs are `max c·x` subject to linear rows and `x ≥ 0`. Every
//! solution carries a primal point and a dual vector, and both are checked
//! exactly against the original program before being returned.

mod guided;
mod modular;
mod ns;
mod simplex;

pub use ns::{build_ns_lp, ns_value, ns_value_with, NsConstraints, NsOptions, NsStrategy, DEFAULT_NS_VARIABLE_BUDGET};
pub use simplex::exact_simplex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// Sparse coefficients `(variable, value)`.
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `max objective·x` subject to `constraints` and `x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<(usize, Rational)>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { num_vars, ..Default::default() }
    }

    pub fn add(&mut self, coeffs: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().map(|(j, c)| c * &x[*j]).sum()
    }

    fn row_value(row: &Constraint, x: &[Rational]) -> Rational {
        row.coeffs.iter().map(|(j, a)| a * &x[*j]).sum()
    }

    /// Exact primal feasibility.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|row| {
                let lhs = Self::row_value(row, x);
                match row.relation {
                    Relation::Le => lhs <= row.rhs,
                    Relation::Eq => lhs == row.rhs,
                    Relation::Ge => lhs >= row.rhs,
                }
            })
    }

    /// Exact dual feasibility: `Aᵀy ≥ c` with `y ≥ 0` on `≤` rows, `y ≤ 0`
    /// on `≥` rows, and `y` free on equalities. Any such `y` bounds the
    /// optimum by `b·y`.
    pub fn is_dual_feasible(&self, y: &[Rational]) -> bool {
        if y.len() != self.constraints.len() {
            return false;
        }
        let signs_ok = self.constraints.iter().zip(y).all(|(row, v)| match row.relation {
            Relation::Le => !v.is_negative(),
            Relation::Ge => !v.is_positive(),
            Relation::Eq => true,
        });
        if !signs_ok {
            return false;
        }
        let mut aty = vec![Rational::zero(); self.num_vars];
        for (row, v) in self.constraints.iter().zip(y) {
            if v.is_zero() {
                continue;
            }
            for (j, a) in &row.coeffs {
                aty[*j] += &(a * v);
            }
        }
        let mut c = vec![Rational::zero(); self.num_vars];
        for (j, v) in &self.objective {
            c[*j] += v;
        }
        aty.iter().zip(&c).all(|(l, r)| l >= r)
    }

    pub fn dual_value(&self, y: &[Rational]) -> Rational {
        self.constraints.iter().zip(y).map(|(row, v)| &row.rhs * v).sum()
    }
}

/// An optimal primal point and a dual certificate of the same value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub optimum: Rational,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
}

impl LpSolution {
    /// True when the primal point is feasible, the dual is feasible, and both
    /// attain `optimum`: a complete proof of optimality.
    pub fn certifies(&self, lp: &LinearProgram) -> bool {
        lp.is_feasible(&self.primal)
            && lp.is_dual_feasible(&self.dual)
            && lp.objective_value(&self.primal) == self.optimum
            && lp.dual_value(&self.dual) == self.optimum
    }
}

/// Programs with at most this many `rows × columns` tableau cells go
/// straight to the exact simplex.
pub const EXACT_TABLEAU_LIMIT: usize = 600_000;

/// Solves `lp` exactly. Large programs are first solved in floating point
/// and then reconstructed exactly; the result is accepted only when primal
/// and dual certify each other, otherwise the exact simplex runs.
pub fn simplex_solve(lp: &LinearProgram) -> Result<LpSolution> {
    let cells = lp.constraints.len().saturating_mul(lp.num_vars + 2 * lp.constraints.len());
    if cells > EXACT_TABLEAU_LIMIT {
        match guided::certified_solve(lp) {
            Ok(sol) => return Ok(sol),
            Err(e) => log::warn!("float-guided solve not certified ({e}); falling back to the exact simplex"),
        }
    }
    let sol = exact_simplex(lp)?;
    if !sol.certifies(lp) {
        return Err(Error::Internal("simplex result failed exact certification".into()));
    }
    Ok(sol)
}
