//! Floating-point guidance for programs too large for the dense exact
//! tableau. The float optimum is never trusted. Its support and its tight
//! rows and columns define two linear systems that are solved exactly; the
//! resulting primal and dual points are returned only if they are exactly
//! feasible and exactly equal in value, which proves optimality.

use highs::{HighsModelStatus, RowProblem, Sense};

use super::modular::{solve_rational, Equation};
use super::{LinearProgram, LpSolution, Relation};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Entries below this magnitude count as zero in the float solution.
const TOL: f64 = 1e-9;

struct FloatSolution {
    columns: Vec<f64>,
    /// Reduced costs.
    column_duals: Vec<f64>,
    rows: Vec<f64>,
    row_duals: Vec<f64>,
}

/// Solves the program in floating point, ending at a basic solution.
fn solve_float(lp: &LinearProgram) -> Result<FloatSolution> {
    let mut pb = RowProblem::default();
    let mut c = vec![0.0; lp.num_vars];
    for (j, v) in &lp.objective {
        c[*j] += v.to_f64();
    }
    let cols: Vec<_> = c.iter().map(|&cj| pb.add_column(cj, 0.0..)).collect();
    for row in &lp.constraints {
        let factors = row.coeffs.iter().map(|(j, a)| (cols[*j], a.to_f64()));
        let b = row.rhs.to_f64();
        match row.relation {
            Relation::Le => pb.add_row(..=b, factors),
            Relation::Eq => pb.add_row(b..=b, factors),
            Relation::Ge => pb.add_row(b.., factors),
        };
    }
    let mut model = pb.try_optimise(Sense::Maximise).map_err(|e| Error::Internal(format!("float solver: {e:?}")))?;
    model.make_quiet();
    model.set_option("solver", "simplex");
    model.set_option("threads", 1);
    model.set_option("presolve", "off");
    let solved = model.try_solve().map_err(|e| Error::Internal(format!("float solver: {e:?}")))?;
    match solved.status() {
        HighsModelStatus::Optimal => {}
        HighsModelStatus::Infeasible => return Err(Error::Infeasible),
        HighsModelStatus::Unbounded => return Err(Error::Unbounded),
        other => return Err(Error::Internal(format!("float solver stopped with {other:?}"))),
    }
    let sol = solved.get_solution();
    Ok(FloatSolution {
        columns: sol.columns().to_vec(),
        column_duals: sol.dual_columns().to_vec(),
        rows: sol.rows().to_vec(),
        row_duals: sol.dual_rows().to_vec(),
    })
}

/// Exact point on the float support, tight rows held at their bounds.
fn exact_primal(lp: &LinearProgram, f: &FloatSolution) -> Option<Vec<Rational>> {
    let support: Vec<usize> = (0..lp.num_vars).filter(|&j| f.columns[j] > TOL).collect();
    let mut local = vec![usize::MAX; lp.num_vars];
    for (k, &j) in support.iter().enumerate() {
        local[j] = k;
    }
    let eqs: Vec<Equation> = lp
        .constraints
        .iter()
        .zip(&f.rows)
        .filter(|(row, &act)| row.relation == Relation::Eq || (act - row.rhs.to_f64()).abs() < TOL)
        .map(|(row, _)| {
            let coeffs =
                row.coeffs.iter().filter(|(j, _)| local[*j] != usize::MAX).map(|(j, a)| (local[*j], a.clone()));
            (coeffs.collect(), row.rhs.clone())
        })
        .collect();
    let xs = solve_rational(&eqs, support.len())?;
    let mut x = vec![Rational::zero(); lp.num_vars];
    for (j, v) in support.into_iter().zip(xs) {
        x[j] = v;
    }
    Some(x)
}

/// Exact multipliers on the rows with nonzero float duals, making every
/// column with zero float reduced cost tight.
fn exact_dual(lp: &LinearProgram, f: &FloatSolution) -> Option<Vec<Rational>> {
    let active: Vec<usize> = (0..lp.constraints.len()).filter(|&i| f.row_duals[i].abs() > TOL).collect();
    let mut columns: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); lp.num_vars];
    for (k, &i) in active.iter().enumerate() {
        for (j, a) in &lp.constraints[i].coeffs {
            columns[*j].push((k, a.clone()));
        }
    }
    let mut c = vec![Rational::zero(); lp.num_vars];
    for (j, v) in &lp.objective {
        c[*j] += v;
    }
    let eqs: Vec<Equation> = columns
        .into_iter()
        .zip(c)
        .enumerate()
        .filter(|(j, _)| f.column_duals[*j].abs() < TOL)
        .map(|(_, (col, cj))| (col, cj))
        .collect();
    let ys = solve_rational(&eqs, active.len())?;
    let mut y = vec![Rational::zero(); lp.constraints.len()];
    for (i, v) in active.into_iter().zip(ys) {
        y[i] = v;
    }
    Some(y)
}

/// Float solve followed by exact reconstruction and certification.
pub(crate) fn certified_solve(lp: &LinearProgram) -> Result<LpSolution> {
    let f = solve_float(lp)?;
    let x = exact_primal(lp, &f).ok_or_else(|| Error::Internal("no exact point on the float support".into()))?;
    if !lp.is_feasible(&x) {
        return Err(Error::Internal("reconstructed primal point is not feasible".into()));
    }
    let y = exact_dual(lp, &f).ok_or_else(|| Error::Internal("no exact dual on the float tight set".into()))?;
    if !lp.is_dual_feasible(&y) {
        return Err(Error::Internal("reconstructed dual point is not feasible".into()));
    }
    let optimum = lp.objective_value(&x);
    if lp.dual_value(&y) != optimum {
        return Err(Error::Internal(format!(
            "reconstructed bounds differ: primal {optimum}, dual {}",
            lp.dual_value(&y)
        )));
    }
    Ok(LpSolution { optimum, primal: x, dual: y })
}
