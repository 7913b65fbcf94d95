//! Exact resultants via the Sylvester matrix.
//!
//! Convention: the matrix carries coefficient rows in ascending powers with
//! the rows of `f` first; `Res_x(x - a, x - b) = b - a` under this ordering.
//! Degree-0 inputs follow the lc^deg convention; two degree-0 inputs are
//! rejected.

use num_traits::Zero as _;

use crate::error::{Error, Result};
use crate::matrix;
use crate::mpoly::MPoly;
use crate::scalar::{Field, Ring};

/// Sylvester matrix of f and g with respect to the variable at `var`.
pub fn sylvester<F: Field>(f: &MPoly<F>, g: &MPoly<F>, var: usize) -> Result<Vec<Vec<MPoly<F>>>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidArgument("resultant of the zero polynomial".into()));
    }
    let (f, g) = MPoly::unify(f, g);
    let (f, g) = (&f, &g);
    let df = f.degree_in(var) as usize;
    let dg = g.degree_in(var) as usize;
    if df == 0 && dg == 0 {
        return Err(Error::ResultantDegenerateInput);
    }
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let n = df + dg;
    let zero = MPoly::zero_in(f.vars().clone());
    let mut m = vec![vec![zero; n]; n];
    for i in 0..dg {
        for (j, c) in fc.iter().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..df {
        for (j, c) in gc.iter().enumerate() {
            m[dg + i][i + j] = c.clone();
        }
    }
    Ok(m)
}

/// Res_x(f, g): determinant of the Sylvester matrix; for a degree-0 input c,
/// the convention c^deg(other) applies.
pub fn resultant<F: Field>(f: &MPoly<F>, g: &MPoly<F>, var: usize) -> Result<MPoly<F>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidArgument("resultant of the zero polynomial".into()));
    }
    let (f, g) = MPoly::unify(f, g);
    let (f, g) = (&f, &g);
    let df = f.degree_in(var);
    let dg = g.degree_in(var);
    if df == 0 && dg == 0 {
        return Err(Error::ResultantDegenerateInput);
    }
    if df == 0 {
        return Ok(f.pow_u(dg));
    }
    if dg == 0 {
        return Ok(g.pow_u(df));
    }
    let m = sylvester(f, g, var)?;
    matrix::det(&m)
}
