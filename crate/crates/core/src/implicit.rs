//! Anticanonical linear systems and implicitization by exact linear algebra.
//!
//! The blow-up surfaces are represented through their point configurations:
//! the cubics through the points give the anticanonical map, and the forms
//! cutting out its image are the kernel of an exact pullback matrix
//! (55x20 for the cubic-in-P^3 case, 28x15 for the quadrics-in-P^4 case).

use crate::error::{Error, Result};
use crate::matrix::kernel;
use crate::mpoly::{vars, MPoly, Vars};
use crate::points::PointConfig;
use crate::scalar::{Field, Ring};

/// Exponent tuples of total degree d in n variables, descending graded-lex.
pub fn monomial_exponents(n: usize, d: u16) -> Vec<Vec<u16>> {
    fn rec(n: usize, d: u16, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if n == 1 {
            let mut full = prefix.clone();
            full.push(d);
            out.push(full);
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n - 1, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

fn ternary_context() -> Vars {
    vars(&["x", "y", "z"])
}

/// Basis of the cubics vanishing at every configuration point: the kernel of
/// the n x 10 evaluation matrix. Dimension must be 10 - n.
pub fn anticanonical_basis<F: Field>(cfg: &PointConfig<F>) -> Result<Vec<MPoly<F>>> {
    let pts = &cfg.points;
    let n = pts.len();
    let exps = monomial_exponents(3, 3);
    debug_assert_eq!(exps.len(), 10);
    let rows: Vec<Vec<F>> = pts
        .iter()
        .map(|p| {
            let [x, y, z] = p.coords();
            exps.iter()
                .map(|e| x.pow_u(e[0] as u32) * y.pow_u(e[1] as u32) * z.pow_u(e[2] as u32))
                .collect()
        })
        .collect();
    let ker = kernel(&rows);
    if ker.len() != 10 - n {
        return Err(Error::KernelDimension { expected: 10 - n, found: ker.len() });
    }
    let ctx = ternary_context();
    Ok(ker
        .into_iter()
        .map(|v| {
            MPoly::from_terms(
                ctx.clone(),
                exps.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImplicitizeTarget {
    /// one quaternary cubic through the image of a 4-dimensional system
    CubicInP3,
    /// two quinary quadrics through the image of a 5-dimensional system
    QuadricsInP4,
}

/// Forms in the image space whose pullback along the cubic system vanishes
/// identically, as an exact kernel basis in canonical order.
pub fn implicitize<F: Field>(cubics: &[MPoly<F>], target: ImplicitizeTarget) -> Result<Vec<MPoly<F>>> {
    let (space_dim, form_deg, expected) = match target {
        ImplicitizeTarget::CubicInP3 => (4usize, 3u16, 1usize),
        ImplicitizeTarget::QuadricsInP4 => (5, 2, 2),
    };
    if cubics.len() != space_dim {
        return Err(Error::InvalidArgument(format!(
            "target needs a system of {space_dim} cubics, got {}",
            cubics.len()
        )));
    }
    let big_exps = monomial_exponents(space_dim, form_deg);
    let pull_deg = 3 * form_deg;
    let small_exps = monomial_exponents(3, pull_deg);
    // column j: coefficients of the pullback of big monomial j over the
    // ternary monomials of degree 3*form_deg
    let mut matrix = vec![vec![F::zero(); big_exps.len()]; small_exps.len()];
    for (j, be) in big_exps.iter().enumerate() {
        let mut prod = MPoly::constant(ternary_context(), F::one());
        for (i, &e) in be.iter().enumerate() {
            if e > 0 {
                prod = prod * cubics[i].pow_u(e as u32);
            }
        }
        for (m, c) in prod.terms() {
            let row = small_exps
                .iter()
                .position(|e| e == &m.0)
                .expect("pullback degree matches");
            matrix[row][j] = c.clone();
        }
    }
    let ker = kernel(&matrix);
    if ker.len() != expected {
        return Err(Error::KernelDimension { expected, found: ker.len() });
    }
    let names: Vec<String> = (0..space_dim).map(|i| format!("x{i}")).collect();
    let ctx: Vars = std::sync::Arc::new(names);
    Ok(ker
        .into_iter()
        .map(|v| {
            MPoly::from_terms(
                ctx.clone(),
                big_exps.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect())
}
