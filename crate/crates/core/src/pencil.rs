//! Pencils of quadrics in P^4 and their characteristic binary quintic
//! h(t,w) = det(t*A_F + w*A_G).

use crate::binform::BinaryForm;
use crate::error::{Error, Result};
use crate::matrix::det_minors;
use crate::mpoly::{vars, MPoly};
use crate::rat::Rat;
use crate::scalar::{Field, Ring};

/// Two symmetric 5x5 matrices representing the defining pencil of a
/// degree-4 del Pezzo surface.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricPencil<F: Ring> {
    pub a_f: Vec<Vec<F>>,
    pub a_g: Vec<Vec<F>>,
}

impl<F: Ring> QuadricPencil<F> {
    pub fn new(a_f: Vec<Vec<F>>, a_g: Vec<Vec<F>>) -> Result<Self> {
        for m in [&a_f, &a_g] {
            if m.len() != 5 || m.iter().any(|r| r.len() != 5) {
                return Err(Error::InvalidArgument("pencil matrices must be 5x5".into()));
            }
            for i in 0..5 {
                for j in 0..i {
                    if m[i][j] != m[j][i] {
                        return Err(Error::InvalidArgument("pencil matrices must be symmetric".into()));
                    }
                }
            }
        }
        Ok(QuadricPencil { a_f, a_g })
    }

    pub fn swapped(&self) -> Self {
        QuadricPencil { a_f: self.a_g.clone(), a_g: self.a_f.clone() }
    }
}

/// a = -(u^2 v + u v^2 + u + v)/(uv), b = (u^2 v^2 + u^2 + 2uv + v^2 + 1)/(uv).
pub fn pencil_coefficients<F: Field>(u: &F, v: &F) -> Result<(F, F)> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::InvalidArgument("pencil requires invertible u, v".into()));
    }
    let uv_inv = (u.clone() * v.clone()).inv();
    let u2 = u.clone() * u.clone();
    let v2 = v.clone() * v.clone();
    let a = -(u2.clone() * v.clone() + u.clone() * v2.clone() + u.clone() + v.clone()) * uv_inv.clone();
    let b = (u2.clone() * v2.clone()
        + u2
        + (u.clone() * v.clone()).scale_rat(&Rat::from_int(2))
        + v2
        + F::one())
        * uv_inv;
    Ok((a, b))
}

/// The displayed pencil of the blow-up family: entries in terms of a and b.
pub fn pencil_from_coefficients<F: Ring>(a: &F, b: &F) -> QuadricPencil<F> {
    let z = F::zero;
    let one = F::one;
    let half = || F::one().scale_rat(&"1/2".parse().unwrap());
    let a2 = || a.clone().scale_rat(&"1/2".parse().unwrap());
    let a_f = vec![
        vec![z(), z(), z(), half(), z()],
        vec![z(), z(), -half(), z(), z()],
        vec![z(), -half(), one(), a2(), z()],
        vec![half(), z(), a2(), b.clone(), a2()],
        vec![z(), z(), z(), a2(), one()],
    ];
    let a_g = vec![
        vec![z(), z(), z(), z(), half()],
        vec![z(), z(), z(), -half(), z()],
        vec![z(), z(), z(), z(), a2()],
        vec![z(), -half(), z(), -a.clone(), z()],
        vec![half(), z(), a2(), z(), z()],
    ];
    QuadricPencil::new(a_f, a_g).expect("construction is symmetric")
}

/// The pencil at parameters (u, v).
pub fn pencil_from_paper<F: Field>(u: &F, v: &F) -> Result<QuadricPencil<F>> {
    let (a, b) = pencil_coefficients(u, v)?;
    Ok(pencil_from_coefficients(&a, &b))
}

/// Extract the symmetric matrix of a quinary quadratic form:
/// A[i][i] = coeff(x_i^2), A[i][j] = coeff(x_i x_j)/2.
pub fn quadric_matrix<F: Ring>(q: &MPoly<F>) -> Result<Vec<Vec<F>>> {
    if q.vars().len() != 5 {
        return Err(Error::InvalidArgument("expected a form in 5 variables".into()));
    }
    let mut m = vec![vec![F::zero(); 5]; 5];
    let half: Rat = "1/2".parse().unwrap();
    for (mono, c) in q.terms() {
        let support: Vec<usize> = (0..5).filter(|&i| mono.0[i] > 0).collect();
        match support.as_slice() {
            [i] if mono.0[*i] == 2 => m[*i][*i] = c.clone(),
            [i, j] if mono.0[*i] == 1 && mono.0[*j] == 1 => {
                let h = c.scale_rat(&half);
                m[*i][*j] = h.clone();
                m[*j][*i] = h;
            }
            _ => return Err(Error::InvalidArgument("form is not quadratic".into())),
        }
    }
    Ok(m)
}

/// Pencil assembled from two quadric forms in canonical kernel order.
pub fn pencil_from_quadrics<F: Ring>(q1: &MPoly<F>, q2: &MPoly<F>) -> Result<QuadricPencil<F>> {
    QuadricPencil::new(quadric_matrix(q1)?, quadric_matrix(q2)?)
}

/// The characteristic binary quintic det(t*A_F + w*A_G), exact.
pub fn char_quintic<F: Ring>(p: &QuadricPencil<F>) -> BinaryForm<F> {
    let ctx = vars(&["t", "w"]);
    let t = MPoly::<F>::var(ctx.clone(), 0);
    let w = MPoly::<F>::var(ctx.clone(), 1);
    let entries: Vec<Vec<MPoly<F>>> = (0..5)
        .map(|i| {
            (0..5)
                .map(|j| {
                    t.clone() * MPoly::constant(ctx.clone(), p.a_f[i][j].clone())
                        + w.clone() * MPoly::constant(ctx.clone(), p.a_g[i][j].clone())
                })
                .collect()
        })
        .collect();
    let det = det_minors(&entries).expect("5x5");
    let mut coeffs = vec![F::zero(); 6];
    for (m, c) in det.terms() {
        let k = m.0[1] as usize; // exponent of w
        debug_assert_eq!(m.0[0] as usize + k, 5, "determinant is homogeneous of degree 5");
        coeffs[k] = c.clone();
    }
    BinaryForm::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn coefficients_at_2_3() {
        let (a, b) = pencil_coefficients(&q(2), &q(3)).unwrap();
        assert_eq!(a, "-35/6".parse().unwrap());
        assert_eq!(b, "31/3".parse().unwrap());
    }

    #[test]
    fn coefficients_symmetric_in_u_v() {
        let (a1, b1) = pencil_coefficients(&q(2), &q(3)).unwrap();
        let (a2, b2) = pencil_coefficients(&q(3), &q(2)).unwrap();
        assert_eq!((a1, b1), (a2, b2));
    }

    #[test]
    fn degenerate_member_still_evaluates() {
        let (a, b) = pencil_coefficients(&q(1), &q(1)).unwrap();
        assert_eq!(a, q(-4));
        assert_eq!(b, q(6));
        assert!(pencil_coefficients(&q(0), &q(1)).is_err());
    }

    #[test]
    fn char_quintic_with_zero_second_matrix() {
        // A_G = 0 -> h = det(A_F) t^5
        let p = pencil_from_paper(&q(2), &q(3)).unwrap();
        let zero = vec![vec![Rat::zero(); 5]; 5];
        let degenerate = QuadricPencil::new(p.a_f.clone(), zero).unwrap();
        let h = char_quintic(&degenerate);
        let det_af = crate::matrix::det_minors(&p.a_f).unwrap();
        assert_eq!(h.coeff(0), &det_af);
        for k in 1..=5 {
            assert!(h.coeff(k).is_zero());
        }
    }

    #[test]
    fn swapping_matrices_swaps_t_w() {
        let p = pencil_from_paper(&q(2), &q(3)).unwrap();
        let h = char_quintic(&p);
        let hs = char_quintic(&p.swapped());
        for k in 0..=5 {
            assert_eq!(h.coeff(k), hs.coeff(5 - k));
        }
    }

    #[test]
    fn paper_closed_form_at_2_3() {
        // h = (1/16)(t^5 - a t^4 w + b t^3 w^2 - a t^2 w^3 + t w^4)
        let (a, b) = pencil_coefficients(&q(2), &q(3)).unwrap();
        let p = pencil_from_coefficients(&a, &b);
        let h = char_quintic(&p);
        let s: Rat = "1/16".parse().unwrap();
        assert_eq!(h.coeff(0), &s);
        assert_eq!(h.coeff(1), &(-a.clone() * s.clone()));
        assert_eq!(h.coeff(2), &(b.clone() * s.clone()));
        assert_eq!(h.coeff(3), &(-a * s.clone()));
        assert_eq!(h.coeff(4), &s);
        assert!(h.coeff(5).is_zero());
    }

    #[test]
    fn asymmetric_matrix_rejected() {
        let mut a_f = vec![vec![Rat::zero(); 5]; 5];
        a_f[0][1] = Rat::one();
        let a_g = vec![vec![Rat::zero(); 5]; 5];
        assert!(QuadricPencil::new(a_f, a_g).is_err());
    }
}
