//! The two degree-4 invariant pipelines, exposed for cross-checking: the
//! displayed pencil in the parameters (u, v), and the pencil implicitized
//! from the five-point blow-up configuration. The two differ by a basis
//! change of the pencil and a coordinate change of P^4, which moves the
//! invariant vector only inside its weighted-projective class.

use crate::binform::quintic_invariants;
use crate::error::Result;
use crate::implicit::{anticanonical_basis, implicitize, ImplicitizeTarget};
use crate::invariants::InvariantVector;
use crate::pencil::{char_quintic, pencil_from_paper, pencil_from_quadrics};
use crate::points::{t_uv, PointConfig};
use crate::scalar::Field;

pub const QUINTIC_WEIGHTS: [u32; 3] = [4, 8, 12];

/// (I4, I8, I12) of the displayed pencil at (u, v).
pub fn invariants_paper<F: Field>(u: &F, v: &F) -> Result<InvariantVector<F>> {
    let pencil = pencil_from_paper(u, v)?;
    let inv = quintic_invariants(&char_quintic(&pencil))?;
    InvariantVector::new(QUINTIC_WEIGHTS.to_vec(), vec![inv.i4, inv.i8, inv.i12])
}

/// (I4, I8, I12) of the pencil implicitized from the five-point blow-up
/// configuration of T_{u,v}.
pub fn invariants_implicitized<F: Field>(u: &F, v: &F) -> Result<InvariantVector<F>> {
    let mut pts = t_uv(u, v)?;
    pts.truncate(5); // drop (0:1:0)
    let cfg = PointConfig::new(4, pts, None)?;
    let cubics = anticanonical_basis(&cfg)?;
    let quadrics = implicitize(&cubics, ImplicitizeTarget::QuadricsInP4)?;
    let pencil = pencil_from_quadrics(&quadrics[0], &quadrics[1])?;
    let inv = quintic_invariants(&char_quintic(&pencil))?;
    InvariantVector::new(QUINTIC_WEIGHTS.to_vec(), vec![inv.i4, inv.i8, inv.i12])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::f_criterion;
    use crate::rat::Rat;

    #[test]
    fn pipelines_agree_at_2_3() {
        let u = Rat::from_int(2);
        let v = Rat::from_int(3);
        assert!(f_criterion(&u, &v).unwrap().1);
        let a = invariants_paper(&u, &v).unwrap();
        let b = invariants_implicitized(&u, &v).unwrap();
        assert!(a.weighted_equal(&b).unwrap());
    }

    #[test]
    fn pipelines_distinguish_2_3_from_2_5() {
        let a = invariants_paper(&Rat::from_int(2), &Rat::from_int(3)).unwrap();
        let b = invariants_paper(&Rat::from_int(2), &Rat::from_int(5)).unwrap();
        assert!(!a.weighted_equal(&b).unwrap());
    }
}
