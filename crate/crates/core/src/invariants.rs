//! Clebsch-Salmon invariants of cubic surfaces in pentahedral form, and
//! weighted-projective comparison of invariant tuples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::scalar::Ring;

/// Pentahedral coefficients a0..a4 of a cubic surface.
#[derive(Clone, Debug, PartialEq)]
pub struct PentahedralCoeffs<T: Ring>(pub [T; 5]);

/// Invariants of weights 8, 16, 24, 32, 40.
#[derive(Clone, Debug, PartialEq)]
pub struct CSInvariants<T: Ring> {
    pub i8: T,
    pub i16: T,
    pub i24: T,
    pub i32: T,
    pub i40: T,
}

pub const CS_WEIGHTS: [u32; 5] = [8, 16, 24, 32, 40];

/// I8 = s4^2 - 4 s3 s5, I16 = s1 s5^3, I24 = s4 s5^4, I32 = s2 s5^6,
/// I40 = s5^8, with s1..s5 the elementary symmetric functions of a0..a4.
pub fn clebsch_salmon<T: Ring>(a: &PentahedralCoeffs<T>) -> CSInvariants<T> {
    // elementary symmetric functions by incremental products
    let mut e = vec![T::zero(); 6];
    e[0] = T::one();
    for x in &a.0 {
        for k in (1..=5).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * x.clone();
        }
    }
    let (s1, s2, s3, s4, s5) = (e[1].clone(), e[2].clone(), e[3].clone(), e[4].clone(), e[5].clone());
    CSInvariants {
        i8: s4.clone() * s4.clone() - s3.scale_rat(&Rat::from_int(4)) * s5.clone(),
        i16: s1 * s5.pow_u(3),
        i24: s4 * s5.pow_u(4),
        i32: s2 * s5.pow_u(6),
        i40: s5.pow_u(8),
    }
}

impl<T: Ring> CSInvariants<T> {
    pub fn vector(&self) -> InvariantVector<T> {
        InvariantVector {
            weights: CS_WEIGHTS.to_vec(),
            values: vec![
                self.i8.clone(),
                self.i16.clone(),
                self.i24.clone(),
                self.i32.clone(),
                self.i40.clone(),
            ],
        }
    }
}

/// A weighted tuple of invariants, compared as a point of weighted
/// projective space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantVector<T: Ring> {
    pub weights: Vec<u32>,
    pub values: Vec<T>,
}

impl<T: Ring> InvariantVector<T> {
    pub fn new(weights: Vec<u32>, values: Vec<T>) -> Result<Self> {
        if weights.len() != values.len() {
            return Err(Error::InvalidArgument("weights/values length mismatch".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidArgument("weights must be positive".into()));
        }
        Ok(InvariantVector { weights, values })
    }

    fn vanishing_pattern(&self) -> Vec<bool> {
        self.values.iter().map(|v| v.is_zero()).collect()
    }

    /// True iff some lambda != 0 in the algebraic closure has
    /// other_d = lambda^d * self_d for every weight d: identical vanishing
    /// patterns, and every multiplicative relation of the support weights
    /// holds between the two value tuples.
    pub fn weighted_equal(&self, other: &Self) -> Result<bool> {
        if self.weights != other.weights {
            return Err(Error::NonComparable("weight vectors differ".into()));
        }
        let pa = self.vanishing_pattern();
        let pb = other.vanishing_pattern();
        if pa.iter().all(|&z| z) || pb.iter().all(|&z| z) {
            return Err(Error::NonComparable("all-zero invariant vector".into()));
        }
        if pa != pb {
            return Ok(false);
        }
        let support: Vec<usize> = (0..self.weights.len()).filter(|&i| !pa[i]).collect();
        let ws: Vec<i64> = support.iter().map(|&i| self.weights[i] as i64).collect();
        for rel in relation_lattice_basis(&ws) {
            // check prod (B_i/A_i)^{m_i} = 1 with positive exponents on each side
            let mut lhs = T::one();
            let mut rhs = T::one();
            for (t, &m) in rel.iter().enumerate() {
                let (a, b) = (&self.values[support[t]], &other.values[support[t]]);
                if m > 0 {
                    lhs = lhs * b.pow_u(m as u32);
                    rhs = rhs * a.pow_u(m as u32);
                } else if m < 0 {
                    lhs = lhs * a.pow_u((-m) as u32);
                    rhs = rhs * b.pow_u((-m) as u32);
                }
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Basis of the integer lattice { m : sum m_i d_i = 0 }, by unimodular
/// column reduction of the weight row.
fn relation_lattice_basis(d: &[i64]) -> Vec<Vec<i64>> {
    let k = d.len();
    if k <= 1 {
        return Vec::new();
    }
    let mut e: Vec<i64> = d.to_vec();
    let mut u: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { 1 } else { 0 }).collect())
        .collect(); // columns of U as rows here: u[c] is column c
    loop {
        // find the two nonzero entries with smallest absolute values
        let mut nz: Vec<usize> = (0..k).filter(|&i| e[i] != 0).collect();
        if nz.len() <= 1 {
            break;
        }
        nz.sort_by_key(|&i| e[i].abs());
        let (i, j) = (nz[0], nz[1]);
        let q = e[j] / e[i];
        e[j] -= q * e[i];
        // column operation: col_j -= q * col_i
        for t in 0..k {
            u[j][t] -= q * u[i][t];
        }
    }
    (0..k).filter(|&c| e[c] == 0).map(|c| u[c].clone()).collect()
}
