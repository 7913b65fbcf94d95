//! Binary forms, the transvectant operator, and SL2-invariants of binary
//! quintics.
//!
//! A form of nominal degree d is the coefficient list of
//! sum_k c_k t^(d-k) w^k; leading or trailing zeros are allowed. Everything
//! here needs only ring operations plus exact rational scaling, so the same
//! code runs over Q, over cyclotomic numbers, and over polynomial rings
//! (which is how the symbolic scaling checks and the finiteness pipeline
//! reuse it).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::det_minors;
use crate::rat::Rat;
use crate::scalar::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<T: Ring> {
    coeffs: Vec<T>,
}

impl<T: Ring> BinaryForm<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    /// Nominal degree.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of t^(d-k) w^k.
    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, by: &T) -> Self {
        BinaryForm::new(self.coeffs.iter().map(|c| by.clone() * c.clone()).collect())
    }

    pub fn scale_rat(&self, by: &Rat) -> Self {
        BinaryForm::new(self.coeffs.iter().map(|c| c.scale_rat(by)).collect())
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        BinaryForm::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    fn mul(&self, other: &Self) -> Self {
        let d = self.degree() + other.degree();
        let mut out = vec![T::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        BinaryForm::new(out)
    }

    /// Mixed partial derivative d^(kt+kw) f / dt^kt dw^kw as a form of
    /// nominal degree d - kt - kw.
    fn partial(&self, kt: usize, kw: usize) -> Self {
        let d = self.degree();
        assert!(kt + kw <= d);
        let dd = d - kt - kw;
        let mut out = Vec::with_capacity(dd + 1);
        for j in 0..=dd {
            // target monomial t^(dd-j) w^j comes from source index j + kw
            let src = j + kw;
            let et = d - src; // exponent of t in the source term
            let mut factor = BigInt::from(1);
            for x in (et - kt + 1)..=et {
                factor *= x as i64;
            }
            for x in (src - kw + 1)..=src {
                factor *= x as i64;
            }
            out.push(self.coeffs[src].scale_rat(&Rat::from_bigint(factor)));
        }
        BinaryForm::new(out)
    }

    /// Substitute (t, w) -> (p t + q w, r t + s w).
    pub fn linear_substitute(&self, p: &T, q: &T, r: &T, s: &T) -> Self {
        let d = self.degree();
        // powers of the two linear forms
        let lin1 = BinaryForm::new(vec![p.clone(), q.clone()]);
        let lin2 = BinaryForm::new(vec![r.clone(), s.clone()]);
        let mut pow1: Vec<BinaryForm<T>> = vec![BinaryForm::new(vec![T::one()])];
        let mut pow2 = pow1.clone();
        for i in 1..=d {
            pow1.push(pow1[i - 1].mul(&lin1));
            pow2.push(pow2[i - 1].mul(&lin2));
        }
        let mut acc = BinaryForm::new(vec![T::zero(); d + 1]);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = pow1[d - k].mul(&pow2[k]).scale(c);
            // pad nominal degree to d (all products have degree exactly d)
            acc = acc.add(&term);
        }
        acc
    }
}

/// k-th transvectant of forms of nominal degrees m and n:
/// ((m-k)!(n-k)!)/(m! n!) * sum_j (-1)^j C(k,j)
///     d^k f/dt^(k-j)dw^j * d^k g/dt^j dw^(k-j).
pub fn transvectant<T: Ring>(f: &BinaryForm<T>, g: &BinaryForm<T>, k: usize) -> Result<BinaryForm<T>> {
    let (m, n) = (f.degree(), g.degree());
    if k > m.min(n) {
        return Err(Error::InvalidArgument(format!(
            "transvectant index {k} exceeds min degree {}",
            m.min(n)
        )));
    }
    let mut total = BinaryForm::new(vec![T::zero(); m + n - 2 * k + 1]);
    for j in 0..=k {
        let prod = f.partial(k - j, j).mul(&g.partial(j, k - j));
        let mut c = BigInt::from(binomial(k, j) as i64);
        if j % 2 == 1 {
            c = -c;
        }
        total = total.add(&prod.scale_rat(&Rat::from_bigint(c)));
    }
    let pref = Rat::new(
        factorial(m - k) * factorial(n - k),
        factorial(m) * factorial(n),
    );
    Ok(total.scale_rat(&pref))
}

fn factorial(n: usize) -> BigInt {
    (1..=n as i64).product::<i64>().into()
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Discriminant-style invariant: Res_t of the two degree-(d-1) partials at
/// nominal degrees (Sylvester determinant), degree 2(d-1) in the
/// coefficients. Vanishes exactly on forms with a repeated root.
pub fn discriminant<T: Ring>(f: &BinaryForm<T>) -> T {
    let d = f.degree();
    assert!(d >= 2);
    let ft = f.partial(1, 0);
    let fw = f.partial(0, 1);
    // univariate little-endian in t (set w = 1): index (d-1)-k for coeff k
    let n = d - 1;
    let to_poly = |g: &BinaryForm<T>| -> Vec<T> {
        let mut v = vec![T::zero(); n + 1];
        for (k, c) in g.coeffs().iter().enumerate() {
            v[n - k] = c.clone();
        }
        v
    };
    let a = to_poly(&ft);
    let b = to_poly(&fw);
    let size = 2 * n;
    let mut m = vec![vec![T::zero(); size]; size];
    for i in 0..n {
        for (j, c) in a.iter().enumerate() {
            m[i][i + j] = c.clone();
        }
        for (j, c) in b.iter().enumerate() {
            m[n + i][i + j] = c.clone();
        }
    }
    det_minors(&m).expect("square Sylvester block")
}

/// Serialized shape: {"deg": d, "coeffs": [...]} with coefficient c_k of
/// t^(d-k) w^k.
#[derive(Serialize, Deserialize)]
struct BinaryFormDoc {
    deg: usize,
    coeffs: Vec<Rat>,
}

impl Serialize for BinaryForm<Rat> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BinaryFormDoc { deg: self.degree(), coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryForm<Rat> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = BinaryFormDoc::deserialize(d)?;
        if doc.coeffs.len() != doc.deg + 1 {
            return Err(serde::de::Error::custom("coefficient count must be deg + 1"));
        }
        Ok(BinaryForm::new(doc.coeffs))
    }
}

/// I4, I8, I12 from the transvectant chain
/// alpha = (f,f)^4, beta = (f,alpha)^2, gamma = (beta,beta)^2;
/// I4 = (alpha,alpha)^2, I8 = (gamma,alpha)^2, I12 = (gamma,gamma)^2,
/// plus the discriminant (weight 8).
#[derive(Clone, Debug, PartialEq)]
pub struct QuinticInvariants<T: Ring> {
    pub i4: T,
    pub i8: T,
    pub i12: T,
    pub disc: T,
}

pub fn quintic_invariants<T: Ring>(f: &BinaryForm<T>) -> Result<QuinticInvariants<T>> {
    if f.degree() != 5 {
        return Err(Error::InvalidArgument(format!(
            "expected a binary quintic, got degree {}",
            f.degree()
        )));
    }
    let alpha = transvectant(f, f, 4)?; // order 2
    let beta = transvectant(f, &alpha, 2)?; // order 3
    let gamma = transvectant(&beta, &beta, 2)?; // order 2
    let i4 = transvectant(&alpha, &alpha, 2)?;
    let i8 = transvectant(&gamma, &alpha, 2)?;
    let i12 = transvectant(&gamma, &gamma, 2)?;
    Ok(QuinticInvariants {
        i4: i4.coeff(0).clone(),
        i8: i8.coeff(0).clone(),
        i12: i12.coeff(0).clone(),
        disc: discriminant(f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{vars, MPoly};
    use num_traits::{One, Zero};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn form(cs: &[i64]) -> BinaryForm<Rat> {
        BinaryForm::new(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn zeroth_transvectant_is_product() {
        let f = form(&[1, 2, 3]);
        let g = form(&[4, 5]);
        let t = transvectant(&f, &g, 0).unwrap();
        assert_eq!(t, f.mul(&g));
    }

    #[test]
    fn odd_self_transvectant_vanishes() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for _ in 0..10 {
            let f = form(&(0..6).map(|_| rng.gen_range(-5i64..=5)).collect::<Vec<_>>());
            for k in [1usize, 3, 5] {
                assert!(transvectant(&f, &f, k).unwrap().is_zero(), "k={k}");
            }
        }
    }

    #[test]
    fn quadratic_pair_transvectant() {
        // (t^2, w^2)^2 = 1
        let f = form(&[1, 0, 0]); // t^2
        let g = form(&[0, 0, 1]); // w^2
        let t = transvectant(&f, &g, 2).unwrap();
        assert_eq!(t.coeffs(), &[q(1)]);
    }

    #[test]
    fn out_of_range_rejected() {
        let f = form(&[1, 0]);
        assert!(transvectant(&f, &f, 2).is_err());
    }

    #[test]
    fn discriminant_detects_repeated_roots() {
        // t^2 (t-w)(t-2w)(t-3w): repeated root t = 0
        let a = form(&[1, -1]);
        let b = form(&[1, -2]);
        let c = form(&[1, -3]);
        let f = form(&[1, 0, 0]).mul(&a).mul(&b).mul(&c);
        assert_eq!(f.degree(), 5);
        assert!(discriminant(&f).is_zero());
        // squarefree quintic has nonzero discriminant
        let g = form(&[1, 0, 0, 0, 0, -1]); // t^5 - w^5
        assert!(!discriminant(&g).is_zero());
    }

    #[test]
    fn sl2_invariance_sample() {
        let mut rng = ChaCha12Rng::seed_from_u64(32);
        for _ in 0..20 {
            let f = form(&(0..6).map(|_| rng.gen_range(-6i64..=6)).collect::<Vec<_>>());
            // random determinant-1 integer matrix: [[p,q],[r,s]] = [[1,a],[0,1]]*[[1,0],[b,1]]
            let a = rng.gen_range(-5i64..=5);
            let b = rng.gen_range(-5i64..=5);
            let (p, qq, r, s) = (1 + a * b, a, b, 1i64);
            assert_eq!(p * s - qq * r, 1);
            let g = f.linear_substitute(&q(p), &q(qq), &q(r), &q(s));
            let inv_f = quintic_invariants(&f).unwrap();
            let inv_g = quintic_invariants(&g).unwrap();
            assert_eq!(inv_f.i4, inv_g.i4);
            assert_eq!(inv_f.i8, inv_g.i8);
            assert_eq!(inv_f.i12, inv_g.i12);
        }
    }

    #[test]
    fn scaling_weights_symbolic() {
        // coefficients in Q[lambda]: f -> lambda*f scales (I4,I8,I12,disc) by
        // lambda^(4,8,12,8)
        let ctx = vars(&["lambda"]);
        let lam = MPoly::<Rat>::var(ctx.clone(), 0);
        let mut rng = ChaCha12Rng::seed_from_u64(33);
        let base: Vec<MPoly<Rat>> = (0..6)
            .map(|_| MPoly::constant(ctx.clone(), q(rng.gen_range(-5i64..=5))))
            .collect();
        let f = BinaryForm::new(base.clone());
        let lf = BinaryForm::new(base.iter().map(|c| c.clone() * lam.clone()).collect());
        let inv = quintic_invariants(&f).unwrap();
        let linv = quintic_invariants(&lf).unwrap();
        assert_eq!(linv.i4, inv.i4 * lam.pow_u(4));
        assert_eq!(linv.i8, inv.i8 * lam.pow_u(8));
        assert_eq!(linv.i12, inv.i12 * lam.pow_u(12));
        assert_eq!(linv.disc, inv.disc * lam.pow_u(8));
    }

    #[test]
    fn wrong_degree_rejected() {
        assert!(quintic_invariants(&form(&[1, 2, 3])).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let f = form(&[1, -2, 3, 0, 5, 7]);
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"deg\":5"));
        let g: BinaryForm<Rat> = serde_json::from_str(&json).unwrap();
        assert_eq!(f, g);
        assert!(serde_json::from_str::<BinaryForm<Rat>>("{\"deg\":2,\"coeffs\":[\"1\"]}").is_err());
    }

    #[test]
    fn invariants_of_paper_instance() {
        // the (u,v) = (2,3) pencil quintic: coefficients (1,-a,b,-a,1,0)/16
        // with a = -35/6, b = 31/3
        let a: Rat = "-35/6".parse().unwrap();
        let b: Rat = "31/3".parse().unwrap();
        let sixteenth: Rat = "1/16".parse().unwrap();
        let coeffs = vec![
            Rat::one(),
            -a.clone(),
            b.clone(),
            -a.clone(),
            Rat::one(),
            Rat::zero(),
        ];
        let h = BinaryForm::new(coeffs).scale_rat(&sixteenth);
        let inv = quintic_invariants(&h).unwrap();
        assert_eq!(inv.i4, "110731/13271040000".parse().unwrap());
        assert_eq!(inv.i8, "11856354361/11271712171622400000000".parse().unwrap());
        assert_eq!(
            inv.i12,
            "-132174316118633/199449790797450313728000000000000".parse().unwrap()
        );
        assert!(!inv.disc.is_zero());
    }
}
