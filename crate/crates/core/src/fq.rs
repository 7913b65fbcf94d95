//! Finite fields F_{q^d} with a runtime modulus.
//!
//! A field is a prime q, a degree d and a monic irreducible defining
//! polynomial over F_q, found by random monic sampling plus a Rabin
//! irreducibility test from a seeded RNG. Elements are coefficient vectors
//! modulo the defining polynomial. Integer constants not yet attached to a
//! field are carried as `FqElt::Int` and lifted on first contact, which lets
//! the generic `Ring`/`Field` machinery mint zeros and ones without a field
//! handle.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One as _, Zero as _};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{factor_u64, inv_mod, is_prime_u64, mul_mod, sub_mod};
use crate::rat::Rat;
use crate::scalar::{ExactDiv, Field, Ring};

/// Maximum attempts when sampling (defining polynomials, elements of a given
/// multiplicative order).
const MAX_SAMPLES: usize = 256;

#[derive(Debug, PartialEq, Eq)]
pub struct FqField {
    q: u64,
    d: usize,
    /// monic, little-endian, length d+1
    poly: Vec<u64>,
}

/// Serializable descriptor: {"q": .., "d": .., "poly": [..]} little-endian.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FqFieldInfo {
    pub q: u64,
    pub d: usize,
    pub poly: Vec<u64>,
}

impl FqField {
    /// Construct F_{q^d} with a randomly sampled defining polynomial.
    pub fn new(q: u64, d: usize, seed: u64) -> Result<Arc<Self>> {
        if !is_prime_u64(q) {
            return Err(Error::InvalidArgument(format!("{q} is not prime")));
        }
        if d == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        if d == 1 {
            return Ok(Arc::new(FqField { q, d, poly: vec![0, 1] }));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed ^ (q << 8) ^ d as u64);
        for _ in 0..MAX_SAMPLES * d {
            let mut poly: Vec<u64> = (0..d).map(|_| rng.gen_range(0..q)).collect();
            poly.push(1);
            if is_irreducible(&poly, q) {
                return Ok(Arc::new(FqField { q, d, poly }));
            }
        }
        Err(Error::RetriesExhausted { context: format!("sampling an irreducible degree-{d} polynomial over F_{q}") })
    }

    /// Rebuild a field from serialized data, revalidating irreducibility.
    pub fn from_info(info: &FqFieldInfo) -> Result<Arc<Self>> {
        if !is_prime_u64(info.q) {
            return Err(Error::InvalidArgument(format!("{} is not prime", info.q)));
        }
        if info.poly.len() != info.d + 1 || info.poly[info.d] != 1 {
            return Err(Error::InvalidArgument("defining polynomial must be monic of the stated degree".into()));
        }
        if info.poly.iter().any(|&c| c >= info.q) {
            return Err(Error::InvalidArgument("coefficients out of range".into()));
        }
        if info.d > 1 && !is_irreducible(&info.poly, info.q) {
            return Err(Error::InvalidArgument("defining polynomial is reducible".into()));
        }
        Ok(Arc::new(FqField { q: info.q, d: info.d, poly: info.poly.clone() }))
    }

    pub fn info(&self) -> FqFieldInfo {
        FqFieldInfo { q: self.q, d: self.d, poly: self.poly.clone() }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.q).pow(self.d as u32)
    }

    pub fn elt_from_int(self: &Arc<Self>, n: i64) -> FqElt {
        let mut c = vec![0u64; self.d];
        c[0] = n.rem_euclid(self.q as i64) as u64;
        FqElt::Elt(self.clone(), c)
    }

    pub fn elt_from_coeffs(self: &Arc<Self>, mut coeffs: Vec<u64>) -> Result<FqElt> {
        if coeffs.len() > self.d {
            return Err(Error::InvalidArgument("too many coefficients".into()));
        }
        coeffs.resize(self.d, 0);
        if coeffs.iter().any(|&c| c >= self.q) {
            return Err(Error::InvalidArgument("coefficient out of range".into()));
        }
        Ok(FqElt::Elt(self.clone(), coeffs))
    }

    /// Image of a rational with denominator coprime to q.
    pub fn elt_from_rat(self: &Arc<Self>, r: &Rat) -> Result<FqElt> {
        let q = BigUint::from(self.q);
        let num = r.numer().magnitude() % &q;
        let den = r.denom().magnitude() % &q;
        let den = den.to_u64_digits().first().copied().unwrap_or(0);
        let num = num.to_u64_digits().first().copied().unwrap_or(0);
        let den_inv = inv_mod(den, self.q).ok_or(Error::DenominatorDivisible { prime: self.q })?;
        let mut v = mul_mod(num, den_inv, self.q);
        if r.numer().sign() == num_bigint::Sign::Minus && v != 0 {
            v = self.q - v;
        }
        let mut c = vec![0u64; self.d];
        c[0] = v;
        Ok(FqElt::Elt(self.clone(), c))
    }

    /// The class of x, a generator of the field over F_q when d > 1.
    pub fn gen(self: &Arc<Self>) -> FqElt {
        let mut c = vec![0u64; self.d];
        if self.d > 1 {
            c[1] = 1;
        }
        FqElt::Elt(self.clone(), c)
    }

    pub fn random_elt(self: &Arc<Self>, rng: &mut impl Rng) -> FqElt {
        FqElt::Elt(self.clone(), (0..self.d).map(|_| rng.gen_range(0..self.q)).collect())
    }
}

/// An element of order exactly n: sample x, raise to (q^d-1)/n, accept when
/// no proper power collapses; bounded retries.
pub fn element_of_order(field: &Arc<FqField>, n: u64, seed: u64) -> Result<FqElt> {
    let group_order = field.order() - BigUint::one();
    let n_big = BigUint::from(n);
    if n == 0 || (&group_order % &n_big) != BigUint::zero() {
        return Err(Error::OrderUnavailable { order: n });
    }
    if n == 1 {
        return Ok(field.elt_from_int(1));
    }
    let cofactor = &group_order / &n_big;
    let prime_divisors: Vec<u64> = factor_u64(n).into_iter().map(|(p, _)| p).collect();
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x5eed);
    let one = field.elt_from_int(1);
    for _ in 0..MAX_SAMPLES {
        let x = field.random_elt(&mut rng);
        if x.is_zero() {
            continue;
        }
        let y = x.pow_big(&cofactor);
        if prime_divisors.iter().all(|&p| y.pow_big(&BigUint::from(n / p)) != one) {
            debug_assert_eq!(y.pow_big(&n_big), one);
            return Ok(y);
        }
    }
    Err(Error::RetriesExhausted { context: format!("sampling an element of order {n}") })
}

// ---- dense univariate helpers over F_q (little-endian, no leading zeros) ----

fn poly_trim(p: &mut Vec<u64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], q: u64) -> Vec<u64> {
    let mut buf = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                buf[i + j] = (buf[i + j] + mul_mod(x, y, q)) % q;
            }
        }
    }
    poly_rem(&mut buf, f, q);
    buf
}

/// Reduce buf modulo monic f in place.
fn poly_rem(buf: &mut Vec<u64>, f: &[u64], q: u64) {
    let d = f.len() - 1;
    while buf.len() > d {
        let c = *buf.last().unwrap();
        let top = buf.len() - 1;
        if c != 0 {
            for k in 0..d {
                buf[top - d + k] = sub_mod(buf[top - d + k], mul_mod(c, f[k], q), q);
            }
        }
        buf.pop();
    }
    while buf.len() < d.max(1) {
        buf.push(0);
    }
}

fn poly_pow_q(x: &[u64], f: &[u64], q: u64) -> Vec<u64> {
    // x^q mod f by square and multiply on the exponent q
    let mut acc = vec![1u64];
    acc.resize(f.len() - 1, 0);
    let mut base = x.to_vec();
    let mut e = q;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, f, q);
        }
        base = poly_mul_mod(&base, &base, f, q);
        e >>= 1;
    }
    acc
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, q: u64) -> Vec<u64> {
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_mod(&a, &b, q);
        a = b;
        b = r;
    }
    // normalize monic
    let lc = *a.last().unwrap();
    if lc != 0 && lc != 1 {
        let inv = inv_mod(lc, q).unwrap();
        for c in &mut a {
            *c = mul_mod(*c, inv, q);
        }
    }
    a
}

fn poly_mod(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lcb_inv = inv_mod(*b.last().unwrap(), q).unwrap();
    while r.len() - 1 >= db && !(r.len() == 1 && r[0] == 0) {
        let c = mul_mod(*r.last().unwrap(), lcb_inv, q);
        let shift = r.len() - 1 - db;
        for k in 0..=db {
            r[shift + k] = sub_mod(r[shift + k], mul_mod(c, b[k], q), q);
        }
        poly_trim(&mut r);
        if r.len() - 1 < db {
            break;
        }
    }
    r
}

/// Rabin test: f (monic, degree d) is irreducible over F_q iff x^(q^d) = x
/// mod f and gcd(x^(q^(d/p)) - x, f) = 1 for every prime p | d.
fn is_irreducible(f: &[u64], q: u64) -> bool {
    let d = f.len() - 1;
    if *f.last().unwrap() != 1 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x: Vec<u64> = {
        let mut v = vec![0u64; d.max(2)];
        v[1] = 1;
        v.truncate(d);
        v
    };
    // frob[i] = x^(q^i) mod f, computed by iterated q-th powers
    let mut frob = x.clone();
    let mut powers = vec![x.clone()];
    for _ in 0..d {
        frob = poly_pow_q(&frob, f, q);
        powers.push(frob.clone());
    }
    // x^(q^d) == x
    let mut top = powers[d].clone();
    poly_trim(&mut top);
    let mut xx = x.clone();
    poly_trim(&mut xx);
    if top != xx {
        return false;
    }
    for (p, _) in factor_u64(d as u64) {
        let k = d / p as usize;
        let mut diff: Vec<u64> = powers[k].clone();
        // diff = x^(q^k) - x
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = sub_mod(diff[1], 1, q);
        let g = poly_gcd(f.to_vec(), diff, q);
        if !(g.len() == 1 && g[0] == 1) {
            return false;
        }
    }
    true
}

/// An element of F_{q^d}, or a detached integer constant awaiting a field.
#[derive(Clone)]
pub enum FqElt {
    Int(i64),
    Elt(Arc<FqField>, Vec<u64>),
}

impl FqElt {
    fn lift(&self, field: &Arc<FqField>) -> Vec<u64> {
        match self {
            FqElt::Int(n) => {
                let mut c = vec![0u64; field.d];
                c[0] = n.rem_euclid(field.q as i64) as u64;
                c
            }
            FqElt::Elt(f, c) => {
                assert!(Arc::ptr_eq(f, field) || **f == **field, "mixed finite fields");
                c.clone()
            }
        }
    }

    pub fn field(&self) -> Option<&Arc<FqField>> {
        match self {
            FqElt::Int(_) => None,
            FqElt::Elt(f, _) => Some(f),
        }
    }

    pub fn coeffs(&self) -> Option<&[u64]> {
        match self {
            FqElt::Int(_) => None,
            FqElt::Elt(_, c) => Some(c),
        }
    }

    pub fn pow_big(&self, e: &BigUint) -> FqElt {
        let (field, c) = match self {
            FqElt::Int(n) => {
                // plain integer power would overflow; only 0/±1 make sense detached
                assert!(
                    (-1..=1).contains(n),
                    "big power of a detached integer constant"
                );
                if *n == 0 && !e.is_zero() {
                    return FqElt::Int(0);
                }
                let neg = *n == -1 && (e % 2u8) == BigUint::one();
                return FqElt::Int(if neg { -1 } else { 1 });
            }
            FqElt::Elt(f, c) => (f, c),
        };
        let mut acc = field.elt_from_int(1);
        let mut base = FqElt::Elt(field.clone(), c.clone());
        for bit in (0..e.bits()).map(|i| e.bit(i)) {
            if bit {
                acc = acc * base.clone();
            }
            base = base.clone() * base.clone();
        }
        acc
    }

    /// Multiplicative order (the field's unit group is cyclic); linear scan
    /// over divisors of q^d - 1 is avoided: repeated multiplication is fine
    /// for the small orders this library checks.
    pub fn has_order(&self, n: u64) -> bool {
        let one = match self {
            FqElt::Elt(f, _) => f.elt_from_int(1),
            FqElt::Int(_) => FqElt::Int(1),
        };
        if self.pow_big(&BigUint::from(n)) != one {
            return false;
        }
        factor_u64(n)
            .iter()
            .all(|&(p, _)| self.pow_big(&BigUint::from(n / p)) != one)
    }
}

impl PartialEq for FqElt {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FqElt::Int(a), FqElt::Int(b)) => a == b,
            (FqElt::Elt(f, _), _) => self.lift(f) == other.lift(f),
            (_, FqElt::Elt(f, _)) => self.lift(f) == other.lift(f),
        }
    }
}

impl fmt::Debug for FqElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqElt {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FqElt::Int(n) => write!(out, "{n}"),
            FqElt::Elt(_, c) => {
                let terms: Vec<String> = c
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(i, &v)| match i {
                        0 => format!("{v}"),
                        1 => format!("{v}*x"),
                        _ => format!("{v}*x^{i}"),
                    })
                    .collect();
                if terms.is_empty() {
                    write!(out, "0")
                } else {
                    write!(out, "{}", terms.join(" + "))
                }
            }
        }
    }
}

fn binop(a: &FqElt, b: &FqElt, f: impl Fn(&Arc<FqField>, &[u64], &[u64]) -> Vec<u64>, int: impl Fn(i64, i64) -> i64) -> FqElt {
    match (a, b) {
        (FqElt::Int(x), FqElt::Int(y)) => FqElt::Int(int(*x, *y)),
        (FqElt::Elt(fld, _), _) | (_, FqElt::Elt(fld, _)) => {
            let fld = fld.clone();
            let ca = a.lift(&fld);
            let cb = b.lift(&fld);
            FqElt::Elt(fld.clone(), f(&fld, &ca, &cb))
        }
    }
}

impl Add for FqElt {
    type Output = FqElt;
    fn add(self, rhs: FqElt) -> FqElt {
        binop(
            &self,
            &rhs,
            |fld, a, b| a.iter().zip(b).map(|(&x, &y)| (x + y) % fld.q).collect(),
            |x, y| x.checked_add(y).expect("detached constant overflow"),
        )
    }
}

impl Sub for FqElt {
    type Output = FqElt;
    fn sub(self, rhs: FqElt) -> FqElt {
        binop(
            &self,
            &rhs,
            |fld, a, b| a.iter().zip(b).map(|(&x, &y)| sub_mod(x, y, fld.q)).collect(),
            |x, y| x.checked_sub(y).expect("detached constant overflow"),
        )
    }
}

impl Mul for FqElt {
    type Output = FqElt;
    fn mul(self, rhs: FqElt) -> FqElt {
        binop(
            &self,
            &rhs,
            |fld, a, b| {
                let mut prod = poly_mul_mod(a, b, &fld.poly, fld.q);
                prod.resize(fld.d, 0);
                prod
            },
            |x, y| x.checked_mul(y).expect("detached constant overflow"),
        )
    }
}

impl Neg for FqElt {
    type Output = FqElt;
    fn neg(self) -> FqElt {
        match self {
            FqElt::Int(n) => FqElt::Int(-n),
            FqElt::Elt(f, c) => {
                let q = f.q;
                FqElt::Elt(f, c.into_iter().map(|x| if x == 0 { 0 } else { q - x }).collect())
            }
        }
    }
}

impl num_traits::Zero for FqElt {
    fn zero() -> Self {
        FqElt::Int(0)
    }
    fn is_zero(&self) -> bool {
        match self {
            FqElt::Int(n) => *n == 0,
            FqElt::Elt(f, c) => c.iter().all(|&x| x % f.q == 0),
        }
    }
}

impl num_traits::One for FqElt {
    fn one() -> Self {
        FqElt::Int(1)
    }
}

impl Ring for FqElt {
    fn scale_rat(&self, by: &Rat) -> Self {
        match self {
            FqElt::Int(n) => {
                assert!(by.is_integer(), "rational scaling of a detached constant");
                let p: i64 = by.numer().try_into().expect("scale overflow");
                FqElt::Int(n.checked_mul(p).expect("detached constant overflow"))
            }
            FqElt::Elt(f, _) => {
                let s = f.elt_from_rat(by).expect("denominator divisible by the characteristic");
                self.clone() * s
            }
        }
    }
}

impl Div for FqElt {
    type Output = FqElt;
    fn div(self, rhs: FqElt) -> FqElt {
        let inv = rhs.inv();
        self * inv
    }
}

impl Field for FqElt {
    fn inv(&self) -> Self {
        match self {
            FqElt::Int(1) => FqElt::Int(1),
            FqElt::Int(-1) => FqElt::Int(-1),
            FqElt::Int(0) => panic!("inverse of zero"),
            FqElt::Int(_) => panic!("inverse of a detached constant requires a field"),
            FqElt::Elt(f, c) => {
                // extended Euclid on (defining poly, c) over F_q
                assert!(!self.is_zero(), "inverse of zero");
                let q = f.q;
                let mut a = f.poly.clone();
                let mut b = c.clone();
                poly_trim(&mut b);
                let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (vec![0], vec![1]);
                loop {
                    if b.len() == 1 {
                        let binv = inv_mod(b[0], q).expect("nonzero remainder");
                        let mut res: Vec<u64> = t1.iter().map(|&x| mul_mod(x, binv, q)).collect();
                        poly_rem(&mut res, &f.poly, q);
                        res.resize(f.d, 0);
                        return FqElt::Elt(f.clone(), res);
                    }
                    // a = qt*b + r
                    let r = poly_mod(&a, &b, q);
                    let qt = poly_quot(&a, &b, q);
                    // t_new = t0 - qt*t1
                    let mut tn = t0.clone();
                    let prod_len = qt.len() + t1.len() - 1;
                    tn.resize(tn.len().max(prod_len), 0);
                    for (i, &x) in qt.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (j, &y) in t1.iter().enumerate() {
                            if y != 0 {
                                tn[i + j] = sub_mod(tn[i + j], mul_mod(x, y, q), q);
                            }
                        }
                    }
                    poly_trim(&mut tn);
                    a = b;
                    b = r;
                    t0 = t1;
                    t1 = tn;
                }
            }
        }
    }
}

fn poly_quot(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    if r.len() - 1 < db {
        return vec![0];
    }
    let mut quot = vec![0u64; r.len() - db];
    let lcb_inv = inv_mod(*b.last().unwrap(), q).unwrap();
    while r.len() - 1 >= db && !(r.len() == 1 && r[0] == 0) {
        let c = mul_mod(*r.last().unwrap(), lcb_inv, q);
        let shift = r.len() - 1 - db;
        quot[shift] = c;
        for k in 0..=db {
            r[shift + k] = sub_mod(r[shift + k], mul_mod(c, b[k], q), q);
        }
        poly_trim(&mut r);
        if r.len() - 1 < db {
            break;
        }
    }
    quot
}

impl ExactDiv for FqElt {
    fn exact_div(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(self.clone() / den.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::pow_mod;
    use num_traits::{One, Zero};

    #[test]
    fn prime_field_arithmetic() {
        let f = FqField::new(11, 1, 0).unwrap();
        let a = f.elt_from_int(7);
        let b = f.elt_from_int(8);
        assert_eq!(a.clone() + b.clone(), f.elt_from_int(4));
        assert_eq!(a.clone() * b.clone(), f.elt_from_int(1)); // 56 = 55+1
        assert_eq!(a.clone() - b.clone(), f.elt_from_int(-1));
        assert_eq!(a.inv() * a, f.elt_from_int(1));
    }

    #[test]
    fn extension_field_axioms() {
        let f = FqField::new(7, 4, 42).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = f.random_elt(&mut rng);
            let b = f.random_elt(&mut rng);
            let c = f.random_elt(&mut rng);
            assert_eq!(
                (a.clone() + b.clone()) + c.clone(),
                a.clone() + (b.clone() + c.clone())
            );
            assert_eq!(
                a.clone() * (b.clone() + c.clone()),
                a.clone() * b.clone() + a.clone() * c.clone()
            );
            if !a.is_zero() {
                assert_eq!(a.clone() * a.inv(), FqElt::one());
            }
        }
    }

    #[test]
    fn detached_constants_unify() {
        let f = FqField::new(11, 2, 0).unwrap();
        let a = f.elt_from_int(5);
        assert_eq!(FqElt::zero() + a.clone(), a);
        assert_eq!(FqElt::one() * a.clone(), a);
        assert_eq!(-FqElt::one() * a.clone() + a.clone(), FqElt::zero());
        assert_eq!(f.elt_from_int(11), FqElt::zero());
    }

    #[test]
    fn constructed_polys_are_irreducible() {
        for (q, d) in [(2u64, 20usize), (3, 4), (7, 4), (11, 5), (10007, 2)] {
            let f = FqField::new(q, d, 7).unwrap();
            assert!(is_irreducible(&f.poly, q));
        }
    }

    #[test]
    fn element_of_order_examples() {
        // brute-force oracle over F_11: 3 is the least element of order 5
        let small = |q: u64, n: u64| -> u64 {
            (2..q)
                .find(|&x| {
                    pow_mod(x, n, q) == 1
                        && factor_u64(n).iter().all(|&(p, _)| pow_mod(x, n / p, q) != 1)
                })
                .unwrap()
        };
        assert_eq!(small(11, 5), 3);
        assert_eq!(small(19, 9), 4);
        assert_eq!(pow_mod(4, 3, 19), 7);

        let f11 = FqField::new(11, 1, 0).unwrap();
        let e = element_of_order(&f11, 5, 1).unwrap();
        assert!(e.has_order(5));
        let f19 = FqField::new(19, 1, 0).unwrap();
        let e = element_of_order(&f19, 9, 1).unwrap();
        assert!(e.has_order(9));
        assert_eq!(element_of_order(&f19, 1, 1).unwrap(), f19.elt_from_int(1));
        // 7 does not divide 18
        assert!(matches!(
            element_of_order(&f19, 7, 1),
            Err(Error::OrderUnavailable { .. })
        ));
    }

    #[test]
    fn element_of_order_in_extension() {
        // 25 | 7^4 - 1 = 2400
        let f = FqField::new(7, 4, 3).unwrap();
        let e = element_of_order(&f, 25, 9).unwrap();
        assert!(e.has_order(25));
        assert!(!e.has_order(5));
    }

    #[test]
    fn element_of_order_reproducible() {
        let f = FqField::new(7, 4, 3).unwrap();
        let a = element_of_order(&f, 25, 9).unwrap();
        let b = element_of_order(&f, 25, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn field_info_round_trip() {
        let f = FqField::new(3, 5, 11).unwrap();
        let info = f.info();
        let g = FqField::from_info(&info).unwrap();
        assert_eq!(*f, *g);
        let mut bad = info.clone();
        bad.poly[0] = (bad.poly[0] + 1) % 3;
        // may or may not be irreducible; just check validation runs
        let _ = FqField::from_info(&bad);
    }

    #[test]
    fn big_power() {
        let f = FqField::new(2, 20, 0).unwrap();
        let x = f.gen();
        let e = f.order() - BigUint::one();
        assert_eq!(x.pow_big(&e), f.elt_from_int(1)); // Lagrange
    }
}
