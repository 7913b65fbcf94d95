//! Exact arithmetic in Q(zeta_n) for n = 5^(r+1): Galois action, norms,
//! minimal polynomials, and embeddings into residue fields.
//!
//! Elements are dense rational coefficient vectors reduced modulo
//! Phi_n(x) = x^(4m) + x^(3m) + x^(2m) + x^m + 1 with m = 5^r; the sparse
//! shape of Phi_n makes reduction a single top-down pass. An element carries
//! only its layer tag, so a rational constant (layer `None`) can be minted by
//! the generic scalar machinery and lifted on first contact.
//!
//! Norms are resultants Res(Phi_n, g) of integer polynomials, computed
//! exactly by a CRT over word-size primes with a Hadamard bound; the slow
//! Sylvester route stays available in tests as the independent oracle.
//! Inverses and minimal polynomials go through the same modular machinery:
//! a rational-coefficient Euclidean chain on degree-100 representatives
//! swells catastrophically, while per-prime computation plus exact
//! reconstruction (Hadamard bound for the inverse cofactor, verified
//! rational reconstruction for minimal polynomials) stays fast. The
//! straightforward rational-arithmetic versions are kept as oracles.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One as _, Signed, Zero as _};

use crate::error::{Error, Result};
use crate::fq::{element_of_order, FqElt, FqField};
use crate::modular::{self, inv_mod, is_prime_u64, mul_mod, sub_mod};
use crate::rat::Rat;
use crate::scalar::{ExactDiv, Field, Ring};

/// Hard cap on the layer; phi(5^(r+1)) = 4*5^r grows past desk scale beyond it.
pub const LAYER_CAP: u32 = 6;

/// The field Q(zeta_n), n = 5^(r+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycField {
    layer: u32,
    /// m = 5^r
    m: usize,
}

impl CycField {
    pub fn new(layer: u32) -> Result<Self> {
        if layer < 1 {
            return Err(Error::InvalidArgument("layer must be >= 1".into()));
        }
        if layer > LAYER_CAP {
            return Err(Error::LayerCap { layer, cap: LAYER_CAP });
        }
        Ok(CycField { layer, m: 5usize.pow(layer) })
    }

    pub fn layer(&self) -> u32 {
        self.layer
    }

    /// Conductor n = 5^(r+1).
    pub fn conductor(&self) -> u64 {
        5 * self.m as u64
    }

    /// Degree phi(n) = 4 * 5^r.
    pub fn phi(&self) -> usize {
        4 * self.m
    }

    /// Phi_n as a little-endian integer coefficient vector.
    pub fn phi_poly_int(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.phi() + 1];
        for k in 0..=4 {
            v[k * self.m] = BigInt::one();
        }
        v
    }

    pub fn zero(&self) -> CycElt {
        CycElt { layer: Some(self.layer), coeffs: vec![Rat::zero(); self.phi()] }
    }

    pub fn from_rat(&self, c: Rat) -> CycElt {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    /// Element from a little-endian coefficient vector of length <= phi(n);
    /// vectors of that length are already canonical representatives.
    pub fn from_coeffs(&self, mut coeffs: Vec<Rat>) -> Result<CycElt> {
        if coeffs.len() > self.phi() {
            return Err(Error::InvalidArgument("coefficient vector longer than the degree".into()));
        }
        coeffs.resize(self.phi(), Rat::zero());
        Ok(CycElt { layer: Some(self.layer), coeffs })
    }

    /// Canonical representation of zeta^e.
    pub fn zeta_power(&self, e: i64) -> CycElt {
        let n = self.conductor() as i64;
        let e = e.rem_euclid(n) as usize;
        let m = self.m;
        let mut out = self.zero();
        if e < 4 * m {
            out.coeffs[e] = Rat::one();
        } else {
            // zeta^(4m+j) = -(zeta^(3m+j) + zeta^(2m+j) + zeta^(m+j) + zeta^j)
            let j = e - 4 * m;
            for k in 0..4 {
                out.coeffs[j + k * m] = -Rat::one();
            }
        }
        out
    }

    fn lift(&self, x: &CycElt) -> CycElt {
        match x.layer {
            None => {
                let mut e = self.zero();
                e.coeffs[0] = x.coeffs[0].clone();
                e
            }
            Some(r) => {
                assert_eq!(r, self.layer, "mixed cyclotomic layers");
                x.clone()
            }
        }
    }

    /// Ring homomorphism zeta -> zeta^a for a coprime to n.
    pub fn galois_apply(&self, a: i64, x: &CycElt) -> Result<CycElt> {
        let n = self.conductor();
        let a_red = a.rem_euclid(n as i64) as u64;
        if modular::gcd_u64(a_red, n) != 1 {
            return Err(Error::NotCoprime { a: a_red as i64, n });
        }
        let x = self.lift(x);
        let m = self.m;
        let mut buf = vec![Rat::zero(); 5 * m];
        for (i, c) in x.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = ((a_red as u128 * i as u128) % (5 * m) as u128) as usize;
                buf[idx] = &buf[idx] + c;
            }
        }
        // one reduction level: indices in [4m, 5m)
        for i in (4 * m..5 * m).rev() {
            if !buf[i].is_zero() {
                let c = std::mem::replace(&mut buf[i], Rat::zero());
                for k in 0..4 {
                    let t = i - (k + 1) * m;
                    buf[t] = &buf[t] - &c;
                }
            }
        }
        buf.truncate(4 * m);
        Ok(CycElt { layer: Some(self.layer), coeffs: buf })
    }

    /// Field norm N(x) = Res(Phi_n, rep(x)), exact via CRT over word primes.
    pub fn norm(&self, x: &CycElt) -> Rat {
        let x = self.lift(x);
        if x.is_zero() {
            return Rat::zero();
        }
        // clear denominators: x = y / L with y integral
        let mut lcm = BigInt::one();
        for c in &x.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let y: Vec<BigInt> = x
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let deg = y.iter().rposition(|c| !c.is_zero()).unwrap();
        let scale = Rat::from_bigint(lcm).pow(self.phi() as i32);
        if deg == 0 {
            return Rat::from_bigint(y[0].clone()).pow(self.phi() as i32) / scale;
        }
        let res = resultant_phi_crt(self, &y[..=deg]);
        Rat::from_bigint(res) / scale
    }

    /// Monic minimal polynomial of x over Q (little-endian coefficients).
    ///
    /// Strategy: find the dependency degree and candidate coefficients
    /// modulo word-size primes, reconstruct rationals by CRT, then verify
    /// the candidate annihilates x exactly. A dependency mod p can only
    /// appear at or below the true degree, so a verified monic annihilator
    /// whose degree matches a modular witness is the minimal polynomial.
    /// Falls back to the exact rational scan if reconstruction stalls.
    pub fn min_poly(&self, x: &CycElt) -> Vec<Rat> {
        let x = self.lift(x);
        if let Some(c) = x.as_rat() {
            return vec![-c, Rat::one()];
        }
        let mut prime = PrimeStream::new();
        let mut degree = 0usize;
        let mut crt: Vec<CrtSlot> = Vec::new();
        let mut primes_used = 0usize;
        let mut since_attempt = 0usize;
        while primes_used < 400 {
            let p = prime.next();
            let Some(xp) = reduce_coeffs_mod(&x.coeffs, p) else {
                continue;
            };
            let mp_p = min_poly_fp(&xp, self.m, p);
            let d_p = mp_p.len() - 1;
            if d_p > degree {
                // every earlier prime lost rank; start over at the new degree
                degree = d_p;
                crt = vec![CrtSlot::new(); d_p + 1];
                since_attempt = 0;
            } else if d_p < degree {
                continue; // unlucky prime
            }
            for (slot, &v) in crt.iter_mut().zip(&mp_p) {
                slot.push(p, v);
            }
            primes_used += 1;
            since_attempt += 1;
            if since_attempt >= 2 {
                since_attempt = 0;
                if let Some(cand) = crt
                    .iter()
                    .map(|s| s.rational_reconstruct())
                    .collect::<Option<Vec<Rat>>>()
                {
                    // cheap screen at a fresh prime before the exact check
                    if cand.last().map(|c| c.is_one()).unwrap_or(false)
                        && self.annihilates_mod(&cand, &x, &mut prime)
                        && self.annihilates(&cand, &x)
                    {
                        return cand;
                    }
                }
            }
        }
        self.min_poly_exact(&x)
    }

    fn annihilates_mod(&self, poly: &[Rat], x: &CycElt, prime: &mut PrimeStream) -> bool {
        for _ in 0..4 {
            let p = prime.next();
            let (Some(cp), Some(xp)) = (reduce_coeffs_mod(poly, p), reduce_coeffs_mod(&x.coeffs, p))
            else {
                continue;
            };
            let mut acc = vec![0u64; self.phi()];
            for &c in cp.iter().rev() {
                acc = mul_phi_fp(&acc, &xp, self.m, p);
                acc[0] = (acc[0] + c) % p;
            }
            return acc.iter().all(|&v| v == 0);
        }
        true // could not screen; fall through to the exact check
    }

    fn annihilates(&self, poly: &[Rat], x: &CycElt) -> bool {
        let mut acc = self.zero();
        for c in poly.iter().rev() {
            acc = acc * x.clone() + self.from_rat(c.clone());
        }
        acc.is_zero()
    }

    /// The direct rational dependency scan; exact but slow for large inputs.
    pub(crate) fn min_poly_exact(&self, x: &CycElt) -> Vec<Rat> {
        let x = self.lift(x);
        let phi = self.phi();
        // pivot-reduced rows together with their expression in powers of x
        let mut rows: Vec<(usize, Vec<Rat>, Vec<Rat>)> = Vec::new();
        let mut power = self.from_rat(Rat::one());
        let mut k = 0usize;
        loop {
            let mut vec = power.coeffs.clone();
            let mut combo = vec![Rat::zero(); k + 1];
            combo[k] = Rat::one();
            for (piv, pvec, pcombo) in &rows {
                if !vec[*piv].is_zero() {
                    let f = vec[*piv].clone();
                    for i in 0..phi {
                        if !pvec[i].is_zero() {
                            vec[i] = &vec[i] - &(&f * &pvec[i]);
                        }
                    }
                    for (i, pc) in pcombo.iter().enumerate() {
                        if !pc.is_zero() {
                            combo[i] = &combo[i] - &(&f * pc);
                        }
                    }
                }
            }
            match vec.iter().position(|c| !c.is_zero()) {
                None => {
                    // dependency: combo is the minimal polynomial up to scale
                    let lead = combo[k].clone();
                    return combo.into_iter().map(|c| c / lead.clone()).collect();
                }
                Some(piv) => {
                    let f = vec[piv].inv();
                    let nvec: Vec<Rat> = vec.iter().map(|c| c * &f).collect();
                    let ncombo: Vec<Rat> = combo.iter().map(|c| c * &f).collect();
                    rows.push((piv, nvec, ncombo));
                }
            }
            k += 1;
            assert!(k <= phi, "no dependency within the field degree");
            power = power * x.clone();
        }
    }
}

/// A fixed embedding Q(zeta_n) -> F_{q^d}, zeta -> omega, chosen once per
/// (layer, q, seed) and recorded so verdicts replay bit-for-bit.
#[derive(Clone)]
pub struct Embedding {
    pub layer: u32,
    pub q: u64,
    pub field: Arc<FqField>,
    pub zeta_image: FqElt,
}

impl Embedding {
    pub fn new(cf: &CycField, q: u64, seed: u64) -> Result<Embedding> {
        if q == 5 {
            return Err(Error::ExcludedPrime);
        }
        if !is_prime_u64(q) {
            return Err(Error::InvalidArgument(format!("{q} is not prime")));
        }
        let n = cf.conductor();
        let d = modular::mult_order(q, n)?;
        let field = FqField::new(q, d as usize, seed)?;
        let zeta_image = element_of_order(&field, n, seed)?;
        Ok(Embedding { layer: cf.layer(), q, field, zeta_image })
    }

    /// Rebuild from recorded data, revalidating the field and the order of
    /// the recorded zeta image.
    pub fn from_recorded(layer: u32, info: &crate::fq::FqFieldInfo, zeta_coeffs: Vec<u64>) -> Result<Embedding> {
        if info.q == 5 {
            return Err(Error::ExcludedPrime);
        }
        let cf = CycField::new(layer)?;
        let field = FqField::from_info(info)?;
        let zeta_image = field.elt_from_coeffs(zeta_coeffs)?;
        if !zeta_image.has_order(cf.conductor()) {
            return Err(Error::InvalidArgument("recorded zeta image has the wrong order".into()));
        }
        Ok(Embedding { layer, q: info.q, field, zeta_image })
    }

    /// Image of x under zeta -> omega (Horner); denominators must be coprime
    /// to q.
    pub fn apply(&self, x: &CycElt) -> Result<FqElt> {
        let cf = CycField::new(self.layer)?;
        let x = cf.lift(x);
        let mut acc = self.field.elt_from_int(0);
        for c in x.coeffs.iter().rev() {
            acc = acc * self.zeta_image.clone() + self.field.elt_from_rat(c)?;
        }
        Ok(acc)
    }
}

/// residue_embed as a one-shot operation; the certificate machinery keeps
/// the Embedding around instead to reuse it across a whole configuration.
pub fn residue_embed(cf: &CycField, q: u64, x: &CycElt, seed: u64) -> Result<FqElt> {
    Embedding::new(cf, q, seed)?.apply(x)
}

// ---- exact resultant of Phi_n with an integer polynomial, via CRT ----

fn resultant_phi_crt(cf: &CycField, g: &[BigInt]) -> BigInt {
    let phi = cf.phi();
    let deg_g = g.len() - 1;
    // Hadamard-style bound: |Res| <= 5^(deg_g/2) * ||g||_2^phi
    let norm_sq: BigUint = g.iter().map(|c| c.magnitude() * c.magnitude()).sum();
    let bound_bits = 2 * deg_g as u64 + phi as u64 * (norm_sq.bits() / 2 + 1) + 8;

    let mut residues: Vec<(u64, u64)> = Vec::new();
    let mut acc_bits = 0u64;
    let mut p = (1u64 << 62) - 1;
    while acc_bits <= bound_bits + 1 {
        while !is_prime_u64(p) {
            p -= 2;
        }
        let lc = bigint_mod_u64(&g[deg_g], p);
        if lc != 0 {
            let gp: Vec<u64> = g.iter().map(|c| bigint_mod_u64(c, p)).collect();
            let phi_p: Vec<u64> = {
                let mut v = vec![0u64; phi + 1];
                for k in 0..=4 {
                    v[k * cf.m] = 1;
                }
                v
            };
            residues.push((p, resultant_prs_fp(&phi_p, &gp, p)));
            acc_bits += 62;
        }
        p -= 2;
    }

    // CRT combine, centered
    let mut modulus = BigInt::one();
    let mut x = BigInt::zero();
    for (p, r) in residues {
        let p_big = BigInt::from(p);
        let cur = bigint_mod_u64(&x, p);
        let diff = sub_mod(r, cur, p);
        let m_inv = inv_mod(bigint_mod_u64(&modulus, p), p).expect("distinct primes");
        let t = mul_mod(diff, m_inv, p);
        x += &modulus * BigInt::from(t);
        modulus *= p_big;
    }
    let half = &modulus / 2;
    if x > half {
        x -= &modulus;
    }
    x
}

/// Deterministic descending stream of word-size primes below 2^62.
struct PrimeStream {
    next_candidate: u64,
}

impl PrimeStream {
    fn new() -> Self {
        PrimeStream { next_candidate: (1u64 << 62) - 1 }
    }

    fn next(&mut self) -> u64 {
        loop {
            let c = self.next_candidate;
            self.next_candidate -= 2;
            if is_prime_u64(c) {
                return c;
            }
        }
    }
}

/// Per-coefficient incremental CRT accumulator.
#[derive(Clone)]
struct CrtSlot {
    modulus: BigInt,
    value: BigInt,
}

impl CrtSlot {
    fn new() -> Self {
        CrtSlot { modulus: BigInt::one(), value: BigInt::zero() }
    }

    fn push(&mut self, p: u64, r: u64) {
        let cur = bigint_mod_u64(&self.value, p);
        let diff = sub_mod(r, cur, p);
        let m_inv = inv_mod(bigint_mod_u64(&self.modulus, p), p).expect("distinct primes");
        let t = mul_mod(diff, m_inv, p);
        self.value += &self.modulus * BigInt::from(t);
        self.modulus *= BigInt::from(p);
    }

    /// Representative in (-M/2, M/2].
    fn centered(&self) -> BigInt {
        let half = &self.modulus / 2;
        if self.value > half {
            self.value.clone() - &self.modulus
        } else {
            self.value.clone()
        }
    }

    /// Rational p/q with p*1 = q*value (mod M), |p|, q <= sqrt(M/2), by the
    /// half-extended Euclidean algorithm.
    fn rational_reconstruct(&self) -> Option<Rat> {
        if self.modulus.bits() < 16 {
            return None;
        }
        let bound: BigInt = (&self.modulus / BigInt::from(2)).sqrt();
        let mut r0 = self.modulus.clone();
        let mut r1 = self.value.clone();
        let mut t0 = BigInt::zero();
        let mut t1 = BigInt::one();
        while r1 > bound {
            let q = &r0 / &r1;
            let r2 = &r0 - &q * &r1;
            r0 = std::mem::replace(&mut r1, r2);
            let t2 = &t0 - &q * &t1;
            t0 = std::mem::replace(&mut t1, t2);
        }
        if t1.is_zero() || t1.abs() > bound {
            return None;
        }
        let (mut num, mut den) = (r1, t1);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if !num.gcd(&den).is_one() {
            return None;
        }
        if !den.gcd(&self.modulus).is_one() {
            return None;
        }
        Some(Rat::new(num, den))
    }
}

/// Coefficients reduced mod p; None when p divides a denominator.
/// (`bigint_mod_u64` already carries the sign.)
fn reduce_coeffs_mod(coeffs: &[Rat], p: u64) -> Option<Vec<u64>> {
    coeffs
        .iter()
        .map(|c| {
            let den = inv_mod(bigint_mod_u64(c.denom(), p), p)?;
            Some(mul_mod(bigint_mod_u64(c.numer(), p), den, p))
        })
        .collect()
}

/// Product in F_p[x]/Phi_n (dense, with the sparse top-down reduction).
fn mul_phi_fp(a: &[u64], b: &[u64], m: usize, p: u64) -> Vec<u64> {
    let phi = 4 * m;
    let mut buf = vec![0u64; 2 * phi - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                buf[i + j] = (buf[i + j] + mul_mod(x, y, p)) % p;
            }
        }
    }
    for i in (4 * m..buf.len()).rev() {
        let c = buf[i];
        if c != 0 {
            buf[i] = 0;
            for k in 1..=4 {
                buf[i - k * m] = sub_mod(buf[i - k * m], c, p);
            }
        }
    }
    buf.truncate(phi);
    buf
}

/// Inverse in F_p[x]/Phi_n by the extended Euclidean algorithm over F_p.
fn poly_invmod_phi_fp(z: &[u64], m: usize, p: u64) -> Option<Vec<u64>> {
    let phi = 4 * m;
    let trim = |v: &mut Vec<u64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    };
    let mut a = vec![0u64; phi + 1];
    for k in 0..=4 {
        a[k * m] = 1;
    }
    let mut b = z.to_vec();
    trim(&mut b);
    if b.len() == 1 && b[0] == 0 {
        return None;
    }
    let mut t0: Vec<u64> = vec![0];
    let mut t1: Vec<u64> = vec![1];
    loop {
        if b.len() == 1 {
            let s = inv_mod(b[0], p)?;
            let mut out: Vec<u64> = t1.iter().map(|&c| mul_mod(c, s, p)).collect();
            out.resize(phi, 0);
            return Some(out);
        }
        // a = q*b + r over F_p
        let mut r = a.clone();
        let db = b.len() - 1;
        let mut q = vec![0u64; r.len().saturating_sub(db)];
        let lcb_inv = inv_mod(*b.last().unwrap(), p)?;
        while r.len() - 1 >= db && !(r.len() == 1 && r[0] == 0) {
            let c = mul_mod(*r.last().unwrap(), lcb_inv, p);
            let shift = r.len() - 1 - db;
            q[shift] = c;
            for k in 0..=db {
                r[shift + k] = sub_mod(r[shift + k], mul_mod(c, b[k], p), p);
            }
            trim(&mut r);
            if r.len() - 1 < db {
                break;
            }
        }
        if r.len() == 1 && r[0] == 0 {
            return None; // common factor with Phi_n
        }
        // t_new = t0 - q*t1
        let mut tn = t0.clone();
        tn.resize(tn.len().max(q.len() + t1.len() - 1), 0);
        for (i, &x) in q.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in t1.iter().enumerate() {
                if y != 0 {
                    tn[i + j] = sub_mod(tn[i + j], mul_mod(x, y, p), p);
                }
            }
        }
        trim(&mut tn);
        a = b;
        b = r;
        t0 = t1;
        t1 = tn;
    }
}

/// Monic minimal polynomial of x over F_p (dependency scan in F_p^phi).
fn min_poly_fp(x: &[u64], m: usize, p: u64) -> Vec<u64> {
    let phi = 4 * m;
    let mut rows: Vec<(usize, Vec<u64>, Vec<u64>)> = Vec::new();
    let mut power = vec![0u64; phi];
    power[0] = 1;
    let mut k = 0usize;
    loop {
        let mut vec = power.clone();
        let mut combo = vec![0u64; k + 1];
        combo[k] = 1;
        for (piv, pvec, pcombo) in &rows {
            let f = vec[*piv];
            if f != 0 {
                for i in 0..phi {
                    if pvec[i] != 0 {
                        vec[i] = sub_mod(vec[i], mul_mod(f, pvec[i], p), p);
                    }
                }
                for (i, &pc) in pcombo.iter().enumerate() {
                    if pc != 0 {
                        combo[i] = sub_mod(combo[i], mul_mod(f, pc, p), p);
                    }
                }
            }
        }
        match vec.iter().position(|&c| c != 0) {
            None => return combo,
            Some(piv) => {
                let s = inv_mod(vec[piv], p).unwrap();
                let nvec: Vec<u64> = vec.iter().map(|&c| mul_mod(c, s, p)).collect();
                let ncombo: Vec<u64> = combo.iter().map(|&c| mul_mod(c, s, p)).collect();
                rows.push((piv, nvec, ncombo));
            }
        }
        k += 1;
        assert!(k <= phi, "no dependency within the field degree");
        power = mul_phi_fp(&power, x, m, p);
    }
}

fn bigint_mod_u64(c: &BigInt, p: u64) -> u64 {
    let r = (c.magnitude() % BigUint::from(p)).to_u64_digits();
    let r = r.first().copied().unwrap_or(0);
    if c.is_negative() && r != 0 {
        p - r
    } else {
        r
    }
}

/// Classical resultant of two univariate polynomials over F_p by the
/// Euclidean remainder sequence.
pub(crate) fn resultant_prs_fp(f: &[u64], g: &[u64], p: u64) -> u64 {
    let trim = |v: &mut Vec<u64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    };
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    if (a.len() == 1 && a[0] == 0) || (b.len() == 1 && b[0] == 0) {
        return 0;
    }
    let mut res = 1u64;
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            return mul_mod(res, modular::pow_mod(b[0], da as u64, p), p);
        }
        // r = a mod b
        let mut r = a.clone();
        let lcb_inv = inv_mod(*b.last().unwrap(), p).unwrap();
        while r.len() - 1 >= db && !(r.len() == 1 && r[0] == 0) {
            let c = mul_mod(*r.last().unwrap(), lcb_inv, p);
            let shift = r.len() - 1 - db;
            for k in 0..=db {
                r[shift + k] = sub_mod(r[shift + k], mul_mod(c, b[k], p), p);
            }
            trim(&mut r);
            if r.len() - 1 < db {
                break;
            }
        }
        if r.len() == 1 && r[0] == 0 {
            return 0;
        }
        let dr = r.len() - 1;
        if (da * db) % 2 == 1 {
            res = p - res;
        }
        res = mul_mod(res, modular::pow_mod(*b.last().unwrap(), (da - dr) as u64, p), p);
        a = b;
        b = r;
    }
}

/// An element of Q(zeta_n) as a reduced coefficient vector, or a detached
/// rational constant (layer `None`).
#[derive(Clone)]
pub struct CycElt {
    layer: Option<u32>,
    coeffs: Vec<Rat>,
}

impl CycElt {
    pub fn layer(&self) -> Option<u32> {
        self.layer
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn lifted(&self, cf: &CycField) -> CycElt {
        cf.lift(self)
    }

    /// The rational value, when the element is a rational constant.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.layer {
            None => Some(self.coeffs[0].clone()),
            Some(_) => {
                if self.coeffs[1..].iter().all(|c| c.is_zero()) {
                    Some(self.coeffs[0].clone())
                } else {
                    None
                }
            }
        }
    }

    fn unify(a: &CycElt, b: &CycElt) -> (CycElt, CycElt) {
        match (a.layer, b.layer) {
            (None, None) => (a.clone(), b.clone()),
            (Some(r), _) => {
                let cf = CycField { layer: r, m: 5usize.pow(r) };
                (a.clone(), cf.lift(b))
            }
            (_, Some(r)) => {
                let cf = CycField { layer: r, m: 5usize.pow(r) };
                (cf.lift(a), b.clone())
            }
        }
    }
}

impl PartialEq for CycElt {
    fn eq(&self, other: &Self) -> bool {
        match (self.layer, other.layer) {
            (Some(a), Some(b)) if a != b => false,
            _ => {
                let (x, y) = CycElt::unify(self, other);
                x.coeffs == y.coeffs
            }
        }
    }
}

impl fmt::Debug for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycElt {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(out, "0")
        } else {
            write!(out, "{}", terms.join(" + "))
        }
    }
}

impl Add for CycElt {
    type Output = CycElt;
    fn add(self, rhs: CycElt) -> CycElt {
        let (a, b) = CycElt::unify(&self, &rhs);
        CycElt {
            layer: a.layer,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for CycElt {
    type Output = CycElt;
    fn sub(self, rhs: CycElt) -> CycElt {
        let (a, b) = CycElt::unify(&self, &rhs);
        CycElt {
            layer: a.layer,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Neg for CycElt {
    type Output = CycElt;
    fn neg(self) -> CycElt {
        CycElt { layer: self.layer, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for CycElt {
    type Output = CycElt;
    fn mul(self, rhs: CycElt) -> CycElt {
        let (a, b) = CycElt::unify(&self, &rhs);
        match a.layer {
            None => CycElt { layer: None, coeffs: vec![&a.coeffs[0] * &b.coeffs[0]] },
            Some(r) => {
                let m = 5usize.pow(r);
                let phi = 4 * m;
                let mut buf = vec![Rat::zero(); 2 * phi - 1];
                // iterate the sparser operand on the outside
                let (s, t) = {
                    let na = a.coeffs.iter().filter(|c| !c.is_zero()).count();
                    let nb = b.coeffs.iter().filter(|c| !c.is_zero()).count();
                    if na <= nb { (&a, &b) } else { (&b, &a) }
                };
                for (i, x) in s.coeffs.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in t.coeffs.iter().enumerate() {
                        if !y.is_zero() {
                            buf[i + j] = &buf[i + j] + &(x * y);
                        }
                    }
                }
                // top-down pass: every index >= 4m pushes to strictly lower slots
                for i in (4 * m..buf.len()).rev() {
                    if !buf[i].is_zero() {
                        let c = std::mem::replace(&mut buf[i], Rat::zero());
                        for k in 1..=4 {
                            let t = i - k * m;
                            buf[t] = &buf[t] - &c;
                        }
                    }
                }
                buf.truncate(phi);
                CycElt { layer: Some(r), coeffs: buf }
            }
        }
    }
}

impl num_traits::Zero for CycElt {
    fn zero() -> Self {
        CycElt { layer: None, coeffs: vec![Rat::zero()] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl num_traits::One for CycElt {
    fn one() -> Self {
        CycElt { layer: None, coeffs: vec![Rat::one()] }
    }
}

impl Ring for CycElt {
    fn scale_rat(&self, by: &Rat) -> Self {
        CycElt { layer: self.layer, coeffs: self.coeffs.iter().map(|c| c * by).collect() }
    }
}

impl Div for CycElt {
    type Output = CycElt;
    fn div(self, rhs: CycElt) -> CycElt {
        let inv = rhs.inv();
        self * inv
    }
}

impl Field for CycElt {
    /// Inverse via the norm cofactor: for integral z, N(z) * z^{-1} is an
    /// algebraic integer computed per prime (extended Euclid over F_p) and
    /// reconstructed by CRT under a Hadamard bound.
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self.layer {
            None => CycElt { layer: None, coeffs: vec![self.coeffs[0].inv()] },
            Some(r) => {
                let cf = CycField { layer: r, m: 5usize.pow(r) };
                let phi = cf.phi();
                // clear denominators: self = z / lcm
                let mut lcm = BigInt::one();
                for c in &self.coeffs {
                    lcm = lcm.lcm(c.denom());
                }
                let z: Vec<BigInt> = self
                    .coeffs
                    .iter()
                    .map(|c| c.numer() * (&lcm / c.denom()))
                    .collect();
                let norm = cf.norm(&CycElt {
                    layer: Some(r),
                    coeffs: z.iter().map(|c| Rat::from_bigint(c.clone())).collect(),
                });
                assert!(!norm.is_zero(), "nonzero element has nonzero norm");
                let norm_int = norm.numer().clone();

                // Hadamard-style bound on the cofactor coefficients: entries
                // of the adjugate of the multiplication matrix, whose columns
                // have L2 norm at most 4*sqrt(phi)*||z||_2.
                let norm_sq: BigUint = z.iter().map(|c| c.magnitude() * c.magnitude()).sum();
                let phi_bits = 64 - (phi as u64).leading_zeros() as u64;
                let bound_bits = (phi as u64 - 1) * (3 + phi_bits / 2 + norm_sq.bits() / 2 + 1) + 16;

                let mut prime = PrimeStream::new();
                let mut crt = vec![CrtSlot::new(); phi];
                let mut acc_bits = 0u64;
                while acc_bits <= bound_bits + 1 {
                    let p = prime.next();
                    if bigint_mod_u64(&norm_int, p) == 0 {
                        continue;
                    }
                    let zp: Vec<u64> = z.iter().map(|c| bigint_mod_u64(c, p)).collect();
                    let inv_p = poly_invmod_phi_fp(&zp, cf.m, p)
                        .expect("invertible mod p when p does not divide the norm");
                    let np = bigint_mod_u64(&norm_int, p);
                    for (slot, &v) in crt.iter_mut().zip(&inv_p) {
                        slot.push(p, mul_mod(v, np, p));
                    }
                    acc_bits += 61;
                }
                // inverse = cofactor * lcm / norm
                let scale = Rat::from_bigint(lcm) / Rat::from_bigint(norm_int);
                let coeffs = crt
                    .into_iter()
                    .map(|slot| Rat::from_bigint(slot.centered()) * scale.clone())
                    .collect();
                CycElt { layer: Some(r), coeffs }
            }
        }
    }
}

#[cfg(test)]
impl CycElt {
    /// Extended-Euclid inverse over Q; exact but slow for large inputs,
    /// retained as the independent oracle for the modular route.
    pub(crate) fn inv_euclid(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self.layer {
            None => CycElt { layer: None, coeffs: vec![self.coeffs[0].inv()] },
            Some(r) => {
                let m = 5usize.pow(r);
                let phi = 4 * m;
                let mut a = vec![Rat::zero(); phi + 1];
                for k in 0..=4 {
                    a[k * m] = Rat::one();
                }
                let mut b = self.coeffs.clone();
                trim_rat(&mut b);
                let mut t0 = vec![Rat::zero()];
                let mut t1 = vec![Rat::one()];
                loop {
                    if b.len() == 1 {
                        let s = b[0].inv();
                        let mut res: Vec<Rat> = t1.iter().map(|c| c * &s).collect();
                        res.resize(phi, Rat::zero());
                        return CycElt { layer: Some(r), coeffs: res };
                    }
                    let (q, rem) = poly_divmod_rat(&a, &b);
                    // t_new = t0 - q*t1
                    let mut tn = t0.clone();
                    tn.resize(tn.len().max(q.len() + t1.len() - 1), Rat::zero());
                    for (i, x) in q.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (j, y) in t1.iter().enumerate() {
                            if !y.is_zero() {
                                tn[i + j] = &tn[i + j] - &(x * y);
                            }
                        }
                    }
                    trim_rat(&mut tn);
                    a = b;
                    b = rem;
                    t0 = t1;
                    t1 = tn;
                    assert!(!(b.len() == 1 && b[0].is_zero()), "element is a zero divisor");
                }
            }
        }
    }
}

impl ExactDiv for CycElt {
    fn exact_div(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(self.clone() / den.clone())
        }
    }
}

#[cfg(test)]
fn trim_rat(v: &mut Vec<Rat>) {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
}

#[cfg(test)]
fn poly_divmod_rat(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r = a.to_vec();
    trim_rat(&mut r);
    let db = b.len() - 1;
    if r.len() - 1 < db {
        return (vec![Rat::zero()], r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    let lc_inv = b.last().unwrap().inv();
    while r.len() - 1 >= db && !(r.len() == 1 && r[0].is_zero()) {
        let c = r.last().unwrap() * &lc_inv;
        let shift = r.len() - 1 - db;
        q[shift] = c.clone();
        for k in 0..=db {
            r[shift + k] = &r[shift + k] - &(&c * &b[k]);
        }
        trim_rat(&mut r);
        if r.len() - 1 < db {
            break;
        }
    }
    (q, r)
}
