//! Machine-word modular arithmetic: residues, the Hensel lift producing the
//! order-4 unit delta, multiplicative orders, and primality testing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + m as u128 - b as u128 % m as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of a mod m, when gcd(a, m) = 1.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division; adequate for the small moduli
/// (5-powers, extension degrees) this library needs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// An element of Z/mZ with its modulus attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Residue {
    pub value: u64,
    pub modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus > 0);
        Residue { value: value % modulus, modulus }
    }
}

pub fn five_pow(e: u32) -> u64 {
    5u64.pow(e)
}

/// Largest layer for which 5^(r+1) fits in u64.
pub const HENSEL_LAYER_CAP: u32 = 26;

/// The unit delta mod 5^(r+1) with delta^2 = -1 and delta = 2 (mod 5),
/// obtained by a Newton step per layer from the mod-5 seed.
pub fn hensel_delta(r: u32) -> Result<Residue> {
    if r < 1 {
        return Err(Error::InvalidArgument("layer must be >= 1".into()));
    }
    if r > HENSEL_LAYER_CAP {
        return Err(Error::LayerCap { layer: r, cap: HENSEL_LAYER_CAP });
    }
    let mut delta = 2u64;
    for k in 1..=r {
        let m = five_pow(k + 1);
        // f(x) = x^2 + 1; delta <- delta - f(delta)/f'(delta) mod 5^(k+1)
        let f = add_mod(mul_mod(delta, delta, m), 1, m);
        let fp_inv = inv_mod(2 * delta % m, m).expect("2*delta is a unit mod 5^k");
        delta = sub_mod(delta, mul_mod(f, fp_inv, m), m);
    }
    let m = five_pow(r + 1);
    debug_assert_eq!(add_mod(mul_mod(delta, delta, m), 1, m), 0);
    Ok(Residue::new(delta, m))
}

/// Smallest d >= 1 with q^d = 1 (mod n); requires gcd(q, n) = 1.
pub fn mult_order(q: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    if gcd_u64(q % n, n) != 1 {
        return Err(Error::NotCoprime { a: (q % n) as i64, n });
    }
    let mut d = 1u64;
    let mut x = q % n;
    while x != 1 {
        x = mul_mod(x, q % n, n);
        d += 1;
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_delta(r: u32) -> u64 {
        let m = five_pow(r + 1);
        (0..m)
            .find(|&d| d % 5 == 2 && add_mod(mul_mod(d, d, m), 1, m) == 0)
            .unwrap()
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_delta(1).unwrap(), Residue::new(7, 25));
        assert_eq!(hensel_delta(2).unwrap(), Residue::new(57, 125));
        assert_eq!(hensel_delta(3).unwrap(), Residue::new(182, 625));
    }

    #[test]
    fn hensel_matches_brute_force() {
        for r in 1..=3 {
            assert_eq!(hensel_delta(r).unwrap().value, brute_force_delta(r));
        }
    }

    #[test]
    fn hensel_layer_compatibility() {
        for r in 1..=5 {
            let lo = hensel_delta(r).unwrap();
            let hi = hensel_delta(r + 1).unwrap();
            assert_eq!(hi.value % lo.modulus, lo.value);
        }
    }

    #[test]
    fn delta_has_order_four() {
        for r in 1..=6 {
            let d = hensel_delta(r).unwrap();
            assert_eq!(pow_mod(d.value, 4, d.modulus), 1);
            assert_ne!(pow_mod(d.value, 2, d.modulus), 1);
        }
    }

    #[test]
    fn hensel_rejects_bad_layers() {
        assert!(matches!(hensel_delta(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(hensel_delta(27), Err(Error::LayerCap { .. })));
        // the design target: deep layers are instant
        assert!(hensel_delta(10).is_ok());
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(2, 25).unwrap(), 20);
        assert_eq!(mult_order(7, 25).unwrap(), 4);
        assert_eq!(mult_order(123, 1).unwrap(), 1);
        assert!(matches!(mult_order(10, 25), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn mult_order_by_iteration_oracle() {
        for (q, n) in [(2u64, 25u64), (3, 125), (7, 125), (11, 125), (2, 625)] {
            let d = mult_order(q, n).unwrap();
            assert_eq!(pow_mod(q, d, n), 1);
            for e in 1..d {
                assert_ne!(pow_mod(q, e, n), 1);
            }
        }
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(10007));
        assert!(is_prime_u64(2305843009213694087)); // 61-bit
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(6700417 * 97));
    }

    #[test]
    fn factor_small() {
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor_u64(1), vec![]);
        assert_eq!(factor_u64(97), vec![(97, 1)]);
    }

    #[test]
    fn residue_serde_shape() {
        let r = Residue::new(7, 25);
        assert_eq!(
            serde_json::to_value(r).unwrap(),
            serde_json::json!({"value": 7, "modulus": 25})
        );
    }

    #[test]
    fn inv_mod_round_trip() {
        for m in [25u64, 125, 10007] {
            for a in 1..40 {
                if gcd_u64(a, m) == 1 {
                    let inv = inv_mod(a, m).unwrap();
                    assert_eq!(mul_mod(a, inv, m), 1);
                }
            }
        }
        assert_eq!(inv_mod(5, 25), None);
    }
}
