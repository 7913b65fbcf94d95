//! Modular evaluation-interpolation engine for resultant degrees.
//!
//! `Res_elim(f, g)` for bivariate-plus-parameters input is never expanded
//! symbolically. Instead, parameters are specialized to random values in F_p
//! for random 62-bit primes p, the kept variable is evaluated at enough
//! points to cover a Bezout-style degree bound, each specialized resultant is
//! a univariate Sylvester determinant over F_p (Gaussian elimination), and
//! the values are re-assembled by Newton interpolation. Two agreeing prime
//! witnesses are required; disagreement draws a third.

use std::collections::{BTreeMap, HashSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{inv_mod, is_prime_u64, mul_mod, sub_mod};
use crate::mpoly::MPoly;
use crate::rat::Rat;

#[derive(Clone, Debug)]
pub struct ModResOptions {
    pub seed: u64,
    /// agreeing witnesses required before accepting a degree
    pub required_witnesses: usize,
    /// total prime draws before surfacing an unlucky-specialization error
    pub max_prime_draws: usize,
}

impl Default for ModResOptions {
    fn default() -> Self {
        ModResOptions {
            seed: crate::DEFAULT_SEED,
            required_witnesses: 2,
            max_prime_draws: 8,
        }
    }
}

/// One prime's verdict. `degree: None` means the specialized resultant
/// vanished at every evaluation point (an identically-zero resultant).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrimeWitness {
    pub prime: u64,
    pub specialization: BTreeMap<String, u64>,
    pub degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModResOutcome {
    Degree(usize),
    /// resultant identically zero (the inputs share a factor)
    Degenerate,
}

#[derive(Clone, Debug)]
pub struct ModResResult {
    pub outcome: ModResOutcome,
    pub witnesses: Vec<PrimeWitness>,
}

/// Degree in `kept` of Res_elim(f, g) after random specialization of
/// `params`, certified by agreeing prime witnesses.
pub fn resultant_degree_modular(
    f: &MPoly<Rat>,
    g: &MPoly<Rat>,
    elim: &str,
    kept: &str,
    params: &[&str],
    opts: &ModResOptions,
) -> Result<ModResResult> {
    let (f, g) = MPoly::unify(f, g);
    let vars = f.vars().clone();
    let elim_ix = f
        .var_index(elim)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown variable {elim:?}")))?;
    let kept_ix = f
        .var_index(kept)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown variable {kept:?}")))?;
    if elim_ix == kept_ix {
        return Err(Error::InvalidArgument("elim and kept must differ".into()));
    }
    let mut param_ix = Vec::new();
    for p in params {
        let ix = f
            .var_index(p)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown parameter {p:?}")))?;
        param_ix.push(ix);
    }
    for (i, name) in vars.iter().enumerate() {
        if i != elim_ix && i != kept_ix && !param_ix.contains(&i) {
            let used = f.degree_in(i) > 0 || g.degree_in(i) > 0;
            if used {
                return Err(Error::InvalidArgument(format!(
                    "variable {name:?} is neither eliminated, kept, nor a parameter"
                )));
            }
        }
    }

    let df_e = f.degree_in(elim_ix) as usize;
    let dg_e = g.degree_in(elim_ix) as usize;
    if df_e == 0 || dg_e == 0 {
        return Err(Error::InvalidArgument(
            "inputs must have positive degree in the elimination variable".into(),
        ));
    }
    let df_k = f.degree_in(kept_ix) as usize;
    let dg_k = g.degree_in(kept_ix) as usize;
    let bound = df_k * dg_e + dg_k * df_e;

    let mut rng = ChaCha12Rng::seed_from_u64(opts.seed);
    let mut witnesses: Vec<PrimeWitness> = Vec::new();

    for _draw in 0..opts.max_prime_draws {
        let p = random_prime(&mut rng);
        let spec: BTreeMap<String, u64> = param_ix
            .iter()
            .map(|&ix| (vars[ix].clone(), rng.gen_range(1..p)))
            .collect();
        let Some(fb) = specialize(&f, elim_ix, kept_ix, &param_ix, &spec, &vars, p) else {
            continue; // prime divides a denominator
        };
        let Some(gb) = specialize(&g, elim_ix, kept_ix, &param_ix, &spec, &vars, p) else {
            continue;
        };
        // degree profile must survive the specialization
        if deg_of(&fb, 0) != df_e || deg_of(&gb, 0) != dg_e {
            continue;
        }
        // leading coefficients in elim as univariate polynomials in kept
        let lcf = lc_in_kept(&fb, df_e);
        let lcg = lc_in_kept(&gb, dg_e);

        // evaluation points where neither leading coefficient vanishes
        let mut xs: Vec<u64> = Vec::with_capacity(bound + 1);
        let mut seen = HashSet::new();
        let mut attempts = 0usize;
        while xs.len() < bound + 1 && attempts < 20 * (bound + 1) {
            attempts += 1;
            let x = rng.gen_range(0..p);
            if !seen.insert(x) {
                continue;
            }
            if eval_poly(&lcf, x, p) == 0 || eval_poly(&lcg, x, p) == 0 {
                continue;
            }
            xs.push(x);
        }
        if xs.len() < bound + 1 {
            continue;
        }

        let ys: Vec<u64> = xs
            .par_iter()
            .map(|&x| {
                let fu = eval_kept(&fb, x, p, df_e);
                let gu = eval_kept(&gb, x, p, dg_e);
                sylvester_det_fp(&fu, &gu, p)
            })
            .collect();

        let degree = interpolated_degree(&xs, &ys, p);
        witnesses.push(PrimeWitness { prime: p, specialization: spec, degree });

        // consensus check
        let mut counts: BTreeMap<Option<usize>, usize> = BTreeMap::new();
        for w in &witnesses {
            *counts.entry(w.degree).or_default() += 1;
        }
        if let Some((&verdict, _)) = counts.iter().find(|(_, &c)| c >= opts.required_witnesses) {
            let outcome = match verdict {
                Some(d) => ModResOutcome::Degree(d),
                None => ModResOutcome::Degenerate,
            };
            return Ok(ModResResult { outcome, witnesses });
        }
    }
    Err(Error::UnluckySpecialization)
}

fn random_prime(rng: &mut ChaCha12Rng) -> u64 {
    loop {
        let c = rng.gen_range(1u64 << 61..1u64 << 62) | 1;
        if is_prime_u64(c) {
            return c;
        }
    }
}

type Bivariate = BTreeMap<(usize, usize), u64>;

/// Map the polynomial to F_p with parameters specialized; None when p
/// divides a coefficient denominator.
fn specialize(
    f: &MPoly<Rat>,
    elim_ix: usize,
    kept_ix: usize,
    param_ix: &[usize],
    spec: &BTreeMap<String, u64>,
    vars: &[String],
    p: u64,
) -> Option<Bivariate> {
    let mut out: Bivariate = BTreeMap::new();
    for (m, c) in f.terms() {
        let den = bigint_mod(c.denom(), p);
        let den_inv = inv_mod(den, p)?;
        let mut v = mul_mod(bigint_mod(c.numer(), p), den_inv, p);
        if c.is_negative() && v != 0 {
            // bigint_mod returns magnitudes; restore the sign
            v = p - v;
        }
        for &ix in param_ix {
            let e = m.0[ix] as u64;
            if e > 0 {
                v = mul_mod(v, crate::modular::pow_mod(spec[&vars[ix]], e, p), p);
            }
        }
        let key = (m.0[elim_ix] as usize, m.0[kept_ix] as usize);
        let slot = out.entry(key).or_insert(0);
        *slot = (*slot + v) % p;
    }
    out.retain(|_, v| *v != 0);
    Some(out)
}

fn bigint_mod(c: &num_bigint::BigInt, p: u64) -> u64 {
    (c.magnitude() % num_bigint::BigUint::from(p))
        .to_u64_digits()
        .first()
        .copied()
        .unwrap_or(0)
}

fn deg_of(b: &Bivariate, which: usize) -> usize {
    b.keys()
        .map(|&(e, k)| if which == 0 { e } else { k })
        .max()
        .unwrap_or(0)
}

/// Coefficient of elim^top as a dense univariate in kept.
fn lc_in_kept(b: &Bivariate, top: usize) -> Vec<u64> {
    let dk = b
        .keys()
        .filter(|&&(e, _)| e == top)
        .map(|&(_, k)| k)
        .max()
        .unwrap_or(0);
    let mut out = vec![0u64; dk + 1];
    for (&(e, k), &v) in b {
        if e == top {
            out[k] = v;
        }
    }
    out
}

fn eval_poly(c: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &ci in c.iter().rev() {
        acc = (mul_mod(acc, x, p) + ci) % p;
    }
    acc
}

/// Substitute kept = x; dense little-endian coefficients in elim.
fn eval_kept(b: &Bivariate, x: u64, p: u64, de: usize) -> Vec<u64> {
    let dk = deg_of(b, 1);
    let mut xpow = vec![1u64; dk + 1];
    for i in 1..=dk {
        xpow[i] = mul_mod(xpow[i - 1], x, p);
    }
    let mut out = vec![0u64; de + 1];
    for (&(e, k), &v) in b {
        out[e] = (out[e] + mul_mod(v, xpow[k], p)) % p;
    }
    out
}

/// Sylvester determinant over F_p (ascending coefficient rows, f first),
/// by Gaussian elimination with partial pivoting.
pub(crate) fn sylvester_det_fp(f: &[u64], g: &[u64], p: u64) -> u64 {
    let df = f.len() - 1;
    let dg = g.len() - 1;
    if df == 0 {
        return crate::modular::pow_mod(f[0], dg as u64, p);
    }
    if dg == 0 {
        return crate::modular::pow_mod(g[0], df as u64, p);
    }
    let n = df + dg;
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..dg {
        for (j, &c) in f.iter().enumerate() {
            m[i][i + j] = c;
        }
    }
    for i in 0..df {
        for (j, &c) in g.iter().enumerate() {
            m[dg + i][i + j] = c;
        }
    }
    let mut det = 1u64;
    let mut negate = false;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| m[i][k] != 0) else {
            return 0;
        };
        if piv != k {
            m.swap(k, piv);
            negate = !negate;
        }
        det = mul_mod(det, m[k][k], p);
        let inv = inv_mod(m[k][k], p).expect("pivot invertible");
        for i in k + 1..n {
            if m[i][k] != 0 {
                let fmul = mul_mod(m[i][k], inv, p);
                for j in k..n {
                    m[i][j] = sub_mod(m[i][j], mul_mod(fmul, m[k][j], p), p);
                }
            }
        }
    }
    if negate && det != 0 {
        p - det
    } else {
        det
    }
}

/// Degree of the interpolating polynomial through (xs, ys); None when it is
/// identically zero.
fn interpolated_degree(xs: &[u64], ys: &[u64], p: u64) -> Option<usize> {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let dx = sub_mod(xs[i], xs[i - j], p);
            let inv = inv_mod(dx, p).expect("distinct interpolation nodes");
            c[i] = mul_mod(sub_mod(c[i], c[i - 1], p), inv, p);
        }
    }
    c.iter().rposition(|&v| v != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::vars;
    use crate::resultant::resultant;
    use crate::scalar::Ring;
    use num_traits::Zero;
    use rand::Rng;

    fn rs() -> crate::mpoly::Vars {
        vars(&["r", "s"])
    }

    fn r() -> MPoly<Rat> {
        MPoly::var(rs(), 0)
    }

    fn s() -> MPoly<Rat> {
        MPoly::var(rs(), 1)
    }

    #[test]
    fn toy_difference_sum() {
        // Res_s(r - s, r + s) = 2r: degree 1
        let out = resultant_degree_modular(
            &(r() - s()),
            &(r() + s()),
            "s",
            "r",
            &[],
            &ModResOptions::default(),
        )
        .unwrap();
        assert_eq!(out.outcome, ModResOutcome::Degree(1));
        assert!(out.witnesses.len() >= 2);
    }

    #[test]
    fn equal_inputs_are_degenerate() {
        let f = r() * r() - s() * s() + r();
        let out =
            resultant_degree_modular(&f, &f, "s", "r", &[], &ModResOptions::default()).unwrap();
        assert_eq!(out.outcome, ModResOutcome::Degenerate);
    }

    #[test]
    fn matches_exact_resultant_degree() {
        let mut rng = ChaCha12Rng::seed_from_u64(77);
        let mut done = 0;
        while done < 10 {
            let mut f = MPoly::zero_in(rs());
            let mut g = MPoly::zero_in(rs());
            for _ in 0..5 {
                let (er, es) = (rng.gen_range(0..3u32), rng.gen_range(0..3u32));
                f = f + r().pow_u(er) * s().pow_u(es).scale_rat(&Rat::from_int(rng.gen_range(-4i64..=4)));
                let (er, es) = (rng.gen_range(0..3u32), rng.gen_range(0..3u32));
                g = g + r().pow_u(er) * s().pow_u(es).scale_rat(&Rat::from_int(rng.gen_range(-4i64..=4)));
            }
            if f.degree_in(1) == 0 || g.degree_in(1) == 0 {
                continue;
            }
            let exact = resultant(&f, &g, 1).unwrap();
            let modular = resultant_degree_modular(&f, &g, "s", "r", &[], &ModResOptions::default())
                .unwrap();
            match modular.outcome {
                ModResOutcome::Degree(d) => assert_eq!(d, exact.degree_in(0) as usize),
                ModResOutcome::Degenerate => assert!(exact.is_zero()),
            }
            done += 1;
        }
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let f = r() * r() * s() - s() * s() * s() + r();
        let g = r() * s() - Ring::from_int(2);
        let run = |jobs: usize| {
            crate::run_with_jobs(Some(jobs), || {
                resultant_degree_modular(&f, &g, "s", "r", &[], &ModResOptions::default()).unwrap()
            })
        };
        let one = run(1);
        let four = run(4);
        assert_eq!(one.outcome, four.outcome);
        let k1: Vec<_> = one.witnesses.iter().map(|w| (w.prime, w.degree)).collect();
        let k4: Vec<_> = four.witnesses.iter().map(|w| (w.prime, w.degree)).collect();
        assert_eq!(k1, k4);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let f = r() * r() * s() - s() * s() + Ring::from_int(3);
        let g = r() * s() * s() + r() - Ring::from_int(1);
        let a = resultant_degree_modular(&f, &g, "s", "r", &[], &ModResOptions::default()).unwrap();
        let b = resultant_degree_modular(&f, &g, "s", "r", &[], &ModResOptions::default()).unwrap();
        let wa: Vec<_> = a.witnesses.iter().map(|w| (w.prime, w.degree)).collect();
        let wb: Vec<_> = b.witnesses.iter().map(|w| (w.prime, w.degree)).collect();
        assert_eq!(wa, wb);
        assert_eq!(a.outcome, b.outcome);
    }

    #[test]
    fn parameters_are_specialized() {
        // Res_s(r - alpha*s, r + s) = r + alpha*r: degree 1 in r generically
        let ctx = vars(&["r", "s", "alpha"]);
        let rv = MPoly::<Rat>::var(ctx.clone(), 0);
        let sv = MPoly::<Rat>::var(ctx.clone(), 1);
        let av = MPoly::<Rat>::var(ctx.clone(), 2);
        let f = rv.clone() - av * sv.clone();
        let g = rv + sv;
        let out = resultant_degree_modular(&f, &g, "s", "r", &["alpha"], &ModResOptions::default())
            .unwrap();
        assert_eq!(out.outcome, ModResOutcome::Degree(1));
        for w in &out.witnesses {
            assert!(w.specialization.contains_key("alpha"));
        }
    }

    #[test]
    fn unknown_variable_rejected() {
        let f = r() - s();
        let g = r() + s();
        assert!(resultant_degree_modular(&f, &g, "x", "r", &[], &ModResOptions::default()).is_err());
        // missing parameter declaration
        let ctx = vars(&["r", "s", "alpha"]);
        let f2 = MPoly::<Rat>::var(ctx.clone(), 0) - MPoly::<Rat>::var(ctx.clone(), 2) * MPoly::<Rat>::var(ctx.clone(), 1);
        let g2 = MPoly::<Rat>::var(ctx.clone(), 0) + MPoly::<Rat>::var(ctx.clone(), 1);
        assert!(resultant_degree_modular(&f2, &g2, "s", "r", &[], &ModResOptions::default()).is_err());
    }

    #[test]
    fn degree_zero_in_elim_rejected() {
        let f = r(); // degree 0 in s
        let g = r() + s();
        assert!(resultant_degree_modular(&f, &g, "s", "r", &[], &ModResOptions::default()).is_err());
    }
}
