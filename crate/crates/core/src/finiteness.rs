//! The finiteness bound: build F(r,s) and G(r,s) from the invariant ratios
//! of the degree-4 pencil family and compute deg(h1), deg(h2) for
//! h1 = Res_s(F, G), h2 = Res_r(F, G).
//!
//! The family's quintic is used in its denominator-cleared form
//! 16*r*s*h = (rs) t^5 + A t^4 w + B t^3 w^2 + A t^2 w^3 + (rs) t w^4 with
//! A = r^2 s + r s^2 + r + s and B = r^2 s^2 + r^2 + 2rs + s^2 + 1; the
//! invariants are isobaric, so the ratio parameters alpha, beta are the same
//! as for the 1/16-normalized quintic itself. Cleared rational and monomial content
//! is recorded so a reviewer can audit that nothing parameter-dependent was
//! dropped.


use num_traits::{One as _, Zero as _};
use serde::{Deserialize, Serialize};

use crate::binform::{quintic_invariants, BinaryForm};
use crate::error::{Error, Result};
use crate::modres::{
    resultant_degree_modular, sylvester_det_fp, ModResOptions, ModResOutcome, PrimeWitness,
};
use crate::modular::{inv_mod, mul_mod};
use crate::mpoly::{MPoly, Vars};
use crate::rat::Rat;
use crate::resultant::resultant;
use crate::scalar::Ring;

pub const EXPECTED_PRODUCT: u64 = 518400;

/// Total-degree cap per input for the exact (symbolic Sylvester) mode.
pub const EXACT_MODE_DEGREE_CAP: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Internal,
    External,
}

#[derive(Clone, Debug)]
pub struct FinitenessProblem {
    pub degree: u8,
    pub f: MPoly<Rat>,
    pub g: MPoly<Rat>,
    pub provenance: Provenance,
    /// factors removed while clearing (content, monomials), as "F: ..." tags
    pub cleared: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Modular,
    Exact,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TargetWitness {
    pub target: String,
    #[serde(flatten)]
    pub witness: PrimeWitness,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FinitenessReport {
    pub deg_h1: usize,
    pub deg_h2: usize,
    pub product: u64,
    pub expected: u64,
    #[serde(rename = "match")]
    pub matched: bool,
    pub witnesses: Vec<TargetWitness>,
    pub cleared_content: Vec<String>,
    pub interpretation: String,
}

fn canonical_context(with_params: bool) -> Vars {
    if with_params {
        crate::mpoly::vars(&["r", "s", "alpha", "beta"])
    } else {
        crate::mpoly::vars(&["r", "s"])
    }
}

/// Clear rational content and monomial factors, recording what was removed.
fn cleared(label: &str, p: &MPoly<Rat>, log: &mut Vec<String>) -> MPoly<Rat> {
    let (content, prim) = p.content_and_primitive();
    if !content.is_one() {
        log.push(format!("{label}: content {content}"));
    }
    let mono = prim.monomial_content();
    if mono.total_degree() == 0 {
        return prim;
    }
    let names: Vec<String> = mono
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let v = &prim.vars()[i];
            if e == 1 { v.clone() } else { format!("{v}^{e}") }
        })
        .collect();
    log.push(format!("{label}: monomial {}", names.join("*")));
    prim.divide_by_monomial(&mono)
}

/// The degree-4 problem: F = I8 - alpha*I4^2, G = I12 - beta*I4^3 of the
/// family quintic, cleared of denominators and content.
pub fn build_problem_deg4() -> FinitenessProblem {
    let ctx = canonical_context(true);
    let r = MPoly::<Rat>::var(ctx.clone(), 0);
    let s = MPoly::<Rat>::var(ctx.clone(), 1);
    let alpha = MPoly::<Rat>::var(ctx.clone(), 2);
    let beta = MPoly::<Rat>::var(ctx.clone(), 3);

    let rs = r.clone() * s.clone();
    let a_num = r.clone() * r.clone() * s.clone()
        + r.clone() * s.clone() * s.clone()
        + r.clone()
        + s.clone();
    let b_num = rs.clone() * rs.clone()
        + r.clone() * r.clone()
        + rs.scale_rat(&Rat::from_int(2))
        + s.clone() * s.clone()
        + MPoly::one();
    let h = BinaryForm::new(vec![
        rs.clone(),
        a_num.clone(),
        b_num,
        a_num,
        rs,
        MPoly::zero_in(ctx.clone()),
    ]);
    let inv = quintic_invariants(&h).expect("family quintic");

    let f_raw = inv.i8.clone() - alpha * inv.i4.clone() * inv.i4.clone();
    let g_raw = inv.i12.clone() - beta * inv.i4.clone() * inv.i4.clone() * inv.i4.clone();

    let mut log = Vec::new();
    let f = cleared("F", &f_raw, &mut log);
    let g = cleared("G", &g_raw, &mut log);
    FinitenessProblem { degree: 4, f, g, provenance: Provenance::Internal, cleared: log }
}

#[derive(Serialize, Deserialize)]
struct ProblemDoc {
    degree: u8,
    #[serde(rename = "F")]
    f: MPoly<Rat>,
    #[serde(rename = "G")]
    g: MPoly<Rat>,
}

/// Re-embed a polynomial into a target variable context by name.
fn reembed(p: &MPoly<Rat>, ctx: &Vars) -> Result<MPoly<Rat>> {
    let map: Vec<usize> = p
        .vars()
        .iter()
        .map(|n| {
            ctx.iter()
                .position(|m| m == n)
                .ok_or_else(|| Error::InvalidArgument(format!("unexpected variable {n:?}")))
        })
        .collect::<Result<_>>()?;
    let mut out = MPoly::zero_in(ctx.clone());
    for (m, c) in p.terms() {
        let mut e = vec![0u16; ctx.len()];
        for (i, &exp) in m.0.iter().enumerate() {
            e[map[i]] += exp;
        }
        out.add_term(crate::mpoly::Mono(e), c.clone());
    }
    Ok(out)
}

pub fn problem_to_json(p: &FinitenessProblem) -> serde_json::Value {
    serde_json::json!({
        "degree": p.degree,
        "F": p.f,
        "G": p.g,
    })
}

/// Parse and validate an externally supplied problem: variables within
/// {r, s, alpha} for F and {r, s, beta} for G, positive degrees in r and s.
pub fn load_problem(json: &str) -> Result<FinitenessProblem> {
    let doc: ProblemDoc = serde_json::from_str(json)?;
    if doc.degree != 3 && doc.degree != 4 {
        return Err(Error::InvalidArgument(format!("unsupported degree {}", doc.degree)));
    }
    if doc.f.is_zero() || doc.g.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial in problem".into()));
    }
    if !doc.f.is_free_of("beta") {
        return Err(Error::InvalidArgument("F must not involve beta".into()));
    }
    if !doc.g.is_free_of("alpha") {
        return Err(Error::InvalidArgument("G must not involve alpha".into()));
    }
    let with_params = !doc.f.is_free_of("alpha")
        || !doc.g.is_free_of("beta")
        || doc.f.var_index("alpha").is_some()
        || doc.g.var_index("beta").is_some();
    let ctx = canonical_context(with_params);
    let f = reembed(&doc.f, &ctx)?;
    let g = reembed(&doc.g, &ctx)?;
    for (label, p) in [("F", &f), ("G", &g)] {
        for v in ["r", "s"] {
            if p.is_free_of(v) {
                return Err(Error::InvalidArgument(format!("{label} must involve {v}")));
            }
        }
    }
    Ok(FinitenessProblem {
        degree: doc.degree,
        f,
        g,
        provenance: Provenance::External,
        cleared: Vec::new(),
    })
}

/// Univariate gcd degree over F_p after a random specialization of every
/// variable except `elim`: a nonconstant gcd flags a common factor.
fn common_factor_check(f: &MPoly<Rat>, g: &MPoly<Rat>, seed: u64) -> Result<()> {
    use rand::Rng;
    use rand::SeedableRng;
    let p: u64 = 2305843009213693951; // 2^61 - 1
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed ^ 0x9c0);
    let elim = f.var_index("s").expect("canonical context");
    let vals: Vec<u64> = (0..f.vars().len()).map(|_| rng.gen_range(1..p)).collect();
    let uni = |q: &MPoly<Rat>| -> Option<Vec<u64>> {
        let mut out = vec![0u64; q.degree_in(elim) as usize + 1];
        for (m, c) in q.terms() {
            let den = bigmod(c.denom(), p);
            let num = bigmod(c.numer(), p);
            let mut v = mul_mod(num, inv_mod(den, p)?, p);
            if c.is_negative() && v != 0 {
                v = p - v;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if i != elim && e > 0 {
                    v = mul_mod(v, crate::modular::pow_mod(vals[i], e as u64, p), p);
                }
            }
            let slot = &mut out[m.0[elim] as usize];
            *slot = (*slot + v) % p;
        }
        Some(out)
    };
    let (Some(fu), Some(gu)) = (uni(f), uni(g)) else {
        return Ok(()); // unlucky prime for a denominator; skip the pre-check
    };
    if gcd_degree_fp(&fu, &gu, p) > 0 {
        return Err(Error::DegenerateResultant);
    }
    Ok(())
}

fn bigmod(c: &num_bigint::BigInt, p: u64) -> u64 {
    (c.magnitude() % num_bigint::BigUint::from(p))
        .to_u64_digits()
        .first()
        .copied()
        .unwrap_or(0)
}

fn gcd_degree_fp(f: &[u64], g: &[u64], p: u64) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    };
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let lcb_inv = inv_mod(*b.last().unwrap(), p).unwrap();
        let db = b.len() - 1;
        while a.len() - 1 >= db && !(a.len() == 1 && a[0] == 0) {
            let c = mul_mod(*a.last().unwrap(), lcb_inv, p);
            let shift = a.len() - 1 - db;
            for k in 0..=db {
                a[shift + k] = crate::modular::sub_mod(a[shift + k], mul_mod(c, b[k], p), p);
            }
            trim(&mut a);
            if a.len() - 1 < db {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

/// deg_h1 = deg_r Res_s(F,G), deg_h2 = deg_s Res_r(F,G).
pub fn finiteness_degrees(
    problem: &FinitenessProblem,
    mode: Mode,
    seed: u64,
) -> Result<FinitenessReport> {
    common_factor_check(&problem.f, &problem.g, seed)?;
    let params: Vec<&str> = problem
        .f
        .vars()
        .iter()
        .filter(|n| *n != "r" && *n != "s")
        .map(|s| s.as_str())
        .collect();

    let (deg_h1, deg_h2, witnesses) = match mode {
        Mode::Modular => {
            let opts = ModResOptions { seed, ..ModResOptions::default() };
            let run = |elim: &str, kept: &str, tag: &str, opts: &ModResOptions| -> Result<(usize, Vec<TargetWitness>)> {
                let out = resultant_degree_modular(&problem.f, &problem.g, elim, kept, &params, opts)?;
                let ws = out
                    .witnesses
                    .into_iter()
                    .map(|w| TargetWitness { target: tag.to_string(), witness: w })
                    .collect();
                match out.outcome {
                    ModResOutcome::Degree(d) => Ok((d, ws)),
                    ModResOutcome::Degenerate => Err(Error::DegenerateResultant),
                }
            };
            let (d1, mut w1) = run("s", "r", "h1", &opts)?;
            let opts2 = ModResOptions { seed: seed.wrapping_add(1), ..ModResOptions::default() };
            let (d2, w2) = run("r", "s", "h2", &opts2)?;
            w1.extend(w2);
            (d1, d2, w1)
        }
        Mode::Exact => {
            for (label, p) in [("F", &problem.f), ("G", &problem.g)] {
                if p.total_degree() > EXACT_MODE_DEGREE_CAP {
                    return Err(Error::CostCap(format!(
                        "exact mode refuses {label} of total degree {} (cap {EXACT_MODE_DEGREE_CAP})",
                        p.total_degree()
                    )));
                }
            }
            let s_ix = problem.f.var_index("s").unwrap();
            let r_ix = problem.f.var_index("r").unwrap();
            let h1 = resultant(&problem.f, &problem.g, s_ix)?;
            let h2 = resultant(&problem.f, &problem.g, r_ix)?;
            if h1.is_zero() || h2.is_zero() {
                return Err(Error::DegenerateResultant);
            }
            (h1.degree_in(r_ix) as usize, h2.degree_in(s_ix) as usize, Vec::new())
        }
    };

    let product = deg_h1 as u64 * deg_h2 as u64;
    Ok(FinitenessReport {
        deg_h1,
        deg_h2,
        product,
        expected: EXPECTED_PRODUCT,
        matched: product == EXPECTED_PRODUCT,
        witnesses,
        cleared_content: problem.cleared.clone(),
        interpretation: format!(
            "the number of possibilities for the pair (r, s) is at most deg(h1)*deg(h2) = {product}"
        ),
    })
}

/// Values of Res_s(F(r0,s), G(r0,s)) mod p with alpha, beta specialized to
/// exact rationals; a zero value witnesses a fiber point above r0.
pub fn specialized_h1_values(
    problem: &FinitenessProblem,
    alpha: &Rat,
    beta: &Rat,
    r_values: &[i64],
    p: u64,
) -> Result<Vec<u64>> {
    let embed_rat = |c: &Rat| -> Result<u64> {
        let den = bigmod(c.denom(), p);
        let inv = inv_mod(den, p).ok_or(Error::DenominatorDivisible { prime: p })?;
        let mut v = mul_mod(bigmod(c.numer(), p), inv, p);
        if c.is_negative() && v != 0 {
            v = p - v;
        }
        Ok(v)
    };
    let a0 = embed_rat(alpha)?;
    let b0 = embed_rat(beta)?;
    let s_ix = problem.f.var_index("s").expect("canonical context");
    let r_ix = problem.f.var_index("r").expect("canonical context");
    let param_val = |name: &str| -> u64 {
        match name {
            "alpha" => a0,
            "beta" => b0,
            _ => 0,
        }
    };
    let mut out = Vec::with_capacity(r_values.len());
    for &r0 in r_values {
        let r0p = if r0 >= 0 { r0 as u64 % p } else { p - ((-r0) as u64 % p) };
        let uni = |q: &MPoly<Rat>| -> Result<Vec<u64>> {
            let mut coeffs = vec![0u64; q.degree_in(s_ix) as usize + 1];
            for (m, c) in q.terms() {
                let mut v = embed_rat(c)?;
                for (i, &e) in m.0.iter().enumerate() {
                    if e == 0 || i == s_ix {
                        continue;
                    }
                    let base = if i == r_ix { r0p } else { param_val(&q.vars()[i]) };
                    v = mul_mod(v, crate::modular::pow_mod(base, e as u64, p), p);
                }
                let slot = &mut coeffs[m.0[s_ix] as usize];
                *slot = (*slot + v) % p;
            }
            while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
                coeffs.pop();
            }
            Ok(coeffs)
        };
        let fu = uni(&problem.f)?;
        let gu = uni(&problem.g)?;
        out.push(sylvester_det_fp(&fu, &gu, p));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::vars;

    fn toy_problem() -> FinitenessProblem {
        // F = r - s, G = r + s
        let ctx = vars(&["r", "s"]);
        let r = MPoly::<Rat>::var(ctx.clone(), 0);
        let s = MPoly::<Rat>::var(ctx.clone(), 1);
        FinitenessProblem {
            degree: 4,
            f: r.clone() - s.clone(),
            g: r + s,
            provenance: Provenance::External,
            cleared: Vec::new(),
        }
    }

    #[test]
    fn toy_product_is_one() {
        for mode in [Mode::Modular, Mode::Exact] {
            let report = finiteness_degrees(&toy_problem(), mode, 7).unwrap();
            assert_eq!((report.deg_h1, report.deg_h2, report.product), (1, 1, 1));
            assert!(!report.matched);
        }
    }

    #[test]
    fn equal_inputs_degenerate() {
        let ctx = vars(&["r", "s"]);
        let r = MPoly::<Rat>::var(ctx.clone(), 0);
        let s = MPoly::<Rat>::var(ctx.clone(), 1);
        let f = r.clone() * r.clone() - s.clone();
        let p = FinitenessProblem {
            degree: 4,
            f: f.clone(),
            g: f,
            provenance: Provenance::External,
            cleared: Vec::new(),
        };
        assert!(matches!(
            finiteness_degrees(&p, Mode::Modular, 7),
            Err(Error::DegenerateResultant)
        ));
    }

    #[test]
    fn exact_and_modular_agree_on_toys() {
        use rand::Rng;
        use rand::SeedableRng;
        let ctx = vars(&["r", "s"]);
        let r = MPoly::<Rat>::var(ctx.clone(), 0);
        let s = MPoly::<Rat>::var(ctx.clone(), 1);
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(61);
        let mut done = 0;
        while done < 5 {
            let mut f = MPoly::zero_in(ctx.clone());
            let mut g = MPoly::zero_in(ctx.clone());
            for _ in 0..4 {
                f = f + r.pow_u(rng.gen_range(0..3)) * s.pow_u(rng.gen_range(0..3))
                    .scale_rat(&Rat::from_int(rng.gen_range(-3i64..=3)));
                g = g + r.pow_u(rng.gen_range(0..3)) * s.pow_u(rng.gen_range(0..3))
                    .scale_rat(&Rat::from_int(rng.gen_range(-3i64..=3)));
            }
            let p = FinitenessProblem {
                degree: 4,
                f,
                g,
                provenance: Provenance::External,
                cleared: Vec::new(),
            };
            if p.f.is_zero() || p.g.is_zero() || p.f.degree_in(0) == 0 || p.f.degree_in(1) == 0
                || p.g.degree_in(0) == 0 || p.g.degree_in(1) == 0
            {
                continue;
            }
            let exact = match finiteness_degrees(&p, Mode::Exact, 7) {
                Ok(rep) => rep,
                Err(_) => continue, // degenerate draw
            };
            let modular = finiteness_degrees(&p, Mode::Modular, 7).unwrap();
            assert_eq!((exact.deg_h1, exact.deg_h2), (modular.deg_h1, modular.deg_h2));
            done += 1;
        }
    }

    #[test]
    fn built_problem_shape() {
        let p = build_problem_deg4();
        assert_eq!(p.degree, 4);
        assert!(p.f.degree_in(0) > 0 && p.f.degree_in(1) > 0);
        assert!(p.g.degree_in(0) > 0 && p.g.degree_in(1) > 0);
        assert!(p.f.is_free_of("beta"));
        assert!(p.g.is_free_of("alpha"));
        assert!(!p.f.is_free_of("alpha"));
        assert!(!p.g.is_free_of("beta"));
        // degrees observed for this family
        assert_eq!(p.f.degree_in(0), 16);
        assert_eq!(p.g.degree_in(0), 24);
        // cleared content is parameter-free (rational only, no monomials)
        for entry in &p.cleared {
            assert!(entry.contains("content"), "unexpected cleared factor {entry}");
        }
    }

    #[test]
    fn built_problem_vanishes_at_its_own_ratios() {
        // with (alpha, beta) the invariant ratios of (u,v) = (2,3), both
        // polynomials vanish at (r,s) = (2,3)
        let p = build_problem_deg4();
        let alpha: Rat = "11856354361/784726679104".parse().unwrap();
        let beta: Rat = "-396522948355899/347574279615460096".parse().unwrap();
        let vals = [Rat::from_int(2), Rat::from_int(3), alpha, beta];
        assert!(p.f.eval(&vals).is_zero());
        assert!(p.g.eval(&vals).is_zero());
    }

    #[test]
    fn problem_json_round_trip() {
        let p = build_problem_deg4();
        let json = problem_to_json(&p).to_string();
        let q = load_problem(&json).unwrap();
        assert_eq!(q.f, p.f);
        assert_eq!(q.g, p.g);
        assert_eq!(q.provenance, Provenance::External);
    }

    #[test]
    fn problem_validation() {
        // F containing beta is rejected
        let bad = r#"{"degree": 4,
            "F": {"vars": ["r","s","beta"], "terms": [{"e":[1,1,1], "c":"1"}]},
            "G": {"vars": ["r","s"], "terms": [{"e":[1,1], "c":"1"}]}}"#;
        assert!(load_problem(bad).is_err());
        // zero polynomial rejected
        let zero = r#"{"degree": 4,
            "F": {"vars": ["r","s"], "terms": []},
            "G": {"vars": ["r","s"], "terms": [{"e":[1,1], "c":"1"}]}}"#;
        assert!(load_problem(zero).is_err());
        // missing s in F rejected
        let missing = r#"{"degree": 4,
            "F": {"vars": ["r"], "terms": [{"e":[1], "c":"1"}]},
            "G": {"vars": ["r","s"], "terms": [{"e":[1,1], "c":"1"}]}}"#;
        assert!(load_problem(missing).is_err());
        // toy loads
        let toy = r#"{"degree": 4,
            "F": {"vars": ["r","s"], "terms": [{"e":[1,0], "c":"1"}, {"e":[0,1], "c":"-1"}]},
            "G": {"vars": ["r","s"], "terms": [{"e":[1,0], "c":"1"}, {"e":[0,1], "c":"1"}]}}"#;
        let p = load_problem(toy).unwrap();
        let report = finiteness_degrees(&p, Mode::Exact, 7).unwrap();
        assert_eq!(report.product, 1);
    }

    #[test]
    fn exact_mode_refuses_the_full_problem() {
        let p = build_problem_deg4();
        assert!(matches!(
            finiteness_degrees(&p, Mode::Exact, 7),
            Err(Error::CostCap(_))
        ));
    }
}
