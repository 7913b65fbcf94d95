//! Sparse multivariate polynomials over an abstract coefficient ring.
//!
//! Terms live in a BTreeMap keyed by exponent vectors under graded-lex order,
//! so iteration is deterministic and the leading term is the last entry. A
//! polynomial carries its ordered variable-name context; constants built by
//! the generic scalar machinery have an empty context and adopt the other
//! operand's on first contact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One as _, Zero as _};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::Rat;
use crate::scalar::{ExactDiv, Field, Ring};

/// Ordered variable context, shared by reference.
pub type Vars = Arc<Vec<String>>;

pub fn vars(names: &[&str]) -> Vars {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

/// Exponent vector; ordered by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, if defined.
    fn checked_div(&self, other: &Mono) -> Option<Mono> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u16>>>()
            .map(Mono)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct MPoly<F: Ring> {
    vars: Vars,
    terms: BTreeMap<Mono, F>,
}

impl<F: Ring> MPoly<F> {
    pub fn zero_in(vars: Vars) -> Self {
        MPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vars, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(vec![0; vars.len()]), c);
        }
        MPoly { vars, terms }
    }

    pub fn var(vars: Vars, index: usize) -> Self {
        assert!(index < vars.len(), "variable index out of range");
        let mut e = vec![0u16; vars.len()];
        e[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Mono(e), F::one());
        MPoly { vars, terms }
    }

    pub fn from_terms(vars: Vars, items: impl IntoIterator<Item = (Vec<u16>, F)>) -> Self {
        let mut p = MPoly::zero_in(vars.clone());
        for (e, c) in items {
            assert_eq!(e.len(), vars.len());
            p.add_term(Mono(e), c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Mono, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// Leading term under graded-lex.
    pub fn leading(&self) -> Option<(&Mono, &F)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.0.get(var).copied().unwrap_or(0) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// True when the polynomial does not involve the named variable.
    pub fn is_free_of(&self, name: &str) -> bool {
        match self.var_index(name) {
            None => true,
            Some(i) => self.degree_in(i) == 0,
        }
    }

    /// Lift a detached constant into a variable context.
    fn in_context(&self, vars: &Vars) -> Self {
        if &self.vars == vars {
            return self.clone();
        }
        assert!(
            self.vars.is_empty(),
            "mixed variable contexts: {:?} vs {:?}",
            self.vars,
            vars
        );
        let mut out = MPoly::zero_in(vars.clone());
        for (_, c) in &self.terms {
            out.add_term(Mono(vec![0; vars.len()]), c.clone());
        }
        out
    }

    pub fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.vars == b.vars {
            (a.clone(), b.clone())
        } else if a.vars.is_empty() {
            (a.in_context(&b.vars), b.clone())
        } else {
            (a.clone(), b.in_context(&a.vars))
        }
    }

    /// Coefficients with respect to one variable, little-endian; each
    /// coefficient keeps the full context with exponent 0 at `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Self> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero_in(self.vars.clone()); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut e = m.0.clone();
            e[var] = 0;
            out[k].add_term(Mono(e), c.clone());
        }
        out
    }

    /// Rebuild from little-endian coefficients in `var`.
    pub fn from_coeffs_in(vars: Vars, var: usize, coeffs: &[Self]) -> Self {
        let mut out = MPoly::zero_in(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut e = m.0.clone();
                e[var] += k as u16;
                out.add_term(Mono(e), v.clone());
            }
        }
        out
    }

    /// Evaluate by mapping coefficients into any ring and substituting values
    /// for the variables.
    pub fn eval_map<T: Ring>(&self, vals: &[T], embed: impl Fn(&F) -> T) -> T {
        assert_eq!(vals.len(), self.vars.len());
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t * vals[i].pow_u(e as u32);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Evaluate at scalar values.
    pub fn eval(&self, vals: &[F]) -> F {
        self.eval_map(vals, |c| c.clone())
    }

    pub fn map_coeffs<T: Ring>(&self, vars: Vars, f: impl Fn(&F) -> T) -> MPoly<T> {
        let mut out = MPoly::zero_in(vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl<F: Field> MPoly<F> {
    /// Quotient q with self = q*g, or NotDivisible.
    pub fn exact_divide(&self, g: &Self) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::InvalidArgument("division by the zero polynomial".into()));
        }
        let (mut rem, g) = MPoly::unify(self, g);
        let mut quot = MPoly::zero_in(g.vars.clone());
        let (gm, gc) = {
            let (m, c) = g.leading().unwrap();
            (m.clone(), c.clone())
        };
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.checked_div(&gm).ok_or(Error::NotDivisible)?;
            let c = rc.clone() / gc.clone();
            let mut t = MPoly::zero_in(g.vars.clone());
            t.add_term(m, c);
            rem = rem - t.clone() * g.clone();
            quot = quot + t;
        }
        Ok(quot)
    }
}

impl MPoly<Rat> {
    /// (content, primitive part): primitive has coprime integer coefficients
    /// and a positive leading coefficient; `self = content * primitive`.
    pub fn content_and_primitive(&self) -> (Rat, MPoly<Rat>) {
        if self.is_zero() {
            return (Rat::one(), self.clone());
        }
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        let mut content = Rat::new(g, l);
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        let inv = content.clone().inv();
        let prim = self.map_coeffs(self.vars.clone(), |c| c * &inv);
        (content, prim)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let n = self.vars.len();
        let mut min = vec![u16::MAX; n];
        for (m, _) in &self.terms {
            for i in 0..n {
                min[i] = min[i].min(m.0[i]);
            }
        }
        if self.terms.is_empty() {
            min = vec![0; n];
        }
        Mono(min)
    }

    pub fn divide_by_monomial(&self, m: &Mono) -> MPoly<Rat> {
        let mut out = MPoly::zero_in(self.vars.clone());
        for (mm, c) in &self.terms {
            out.add_term(mm.checked_div(m).expect("monomial divides"), c.clone());
        }
        out
    }
}

impl<F: Ring> PartialEq for MPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        if self.vars.is_empty() || other.vars.is_empty() {
            let (a, b) = MPoly::unify(self, other);
            return a.terms == b.terms;
        }
        false
    }
}

impl<F: Ring> Add for MPoly<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut a, b) = MPoly::unify(&self, &rhs);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }
}

impl<F: Ring> Sub for MPoly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Ring> Neg for MPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        MPoly {
            vars: self.vars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<F: Ring> Mul for MPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = MPoly::unify(&self, &rhs);
        let mut out = MPoly::zero_in(a.vars.clone());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<F: Ring> num_traits::Zero for MPoly<F> {
    fn zero() -> Self {
        MPoly { vars: Arc::new(Vec::new()), terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Ring> num_traits::One for MPoly<F> {
    fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono(Vec::new()), F::one());
        MPoly { vars: Arc::new(Vec::new()), terms }
    }
}

impl<F: Ring> Ring for MPoly<F> {
    fn scale_rat(&self, by: &Rat) -> Self {
        if by.is_zero() {
            return MPoly::zero_in(self.vars.clone());
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale_rat(by))).collect(),
        }
    }
}

impl<F: Field> ExactDiv for MPoly<F> {
    fn exact_div(&self, den: &Self) -> Option<Self> {
        self.exact_divide(den).ok()
    }
}

impl<F: Ring> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = &self.vars[i];
                    if e == 1 { name.clone() } else { format!("{name}^{e}") }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Ring> fmt::Debug for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Serialized shape: {"vars": [...], "terms": [{"e": [...], "c": "p/q"}]}.
#[derive(Serialize, Deserialize)]
struct MPolyDoc {
    vars: Vec<String>,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    e: Vec<u16>,
    c: Rat,
}

impl Serialize for MPoly<Rat> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let doc = MPolyDoc {
            vars: self.vars.as_ref().clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermDoc { e: m.0.clone(), c: c.clone() })
                .collect(),
        };
        doc.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly<Rat> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = MPolyDoc::deserialize(d)?;
        let vars: Vars = Arc::new(doc.vars);
        let mut p = MPoly::zero_in(vars.clone());
        for t in doc.terms {
            if t.e.len() != vars.len() {
                return Err(serde::de::Error::custom("exponent vector length mismatch"));
            }
            p.add_term(Mono(t.e), t.c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn uv() -> Vars {
        vars(&["u", "v"])
    }

    fn upoly(terms: &[(u16, u16, i64)]) -> MPoly<Rat> {
        MPoly::from_terms(
            uv(),
            terms.iter().map(|&(a, b, c)| (vec![a, b], Rat::from_int(c))),
        )
    }

    #[test]
    fn arithmetic_basics() {
        let u = MPoly::<Rat>::var(uv(), 0);
        let v = MPoly::<Rat>::var(uv(), 1);
        let p = u.clone() + v.clone();
        let q = p.clone() * p.clone();
        assert_eq!(q, upoly(&[(2, 0, 1), (1, 1, 2), (0, 2, 1)]));
        assert!((q.clone() - q).is_zero());
        assert_eq!(u.pow_u(3).degree_in(0), 3);
        assert_eq!((u.clone() * v.clone()).total_degree(), 2);
    }

    #[test]
    fn detached_constants_adopt_context() {
        let u = MPoly::<Rat>::var(uv(), 0);
        let one = MPoly::<Rat>::one();
        let p = u.clone() + one.clone();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.vars().as_ref(), uv().as_ref());
        assert_eq!(one.clone() * u.clone(), u);
        assert_eq!(MPoly::<Rat>::zero() + u.clone(), u);
    }

    #[test]
    fn graded_lex_leading_term() {
        // u^2 > uv > v^2 > u > 1 under graded lex
        let p = upoly(&[(0, 0, 1), (1, 0, 2), (0, 2, 3), (1, 1, 4), (2, 0, 5)]);
        let (m, c) = p.leading().unwrap();
        assert_eq!(m.0, vec![2, 0]);
        assert_eq!(*c, Rat::from_int(5));
    }

    #[test]
    fn exact_divide_examples() {
        // (u^2 - 1)/(u - 1) = u + 1
        let f = upoly(&[(2, 0, 1), (0, 0, -1)]);
        let g = upoly(&[(1, 0, 1), (0, 0, -1)]);
        assert_eq!(f.exact_divide(&g).unwrap(), upoly(&[(1, 0, 1), (0, 0, 1)]));
        // f/f = 1
        let h = upoly(&[(2, 1, 3), (1, 0, -7), (0, 0, 2)]);
        assert_eq!(h.exact_divide(&h).unwrap(), MPoly::constant(uv(), Rat::one()));
        // not divisible
        assert!(matches!(
            upoly(&[(1, 0, 1), (0, 0, 1)]).exact_divide(&upoly(&[(0, 1, 1)])),
            Err(Error::NotDivisible)
        ));
    }

    #[test]
    fn eval_and_coeff_extraction() {
        let p = upoly(&[(2, 1, 3), (0, 1, -1), (0, 0, 4)]);
        let val = p.eval(&[Rat::from_int(2), Rat::from_int(5)]);
        assert_eq!(val, Rat::from_int(3 * 4 * 5 - 5 + 4));
        let cs = p.coeffs_in(1);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0], upoly(&[(0, 0, 4)]));
        assert_eq!(cs[1], upoly(&[(2, 0, 3), (0, 0, -1)]));
        let back = MPoly::from_coeffs_in(uv(), 1, &cs);
        assert_eq!(back, p);
    }

    #[test]
    fn content_and_primitive_parts() {
        let p = upoly(&[(2, 0, -6), (0, 0, -10)]).scale_rat(&"1/4".parse().unwrap());
        let (content, prim) = p.content_and_primitive();
        assert_eq!(content, "-1/2".parse().unwrap());
        assert_eq!(prim, upoly(&[(2, 0, 3), (0, 0, 5)]));
        assert_eq!(prim.scale_rat(&content), p);

        let q = upoly(&[(3, 1, 2), (2, 2, 4)]);
        assert_eq!(q.monomial_content().0, vec![2, 1]);
        assert_eq!(
            q.divide_by_monomial(&q.monomial_content()),
            upoly(&[(1, 0, 2), (0, 1, 4)])
        );
    }

    #[test]
    fn serde_round_trip() {
        let p = upoly(&[(2, 1, 3), (0, 1, -1), (0, 0, 4)]).scale_rat(&"1/3".parse().unwrap());
        let s = serde_json::to_string(&p).unwrap();
        let q: MPoly<Rat> = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }

    proptest! {
        #[test]
        fn divide_product_recovers_factor(
            a in proptest::collection::vec((0u16..3, 0u16..3, -4i64..5), 1..5),
            b in proptest::collection::vec((0u16..3, 0u16..3, -4i64..5), 1..5),
        ) {
            let f = upoly(&a);
            let g = upoly(&b);
            prop_assume!(!g.is_zero());
            let q = (f.clone() * g.clone()).exact_divide(&g).unwrap();
            prop_assert_eq!(q, f);
        }
    }
}
