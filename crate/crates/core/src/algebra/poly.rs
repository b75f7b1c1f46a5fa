//! Sparse multivariate polynomials over `BigRational`.
//!
//! A polynomial lives over an ordered, named indeterminate set ([`Vars`]).
//! Terms are kept in a `BTreeMap` keyed by exponent vector under
//! graded-lexicographic order, with zero coefficients never stored.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered list of indeterminate names.
// equality is by content with a pointer fast path, so the derived hash agrees
#[allow(clippy::derived_hash_with_manual_eq)]
#[derive(Clone, Debug, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Vars(names.into_iter().map(Into::into).collect())
    }

    /// The empty set, for plain rational constants.
    pub fn none() -> Self {
        Vars(Arc::from(Vec::<String>::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Exponent vector. Ordered graded-lex: total degree first, then
/// lexicographically with the first indeterminate most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree functional used by [`MultiPoly::grade_split`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grading {
    /// Every indeterminate has degree 1.
    Total,
    /// Indeterminate `i` has degree `weights[i]` (e.g. `R_i` has weight `i`).
    Weighted(Vec<u32>),
}

impl Grading {
    pub fn degree(&self, m: &Monomial) -> u32 {
        match self {
            Grading::Total => m.degree(),
            Grading::Weighted(w) => m.0.iter().zip(w).map(|(e, w)| e * w).sum(),
        }
    }
}

/// Outcome of a coefficient-sign check.
#[derive(Clone, Debug, PartialEq)]
pub struct Positivity {
    pub positive: bool,
    /// First offending `(coefficient, monomial)` in graded-lex order.
    pub witness: Option<(BigRational, Monomial)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: &Vars, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        MultiPoly { vars: vars.clone(), terms }
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, BigRational::from_integer(c.into()))
    }

    /// The indeterminate with index `idx`.
    pub fn var(vars: &Vars, idx: usize) -> Self {
        assert!(idx < vars.len(), "variable index {idx} out of range");
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), BigRational::one());
        MultiPoly { vars: vars.clone(), terms }
    }

    pub fn named(vars: &Vars, name: &str) -> Result<Self> {
        let idx = vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, idx))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut out = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(Error::InvalidArgument(format!(
                    "exponent vector {exps:?} has length {} but there are {} indeterminates",
                    exps.len(),
                    vars.len()
                )));
            }
            accumulate(&mut out, Monomial(exps), c);
        }
        Ok(MultiPoly { vars: vars.clone(), terms: out })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Largest total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: self.vars.names().to_vec(),
                right: other.vars.names().to_vec(),
            })
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(MultiPoly { vars: self.vars.clone(), terms })
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), -c);
        }
        Ok(MultiPoly { vars: self.vars.clone(), terms })
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(&self.vars));
        }
        let integral = self.has_integer_coefficients() && other.has_integer_coefficients();
        let terms = if integral {
            let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len() * 2);
            for (ma, ca) in &self.terms {
                for (mb, cb) in &other.terms {
                    *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca.numer() * cb.numer();
                }
            }
            acc.into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m, BigRational::from_integer(c)))
                .collect()
        } else {
            let mut acc: HashMap<Monomial, BigRational> = HashMap::with_capacity(self.terms.len() * 2);
            for (ma, ca) in &self.terms {
                for (mb, cb) in &other.terms {
                    let prod = ca * cb;
                    match acc.get_mut(&ma.mul(mb)) {
                        Some(c) => *c += prod,
                        None => {
                            acc.insert(ma.mul(mb), prod);
                        }
                    }
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        };
        Ok(MultiPoly { vars: self.vars.clone(), terms })
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn scale_int(&self, c: i64) -> MultiPoly {
        self.scale(&BigRational::from_integer(c.into()))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replaces bound indeterminates by polynomials over `target`; every
    /// unbound indeterminate must also exist (by name) in `target`.
    pub fn substitute(&self, target: &Vars, bindings: &HashMap<String, MultiPoly>) -> Result<MultiPoly> {
        for name in bindings.keys() {
            if self.vars.index_of(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        let mut images = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            let image = match bindings.get(name) {
                Some(p) => {
                    if p.vars != *target {
                        return Err(Error::VariableMismatch {
                            left: target.names().to_vec(),
                            right: p.vars.names().to_vec(),
                        });
                    }
                    p.clone()
                }
                None => MultiPoly::named(target, name)?,
            };
            images.push(image);
        }
        Ok(self.compose_with(target, &images))
    }

    /// Substitutes `images[i]` for indeterminate `i`, caching powers.
    pub(crate) fn compose_with(&self, target: &Vars, images: &[MultiPoly]) -> MultiPoly {
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(target), p.clone()]).collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &images[i];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Convenience wrapper binding names to rationals.
    pub fn substitute_values(&self, values: &[(&str, BigRational)]) -> Result<MultiPoly> {
        let remaining: Vec<String> = self
            .vars
            .names()
            .iter()
            .filter(|n| !values.iter().any(|(v, _)| v == n))
            .cloned()
            .collect();
        let target = Vars::new(remaining);
        let bindings = values
            .iter()
            .map(|(n, v)| (n.to_string(), MultiPoly::constant(&target, v.clone())))
            .collect();
        self.substitute(&target, &bindings)
    }

    /// Evaluates at a full point.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.vars.len() {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates for {} indeterminates",
                point.len(),
                self.vars.len()
            )));
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Re-expresses over `target`, mapping indeterminates by name.
    pub fn embed(&self, target: &Vars) -> Result<MultiPoly> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| Error::UnknownVariable(n.clone())))
            .collect::<Result<_>>()?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] += e;
            }
            terms.insert(Monomial(exps), c.clone());
        }
        Ok(MultiPoly { vars: target.clone(), terms })
    }

    /// Splits into homogeneous pieces keyed by degree.
    pub fn grade_split(&self, grading: &Grading) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(grading.degree(m))
                .or_insert_with(|| MultiPoly::zero(&self.vars))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// The homogeneous piece of degree `d`.
    pub fn component(&self, grading: &Grading, d: u32) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| grading.degree(m) == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    pub fn is_homogeneous(&self, grading: &Grading) -> bool {
        let mut degs = self.terms.keys().map(|m| grading.degree(m));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// True iff every stored coefficient is positive (vacuously true for zero).
    pub fn positivity(&self) -> Positivity {
        let witness = self
            .terms
            .iter()
            .find(|(_, c)| !c.is_positive())
            .map(|(m, c)| (c.clone(), m.clone()));
        Positivity { positive: witness.is_none(), witness }
    }

    pub fn is_positive(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }

    /// Applies `x_i -> sign_i * x_i` for the listed indeterminates.
    pub fn negate_vars(&self, which: &[usize]) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let odd = which.iter().map(|&i| m.0[i]).sum::<u32>() % 2 == 1;
                (m.clone(), if odd { -c } else { c.clone() })
            })
            .collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }

    /// Renders terms sorted by `grading` (descending), ties broken
    /// lexicographically over `order`, which is also the factor order.
    pub fn to_text_with(&self, names: &[String], order: &[usize], grading: &Grading) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let key = |m: &Monomial| -> (u32, Vec<u32>) { (grading.degree(m), order.iter().map(|&i| m.0[i]).collect()) };
        let mut terms: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| key(b.0).cmp(&key(a.0)));
        let mut out = String::new();
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (idx, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let factors: Vec<String> = order
                .iter()
                .filter(|&&i| m.0[i] > 0)
                .map(|&i| match m.0[i] {
                    1 => names[i].clone(),
                    e => format!("{}^{}", names[i], e),
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push(' ');
                }
                out.push_str(&factors.join(" "));
            }
        }
        out
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.names().to_vec(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermJson { exp: m.0.clone(), coef: format!("{}/{}", c.numer(), c.denom()) })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<MultiPoly> {
        let vars = Vars::new(json.vars.iter().cloned());
        let terms = json
            .terms
            .iter()
            .map(|t| Ok((t.exp.clone(), parse_rational(&t.coef)?)))
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(&vars, terms)
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(x) => {
            *x += c;
            if x.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c);
        }
    }
}

/// Parses the text form written by [`MultiPoly::to_text_with`], e.g.
/// `"a^2 b - 5/2 p q + 3"`, over `vars` (names may be aliased via `names`).
pub fn parse_poly_text(text: &str, vars: &Vars, names: &[String]) -> Result<MultiPoly> {
    let mut out = MultiPoly::zero(vars);
    let text = text.trim();
    if text == "0" {
        return Ok(out);
    }
    let mut rest = text;
    let mut sign = BigRational::one();
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r.trim_start();
    }
    loop {
        let cut = [" + ", " - "].iter().filter_map(|sep| rest.find(sep)).min();
        let (term, next) = match cut {
            Some(i) => (&rest[..i], Some(&rest[i..])),
            None => (rest, None),
        };
        let mut coeff = sign.clone();
        let mut exps = vec![0u32; vars.len()];
        for (pos, token) in term.split_whitespace().enumerate() {
            if pos == 0 && token.starts_with(|c: char| c.is_ascii_digit()) {
                coeff *= parse_rational(token)?;
                continue;
            }
            let (name, e) = match token.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|err| Error::Parse(format!("exponent in `{token}`: {err}")))?),
                None => (token, 1),
            };
            let idx = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            exps[idx] += e;
        }
        accumulate(&mut out.terms, Monomial(exps), coeff);
        match next {
            None => return Ok(out),
            Some(n) => {
                sign = if n.starts_with(" -") { -BigRational::one() } else { BigRational::one() };
                rest = &n[3..];
            }
        }
    }
}

/// Parses `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("`{t}`: {e}")));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Polynomial wire format: `{"vars": [...], "terms": [{"exp": [...], "coef": "n/d"}]}`,
/// terms in descending graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: String,
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("polynomial addition over different indeterminates")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("polynomial subtraction over different indeterminates")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomial product over different indeterminates")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        MultiPoly { vars: self.vars.clone(), terms }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<usize> = (0..self.vars.len()).collect();
        f.write_str(&self.to_text_with(self.vars.names(), &order, &Grading::Total))
    }
}
