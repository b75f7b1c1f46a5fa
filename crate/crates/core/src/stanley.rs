//! Stanley character polynomials `F_k(p; q)` of multi-rectangular shapes.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{fixed_point, Grading, Monomial, MultiPoly, Positivity, TruncSeries, Vars};
use crate::characters::normalized_character;
use crate::error::{Error, Result};
use crate::kerov::{c_expansion_with, c_monomial, cumulants_from_phi, kerov_polynomial_with};
use crate::partition::MultiRect;
use crate::Limits;

/// Indeterminates `p1, q1, p2, q2, .., pm, qm`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShapeRing {
    m: usize,
    vars: Vars,
}

impl ShapeRing {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("a shape needs at least one rectangle".into()));
        }
        let names = (1..=m).flat_map(|i| [format!("p{i}"), format!("q{i}")]);
        Ok(ShapeRing { m, vars: Vars::new(names) })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// `p_{i+1}` (zero-based `i`).
    pub fn p(&self, i: usize) -> MultiPoly {
        MultiPoly::var(&self.vars, 2 * i)
    }

    /// `q_{i+1}` (zero-based `i`).
    pub fn q(&self, i: usize) -> MultiPoly {
        MultiPoly::var(&self.vars, 2 * i + 1)
    }

    /// `p_1 + .. + p_i`.
    pub fn r(&self, i: usize) -> MultiPoly {
        (0..i).fold(MultiPoly::zero(&self.vars), |acc, j| &acc + &self.p(j))
    }

    /// `p_{i+1} + .. + p_m` (zero-based `i`).
    pub fn s(&self, i: usize) -> MultiPoly {
        (i..self.m).fold(MultiPoly::zero(&self.vars), |acc, j| &acc + &self.p(j))
    }

    pub fn q_indices(&self) -> Vec<usize> {
        (0..self.m).map(|i| 2 * i + 1).collect()
    }

    /// Printing names: `a, b, p, q` for two rectangles, the indexed names otherwise.
    pub fn display_names(&self) -> Vec<String> {
        if self.m == 2 {
            ["a", "b", "p", "q"].iter().map(|s| s.to_string()).collect()
        } else {
            self.vars.names().to_vec()
        }
    }

    /// Total degree descending, then lexicographic in `p1, q1, p2, ..`.
    pub fn to_text(&self, f: &MultiPoly) -> String {
        let order: Vec<usize> = (0..2 * self.m).collect();
        f.to_text_with(&self.display_names(), &order, &Grading::Total)
    }

    pub fn evaluate_at(&self, f: &MultiPoly, shape: &MultiRect) -> Result<BigRational> {
        if shape.blocks() != self.m {
            return Err(Error::InvalidShape(format!("shape has {} blocks, ring has {}", shape.blocks(), self.m)));
        }
        let point: Vec<BigRational> = (0..self.m)
            .flat_map(|i| [shape.p()[i], shape.q()[i]])
            .map(|v| BigRational::from_integer(v.into()))
            .collect();
        f.evaluate(&point)
    }
}

fn check_m(m: usize, limits: &Limits) -> Result<ShapeRing> {
    if m > limits.m_max {
        return Err(Error::Budget(format!("m = {m} exceeds the limit {}", limits.m_max)));
    }
    ShapeRing::new(m)
}

/// `phi(z) = (1 + r_m z) prod (1 - (q_i - r_{i-1}) z) / prod (1 - (q_i - r_i) z)`.
pub fn phi_series(ring: &ShapeRing, order: usize) -> TruncSeries {
    let v = &ring.vars;
    let mut phi = TruncSeries::linear(&ring.r(ring.m), order);
    for i in 0..ring.m {
        let x = &ring.q(i) - &ring.r(i);
        let y = &ring.q(i) - &ring.r(i + 1);
        phi = phi.mul(&TruncSeries::linear(&-&x, order)).expect("same indeterminates");
        phi = phi.mul(&TruncSeries::geometric(&y, order)).expect("same indeterminates");
    }
    debug_assert!(phi.coeff(0) == &MultiPoly::one(v));
    phi
}

/// `H(1/z) = z / phi(z)`.
pub fn h_series(ring: &ShapeRing, order: usize) -> Result<TruncSeries> {
    Ok(phi_series(ring, order).reciprocal()?.mul_z().truncate(order))
}

fn cumulant_cache() -> &'static Mutex<HashMap<usize, Arc<Vec<MultiPoly>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<MultiPoly>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `R_0 .. R_n` as polynomials in the `p`'s and `q`'s.
pub fn symbolic_cumulants(ring: &ShapeRing, n: usize) -> Result<Arc<Vec<MultiPoly>>> {
    if let Some(hit) = cumulant_cache().lock().expect("cumulant cache poisoned").get(&ring.m) {
        if hit.len() > n {
            return Ok(hit.clone());
        }
    }
    let values = cumulants_from_phi(&phi_series(ring, n), n)?;
    for (i, r) in values.iter().enumerate() {
        if !r.is_homogeneous(&Grading::Total) || r.total_degree().is_some_and(|d| d as usize != i) {
            return Err(Error::Consistency(format!("R_{i} is not homogeneous of degree {i}")));
        }
    }
    let values = Arc::new(values);
    cumulant_cache().lock().expect("cumulant cache poisoned").insert(ring.m, values.clone());
    Ok(values)
}

/// `R_k(p; q) = -1/(k-1) [y^k] phi(y)^(k-1)`.
pub fn extract_cumulant(ring: &ShapeRing, k: usize) -> Result<MultiPoly> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("R_{k}: index must be at least 2")));
    }
    Ok(symbolic_cumulants(ring, k)?[k].clone())
}

fn stanley_cache() -> &'static Mutex<HashMap<(usize, usize), MultiPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), MultiPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `F_k(p; q)`: `Sigma_k` with each `R_i` replaced by `R_i(p; q)`.
pub fn stanley_polynomial(k: usize, m: usize) -> Result<MultiPoly> {
    stanley_polynomial_with(k, m, &Limits::default())
}

pub fn stanley_polynomial_with(k: usize, m: usize, limits: &Limits) -> Result<MultiPoly> {
    let ring = check_m(m, limits)?;
    if let Some(hit) = stanley_cache().lock().expect("stanley cache poisoned").get(&(k, m)) {
        return Ok(hit.clone());
    }
    let sigma = kerov_polynomial_with(k, limits)?;
    let cumulants = symbolic_cumulants(&ring, k + 1)?;
    let bindings: HashMap<String, MultiPoly> =
        (2..=k + 1).map(|i| (format!("R{i}"), cumulants[i].clone())).collect();
    let f = sigma.body.substitute(&ring.vars, &bindings)?;
    for d in f.grade_split(&Grading::Total).keys() {
        if *d as usize > k + 1 || (*d as usize) % 2 != (k + 1) % 2 {
            return Err(Error::Consistency(format!("F_{k} has a term of degree {d}")));
        }
    }
    stanley_cache().lock().expect("stanley cache poisoned").insert((k, m), f.clone());
    Ok(f)
}

/// `(-1)^sign f(p; -q)`.
pub fn negate_q(ring: &ShapeRing, f: &MultiPoly, sign: usize) -> MultiPoly {
    let g = f.negate_vars(&ring.q_indices());
    if sign % 2 == 1 {
        -&g
    } else {
        g
    }
}

/// `G(z) = 1 + sum G_{i-1} z^i`, from `G = z / A^<-1>` with
/// `A(z) = z prod (1 - (q_i + s_{i+1}) z) / prod (1 - (q_i + s_i) z)`.
///
/// Writing `A = z / phi~` puts `G = 1 / phi~(w)` with `w = z phi~(w)`, the
/// same shape of equation as for the free cumulants.
pub fn g_series_direct(ring: &ShapeRing, order: usize) -> Result<TruncSeries> {
    let mut phi = TruncSeries::one(&ring.vars, order);
    for i in 0..ring.m {
        let top = &ring.q(i) + &ring.s(i);
        let bottom = &ring.q(i) + &ring.s(i + 1);
        phi = phi.mul(&TruncSeries::linear(&-&top, order))?;
        phi = phi.mul(&TruncSeries::geometric(&bottom, order))?;
    }
    TruncSeries::new(&ring.vars, cumulants_from_phi(&phi, order)?)
}

/// `G_k`, the degree `k+1` part of `F_k`, read off the `G`-series.
pub fn g_top(ring: &ShapeRing, k: usize) -> Result<MultiPoly> {
    Ok(g_series_direct(ring, k + 1)?.coeff(k + 1).clone())
}

/// Checks `R(z) = G(z) - (p_1 + .. + p_m) z` to the given order; on failure
/// reports the first index where they differ.
pub fn verify_g_equals_r(ring: &ShapeRing, order: usize) -> Result<std::result::Result<(), usize>> {
    let g = g_series_direct(ring, order)?;
    let r = symbolic_cumulants(ring, order)?;
    for i in 0..=order {
        let mut expected = g.coeff(i).clone();
        if i == 1 {
            expected = &expected - &ring.r(ring.m);
        }
        if expected != r[i] {
            return Ok(Err(i));
        }
    }
    Ok(Ok(()))
}

/// `prod_i (1 + p_i q_i z^2 / ((1 - r_{i-1} z)(1 - (q_i + r_i) z)))`.
pub fn phi_negated_product(ring: &ShapeRing, order: usize) -> Result<TruncSeries> {
    let v = &ring.vars;
    let mut out = TruncSeries::one(v, order);
    for i in 0..ring.m {
        let pq = &ring.p(i) * &ring.q(i);
        let mut factor = TruncSeries::geometric(&ring.r(i), order)
            .mul(&TruncSeries::geometric(&(&ring.q(i) + &ring.r(i + 1)), order))?
            .scale_poly(&pq)?
            .mul_z()
            .mul_z()
            .truncate(order);
        factor = factor.add(&TruncSeries::one(v, order))?;
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// `phi_{p;-q}(-z)` obtained from [`phi_series`] by substitution.
pub fn phi_negated_by_substitution(ring: &ShapeRing, order: usize) -> Result<TruncSeries> {
    let qs = ring.q_indices();
    phi_series(ring, order)
        .map_coeffs(&ring.vars, |c| c.negate_vars(&qs))
        .map(|s| s.rescale_z(&-BigRational::one()))
}

/// `-(k(k+1)/24) [y^(k-3)] phi''(y) phi(y)^(k-1)`, the degree `k-1` part of `F_k`.
pub fn degree_km1_terms(ring: &ShapeRing, k: usize) -> Result<MultiPoly> {
    if k < 3 {
        return Err(Error::InvalidArgument("the degree k-1 formula needs k >= 3".into()));
    }
    let phi = phi_series(ring, k);
    let second = phi.derivative().derivative();
    let prod = second.mul(&phi.pow((k - 1) as u32))?;
    let c = BigRational::new(BigInt::from(-((k * (k + 1)) as i64)), BigInt::from(24));
    Ok(prod.coeff(k - 3).scale(&c))
}

/// `C(z) = phi(w) - w phi'(w)` with `w = z phi(w)`.
pub fn c_series_of_shape(ring: &ShapeRing, order: usize) -> Result<TruncSeries> {
    let phi = phi_series(ring, order);
    let w = fixed_point(&phi, order)?;
    let a = phi.compose(&w)?;
    // w phi'(w) = z phi(w) phi'(w)
    let b = a.mul(&phi.derivative().compose(&w.truncate(order - 1))?)?.mul_z();
    a.sub(&b)
}

/// Second route: `[z^j] C = -1/j [y^(j-2)] phi'' phi^j` for `j >= 2`.
pub fn c_series_by_lagrange(ring: &ShapeRing, order: usize) -> Result<TruncSeries> {
    let v = &ring.vars;
    let phi = phi_series(ring, order);
    let second = phi.derivative().derivative();
    let mut coeffs = vec![MultiPoly::one(v)];
    if order >= 1 {
        coeffs.push(MultiPoly::zero(v));
    }
    let mut power = phi.pow(2);
    for j in 2..=order {
        let prod = second.mul(&power)?;
        coeffs.push(prod.coeff(j - 2).scale(&BigRational::new(BigInt::from(-1), BigInt::from(j))));
        power = power.mul(&phi)?;
    }
    TruncSeries::new(v, coeffs)
}

/// Third route: `C_j` from [`c_monomial`] with `R_i -> R_i(p; q)`.
pub fn c_series_by_substitution(ring: &ShapeRing, order: usize) -> Result<TruncSeries> {
    let top = order.max(2);
    let cumulants = symbolic_cumulants(ring, top)?;
    let bindings: HashMap<String, MultiPoly> = (2..=top).map(|i| (format!("R{i}"), cumulants[i].clone())).collect();
    let coeffs = (0..=order)
        .map(|j| c_monomial(j, top)?.substitute(&ring.vars, &bindings))
        .collect::<Result<Vec<_>>>()?;
    TruncSeries::new(&ring.vars, coeffs)
}

/// Which reading of the Elizalde double sum to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ElizaldeVariant {
    /// Monomial `p^i q^i` and lower index `i_i` read as `i_1`, as displayed.
    AsPrinted,
    /// Monomial `p^i q^j`.
    Corrected,
}

/// `binomial(n, k)` with `n` any integer: `n (n-1) .. (n-k+1) / k!`, zero for `k < 0`.
fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let num = (0..k).fold(BigInt::one(), |acc, i| acc * (n - i));
    num / crate::partition::factorial(k as usize)
}

/// `((n, k)) = binomial(n + k - 1, k)`.
fn multichoose(n: i64, k: i64) -> BigInt {
    binom(n + k - 1, k)
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The Elizalde sum for the top-degree terms:
/// `1/k sum_{|i| + |j| = k+1} binom(k, i_1) ((i_1, j_1)) prod_{s >= 2} ( sum_r
/// binom(k, r) ((r, j_s - r)) binom(k - r - i_1 - .. - i_{s-1} - j_1 - .. - j_{s-1}, i_s - r) ) monomial`.
pub fn elizalde_formula(ring: &ShapeRing, k: usize, variant: ElizaldeVariant) -> Result<MultiPoly> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let m = ring.m;
    let ki = k as i64;
    let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
    for ij in compositions(k + 1, 2 * m) {
        let (i, j) = ij.split_at(m);
        let (i, j): (Vec<i64>, Vec<i64>) = (i.iter().map(|&x| x as i64).collect(), j.iter().map(|&x| x as i64).collect());
        let mut coeff = binom(ki, i[0]) * multichoose(i[0], j[0]);
        for s in 1..m {
            let used: i64 = i[..s].iter().sum::<i64>() + j[..s].iter().sum::<i64>();
            let inner: BigInt = (0..=i[s].min(j[s]))
                .map(|r| binom(ki, r) * multichoose(r, j[s] - r) * binom(ki - r - used, i[s] - r))
                .sum();
            coeff *= inner;
        }
        if coeff.is_zero() {
            continue;
        }
        let mut exps = vec![0u32; 2 * m];
        for s in 0..m {
            exps[2 * s] = i[s] as u32;
            exps[2 * s + 1] = match variant {
                ElizaldeVariant::AsPrinted => i[s] as u32,
                ElizaldeVariant::Corrected => j[s] as u32,
            };
        }
        *terms.entry(exps).or_insert_with(BigRational::zero) += BigRational::new(coeff, BigInt::from(ki));
    }
    MultiPoly::from_terms(&ring.vars, terms)
}

/// Which top-degree series the Elizalde sum is compared with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ElizaldeTarget {
    /// `(-1)^k G_k(p; q)`, the left side as displayed.
    PlainQ,
    /// `(-1)^k G_k(p; -q)`, the positive series.
    NegatedQ,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ElizaldeRow {
    pub k: usize,
    pub m: usize,
    pub variant: ElizaldeVariant,
    pub target: ElizaldeTarget,
    pub matches: bool,
    /// Monomials whose coefficients differ.
    pub differing_monomials: usize,
}

/// Compares both readings of the Elizalde sum with both sign conventions.
pub fn elizalde_report(k_max: usize, m: usize) -> Result<Vec<ElizaldeRow>> {
    let ring = ShapeRing::new(m)?;
    let g = g_series_direct(&ring, k_max + 1)?;
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let gk = g.coeff(k + 1);
        let targets = [
            (ElizaldeTarget::PlainQ, negate_q(&ring, gk, k).negate_vars(&ring.q_indices())),
            (ElizaldeTarget::NegatedQ, negate_q(&ring, gk, k)),
        ];
        for variant in [ElizaldeVariant::AsPrinted, ElizaldeVariant::Corrected] {
            let e = elizalde_formula(&ring, k, variant)?;
            for (target, t) in &targets {
                let diff = &e - t;
                rows.push(ElizaldeRow {
                    k,
                    m,
                    variant,
                    target: *target,
                    matches: diff.is_zero(),
                    differing_monomials: diff.num_terms(),
                });
            }
        }
    }
    Ok(rows)
}

/// Positivity of one homogeneous piece of `(-1)^k F_k(p; -q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeCheck {
    pub degree: usize,
    pub positivity: Positivity,
}

/// One `C` monomial of `Sigma_k - R_{k+1}` and whether the product
/// argument certifies its contribution to `(-1)^k F_k(p; -q)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CTermCertificate {
    pub weight: usize,
    pub factors: Vec<usize>,
    pub gamma: String,
    /// `gamma > 0` and the number of factors is odd: the contribution is
    /// a positive multiple of a product of the positive series
    /// `(-1)^(j-1) C_j(p; -q)`.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StanleyPositivity {
    pub k: usize,
    pub m: usize,
    /// All of `(-1)^k F_k(p; -q)`.
    pub full: Positivity,
    /// Degrees `k+1`, `k-1`, `k-3` where present.
    pub by_degree: Vec<DegreeCheck>,
    /// `(-1)^(j-1) C_j(p; -q)` is positive for `2 <= j <= k-1`.
    pub c_factors_positive: bool,
    pub c_terms: Vec<CTermCertificate>,
}

impl StanleyPositivity {
    /// Monomials of the `C` expansion not covered by the product argument.
    pub fn uncertified(&self) -> impl Iterator<Item = &CTermCertificate> {
        self.c_terms.iter().filter(|t| !t.certified)
    }
}

/// Positivity of `(-1)^k F_k(p; -q)` for `k = 1..=k_max`, in parallel over `k`.
pub fn positivity_report(k_max: usize, m: usize) -> Result<Vec<StanleyPositivity>> {
    positivity_report_with(k_max, m, &Limits::default())
}

pub fn positivity_report_with(k_max: usize, m: usize, limits: &Limits) -> Result<Vec<StanleyPositivity>> {
    let ring = check_m(m, limits)?;
    if k_max > limits.k_max {
        return Err(Error::Budget(format!("k = {k_max} exceeds the limit {}", limits.k_max)));
    }
    // warm the shared caches in order so the parallel pass only reads them
    symbolic_cumulants(&ring, k_max + 1)?;
    let c_shape = c_series_by_lagrange(&ring, k_max.max(2))?;
    let c_factor_ok: Vec<bool> = (0..=k_max.max(2))
        .map(|j| j < 2 || negate_q(&ring, c_shape.coeff(j), j - 1).is_positive())
        .collect();
    (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let f = negate_q(&ring, &stanley_polynomial_with(k, m, limits)?, k);
            let split = f.grade_split(&Grading::Total);
            let by_degree = [k as i64 + 1, k as i64 - 1, k as i64 - 3]
                .into_iter()
                .filter(|&d| d >= 0)
                .filter_map(|d| {
                    let piece = split.get(&(d as u32))?;
                    Some(DegreeCheck { degree: d as usize, positivity: piece.positivity() })
                })
                .collect();
            let c = c_expansion_with(k, limits)?;
            let grading = c.grading();
            let rest = c.without_top();
            let c_terms = rest
                .terms()
                .rev()
                .map(|(mono, gamma)| {
                    let factors = c_factors(mono);
                    CTermCertificate {
                        weight: grading.degree(mono) as usize,
                        certified: gamma.is_positive() && factors.len() % 2 == 1,
                        factors,
                        gamma: gamma.to_string(),
                    }
                })
                .collect();
            Ok(StanleyPositivity {
                k,
                m,
                full: f.positivity(),
                by_degree,
                c_factors_positive: c_factor_ok[2..k.max(2)].iter().all(|&b| b),
                c_terms,
            })
        })
        .collect()
}

/// `C` indices of a monomial over `R{k+1}, C2, C3, ..`, largest first.
fn c_factors(m: &Monomial) -> Vec<usize> {
    let mut f = Vec::new();
    for (i, &e) in m.exps().iter().enumerate().skip(1).rev() {
        f.extend(std::iter::repeat_n(i + 1, e as usize));
    }
    f
}

/// Power-basis coefficients of the polynomial through `(xs[i], ys[i])`.
fn interpolate_1d(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner-style expansion of the Newton form
    let mut coeffs = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // coeffs <- coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); n];
        for d in 0..n {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += &coeffs[d];
            }
            next[d] -= &coeffs[d] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// Largest `k` for [`oracle_stanley`] and largest `m`.
pub const ORACLE_MAX_K: usize = 6;
pub const ORACLE_MAX_M: usize = 2;

/// `F_k` rebuilt from character values alone, by exact interpolation on a
/// tensor grid in `p_1..p_m`, `d_i = q_i - q_{i+1}` and `q_m`.
///
/// Every axis gets `k + 2` points, enough for total degree `k + 1`; `q_m`
/// starts at `k` so every grid shape has at least `k` boxes.
pub fn oracle_stanley(k: usize, m: usize) -> Result<MultiPoly> {
    if k == 0 || k > ORACLE_MAX_K || m == 0 || m > ORACLE_MAX_M {
        return Err(Error::Budget(format!(
            "interpolation oracle covers 1 <= k <= {ORACLE_MAX_K}, 1 <= m <= {ORACLE_MAX_M}"
        )));
    }
    let ring = ShapeRing::new(m)?;
    let axes = 2 * m;
    let npts = k + 2;
    let grid = |axis: usize| -> Vec<i64> {
        let start = if axis == axes - 1 { k as i64 } else { 1 };
        (0..npts as i64).map(|t| start + t).collect()
    };
    let points: Vec<Vec<i64>> = (0..axes).map(grid).collect();
    let total = npts.pow(axes as u32);
    let index_to_point = |mut idx: usize| -> Vec<i64> {
        let mut coords = vec![0i64; axes];
        for a in (0..axes).rev() {
            coords[a] = points[a][idx % npts];
            idx /= npts;
        }
        coords
    };
    let values = (0..total)
        .into_par_iter()
        .map(|idx| {
            let t = index_to_point(idx);
            let (p, rest) = t.split_at(m);
            let (d, qm) = rest.split_at(m - 1);
            let mut q = vec![qm[0]; m];
            for i in (0..m - 1).rev() {
                q[i] = q[i + 1] + d[i];
            }
            let shape = MultiRect::new(p.iter().map(|&x| x as usize).collect(), q.iter().map(|&x| x as usize).collect())?;
            if shape.size() < k {
                return Err(Error::InvalidShape(format!("grid shape {shape} has fewer than {k} boxes")));
            }
            normalized_character(&shape.expand(), k)
        })
        .collect::<Result<Vec<_>>>()?;
    // interpolate axis by axis; afterwards entry (e_1, .., e_A) is a coefficient
    let mut tensor = values;
    for a in 0..axes {
        let stride = npts.pow((axes - 1 - a) as u32);
        let xs: Vec<BigRational> = points[a].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let mut next = tensor.clone();
        for base in 0..total {
            if !(base / stride).is_multiple_of(npts) {
                continue;
            }
            let ys: Vec<BigRational> = (0..npts).map(|t| tensor[base + t * stride].clone()).collect();
            for (t, c) in interpolate_1d(&xs, &ys).into_iter().enumerate() {
                next[base + t * stride] = c;
            }
        }
        tensor = next;
    }
    let tvars = Vars::new((0..axes).map(|a| format!("t{a}")));
    let mut terms = Vec::new();
    for (idx, c) in tensor.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut exps = vec![0u32; axes];
        let mut rest = idx;
        for a in (0..axes).rev() {
            exps[a] = (rest % npts) as u32;
            rest /= npts;
        }
        terms.push((exps, c));
    }
    let in_t = MultiPoly::from_terms(&tvars, terms)?;
    let mut bindings = HashMap::new();
    for i in 0..m {
        bindings.insert(format!("t{i}"), ring.p(i));
    }
    for i in 0..m - 1 {
        bindings.insert(format!("t{}", m + i), &ring.q(i) - &ring.q(i + 1));
    }
    bindings.insert(format!("t{}", axes - 1), ring.q(m - 1));
    in_t.substitute(&ring.vars, &bindings)
}
