//! Free cumulants of diagrams and Kerov polynomials in the `R` and `C` bases.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::linalg::EchelonSystem;
use crate::algebra::{Grading, Monomial, MultiPoly, PolyJson, Positivity, TruncSeries, Vars};
use crate::characters::normalized_character;
use crate::error::{Error, Result};
use crate::partition::{InterlacingCoords, MultiRect, Partition};
use crate::Limits;

/// Anything with an interlacing profile.
pub trait Diagram {
    fn interlacing(&self) -> InterlacingCoords;
    fn size(&self) -> usize;
}

impl Diagram for Partition {
    fn interlacing(&self) -> InterlacingCoords {
        Partition::interlacing(self)
    }
    fn size(&self) -> usize {
        Partition::size(self)
    }
}

impl Diagram for MultiRect {
    fn interlacing(&self) -> InterlacingCoords {
        MultiRect::interlacing(self)
    }
    fn size(&self) -> usize {
        MultiRect::size(self)
    }
}

/// `phi(z) = prod (1 - x_i z) / prod (1 - y_i z)` for minima `x` and maxima `y`;
/// this is `z / H(1/z)`.
pub fn phi_of_coords(coords: &InterlacingCoords, order: usize) -> TruncSeries {
    let vars = Vars::none();
    let c = |v: i64| MultiPoly::from_int(&vars, v);
    let mut phi = TruncSeries::one(&vars, order);
    for &x in &coords.minima {
        phi = phi.mul(&TruncSeries::linear(&c(-x), order)).expect("same indeterminates");
    }
    for &y in &coords.maxima {
        phi = phi.mul(&TruncSeries::geometric(&c(y), order)).expect("same indeterminates");
    }
    phi
}

/// `R_0 .. R_n` from `phi`, where `R(z) = 1 / phi(w)` and `w = z phi(w)`.
///
/// Lagrange inversion gives `R_k = -1/(k-1) [y^k] phi^(k-1)` for `k >= 2`
/// and `R_1 = -[y] phi`; powers of `phi` are built incrementally.
pub fn cumulants_from_phi(phi: &TruncSeries, n: usize) -> Result<Vec<MultiPoly>> {
    if phi.order() < n {
        return Err(Error::Series(format!("phi known to order {} but R_{n} requested", phi.order())));
    }
    if phi.coeff(0).as_constant().is_none_or(|c| !c.is_one()) {
        return Err(Error::Series("phi must start with 1".into()));
    }
    let vars = phi.vars();
    let mut out = vec![MultiPoly::one(vars)];
    if n >= 1 {
        out.push(-phi.coeff(1));
    }
    let phi = phi.truncate(n);
    let mut power = phi.clone();
    for k in 2..=n {
        let c = BigRational::new(BigInt::from(-1), BigInt::from(k - 1));
        out.push(power.coeff(k).scale(&c));
        if k < n {
            power = power.mul(&phi)?;
        }
    }
    Ok(out)
}

/// Free cumulants `R_0 = 1, R_1 = 0, R_2, .., R_n` of an integer diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeCumulants {
    values: Vec<BigInt>,
}

impl FreeCumulants {
    /// `R_i`; zero beyond the computed range is not assumed, so this panics there.
    pub fn get(&self, i: usize) -> &BigInt {
        assert!(i < self.values.len(), "R_{i} not computed (have up to R_{})", self.values.len() - 1);
        &self.values[i]
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// `R_2 .. R_n`.
    pub fn from_two(&self) -> &[BigInt] {
        &self.values[2.min(self.values.len())..]
    }
}

pub fn free_cumulants<D: Diagram + ?Sized>(diagram: &D, n: usize) -> Result<FreeCumulants> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("free cumulants are indexed from 2, asked for up to {n}")));
    }
    let phi = phi_of_coords(&diagram.interlacing(), n);
    let values = cumulants_from_phi(&phi, n)?
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let v = r.as_constant().expect("numeric series");
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::Consistency(format!("R_{i} = {v} is not an integer")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if !values[1].is_zero() {
        return Err(Error::Consistency(format!("R_1 = {} but diagrams are centred", values[1])));
    }
    Ok(FreeCumulants { values })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Basis {
    R,
    C,
}

/// `Sigma_k` written in the `R` basis (over `R2..R{k+1}`) or in the `C`
/// basis (over `R{k+1}, C2..C{k-1}`, where it reads `R_{k+1} + (C-polynomial)`).
#[derive(Clone, Debug, PartialEq)]
pub struct KerovExpansion {
    pub k: usize,
    pub basis: Basis,
    pub body: MultiPoly,
}

#[derive(Serialize)]
struct ExpansionJson<'a> {
    k: usize,
    basis: Basis,
    polynomial: &'a PolyJson,
}

impl KerovExpansion {
    /// Index weights of the indeterminates.
    pub fn grading(&self) -> Grading {
        Grading::Weighted(self.body.vars().names().iter().map(|n| weight_of_name(n)).collect())
    }

    /// Display text: heaviest terms first, highest index first inside a term.
    pub fn to_text(&self) -> String {
        let n = self.body.vars().len();
        let order: Vec<usize> = match self.basis {
            Basis::R => (0..n).rev().collect(),
            Basis::C => std::iter::once(0).chain((1..n).rev()).collect(),
        };
        self.body.to_text_with(self.body.vars().names(), &order, &self.grading())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let poly = self.body.to_json();
        serde_json::to_value(ExpansionJson { k: self.k, basis: self.basis, polynomial: &poly })
            .expect("serializable")
    }

    /// `Sigma_k - R_{k+1}`.
    pub fn without_top(&self) -> MultiPoly {
        let top = MultiPoly::named(self.body.vars(), &format!("R{}", self.k + 1)).expect("top cumulant present");
        &self.body - &top
    }

    /// Evaluates an `R`-basis expansion at concrete free cumulants.
    pub fn evaluate(&self, cumulants: &FreeCumulants) -> Result<BigRational> {
        if self.basis != Basis::R {
            return Err(Error::InvalidArgument("evaluation needs the R basis".into()));
        }
        if cumulants.max_index() < self.k + 1 {
            return Err(Error::InvalidArgument(format!("need free cumulants up to R_{}", self.k + 1)));
        }
        let point: Vec<BigRational> =
            (2..=self.k + 1).map(|i| BigRational::from_integer(cumulants.get(i).clone())).collect();
        self.body.evaluate(&point)
    }
}

fn weight_of_name(name: &str) -> u32 {
    name[1..].parse().expect("indeterminates are named R<i> or C<i>")
}

/// `R2, .., R{top}`.
pub fn r_vars(top: usize) -> Vars {
    Vars::new((2..=top).map(|i| format!("R{i}")))
}

fn c_basis_vars(k: usize) -> Vars {
    Vars::new(std::iter::once(format!("R{}", k + 1)).chain((2..k).map(|i| format!("C{i}"))))
}

/// Exponent vectors over `R2..R{k+1}` of weight `k+1, k-1, ..`, at least 2.
fn candidate_monomials(k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut w = k + 1;
    while w >= 2 {
        for lambda in Partition::all(w) {
            if lambda.parts().iter().all(|&p| p >= 2) {
                let mut exps = vec![0u32; k];
                for &p in lambda.parts() {
                    exps[p - 2] += 1;
                }
                out.push(exps);
            }
        }
        w -= 2;
    }
    out
}

fn evaluate_row(monomials: &[Vec<u32>], cumulants: &FreeCumulants) -> Vec<BigRational> {
    monomials
        .iter()
        .map(|exps| {
            let v = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(BigInt::one(), |acc, (i, &e)| acc * cumulants.get(i + 2).pow(e));
            BigRational::from_integer(v)
        })
        .collect()
}

fn shape_equation(k: usize, monomials: &[Vec<u32>], shape: &Partition) -> Result<(Vec<BigRational>, BigRational)> {
    let r = free_cumulants(shape, k + 1)?;
    Ok((evaluate_row(monomials, &r), normalized_character(shape, k)?))
}

fn kerov_cache() -> &'static Mutex<HashMap<usize, MultiPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, MultiPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Sigma_k` in the `R` basis, within the default limits.
pub fn kerov_polynomial(k: usize) -> Result<KerovExpansion> {
    kerov_polynomial_with(k, &Limits::default())
}

/// `Sigma_k` solved from character values: candidate monomials are
/// evaluated on all diagrams of size `k, k+1, ..` until the system has full
/// rank, then the answer is checked on five diagrams not used in the solve.
pub fn kerov_polynomial_with(k: usize, limits: &Limits) -> Result<KerovExpansion> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if k > limits.k_max {
        return Err(Error::Budget(format!("k = {k} exceeds the limit {}", limits.k_max)));
    }
    let vars = r_vars(k + 1);
    if let Some(body) = kerov_cache().lock().expect("kerov cache poisoned").get(&k) {
        return Ok(KerovExpansion { k, basis: Basis::R, body: body.clone() });
    }
    let monomials = candidate_monomials(k);
    let mut system = EchelonSystem::new(monomials.len());
    let mut n = k;
    while !system.is_full_rank() {
        if n > limits.n_max {
            return Err(Error::RankDeficient(format!(
                "Sigma_{k}: rank {} of {} after all diagrams up to size {}",
                system.rank(),
                monomials.len(),
                limits.n_max
            )));
        }
        let shapes: Vec<Partition> = Partition::all(n).collect();
        let rows = shapes
            .par_iter()
            .map(|s| shape_equation(k, &monomials, s))
            .collect::<Result<Vec<_>>>()?;
        for (row, rhs) in rows {
            system.push(row, rhs);
            if system.is_full_rank() {
                break;
            }
        }
        n += 1;
    }
    let solution = system.solve()?;
    let terms = monomials.iter().cloned().zip(solution);
    let body = MultiPoly::from_terms(&vars, terms)?;
    if !body.has_integer_coefficients() {
        return Err(Error::Consistency(format!("Sigma_{k} has non-integer coefficients: {body}")));
    }
    let expansion = KerovExpansion { k, basis: Basis::R, body };
    for shape in held_out_shapes(n + 1) {
        let got = expansion.evaluate(&free_cumulants(&shape, k + 1)?)?;
        let want = normalized_character(&shape, k)?;
        if got != want {
            return Err(Error::Consistency(format!("Sigma_{k} gives {got} on {shape}, character is {want}")));
        }
    }
    kerov_cache().lock().expect("kerov cache poisoned").insert(k, expansion.body.clone());
    Ok(expansion)
}

/// Five diagrams of size `n`, spread over the enumeration.
fn held_out_shapes(n: usize) -> Vec<Partition> {
    let all: Vec<Partition> = Partition::all(n).collect();
    let step = (all.len() / 5).max(1);
    all.into_iter().step_by(step).take(5).collect()
}

/// `C_m = [t^m] 1 / (1 - sum_{i=2}^{top} (i-1) R_i t^i)` over `R2..R{top}`.
pub fn c_monomial(m: usize, top: usize) -> Result<MultiPoly> {
    if m > top {
        return Err(Error::InvalidArgument(format!("C_{m} needs R up to index {m}, limit is {top}")));
    }
    Ok(c_series(top, m)?.coeff(m).clone())
}

fn c_series(top: usize, order: usize) -> Result<TruncSeries> {
    let vars = r_vars(top.max(2));
    let mut s = TruncSeries::one(&vars, order);
    let mut coeffs = s.coeffs().to_vec();
    for (i, c) in coeffs.iter_mut().enumerate().skip(2) {
        if i <= top {
            *c = MultiPoly::var(&vars, i - 2).scale_int(-(i as i64 - 1));
        }
    }
    s = TruncSeries::new(&vars, coeffs)?;
    s.reciprocal()
}

/// `R_m` as a polynomial in `C2..C{top}`: `(m-1) R_m = [t^m] (1 - 1/C(t))`.
pub fn r_in_c_basis(top: usize, target: &Vars) -> Result<Vec<MultiPoly>> {
    let mut coeffs = vec![MultiPoly::one(target), MultiPoly::zero(target)];
    for i in 2..=top {
        coeffs.push(MultiPoly::named(target, &format!("C{i}"))?);
    }
    let c = TruncSeries::new(target, coeffs)?;
    let inv = c.reciprocal()?;
    Ok((2..=top)
        .map(|m| (-inv.coeff(m)).scale(&BigRational::new(BigInt::one(), BigInt::from(m - 1))))
        .collect())
}

/// `Sigma_k` rewritten as `R_{k+1}` plus a polynomial in `C2..C{k-1}`.
///
/// The `C_m` are triangular in the `R_m` (`C_m = (m-1) R_m + ` lower
/// weights), so substituting the inverse map eliminates every `R_m`
/// below the top; the result is substituted back as a check.
pub fn c_expansion(k: usize) -> Result<KerovExpansion> {
    c_expansion_with(k, &Limits::default())
}

pub fn c_expansion_with(k: usize, limits: &Limits) -> Result<KerovExpansion> {
    let sigma = kerov_polynomial_with(k, limits)?;
    let target = c_basis_vars(k);
    let r_vars_k = sigma.body.vars().clone();
    let mut bindings: HashMap<String, MultiPoly> = HashMap::new();
    let lower = if k >= 3 { r_in_c_basis(k - 1, &target)? } else { Vec::new() };
    for (i, poly) in lower.into_iter().enumerate() {
        bindings.insert(format!("R{}", i + 2), poly);
    }
    if k >= 2 {
        bindings.insert(format!("R{k}"), MultiPoly::zero(&target));
    }
    bindings.insert(format!("R{}", k + 1), MultiPoly::named(&target, &format!("R{}", k + 1))?);
    // R_k can only occur in weight-k terms, which must be absent
    if !sigma.body.component(&sigma.grading(), k as u32).is_zero() {
        return Err(Error::Consistency(format!("Sigma_{k} has a weight-{k} term")));
    }
    let body = sigma.body.substitute(&target, &bindings)?;
    let expansion = KerovExpansion { k, basis: Basis::C, body };

    // round trip: C_m -> R-polynomial must give back the R-basis body
    let mut back: HashMap<String, MultiPoly> = HashMap::new();
    for m in 2..k {
        back.insert(format!("C{m}"), c_monomial(m, k + 1)?);
    }
    back.insert(format!("R{}", k + 1), MultiPoly::var(&r_vars_k, k - 1));
    let restored = expansion.body.substitute(&r_vars_k, &back)?;
    if restored != sigma.body {
        return Err(Error::Consistency(format!("C-basis rewrite of Sigma_{k} does not substitute back")));
    }
    Ok(expansion)
}

/// `Sigma_{k,2n}`: the terms of weight `k + 1 - 2n`.
pub fn graded_component(e: &KerovExpansion, n: usize) -> Result<MultiPoly> {
    if 2 * n > e.k + 1 {
        return Err(Error::InvalidArgument(format!("Sigma_({},{}) needs 2n <= k+1", e.k, 2 * n)));
    }
    Ok(e.body.component(&e.grading(), (e.k + 1 - 2 * n) as u32))
}

/// `1/4 binomial(k+1, 3) C_{k-1}` as a polynomial over `R2..R{k+1}`.
pub fn sigma_k2_closed_form(k: usize) -> Result<MultiPoly> {
    if k < 3 {
        return Err(Error::InvalidArgument("closed form for the weight k-1 slice needs k >= 3".into()));
    }
    let binom = (k + 1) * k * (k - 1) / 6;
    Ok(c_monomial(k - 1, k + 1)?.scale(&BigRational::new(BigInt::from(binom), BigInt::from(4))))
}

#[derive(Clone, Debug, PartialEq)]
pub struct KerovPositivity {
    pub k: usize,
    /// Signs of `Sigma_k` in the `R` basis.
    pub r_basis: Positivity,
    /// Signs of `Sigma_k - R_{k+1}` in the `C` basis.
    pub c_basis: Positivity,
    /// Every `C_m` used has positive `R` coefficients, which is what makes
    /// `C`-positivity imply `R`-positivity.
    pub c_monomials_r_positive: bool,
    /// The implication itself on this `k`.
    pub implication_holds: bool,
    /// `Sigma_{k,4}` in the `C` basis is positive (vacuous when empty).
    pub weight_k_minus_3_c_positive: bool,
}

pub fn positivity_check(k: usize) -> Result<KerovPositivity> {
    let r = kerov_polynomial(k)?;
    let c = c_expansion(k)?;
    let r_basis = r.body.positivity();
    let c_basis = c.without_top().positivity();
    let c_monomials_r_positive = (2..k.max(2))
        .map(|m| c_monomial(m, k + 1).map(|p| p.is_positive()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    let implication_holds = !c_basis.positive || r_basis.positive;
    let weight_k_minus_3_c_positive = if k + 1 >= 4 { graded_component(&c, 2)?.is_positive() } else { true };
    Ok(KerovPositivity {
        k,
        r_basis,
        c_basis,
        c_monomials_r_positive,
        implication_holds,
        weight_k_minus_3_c_positive,
    })
}

/// One coefficient of a weight slice of the `C` expansion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaTerm {
    /// `C` indices, largest first.
    pub factors: Vec<usize>,
    pub coefficient: String,
}

/// `Sigma_{k,2n}` written in `C` monomials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaSlice {
    pub n: usize,
    pub weight: usize,
    pub terms: Vec<GammaTerm>,
    /// Every monomial has at most `2n - 1` non-trivial factors.
    pub factor_bound_holds: bool,
    pub positive: bool,
}

/// The slices of the `C` expansion of `Sigma_k` for `n >= 1`.
///
/// Coefficients are reported per `C` monomial, i.e. summed over orderings
/// of the index tuple and padding with `C_0 = 1`.
pub fn gamma_report(k: usize) -> Result<Vec<GammaSlice>> {
    let c = c_expansion(k)?;
    let grading = c.grading();
    let mut out = Vec::new();
    let mut n = 1;
    while 2 * n + 2 <= k + 1 {
        let weight = k + 1 - 2 * n;
        let slice = c.body.component(&grading, weight as u32);
        let mut terms: Vec<(Monomial, BigRational)> = slice.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.reverse();
        let factor_lists: Vec<Vec<usize>> = terms
            .iter()
            .map(|(m, _)| {
                let mut f = Vec::new();
                for (i, &e) in m.exps().iter().enumerate().skip(1).rev() {
                    f.extend(std::iter::repeat_n(i + 1, e as usize));
                }
                f
            })
            .collect();
        let factor_bound_holds = factor_lists.iter().all(|f| f.len() < 2 * n);
        out.push(GammaSlice {
            n,
            weight,
            positive: slice.is_positive(),
            factor_bound_holds,
            terms: factor_lists
                .into_iter()
                .zip(terms)
                .map(|(factors, (_, c))| GammaTerm { factors, coefficient: c.to_string() })
                .collect(),
        });
        n += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// Moments of the transition measure, then free cumulants by the
    /// moment-cumulant recursion over non-crossing partitions
    /// (`M(z) = 1 + sum R_j z^j M(z)^j`).
    fn cumulants_via_moments(lambda: &Partition, n: usize) -> Vec<BigRational> {
        let coords = lambda.interlacing();
        // transition measure weights mu_i = prod_j (x_i - y_j) / prod_{j != i} (x_i - x_j)
        let x: Vec<BigRational> = coords.minima.iter().map(|&v| int(v)).collect();
        let y: Vec<BigRational> = coords.maxima.iter().map(|&v| int(v)).collect();
        let weights: Vec<BigRational> = (0..x.len())
            .map(|i| {
                let num = y.iter().fold(int(1), |a, yj| a * (&x[i] - yj));
                let den = (0..x.len()).filter(|&j| j != i).fold(int(1), |a, j| a * (&x[i] - &x[j]));
                num / den
            })
            .collect();
        let moments: Vec<BigRational> = (0..=n)
            .map(|j| x.iter().zip(&weights).map(|(xi, w)| w * xi.pow(j as i32)).fold(int(0), |a, b| a + b))
            .collect();
        // solve M_n = sum_{j=1}^n R_j [z^{n-j}] M(z)^j for R_n
        let mut r = vec![int(0); n + 1];
        for m in 1..=n {
            // [z^{m}] sum_{j<m} R_j z^j M^j
            let mut acc = int(0);
            let mut power = vec![int(1)]; // M^0
            for j in 1..m {
                power = convolve(&power, &moments, m);
                acc += &r[j] * power.get(m - j).cloned().unwrap_or_else(|| int(0));
            }
            r[m] = &moments[m] - acc;
        }
        r
    }

    fn convolve(a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
        let mut out = vec![int(0); n + 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i + j <= n {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    #[test]
    fn cumulant_examples() {
        let r = free_cumulants(&part(&[1]), 6).unwrap();
        assert_eq!(r.get(2), &BigInt::from(1));
        assert_eq!(r.get(3), &BigInt::zero());
        // symmetric Bernoulli on {-1, 1}: kappa_4 = M_4 - 2 M_2^2
        assert_eq!(r.get(4), &BigInt::from(-1));
        assert_eq!(r.get(5), &BigInt::zero());
        for rows in 1..=4usize {
            for cols in 1..=4usize {
                let r = free_cumulants(&MultiRect::rectangle(rows, cols).unwrap(), 3).unwrap();
                let (p, q) = (rows as i64, cols as i64);
                assert_eq!(r.get(2), &BigInt::from(p * q));
                assert_eq!(r.get(3), &BigInt::from(p * q * (q - p)));
            }
        }
        for n in 1..=7 {
            for l in Partition::all(n) {
                let r = free_cumulants(&l, 8).unwrap();
                assert_eq!(r.get(2), &BigInt::from(n));
                let oracle = cumulants_via_moments(&l, 8);
                for i in 1..=8 {
                    assert_eq!(BigRational::from_integer(r.get(i).clone()), oracle[i], "{l} R_{i}");
                }
            }
        }
        assert!(free_cumulants(&part(&[1]), 1).is_err());
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(candidate_monomials(1), vec![vec![1]]);
        // weight 6: R6, R4R2, R3^2, R2^3; weight 4: R4, R2^2; weight 2: R2
        assert_eq!(candidate_monomials(5).len(), 7);
    }

    #[test]
    fn low_kerov_polynomials() {
        let texts: Vec<String> = (1..=6).map(|k| kerov_polynomial(k).unwrap().to_text()).collect();
        assert_eq!(
            texts,
            vec![
                "R2",
                "R3",
                "R4 + R2",
                "R5 + 5 R3",
                "R6 + 15 R4 + 5 R2^2 + 8 R2",
                "R7 + 35 R5 + 35 R3 R2 + 84 R3",
            ]
        );
        assert!(kerov_polynomial(0).is_err());
        assert!(matches!(kerov_polynomial(10), Err(Error::Budget(_))));
    }

    #[test]
    fn c_monomials() {
        let v = r_vars(6);
        let r = |i: usize| MultiPoly::var(&v, i - 2);
        assert_eq!(c_monomial(0, 6).unwrap(), MultiPoly::one(&v));
        assert!(c_monomial(1, 6).unwrap().is_zero());
        assert_eq!(c_monomial(2, 6).unwrap(), r(2));
        assert_eq!(c_monomial(3, 6).unwrap(), r(3).scale_int(2));
        assert_eq!(c_monomial(4, 6).unwrap(), &r(4).scale_int(3) + &r(2).pow(2));
        assert!(c_monomial(7, 6).is_err());
    }

    #[test]
    fn c_monomial_matches_multinomial_sum() {
        // C_m = sum over 2 j_2 + 3 j_3 + .. = m of (sum j)! prod ((i-1) R_i)^{j_i} / j_i!
        let top = 8;
        let v = r_vars(top);
        for m in 2..=top {
            let mut expected = MultiPoly::zero(&v);
            for lambda in Partition::all(m) {
                if lambda.parts().iter().any(|&p| p < 2) {
                    continue;
                }
                let mult = lambda.multiplicities();
                let total: usize = mult.values().sum();
                let mut coeff = BigRational::from_integer(crate::partition::factorial(total));
                let mut exps = vec![0u32; top - 1];
                for (&i, &j) in &mult {
                    coeff *= BigRational::new(BigInt::from(i - 1).pow(j as u32), crate::partition::factorial(j));
                    exps[i - 2] = j as u32;
                }
                expected = &expected + &MultiPoly::from_terms(&v, [(exps, coeff)]).unwrap();
            }
            assert_eq!(c_monomial(m, top).unwrap(), expected, "C_{m}");
        }
    }

    #[test]
    fn c_basis_examples() {
        let c = |k| c_expansion(k).unwrap();
        assert_eq!(c(3).to_text(), "R4 + C2");
        assert_eq!(c(4).to_text(), "R5 + 5/2 C3");
        assert_eq!(c(5).to_text(), "R6 + 5 C4 + 8 C2");
        assert_eq!(c(6).to_text(), "R7 + 35/4 C5 + 42 C3");
        assert_eq!(c(1).to_text(), "R2");
        assert_eq!(c(2).to_text(), "R3");
    }

    #[test]
    fn graded_pieces() {
        for k in 1..=7 {
            let e = kerov_polynomial(k).unwrap();
            let top = graded_component(&e, 0).unwrap();
            assert_eq!(top, MultiPoly::var(e.body.vars(), k - 1));
            let g = e.grading();
            for w in e.body.grade_split(&g).keys() {
                assert_eq!((*w as usize) % 2, (k + 1) % 2);
            }
        }
        let e4 = kerov_polynomial(4).unwrap();
        assert_eq!(graded_component(&e4, 1).unwrap(), sigma_k2_closed_form(4).unwrap());
        let e5 = kerov_polynomial(5).unwrap();
        let v = e5.body.vars().clone();
        assert_eq!(graded_component(&e5, 2).unwrap(), MultiPoly::var(&v, 0).scale_int(8));
        assert!(graded_component(&e5, 4).is_err());
    }

    #[test]
    fn substitution_on_diagrams() {
        let shapes = [part(&[4, 3, 3, 3, 1]), part(&[6, 2, 1]), part(&[3, 3, 3]), part(&[5, 5, 1, 1])];
        for shape in &shapes {
            for k in 1..=7.min(shape.size()) {
                let e = kerov_polynomial(k).unwrap();
                let r = free_cumulants(shape, k + 1).unwrap();
                assert_eq!(e.evaluate(&r).unwrap(), normalized_character(shape, k).unwrap());
            }
        }
    }

    #[test]
    fn positivity_small() {
        for k in 1..=6 {
            let p = positivity_check(k).unwrap();
            assert!(p.r_basis.positive && p.c_basis.positive && p.implication_holds);
            assert!(p.c_monomials_r_positive && p.weight_k_minus_3_c_positive);
        }
    }

    #[test]
    fn gamma_slices() {
        let report = gamma_report(6).unwrap();
        assert_eq!(report.len(), 2);
        assert_eq!(report[0].weight, 5);
        assert_eq!(report[0].terms, vec![GammaTerm { factors: vec![5], coefficient: "35/4".into() }]);
        assert_eq!(report[1].terms, vec![GammaTerm { factors: vec![3], coefficient: "42".into() }]);
        assert!(report.iter().all(|s| s.positive && s.factor_bound_holds));
    }

    #[test]
    fn json_shape() {
        let j = kerov_polynomial(4).unwrap().to_json();
        assert_eq!(j["k"], 4);
        assert_eq!(j["basis"], "R");
        let poly: PolyJson = serde_json::from_value(j["polynomial"].clone()).unwrap();
        assert_eq!(MultiPoly::from_json(&poly).unwrap(), kerov_polynomial(4).unwrap().body);
    }
}
