//! Truncated power series in `z` whose coefficients are [`MultiPoly`] values.
//!
//! A series of order `N` knows the coefficients of `z^0..=z^N`. Binary
//! operations on series of different orders produce a series of the
//! smaller order.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::poly::{MultiPoly, Vars};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries {
    vars: Vars,
    coeffs: Vec<MultiPoly>,
}

/// Work (pairs of non-zero coefficients) above which products fan out over threads.
const PAR_THRESHOLD: usize = 2_000;

impl TruncSeries {
    pub fn new(vars: &Vars, coeffs: Vec<MultiPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Series("a series needs at least the z^0 coefficient".into()));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.vars() != vars) {
            return Err(Error::VariableMismatch {
                left: vars.names().to_vec(),
                right: bad.vars().names().to_vec(),
            });
        }
        Ok(TruncSeries { vars: vars.clone(), coeffs })
    }

    pub fn zero(vars: &Vars, order: usize) -> Self {
        TruncSeries { vars: vars.clone(), coeffs: vec![MultiPoly::zero(vars); order + 1] }
    }

    pub fn one(vars: &Vars, order: usize) -> Self {
        Self::constant(vars, MultiPoly::one(vars), order)
    }

    pub fn constant(vars: &Vars, c: MultiPoly, order: usize) -> Self {
        let mut s = Self::zero(vars, order);
        s.coeffs[0] = c;
        s
    }

    /// Series with rational coefficients over the empty indeterminate set.
    pub fn from_rationals(coeffs: &[BigRational]) -> Result<Self> {
        let vars = Vars::none();
        let coeffs = coeffs.iter().map(|c| MultiPoly::constant(&vars, c.clone())).collect();
        TruncSeries::new(&vars, coeffs)
    }

    /// The series `z`.
    pub fn z(vars: &Vars, order: usize) -> Self {
        let mut s = Self::zero(vars, order);
        if order >= 1 {
            s.coeffs[1] = MultiPoly::one(vars);
        }
        s
    }

    /// `1 + c z`.
    pub fn linear(c: &MultiPoly, order: usize) -> Self {
        let mut s = Self::one(c.vars(), order);
        if order >= 1 {
            s.coeffs[1] = c.clone();
        }
        s
    }

    /// `1 / (1 - c z) = sum c^j z^j`.
    pub fn geometric(c: &MultiPoly, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(MultiPoly::one(c.vars()));
        for j in 1..=order {
            let next = &coeffs[j - 1] * c;
            coeffs.push(next);
        }
        TruncSeries { vars: c.vars().clone(), coeffs }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// `[z^i]`; zero above the order is not meaningful, so this panics there.
    pub fn coeff(&self, i: usize) -> &MultiPoly {
        assert!(i <= self.order(), "coefficient z^{i} beyond truncation order {}", self.order());
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        TruncSeries { vars: self.vars.clone(), coeffs: self.coeffs[..=n].to_vec() }
    }

    fn check(&self, other: &TruncSeries) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch {
                left: self.vars.names().to_vec(),
                right: other.vars.names().to_vec(),
            })
        }
    }

    pub fn add(&self, other: &TruncSeries) -> Result<Self> {
        self.check(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Ok(TruncSeries { vars: self.vars.clone(), coeffs })
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<Self> {
        self.check(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        Ok(TruncSeries { vars: self.vars.clone(), coeffs })
    }

    pub fn neg(&self) -> Self {
        TruncSeries { vars: self.vars.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncSeries { vars: self.vars.clone(), coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect() }
    }

    pub fn scale_poly(&self, c: &MultiPoly) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|x| x.checked_mul(c)).collect::<Result<_>>()?;
        Ok(TruncSeries { vars: self.vars.clone(), coeffs })
    }

    /// Cauchy product. Parallel over output coefficients; each coefficient is
    /// summed in a fixed order so the result does not depend on scheduling.
    pub fn mul(&self, other: &TruncSeries) -> Result<Self> {
        self.check(other)?;
        let n = self.order().min(other.order());
        let coefficient = |i: usize| -> MultiPoly {
            let mut acc = MultiPoly::zero(&self.vars);
            for j in 0..=i {
                let (a, b) = (&self.coeffs[j], &other.coeffs[i - j]);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        };
        let work: usize = self.coeffs.iter().map(MultiPoly::num_terms).sum::<usize>()
            * other.coeffs.iter().map(MultiPoly::num_terms).sum::<usize>();
        let coeffs = if work > PAR_THRESHOLD {
            (0..=n).into_par_iter().map(coefficient).collect()
        } else {
            (0..=n).map(coefficient).collect()
        };
        Ok(TruncSeries { vars: self.vars.clone(), coeffs })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = TruncSeries::one(&self.vars, self.order());
        for _ in 0..e {
            result = result.mul(self).expect("same indeterminates");
        }
        result
    }

    /// Multiplicative inverse; needs a nonzero rational constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::Series("reciprocal needs a nonzero rational constant term".into()))?;
        let inv0 = a0.recip();
        let n = self.order();
        let mut out: Vec<MultiPoly> = Vec::with_capacity(n + 1);
        out.push(MultiPoly::constant(&self.vars, inv0.clone()));
        for i in 1..=n {
            let mut acc = MultiPoly::zero(&self.vars);
            for j in 1..=i {
                if !self.coeffs[j].is_zero() && !out[i - j].is_zero() {
                    acc = &acc + &(&self.coeffs[j] * &out[i - j]);
                }
            }
            out.push(acc.scale(&-inv0.clone()));
        }
        Ok(TruncSeries { vars: self.vars.clone(), coeffs: out })
    }

    /// `d/dz`; the order drops by one.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return TruncSeries::zero(&self.vars, 0);
        }
        let coeffs = (1..=self.order())
            .map(|i| self.coeffs[i].scale(&BigRational::from_integer(i.into())))
            .collect();
        TruncSeries { vars: self.vars.clone(), coeffs }
    }

    /// Multiplication by `z`; the order grows by one.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(MultiPoly::zero(&self.vars));
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries { vars: self.vars.clone(), coeffs }
    }

    /// Division by `z`; needs a zero constant term, the order drops by one.
    pub fn div_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series("division by z needs a zero constant term".into()));
        }
        if self.order() == 0 {
            return Err(Error::Series("division by z of an order-0 series".into()));
        }
        Ok(TruncSeries { vars: self.vars.clone(), coeffs: self.coeffs[1..].to_vec() })
    }

    /// `self(inner(z))`, `inner` without constant term.
    pub fn compose(&self, inner: &TruncSeries) -> Result<Self> {
        self.check(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Series("inner series of a composition must vanish at 0".into()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = TruncSeries::constant(&self.vars, self.coeffs[n].clone(), n);
        for i in (0..n).rev() {
            acc = acc.mul(&inner)?;
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Applies a coefficient-wise polynomial map.
    pub fn map_coeffs<F>(&self, vars: &Vars, f: F) -> Result<Self>
    where
        F: Fn(&MultiPoly) -> MultiPoly,
    {
        TruncSeries::new(vars, self.coeffs.iter().map(f).collect())
    }

    /// `z -> c z` for a rational `c`.
    pub fn rescale_z(&self, c: &BigRational) -> Self {
        let mut factor = BigRational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| {
                let out = x.scale(&factor);
                factor *= c;
                out
            })
            .collect();
        TruncSeries { vars: self.vars.clone(), coeffs }
    }
}

/// `[z^n] F(w)` where `w = z phi(w)`, by Lagrange inversion:
/// `(1/n) [y^(n-1)] F'(y) phi(y)^n`.
pub fn lagrange_coeff(f: &TruncSeries, phi: &TruncSeries, n: usize) -> Result<MultiPoly> {
    if n < 1 {
        return Err(Error::Series("Lagrange inversion needs n >= 1".into()));
    }
    if phi.coeffs[0].as_constant().is_none_or(|c| c.is_zero()) {
        return Err(Error::Series("phi must have a nonzero rational constant term".into()));
    }
    if f.order() < n || phi.order() + 1 < n {
        return Err(Error::Series(format!(
            "orders too small for [z^{n}]: F has {}, phi has {}",
            f.order(),
            phi.order()
        )));
    }
    let phi = phi.truncate(n - 1);
    let df = f.derivative().truncate(n - 1);
    let prod = df.mul(&phi.pow(n as u32))?;
    Ok(prod.coeff(n - 1).scale(&BigRational::new(1.into(), n.into())))
}

/// Solves `w = z phi(w)` by fixed-point iteration, to order `order`.
pub fn fixed_point(phi: &TruncSeries, order: usize) -> Result<TruncSeries> {
    let phi = phi.truncate(order);
    let mut w = TruncSeries::zero(phi.vars(), order);
    for _ in 0..order {
        let next = phi.compose(&w)?.mul_z().truncate(order);
        if next == w {
            break;
        }
        w = next;
    }
    Ok(w)
}

/// The series `B` with `A(B(z)) = z`, for `A = a_1 z + a_2 z^2 + ...`
/// with `a_1` a nonzero rational.
pub fn compositional_inverse(a: &TruncSeries) -> Result<TruncSeries> {
    if !a.coeffs[0].is_zero() {
        return Err(Error::Series("compositional inverse needs a zero constant term".into()));
    }
    let n = a.order();
    if n < 1 || a.coeffs[1].as_constant().is_none_or(|c| c.is_zero()) {
        return Err(Error::Series("compositional inverse needs a nonzero rational linear coefficient".into()));
    }
    // A = z / psi with psi = 1 / (A/z); then B solves B = z psi(B).
    let psi = a.div_z()?.reciprocal()?;
    let ident = TruncSeries::z(a.vars(), n);
    let mut coeffs = vec![MultiPoly::zero(a.vars())];
    for i in 1..=n {
        coeffs.push(lagrange_coeff(&ident, &psi, i)?);
    }
    TruncSeries::new(a.vars(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::{int, rat};
    use proptest::prelude::*;

    fn series(v: &[i64]) -> TruncSeries {
        TruncSeries::from_rationals(&v.iter().map(|&x| int(x)).collect::<Vec<_>>()).unwrap()
    }

    fn values(s: &TruncSeries) -> Vec<BigRational> {
        s.coeffs().iter().map(|c| c.as_constant().unwrap()).collect()
    }

    #[test]
    fn arithmetic_examples() {
        let one_minus_z = series(&[1, -1, 0, 0, 0, 0]);
        assert_eq!(values(&one_minus_z.reciprocal().unwrap()), vec![int(1); 6]);
        assert_eq!(values(&series(&[0, 0, 1, 0]).derivative()), vec![int(0), int(2), int(0)]);
        let p = series(&[1, 1, 0, 0]).mul(&series(&[1, -1, 0, 0])).unwrap();
        assert_eq!(p, series(&[1, 0, -1, 0]));
        assert!(series(&[0, 1, 2]).reciprocal().is_err());
    }

    #[test]
    fn mixed_orders_take_minimum() {
        let a = series(&[1, 2, 3, 4, 5]);
        let b = series(&[1, 1]);
        assert_eq!(a.mul(&b).unwrap().order(), 1);
        assert_eq!(a.add(&b).unwrap().order(), 1);
    }

    #[test]
    fn catalan_by_lagrange() {
        // phi = 1/(1-y), F = y: w = z/(1-w) has Catalan coefficients
        let phi = series(&[1, -1, 0, 0, 0, 0, 0]).reciprocal().unwrap();
        let f = series(&[0, 1, 0, 0, 0, 0, 0]);
        let got: Vec<BigRational> = (1..=6).map(|n| lagrange_coeff(&f, &phi, n).unwrap().as_constant().unwrap()).collect();
        assert_eq!(got, [1, 1, 2, 5, 14, 42].map(int).to_vec());
        let w = fixed_point(&phi, 6).unwrap();
        assert_eq!(values(&w)[1..], got[..]);

        let trivial = series(&[1, 0, 0, 0]);
        for n in 1..=3 {
            let c = lagrange_coeff(&f, &trivial, n).unwrap().as_constant().unwrap();
            assert_eq!(c, int(if n == 1 { 1 } else { 0 }));
        }
        assert!(lagrange_coeff(&f, &phi, 0).is_err());
        assert!(lagrange_coeff(&f, &series(&[0, 1, 0]), 1).is_err());
    }

    #[test]
    fn compositional_inverse_examples() {
        // z/(1-z) <-> z/(1+z)
        let a = series(&[1, -1, 0, 0, 0, 0, 0]).reciprocal().unwrap().mul_z().truncate(6);
        let b = compositional_inverse(&a).unwrap();
        let expected = series(&[1, 1, 0, 0, 0, 0, 0]).reciprocal().unwrap().mul_z().truncate(6);
        assert_eq!(b, expected);
        let z = series(&[0, 1, 0, 0]);
        assert_eq!(compositional_inverse(&z).unwrap(), z);
        // z - z^2 -> Catalan
        let a = series(&[0, 1, -1, 0, 0, 0]);
        let b = compositional_inverse(&a).unwrap();
        assert_eq!(values(&b), [0, 1, 1, 2, 5, 14].map(int).to_vec());
        assert_eq!(a.compose(&b).unwrap(), series(&[0, 1, 0, 0, 0, 0]));
        assert_eq!(b.compose(&a).unwrap(), series(&[0, 1, 0, 0, 0, 0]));
        assert!(compositional_inverse(&series(&[1, 1, 0])).is_err());
        assert!(compositional_inverse(&series(&[0, 0, 1])).is_err());
    }

    #[test]
    fn polynomial_coefficients() {
        let v = Vars::new(["c"]);
        let c = MultiPoly::var(&v, 0);
        let g = TruncSeries::geometric(&c, 4);
        let back = TruncSeries::linear(&-&c, 4).mul(&g).unwrap();
        assert_eq!(back, TruncSeries::one(&v, 4));
        assert_eq!(g.rescale_z(&rat(-1, 1)).coeff(3), &-&c.pow(3));
    }

    fn arb_unit_series(order: usize) -> impl Strategy<Value = TruncSeries> {
        prop::collection::vec((-4i64..=4, 1i64..=3), order).prop_map(|v| {
            let mut c = vec![int(1)];
            c.extend(v.into_iter().map(|(a, b)| rat(a, b)));
            TruncSeries::from_rationals(&c).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn lagrange_matches_fixed_point(phi in arb_unit_series(10), f in arb_unit_series(10)) {
            let w = fixed_point(&phi, 10).unwrap();
            let composed = f.compose(&w).unwrap();
            for n in 1..=10 {
                prop_assert_eq!(&lagrange_coeff(&f, &phi, n).unwrap(), composed.coeff(n));
            }
        }

        #[test]
        fn inverse_round_trip(tail in arb_unit_series(6)) {
            let a = tail.mul_z().truncate(6);
            let b = compositional_inverse(&a).unwrap();
            let z = TruncSeries::z(a.vars(), 6);
            prop_assert_eq!(a.compose(&b).unwrap(), z.clone());
            prop_assert_eq!(b.compose(&a).unwrap(), z);
        }
    }
}
