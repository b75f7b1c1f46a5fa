//! Shifted Schur functions, their reverse-tableau expansion and `p#_mu`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::linalg::determinant;
use crate::algebra::MultiPoly;
use crate::characters::mn_character;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest shape for reverse-tableau enumeration.
pub const MAX_TABLEAU_BOXES: usize = 8;

/// `x (x-1) .. (x-k+1)`.
pub fn falling_factorial(x: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| acc * (x - BigRational::from_integer(BigInt::from(i))))
}

/// Polynomial version of [`falling_factorial`].
pub fn falling_factorial_poly(x: &MultiPoly, k: usize) -> MultiPoly {
    (0..k).fold(MultiPoly::one(x.vars()), |acc, i| &acc * &(x - &MultiPoly::from_int(x.vars(), i as i64)))
}

/// `det((x_i + n - i)_{lambda_j + n - j}) / det((x_i + n - i)_{n - j})`
/// with `n = x.len()` and `lambda` padded by zeros.
pub fn shift_schur_det(lambda: &Partition, x: &[BigRational]) -> Result<BigRational> {
    let n = x.len();
    if lambda.len() > n {
        return Err(Error::InvalidArgument(format!("{lambda} has more rows than the {n} variables")));
    }
    let shifted: Vec<BigRational> = x
        .iter()
        .enumerate()
        .map(|(i, xi)| xi + BigRational::from_integer(BigInt::from(n - 1 - i)))
        .collect();
    let matrix = |exps: &dyn Fn(usize) -> usize| -> Vec<Vec<BigRational>> {
        shifted.iter().map(|s| (0..n).map(|j| falling_factorial(s, exps(j))).collect()).collect()
    };
    let den = determinant(matrix(&|j| n - 1 - j));
    if den.is_zero() {
        return Err(Error::Singular(format!("shifted arguments of {x:?} repeat")));
    }
    let num = determinant(matrix(&|j| lambda.part(j) + n - 1 - j));
    Ok(num / den)
}

/// Reverse tableaux of shape `lambda` with entries in `1..=max`: rows weakly
/// decreasing, columns strictly decreasing.
pub fn reverse_tableaux(lambda: &Partition, max: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    if lambda.size() > MAX_TABLEAU_BOXES {
        return Err(Error::Budget(format!("tableau enumeration limited to {MAX_TABLEAU_BOXES} boxes")));
    }
    let cells: Vec<(usize, usize)> = lambda.cells().map(|(r, c)| (r - 1, c - 1)).collect();
    let mut fill: Vec<Vec<usize>> = lambda.parts().iter().map(|&len| vec![0; len]).collect();
    let mut out = Vec::new();
    fill_reverse(0, &cells, &mut fill, max, &mut out);
    Ok(out)
}

fn fill_reverse(i: usize, cells: &[(usize, usize)], fill: &mut Vec<Vec<usize>>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
    if i == cells.len() {
        out.push(fill.clone());
        return;
    }
    let (r, c) = cells[i];
    let mut hi = max;
    if c > 0 {
        hi = hi.min(fill[r][c - 1]);
    }
    if r > 0 {
        hi = hi.min(fill[r - 1][c] - 1);
    }
    for v in 1..=hi {
        fill[r][c] = v;
        fill_reverse(i + 1, cells, fill, max, out);
    }
}

/// `sum_{T} prod_{u} (x_{T(u)} - c(u))` over reverse tableaux with entries at most `x.len()`.
pub fn shift_schur_tableaux(lambda: &Partition, x: &[BigRational]) -> Result<BigRational> {
    let tableaux = reverse_tableaux(lambda, x.len())?;
    let mut total = BigRational::zero();
    for t in tableaux {
        let mut term = BigRational::one();
        for (r, row) in t.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                term *= &x[v - 1] - BigRational::from_integer(BigInt::from(c as i64 - r as i64));
            }
        }
        total += term;
    }
    Ok(total)
}

/// `s*_lambda` at `x_1 = .. = x_p = q`:
/// `(-1)^k / H_lambda * prod_u (-q + c(u)) (p + c(u))`.
pub fn shift_schur_rect(lambda: &Partition, p: i64, q: i64) -> BigRational {
    let mut num = BigInt::one();
    for c in lambda.contents() {
        num *= BigInt::from(c - q) * BigInt::from(p + c);
    }
    if lambda.size() % 2 == 1 {
        num = -num;
    }
    BigRational::new(num, lambda.hook_product())
}

fn as_point(lambda: &Partition, n: usize) -> Vec<BigRational> {
    (0..n).map(|i| BigRational::from_integer(BigInt::from(lambda.part(i)))).collect()
}

/// `p#_mu(lambda) = sum_{rho |- k} chi_rho(mu) s*_rho(lambda)`, evaluated
/// with `max(k, l(lambda))` and one more variable to confirm stability.
pub fn p_sharp(mu: &Partition, lambda: &Partition) -> Result<BigRational> {
    let k = mu.size();
    if k > lambda.size() {
        return Err(Error::SizeMismatch(format!("|mu| = {k} exceeds |lambda| = {}", lambda.size())));
    }
    let n = k.max(lambda.len()).max(1);
    let value = |vars: usize| -> Result<BigRational> {
        let x = as_point(lambda, vars);
        let mut total = BigRational::zero();
        for rho in Partition::all(k) {
            let chi = mn_character(&rho, mu)?;
            if chi.is_zero() {
                continue;
            }
            total += BigRational::from_integer(chi) * shift_schur_det(&rho, &x)?;
        }
        Ok(total)
    };
    let a = value(n)?;
    let b = value(n + 1)?;
    if a != b {
        return Err(Error::Consistency(format!("p#_{mu}({lambda}) changes with the number of variables: {a} vs {b}")));
    }
    Ok(a)
}

/// `p#_mu(lambda)` for every `mu |- k`, sharing the shifted Schur values.
pub fn p_sharp_all(lambda: &Partition, k: usize) -> Result<Vec<(Partition, BigRational)>> {
    if k > lambda.size() {
        return Err(Error::SizeMismatch(format!("k = {k} exceeds |lambda| = {}", lambda.size())));
    }
    let x = as_point(lambda, k.max(lambda.len()).max(1));
    let shapes: Vec<Partition> = Partition::all(k).collect();
    let schur: Vec<BigRational> = shapes.iter().map(|rho| shift_schur_det(rho, &x)).collect::<Result<_>>()?;
    shapes
        .iter()
        .map(|mu| {
            let mut total = BigRational::zero();
            for (rho, s) in shapes.iter().zip(&schur) {
                let chi = mn_character(rho, mu)?;
                if !chi.is_zero() {
                    total += BigRational::from_integer(chi) * s;
                }
            }
            Ok((mu.clone(), total))
        })
        .collect()
}

/// `sum_{rho |- k} chi_rho(mu) s*_rho(p x q)` through the closed form.
pub fn p_sharp_rect(mu: &Partition, p: i64, q: i64) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for rho in Partition::all(mu.size()) {
        total += BigRational::from_integer(mn_character(&rho, mu)?) * shift_schur_rect(&rho, p, q);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Vars};
    use crate::characters::{factorization_character, normalized_character_class, schur_principal_specialization};
    use proptest::prelude::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling_factorial(&int(5), 0), int(1));
        assert_eq!(falling_factorial(&int(5), 2), int(20));
        assert_eq!(falling_factorial(&int(3), 2), int(6));
        let v = Vars::new(["x"]);
        let x = MultiPoly::var(&v, 0);
        assert_eq!(falling_factorial_poly(&x, 2), &x.pow(2) - &x);
    }

    #[test]
    fn shift_schur_examples() {
        let x = [int(3), int(7), int(-2)];
        assert_eq!(shift_schur_det(&part(&[1]), &x).unwrap(), int(8));
        assert_eq!(shift_schur_det(&Partition::empty(), &x).unwrap(), int(1));
        assert_eq!(shift_schur_tableaux(&part(&[1]), &[int(4), int(9)]).unwrap(), int(13));
        let qq = [int(5), int(5)];
        assert_eq!(shift_schur_det(&part(&[2]), &qq).unwrap(), shift_schur_tableaux(&part(&[2]), &qq).unwrap());
        assert!(shift_schur_det(&part(&[1, 1]), &[int(1)]).is_err());
        // x_1 + 1 = x_2 makes the shifted arguments collide
        assert!(matches!(shift_schur_det(&part(&[1]), &[int(1), int(2)]), Err(Error::Singular(_))));
        assert!(shift_schur_tableaux(&Partition::ones(9), &[int(1)]).is_err());
    }

    #[test]
    fn rect_closed_form() {
        assert_eq!(shift_schur_rect(&part(&[1]), 3, 4), int(12));
        for k in 1..=5 {
            for lambda in Partition::all(k) {
                for p in 1..=4i64 {
                    for q in 1..=4i64 {
                        let x = vec![int(q); p as usize];
                        let closed = shift_schur_rect(&lambda, p, q);
                        assert_eq!(closed, shift_schur_tableaux(&lambda, &x).unwrap(), "{lambda} {p}x{q}");
                        if lambda.len() > p as usize {
                            assert!(closed.is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tableau_count_is_principal_specialization() {
        for k in 1..=5 {
            for lambda in Partition::all(k) {
                for p in 1..=4usize {
                    let count = reverse_tableaux(&lambda, p).unwrap().len();
                    assert_eq!(int(count as i64), schur_principal_specialization(&lambda, p as i64));
                }
            }
        }
    }

    #[test]
    fn p_sharp_identity() {
        assert_eq!(p_sharp(&part(&[2]), &part(&[2, 2])).unwrap(), int(0));
        for n in 1..=6 {
            for lambda in Partition::all(n) {
                assert_eq!(p_sharp(&part(&[1]), &lambda).unwrap(), int(n as i64));
                for k in 1..=n {
                    for mu in Partition::all(k) {
                        assert_eq!(
                            p_sharp(&mu, &lambda).unwrap(),
                            normalized_character_class(&lambda, &mu).unwrap(),
                            "{mu} at {lambda}"
                        );
                    }
                }
            }
        }
        assert!(p_sharp(&part(&[3]), &part(&[2])).is_err());
    }

    #[test]
    fn rectangle_chain() {
        for k in 1..=5 {
            for mu in Partition::all(k) {
                for p in 1..=4i64 {
                    for q in 1..=4i64 {
                        let via_shift = p_sharp_rect(&mu, p, q).unwrap();
                        assert_eq!(via_shift, int(1) * BigRational::from_integer(factorization_character(p, q, &mu).unwrap()));
                    }
                }
            }
        }
        assert_eq!(p_sharp_rect(&part(&[1]), 2, 3).unwrap(), rat(6, 1));
    }

    proptest! {
        #[test]
        fn det_matches_tableaux(
            lambda_idx in 0usize..18,
            xs in proptest::collection::vec((-9i64..10, 1i64..4), 3..=4),
        ) {
            let shapes: Vec<Partition> = (1..=5).flat_map(Partition::all).collect();
            let lambda = &shapes[lambda_idx % shapes.len()];
            prop_assume!(lambda.len() <= xs.len());
            let x: Vec<BigRational> = xs.iter().map(|&(n, d)| rat(n, d)).collect();
            match shift_schur_det(lambda, &x) {
                Ok(v) => prop_assert_eq!(v, shift_schur_tableaux(lambda, &x).unwrap()),
                Err(Error::Singular(_)) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }
}
