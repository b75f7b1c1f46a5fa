//! Irreducible characters of the symmetric group and the scalings built on them.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::{MultiPoly, Vars};
use crate::error::{Error, Result};
use crate::partition::{factorial, falling_factorial_int, Partition};
use crate::perm;

/// Largest `k` for which [`factorization_polynomial`] enumerates `S_k`.
pub const MAX_FACTORIZATION_K: usize = 7;

type CharKey = (Partition, Partition);

fn cache() -> &'static Mutex<HashMap<CharKey, BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<CharKey, BigInt>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn check_same_size(a: &Partition, b: &Partition) -> Result<()> {
    if a.size() == b.size() {
        Ok(())
    } else {
        Err(Error::SizeMismatch(format!("{a} has {} boxes but {b} has {}", a.size(), b.size())))
    }
}

/// `chi_lambda(mu)` by the Murnaghan-Nakayama rule, removing the largest
/// part of `mu` first. Once only fixed points remain the value is the
/// number of standard tableaux.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    check_same_size(lambda, mu)?;
    Ok(mn(lambda, mu.parts()))
}

fn mn(lambda: &Partition, mu: &[usize]) -> BigInt {
    if mu.iter().all(|&m| m == 1) {
        return lambda.dimension();
    }
    let key = (lambda.clone(), Partition::from_sorted(mu.to_vec()));
    if let Some(v) = cache().lock().expect("character cache poisoned").get(&key) {
        return v.clone();
    }
    let (first, rest) = mu.split_first().expect("non-empty class");
    let mut total = BigInt::zero();
    for (shape, leg) in lambda.remove_rim_hooks(*first) {
        let v = mn(&shape, rest);
        if leg % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    cache().lock().expect("character cache poisoned").insert(key, total.clone());
    total
}

/// `chi_hat_omega(mu 1^(n-k)) = n (n-1) .. (n-k+1) chi_omega(mu 1^(n-k)) / chi_omega(1^n)`.
pub fn normalized_character_class(omega: &Partition, mu: &Partition) -> Result<BigRational> {
    let n = omega.size();
    let k = mu.size();
    if k > n {
        return Err(Error::SizeMismatch(format!("|mu| = {k} exceeds |omega| = {n}")));
    }
    let class = Partition::padded(mu, n)?;
    let chi = mn_character(omega, &class)?;
    Ok(BigRational::new(falling_factorial_int(n as i64, k) * chi, omega.dimension()))
}

/// `chi_hat_omega(k 1^(n-k))`.
pub fn normalized_character(omega: &Partition, k: usize) -> Result<BigRational> {
    if k == 0 || k > omega.size() {
        return Err(Error::SizeMismatch(format!("k = {k} must lie in 1..={}", omega.size())));
    }
    normalized_character_class(omega, &Partition::from_sorted(vec![k]))
}

/// `|C_lambda| chi_omega(lambda) / chi_omega(1^n)`.
pub fn central_character(omega: &Partition, lambda: &Partition) -> Result<BigRational> {
    check_same_size(omega, lambda)?;
    let chi = mn_character(omega, lambda)?;
    Ok(BigRational::new(lambda.class_size() * chi, omega.dimension()))
}

/// `c^mu_{alpha,beta}` from the character sum
/// `|C_alpha||C_beta| / k! * sum_lambda chi(alpha) chi(beta) chi(mu) / f^lambda`.
pub fn connection_coefficient(alpha: &Partition, beta: &Partition, mu: &Partition) -> Result<BigInt> {
    check_same_size(alpha, beta)?;
    check_same_size(alpha, mu)?;
    let k = alpha.size();
    let mut sum = BigRational::zero();
    for lambda in Partition::all(k) {
        let chis = mn(&lambda, alpha.parts()) * mn(&lambda, beta.parts()) * mn(&lambda, mu.parts());
        sum += BigRational::new(chis, lambda.dimension());
    }
    let value = sum * BigRational::new(alpha.class_size() * beta.class_size(), factorial(k));
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Consistency(format!(
            "connection coefficient for {alpha} x {beta} -> {mu} is {value}, not a nonnegative integer"
        )));
    }
    Ok(value.to_integer())
}

/// Same coefficient by multiplying class sums explicitly: counts pairs
/// `(a, b)` in `C_alpha x C_beta` with `a b` equal to a fixed element of `C_mu`.
pub fn connection_coefficient_brute(alpha: &Partition, beta: &Partition, mu: &Partition) -> Result<BigInt> {
    check_same_size(alpha, beta)?;
    check_same_size(alpha, mu)?;
    let k = alpha.size();
    if k > MAX_FACTORIZATION_K {
        return Err(Error::Budget(format!("brute-force group algebra limited to k <= {MAX_FACTORIZATION_K}")));
    }
    let target = perm::representative(mu);
    let mut count = 0u64;
    for a in perm::all_perms(k) {
        if perm::cycle_type(&a) != *alpha {
            continue;
        }
        let b = perm::compose(&perm::inverse(&a), &target);
        if perm::cycle_type(&b) == *beta {
            count += 1;
        }
    }
    Ok(count.into())
}

/// `prod_{u in lambda} (x + c(u))` as a polynomial in `x`.
pub fn content_product_expand(lambda: &Partition) -> MultiPoly {
    let vars = Vars::new(["x"]);
    let x = MultiPoly::var(&vars, 0);
    lambda
        .contents()
        .into_iter()
        .fold(MultiPoly::one(&vars), |acc, c| &acc * &(&x + &MultiPoly::from_int(&vars, c)))
}

/// `sum_{beta} |C_beta| / f^lambda * chi_lambda(beta) x^{l(beta)}`.
pub fn content_product_via_characters(lambda: &Partition) -> MultiPoly {
    let vars = Vars::new(["x"]);
    let dim = lambda.dimension();
    let terms = Partition::all(lambda.size())
        .map(|beta| {
            let c = BigRational::new(beta.class_size() * mn(lambda, beta.parts()), dim.clone());
            (vec![beta.len() as u32], c)
        })
        .collect::<Vec<_>>();
    MultiPoly::from_terms(&vars, terms).expect("one indeterminate")
}

/// `(-1)^k sum_{u v = lambda_mu} p^{cycles(u)} (-q)^{cycles(v)}` over all of `S_k`.
pub fn factorization_polynomial(mu: &Partition) -> Result<MultiPoly> {
    let k = mu.size();
    if k > MAX_FACTORIZATION_K {
        return Err(Error::Budget(format!("factorization enumeration limited to k <= {MAX_FACTORIZATION_K}, got {k}")));
    }
    let vars = Vars::new(["p", "q"]);
    let target = perm::representative(mu);
    let mut counts: HashMap<(u32, u32), i64> = HashMap::new();
    for u in perm::all_perms(k) {
        let v = perm::compose(&perm::inverse(&u), &target);
        *counts.entry((perm::cycle_count(&u) as u32, perm::cycle_count(&v) as u32)).or_insert(0) += 1;
    }
    let sign_k = if k.is_multiple_of(2) { 1 } else { -1 };
    let terms = counts.into_iter().map(|((a, b), c)| {
        let sign = if b % 2 == 0 { sign_k } else { -sign_k };
        (vec![a, b], BigRational::from_integer((sign * c).into()))
    });
    MultiPoly::from_terms(&vars, terms)
}

/// [`factorization_polynomial`] evaluated at integers.
pub fn factorization_character(p: i64, q: i64, mu: &Partition) -> Result<BigInt> {
    let poly = factorization_polynomial(mu)?;
    let v = poly.evaluate(&[BigRational::from_integer(p.into()), BigRational::from_integer(q.into())])?;
    Ok(v.to_integer())
}

/// `s_lambda(1^p) = prod (p + c(u)) / H_lambda`.
pub fn schur_principal_specialization(lambda: &Partition, p: i64) -> BigRational {
    let num: BigInt = lambda.contents().into_iter().map(|c| BigInt::from(p + c)).product();
    BigRational::new(num, lambda.hook_product())
}

/// Sign of a permutation of cycle type `mu`.
pub fn sign(mu: &Partition) -> i64 {
    if (mu.size() - mu.len()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Clears the memo table (tests use it to check cold and warm agreement).
pub fn clear_cache() {
    cache().lock().expect("character cache poisoned").clear();
}
