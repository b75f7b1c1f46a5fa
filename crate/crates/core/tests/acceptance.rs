//! Exit criteria. Each prints one PASS/FAIL line with its tolerance and runtime.
//! Runs without the libtest harness so the lines are never captured.
//! All comparisons are exact (tolerance: equality of rationals or polynomials).

use std::cell::Cell;
use std::time::{Duration, Instant};

use charpoly_core::algebra::parse_poly_text;
use charpoly_core::characters::{factorization_polynomial, normalized_character, normalized_character_class};
use charpoly_core::kerov::{
    c_expansion, free_cumulants, gamma_report, graded_component, kerov_polynomial, r_vars, sigma_k2_closed_form,
};
use charpoly_core::partition::falling_factorial_int;
use charpoly_core::shift::{p_sharp_all, p_sharp_rect};
use charpoly_core::stanley::{
    elizalde_report, negate_q, phi_negated_by_substitution, phi_negated_product, positivity_report,
    stanley_polynomial, verify_g_equals_r, ShapeRing,
};
use charpoly_core::verify::{KEROV_C_TABLE, KEROV_R_TABLE, STANLEY_TABLE};
use charpoly_core::{MultiRect, Partition};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn run(index: usize, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let elapsed = start.elapsed();
    let in_budget = elapsed <= budget;
    let pass = o.pass && in_budget;
    println!(
        "[{}] {index:>2}. {title} | tolerance: exact | {:.2}s (limit {}s) | {}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs(),
        o.detail
    );
    pass
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn criterion_1() -> Outcome {
    for (i, text) in KEROV_R_TABLE.iter().enumerate() {
        let k = i + 1;
        let v = r_vars(k + 1);
        let got = kerov_polynomial(k).unwrap();
        if got.body != parse_poly_text(text, &v, v.names()).unwrap() {
            return outcome(false, format!("Sigma_{k} = {}", got.to_text()));
        }
    }
    outcome(true, format!("Sigma_6 = {}", kerov_polynomial(6).unwrap().to_text()))
}

fn criterion_2() -> Outcome {
    for (i, text) in KEROV_C_TABLE.iter().enumerate() {
        let k = i + 3;
        let rest = c_expansion(k).unwrap().without_top();
        if rest != parse_poly_text(text, rest.vars(), rest.vars().names()).unwrap() {
            return outcome(false, format!("Sigma_{k} - R{} = {rest}", k + 1));
        }
    }
    outcome(true, format!("Sigma_8 = {}", c_expansion(8).unwrap().to_text()))
}

fn criterion_3() -> Outcome {
    let ring = ShapeRing::new(2).unwrap();
    let names = ring.display_names();
    for (i, text) in STANLEY_TABLE.iter().enumerate() {
        let k = i + 1;
        let got = negate_q(&ring, &stanley_polynomial(k, 2).unwrap(), k);
        if got != parse_poly_text(text, ring.vars(), &names).unwrap() {
            return outcome(false, format!("k = {k}: {}", ring.to_text(&got)));
        }
    }
    let f1 = stanley_polynomial(1, 2).unwrap();
    let listed = parse_poly_text("-a b - p q", ring.vars(), &names).unwrap();
    if f1 != -&listed {
        return outcome(false, format!("F_1 = {}", ring.to_text(&f1)));
    }
    outcome(true, format!("k = 2..4 monomial for monomial; F_1 = {} (listed -a b - p q: sign erratum)", ring.to_text(&f1)))
}

/// The unsigned identity fails for odd `k`; the signed one is asserted separately.
fn criterion_4() -> (Outcome, bool) {
    let mut unsigned_failures = Vec::new();
    let mut signed_ok = true;
    for m in 1..=3usize {
        let point: Vec<BigRational> = (0..2 * m).map(|i| int(if i % 2 == 0 { 1 } else { -1 })).collect();
        for k in 1..=6usize {
            let v = stanley_polynomial(k, m).unwrap().evaluate(&point).unwrap();
            let want = BigRational::from_integer(falling_factorial_int((k + m - 1) as i64, k));
            if v != want {
                unsigned_failures.push(format!("(k={k},m={m}): {v}"));
            }
            let signed = if k % 2 == 0 { want.clone() } else { -want.clone() };
            signed_ok &= v == signed;
        }
    }
    let detail = if unsigned_failures.is_empty() {
        "F_k(1..1; -1..-1) = (k+m-1)_k for k <= 6, m <= 3".to_string()
    } else {
        format!(
            "unsigned form fails at {} of 18 points [{}]; F_k(1..1; -1..-1) = (-1)^k (k+m-1)_k holds at all 18: {}",
            unsigned_failures.len(),
            unsigned_failures.join(", "),
            signed_ok
        )
    };
    (outcome(unsigned_failures.is_empty(), detail), signed_ok)
}

fn criterion_5() -> Outcome {
    let mut cases = 0;
    for k in 1..=5 {
        for mu in Partition::all(k) {
            let poly = factorization_polynomial(&mu).unwrap();
            for p in 1..=4usize {
                for q in 1..=4usize {
                    let omega = MultiRect::rectangle(p, q).unwrap().expand();
                    let got = poly.evaluate(&[int(p as i64), int(q as i64)]).unwrap();
                    let want =
                        if p * q >= k { normalized_character_class(&omega, &mu).unwrap() } else { BigRational::zero() };
                    if got != want {
                        return outcome(false, format!("mu = {mu} on {p}x{q}: {got} vs {want}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    outcome(true, format!("{cases} (mu, p, q) cases"))
}

fn criterion_6() -> Outcome {
    let shapes: Vec<Partition> = [
        vec![1],
        vec![2, 1],
        vec![3, 3],
        vec![4, 2, 1],
        vec![2, 2, 2, 2],
        vec![5, 3],
        vec![6, 1, 1],
        vec![3, 3, 2, 1],
        vec![8],
        vec![1, 1, 1, 1, 1, 1, 1, 1, 1],
        vec![4, 4, 1],
        vec![5, 2, 2, 1],
        vec![3, 2, 2, 2, 1],
        vec![7, 3],
        vec![4, 3, 2, 1],
        vec![6, 4, 1],
        vec![5, 5, 2],
        vec![3, 3, 3, 3],
        vec![9, 2, 1],
        vec![4, 4, 3, 2],
    ]
    .into_iter()
    .map(|p| Partition::new(p).unwrap())
    .collect();
    let mut checks = 0;
    for omega in &shapes {
        let cumulants = free_cumulants(omega, 9).unwrap();
        for k in 1..=8 {
            let got = kerov_polynomial(k).unwrap().evaluate(&cumulants).unwrap();
            let want = if k <= omega.size() { normalized_character(omega, k).unwrap() } else { BigRational::zero() };
            if got != want {
                return outcome(false, format!("Sigma_{k} at {omega}: {got} vs {want}"));
            }
            checks += 1;
        }
    }
    outcome(true, format!("{} diagrams, {checks} values, k <= 8", shapes.len()))
}

fn criterion_7() -> Outcome {
    for m in 1..=3 {
        if let Err(i) = verify_g_equals_r(&ShapeRing::new(m).unwrap(), 8).unwrap() {
            return outcome(false, format!("m = {m}, z^{i}"));
        }
    }
    outcome(true, "order 8, m = 1, 2, 3")
}

fn criterion_8() -> Outcome {
    for m in 1..=3 {
        let ring = ShapeRing::new(m).unwrap();
        let product = phi_negated_product(&ring, 10).unwrap();
        if product != phi_negated_by_substitution(&ring, 10).unwrap() {
            return outcome(false, format!("m = {m}: product form differs"));
        }
        if !product.coeffs().iter().all(|c| c.is_zero() || c.is_positive()) {
            return outcome(false, format!("m = {m}: negative coefficient"));
        }
    }
    outcome(true, "order 10, m = 1, 2, 3, all coefficients p,q-positive")
}

fn criterion_9() -> Outcome {
    for k in 3..=9 {
        let e = kerov_polynomial(k).unwrap();
        if graded_component(&e, 1).unwrap() != sigma_k2_closed_form(k).unwrap() {
            return outcome(false, format!("Sigma_({k},2)"));
        }
        let c = graded_component(&c_expansion(k).unwrap(), 2).unwrap();
        if !(c.is_zero() || c.is_positive()) {
            return outcome(false, format!("Sigma_({k},4) = {c}"));
        }
    }
    let mut gamma = Vec::new();
    for k in [7, 9] {
        for slice in gamma_report(k).unwrap() {
            if !slice.positive || !slice.factor_bound_holds {
                return outcome(false, format!("gamma slice n = {} of Sigma_{k}", slice.n));
            }
            let terms: Vec<String> = slice
                .terms
                .iter()
                .map(|t| {
                    let f: Vec<String> = t.factors.iter().map(|i| format!("C{i}")).collect();
                    format!("{} {}", t.coefficient, f.join(" "))
                })
                .collect();
            gamma.push(format!("Sigma_({k},{}): {}", 2 * slice.n, terms.join(" + ")));
        }
    }
    outcome(true, format!("3 <= k <= 9; gamma report {}", gamma.join("; ")))
}

fn criterion_10() -> Outcome {
    let mut summary = Vec::new();
    for (k_max, m) in [(8, 1), (8, 2), (6, 3)] {
        for row in positivity_report(k_max, m).unwrap() {
            if !row.full.positive || row.by_degree.iter().any(|d| !d.positivity.positive) {
                return outcome(false, format!("k = {}, m = {m}", row.k));
            }
        }
        summary.push(format!("k <= {k_max}, m = {m}"));
    }
    outcome(true, format!("(-1)^k F_k(p; -q) p,q-positive for {}", summary.join("; ")))
}

fn criterion_11() -> Outcome {
    let mut pairs = 0;
    for n in 1..=8 {
        for lambda in Partition::all(n) {
            for k in 1..=n {
                for (mu, v) in p_sharp_all(&lambda, k).unwrap() {
                    if v != normalized_character_class(&lambda, &mu).unwrap() {
                        return outcome(false, format!("p#_{mu}({lambda}) = {v}"));
                    }
                    pairs += 1;
                }
            }
        }
    }
    for k in 1..=5 {
        for mu in Partition::all(k) {
            let poly = factorization_polynomial(&mu).unwrap();
            for p in 1..=4 {
                for q in 1..=4 {
                    if p_sharp_rect(&mu, p, q).unwrap() != poly.evaluate(&[int(p), int(q)]).unwrap() {
                        return outcome(false, format!("chain at mu = {mu}, {p}x{q}"));
                    }
                }
            }
        }
    }
    outcome(true, format!("{pairs} (lambda, mu) pairs with |lambda| <= 8; rectangle chain k <= 5"))
}

fn criterion_12() -> Outcome {
    let rows = elizalde_report(5, 2).unwrap();
    println!("      k  variant     target      match  differing monomials");
    for r in &rows {
        println!(
            "      {}  {:<10}  {:<10}  {:<5}  {}",
            r.k,
            format!("{:?}", r.variant),
            format!("{:?}", r.target),
            r.matches,
            r.differing_monomials
        );
    }
    outcome(rows.len() == 20, format!("{} rows, table complete", rows.len()))
}

fn main() {
    let s = Duration::from_secs;
    let mut failed = Vec::new();
    let mut check = |i: usize, title: &str, budget: Duration, f: &dyn Fn() -> Outcome| {
        if !run(i, title, budget, f) {
            failed.push(i);
        }
    };
    check(1, "Kerov R-expansions Sigma_1..Sigma_6", s(60), &criterion_1);
    check(2, "Kerov C-expansions k = 3..8", s(180), &criterion_2);
    check(3, "Stanley polynomials for two rectangles, k = 1..4", s(60), &criterion_3);
    let signed_ok = Cell::new(false);
    check(4, "Evaluation F_k(1..1; -1..-1) = (k+m-1)_k, k <= 6, m <= 3", s(60), &|| {
        let (o, ok) = criterion_4();
        signed_ok.set(ok);
        o
    });
    check(5, "Rectangular factorization vs characters, p,q <= 4, k <= 5", s(120), &criterion_5);
    check(6, "Kerov substitution on 20 diagrams, k <= 8", s(60), &criterion_6);
    check(7, "R-series = G-series - sum p_i z, order 8, m <= 3", s(60), &criterion_7);
    check(8, "Product form of phi(p; -q)(-z), order 10, m <= 3", s(60), &criterion_8);
    check(9, "Sigma_(k,2) closed form and Sigma_(k,4) C-positivity, k <= 9", s(120), &criterion_9);
    check(10, "Positivity of (-1)^k F_k(p; -q), k <= 8 (m <= 2), k <= 6 (m = 3)", s(600), &criterion_10);
    check(11, "p-sharp identity |lambda| <= 8 and rectangle chain k <= 5", s(120), &criterion_11);
    check(12, "Elizalde comparison table, k <= 5, m = 2", s(60), &criterion_12);
    // Criterion 4 is false as stated at odd k (F_1 counts boxes, so F_1(1; -1) = -m).
    // The signed identity is what the data supports and is required instead.
    failed.retain(|&i| i != 4);
    if !signed_ok.get() {
        failed.push(4);
    }
    if failed.is_empty() {
        println!("acceptance: all criteria met except 4 as stated; its signed form holds");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
