//! Reproduction checks for the reference tables and identities, run as one suite.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{parse_poly_text, Grading, MultiPoly};
use crate::characters::{factorization_polynomial, normalized_character_class};
use crate::error::Result;
use crate::kerov::{
    c_expansion, c_monomial, graded_component, kerov_polynomial, positivity_check, r_vars, sigma_k2_closed_form,
};
use crate::partition::{falling_factorial_int, MultiRect, Partition};
use crate::shift::{p_sharp_all, p_sharp_rect};
use crate::stanley::{
    degree_km1_terms, elizalde_report, negate_q, phi_negated_by_substitution, phi_negated_product,
    positivity_report, stanley_polynomial, verify_g_equals_r, ElizaldeTarget, ElizaldeVariant, ShapeRing,
};

/// Kerov polynomials in free cumulants, `k = 1..=6`.
pub const KEROV_R_TABLE: [&str; 6] = [
    "R2",
    "R3",
    "R4 + R2",
    "R5 + 5 R3",
    "R6 + 15 R4 + 5 R2^2 + 8 R2",
    "R7 + 35 R5 + 35 R3 R2 + 84 R3",
];

/// `Sigma_k - R_{k+1}` in the `C` basis, `k = 3..=8`.
pub const KEROV_C_TABLE: [&str; 6] = [
    "C2",
    "5/2 C3",
    "5 C4 + 8 C2",
    "35/4 C5 + 42 C3",
    "14 C6 + 469/3 C4 + 203/3 C2^2 + 180 C2",
    "21 C7 + 1869/4 C5 + 819/2 C3 C2 + 1522 C3",
];

/// `(-1)^k F_k(a, p; -b, -q)` for `k = 1..=4`.
pub const STANLEY_TABLE: [&str; 4] = [
    "a b + p q",
    "a^2 b + a b^2 + 2 a p q + p^2 q + p q^2",
    "a^3 b + 3 a^2 b^2 + 3 a^2 p q + a b^3 + 3 a b p q + 3 a p^2 q + 3 a p q^2 + p^3 q + 3 p^2 q^2 + p q^3 + a b + p q",
    "a^4 b + 6 a^3 b^2 + 4 a^3 p q + 6 a^2 b^3 + 12 a^2 b p q + 6 a^2 p^2 q + 6 a^2 p q^2 + a b^4 + 4 a b^2 p q \
     + 4 a b p^2 q + 4 a b p q^2 + 4 a p^3 q + 14 a p^2 q^2 + 4 a p q^3 + p^4 q + 6 p^3 q^2 + 6 p^2 q^3 + p q^4 \
     + 5 a^2 b + 5 a b^2 + 10 a p q + 5 p^2 q + 5 p q^2",
];

/// `F_1` and `F_2` for two rectangles as commonly quoted; the `F_1` sign is a known slip.
pub const STANLEY_QUOTED_F1: &str = "-a b - p q";
pub const STANLEY_QUOTED_F2: &str = "-a^2 b + a b^2 - 2 a p q - p^2 q + p q^2";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    /// A documented discrepancy or a report; not a failure.
    Finding,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ItemResult {
    pub index: usize,
    pub anchor: &'static str,
    pub status: Status,
    pub detail: String,
}

type Check = fn() -> Result<(Status, String)>;

fn pass_if(ok: bool, detail: impl Into<String>) -> (Status, String) {
    (if ok { Status::Pass } else { Status::Fail }, detail.into())
}

fn two_rect_names() -> (ShapeRing, Vec<String>) {
    let ring = ShapeRing::new(2).expect("m = 2");
    let names = ring.display_names();
    (ring, names)
}

fn kerov_r_table() -> Result<(Status, String)> {
    let mut bad = Vec::new();
    for (i, text) in KEROV_R_TABLE.iter().enumerate() {
        let k = i + 1;
        let vars = r_vars(k + 1);
        let expected = parse_poly_text(text, &vars, vars.names())?;
        let got = kerov_polynomial(k)?;
        if got.body != expected {
            bad.push(format!("Sigma_{k} = {}", got.to_text()));
        }
    }
    Ok(pass_if(bad.is_empty(), if bad.is_empty() { "Sigma_1..Sigma_6 identical".into() } else { bad.join("; ") }))
}

fn kerov_c_table() -> Result<(Status, String)> {
    let mut bad = Vec::new();
    for (i, text) in KEROV_C_TABLE.iter().enumerate() {
        let k = i + 3;
        let e = c_expansion(k)?;
        let rest = e.without_top();
        let expected = parse_poly_text(text, rest.vars(), rest.vars().names())?;
        if rest != expected {
            bad.push(format!("Sigma_{k} - R{} = {rest}", k + 1));
        }
    }
    Ok(pass_if(bad.is_empty(), if bad.is_empty() { "k = 3..8 identical, round trip exact".into() } else { bad.join("; ") }))
}

fn c_definition() -> Result<(Status, String)> {
    let v = r_vars(6);
    let ok = c_monomial(0, 6)? == MultiPoly::one(&v)
        && c_monomial(1, 6)?.is_zero()
        && c_monomial(2, 6)? == MultiPoly::var(&v, 0)
        && c_monomial(4, 6)? == &MultiPoly::var(&v, 2).scale_int(3) + &MultiPoly::var(&v, 0).pow(2);
    Ok(pass_if(ok, "C_0 = 1, C_1 = 0, C_2 = R2, C_4 = 3 R4 + R2^2"))
}

fn kerov_positivity() -> Result<(Status, String)> {
    let mut bad = Vec::new();
    for k in 1..=8 {
        let p = positivity_check(k)?;
        if k <= 6 && !p.r_basis.positive {
            bad.push(format!("Sigma_{k} not R-positive"));
        }
        if !p.c_basis.positive {
            bad.push(format!("Sigma_{k} not C-positive"));
        }
        if !p.c_monomials_r_positive || !p.implication_holds {
            bad.push(format!("C-positivity does not give R-positivity at k = {k}"));
        }
    }
    Ok(pass_if(bad.is_empty(), if bad.is_empty() { "R-positive k <= 6, C-positive k <= 8".into() } else { bad.join("; ") }))
}

fn top_weight_term() -> Result<(Status, String)> {
    for k in 1..=9 {
        let e = kerov_polynomial(k)?;
        if graded_component(&e, 0)? != MultiPoly::var(e.body.vars(), k - 1) {
            return Ok((Status::Fail, format!("Sigma_({k},0) is not R{}", k + 1)));
        }
    }
    Ok((Status::Pass, "Sigma_(k,0) = R_(k+1) for k <= 9".into()))
}

fn weight_k_minus_one() -> Result<(Status, String)> {
    for k in 3..=9 {
        let e = kerov_polynomial(k)?;
        if graded_component(&e, 1)? != sigma_k2_closed_form(k)? {
            return Ok((Status::Fail, format!("Sigma_({k},2) differs from the closed form")));
        }
    }
    Ok((Status::Pass, "Sigma_(k,2) = binomial(k+1,3)/4 C_(k-1) for 3 <= k <= 9".into()))
}

fn weight_k_minus_three() -> Result<(Status, String)> {
    for k in 3..=9 {
        let c = c_expansion(k)?;
        if !graded_component(&c, 2)?.is_positive() && !graded_component(&c, 2)?.is_zero() {
            return Ok((Status::Fail, format!("Sigma_({k},4) is not C-positive")));
        }
    }
    Ok((Status::Pass, "Sigma_(k,4) C-positive for k <= 9".into()))
}

fn stanley_table() -> Result<(Status, String)> {
    let (ring, names) = two_rect_names();
    let mut bad = Vec::new();
    for (i, text) in STANLEY_TABLE.iter().enumerate() {
        let k = i + 1;
        let expected = parse_poly_text(text, ring.vars(), &names)?;
        let got = negate_q(&ring, &stanley_polynomial(k, 2)?, k);
        if got != expected {
            bad.push(format!("k = {k}: {}", ring.to_text(&got)));
        }
    }
    Ok(pass_if(bad.is_empty(), if bad.is_empty() { "k = 1..4 monomial for monomial".into() } else { bad.join("; ") }))
}

fn small_examples() -> Result<(Status, String)> {
    let (ring, names) = two_rect_names();
    let f1 = stanley_polynomial(1, 2)?;
    let f2 = stanley_polynomial(2, 2)?;
    let listed_f1 = parse_poly_text(STANLEY_QUOTED_F1, ring.vars(), &names)?;
    let listed_f2 = parse_poly_text(STANLEY_QUOTED_F2, ring.vars(), &names)?;
    if f2 != listed_f2 {
        return Ok((Status::Fail, format!("F_2 = {}", ring.to_text(&f2))));
    }
    if f1 == -&listed_f1 {
        Ok((
            Status::Finding,
            format!(
                "F_2 matches; F_1 is listed as {STANLEY_QUOTED_F1} but equals {} (sign erratum: chi_hat(1^n) = n)",
                ring.to_text(&f1)
            ),
        ))
    } else {
        Ok(pass_if(f1 == listed_f1, format!("F_1 = {}", ring.to_text(&f1))))
    }
}

fn evaluation_theorem() -> Result<(Status, String)> {
    let mut sign_only = 0usize;
    let mut total = 0usize;
    for m in 1..=3 {
        let point: Vec<BigRational> =
            (0..2 * m).map(|i| BigRational::from_integer(BigInt::from(if i % 2 == 0 { 1 } else { -1 }))).collect();
        for k in 1..=6 {
            let v = stanley_polynomial(k, m)?.evaluate(&point)?;
            let want = BigRational::from_integer(falling_factorial_int((k + m - 1) as i64, k));
            total += 1;
            if v == want {
                continue;
            }
            if v == -&want {
                sign_only += 1;
                continue;
            }
            return Ok((Status::Fail, format!("k = {k}, m = {m}: {v} instead of {want}")));
        }
    }
    if sign_only == 0 {
        Ok((Status::Pass, "F_k(1..1; -1..-1) = (k+m-1)_k for k <= 6, m <= 3".into()))
    } else {
        Ok((
            Status::Finding,
            format!(
                "F_k(1..1; -1..-1) = (-1)^k (k+m-1)_k for k <= 6, m <= 3; the unsigned form holds in {} of {total} cases \
                 (odd k carries the sign, since F_1 = p_1 q_1 + .. + p_m q_m)",
                total - sign_only
            ),
        ))
    }
}

fn rectangular_theorem() -> Result<(Status, String)> {
    for k in 1..=5 {
        for mu in Partition::all(k) {
            let poly = factorization_polynomial(&mu)?;
            for p in 1..=4usize {
                for q in 1..=4usize {
                    let omega = MultiRect::rectangle(p, q)?.expand();
                    let v = poly.evaluate(&[BigRational::from_integer(p.into()), BigRational::from_integer(q.into())])?;
                    let want = if p * q >= k { normalized_character_class(&omega, &mu)? } else { BigRational::zero() };
                    if v != want {
                        return Ok((Status::Fail, format!("mu = {mu} on {p}x{q}: {v} vs {want}")));
                    }
                }
            }
        }
    }
    Ok((Status::Pass, "all mu |- k <= 5 on all rectangles p, q <= 4".into()))
}

fn p_sharp_identity() -> Result<(Status, String)> {
    let mut checked = 0usize;
    for n in 1..=8 {
        for lambda in Partition::all(n) {
            for k in 1..=n {
                for (mu, v) in p_sharp_all(&lambda, k)? {
                    if v != normalized_character_class(&lambda, &mu)? {
                        return Ok((Status::Fail, format!("p#_{mu}({lambda}) = {v}")));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok((Status::Pass, format!("{checked} pairs, |lambda| <= 8")))
}

fn rectangle_proof_chain() -> Result<(Status, String)> {
    for k in 1..=5 {
        for mu in Partition::all(k) {
            let poly = factorization_polynomial(&mu)?;
            for p in 1..=4i64 {
                for q in 1..=4i64 {
                    let v = p_sharp_rect(&mu, p, q)?;
                    let want = poly.evaluate(&[BigRational::from_integer(p.into()), BigRational::from_integer(q.into())])?;
                    if v != want {
                        return Ok((Status::Fail, format!("mu = {mu} on {p}x{q}")));
                    }
                }
            }
        }
    }
    Ok((Status::Pass, "shift Schur route gives the factorization polynomial, k <= 5".into()))
}

fn g_equals_r() -> Result<(Status, String)> {
    for m in 1..=3 {
        if let Err(i) = verify_g_equals_r(&ShapeRing::new(m)?, 8)? {
            return Ok((Status::Fail, format!("m = {m}: coefficient of z^{i} differs")));
        }
    }
    Ok((Status::Pass, "R(z) = G(z) - (p_1 + .. + p_m) z to order 8, m <= 3".into()))
}

fn product_formula() -> Result<(Status, String)> {
    for m in 1..=3 {
        let ring = ShapeRing::new(m)?;
        let a = phi_negated_product(&ring, 10)?;
        if a != phi_negated_by_substitution(&ring, 10)? {
            return Ok((Status::Fail, format!("m = {m}: product differs")));
        }
        if !a.coeffs().iter().all(|c| c.is_zero() || c.is_positive()) {
            return Ok((Status::Fail, format!("m = {m}: negative coefficient")));
        }
    }
    Ok((Status::Pass, "product form equal and coefficient-positive to order 10, m <= 3".into()))
}

fn degree_k_minus_one_terms() -> Result<(Status, String)> {
    let (ring, names) = two_rect_names();
    let t3 = negate_q(&ring, &degree_km1_terms(&ring, 3)?, 3);
    let t4 = negate_q(&ring, &degree_km1_terms(&ring, 4)?, 4);
    let ok3 = t3 == parse_poly_text("a b + p q", ring.vars(), &names)?;
    let ok4 = t4 == parse_poly_text("5 a^2 b + 5 a b^2 + 10 a p q + 5 p^2 q + 5 p q^2", ring.vars(), &names)?;
    for k in 3..=8 {
        let f = stanley_polynomial(k, 2)?;
        if degree_km1_terms(&ring, k)? != f.component(&Grading::Total, (k - 1) as u32) {
            return Ok((Status::Fail, format!("k = {k}: closed form differs from F_k")));
        }
    }
    Ok(pass_if(ok3 && ok4, "closed form equals degree k-1 slice for 3 <= k <= 8, m = 2"))
}

fn positivity_range() -> Result<(Status, String)> {
    let mut bad = Vec::new();
    for (k_max, m) in [(8, 1), (8, 2), (6, 3)] {
        for row in positivity_report(k_max, m)? {
            if !row.full.positive {
                bad.push(format!("k = {}, m = {m}", row.k));
            }
            for d in &row.by_degree {
                if !d.positivity.positive {
                    bad.push(format!("k = {}, m = {m}, degree {}", row.k, d.degree));
                }
            }
        }
    }
    Ok(pass_if(
        bad.is_empty(),
        if bad.is_empty() { "(-1)^k F_k(p; -q) positive for k <= 8 (m <= 2), k <= 6 (m = 3)".into() } else { bad.join("; ") },
    ))
}

fn c_positivity_argument() -> Result<(Status, String)> {
    let mut uncertified = Vec::new();
    for row in positivity_report(8, 2)? {
        if !row.c_factors_positive {
            return Ok((Status::Fail, format!("(-1)^(j-1) C_j(p; -q) not positive below k = {}", row.k)));
        }
        for t in row.uncertified() {
            let factors: Vec<String> = t.factors.iter().map(|i| format!("C{i}")).collect();
            uncertified.push(format!("k = {}: {} {}", row.k, t.gamma, factors.join(" ")));
        }
    }
    if uncertified.is_empty() {
        Ok((Status::Pass, "every C term has an odd number of factors".into()))
    } else {
        Ok((
            Status::Finding,
            format!(
                "terms with an even number of C factors enter with the opposite sign and are not covered: {}",
                uncertified.join("; ")
            ),
        ))
    }
}

fn elizalde_display() -> Result<(Status, String)> {
    let rows = elizalde_report(5, 2)?;
    let summary = |variant: ElizaldeVariant, target: ElizaldeTarget| -> String {
        let cells: Vec<&crate::stanley::ElizaldeRow> =
            rows.iter().filter(|r| r.variant == variant && r.target == target).collect();
        let matched = cells.iter().filter(|r| r.matches).count();
        format!("{variant:?} vs {target:?}: {matched}/{} k match", cells.len())
    };
    let lines = [
        summary(ElizaldeVariant::AsPrinted, ElizaldeTarget::PlainQ),
        summary(ElizaldeVariant::AsPrinted, ElizaldeTarget::NegatedQ),
        summary(ElizaldeVariant::Corrected, ElizaldeTarget::PlainQ),
        summary(ElizaldeVariant::Corrected, ElizaldeTarget::NegatedQ),
    ];
    Ok((Status::Finding, lines.join("; ")))
}

/// The suite in display order.
pub const REFERENCE_SUITE: [(&str, Check); 19] = [
    ("Kerov polynomials Sigma_1..Sigma_6 in free cumulants", kerov_r_table),
    ("Kerov polynomials Sigma_3..Sigma_8 in the C basis", kerov_c_table),
    ("C_m from 1/(1 - sum (i-1) R_i t^i)", c_definition),
    ("Positive coefficients in the R and C expansions", kerov_positivity),
    ("Single term of top weight in Sigma_k", top_weight_term),
    ("Weight k-1 terms of Sigma_k as a multiple of C_(k-1)", weight_k_minus_one),
    ("Weight k-3 terms of Sigma_k are C-positive", weight_k_minus_three),
    ("Stanley polynomials for two rectangles, k = 1..4", stanley_table),
    ("Small examples F_1, F_2 for two rectangles", small_examples),
    ("Evaluation at p_i = 1, q_i = -1", evaluation_theorem),
    ("Rectangular shapes via connection coefficients", rectangular_theorem),
    ("p-sharp functions give normalized characters", p_sharp_identity),
    ("Shift Schur evaluation on rectangles reproves the rectangular formula", rectangle_proof_chain),
    ("R-series and G-series differ by the linear term", g_equals_r),
    ("Product form of phi with q negated", product_formula),
    ("Degree k-1 terms of F_k", degree_k_minus_one_terms),
    ("Positivity of (-1)^k F_k(p; -q) by degree", positivity_range),
    ("C-positivity implies p,q-positivity argument", c_positivity_argument),
    ("Elizalde formula for the top-degree terms", elizalde_display),
];

/// Runs every item (in parallel on the current rayon pool) and returns results in suite order.
pub fn run_reference_suite() -> Vec<ItemResult> {
    REFERENCE_SUITE
        .par_iter()
        .enumerate()
        .map(|(index, (anchor, check))| {
            let (status, detail) = match check() {
                Ok(r) => r,
                Err(e) => (Status::Fail, format!("error: {e}")),
            };
            ItemResult { index: index + 1, anchor, status, detail }
        })
        .collect()
}
