//! Brute-force counterparts of the counting lemmas behind the Niho results:
//! the classes C_{i,j}, the system on μ_{p^m+1} that evaluates Walsh sums,
//! and rational points on diagonal curves.

use serde::Serialize;

use super::{gcd, NihoExponent};
use crate::cyclotomic::CyclotomicInteger;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

fn check_matches(f: &Field, e: &NihoExponent) -> Result<()> {
    if f.p() != e.p || f.m() != e.m {
        return Err(Error::FieldMismatch {
            field_p: f.p(),
            field_m: f.m(),
            exp_p: e.p,
            exp_m: e.m,
        });
    }
    Ok(())
}

/// All |C_{i,j}| at once: entry [i][j] counts x ∉ {0, -1} with
/// ind(x + 1) ≡ i and ind(x) ≡ j mod p^m + 1.
pub fn cij_matrix(f: &Field) -> Vec<Vec<u64>> {
    let k = f.subfield_order() + 1;
    let mut out = vec![vec![0u64; k as usize]; k as usize];
    let minus_one = f.neg(Elem::ONE);
    for x in f.nonzero().filter(|&x| x != minus_one) {
        let i = f.log_unchecked(f.add(x, Elem::ONE)) % k;
        let j = f.log_unchecked(x) % k;
        out[i as usize][j as usize] += 1;
    }
    out
}

/// |C_{i,j}| by enumeration.
pub fn cij_count(f: &Field, e: &NihoExponent, i: u64, j: u64) -> Result<u64> {
    check_matches(f, e)?;
    let max = f.subfield_order();
    if i > max || j > max {
        return Err(Error::IndexRange { i, j, max });
    }
    Ok(cij_matrix(f)[i as usize][j as usize])
}

/// Closed form: p^m - 2 for i = j = 0, 1 for i ≠ j with ij ≠ 0, else 0.
pub fn cij_predicted(pm: u64, i: u64, j: u64) -> u64 {
    if i == 0 && j == 0 {
        pm - 2
    } else if i != j && i != 0 && j != 0 {
        1
    } else {
        0
    }
}

/// Number of z ∈ μ_{p^m+1} with
/// v̄ z^{2g1-1} + ū z^{g1+g2-1} + u z^{g1-g2} + v = 0.
pub fn count_v(f: &Field, g1: i64, g2: i64, u: Elem, v: Elem) -> u64 {
    let pm = f.subfield_order();
    let k = (pm + 1) as i64;
    let alpha = f.psi_pow((pm - 1) as i64);
    let e1 = (2 * g1 - 1).rem_euclid(k) as u64;
    let e2 = (g1 + g2 - 1).rem_euclid(k) as u64;
    let e3 = (g1 - g2).rem_euclid(k) as u64;
    let (ub, vb) = (f.conj(u), f.conj(v));
    (0..pm + 1)
        .map(|i| f.pow(alpha, i))
        .filter(|&z| {
            let t = f.add(f.mul(vb, f.pow(z, e1)), f.mul(ub, f.pow(z, e2)));
            f.add(f.add(t, f.mul(u, f.pow(z, e3))), v).is_zero()
        })
        .count() as u64
}

/// Σ_x ζ^{Tr(a x^{d1} + b x^{d2})} with d_i = g_i(p^m - 1) + 1.
pub fn niho_pair_sum(f: &Field, g1: i64, g2: i64, a: Elem, b: Elem) -> CyclotomicInteger {
    let pm = f.subfield_order() as i64;
    let g = f.group_order() as i64;
    let exponent = |gi: i64| match (gi * (pm - 1) + 1).rem_euclid(g) {
        0 => g as u64,
        d => d as u64,
    };
    let (d1, d2) = (exponent(g1), exponent(g2));
    let mut counts = vec![0i128; f.p() as usize];
    for x in f.elements() {
        let arg = f.add(f.mul(a, f.pow(x, d1)), f.mul(b, f.pow(x, d2)));
        counts[f.trace(arg) as usize] += 1;
    }
    CyclotomicInteger::from_power_counts(f.p(), &counts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveCase {
    I,
    Ii,
    Iii,
    Iv,
    V,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub n1: u64,
    pub n2: u64,
    /// Smallest l | m with lcm(n1, n2) | p^l + 1.
    pub l: u32,
    pub k: u32,
    pub t: u64,
    pub r1: u64,
    pub r2: u64,
    /// `None` when (r1, r2, t) falls outside the five cases.
    pub case: Option<CurveCase>,
    pub predicted: Option<u64>,
    pub measured: u64,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

fn curve_parameters(f: &Field, n1: u64, n2: u64) -> Result<(u32, u32, u64)> {
    let t = gcd(n1, n2);
    if n1 == 0 || n2 == 0 {
        return Err(Error::HypothesisViolated { n1, n2 });
    }
    let lcm = n1 / t * n2;
    let m = f.m();
    (1..=m)
        .filter(|l| m.is_multiple_of(*l))
        .find(|&l| ((f.p() as u64).pow(l) + 1) % lcm == 0)
        .map(|l| (l, m / l, t))
        .ok_or(Error::HypothesisViolated { n1, n2 })
}

/// Case label and closed-form count for αx^{n1} + βy^{n2} + 1 = 0, where
/// r1 = ind(α) mod n1 and r2 = ind(β) mod n2.
pub fn predicted_curve_points(
    f: &Field,
    n1: u64,
    n2: u64,
    alpha: Elem,
    beta: Elem,
) -> Result<(Option<CurveCase>, Option<u64>)> {
    let (_, k, t) = curve_parameters(f, n1, n2)?;
    let r1 = f.discrete_log(alpha)? % n1;
    let r2 = f.discrete_log(beta)? % n2;
    let q = f.order() as i128;
    let pm = f.subfield_order() as i128;
    let sign = |e: u32| if e.is_multiple_of(2) { 1i128 } else { -1 };
    let (n1i, n2i, ti) = (n1 as i128, n2 as i128, t as i128);
    let (case, value) = match (r1, r2) {
        (0, 0) => (
            CurveCase::I,
            q + sign(k - 1) * ((n1i - 1) * (n2i - 1) + 1 - ti) * pm - ti + 1,
        ),
        (0, _) if !r2.is_multiple_of(t) => (CurveCase::Ii, q + sign(k) * (n1i - 2) * pm + 1),
        (_, 0) if !r1.is_multiple_of(t) => (CurveCase::Iii, q + sign(k) * (n2i - 2) * pm + 1),
        (0, _) | (_, 0) => return Ok((None, None)),
        _ if (r1 as i128 - r2 as i128) % ti != 0 => (CurveCase::Iv, q + sign(k - 1) * 2 * pm + 1),
        _ => (CurveCase::V, q + sign(k) * (ti - 2) * pm - ti + 1),
    };
    Ok((Some(case), Some(value as u64)))
}

/// Counts points by histogramming y^{n2} and summing over x.
pub fn curve_points(f: &Field, n1: u64, n2: u64, alpha: Elem, beta: Elem) -> Result<CurveReport> {
    let (l, k, t) = curve_parameters(f, n1, n2)?;
    let (case, predicted) = predicted_curve_points(f, n1, n2, alpha, beta)?;
    let mut preimages = vec![0u64; f.size()];
    for y in f.elements() {
        preimages[f.pow(y, n2).rep()] += 1;
    }
    let neg_inv_beta = f.neg(f.inv(beta).ok_or(Error::ZeroElement)?);
    let measured = f
        .elements()
        .map(|x| {
            let rhs = f.mul(neg_inv_beta, f.add(f.mul(alpha, f.pow(x, n1)), Elem::ONE));
            preimages[rhs.rep()]
        })
        .sum();
    Ok(CurveReport {
        n1,
        n2,
        l,
        k,
        t,
        r1: f.log_unchecked(alpha) % n1,
        r2: f.log_unchecked(beta) % n2,
        case,
        predicted,
        measured,
        matches: predicted.map(|v| v == measured),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use crate::niho::make_niho;

    #[test]
    fn cij_examples() {
        let f = build_field(2, 2).unwrap();
        let e = make_niho(2, 2, 2);
        assert_eq!(cij_count(&f, &e, 0, 0), Ok(2));
        assert_eq!(cij_count(&f, &e, 1, 2), Ok(1));
        assert_eq!(cij_count(&f, &e, 3, 3), Ok(0));
        assert!(matches!(
            cij_count(&f, &e, 5, 0),
            Err(Error::IndexRange { .. })
        ));
        let other = make_niho(3, 1, 2);
        assert!(matches!(
            cij_count(&f, &other, 0, 0),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn cij_matches_closed_form() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
            let f = build_field(p, m).unwrap();
            let pm = f.subfield_order();
            let table = cij_matrix(&f);
            let mut total = 0;
            for (i, row) in table.iter().enumerate() {
                for (j, &c) in row.iter().enumerate() {
                    assert_eq!(
                        c,
                        cij_predicted(pm, i as u64, j as u64),
                        "p={p} m={m} ({i},{j})"
                    );
                    total += c;
                }
            }
            assert_eq!(total, f.order() as u64 - 2);
        }
    }

    #[test]
    fn v_system_examples() {
        let f = build_field(2, 2).unwrap();
        assert_eq!(count_v(&f, 2, 1, Elem::ZERO, Elem::ZERO), 5);
        assert_eq!(count_v(&f, 2, 1, Elem::ONE, Elem::ONE), 1);
    }

    #[test]
    fn pair_sum_identity() {
        // Σ_x ζ^{Tr(v x^{d1} + u x^{d2})} = (V(u, v) - 1) p^m.
        for (p, m) in [(2, 2), (3, 1), (5, 1)] {
            let f = build_field(p, m).unwrap();
            let pm = f.subfield_order() as i128;
            for (g1, g2) in [(2, 0), (2, 1), (3, 0), (0, 1), (4, 2)] {
                for u in f.elements() {
                    for v in f.elements() {
                        let lhs = niho_pair_sum(&f, g1, g2, v, u);
                        let vv = count_v(&f, g1, g2, u, v) as i128;
                        assert_eq!(lhs.as_integer(), Some((vv - 1) * pm), "p={p} g=({g1},{g2})");
                    }
                }
            }
        }
    }

    #[test]
    fn curve_examples() {
        let f = build_field(2, 2).unwrap();
        let r = curve_points(&f, 5, 5, Elem::ONE, Elem::ONE).unwrap();
        assert_eq!(
            (r.case, r.measured, r.predicted),
            (Some(CurveCase::I), 60, Some(60))
        );
        let r = curve_points(&f, 5, 5, f.psi_pow(1), f.psi_pow(2)).unwrap();
        assert_eq!(
            (r.case, r.measured, r.predicted),
            (Some(CurveCase::Iv), 25, Some(25))
        );
        let r = curve_points(&f, 1, 1, f.psi_pow(4), f.psi_pow(7)).unwrap();
        assert_eq!(r.measured, 16);
        assert_eq!(r.predicted, Some(16));
        assert!(matches!(
            curve_points(&f, 3, 5, Elem::ONE, Elem::ONE),
            Err(Error::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn curve_cases_all_agree() {
        let mut seen = std::collections::BTreeSet::new();
        for (p, m, ns) in [
            (2, 2, vec![1u64, 5]),
            (3, 2, vec![1, 2, 5, 10]),
            (2, 3, vec![1, 3, 9]),
            (3, 1, vec![1, 2, 4]),
        ] {
            let f = build_field(p, m).unwrap();
            for &n1 in &ns {
                for &n2 in &ns {
                    for a in 0..n1 as i64 {
                        for b in 0..n2 as i64 {
                            let r = curve_points(&f, n1, n2, f.psi_pow(a), f.psi_pow(b)).unwrap();
                            if let Some(c) = r.case {
                                seen.insert(c);
                                assert_eq!(r.matches, Some(true), "p={p} m={m} {r:?}");
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(seen.len(), 5);
    }
}
