//! Derivative counts Δ_F(1, b) and the differential spectrum of x^d.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Checks 1 ≤ d ≤ p^n - 1. The top value only arises as the Niho exponent
/// with s = 2 over F_4, where x^d is constant on F*.
pub fn check_exponent(f: &Field, d: u64) -> Result<()> {
    let limit = f.group_order();
    if d == 0 || d > limit {
        Err(Error::BadExponent { d, limit })
    } else {
        Ok(())
    }
}

/// Δ_F(1, b) for every b, indexed by the representation of b.
pub fn delta_counts(f: &Field, d: u64) -> Result<Vec<u32>> {
    check_exponent(f, d)?;
    let powers = f.power_table(d);
    let mut counts = vec![0u32; f.size()];
    for x in f.elements() {
        let x1 = f.add(x, Elem::ONE);
        let b = f.sub(powers[x1.rep()], powers[x.rep()]);
        counts[b.rep()] += 1;
    }
    Ok(counts)
}

/// Full DDT entry Δ_F(a, b) recovered from the a = 1 row by scaling.
pub fn ddt_entry(f: &Field, d: u64, row: &[u32], a: Elem, b: Elem) -> u32 {
    if a.is_zero() {
        return if b.is_zero() { f.order() } else { 0 };
    }
    let scaled = f.div(b, f.pow(a, d));
    row[scaled.rep()]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferentialSpectrum {
    pub d: u64,
    /// i ↦ ω_i, only for ω_i > 0.
    pub counts: BTreeMap<u64, u64>,
    pub uniformity: u64,
    pub locally_apn: bool,
    /// max Δ_F(1, b) over b outside F_p.
    pub max_outside_prime_field: u64,
}

impl DifferentialSpectrum {
    pub fn omega(&self, i: u64) -> u64 {
        self.counts.get(&i).copied().unwrap_or(0)
    }

    /// Σ i^k ω_i.
    pub fn power_sum(&self, k: u32) -> u128 {
        self.counts
            .iter()
            .map(|(&i, &w)| (i as u128).pow(k) * w as u128)
            .sum()
    }
}

pub fn differential_spectrum(f: &Field, d: u64) -> Result<DifferentialSpectrum> {
    let row = delta_counts(f, d)?;
    Ok(spectrum_from_row(f, d, &row))
}

pub fn spectrum_from_row(f: &Field, d: u64, row: &[u32]) -> DifferentialSpectrum {
    let mut counts = BTreeMap::new();
    for &c in row {
        *counts.entry(c as u64).or_insert(0) += 1;
    }
    let uniformity = row.iter().copied().max().unwrap_or(0) as u64;
    let max_outside_prime_field = f
        .elements()
        .filter(|&b| !f.in_prime_field(b))
        .map(|b| row[b.rep()] as u64)
        .max()
        .unwrap_or(0);
    DifferentialSpectrum {
        d,
        counts,
        uniformity,
        locally_apn: max_outside_prime_field == 2,
        max_outside_prime_field,
    }
}

/// Checks Σ i^2 ω_i = (M - p^{2n}) / (p^n - 1), where M counts solutions of
/// x1 - x2 + x3 - x4 = 0, x1^d - x2^d + x3^d - x4^d = 0.
pub fn second_moment_check(
    f: &Field,
    spectrum: &DifferentialSpectrum,
    m_count: u64,
) -> Result<bool> {
    let q = f.order() as i128;
    let numerator = m_count as i128 - q * q;
    let denominator = q - 1;
    if numerator % denominator != 0 {
        return Err(Error::NonIntegralRatio {
            numerator,
            denominator,
        });
    }
    Ok(spectrum.power_sum(2) as i128 == numerator / denominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Options;
    use crate::field::build_field;
    use crate::walsh::count_m;

    fn spectrum_of(p: u32, m: u32, d: u64) -> BTreeMap<u64, u64> {
        differential_spectrum(&build_field(p, m).unwrap(), d)
            .unwrap()
            .counts
    }

    #[test]
    fn linear_map_row() {
        let f = build_field(2, 2).unwrap();
        let row = delta_counts(&f, 1).unwrap();
        assert_eq!(row[1], 16);
        assert_eq!(row.iter().sum::<u32>(), 16);
        assert_eq!(spectrum_of(2, 2, 1), BTreeMap::from([(0, 15), (16, 1)]));
    }

    #[test]
    fn row_for_d7_on_f16() {
        let f = build_field(2, 2).unwrap();
        let row = delta_counts(&f, 7).unwrap();
        // Independent count straight from the definition.
        let ones = f
            .elements()
            .filter(|&x| f.add(f.pow(f.add(x, Elem::ONE), 7), f.pow(x, 7)) == Elem::ONE)
            .count();
        assert_eq!(ones, 4);
        assert_eq!(row[1], 4);
        for b in f.elements().filter(|&b| !f.in_prime_field(b)) {
            assert!(row[b.rep()] == 0 || row[b.rep()] == 2);
        }
    }

    #[test]
    fn locally_apn_spectra() {
        assert_eq!(
            spectrum_of(2, 2, 7),
            BTreeMap::from([(0, 9), (2, 6), (4, 1)])
        );
        assert_eq!(
            spectrum_of(3, 2, 17),
            BTreeMap::from([(0, 44), (2, 36), (9, 1)])
        );
        assert_eq!(
            spectrum_of(3, 1, 5),
            BTreeMap::from([(0, 5), (2, 3), (3, 1)])
        );
    }

    #[test]
    fn locally_apn_requires_exactly_two() {
        let f = build_field(2, 2).unwrap();
        let lin = differential_spectrum(&f, 1).unwrap();
        assert_eq!(lin.max_outside_prime_field, 0);
        assert!(!lin.locally_apn);
        assert!(differential_spectrum(&f, 7).unwrap().locally_apn);
    }

    #[test]
    fn bad_exponents() {
        let f = build_field(2, 2).unwrap();
        assert!(matches!(
            delta_counts(&f, 0),
            Err(Error::BadExponent { .. })
        ));
        assert!(matches!(
            delta_counts(&f, 16),
            Err(Error::BadExponent { .. })
        ));
        assert!(delta_counts(&f, 15).is_ok());
    }

    #[test]
    fn ddt_view_matches_direct_count() {
        let f = build_field(3, 1).unwrap();
        let d = 5;
        let row = delta_counts(&f, d).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let direct = f
                    .elements()
                    .filter(|&x| f.sub(f.pow(f.add(x, a), d), f.pow(x, d)) == b)
                    .count() as u32;
                assert_eq!(ddt_entry(&f, d, &row, a, b), direct);
            }
        }
    }

    #[test]
    fn row_sums_and_pairing() {
        for (p, m) in [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
            let f = build_field(p, m).unwrap();
            let pm = f.subfield_order();
            let half = if p == 2 { None } else { f.inv(f.from_int(2)) };
            for s in 0..=pm {
                let d = (s * (pm - 1) + 1) % f.group_order();
                let row = delta_counts(&f, d).unwrap();
                assert_eq!(row.iter().map(|&c| c as u64).sum::<u64>(), f.order() as u64);
                let spectrum = spectrum_from_row(&f, d, &row);
                assert_eq!(spectrum.counts.values().sum::<u64>(), f.order() as u64);
                assert_eq!(spectrum.power_sum(1), f.order() as u128);
                // x ↦ -1 - x permutes each solution set; only its fixed point
                // -1/2 can make a count odd.
                let fixed_b = half.map(|h| {
                    let x = f.neg(h);
                    f.sub(f.pow(f.add(x, Elem::ONE), d), f.pow(x, d))
                });
                for b in f.elements() {
                    if row[b.rep()] % 2 == 1 {
                        assert_eq!(Some(b), fixed_b, "odd count at b={b:?} for d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn second_moment_examples() {
        let f16 = build_field(2, 2).unwrap();
        let s = differential_spectrum(&f16, 7).unwrap();
        assert_eq!(s.power_sum(2), 40);
        assert_eq!(second_moment_check(&f16, &s, 856), Ok(true));
        assert_eq!(second_moment_check(&f16, &s, 871), Ok(false));
        assert!(matches!(
            second_moment_check(&f16, &s, 857),
            Err(Error::NonIntegralRatio { .. })
        ));

        let f9 = build_field(3, 1).unwrap();
        let s = differential_spectrum(&f9, 5).unwrap();
        assert_eq!(s.power_sum(2), 21);
        let m = count_m(&f9, 5, &Options::default()).unwrap();
        assert_eq!(m, 21 * 8 + 81);
        assert_eq!(second_moment_check(&f9, &s, m), Ok(true));
    }
}
