//! Weights of the cyclic code C_{1,d} with codewords
//! c_{u,v} = (Tr(u ψ^{id} + v ψ^i))_{0 ≤ i < p^n - 1}.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cyclotomic::CyclotomicInteger;
use crate::diff::check_exponent;
use crate::error::Result;
use crate::exec::{fold_range, Options};
use crate::field::{Elem, Field};
use crate::walsh::{for_each_row_counts, WalshDistribution};

/// Hamming weight of c_{u,v} by counting zero coordinates.
pub fn codeword_weight(f: &Field, d: u64, u: Elem, v: Elem) -> Result<u64> {
    check_exponent(f, d)?;
    let g = f.group_order();
    let zeros = (0..g)
        .filter(|&i| {
            let x = f.psi_pow(i as i64);
            f.trace(f.add(f.mul(u, f.pow(x, d)), f.mul(v, x))) == 0
        })
        .count() as u64;
    Ok(g - zeros)
}

/// p^{n-1}(p - 1) - (p - 1) W / p, or `None` if W is not rational.
pub fn weight_from_walsh(f: &Field, w: &CyclotomicInteger) -> Option<u64> {
    let p = f.p() as i128;
    let q = f.order() as i128;
    let w = w.as_integer()?;
    Some((q / p * (p - 1) - (p - 1) * w / p) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    pub d: u64,
    pub length: u64,
    /// Weight → number of pairs (u, v) ∈ F².
    pub weights: BTreeMap<u64, u64>,
    /// Number of pairs giving the zero word.
    pub kernel: u64,
    pub distinct_codewords: u64,
    /// log_p of the number of distinct codewords.
    pub dimension: u32,
}

impl WeightDistribution {
    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.weights.keys().copied().filter(|&w| w > 0).collect()
    }
}

/// Weight histogram over the whole (u, v) grid by direct zero counting.
///
/// Coordinates are indexed by i = ind(x), so Tr(v ψ^i) for v = ψ^k is a
/// shifted read of one trace sequence.
pub fn weight_distribution(f: &Field, d: u64, opts: &Options) -> Result<WeightDistribution> {
    check_exponent(f, d)?;
    let q = f.order() as u64;
    let g = f.group_order() as usize;
    opts.charge((q as u128).pow(3))?;
    let tr = f.trace_table();
    let p = f.p() as u8;
    let mut shifted: Vec<u8> = (0..g).map(|t| tr[f.psi_pow(t as i64).rep()]).collect();
    shifted.extend_from_within(..);

    let weights = fold_range(
        opts.exec,
        f.size(),
        BTreeMap::<u64, u64>::new,
        |mut acc, ui| {
            let u = Elem(ui as u32);
            let row: Vec<u8> = (0..g)
                .map(|i| tr[f.mul(u, f.pow(f.psi_pow(i as i64), d)).rep()])
                .collect();
            let zeros_v0 = row.iter().filter(|&&a| a == 0).count();
            *acc.entry((g - zeros_v0) as u64).or_insert(0) += 1;
            for k in 0..g {
                let zeros = row
                    .iter()
                    .zip(&shifted[k..k + g])
                    .filter(|(&a, &b)| (a + b) % p == 0)
                    .count();
                *acc.entry((g - zeros) as u64).or_insert(0) += 1;
            }
            acc
        },
        |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        },
    );

    let kernel = weights.get(&0).copied().unwrap_or(0);
    let distinct_codewords = q * q / kernel;
    let mut dimension = 0;
    let mut rest = distinct_codewords;
    while rest > 1 {
        rest /= f.p() as u64;
        dimension += 1;
    }
    Ok(WeightDistribution {
        d,
        length: g as u64,
        weights,
        kernel,
        distinct_codewords,
        dimension,
    })
}

/// Weight histogram implied by a Walsh distribution plus the u = 0 row, or
/// `None` if some Walsh value is not rational.
pub fn weights_from_walsh(f: &Field, dist: &WalshDistribution) -> Option<BTreeMap<u64, u64>> {
    let mut out = BTreeMap::new();
    for (w, &c) in dist.entries.iter().chain(&dist.zero_row) {
        *out.entry(weight_from_walsh(f, w)?).or_insert(0) += c;
    }
    Some(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalshWeightCheck {
    pub pairs: u64,
    /// Pairs whose Walsh value W(u, -v) is rational.
    pub rational: u64,
    pub mismatches: u64,
}

/// Compares the direct weight of every c_{u,v} with the Walsh formula
/// wherever W(u, -v) is rational.
pub fn walsh_weight_check(f: &Field, d: u64, opts: &Options) -> Result<WalshWeightCheck> {
    check_exponent(f, d)?;
    opts.charge((f.order() as u128).pow(3) * 2)?;
    let (rational, mismatches) = fold_range(
        opts.exec,
        f.size(),
        || (0u64, 0u64),
        |(mut rational, mut mismatches), ui| {
            let u = Elem(ui as u32);
            // Direct weights for this u, indexed by v.
            let direct: Vec<u64> = f.elements().map(|v| direct_weight(f, d, u, v)).collect();
            for_each_row_counts(f, d, u, |v, counts| {
                let w = CyclotomicInteger::from_power_counts(f.p(), counts);
                if let Some(formula) = weight_from_walsh(f, &w) {
                    rational += 1;
                    if formula != direct[f.neg(v).rep()] {
                        mismatches += 1;
                    }
                }
            });
            (rational, mismatches)
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    );
    Ok(WalshWeightCheck {
        pairs: (f.order() as u64).pow(2),
        rational,
        mismatches,
    })
}

fn direct_weight(f: &Field, d: u64, u: Elem, v: Elem) -> u64 {
    let g = f.group_order();
    let zeros = f
        .nonzero()
        .filter(|&x| f.trace(f.add(f.mul(u, f.pow(x, d)), f.mul(v, x))) == 0)
        .count() as u64;
    g - zeros
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use crate::walsh::{walsh_distribution, walsh_value};

    #[test]
    fn weight_examples() {
        let f = build_field(3, 1).unwrap();
        assert_eq!(codeword_weight(&f, 5, Elem::ZERO, Elem::ZERO), Ok(0));
        for v in f.nonzero() {
            assert_eq!(codeword_weight(&f, 5, Elem::ZERO, v), Ok(6));
        }
        for u in f.nonzero() {
            for v in f.elements() {
                let w = walsh_value(&f, 5, u, f.neg(v)).unwrap();
                if w.as_integer() == Some(6) {
                    assert_eq!(codeword_weight(&f, 5, u, v), Ok(2));
                }
            }
        }
    }

    #[test]
    fn f9_distribution() {
        let f = build_field(3, 1).unwrap();
        let w = weight_distribution(&f, 5, &Options::default()).unwrap();
        assert_eq!(w.length, 8);
        assert_eq!(
            w.weights,
            BTreeMap::from([(0, 1), (2, 8), (4, 24), (6, 32), (8, 16)])
        );
        assert_eq!(w.kernel, 1);
        assert_eq!(w.dimension, 4);
    }

    #[test]
    fn f16_nonzero_weights() {
        let f = build_field(2, 2).unwrap();
        let w = weight_distribution(&f, 7, &Options::default()).unwrap();
        assert_eq!(w.nonzero_weights(), vec![4, 6, 8, 10]);
        assert_eq!(w.length, 15);
    }

    #[test]
    fn grid_matches_single_codewords() {
        for (p, m, d) in [(2, 2, 3u64), (3, 1, 2), (2, 2, 5)] {
            let f = build_field(p, m).unwrap();
            let mut expected = BTreeMap::new();
            for u in f.elements() {
                for v in f.elements() {
                    *expected
                        .entry(codeword_weight(&f, d, u, v).unwrap())
                        .or_insert(0u64) += 1;
                }
            }
            let w = weight_distribution(&f, d, &Options::default()).unwrap();
            assert_eq!(w.weights, expected);
        }
    }

    #[test]
    fn degenerate_exponent_has_larger_kernel() {
        // d = 4 = 2^2 over F_16: Tr(u x^4) = Tr(u^{4^{-1}} x), so c_{u,v}
        // collapses onto a two-dimensional family.
        let f = build_field(2, 2).unwrap();
        let w = weight_distribution(&f, 4, &Options::default()).unwrap();
        assert_eq!(w.kernel, 16);
        assert_eq!(w.distinct_codewords, 16);
        assert_eq!(w.dimension, 4);
    }

    #[test]
    fn walsh_route_agrees() {
        let opts = Options::default();
        for (p, m, ds) in [
            (2, 2, vec![7u64, 3, 4]),
            (3, 1, vec![5, 2, 7]),
            (5, 1, vec![5, 2]),
        ] {
            let f = build_field(p, m).unwrap();
            for d in ds {
                let check = walsh_weight_check(&f, d, &opts).unwrap();
                assert_eq!(check.mismatches, 0);
                let direct = weight_distribution(&f, d, &opts).unwrap();
                let dist = walsh_distribution(&f, d, &opts).unwrap();
                if let Some(from_walsh) = weights_from_walsh(&f, &dist) {
                    assert_eq!(direct.weights, from_walsh, "p={p} d={d}");
                    assert_eq!(check.rational, check.pairs);
                }
                // Each coordinate is nonzero for (p - 1)/p of all pairs.
                let total: u64 = direct.weights.iter().map(|(w, c)| w * c).sum();
                let q = f.order() as u64;
                assert_eq!(total, (q - 1) * q * q / p as u64 * (p as u64 - 1));
            }
        }
    }
}
