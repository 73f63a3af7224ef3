use std::collections::BTreeSet;

use serde::Serialize;

use super::{gcd, make_niho, mod_inverse, s_from_d};
use crate::error::{Error, Result};

/// Known Niho families with a four-valued Walsh spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// s = 2^r (2^r ∓ 1)^{-1} mod 2^m + 1, 1 ≤ r < m, gcd(r, m) = 1.
    F1,
    /// s = 2, any p.
    F2,
    /// s = (2^k + 1)^{-1} mod 2^m + 1, gcd(k, m) = 1.
    F3,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::F1, Family::F2, Family::F3];
}

fn pow2_mod(e: u32, n: u64) -> u64 {
    (0..e).fold(1 % n, |acc, _| acc * 2 % n)
}

/// Sorted, deduplicated s residues in [0, p^m] belonging to a family.
pub fn family_s_values(p: u32, m: u32, family: Family) -> Result<Vec<u64>> {
    if family != Family::F2 && p != 2 {
        return Err(Error::WrongCharacteristic(p));
    }
    let pm = (p as u64).pow(m);
    let modulus = pm + 1;
    let mut out = BTreeSet::new();
    match family {
        Family::F2 => {
            out.insert(2 % modulus);
        }
        Family::F1 => {
            for r in (1..m).filter(|&r| gcd(r as u64, m as u64) == 1) {
                let two_r = pow2_mod(r, modulus);
                for denom in [two_r + modulus - 1, two_r + 1] {
                    let denom = denom % modulus;
                    if gcd(denom, modulus) == 1 {
                        let inv = mod_inverse(denom, modulus).expect("coprime");
                        out.insert(two_r * inv % modulus);
                    }
                }
            }
        }
        Family::F3 => {
            // 2^k mod 2^m + 1 has period 2m, so k ≤ 2m covers every residue.
            for k in (1..=2 * m).filter(|&k| gcd(k as u64, m as u64) == 1) {
                let denom = (pow2_mod(k, modulus) + 1) % modulus;
                if gcd(denom, modulus) == 1 {
                    out.insert(mod_inverse(denom, modulus).expect("coprime"));
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Residues s' whose exponent lies in the cyclotomic class {d p^i} of the
/// exponent for s, sorted and including s itself.
pub fn cyclotomic_shifts(p: u32, m: u32, s: u64) -> Vec<u64> {
    let e = make_niho(p, m, s as i64);
    let g = e.group_order();
    let mut out = BTreeSet::new();
    let mut d = e.d % g;
    for _ in 0..2 * m {
        if let Some(t) = s_from_d(p, m, d) {
            out.insert(t);
        }
        d = (d as u128 * p as u128 % g as u128) as u64;
    }
    out.into_iter().collect()
}
