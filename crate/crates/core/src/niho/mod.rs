//! Niho exponents d = s(p^m - 1) + 1 over F_{p^{2m}} and everything
//! predicted from (s, s1, s2).

mod families;
mod lemmas;
mod predict;
mod search;

pub use families::{cyclotomic_shifts, family_s_values, Family};
pub use lemmas::{
    cij_count, cij_matrix, cij_predicted, count_v, curve_points, niho_pair_sum,
    predicted_curve_points, CurveCase, CurveReport,
};
pub use predict::{predict, LocallyApnPrediction, PredictionReport};
pub use search::{search_locally_apn, SearchEntry, SearchReport};

use serde::Serialize;

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of a modulo n, if it exists.
pub(crate) fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i128) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct NihoExponent {
    pub p: u32,
    pub m: u32,
    /// Canonical residue in [0, p^m].
    pub s: u64,
    /// s(p^m - 1) + 1 reduced into [1, p^n - 1].
    pub d: u64,
    pub s1: u64,
    pub s2: u64,
}

impl NihoExponent {
    /// p^m.
    pub fn pm(&self) -> u64 {
        (self.p as u64).pow(self.m)
    }

    /// p^n - 1.
    pub fn group_order(&self) -> u64 {
        self.pm() * self.pm() - 1
    }

    /// True when x^d is constant on F*, which only happens for s = 2 over F_4.
    pub fn is_degenerate(&self) -> bool {
        self.d == self.group_order()
    }
}

/// Builds the Niho exponent for any integer s; s and s + (p^m + 1) agree.
pub fn make_niho(p: u32, m: u32, s: i64) -> NihoExponent {
    let pm = (p as u64).pow(m);
    let modulus = pm + 1;
    let s = s.rem_euclid(modulus as i64) as u64;
    let g = pm * pm - 1;
    let d = match (s as u128 * (pm as u128 - 1) + 1) % g as u128 {
        0 => g,
        d => d as u64,
    };
    NihoExponent {
        p,
        m,
        s,
        d,
        s1: gcd(s, modulus),
        s2: gcd((s + modulus - 1) % modulus, modulus),
    }
}

/// Recovers s from a Niho exponent d, or `None` if d ≢ 1 mod p^m - 1.
pub fn s_from_d(p: u32, m: u32, d: u64) -> Option<u64> {
    let pm = (p as u64).pow(m);
    let g = pm * pm - 1;
    let d = d % g;
    if pm == 2 {
        // p^m - 1 = 1: every d is Niho and s = d - 1 mod 3.
        return Some((d + 2) % 3);
    }
    (d % (pm - 1) == 1).then(|| (d - 1) / (pm - 1) % (pm + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_examples() {
        let e = make_niho(2, 2, 2);
        assert_eq!((e.d, e.s1, e.s2), (7, 1, 1));
        let e = make_niho(3, 1, 2);
        assert_eq!((e.d, e.s1, e.s2), (5, 2, 1));
        let e = make_niho(2, 3, 0);
        assert_eq!((e.d, e.s1, e.s2), (1, 9, 1));
        assert_eq!(make_niho(2, 3, 3).d, 22);
        assert_eq!(make_niho(2, 3, 2).d, 15);
        assert_eq!(make_niho(3, 2, 2).d, 17);
    }

    #[test]
    fn residues_are_canonical() {
        for (p, m) in [(2u32, 2u32), (3, 1), (3, 2), (5, 1)] {
            let pm = (p as i64).pow(m);
            for s in -3..=2 * pm + 3 {
                let e = make_niho(p, m, s);
                assert_eq!(e, make_niho(p, m, s + pm + 1));
                assert!(e.s <= pm as u64);
                assert!(e.d >= 1 && e.d <= e.group_order());
                if pm > 2 {
                    assert_eq!(e.d % (pm as u64 - 1), 1);
                }
                assert_eq!(s_from_d(p, m, e.d), Some(e.s));
            }
        }
    }

    #[test]
    fn degenerate_only_over_f4() {
        assert!(make_niho(2, 1, 2).is_degenerate());
        assert_eq!(make_niho(2, 1, 2).d, 3);
        for (p, m) in [(2u32, 2u32), (2, 3), (3, 1), (5, 1)] {
            let pm = (p as i64).pow(m);
            assert!((0..=pm).all(|s| !make_niho(p, m, s).is_degenerate()));
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(3, 5), Some(2));
        assert_eq!(mod_inverse(3, 9), None);
        assert_eq!(mod_inverse(7, 33), Some(19));
    }
}
