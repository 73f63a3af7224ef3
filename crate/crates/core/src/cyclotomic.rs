//! Exact arithmetic in Z[ζ_p].
//!
//! Values are stored in the Z-basis 1, ζ, …, ζ^{p-2}; ζ^{p-1} is eliminated
//! through 1 + ζ + … + ζ^{p-1} = 0, so the representation is canonical.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    p: u32,
    coeffs: Vec<i128>,
}

impl CyclotomicInteger {
    pub fn zero(p: u32) -> Self {
        CyclotomicInteger {
            p,
            coeffs: vec![0; (p - 1) as usize],
        }
    }

    pub fn from_int(p: u32, k: i128) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = k;
        z
    }

    /// ζ^j for any integer j.
    pub fn zeta_pow(p: u32, j: i64) -> Self {
        let mut counts = vec![0i128; p as usize];
        counts[j.rem_euclid(p as i64) as usize] = 1;
        Self::from_power_counts(p, &counts)
    }

    /// Σ_j counts[j]·ζ^j over j in [0, p), reduced to canonical form.
    pub fn from_power_counts(p: u32, counts: &[i128]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let last = counts[p as usize - 1];
        CyclotomicInteger {
            p,
            coeffs: counts[..p as usize - 1].iter().map(|&c| c - last).collect(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn as_integer(&self) -> Option<i128> {
        self.is_rational().then_some(self.coeffs[0])
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut counts = vec![0i128; p];
        for (j, &c) in self.coeffs.iter().enumerate() {
            counts[(p - j) % p] += c;
        }
        Self::from_power_counts(self.p, &counts)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_int(self.p, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Scales by an integer.
    pub fn scale(&self, k: i128) -> Self {
        CyclotomicInteger {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    fn check_same_ring(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing Z[ζ_p] for different p");
    }
}

impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn add(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self.check_same_ring(rhs);
        CyclotomicInteger {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn sub(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn neg(self) -> CyclotomicInteger {
        self.scale(-1)
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;

    fn mul(self, rhs: &CyclotomicInteger) -> CyclotomicInteger {
        self.check_same_ring(rhs);
        // Convolution modulo x^p - 1, then basis reduction.
        let p = self.p as usize;
        let mut counts = vec![0i128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                counts[(i + j) % p] += a * b;
            }
        }
        CyclotomicInteger::from_power_counts(self.p, &counts)
    }
}

/// Rational values first in ascending order, then the others by coefficient
/// vector.
impl Ord for CyclotomicInteger {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.as_integer(), other.as_integer()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.coeffs.cmp(&other.coeffs),
        }
        .then_with(|| self.p.cmp(&other.p))
    }
}

impl PartialOrd for CyclotomicInteger {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.as_integer() {
            return write!(f, "{k}");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, c)| match j {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{j}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Rational values serialize as plain integers, the rest as
/// `{"coeffs": [...], "rational": false}`.
impl Serialize for CyclotomicInteger {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.as_integer() {
            Some(k) => serializer.serialize_i128(k),
            None => {
                let mut s = serializer.serialize_struct("CyclotomicInteger", 2)?;
                s.serialize_field("coeffs", &self.coeffs)?;
                s.serialize_field("rational", &false)?;
                s.end()
            }
        }
    }
}
