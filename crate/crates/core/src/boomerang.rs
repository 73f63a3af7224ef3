//! Feistel boomerang connectivity (characteristic 2) and second-order zero
//! differential counts of x^d.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diff::check_exponent;
use crate::error::{Error, Result};
use crate::exec::{fold_range, map_range, Options};
use crate::field::{Elem, Field};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Fbct,
    Sozd,
}

/// Index set the uniformity is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UniformityConvention {
    /// ab(a + b) ≠ 0.
    AbSumNonzero,
    /// a ≠ b, both nonzero.
    DistinctNonzero,
    /// a, b both nonzero.
    BothNonzero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoomerangDistribution {
    pub d: u64,
    pub kind: Kind,
    pub uniformity: u64,
    pub uniformity_convention: UniformityConvention,
    /// Entry value → number of (a, b) ∈ F².
    #[serde(rename = "distribution")]
    pub entries: BTreeMap<u64, u64>,
}

fn second_difference(f: &Field, pw: &[Elem], x: Elem, a: Elem, b: Elem) -> Elem {
    let xa = f.add(x, a);
    let xb = f.add(x, b);
    let xab = f.add(xa, b);
    let lhs = f.add(pw[xab.rep()], pw[x.rep()]);
    let rhs = f.add(pw[xa.rep()], pw[xb.rep()]);
    f.sub(lhs, rhs)
}

fn count_zeros(f: &Field, pw: &[Elem], a: Elem, b: Elem) -> u64 {
    f.elements()
        .filter(|&x| second_difference(f, pw, x, a, b).is_zero())
        .count() as u64
}

fn require_char2(f: &Field) -> Result<()> {
    if f.p() == 2 {
        Ok(())
    } else {
        Err(Error::OddCharacteristic(f.p()))
    }
}

/// #{x : F(x+a+b) + F(x+a) + F(x+b) + F(x) = 0}.
pub fn fbct_entry(f: &Field, d: u64, a: Elem, b: Elem) -> Result<u64> {
    require_char2(f)?;
    sozd_entry(f, d, a, b)
}

/// #{x : F(x+a+b) - F(x+a) - F(x+b) + F(x) = 0}.
pub fn sozd_entry(f: &Field, d: u64, a: Elem, b: Elem) -> Result<u64> {
    check_exponent(f, d)?;
    Ok(count_zeros(f, &f.power_table(d), a, b))
}

fn convention(f: &Field, kind: Kind) -> UniformityConvention {
    match (kind, f.p()) {
        (Kind::Fbct, _) => UniformityConvention::AbSumNonzero,
        (Kind::Sozd, 2) => UniformityConvention::DistinctNonzero,
        (Kind::Sozd, _) => UniformityConvention::BothNonzero,
    }
}

fn counts_toward_uniformity(f: &Field, conv: UniformityConvention, a: Elem, b: Elem) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    match conv {
        UniformityConvention::BothNonzero => true,
        UniformityConvention::DistinctNonzero => a != b,
        UniformityConvention::AbSumNonzero => !f.add(a, b).is_zero(),
    }
}

fn distribution(
    f: &Field,
    d: u64,
    kind: Kind,
    naive: bool,
    opts: &Options,
) -> Result<BoomerangDistribution> {
    check_exponent(f, d)?;
    let q = f.order() as u128;
    let conv = convention(f, kind);
    let pw = f.power_table(d);
    let mut entries = BTreeMap::new();
    let mut uniformity = 0;

    if naive {
        opts.charge(q * q * q)?;
        let size = f.size();
        let (counts, max) = fold_range(
            opts.exec,
            size,
            || (BTreeMap::<u64, u64>::new(), 0u64),
            |(mut counts, mut max), i| {
                let a = Elem(i as u32);
                for b in f.elements() {
                    let e = count_zeros(f, &pw, a, b);
                    *counts.entry(e).or_insert(0) += 1;
                    if counts_toward_uniformity(f, conv, a, b) {
                        max = max.max(e);
                    }
                }
                (counts, max)
            },
            |(mut ca, ma), (cb, mb)| {
                for (k, c) in cb {
                    *ca.entry(k).or_insert(0) += c;
                }
                (ca, ma.max(mb))
            },
        );
        entries = counts;
        uniformity = max;
    } else {
        // For b ≠ 0, x = b·y scales the equation by b^d, so the entry only
        // depends on c = a/b and one row b = 1 suffices.
        opts.charge(q * q)?;
        let by_c = map_range(opts.exec, f.size(), |c| {
            count_zeros(f, &pw, Elem(c as u32), Elem::ONE)
        });
        let full = f.order() as u64;
        // Rows a = 0 or b = 0.
        entries.insert(full, 2 * full - 1);
        for c in f.nonzero() {
            let e = by_c[c.rep()];
            *entries.entry(e).or_insert(0) += full - 1;
            if counts_toward_uniformity(f, conv, c, Elem::ONE) {
                uniformity = uniformity.max(e);
            }
        }
    }
    Ok(BoomerangDistribution {
        d,
        kind,
        uniformity,
        uniformity_convention: conv,
        entries,
    })
}

/// Value distribution of FBCT_F(a, b) over F², using the scaling shortcut
/// unless `naive` is set.
pub fn fbct_distribution(
    f: &Field,
    d: u64,
    naive: bool,
    opts: &Options,
) -> Result<BoomerangDistribution> {
    require_char2(f)?;
    distribution(f, d, Kind::Fbct, naive, opts)
}

/// Value distribution of ∇_F(a, b) over F².
pub fn sozd_distribution(
    f: &Field,
    d: u64,
    naive: bool,
    opts: &Options,
) -> Result<BoomerangDistribution> {
    distribution(f, d, Kind::Sozd, naive, opts)
}
