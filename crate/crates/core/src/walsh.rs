//! Exact Walsh values W_F(u, v) = Σ_x ζ_p^{Tr(u x^d - v x)}, their value
//! distribution, and the power-sum identities Σ W^r = p^{2n} N_r.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cyclotomic::CyclotomicInteger;
use crate::diff::check_exponent;
use crate::error::Result;
use crate::exec::{fold_range, Options};
use crate::field::{Elem, Field};

/// Reference evaluation straight from the definition: counts the trace
/// classes of u x^d - v x.
pub fn walsh_value(f: &Field, d: u64, u: Elem, v: Elem) -> Result<CyclotomicInteger> {
    check_exponent(f, d)?;
    let mut counts = vec![0i128; f.p() as usize];
    for x in f.elements() {
        let arg = f.sub(f.mul(u, f.pow(x, d)), f.mul(v, x));
        counts[f.trace(arg) as usize] += 1;
    }
    Ok(CyclotomicInteger::from_power_counts(f.p(), &counts))
}

/// Value → multiplicity map with the canonical value order.
pub type ValueCounts = BTreeMap<CyclotomicInteger, u64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshDistribution {
    pub d: u64,
    /// Multiset over (u, v) ∈ F* × F.
    pub entries: ValueCounts,
    /// The u = 0 row: W(0, 0) = p^n and W(0, v) = 0 otherwise.
    pub zero_row: ValueCounts,
}

#[derive(Serialize)]
struct Entry<'a> {
    value: &'a CyclotomicInteger,
    multiplicity: u64,
}

pub(crate) fn serialize_value_counts<S: serde::Serializer>(
    counts: &ValueCounts,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(counts.iter().map(|(value, &multiplicity)| Entry {
        value,
        multiplicity,
    }))
}

impl Serialize for WalshDistribution {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;

        struct Counts<'a>(&'a ValueCounts);
        impl Serialize for Counts<'_> {
            fn serialize<S: serde::Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                serialize_value_counts(self.0, serializer)
            }
        }

        let mut s = serializer.serialize_struct("WalshDistribution", 3)?;
        s.serialize_field("d", &self.d)?;
        s.serialize_field("distribution", &Counts(&self.entries))?;
        s.serialize_field("zero_row", &Counts(&self.zero_row))?;
        s.end()
    }
}

impl WalshDistribution {
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_rational(&self) -> bool {
        self.entries.keys().all(CyclotomicInteger::is_rational)
    }

    /// Integer view of the u ≠ 0 distribution, `None` if any value is not
    /// rational.
    pub fn integer_entries(&self) -> Option<BTreeMap<i128, u64>> {
        self.entries
            .iter()
            .map(|(w, &c)| w.as_integer().map(|k| (k, c)))
            .collect()
    }

    /// Σ_{u,v ∈ F} W(u, v)^r over the whole grid, including u = 0.
    pub fn power_sum(&self, r: u32) -> CyclotomicInteger {
        let p = self.zero_row.keys().next().map_or(2, CyclotomicInteger::p);
        let mut acc = CyclotomicInteger::zero(p);
        for (w, &c) in self.entries.iter().chain(&self.zero_row) {
            acc = &acc + &w.pow(r).scale(c as i128);
        }
        acc
    }

    /// Σ_{u,v} |W(u, v)|^4 over the whole grid.
    pub fn norm_fourth_power_sum(&self) -> CyclotomicInteger {
        let p = self.zero_row.keys().next().map_or(2, CyclotomicInteger::p);
        let mut acc = CyclotomicInteger::zero(p);
        for (w, &c) in self.entries.iter().chain(&self.zero_row) {
            let norm = w * &w.conj();
            acc = &acc + &(&norm * &norm).scale(c as i128);
        }
        acc
    }
}

/// Table of Tr(ψ^t) for t in [0, 2(p^n - 1)), doubled so cyclic shifts are
/// plain slices.
fn trace_by_log(f: &Field) -> Vec<u8> {
    let g = f.group_order() as usize;
    let tr = f.trace_table();
    let mut out: Vec<u8> = (0..g).map(|t| tr[f.psi_pow(t as i64).rep()]).collect();
    out.extend_from_within(..);
    out
}

/// Cost estimate for the full (u, v) grid.
pub fn grid_cost(f: &Field) -> u128 {
    (f.order() as u128).pow(3)
}

/// Walsh row counts for a fixed u over every v, in log order.
///
/// With x = ψ^t and v = ψ^k, Tr(v x) = T[k + t], so each row is a cyclic
/// correlation of the trace sequence against Tr(u ψ^{td}).
struct GridRows<'a> {
    f: &'a Field,
    d: u64,
    shifted_trace: Vec<u8>,
}

impl<'a> GridRows<'a> {
    fn new(f: &'a Field, d: u64) -> Self {
        GridRows {
            f,
            d,
            shifted_trace: trace_by_log(f),
        }
    }

    /// Calls `sink(v, counts)` for every v with the p trace-class counts of
    /// W(u, v).
    fn for_each_in_row(&self, u: Elem, mut sink: impl FnMut(Elem, &[i128])) {
        let f = self.f;
        let p = f.p() as usize;
        let g = f.group_order() as usize;
        let tr = f.trace_table();
        let row: Vec<u8> = (0..g)
            .map(|t| {
                let x = f.psi_pow(t as i64);
                tr[f.mul(u, f.pow(x, self.d)).rep()]
            })
            .collect();

        let mut pair = vec![0u64; p * p];
        let mut counts = vec![0i128; p];
        let classify = |pair: &[u64], counts: &mut [i128]| {
            counts.iter_mut().for_each(|c| *c = 0);
            // x = 0 contributes trace class 0.
            counts[0] = 1;
            for a in 0..p {
                for b in 0..p {
                    counts[(a + p - b) % p] += pair[a * p + b] as i128;
                }
            }
        };

        // v = 0.
        pair.iter_mut().for_each(|c| *c = 0);
        for &a in &row {
            pair[a as usize * p] += 1;
        }
        classify(&pair, &mut counts);
        sink(Elem::ZERO, &counts);

        for k in 0..g {
            pair.iter_mut().for_each(|c| *c = 0);
            let window = &self.shifted_trace[k..k + g];
            if p == 2 {
                let differ = row.iter().zip(window).filter(|(a, b)| a != b).count();
                counts[0] = 1 + (g - differ) as i128;
                counts[1] = differ as i128;
            } else {
                for (&a, &b) in row.iter().zip(window) {
                    pair[a as usize * p + b as usize] += 1;
                }
                classify(&pair, &mut counts);
            }
            sink(f.psi_pow(k as i64), &counts);
        }
    }
}

/// Exact Walsh distribution over u ∈ F*, with the u = 0 row kept separately.
pub fn walsh_distribution(f: &Field, d: u64, opts: &Options) -> Result<WalshDistribution> {
    check_exponent(f, d)?;
    opts.charge(grid_cost(f))?;
    let rows = GridRows::new(f, d);
    let p = f.p();
    let size = f.size();
    let merge = |mut a: ValueCounts, b: ValueCounts| {
        for (k, c) in b {
            *a.entry(k).or_insert(0) += c;
        }
        a
    };
    let row_values = |u: usize| {
        let mut out = ValueCounts::new();
        rows.for_each_in_row(Elem(u as u32), |_, counts| {
            *out.entry(CyclotomicInteger::from_power_counts(p, counts))
                .or_insert(0) += 1;
        });
        out
    };
    let entries = fold_range(
        opts.exec,
        size - 1,
        ValueCounts::new,
        |acc, i| merge(acc, row_values(i + 1)),
        merge,
    );
    Ok(WalshDistribution {
        d,
        entries,
        zero_row: row_values(0),
    })
}

/// Calls `sink(u, v, W(u, v))` over the whole grid, sequentially.
pub fn for_each_walsh_value(
    f: &Field,
    d: u64,
    opts: &Options,
    mut sink: impl FnMut(Elem, Elem, CyclotomicInteger),
) -> Result<()> {
    check_exponent(f, d)?;
    opts.charge(grid_cost(f))?;
    let rows = GridRows::new(f, d);
    for u in f.elements() {
        rows.for_each_in_row(u, |v, counts| {
            sink(u, v, CyclotomicInteger::from_power_counts(f.p(), counts))
        });
    }
    Ok(())
}

/// Number of solutions of x_1 + … + x_r = 0, x_1^d + … + x_r^d = 0, by
/// enumeration of the r - 1 free variables.
pub fn count_nr(f: &Field, d: u64, r: u32, opts: &Options) -> Result<u64> {
    assert!((1..=4).contains(&r), "r must be in 1..=4");
    check_exponent(f, d)?;
    let q = f.size();
    opts.charge((q as u128).pow(r - 1))?;
    let pw = f.power_table(d);
    let pw = |x: Elem| pw[x.rep()];
    let count = match r {
        1 => u64::from(pw(Elem::ZERO).is_zero()),
        2 => f
            .elements()
            .filter(|&x| f.add(pw(x), pw(f.neg(x))).is_zero())
            .count() as u64,
        3 => fold_range(
            opts.exec,
            q,
            || 0u64,
            |acc, i| {
                let x1 = Elem(i as u32);
                acc + f
                    .elements()
                    .filter(|&x2| {
                        let x3 = f.neg(f.add(x1, x2));
                        f.add(f.add(pw(x1), pw(x2)), pw(x3)).is_zero()
                    })
                    .count() as u64
            },
            |a, b| a + b,
        ),
        _ => fold_range(
            opts.exec,
            q,
            || 0u64,
            |mut acc, i| {
                let x1 = Elem(i as u32);
                for x2 in f.elements() {
                    let s12 = f.add(x1, x2);
                    let p12 = f.add(pw(x1), pw(x2));
                    for x3 in f.elements() {
                        let x4 = f.neg(f.add(s12, x3));
                        if f.add(f.add(p12, pw(x3)), pw(x4)).is_zero() {
                            acc += 1;
                        }
                    }
                }
                acc
            },
            |a, b| a + b,
        ),
    };
    Ok(count)
}

/// Number of solutions of x1 - x2 + x3 - x4 = 0, x1^d - x2^d + x3^d - x4^d = 0.
pub fn count_m(f: &Field, d: u64, opts: &Options) -> Result<u64> {
    check_exponent(f, d)?;
    let q = f.size();
    opts.charge((q as u128).pow(3))?;
    let pw = f.power_table(d);
    Ok(fold_range(
        opts.exec,
        q,
        || 0u64,
        |mut acc, i| {
            let x1 = Elem(i as u32);
            for x2 in f.elements() {
                let diff = f.sub(x1, x2);
                let pdiff = f.sub(pw[x1.rep()], pw[x2.rep()]);
                for x3 in f.elements() {
                    let x4 = f.add(diff, x3);
                    if f.add(pdiff, f.sub(pw[x3.rep()], pw[x4.rep()])).is_zero() {
                        acc += 1;
                    }
                }
            }
            acc
        },
        |a, b| a + b,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentReport {
    pub r: u32,
    /// Σ_{u,v ∈ F} W(u, v)^r.
    pub lhs: CyclotomicInteger,
    /// p^{2n} N_r.
    pub rhs: i128,
    pub n_r: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Power-sum check for one r, computing the Walsh grid from scratch.
pub fn moment(f: &Field, d: u64, r: u32, opts: &Options) -> Result<MomentReport> {
    let dist = walsh_distribution(f, d, opts)?;
    moment_from_distribution(f, &dist, r, opts)
}

pub fn moment_from_distribution(
    f: &Field,
    dist: &WalshDistribution,
    r: u32,
    opts: &Options,
) -> Result<MomentReport> {
    let n_r = count_nr(f, dist.d, r, opts)?;
    let lhs = dist.power_sum(r);
    let q = f.order() as i128;
    let rhs = q * q * n_r as i128;
    Ok(MomentReport {
        r,
        matches: lhs.as_integer() == Some(rhs),
        lhs,
        rhs,
        n_r,
    })
}

/// Walsh row-count helper exposed for the codes module: for a fixed u,
/// calls `sink(v, counts)` with the trace-class counts of u x^d - v x.
pub(crate) fn for_each_row_counts(f: &Field, d: u64, u: Elem, sink: impl FnMut(Elem, &[i128])) {
    GridRows::new(f, d).for_each_in_row(u, sink);
}
