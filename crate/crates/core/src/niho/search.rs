use std::collections::BTreeSet;

use serde::Serialize;

use super::{cyclotomic_shifts, family_s_values, make_niho, predict, Family, LocallyApnPrediction};
use crate::diff::differential_spectrum;
use crate::error::Result;
use crate::exec::{map_range, Options};
use crate::field::build_field;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Predicted {
    pub uniformity: u64,
    pub locally_apn: LocallyApnPrediction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Measured {
    pub uniformity: u64,
    pub locally_apn: bool,
    pub max_outside_prime_field: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchEntry {
    pub s: u64,
    pub d: u64,
    pub s1: u64,
    pub s2: u64,
    pub predicted: Predicted,
    pub measured: Measured,
    /// Uniformity agrees, and so does the locally-APN flag whenever the
    /// prediction is definite.
    #[serde(rename = "match")]
    pub matches: bool,
    /// Only meaningful in characteristic 2.
    pub f1_member: Option<bool>,
    /// Residues whose exponents are cyclotomic shifts of this one, when
    /// annotation was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub p: u32,
    pub m: u32,
    pub entries: Vec<SearchEntry>,
    pub locally_apn: Vec<u64>,
    pub mismatches: Vec<u64>,
    /// Locally-APN residues covered by F1 or a cyclotomic shift of an F1
    /// member (characteristic 2 only).
    pub f1_covered: Option<Vec<u64>>,
    /// Locally-APN residues outside that set: evidence against the
    /// conjectured classification if ever non-empty.
    pub outside_f1: Option<Vec<u64>>,
}

/// Measures every residue s ∈ [0, p^m] and compares with the predictions.
pub fn search_locally_apn(p: u32, m: u32, annotate: bool, opts: &Options) -> Result<SearchReport> {
    let f = build_field(p, m)?;
    let pm = f.subfield_order();
    opts.charge((pm as u128 + 1) * f.order() as u128)?;

    let f1: Option<BTreeSet<u64>> = (p == 2).then(|| {
        family_s_values(p, m, Family::F1)
            .expect("characteristic 2")
            .into_iter()
            .collect()
    });
    let f1_closure: Option<BTreeSet<u64>> = f1.as_ref().map(|set| {
        set.iter()
            .flat_map(|&s| cyclotomic_shifts(p, m, s))
            .collect()
    });

    let entries = map_range(opts.exec, pm as usize + 1, |s| {
        let e = make_niho(p, m, s as i64);
        let pred = predict(&e);
        let spectrum = differential_spectrum(&f, e.d).expect("Niho exponent in range");
        let flag_ok = pred
            .predicted_locally_apn
            .as_bool()
            .is_none_or(|b| b == spectrum.locally_apn);
        SearchEntry {
            s: e.s,
            d: e.d,
            s1: e.s1,
            s2: e.s2,
            predicted: Predicted {
                uniformity: pred.predicted_uniformity,
                locally_apn: pred.predicted_locally_apn,
            },
            measured: Measured {
                uniformity: spectrum.uniformity,
                locally_apn: spectrum.locally_apn,
                max_outside_prime_field: spectrum.max_outside_prime_field,
            },
            matches: flag_ok && spectrum.uniformity == pred.predicted_uniformity,
            f1_member: f1.as_ref().map(|set| set.contains(&e.s)),
            class: annotate.then(|| cyclotomic_shifts(p, m, e.s)),
        }
    });

    let locally_apn: Vec<u64> = entries
        .iter()
        .filter(|e| e.measured.locally_apn)
        .map(|e| e.s)
        .collect();
    let mismatches = entries.iter().filter(|e| !e.matches).map(|e| e.s).collect();
    let (f1_covered, outside_f1) = match &f1_closure {
        Some(closure) => {
            let (inside, outside) = locally_apn.iter().partition(|s| closure.contains(s));
            (Some(inside), Some(outside))
        }
        None => (None, None),
    };
    Ok(SearchReport {
        p,
        m,
        entries,
        locally_apn,
        mismatches,
        f1_covered,
        outside_f1,
    })
}
