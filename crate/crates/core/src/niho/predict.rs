use std::collections::BTreeMap;

use serde::Serialize;

use super::{family_s_values, Family, NihoExponent};

/// What the closed forms say about the locally-APN property of a Niho
/// exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LocallyApnPrediction {
    /// s1(s1 - 1) + s2(s2 - 1) > 2, which rules the property out.
    Excluded,
    /// s belongs to one of the known four-valued families.
    Implied,
    /// Neither of the above.
    Undetermined,
}

impl LocallyApnPrediction {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            LocallyApnPrediction::Excluded => Some(false),
            LocallyApnPrediction::Implied => Some(true),
            LocallyApnPrediction::Undetermined => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoomerangPrediction {
    pub uniformity: u64,
    pub distribution: BTreeMap<u64, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictionReport {
    pub exponent: NihoExponent,
    pub predicted_uniformity: u64,
    pub predicted_locally_apn: LocallyApnPrediction,
    /// Families containing s.
    pub families: Vec<Family>,
    pub predicted_n3: u128,
    // The fields below hold for locally-APN exponents and are filled in
    // unless the property is excluded.
    pub predicted_spectrum: Option<BTreeMap<u64, u64>>,
    pub predicted_walsh: Option<BTreeMap<i128, u64>>,
    pub predicted_fbct: Option<BoomerangPrediction>,
    pub predicted_sozd: Option<BoomerangPrediction>,
    pub predicted_code_weights: Option<BTreeMap<u64, u64>>,
    pub predicted_n4: Option<u128>,
}

fn insert_positive<K: Ord>(map: &mut BTreeMap<K, u64>, k: K, c: u64) {
    if c > 0 {
        *map.entry(k).or_insert(0) += c;
    }
}

/// Four-value Walsh distribution over (u, v) ∈ F* × F.
pub(crate) fn four_valued_walsh(pm: u64) -> BTreeMap<i128, u64> {
    let e = pm.pow(4) - pm.pow(3) - pm.pow(2) + pm;
    let pmi = pm as i128;
    let mut out = BTreeMap::new();
    insert_positive(&mut out, -pmi, e / 3);
    insert_positive(&mut out, 0, e / 2);
    insert_positive(&mut out, pmi, pm.pow(3) - pm);
    insert_positive(&mut out, 2 * pmi, e / 6);
    out
}

fn boomerang_tables(p: u64, pm: u64) -> (BoomerangPrediction, BoomerangPrediction) {
    let q = pm * pm;
    let mut fbct = BTreeMap::new();
    let mut sozd = BTreeMap::new();
    if p == 2 {
        insert_positive(&mut fbct, q, 3 * q - 2);
        insert_positive(&mut fbct, pm, (pm - 2) * (q - 1));
        insert_positive(&mut fbct, 0, (q - pm) * (q - 1));
        sozd = fbct.clone();
    } else {
        insert_positive(&mut sozd, q, 2 * q - 1);
        insert_positive(&mut sozd, pm, (pm - 1) * (q - 1));
        insert_positive(&mut sozd, 1, (q - pm) * (q - 1));
    }
    // Non-degenerate entries are p^m when any occur, otherwise the smallest.
    let uniformity = |t: &BTreeMap<u64, u64>| {
        if t.contains_key(&pm) {
            pm
        } else {
            t.keys().copied().find(|&v| v != q).unwrap_or(q)
        }
    };
    (
        BoomerangPrediction {
            uniformity: uniformity(&fbct),
            distribution: fbct,
        },
        BoomerangPrediction {
            uniformity: uniformity(&sozd),
            distribution: sozd,
        },
    )
}

/// Evaluates every closed form for the exponent. No field arithmetic.
pub fn predict(e: &NihoExponent) -> PredictionReport {
    let p = e.p as u64;
    let pm = e.pm();
    let q = pm * pm;
    let (s1, s2) = (e.s1 as i128, e.s2 as i128);
    let predicted_uniformity = (pm as i128 + (s1 - 1) * (s1 - 2) + (s2 - 1) * (s2 - 2)) as u64;

    let families: Vec<Family> = Family::ALL
        .into_iter()
        .filter(|&fam| {
            family_s_values(e.p, e.m, fam)
                .map(|v| v.contains(&e.s))
                .unwrap_or(false)
        })
        .collect();
    let predicted_locally_apn = if s1 * (s1 - 1) + s2 * (s2 - 1) > 2 {
        LocallyApnPrediction::Excluded
    } else if !families.is_empty() && !e.is_degenerate() {
        LocallyApnPrediction::Implied
    } else {
        LocallyApnPrediction::Undetermined
    };

    let qi = q as u128;
    let predicted_n3 = 3 * qi - 2 + (qi - 1) * (predicted_uniformity as u128 - 2);

    let mut report = PredictionReport {
        exponent: *e,
        predicted_uniformity,
        predicted_locally_apn,
        families,
        predicted_n3,
        predicted_spectrum: None,
        predicted_walsh: None,
        predicted_fbct: None,
        predicted_sozd: None,
        predicted_code_weights: None,
        predicted_n4: None,
    };
    if predicted_locally_apn == LocallyApnPrediction::Excluded {
        return report;
    }

    let mut spectrum = BTreeMap::new();
    insert_positive(&mut spectrum, 0, (q + pm - 2) / 2);
    insert_positive(&mut spectrum, 2, (q - pm) / 2);
    insert_positive(&mut spectrum, pm, 1);

    let walsh = four_valued_walsh(pm);
    // weight = p^{n-1}(p-1) - (p-1) W / p, plus the u = 0 row.
    let base = q / p * (p - 1);
    let mut weights = BTreeMap::new();
    insert_positive(&mut weights, 0, 1);
    insert_positive(&mut weights, base, q - 1);
    for (&w, &c) in &walsh {
        let shift = (p as i128 - 1) * w / p as i128;
        insert_positive(&mut weights, (base as i128 - shift) as u64, c);
    }

    let (fbct, sozd) = boomerang_tables(p, pm);
    let pmi = pm as u128;
    report.predicted_spectrum = Some(spectrum);
    report.predicted_walsh = Some(walsh);
    report.predicted_fbct = (p == 2).then_some(fbct);
    report.predicted_sozd = Some(sozd);
    report.predicted_code_weights = Some(weights);
    report.predicted_n4 = Some(4 * qi * qi - 2 * pmi.pow(3) - 3 * qi + 2 * pmi);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::niho::make_niho;

    #[test]
    fn excluded_exponent() {
        let r = predict(&make_niho(2, 3, 3));
        assert_eq!(r.exponent.d, 22);
        assert_eq!(r.predicted_uniformity, 10);
        assert_eq!(r.predicted_locally_apn, LocallyApnPrediction::Excluded);
        assert!(r.predicted_walsh.is_none() && r.predicted_spectrum.is_none());
    }

    #[test]
    fn family_member_f64() {
        let r = predict(&make_niho(2, 3, 2));
        assert_eq!(r.exponent.d, 15);
        assert_eq!(r.predicted_locally_apn, LocallyApnPrediction::Implied);
        assert_eq!(
            r.predicted_walsh.unwrap(),
            BTreeMap::from([(-8, 1176), (0, 1764), (8, 504), (16, 588)])
        );
        let weights = r.predicted_code_weights.unwrap();
        let nonzero: Vec<u64> = weights.keys().copied().filter(|&w| w > 0).collect();
        assert_eq!(nonzero, vec![24, 28, 32, 36]);
        assert_eq!(weights.values().sum::<u64>(), 64 * 64);
        let fbct = r.predicted_fbct.unwrap();
        assert_eq!(
            fbct.distribution,
            BTreeMap::from([(0, 3528), (8, 378), (64, 190)])
        );
        assert_eq!(fbct.uniformity, 8);
    }

    #[test]
    fn linear_exponent() {
        let r = predict(&make_niho(2, 2, 0));
        assert_eq!(r.predicted_uniformity, 16);
        assert_eq!(r.predicted_locally_apn, LocallyApnPrediction::Excluded);
        assert_eq!(
            predict(&make_niho(2, 2, 1)).predicted_locally_apn,
            LocallyApnPrediction::Excluded
        );
    }

    #[test]
    fn closed_forms_at_small_parameters() {
        let r = predict(&make_niho(2, 2, 2));
        assert_eq!(
            r.predicted_spectrum.unwrap(),
            BTreeMap::from([(0, 9), (2, 6), (4, 1)])
        );
        assert_eq!(r.predicted_n3, 76);
        assert_eq!(r.predicted_n4, Some(856));
        assert_eq!(
            r.predicted_code_weights.unwrap(),
            BTreeMap::from([(0, 1), (4, 30), (6, 60), (8, 105), (10, 60)])
        );

        let r = predict(&make_niho(3, 1, 2));
        assert_eq!(r.predicted_locally_apn, LocallyApnPrediction::Implied);
        assert_eq!(
            r.predicted_spectrum.unwrap(),
            BTreeMap::from([(0, 5), (2, 3), (3, 1)])
        );
        assert_eq!(
            r.predicted_code_weights.unwrap(),
            BTreeMap::from([(0, 1), (2, 8), (4, 24), (6, 32), (8, 16)])
        );
        let sozd = r.predicted_sozd.unwrap();
        assert_eq!(
            sozd.distribution,
            BTreeMap::from([(1, 48), (3, 16), (9, 17)])
        );
        assert!(r.predicted_fbct.is_none());

        let r = predict(&make_niho(3, 2, 2));
        assert_eq!(
            r.predicted_spectrum.unwrap(),
            BTreeMap::from([(0, 44), (2, 36), (9, 1)])
        );
        assert_eq!(
            r.predicted_sozd.unwrap().distribution,
            BTreeMap::from([(1, 5760), (9, 640), (81, 161)])
        );
    }

    #[test]
    fn degenerate_f4_is_not_implied() {
        let r = predict(&make_niho(2, 1, 2));
        assert_eq!(r.families, vec![Family::F2, Family::F3]);
        assert_eq!(r.predicted_locally_apn, LocallyApnPrediction::Undetermined);
    }
}
