//! Measures every quantity a Niho prediction report speaks about and diffs
//! the two.

use serde::Serialize;
use serde_json::{json, Value};

use crate::boomerang::{fbct_distribution, sozd_distribution};
use crate::codes::weight_distribution;
use crate::diff::differential_spectrum;
use crate::error::{Error, Result};
use crate::exec::Options;
use crate::field::{Field, FieldDescription};
use crate::niho::{predict, LocallyApnPrediction, NihoExponent, PredictionReport};
use crate::walsh::{count_nr, walsh_distribution};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub predicted: Value,
    pub measured: Value,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub field: FieldDescription,
    pub exponent: NihoExponent,
    pub predicted_locally_apn: LocallyApnPrediction,
    pub measured_locally_apn: bool,
    pub checks: Vec<Check>,
    pub pass: bool,
}

fn check<P: Serialize + PartialEq<M>, M: Serialize>(
    name: &'static str,
    predicted: &P,
    measured: &M,
) -> Check {
    Check {
        name,
        predicted: json!(predicted),
        measured: json!(measured),
        matches: predicted == measured,
    }
}

/// Runs every measurement the prediction report makes a claim about.
///
/// Uniformity and N_3 are checked for all s. The locally-APN flag is checked
/// when the prediction is definite. The remaining closed forms assume the
/// locally-APN property, so they are checked when it is measured to hold.
pub fn verify(f: &Field, e: &NihoExponent, opts: &Options) -> Result<VerifyReport> {
    if f.p() != e.p || f.m() != e.m {
        return Err(Error::FieldMismatch {
            field_p: f.p(),
            field_m: f.m(),
            exp_p: e.p,
            exp_m: e.m,
        });
    }
    let pred: PredictionReport = predict(e);
    let d = e.d;
    let spectrum = differential_spectrum(f, d)?;
    let mut checks = vec![check(
        "uniformity",
        &pred.predicted_uniformity,
        &spectrum.uniformity,
    )];
    if let Some(flag) = pred.predicted_locally_apn.as_bool() {
        checks.push(check("locally_apn", &flag, &spectrum.locally_apn));
    }
    let n3 = count_nr(f, d, 3, opts)? as u128;
    checks.push(check("n3", &pred.predicted_n3, &n3));

    if spectrum.locally_apn {
        if let Some(ds) = &pred.predicted_spectrum {
            checks.push(check("spectrum", ds, &spectrum.counts));
        }
        if let Some(walsh) = &pred.predicted_walsh {
            let measured = walsh_distribution(f, d, opts)?;
            let measured_json = json!(measured.integer_entries().map_or_else(
                || serde_json::to_value(&measured).expect("serializable"),
                |m| json!(m),
            ));
            checks.push(Check {
                name: "walsh",
                predicted: json!(walsh),
                matches: measured.integer_entries().as_ref() == Some(walsh),
                measured: measured_json,
            });
        }
        if let Some(fbct) = &pred.predicted_fbct {
            let measured = fbct_distribution(f, d, false, opts)?;
            checks.push(check("fbct", &fbct.distribution, &measured.entries));
            checks.push(check(
                "fbct_uniformity",
                &fbct.uniformity,
                &measured.uniformity,
            ));
        }
        if let Some(sozd) = &pred.predicted_sozd {
            let measured = sozd_distribution(f, d, false, opts)?;
            checks.push(check("sozd", &sozd.distribution, &measured.entries));
            checks.push(check(
                "sozd_uniformity",
                &sozd.uniformity,
                &measured.uniformity,
            ));
        }
        if let Some(weights) = &pred.predicted_code_weights {
            let measured = weight_distribution(f, d, opts)?;
            checks.push(check("code_weights", weights, &measured.weights));
        }
        if let Some(n4) = &pred.predicted_n4 {
            let measured = count_nr(f, d, 4, opts)? as u128;
            checks.push(check("n4", n4, &measured));
        }
    }
    Ok(VerifyReport {
        field: f.describe(),
        exponent: *e,
        predicted_locally_apn: pred.predicted_locally_apn,
        measured_locally_apn: spectrum.locally_apn,
        pass: checks.iter().all(|c| c.matches),
        checks,
    })
}
