//! JSON and CSV rendering. Keys come out sorted (serde_json's default map is
//! ordered) and every float is rounded to 12 significant digits, so equal
//! inputs give byte-identical reports.

use krein_ext::{
    ApproxEqualResult, CSymmetryParams, ClassificationResult, EmptyResolventFamily, ExtensionParams,
    PhaseSet, SearchBox, SpectralReport, SymmetryMatrix, C64,
};
use serde_json::{json, Value};

use crate::config::RunConfig;

/// Rounds to 12 significant digits; `-0` becomes `0` and non-finite values `null`.
pub fn num(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    json!(rounded)
}

pub fn complex(z: C64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

pub fn csv_field(v: f64) -> String {
    match num(v) {
        Value::Number(n) => n.to_string(),
        _ => "NaN".into(),
    }
}

pub fn params(u: &ExtensionParams) -> Value {
    json!({
        "phi": num(u.phi),
        "gamma": num(u.gamma),
        "xi": num(u.xi),
        "q": num(u.q),
        "r": num(u.r),
    })
}

pub fn csym(p: &CSymmetryParams) -> Value {
    let mut v = json!({
        "chi1": num(p.chi1),
        "omega1": num(p.omega1),
        "chi2": num(p.chi2),
        "omega2": num(p.omega2),
    });
    if p.chi1 == p.chi2 {
        v["chi"] = num(p.chi1);
    }
    if p.omega1 == p.omega2 {
        v["omega"] = num(p.omega1);
    }
    v
}

pub fn matrix(m: &SymmetryMatrix) -> Value {
    Value::Array(
        (0..4)
            .map(|i| Value::Array((0..4).map(|j| complex(m.0[(i, j)])).collect()))
            .collect(),
    )
}

pub fn equivalence(eq: &ApproxEqualResult) -> Value {
    match *eq {
        ApproxEqualResult::EquivalentWithPhase(alpha) => json!({ "kind": "EquivalentWithPhase", "alpha": num(alpha) }),
        ApproxEqualResult::NotEquivalent(residual) => json!({ "kind": "NotEquivalent", "residual": num(residual) }),
        ApproxEqualResult::IdenticallyZero => json!({ "kind": "IdenticallyZero" }),
    }
}

pub fn family(f: &EmptyResolventFamily) -> Value {
    match f {
        EmptyResolventFamily::Empty => json!({ "empty": true }),
        EmptyResolventFamily::Family { phases } => {
            let phi = match phases {
                PhaseSet::Pair([a, b]) => json!([num(*a), num(*b)]),
                PhaseSet::Free => json!("free"),
            };
            json!({ "empty": false, "r": 0, "gamma": "free", "xi": "free", "phi": phi })
        }
    }
}

pub fn search_box(b: &SearchBox) -> Value {
    json!({ "re_min": num(b.re_min), "re_max": num(b.re_max), "im_min": num(b.im_min), "im_max": num(b.im_max) })
}

/// Fields every report carries.
pub fn header(command: &str, cfg: &RunConfig) -> Value {
    let mut provider = json!({ "name": cfg.provider.name() });
    if cfg.provider == crate::config::ProviderKind::IndefiniteSl {
        provider["potential"] = json!(cfg.potential_text);
        provider["truncation"] = num(cfg.truncation);
    }
    json!({ "command": command, "provider": provider, "tol": num(cfg.tol) })
}

pub fn classification(cfg: &RunConfig, u: &ExtensionParams, res: &ClassificationResult, eq: &ApproxEqualResult) -> Value {
    let mut v = header("classify", cfg);
    v["params"] = params(u);
    v["class"] = json!(res.class.name());
    v["csym"] = res.csym.as_ref().map(csym).unwrap_or(Value::Null);
    v["csym_matrix"] = res.csym_matrix().as_ref().map(matrix).unwrap_or(Value::Null);
    v["notes"] = json!(res.notes);
    v["gauge_phase"] = num(res.gauge_phase);
    v["gauged_params"] = params(&res.gauged_params);
    v["boundary"] = json!(res.boundary);
    v["equivalence"] = equivalence(eq);
    v
}

pub fn spectrum(cfg: &RunConfig, u: &ExtensionParams, rep: &SpectralReport) -> Value {
    let mut v = header("spectrum", cfg);
    v["params"] = params(u);
    v["search_box"] = search_box(&cfg.search_box);
    v["verdict"] = json!(rep.verdict.name());
    v["winding_total"] = json!(rep.winding_total);
    v["eigenvalues"] = Value::Array(
        rep.eigenvalues
            .iter()
            .map(|e| json!({ "value": complex(e.value), "residual": num(e.residual) }))
            .collect(),
    );
    v["samples"] = Value::Array(
        rep.samples
            .iter()
            .map(|(mu, f)| json!({ "mu": complex(*mu), "abs_f": num(*f) }))
            .collect(),
    );
    v["notes"] = json!([
        "zeros are sought in the upper half-plane only; their conjugates are eigenvalues as well",
        "points of the box with F != 0 are not eigenvalues; no claim is made about the real axis",
    ]);
    v
}

pub fn eigen_csv(rep: &SpectralReport) -> String {
    let mut out = String::from("re,im,residual\n");
    for e in &rep.eigenvalues {
        out.push_str(&format!(
            "{},{},{}\n",
            csv_field(e.value.re),
            csv_field(e.value.im),
            csv_field(e.residual)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(num(std::f64::consts::PI).to_string(), "3.14159265359");
        assert_eq!(num(-0.0).to_string(), "0.0");
        assert_eq!(num(1e-300 * 1e-300).to_string(), "0.0");
        assert_eq!(num(f64::NAN), Value::Null);
        assert_eq!(num(-std::f64::consts::LN_2).to_string(), "-0.69314718056");
    }

    #[test]
    fn keys_are_sorted() {
        let v = json!({ "b": 1, "a": 2 });
        assert_eq!(v.to_string(), r#"{"a":2,"b":1}"#);
    }

    #[test]
    fn shared_block_values_get_short_keys() {
        let v = csym(&CSymmetryParams::uniform(0.5, 1.0));
        assert_eq!(v["chi"], num(0.5));
        let v = csym(&CSymmetryParams::split(0.5, 1.0, 0.5, 2.0));
        assert_eq!(v["chi"], num(0.5));
        assert!(v.get("omega").is_none());
        let v = csym(&CSymmetryParams::split(0.5, 1.0, 0.7, 1.0));
        assert!(v.get("chi").is_none());
    }
}
