//! JSON and CSV encodings of elements and set reports.

use serde_json::{json, Value};

use crate::affine::{self, ExtAffineElement};
use crate::musets::MuSetReport;
use crate::rational::{fmt_q, RationalVector};
use crate::rootsys::RootDatum;

pub const MUSETS_SCHEMA: &str = "musets/1";

/// Integers where possible, `"p/q"` strings otherwise.
pub fn vector_json(v: &RationalVector) -> Value {
    Value::Array(
        v.coords()
            .iter()
            .map(|x| {
                if x.is_integer() {
                    json!(x.to_integer())
                } else {
                    json!(fmt_q(x))
                }
            })
            .collect(),
    )
}

fn bare_element(d: &RootDatum, x: &ExtAffineElement) -> Value {
    let g = d.weyl().expect("finite Weyl group within guard");
    json!({
        "translation": vector_json(&x.translation_vector(d)),
        "finite_part_word": g.word(x.finite_part()),
    })
}

/// `{"translation", "finite_part_word", "length", "omega"}`; `omega` is null
/// for elements of `W_aff` and the length-zero component otherwise.
pub fn element_json(d: &RootDatum, x: &ExtAffineElement) -> Value {
    let (_, tau) = affine::omega_decompose(d, x);
    let mut v = bare_element(d, x);
    v["length"] = json!(affine::length(d, x));
    v["omega"] = if tau.is_identity() {
        Value::Null
    } else {
        bare_element(d, &tau)
    };
    v
}

pub fn elements_json(d: &RootDatum, xs: &[ExtAffineElement]) -> Value {
    Value::Array(xs.iter().map(|x| element_json(d, x)).collect())
}

pub fn musets_json(d: &RootDatum, r: &MuSetReport) -> Value {
    json!({
        "schema": MUSETS_SCHEMA,
        "version": crate::VERSION,
        "datum": r.datum,
        "fingerprint": r.fingerprint,
        "mu": vector_json(&r.mu),
        "counts": {
            "adm": r.adm.len(),
            "perm": r.perm.len(),
            "perm_st": r.perm_st.len(),
        },
        "verdicts": r.verdicts,
        "adm": elements_json(d, &r.adm),
        "perm": elements_json(d, &r.perm),
        "perm_st": elements_json(d, &r.perm_st),
        "perm_minus_adm": elements_json(d, &r.perm_minus_adm),
        "perm_minus_perm_st": elements_json(d, &r.perm_minus_perm_st),
    })
}

pub const CSV_HEADER: &str =
    "datum,fingerprint,mu,adm,perm,perm_st,adm_subset_perm,adm_eq_perm,perm_eq_perm_st,perm_st_subset_adm";

/// One CSV row (no trailing newline). `μ` is written with spaces between
/// coordinates so it needs no quoting.
pub fn musets_csv_row(r: &MuSetReport) -> String {
    let mu: Vec<String> = r.mu.coords().iter().map(fmt_q).collect();
    let v = &r.verdicts;
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        r.datum,
        r.fingerprint,
        mu.join(" "),
        r.adm.len(),
        r.perm.len(),
        r.perm_st.len(),
        v.adm_subset_perm,
        v.adm_eq_perm,
        v.perm_eq_perm_st,
        v.perm_st_subset_adm
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::musets;
    use crate::rootsys::{build_root_datum, Family};

    #[test]
    fn element_encoding() {
        let d = build_root_datum(Family::GL, 2).unwrap();
        let t = ExtAffineElement::translation(&d, &RationalVector::from_ints(&[1, 0])).unwrap();
        let v = element_json(&d, &t);
        assert_eq!(v["translation"], json!([1, 0]));
        assert_eq!(v["length"], json!(1));
        assert!(v["omega"].is_object());
        let s = ExtAffineElement::simple_reflection(&d, 1);
        assert_eq!(element_json(&d, &s)["omega"], Value::Null);
        assert_eq!(element_json(&d, &s)["finite_part_word"], json!([1]));
    }

    #[test]
    fn rational_translations_are_strings() {
        let d = build_root_datum(Family::G2, 2).unwrap();
        let v = vector_json(d.simple_coroots().last().unwrap());
        assert!(v.as_array().unwrap().iter().any(|x| x.is_string()));
    }

    #[test]
    fn report_shape() {
        let d = build_root_datum(Family::GL, 3).unwrap();
        let r = musets::compare(&d, &RationalVector::from_ints(&[1, 0, 0])).unwrap();
        let j = musets_json(&d, &r);
        assert_eq!(j["schema"], MUSETS_SCHEMA);
        assert_eq!(j["counts"]["adm"], json!(r.adm.len()));
        assert_eq!(j["verdicts"]["adm_eq_perm"], json!(true));
        let row = musets_csv_row(&r);
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
    }
}
