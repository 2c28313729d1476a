//! JSON renderings of exact values, spectra, decompositions and reports.
//!
//! Exact values are written as `{"order": N, "coeffs": ["p/q", ...],
//! "decimal": {"re": .., "im": ..}}` where `coeffs` is the canonical form
//! (length `phi(N)`) and the decimal parts are rounded to 12 places.

use serde_json::{json, Value};

use crate::atoms::{atom_of, eclass_of, AtomDecomposition};
use crate::cayley::{ConnectionSet, ExactSpectrum};
use crate::cyclotomic::CycloNum;
use crate::group::{ElementSet, GroupElement, GroupSpec};
use crate::integrality::{nonzero_atoms, ClassificationReport};
use crate::scalar::ExactScalar;

fn round12(v: f64) -> f64 {
    let r = (v * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn element_json(x: &GroupElement) -> Value {
    json!(x.coords())
}

pub fn set_json(set: &ElementSet) -> Value {
    Value::Array(set.iter().map(element_json).collect())
}

pub fn cyclo_json<T: ExactScalar>(z: &CycloNum<T>) -> Value {
    let c = z.to_complex();
    json!({
        "order": z.order(),
        "coeffs": z.canonical_coeffs().iter().map(ExactScalar::to_ratio_string).collect::<Vec<_>>(),
        "decimal": { "re": round12(c.re), "im": round12(c.im) },
    })
}

pub fn spectrum_entries_json<T: ExactScalar>(s: &ExactSpectrum<T>) -> Value {
    Value::Array(
        s.entries
            .iter()
            .map(|(alpha, v)| json!({ "alpha": element_json(alpha), "value": cyclo_json(v) }))
            .collect(),
    )
}

pub fn spectrum_json<T: ExactScalar>(cs: &ConnectionSet, s: &ExactSpectrum<T>) -> Value {
    json!({
        "group": cs.group().to_string(),
        "set": set_json(cs.members()),
        "kind": s.kind.name(),
        "entries": spectrum_entries_json(s),
    })
}

pub fn decomposition_json(d: &Option<AtomDecomposition>) -> Value {
    match d {
        None => Value::Null,
        Some(d) => Value::Array(
            d.representatives
                .iter()
                .zip(&d.classes)
                .map(|(r, c)| json!({ "representative": element_json(r), "members": set_json(c) }))
                .collect(),
        ),
    }
}

/// `{"group", "set", "hs_integral", "eisenstein_integral", "sym_atoms",
/// "skew_classes", "hs_spectrum", "a_spectrum", "consistent", "verdicts"}`
pub fn classification_json<T: ExactScalar>(r: &ClassificationReport<T>) -> Value {
    json!({
        "group": r.group.to_string(),
        "set": set_json(r.set.members()),
        "hs_integral": r.hs_verdict_spectral,
        "eisenstein_integral": r.eisenstein_verdict_spectral,
        "sym_atoms": decomposition_json(&r.sym_decomposition),
        "skew_classes": decomposition_json(&r.skew_decomposition),
        "hs_spectrum": spectrum_entries_json(&r.hs_spectrum),
        "a_spectrum": spectrum_entries_json(&r.a_spectrum),
        "consistent": r.consistency,
        "verdicts": {
            "characterization": r.hs_verdict_characterization,
            "hs_spectral": r.hs_verdict_spectral,
            "eisenstein_spectral": r.eisenstein_verdict_spectral,
        },
    })
}

/// Atoms of the nonzero elements, each with its `<<x>>` split when the
/// order is divisible by 3.
pub fn atoms_json(g: &GroupSpec) -> Value {
    let atoms: Vec<Value> = nonzero_atoms(g)
        .into_iter()
        .map(|atom| {
            let rep = atom.first().cloned().expect("atoms are nonempty");
            let classes = match eclass_of(g, &rep) {
                Ok(plus) => {
                    let minus = eclass_of(g, &g.neg(&rep)).expect("-x has the order of x");
                    let mut pair = [plus, minus];
                    pair.sort_by(|a, b| a.first().cmp(&b.first()));
                    Value::Array(
                        pair.iter()
                            .map(|c| json!({ "representative": element_json(c.first().unwrap()), "members": set_json(c) }))
                            .collect(),
                    )
                }
                Err(_) => Value::Null,
            };
            json!({
                "representative": element_json(&rep),
                "order": g.order_of(&rep),
                "members": set_json(&atom_of(g, &rep)),
                "skew_classes": classes,
            })
        })
        .collect();
    json!({ "group": g.to_string(), "atoms": atoms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn cyclo_serialization() {
        let z = CycloNum::<Rational64>::root(6, 1).unwrap();
        let v = cyclo_json(&z);
        assert_eq!(v["order"], 6);
        assert_eq!(v["coeffs"], json!(["0/1", "1/1"]));
        assert_eq!(v["decimal"]["re"], 0.5);
        let minus = cyclo_json(&CycloNum::<Rational64>::root(6, 3).unwrap());
        assert_eq!(minus["decimal"]["im"], 0.0);
        assert_eq!(minus["coeffs"], json!(["-1/1", "0/1"]));
    }

    #[test]
    fn atoms_listing() {
        let g = GroupSpec::new(&[9]).unwrap();
        let v = atoms_json(&g);
        let atoms = v["atoms"].as_array().unwrap();
        assert_eq!(atoms.len(), 2);
        assert_eq!(atoms[0]["members"], json!([[1], [2], [4], [5], [7], [8]]));
        assert_eq!(atoms[0]["skew_classes"][0]["members"], json!([[1], [4], [7]]));
        assert_eq!(atoms[0]["skew_classes"][1]["members"], json!([[2], [5], [8]]));
    }
}
