use std::path::PathBuf;

use proptest::prelude::*;

use bqg_core::error::Error;
use bqg_core::io::{decode_scalar, emit_model, emit_morphism, encode_scalar, parse_model, parse_morphism, read_model};
use bqg_core::models::{drinfeld_double, function_algebra, group_algebra, taft, GroupTable};
use bqg_core::scalar::{Cyclo, Rational};
use bqg_core::subgroups::restriction;

fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn format_message(text: &str) -> String {
    match parse_model(text) {
        Err(Error::Format(msg)) => msg,
        other => panic!("expected a format error, got {other:?}"),
    }
}

fn c_z2_text() -> String {
    std::fs::read_to_string(models_dir().join("c_z2.json")).unwrap()
}

#[test]
fn shipped_models_round_trip_byte_for_byte() {
    let mut seen = 0;
    for entry in std::fs::read_dir(models_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "json") || path.file_stem().unwrap() == "broken" {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let m = read_model(&path).unwrap();
        assert_eq!(emit_model(&m).unwrap() + "\n", text, "{}", path.display());
        seen += 1;
    }
    assert_eq!(seen, 10);
}

#[test]
fn broken_model_still_parses() {
    // structurally valid; the failure is in the Hopf axioms
    assert!(read_model(&models_dir().join("broken.json")).is_ok());
}

#[test]
fn out_of_range_index_names_the_field() {
    let text = c_z2_text().replacen("[1,1,1,[\"1\"]]", "[1,1,7,[\"1\"]]", 1);
    let msg = format_message(&text);
    assert!(msg.contains("mult[1]") && msg.contains("index 7"), "{msg}");
}

#[test]
fn unknown_fields_are_rejected() {
    let text = c_z2_text().replacen("\"positive\"", "\"colour\": 1,\n  \"positive\"", 1);
    assert!(format_message(&text).contains("unknown field `colour`"));
}

#[test]
fn syntax_errors_report_the_line() {
    let text = c_z2_text().replacen("\"d_1\"]", "\"d_1\"", 1);
    let msg = format_message(&text);
    assert!(msg.contains("line 6"), "{msg}");
}

#[test]
fn too_many_coefficients_for_the_field() {
    let text = c_z2_text().replacen("[0,0,0,[\"1\"]]", "[0,0,0,[\"1\",\"1\"]]", 1);
    let msg = format_message(&text);
    assert!(msg.contains("exceed the field order 1"), "{msg}");
    assert!(matches!(decode_scalar(&["1/0".into()], 3, "x"), Err(Error::Format(_))));
}

#[test]
fn scalar_outside_the_declared_field_is_refused() {
    assert!(encode_scalar(&Cyclo::root_of_unity(3, 1), 4).is_err());
    // ζ_3 = ζ_6 - 1, reduced to the power basis of length φ(6)
    assert_eq!(encode_scalar(&Cyclo::root_of_unity(3, 1), 6).unwrap(), vec!["-1", "1"]);
}

#[test]
fn morphism_files_round_trip() {
    let g = GroupTable::symmetric3();
    let source = function_algebra(&g, "c_s3");
    let (target, mor) = restriction(&g, &[0, 3, 4], "c_a3").unwrap();
    let text = emit_morphism(&source, &target, &mor).unwrap();
    assert_eq!(parse_morphism(&text, &source, &target).unwrap(), mor);
    // the file names the models it connects
    assert!(parse_morphism(&text, &target, &source).is_err());
    let shipped = std::fs::read_to_string(models_dir().join("maps/restrict_a3.json")).unwrap();
    let c_z3 = read_model(&models_dir().join("c_z3.json")).unwrap();
    assert_eq!(parse_morphism(&shipped, &source, &c_z3).unwrap(), mor);
}

proptest! {
    #[test]
    fn scalars_round_trip_in_q_zeta_12(coeffs in prop::collection::vec((-20i64..20, 1i64..9), 12)) {
        let x = Cyclo::from_powers(12, coeffs.iter().map(|&(p, q)| Rational::new(p, q)).collect());
        let enc = encode_scalar(&x, 12).unwrap();
        prop_assert!(enc.len() <= 4, "reduced to φ(12) coefficients");
        prop_assert_eq!(decode_scalar(&enc, 12, "x").unwrap(), x.clone());
        // any multiple of the order works too
        prop_assert_eq!(decode_scalar(&encode_scalar(&x, 24).unwrap(), 24, "x").unwrap(), x);
    }

    #[test]
    fn built_models_round_trip(n in 1usize..6, kind in 0usize..4) {
        let g = GroupTable::cyclic(n);
        let m = match kind {
            0 => function_algebra(&g, "c"),
            1 => group_algebra(&g, "cg"),
            2 => drinfeld_double(&g, "d"),
            _ => taft(n.max(2)).unwrap(),
        };
        let text = emit_model(&m).unwrap();
        let back = parse_model(&text).unwrap();
        prop_assert_eq!(emit_model(&back).unwrap(), text);
        prop_assert_eq!(&back.data().mult, &m.data().mult);
        prop_assert_eq!(&back.data().coprod, &m.data().coprod);
    }
}
