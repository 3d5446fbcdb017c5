use metrized_tau_web::{family_summary_json, hex_spectrum_json, hex_sweep_json};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.expect("export succeeds")).unwrap()
}

#[test]
fn summary_matches_published_cell() {
    let v = parse(family_summary_json("hex", 4, 4, 0));
    assert!((v["reciprocal"].as_f64().unwrap() - 57.21661).abs() < 5e-5 * 57.2);
    assert_eq!(v["edges"].as_array().unwrap().len(), 75);
    let k4 = parse(family_summary_json("complete", 4, 0, 0));
    // Unit K4 has Kf = 3; scaled to total length 1 it is 3/6.
    assert!((k4["kirchhoff_index"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn large_hex_uses_lattice_sum() {
    let v = parse(family_summary_json("hex", 4, 149, 0));
    assert_eq!(v["method"], "analytic");
    assert!((v["reciprocal"].as_f64().unwrap() - 89.67482).abs() < 5e-5 * 89.7);
}

#[test]
fn errors_are_messages() {
    assert!(family_summary_json("tt", 3, 3, 5).is_err());
    assert!(family_summary_json("nope", 1, 1, 1).is_err());
    assert!(hex_sweep_json(1).is_err());
}

#[test]
fn spectrum_and_sweep() {
    let s = parse(hex_spectrum_json(2, 3));
    assert_eq!(s["eigenvalues"].as_array().unwrap().len(), 24);
    assert!(s["numeric_gap"].as_f64().unwrap() < 1e-8);
    let sweep = parse(hex_sweep_json(20));
    let pts = sweep.as_array().unwrap();
    assert_eq!(pts.len(), 19);
    for p in &pts[1..] {
        let t = p["tau"].as_f64().unwrap();
        assert!(p["lower"].as_f64().unwrap() <= t && t <= p["upper"].as_f64().unwrap());
    }
}
