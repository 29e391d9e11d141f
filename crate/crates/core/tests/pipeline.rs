use std::f64::consts::PI;

use sobolev_core::geometry::scale;
use sobolev_core::harness::{functional_F, lambda_for, verify, Verdict};
use sobolev_core::spectral::{lambda_2d_with, lambda_ball, scale_lambda};
use sobolev_core::{build_body, json, BodyDescriptor, ConvexBody, ExponentPair, SolverConfig};

fn pair(p: f64, q: f64) -> ExponentPair {
    ExponentPair::new(p, q).unwrap()
}

fn coarse() -> SolverConfig {
    SolverConfig { mesh_h: 1.0 / 48.0, ..SolverConfig::default() }
}

#[test]
fn unit_square_torsion_reports_all_pass() {
    let sq = ConvexBody::unit_square();
    let reports = verify(&sq, pair(2.0, 1.0), &coarse()).unwrap();
    assert_eq!(reports.len(), 17);
    assert!(reports.iter().all(|r| r.passed()), "{reports:#?}");
    for name in ["moment-envelope-larson-lower", "moment-envelope-pv-upper"] {
        let r = reports.iter().find(|r| r.name == name).unwrap();
        assert_eq!(r.verdict, Verdict::Equality, "{name}");
    }
    let makai = reports.iter().find(|r| r.name == "makai-lower").unwrap();
    assert!((makai.rhs - 24.0).abs() < 1e-12);
}

#[test]
fn shape_functional_examples() {
    let disk = ConvexBody::ball(2, 1.0).unwrap();
    let est = lambda_ball(2, pair(2.0, 1.0), 1024).unwrap();
    let f = functional_F(&disk, pair(2.0, 1.0), &est);
    assert!((f - 2.0).abs() < 1e-5, "{f}");
    assert!((1.5..=3.0).contains(&f));

    let sq = ConvexBody::unit_square();
    let est = lambda_2d_with(&sq, pair(2.0, 2.0), 1.0 / 64.0, &SolverConfig::default()).unwrap();
    let f = functional_F(&sq, pair(2.0, 2.0), &est);
    assert!((f / (PI * PI / 8.0) - 1.0).abs() < 2e-3, "{f}");
    assert!(f > (PI / 4.0).powi(2) && f < (PI / 2.0).powi(2));
}

#[test]
fn shape_functional_is_scale_invariant() {
    let pr = pair(3.0, 2.0);
    let tri = ConvexBody::polygon(&[[0.0, 0.0], [1.0, 0.0], [0.3, 0.8]]).unwrap();
    let big = scale(&tri, 2.0).unwrap();
    let cfg = SolverConfig::default();
    let small = lambda_2d_with(&tri, pr, 1.0 / 64.0, &cfg).unwrap();
    let large = lambda_2d_with(&big, pr, 2.0 / 64.0, &cfg).unwrap();
    // same grid in scaled units, so only rounding separates the two
    assert!((functional_F(&tri, pr, &small) / functional_F(&big, pr, &large) - 1.0).abs() < 1e-6);
    assert!((scale_lambda(small.value, 2.0, 2, pr) / large.value - 1.0).abs() < 1e-6);
}

#[test]
fn ball_reports_reach_equality() {
    let ball = ConvexBody::ball(3, 2.0).unwrap();
    let reports = verify(&ball, pair(2.0, 2.0), &SolverConfig::default()).unwrap();
    for name in ["per-inr-upper", "inr-vol-upper"] {
        assert_eq!(reports.iter().find(|r| r.name == name).unwrap().verdict, Verdict::Equality);
    }
    assert!(reports.iter().all(|r| r.verdict != Verdict::Violated));
}

#[test]
fn three_dimensional_boxes_skip_the_spectral_reports() {
    let b = ConvexBody::box_at(vec![0.0; 3], vec![1.0, 1.0, 0.5]).unwrap();
    assert!(lambda_for(&b, pair(2.0, 1.0), &coarse()).is_err());
    let reports = verify(&b, pair(2.0, 1.0), &coarse()).unwrap();
    let makai = reports.iter().find(|r| r.name == "makai-lower").unwrap();
    assert_eq!(makai.verdict, Verdict::Skipped);
    assert!(makai.note.is_some());
    let borell = reports.iter().find(|r| r.name == "borell").unwrap();
    assert!(borell.passed());
}

#[test]
fn descriptor_to_report_json() {
    let desc: BodyDescriptor = serde_json::from_str(
        r#"{"kind": "polygon", "vertices": [[0,0],[1,0],[1,1],[0,1]]}"#,
    )
    .unwrap();
    let body = build_body(&desc).unwrap();
    let reports = verify(&body, pair(2.0, 1.0), &coarse()).unwrap();
    let text = json::to_string(&reports[..1]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v[0].as_object().unwrap().len(), 8);
    let again = verify(&body, pair(2.0, 1.0), &coarse()).unwrap();
    assert_eq!(json::to_string(&reports).unwrap(), json::to_string(&again).unwrap());
}
