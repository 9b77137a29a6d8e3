mod common;

use common::q;
use nogo_core::certificate::{verify, Certificate, LoadError, Payload};
use nogo_core::liealg::{Builtin, LieAlgebra};
use nogo_core::nogo::{
    ad_invariance_certificate, bracket_decomposition, derived_ideal_certificate, feasibility_probe,
    gram_positivity_certificate, nogo_report, ParamValue, Verdict, REPORT_SAMPLES, REPORT_SEED,
};
use nogo_core::orbit::{minimality_witness, OrbitPoint};
use nogo_core::poisson::{poly_space, OrbitIdeal, PolySpace, Polynomial};
use serde_json::Value;

fn su2() -> LieAlgebra {
    Builtin::Su2.build().unwrap()
}

fn space(k: u32) -> PolySpace {
    poly_space(&su2(), k, Some(OrbitIdeal::sphere(q(1))), 100).unwrap()
}

/// Applies `edit` to the JSON form and checks that the result no longer
/// verifies, whether it fails to load or fails the re-check.
fn assert_rejected(cert: &Certificate, what: &str, edit: impl FnOnce(&mut Value)) {
    let mut v: Value = serde_json::from_str(&cert.to_json()).unwrap();
    edit(&mut v);
    match Certificate::from_json(&v.to_string()) {
        Ok(c) => assert!(
            verify(&c).is_err(),
            "{what}: tampered certificate still verifies"
        ),
        Err(LoadError::Shape(_)) => {}
        Err(e) => panic!("{what}: unexpected load error {e}"),
    }
}

fn bump(v: &mut Value) {
    let s = v.as_str().expect("rational stored as a string").to_string();
    // Appending a digit changes any nonzero value; zero becomes one.
    *v = Value::String(if s == "0" {
        "1".into()
    } else {
        format!("{s}1")
    });
}

#[test]
fn fresh_certificates_verify_and_are_marked() {
    let s = space(2);
    let l = su2();
    for cert in [
        derived_ideal_certificate(&l, &s).unwrap(),
        gram_positivity_certificate(&l, &s).unwrap(),
        ad_invariance_certificate(&l, &s, 5, 7).unwrap(),
    ] {
        assert!(cert.checked);
        let reloaded = Certificate::from_json(&cert.to_json()).unwrap();
        assert!(verify(&reloaded).unwrap().checked);
    }
}

#[test]
fn derived_ideal_tampering_is_caught() {
    let cert = derived_ideal_certificate(&su2(), &space(2)).unwrap();
    assert_rejected(&cert, "laplacian entry", |v| {
        bump(&mut v["payload"]["laplacian"][1][1])
    });
    assert_rejected(&cert, "mean weight", |v| bump(&mut v["payload"]["mean"][4]));
    assert_rejected(&cert, "rank", |v| v["payload"]["rank"] = Value::from(9));
    assert_rejected(&cert, "preimage", |v| {
        bump(&mut v["payload"]["preimages"][0]["coords"][1])
    });
    assert_rejected(&cert, "degree cap", |v| {
        v["payload"]["setting"]["k"] = Value::from(3)
    });
}

#[test]
fn gram_and_ad_invariance_tampering_is_caught() {
    let gram = gram_positivity_certificate(&su2(), &space(2)).unwrap();
    assert_rejected(&gram, "gram entry", |v| {
        bump(&mut v["payload"]["gram"][0][0])
    });
    assert_rejected(&gram, "minor", |v| bump(&mut v["payload"]["minors"][2]));

    let ad = ad_invariance_certificate(&su2(), &space(2), 10, 3).unwrap();
    assert_rejected(&ad, "residual", |v| {
        v["payload"]["max_residual"] = Value::from("1/2")
    });
    assert_rejected(&ad, "triple count", |v| {
        v["payload"]["triples"] = Value::from(1)
    });
    assert_rejected(&ad, "algebra", |v| {
        v["payload"]["setting"]["algebra"]["brackets"][0]["coeffs"][0]["v"] = Value::from("2")
    });
}

#[test]
fn bracket_decomposition_tampering_is_caught() {
    let l = su2();
    let s = space(2);
    let f = Polynomial::parse("x1*x2", 3).unwrap();
    let cert = bracket_decomposition(&l, &s, &f).unwrap();
    assert_rejected(&cert, "target", |v| {
        v["payload"]["f"] = serde_json::to_value(Polynomial::parse("x1*x3", 3).unwrap()).unwrap()
    });
    assert_rejected(&cert, "pair dropped", |v| {
        v["payload"]["pairs"].as_array_mut().unwrap().pop();
    });
}

#[test]
fn bracket_decomposition_rejects_nonzero_mean() {
    let f = Polynomial::parse("x1^2", 3).unwrap();
    let err = bracket_decomposition(&su2(), &space(2), &f).unwrap_err();
    assert!(err.to_string().contains("mean 1/3"), "{err}");
}

#[test]
fn minimality_tampering_is_caught() {
    let p = OrbitPoint::new(su2(), vec![q(0), q(0), q(1)]).unwrap();
    let cert = minimality_witness(&p).unwrap();
    verify(&cert).unwrap();
    assert_rejected(&cert, "step vector", |v| {
        bump(&mut v["payload"]["steps"][0]["vector"][0])
    });
    assert_rejected(&cert, "chain", |v| {
        v["payload"]["chain"] = Value::from(vec![2])
    });
}

#[test]
fn triviality_conclusion_checks_nested_certificates() {
    let l = su2();
    let ideal = OrbitIdeal::sphere(q(1));
    let cert = nogo_report(l.constants(), Some(&ideal), 2, 100).unwrap();
    assert!(cert.checked);
    let Payload::TrivialityConclusion(t) = &cert.body else {
        panic!("wrong kind")
    };
    assert_eq!(t.steps.len(), 8);
    assert!(t.steps.iter().all(|s| s.passed));
    assert_rejected(&cert, "nested gram", |v| {
        bump(&mut v["payload"]["gram_positivity"]["payload"]["gram"][0][0])
    });
    assert_rejected(&cert, "failed step", |v| {
        v["payload"]["steps"][3]["passed"] = Value::from(false)
    });

    // A nested certificate from another setting is rejected even though it
    // verifies on its own.
    let other = ad_invariance_certificate(&l, &space(1), REPORT_SAMPLES, REPORT_SEED).unwrap();
    assert_rejected(&cert, "mismatched setting", |v| {
        v["payload"]["ad_invariance"] = serde_json::from_str(&other.to_json()).unwrap()
    });
}

#[test]
fn feasibility_verdicts_are_rechecked() {
    let obstruction = Certificate::new(Payload::FeasibilityVerdict(
        feasibility_probe(&common::qq(1, 2), 2).unwrap(),
    ));
    verify(&obstruction).unwrap();
    assert_rejected(&obstruction, "residual", |v| {
        v["payload"]["verdict"]["ResidualObstruction"]["constraint"] = Value::from(0)
    });
    assert_rejected(&obstruction, "image", |v| {
        bump(&mut v["payload"]["images"][4]["matrix"][0][0][0])
    });

    let payload = feasibility_probe(&q(1), 2).unwrap();
    let Verdict::Feasible { values } = &payload.verdict else {
        panic!(
            "spin 1 at k = 2 should be feasible, got {:?}",
            payload.verdict
        )
    };
    assert!(matches!(values[0], ParamValue::Root(_)));
    let feasible = Certificate::new(Payload::FeasibilityVerdict(payload));
    verify(&feasible).unwrap();
    assert_rejected(&feasible, "root", |v| {
        v["payload"]["verdict"]["Feasible"]["values"][0] = serde_json::json!({"Rational": "1"})
    });

    let infeasible = Certificate::new(Payload::FeasibilityVerdict(
        feasibility_probe(&common::qq(3, 2), 3).unwrap(),
    ));
    verify(&infeasible).unwrap();
    assert_rejected(&infeasible, "multiplier", |v| {
        v["payload"]["verdict"]["LinearInfeasible"]["multipliers"]
            .as_array_mut()
            .unwrap()
            .pop();
    });
}
