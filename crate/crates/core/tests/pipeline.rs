use hhci_core::abelian::{group_cohomology, group_hh, AbelianGroup};
use hhci_core::algebra::{HciStatus, NormalFormStrategy, Presentation, Regularity};
use hhci_core::bar::{bar_cohomology, FiniteAlgebra};
use hhci_core::calculus::{hessian_q, parse_derivation};
use hhci_core::cliffdg::{cup_square_class, hh, hodge, CliffordModel};
use hhci_core::coeff::CoeffRing;
use hhci_core::cyclic::{cyclic_hh, periodic_model, Classification};
use serde_json::json;

fn from_json(v: serde_json::Value) -> Presentation {
    Presentation::from_json(&v.to_string()).unwrap()
}

#[test]
fn json_presentation_round_trip() {
    let p = from_json(json!({"ring": "Z/6", "vars": ["a", "b"], "relations": ["a^2 - 1", "b^3 + 2*a"]}));
    assert_eq!(p.strategy(), NormalFormStrategy::Triangular);
    let spec = p.to_spec();
    // coefficients print as residues in 0..6
    assert_eq!(spec.relations, vec!["a^2 + 5", "b^3 + 2*a"]);
    let again = Presentation::from_spec(&spec).unwrap();
    assert_eq!(again.relations(), p.relations());
    assert_eq!(p.k_basis().unwrap().len(), 6);
}

#[test]
fn malformed_presentations() {
    let bad = [
        r#"{"ring": "GF(4)", "vars": ["x"], "relations": ["x"]}"#,
        r#"{"ring": "Q", "vars": ["x"], "relations": ["y"]}"#,
        r#"{"ring": "Q", "vars": ["x"], "relations": ["x^"]}"#,
        r#"{"ring": "Q", "vars": ["x"], "relations": ["x"], "extra": 1}"#,
        r#"{"ring": "Q", "vars": ["x", "x"], "relations": ["x"]}"#,
    ];
    for text in bad {
        let e = Presentation::from_json(text).unwrap_err();
        assert!(e.is_input_error(), "{text}: {e}");
    }
}

#[test]
fn graded_module_serialization() {
    let p = from_json(json!({"ring": "Z", "vars": ["x"], "relations": ["x^2 - 1"]}));
    let module = hh(&p, 2).unwrap();
    let v = serde_json::to_value(&module).unwrap();
    assert_eq!(
        v,
        json!({
            "degrees": [
                {"free_rank": 2, "torsion": []},
                {"free_rank": 0, "torsion": []},
                {"free_rank": 0, "torsion": ["2", "2"]}
            ],
            "assumptions": []
        })
    );
}

#[test]
fn regularity_is_certified_or_assumed() {
    let spec = json!({"ring": "Z", "vars": ["x"], "relations": ["17*x"]});
    assert_eq!(from_json(spec.clone()).regularity().unwrap_err().kind(), "StrategyError");
    let mut assumed = spec;
    assumed["assume_regular"] = json!(true);
    assert_eq!(from_json(assumed).regularity().unwrap(), Regularity::Assumed);
    let q = from_json(json!({"ring": "GF(2)", "vars": ["x"], "relations": ["x^2"]}));
    assert_eq!(q.regularity().unwrap(), Regularity::Verified);
    assert!(hh(&q, 1).unwrap().assumptions.is_empty());
    let not_regular = from_json(json!({"ring": "Q", "vars": ["x", "y"], "relations": ["x^2", "x*y"]}));
    assert_eq!(not_regular.regularity().unwrap_err().kind(), "NotRegular");
}

#[test]
fn three_routes_to_the_dual_numbers() {
    let p = from_json(json!({"ring": "GF(2)", "vars": ["x"], "relations": ["x^2"]}));
    let engine = hh(&p, 3).unwrap();
    let closed = cyclic_hh(&p, 3).unwrap();
    let bar = bar_cohomology(&FiniteAlgebra::from_presentation(&p).unwrap(), 3).unwrap();
    assert_eq!(engine.degrees, closed.dims.degrees);
    assert_eq!(engine.degrees, bar.degrees);
    assert_eq!(closed.classification, Classification::TotallyRamified);
}

#[test]
fn group_algebra_of_c2_over_gf2_is_the_dual_numbers() {
    // x^2 - 1 = (x + 1)^2 in characteristic 2
    let g = AbelianGroup::new(&[2]).unwrap();
    let gf2 = CoeffRing::PrimeField(2);
    let dual = from_json(json!({"ring": "GF(2)", "vars": ["x"], "relations": ["x^2"]}));
    assert_eq!(group_hh(&g, &gf2, 5).unwrap().degrees, hh(&dual, 5).unwrap().degrees);
    let hg = group_cohomology(&g, &gf2, 5).unwrap();
    assert_eq!(hg.dimensions().unwrap(), vec![1; 6]);
}

#[test]
fn hessian_square_and_clifford_square_agree() {
    let p = from_json(json!({"ring": "Z", "vars": ["x", "y"], "relations": ["x^2 - 4*x*y + y^2 - 1"]}));
    let d = parse_derivation("2*x - y, x - 2*y", &p).unwrap();
    let q = hessian_q(&d, &p).unwrap();
    let model = CliffordModel::from_presentation(&p).unwrap();
    assert_eq!(cup_square_class(&d, &p).unwrap(), model.linear_in_s(&q));
    assert_eq!(model.display(&model.linear_in_s(&q)), "-3*s1");
}

#[test]
fn hodge_totals_over_z() {
    let p = from_json(json!({"ring": "Z", "vars": ["x"], "relations": ["x^3 - x"]}));
    let table = hodge(&p, 4).unwrap();
    let total = hh(&p, 4).unwrap();
    for (deg, module) in total.degrees.iter().enumerate() {
        assert_eq!(&table.total(deg), module, "degree {deg}");
    }
}

#[test]
fn periodic_model_gates() {
    let f = from_json(json!({"ring": "Z", "vars": ["x"], "relations": ["x^2 - 2"]}));
    let m = periodic_model(&f.relations()[0]).unwrap();
    assert_eq!(m.status, HciStatus::Hci);
    let g = from_json(json!({"ring": "Z", "vars": ["x"], "relations": ["6*x + 4"]}));
    assert_eq!(periodic_model(&g.relations()[0]).unwrap().status.label(), "NotHCI");
}
