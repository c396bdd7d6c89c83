use shaclform::rdf::{Term, Triple};
use shaclform::validate::{validate, ValidationResult};
use shaclform_testkit::gen::random_instance;
use shaclform_testkit::oracle::{evaluate, Expected};
use shaclform_testkit::rng;

fn project_engine(r: &ValidationResult) -> (Term, String, String, Option<Term>) {
    (
        r.focus_node.clone(),
        r.result_path.clone().unwrap(),
        r.component.clone(),
        r.value.clone(),
    )
}

fn project_oracle(e: &Expected) -> (Term, String, String, Option<Term>) {
    (e.focus.clone(), e.path.clone(), e.component.to_string(), e.value.clone())
}

#[test]
fn engine_matches_brute_force() {
    let mut r = rng(2024);
    let mut nonempty = 0;
    for case in 0..500 {
        let (data, shapes) = random_instance(&mut r);
        let report = validate(&data, &shapes);
        let expected = evaluate(&data, &shapes, &[]);
        let got: Vec<_> = report.results().iter().map(project_engine).collect();
        let want: Vec<_> = expected.iter().map(project_oracle).collect();
        assert_eq!(got, want, "case {case}");
        assert_eq!(report.conforms(), expected.is_empty(), "case {case}");
        nonempty += usize::from(!expected.is_empty());
    }
    // The generator must exercise both outcomes.
    assert!(nonempty > 100 && nonempty < 500, "{nonempty}");
}

#[test]
fn reports_are_deterministic() {
    let mut r = rng(5);
    for _ in 0..100 {
        let (data, shapes) = random_instance(&mut r);
        assert_eq!(validate(&data, &shapes).to_document(), validate(&data, &shapes).to_document());
    }
}

#[test]
fn non_conformance_has_results() {
    let mut r = rng(6);
    for _ in 0..300 {
        let (data, shapes) = random_instance(&mut r);
        let report = validate(&data, &shapes);
        assert!(report.conforms() || !report.results().is_empty());
    }
}

#[test]
fn adding_values_keeps_max_count_violations() {
    let mut r = rng(8);
    for _ in 0..300 {
        let (mut data, shapes) = random_instance(&mut r);
        let before: Vec<(Term, String)> = validate(&data, &shapes)
            .results()
            .iter()
            .filter(|x| x.component == "max_count")
            .map(|x| (x.focus_node.clone(), x.result_path.clone().unwrap()))
            .collect();
        for (i, (focus, path)) in before.iter().enumerate() {
            let extra = Term::literal(format!("extra-{i}"));
            data.insert(Triple::new(focus.clone(), Term::iri(path.as_str()), extra).unwrap());
        }
        let after = validate(&data, &shapes);
        for (focus, path) in &before {
            assert!(after
                .results()
                .iter()
                .any(|x| x.component == "max_count" && &x.focus_node == focus && x.result_path.as_ref() == Some(path)));
        }
    }
}
