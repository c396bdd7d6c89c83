mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use common::*;
use shaclform::rdf::parse_turtle;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn run(config: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shaclform"))
        .arg("--config")
        .arg(config)
        .args(args)
        .output()
        .unwrap()
}

fn example() -> PathBuf {
    config_dir().join("shaclform.toml")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_exit_codes() {
    let ok = run(&example(), &["validate", fixture("conforming.ttl").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&stdout(&ok))["conforms"], true);

    let bad = run(&example(), &["validate", fixture("two_titles.ttl").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    let report = json(&stdout(&bad));
    assert_eq!(report["results"].as_array().unwrap().len(), 1);
    assert_eq!(report["results"][0]["sourceConstraintComponent"], "max_count");

    let missing = run(&example(), &["validate", "/nonexistent/data.ttl"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stdout(&missing).is_empty());
}

#[test]
fn unparsable_data_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("broken.ttl");
    fs::write(&data, "<http://e/a> <http://e/b> .").unwrap();
    assert_eq!(run(&example(), &["validate", data.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_and_config_errors() {
    assert_eq!(run(&example(), &[]).status.code(), Some(2));
    assert_eq!(run(&example(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&example(), &["--help"]).status.code(), Some(0));
    let no_config = run(Path::new("/nonexistent/shaclform.toml"), &["validate", fixture("conforming.ttl").to_str().unwrap()]);
    assert_eq!(no_config.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&no_config.stderr).contains("config"));
}

#[test]
fn compile_form_prints_schema() {
    let out = run(&example(), &["compile-form", "schema:BibliographicResourceShape"]);
    assert_eq!(out.status.code(), Some(0));
    let schema = json(&stdout(&out));
    assert_eq!(schema["shapeId"], SHAPE);
    assert_eq!(run(&example(), &["compile-form", "schema:Unknown"]).status.code(), Some(2));
}

#[test]
fn submit_dry_run_and_rejection() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    fs::write(&good, doi_payload(DOI)).unwrap();
    let out = run(&example(), &["submit", good.to_str().unwrap(), "--dry-run"]);
    assert_eq!(out.status.code(), Some(0));
    let graph = parse_turtle(&stdout(&out), None).unwrap();
    assert_eq!(graph.len(), 3);

    let missing = dir.path().join("missing.json");
    fs::write(&missing, doi_payload(MISSING_DOI)).unwrap();
    let out = run(&example(), &["submit", missing.to_str().unwrap(), "--dry-run"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(phases(&json(&stdout(&out))), ["custom"]);

    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{").unwrap();
    assert_eq!(run(&example(), &["submit", junk.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn submit_delivery_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let closed = std::net::TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap();
    let text = fs::read_to_string(example()).unwrap().replace(
        "# endpoint_url = \"http://localhost:9999/blazegraph/sparql\"",
        &format!("endpoint_url = \"http://{closed}/sparql\""),
    );
    let text = text
        .replace("../../core/fixtures/ocdm.ttl", fixture("ocdm.ttl").to_str().unwrap())
        .replace("probe-fixtures.json", config_dir().join("probe-fixtures.json").to_str().unwrap());
    let config = dir.path().join("shaclform.toml");
    fs::write(&config, text).unwrap();
    let payload = dir.path().join("p.json");
    fs::write(&payload, doi_payload(DOI)).unwrap();
    let out = run(&config, &["submit", payload.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(parse_turtle(&stdout(&out), None).unwrap().len(), 3);
}

#[test]
fn serve_with_invalid_config_never_listens() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    let port = std::net::TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    fs::write(
        &config,
        format!(
            "shapes_path = {:?}\nlisten_address = \"127.0.0.1:{port}\"\n[minting]\nbase_iri = \"https://e/\"\n[[bindings]]\nvalidator = \"isbn\"\nshape = \"schema:JournalShape\"\npath = \"dcterms:title\"\n",
            fixture("ocdm.ttl")
        ),
    )
    .unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_shaclform"))
        .arg("--config")
        .arg(&config)
        .arg("serve")
        .stdout(Stdio::null())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let start = Instant::now();
    let status = loop {
        if let Some(status) = child.try_wait().unwrap() {
            break status;
        }
        assert!(std::net::TcpStream::connect(("127.0.0.1", port)).is_err(), "service started listening");
        if start.elapsed() > Duration::from_secs(10) {
            child.kill().unwrap();
            panic!("serve did not exit");
        }
        std::thread::sleep(Duration::from_millis(20));
    };
    assert_eq!(status.code(), Some(2));
}

#[test]
fn serve_listens_on_env_address() {
    let port = std::net::TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let mut child = Command::new(env!("CARGO_BIN_EXE_shaclform"))
        .arg("--config")
        .arg(example())
        .arg("serve")
        .env("SHACLFORM_LISTEN", format!("127.0.0.1:{port}"))
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let agent: ureq::Agent = ureq::Agent::config_builder().http_status_as_error(false).build().into();
    let url = format!("http://127.0.0.1:{port}/api/forms");
    let start = Instant::now();
    let body = loop {
        if let Ok(mut resp) = agent.get(&url).call() {
            break resp.body_mut().read_to_string().unwrap();
        }
        assert!(start.elapsed() < Duration::from_secs(10), "service never answered");
        std::thread::sleep(Duration::from_millis(20));
    };
    child.kill().unwrap();
    child.wait().unwrap();
    assert_eq!(json(&body)["forms"].as_array().unwrap().len(), 3);
}
