//! End-to-end command tests: exit codes, report shape, export round trips.

use std::process::{Command, Output};

use orbitcat::report::{reports_equal, Report};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitcat"))
        .args(args)
        .output()
        .unwrap()
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("orbitcat-cli-{name}-{}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn analyze_prints_a_report() {
    let out = run(&["analyze", "rotation_sphere(5)"]);
    assert!(out.status.success());
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.command, "analyze");
    assert_eq!(report.scenario_name, "rotation_sphere(5)");
    assert_eq!(report.body["group_order"], 5);
    assert_eq!(report.body["phi0_objects"], 3);
    assert_eq!(report.body["phi0_morphisms"], 11);
}

#[test]
fn check_passes_on_builtins() {
    let out = run(&["check", "symmetric_triangle"]);
    assert!(out.status.success());
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.body["all_pass"], true);
    let items = report.body["items"].as_array().unwrap();
    assert!(!items.is_empty());
    assert!(items.iter().all(|i| i["pass"] == true));
}

#[test]
fn malformed_json_exits_2() {
    let path = write_temp("bad.json", "{ not json");
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn missing_file_is_treated_as_example_reference() {
    let out = run(&["analyze", "/no/such/file.json"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error:"));
}

#[test]
fn invalid_scenario_exits_3() {
    let path = write_temp(
        "degree.json",
        r#"{"name":"bad","group":{"degree":4,"generators":[[1,2,3,0]]},
           "complex":{"vertex_count":3,"facets":[[0,1,2]]}}"#,
    );
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn non_bijective_generator_exits_3() {
    let path = write_temp(
        "perm.json",
        r#"{"name":"bad","group":{"degree":3,"generators":[[0,0,2]]},
           "complex":{"vertex_count":3,"facets":[[0,1],[1,2]]}}"#,
    );
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn unknown_subgroup_generator_exits_4() {
    let path = write_temp(
        "component.json",
        r#"{"name":"bad",
           "group":{"degree":3,"generators":[[1,2,0]],"component_subgroup":[5]},
           "complex":{"vertex_count":3,"facets":[[0,1],[1,2],[0,2]]}}"#,
    );
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn xh_with_unknown_element_exits_4() {
    let out = run(&["xh", "rotation_sphere(5)", "--subgroup", "99"]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&["xh", "rotation_sphere(5)", "--subgroup", "1"]);
    assert!(out.status.success());
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.body["objects"], 8);
}

#[test]
fn example_output_loads_back() {
    let out = run(&["example", "swapped_squares"]);
    assert!(out.status.success());
    let path = write_temp("example.json", &String::from_utf8(out.stdout).unwrap());
    let check = run(&["check", path.to_str().unwrap()]);
    assert!(check.status.success());
    std::fs::remove_file(path).unwrap();
}

#[test]
fn export_round_trip_is_stable() {
    let dot = run(&["export", "rotation_sphere(5)", "--format", "dot"]);
    assert!(dot.status.success());
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    let json = run(&["export", "rotation_sphere(5)", "--format", "json"]);
    assert!(json.status.success());
    let value: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(value["strata"].as_array().unwrap().len(), 3);
    // exporting into a file matches stdout
    let path = std::env::temp_dir().join(format!("orbitcat-cli-export-{}", std::process::id()));
    let to_file = run(&[
        "export",
        "rotation_sphere(5)",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), String::from_utf8(json.stdout).unwrap());
    std::fs::remove_file(path).unwrap();
}

#[test]
fn strata_flags_are_respected() {
    let out = run(&[
        "strata",
        "dihedral_polygon(3)",
        "--mode",
        "conj",
        "--where",
        "source",
    ]);
    assert!(out.status.success());
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.body["strata"].as_array().unwrap().len(), 12);
}

#[test]
fn repeated_reports_differ_only_in_timestamp() {
    let a: Report = serde_json::from_slice(&run(&["phi0", "symmetric_triangle"]).stdout).unwrap();
    let b: Report = serde_json::from_slice(&run(&["phi0", "symmetric_triangle"]).stdout).unwrap();
    assert!(reports_equal(&a, &b));
}

#[test]
fn bold_flag_reports_the_comparison() {
    let out = run(&["phi0", "rotation_sphere(5)", "--bold"]);
    assert!(out.status.success());
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    let kappa = &report.body["bold"]["kappa"];
    assert_eq!(kappa["functorial"], true);
    assert_eq!(kappa["essentially_surjective"], true);
    assert_eq!(kappa["object_injective"], true);
}
