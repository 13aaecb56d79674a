//! End-to-end subprocess tests: exit codes, text fixtures, JSON schema.

use std::process::{Command, Output};

fn dioph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dioph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf8 stderr")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

#[test]
fn solve_lists_members_and_matrix() {
    let out = dioph(&["solve", "x^2 - 3y^2 - 4 = 0", "--terms", "4"]);
    let text = stdout(&out);
    assert_eq!(code(&out), 0, "{text}");
    assert!(text.contains("[[2, 3], [1, 2]]"), "{text}");
    for member in ["(2, 0)", "(4, 2)", "(14, 8)", "(52, 30)"] {
        assert!(text.contains(member), "missing {member} in {text}");
    }
}

#[test]
fn solve_sign_argument_is_success() {
    let out = dioph(&["solve", "x^2 + y^2 + 1 = 0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("no solutions (sign argument)"));
}

#[test]
fn solve_emits_stable_json() {
    let out = dioph(&["solve", "2x^2 - 3y^2 = 5", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["equation"]["text"], "2x^2 - 3y^2 - 5 = 0");
    assert_eq!(v["classification"], "infinite-family-candidate");
    assert_eq!(v["result"]["kind"], "families");
    let fam = &v["result"]["families"][0];
    assert_eq!(fam["seed"], serde_json::json!(["2", "1"]));
    assert_eq!(fam["epsilon"], serde_json::json!(1));
    assert_eq!(fam["matrix"], serde_json::json!([["5", "6"], ["4", "5"]]));
    // every coordinate in the document is an exact decimal string
    assert!(fam["members"][0][0].is_string());
}

#[test]
fn parse_errors_exit_one_with_position() {
    let out = dioph(&["solve", "x^3 = 1"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("degree 3 at token `x^3`"), "{}", stderr(&out));

    let out = dioph(&["solve", "x^2 + w = 0"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("unknown token `w`"), "{}", stderr(&out));

    let out = dioph(&["solve", "x^2 = = 1"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("duplicate `=`"), "{}", stderr(&out));

    let out = dioph(&["solve", " = 1"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("empty left side"), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_one() {
    let out = dioph(&["solve"]);
    assert_eq!(code(&out), 1);
    let out = dioph(&["solve", "x^2 - y^2 = 1", "--no-such-flag"]);
    assert_eq!(code(&out), 1);
    let out = dioph(&["frobnicate", "x^2 = 1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn help_exits_zero() {
    let out = dioph(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("solve"));
}

#[test]
fn classify_names_the_regime() {
    let out = dioph(&["classify", "2x^2 - 3y^2 = 5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("infinite-family-candidate"), "{}", stdout(&out));

    let out = dioph(&["classify", "x^2 + y^2 - 25 = 0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("finite-same-sign"), "{}", stdout(&out));
}

#[test]
fn closed_form_prints_surd_coefficients() {
    let out = dioph(&["closed-form", "2x^2 - 3y^2 = 5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("lambda = 5 + 2√6"), "{text}");
    assert!(text.contains("(4 + √6)/4"), "{text}");
    assert!(text.contains("(4 - √6)/4"), "{text}");
    assert!(text.contains("(3 + 2√6)/6"), "{text}");
}

#[test]
fn reduce_prints_substitution_and_recurrence() {
    let out = dioph(&["reduce", "9x^2 + 6xy - 13y^2 - 6x - 16y + 20 = 0"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("canonical form: 2u^2 - 7v^2 + 45 = 0"), "{text}");
    assert!(text.contains("u = 3x + y - 1"), "{text}");
    assert!(text.contains("v = 2y + 1"), "{text}");
    assert!(text.contains("[[15, 28], [8, 15]]"), "{text}");
    assert!(text.contains("[11, 52/3, 11/3]"), "{text}");
}

#[test]
fn reduce_rejects_diagonal_forms() {
    let out = dioph(&["reduce", "x^2 + y^2 - z^2 = 0"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("two-variable"), "{}", stderr(&out));
}

#[test]
fn automorph_finds_lorentz_matrix() {
    let out = dioph(&["automorph", "--form", "1,1,-1", "--bound", "3"]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("[[1, 2, 2], [2, 1, 2], [2, 2, 3]]"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn automorph_missing_within_bound_exits_two() {
    let out = dioph(&["automorph", "--form", "1,1,-2", "--bound", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("inconclusive"), "{}", stdout(&out));
}

#[test]
fn oracle_enumerates_box() {
    let out = dioph(&["oracle", "x^2 - 3y^2 - 4 = 0", "--bound", "60"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("14 solutions:"), "{text}");
    assert!(text.contains("(52, 30)"), "{text}");

    let out = dioph(&["oracle", "x^2 - 12y^2 + 9 = 0", "--bound", "1000", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["result"]["points"], serde_json::json!([]));
}

#[test]
fn insolvable_reports_certificate_exit_zero() {
    let out = dioph(&["solve", "x^2 - 12y^2 + 9 = 0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("congruence argument"), "{}", stdout(&out));

    let out = dioph(&["solve", "x^2 - 12y^2 - 9 = 0", "--terms", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("(3, 0)"), "{}", stdout(&out));
}

#[test]
fn positive_flag_prints_absolute_values() {
    let out = dioph(&["solve", "x^2 - 4y^2 + 3 = 0", "--positive"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("(1, 1)"), "{text}");
    assert!(!text.contains("-1"), "{text}");
}

#[test]
fn diagonal_solve_reports_families() {
    let out = dioph(&["solve", "x^2 + y^2 - z^2 + 1 = 0", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["classification"], "diagonal-mixed-signs");
    assert_eq!(v["result"]["kind"], "families");
}

#[test]
fn render_parse_round_trip_is_idempotent() {
    for eq in [
        "2x^2 - 3y^2 = 5",
        "9x^2+6xy-13y^2-6x-16y+20=0",
        "x^2 + y^2 - z^2 + 1 = 0",
    ] {
        let first = dioph(&["classify", eq]);
        let text = stdout(&first);
        let rendered = text
            .lines()
            .find_map(|l| l.strip_prefix("equation: "))
            .expect("equation line")
            .to_string();
        let second = dioph(&["classify", &rendered]);
        let text2 = stdout(&second);
        let rendered2 = text2
            .lines()
            .find_map(|l| l.strip_prefix("equation: "))
            .expect("equation line")
            .to_string();
        assert_eq!(rendered, rendered2);
    }
}
