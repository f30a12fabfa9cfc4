use std::process::{Command, Output};

fn negtrans(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negtrans"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

const F: &str = "~(forall x. P(x)) & (forall x. ~~P(x))";

#[test]
fn translate_g_of_excluded_middle() {
    let o = negtrans(&["translate", "--kind", "g", "P | ~P"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "~(~~~P & ~~~~P)\n");
}

#[test]
fn threshold_of_f_on_fig3() {
    let o = negtrans(&["kripke", "threshold", "--preset", "fig3", F]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn prove_excluded_middle_in_ipc() {
    let o = negtrans(&["prove", "--logic", "ipc", "P | ~P"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "unprovable\n");

    let o = negtrans(&[
        "--json",
        "prove",
        "--logic",
        "ipc",
        "--countermodel",
        "P | ~P",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["status"], "unprovable");
    assert_eq!(v["countermodel"]["kind"], "finite");
    assert_eq!(v["countermodel"]["nodes"].as_array().unwrap().len(), 2);

    // the emitted model round-trips through `kripke eval`
    let path = std::env::temp_dir().join(format!("negtrans-cm-{}.json", std::process::id()));
    std::fs::write(&path, v["countermodel"].to_string()).unwrap();
    let o = negtrans(&[
        "kripke",
        "eval",
        "--model",
        path.to_str().unwrap(),
        "P | ~P",
    ]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn missing_parameter_is_a_usage_error() {
    let o = negtrans(&["translate", "--kind", "n1", "bot"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    assert_eq!(String::from_utf8(o.stderr).unwrap().lines().count(), 1);
}

#[test]
fn usage_and_input_errors_exit_2() {
    for args in [
        &["parse", "P &"][..],
        &["prove", "--logic", "kpc", "P"],
        &["prove", "--logic", "ipc", "forall x. P(x)"],
        &["kripke", "eval", "--preset", "fig9", "P"],
        &["kripke", "eval", "--model", "/nonexistent.json", "P"],
        &["kripke", "threshold", "--preset", "fig4", "P(0)"],
        &["suite", "run", "--check", "nope"],
        &["translate", "--kind", "zz", "P"],
        &["frobnicate"],
    ] {
        assert_eq!(negtrans(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn equiv_and_classify() {
    assert_eq!(
        negtrans(&["equiv", "--logic", "ipc", "~~~P", "~P"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        negtrans(&["equiv", "--logic", "ipc", "~~P", "P"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        negtrans(&["equiv", "--logic", "cpc", "~~P", "P"])
            .status
            .code(),
        Some(0)
    );
    let o = negtrans(&["classify", "P | ~P"]);
    assert_eq!(stdout(&o), "provable-not-strongly\n");
    let o = negtrans(&["--json", "classify", "bot"]);
    assert_eq!(json(&o)["class"], "strongly-refutable");
}

#[test]
fn kripke_eval_presets() {
    let not_f = format!("~({F})");
    assert_eq!(
        negtrans(&["kripke", "eval", "--preset", "fig4", &not_f])
            .status
            .code(),
        Some(0)
    );
    let star = format!("((Q -> ({F})) -> ({F})) -> ~~Q | ({F})");
    let o = negtrans(&["--json", "kripke", "eval", "--preset", "fig5", &star]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["forced"], false);
}

#[test]
fn model_files_and_formula_files() {
    let dir = std::env::temp_dir().join(format!("negtrans-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let model = dir.join("chain.json");
    std::fs::write(&model, r#"{"kind":"finite","nodes":[0,1],"edges":[[0,1]],"root":0,"domains":{"0":[0],"1":[0]},"atoms":[{"node":1,"pred":"P"}]}"#).unwrap();
    let formula = dir.join("f.txt");
    std::fs::write(&formula, "~~P -> P\n").unwrap();
    let at = format!("@{}", formula.display());
    let o = negtrans(&["kripke", "eval", "--model", model.to_str().unwrap(), &at]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "not forced\n");

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"kind":"finite","nodes":[0,1],"edges":[[0,1]],"root":0,"domains":{"0":[0],"1":[0]},"atoms":[{"node":0,"pred":"P"}]}"#).unwrap();
    let o = negtrans(&["kripke", "eval", "--model", bad.to_str().unwrap(), "P"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("forcing-not-monotone"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parse_and_translate_json() {
    let o = negtrans(&["--json", "parse", "forall x P(x) -> Q"]);
    assert_eq!(json(&o)["formula"], "(forall x. P(x)) -> Q");
    let o = negtrans(&[
        "--json",
        "translate",
        "--kind",
        "n2",
        "--param-f",
        "Q",
        "~P",
    ]);
    let v = json(&o);
    assert_eq!(v["output"], "((P -> Q) -> Q) -> Q");
    assert_eq!(v["warnings"].as_array().unwrap().len(), 0);
}

#[test]
fn capture_warning_goes_to_stderr() {
    let o = negtrans(&[
        "translate",
        "--kind",
        "n1",
        "--param-f",
        "R(x)",
        "forall x. P(x)",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("warning:"));
}

#[test]
fn suite_run_subset() {
    let o = negtrans(&[
        "--json",
        "suite",
        "run",
        "--seed",
        "3",
        "--samples",
        "5",
        "--check",
        "paper-certificates",
        "--check",
        "factorisation-2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["seed"], 3);
    let names: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].clone())
        .collect();
    assert_eq!(names, ["paper-certificates", "factorisation-2"]);
}

#[test]
fn verdicts_are_repeatable() {
    let args = [
        "--json",
        "prove",
        "--logic",
        "mpc",
        "--countermodel",
        "bot -> P",
    ];
    let (a, b) = (negtrans(&args), negtrans(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}
