use lnscert_cli::{run, EXIT_FAIL, EXIT_OK, EXIT_USAGE};

fn lnscert(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lnscert").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn gen_table_witness_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.lns");
    let (code, out, _) = lnscert(&["gen-table", "--p", "3", "--q", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "SEZ=1\nentries=2\n");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "LNS1\nP=3\nQ=2\nSEZ=1\n0 1\n1 2\n");

    let (code, out, _) = lnscert(&["verify", "--p", "3", "--q", "2", "--table", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("axiom (5): PASS"));
}

#[test]
fn gen_table_to_stdout() {
    let (code, out, err) = lnscert(&["gen-table", "--p", "4", "--q", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("LNS1\nP=4\nQ=3\n"));
    assert!(err.contains("SEZ="));
}

#[test]
fn gen_table_bad_base_is_usage_error() {
    assert_eq!(lnscert(&["gen-table", "--p", "2", "--q", "1"]).0, EXIT_USAGE);
    assert_eq!(lnscert(&["gen-table", "--p", "3"]).0, EXIT_USAGE);
    assert_eq!(lnscert(&["gen-table", "--p", "x", "--q", "2"]).0, EXIT_USAGE);
}

#[test]
fn gen_table_golden_ratio_side_fails_axiom_two() {
    let (code, _, err) = lnscert(&["gen-table", "--p", "19", "--q", "10"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(err.contains("axiom (2): FAIL"));
}

#[test]
fn convert_examples() {
    let (code, out, _) = lnscert(&["convert", "2", "--p", "3", "--q", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "Z=1 inexact\nreference: agrees\n");
    let (_, out, _) = lnscert(&["convert", "9/4", "--p", "3", "--q", "2"]);
    assert!(out.starts_with("Z=2 exact\n"));
    let (_, out, _) = lnscert(&["convert", "1/2", "--p", "3", "--q", "2"]);
    assert!(out.starts_with("Z=-2 inexact\n"));
    let (_, out, _) = lnscert(&["convert", "1000000000000/1", "--p", "1025", "--q", "1024"]);
    assert!(out.contains("reference: skipped"));
}

#[test]
fn convert_rejects_bad_value() {
    assert_eq!(lnscert(&["convert", "0", "--p", "3", "--q", "2"]).0, EXIT_USAGE);
    assert_eq!(lnscert(&["convert", "3/0", "--p", "3", "--q", "2"]).0, EXIT_USAGE);
}

#[test]
fn verify_reports_golden_ratio_discrepancy() {
    let (code, out, _) = lnscert(&["verify", "--p", "19", "--q", "10"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("axiom (2): FAIL"));
    assert!(out.contains("SEZ_PQ = 0"));
    assert!(out.contains("axiom (3): PASS"));
}

#[test]
fn verify_detects_corrupt_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.lns");
    std::fs::write(&path, "LNS1\nP=3\nQ=2\nSEZ=1\n0 1\n1 1\n").unwrap();
    let (code, out, _) = lnscert(&["verify", "--p", "3", "--q", "2", "--table", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_FAIL);
    assert!(out.contains("FAIL"));

    let (code, _, _) = lnscert(&["verify", "--p", "4", "--q", "3", "--table", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn verify_seed_is_deterministic() {
    let a = lnscert(&["verify", "--p", "4", "--q", "3", "--seed", "11"]);
    let b = lnscert(&["verify", "--p", "4", "--q", "3", "--seed", "11"]);
    assert_eq!(a, b);
    assert_eq!(a.0, EXIT_OK);
}

#[test]
fn eval_exact_product() {
    let (code, out, _) = lnscert(&["eval", "3/2*3/2", "--p", "3", "--q", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "Z=2\ntolerance=(0,0)\nlower=9/4\nupper=9/4\nexact=9/4\ntol_holds=PASS\n");
}

#[test]
fn eval_modes_and_errors() {
    for mode in ["tight", "loose"] {
        let (code, out, _) = lnscert(&["eval", "(1 + 2) * 5 / 7 + 1/3", "--p", "4", "--q", "3", "--mode", mode]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.ends_with("tol_holds=PASS\n"));
    }
    assert_eq!(lnscert(&["eval", "2", "--p", "3", "--q", "2", "--mode", "wide"]).0, EXIT_USAGE);
    let (code, _, err) = lnscert(&["eval", "2 - 1", "--p", "3", "--q", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("subtraction"));
    assert_eq!(lnscert(&["eval", "(2", "--p", "3", "--q", "2"]).0, EXIT_USAGE);
}

#[test]
fn eval_level_two() {
    let (code, out, _) = lnscert(&["eval", "2", "--p", "3", "--q", "2", "--min", "-1", "--max", "0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "OUT-OF-RANGE 1\n");
    let (code, out, _) = lnscert(&["eval", "2*2", "--p", "3", "--q", "2", "--min", "-8", "--max", "8"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("level2=in-range"));
    assert_eq!(lnscert(&["eval", "2", "--p", "3", "--q", "2", "--min", "0", "--max", "0"]).0, EXIT_USAGE);
    assert_eq!(lnscert(&["eval", "2", "--p", "3", "--q", "2", "--min", "0"]).0, EXIT_USAGE);
}

#[test]
fn demo_exp_certificates() {
    for (p, q) in [("3", "2"), ("4", "3")] {
        let (code, out, _) = lnscert(&["demo-exp", "1/3", "--p", p, "--q", q]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("forward: ") && out.contains("tolerance=(-1,4) expected=(-1,4) MATCH tol_holds=PASS"));
        assert!(out.contains("tolerance=(-1,6) expected=(-1,6) MATCH tol_holds=PASS"));
        assert!(out.contains("f(x)=113/81"));
    }
}

#[test]
fn bench_table_small_and_refused() {
    let (code, out, _) = lnscert(&["bench-table", "--p", "4", "--q", "3"]);
    assert_eq!(code, EXIT_OK);
    let (data, timing) = out.split_once("[timing]\n").unwrap();
    assert!(data.contains("tables identical: yes"));
    assert!(timing.contains("fast_us=") && timing.contains("naive_us="));

    let (code, out, _) = lnscert(&["bench-table", "--p", "12500001", "--q", "12500000"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("refused"));
    assert!(!out.contains("[timing]"));
}

#[test]
fn bench_table_skips_naive_without_force() {
    let (code, out, _) = lnscert(&["bench-table", "--p", "129", "--q", "128"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("naive: skipped"));
    let (code, out, _) = lnscert(&["bench-table", "--p", "129", "--q", "128", "--force"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("tables identical: yes"));
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = lnscert(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("gen-table"));
    assert_eq!(lnscert(&["--version"]).0, EXIT_OK);
    assert_eq!(lnscert(&[]).0, EXIT_USAGE);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lnscert");
    let status = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["convert", "2", "--p", "3", "--q", "2"]), Some(0));
    assert_eq!(status(&["verify", "--p", "19", "--q", "10"]), Some(1));
    assert_eq!(status(&["gen-table", "--p", "1", "--q", "2"]), Some(2));
}
