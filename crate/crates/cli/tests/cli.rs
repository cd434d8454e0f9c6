use serde_json::Value;
use ylattice_cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ylattice").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn phi_chains_of_three_by_eight() {
    let v = json(&["chains", "3", "8", "--method", "phi"]);
    let chains = v["chains"].as_array().unwrap();
    assert_eq!(chains.len(), 13);
    let total: usize = chains.iter().map(|c| c["elements"].as_array().unwrap().len()).sum();
    assert_eq!(total, 165);
    assert_eq!(v["box"], serde_json::json!([3, 8]));
    assert_eq!(v["kind"], "sperner");
}

#[test]
fn phi_and_closed_methods_print_the_same_json() {
    for n in 1..=12 {
        let n = n.to_string();
        let (c1, phi, _) = call(&["chains", "3", &n, "--method", "phi"]);
        let (c2, closed, _) = call(&["chains", "3", &n, "--method", "closed"]);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(phi, closed, "n={n}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["tableau", "3", "8", "--method", "phi", "--format", "svg"];
    assert_eq!(call(&args), call(&args));
}

#[test]
fn ascii_tableaux_match_golden() {
    let (code, out, _) = call(&["tableau", "3", "8", "--method", "phi", "--format", "ascii"]);
    assert_eq!(code, 0);
    assert_eq!(out, include_str!("golden/tableau_3_8_phi.txt"));
    assert_eq!(out.split("\n\n").count(), 13);
}

#[test]
fn json_tableaux_parse() {
    let v = json(&["tableau", "3", "4", "--method", "greedy", "--format", "json"]);
    let items = v.as_array().unwrap();
    // Middle level of L(3,4) has five partitions.
    assert_eq!(items.len(), 5);
    assert_eq!(items[0]["base"], serde_json::json!([0, 0, 0]));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.svg");
    let (code, out, _) =
        call(&["tableau", "2", "3", "--method", "recud", "--format", "svg", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("<svg") || text.starts_with("<?xml"), "{text}");
    assert!(text.contains("#c0c0c0"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["chains", "4", "4", "--method", "phi"],
        vec!["chains", "3", "4", "--method", "bogus"],
        vec!["ranks", "0", "4"],
        vec!["phi", "4", "--trace", "5,0,0"],
        vec!["phi", "4", "--trace", "a,b"],
        vec!["frobnicate"],
        vec![],
    ] {
        let (code, out, err) = call(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("tableau"));
}

#[test]
fn ranks_of_three_by_four() {
    let v = json(&["ranks", "3", "4"]);
    let sizes: Vec<&str> = v["sizes"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert_eq!(sizes, ["1", "1", "2", "3", "4", "4", "5", "4", "4", "3", "2", "1", "1"]);
}

#[test]
fn phi_trace_from_empty_partition() {
    let v = json(&["phi", "8", "--trace", "0,0,0"]);
    let trace = v["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 25);
    assert_eq!(trace[24], serde_json::json!([8, 8, 8]));
}

#[test]
fn phi_table_size() {
    let v = json(&["phi", "8"]);
    // 165 elements minus 13 chain ends.
    assert_eq!(v["pairs"].as_array().unwrap().len(), 152);
}

#[test]
fn greedy_single_level() {
    let v = json(&["greedy", "3", "8", "--rank", "11"]);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 12);
}

#[test]
fn verify_five_by_six_with_oracle() {
    let (code, out, err) = call(&["verify", "5", "6", "--oracle"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], true);
    assert!(v["greedy"]["complete"].is_boolean());
    assert!(v["oracle"]["levels"].as_array().unwrap().iter().take(15).all(|l| l["full"] == true));
}

#[test]
fn smn_and_udec() {
    let v = json(&["smn", "3", "8"]);
    assert_eq!(v["starts"].as_array().unwrap().len(), 13);
    let v = json(&["udec", "3", "3"]);
    assert_eq!(v["kind"], "u_decomposition");

    let (code, out, _) = call(&["smn", "5", "5"]);
    assert_eq!(code, 1);
    assert!(out.contains("missing"));
    let (code, out, _) = call(&["udec", "5", "5"]);
    assert_eq!(code, 1);
    assert!(out.contains("alpha"));
}
