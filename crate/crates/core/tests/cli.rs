use std::process::{Command, Output};

use addtrans::table_io::TableDoc;

fn addtrans(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_addtrans")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_values(args: &[&str]) -> Vec<String> {
    let mut full = args.to_vec();
    full.extend(["--format", "csv"]);
    let o = addtrans(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    TableDoc::from_csv(&stdout(&o), "").unwrap().rows.into_iter().map(|r| r.value.to_string()).collect()
}

#[test]
fn eval_prints_exact_values() {
    for (f, n, want) in [("phi_of:big_omega", "12", "10\n"), ("eps", "1", "1\n"), ("phi_of:phi", "12", "14\n")] {
        let o = addtrans(&["eval", "--f", f, "--n", n]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), want);
    }
    let o = addtrans(&["eval", "--f", "no_such_fn", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fractional_values_print_reduced() {
    let o = addtrans(&["verify", "--id", "remark_eq17_printed", "--f", "big_omega", "--N", "3"]);
    assert!(stdout(&o).contains("1/2"));
}

#[test]
fn table_and_convolve_rows() {
    assert_eq!(csv_values(&["table", "--f", "phi_of:id", "--range", "1..5"]), ["0", "2", "3", "4", "5"]);
    assert_eq!(csv_values(&["table", "--f", "one", "--range", "1..3"]), ["1", "1", "1"]);
    assert_eq!(csv_values(&["table", "--f", "mu", "--range", "1..6"]), ["1", "-1", "-1", "0", "-1", "1"]);
    assert_eq!(csv_values(&["convolve", "--f", "mu", "--g", "id", "--range", "1..6"]), ["1", "1", "2", "2", "4", "2"]);
    assert_eq!(csv_values(&["convolve", "--f", "eps", "--g", "phi", "--range", "1..4"]), ["1", "1", "2", "2"]);
    let v = csv_values(&["convolve", "--f", "mu", "--g", "phi_of:big_omega", "--range", "1..12"]);
    assert_eq!(v[11], "4");
}

#[test]
fn csv_layout_and_round_trip() {
    let o = addtrans(&["table", "--f", "sigma_1", "--range", "3..7", "--format", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("n,value\n"));
    assert!(!text.contains('\r'));
    assert_eq!(TableDoc::from_csv(&text, "").unwrap().to_csv().unwrap(), text);
    let o = addtrans(&["table", "--f", "sigma_1", "--range", "3..7", "--format", "json"]);
    let json = stdout(&o);
    assert_eq!(TableDoc::from_json(&json).unwrap().to_json().unwrap(), json);
}

#[test]
fn out_writes_file_and_io_failure_is_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let o = addtrans(&["table", "--f", "phi", "--range", "1..4", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "n,value\n1,1\n2,1\n3,2\n4,2\n");
    let bad = dir.path().join("missing").join("t.csv");
    let o = addtrans(&["table", "--f", "phi", "--range", "1..4", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_are_2() {
    for args in [
        &["table", "--f", "mu", "--range", "6..1"][..],
        &["table", "--f", "mu", "--range", "0..3"],
        &["verify", "--id", "no_such_identity"],
        &["eval", "--f", "mu"],
        &["convolve", "--f", "mu", "--g", "bogus", "--range", "1..3"],
    ] {
        assert_eq!(addtrans(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_exit_codes() {
    let o = addtrans(&["verify", "--id", "main_theorem", "--f", "big_omega", "--N", "2000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
    let o = addtrans(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let o = addtrans(&["verify", "--format", "json"]);
    assert_eq!(stdout(&o).trim(), "[]");
}

#[test]
fn verify_json_shape() {
    let o = addtrans(&["verify", "--id", "remark_eq17_printed", "--f", "big_omega", "--N", "100", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v[0];
    for key in ["id", "function", "range", "status", "counterexample"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["status"], "erratum-candidate");
}

#[test]
fn output_is_independent_of_thread_count() {
    let args =
        ["verify", "--id", "mobius_transform,convolution_leibniz", "--f", "omega,mu", "--N", "300", "--format", "json"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_addtrans"))
            .args(args)
            .env("ADDTRANS_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn list_names_every_identity() {
    let out = stdout(&addtrans(&["list"]));
    for id in addtrans::IdentityId::ALL {
        assert!(out.contains(id.as_str()));
    }
}
