//! The `brst` binary end to end.

use std::process::Command;

use brst::cli::extract_json;

fn brst(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_brst"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs");
    (out.status.code().expect("exited"), String::from_utf8(out.stdout).expect("utf-8"))
}

#[test]
fn cohomology_of_r4_single() {
    let (code, out) = brst(&["cohomology", "--input", "problems/abelian_r4_single.json", "--gh", "0", "--deg", "3"]);
    assert_eq!(code, 0);
    let json = extract_json(&out).unwrap();
    assert_eq!(json["data"]["cohomology"][0]["dimension"], 10);
}

#[test]
fn exit_codes() {
    for (args, code) in [
        (&["charge", "--input", "problems/open_m3.json"][..], 0),
        (&["reducible", "--input", "problems/reducible_level1_corrupt.json"], 1),
        (&["verify", "--input", "problems/malformed.json"], 2),
        (&["verify"], 2),
        (&["verify", "--input", "problems/second_class.json"], 3),
    ] {
        assert_eq!(brst(args).0, code, "{args:?}");
    }
}

#[test]
fn reports_are_byte_identical_across_processes() {
    let args = ["closure", "--input", "problems/so3.json", "--seed", "11"];
    assert_eq!(brst(&args), brst(&args));
    let (_, out) = brst(&["mc", "--input", "problems/open_m2.json", "--json-only"]);
    assert!(serde_json::from_str::<serde_json::Value>(&out).is_ok());
}
