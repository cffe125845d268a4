//! A JSON problem run through the command layer in-process.

use brst::cli::{extract_json, run, Cli, ProblemFile};
use clap::Parser;

const PROBLEM: &str = r#"{
  "phase_space": {"n": 2},
  "constraints": ["p1", "p2 + x1^2*p1"],
  "run": {"max_order": 3, "z_degree_bound": 3, "ghost_numbers": [0, 1]}
}"#;

fn main() -> brst::Result<()> {
    let problem = ProblemFile::from_json(PROBLEM)?;
    let cs = problem.system(problem.run.z_degree_bound)?;
    println!("solved C^1_12 = {}", cs.structure(0, 1, 0).display(cs.table()));

    let path = std::env::temp_dir().join("brst_open_m2.json");
    std::fs::write(&path, PROBLEM)?;
    for cmd in ["verify", "charge", "closure", "cohomology"] {
        let cli = Cli::parse_from(["brst", cmd, "--input", path.to_str().expect("utf-8 path")]);
        let out = run(&cli);
        let json = extract_json(&out.stdout).expect("report carries json");
        println!("{cmd:<11} exit {}  passed {}", out.code, json["passed"]);
    }
    let cli = Cli::parse_from(["brst", "mc", "--json-only", "--input", path.to_str().expect("utf-8 path")]);
    println!("{}", run(&cli).stdout.lines().take(12).collect::<Vec<_>>().join("\n"));
    Ok(())
}
