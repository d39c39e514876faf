use std::process::{Command, Output};

use woods_saxon_kg::output::{SpectrumDocument, SPECTRUM_HEADER};

fn wskg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wskg"))
        .args(args)
        .env_remove("WSKG_HBAR_C")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spectrum_csv_happy_path() {
    let o = wskg(&["spectrum", "--A", "56", "--l-max", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), SPECTRUM_HEADER.join(","));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("56,4.916233140,47.78000000,0,2,"));
    assert!(rows[1].ends_with(",-17.59850000"));
}

#[test]
fn output_is_byte_identical() {
    let a = wskg(&["spectrum", "--A", "208", "--l-max", "6", "--format", "json"]);
    let b = wskg(&["spectrum", "--A", "208", "--l-max", "6", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn zero_mass_number_is_rejected() {
    let o = wskg(&["spectrum", "--A", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mass number must be ≥ 1"));

    let o = wskg(&["spectrum", "--A", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "invalid-parameter");
}

#[test]
fn system_source_must_be_unique() {
    assert_eq!(wskg(&["spectrum"]).status.code(), Some(1));
    assert_eq!(wskg(&["spectrum", "--A", "40", "--V0", "40", "--R0", "4"]).status.code(), Some(1));
    assert_eq!(wskg(&["spectrum", "--V0", "40"]).status.code(), Some(1));
    assert_eq!(wskg(&["spectrum", "--bogus"]).status.code(), Some(1));
    assert_eq!(wskg(&["--help"]).status.code(), Some(0));
}

#[test]
fn empty_spectrum_is_header_only() {
    let o = wskg(&["spectrum", "--A", "40", "--l-max", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), SPECTRUM_HEADER.join(",") + "\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero angular momentum"));
}

#[test]
fn json_round_trips() {
    let o = wskg(&["spectrum", "--V0", "40", "--R0", "2.5", "--a", "1", "--l-max", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: SpectrumDocument = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc.rows.iter().any(|r| r.valid_plus));
    let mut again = Vec::new();
    doc.write(woods_saxon_kg::output::Format::Json, &mut again).unwrap();
    assert_eq!(again, o.stdout);
}

#[test]
fn hbar_c_precedence() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_wskg"));
        cmd.args(["spectrum", "--A", "40", "--l-max", "1"]);
        match env {
            Some(v) => cmd.env("WSKG_HBAR_C", v),
            None => cmd.env_remove("WSKG_HBAR_C"),
        };
        if let Some(f) = flag {
            cmd.args(["--hbar-c", f]);
        }
        cmd.output().unwrap().stdout
    };
    let default = run(None, None);
    let env = run(Some("200"), None);
    assert_ne!(default, env);
    assert_eq!(run(Some("200"), Some("197.3269804")), default);
    assert_eq!(run(None, Some("200")), env);
}

#[test]
fn table1_without_oracle() {
    let o = wskg(&["table1", "--no-oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    let last: Vec<&str> = lines[8].split(',').collect();
    assert_eq!(last[0], "208");
    assert_eq!(last[4], "5");
    assert_eq!(last[15], "-33.60140000");
    assert_eq!(last[14], "");
}

#[test]
fn wavefunction_of_valid_and_spurious_states() {
    let o = wskg(&["wavefunction", "--V0", "40", "--R0", "2.5", "--a", "1", "--n", "0", "--l", "2", "--points", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("r_fm,z,u"));
    assert_eq!(text.lines().count(), 12);

    let o = wskg(&["wavefunction", "--A", "40", "--n", "0", "--l", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no valid state"));
}

#[test]
fn nonrel_lists_admissible_states() {
    let o = wskg(&["nonrel", "--A", "56", "--l-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("56,4.916233140,47.78000000,0,2,3.236722409"));
}

#[test]
fn verify_subset_and_output_file() {
    let dir = std::env::temp_dir().join(format!("wskg-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("verify.json");
    let o = wskg(&["verify", "--only", "1,11", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v.as_array().unwrap().iter().all(|c| c["passed"] == true));
    std::fs::remove_dir_all(&dir).unwrap();

    assert_eq!(wskg(&["verify", "--only", "12"]).status.code(), Some(1));
}
