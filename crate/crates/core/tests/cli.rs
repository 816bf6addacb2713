use std::fs;
use std::path::Path;
use std::process::Command;

use monetary_lens::cli::{self, EXIT_DATA, EXIT_OK, EXIT_USAGE};
use monetary_lens::ingest;
use monetary_lens::report;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("monetary-lens").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const SIMPLE_ECONOMY: &str = "\
money_stock = 100

[good]
name = wheat
quantity = 50
final = false
exchanges = 1

[good]
name = flour
quantity = 25
final = true
exchanges = 3
";

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_monetary-lens");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["simulate", "fisher", "--check"]), Some(EXIT_OK));
    assert_eq!(status(&["simulate", "barter"]), Some(EXIT_USAGE));
    assert_eq!(status(&["simulate", "shift", "--from", "bread", "--to", "coal", "--count", "4"]), Some(EXIT_DATA));
    assert_eq!(status(&["--version"]), Some(EXIT_OK));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).0, EXIT_USAGE);
    assert_eq!(run(&["simulate", "custom"]).0, EXIT_USAGE);
    assert_eq!(run(&["simulate", "fisher", "--economy", "x.ini"]).0, EXIT_USAGE);
    let (code, _, err) = run(&["debt-table", "--input", "https://example.org/debt.csv"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("local files"), "{err}");
    assert_eq!(run(&["normalize", "--money", "M2", "--gdp", "GDP", "--base", "2000", "--out", "x"]).0, EXIT_USAGE);
}

#[test]
fn custom_economy_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mill.ini");
    fs::write(&path, SIMPLE_ECONOMY).unwrap();
    let p = path.to_str().unwrap();

    let (code, out, err) = run(&["simulate", "custom", "--economy", p, "--check"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("$100 x V = 400 (velocity 4)"), "{out}");
    // wheat: 1 x 100 / 50 = 2; flour: 3 x 100 / 25 = 12; GDP is flour only
    let (_, csv, _) = run(&["simulate", "custom", "--economy", p, "--format", "csv"]);
    assert!(csv.contains("wheat,50,2,1,100,false"), "{csv}");
    assert!(csv.contains("flour,25,12,3,300,true"), "{csv}");

    let (code, out, _) = run(&["simulate", "shift", "--economy", p, "--from", "flour", "--to", "wheat", "--count", "2"]);
    assert_eq!(code, EXIT_OK);
    let gdp = out.lines().find(|l| l.starts_with("GDP")).unwrap();
    assert!(gdp.ends_with(" 100"), "{gdp}");
}

#[test]
fn bad_economy_files_are_data_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("none.ini");
    let (code, _, err) = run(&["simulate", "custom", "--economy", missing.to_str().unwrap()]);
    assert_eq!(code, EXIT_DATA);
    assert!(err.contains("none.ini"), "{err}");

    let bad = dir.path().join("bad.ini");
    fs::write(&bad, SIMPLE_ECONOMY.replace("exchanges = 3", "exchanges = 0")).unwrap();
    assert_eq!(run(&["simulate", "custom", "--economy", bad.to_str().unwrap()]).0, EXIT_DATA);
}

#[test]
fn simulate_is_deterministic() {
    for scenario in ["fisher", "doubled", "shift"] {
        for format in ["text", "csv"] {
            let a = run(&["simulate", scenario, "--format", format, "--check"]);
            let b = run(&["simulate", scenario, "--format", format, "--check"]);
            assert_eq!(a, b);
            assert_eq!(a.0, EXIT_OK, "{scenario} {format}: {}", a.2);
        }
    }
}

#[test]
fn empty_debt_input_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    fs::write(&path, "# nothing yet\n").unwrap();
    let (code, out, _) = run(&["debt-table", "--input", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, format!("{}\n", report::DEBT_CSV_HEADER));
}

#[test]
fn debt_row_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("debt.csv");
    fs::write(&path, "country,debt_start,debt_end,multiplier\nA,100,150,2\nB,100,150,0\n").unwrap();
    let (code, _, err) = run(&["debt-table", "--input", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_DATA);
    assert!(err.contains(":3"), "{err}");
}

#[test]
fn debt_csv_reads_back() {
    let (code, csv, _) = run(&["debt-table", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let table = ingest::parse_table(&csv, Path::new("debt.csv")).unwrap();
    assert_eq!(table.header.join(","), report::DEBT_CSV_HEADER);
    assert_eq!(table.rows.len(), 5);
    let usa = &table.rows.iter().find(|(_, f)| f[0] == "USA").unwrap().1;
    assert_eq!(usa[table.column("normalized_end").unwrap()], "6986");
    assert_eq!(usa[table.column("pct_change").unwrap()], "23");
}

#[test]
fn normalize_writes_readable_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, stdout, err) = run(&[
        "normalize", "--country", "Russia", "--country", "Japan", "--money", "M2", "--gdp", "GDP", "--base", "2000",
        "--out", out,
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(stdout.lines().count(), 2);
    for stem in ["russia_M2_normalized", "japan_M2_normalized"] {
        let table = ingest::read_table(&dir.path().join(format!("{stem}.csv"))).unwrap();
        assert_eq!(table.header.join(","), report::NORMALIZED_HEADER);
        let base = table.rows.iter().find(|(_, f)| f[0] == "2000").unwrap();
        assert_eq!(base.1[1], base.1[3], "{stem}: normalized equals raw at base");
        assert!(!dir.path().join(format!("{stem}.svg")).exists());
    }
}

#[test]
fn normalize_partial_failure() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout, err) = run(&[
        "normalize", "--country", "Russia", "--country", "Mars", "--money", "M2", "--gdp", "GDP", "--base", "2000",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_DATA);
    assert!(stdout.contains("Russia"));
    assert!(err.contains("Mars"), "{err}");
}

#[test]
fn normalize_base_outside_data() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run(&[
        "normalize", "--country", "Russia", "--money", "M2", "--gdp", "GDP", "--base", "1900", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_DATA);
    assert!(err.contains("1900"), "{err}");
}

#[test]
fn constant_money_supply_leaves_gdp_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("m.csv"), "year,value\n2000,50\n2001,50\n2002,50\n").unwrap();
    fs::write(d.join("gdp.csv"), "year,value\n2000,100\n2001,110.5\n2002,121\n").unwrap();
    let manifest = "\
[dataset]
country = Flatland
label = M1
role = money
file = m.csv
currency = FLT
unit_scale = 1

[dataset]
country = Flatland
label = GDP
role = gdp
file = gdp.csv
currency = FLT
unit_scale = 1
";
    fs::write(d.join("manifest.ini"), manifest).unwrap();
    let out = d.join("out");
    let (code, _, err) = run(&[
        "normalize", "--manifest", d.join("manifest.ini").to_str().unwrap(), "--country", "Flatland", "--money", "M1",
        "--gdp", "GDP", "--base", "2001", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let text = fs::read_to_string(out.join("flatland_M1_normalized.csv")).unwrap();
    assert_eq!(text, "year,raw,money,normalized\n2000,100,50,100\n2001,110.5,50,110.5\n2002,121,50,121\n");
}
