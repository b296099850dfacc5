use legendre_covers::cli::{run, EXIT_DOMAIN, EXIT_OK};
use legendre_covers::moduli::{census, export, render, ExportFormat, Lambdas, ModuliError};
use legendre_covers::Field;
use serde_json::Value;

#[test]
fn json_export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f13.json");
    let f = Field::prime(13).unwrap();
    let reports = census(f, &Lambdas::All).unwrap();
    export(&reports, ExportFormat::Json, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text, render(&reports, ExportFormat::Json).unwrap());
    let v: Value = serde_json::from_str(&text).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    for row in rows {
        let z = row["z_roots"].as_array().unwrap().len() as u64;
        assert_eq!(row["count"].as_u64().unwrap(), 13 - 2 - z);
    }
}

#[test]
fn csv_export_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f7.csv");
    let out = run(["legendre-covers", "moduli", "--p", "7", "--all-lambdas", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["lambda", "p", "count", "z_roots", "degenerate"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    // λ = 3 over 𝔽7: t = 4 is the only root of the quartic
    assert_eq!(&rows[1][0], "3");
    assert_eq!(&rows[1][2], "4");
    assert_eq!(&rows[1][3], "4");
}

#[test]
fn unwritable_path_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.json");
    let f = Field::prime(11).unwrap();
    let reports = census(f, &Lambdas::All).unwrap();
    assert!(matches!(export(&reports, ExportFormat::Json, &path), Err(ModuliError::Io { .. })));
    let out = run(["legendre-covers", "moduli", "--p", "11", "--lambda", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_DOMAIN);
    let out = run(["legendre-covers", "family", "--p", "11", "--lambda", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_DOMAIN);
}

#[test]
fn family_export_writes_all_fibers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("family.json");
    let out = run(["legendre-covers", "family", "--p", "11", "--lambda", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9);
}
