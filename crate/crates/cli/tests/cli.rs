use std::process::{Command, Output};

use lbound::bounds::BoundReport;

const ZEROS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures/zeta_zeros_1e4.txt");

fn lbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lbound")).args(args).output().expect("spawn lbound")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const EXPLICIT: [&str; 8] = ["bound", "--theorem", "explicit-upper", "--sigma", "0.55,0.75,0.97", "--t", "1e5", "--loglogtau"];

#[test]
fn json_round_trip() {
    let o = lbound(&[&EXPLICIT[..], &["16,20"]].concat());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let reports: Vec<BoundReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 6);
    for r in &reports {
        assert!(r.valid);
        assert!(r.height.synthetic);
        // Totals recomputed from the parsed terms agree with the stored ones.
        let exact: f64 = r.main_term + r.terms.iter().filter(|t| t.kind == lbound::bounds::TermKind::Exact).map(|t| t.value).sum::<f64>();
        assert!((exact - r.total_exact).abs() <= 1e-9 * r.total_exact.abs().max(1.0));
    }
    // Re-serializing the parsed reports reproduces the same data.
    let again: Vec<BoundReport> = serde_json::from_str(&serde_json::to_string(&reports).unwrap()).unwrap();
    assert_eq!(again, reports);
}

#[test]
fn csv_matches_json_field_for_field() {
    let base = [&EXPLICIT[..], &["16"]].concat();
    let json: Vec<BoundReport> = serde_json::from_str(&stdout(&lbound(&base))).unwrap();
    let o = lbound(&[&base[..], &["--format", "csv"]].concat());
    assert!(o.status.success());
    let mut rd = csv::Reader::from_reader(o.stdout.as_slice());
    let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header[0], "theorem");
    let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), json.len());
    for (row, r) in rows.iter().zip(&json) {
        let f = |i: usize| row[i].parse::<f64>().unwrap();
        assert_eq!(&row[0], r.theorem);
        assert_eq!(&row[1], r.case);
        assert_eq!(f(2), r.sigma);
        assert_eq!(f(3), r.height.t);
        assert_eq!(f(4), r.height.log_tau);
        assert_eq!(row[5].parse::<bool>().unwrap(), r.valid);
        assert_eq!(f(6), r.main_term);
        assert_eq!(f(7), r.total_exact);
        assert_eq!(f(8), r.envelopes_total);
        assert_eq!(f(9), r.total());
    }
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["bound", "--theorem", "poly-upper", "--sigma", "0.5:0.95:10", "--t", "1e3:1e8:7"];
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_lbound")).args(args).env("LBOUND_THREADS", threads).output().unwrap();
        assert!(o.status.success());
        o.stdout
    };
    let a = run("1");
    assert_eq!(a, run("4"));
    assert_eq!(a, run("4"));
}

#[test]
fn invalid_reports_set_exit_code() {
    // The combined majorant needs a far larger height than this.
    let args = ["bound", "--theorem", "combined-upper", "--sigma", "0.75", "--t", "1e5", "--loglogtau", "16"];
    let o = lbound(&args);
    assert_eq!(o.status.code(), Some(2));
    let reports: Vec<BoundReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!reports[0].valid);
    let o = lbound(&[&args[..], &["--allow-invalid"]].concat());
    assert!(o.status.success());
}

#[test]
fn bad_input_is_an_error() {
    assert_eq!(lbound(&["bound", "--theorem", "poly-upper", "--sigma", "x", "--t", "1e5"]).status.code(), Some(1));
    assert_eq!(lbound(&["bound", "--theorem", "poly-upper", "--sigma", "0.7", "--t", "1:2"]).status.code(), Some(1));
    assert_eq!(lbound(&["verify-constants", "--lemma", "NOPE"]).status.code(), Some(1));
    assert_eq!(lbound(&["compare", "--zeros", "/nonexistent", "--sigma", "0.7", "--t", "100"]).status.code(), Some(1));
}

#[test]
fn output_file_and_fourier_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let o = lbound(&["fourier", "--sigma", "0.75", "--delta", "1", "--x", "0:3:4", "--xi", "0,0.5", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert!(o.status.success());
    let mut rd = csv::Reader::from_path(&path).unwrap();
    let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 6);
    for r in rows.iter().filter(|r| &r[0] == "space") {
        let (f, g, m): (f64, f64, f64) = (r[2].parse().unwrap(), r[3].parse().unwrap(), r[4].parse().unwrap());
        assert!(g <= f + 1e-12 && f <= m + 1e-12);
        // Delta = 1: the majorant interpolates f at the integers.
        assert!((m - f).abs() < 1e-10);
    }
}

#[test]
fn zero_table_subcommands() {
    let o = lbound(&["compare", "--zeros", ZEROS, "--sigma", "0.75", "--t", "123.4,321.5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["inside"] == true));
    let o = lbound(&["explicit-formula", "--zeros", ZEROS, "--sigma", "0.75", "--delta", "1", "--t", "150", "--kind", "g"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["balance"]["balanced"], true);
}
