use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn triad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triad"))
        .args(args)
        .arg("--quiet")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Vec<u8> {
    let out = triad(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn simulate(dir: &TempDir, name: &str, n: usize, m: usize, additions: usize, seed: u64) -> String {
    let p = path(dir, name);
    ok(&[
        "simulate",
        "-o",
        &p,
        "--seed",
        &seed.to_string(),
        "-s",
        &format!("n={n}"),
        "-s",
        &format!("m={m}"),
        "-s",
        &format!("additions={additions}"),
    ]);
    p
}

#[test]
fn simulate_with_fixed_seed_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = simulate(&dir, "a.txt", 80, 300, 500, 9);
    let b = simulate(&dir, "b.txt", 80, 300, 500, 9);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text.lines().filter(|l| l.ends_with(" 0 +")).count(), 300);
}

#[test]
fn ingest_output_is_a_fixed_point() {
    let dir = TempDir::new().unwrap();
    let raw = path(&dir, "raw.txt");
    fs::write(&raw, "% messy\n5 5 1\n5 6 4\n6 5 2\n7 6 3 +\n7 6 9 -\n7 6 10 -\n8 9\n").unwrap();
    let once = ok(&["ingest", "-i", &raw]);
    let again = path(&dir, "once.txt");
    fs::write(&again, &once).unwrap();
    let twice = ok(&["ingest", "-i", &again]);
    assert_eq!(once, twice);
    assert_eq!(String::from_utf8(once).unwrap(), "6 5 2 +\n7 6 3 +\n8 9 8 +\n7 6 9 -\n");
}

#[test]
fn ingest_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.txt");
    fs::write(&bad, "1 2\n3\n").unwrap();
    let out = triad(&["ingest", "-i", &bad]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let empty = path(&dir, "empty.txt");
    fs::write(&empty, "# nothing\n").unwrap();
    assert!(!triad(&["ingest", "-i", &empty]).status.success());
}

#[test]
fn invalid_key_is_rejected_before_work() {
    let dir = TempDir::new().unwrap();
    let out_path = path(&dir, "never.txt");
    let out = triad(&["simulate", "-o", &out_path, "-s", "colour=blue"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown key"));
    assert!(!Path::new(&out_path).exists());

    let cfg = path(&dir, "bad.cfg");
    fs::write(&cfg, "eps = 0.1\nwidth = 3\n").unwrap();
    assert!(!triad(&["densest", "-c", &cfg, "-o", &out_path]).status.success());
    assert!(!triad(&["densest", "-s", "c=1.2", "-o", &out_path]).status.success());
    assert!(!Path::new(&out_path).exists());
}

#[test]
fn config_file_is_read() {
    let dir = TempDir::new().unwrap();
    let cfg = path(&dir, "sim.cfg");
    fs::write(&cfg, "# synthetic\nn = 40\nm = 100\nadditions = 50\nseed = 4\n").unwrap();
    let text = String::from_utf8(ok(&["simulate", "-c", &cfg])).unwrap();
    assert_eq!(text.lines().filter(|l| l.ends_with(" 0 +")).count(), 100);
    assert!(text.lines().filter(|l| l.ends_with('+')).count() >= 150);
}

#[test]
fn oracle_on_small_file_matches_brute_force() {
    let dir = TempDir::new().unwrap();
    let f = simulate(&dir, "small.txt", 14, 30, 20, 1);
    let json: serde_json::Value = serde_json::from_slice(&ok(&["oracle", "-i", &f])).unwrap();
    assert_eq!(json["densest"]["numerator"], json["densest_bruteforce"]["numerator"]);
    assert_eq!(json["densest"]["denominator"], json["densest_bruteforce"]["denominator"]);
    assert!(json["tridensest_bruteforce"]["value"].as_f64().is_some());

    let g = triad::ingest::ingest_path(Path::new(&f), triad::ingest::Split::All).unwrap().final_graph();
    let brute = triad::oracle::densest_bruteforce(&g).unwrap();
    assert_eq!(json["densest"]["value"].as_f64().unwrap(), brute.value_f64());
}

#[test]
fn densest_reports_are_byte_stable_without_timings() {
    let dir = TempDir::new().unwrap();
    let f = simulate(&dir, "s.txt", 120, 500, 800, 2);
    let a = ok(&["densest", "-i", &f, "-s", "timings=false", "-s", "p=0.75"]);
    let b = ok(&["densest", "-i", &f, "-s", "timings=false", "-s", "p=0.75"]);
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("round,delta,events,cursor,density,baseline_density,rebuilds,wall_time_us,fallback\n"));
    let tri = String::from_utf8(ok(&["tridensest", "-i", &f, "-s", "timings=false"])).unwrap();
    assert!(tri.starts_with("round,delta,events,cursor,tridensity,"));
}

#[test]
fn compare_emits_paired_rows_with_speedup() {
    let text = String::from_utf8(ok(&["compare", "-s", "n=200", "-s", "m=800", "-s", "additions=1500", "--seed", "3"])).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "round,cursor,time,delta,density_ours,density_baseline,ratio,ours_us,baseline_us,speedup"
    );
    let last: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    assert_eq!(last.len(), 10);
    assert!(last[9].parse::<f64>().unwrap() > 0.0);
    let ours: f64 = last[4].parse().unwrap();
    let base: f64 = last[5].parse().unwrap();
    assert!(ours.max(base) / ours.min(base) <= 4.4);
}

#[test]
fn bench_writes_one_row_per_input() {
    let dir = TempDir::new().unwrap();
    let a = simulate(&dir, "a.txt", 60, 200, 300, 1);
    let b = simulate(&dir, "b.txt", 60, 200, 300, 2);
    let text = String::from_utf8(ok(&["bench", "-i", &a, "-i", &b, "-s", "baseline=false"])).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("dataset,objective,n,m0,events,rounds,ours_us,baseline_us,speedup,"));
}

#[test]
fn learn_prints_parameters() {
    let dir = TempDir::new().unwrap();
    let f = simulate(&dir, "l.txt", 300, 2000, 2000, 5);
    let json: serde_json::Value = serde_json::from_slice(&ok(&["learn", "-i", &f])).unwrap();
    for k in ["p", "q", "r", "r2"] {
        assert!(json[k].as_f64().is_some(), "{k}");
    }
}
