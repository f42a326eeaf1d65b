use proptest::prelude::*;
use tempfile::TempDir;
use triad::experiment::{run_experiment, ExperimentConfig, Mode};
use triad::ingest::{ingest_path, ingest_str, Split};

fn line() -> impl Strategy<Value = String> {
    prop_oneof![
        (0u8..8, 0u8..8).prop_map(|(u, v)| format!("{u} {v}")),
        (0u8..8, 0u8..8, 0u16..50).prop_map(|(u, v, t)| format!("{u} {v} {t}")),
        (0u8..8, 0u8..8, 0u16..50, any::<bool>()).prop_map(|(u, v, t, add)| format!("{u} {v} {t} {}", if add { "+" } else { "-" })),
        (0u8..8, 0u8..8, 0u16..50).prop_map(|(u, v, t)| format!("{u} {v} 1 {t}")),
        Just("% comment".to_string()),
        Just(String::new()),
    ]
}

proptest! {
    #[test]
    fn cleaning_is_idempotent_and_accounted(lines in prop::collection::vec(line(), 1..80)) {
        let text = lines.join("\n");
        let Ok(once) = ingest_str(&text, Split::None) else {
            // Only comment and blank lines.
            return Ok(());
        };
        let r = once.report;
        prop_assert_eq!(r.comments + r.self_loops + r.duplicate_adds + r.absent_removes + r.kept, text.lines().count());
        prop_assert!(once.cleaned.windows(2).all(|w| w[0].t <= w[1].t));
        prop_assert!(once.cleaned.iter().all(|e| e.u != e.v));

        if once.cleaned.is_empty() {
            return Ok(());
        }
        let mut a = Vec::new();
        once.write_cleaned(&mut a).unwrap();
        let twice = ingest_str(std::str::from_utf8(&a).unwrap(), Split::None).unwrap();
        let mut b = Vec::new();
        twice.write_cleaned(&mut b).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(twice.report.kept, twice.report.lines);
        prop_assert!(once.final_graph().audit_recompute().passed());
    }
}

#[test]
fn artifacts_are_identical_across_reruns() {
    let dir = TempDir::new().unwrap();
    let trace = dir.path().join("trace.txt");
    let mut sim = ExperimentConfig::new(Mode::Simulate);
    sim.apply(["n=150", "m=500", "additions=1500", "seed=12"]).unwrap();
    sim.output = Some(trace.clone());
    run_experiment(&sim, &mut std::io::sink()).unwrap();

    let ing = ingest_path(&trace, Split::Time(0)).unwrap();
    assert_eq!(ing.initial_graph().m(), 500);

    for mode in [Mode::Compare, Mode::Densest, Mode::TriDensest, Mode::Oracle] {
        let outs: Vec<Vec<u8>> = (0..2)
            .map(|i| {
                let path = dir.path().join(format!("{mode:?}-{i}.out"));
                let mut cfg = ExperimentConfig::new(mode);
                cfg.apply(["timings=false"]).unwrap();
                cfg.input = vec![trace.clone()];
                cfg.output = Some(path.clone());
                run_experiment(&cfg, &mut std::io::sink()).unwrap();
                std::fs::read(path).unwrap()
            })
            .collect();
        assert!(!outs[0].is_empty(), "{mode:?}");
        assert_eq!(outs[0], outs[1], "{mode:?}");
    }
}

#[test]
fn compare_csv_has_paired_density_columns() {
    let mut cfg = ExperimentConfig::new(Mode::Compare);
    cfg.apply(["n=120", "m=400", "additions=800", "timings=false"]).unwrap();
    let mut out = Vec::new();
    let summary = run_experiment(&cfg, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    assert_eq!(&header[..1], ["round"]);
    assert!(header.contains(&"density_ours") && header.contains(&"density_baseline") && header.contains(&"speedup"));
    assert_eq!(summary["events"].as_u64().unwrap() as usize, cfg_events(&cfg));
}

fn cfg_events(cfg: &ExperimentConfig) -> usize {
    triad::experiment::synthetic_stream(cfg).unwrap().events.len()
}
