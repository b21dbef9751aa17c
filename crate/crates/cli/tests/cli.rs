use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn gnp(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnpgames"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let o = gnp(dir, args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

#[test]
fn k4_trials_are_byte_identical_across_runs_and_thread_counts() {
    let d = tempfile::tempdir().unwrap();
    let base = ["trials", "--set", "board=complete", "--set", "n=4", "--set", "seeds=10"];
    ok(d.path(), &[&base[..], &["-o", "a", "--set", "threads=1"]].concat());
    ok(d.path(), &[&base[..], &["-o", "b", "--set", "threads=4"]].concat());
    ok(d.path(), &[&base[..], &["-o", "c", "--set", "threads=1"]].concat());
    let read = |s: &str| fs::read(d.path().join(s)).unwrap();
    let a = read("a/trials.jsonl");
    assert_eq!(a.iter().filter(|&&c| c == b'\n').count(), 10);
    assert_eq!(a, read("b/trials.jsonl"));
    assert_eq!(a, read("c/trials.jsonl"));
    assert_eq!(read("a/summary.csv"), read("b/summary.csv"));
}

#[test]
fn config_errors_exit_with_two() {
    let d = tempfile::tempdir().unwrap();
    for args in [
        vec!["trials", "--set", "p=1.2"],
        vec!["trials", "--set", "maker=nonsense"],
        vec!["trials", "--set", "breaker.zzz=1"],
        vec!["trials", "--set", "nokey=1"],
        vec!["trials", "--config", "missing.cfg"],
    ] {
        let o = gnp(d.path(), &args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
    let o = gnp(d.path(), &["no-such-subcommand"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_seed_file_and_manifest_rerun() {
    let d = tempfile::tempdir().unwrap();
    fs::write(d.path().join("run.cfg"), "n=12\np=0.5\ntarget=perfect-matching\nb=2\n").unwrap();
    fs::write(d.path().join("seeds.txt"), "7 3\n11,5\n").unwrap();
    ok(d.path(), &["trials", "-c", "run.cfg", "--seed-file", "seeds.txt", "-o", "r1"]);
    let recs = fs::read_to_string(d.path().join("r1/trials.jsonl")).unwrap();
    let seeds: Vec<u64> = recs
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["seed"].as_u64().unwrap())
        .collect();
    assert_eq!(seeds, vec![7, 3, 11, 5]);

    // The manifest's resolved config regenerates the same stream.
    let m: serde_json::Value = serde_json::from_slice(&fs::read(d.path().join("r1/manifest.json")).unwrap()).unwrap();
    let cfg: String = m["config"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, v)| format!("{k}={}\n", v.as_str().unwrap()))
        .collect();
    fs::write(d.path().join("resolved.cfg"), cfg).unwrap();
    ok(d.path(), &["trials", "-c", "resolved.cfg", "-o", "r2"]);
    assert_eq!(recs.as_bytes(), &fs::read(d.path().join("r2/trials.jsonl")).unwrap()[..]);
}

#[test]
fn bias_estimate_recomputes_from_records() {
    let d = tempfile::tempdir().unwrap();
    let out = ok(
        d.path(),
        &["bias-scan", "--set", "n=16", "--set", "p=0.6", "--set", "seeds=15", "--set", "b_range=1..5", "-o", "s"],
    );
    assert!(out.contains("empirical critical bias against strategy pair (random,random)"));
    ok(d.path(), &["bias-scan", "--from", "s/trials.jsonl", "-o", "r"]);
    assert_eq!(fs::read(d.path().join("s/bias.json")).unwrap(), fs::read(d.path().join("r/bias.json")).unwrap());
    assert_eq!(fs::read(d.path().join("s/curve.csv")).unwrap(), fs::read(d.path().join("r/curve.csv")).unwrap());
    let m: serde_json::Value = serde_json::from_slice(&fs::read(d.path().join("r/manifest.json")).unwrap()).unwrap();
    assert_eq!(m["config"]["from"], "s/trials.jsonl");
    assert_eq!(m["seeds"].as_array().unwrap().len(), 15);
}

#[test]
fn always_winning_first_side_is_right_censored() {
    let d = tempfile::tempdir().unwrap();
    // Empty board: connectivity is out of reach, so b* is the first b.
    let out = ok(
        d.path(),
        &["bias-scan", "--set", "n=6", "--set", "p=0", "--set", "seeds=20", "--set", "b_range=1..3", "-o", "s"],
    );
    assert!(out.contains("b*=1"), "{out}");
    // In the avoider convention the isolate-vertex target on an empty board
    // is never claimed: Avoider always wins whatever b is.
    let out = ok(
        d.path(),
        &[
            "bias-scan", "--set", "n=6", "--set", "p=0", "--set", "convention=ae", "--set", "target=isolate-vertex",
            "--set", "seeds=20", "--set", "b_range=1..3", "-o", "t",
        ],
    );
    assert!(out.contains("right-censored"), "{out}");
    let est: serde_json::Value = serde_json::from_slice(&fs::read(d.path().join("t/bias.json")).unwrap()).unwrap();
    assert_eq!(est["censored"], true);
    assert!(est["b_star"].is_null());
}

#[test]
fn isolator_with_huge_bias_wins_every_seed() {
    let d = tempfile::tempdir().unwrap();
    ok(
        d.path(),
        &[
            "trials", "--set", "n=50", "--set", "p=0.5", "--set", "b=2000", "--set", "breaker=breaker-isolator",
            "--set", "seeds=100", "-o", "t",
        ],
    );
    let recs = fs::read_to_string(d.path().join("t/trials.jsonl")).unwrap();
    assert_eq!(recs.lines().count(), 100);
    assert!(recs.lines().all(|l| l.contains("\"winner\":\"breaker\"")));
}

#[test]
fn play_writes_a_replayable_transcript() {
    let d = tempfile::tempdir().unwrap();
    let out = ok(d.path(), &["play", "--set", "n=9", "--set", "p=0.7", "--set", "seed_start=4", "-o", "p"]);
    let t = fs::read_to_string(d.path().join("p/transcript.txt")).unwrap();
    assert!(t.starts_with("1 maker "));
    let moves = out.split("moves=").nth(1).unwrap().trim();
    let replay = ok(
        d.path(),
        &["play", "--set", "n=9", "--set", "p=0.7", "--set", "seed_start=4", "-o", "p", "--replay", "p/transcript.txt"],
    );
    assert!(replay.contains(&format!("replayed {moves} moves")), "{replay}");
    let winner = out.split("winner=").nth(1).unwrap().split(' ').next().unwrap();
    assert!(replay.contains(&format!("{winner} wins")));
}

#[test]
fn sample_emits_the_trial_board() {
    let d = tempfile::tempdir().unwrap();
    ok(d.path(), &["sample", "--set", "n=30", "--set", "p=0.2", "--set", "seed_start=9", "-o", "s"]);
    let text = fs::read_to_string(d.path().join("s/graph.txt")).unwrap();
    let cfg = gnpgames::harness::Config::default().with_overrides(["n=30", "p=0.2"]).unwrap();
    assert_eq!(text, gnpgames::harness::board_for(&cfg, 9).unwrap().to_text());
}

#[test]
fn audit_flags_vacuous_properties_and_is_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let args = ["audit", "--set", "n=10", "--set", "p=0.5", "--set", "seeds=3", "--samples", "200"];
    ok(d.path(), &[&args[..], &["-o", "a"]].concat());
    ok(d.path(), &[&args[..], &["-o", "b"]].concat());
    let a = fs::read_to_string(d.path().join("a/audit.txt")).unwrap();
    assert!(a.contains("vacuous"), "{a}");
    assert_eq!(a, fs::read_to_string(d.path().join("b/audit.txt")).unwrap());
}

#[test]
fn oracle_check_and_box_tables() {
    let d = tempfile::tempdir().unwrap();
    let out = ok(
        d.path(),
        &["oracle-check", "--set", "n=5", "--set", "p=0.7", "--set", "seeds=15", "--set", "breaker=breaker-potential", "-o", "o"],
    );
    assert!(out.contains("first-move-violations=0"), "{out}");
    let out = ok(d.path(), &["box", "--m", "2..4", "--l", "1..3", "--b", "1..4", "-o", "b"]);
    let above = out.split("above-threshold=").nth(1).unwrap().split(' ').next().unwrap();
    assert!(out.ends_with(&format!("boxmaker-wins-above={above}\n")), "{out}");
    let out = ok(d.path(), &["box", "--reverse", "--m", "2..3", "--l", "1..2", "--b", "1..2", "-o", "r"]);
    assert!(out.contains("rbox instances=16"));
    for dir in ["o", "b", "r"] {
        assert!(d.path().join(dir).join("manifest.json").exists(), "{dir}");
    }
    let m: serde_json::Value = serde_json::from_slice(&fs::read(d.path().join("r/manifest.json")).unwrap()).unwrap();
    assert_eq!(m["command"], "box");
    assert_eq!(m["config"]["reverse"], "true");
}
