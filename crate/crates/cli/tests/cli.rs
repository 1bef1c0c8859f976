use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use adafilter::adafilter::{adafilter_bh, compute_filter_select};
use adafilter::baselines::direct_adjust;
use adafilter::simlab::stream;
use adafilter::{Adjustment, DirectProcedureSpec, PcCombiner};
use adafilter_cli::{emit_csv, ingest_csv, parse_csv};
use rand::Rng;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn adafilter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adafilter"))
        .args(args)
        .env_remove("ADAFILTER_THREADS")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn toy_fixture_rejects_g1() {
    let dir = tempfile::tempdir().unwrap();
    let tsv = dir.path().join("out.tsv");
    let input = data("toy.csv");
    let out = adafilter(&[
        "test",
        "--input",
        input.to_str().unwrap(),
        "--method",
        "adafilter-bh",
        "--r",
        "2",
        "--alpha",
        "0.05",
        "--output",
        tsv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let summary = stdout(&out);
    assert!(summary.contains("gamma0\t0.05\n"), "{summary}");
    assert!(summary.contains("rejections\t1\n"), "{summary}");
    let written = std::fs::read_to_string(&tsv).unwrap();
    assert_eq!(
        written,
        "id\tF\tS\tpc_pvalue\trejected\tuntestable\ng1\t0.03\t0.04\tNA\t1\t0\ng2\t0.2\t0.9\tNA\t0\t0\n"
    );
}

#[test]
fn empty_rejection_set_is_success() {
    let input = data("toy_lowered.csv");
    let out = adafilter(&[
        "test",
        "--input",
        input.to_str().unwrap(),
        "--method",
        "adafilter-bonferroni",
        "--r",
        "2",
        "--alpha",
        "0.05",
    ]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("gamma0\t0.025\n"));
    assert!(stderr(&out).contains("rejections\t0\n"));
    assert!(!stdout(&out).contains("\t1\t0\n"));
}

#[test]
fn level_above_every_study_count_fails() {
    let input = data("toy.csv");
    let out = adafilter(&[
        "test",
        "--input",
        input.to_str().unwrap(),
        "--method",
        "adafilter-bh",
        "--r",
        "3",
        "--alpha",
        "0.05",
    ]);
    assert!(!out.status.success());
    assert!(
        stderr(&out).contains("ReplicabilityLevelOutOfRange"),
        "{}",
        stderr(&out)
    );
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_invocations_fail() {
    let input = data("toy.csv");
    let input = input.to_str().unwrap();
    for args in [
        vec![
            "test",
            "--input",
            input,
            "--method",
            "direct-bh",
            "--r",
            "2",
            "--alpha",
            "0.05",
        ],
        vec!["test", "--input", input, "--r", "2", "--alpha", "0.05"],
        vec![
            "test",
            "--input",
            input,
            "--method",
            "adafilter-bh",
            "--r",
            "2",
            "--alpha",
            "0",
        ],
        vec![
            "test",
            "--input",
            "/nonexistent.csv",
            "--method",
            "adafilter-bh",
            "--r",
            "2",
            "--alpha",
            "0.05",
        ],
        vec!["curve", "--input", input],
        vec!["simulate"],
        vec!["test", "--method", "direct-bh", "--combiner", "median"],
    ] {
        let out = adafilter(&args);
        assert!(!out.status.success(), "{args:?}");
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn direct_method_reports_pc_pvalues() {
    let input = data("toy.csv");
    let out = adafilter(&[
        "test",
        "--input",
        input.to_str().unwrap(),
        "--method",
        "direct-bonferroni",
        "--combiner",
        "simes",
        "--r",
        "2",
        "--alpha",
        "0.05",
    ]);
    assert!(out.status.success());
    let tsv = stdout(&out);
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines[1], "g1\t0.03\t0.04\t0.04\t0\t0");
    assert!(stderr(&out).contains("m\t2\n"));
}

#[test]
fn curve_contains_fixture_point() {
    let input = data("toy.csv");
    let out = adafilter(&[
        "curve",
        "--input",
        input.to_str().unwrap(),
        "--r",
        "2",
        "--alpha",
        "0.05",
    ]);
    assert!(out.status.success());
    let tsv = stdout(&out);
    assert!(tsv.starts_with("gamma\tv_hat\tfdp_hat\n"));
    assert!(tsv.lines().any(|l| l == "0.05\t0.05\t0.05"), "{tsv}");
    assert!(!tsv.contains('\r'));
}

#[test]
fn curve_without_breakpoints_in_unit_interval() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    std::fs::write(&input, "id,a,b,c\nx,0.9,0.95,1\ny,0.7,1,1\n").unwrap();
    let out = adafilter(&["curve", "--input", input.to_str().unwrap(), "--r", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "gamma\tv_hat\tfdp_hat\n0\t0\t0\n");
}

#[test]
fn untestable_rows_are_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    std::fs::write(&input, "id,a,b,c\nx,0.001,0.002,0.5\ny,0.01,NA,NA\nz,0.3,0.2,NA\n").unwrap();
    let out = adafilter(&[
        "test",
        "--input",
        input.to_str().unwrap(),
        "--method",
        "adafilter-bonferroni",
        "--r",
        "2",
        "--alpha",
        "0.05",
    ]);
    assert!(out.status.success());
    let tsv = stdout(&out);
    assert!(tsv.lines().any(|l| l == "y\tNA\tNA\tNA\t0\t1"), "{tsv}");
    assert!(
        tsv.lines().any(|l| l.starts_with("x\t") && l.ends_with("\t1\t0")),
        "{tsv}"
    );
}

#[test]
fn rejection_flags_match_the_library() {
    let mut rng = stream(55, 0, 0);
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.csv");
    for _ in 0..5 {
        let mut text = String::from("id,s1,s2,s3,s4\n");
        for j in 0..200 {
            text.push_str(&format!("h{j}"));
            for _ in 0..4 {
                let p: f64 = rng.random::<f64>().powi(if j % 5 == 0 { 8 } else { 1 });
                text.push_str(&format!(",{p}"));
            }
            text.push('\n');
        }
        std::fs::write(&input, &text).unwrap();
        let table = ingest_csv(&input).unwrap();
        let flags = |args: &[&str]| -> Vec<bool> {
            let out = adafilter(args);
            assert!(out.status.success(), "{}", stderr(&out));
            stdout(&out)
                .lines()
                .skip(1)
                .map(|l| l.split('\t').nth(4).unwrap() == "1")
                .collect()
        };
        let path = input.to_str().unwrap();
        let stats = compute_filter_select(&table.matrix, 3).unwrap();
        assert_eq!(
            flags(&[
                "test",
                "--input",
                path,
                "--method",
                "adafilter-bh",
                "--r",
                "3",
                "--alpha",
                "0.1"
            ]),
            adafilter_bh(&stats, 0.1).unwrap().rejected
        );
        let spec = DirectProcedureSpec {
            combiner: PcCombiner::Fisher,
            adjustment: Adjustment::Bh,
            alpha: 0.1,
        };
        assert_eq!(
            flags(&[
                "test",
                "--input",
                path,
                "--method",
                "direct-bh-fisher",
                "--r",
                "3",
                "--alpha",
                "0.1"
            ]),
            direct_adjust(&table.matrix, 3, &spec).unwrap().rejected
        );
    }
}

#[test]
fn ingest_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.csv");
    let text = "id,a,b\nrs1,1e-300,NA\nrs2,0.123456789012345,0.5\nrs3,NA,1\n";
    std::fs::write(&path, text).unwrap();
    let table = ingest_csv(&path).unwrap();
    assert_eq!(table.ids, ["rs1", "rs2", "rs3"]);
    let again = parse_csv(&emit_csv(&table)).unwrap();
    assert_eq!(again, table);
}

fn write_panel(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("panel.txt");
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn simulate_rejects_zero_replications() {
    let dir = tempfile::tempdir().unwrap();
    let panel = write_panel(dir.path(), "M = 100\nn = 2\nr = 2\npi0 = 0.9\nreplications = 0\n");
    let out = adafilter(&["simulate", "--scenario", panel.to_str().unwrap(), "--seed", "1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("InvalidScenario"), "{}", stderr(&out));
}

#[test]
fn simulate_echoes_seed_and_honours_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let panel = write_panel(
        dir.path(),
        "M = 200\nn = 2\nr = 2\npi0 = 0.9\nreplications = 3\nmaster_seed = 17\n",
    );
    let panel = panel.to_str().unwrap();

    let from_file = adafilter(&["simulate", "--scenario", panel]);
    assert!(from_file.status.success());
    assert!(stderr(&from_file).contains("master_seed\t17"));
    assert!(stdout(&from_file).lines().nth(1).unwrap().contains("\t17\t"));

    let overridden = adafilter(&[
        "simulate",
        "--scenario",
        panel,
        "--seed",
        "99",
        "--method",
        "adafilter-bh",
        "--alpha",
        "0.1",
    ]);
    assert!(overridden.status.success());
    assert!(stderr(&overridden).contains("master_seed\t99"));
    let tsv = stdout(&overridden);
    assert_eq!(tsv.lines().count(), 2);
    assert!(tsv.lines().nth(1).unwrap().contains("\tadafilter-bh\t0.1\t"));
    assert!(tsv.contains("\tNA\tNA") || !tsv.contains("NA"));
}

#[test]
fn simulate_without_any_seed_draws_one() {
    let dir = tempfile::tempdir().unwrap();
    let panel = write_panel(dir.path(), "M = 100\nn = 2\nr = 2\npi0 = 0.9\nreplications = 1\n");
    let out = adafilter(&["simulate", "--scenario", panel.to_str().unwrap()]);
    assert!(out.status.success());
    let echoed: u64 = stderr(&out).trim().rsplit('\t').next().unwrap().parse().unwrap();
    let tsv = stdout(&out);
    assert!(tsv.lines().nth(1).unwrap().contains(&format!("\t{echoed}\t")));
    // a single replication has no interval
    assert!(tsv.lines().nth(1).unwrap().ends_with("\tNA\tNA"));
}

#[test]
fn thread_count_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let panel = write_panel(
        dir.path(),
        "M = 500\nn = 4\nr = 2\npi0 = 0.8\nreplications = 6\nrho = 0.5\nblock_size = 50\n",
    );
    let panel = panel.to_str().unwrap();
    let flag = adafilter(&["simulate", "--scenario", panel, "--seed", "5", "--threads", "3"]);
    let env = Command::new(env!("CARGO_BIN_EXE_adafilter"))
        .args(["simulate", "--scenario", panel, "--seed", "5"])
        .env("ADAFILTER_THREADS", "2")
        .output()
        .unwrap();
    assert!(flag.status.success() && env.status.success());
    assert_eq!(flag.stdout, env.stdout);
    let zero = Command::new(env!("CARGO_BIN_EXE_adafilter"))
        .args(["simulate", "--scenario", panel, "--seed", "5"])
        .env("ADAFILTER_THREADS", "0")
        .output()
        .unwrap();
    assert!(!zero.status.success());
}

#[test]
fn shipped_panel_has_the_full_layout() {
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/default_panel.txt");
    let text = std::fs::read_to_string(shipped).unwrap();
    let scenarios = adafilter::simlab::parse_scenarios(&text).unwrap();
    assert_eq!(scenarios.len(), 24);
    assert!(scenarios
        .iter()
        .all(|s| s.hypotheses == 10_000 && s.replications == 100 && s.rho == 0.5));

    // Same layout with a single cheap replication.
    let dir = tempfile::tempdir().unwrap();
    let small = write_panel(
        dir.path(),
        &text
            .replace("M = 10000", "M = 2000")
            .replace("replications = 100", "replications = 1"),
    );
    let out = adafilter(&["simulate", "--scenario", small.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 1 + 24 * 8);
}
