use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn zetacond(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetacond"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn zero_table() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros100k.txt")
}

fn read_curve(path: &Path) -> Vec<(f64, f64)> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("delta"))
        .map(|l| {
            let (d, p) = l.split_once(',').unwrap();
            (d.parse().unwrap(), p.parse().unwrap())
        })
        .collect()
}

#[test]
fn primezeta_values_and_guards() {
    let dir = TempDir::new().unwrap();
    let out = zetacond(dir.path(), &["primezeta", "--s-re", "2", "--s-im", "0"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out)["value"][0].as_f64().unwrap();
    assert!((v - 0.452_247_420_041_065_5).abs() < 1e-12);

    let out = zetacond(
        dir.path(),
        &["primezeta", "--truncated", "10", "--s-re", "2"],
    );
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out)["value"][0].as_f64().unwrap();
    let four_terms = 1.0 / 4.0 + 1.0 / 9.0 + 1.0 / 25.0 + 1.0 / 49.0;
    assert!((v - four_terms).abs() < 1e-15);

    let out = zetacond(dir.path(), &["primezeta", "--sigma", "1", "--delta", "0"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("pole"));

    assert_eq!(code(&zetacond(dir.path(), &["primezeta"])), 2);
    assert_eq!(
        code(&zetacond(dir.path(), &["primezeta", "--sigma", "0.4"])),
        2
    );
    assert!(dir.path().join("zetacond-primezeta.manifest.json").exists());
}

#[test]
fn classify_cases() {
    let dir = TempDir::new().unwrap();
    let case = |args: &[&str]| {
        let out = zetacond(dir.path(), args);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        stdout_json(&out)["case"].as_str().unwrap().to_owned()
    };
    assert_eq!(
        case(&["classify", "--sigma", "0.75", "--delta", "0"]),
        "DivergesToMinusInfinity"
    );
    assert_eq!(
        case(&["classify", "--sigma", "0.75", "--delta", "4.5"]),
        "DivergesToPlusInfinity"
    );
    let root = zetacond::predictor::bounded_mean_delta(0.75, 6.0, 7.0)
        .unwrap()
        .to_string();
    assert_eq!(
        case(&[
            "classify",
            "--sigma",
            "0.75",
            "--delta",
            &root,
            "--tolerance",
            "1e-6"
        ]),
        "BoundedMean"
    );
    assert_eq!(
        case(&[
            "classify",
            "--sigma",
            "0.75",
            "--delta",
            "0",
            "--modulus",
            "3"
        ]),
        "DivergesToMinusInfinity"
    );
    assert_eq!(
        code(&zetacond(
            dir.path(),
            &["classify", "--sigma", "0.5", "--delta", "1"]
        )),
        2
    );
}

#[test]
fn zeros_files() {
    let dir = TempDir::new().unwrap();
    let lines = |t: &str| {
        let name = format!("z{t}.txt");
        let out = zetacond(dir.path(), &["zeros", "--t-max", t, "--out", &name]);
        assert_eq!(code(&out), 0);
        fs::read_to_string(dir.path().join(name))
            .unwrap()
            .lines()
            .map(str::to_owned)
            .collect::<Vec<_>>()
    };
    let three = lines("30");
    assert_eq!(three.len(), 3);
    for (line, expect) in three
        .iter()
        .zip([14.134_725_142, 21.022_039_639, 25.010_857_580])
    {
        assert!((line.parse::<f64>().unwrap() - expect).abs() < 1e-8);
    }
    assert_eq!(lines("15").len(), 1);
    assert!(lines("14").is_empty());
    assert_eq!(lines("100").len(), 29);
    let parsed = zetacond::zeta_zeros::load_zero_table(dir.path().join("z100.txt")).unwrap();
    assert_eq!(parsed.len(), 29);
    assert_eq!(
        code(&zetacond(
            dir.path(),
            &["zeros", "--t-max", "1001", "--out", "x.txt"]
        )),
        2
    );
}

#[test]
fn predict_grid_edges() {
    let dir = TempDir::new().unwrap();
    let out = zetacond(
        dir.path(),
        &[
            "predict",
            "--t-anchor",
            "1e5",
            "--delta-min",
            "2",
            "--delta-max",
            "2",
            "--out",
            "one.csv",
        ],
    );
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(dir.path().join("one.csv")).unwrap();
    assert!(text.starts_with("# t_anchor="));
    assert_eq!(read_curve(&dir.path().join("one.csv")).len(), 1);

    let out = zetacond(
        dir.path(),
        &["predict", "--zero-index", "10", "--out", "c.csv"],
    );
    assert_eq!(code(&out), 2);
    let out = zetacond(
        dir.path(),
        &["predict", "--t-anchor", "50", "--out", "c.csv"],
    );
    assert_eq!(code(&out), 2);
    let out = zetacond(
        dir.path(),
        &[
            "predict",
            "--t-anchor",
            "1e5",
            "--delta-max",
            "70",
            "--out",
            "c.csv",
        ],
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn predict_reproduces_curve_with_minima_at_zeros() {
    let dir = TempDir::new().unwrap();
    let table = zero_table();
    let out = zetacond(
        dir.path(),
        &[
            "predict",
            "--zero-table",
            table.to_str().unwrap(),
            "--zero-index",
            "100000",
            "--delta-min",
            "0.001",
            "--delta-max",
            "40",
            "--delta-step",
            "0.01",
            "--out",
            "curve.csv",
            "--svg",
            "curve.svg",
            "--mark-zeros",
        ],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let curve = read_curve(&dir.path().join("curve.csv"));
    assert_eq!(curve.len(), 4000);
    assert!(curve.iter().all(|&(_, p)| (0.0..=1.0).contains(&p)));
    assert!(curve[0].1 > 0.95);
    let minima: Vec<f64> = curve
        .windows(3)
        .filter(|w| w[1].1 < w[0].1 && w[1].1 <= w[2].1)
        .map(|w| w[1].0)
        .collect();
    for zero in [14.134_725, 21.022_040, 25.010_858, 30.424_876, 32.935_062] {
        assert!(
            minima.iter().any(|m| (m - zero).abs() <= 0.5),
            "no minimum near {zero}"
        );
    }
    let svg = fs::read_to_string(dir.path().join("curve.svg")).unwrap();
    assert!(svg.contains("width=\"800\"") && svg.contains("height=\"400\""));
    assert!(svg.matches("stroke-dasharray").count() >= 5);

    let manifest: Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("curve.csv.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["subcommand"], "predict");
    assert_eq!(manifest["schema_version"], "1");
    assert_eq!(manifest["output_paths"].as_array().unwrap().len(), 2);
}

const SMALL_MC: [&str; 12] = [
    "mc",
    "--check",
    "battery",
    "--T",
    "1e5",
    "--M",
    "12000",
    "--X",
    "5000",
    "--sigma",
    "0.75",
    "--delta=1,5",
];

#[test]
fn mc_exit_codes() {
    let dir = TempDir::new().unwrap();
    let mut args = SMALL_MC.to_vec();
    args.extend(["--out", "battery.json"]);
    let out = zetacond(dir.path(), &args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("battery.json")).unwrap())
            .unwrap();
    assert_eq!(report["schema_version"], "1");
    assert_eq!(report["check"], "battery");
    assert!(report["pass"].as_array().unwrap().iter().all(|p| p == true));

    // σ = 2 is visibly non-normal, so the CLT check fails.
    let out = zetacond(
        dir.path(),
        &[
            "mc", "--check", "clt", "--sigma", "2", "--X", "1000", "--M", "10000",
        ],
    );
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["pass"][0], false);

    assert_eq!(code(&zetacond(dir.path(), &["mc", "--M", "10"])), 2);
    assert_eq!(
        code(&zetacond(
            dir.path(),
            &["mc", "--check", "clt", "--M", "2000"]
        )),
        2
    );
    assert_eq!(code(&zetacond(dir.path(), &["mc", "--check", "bogus"])), 2);
    assert_eq!(
        code(&zetacond(
            dir.path(),
            &[
                "mc",
                "--check",
                "log-zeta-cov",
                "--sigma",
                "0.5",
                "--M",
                "1000"
            ]
        )),
        2
    );
}

#[test]
fn mc_replay_is_bit_identical() {
    let dir = TempDir::new().unwrap();
    let mut args = SMALL_MC.to_vec();
    args.extend(["--seed", "7", "--out", "run.json"]);
    assert_eq!(code(&zetacond(dir.path(), &args)), 0);
    let manifest_path = dir.path().join("run.json.manifest.json");
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(&manifest_path).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 7);

    let replay_dir = dir.path().join("replay");
    fs::create_dir(&replay_dir).unwrap();
    let out = zetacond(
        dir.path(),
        &[
            "replay",
            manifest_path.to_str().unwrap(),
            "--output-dir",
            replay_dir.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let original = fs::read(dir.path().join("run.json")).unwrap();
    let replayed = fs::read(replay_dir.join("run.json")).unwrap();
    assert_eq!(original, replayed);
    let replayed_manifest: Value = serde_json::from_str(
        &fs::read_to_string(replay_dir.join("run.json.manifest.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(replayed_manifest["parameters"]["seed"], 7);
}

#[test]
fn mc_parallel_matches_sequential() {
    let dir = TempDir::new().unwrap();
    let run = |extra: &[&str], name: &str| {
        let mut args = SMALL_MC.to_vec();
        args.extend(extra);
        args.extend(["--out", name]);
        assert_eq!(code(&zetacond(dir.path(), &args)), 0);
        let v: Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join(name)).unwrap()).unwrap();
        v["estimates"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .collect::<Vec<_>>()
    };
    let seq = run(&[], "seq.json");
    let par_a = run(&["--parallel"], "par_a.json");
    let par_b = run(&["--parallel"], "par_b.json");
    for ((s, a), b) in seq.iter().zip(&par_a).zip(&par_b) {
        assert!(
            (s - a).abs() <= 1e-12 && (a - b).abs() <= 1e-12,
            "{s} {a} {b}"
        );
    }
}

#[test]
fn replay_other_subcommands() {
    let dir = TempDir::new().unwrap();
    assert_eq!(
        code(&zetacond(
            dir.path(),
            &["zeros", "--t-max", "40", "--out", "z.txt"]
        )),
        0
    );
    assert_eq!(
        code(&zetacond(
            dir.path(),
            &["characters", "--modulus", "12", "--out", "chars.json"]
        )),
        0
    );
    let replay_dir = dir.path().join("again");
    fs::create_dir(&replay_dir).unwrap();
    for (file, manifest) in [
        ("z.txt", "z.txt.manifest.json"),
        ("chars.json", "chars.json.manifest.json"),
    ] {
        let out = zetacond(
            dir.path(),
            &[
                "replay",
                manifest,
                "--output-dir",
                replay_dir.to_str().unwrap(),
            ],
        );
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(
            fs::read(dir.path().join(file)).unwrap(),
            fs::read(replay_dir.join(file)).unwrap()
        );
    }
    fs::write(dir.path().join("bad.json"), "{\"schema_version\": \"9\"}").unwrap();
    assert_eq!(code(&zetacond(dir.path(), &["replay", "bad.json"])), 2);
}

#[test]
fn characters_dump() {
    let dir = TempDir::new().unwrap();
    let out = zetacond(dir.path(), &["characters", "--modulus", "4"]);
    assert_eq!(code(&out), 0);
    let dumps = stdout_json(&out);
    let dumps = dumps.as_array().unwrap();
    assert_eq!(dumps.len(), 2);
    assert_eq!(dumps[0]["principal"], true);
    assert_eq!(dumps[1]["order"], 2);
    assert_eq!(dumps[1]["values"][3][0], -1.0);
    assert_eq!(
        code(&zetacond(dir.path(), &["characters", "--modulus", "0"])),
        2
    );
}
