use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toeplitz-pc"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn chord_rows_for_sign_at_p2() {
    let csv = stdout(&[
        "spectrum",
        &data("sign.json"),
        "--p",
        "2",
        "--resolution",
        "64",
    ]);
    assert!(csv.contains("segment_id,provenance,theta_or_r,re,im"));
    let arcs: Vec<_> = rows(&csv)
        .into_iter()
        .filter(|r| r[1].starts_with("arc"))
        .collect();
    assert_eq!(arcs.len(), 2 * 66);
    for r in arcs {
        let (re, im): (f64, f64) = (r[3].parse().unwrap(), r[4].parse().unwrap());
        assert!(im.abs() < 1e-9);
        if r[2] != "0" && r[2] != "inf" {
            assert!(re > -1.0 && re < 1.0);
        }
    }
}

#[test]
fn svg_arcs_switch_sides_with_p() {
    let mean_arc_y = |p: &str| {
        let svg = stdout(&["spectrum", &data("sign.json"), "--p", p, "--out", "svg"]);
        assert!(svg.starts_with("<svg") && svg.contains(r#"width="800""#));
        let line = svg
            .lines()
            .find(|l| l.contains("class=\"arc@0\""))
            .unwrap()
            .to_owned();
        let pts = line
            .split("points=\"")
            .nth(1)
            .unwrap()
            .trim_end_matches("\"/>");
        let ys: Vec<f64> = pts
            .split(' ')
            .map(|xy| xy.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        // Screen y grows downwards; the axis sits at the middle of the window.
        let axis: f64 = svg
            .lines()
            .find(|l| l.starts_with("<line x1=\"0\""))
            .and_then(|l| l.split("y1=\"").nth(1))
            .and_then(|s| s.split('"').next())
            .unwrap()
            .parse()
            .unwrap();
        ys.iter().map(|y| y - axis).sum::<f64>() / ys.len() as f64
    };
    let (three, three_halves) = (mean_arc_y("3"), mean_arc_y("1.5"));
    assert!(three * three_halves < 0.0, "{three} {three_halves}");
}

#[test]
fn constant_spectrum_is_one_point() {
    let csv = stdout(&["spectrum", &data("constant.json"), "--p", "2"]);
    assert_eq!(rows(&csv), vec![vec!["0", "range0", "0", "1", "0"]]);
}

#[test]
fn index_examples() {
    assert_eq!(
        stdout(&[
            "index",
            &data("identity.json"),
            "--p",
            "2",
            "--lambda",
            "0,0"
        ]),
        "-1\n"
    );
    assert_eq!(
        stdout(&["index", &data("identity.json"), "--lambda", "2,0"]),
        "0\n"
    );
    assert_eq!(
        stdout(&["index", &data("identity.json"), "--lambda", "-0.5,-0.25"]),
        "-1\n"
    );
    let out = run(&["index", &data("sign.json"), "--p", "2", "--lambda", "0,0"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lambda in essential spectrum"));
    assert_eq!(
        run(&["index", &data("identity.json"), "--lambda", "nope"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verdict_examples() {
    let sgn = stdout(&["verdict", &data("sign.json")]);
    assert!(sgn.starts_with("Unbounded: jump at t=0.000\ncertificate: "));
    let trig = stdout(&["verdict", &data("trig.json")]);
    assert!(trig.starts_with("Bounded: trigonometric polynomial\ncertificate: "));
    let glued = stdout(&["verdict", &data("gluing.json")]);
    let mut lines = glued.lines();
    assert_eq!(lines.next(), Some("Unknown"));
    assert!(lines.next().unwrap().starts_with("certificate: "));
    assert!(glued.contains("n,bmo,bmo_log,vmo_defect,vmo_log_defect\n256,"));
}

#[test]
fn experiment_tables() {
    let growth = stdout(&[
        "experiment",
        &data("sign.json"),
        "growth",
        "--n-list",
        "16,64,256",
    ]);
    assert!(growth.starts_with("# file="));
    let ratios: Vec<f64> = rows(&growth)
        .iter()
        .map(|r| r[1].parse().unwrap())
        .collect();
    assert!(ratios.windows(2).all(|w| w[1] > w[0]), "{ratios:?}");
    assert!(!growth.contains("wall_time"));

    let flat = stdout(&[
        "experiment",
        &data("constant.json"),
        "growth",
        "--n-list",
        "8,32",
    ]);
    for r in rows(&flat) {
        assert!((r[1].parse::<f64>().unwrap() - 1.0).abs() < 1e-10);
    }

    let probe = stdout(&[
        "experiment",
        &data("sign.json"),
        "probe",
        "--n-list",
        "16,32,64",
    ]);
    let sigma: Vec<f64> = rows(&probe).iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(sigma.windows(2).all(|w| w[1] < w[0]), "{sigma:?}");

    let check = stdout(&[
        "experiment",
        &data("trig.json"),
        "indexcheck",
        "--lambda",
        "2,0",
    ]);
    assert_eq!(rows(&check), vec![vec!["2", "0", "-3", "-3", "true"]]);

    let lindelof = stdout(&["experiment", &data("trig.json"), "lindelof", "--t", "1"]);
    assert_eq!(rows(&lindelof).len(), 13);
}

#[test]
fn budget_and_domain_errors_exit_3() {
    let big = run(&[
        "experiment",
        &data("sign.json"),
        "probe",
        "--n-list",
        "4096",
    ]);
    assert_eq!(big.status.code(), Some(3));
    let lindelof = run(&["experiment", &data("sign.json"), "lindelof"]);
    assert_eq!(lindelof.status.code(), Some(3));
    let check = run(&["experiment", &data("sign.json"), "indexcheck"]);
    assert_eq!(check.status.code(), Some(3));
}

#[test]
fn normalize_is_idempotent_on_wrapping_files() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("wrap.json");
    std::fs::write(
        &src,
        r#"{"pieces":[{"start_deg":300,"end_deg":60,"coeffs":[{"k":1,"re":0.1,"im":-0.2},{"k":0,"re":1,"im":0}]},
                     {"start_deg":60,"end_deg":300,"coeffs":[{"k":0,"re":-1,"im":0}]}]}"#,
    )
    .unwrap();
    let once = stdout(&["normalize", src.to_str().unwrap()]);
    let path = dir.path().join("once.json");
    std::fs::write(&path, &once).unwrap();
    assert_eq!(stdout(&["normalize", path.to_str().unwrap()]), once);
    assert_eq!(once.matches("start_deg").count(), 3);
    assert_eq!(
        stdout(&["verdict", src.to_str().unwrap()]),
        stdout(&["verdict", path.to_str().unwrap()])
    );
}

#[test]
fn missing_file_is_a_parse_error() {
    assert_eq!(
        run(&["verdict", "/nonexistent/symbol.json"]).status.code(),
        Some(2)
    );
}
