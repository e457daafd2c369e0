use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use superhom_cli::commands::{self, HomologySummary, PersistSummary};
use superhom_cli::formats::{
    self, BarRecord, BettiRecord, CorrelationRecord, CriticalRecord, Endpoint, IntervalRecord,
    TriangleRecord,
};
use superhom_cli::output::{sha256_hex, Manifest, RunReport};
use superhom_cli::CliError;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn superhom(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superhom"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str], cwd: &Path) -> String {
    let out = superhom(args, cwd);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn csv_rows<T: for<'de> serde::Deserialize<'de>>(dir: &Path, name: &str) -> Vec<T> {
    formats::from_csv(&read(dir, name), name).unwrap()
}

fn json<T: for<'de> serde::Deserialize<'de>>(dir: &Path, name: &str) -> T {
    formats::from_json(&read(dir, name), name).unwrap()
}

/// Parses both encodings and re-serializes, expecting the original bytes.
fn assert_round_trip<T>(dir: &Path, stem: &str, header: &[&str]) -> Vec<T>
where
    T: serde::Serialize + for<'de> serde::Deserialize<'de> + PartialEq + std::fmt::Debug,
{
    let csv_name = format!("{stem}.csv");
    let from_csv: Vec<T> = csv_rows(dir, &csv_name);
    let from_json: Vec<T> = json(dir, &format!("{stem}.json"));
    assert_eq!(from_csv, from_json, "{stem}");
    assert_eq!(
        formats::to_csv(&from_csv, header).unwrap(),
        read(dir, &csv_name)
    );
    assert_eq!(
        formats::to_json(&from_json).unwrap(),
        read(dir, &format!("{stem}.json"))
    );
    from_csv
}

fn assert_manifest(dir: &Path, command: &str) {
    let manifest: Manifest = json(dir, "manifest.json");
    assert_eq!(manifest.command, command);
    for entry in &manifest.files {
        let bytes = fs::read(dir.join(&entry.name)).unwrap();
        assert_eq!(entry.sha256, sha256_hex(&bytes), "{}", entry.name);
        assert_eq!(entry.bytes, bytes.len());
    }
    assert!(manifest.files.iter().all(|e| e.name != "run_report.json"));
    let report: RunReport = json(dir, "run_report.json");
    assert_eq!(report.manifest, manifest);
    assert_eq!(
        report.manifest_sha256,
        sha256_hex(&fs::read(dir.join("manifest.json")).unwrap())
    );
}

fn betti_of(rows: &[BettiRecord], mode: &str) -> Vec<usize> {
    rows.iter()
        .filter(|r| r.mode == mode)
        .map(|r| r.value)
        .collect()
}

fn square_config(tmp: &Path, scheme: &str) -> PathBuf {
    let cfg = tmp.join("job.cfg");
    let text = format!(
        "# unit square\npoints = {}\nconstruction = clique\nmax_dim = 3\nformat = both\n{scheme}\n",
        fixture("square.points").display()
    );
    fs::write(&cfg, text).unwrap();
    cfg
}

#[test]
fn homology_outputs_round_trip() {
    let tmp = TempDir::new().unwrap();
    let hyper = fixture("hollow_triangle.hyper");
    let stdout = run_ok(
        &[
            "homology",
            "--hypergraph",
            hyper.to_str().unwrap(),
            "--construction",
            "hypergraph",
            "--format",
            "both",
            "-o",
            "out",
        ],
        tmp.path(),
    );
    assert!(stdout.contains("absolute  betti (0, 1)"), "{stdout}");
    let dir = tmp.path().join("out");
    let rows: Vec<BettiRecord> = assert_round_trip(&dir, "betti", &commands::BETTI_HEADER);
    assert_eq!(betti_of(&rows, "absolute"), [0, 1]);
    assert_eq!(betti_of(&rows, "sup"), [0, 1]);
    let summary: HomologySummary = json(&dir, "summary.json");
    assert_eq!(
        formats::to_json(&summary).unwrap(),
        read(&dir, "summary.json")
    );
    assert_eq!(summary.structure.cells, [3, 3]);
    let delta = formats::parse_delta(&read(&dir, "complex.delta"), "complex.delta").unwrap();
    assert_eq!(delta.x.counts(), [3, 3]);
    assert_eq!(delta.h.count(1), 3);
    assert_eq!(delta.h.count(0), 0);
    assert_manifest(&dir, "homology");
}

#[test]
fn persist_outputs_round_trip() {
    let tmp = TempDir::new().unwrap();
    let cfg = square_config(tmp.path(), "scheme = vr");
    run_ok(
        &["persist", "-c", cfg.to_str().unwrap(), "-o", "out"],
        tmp.path(),
    );
    let dir = tmp.path().join("out");
    let bars: Vec<BarRecord> = assert_round_trip(&dir, "barcodes", &commands::BAR_HEADER);
    let _: Vec<IntervalRecord> = assert_round_trip(&dir, "intervals", &commands::INTERVAL_HEADER);
    let triangle: Vec<TriangleRecord> =
        assert_round_trip(&dir, "triangle", &commands::TRIANGLE_HEADER);
    let critical: Vec<CriticalRecord> =
        assert_round_trip(&dir, "critical_values", &commands::CRITICAL_HEADER);
    assert!(triangle.iter().all(|r| r.exact));
    assert_eq!(critical.len(), 3);

    let correlations: BTreeMap<String, Vec<CorrelationRecord>> = json(&dir, "correlations.json");
    assert_eq!(
        correlations.keys().collect::<Vec<_>>(),
        ["J", "P", "boundary"]
    );
    for (arrow, rows) in &correlations {
        let name = format!("correlation_{arrow}.csv");
        assert_eq!(&csv_rows::<CorrelationRecord>(&dir, &name), rows);
        assert_eq!(
            formats::to_csv(rows, &commands::CORRELATION_HEADER).unwrap(),
            read(&dir, &name)
        );
    }
    // With every cell marked, J is an isomorphism matching bars one to one.
    assert!(correlations["J"]
        .iter()
        .all(|r| (r.row == r.col) == (r.value == 1)));

    let loop_bar = bars
        .iter()
        .find(|b| b.module == "embedded" && b.degree == 1)
        .unwrap();
    assert!((loop_bar.birth - 0.5).abs() < 1e-9);
    match loop_bar.death {
        Endpoint::Finite(d) => assert!((d - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9),
        Endpoint::Infinite => panic!("loop never dies"),
    }
    let summary: PersistSummary = json(&dir, "summary.json");
    assert!(summary.triangle_exact && !summary.non_regular);
    assert_manifest(&dir, "persist");
}

#[test]
fn seeded_random_is_byte_identical() {
    let tmp = TempDir::new().unwrap();
    let cfg = square_config(
        tmp.path(),
        "scheme = seeded_random\nseed = 42\nexperimental = true",
    );
    for out in ["a", "b"] {
        run_ok(
            &["persist", "-c", cfg.to_str().unwrap(), "-o", out],
            tmp.path(),
        );
    }
    let manifest: Manifest = json(&tmp.path().join("a"), "manifest.json");
    assert!(!manifest.files.is_empty());
    for entry in manifest
        .files
        .iter()
        .map(|e| e.name.as_str())
        .chain(["manifest.json"])
    {
        assert_eq!(
            read(&tmp.path().join("a"), entry),
            read(&tmp.path().join("b"), entry),
            "{entry}"
        );
    }
    // A different seed changes the critical values.
    run_ok(
        &[
            "persist",
            "-c",
            cfg.to_str().unwrap(),
            "--seed",
            "43",
            "-o",
            "c",
        ],
        tmp.path(),
    );
    assert_ne!(
        read(&tmp.path().join("a"), "critical_values.csv"),
        read(&tmp.path().join("c"), "critical_values.csv")
    );
}

#[test]
fn constant_scheme_matches_static_betti() {
    let tmp = TempDir::new().unwrap();
    let delta = fixture("twin_2cells.delta");
    let base = [
        "--delta",
        delta.to_str().unwrap(),
        "--construction",
        "delta",
        "--field",
        "rational",
    ];
    run_ok(
        &[&["homology"], &base[..], &["-o", "static"]].concat(),
        tmp.path(),
    );
    run_ok(
        &[
            &["persist"],
            &base[..],
            &["--scheme", "constant", "--constant", "1.5", "-o", "bars"],
        ]
        .concat(),
        tmp.path(),
    );
    let betti: Vec<BettiRecord> = csv_rows(&tmp.path().join("static"), "betti.csv");
    let bars: Vec<BarRecord> = csv_rows(&tmp.path().join("bars"), "barcodes.csv");
    assert!(bars
        .iter()
        .all(|b| b.birth == 1.5 && b.death == Endpoint::Infinite));
    for (module, mode) in [
        ("embedded", "absolute"),
        ("ambient", "ambient"),
        ("relative", "relative"),
    ] {
        let expected = betti_of(&betti, mode);
        let mut got = vec![0; expected.len()];
        for b in bars.iter().filter(|b| b.module == module) {
            got[b.degree] += b.multiplicity;
        }
        assert_eq!(got, expected, "{module}");
    }
}

#[test]
fn fully_marked_family_has_embedded_equal_to_ambient() {
    let tmp = TempDir::new().unwrap();
    let cfg = square_config(tmp.path(), "");
    run_ok(
        &["homology", "-c", cfg.to_str().unwrap(), "-o", "out"],
        tmp.path(),
    );
    let rows: Vec<BettiRecord> = csv_rows(&tmp.path().join("out"), "betti.csv");
    assert_eq!(betti_of(&rows, "absolute"), betti_of(&rows, "ambient"));
    assert_eq!(betti_of(&rows, "absolute"), [1, 0, 0, 0]);
}

#[test]
fn empty_family_gives_zero_tables() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("g.txt"), "directed 0\nv a\nv b\ne x a b\n").unwrap();
    fs::write(tmp.path().join("fam.txt"), "# no members\n").unwrap();
    run_ok(
        &[
            "homology",
            "--graph",
            "g.txt",
            "--family",
            "fam.txt",
            "--construction",
            "edge_del",
            "-o",
            "out",
        ],
        tmp.path(),
    );
    let rows: Vec<BettiRecord> = csv_rows(&tmp.path().join("out"), "betti.csv");
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.value == 0));
}

#[test]
fn flags_override_config() {
    let tmp = TempDir::new().unwrap();
    let cfg = square_config(tmp.path(), "field = rational");
    run_ok(
        &[
            "homology",
            "-c",
            cfg.to_str().unwrap(),
            "--field",
            "gf2",
            "-o",
            "out",
        ],
        tmp.path(),
    );
    let summary: HomologySummary = json(&tmp.path().join("out"), "summary.json");
    assert_eq!(summary.field, "gf2");
}

fn exit_code(args: &[&str], cwd: &Path) -> i32 {
    superhom(args, cwd).status.code().expect("exited")
}

#[test]
fn exit_codes() {
    let tmp = TempDir::new().unwrap();
    let t = tmp.path();
    assert_eq!(exit_code(&["frobnicate"], t), 1);
    assert_eq!(
        exit_code(&["homology", "--construction", "clique"], t),
        1,
        "missing input"
    );
    assert_eq!(
        exit_code(
            &[
                "homology",
                "--hypergraph",
                "absent.hyper",
                "--construction",
                "hypergraph"
            ],
            t
        ),
        1
    );
    assert_eq!(
        exit_code(&["homology", "--field", "gf7"], t),
        1,
        "bad value"
    );

    fs::write(t.join("bad.cfg"), "construction = clique\ncolour = blue\n").unwrap();
    let out = superhom(&["homology", "-c", "bad.cfg"], t);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.cfg:2"));

    // d_0 d_0 t = b but d_0 d_1 t = a: the face identity fails.
    fs::write(
        t.join("broken.delta"),
        "cell 0 a\ncell 0 b\ncell 1 e : a b\ncell 1 f : b a\ncell 1 g : b a\ncell 2 t : e f g\n",
    )
    .unwrap();
    let out = superhom(
        &[
            "validate",
            "--delta",
            "broken.delta",
            "--construction",
            "delta",
        ],
        t,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`t`"));

    let points = fixture("square.points");
    let path_on_undirected = [
        "homology",
        "--points",
        points.to_str().unwrap(),
        "--construction",
        "path",
    ];
    assert_eq!(exit_code(&path_on_undirected, t), 2);

    let compute = CliError::from(superhom::Error::CompositionLaw("test".into()));
    assert_eq!(compute.exit_code(), 3);
}

#[test]
fn validate_prints_certificates() {
    let tmp = TempDir::new().unwrap();
    let hyper = fixture("simplex2_no_v0.hyper");
    let stdout = run_ok(
        &[
            "validate",
            "--hypergraph",
            hyper.to_str().unwrap(),
            "--construction",
            "hypergraph",
        ],
        tmp.path(),
    );
    assert!(stdout.contains("delta identities: ok"), "{stdout}");
    assert!(stdout.contains("complete: false"), "{stdout}");
    assert!(stdout.contains("certificate:"), "{stdout}");
}

#[test]
fn score_prints_critical_values() {
    let tmp = TempDir::new().unwrap();
    let cfg = square_config(tmp.path(), "scheme = vr");
    let stdout = run_ok(&["score", "-c", cfg.to_str().unwrap()], tmp.path());
    let values: Vec<f64> = stdout.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 3);
    assert_eq!(values[..2], [0.0, 0.5]);
}

fn marks(svg: &str) -> Vec<&str> {
    svg.match_indices("<circle class=\"mark")
        .map(|(i, _)| &svg[i..svg[i..].find('>').unwrap() + i])
        .collect()
}

#[test]
fn render_empty_barcode_draws_axes_only() {
    let tmp = TempDir::new().unwrap();
    fs::write(
        tmp.path().join("empty.csv"),
        "module,degree,birth,death,multiplicity\n",
    )
    .unwrap();
    run_ok(&["render", "empty.csv", "-o", "empty.svg"], tmp.path());
    let svg = read(tmp.path(), "empty.svg");
    assert!(
        svg.starts_with("<svg") && svg.contains("width=\"800\"") && svg.contains("height=\"600\"")
    );
    assert!(svg.contains("class=\"axes\""));
    assert!(marks(&svg).is_empty());
}

#[test]
fn render_finite_and_infinite_bar() {
    let tmp = TempDir::new().unwrap();
    fs::write(
        tmp.path().join("two.csv"),
        "module,degree,birth,death,multiplicity\nembedded,0,0,1,1\nembedded,1,0.5,inf,1\n",
    )
    .unwrap();
    run_ok(&["render", "two.csv", "-o", "two.svg"], tmp.path());
    let first = read(tmp.path(), "two.svg");
    let m = marks(&first);
    assert_eq!(m.len(), 2);
    assert_eq!(m.iter().filter(|s| s.contains(" inf\"")).count(), 1);
    run_ok(&["render", "two.csv", "-o", "again.svg"], tmp.path());
    assert_eq!(first, read(tmp.path(), "again.svg"));
}

#[test]
fn render_rejects_malformed_record() {
    let tmp = TempDir::new().unwrap();
    fs::write(
        tmp.path().join("bad.csv"),
        "module,degree,birth,death,multiplicity\nembedded,zero,0,1,1\n",
    )
    .unwrap();
    let out = superhom(&["render", "bad.csv"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.csv:2"));
}

#[test]
fn render_square_persistence() {
    let tmp = TempDir::new().unwrap();
    let cfg = square_config(tmp.path(), "scheme = vr");
    run_ok(
        &["persist", "-c", cfg.to_str().unwrap(), "-o", "out"],
        tmp.path(),
    );
    run_ok(&["render", "out/barcodes.json", "-o", "sq.svg"], tmp.path());
    let svg = read(tmp.path(), "sq.svg");
    let m = marks(&svg);
    assert_eq!(m.iter().filter(|s| s.contains("degree-0")).count(), 4);
    assert_eq!(
        m.iter()
            .filter(|s| s.contains("degree-0") && s.contains(" inf\""))
            .count(),
        1
    );
    assert_eq!(m.iter().filter(|s| s.contains("degree-1")).count(), 1);
}
