use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_skelcode");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Drops the trailing wall-time field.
fn without_wall(text: &str) -> String {
    text.lines()
        .map(|l| match l.find(" wall=") {
            Some(i) => &l[..i],
            None => l,
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["params", "3", "2", "1"]).status.code(), Some(0));
    assert_eq!(
        run(&["verify", "g-lemma", "--smax", "4"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["hamming-check", "5", "2", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["params", "3", "4", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such-thing"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["char-poly", "--facets", "1 x"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let cases: [&[&str]; 3] = [
        &["scan-conjecture", "--lmax", "5"],
        &["verify", "athanasiadis", "--samples", "20"],
        &["verify", "engines", "--samples", "10", "--seed", "7"],
    ];
    for args in cases {
        let one = run(&[args, &["--threads", "1"]].concat());
        let four = run(&[args, &["--threads", "4"]].concat());
        assert_eq!(
            without_wall(&stdout(&one)),
            without_wall(&stdout(&four)),
            "{args:?}"
        );
    }
}

#[test]
fn wall_time_is_last() {
    let text = stdout(&run(&["params", "5", "2", "1"]));
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("summary ") && last.rsplit(' ').next().unwrap().starts_with("wall="));
    let json = stdout(&run(&["params", "5", "2", "1", "--json"]));
    let keys: Vec<&str> = json
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    assert_eq!(keys.last(), Some(&"wall_seconds"));
}

#[test]
fn params_reports_mds_and_skips_over_cap() {
    let text = stdout(&run(&["params", "4", "4", "4"]));
    assert!(text.starts_with("K(4,4,4) [16,16,1]"));
    assert!(text.contains("MDS"));
    let capped = run(&[
        "params",
        "6",
        "5",
        "3",
        "--method",
        "exhaustive",
        "--k-cap",
        "20",
    ]);
    assert_eq!(capped.status.code(), Some(0));
    assert!(stdout(&capped).contains("skipped: bound only"));
}

#[test]
fn scan_skips_beyond_caps() {
    let text = stdout(&run(&[
        "scan-conjecture",
        "--lmax",
        "6",
        "--method",
        "exhaustive",
        "--k-cap",
        "24",
    ]));
    let line = text.lines().find(|l| l.starts_with("K(6,5,3)")).unwrap();
    assert!(line.ends_with("skipped: bound only"), "{line}");
    let k642 = text.lines().find(|l| l.starts_with("K(6,4,2)")).unwrap();
    assert!(k642.contains("d=11") && k642.contains("agrees=from_zero"));
}

#[test]
fn char_poly_of_the_empty_triangle() {
    let out = stdout(&run(&[
        "char-poly",
        "--facets",
        "1 2, 1 3, 2 3",
        "--l",
        "3",
        "--q",
        "2",
    ]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("chi 1 -3 3 -1"));
    assert_eq!(lines.next(), Some("count 7"));
}

#[test]
fn char_poly_reads_complex_files() {
    let path = std::env::temp_dir().join(format!("skelcode-complex-{}.txt", std::process::id()));
    std::fs::write(&path, "3\n1 2\n1 3\n2 3\n").unwrap();
    let out = run(&["char-poly", "--complex", path.to_str().unwrap(), "--q", "3"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(0));
    // 27 − (3 − 1)^3
    assert!(stdout(&out).contains("count 19"));
}

#[test]
fn matrix_header_and_json() {
    let text = stdout(&run(&["matrix", "3", "2", "1", "--header"]));
    assert!(text.contains("# rows 1 x1 x2 x3"));
    assert!(text.contains("# cols (0,0,0) (1,0,0) (0,1,0) (0,0,1) (1,1,0) (1,0,1) (0,1,1)"));
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&[
        "matrix", "3", "2", "1", "--json", "--order", "lex",
    ])))
    .unwrap();
    assert_eq!(json["order"], "lex");
    assert_eq!(json["matrix"][1], serde_json::json!([0, 1, 1, 1, 0, 0, 0]));
}

#[test]
fn hamming_check_prints_certificate() {
    let out = run(&["hamming-check", "3", "2", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("K(3,2,1) equivalent"));
    assert!(text.contains("parity check\n3 7 2\n"));
}
