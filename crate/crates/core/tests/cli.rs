use std::process::{Command, Output};

fn polyzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyzeta")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn polylog_value_has_requested_digits() {
    let o = polyzeta(&["polylog", "--s", "2", "--z", "0.5", "--digits", "25"]);
    assert!(o.status.success());
    let line = stdout(&o);
    let parts: Vec<&str> = line.trim_end().split(' ').collect();
    assert_eq!(parts.len(), 2);
    // Li_2(1/2) = 0.5822405264650125059026...
    assert!(parts[0].starts_with("5.822405264650125059026"), "{line}");
    let mantissa = parts[0].split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 25);
    assert!(line.ends_with('\n'));
}

#[test]
fn trace_names_the_route() {
    let o = polyzeta(&["polylog", "--s", "0.5+15i", "--z", "100-3i", "--digits", "15", "--trace"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.lines().nth(1).unwrap().starts_with("route: "), "{out}");
}

#[test]
fn exit_codes_follow_categories() {
    let o = polyzeta(&["polylog", "--s", "2", "--z", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.starts_with("error[branch-point]: "), "{err}");
    assert_eq!(err.lines().count(), 1);

    let o = polyzeta(&["hurwitz", "--s", "0.5", "--q", "0.3", "--algo", "direct"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[convergence]: "));

    let o = polyzeta(&["polylog", "--s", "two", "--z", "0.5"]);
    assert_eq!(o.status.code(), Some(4));
    let o = polyzeta(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[usage]: "));
    let o = polyzeta(&["validate", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn hurwitz_algorithms_agree() {
    let mut seen = Vec::new();
    for algo in ["em", "taylor0", "taylor", "jonquiere"] {
        let o = polyzeta(&["hurwitz", "--s", "0.5+14.13i", "--q", "0.2", "--digits", "20", "--algo", algo]);
        assert!(o.status.success(), "{algo}");
        seen.push(stdout(&o));
    }
    assert!(seen.windows(2).all(|w| w[0] == w[1]), "{seen:?}");
}

#[test]
fn sheet_and_periodic() {
    let o = polyzeta(&["sheet", "--word", "", "--s", "2", "--z", "0.5", "--digits", "20"]);
    assert!(stdout(&o).starts_with("5.8224052646501250590e-01"));
    let o = polyzeta(&["periodic", "--q", "0.5", "--s", "2", "--digits", "20"]);
    // F(1/2; 2) = Li_2(−1) = −π²/12
    assert!(stdout(&o).starts_with("-8.2246703342411321824e-01"));
}

#[test]
fn validate_is_repeatable() {
    let a = polyzeta(&["validate", "--suite", "bernoulli"]);
    let b = polyzeta(&["validate", "--suite", "bernoulli"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("passed 6 of 6"));
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.csv");
    let p = path.to_str().unwrap();
    let o = polyzeta(&[
        "bench",
        "--preset",
        "fig8.3",
        "--digits-list",
        "15",
        "--cache",
        "cold",
        "--csv",
        p,
        "--repetitions",
        "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("function,algo,digits,cache,seconds,terms_used"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().any(|r| r.starts_with("hurwitz,direct,15,cold,SKIPPED")));
    let timed = rows.iter().find(|r| r.starts_with("hurwitz,euler_maclaurin")).unwrap();
    let secs = timed.split(',').nth(4).unwrap();
    assert_eq!(secs.split('.').nth(1).unwrap().len(), 6);
    let o = polyzeta(&["bench", "--preset", "fig9", "--csv", p]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn render_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.ppm");
    let b = dir.path().join("b.ppm");
    for p in [&a, &b] {
        let o = polyzeta(&[
            "render",
            "--figure",
            "phase",
            "--s",
            "0.5+15i",
            "--window",
            "-1,1,-1,1",
            "--size",
            "16x16",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let x = std::fs::read(&a).unwrap();
    assert!(x.starts_with(b"P6\n16 16\n255\n"));
    assert_eq!(x, std::fs::read(&b).unwrap());
    let o = polyzeta(&["render", "--figure", "plane", "--size", "4x4", "--out", a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}
