use std::path::Path;
use std::process::{Command, Output};

fn geogirth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geogirth")).args(args).env_remove("GEOGIRTH_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_is_reproducible_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    for p in [&a, &b] {
        let o = geogirth(&["--seed", "4", "generate", "--n", "300", "--radii", "power", "--out", path(p)]);
        assert!(o.status.success());
    }
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    let set = geogirth::instance::read(&a).unwrap();
    assert_eq!(geogirth::instance::format(&geogirth::instance::to_points(&set)).as_bytes(), &text[..]);
    let one = geogirth(&["generate", "--n", "1"]);
    assert_eq!(stdout(&one).lines().count(), 2);
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_geogirth"));
        c.args(["generate", "--n", "5"]).env_remove("GEOGIRTH_SEED");
        if let Some(v) = env {
            c.env("GEOGIRTH_SEED", v);
        }
        stdout(&c.output().unwrap())
    };
    assert_eq!(run(Some("9")), stdout(&geogirth(&["--seed", "9", "generate", "--n", "5"])));
    assert_ne!(run(Some("9")), run(None));
}

#[test]
fn forest_has_no_girth() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("path.txt");
    std::fs::write(&f, "4\n0 0 0.6\n1 0 0.6\n2 0 0.6\n3 0 0.6\n").unwrap();
    let o = geogirth(&["girth", path(&f), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("answer: none"), "{out}");
    assert!(out.contains("oracle-agrees: true"), "{out}");
}

#[test]
fn verify_flag_and_cap() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("r.txt");
    assert!(geogirth(&["--seed", "3", "generate", "--n", "48", "--lo", "0.2", "--hi", "0.9", "--out", path(&f)]).status.success());
    let o = geogirth(&["shortest-triangle", path(&f), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle-agrees: true"));
    let capped = geogirth(&["shortest-triangle", path(&f), "--verify", "--oracle-cap", "10"]);
    assert!(!stdout(&capped).contains("oracle-agrees"));
    let all = geogirth(&["verify", path(&f)]);
    assert_eq!(all.status.code(), Some(0));
    assert_eq!(stdout(&all).matches("oracle-agrees: true").count(), 6);
}

#[test]
fn bad_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.txt");
    std::fs::write(&f, "2\n0 0 1\n1 1 abc\n").unwrap();
    let o = geogirth(&["triangle", path(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    std::fs::write(&f, "1\n0 0 0\n").unwrap();
    assert_eq!(geogirth(&["triangle", path(&f)]).status.code(), Some(1));
    assert_eq!(geogirth(&["triangle", "/nonexistent/file"]).status.code(), Some(1));
}

#[test]
fn bench_csv() {
    let o = geogirth(&["tx-triangle", "--bench", "sizes=64..512", "--repeats", "5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,repeat,seconds,answer"));
    let ns: Vec<usize> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(ns.len(), 4 * 5);
    assert!(ns.windows(2).all(|w| w[0] <= w[1]));
    let o = geogirth(&["bench", "triangle", "--sizes", "32..64", "--repeats", "5"]);
    assert_eq!(stdout(&o).lines().count(), 11);
}
