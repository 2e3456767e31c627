use std::path::Path;
use std::process::{Command, Output};

fn cli(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycledecomp"))
        .args(args)
        .current_dir(dir)
        .env_remove("CYCLEDECOMP_CONFIG")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

const K24: &str = "6 8\n0 2\n0 3\n0 4\n0 5\n1 2\n1 3\n1 4\n1 5\n";

#[test]
fn certificate_is_written_and_verifies() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "g.el", K24);
    let o = cli(d.path(), &["decompose", "--k", "2", "--input", "g.el", "--cert", "g.cert"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let record: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(record["outcome"]["kind"], "certificate");
    assert_eq!(record["outcome"]["cycles"], 2);
    assert!(record.get("timing_ms").is_none());
    let v = cli(d.path(), &["verify", "g.el", "g.cert"]);
    assert_eq!(code(&v), 0);
    assert!(stdout(&v).starts_with("valid"));
}

#[test]
fn nonexistence_exits_two_and_its_certificate_verifies() {
    let d = tempfile::tempdir().unwrap();
    let g = cli(d.path(), &["generate", "two-cliques", "--k", "2", "-o", "g.el", "--emit-certificate", "why.txt"]);
    assert_eq!(code(&g), 0);
    assert_eq!(code(&cli(d.path(), &["verify", "g.el", "why.txt"])), 0);
    let o = cli(d.path(), &["decompose", "--k", "2", "--input", "g.el", "--cert", "g.cert"]);
    assert_eq!(code(&o), 2);
    assert!(!d.path().join("g.cert").exists());

    let g = cli(d.path(), &["generate", "c4-extremal", "--m", "1", "-o", "h.el", "--emit-certificate", "h.txt"]);
    assert_eq!(code(&g), 0);
    assert_eq!(code(&cli(d.path(), &["verify", "h.el", "h.txt"])), 0);
}

#[test]
fn tampered_certificate_is_rejected() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "g.el", K24);
    assert_eq!(code(&cli(d.path(), &["decompose", "--k", "2", "--input", "g.el", "--cert", "g.cert"])), 0);
    let text = std::fs::read_to_string(d.path().join("g.cert")).unwrap();
    // well-formed, but the first cycle now appears twice
    let mut lines: Vec<&str> = text.lines().collect();
    let n = lines.len();
    lines[n - 1] = lines[1];
    write(d.path(), "bad.cert", &(lines.join("\n") + "\n"));
    let v = cli(d.path(), &["verify", "g.el", "bad.cert"]);
    assert_eq!(code(&v), 1);
    assert!(stdout(&v).starts_with("rejected"));
}

#[test]
fn malformed_input_and_bad_usage() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "bad.el", "3 2\n0 1\n");
    let o = cli(d.path(), &["decompose", "--k", "2", "--input", "bad.el", "--cert", "x"]);
    assert_eq!(code(&o), 65);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(code(&cli(d.path(), &["decompose", "--k", "2", "--input", "missing.el", "--cert", "x"])), 65);
    assert_eq!(code(&cli(d.path(), &["decompose", "--input", "bad.el"])), 64);
    assert_eq!(code(&cli(d.path(), &["frobnicate"])), 64);
    write(d.path(), "g.el", K24);
    assert_eq!(code(&cli(d.path(), &["decompose", "--k", "1", "--input", "g.el", "--cert", "x"])), 64);
    assert_eq!(code(&cli(d.path(), &["--help"])), 0);
}

#[test]
fn config_comes_from_flag_or_environment() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "g.el", K24);
    write(d.path(), "cfg.toml", "nu = 0.125\n");
    let args = ["decompose", "--k", "2", "--input", "g.el", "--cert", "g.cert"];

    let plain: serde_json::Value = serde_json::from_str(&stdout(&cli(d.path(), &args))).unwrap();
    assert_eq!(plain["config"]["nu"], 0.05);

    let o = Command::new(env!("CARGO_BIN_EXE_cycledecomp"))
        .args(args)
        .current_dir(d.path())
        .env("CYCLEDECOMP_CONFIG", d.path().join("cfg.toml"))
        .output()
        .unwrap();
    let from_env: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(from_env["config"]["nu"], 0.125);

    let mut with_flag = args.to_vec();
    with_flag.extend(["--config", "cfg.toml", "--seed", "9"]);
    let from_flag: serde_json::Value = serde_json::from_str(&stdout(&cli(d.path(), &with_flag))).unwrap();
    assert_eq!(from_flag["config"]["nu"], 0.125);
    assert_eq!(from_flag["seed"], 9);

    write(d.path(), "broken.toml", "nu = \"lots\"\n");
    let mut broken = args.to_vec();
    broken.extend(["--config", "broken.toml"]);
    assert_eq!(code(&cli(d.path(), &broken)), 65);
}

#[test]
fn timings_only_on_request() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "g.el", K24);
    let plain = stdout(&cli(d.path(), &["classify", "--input", "g.el"]));
    assert!(plain.lines().any(|l| l.starts_with("kind ")), "{plain}");
    assert!(!plain.contains("timing"));
    let timed = stdout(&cli(d.path(), &["classify", "--input", "g.el", "--timings"]));
    assert!(timed.contains("timing_ms"));
    let o = cli(d.path(), &["decompose", "--k", "2", "--input", "g.el", "--cert", "g.cert", "--timings"]);
    let record: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(record["timing_ms"].is_number());
}

#[test]
fn gadget_outputs_verify() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "h.el", K24);
    for k in ["2", "4"] {
        let dir = format!("t{k}");
        let o = cli(d.path(), &["gadget", "transformer", "--input", "h.el", "--k", k, "--out-dir", &dir]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        for side in ["with_cycle", "with_target"] {
            let (g, c) = (format!("{dir}/{side}.el"), format!("{dir}/{side}.cert"));
            assert_eq!(code(&cli(d.path(), &["verify", &g, &c])), 0, "k={k} {side}");
        }
    }
    assert_eq!(code(&cli(d.path(), &["gadget", "flower", "--i", "3", "--k", "3", "--out-dir", "f"])), 0);
    assert_eq!(code(&cli(d.path(), &["verify", "f/flower.el", "f/flower.cert"])), 0);

    assert_eq!(code(&cli(d.path(), &["gadget", "absorber", "--universe", "4", "--k", "2", "--out-dir", "a"])), 0);
    let mut checked = 0;
    for entry in std::fs::read_dir(d.path().join("a")).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        if let Some(stem) = name.strip_suffix(".cert") {
            let g = format!("a/{stem}.el");
            let c = format!("a/{name}");
            assert_eq!(code(&cli(d.path(), &["verify", &g, &c])), 0, "{name}");
            checked += 1;
        }
    }
    assert_eq!(checked, 8);
}

#[test]
fn bench_writes_a_stable_csv() {
    let d = tempfile::tempdir().unwrap();
    let args = ["bench", "--k", "2", "--n", "10..12", "--n-step", "2", "--delta", "0.7..0.7", "--repeats", "2", "-o", "b.csv"];
    assert_eq!(code(&cli(d.path(), &args)), 0);
    let text = std::fs::read_to_string(d.path().join("b.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# cycledecomp-bench schema 1"));
    assert!(lines.next().unwrap().starts_with("n,delta,k,repeat,"));
    assert_eq!(lines.count(), 4);
    assert!(!text.contains("millis"));
}
