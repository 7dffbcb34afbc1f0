use std::process::Command;

fn skyrelay(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_skyrelay")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn full_pipeline_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = |name: &str| dir.path().join(name).display().to_string();

    assert_eq!(skyrelay(&["gen-scenario", "--scale", "1", "--seed", "3", "--out", &d("s.json")]).0, 0);
    let (code, _) = skyrelay(&[
        "run", "--scenario", &d("s.json"), "--algo", "nsga3fdu", "--trials", "2", "--iters", "10", "--out", &d("run"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(skyrelay(&["stats", "--in", &d("run"), "--out", &d("again.csv")]).0, 0);
    assert_eq!(
        std::fs::read_to_string(d("again.csv")).unwrap(),
        std::fs::read_to_string(dir.path().join("run/stats.csv")).unwrap()
    );
    let (code, text) = skyrelay(&["pick", "--in", &d("run"), "--strategy", "minuav", "--trial", "1"]);
    assert_eq!(code, 0);
    assert!(text.contains("n_uavs"), "{text}");
    let (code, text) = skyrelay(&["eff", "--in", &d("run"), "--scenario", &d("s.json")]);
    assert_eq!(code, 0, "{text}");
    assert!(dir.path().join("run/eff.csv").exists());

    assert_eq!(skyrelay(&["run", "--algo", "nope", "--scenario", "x", "--out", "y"]).0, 2);
    assert_eq!(skyrelay(&["pick", "--in", &d("run"), "--strategy", "minuav", "--trial", "9"]).0, 2);
    std::fs::write(d("bad.json"), "{not json").unwrap();
    assert_eq!(skyrelay(&["run", "--scenario", &d("bad.json"), "--algo", "ud", "--out", &d("o")]).0, 2);
    assert_eq!(skyrelay(&["run", "--scenario", &d("missing.json"), "--algo", "ud", "--out", &d("o")]).0, 3);
}
