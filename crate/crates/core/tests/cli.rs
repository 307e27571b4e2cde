use std::process::Command;

fn igc(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_igc")).args(args).output().unwrap();
    (
        String::from_utf8_lossy(&out.stdout).trim_end().to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
        out.status.code().unwrap(),
    )
}

#[test]
fn exit_codes() {
    assert_eq!(igc(&["--dim", "2", "eval", "d0"]).2, 0);
    assert_eq!(igc(&["--dim", "2", "eval", "d0 +"]).2, 1);
    assert_eq!(igc(&["--dim", "2", "eval", "d7"]).2, 1);
    assert_eq!(igc(&["--dim", "2", "frobnicate"]).2, 1);
    assert_eq!(igc(&["eval", "d0"]).2, 1);
    let (_, err, code) = igc(&["--dim", "2", "reduce", "compose(d0, x0*d1)"]);
    assert_eq!(code, 2);
    assert!(err.contains("NotClosed"), "{err}");
}

#[test]
fn json_output() {
    let (out, _, _) = igc(&["--dim", "2", "--format", "json", "reduce", "cup(d0, d1)"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["grades"]["2"][0]["factors"], serde_json::json!(["d0", "d1"]));
    let (out, _, _) = igc(&["--dim", "2", "--format", "json", "cup", "d0", "x0*d1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["arity"], 2);
}

#[test]
fn whole_command_in_one_argument() {
    assert_eq!(igc(&["--dim", "2", "bracket lie d0 x0*d1"]).0, "d1");
}

#[test]
fn relative_chart() {
    let (out, _, code) = igc(&["--dim", "2", "--vertical", "1", "bracket", "lie", "d0", "d1"]);
    assert_eq!(code, 2, "{out}");
    assert_eq!(
        igc(&["--dim", "2", "--vertical", "1", "bracket", "free", "x0*d1", "d0"]).0,
        "-d1"
    );
}

#[test]
fn scripts() {
    let path = std::env::temp_dir().join(format!("igc-script-{}.txt", std::process::id()));
    std::fs::write(
        &path,
        "# bindings persist\nlet a = x0*d1\nbracket free d0 a\nreduce cup(d0, a)\neval b\n",
    )
    .unwrap();
    let (out, err, code) = igc(&["--dim", "2", "--script", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(out, "a = x0*d1\nx0*F[d0,d1] + d1\nx0*d0 ^ d1");
    assert_eq!(code, 1);
    assert!(err.contains("unknown identifier `b`"), "{err}");
}
