use std::process::Command as Proc;

use ghz_cli::{builtin_examples, execute, parse_scenario, serialize_scenario, Args, CliError, Command};
use proptest::prelude::*;

fn ghz(args: &[&str]) -> (i32, String, String) {
    let out = Proc::new(env!("CARGO_BIN_EXE_ghz")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into(), String::from_utf8_lossy(&out.stderr).into())
}

fn args(command: Command, example: &str) -> Args {
    Args {
        command,
        name: None,
        scenario: None,
        example: Some(example.into()),
        m: None,
        order: None,
        coeff: None,
        json: false,
        trust_irreducible: false,
        field: None,
        run: None,
    }
}

#[test]
fn builtins_parse_and_round_trip() {
    let all = builtin_examples();
    assert_eq!(all.len(), 4);
    for (name, s) in all {
        let text = serialize_scenario(&s);
        assert_eq!(parse_scenario(&text).unwrap(), s, "{name}");
    }
}

#[test]
fn builtin_shapes() {
    let all = builtin_examples();
    let w25 = &all.iter().find(|b| b.0 == "w25-imperfect").unwrap().1;
    assert_eq!(w25.divisor.support().len(), 2);
    assert!(w25.divisor.tail().is_zero());
    assert_eq!(w25.family.as_ref().unwrap().s, vec![2]);
    let c2 = &all.iter().find(|b| b.0 == "char2-ramified").unwrap().1;
    assert_eq!(c2.divisor.rank(), 2);
    assert_eq!(c2.divisor.tail().rays().len(), 2);
}

#[test]
fn malformed_input() {
    let good = ghz_cli::BUILTINS[0].1;
    let bad = good.replacen("\"1/5\"", "\"1/0\"", 1);
    match parse_scenario(&bad) {
        Err(CliError::Semantic(m)) => assert!(m.contains("support[0].vertices[0][0]") && m.contains("zero denominator"), "{m}"),
        other => panic!("{other:?}"),
    }
    match parse_scenario("{\n  \"field\": { \"kind\": \"Q\" },\n  \"rank\": oops\n}") {
        Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
    let unknown = good.replacen("\"rank\"", "\"rnak\"", 1);
    assert!(matches!(parse_scenario(&unknown), Err(CliError::Parse { .. })));
    let no_coloring = r#"{"field":{"kind":"Q"},"rank":1,"family":{"e":[1],"s":[1],"lambda":["1"]}}"#;
    assert!(matches!(parse_scenario(no_coloring), Err(CliError::Semantic(m)) if m.starts_with("family")));
}

#[test]
fn golden_reports() {
    let r = execute(&args(Command::Coherent, "w25-imperfect")).unwrap();
    assert_eq!((r.exit_code, r.verdict.as_str()), (0, "coherent"));
    assert!(!r.trust.is_empty());

    let r = execute(&args(Command::Coherent, "w25-rational")).unwrap();
    assert_eq!((r.exit_code, r.verdict.as_str()), (1, "not coherent"));
    assert!(r.witnesses.iter().any(|w| w.starts_with("(v) fails at t + 1, vertex 1/5: 4/5 < 1")), "{:?}", r.witnesses);

    let mut a = args(Command::Eval, "w25-imperfect");
    a.m = Some("-5".into());
    assert_eq!(execute(&a).unwrap().verdict, "-[t] - [t^2 + l]");

    let mut a = args(Command::Apply, "w25-imperfect");
    a.m = Some("-5".into());
    a.coeff = Some("t*(t^2 + l)".into());
    a.order = Some(8);
    let r = execute(&a).unwrap();
    assert!(r.details.iter().any(|d| d.starts_with("d^(8)") && d.ends_with("= (t)*chi^3")), "{:?}", r.details);
}

#[test]
fn example_runs() {
    let mut a = args(Command::Example, "w25-imperfect");
    a.example = None;
    a.name = Some("w25-imperfect".into());
    let r = execute(&a).unwrap();
    assert_eq!((r.command.as_str(), r.verdict.as_str(), r.exit_code), ("verify", "pass", 0));

    a.name = Some("char2-ramified".into());
    a.field = Some("Q".into());
    a.run = Some(Command::Coherent);
    let r = execute(&a).unwrap();
    assert_eq!(r.exit_code, 1);
    assert!(r.witnesses[0].starts_with("(v) fails"));

    a.run = Some(Command::Verify);
    let r = execute(&a).unwrap();
    assert!(r.witnesses.iter().any(|w| w.contains("d^(1)((1)*chi^(0,1))") && w.contains("outside A")), "{:?}", r.witnesses);

    a.name = Some("toric-demo".into());
    a.field = None;
    a.run = None;
    let r = execute(&a).unwrap();
    assert_eq!((r.verdict.as_str(), r.exit_code), ("pass", 0));
}

#[test]
fn json_and_text_agree() {
    for (cmd, ex) in [(Command::Coherent, "w25-rational"), (Command::Verify, "char2-ramified"), (Command::Roots, "toric-demo")] {
        let r = execute(&args(cmd, ex)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let text = r.to_text();
        assert!(text.contains(&format!("verdict: {}", v["verdict"].as_str().unwrap())));
        for w in v["witnesses"].as_array().unwrap() {
            assert!(text.contains(&format!("witness: {}", w.as_str().unwrap())));
        }
    }
}

#[test]
fn exit_codes() {
    let (code, out, _) = ghz(&["example", "w25-imperfect"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("verdict: pass"));
    let (code, out, _) = ghz(&["coherent", "--example", "w25-rational", "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "not coherent");
    assert_eq!(ghz(&["example", "char2-ramified", "--field", "Q", "--run", "coherent"]).0, 1);
    assert_eq!(ghz(&["example", "toric-demo"]).0, 0);
    assert_eq!(ghz(&["frobnicate"]).0, 2);
    assert_eq!(ghz(&["coherent"]).0, 2);
    assert_eq!(ghz(&["example", "nope"]).0, 2);
    assert_eq!(ghz(&["eval", "--example", "w25-imperfect"]).0, 2);

    let dir = std::env::temp_dir().join(format!("ghz-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, ghz_cli::BUILTINS[0].1.replacen("\"1/5\"", "\"1/0\"", 1)).unwrap();
    let (code, _, err) = ghz(&["validate", "--scenario", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("zero denominator"));
    let path = dir.join("good.json");
    std::fs::write(&path, ghz_cli::BUILTINS[2].1).unwrap();
    assert_eq!(ghz(&["validate", "--scenario", path.to_str().unwrap()]).0, 0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn builtin_suite_exit_contract() {
    for (name, _, cmd) in ghz_cli::BUILTINS {
        let mut a = args(Command::Example, name);
        a.example = None;
        a.name = Some((*name).into());
        let r = execute(&a).unwrap();
        assert_eq!(r.command, cmd.name());
        let want = if *name == "w25-rational" { 1 } else { 0 };
        assert_eq!(r.exit_code, want, "{name}: {}", r.to_text());
    }
}

fn rational() -> impl Strategy<Value = String> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| format!("{n}/{d}"))
}

prop_compose! {
    fn scenario_text()(
        field in prop::sample::select(vec![r#"{"kind":"Q"}"#, r#"{"kind":"Fp","p":3}"#, r#"{"kind":"Fp(l)","p":2}"#]),
        rank in 1usize..=2,
        curve in prop::sample::select(vec!["A1", "P1"]),
        pts in prop::sample::subsequence(vec!["t", "t - 1"], 0..=2),
        coords in prop::collection::vec(rational(), 8),
    ) -> String {
        let tail = if rank == 1 { "[[1]]" } else { "[[1,0],[1,3]]" };
        let support: Vec<String> = pts.iter().enumerate().map(|(i, y)| {
            let v1: Vec<String> = (0..rank).map(|j| format!("\"{}\"", coords[4 * i + j])).collect();
            let v2: Vec<String> = (0..rank).map(|j| format!("\"{}\"", coords[4 * i + 2 + j])).collect();
            format!(r#"{{"point":"{y}","vertices":[[{}],[{}]]}}"#, v1.join(","), v2.join(","))
        }).collect();
        format!(
            r#"{{"field":{field},"rank":{rank},"tail_rays":{tail},"curve":"{curve}","support":[{}],"bounds":{{"weight_box":3}}}}"#,
            support.join(",")
        )
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn serialize_parse_round_trip(text in scenario_text()) {
        let s = parse_scenario(&text).unwrap();
        let again = parse_scenario(&serialize_scenario(&s)).unwrap();
        prop_assert_eq!(again, s);
    }
}
