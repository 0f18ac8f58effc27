use std::path::PathBuf;
use std::process::{Command, Output};

use lmo_splice::rational::parse_q;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lmo-splice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(tag: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("records-{tag}.txt"));
    std::fs::write(
        &path,
        "# test records\n\
         name: unknot\n\
         \n\
         name: zero\n\
         lambda_w: 0\n\
         lambda2: 0\n\
         a2: 0\n\
         \n\
         name: trefoil\n\
         a2: 1\n\
         a4: 0\n\
         v: -1/4\n\
         \n\
         name: framed\n\
         a2: 1\n\
         framing: 2/3\n",
    )
    .unwrap();
    path
}

fn machine(o: &Output) -> Vec<(String, String)> {
    let out = stdout(o);
    let (_, block) = out.split_once("--\n").expect("machine block");
    block
        .lines()
        .map(|l| {
            let (k, v) = l.split_once('=').unwrap();
            (k.to_string(), v.to_string())
        })
        .collect()
}

#[test]
fn dedekind_examples() {
    let o = bin(&["dedekind", "1", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "S(1/3) = 2/3\n");
    assert_eq!(stdout(&bin(&["dedekind", "7", "1"])), "S(7/1) = 0\n");
    assert_eq!(stdout(&bin(&["dedekind", "-1", "3"])), "S(-1/3) = -2/3\n");
    assert_eq!(bin(&["dedekind", "2", "4"]).status.code(), Some(2));
}

#[test]
fn decompose_and_chain() {
    let o = bin(&["--machine", "decompose", "2", "1", "1", "1"]);
    assert!(o.status.success());
    assert_eq!(machine(&o), vec![("generators".into(), "2,1,0,0,0".into())]);
    assert_eq!(bin(&["decompose", "2", "1", "1", "2"]).status.code(), Some(2));

    let o = bin(&["--machine", "chain", "0", "1", "-1", "0", "--framing1", "1/2", "--framing2", "-3"]);
    assert!(o.status.success());
    let m = machine(&o);
    assert!(m.contains(&("lambda".into(), "-5".into())));
    assert!(m.contains(&("kappa".into(), "5/2".into())));
}

#[test]
fn tridiagonal_commands() {
    let o = bin(&["--machine", "signature", "1", "-1/2", "0"]);
    assert!(o.status.success());
    assert_eq!(machine(&o), vec![("signature".into(), "1".into())]);

    let o = bin(&["--machine", "corners", "2", "1"]);
    assert!(o.status.success());
    assert_eq!(
        machine(&o),
        vec![
            ("first".into(), "1".into()),
            ("off".into(), "-1".into()),
            ("last".into(), "2".into())
        ]
    );
    assert_eq!(bin(&["corners", "0"]).status.code(), Some(2));

    let o = bin(&["kirby-melvin", "-2", "1", "3"]);
    assert!(o.status.success());
}

#[test]
fn splice_examples() {
    let file = records("splice");
    let f = file.to_str().unwrap();

    let o = bin(&["--machine", "splice", "--file", f, "--knot1", "zero", "--knot2", "zero", "0", "1", "-1", "0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = machine(&o);
    assert!(m.contains(&("lambda_w".into(), "0".into())));
    assert!(m.contains(&("lambda2".into(), "0".into())));

    let o = bin(&["--machine", "splice", "--file", f, "--knot1", "unknot", "--knot2", "unknot", "1", "0", "3", "1"]);
    let m = machine(&o);
    assert!(m.contains(&("lambda_w".into(), "-1/18".into())));
    assert!(m.contains(&("chain".into(), "0,3,0".into())));

    let o = bin(&["splice", "--file", f, "--knot1", "unknot", "--knot2", "unknot", "1", "0", "0", "1"]);
    assert_eq!(o.status.code(), Some(3));

    let o = bin(&["splice", "--file", f, "--knot1", "nope", "--knot2", "unknot", "1", "0", "3", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn general_output_lists_coefficients() {
    let file = records("general");
    let f = file.to_str().unwrap();
    let o = bin(&[
        "--machine", "splice", "--file", f, "--knot1", "trefoil", "--knot2", "unknot", "2", "1", "1", "1",
        "--general",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = machine(&o);
    assert!(m.iter().any(|(k, v)| k == "coeff.1" && v == "1"));
    for (_, v) in &m {
        if v.contains(',') {
            continue;
        }
        parse_q(v).expect("machine values are exact rationals");
    }
}

#[test]
fn framed_records_go_through_the_general_formula() {
    let file = records("framed");
    let f = file.to_str().unwrap();
    let o = bin(&["--machine", "splice", "--file", f, "--knot1", "framed", "--knot2", "unknot", "1", "0", "3", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let m = machine(&o);
    assert!(m.contains(&("lambda".into(), "11".into())));
    assert!(m.contains(&("kappa".into(), "-2/3".into())));
}

#[test]
fn surgery_and_lens_agree() {
    let file = records("surgery");
    let f = file.to_str().unwrap();
    for (r, s) in [("5", "2"), ("7", "3"), ("4", "1"), ("-3", "2")] {
        let a = machine(&bin(&["--machine", "surgery", "--file", f, "--knot", "unknot", r, s]));
        let b = machine(&bin(&["--machine", "lens", r, s]));
        assert_eq!(a, b, "L({r}, {s})");
    }
    assert_eq!(bin(&["lens", "0", "1"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let a = bin(&["--machine", "verify", "kappa-threeway", "--seed", "42"]);
    let b = bin(&["--machine", "verify", "kappa-threeway", "--seed", "42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("PASS kappa-threeway"));
    assert_eq!(bin(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn record_format_errors() {
    use lmo_splice_cli::parse_records;
    assert!(parse_records("name: a\ncolor: red\n").is_err());
    assert!(parse_records("name: a\n\nname: a\n").is_err());
    assert!(parse_records("a2: 1\n").is_err());
    assert!(parse_records("name: a\na2: 1\na2: 2\n").is_err());
    assert!(parse_records("name: a\nframing: 2/4\n").is_err());
    let r = parse_records("name: a\nframing: -3\nlambda_w: 1/2\n").unwrap();
    assert_eq!(r["a"].framing.to_string(), "-3/1");
    assert_eq!(r["a"].ambient_lambda_w, parse_q("1/2").unwrap());
}
