use std::process::Command;

fn qcalc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qcalc"))
        .args(args)
        .output()
        .expect("qcalc binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn math_errors_exit_two_with_bare_name() {
    let cases: [(&[&str], &str); 4] = [
        (&["defint", "--calculus", "q", "--q", "0.5", "--from", "1", "--to", "3", "--expr", "1/x"], "NotCommensurate\n"),
        (&["defint", "--calculus", "h", "--h", "0.25", "--from", "0", "--to", "0.1", "--expr", "x"], "NotCommensurate\n"),
        (&["jackson", "--q", "0.5", "--expr", "1/x", "--at", "1"], "Divergent\n"),
        (&["antideriv", "--calculus", "q", "--q", "2", "--s", "1", "--expr", "x", "--at", "-3"], "DomainError\n"),
    ];
    for (args, name) in cases {
        assert_eq!(qcalc(args), (2, String::new(), name.to_string()), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_one_and_name_the_problem() {
    let (code, out, err) = qcalc(&["deriv", "--calculus", "h", "--h", "0.25", "--expr", "2x", "--at", "1"]);
    assert_eq!((code, out.as_str()), (1, ""));
    assert!(err.contains("byte 1"), "{err}");
    let (code, _, err) = qcalc(&["deriv", "--calculus", "h", "--h", "0.25", "--expr", "x", "--at", "1", "--bogus", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("--bogus"), "{err}");
    let (code, _, err) = qcalc(&["deriv", "--calculus", "h", "--expr", "x", "--at", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("--h"), "{err}");
    let (code, _, _) = qcalc(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn csv_tables_are_byte_stable() {
    let args = ["antideriv", "--calculus", "h", "--h", "0.5", "--s", "0", "--expr", "sin(x)", "--table", "-2:2:0.25"];
    let first = qcalc(&args);
    assert_eq!(first.0, 0);
    assert!(first.1.starts_with("x,value\n-2,"));
    assert_eq!(first.1.lines().count(), 18);
    assert!(!first.1.contains('\r'));
    for _ in 0..3 {
        assert_eq!(qcalc(&args), first);
    }
}

#[test]
fn negative_parameters_are_accepted() {
    let (code, out, err) = qcalc(&["deriv", "--calculus", "h", "--h", "-0.5", "--expr", "-x^2", "--at", "-1"]);
    assert_eq!(code, 0, "{err}");
    // ((-1 - 0.5)^2 - 1) / -0.5 negated: D_h(-x^2)(-1) = 2.5
    assert_eq!(out, "2.5\n");
}

#[test]
fn check_command_passes_on_reference_configs() {
    for args in [
        &["check", "--calculus", "h", "--h", "0.25", "--s", "0"][..],
        &["check", "--calculus", "h", "--h", "-0.3", "--s", "1.7"][..],
        &["check", "--calculus", "q", "--q", "2", "--s", "3"][..],
    ] {
        let (code, out, _) = qcalc(args);
        assert_eq!(code, 0, "{out}");
        assert!(out.lines().count() > 10);
    }
}
