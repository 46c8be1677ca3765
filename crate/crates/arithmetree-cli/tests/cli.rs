//! End-to-end tests of the dispatcher: golden output, exit codes, JSON
//! mirrors and round trips.

use arithmetree::name::Name;
use arithmetree::ncp::NCPartition;
use arithmetree::Grove;
use arithmetree_cli::run;

fn exec(args: &[&str]) -> (u8, String, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&args, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn expect_ok(args: &[&str]) -> String {
    let (code, out, err) = exec(args);
    assert_eq!(code, 0, "args {args:?} failed: {err}");
    out
}

#[test]
fn golden_lines() {
    assert_eq!(expect_ok(&["sum", "(1)", "(1)"]), "(1,1)+(1,2)\n");
    assert_eq!(
        expect_ok(&["tree", "(1,2,1,2)"]),
        "(1,2,2,1)\n[[0,[[0,0],0]],0]\n"
    );
    assert_eq!(expect_ok(&["prod", "(1,2)", "(1,1)"]), "(1,1,3,3)\n");
    assert_eq!(expect_ok(&["prod", "(1,1)+(1,2)", "(1)"]), "(1,1)+(1,2)\n");
    assert_eq!(expect_ok(&["exp", "(1,2,2,1)"]), "((x1((x2x3)x4))x5)\n");
    assert_eq!(expect_ok(&["dagger", "(1,1)"]), "(1,2)\n");
    assert_eq!(expect_ok(&["leq", "(1,1)", "(1,2)"]), "true\n");
    assert_eq!(expect_ok(&["mobius", "(1,1,3)"]), "-1\n");
    assert_eq!(expect_ok(&["mobius", "(1,1,1)", "(1,1,3)"]), "-1\n");
    assert_eq!(
        expect_ok(&["interval", "(1,1,1)", "(1,1,3)"]),
        "(1,1,1)+(1,1,3)\n"
    );
    assert_eq!(expect_ok(&["over", "(1,2)", "(1,1)"]), "(1,2,1,1)\n");
    assert_eq!(expect_ok(&["under", "(1,2)", "(1,1)"]), "(1,2,3,3)\n");
    assert_eq!(expect_ok(&["lmul", "(1,1)", "(1,2)"]), "(1,2,1,4)\n");
    assert_eq!(expect_ok(&["omega", "(1,2,1)"]), "((1)≺(1))≻(1)\n");
    assert_eq!(expect_ok(&["prime", "(1,1,3,3)"]), "false\n");
    assert_eq!(expect_ok(&["to-ncp", "(1,1,3)"]), "{1,3}{2}\n");
    assert_eq!(expect_ok(&["name", "[[0,0],0]"]), "(1,1)\n");
    assert_eq!(
        expect_ok(&["cycles", "{1,9}{2,6,7}{3,4}{5}{8}{10}"]),
        "(1,9)(2,6,7)(3,4)(5)(8)(10)\n"
    );
    assert_eq!(
        expect_ok(&["decompose", "(1,1)+(1,2)"]),
        "sum: (1) (1)\nrest: 0\n"
    );
    assert_eq!(expect_ok(&["solve", "(1)", "(1,1)+(1,2)"]), "(1)\n");
    assert_eq!(expect_ok(&["left", "(1,1)", "(1,1)"]), "(1,1,3,3)\n");
    assert_eq!(expect_ok(&["right", "0", "(1,1)"]), "0\n");
}

#[test]
fn exit_codes() {
    // Domain errors exit 1.
    let (code, _, err) = exec(&["tree", "--strict", "(1,2,1,2)"]);
    assert_eq!(code, 1, "{err}");
    let (code, _, _) = exec(&["leq", "(1)", "(1,1)"]);
    assert_eq!(code, 1);
    let (code, _, err) = exec(&["solve", "(1)", "(1,1)"]);
    assert_eq!(code, 1);
    assert!(err.contains("no solution"));
    let (code, _, _) = exec(&["mobius", "(1,2,1)", "(1,1,3)"]);
    assert_eq!(code, 1);
    // Malformed input exits 2.
    let (code, _, _) = exec(&["tree", "(1,3,1)"]);
    assert_eq!(code, 2);
    let (code, _, _) = exec(&["leq", "(1,1,2)", "(1,1,1)"]);
    assert_eq!(code, 2);
    let (code, _, _) = exec(&["sum", "(1)+(1,1)", "(1)"]);
    assert_eq!(code, 2);
    let (code, _, _) = exec(&["from-ncp", "{1,3}{2,4}"]);
    assert_eq!(code, 2);
    let (code, _, _) = exec(&["nonsense"]);
    assert_eq!(code, 2);
    let (code, _, _) = exec(&["sum", "(1)"]);
    assert_eq!(code, 2);
    let (code, _, _) = exec(&["sum", "--wat", "(1)", "(1)"]);
    assert_eq!(code, 2);
    let (code, _, _) = exec(&[]);
    assert_eq!(code, 2);
}

#[test]
fn json_mirrors() {
    assert_eq!(
        expect_ok(&["--json", "sum", "(1)", "(1)"]),
        "[[1,1],[1,2]]\n"
    );
    assert_eq!(expect_ok(&["--json", "dagger", "(1,1)"]), "[1,2]\n");
    assert_eq!(
        expect_ok(&["--json", "tree", "(1,2,1,2)"]),
        "{\"name\":[1,2,2,1],\"tree\":[[0,[[0,0],0]],0]}\n"
    );
    assert_eq!(expect_ok(&["--json", "to-ncp", "(1,1,3)"]), "[[1,3],[2]]\n");
    assert_eq!(
        expect_ok(&["--json", "decompose", "(1,1)+(1,2)"]),
        "{\"rest\":[],\"sums\":[[[1],[1]]]}\n"
    );
    // Every JSON output parses as JSON.
    for args in [
        vec!["--json", "interval", "(1,1)", "(1,2)"],
        vec!["--json", "omega", "(1,2,1)"],
        vec!["--json", "from-ncp", "{1,2}"],
    ] {
        let out = expect_ok(&args);
        serde_json::from_str::<serde_json::Value>(out.trim()).expect("valid JSON");
    }
}

#[test]
fn printed_values_reparse() {
    let name_out = expect_ok(&["dagger", "(1,2,2,1)"]);
    let back: Name = name_out.trim().parse().unwrap();
    assert_eq!(
        expect_ok(&["dagger", &back.to_string()]).trim(),
        "(1,2,2,1)"
    );

    let grove_out = expect_ok(&["sum", "(1,1)", "(1)"]);
    let grove: Grove = grove_out.trim().parse().unwrap();
    assert_eq!(grove.to_string(), grove_out.trim());

    let partition_out = expect_ok(&["to-ncp", "(1,2,2,1)"]);
    let partition: NCPartition = partition_out.trim().parse().unwrap();
    assert_eq!(partition.to_string(), partition_out.trim());

    let tree_lines = expect_ok(&["tree", "(1,2,2,1)"]);
    let json_line = tree_lines.lines().nth(1).unwrap();
    assert_eq!(expect_ok(&["name", json_line]).trim(), "(1,2,2,1)");
}

#[test]
fn moment_cumulant_files() {
    let dir = std::env::temp_dir();
    let moments_path = dir.join("arithmetree-cli-test.moments");
    std::fs::write(&moments_path, "ss 1\nssss 2\n").unwrap();
    let out = expect_ok(&[
        "cumulants",
        "--moments",
        moments_path.to_str().unwrap(),
        "--n",
        "4",
    ]);
    assert_eq!(out, "s 0\nss 1\nsss 0\nssss 0\n");

    let kappa_path = dir.join("arithmetree-cli-test.cumulants");
    std::fs::write(&kappa_path, "ss 1\n").unwrap();
    let out = expect_ok(&[
        "moments",
        "--cumulants",
        kappa_path.to_str().unwrap(),
        "--n",
        "6",
    ]);
    assert_eq!(out, "s 0\nss 1\nsss 0\nssss 2\nsssss 0\nssssss 5\n");

    let (code, _, _) = exec(&["cumulants", "--moments", "/no/such/file", "--n", "3"]);
    assert_eq!(code, 2);
    let (code, _, _) = exec(&[
        "cumulants",
        "--moments",
        moments_path.to_str().unwrap(),
        "--n",
        "9",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = exec(&["cumulants", "--n", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn free_check_reports() {
    let dir = std::env::temp_dir();
    let spec_path = dir.join("arithmetree-cli-test.free");
    std::fs::write(
        &spec_path,
        "gen s 1\ngen t 2\nmoment ss 1\nmoment ssss 2\nmoment tt 1\nmoment tttt 2\n",
    )
    .unwrap();
    let out = expect_ok(&[
        "free-check",
        "--spec",
        spec_path.to_str().unwrap(),
        "--n",
        "4",
    ]);
    assert!(out.contains("free: true"), "{out}");
    let json_out = expect_ok(&[
        "--json",
        "free-check",
        "--spec",
        spec_path.to_str().unwrap(),
        "--n",
        "4",
    ]);
    let value: serde_json::Value = serde_json::from_str(json_out.trim()).unwrap();
    assert_eq!(value["free"], serde_json::Value::Bool(true));
    let (code, _, _) = exec(&[
        "free-check",
        "--spec",
        spec_path.to_str().unwrap(),
        "--n",
        "8",
    ]);
    assert_eq!(code, 1, "desk budget exceeded is a domain error");
}

#[test]
fn selftest_passes() {
    let (code, out, _) = exec(&["selftest", "--degree", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("8/8 suites passed"), "{out}");
    let (code, _, _) = exec(&["selftest", "--degree", "9"]);
    assert_eq!(code, 2);
}

#[test]
fn help_is_available() {
    for invocation in [vec!["help"], vec!["--help"], vec!["-h"]] {
        let (code, out, _) = exec(&invocation);
        assert_eq!(code, 0, "{invocation:?}");
        assert!(out.contains("usage: arithmetree"));
    }
}
