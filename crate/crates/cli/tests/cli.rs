use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use lawson_cli::{run_with_env, Outcome, EXIT_BOUNDED, EXIT_INVALID, EXIT_KUNNETH, EXIT_OK};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../data");
    p.push(name);
    p.display().to_string()
}

fn go(args: &[&str]) -> Outcome {
    run_with_env(std::iter::once("lawson").chain(args.iter().copied()), None)
}

#[test]
fn atom_show_plane() {
    let out = go(&["atom", "show", "P2"]);
    assert_eq!(out.code, EXIT_OK);
    let ones = out
        .stdout
        .lines()
        .skip(2)
        .flat_map(|l| l.split_whitespace().skip(1))
        .filter(|c| *c == "1")
        .count();
    assert_eq!(ones, 6);
}

#[test]
fn hilb_csv_rows() {
    let out = go(&["hilb", "--surface", "P2", "--n", "2", "--format", "csv"]);
    assert_eq!(out.code, EXIT_OK);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("p,k,dim,bound"));
    let expect = [1u64, 0, 2, 0, 3, 0, 2, 0, 1];
    let mut rows = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let (p, k, d): (i64, usize, u64) = (
            f[0].parse().unwrap(),
            f[1].parse().unwrap(),
            f[2].parse().unwrap(),
        );
        assert!(2 * p <= k as i64);
        assert_eq!(d, expect[k]);
        assert_eq!(f[3], "");
        rows += 1;
    }
    assert_eq!(rows, 1 + 2 + 3 + 4 + 5);
}

#[test]
fn guard_exit_and_message() {
    let out = go(&["product", "--a", "C_g1", "--b", "C_g1"]);
    assert_eq!(out.code, EXIT_KUNNETH);
    assert!(
        out.stderr.contains("C_g1") && out.stderr.contains("cellular"),
        "{}",
        out.stderr
    );
    let ok = go(&["product", "--a", "C_g1", "--b", "P1", "--format", "csv"]);
    assert_eq!(ok.code, EXIT_OK);
    assert!(ok.stdout.contains("1,3,2,"));
    let swapped = go(&["product", "--a", "P1", "--b", "C_g1", "--format", "csv"]);
    assert_eq!(swapped.stdout, ok.stdout);
}

#[test]
fn bounded_entries_exit_4() {
    let f = data("surfaces.atom");
    let out = go(&["-f", &f, "motive", "h(C1xC1)"]);
    assert_eq!(out.code, EXIT_BOUNDED, "{}", out.stderr);
    let show = go(&["-f", &f, "atom", "show", "C1xC1", "--format", "csv"]);
    assert_eq!(show.code, EXIT_OK);
    assert!(show.stdout.contains("1,2,6,<="));
    let guarded = go(&["-f", &f, "hilb", "--surface", "C1xC1", "--n", "2"]);
    assert_eq!(guarded.code, EXIT_KUNNETH);
    let row = go(&[
        "-f",
        &f,
        "hilb",
        "--surface",
        "C1xC1",
        "--n",
        "2",
        "--mode",
        "p0",
        "--format",
        "csv",
    ]);
    assert_eq!(row.code, EXIT_OK, "{}", row.stderr);
    assert!(row.stdout.contains("0,2,13,"));
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        vec!["atom", "show", "Q7"],
        vec!["hilb", "--surface", "P3", "--n", "2"],
        vec!["blowup", "P2", "P1", "--codim", "2"],
        vec!["verify", "--suite", "bogus"],
        vec!["motive", "h(P2"],
        vec![
            "hilb",
            "--surface",
            "P2",
            "--n",
            "2",
            "--morphic",
            "--mode",
            "p0",
        ],
        vec!["-f", "/nonexistent/file.atom", "atom", "list"],
    ] {
        let out = go(&args);
        assert_eq!(out.code, EXIT_INVALID, "{args:?}: {}", out.stderr);
        assert!(
            out.stderr.starts_with("error") || out.stderr.contains("error"),
            "{args:?}"
        );
    }
}

#[test]
fn decomposition_verbs() {
    let bl = go(&["blowup", "P2", "pt", "--format", "csv"]);
    let cells = go(&["cellular", "0,1,1,2", "--format", "csv"]);
    let inline = go(&["atom", "show", "[0,1,1,2]", "--format", "csv"]);
    assert_eq!(bl.code, EXIT_OK);
    assert_eq!(bl.stdout, cells.stdout);
    assert_eq!(bl.stdout, inline.stdout);
    let pb = go(&["pbundle", "pt", "--n", "2", "--format", "csv"]);
    let p2 = go(&["atom", "show", "P2", "--format", "csv"]);
    assert_eq!(pb.stdout, p2.stdout);
    let bundle = go(&["cellular", "C_g1:0,C_g1:1", "--format", "csv"]);
    let pbc = go(&["pbundle", "C_g1", "--n", "1", "--format", "csv"]);
    assert_eq!(bundle.stdout, pbc.stdout);
}

#[test]
fn sym_and_quotient() {
    let sym = go(&["sym", "P1", "--n", "2", "--format", "csv"]);
    let p2 = go(&["atom", "show", "P2", "--format", "csv"]);
    assert_eq!(sym.stdout, p2.stdout);
    assert_eq!(go(&["sym", "C_g1", "--n", "2"]).code, EXIT_KUNNETH);
    let row = go(&["sym", "C_g1", "--n", "2", "--p0", "--format", "csv"]);
    assert_eq!(
        row.stdout,
        "p,k,dim,bound\n0,0,1,\n0,1,2,\n0,2,2,\n0,3,2,\n0,4,1,\n"
    );
    let q = go(&[
        "-f",
        &data("swap.action"),
        "quotient",
        "--action",
        "swap",
        "--format",
        "csv",
    ]);
    assert_eq!(q.code, EXIT_OK, "{}", q.stderr);
    assert_eq!(q.stdout, p2.stdout);
}

#[test]
fn motive_expressions() {
    let f = data("curve.proj");
    let plus = go(&["-f", &f, "motive", "proj(h(C_g1), p1)", "--format", "csv"]);
    assert_eq!(plus.stdout, "p,k,dim,bound\n0,1,2,\n");
    let whole = go(&[
        "-f",
        &f,
        "motive",
        "sum(proj(h(C_g1), p0), proj(h(C_g1), p1), proj(h(C_g1), p2))",
        "--format",
        "csv",
    ]);
    let direct = go(&["atom", "show", "C_g1", "--format", "csv"]);
    assert_eq!(whole.stdout, direct.stdout);
    let lef = go(&["motive", "twist(h(pt), -1)", "--morphic", "--format", "csv"]);
    assert!(lef.stdout.lines().any(|l| l == "1,2,1,"), "{}", lef.stdout);
    let half = go(&["-f", &f, "motive", "proj(h(C_g1), half)", "--format", "csv"]);
    assert_eq!(half.stdout, "p,k,dim,bound\n0,1,1,\n");
    assert_eq!(
        go(&["-f", &f, "motive", "proj(h(P1), p1)"]).code,
        EXIT_INVALID
    );
    assert_eq!(go(&["motive", "proj(h(C_g1), nope)"]).code, EXIT_INVALID);
}

#[test]
fn hilb_outputs() {
    let sym = go(&["hilb", "--surface", "P2", "--n", "3", "--mode", "symbolic"]);
    assert_eq!(sym.stdout.lines().count(), 3);
    let gf = go(&["gf", "--surface", "P2", "--max-n", "1"]);
    assert_eq!(
        gf.stdout,
        "1 + q + q*t^2 + q*s*t^2 + q*t^4 + q*s*t^4 + q*s^2*t^4\n"
    );
    let gf2 = go(&["hilb", "--surface", "P2", "--n", "1", "--format", "gf"]);
    assert_eq!(gf.stdout, gf2.stdout);
    let k = go(&["ksst", "--surface", "P2", "--n", "2", "--p", "0"]);
    assert_eq!(k.stdout, "ksst(P2, n=2, p=0) = 9\n");
    let lit = go(&[
        "ksst",
        "--surface",
        "P2",
        "--n",
        "2",
        "--p",
        "0",
        "--literal",
    ]);
    assert!(lit.stdout.starts_with("ksst(P2, n=2, p=0) = 6 (literal)"));
    let neg = go(&["ksst", "--surface", "P2", "--n", "2", "--p", "-2"]);
    assert_eq!(neg.code, EXIT_OK, "{}", neg.stderr);
}

#[test]
fn env_path_and_stdin() {
    let dir = data("");
    let out = run_with_env(
        ["lawson", "atom", "show", "Bl_pt_P2", "--format", "csv"],
        Some(&dir),
    );
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let cells = go(&["cellular", "0,1,1,2", "--format", "csv"]);
    assert_eq!(out.stdout, cells.stdout);

    let mut child = Command::new(env!("CARGO_BIN_EXE_lawson"))
        .args(["-f", "-", "atom", "show", "X", "--format", "csv"])
        .env_remove("LAWSON_ATOM_PATH")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"[atom]\nname = X\ndim = 1\ncells = 0 1\n")
        .unwrap();
    let res = child.wait_with_output().unwrap();
    assert!(res.status.success());
    assert_eq!(
        String::from_utf8(res.stdout).unwrap(),
        "p,k,dim,bound\n0,0,1,\n0,2,1,\n1,2,1,\n"
    );
}

#[test]
fn parse_errors_name_the_line() {
    let dir = std::env::temp_dir().join(format!("lawson-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.atom");
    std::fs::write(&f, "[atom]\nname = X\ndim = 1\ntable = 2 2 1\n").unwrap();
    let out = go(&["-f", f.to_str().unwrap(), "atom", "list"]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(
        out.stderr.contains("bad.atom:4:") && out.stderr.contains("k < 2p"),
        "{}",
        out.stderr
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_report_formats() {
    let text = go(&["verify", "--suite", "ksst"]);
    assert_eq!(text.code, EXIT_OK);
    assert!(text.stdout.ends_with("6/6 passed\n"), "{}", text.stdout);
    let csv = go(&["verify", "--suite", "ksst", "--format", "csv"]);
    assert!(csv
        .stdout
        .starts_with("suite,oracle,instance,expected,engine,passed\n"));
    assert_eq!(csv.stdout.lines().count(), 7);
}
