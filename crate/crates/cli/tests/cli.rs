use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn treal(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treal"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("treal runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn codec_pair_on_half_and_quarter() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    json(&treal(
        p,
        &["real", "encode", "--value", "1/2", "--dreal-out", "x.dreal"],
    ));
    json(&treal(
        p,
        &["real", "encode", "--value", "0.25", "--dreal-out", "y.dreal"],
    ));
    let v = json(&treal(p, &["codec", "pair", "--x", "x.dreal", "--y", "y.dreal"]));
    assert_eq!(v["results"]["z"], "-1/2");
    assert_eq!(v["results"]["w_positional"], "5020005/10000000");
    assert_eq!(v["results"]["w"], "1004001/2000000");
    assert!(v["checks"].as_object().unwrap().values().all(|c| c == "pass"));
    assert_eq!(v["params"]["x"], "x.dreal");
}

#[test]
fn sumrep_and_join_and_unspread() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    write(p, "x.dreal", "DREAL 1 base=10 sign=+ int=0 len=3\n1 2 3\n");
    write(p, "y.dreal", "DREAL 1 base=10 sign=+ int=0 len=5\n9 8 7 6 5\n");
    let v = json(&treal(p, &["codec", "sumrep", "--x", "x.dreal", "--y", "y.dreal"]));
    assert_eq!(v["tables"]["terms"].as_array().unwrap().len(), 8);
    assert_eq!(v["results"]["y"], "19753/20000");
    assert_eq!(v["checks"]["terms_sum_to_y"], "pass");

    json(&treal(
        p,
        &[
            "codec",
            "join",
            "--x",
            "x.dreal",
            "--y",
            "y.dreal",
            "--dreal-out",
            "w.dreal",
        ],
    ));
    let back = json(&treal(
        p,
        &["codec", "unspread", "--dreal", "w.dreal", "--offset", "3", "--len", "5"],
    ));
    assert_eq!(back["results"]["digits"], "98765");
    let back = json(&treal(
        p,
        &["codec", "unspread", "--dreal", "w.dreal", "--offset", "1", "--len", "3"],
    ));
    assert_eq!(back["results"]["digits"], "123");
}

#[test]
fn selftest_is_deterministic_per_seed() {
    let dir = TempDir::new().unwrap();
    let run = |seed: &str| {
        treal(
            dir.path(),
            &["--seed", seed, "--report", "csv", "codec", "selftest", "--cases", "40"],
        )
    };
    let (a, b, c) = (run("7"), run("7"), run("8"));
    assert!(a.status.success() && c.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("param,seed,7\n"));
    assert!(text.contains("row,checks,terms_sum_to_y,40,0\n"));
}

#[test]
fn bitswap_commands() {
    let dir = TempDir::new().unwrap();
    let v = json(&treal(dir.path(), &["bitswap", "map", "--bits", "01101100"]));
    assert_eq!(v["results"]["image"], "10011100");
    let v = json(&treal(dir.path(), &["bitswap", "analyze", "--depth", "4"]));
    assert_eq!(v["checks"]["involution"], "pass");
    assert_eq!(v["params"]["depth"], "4");
    let sizes: Vec<&str> = v["tables"]["cover_sizes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["minimum"].as_str().unwrap())
        .collect();
    assert_eq!(sizes, ["2", "3"]);
    let odd = treal(dir.path(), &["bitswap", "analyze", "--depth", "5"]);
    assert_eq!(odd.status.code(), Some(1));
}

#[test]
fn analyze_report_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let args = ["--report", "csv", "bitswap", "analyze", "--depth", "6"];
    let a = treal(dir.path(), &args);
    assert!(a.status.success());
    assert_eq!(a.stdout, treal(dir.path(), &args).stdout);
}

#[test]
fn cover_emits_json_lines() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    write(p, "pts.csv", "x,y\n0,0\n1,2\n2,1\n3,3\n");
    let out = treal(p, &["mono", "cover", "--points", "pts.csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["params"]["strategy"], "greedy");
    assert_eq!(lines[1]["direction"], "increasing");
    assert_eq!(lines[1]["size"], "3");
    assert_eq!(lines[2]["size"], "1");

    let exact = treal(p, &["mono", "cover", "--points", "pts.csv", "--strategy", "exact"]);
    assert!(exact.status.success());
    let unknown = treal(p, &["mono", "cover", "--points", "pts.csv", "--strategy", "magic"]);
    assert_eq!(unknown.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("exact, greedy"));

    write(p, "zig.csv", "0,1\n1,0\n2,3\n3,2\n4,5\n5,4\n");
    let v = json(&treal(p, &["mono", "mincover", "--points", "zig.csv"]));
    assert_eq!(v["results"]["minimum"], "2");

    write(p, "dup.csv", "0,1\n0,2\n");
    assert_eq!(
        treal(p, &["mono", "mincover", "--points", "dup.csv"]).status.code(),
        Some(1)
    );
}

#[test]
fn monotone_code_flow() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    write(p, "s.csv", "key,value,kind\n0,0,r\n1/4,0,r\n1/2,1,d\n3/4,1,r\n1,1,r\n");
    let v = json(&treal(
        p,
        &["mono", "encode", "--samples", "s.csv", "--code-out", "c.mcode"],
    ));
    assert_eq!(v["results"]["discontinuity_samples"], "1");
    let at = |x: &str| json(&treal(p, &["mono", "eval", "--code", "c.mcode", "--x", x]))["results"]["value"].clone();
    assert_eq!(at("-1"), "-inf");
    assert_eq!(at("3/8"), "0");
    assert_eq!(at("0.6"), "1");
    let member = |x: &str, y: &str| {
        json(&treal(p, &["mono", "member", "--code", "c.mcode", "--x", x, "--y", y]))["results"]["member"].clone()
    };
    assert_eq!(member("3/10", "0"), "true");
    assert_eq!(member("3/10", "5"), "false");
}

#[test]
fn root_and_cantor() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    let v = json(&treal(
        p,
        &["rcf", "root", "--coeffs", "-2,0,0,1", "--eps", "1/1000000000000"],
    ));
    assert_eq!(v["checks"]["endpoint_signs_differ"], "pass");
    assert_eq!(v["checks"]["width_within_eps"], "pass");
    let even = treal(p, &["rcf", "root", "--coeffs", "1,0,1"]);
    assert_eq!(even.status.code(), Some(1));

    let v = json(&treal(
        p,
        &["cantor", "encode", "--bits", "101", "--dreal-out", "c.dreal"],
    ));
    assert_eq!(v["results"]["ternary"], "202");
    assert_eq!(v["results"]["value"], "20/27");
    let v = json(&treal(p, &["cantor", "decode", "--dreal", "c.dreal"]));
    assert_eq!(v["results"]["bits"], "101");
    write(p, "bad.dreal", "DREAL 1 base=3 sign=+ int=0 len=2\n2 1\n");
    assert_eq!(
        treal(p, &["cantor", "decode", "--dreal", "bad.dreal"]).status.code(),
        Some(1)
    );
}

#[test]
fn real_arithmetic() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    json(&treal(
        p,
        &[
            "real",
            "encode",
            "--value",
            "1/3",
            "--len",
            "20",
            "--dreal-out",
            "a.dreal",
        ],
    ));
    json(&treal(
        p,
        &[
            "real",
            "encode",
            "--value",
            "1/6",
            "--len",
            "20",
            "--dreal-out",
            "b.dreal",
        ],
    ));
    let v = json(&treal(
        p,
        &["real", "add", "--a", "a.dreal", "--b", "b.dreal", "--len", "10"],
    ));
    assert_eq!(v["results"]["exact"], "49999999999999999999/100000000000000000000");
    assert_eq!(v["results"]["digits"], "4999999999");
    assert_eq!(v["checks"]["digits_truncate_exact_value"], "pass");
    let v = json(&treal(p, &["real", "value", "--dreal", "a.dreal"]));
    assert_eq!(v["results"]["positional"], "33333333333333333333/100000000000000000000");
    let v = json(&treal(p, &["real", "encode", "--value", "-7/4"]));
    assert_eq!(v["results"]["sign"], "-");
    assert_eq!(v["results"]["int"], "1");
    assert_eq!(v["results"]["digits"], "75");
}

#[test]
fn usage_errors_and_out_flag() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    assert_eq!(treal(p, &["frobnicate"]).status.code(), Some(64));
    assert_eq!(treal(p, &["real", "encode"]).status.code(), Some(64));
    assert_eq!(treal(p, &["--help"]).status.code(), Some(0));
    write(p, "junk.dreal", "not a dreal\n");
    assert_eq!(
        treal(p, &["real", "value", "--dreal", "junk.dreal"]).status.code(),
        Some(64)
    );
    assert_eq!(
        treal(p, &["real", "value", "--dreal", "missing.dreal"]).status.code(),
        Some(64)
    );
    write(p, "bad.csv", "0,1\nzero,one\n");
    assert_eq!(
        treal(p, &["mono", "cover", "--points", "bad.csv"]).status.code(),
        Some(64)
    );

    let out = treal(
        p,
        &["--out", "r.csv", "--report", "csv", "bitswap", "map", "--bits", "10"],
    );
    assert!(out.status.success() && out.stdout.is_empty());
    let text = std::fs::read_to_string(p.join("r.csv")).unwrap();
    assert!(text.contains("result,image,01\n"));
}
