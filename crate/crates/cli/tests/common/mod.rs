#![allow(dead_code)]

use defkit_cli::{run, Outcome};

pub fn invoke(args: &[&str]) -> Outcome {
    invoke_with_stdin(args, "")
}

pub fn invoke_with_stdin(args: &[&str], stdin: &str) -> Outcome {
    let mut argv = vec!["defkit"];
    argv.extend_from_slice(args);
    run(argv, &mut stdin.as_bytes())
}

const XYZ: [&str; 4] = ["singularity", "analyze", "--vars", "x,y,z"];

fn analyze(poly: &str) -> Vec<String> {
    XYZ.iter().copied().chain(["--poly", poly]).map(String::from).collect()
}

fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

/// Fifty malformed invocations: bad syntax, bad arguments and inputs that every
/// module must reject. Each must fail with a structured error.
pub fn malformed_corpus() -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = [
        "x*y z", "(x + y", "x +", "1/0", "x//2", "2^x", "x^-1", "", "sin(x)", "x*", "()", "x**2", "1/-2", "w",
        "x^2.5", "x & y", "x^99999999999", "3x", "+", "--x",
    ]
    .iter()
    .map(|p| analyze(p))
    .collect();
    // modules rejecting well-formed input
    for p in ["x^2", "x + 1", "0", "3"] {
        out.push(analyze(p));
    }
    for s in [
        "singularity analyze --vars x,x --poly x",
        "singularity analyze --vars 1x --poly x",
        "singularity analyze --vars x,y --poly x^2+y^2 --poly x*y",
        "singularity weyl --types F4",
        "singularity weyl --types A0",
        "singularity weyl --types D3",
        "deform scan --vars x,y,z --poly x*y-z^3 --at 1",
        "deform scan --vars x,y,z --poly x*y-z^3 --at 1/0,2",
        "deform semiuniversal --vars x,y,z --poly x^2",
        "resolve an --n 0",
        "resolve an --n 5",
        "resolve an --n 1 --samples 0",
        "quotient bidouble --vars u,v,w,t --action 1,2,1,1",
        "quotient bidouble --vars u,v,w,t --action 1,1,-1",
        "quotient bidouble --vars u,v,w,t --action 1,1,-1,1 --fixed 1,1,1,1",
        "quotient bidouble --vars u,v,w,t --action 1,1,-1,1 --fixed -1,1,1,1",
        "quotient bidouble --vars u,v,w,t --action 1,1,-1,1 --names a,b",
        "surface invariants --chi 0 --k2 1",
        "surface invariants --chi 1 --k2 1 --h0-theta -1",
        "surface nodal-bounds --d 1",
        "surface segre --d 3",
        "surface catalog --family 1 --k 1",
        "surface catalog --family 2 --k 2",
        "surface double-cover --d1 2 --d2 3",
        "surface isogenous --g1 2 --g2 3 --order 3",
    ] {
        out.push(words(s));
    }
    // usage errors caught before dispatch
    out.push(words("surface nodal-bounds --d six"));
    out
}
