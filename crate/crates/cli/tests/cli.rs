use gapscan::poly::poly;
use gapscan::IntPoly;
use gapscan_cli::{parse_poly, run, EXIT_INPUT, EXIT_OK, EXIT_RESOURCE};
use num_bigint::BigInt;
use proptest::prelude::*;

fn gapscan(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gapscan").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn analyze_example_one() {
    let (code, out, _) = gapscan(&["analyze", "--c", "1", "--d", "1 - 7*x^2", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let r = &v["report"];
    assert_eq!(r["m0"], 20);
    assert_eq!(r["n0"], 40);
    let exc: Vec<&String> = r["exceptional"].as_object().unwrap().keys().collect();
    assert_eq!(exc, vec!["4"]);
    assert!(r["progressions"].as_array().unwrap().is_empty());
}

#[test]
fn m0_and_factor() {
    assert_eq!(gapscan(&["m0", "--c", "1", "--d", "1 + 2*x^3"]).1.trim(), "12");
    let (code, out, _) = gapscan(&["factor", "x^14 + 4*x + 3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out.trim(),
        "(x + 1)*(x^3 - x^2 + 1)*(x^10 + x^8 - x^7 - 2*x^5 - x^3 + 2*x^2 + x + 3)"
    );
}

#[test]
fn csv_rows() {
    let (code, out, _) = gapscan(&["m0", "--c", "1", "--d", "1 - 2*x^2", "--d", "1 - 3*x^2", "--d", "1 - 7*x^2", "--csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "w,m0\n6,8\n11,11\n51,20\n");
}

#[test]
fn exit_codes() {
    let (code, _, err) = gapscan(&["factor", "1 + 2x"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("byte 5"), "{err}");
    assert_eq!(gapscan(&["analyze", "--c", "0", "--d", "1"]).0, EXIT_INPUT);
    assert_eq!(gapscan(&["frobnicate"]).0, EXIT_INPUT);
    assert_eq!(gapscan(&["m0", "--c", "1", "--d", "1 - 4*x^2"]).0, EXIT_INPUT);
    assert_eq!(
        gapscan(&["m0", "--c", "1", "--d", "1 - 7*x^2", "--max-nodes", "100"]).0,
        EXIT_RESOURCE
    );
    assert_eq!(gapscan(&["--help"]).0, EXIT_OK);
}

#[test]
fn oracle_and_check() {
    let (code, out, _) = gapscan(&["oracle", "--c", "1", "--d", "x + 1", "--horizon", "60"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = gapscan(&["check", "--c", "1", "--d", "1 - 4*x^2", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["robustness"]["verdict"], "not_weakly_robust");
    let (_, out, _) = gapscan(&["bounds", "--c", "1", "--d", "1 - 7*x^2"]);
    assert!(out.contains("N1        98.8683"), "{out}");
}

#[test]
fn json_is_byte_stable() {
    let args = ["analyze", "--c", "12", "--d", "3*x^9 + 8*x^8 + 6*x^7 + 9*x^6 + 8*x^4 + 3*x^3 + 6*x + 5", "--json", "--horizon", "40"];
    let runs: Vec<String> = [1, 4]
        .into_iter()
        .map(|t| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap();
            pool.install(|| gapscan(&args).1)
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], gapscan(&args).1);
}

fn arb_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(
        prop_oneof![
            3 => -5i64..=5,
            1 => any::<i64>(),
        ],
        0..12,
    )
    .prop_map(|c| poly(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn render_parse_round_trip(p in arb_poly(), big in any::<u128>()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p.clone());
        let q = &p * &IntPoly::constant(BigInt::from(big) + 1);
        prop_assert_eq!(parse_poly(&q.to_string()).unwrap(), q);
    }
}

#[test]
fn examples_parse() {
    assert_eq!(parse_poly("1 - 7*x^2").unwrap(), poly(&[1, 0, -7]));
    assert_eq!(parse_poly("(1+x)*(1-x)").unwrap(), poly(&[1, 0, -1]));
}
