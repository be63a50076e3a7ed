#![allow(dead_code)]

use std::path::{Path, PathBuf};

use coreep_cli::run;
use serde_json::Value;

pub fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

/// (golden name, expected exit code, arguments); `@x` expands to corpus/x.mat.
pub const CASES: &[(&str, i32, &[&str])] = &[
    ("info_example_a", 0, &["info", "@example_a"]),
    ("info_example_a_commented", 0, &["info", "@example_a_commented"]),
    ("info_jordan4", 0, &["info", "@jordan4"]),
    ("info_rect", 0, &["info", "@rect2x3"]),
    ("info_scalar", 0, &["info", "@scalar"]),
    ("info_scientific", 0, &["info", "@scientific"]),
    ("info_gen_k3", 0, &["info", "@gen_k3"]),
    ("inv_mp_rect", 0, &["inv", "mp", "@rect2x3"]),
    ("inv_mp_complex", 0, &["inv", "mp", "@complex2"]),
    ("inv_drazin_example_b", 0, &["inv", "drazin", "@example_b"]),
    ("inv_drazin_jordan4", 0, &["inv", "drazin", "@jordan4"]),
    ("inv_group_example_b", 2, &["inv", "group", "@example_b"]),
    ("inv_group_idempotent", 0, &["inv", "group", "@idempotent2"]),
    ("inv_core_example_a", 0, &["inv", "core", "@example_a"]),
    ("inv_core_nonsingular", 0, &["inv", "core", "@nonsingular3"]),
    ("inv_coreep_example_b", 0, &["inv", "coreep", "@example_b"]),
    ("inv_coreep_gen_k3", 0, &["inv", "coreep", "@gen_k3"]),
    ("inv_drazin_rect", 2, &["inv", "drazin", "@rect2x3"]),
    ("decomp_coreep_example_b", 0, &["decomp", "coreep", "@example_b"]),
    ("decomp_cn_example_b", 0, &["decomp", "cn", "@example_b"]),
    ("decomp_canonical_example_b", 0, &["decomp", "canonical", "@example_b"]),
    ("decomp_coreform_index1", 0, &["decomp", "coreform", "@index1_singular"]),
    ("decomp_coreform_example_b", 0, &["decomp", "coreform", "@example_b"]),
    ("decomp_coreep_zero", 0, &["decomp", "coreep", "@zero3"]),
    ("decomp_cn_rect", 2, &["decomp", "cn", "@rect2x3"]),
    ("order_coreep_ab", 0, &["order", "coreep", "@example_a", "@example_b"]),
    ("order_coreep_ba", 0, &["order", "coreep", "@example_b", "@example_a"]),
    ("order_drazin_ab", 1, &["order", "drazin", "@example_a", "@example_b"]),
    ("order_minus_ab", 0, &["order", "minus", "@example_a", "@example_b"]),
    ("order_sharp_ab", 2, &["order", "sharp", "@example_a", "@example_b"]),
    ("order_cn_ab", 1, &["order", "cn", "@example_a", "@example_b"]),
    (
        "order_coreminus_ab",
        0,
        &["order", "coreminus", "@example_a", "@example_b"],
    ),
    (
        "order_minus_index1",
        0,
        &["order", "minus", "@index1_below", "@index1_singular"],
    ),
    (
        "order_core_index1",
        0,
        &["order", "core", "@index1_below", "@index1_singular"],
    ),
    (
        "order_sharp_gen",
        0,
        &["order", "sharp", "@sharp_pair_A", "@sharp_pair_B"],
    ),
    (
        "order_coreep_gen",
        0,
        &["order", "coreep", "@coreep_pair_A", "@coreep_pair_B"],
    ),
    (
        "order_coreminus_gen_neg",
        1,
        &["order", "coreminus", "@coreminus_neg_A", "@coreminus_neg_B"],
    ),
    ("order_cn_gen", 0, &["order", "cn", "@cn_pair_A", "@cn_pair_B"]),
    (
        "order_minus_identity_zero",
        0,
        &["order", "minus", "@zero3", "@identity3"],
    ),
    ("order_shape_mismatch", 2, &["order", "minus", "@example_a", "@nil2"]),
    ("verify_example_b", 0, &["verify", "@example_b"]),
    ("verify_rect", 0, &["verify", "@rect2x3"]),
    ("verify_gen_k3", 0, &["verify", "@gen_k3"]),
    ("verify_nil2", 0, &["verify", "@nil2"]),
    (
        "gen_single",
        0,
        &["gen", "--n", "3", "--rank", "1", "--index", "2", "--seed", "5"],
    ),
    (
        "gen_pair",
        0,
        &[
            "gen",
            "--n",
            "4",
            "--rank",
            "2",
            "--index",
            "1",
            "--seed",
            "6",
            "--relation",
            "core",
        ],
    ),
    (
        "gen_infeasible",
        2,
        &["gen", "--n", "3", "--rank", "3", "--index", "2", "--seed", "1"],
    ),
    ("parse_ragged", 2, &["info", "@bad_ragged"]),
    ("parse_token", 2, &["info", "@bad_token"]),
    ("parse_inf", 2, &["info", "@bad_inf"]),
    ("parse_empty", 2, &["info", "@empty"]),
    ("missing_file", 2, &["info", "@does_not_exist"]),
    ("bad_tolerance", 2, &["info", "--tol=-1", "@example_a"]),
];

pub fn expand(args: &[&str], format: &str) -> Vec<String> {
    let mut v = vec!["coreep".to_string(), "--format".into(), format.into()];
    for a in args {
        match a.strip_prefix('@') {
            Some(name) => v.push(dir("corpus").join(format!("{name}.mat")).display().to_string()),
            None => v.push(a.to_string()),
        }
    }
    v
}

/// Error messages mention absolute paths; keep only the file name.
pub fn normalize(v: &mut Value) {
    match v {
        Value::String(s) => {
            let corpus = dir("corpus").display().to_string() + "/";
            *s = s.replace(&corpus, "");
        }
        Value::Array(a) => a.iter_mut().for_each(normalize),
        Value::Object(m) => m.values_mut().for_each(normalize),
        _ => {}
    }
}

/// Structural equality with numbers compared to 1e-9 relative. Residual
/// values are rounding noise, so below their bound any two values match.
pub fn same(expected: &Value, actual: &Value, path: &str, diffs: &mut Vec<String>) {
    match (expected, actual) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            if (x - y).abs() > 1e-9 * (1.0 + x.abs().max(y.abs())) {
                diffs.push(format!("{path}: expected {x}, got {y}"));
            }
        }
        (Value::Object(e), Value::Object(a)) => {
            let ek: Vec<_> = e.keys().collect();
            let ak: Vec<_> = a.keys().collect();
            if ek != ak {
                diffs.push(format!("{path}: keys {ek:?} vs {ak:?}"));
                return;
            }
            let is_residual = e.contains_key("bound") && e.contains_key("passes");
            for (k, ev) in e {
                if is_residual && k == "value" {
                    continue;
                }
                same(ev, &a[k], &format!("{path}.{k}"), diffs);
            }
        }
        (Value::Array(e), Value::Array(a)) if e.len() == a.len() => {
            for (i, (ev, av)) in e.iter().zip(a).enumerate() {
                same(ev, av, &format!("{path}[{i}]"), diffs);
            }
        }
        (e, a) if e == a => {}
        (e, a) => diffs.push(format!("{path}: expected {e}, got {a}")),
    }
}

/// Runs one case in JSON mode; returns the mismatches against its golden
/// file, or rewrites the golden file when `bless` is set.
pub fn check_case(name: &str, code: i32, args: &[&str], bless: bool) -> Vec<String> {
    let out = run(expand(args, "json"));
    if out.code != code {
        return vec![format!(
            "{name}: exit {} (expected {code}); stderr: {}",
            out.code, out.stderr
        )];
    }
    let mut actual: Value = match serde_json::from_str(&out.stdout) {
        Ok(v) => v,
        Err(e) => return vec![format!("{name}: stdout is not JSON ({e})")],
    };
    normalize(&mut actual);
    let mut diffs = Vec::new();
    if actual["schema"] != 1 || actual["command"] != args[0] {
        diffs.push(format!("{name}: missing schema/command header"));
    }
    if actual.get("error").is_some() != (code == 2) {
        diffs.push(format!("{name}: error object present iff exit code 2"));
    }
    let path = dir("golden").join(format!("{name}.json"));
    if bless {
        std::fs::write(&path, serde_json::to_string_pretty(&actual).unwrap() + "\n").unwrap();
        return diffs;
    }
    match std::fs::read_to_string(&path).map(|t| serde_json::from_str::<Value>(&t)) {
        Ok(Ok(expected)) => same(&expected, &actual, name, &mut diffs),
        Ok(Err(e)) => diffs.push(format!("{}: {e}", path.display())),
        Err(e) => diffs.push(format!("{}: {e}", path.display())),
    }
    diffs
}
