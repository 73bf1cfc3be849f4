use g2flop_wasm::{bott_grid, cohomology, ext_v, replay_table};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn grid_cells() {
    let v = parse(bott_grid(-3, 3, -3, 3));
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 49);
    let find = |a: i64, b: i64| cells.iter().find(|c| c["a"] == a && c["b"] == b).unwrap().clone();
    assert_eq!(find(0, 1)["degree"], 0);
    assert_eq!(find(0, 1)["dim"], 7);
    assert_eq!(find(-2, 3)["degree"], 1);
    assert_eq!(find(-2, 3)["nu"], serde_json::json!([0, 0]));
    assert!(find(-1, 0)["degree"].is_null());
    // first row is the top one
    assert_eq!(cells[0]["b"], 3);
    assert!(parse(bott_grid(0, 100, 0, 1))["error"].is_string());
    assert!(parse(bott_grid(2, 1, 0, 1))["error"].is_string());
}

#[test]
fn cohomology_query() {
    let v = parse(cohomology("U*U(h)"));
    assert_eq!(v["result"], "k[-1]");
    assert_eq!(v["status"], "determined");
    let v = parse(cohomology("S'*S"));
    assert_eq!(v["status"], "indeterminate");
    let v = parse(cohomology("U*X"));
    assert_eq!(v["pos"], 2);
}

#[test]
fn ext_query() {
    let v = parse(ext_v("U'(-h)", "U"));
    assert_eq!(v["result"], "k[-1]");
    assert_eq!(v["euler_characteristic"], -1);
    let v = parse(ext_v("O", "O(("));
    assert_eq!(v["argument"], 1);
}

#[test]
fn replay_json() {
    let v = parse(replay_table(0));
    assert_eq!(v["pass"], true);
    assert_eq!(v["steps"].as_array().unwrap().len(), 12);
    let v = parse(replay_table(10));
    assert_eq!(v["target_match"], false);
}
