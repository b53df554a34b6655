use double_a_web::{bielliptic_json, certify_json, min_weight_basis_json, slope_json};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn certify_reports_a_verified_witness() {
    let doc = parse(certify_json(2, 3).unwrap());
    assert_eq!(doc["certificate"]["verdict"], "SEMISTABLE");
    assert_eq!(doc["verification"]["pass"], true);
    assert_eq!(doc["g"], 4);
    assert!(certify_json(1, 3).is_err());
    assert!(certify_json(6, 6).is_err());
}

#[test]
fn min_weight_basis_is_below_the_constructive_one() {
    let doc = parse(min_weight_basis_json(3, 2, "2, -1, -1, 1, 0, -1").unwrap());
    let best = doc["weight"].as_i64().unwrap();
    let built = doc["constructive"]["weight"].as_i64().unwrap();
    assert!(best <= built && built <= 0);
    assert_eq!(doc["basis"].as_array().unwrap().len(), 15);
    assert!(min_weight_basis_json(3, 2, "1,1,1,1,1,1").is_err());
    assert!(min_weight_basis_json(3, 2, "1,-1").is_err());
    assert!(min_weight_basis_json(3, 2, "a,b").is_err());
}

#[test]
fn bielliptic_rows_and_slope() {
    let doc = parse(bielliptic_json(4, 12, 2, 5).unwrap());
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9 * 4);
    let row = rows.iter().find(|r| r["g"] == 11 && r["m"] == 4).unwrap();
    assert_eq!(row["verdict"], "NONSEMISTABLE");
    assert_eq!(doc["trigonal"].as_array().unwrap().len(), 9);
    assert!(bielliptic_json(5, 4, 2, 2).is_err());
    assert_eq!(parse(slope_json(10, 3).unwrap())["slope"], "47/6");
    assert!(slope_json(10, 1).is_err());
}
