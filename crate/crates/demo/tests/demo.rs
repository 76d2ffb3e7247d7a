use blockwitness_demo::{abacus_view, scan_json, witness_json, MAX_SCAN_N};

#[test]
fn witness_round_trip() {
    let line = witness_json("sn", 12, 5, 0, 1).unwrap();
    let value: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!(value["object"], "(2,1^10)");
    let line = witness_json("bc", 5, 13, 3, 1).unwrap();
    assert!(line.contains("(1 3 4 | 0 1)"));
    assert!(witness_json("gl", 7, 11, 6, 1).is_err());
    assert!(witness_json("e7", 7, 11, 3, 1).is_err());
}

#[test]
fn abacus_of_small_partition() {
    let view = abacus_view("(3,3,1)", 5).unwrap();
    assert_eq!(view.rows, vec![3, 3, 1]);
    assert_eq!(view.hooks, vec![vec![5, 3, 2], vec![4, 2, 1], vec![1]]);
    assert_eq!(view.beads, vec![5, 4, 1]);
    assert_eq!(view.runners, vec![vec![1], vec![0], vec![], vec![], vec![0]]);
    assert_eq!(view.core, "(2)");
    assert_eq!(view.weight, 1);
    assert_eq!(view.degree, "21");
    assert!(abacus_view("(3,3,1)", 1).is_err());
    assert!(abacus_view("(1,3)", 3).is_err());
}

#[test]
fn scan_array() {
    let text = scan_json("b", 4, 4, "all").unwrap();
    let rows: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["sets_equal"], false);
    assert!(scan_json("a", 8, MAX_SCAN_N + 1, "with2").is_err());
}
