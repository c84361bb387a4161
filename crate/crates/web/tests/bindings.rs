use proofbench_web::{compress_json, countermodel_json, prove_json};

#[test]
fn prove_reports_a_derivation() {
    let v = prove_json("(p & q) -> p", "lg-min").unwrap();
    assert_eq!(v["verdict"], "proved");
    assert_eq!(v["derivation"]["rule"], "GI1imp");
    let v = prove_json("((p -> (q -> bot)) -> bot) -> p", "lm-imp").unwrap();
    assert_eq!(v["verdict"], "unprovable");
    assert!(v.get("derivation").is_none());
}

#[test]
fn bad_input_is_an_error() {
    assert!(prove_json("p ->", "lm-imp").is_err());
    assert!(prove_json("p", "lk").is_err());
    assert!(countermodel_json("p", "classical", 3).is_err());
}

#[test]
fn countermodel_for_peirce() {
    let v = countermodel_json("((p -> q) -> p) -> p", "minimal", 9).unwrap();
    assert_eq!(v["refuted"], true);
    assert_eq!(v["model"]["worlds"].as_array().unwrap().len(), 2);
    let v = countermodel_json("p -> p", "intuitionistic", 3).unwrap();
    assert_eq!(v["refuted"], false);
}

#[test]
fn compression_shares_subproofs() {
    let v = compress_json("p -> (p -> q) -> (q -> q -> r) -> (r -> r -> s) -> s").unwrap();
    assert_eq!(v["calculus"], "LM-IMP");
    let tree = v["tree"]["size"].as_u64().unwrap();
    let l1 = v["l1"]["size"].as_u64().unwrap();
    assert!(l1 < tree, "{l1} vs {tree}");
    assert!(compress_json("(p -> q) -> p").is_err());
}
