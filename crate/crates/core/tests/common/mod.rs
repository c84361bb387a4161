#![allow(dead_code)]

use proofbench::Formula;
use proptest::prelude::*;

/// Implicational formulas over `p`, `q` and `bot`.
pub fn implicational(depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Formula::atom("p")), Just(Formula::atom("q")), Just(Formula::bot())];
    leaf.prop_recursive(depth, 24, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)))
}

/// All connectives over `p`, `q`, `r` and `bot`.
pub fn propositional(depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::atom("p")),
        Just(Formula::atom("q")),
        Just(Formula::atom("r")),
        Just(Formula::bot()),
    ];
    leaf.prop_recursive(depth, 16, 2, |inner| {
        (0..3u8, inner.clone(), inner).prop_map(|(k, a, b)| match k {
            0 => Formula::imp(a, b),
            1 => Formula::and(a, b),
            _ => Formula::or(a, b),
        })
    })
}

pub fn f(s: &str) -> Formula {
    proofbench::parse(s).unwrap()
}
