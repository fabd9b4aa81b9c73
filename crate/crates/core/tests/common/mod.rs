#![allow(dead_code)]

use std::path::PathBuf;

use lefschetz::cli::{analyze_text, emit, Format, Options};
use lefschetz::geometry::{BundleModel, ModelExpr};
use proptest::prelude::*;

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

pub fn example_json(text: &str) -> String {
    emit(&analyze_text(text, &Options::default()).expect("example analyzes"), Format::Json)
}

fn bundles_of_dim(n: u32) -> Vec<BundleModel> {
    let mut out = Vec::new();
    for n1 in 1..n {
        for m in 1..=3 {
            if let Ok(b) = BundleModel::new(m, n1, n - n1) {
                out.push(b);
            }
        }
    }
    out
}

/// Random well-formed trees of complex dimension `n`.
pub fn model_of_dim(n: u32) -> BoxedStrategy<ModelExpr> {
    let leaf = prop_oneof![
        Just(ModelExpr::Cn(n)),
        prop::sample::select(bundles_of_dim(n)).prop_map(ModelExpr::Bundle),
    ];
    let flips: Vec<(u32, u32)> = (1..n).map(|n1| (n1, n - n1)).filter(|&(a, b)| a <= b + 1).collect();
    leaf.prop_recursive(3, 8, 2, move |inner| {
        prop_oneof![
            (1u32..4, inner.clone()).prop_map(|(k, c)| ModelExpr::blowup(k, c)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ModelExpr::conn_sum(a, b)),
            (inner, prop::sample::select(flips.clone())).prop_map(|(c, (a, b))| ModelExpr::flip(c, a, b)),
        ]
    })
    .boxed()
}
