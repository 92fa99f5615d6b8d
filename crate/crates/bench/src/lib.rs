//! Shared fixtures for the benchmarks in `benches/`.

use cealg::tduality::{btfold, validate_config, TDualityQuintuple};

/// The T-fold quintuple with fibers `e1c` and `e1t`.
pub fn tfold_quintuple() -> TDualityQuintuple {
    let g = btfold();
    let gen = |name: &str| g.gen(name).expect("btfold generator");
    validate_config(&g, &gen("x2c"), &gen("x2t"), &gen("y3"))
        .and_then(|cfg| cfg.derive_quintuple(("e1c", "e1t")))
        .expect("the T-fold configuration is valid")
}
