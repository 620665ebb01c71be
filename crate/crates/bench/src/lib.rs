//! Shared inputs for the criterion benches.

use std::path::PathBuf;

use gosc_core::lll::Basis;
use gosc_core::ZeroTable;
use rug::Integer;

/// Path of a file under the workspace `fixtures/` directory.
pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn load_table(name: &str) -> ZeroTable {
    ZeroTable::load(fixture(name), 0).expect("fixture table")
}

/// A knapsack-style basis: identity plus a last row of `bits`-bit entries
/// from a fixed linear congruential sequence.
pub fn knapsack_basis(dim: usize, bits: u32) -> Basis {
    let mut state = Integer::from(0x2545_f491_4f6c_dd1du64);
    let modulus = Integer::from(1) << bits;
    let columns = (0..dim)
        .map(|j| {
            state = (Integer::from(&state * 6_364_136_223_846_793_005u64) + 1_442_695_040_888_963_407u64)
                % &modulus;
            let mut col = vec![Integer::new(); dim + 1];
            col[j] = Integer::from(1);
            col[dim] = state.clone();
            col
        })
        .collect();
    Basis::from_columns(columns).expect("well-formed basis")
}
