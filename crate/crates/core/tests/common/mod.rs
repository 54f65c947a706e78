#![allow(dead_code)]

use dqaa::{BooleanOracle, DistributedSetup, UnitaryOperator};
use rand::Rng;

/// Random nonempty target set on `n` bits. Half the draws mark only a few
/// inputs so that small success probabilities are well represented.
pub fn random_oracle<R: Rng>(rng: &mut R, n: usize) -> BooleanOracle {
    let size = 1usize << n;
    let count = if rng.random_bool(0.5) {
        rng.random_range(1..=4.min(size))
    } else {
        rng.random_range(1..=size)
    };
    let mut targets = std::collections::BTreeSet::new();
    while targets.len() < count {
        targets.insert(rng.random_range(0..size));
    }
    BooleanOracle::from_indices(n, targets).unwrap()
}

/// `A1 ⊗ A2` with independent Haar-random factors on `j` and `n - j` qubits.
pub fn random_product_setup<R: Rng>(
    rng: &mut R,
    oracle: &BooleanOracle,
    j: usize,
    epsilon: f64,
    shots: u64,
    seed: u64,
) -> DistributedSetup {
    let n = oracle.n_bits();
    DistributedSetup::new(
        UnitaryOperator::random(j, rng).unwrap(),
        UnitaryOperator::random(n - j, rng).unwrap(),
        oracle.clone(),
        epsilon,
        shots,
        seed,
    )
    .unwrap()
}

/// `-A S_0 A^dagger S_f` from hand-built ±1 diagonals.
pub fn textbook_grover_iterate(a: &UnitaryOperator, oracle: &BooleanOracle) -> UnitaryOperator {
    use num_complex::Complex64;
    let one = Complex64::new(1.0, 0.0);
    let s_f: Vec<Complex64> = oracle.table().iter().map(|&b| if b { -one } else { one }).collect();
    let mut s_0 = vec![one; a.dim()];
    s_0[0] = -one;
    let s_f = UnitaryOperator::diagonal(s_f).unwrap();
    let s_0 = UnitaryOperator::diagonal(s_0).unwrap();
    a.compose(&s_0)
        .unwrap()
        .compose(&a.adjoint())
        .unwrap()
        .compose(&s_f)
        .unwrap()
        .scaled(-one)
}
