use super::op::Op;
use super::random::{complex_gaussian, gaussian_signal, seeded};
use super::signal::Signal;

pub fn random_signal(len: usize, seed: u64) -> Signal {
    gaussian_signal(&mut seeded(seed), len)
}

/// Dense full-rank (almost surely) random operator.
pub fn random_op(len: usize, seed: u64) -> Op {
    let entries = complex_gaussian(&mut seeded(seed ^ 0x5eed), len * len);
    Op::from_rows(len, &entries).unwrap()
}
