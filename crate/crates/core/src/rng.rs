//! Seeded configuration sampling.
//!
//! The generator is SplitMix64 (Steele, Lea and Flood, 2014): state advances
//! by `0x9e3779b97f4a7c15` and each output is the state passed through the
//! finalizer `z ^= z >> 30; z *= 0xbf58476d1ce4e5b9; z ^= z >> 27;
//! z *= 0x94d049bb133111eb; z ^= z >> 31`. The seed is the initial state.
//!
//! A random configuration on `m` points draws `ceil(m / 64)` outputs; bit `i`
//! is bit `i % 64` of output `i / 64`. Bits past `m` are discarded.

use crate::bits::BitVec;
use crate::game::Configuration;
use crate::geometry::IncidenceStructure;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` by rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }

    pub fn bits(&mut self, len: usize) -> BitVec {
        let words = (0..len.div_ceil(64)).map(|_| self.next_u64()).collect();
        BitVec::from_words(len, words)
    }
}

/// Each bulb lit independently with probability 1/2.
pub fn random_configuration(s: &IncidenceStructure, rng: &mut SplitMix64) -> Configuration {
    Configuration::from_bits(s, rng.bits(s.num_points())).expect("length matches")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_outputs() {
        // Published reference sequence for seed 1234567.
        let mut g = SplitMix64::new(1234567);
        let expect = [
            6457827717110365317u64,
            3203168211198807973,
            9817491932198370423,
            4593380528125082431,
            16408922859458223821,
        ];
        for e in expect {
            assert_eq!(g.next_u64(), e);
        }
    }

    #[test]
    fn bits_are_masked() {
        let mut g = SplitMix64::new(7);
        let v = g.bits(13);
        assert_eq!(v.len(), 13);
        assert!(v.words()[0] < 1 << 13);
    }
}
