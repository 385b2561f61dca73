use rand::Rng;
use rand_distr::StandardNormal;

use crate::bits::BitVec;

/// BPSK over AWGN at a given `Eb/N0` and code rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    pub rate: f64,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, rate: f64) -> Self {
        assert!(rate > 0.0 && ebn0_db.is_finite(), "invalid channel parameters");
        ChannelConfig { ebn0_db, rate }
    }

    /// `σ² = 1 / (2 R 10^{Eb/N0 / 10})`.
    pub fn sigma2(&self) -> f64 {
        1.0 / (2.0 * self.rate * 10f64.powf(self.ebn0_db / 10.0))
    }
}

/// Maps `0 ↦ +1`, adds `N(0, σ²)` noise and returns `L = 2y/σ²`.
pub fn transmit(codeword: &BitVec, cfg: &ChannelConfig, rng: &mut impl Rng) -> Vec<f64> {
    let sigma2 = cfg.sigma2();
    let sigma = sigma2.sqrt();
    (0..codeword.len())
        .map(|i| {
            let x = if codeword.get(i) { -1.0 } else { 1.0 };
            let noise: f64 = rng.sample(StandardNormal);
            2.0 * (x + sigma * noise) / sigma2
        })
        .collect()
}

/// The noiseless limit: channel LLRs with the signs of the codeword.
pub fn transmit_noiseless(codeword: &BitVec, cfg: &ChannelConfig) -> Vec<f64> {
    let l = 2.0 / cfg.sigma2();
    (0..codeword.len())
        .map(|i| if codeword.get(i) { -l } else { l })
        .collect()
}
