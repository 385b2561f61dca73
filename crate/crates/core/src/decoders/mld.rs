use super::{InnerDecode, SoftDecoder};
use crate::bits::{BinaryMatrix, BitVec};
use crate::codealg::EXHAUSTIVE_MAX_DIM;
use crate::error::{Error, Result};

/// Exhaustive maximum-likelihood decoder over all `2^k` codewords.
///
/// Codewords are listed in message order, message bit 0 (the most
/// significant) selecting generator row 0. Ties go to the first message.
#[derive(Clone, Debug)]
pub struct Mld {
    codewords: Vec<BitVec>,
    length: usize,
}

impl Mld {
    pub fn new(generator: &BinaryMatrix) -> Result<Self> {
        let k = generator.num_rows();
        if k > EXHAUSTIVE_MAX_DIM {
            return Err(Error::DimensionTooLarge {
                k,
                max: EXHAUSTIVE_MAX_DIM,
            });
        }
        let codewords = (0..1u64 << k)
            .map(|u| {
                let msg = BitVec::from_fn(k, |i| u >> (k - 1 - i) & 1 == 1);
                generator.encode(&msg)
            })
            .collect();
        Ok(Mld {
            codewords,
            length: generator.num_cols(),
        })
    }

    pub fn codewords(&self) -> &[BitVec] {
        &self.codewords
    }

    /// Index (message) of the codeword maximising `Σ (1 − 2c_i) L_i`.
    pub fn best_index(&self, llr: &[f64]) -> usize {
        assert_eq!(llr.len(), self.length, "LLR length does not match G");
        let mut best = 0;
        let mut best_cost = f64::INFINITY;
        for (u, c) in self.codewords.iter().enumerate() {
            // Σ_{c_i = 1} L_i is the correlation deficit
            let cost: f64 = c.iter_ones().map(|i| llr[i]).sum();
            if cost < best_cost {
                best_cost = cost;
                best = u;
            }
        }
        best
    }
}

impl SoftDecoder for Mld {
    fn length(&self) -> usize {
        self.length
    }

    fn decode(&self, llr: &[f64]) -> InnerDecode {
        let c = &self.codewords[self.best_index(llr)];
        InnerDecode {
            codeword: c.clone(),
            iterations: 1,
            converged: true,
            flops: (self.codewords.len() * self.length) as f64,
        }
    }
}

pub fn mld_exhaustive(generator: &BinaryMatrix, llr: &[f64]) -> Result<BitVec> {
    let m = Mld::new(generator)?;
    Ok(m.codewords[m.best_index(llr)].clone())
}
