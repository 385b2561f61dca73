use super::{InnerDecode, SoftDecoder};
use crate::bits::{BinaryMatrix, BitVec};
use crate::error::{Error, Result};

/// `Σ_{i=0}^{l} C(k, i)`: re-encodings tried by OSD(l).
pub fn osd_candidate_count(k: usize, order: usize) -> u64 {
    (0..=order.min(k)).map(|i| binomial(k, i)).sum()
}

/// `n log2 n + Σ_{i=1}^{l} C(k, i)·(n − k)`: sorting plus reprocessing.
pub fn osd_flop_estimate(n: usize, k: usize, order: usize) -> f64 {
    let sort = n as f64 * (n as f64).log2();
    let reprocess: u64 = (1..=order.min(k)).map(|i| binomial(k, i)).sum();
    sort + (reprocess * (n - k) as u64) as f64
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// Ordered statistics decoder of order `l` for a full-rank generator matrix.
#[derive(Clone, Debug)]
pub struct Osd {
    generator: BinaryMatrix,
    order: usize,
}

impl Osd {
    pub fn new(generator: BinaryMatrix, order: usize) -> Result<Self> {
        let rank = generator.rank();
        if rank != generator.num_rows() {
            return Err(Error::RankDeficient {
                rank,
                k: generator.num_rows(),
            });
        }
        Ok(Osd { generator, order })
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dimension(&self) -> usize {
        self.generator.num_rows()
    }

    /// Returns the best candidate and its disagreement cost with the hard
    /// decision, `Σ_{c_i ≠ h_i} |L_i|`. Minimising this cost maximises the
    /// correlation `Σ (1 − 2c_i) L_i`.
    pub fn decode_with_cost(&self, llr: &[f64]) -> (BitVec, f64) {
        let n = self.generator.num_cols();
        assert_eq!(llr.len(), n, "LLR length does not match G");
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| llr[b].abs().total_cmp(&llr[a].abs()));
        let reliab: Vec<f64> = perm.iter().map(|&p| llr[p].abs()).collect();
        let hard = BitVec::from_fn(n, |j| llr[perm[j]] < 0.0);

        let permuted = BinaryMatrix::from_rows(
            n,
            self.generator.rows().iter().map(|r| r.gather(&perm)).collect(),
        );
        let echelon = permuted.rref();
        let basis = echelon.matrix.rows();

        let mut base = BitVec::zeros(n);
        for (row, &p) in basis.iter().zip(&echelon.pivots) {
            if hard.get(p) {
                base.xor_assign(row);
            }
        }
        let cost = |c: &BitVec| -> f64 { c.xor(&hard).iter_ones().map(|j| reliab[j]).sum() };

        let mut best = base.clone();
        let mut best_cost = cost(&base);
        let mut stack = vec![base];
        let mut idx = Vec::new();
        for weight in 1..=self.order.min(basis.len()) {
            enumerate(basis, weight, 0, &mut idx, &mut stack, &mut |c| {
                let v = cost(c);
                if v < best_cost {
                    best_cost = v;
                    best = c.clone();
                }
            });
        }
        (best.scatter(&perm), best_cost)
    }
}

// Visits all `weight`-subsets of the basis rows in lexicographic order.
fn enumerate(
    basis: &[BitVec],
    weight: usize,
    from: usize,
    idx: &mut Vec<usize>,
    stack: &mut Vec<BitVec>,
    visit: &mut impl FnMut(&BitVec),
) {
    if idx.len() == weight {
        visit(stack.last().unwrap());
        return;
    }
    for i in from..basis.len() - (weight - idx.len() - 1) {
        let next = stack.last().unwrap().xor(&basis[i]);
        stack.push(next);
        idx.push(i);
        enumerate(basis, weight, i + 1, idx, stack, visit);
        idx.pop();
        stack.pop();
    }
}

impl SoftDecoder for Osd {
    fn length(&self) -> usize {
        self.generator.num_cols()
    }

    fn decode(&self, llr: &[f64]) -> InnerDecode {
        let (codeword, _) = self.decode_with_cost(llr);
        InnerDecode {
            codeword,
            iterations: 1,
            converged: true,
            flops: osd_flop_estimate(self.length(), self.dimension(), self.order),
        }
    }
}

pub fn osd_decode(generator: &BinaryMatrix, llr: &[f64], order: usize) -> Result<BitVec> {
    Ok(Osd::new(generator.clone(), order)?.decode_with_cost(llr).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(osd_candidate_count(79, 3), 79079 + 3081 + 79 + 1);
        assert_eq!(osd_candidate_count(5, 9), 32);
        assert_eq!(osd_flop_estimate(256, 79, 0), 2048.0);
        assert_eq!(osd_flop_estimate(256, 79, 1), 2048.0 + 79.0 * 177.0);
    }

    #[test]
    fn rank_deficient_rejected() {
        let g = BinaryMatrix::from_bit_rows(&[&[1, 1, 0], &[1, 1, 0]]);
        assert!(matches!(
            Osd::new(g, 1),
            Err(Error::RankDeficient { rank: 1, k: 2 })
        ));
    }

    #[test]
    fn order_zero_noiseless() {
        let g = BinaryMatrix::from_bit_rows(&[
            &[1, 0, 0, 0, 1, 1, 0],
            &[0, 1, 0, 0, 1, 0, 1],
            &[0, 0, 1, 0, 0, 1, 1],
            &[0, 0, 0, 1, 1, 1, 1],
        ]);
        let c = g.encode(&BitVec::from_bits(&[1, 0, 1, 1]));
        let llr: Vec<f64> = c.to_bits().iter().map(|&b| 3.0 - 6.0 * b as f64).collect();
        assert_eq!(osd_decode(&g, &llr, 0).unwrap(), c);
    }
}
