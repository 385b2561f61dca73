use super::sparse::SparseParityMatrix;
use super::{InnerDecode, SoftDecoder};
use crate::bits::BitVec;
use crate::llr::{atanh2, clip};

/// Flooding sum-product decoder with the exact tanh rule.
///
/// Iterations count from 1; decoding stops once every check is satisfied by
/// the posterior hard decision. A posterior of exactly zero is an erasure and
/// blocks convergence, so an all-zero input never converges.
#[derive(Clone, Debug)]
pub struct Spa {
    h: SparseParityMatrix,
    max_iter: usize,
    // edges are numbered row by row; check c owns edges check_start[c]..check_start[c+1]
    check_start: Vec<usize>,
    edge_var: Vec<usize>,
    // for each variable, the edges touching it
    var_edges: Vec<Vec<usize>>,
}

impl Spa {
    pub fn new(h: SparseParityMatrix, max_iter: usize) -> Self {
        let mut check_start = Vec::with_capacity(h.num_rows() + 1);
        let mut edge_var = Vec::with_capacity(h.num_edges());
        let mut var_edges = vec![Vec::new(); h.num_cols()];
        check_start.push(0);
        for row in h.rows() {
            for &v in row {
                var_edges[v].push(edge_var.len());
                edge_var.push(v);
            }
            check_start.push(edge_var.len());
        }
        Spa {
            h,
            max_iter,
            check_start,
            edge_var,
            var_edges,
        }
    }

    pub fn parity_matrix(&self) -> &SparseParityMatrix {
        &self.h
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }

    /// Flops of one iteration: three per edge for the check products, two
    /// for the atanh and clipping, two for the variable sums, plus the
    /// hard decisions.
    pub fn flops_per_iteration(&self) -> f64 {
        (7 * self.edge_var.len() + self.h.num_cols()) as f64
    }
}

impl SoftDecoder for Spa {
    fn length(&self) -> usize {
        self.h.num_cols()
    }

    fn decode(&self, llr: &[f64]) -> InnerDecode {
        let n = self.h.num_cols();
        assert_eq!(llr.len(), n, "LLR length does not match H");
        let channel: Vec<f64> = llr.iter().map(|&x| clip(x)).collect();
        let mut v2c: Vec<f64> = self.edge_var.iter().map(|&v| channel[v]).collect();
        let mut c2v = vec![0.0; v2c.len()];
        let mut posterior = channel.clone();
        let mut t = Vec::new();
        let mut suffix = Vec::new();

        let mut iterations = 0;
        let mut converged = false;
        while iterations < self.max_iter {
            iterations += 1;
            for c in 0..self.h.num_rows() {
                let (lo, hi) = (self.check_start[c], self.check_start[c + 1]);
                t.clear();
                t.extend(v2c[lo..hi].iter().map(|&x| (x / 2.0).tanh()));
                suffix.clear();
                suffix.resize(t.len() + 1, 1.0);
                for i in (0..t.len()).rev() {
                    suffix[i] = suffix[i + 1] * t[i];
                }
                let mut prefix = 1.0;
                for i in 0..t.len() {
                    c2v[lo + i] = atanh2(prefix * suffix[i + 1]);
                    prefix *= t[i];
                }
            }
            for v in 0..n {
                let edges = &self.var_edges[v];
                posterior[v] = channel[v] + edges.iter().map(|&e| c2v[e]).sum::<f64>();
                for &e in edges {
                    v2c[e] = clip(posterior[v] - c2v[e]);
                }
            }
            if posterior.iter().all(|&p| p != 0.0) && self.satisfied(&posterior) {
                converged = true;
                break;
            }
        }
        InnerDecode {
            codeword: BitVec::from_fn(n, |v| posterior[v] < 0.0),
            iterations,
            converged,
            flops: iterations as f64 * self.flops_per_iteration(),
        }
    }
}

impl Spa {
    fn satisfied(&self, posterior: &[f64]) -> bool {
        self.h
            .rows()
            .iter()
            .all(|r| r.iter().filter(|&&v| posterior[v] < 0.0).count() % 2 == 0)
    }
}
