//! Component soft-decision decoders and parity-check matrix builders.

mod geometry;
mod mld;
mod osd;
mod spa;
mod sparse;

pub use geometry::{dual_orbit_parity_matrix, eg_flat_parity_matrix, eg_line_parity_matrix, DUAL_MAX_DIM};
pub use mld::{mld_exhaustive, Mld};
pub use osd::{osd_candidate_count, osd_decode, osd_flop_estimate, Osd};
pub use spa::Spa;
pub use sparse::{Provenance, SparseParityMatrix};

use crate::bits::BitVec;

/// Result of one component decode.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerDecode {
    pub codeword: BitVec,
    pub iterations: usize,
    /// The output passed the decoder's own validity check (syndrome for
    /// SPA; always true for OSD and MLD, which only emit codewords).
    pub converged: bool,
    /// Estimated floating-point operations spent.
    pub flops: f64,
}

/// A decoder mapping an LLR vector (positive favours bit 0) to a hard
/// decision.
pub trait SoftDecoder: Send + Sync {
    fn length(&self) -> usize;
    fn decode(&self, llr: &[f64]) -> InnerDecode;
}

impl<D: SoftDecoder + ?Sized> SoftDecoder for Box<D> {
    fn length(&self) -> usize {
        (**self).length()
    }

    fn decode(&self, llr: &[f64]) -> InnerDecode {
        (**self).decode(llr)
    }
}

/// Restricts a full-length decoder input to a transversal of a pairing and
/// expands the result back.
///
/// Valid for codes whose words take equal values on paired positions, such
/// as minimal derivative descendants in direction `α^0` paired by `x ↔ x+1`.
pub struct HalfLength<D> {
    inner: D,
    transversal: Vec<usize>,
    // index into `transversal` for every full-length position
    source: Vec<usize>,
}

impl<D: SoftDecoder> HalfLength<D> {
    /// `transversal[i]` is a full-length position; `partner[p]` the position
    /// paired with `p`.
    pub fn new(inner: D, transversal: Vec<usize>, partner: &[usize]) -> Self {
        assert_eq!(inner.length(), transversal.len());
        let mut source = vec![usize::MAX; partner.len()];
        for (i, &p) in transversal.iter().enumerate() {
            source[p] = i;
            source[partner[p]] = i;
        }
        assert!(source.iter().all(|&s| s != usize::MAX), "not a transversal");
        HalfLength {
            inner,
            transversal,
            source,
        }
    }

    pub fn inner(&self) -> &D {
        &self.inner
    }
}

impl<D: SoftDecoder> SoftDecoder for HalfLength<D> {
    fn length(&self) -> usize {
        self.source.len()
    }

    fn decode(&self, llr: &[f64]) -> InnerDecode {
        let half: Vec<f64> = self.transversal.iter().map(|&p| llr[p]).collect();
        let out = self.inner.decode(&half);
        InnerDecode {
            codeword: BitVec::from_fn(self.source.len(), |p| out.codeword.get(self.source[p])),
            ..out
        }
    }
}
