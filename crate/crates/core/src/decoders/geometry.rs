//! Parity-check matrices built from geometry and from the dual code.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::sparse::{Provenance, SparseParityMatrix};
use crate::bits::BitVec;
use crate::codealg::{shift_permutation, CodeSpec};
use crate::error::{Error, Result};
use crate::gf2m::Field;

/// Largest dual dimension searched exhaustively.
pub const DUAL_MAX_DIM: usize = 30;

/// Incidence matrix of the lines of EG(`mu_dims`, 2^`subfield_bits`), whose
/// points are the elements of `field`.
pub fn eg_line_parity_matrix(
    field: &Field,
    mu_dims: u32,
    subfield_bits: u32,
) -> Result<SparseParityMatrix> {
    eg_flat_parity_matrix(field, mu_dims, subfield_bits, 1)
}

/// Incidence matrix of all `dim`-flats of EG(`mu_dims`, 2^`subfield_bits`):
/// cosets `a + V` of the `dim`-dimensional subspaces `V` of the field viewed
/// as a vector space over GF(2^s). Rows are sorted lexicographically.
pub fn eg_flat_parity_matrix(
    field: &Field,
    mu_dims: u32,
    subfield_bits: u32,
    dim: u32,
) -> Result<SparseParityMatrix> {
    if mu_dims == 0 || mu_dims * subfield_bits != field.m() {
        return Err(Error::InvalidGeometry(format!(
            "EG({mu_dims}, 2^{subfield_bits}) does not have 2^{} points",
            field.m()
        )));
    }
    if dim == 0 || dim > mu_dims {
        return Err(Error::InvalidGeometry(format!(
            "no {dim}-flats in a {mu_dims}-dimensional geometry"
        )));
    }
    let scalars = field.subfield_elements(subfield_bits)?;
    let size = field.size() as u32;

    // Grow subspaces one generator at a time, keyed by their sorted elements.
    let mut spaces: BTreeSet<Vec<u32>> = BTreeSet::from([vec![0]]);
    for _ in 0..dim {
        let mut next = BTreeSet::new();
        for v in &spaces {
            let members: BTreeSet<u32> = v.iter().copied().collect();
            for b in 1..size {
                if members.contains(&b) {
                    continue;
                }
                let mut span: Vec<u32> = v
                    .iter()
                    .flat_map(|&x| scalars.iter().map(move |&t| (x, t)))
                    .map(|(x, t)| x ^ field.mul(t, b))
                    .collect();
                span.sort_unstable();
                span.dedup();
                next.insert(span);
            }
        }
        spaces = next;
    }

    let mut flats: BTreeSet<Vec<usize>> = BTreeSet::new();
    for v in &spaces {
        let mut covered = vec![false; size as usize];
        for a in 0..size {
            if covered[a as usize] {
                continue;
            }
            let mut flat: Vec<usize> = v
                .iter()
                .map(|&x| {
                    covered[(a ^ x) as usize] = true;
                    field.position(a ^ x)
                })
                .collect();
            flat.sort_unstable();
            flats.insert(flat);
        }
    }
    Ok(SparseParityMatrix::new(
        field.size(),
        flats.into_iter().collect(),
        Provenance::EgLines,
    ))
}

/// All nonzero dual codewords of weight at most `max_row_weight`, closed
/// under the extended cyclic shift, as a parity-check matrix.
pub fn dual_orbit_parity_matrix(code: &CodeSpec, max_row_weight: usize) -> Result<SparseParityMatrix> {
    let dual = code.parity_check_matrix();
    let dim = dual.num_rows();
    if dim > DUAL_MAX_DIM {
        return Err(Error::DualTooLarge {
            dim,
            max: DUAL_MAX_DIM,
        });
    }
    let len = code.length();
    let words_per_row = len.div_ceil(64);
    let basis: Vec<&[u64]> = dual.rows().iter().map(|r| r.words()).collect();

    const CHUNK_BITS: usize = 16;
    let total = 1u64 << dim;
    let chunk = 1u64 << CHUNK_BITS.min(dim);
    let found: Vec<Vec<u64>> = (0..total / chunk)
        .into_par_iter()
        .flat_map_iter(|c| {
            let start = c * chunk;
            let mut acc = vec![0u64; words_per_row];
            let gray = start ^ (start >> 1);
            for (i, row) in basis.iter().enumerate() {
                if gray >> i & 1 == 1 {
                    xor_words(&mut acc, row);
                }
            }
            let mut local = Vec::new();
            for i in start..start + chunk {
                if i > start {
                    xor_words(&mut acc, basis[i.trailing_zeros() as usize]);
                }
                let w: u32 = acc.iter().map(|x| x.count_ones()).sum();
                if w > 0 && w as usize <= max_row_weight {
                    local.push(acc.clone());
                }
            }
            local
        })
        .collect();

    let perm = shift_permutation(len - 1, 1);
    let mut rows: BTreeSet<Vec<usize>> = BTreeSet::new();
    for words in found {
        let mut v = BitVec::from_words(len, words);
        for _ in 0..len - 1 {
            if !rows.insert(v.iter_ones().collect()) {
                break;
            }
            v = v.gather(&perm);
        }
    }
    if rows.is_empty() {
        return Err(Error::EmptyParityMatrix {
            max_weight: max_row_weight,
        });
    }
    let h = SparseParityMatrix::new(len, rows.into_iter().collect(), Provenance::DualOrbit);
    h.check_orthogonal(code.generator_matrix())?;
    Ok(h)
}

fn xor_words(acc: &mut [u64], row: &[u64]) {
    for (a, r) in acc.iter_mut().zip(row) {
        *a ^= r;
    }
}
