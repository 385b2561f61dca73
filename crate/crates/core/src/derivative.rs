//! Derivative descendants and ascendants of extended cyclic codes.
//!
//! The derivative of a codeword `a` in direction `β` is the vector whose entry
//! at field element `x` is `a[x + β] ⊕ a[x]`. On exponent sets, a minimal
//! cyclic code with coset `C_s` differentiates into `cc(P(s))`, where `P(s)`
//! holds the integers whose binary support is a proper subset of that of `s`.

use std::collections::BTreeSet;

use crate::bits::{BinaryMatrix, BitVec};
use crate::codealg::{cyclic_shift, CodeSpec, ExponentSet};
use crate::error::{Error, Result};
use crate::gf2m::{coset_closure, Field};

/// `P(s)`: all proper submasks of `s`. Empty for `s = 0`.
pub fn covered_set(s: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    if s == 0 {
        return out;
    }
    let mut sub = (s - 1) & s;
    loop {
        out.insert(sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & s;
    }
    out
}

/// Exponent set of the cyclic derivative descendant, the same for every
/// direction: `⋃_{s ∈ cr(S)} cc(P(s))`.
pub fn cyclic_dd(set: &ExponentSet) -> ExponentSet {
    let n = set.n();
    let mut members = BTreeSet::new();
    for s in set.representatives() {
        members.extend(coset_closure(&covered_set(s), n));
    }
    ExponentSet::new(n, members).expect("union of cosets is closed")
}

/// Exponent set of the cyclic derivative ascendant:
/// `{s ∈ [n] : cc(P(s)) ⊆ S}`.
pub fn cyclic_da(set: &ExponentSet) -> ExponentSet {
    let n = set.n();
    let mut members = BTreeSet::new();
    for s in crate::gf2m::all_representatives(n) {
        let closure = coset_closure(&covered_set(s), n);
        if closure.iter().all(|&t| set.contains(t)) {
            members.extend(crate::gf2m::cyclotomic_coset(s, n));
        }
    }
    ExponentSet::new(n, members).expect("union of cosets is closed")
}

/// Derivative of `a` given the translation table of its direction
/// (see [`Field::translation`]).
pub fn derivative_with(a: &BitVec, partner: &[usize]) -> BitVec {
    BitVec::from_fn(a.len(), |p| a.get(p) ^ a.get(partner[p]))
}

pub fn derivative_codeword(field: &Field, a: &BitVec, beta: u32) -> Result<BitVec> {
    if beta == 0 {
        return Err(Error::ZeroDirection);
    }
    if a.len() != field.size() {
        return Err(Error::LengthMismatch {
            expected: field.size(),
            found: a.len(),
        });
    }
    Ok(derivative_with(a, &field.translation(beta)))
}

/// Generator matrix (RREF) of the minimal derivative descendant in one
/// direction: the span of the derivatives of all codewords.
#[derive(Clone, Debug)]
pub struct MinimalDdBasis {
    pub direction: u32,
    pub basis: BinaryMatrix,
}

impl MinimalDdBasis {
    pub fn dimension(&self) -> usize {
        self.basis.num_rows()
    }
}

pub fn minimal_dd_basis(code: &CodeSpec, beta: u32) -> Result<MinimalDdBasis> {
    if beta == 0 {
        return Err(Error::ZeroDirection);
    }
    let partner = code.field().translation(beta);
    let derivs = BinaryMatrix::from_rows(
        code.length(),
        code.generator_matrix()
            .rows()
            .iter()
            .map(|r| derivative_with(r, &partner))
            .collect(),
    );
    Ok(MinimalDdBasis {
        direction: beta,
        basis: derivs.rref().matrix,
    })
}

/// Rank of all minimal descendants stacked together, over every nonzero
/// direction. Equals `|cyclic_dd(S)|`.
pub fn summed_minimal_dd_rank(code: &CodeSpec) -> usize {
    let field = code.field();
    let mut all = BinaryMatrix::new(code.length());
    for e in 0..field.n() {
        let basis = minimal_dd_basis(code, field.alpha_pow(e as i64)).unwrap();
        all = all.stack(&basis.basis).rref().matrix;
    }
    all.num_rows()
}

/// Checks that the `b`-cyclic shift of `Δ_{α^b} a` equals `Δ_1 a^{(b)}`.
pub fn check_equivalence_shift(field: &Field, a: &BitVec, b: i64) -> bool {
    let beta = field.alpha_pow(b);
    let lhs = cyclic_shift(&derivative_with(a, &field.translation(beta)), b);
    let rhs = derivative_with(&cyclic_shift(a, b), &field.translation(1));
    lhs == rhs
}

/// Restriction of `Δ_β a` to the transversal `T = β · span(α^1 … α^{m-1})`.
///
/// Entry `u` (for `u < 2^{m-1}`) is the derivative at `β · x_u`, where `x_u`
/// has coordinates `u` on `α^1 … α^{m-1}`. In these coordinates a derivative
/// of an RM(r, m) codeword is an RM(r-1, m-1) codeword;
/// [`coordinates_to_positions`] reorders it for membership tests.
pub fn rm_projection(field: &Field, a: &BitVec, beta: u32) -> Result<BitVec> {
    let d = derivative_codeword(field, a, beta)?;
    let half = field.size() / 2;
    Ok(BitVec::from_fn(half, |u| {
        d.get(field.position(field.mul(beta, (u as u32) << 1)))
    }))
}

/// Reorders a vector indexed by vector-form coordinates `u` into the
/// position order `0, α^0, α^1, …` of `field`.
pub fn coordinates_to_positions(field: &Field, v: &BitVec) -> BitVec {
    assert_eq!(v.len(), field.size());
    BitVec::from_fn(v.len(), |p| v.get(field.element_at(p) as usize))
}
