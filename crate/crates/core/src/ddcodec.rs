//! Derivative decoding: combine LLRs along a direction, decode the
//! descendant, and let every direction vote on every position.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::{BinaryMatrix, BitVec};
use crate::codealg::{cyclic_shift_values, CodeSpec};
use crate::decoders::{HalfLength, InnerDecode, Osd, SoftDecoder};
use crate::derivative::minimal_dd_basis;
use crate::error::{Error, Result};
use crate::gf2m::Field;
use crate::llr::{boxplus, clip, hard};

/// How a [`DirectionSet`] was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirectionMode {
    All,
    Random { k: usize, seed: u64 },
    Explicit,
}

/// Directions `α^b`, stored as exponents `b` in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionSet {
    n: usize,
    exponents: Vec<usize>,
    mode: DirectionMode,
}

impl DirectionSet {
    pub fn all(n: usize) -> Self {
        DirectionSet {
            n,
            exponents: (0..n).collect(),
            mode: DirectionMode::All,
        }
    }

    /// `k` distinct directions drawn uniformly with a seeded generator.
    pub fn random(n: usize, k: usize, seed: u64) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidDirections(format!(
                "cannot draw {k} of {n} directions"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut exponents = rand::seq::index::sample(&mut rng, n, k).into_vec();
        exponents.sort_unstable();
        Ok(DirectionSet {
            n,
            exponents,
            mode: DirectionMode::Random { k, seed },
        })
    }

    pub fn from_exponents(n: usize, exponents: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut exponents: Vec<usize> = exponents.into_iter().collect();
        exponents.sort_unstable();
        if exponents.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidDirections("duplicate direction".into()));
        }
        if exponents.last().is_some_and(|&b| b >= n) {
            return Err(Error::InvalidDirections(format!("exponent out of range [0, {n})")));
        }
        Ok(DirectionSet {
            n,
            exponents,
            mode: DirectionMode::Explicit,
        })
    }

    /// Directions given as field elements; zero is rejected.
    pub fn from_elements(field: &Field, elements: &[u32]) -> Result<Self> {
        let exps = elements
            .iter()
            .map(|&x| field.log(x).map(|e| e as usize).ok_or(Error::ZeroDirection))
            .collect::<Result<Vec<_>>>()?;
        DirectionSet::from_exponents(field.n(), exps)
    }

    /// Parses `all` or `k:<count>:<seed>`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s == "all" {
            return Ok(DirectionSet::all(n));
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["k", k, seed] => {
                let k = k
                    .parse()
                    .map_err(|_| Error::InvalidDirections(format!("bad count in {s:?}")))?;
                let seed = seed
                    .parse()
                    .map_err(|_| Error::InvalidDirections(format!("bad seed in {s:?}")))?;
                DirectionSet::random(n, k, seed)
            }
            _ => Err(Error::InvalidDirections(format!(
                "expected \"all\" or \"k:<count>:<seed>\", got {s:?}"
            ))),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn contains(&self, b: usize) -> bool {
        self.exponents.binary_search(&(b % self.n)).is_ok()
    }

    pub fn mode(&self) -> DirectionMode {
        self.mode
    }

    pub fn elements(&self, field: &Field) -> Vec<u32> {
        self.exponents.iter().map(|&b| field.alpha_pow(b as i64)).collect()
    }
}

impl fmt::Display for DirectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            DirectionMode::All => f.write_str("all"),
            DirectionMode::Random { k, seed } => write!(f, "k:{k}:{seed}"),
            DirectionMode::Explicit => {
                let parts: Vec<String> = self.exponents.iter().map(|b| b.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

/// Box-plus of every position with its partner.
pub fn derivative_llr_with(llr: &[f64], partner: &[usize]) -> Vec<f64> {
    llr.iter()
        .zip(partner)
        .map(|(&a, &p)| boxplus(a, llr[p]))
        .collect()
}

/// LLRs of the derivative in direction `beta`: the value at `x` is the
/// box-plus of the inputs at `x` and `x + beta`.
pub fn derivative_llr(field: &Field, llr: &[f64], beta: u32) -> Result<Vec<f64>> {
    if beta == 0 {
        return Err(Error::ZeroDirection);
    }
    check_len(field, llr.len())?;
    Ok(derivative_llr_with(llr, &field.translation(beta)))
}

pub fn get_vote_with(llr: &[f64], estimate: &BitVec, partner: &[usize]) -> Vec<f64> {
    partner
        .iter()
        .enumerate()
        .map(|(x, &p)| if estimate.get(x) { -llr[p] } else { llr[p] })
        .collect()
}

/// Soft vote `(1 − 2â_x) · L_{x+β}` from a derivative estimate `â`.
pub fn get_vote(field: &Field, llr: &[f64], estimate: &BitVec, beta: u32) -> Result<Vec<f64>> {
    check_len(field, llr.len())?;
    check_len(field, estimate.len())?;
    Ok(get_vote_with(llr, estimate, &field.translation(beta)))
}

fn check_len(field: &Field, len: usize) -> Result<()> {
    if len != field.size() {
        return Err(Error::LengthMismatch {
            expected: field.size(),
            found: len,
        });
    }
    Ok(())
}

/// A decoder for the derivative in direction `α^b`.
pub trait DirectionalDecoder: Send + Sync {
    fn decode_direction(&self, b: usize, llr: &[f64]) -> InnerDecode;
}

/// The cyclic descendant does not depend on the direction, so any decoder
/// for it serves every direction.
impl<D: SoftDecoder> DirectionalDecoder for D {
    fn decode_direction(&self, _b: usize, llr: &[f64]) -> InnerDecode {
        self.decode(llr)
    }
}

/// One decoder per direction exponent, e.g. for per-direction minimal
/// descendants.
pub struct PerDirection<D> {
    decoders: Vec<Option<D>>,
}

impl<D: SoftDecoder> PerDirection<D> {
    /// Builds the decoder for each direction exponent with `make`.
    pub fn new(directions: &DirectionSet, mut make: impl FnMut(usize) -> Result<D>) -> Result<Self> {
        let mut decoders: Vec<Option<D>> = (0..directions.n()).map(|_| None).collect();
        for &b in directions.exponents() {
            decoders[b] = Some(make(b)?);
        }
        Ok(PerDirection { decoders })
    }
}

impl<D: SoftDecoder> DirectionalDecoder for PerDirection<D> {
    fn decode_direction(&self, b: usize, llr: &[f64]) -> InnerDecode {
        self.decoders[b]
            .as_ref()
            .expect("no decoder for this direction")
            .decode(llr)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeReport {
    pub codeword: BitVec,
    pub iterations: usize,
    /// The final hard decision satisfies every parity check.
    pub converged: bool,
    pub flops: f64,
    /// Inner-decoder iterations summed over outer iterations, one entry per
    /// direction (in ascending exponent order).
    pub inner_iterations: Vec<usize>,
    pub inner_calls: usize,
}

impl DecodeReport {
    pub fn avg_inner_iterations(&self) -> f64 {
        if self.inner_calls == 0 {
            return 0.0;
        }
        self.inner_iterations.iter().sum::<usize>() as f64 / self.inner_calls as f64
    }
}

/// `iterations · (5·|B|·n + |B|·Ω)`, rounded to the nearest integer.
/// `iterations` may be an average.
pub fn flop_account(iterations: f64, n: usize, num_directions: usize, omega: f64) -> u64 {
    let b = num_directions as f64;
    (iterations * (5.0 * b * n as f64 + b * omega)).round() as u64
}

/// Shared state of both derivative decoding procedures.
pub struct DerivativeDecoder {
    field: Arc<Field>,
    parity: BinaryMatrix,
    directions: DirectionSet,
    max_iter: usize,
    parallel: bool,
    // translation tables per direction exponent in `directions`
    partners: Vec<Vec<usize>>,
    unit_partner: Vec<usize>,
}

impl DerivativeDecoder {
    /// `parity` must span the dual of the code being decoded.
    pub fn new(
        field: Arc<Field>,
        parity: BinaryMatrix,
        directions: DirectionSet,
        max_iter: usize,
    ) -> Result<Self> {
        check_len(&field, parity.num_cols())?;
        if directions.n() != field.n() {
            return Err(Error::InvalidDirections(format!(
                "directions are for n = {}, field has n = {}",
                directions.n(),
                field.n()
            )));
        }
        let partners = directions
            .elements(&field)
            .into_iter()
            .map(|beta| field.translation(beta))
            .collect();
        let unit_partner = field.translation(1);
        Ok(DerivativeDecoder {
            field,
            parity,
            directions,
            max_iter,
            parallel: false,
            partners,
            unit_partner,
        })
    }

    pub fn for_code(code: &CodeSpec, directions: DirectionSet, max_iter: usize) -> Result<Self> {
        DerivativeDecoder::new(
            code.field().clone(),
            code.parity_check_matrix(),
            directions,
            max_iter,
        )
    }

    /// Runs the per-direction decodes of one iteration on the rayon pool.
    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn directions(&self) -> &DirectionSet {
        &self.directions
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Derivative decoding with a decoder for the cyclic descendant, or for
    /// each direction's own descendant.
    pub fn decode_cyclic(&self, llr: &[f64], decoder: &impl DirectionalDecoder) -> DecodeReport {
        self.run(llr, |i, b, cur| {
            let partner = &self.partners[i];
            let d = derivative_llr_with(cur, partner);
            let out = decoder.decode_direction(b, &d);
            let vote = get_vote_with(cur, &out.codeword, partner);
            (vote, out)
        })
    }

    /// Derivative decoding with one decoder for the minimal descendant in
    /// direction `α^0`. Direction `α^b` is handled by shifting `L` by `b`,
    /// decoding in direction `α^0`, and shifting the vote back.
    pub fn decode_minimal(&self, llr: &[f64], decoder: &impl SoftDecoder) -> DecodeReport {
        self.run(llr, |_, b, cur| {
            // the running shift L^(b) of the sequential procedure, computed
            // directly so directions can be processed independently
            let shifted = cyclic_shift_values(cur, b as i64);
            let d = derivative_llr_with(&shifted, &self.unit_partner);
            let out = decoder.decode(&d);
            let vote = get_vote_with(&shifted, &out.codeword, &self.unit_partner);
            (cyclic_shift_values(&vote, -(b as i64)), out)
        })
    }

    fn run<F>(&self, llr: &[f64], per_direction: F) -> DecodeReport
    where
        F: Fn(usize, usize, &[f64]) -> (Vec<f64>, InnerDecode) + Sync,
    {
        let len = self.field.size();
        assert_eq!(llr.len(), len, "LLR length does not match the code");
        let nb = self.directions.len();
        let mut cur: Vec<f64> = llr.iter().map(|&x| clip(x)).collect();
        let mut estimate = BitVec::from_fn(len, |i| hard(cur[i]));
        let mut report = DecodeReport {
            codeword: estimate.clone(),
            iterations: 0,
            converged: false,
            flops: 0.0,
            inner_iterations: vec![0; nb],
            inner_calls: 0,
        };
        if nb == 0 {
            report.converged = self.parity.annihilates(&estimate);
            return report;
        }
        let exps = self.directions.exponents();
        for _ in 0..self.max_iter {
            report.iterations += 1;
            let results: Vec<(Vec<f64>, InnerDecode)> = if self.parallel {
                (0..nb)
                    .into_par_iter()
                    .map(|i| per_direction(i, exps[i], &cur))
                    .collect()
            } else {
                (0..nb).map(|i| per_direction(i, exps[i], &cur)).collect()
            };
            // deterministic: ascending direction exponent
            let mut sum = vec![0.0; len];
            for (i, (vote, inner)) in results.iter().enumerate() {
                for (s, v) in sum.iter_mut().zip(vote) {
                    *s += v;
                }
                report.inner_iterations[i] += inner.iterations;
                report.flops += inner.flops;
            }
            report.inner_calls += nb;
            report.flops += 5.0 * (nb * len) as f64;
            for s in &mut sum {
                *s /= nb as f64;
            }
            cur = sum;
            estimate = BitVec::from_fn(len, |i| hard(cur[i]));
            if self.parity.annihilates(&estimate) {
                report.converged = true;
                break;
            }
        }
        report.codeword = estimate;
        report
    }
}

/// OSD of the minimal descendant in direction `α^0`, run on half length:
/// its words are constant on the pairs `{x, x + 1}`, so only the positions
/// whose field element has a zero constant coordinate are kept.
pub fn minimal_dd_half_osd(code: &CodeSpec, order: usize) -> Result<HalfLength<Osd>> {
    let field = code.field();
    let basis = minimal_dd_basis(code, 1)?.basis;
    let transversal: Vec<usize> = (0..field.size())
        .filter(|&p| field.element_at(p) & 1 == 0)
        .collect();
    let osd = Osd::new(basis.select_columns(&transversal), order)?;
    Ok(HalfLength::new(osd, transversal, &field.translation(1)))
}

/// Full-length OSD of the minimal descendant in direction `α^0`.
pub fn minimal_dd_osd(code: &CodeSpec, order: usize) -> Result<Osd> {
    Osd::new(minimal_dd_basis(code, 1)?.basis, order)
}

/// Embeds LLRs of a length `2^m − 1` cyclic code as an extended-code input
/// with an erased parity position.
pub fn extend_with_erasure(cyclic_llr: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(cyclic_llr.len() + 1);
    out.push(0.0);
    out.extend_from_slice(cyclic_llr);
    out
}

/// Drops the parity position of an extended word.
pub fn cyclic_part(word: &BitVec) -> BitVec {
    BitVec::from_fn(word.len() - 1, |i| word.get(i + 1))
}
