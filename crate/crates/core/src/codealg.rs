//! Extended binary cyclic codes described by their Mattson–Solomon exponent
//! sets.
//!
//! A codeword of the extended code of length `2^m` is indexed by the field
//! elements `0, α^0, …, α^{n-1}` (see [`Field::position`]). The cyclic part
//! `a_0 … a_{n-1}` sits at positions `1 ..= n`, position 0 carries the overall
//! parity `A_0 = a(1)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::bits::{BinaryMatrix, BitVec};
use crate::error::{Error, Result};
use crate::gf2m::{coset_closure, coset_representatives, Field};
use crate::poly::Gf2Poly;

/// A subset of `[n]` closed under doubling mod `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentSet {
    n: usize,
    members: BTreeSet<usize>,
}

impl ExponentSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        for &s in &members {
            if s >= n {
                return Err(Error::Parse(format!("exponent {s} out of range [0, {n})")));
            }
            if !members.contains(&(2 * s % n)) {
                return Err(Error::NotConjugacyClosed { n, member: s });
            }
        }
        Ok(ExponentSet { n, members })
    }

    /// The closure `cc(seeds)`.
    pub fn closure_of(n: usize, seeds: impl IntoIterator<Item = usize>) -> Self {
        let seeds: BTreeSet<usize> = seeds.into_iter().map(|s| s % n).collect();
        ExponentSet {
            n,
            members: coset_closure(&seeds, n),
        }
    }

    pub fn full(n: usize) -> Self {
        ExponentSet {
            n,
            members: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: usize) -> bool {
        self.members.contains(&s)
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// The representative set `cr(S)`.
    pub fn representatives(&self) -> BTreeSet<usize> {
        coset_representatives(&self.members, self.n)
    }

    pub fn is_subset(&self, other: &ExponentSet) -> bool {
        self.n == other.n && self.members.is_subset(&other.members)
    }

    /// `deg(S)`: the largest binary weight among the members.
    pub fn degree(&self) -> u32 {
        self.members.iter().map(|s| s.count_ones()).max().unwrap_or(0)
    }
}

/// Finite-field Fourier coefficients `A_0 … A_{n-1}` in vector form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsSpectrum(pub Vec<u32>);

impl MsSpectrum {
    pub fn support(&self) -> BTreeSet<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(j, _)| j)
            .collect()
    }

    pub fn satisfies_conjugacy(&self, field: &Field) -> bool {
        let n = self.0.len();
        (0..n).all(|j| self.0[2 * j % n] == field.mul(self.0[j], self.0[j]))
    }
}

/// `A_j = a(α^{-j})` for a binary vector of length `n`.
pub fn ms_transform(field: &Field, a: &BitVec) -> MsSpectrum {
    let n = field.n();
    assert_eq!(a.len(), n, "cyclic part must have length 2^m - 1");
    let ones: Vec<usize> = a.iter_ones().collect();
    MsSpectrum(
        (0..n)
            .map(|j| {
                ones.iter()
                    .fold(0, |acc, &i| acc ^ field.alpha_pow(-((i * j % n) as i64)))
            })
            .collect(),
    )
}

/// Evaluates `A(z)` at `α^0 … α^{n-1}`; with `extended` the vector is
/// prefixed by `A(0) = A_0`.
pub fn ms_evaluate(field: &Field, spectrum: &MsSpectrum, extended: bool) -> Result<BitVec> {
    let n = field.n();
    assert_eq!(spectrum.0.len(), n);
    let offset = extended as usize;
    let mut out = BitVec::zeros(n + offset);
    if extended {
        match spectrum.0[0] {
            0 => {}
            1 => out.set(0, true),
            _ => return Err(Error::NonBinaryResult { position: 0 }),
        }
    }
    let support: Vec<usize> = spectrum.support().into_iter().collect();
    for i in 0..n {
        let v = support.iter().fold(0, |acc, &j| {
            acc ^ field.mul(spectrum.0[j], field.alpha_pow((i * j % n) as i64))
        });
        match v {
            0 => {}
            1 => out.set(i + offset, true),
            _ => return Err(Error::NonBinaryResult { position: i + offset }),
        }
    }
    Ok(out)
}

/// `{j ∈ [n] : g(α^{-j}) ≠ 0}`.
pub fn exponent_set_from_generator(field: &Field, g: &Gf2Poly) -> Result<ExponentSet> {
    let n = field.n();
    if !g.divides(&Gf2Poly::x_n_minus_1(n)) {
        return Err(Error::NotADivisor { n });
    }
    let members = (0..n).filter(|&j| g.eval(field, field.alpha_pow(-(j as i64))) != 0);
    ExponentSet::new(n, members)
}

/// `g(x) = ∏_{j ∉ S} (x - α^{-j})`.
pub fn generator_from_exponent_set(field: &Field, set: &ExponentSet) -> Gf2Poly {
    let n = field.n();
    assert_eq!(set.n(), n);
    // coefficients over GF(2^m), lowest degree first
    let mut coeffs = vec![1u32];
    for j in (0..n).filter(|&j| !set.contains(j)) {
        let root = field.alpha_pow(-(j as i64));
        let mut next = vec![0u32; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] ^= c;
            next[i] ^= field.mul(c, root);
        }
        coeffs = next;
    }
    let bits: Vec<u8> = coeffs
        .iter()
        .map(|&c| {
            assert!(c <= 1, "conjugacy-closed zero set yields a binary generator");
            c as u8
        })
        .collect();
    Gf2Poly::from_coeffs(&bits)
}

/// Exponent set of the narrow-sense BCH code with designed distance `delta`:
/// zeros `α^1 … α^{δ-1}` and their conjugates.
pub fn bch_exponent_set(n: usize, delta: usize) -> ExponentSet {
    let zeros = coset_closure(&(1..delta.min(n + 1)).map(|z| z % n).collect(), n);
    ExponentSet {
        n,
        members: (0..n).filter(|j| !zeros.contains(&((n - j) % n))).collect(),
    }
}

/// `{j ∈ [n] : wt(j) ≤ r}`, the exponent set of RM(r, m).
pub fn rm_exponent_set(r: u32, m: u32) -> ExponentSet {
    let n = (1usize << m) - 1;
    ExponentSet {
        n,
        members: (0..n).filter(|j| j.count_ones() <= r).collect(),
    }
}

/// Exponent set spanned by an extended-cyclic code given through any basis:
/// the union of the spectral supports of the basis rows.
pub fn exponent_set_of_code(field: &Field, basis: &BinaryMatrix) -> Result<ExponentSet> {
    let n = field.n();
    let positions: Vec<usize> = (1..=n).collect();
    let mut members = BTreeSet::new();
    for row in basis.rows() {
        members.extend(ms_transform(field, &row.gather(&positions)).support());
    }
    ExponentSet::new(n, members)
}

/// Permutation realising the `b`-cyclic shift `a^{(b)}_i = a_{i+b}` on
/// extended coordinates, with `∞ + b = ∞`. Apply with `gather`.
pub fn shift_permutation(n: usize, b: i64) -> Vec<usize> {
    let mut perm = Vec::with_capacity(n + 1);
    perm.push(0);
    perm.extend((0..n).map(|i| (i as i64 + b).rem_euclid(n as i64) as usize + 1));
    perm
}

pub fn cyclic_shift(v: &BitVec, b: i64) -> BitVec {
    v.gather(&shift_permutation(v.len() - 1, b))
}

pub fn cyclic_shift_values<T: Copy>(v: &[T], b: i64) -> Vec<T> {
    shift_permutation(v.len() - 1, b)
        .into_iter()
        .map(|p| v[p])
        .collect()
}

/// An extended binary cyclic code of length `2^m`.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    field: Arc<Field>,
    exponents: ExponentSet,
    gen_poly: Gf2Poly,
    generator: BinaryMatrix,
}

impl PartialEq for CodeSpec {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.exponents == other.exponents
    }
}

impl CodeSpec {
    pub fn from_generator(field: Arc<Field>, gen_poly: Gf2Poly) -> Result<Self> {
        let exponents = exponent_set_from_generator(&field, &gen_poly)?;
        let generator = build_generator_matrix(&field, &gen_poly, exponents.len());
        Ok(CodeSpec {
            field,
            exponents,
            gen_poly,
            generator,
        })
    }

    pub fn from_exponents(field: Arc<Field>, exponents: ExponentSet) -> Self {
        assert_eq!(exponents.n(), field.n());
        let gen_poly = generator_from_exponent_set(&field, &exponents);
        let generator = build_generator_matrix(&field, &gen_poly, exponents.len());
        CodeSpec {
            field,
            exponents,
            gen_poly,
            generator,
        }
    }

    pub fn bch(field: Arc<Field>, designed_distance: usize) -> Self {
        let set = bch_exponent_set(field.n(), designed_distance);
        CodeSpec::from_exponents(field, set)
    }

    pub fn reed_muller(field: Arc<Field>, r: u32) -> Self {
        let set = rm_exponent_set(r, field.m());
        CodeSpec::from_exponents(field, set)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Extended length `2^m`.
    pub fn length(&self) -> usize {
        self.field.size()
    }

    pub fn dimension(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &ExponentSet {
        &self.exponents
    }

    pub fn gen_poly(&self) -> &Gf2Poly {
        &self.gen_poly
    }

    pub fn generator_matrix(&self) -> &BinaryMatrix {
        &self.generator
    }

    /// A dense parity-check matrix: basis of the dual code.
    pub fn parity_check_matrix(&self) -> BinaryMatrix {
        self.generator.null_space()
    }

    pub fn encode(&self, msg: &BitVec) -> BitVec {
        self.generator.encode(msg)
    }

    /// Membership through the spectrum: support inside `S` and parity bit
    /// equal to `A_0`.
    pub fn is_member(&self, c: &BitVec) -> bool {
        let n = self.field.n();
        if c.len() != n + 1 {
            return false;
        }
        let positions: Vec<usize> = (1..=n).collect();
        let spec = ms_transform(&self.field, &c.gather(&positions));
        spec.0
            .iter()
            .enumerate()
            .all(|(j, &a)| a == 0 || self.exponents.contains(j))
            && spec.0[0] == c.bit(0) as u32
    }
}

fn build_generator_matrix(field: &Field, g: &Gf2Poly, k: usize) -> BinaryMatrix {
    let n = field.n();
    let parity = g.weight() & 1 == 1;
    let mut m = BinaryMatrix::new(n + 1);
    for r in 0..k {
        let mut row = BitVec::zeros(n + 1);
        row.set(0, parity);
        for i in g.iter_ones() {
            row.set((i + r) % n + 1, true);
        }
        m.push_row(row);
    }
    m
}

/// Classical BCH bound from the longest cyclic run of exponents missing from
/// `S`, reported for the extended code (rounded up to even, since every
/// extended codeword has even weight). A code with no zeros gets the trivial
/// bound 1.
pub fn bch_bound(set: &ExponentSet) -> usize {
    let delta = cyclic_bch_bound(set);
    if delta == 1 || delta.is_multiple_of(2) {
        delta
    } else {
        delta + 1
    }
}

/// BCH bound `δ` of the unextended cyclic code.
pub fn cyclic_bch_bound(set: &ExponentSet) -> usize {
    let n = set.n();
    let mut best = 0;
    let mut run = 0;
    for i in 0..2 * n {
        if set.contains(i % n) {
            run = 0;
        } else {
            run += 1;
            best = best.max(run);
        }
    }
    best.min(n) + 1
}

pub const EXHAUSTIVE_MAX_DIM: usize = 20;

/// Minimum weight over all nonzero codewords by Gray-code enumeration.
/// Returns 0 for the zero code.
pub fn min_distance_exhaustive(generator: &BinaryMatrix) -> Result<usize> {
    let k = generator.num_rows();
    if k > EXHAUSTIVE_MAX_DIM {
        return Err(Error::DimensionTooLarge {
            k,
            max: EXHAUSTIVE_MAX_DIM,
        });
    }
    if k == 0 {
        return Ok(0);
    }
    let mut c = BitVec::zeros(generator.num_cols());
    let mut best = usize::MAX;
    for i in 1u64..(1u64 << k) {
        c.xor_assign(generator.row(i.trailing_zeros() as usize));
        best = best.min(c.weight());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> Arc<Field> {
        Arc::new(Field::with_default_poly(4).unwrap())
    }

    fn example_code() -> CodeSpec {
        CodeSpec::from_generator(gf16(), Gf2Poly::from_hex("0x1D1").unwrap()).unwrap()
    }

    #[test]
    fn example_exponent_set() {
        let c = example_code();
        assert_eq!(
            c.exponents().members(),
            &[0, 1, 2, 4, 5, 8, 10].into_iter().collect()
        );
        assert_eq!(c.exponents().representatives(), [0, 1, 5].into_iter().collect());
        assert_eq!(c.dimension(), 7);
        assert_eq!(c.generator_matrix().rank(), 7);
    }

    #[test]
    fn generator_round_trip() {
        let f = gf16();
        let c = example_code();
        assert_eq!(generator_from_exponent_set(&f, c.exponents()).to_hex(), "0x1D1");
        assert_eq!(
            generator_from_exponent_set(&f, &ExponentSet::full(15)),
            Gf2Poly::one()
        );
        let all = exponent_set_from_generator(&f, &Gf2Poly::one()).unwrap();
        assert_eq!(all.len(), 15);
    }

    #[test]
    fn not_a_divisor() {
        let f = gf16();
        let err = exponent_set_from_generator(&f, &Gf2Poly::from_hex("0x3B").unwrap());
        assert!(matches!(err, Err(Error::NotADivisor { n: 15 })));
    }

    #[test]
    fn rejects_unclosed_sets() {
        assert!(matches!(
            ExponentSet::new(15, [1, 2, 4]),
            Err(Error::NotConjugacyClosed { member: 4, .. })
        ));
    }

    #[test]
    fn ms_edge_cases() {
        let f = gf16();
        let spec = ms_transform(&f, &BitVec::ones(15));
        assert_eq!(spec.0[0], 1);
        assert!(spec.0[1..].iter().all(|&a| a == 0));
        let mut impulse = BitVec::zeros(15);
        impulse.set(0, true);
        assert!(ms_transform(&f, &impulse).0.iter().all(|&a| a == 1));
        let mut a0 = vec![0u32; 15];
        a0[0] = 1;
        assert_eq!(ms_evaluate(&f, &MsSpectrum(a0), true).unwrap(), BitVec::ones(16));
        let mut bad = vec![0u32; 15];
        bad[1] = 1;
        assert!(matches!(
            ms_evaluate(&f, &MsSpectrum(bad), false),
            Err(Error::NonBinaryResult { .. })
        ));
    }

    #[test]
    fn rows_have_supported_spectra() {
        let c = example_code();
        let f = c.field().clone();
        let positions: Vec<usize> = (1..=15).collect();
        for row in c.generator_matrix().rows() {
            let s = ms_transform(&f, &row.gather(&positions));
            assert!(s.support().is_subset(c.exponents().members()));
            assert!(c.is_member(row));
        }
        assert!(c.is_member(&BitVec::zeros(16)));
        let mut bad = c.generator_matrix().row(0).clone();
        bad.flip(3);
        assert!(!c.is_member(&bad));
    }

    #[test]
    fn shift_theorem() {
        let c = example_code();
        let f = c.field().clone();
        let positions: Vec<usize> = (1..=15).collect();
        for row in c.generator_matrix().rows() {
            let a = ms_transform(&f, &row.gather(&positions));
            let shifted = cyclic_shift(row, 1);
            let b = ms_transform(&f, &shifted.gather(&positions));
            for j in 0..15 {
                assert_eq!(b.0[j], f.mul(a.0[j], f.alpha_pow(j as i64)));
            }
        }
    }

    #[test]
    fn rm_sets() {
        assert_eq!(rm_exponent_set(1, 4).members(), &[0, 1, 2, 4, 8].into_iter().collect());
        assert_eq!(rm_exponent_set(0, 4).members(), &[0].into_iter().collect());
        assert_eq!(rm_exponent_set(4, 4).len(), 15);
        for m in 2..=8u32 {
            for r in 0..m {
                let want: usize = (0..=r).map(|i| binomial(m as usize, i as usize)).sum();
                assert_eq!(rm_exponent_set(r, m).len(), want);
            }
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn bch_bounds() {
        assert_eq!(bch_bound(&ExponentSet::full(15)), 1);
        assert_eq!(bch_bound(&bch_exponent_set(127, 31)), 32);
        assert_eq!(bch_exponent_set(127, 31).len(), 36);
    }

    #[test]
    fn exhaustive_distance() {
        let f = gf16();
        let rep = CodeSpec::from_exponents(f.clone(), ExponentSet::new(15, [0]).unwrap());
        assert_eq!(min_distance_exhaustive(rep.generator_matrix()).unwrap(), 16);
        let had = CodeSpec::reed_muller(f, 1);
        assert_eq!(min_distance_exhaustive(had.generator_matrix()).unwrap(), 8);
        let big = BinaryMatrix::from_rows(4, vec![BitVec::zeros(4); 21]);
        assert!(matches!(
            min_distance_exhaustive(&big),
            Err(Error::DimensionTooLarge { k: 21, .. })
        ));
    }
}
