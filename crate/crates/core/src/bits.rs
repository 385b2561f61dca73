//! Packed binary vectors and dense GF(2) matrices.

use std::fmt;

/// A binary vector packed into 64-bit words, bit `i` in word `i / 64`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVec {
            len,
            words: vec![u64::MAX; word_count(len)],
        };
        v.mask_tail();
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = BitVec::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(word_count(len), 0);
        let mut v = BitVec { len, words };
        v.mask_tail();
        v
    }

    fn mask_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        self.get(i) as u8
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i >> 6] ^= 1u64 << (i & 63);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + t)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.bit(i)).collect()
    }

    /// Highest set bit, if any.
    pub fn last_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    /// New vector with `out[i] = self[perm[i]]`.
    pub fn gather(&self, perm: &[usize]) -> BitVec {
        BitVec::from_fn(perm.len(), |i| self.get(perm[i]))
    }

    /// New vector with `out[perm[i]] = self[i]`.
    pub fn scatter(&self, perm: &[usize]) -> BitVec {
        let mut out = BitVec::zeros(perm.len());
        for i in self.iter_ones() {
            out.set(perm[i], true);
        }
        out
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[{}]", self)
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense row-major GF(2) matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

/// Output of Gaussian elimination: the reduced matrix without zero rows and
/// the pivot column of each row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: BinaryMatrix,
    pub pivots: Vec<usize>,
}

impl BinaryMatrix {
    pub fn new(cols: usize) -> Self {
        BinaryMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        BinaryMatrix { cols, rows }
    }

    pub fn from_bit_rows(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        BinaryMatrix::from_rows(cols, rows.iter().map(|r| BitVec::from_bits(r)).collect())
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<BitVec> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    /// Reduced row echelon form, pivoting on the leftmost available column.
    pub fn rref(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(c)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        rows.truncate(rank);
        Echelon {
            matrix: BinaryMatrix {
                cols: self.cols,
                rows,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : M xᵀ = 0}`, one row per free column.
    pub fn null_space(&self) -> BinaryMatrix {
        let ech = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut out = BinaryMatrix::new(self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (row, &p) in ech.matrix.rows.iter().zip(&ech.pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            out.push_row(v);
        }
        out
    }

    /// `M vᵀ` as a bit vector of length `num_rows`.
    pub fn syndrome(&self, v: &BitVec) -> BitVec {
        BitVec::from_fn(self.rows.len(), |r| self.rows[r].dot(v))
    }

    pub fn annihilates(&self, v: &BitVec) -> bool {
        self.rows.iter().all(|r| !r.dot(v))
    }

    /// Row-space equality via canonical RREF.
    pub fn same_row_space(&self, other: &BinaryMatrix) -> bool {
        self.cols == other.cols && self.rref().matrix == other.rref().matrix
    }

    pub fn row_space_contains(&self, v: &BitVec) -> bool {
        let ech = self.rref();
        let mut w = v.clone();
        for (row, &p) in ech.matrix.rows.iter().zip(&ech.pivots) {
            if w.get(p) {
                w.xor_assign(row);
            }
        }
        w.is_zero()
    }

    /// Linear combination of rows selected by the set bits of `msg`.
    pub fn encode(&self, msg: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.cols);
        for i in msg.iter_ones() {
            out.xor_assign(&self.rows[i]);
        }
        out
    }

    pub fn stack(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BinaryMatrix {
            cols: self.cols,
            rows,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> BinaryMatrix {
        BinaryMatrix {
            cols: cols.len(),
            rows: self.rows.iter().map(|r| r.gather(cols)).collect(),
        }
    }

    /// Plain-text rendering: one row per line of `0`/`1` characters.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}
