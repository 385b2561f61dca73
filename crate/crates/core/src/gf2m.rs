//! Arithmetic in GF(2^m) through log/antilog tables.
//!
//! Elements are stored in vector form: bit `j` of the `u32` is the coefficient
//! of `α^j` in the polynomial basis, with `α` a root of the primitive
//! polynomial. Codeword coordinates are indexed by field elements in the order
//! `0, α^0, α^1, …, α^{n-1}`; [`Field::position`] and [`Field::element_at`]
//! convert between the two.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

const ZERO_LOG: u32 = u32::MAX;

/// Conventional primitive polynomials, bit `i` = coefficient of `x^i`.
pub fn default_primitive_poly(m: u32) -> Option<u32> {
    Some(match m {
        2 => 0x7,
        3 => 0xB,
        4 => 0x13,
        5 => 0x25,
        6 => 0x43,
        7 => 0x89,
        8 => 0x11D,
        9 => 0x211,
        10 => 0x409,
        11 => 0x805,
        12 => 0x1053,
        13 => 0x201B,
        14 => 0x4443,
        15 => 0x8003,
        16 => 0x1100B,
        _ => return None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub m: u32,
    pub prim_poly: u32,
}

impl FieldSpec {
    pub fn new(m: u32, prim_poly: u32) -> Self {
        FieldSpec { m, prim_poly }
    }

    pub fn with_default_poly(m: u32) -> Result<Self> {
        let prim_poly = default_primitive_poly(m).ok_or(Error::UnsupportedDegree(m))?;
        Ok(FieldSpec { m, prim_poly })
    }
}

/// Log/antilog tables of GF(2^m). Immutable once built.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    n: usize,
    // antilog, doubled so exponent sums below 2n need no reduction
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let FieldSpec { m, prim_poly } = spec;
        if !(2..=16).contains(&m) {
            return Err(Error::UnsupportedDegree(m));
        }
        if prim_poly >> m != 1 {
            return Err(Error::WrongDegree { m, poly: prim_poly });
        }
        let size = 1usize << m;
        let n = size - 1;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![ZERO_LOG; size];
        let mut x = 1u32;
        for e in 0..n {
            if e > 0 && x == 1 {
                return Err(Error::NonPrimitivePolynomial {
                    poly: prim_poly,
                    order: e as u32,
                    expected: n as u32,
                });
            }
            exp[e] = x;
            log[x as usize] = e as u32;
            x <<= 1;
            if x >> m & 1 == 1 {
                x ^= prim_poly;
            }
        }
        if x != 1 {
            // the orbit of x never returned to 1, so the polynomial is reducible
            return Err(Error::NonPrimitivePolynomial {
                poly: prim_poly,
                order: 0,
                expected: n as u32,
            });
        }
        for e in n..2 * n {
            exp[e] = exp[e - n];
        }
        Ok(Field { spec, n, exp, log })
    }

    pub fn with_default_poly(m: u32) -> Result<Self> {
        Field::new(FieldSpec::with_default_poly(m)?)
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    /// Multiplicative order `2^m - 1`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of elements `2^m`, which is also the extended code length.
    pub fn size(&self) -> usize {
        self.n + 1
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        x ^ y
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        self.exp[(self.log[x as usize] + self.log[y as usize]) as usize]
    }

    pub fn inv(&self, x: u32) -> Result<u32> {
        if x == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[x as usize] as usize;
        Ok(self.exp[(self.n - l) % self.n])
    }

    pub fn div(&self, x: u32, y: u32) -> Result<u32> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let l = self.log[x as usize] as u64;
        self.exp[((l * (e % self.n as u64)) % self.n as u64) as usize]
    }

    /// `α^e` for any integer exponent, reduced mod n.
    #[inline]
    pub fn alpha_pow(&self, e: i64) -> u32 {
        self.exp[e.rem_euclid(self.n as i64) as usize]
    }

    /// Exponent form: `Some(e)` with `x = α^e`, or `None` for zero (`α^∞`).
    #[inline]
    pub fn log(&self, x: u32) -> Option<u32> {
        match self.log[x as usize] {
            ZERO_LOG => None,
            l => Some(l),
        }
    }

    /// Coordinate index of a field element: 0 for zero, `e + 1` for `α^e`.
    #[inline]
    pub fn position(&self, x: u32) -> usize {
        match self.log[x as usize] {
            ZERO_LOG => 0,
            l => l as usize + 1,
        }
    }

    #[inline]
    pub fn element_at(&self, position: usize) -> u32 {
        if position == 0 {
            0
        } else {
            self.exp[position - 1]
        }
    }

    /// `Σ_{j < m_s} x^{2^j}`. Lands in GF(2) when `m_s = m`.
    pub fn trace(&self, x: u32, m_s: u32) -> Result<u32> {
        if m_s == 0 || !self.spec.m.is_multiple_of(m_s) {
            return Err(Error::InvalidSubfield {
                m: self.spec.m,
                sub: m_s,
            });
        }
        let mut acc = 0;
        let mut y = x;
        for _ in 0..m_s {
            acc ^= y;
            y = self.mul(y, y);
        }
        Ok(acc)
    }

    /// The elements of the subfield GF(2^s), zero first.
    pub fn subfield_elements(&self, s: u32) -> Result<Vec<u32>> {
        if s == 0 || !self.spec.m.is_multiple_of(s) {
            return Err(Error::InvalidSubfield {
                m: self.spec.m,
                sub: s,
            });
        }
        let step = self.n / ((1usize << s) - 1);
        let mut out = vec![0];
        out.extend((0..(1usize << s) - 1).map(|i| self.exp[i * step]));
        Ok(out)
    }

    /// For each position `p`, the position holding `element_at(p) + beta`.
    pub fn translation(&self, beta: u32) -> Vec<usize> {
        (0..self.size())
            .map(|p| self.position(self.element_at(p) ^ beta))
            .collect()
    }
}

/// The cyclotomic coset `{s, 2s, 4s, …}` mod n, in generation order.
pub fn cyclotomic_coset(s: usize, n: usize) -> Vec<usize> {
    let s = s % n;
    let mut out = vec![s];
    let mut t = (2 * s) % n;
    while t != s {
        out.push(t);
        t = (2 * t) % n;
    }
    out
}

/// `cc(S)`: union of the cosets meeting `S`.
pub fn coset_closure(set: &BTreeSet<usize>, n: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for &s in set {
        if !out.contains(&(s % n)) {
            out.extend(cyclotomic_coset(s, n));
        }
    }
    out
}

/// `cr(S)`: the minimum of each coset meeting `S`.
pub fn coset_representatives(set: &BTreeSet<usize>, n: usize) -> BTreeSet<usize> {
    set.iter()
        .map(|&s| *cyclotomic_coset(s, n).iter().min().unwrap())
        .collect()
}

/// All coset representatives of `[n]` in increasing order.
pub fn all_representatives(n: usize) -> Vec<usize> {
    (0..n)
        .filter(|&s| cyclotomic_coset(s, n).iter().all(|&t| t >= s))
        .collect()
}
