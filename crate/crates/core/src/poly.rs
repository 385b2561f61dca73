//! Polynomials over GF(2) with arbitrary degree, bit `i` = coefficient of `x^i`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2m::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    // little-endian words, no trailing zero words
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { words: vec![1] }
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Gf2Poly { words }
    }

    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        let mut words = vec![0u64; coeffs.len().div_ceil(64)];
        for (i, &c) in coeffs.iter().enumerate() {
            if c & 1 == 1 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Gf2Poly::from_words(words)
    }

    /// `x^n + 1` (equal to `x^n - 1` in characteristic 2).
    pub fn x_n_minus_1(n: usize) -> Self {
        let mut p = Gf2Poly::zero();
        p.set(0, true);
        p.set(n, true);
        p
    }

    /// Parses a hexadecimal string, optionally prefixed with `0x`.
    pub fn from_hex(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix("0x")
            .or_else(|| t.strip_prefix("0X"))
            .unwrap_or(t);
        if t.is_empty() {
            return Err(Error::Parse(format!("empty hex polynomial {s:?}")));
        }
        let mut p = Gf2Poly::zero();
        for (i, ch) in t.chars().rev().enumerate() {
            let d = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {ch:?} in {s:?}")))?;
            for b in 0..4 {
                if d >> b & 1 == 1 {
                    p.set(4 * i + b, true);
                }
            }
        }
        Ok(p)
    }

    pub fn to_hex(&self) -> String {
        let Some(deg) = self.degree() else {
            return "0x0".into();
        };
        let mut s = String::from("0x");
        for nib in (0..=deg / 4).rev() {
            let mut d = 0;
            for b in 0..4 {
                if self.coeff(4 * nib + b) {
                    d |= 1 << b;
                }
            }
            s.push(char::from_digit(d, 16).unwrap().to_ascii_uppercase());
        }
        s
    }

    pub fn degree(&self) -> Option<usize> {
        self.words
            .last()
            .map(|&w| (self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if i / 64 >= self.words.len() {
            if !value {
                return;
            }
            self.words.resize(i / 64 + 1, 0);
        }
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
            while self.words.last() == Some(&0) {
                self.words.pop();
            }
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b)
        })
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn xor_shifted(&mut self, other: &Gf2Poly, shift: usize) {
        for i in other.iter_ones() {
            let j = i + shift;
            let cur = self.coeff(j);
            self.set(j, !cur);
        }
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut out = Gf2Poly::zero();
        for i in self.iter_ones() {
            out.xor_shifted(other, i);
        }
        out
    }

    /// Remainder of division by a nonzero divisor.
    pub fn rem(&self, divisor: &Gf2Poly) -> Gf2Poly {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            r.xor_shifted(divisor, rd - dd);
        }
        r
    }

    pub fn divides(&self, other: &Gf2Poly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Evaluates at a field element by Horner-free summation over the support.
    pub fn eval(&self, field: &Field, x: u32) -> u32 {
        match field.log(x) {
            None => self.coeff(0) as u32,
            Some(e) => {
                let n = field.n() as u64;
                self.iter_ones()
                    .fold(0, |acc, i| acc ^ field.alpha_pow(((i as u64 * e as u64) % n) as i64))
            }
        }
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({})", self.to_hex())
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}
