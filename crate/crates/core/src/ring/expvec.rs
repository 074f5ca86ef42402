//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponents of a monomial, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpVec(SmallVec<[u32; 8]>);

impl ExpVec {
    pub fn zeros(n: usize) -> Self {
        ExpVec(SmallVec::from_elem(0, n))
    }

    pub fn from_slice(e: &[u32]) -> Self {
        ExpVec(SmallVec::from_slice(e))
    }

    /// The exponent vector of a single variable.
    pub fn unit(n: usize, var: usize) -> Self {
        let mut e = Self::zeros(n);
        e.0[var] = 1;
        e
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, v: u32) {
        self.0[i] = v;
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Support as a bitmask; rings are limited to 64 variables for this.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << i))
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(())
    }

    /// Product of monomials (componentwise sum), overflow-checked.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let mut out = SmallVec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(ExpVec(out))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = SmallVec::with_capacity(self.len());
        for a in self.0.iter() {
            out.push(a.checked_mul(n).ok_or(Error::ExponentOverflow)?);
        }
        Ok(ExpVec(out))
    }

    /// `self | other`.
    pub fn divides(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(ExpVec(
            other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect(),
        ))
    }

    /// Componentwise `max(self - other, 0)`: the monomial colon rule.
    pub fn saturating_sub(&self, other: &Self) -> Self {
        ExpVec(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Self) -> Self {
        ExpVec(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        ExpVec(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Squarefree part: every positive exponent replaced by 1.
    pub fn radical(&self) -> Self {
        ExpVec(self.0.iter().map(|&e| e.min(1)).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = &u32> {
        self.0.iter()
    }
}

impl From<Vec<u32>> for ExpVec {
    fn from(v: Vec<u32>) -> Self {
        ExpVec(SmallVec::from_vec(v))
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// A monomial order on exponent vectors of fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Block order: blocks compared left to right, each by degree-reverse-lex
    /// restricted to the block. Variables of earlier blocks dominate.
    Elimination(Vec<usize>),
}

impl MonomialOrder {
    pub fn compare(&self, a: &ExpVec, b: &ExpVec) -> Result<Ordering> {
        a.check_len(b)?;
        Ok(self.cmp_unchecked(a.as_slice(), b.as_slice()))
    }

    pub(crate) fn cmp_unchecked(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Elimination(blocks) => {
                let mut start = 0;
                for &size in blocks {
                    let end = (start + size).min(a.len());
                    match grevlex(&a[start..end], &b[start..end]) {
                        Ordering::Equal => start = end,
                        other => return other,
                    }
                }
                // trailing variables not covered by any block
                grevlex(&a[start..], &b[start..])
            }
        }
    }

    pub fn validate(&self, nvars: usize) -> Result<()> {
        if let MonomialOrder::Elimination(blocks) = self {
            if blocks.iter().sum::<usize>() != nvars || blocks.contains(&0) {
                return Err(Error::InvalidRing(format!(
                    "elimination blocks {blocks:?} do not partition {nvars} variables"
                )));
            }
        }
        Ok(())
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Elimination(b) => {
                let parts: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                write!(f, "elim({})", parts.join(","))
            }
        }
    }
}
