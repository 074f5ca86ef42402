//! Ideals of a polynomial ring and their arithmetic.
//!
//! Every operation here goes through Gröbner bases; the combinatorial
//! shortcuts for monomial ideals live in [`crate::monomial`] and are kept
//! deliberately separate so that the two routes can check each other.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, eliminate, GroebnerBasis};
use crate::monomial::MonomialIdeal;
use crate::ring::{ExpVec, Polynomial, Ring};

/// Generator-level constructions for [`Ideal::combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Power(u32),
}

/// An ideal given by generators, with a lazily computed reduced Gröbner
/// basis. The zero ideal is stored as `(0)`.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Self {
        let mut gens = gens;
        if gens.is_empty() {
            gens.push(Polynomial::zero(ring));
        }
        Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)])
    }

    /// The ideal generated by the given variables.
    pub fn from_vars(ring: &Arc<Ring>, vars: &[usize]) -> Self {
        Self::new(ring, vars.iter().map(|&v| Polynomial::var(ring, v)).collect())
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(ring: &Arc<Ring>) -> Self {
        Self::from_vars(ring, &(0..ring.nvars()).collect::<Vec<_>>())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Nonzero generators.
    pub fn nonzero_generators(&self) -> impl Iterator<Item = &Polynomial> {
        self.gens.iter().filter(|g| !g.is_zero())
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = buchberger(&self.ring, &self.gens)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if Ring::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Ideal membership: the normal form modulo the reduced basis vanishes.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if !Ring::same(&self.ring, f.ring()) {
            return Err(Error::RingMismatch);
        }
        self.groebner()?.contains(f)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        for g in other.nonzero_generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by mutual containment of generators.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit())
    }

    /// Contained in `(x_1, ..., x_n)`: no generator has a constant term.
    pub fn in_maximal_ideal(&self) -> bool {
        let field = self.ring.field();
        self.gens.iter().all(|g| field.is_zero(&g.constant_coeff()))
    }

    pub fn combine(&self, other: &Ideal, op: IdealOp) -> Result<Ideal> {
        self.check_ring(other)?;
        match op {
            IdealOp::Sum => Ok(self.sum(other)),
            IdealOp::Product => Ok(self.product(other)),
            IdealOp::Power(n) => Ok(self.power(n)),
        }
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let gens = self
            .nonzero_generators()
            .chain(other.nonzero_generators())
            .cloned()
            .collect();
        Ideal::new(&self.ring, tidy(gens))
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for a in self.nonzero_generators() {
            for b in other.nonzero_generators() {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, tidy(gens))
    }

    /// `n`-fold product; `power(0)` is the unit ideal.
    pub fn power(&self, n: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    /// `A ∩ B` by eliminating `t` from `t·A + (1 - t)·B`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let ext = self.ring.eliminating_front_var("t");
        let n = self.ring.nvars();
        let embed: Vec<Option<usize>> = (0..n).map(|i| Some(i + 1)).collect();
        let t = Polynomial::var(&ext, 0);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens = Vec::new();
        for a in self.nonzero_generators() {
            gens.push(&t * &a.map_to(&ext, &embed)?);
        }
        for b in other.nonzero_generators() {
            gens.push(&one_minus_t * &b.map_to(&ext, &embed)?);
        }
        let projected = eliminate(&Ideal::new(&ext, gens), &[0])?;
        // `eliminate` lands in a grevlex copy of the remaining variables;
        // move the result back into this ring.
        let back: Vec<Option<usize>> = (0..n).map(Some).collect();
        let gens = projected
            .nonzero_generators()
            .map(|g| g.map_to(&self.ring, &back))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `(A : f)`.
    pub fn colon_poly(&self, f: &Polynomial) -> Result<Ideal> {
        if !Ring::same(&self.ring, f.ring()) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let meet = self.intersect(&Ideal::new(&self.ring, vec![f.clone()]))?;
        let mut gens = Vec::new();
        for g in meet.groebner()?.generators() {
            match g.div_exact(f)? {
                Some(q) => gens.push(q),
                None => {
                    return Err(Error::Internal(format!(
                        "intersection generator {g} not divisible by {f}"
                    )))
                }
            }
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `(A : B) = ∩_{b ∈ gens B} (A : b)`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut acc: Option<Ideal> = None;
        for b in other.nonzero_generators() {
            let q = self.colon_poly(b)?;
            acc = Some(match acc {
                None => q,
                Some(prev) => prev.intersect(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// `(A : B^∞)`, the stable value of `A ⊆ (A : B) ⊆ (A : B^2) ⊆ ...`.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = self.clone();
        loop {
            let next = cur.colon(other)?;
            if next.contains_ideal(&cur)? && cur.contains_ideal(&next)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `f ∈ √A`, decided by Rabinowitsch: `1 ∈ A + (1 - t·f)` in `R[t]`.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        if !Ring::same(&self.ring, f.ring()) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() || self.contains(f)? {
            return Ok(true);
        }
        let ext = self.ring.with_back_var("t");
        let n = self.ring.nvars();
        let embed: Vec<Option<usize>> = (0..n).map(Some).collect();
        let t = Polynomial::var(&ext, n);
        let mut gens = self
            .nonzero_generators()
            .map(|g| g.map_to(&ext, &embed))
            .collect::<Result<Vec<_>>>()?;
        gens.push(&Polynomial::one(&ext) - &(&t * &f.map_to(&ext, &embed)?));
        Ok(buchberger(&ext, &gens)?.is_unit())
    }

    /// Every generator of `other` lies in `√self`.
    pub fn radical_contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        for g in other.nonzero_generators() {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Krull dimension of `R/A` from the leading-term ideal; `-1` for the
    /// unit ideal.
    pub fn dim_quotient(&self) -> Result<i64> {
        let gb = self.groebner()?;
        if gb.is_unit() {
            return Ok(-1);
        }
        let n = self.ring.nvars();
        let masks: Vec<u64> = gb.leading_exps().iter().map(|e| e.support_mask()).collect();
        Ok(max_independent_set(n, &masks) as i64)
    }

    /// The same ideal as a [`MonomialIdeal`] when it is monomial, decided
    /// from the generators or, failing that, from the reduced basis.
    pub fn as_monomial(&self) -> Result<Option<MonomialIdeal>> {
        let n = self.ring.nvars();
        if self.gens.iter().all(|g| g.is_zero() || g.is_monomial()) {
            let exps = self.nonzero_generators().map(|g| g.terms()[0].0.clone());
            return Ok(Some(MonomialIdeal::new(n, exps)));
        }
        let gb = self.groebner()?;
        if gb.generators().iter().all(|g| g.is_monomial()) {
            return Ok(Some(MonomialIdeal::new(n, gb.leading_exps())));
        }
        Ok(None)
    }

    /// Canonical generator list: reduced basis, sorted by leading monomial.
    pub fn canonical_generators(&self) -> Result<Vec<Polynomial>> {
        let gb = self.groebner()?;
        if gb.is_zero_ideal() {
            return Ok(vec![Polynomial::zero(&self.ring)]);
        }
        Ok(gb.generators().to_vec())
    }
}

/// Deduplicates generators (up to scalar) and drops divisible monomials.
fn tidy(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for g in gens {
        let m = g.monic();
        if !out.iter().any(|h| h.monic() == m) {
            out.push(g);
        }
    }
    if out.iter().all(|g| g.is_monomial()) {
        let exps: Vec<ExpVec> = out.iter().map(|g| g.terms()[0].0.clone()).collect();
        let keep: Vec<bool> = exps
            .iter()
            .enumerate()
            .map(|(i, e)| {
                !exps
                    .iter()
                    .enumerate()
                    .any(|(j, d)| j != i && d.divides(e) && (d != e || j < i))
            })
            .collect();
        out = out
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(g, _)| g)
            .collect();
    }
    out
}

/// Size of a largest variable set containing no mask as a subset.
pub(crate) fn max_independent_set(n: usize, masks: &[u64]) -> usize {
    fn go(v: usize, n: usize, chosen: u64, size: usize, masks: &[u64], best: &mut usize) {
        if size + (n - v) <= *best {
            return;
        }
        if v == n {
            *best = size;
            return;
        }
        let with = chosen | (1 << v);
        if !masks.iter().any(|&m| m & !with == 0) {
            go(v + 1, n, with, size + 1, masks, best);
        }
        go(v + 1, n, chosen, size, masks, best);
    }
    let mut best = 0;
    go(0, n, 0, 0, masks, &mut best);
    best
}

impl PartialEq for Ideal {
    /// Equality of ideals (not of generator lists). Panics on ring mismatch.
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).expect("comparable ideals")
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}
