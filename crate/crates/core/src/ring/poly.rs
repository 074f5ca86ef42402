use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{Coeff, ExpVec, Ring};
use crate::error::{Error, Result};

/// Binary operation selector for [`Polynomial::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// A polynomial with exact coefficients.
///
/// Terms are kept sorted in strictly decreasing monomial order and never
/// carry a zero coefficient; the zero polynomial has no terms.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(ExpVec, Coeff)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Coeff) -> Self {
        Self::monomial(ring, ExpVec::zeros(ring.nvars()), c)
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, ExpVec::unit(ring.nvars(), i), ring.field().one())
    }

    pub fn monomial(ring: &Arc<Ring>, exp: ExpVec, c: Coeff) -> Self {
        debug_assert_eq!(exp.len(), ring.nvars());
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(exp, c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds the canonical form of an arbitrary term list: like terms are
    /// combined, zeros dropped, and the result sorted by the ring order.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (ExpVec, Coeff)>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<ExpVec, Coeff> = HashMap::new();
        for (e, c) in terms {
            debug_assert_eq!(e.len(), ring.nvars());
            match acc.get_mut(&e) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(e, c);
                }
            }
        }
        let mut terms: Vec<(ExpVec, Coeff)> =
            acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp_unchecked(b.0.as_slice(), a.0.as_slice()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms already in canonical order (strictly decreasing, no zero
    /// coefficients).
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<(ExpVec, Coeff)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| {
            ring.order().cmp_unchecked(w[0].0.as_slice(), w[1].0.as_slice()) == Ordering::Greater
        }));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(ExpVec, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_zero()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_exp(&self) -> Option<&ExpVec> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    /// Constant coefficient (zero if absent).
    pub fn constant_coeff(&self) -> Coeff {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => c.clone(),
            _ => self.ring.field().zero(),
        }
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(e, _)| e.degree()).max()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if Ring::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Checked binary arithmetic.
    pub fn apply(&self, other: &Self, op: PolyOp) -> Result<Self> {
        self.check_ring(other)?;
        match op {
            PolyOp::Add => Ok(self.merge(other, false)),
            PolyOp::Sub => Ok(self.merge(other, true)),
            PolyOp::Mul => self.try_mul(other),
        }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let field = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let conv = |c: &Coeff| if negate { field.neg(c) } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match order.cmp_unchecked(ea.as_slice(), eb.as_slice()) {
                Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((eb.clone(), conv(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = if negate { field.sub(ca, cb) } else { field.add(ca, cb) };
                    if !field.is_zero(&s) {
                        out.push((ea.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(e, c)| (e.clone(), conv(c))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn try_mul(&self, other: &Self) -> Result<Self> {
        let field = self.ring.field();
        let mut prod = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                prod.push((ea.mul(eb)?, field.mul(ca, cb)));
            }
        }
        Ok(Self::from_terms(&self.ring, prod))
    }

    /// `c * x^e * self`; leading-term order is preserved by monomial
    /// multiplication, so no re-sorting is needed.
    pub fn mul_term(&self, e: &ExpVec, c: &Coeff) -> Result<Self> {
        let field = self.ring.field();
        if field.is_zero(c) {
            return Ok(Self::zero(&self.ring));
        }
        let terms = self
            .terms
            .iter()
            .map(|(ea, ca)| Ok((ea.mul(e)?, field.mul(ca, c))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        self.mul_term(&ExpVec::zeros(self.ring.nvars()), c)
            .expect("scaling cannot overflow")
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.ring.field().neg(&self.ring.field().one()))
    }

    /// Scaled to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !self.ring.field().is_one(lc) => self.scale(&self.ring.field().inv(lc)),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Substitution homomorphism: each assigned variable is replaced by the
    /// given polynomial (in the same ring); others are left alone.
    pub fn substitute(&self, assignment: &[(usize, Polynomial)]) -> Result<Self> {
        let n = self.ring.nvars();
        for (v, p) in assignment {
            self.check_ring(p)?;
            if *v >= n {
                return Err(Error::UnknownVariable(format!("#{v}")));
            }
        }
        let mut acc = Self::zero(&self.ring);
        for (e, c) in &self.terms {
            let mut kept = e.clone();
            let mut term = Self::one(&self.ring);
            for (v, p) in assignment {
                let k = e.get(*v);
                if k > 0 {
                    kept.set(*v, 0);
                    term = term.try_mul(&p.pow(k)?)?;
                }
            }
            acc = acc.merge(&term.mul_term(&kept, c)?, false);
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// `var_map[i]`. Variables mapped to `None` must not occur.
    pub fn map_to(&self, target: &Arc<Ring>, var_map: &[Option<usize>]) -> Result<Self> {
        if target.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        let m = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut ne = ExpVec::zeros(m);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match var_map[i] {
                    Some(j) => ne.set(j, ne.get(j) + k),
                    None => return Err(Error::RingMismatch),
                }
            }
            terms.push((ne, c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Exact division by `d`; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>> {
        self.check_ring(d)?;
        if d.is_zero() {
            return Ok(if self.is_zero() { Some(Self::zero(&self.ring)) } else { None });
        }
        let field = self.ring.field();
        let (de, dc) = d.terms[0].clone();
        let dc_inv = field.inv(&dc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((e, c)) = rem.terms.first().cloned() {
            let Some(q) = de.quotient_of(&e) else {
                return Ok(None);
            };
            let qc = field.mul(&c, &dc_inv);
            rem = rem.merge(&d.mul_term(&q, &qc)?, true);
            quot.push((q, qc));
        }
        Ok(Some(Self::from_terms(&self.ring, quot)))
    }

    /// Canonical text form, parseable by the session grammar.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        Ring::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = field.render(c);
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if mag != "1" || e.is_zero() {
                factors.push(mag);
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.ring.vars()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars()[i], k)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $op:expr) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.apply(rhs, $op).expect("polynomial arithmetic")
            }
        }
    };
}

forward_op!(Add, add, PolyOp::Add);
forward_op!(Sub, sub, PolyOp::Sub);
forward_op!(Mul, mul, PolyOp::Mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, MonomialOrder};
    use proptest::prelude::*;

    fn xy() -> Arc<Ring> {
        Ring::qq(&["x", "y"])
    }

    #[test]
    fn cancellation_and_difference_of_squares() {
        let r = xy();
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        assert_eq!((&(&x + &y) + &(&x - &y)).to_string(), "2*x");
        assert_eq!((&(&x + &y) * &(&x - &y)).to_string(), "x^2 - y^2");
    }

    #[test]
    fn frobenius_over_gf2() {
        let r = Ring::new(
            Field::prime(2).unwrap(),
            vec!["x".into(), "y".into()],
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let s = &Polynomial::var(&r, 0) + &Polynomial::var(&r, 1);
        assert_eq!(s.pow(2).unwrap().to_string(), "x^2 + y^2");
    }

    #[test]
    fn substitution_examples() {
        let r = xy();
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let x2y = &(&x * &x) * &y;
        let one = Polynomial::one(&r);
        assert_eq!(x2y.substitute(&[(1, one)]).unwrap().to_string(), "x^2");
        assert!(x2y.substitute(&[(0, Polynomial::zero(&r))]).unwrap().is_zero());
        let sq = (&x + &y).pow(2).unwrap();
        assert_eq!(sq.substitute(&[(1, x.clone())]).unwrap().to_string(), "4*x^2");
    }

    #[test]
    fn ring_mismatch_reported() {
        let a = Polynomial::var(&xy(), 0);
        let b = Polynomial::var(&Ring::qq(&["x"]), 0);
        assert_eq!(a.apply(&b, PolyOp::Add).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn exact_division() {
        let r = xy();
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let f = &(&x * &x) - &(&y * &y);
        let q = f.div_exact(&(&x - &y)).unwrap().unwrap();
        assert_eq!(q, &x + &y);
        assert!(x.div_exact(&y).unwrap().is_none());
    }

    #[test]
    fn display_signs() {
        let r = xy();
        let f = Polynomial::from_terms(
            &r,
            vec![
                (ExpVec::from_slice(&[2, 1]), r.field().from_i64(-2)),
                (ExpVec::from_slice(&[0, 0]), r.field().from_i64(1)),
                (ExpVec::from_slice(&[0, 1]), r.field().from_i64(-3)),
            ],
        );
        assert_eq!(f.to_string(), "-2*x^2*y - 3*y + 1");
    }

    fn poly3() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 3), -3i64..4), 0..5)
    }

    fn build(r: &Arc<Ring>, t: Vec<(Vec<u32>, i64)>) -> Polynomial {
        Polynomial::from_terms(
            r,
            t.into_iter()
                .map(|(e, c)| (ExpVec::from(e), r.field().from_i64(c))),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn ring_axioms(a in poly3(), b in poly3(), c in poly3()) {
            let r = Ring::qq(&["x", "y", "z"]);
            let (f, g, h) = (build(&r, a), build(&r, b), build(&r, c));
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            let renorm = Polynomial::from_terms(&r, f.terms().iter().cloned());
            prop_assert_eq!(renorm, f);
        }
    }
}
