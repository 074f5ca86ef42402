//! Decision procedures for the support set `W(I, J)`, the ideal family
//! `W̃(I, J)` and the multiplicative sets `S_{a,J} = { a^n + j }`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::Matrix;
use crate::monomial::box_monomials;
use crate::ring::{ExpVec, Polynomial, Ring};

/// The pair `(I, J)`, stored exactly as given.
#[derive(Clone, Debug)]
pub struct PairSpec {
    pub i: Ideal,
    pub j: Ideal,
}

impl PairSpec {
    pub fn new(i: Ideal, j: Ideal) -> Result<Self> {
        if !Ring::same(i.ring(), j.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(PairSpec { i, j })
    }
}

/// `p ∈ W(I, J)`: some power of `I` lies in `J + p`, i.e. every generator
/// of `I` is in `√(J + p)`.
///
/// The condition is evaluated literally for any proper ideal `p`; primality
/// is the caller's business.
pub fn w_member(p: &Ideal, pair: &PairSpec) -> Result<bool> {
    if !Ring::same(p.ring(), pair.i.ring()) {
        return Err(Error::RingMismatch);
    }
    if p.is_unit()? {
        return Err(Error::UnitIdeal("the prime p".into()));
    }
    pair.j.sum(p).radical_contains_ideal(&pair.i)
}

/// `a ∈ W̃(I, J)`: some power of `I` lies in `a + J`.
pub fn wtilde_member(a: &Ideal, pair: &PairSpec) -> Result<bool> {
    if !Ring::same(a.ring(), pair.i.ring()) {
        return Err(Error::RingMismatch);
    }
    a.sum(&pair.j).radical_contains_ideal(&pair.i)
}

/// `0 ∈ S_{a,J}`, equivalently `a ∈ √J`.
pub fn s_zero(a: &Polynomial, j: &Ideal) -> Result<bool> {
    j.radical_contains(a)
}

/// An element `a^n + j` of `S_{a,J}` lying in a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SCertificate {
    pub n: u32,
    pub j: Polynomial,
}

/// Bounds of the certificate search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub n_max: u32,
    pub degree_cap: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            n_max: 4,
            degree_cap: 2,
        }
    }
}

/// Outcome of [`s_certificate`]. `certificate == None` means none was found
/// within `bounds`, not that none exists.
#[derive(Clone, Debug)]
pub struct CertificateSearch {
    pub certificate: Option<SCertificate>,
    pub bounds: SearchBounds,
    /// Number of multipliers `c` tried per generator of `J`.
    pub multipliers: usize,
}

/// Searches for `n ≤ n_max` and `j = Σ c_k g_k` (`g_k` generators of `J`,
/// `c_k` in the span of `pool` and all monomials of degree at most
/// `degree_cap`) with `a^n + j ∈ p`. For each `n` the coefficients are found
/// by solving a linear system on normal forms modulo `p`, so the search is
/// exhaustive over that span.
pub fn s_certificate(
    p: &Ideal,
    a: &Polynomial,
    j: &Ideal,
    bounds: SearchBounds,
    pool: &[Polynomial],
) -> Result<CertificateSearch> {
    if bounds.n_max < 1 {
        return Err(Error::precondition("s-certificate", "n_max must be at least 1"));
    }
    let ring = p.ring().clone();
    if !Ring::same(&ring, a.ring()) || !Ring::same(&ring, j.ring()) {
        return Err(Error::RingMismatch);
    }
    if pool.iter().any(|c| !Ring::same(&ring, c.ring())) {
        return Err(Error::RingMismatch);
    }

    let mut multipliers: Vec<Polynomial> = Vec::new();
    for c in pool {
        if !c.is_zero() && !multipliers.contains(c) {
            multipliers.push(c.clone());
        }
    }
    let cap = ExpVec::from(vec![bounds.degree_cap; ring.nvars()]);
    for e in box_monomials(&cap) {
        if e.degree() <= bounds.degree_cap as u64 {
            let m = Polynomial::monomial(&ring, e, ring.field().one());
            if !multipliers.contains(&m) {
                multipliers.push(m);
            }
        }
    }

    let pgb = p.groebner()?;
    let mut columns: Vec<Polynomial> = Vec::new();
    let mut reduced: Vec<Polynomial> = Vec::new();
    for g in j.nonzero_generators() {
        for c in &multipliers {
            let col = c * g;
            reduced.push(pgb.reduce(&col)?);
            columns.push(col);
        }
    }

    let field = ring.field();
    let mut found = None;
    for n in 1..=bounds.n_max {
        let an = a.pow(n)?;
        let target = pgb.reduce(&an)?;
        let jpoly = if target.is_zero() {
            Some(Polynomial::zero(&ring))
        } else {
            // rows indexed by the monomials occurring anywhere
            let mut rows: BTreeMap<ExpVec, usize> = BTreeMap::new();
            for poly in reduced.iter().chain(std::iter::once(&target)) {
                for (e, _) in poly.terms() {
                    let next = rows.len();
                    rows.entry(e.clone()).or_insert(next);
                }
            }
            let mut m = Matrix::zeros(field, rows.len(), reduced.len());
            for (col, poly) in reduced.iter().enumerate() {
                for (e, c) in poly.terms() {
                    m.set(rows[e], col, c.clone());
                }
            }
            let mut rhs = vec![field.zero(); rows.len()];
            for (e, c) in target.terms() {
                rhs[rows[e]] = field.neg(c);
            }
            m.solve(&rhs).map(|lambda| {
                let mut acc = Polynomial::zero(&ring);
                for (l, col) in lambda.iter().zip(&columns) {
                    if !field.is_zero(l) {
                        acc = &acc + &col.scale(l);
                    }
                }
                acc
            })
        };
        if let Some(jp) = jpoly {
            let elem = &an + &jp;
            if !p.contains(&elem)? || !j.contains(&jp)? {
                return Err(Error::Internal(format!(
                    "certificate a^{n} + ({jp}) failed re-verification"
                )));
            }
            found = Some(SCertificate { n, j: jp });
            break;
        }
    }
    Ok(CertificateSearch {
        certificate: found,
        bounds,
        multipliers: multipliers.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::qq(vars)
    }

    fn v(r: &Arc<Ring>, i: usize) -> Polynomial {
        Polynomial::var(r, i)
    }

    fn id(r: &Arc<Ring>, g: Vec<Polynomial>) -> Ideal {
        Ideal::new(r, g)
    }

    #[test]
    fn w_membership_examples() {
        let r = ring(&["x", "y"]);
        let pair = PairSpec::new(id(&r, vec![v(&r, 0)]), id(&r, vec![v(&r, 1)])).unwrap();
        assert!(w_member(&id(&r, vec![v(&r, 0), v(&r, 1)]), &pair).unwrap());
        assert!(!w_member(&id(&r, vec![v(&r, 1)]), &pair).unwrap());
        assert!(matches!(
            w_member(&Ideal::unit(&r), &pair),
            Err(Error::UnitIdeal(_))
        ));
    }

    #[test]
    fn diagonal_prime_of_two_planes() {
        let r = ring(&["X", "Y", "Z", "W"]);
        let (x, y, z, w) = (v(&r, 0), v(&r, 1), v(&r, 2), v(&r, 3));
        let j = id(&r, vec![&x * &z, &x * &w, &y * &z, &y * &w]);
        let pair = PairSpec::new(Ideal::maximal(&r), j).unwrap();
        let p = id(&r, vec![&x - &z, &y - &w]);
        assert!(w_member(&p, &pair).unwrap());
    }

    #[test]
    fn wtilde_examples() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, 0), v(&r, 1));
        let pair = PairSpec::new(id(&r, vec![x.clone()]), id(&r, vec![y.clone()])).unwrap();
        assert!(!wtilde_member(&id(&r, vec![y.clone()]), &pair).unwrap());
        for n in 1..4 {
            assert!(wtilde_member(&pair.i.power(n), &pair).unwrap());
        }
        let pair0 = PairSpec::new(id(&r, vec![x.clone()]), Ideal::zero(&r)).unwrap();
        assert!(wtilde_member(&id(&r, vec![&x * &x]), &pair0).unwrap());
    }

    #[test]
    fn s_zero_examples() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, 0), v(&r, 1));
        assert!(s_zero(&x, &id(&r, vec![&x * &x])).unwrap());
        assert!(!s_zero(&x, &id(&r, vec![y.clone()])).unwrap());
        assert!(s_zero(&x, &id(&r, vec![x.clone()])).unwrap());
    }

    #[test]
    fn certificate_examples() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, 0), v(&r, 1));
        let jy = id(&r, vec![y.clone()]);
        let b = SearchBounds::default();

        let found = s_certificate(&id(&r, vec![x.clone(), y.clone()]), &x, &jy, b, &[]).unwrap();
        let c = found.certificate.unwrap();
        assert_eq!((c.n, c.j.is_zero()), (1, true));

        let found = s_certificate(&id(&r, vec![&x + &y]), &x, &jy, b, &[]).unwrap();
        let c = found.certificate.unwrap();
        assert_eq!(c.n, 1);
        assert_eq!(c.j, y);

        let found = s_certificate(&jy, &x, &jy, b, &[]).unwrap();
        assert!(found.certificate.is_none());
        assert_eq!(found.bounds, b);
    }
}
