//! Division and Buchberger's algorithm.
//!
//! Pairs are selected by the normal strategy (smallest lcm of leading
//! monomials, ties by index) and filtered by the coprime and chain criteria.
//! Output is the reduced basis, monic, sorted by increasing leading monomial.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{Coeff, ExpVec, Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant())
    }

    pub fn leading_exps(&self) -> Vec<ExpVec> {
        self.gens
            .iter()
            .filter_map(|g| g.leading_exp().cloned())
            .collect()
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, &self.gens)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Every S-polynomial of the basis reduces to zero.
    pub fn verify_certificate(&self) -> Result<bool> {
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                let s = s_polynomial(&self.gens[i], &self.gens[j])?;
                if !normal_form(&s, &self.gens)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Structural properties of a reduced basis: monic, no leading monomial
    /// divides a term of another generator.
    pub fn is_reduced(&self) -> bool {
        let field = self.ring.field();
        self.gens.iter().enumerate().all(|(i, g)| {
            field.is_one(g.leading_coeff().expect("nonzero generator"))
                && self.gens.iter().enumerate().all(|(j, h)| {
                    i == j
                        || !g.terms().iter().any(|(e, _)| {
                            h.leading_exp().expect("nonzero generator").divides(e)
                        })
                })
        })
    }
}

/// Remainder of `f` on full division by `basis` (any leading coefficients).
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    let ring = f.ring().clone();
    for g in basis {
        if !Ring::same(&ring, g.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    let field = ring.field();
    let reducers: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    let lead_inv: Vec<Coeff> = reducers
        .iter()
        .map(|g| field.inv(g.leading_coeff().expect("nonzero")))
        .collect();
    let mut work: Vec<(ExpVec, Coeff)> = f.terms().to_vec();
    let mut start = 0;
    let mut rem: Vec<(ExpVec, Coeff)> = Vec::new();
    while start < work.len() {
        let (e, c) = &work[start];
        let hit = reducers
            .iter()
            .position(|g| g.leading_exp().expect("nonzero").divides(e));
        match hit {
            None => {
                rem.push(work[start].clone());
                start += 1;
            }
            Some(k) => {
                let g = reducers[k];
                let q = g.leading_exp().expect("nonzero").quotient_of(e).expect("divides");
                let factor = field.mul(c, &lead_inv[k]);
                let shifted = g.mul_term(&q, &factor)?;
                work = subtract_tail(&ring, &work[start + 1..], &shifted.terms()[1..]);
                start = 0;
            }
        }
    }
    Ok(Polynomial::from_sorted(&ring, rem))
}

/// `a - b` for sorted term slices.
fn subtract_tail(
    ring: &Arc<Ring>,
    a: &[(ExpVec, Coeff)],
    b: &[(ExpVec, Coeff)],
) -> Vec<(ExpVec, Coeff)> {
    let field = ring.field();
    let order = ring.order();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp_unchecked(a[i].0.as_slice(), b[j].0.as_slice()) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0.clone(), field.neg(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let s = field.sub(&a[i].1, &b[j].1);
                if !field.is_zero(&s) {
                    out.push((a[i].0.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(e, c)| (e.clone(), field.neg(c))));
    out
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let field = f.ring().field();
    let (fe, ge) = match (f.leading_exp(), g.leading_exp()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(Polynomial::zero(f.ring())),
    };
    let l = fe.lcm(ge);
    let fa = f.mul_term(
        &fe.quotient_of(&l).expect("lcm"),
        &field.inv(f.leading_coeff().expect("nonzero")),
    )?;
    let gb = g.mul_term(
        &ge.quotient_of(&l).expect("lcm"),
        &field.inv(g.leading_coeff().expect("nonzero")),
    )?;
    Ok(&fa - &gb)
}

/// Deterministic total order on polynomials, used to sort inputs.
fn poly_cmp(a: &Polynomial, b: &Polynomial) -> Ordering {
    let order = a.ring().order();
    let field = a.ring().field();
    for (ta, tb) in a.terms().iter().zip(b.terms()) {
        match order.cmp_unchecked(ta.0.as_slice(), tb.0.as_slice()) {
            Ordering::Equal => {}
            o => return o,
        }
        match field.render(&ta.1).cmp(&field.render(&tb.1)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.terms().len().cmp(&b.terms().len())
}

struct Pair {
    i: usize,
    j: usize,
    lcm: ExpVec,
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
pub fn buchberger(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    for g in gens {
        if !Ring::same(ring, g.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    let mut input: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    input.sort_by(poly_cmp);
    input.dedup();
    if input.iter().any(|g| g.is_constant()) {
        return Ok(unit_basis(ring));
    }

    let order = ring.order();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut queued: HashSet<(usize, usize)> = HashSet::new();

    let push = |h: Polynomial,
                    basis: &mut Vec<Polynomial>,
                    pairs: &mut Vec<Pair>,
                    queued: &mut HashSet<(usize, usize)>| {
        let k = basis.len();
        let hk = h.leading_exp().expect("nonzero").clone();
        for (i, g) in basis.iter().enumerate() {
            let gi = g.leading_exp().expect("nonzero");
            if gi.is_coprime(&hk) {
                continue;
            }
            pairs.push(Pair {
                i,
                j: k,
                lcm: gi.lcm(&hk),
            });
            queued.insert((i, k));
        }
        basis.push(h);
    };

    for g in input {
        push(g, &mut basis, &mut pairs, &mut queued);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp_unchecked(pairs[a].lcm.as_slice(), pairs[b].lcm.as_slice())
                    .then((pairs[a].j, pairs[a].i).cmp(&(pairs[b].j, pairs[b].i)))
            })
            .expect("nonempty");
        let Pair { i, j, lcm } = pairs.swap_remove(best);
        queued.remove(&(i, j));

        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_exp().expect("nonzero").divides(&lcm)
                && !queued.contains(&(i.min(k), i.max(k)))
                && !queued.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j])?;
        let h = normal_form(&s, &basis)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(ring));
        }
        push(h.monic(), &mut basis, &mut pairs, &mut queued);
    }

    Ok(GroebnerBasis {
        ring: ring.clone(),
        gens: interreduce(ring, basis)?,
    })
}

fn unit_basis(ring: &Arc<Ring>) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        gens: vec![Polynomial::one(ring)],
    }
}

/// Minimalizes and tail-reduces a Gröbner basis.
fn interreduce(ring: &Arc<Ring>, mut basis: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let order = ring.order();
    basis.sort_by(|a, b| {
        order.cmp_unchecked(
            a.leading_exp().expect("nonzero").as_slice(),
            b.leading_exp().expect("nonzero").as_slice(),
        )
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let ge = g.leading_exp().expect("nonzero");
        if !minimal
            .iter()
            .any(|m| m.leading_exp().expect("nonzero").divides(ge))
        {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let (lead, tail) = g.terms().split_first().expect("nonzero");
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let tail = Polynomial::from_sorted(ring, tail.to_vec());
        let tail = normal_form(&tail, &others)?;
        let mut terms = vec![lead.clone()];
        terms.extend(tail.terms().iter().cloned());
        reduced.push(Polynomial::from_sorted(ring, terms).monic());
    }
    Ok(reduced)
}

/// `A ∩ k[remaining variables]`, returned as an ideal of the subring on the
/// kept variables (in their original relative order).
pub fn eliminate(ideal: &Ideal, drop_vars: &[usize]) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if let Some(&bad) = drop_vars.iter().find(|&&v| v >= n) {
        return Err(Error::UnknownVariable(format!("#{bad}")));
    }
    let keep: Vec<usize> = (0..n).filter(|v| !drop_vars.contains(v)).collect();
    let sub = ring.restricted(&keep);
    if drop_vars.is_empty() {
        let map: Vec<Option<usize>> = (0..n).map(Some).collect();
        let gens = ideal
            .generators()
            .iter()
            .map(|g| g.map_to(&sub, &map))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Ideal::new(&sub, gens));
    }
    // dropped variables first, eliminated as one block
    let mut perm: Vec<usize> = drop_vars.to_vec();
    perm.sort_unstable();
    perm.dedup();
    let ndrop = perm.len();
    perm.extend(keep.iter().copied());
    let mut blocks = vec![ndrop];
    if !keep.is_empty() {
        blocks.push(keep.len());
    }
    let vars = perm.iter().map(|&i| ring.vars()[i].clone()).collect();
    let elim = Ring::new(ring.field(), vars, crate::ring::MonomialOrder::Elimination(blocks))?;
    let mut to_elim = vec![None; n];
    for (pos, &v) in perm.iter().enumerate() {
        to_elim[v] = Some(pos);
    }
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.map_to(&elim, &to_elim))
        .collect::<Result<Vec<_>>>()?;
    let gb = buchberger(&elim, &gens)?;
    let mut back: Vec<Option<usize>> = vec![None; n];
    for (k, slot) in back.iter_mut().enumerate().skip(ndrop) {
        *slot = Some(k - ndrop);
    }
    let kept = gb
        .generators()
        .iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|(e, _)| (0..ndrop).all(|v| e.get(v) == 0))
        })
        .map(|g| g.map_to(&sub, &back))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(&sub, kept))
}
