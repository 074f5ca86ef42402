//! Monomial ideals and their combinatorics: minimal generators, colon by a
//! monomial, radicals, minimal primes as minimal vertex covers.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::ideal::Ideal;
use crate::ring::{ExpVec, Polynomial, Ring};

/// A monomial ideal stored by its minimal generators (a divisibility
/// antichain). The zero ideal has no generators; the unit ideal is
/// generated by the zero exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<ExpVec>,
}

/// The prime generated by a subset of the variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacePrime {
    vars: Vec<usize>,
}

impl FacePrime {
    pub fn new(vars: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = vars.into_iter().collect();
        FacePrime {
            vars: set.into_iter().collect(),
        }
    }

    pub fn from_mask(mask: u64) -> Self {
        Self::new((0..64).filter(|i| mask & (1 << i) != 0))
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn mask(&self) -> u64 {
        self.vars.iter().fold(0, |m, &v| m | (1 << v))
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    pub fn to_ideal(&self, ring: &Arc<Ring>) -> Ideal {
        Ideal::from_vars(ring, &self.vars)
    }

    pub fn to_monomial_ideal(&self, nvars: usize) -> MonomialIdeal {
        MonomialIdeal::new(nvars, self.vars.iter().map(|&v| ExpVec::unit(nvars, v)))
    }

    /// Enumerates all `2^n` face primes by mask.
    pub fn all(nvars: usize) -> impl Iterator<Item = FacePrime> {
        let top = if nvars == 0 { 0 } else { u64::MAX >> (64 - nvars) };
        (0u64..=top).map(FacePrime::from_mask)
    }

    /// `(x, y)`; the zero prime renders as `(0)`.
    pub fn render(&self, ring: &Ring) -> String {
        if self.vars.is_empty() {
            return "(0)".into();
        }
        let names: Vec<&str> = self.vars.iter().map(|&v| ring.vars()[v].as_str()).collect();
        format!("({})", names.join(", "))
    }
}

impl MonomialIdeal {
    /// Builds the ideal from any generating set; the result is minimalized.
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = ExpVec>) -> Self {
        let mut all: Vec<ExpVec> = gens.into_iter().collect();
        debug_assert!(all.iter().all(|g| g.len() == nvars));
        // sorting by degree first makes divisors precede their multiples
        all.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut min: Vec<ExpVec> = Vec::new();
        for g in all {
            if !min.iter().any(|m| m.divides(&g)) {
                min.push(g);
            }
        }
        min.sort();
        MonomialIdeal { nvars, gens: min }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![ExpVec::zeros(nvars)],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[ExpVec] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_zero())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    pub fn contains(&self, m: &ExpVec) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// `m ∈ √self`: some generator's support lies inside `supp(m)`.
    pub fn radical_contains(&self, m: &ExpVec) -> bool {
        let s = m.support_mask();
        self.gens.iter().any(|g| g.support_mask() & !s == 0)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b).expect("exponent overflow in monomial product"));
            }
        }
        MonomialIdeal::new(self.nvars, gens)
    }

    /// Intersection by the lcm rule.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        MonomialIdeal::new(self.nvars, gens)
    }

    /// `(self : x^m)` by the componentwise rule `max(a - m, 0)`.
    pub fn colon_monomial(&self, m: &ExpVec) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().map(|g| g.saturating_sub(m)))
    }

    /// `(self : other)` as the intersection of colons by generators.
    pub fn colon(&self, other: &MonomialIdeal) -> MonomialIdeal {
        other
            .gens
            .iter()
            .map(|m| self.colon_monomial(m))
            .reduce(|a, b| a.intersect(&b))
            .unwrap_or_else(|| MonomialIdeal::unit(self.nvars))
    }

    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().map(|g| g.radical()))
    }

    /// Componentwise maximum exponent over the minimal generators.
    pub fn max_exponents(&self) -> ExpVec {
        self.gens
            .iter()
            .fold(ExpVec::zeros(self.nvars), |acc, g| acc.lcm(g))
    }

    /// Minimal primes: minimal vertex covers of the hypergraph formed by the
    /// supports of the radical's generators. Sorted by mask.
    pub fn min_primes(&self) -> Vec<FacePrime> {
        if self.is_unit() {
            return Vec::new();
        }
        let edges: Vec<u64> = self.radical().gens.iter().map(|g| g.support_mask()).collect();
        let mut covers = Vec::new();
        branch_covers(&edges, 0, &mut covers);
        let mut minimal: Vec<u64> = Vec::new();
        covers.sort_by_key(|c: &u64| (c.count_ones(), *c));
        for c in covers {
            if !minimal.iter().any(|m| m & !c == 0) {
                minimal.push(c);
            }
        }
        minimal.sort_unstable();
        minimal.into_iter().map(FacePrime::from_mask).collect()
    }

    /// Krull dimension of `R/self`: `n` minus the smallest cover size;
    /// `-1` for the unit ideal.
    pub fn dim(&self) -> i64 {
        self.min_primes()
            .iter()
            .map(|p| (self.nvars - p.len()) as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Minimal primes of maximal dimension.
    pub fn assh(&self) -> Vec<FacePrime> {
        let primes = self.min_primes();
        let d = primes.iter().map(|p| p.len()).min();
        primes.into_iter().filter(|p| Some(p.len()) == d).collect()
    }

    /// Associated primes of `R/self`: the face primes arising as `(self : m)`
    /// for monomials `m` in the exponent box `0 ≤ m ≤ max_exponents`.
    pub fn associated_primes(&self) -> Vec<FacePrime> {
        let mut out = BTreeSet::new();
        for m in box_monomials(&self.max_exponents()) {
            if self.contains(&m) {
                continue;
            }
            if let Some(p) = self.colon_monomial(&m).as_face_prime() {
                out.insert(p);
            }
        }
        out.into_iter().collect()
    }

    /// `Some(p_S)` when the ideal is generated by variables.
    pub fn as_face_prime(&self) -> Option<FacePrime> {
        if self.is_unit() {
            return None;
        }
        if self.gens.iter().all(|g| g.degree() == 1) {
            return Some(FacePrime::from_mask(
                self.gens.iter().fold(0, |m, g| m | g.support_mask()),
            ));
        }
        None
    }

    pub fn to_ideal(&self, ring: &Arc<Ring>) -> Ideal {
        let one = ring.field().one();
        Ideal::new(
            ring,
            self.gens
                .iter()
                .map(|g| Polynomial::monomial(ring, g.clone(), one.clone()))
                .collect(),
        )
    }

    /// Generators as polynomials, sorted by the ring's monomial order.
    pub fn render_generators(&self, ring: &Arc<Ring>) -> Vec<String> {
        if self.is_zero() {
            return vec!["0".into()];
        }
        let mut gens = self.gens.clone();
        gens.sort_by(|a, b| ring.order().cmp_unchecked(a.as_slice(), b.as_slice()));
        gens.into_iter()
            .map(|g| Polynomial::monomial(ring, g, ring.field().one()).to_string())
            .collect()
    }
}

fn branch_covers(edges: &[u64], chosen: u64, out: &mut Vec<u64>) {
    // first uncovered edge; branch on each of its vertices
    match edges.iter().find(|&&e| e & chosen == 0) {
        None => out.push(chosen),
        Some(&e) => {
            let mut bits = e;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                let next = chosen | (1 << v);
                if !out.iter().any(|&c| c & !next == 0) {
                    branch_covers(edges, next, out);
                }
            }
        }
    }
}

/// All exponent vectors `b` with `0 ≤ b ≤ e`, in lexicographic order.
pub fn box_monomials(e: &ExpVec) -> Vec<ExpVec> {
    let mut out = vec![ExpVec::zeros(e.len())];
    for i in 0..e.len() {
        let mut next = Vec::with_capacity(out.len() * (e.get(i) as usize + 1));
        for b in &out {
            for k in 0..=e.get(i) {
                let mut c = b.clone();
                c.set(i, k);
                next.push(c);
            }
        }
        out = next;
    }
    out.sort();
    out
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| ExpVec::from_slice(g)))
    }

    #[test]
    fn minimal_generators() {
        let a = mi(2, &[&[2, 0], &[1, 1], &[3, 1], &[2, 0]]);
        assert_eq!(a, mi(2, &[&[1, 1], &[2, 0]]));
        assert_eq!(a.generators().len(), 2);
    }

    #[test]
    fn colon_rule() {
        let k = mi(2, &[&[2, 1]]);
        assert_eq!(k.colon_monomial(&ExpVec::from_slice(&[0, 1])), mi(2, &[&[2, 0]]));
        let a = mi(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(a.colon_monomial(&ExpVec::from_slice(&[1, 0])), mi(2, &[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn radical_and_min_primes() {
        assert_eq!(mi(2, &[&[2, 1]]).radical(), mi(2, &[&[1, 1]]));
        let xy = mi(2, &[&[1, 1]]);
        assert_eq!(xy.min_primes(), vec![FacePrime::new([0]), FacePrime::new([1])]);
        assert_eq!(xy.dim(), 1);
        // two planes in four-space
        let j = mi(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(j.assh(), vec![FacePrime::new([0, 1]), FacePrime::new([2, 3])]);
        assert_eq!(j.dim(), 2);
    }

    #[test]
    fn degenerate_ideals() {
        assert_eq!(MonomialIdeal::zero(3).min_primes(), vec![FacePrime::new([])]);
        assert_eq!(MonomialIdeal::zero(3).dim(), 3);
        assert!(MonomialIdeal::unit(3).min_primes().is_empty());
        assert_eq!(MonomialIdeal::unit(3).dim(), -1);
    }

    #[test]
    fn associated_primes_include_embedded() {
        // (x^2, xy) = (x) ∩ (x^2, y): Ass = {(x), (x,y)}
        let a = mi(2, &[&[2, 0], &[1, 1]]);
        assert_eq!(
            a.associated_primes(),
            vec![FacePrime::new([0]), FacePrime::new([0, 1])]
        );
        assert_eq!(a.min_primes(), vec![FacePrime::new([0])]);
    }

    #[test]
    fn box_enumeration() {
        assert_eq!(box_monomials(&ExpVec::from_slice(&[2, 1])).len(), 6);
        assert_eq!(box_monomials(&ExpVec::zeros(3)).len(), 1);
    }
}
