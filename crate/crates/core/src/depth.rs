//! Betti numbers, projective dimension and depth of `R/K` for monomial `K`.
//!
//! Two independent routes to the Betti table: the multigraded strands of the
//! Koszul complex `K(x) ⊗ R/K`, and Hochster's formula on the Stanley–Reisner
//! complex of a squarefree ideal. Depth follows from Auslander–Buchsbaum.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::monomial::{box_monomials, FacePrime, MonomialIdeal};
use crate::ring::{ExpVec, Field};
use crate::torsion::MAX_BOX;

/// Depth with the convention that the zero module has depth `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl Depth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Depth::Finite(d) => Some(d),
            Depth::Infinite => None,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Infinite => f.write_str("inf"),
        }
    }
}

/// Nonzero multigraded Betti numbers `β_{i,d}` of `R/K`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, ExpVec), usize>,
}

impl BettiTable {
    /// Projective dimension; `None` for the zero module.
    pub fn pd(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    pub fn get(&self, i: usize, d: &ExpVec) -> usize {
        self.entries.get(&(i, d.clone())).copied().unwrap_or(0)
    }

    /// Coarse Betti numbers `β_i = Σ_d β_{i,d}`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; self.pd().map_or(0, |p| p + 1)];
        for ((i, _), b) in &self.entries {
            out[*i] += b;
        }
        out
    }

    fn record(&mut self, i: usize, d: ExpVec, b: usize) {
        if b > 0 {
            self.entries.insert((i, d), b);
        }
    }
}

/// A squarefree monomial ideal made squarefree by splitting exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polarization {
    pub ideal: MonomialIdeal,
    /// `varmap[v] = (i, j)`: new variable `v` stands for the `j`-th copy
    /// (1-based) of original variable `i`.
    pub varmap: Vec<(usize, u32)>,
}

/// Replaces `x_i^k` by `x_{i,1}···x_{i,k}`. Every original variable keeps at
/// least one copy, so squarefree ideals are fixed points.
pub fn polarize(k: &MonomialIdeal) -> Result<Polarization> {
    if k.is_unit() {
        return Err(Error::UnitIdeal("K".into()));
    }
    let e = k.max_exponents();
    let mut varmap = Vec::new();
    let mut offset = Vec::with_capacity(e.len());
    for (i, &ei) in e.iter().enumerate() {
        offset.push(varmap.len());
        for j in 1..=ei.max(1) {
            varmap.push((i, j));
        }
    }
    if varmap.len() > 64 {
        return Err(Error::InvalidRing(format!(
            "polarization needs {} variables",
            varmap.len()
        )));
    }
    let gens = k.generators().iter().map(|g| {
        let mut out = ExpVec::zeros(varmap.len());
        for (i, &a) in g.iter().enumerate() {
            for j in 0..a as usize {
                out.set(offset[i] + j, 1);
            }
        }
        out
    });
    Ok(Polarization {
        ideal: MonomialIdeal::new(varmap.len(), gens),
        varmap,
    })
}

/// Betti numbers from the Koszul complex on all variables tensored with
/// `R/K`, one multidegree strand at a time over `0 ≤ d ≤ e + 1`.
pub fn koszul_tor(k: &MonomialIdeal, field: Field) -> Result<BettiTable> {
    if k.is_unit() {
        return Err(Error::UnitIdeal("K".into()));
    }
    let n = k.nvars();
    let top = ExpVec::from(k.max_exponents().iter().map(|&a| a + 1).collect::<Vec<_>>());
    let size = top
        .iter()
        .try_fold(1usize, |acc, &x| acc.checked_mul(x as usize + 1))
        .unwrap_or(usize::MAX);
    if size > MAX_BOX || n > 20 {
        return Err(Error::BoxTooLarge(size));
    }
    let mut table = BettiTable::default();
    for d in box_monomials(&top) {
        // basis of the strand in homological degree i: subsets F ⊆ supp(d)
        // with x^{d - e_F} ∉ K
        let support = d.support_mask();
        let mut basis: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
        let mut sub = support;
        loop {
            let m = sub_exp(&d, sub);
            if !k.contains(&m) {
                basis[sub.count_ones() as usize].push(sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & support;
        }
        if basis.iter().all(Vec::is_empty) {
            continue;
        }
        // ranks[i] = rank of ∂_i : C_i → C_{i-1}
        let mut ranks = vec![0usize; n + 2];
        for i in 1..=n {
            ranks[i] = boundary_rank(&basis[i], &basis[i - 1], field);
        }
        for i in 0..=n {
            let b = basis[i].len() - ranks[i] - ranks[i + 1];
            table.record(i, d.clone(), b);
        }
    }
    Ok(table)
}

fn sub_exp(d: &ExpVec, mask: u64) -> ExpVec {
    let mut m = d.clone();
    for (i, a) in d.iter().enumerate() {
        if mask >> i & 1 == 1 {
            m.set(i, a - 1);
        }
    }
    m
}

/// Rank of the simplicial boundary between subsets of size `q` and `q - 1`
/// (both given as bitmasks), with sign `(-1)^{position of the removed bit}`.
fn boundary_rank(src: &[u64], dst: &[u64], field: Field) -> usize {
    if src.is_empty() || dst.is_empty() {
        return 0;
    }
    let index: BTreeMap<u64, usize> = dst.iter().enumerate().map(|(r, &m)| (m, r)).collect();
    let mut mat = Matrix::zeros(field, dst.len(), src.len());
    let one = field.one();
    let minus = field.neg(&one);
    for (c, &f) in src.iter().enumerate() {
        let mut pos = 0;
        for v in 0..64 {
            if f >> v & 1 == 1 {
                if let Some(&r) = index.get(&(f & !(1u64 << v))) {
                    mat.set(r, c, if pos % 2 == 0 { one.clone() } else { minus.clone() });
                }
                pos += 1;
            }
        }
    }
    mat.rank()
}

/// A simplicial complex on `nvertices` vertices given by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub nvertices: usize,
    pub facets: Vec<u64>,
}

impl SimplicialComplex {
    /// The Stanley–Reisner complex: faces are the sets `F` with `x_F ∉ K`.
    pub fn stanley_reisner(k: &MonomialIdeal) -> Result<Self> {
        if !k.is_squarefree() {
            return Err(Error::precondition("hochster", "ideal is not squarefree"));
        }
        let n = k.nvars();
        if n > 20 {
            return Err(Error::BoxTooLarge(1 << n.min(63)));
        }
        let nonfaces: Vec<u64> = k.generators().iter().map(ExpVec::support_mask).collect();
        let is_face = |f: u64| !nonfaces.iter().any(|&g| g & !f == 0);
        let mut facets = Vec::new();
        for f in 0..(1u64 << n) {
            if is_face(f) && (0..n).all(|v| f >> v & 1 == 1 || !is_face(f | 1 << v)) {
                facets.push(f);
            }
        }
        Ok(SimplicialComplex { nvertices: n, facets })
    }

    pub fn is_face(&self, f: u64) -> bool {
        self.facets.iter().any(|&g| f & !g == 0)
    }

    /// Dimensions of reduced homology of the induced subcomplex on `sigma`,
    /// indexed by `q + 1` for `q = -1, 0, ..., |sigma| - 1`.
    pub fn reduced_homology(&self, sigma: u64, field: Field) -> Vec<usize> {
        let size = sigma.count_ones() as usize;
        let mut chains: Vec<Vec<u64>> = vec![Vec::new(); size + 1];
        let mut sub = sigma;
        loop {
            if self.is_face(sub) {
                chains[sub.count_ones() as usize].push(sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & sigma;
        }
        let mut ranks = vec![0usize; size + 2];
        for q in 1..=size {
            ranks[q] = boundary_rank(&chains[q], &chains[q - 1], field);
        }
        (0..=size)
            .map(|q| chains[q].len() - ranks[q] - ranks[q + 1])
            .collect()
    }
}

/// Betti numbers of `R/K` for squarefree `K` by Hochster's formula
/// `β_{i,σ} = dim H̃_{|σ|-i-1}(Δ|_σ)`.
pub fn hochster_betti(k: &MonomialIdeal, field: Field) -> Result<BettiTable> {
    if k.is_unit() {
        return Err(Error::UnitIdeal("K".into()));
    }
    let delta = SimplicialComplex::stanley_reisner(k)?;
    let n = k.nvars();
    let mut table = BettiTable::default();
    for sigma in 0..(1u64 << n) {
        let size = sigma.count_ones() as usize;
        let h = delta.reduced_homology(sigma, field);
        // h[q + 1] = H̃_q, and i = |σ| - 1 - q
        for (shifted_q, &dim) in h.iter().enumerate() {
            let i = size - shifted_q;
            let mut d = ExpVec::zeros(n);
            for v in 0..n {
                if sigma >> v & 1 == 1 {
                    d.set(v, 1);
                }
            }
            table.record(i, d, dim);
        }
    }
    Ok(table)
}

/// Projective dimension, from Hochster's formula on the polarization or
/// from the Koszul strands of `K` itself, whichever enumerates less.
pub fn projective_dimension(k: &MonomialIdeal, field: Field) -> Result<usize> {
    let pol = polarize(k)?;
    // Hochster visits Σ_σ 2^|σ| = 3^m subsets; the Koszul strands visit
    // Π (1 + 2(e_i + 1)) (multidegree, subset) pairs.
    let hochster_cost = 3f64.powi(pol.varmap.len() as i32);
    let koszul_cost: f64 = k
        .max_exponents()
        .iter()
        .map(|&e| 2.0 * e as f64 + 3.0)
        .product();
    let table = if koszul_cost < hochster_cost {
        koszul_tor(k, field)?
    } else {
        hochster_betti(&pol.ideal, field)?
    };
    table
        .pd()
        .ok_or_else(|| Error::Internal("empty Betti table for a proper ideal".into()))
}

/// `depth R/K = n - pd`, and `∞` for `K = (1)`.
pub fn depth_quotient(k: &MonomialIdeal, field: Field) -> Result<Depth> {
    if k.is_unit() {
        return Ok(Depth::Infinite);
    }
    Ok(Depth::Finite(k.nvars() - projective_dimension(k, field)?))
}

/// `K` with the variables outside `s` set to 1, as an ideal of `k[x_S]`.
/// `None` when some generator becomes a unit.
pub fn restrict_to_face(k: &MonomialIdeal, s: &FacePrime) -> Option<MonomialIdeal> {
    let vars = s.vars();
    let mut gens = Vec::with_capacity(k.generators().len());
    for g in k.generators() {
        let r = ExpVec::from(vars.iter().map(|&v| g.get(v)).collect::<Vec<_>>());
        if r.is_zero() {
            return None;
        }
        gens.push(r);
    }
    Some(MonomialIdeal::new(vars.len(), gens))
}

/// `depth (R/K)_{p_S}`, or `None` when `p_S` is not in the support.
pub fn depth_at_face(k: &MonomialIdeal, s: &FacePrime, field: Field) -> Result<Option<Depth>> {
    match restrict_to_face(k, s) {
        None => Ok(None),
        Some(r) => depth_quotient(&r, field).map(Some),
    }
}
