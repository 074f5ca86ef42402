//! Term lattice of the generalized Čech complex `C•_{a,J} = ⊗ C•_{a_i,J}`.
//!
//! Localizations `R_{a,J} = S_{a,J}^{-1} R` are kept as opaque tokens; the
//! only module-level computation is the kernel at position 0.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{Polynomial, Ring};
use crate::support::s_zero;
use crate::torsion::{gamma_monomial, GammaResult, PairContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechFactor {
    pub a: Polynomial,
    pub collapsed: bool,
}

/// A term `R` localized at `S_{a_i,J}` for every `i` in `indices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechTerm {
    /// Indices into the factor list, increasing.
    pub indices: Vec<usize>,
    pub token: String,
}

impl CechTerm {
    pub fn degree(&self) -> usize {
        self.indices.len()
    }
}

/// One nonzero entry of the differential: `terms[from] → terms[to]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub from: usize,
    pub to: usize,
    pub sign: i8,
}

#[derive(Clone, Debug)]
pub struct CechSkeleton {
    ring: Arc<Ring>,
    j: Ideal,
    factors: Vec<CechFactor>,
}

pub fn build_cech(a_list: &[Polynomial], j: &Ideal) -> Result<CechSkeleton> {
    if a_list.is_empty() {
        return Err(Error::precondition("cech", "the element list is empty"));
    }
    let ring = j.ring().clone();
    if a_list.iter().any(|a| !Ring::same(a.ring(), &ring)) {
        return Err(Error::RingMismatch);
    }
    Ok(CechSkeleton {
        ring,
        j: j.clone(),
        factors: a_list
            .iter()
            .map(|a| CechFactor {
                a: a.clone(),
                collapsed: false,
            })
            .collect(),
    })
}

/// Marks every factor with `a_i ∈ √J` as collapsed; such a factor is
/// isomorphic to `R` concentrated in degree 0.
pub fn collapse(sk: &CechSkeleton) -> Result<CechSkeleton> {
    let mut out = sk.clone();
    for f in &mut out.factors {
        if !f.collapsed && s_zero(&f.a, &sk.j)? {
            f.collapsed = true;
        }
    }
    Ok(out)
}

impl CechSkeleton {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn j(&self) -> &Ideal {
        &self.j
    }

    pub fn factors(&self) -> &[CechFactor] {
        &self.factors
    }

    fn surviving(&self) -> Vec<usize> {
        (0..self.factors.len())
            .filter(|&i| !self.factors[i].collapsed)
            .collect()
    }

    /// Number of surviving factors.
    pub fn length(&self) -> usize {
        self.surviving().len()
    }

    fn token(&self, indices: &[usize]) -> String {
        if indices.is_empty() {
            return "R".into();
        }
        let elems: Vec<String> = indices.iter().map(|&i| self.factors[i].a.to_string()).collect();
        if self.j.is_zero() {
            format!("R_{{{}}}", elems.join(", "))
        } else {
            format!("R_{{{}; {}}}", elems.join(", "), self.j)
        }
    }

    /// All `2^length` terms, by degree and then lexicographically.
    pub fn terms(&self) -> Vec<CechTerm> {
        let live = self.surviving();
        let mut subsets: Vec<Vec<usize>> = (0u64..(1u64 << live.len()))
            .map(|mask| {
                (0..live.len())
                    .filter(|&p| mask >> p & 1 == 1)
                    .map(|p| live[p])
                    .collect()
            })
            .collect();
        subsets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        subsets
            .into_iter()
            .map(|indices| CechTerm {
                token: self.token(&indices),
                indices,
            })
            .collect()
    }

    /// The differential: `T → T ∪ {j}` with sign `(-1)^{#{i ∈ T : i < j}}`.
    pub fn incidences(&self) -> Vec<Incidence> {
        let terms = self.terms();
        let mut out = Vec::new();
        for (from, t) in terms.iter().enumerate() {
            for (to, u) in terms.iter().enumerate() {
                if u.degree() != t.degree() + 1 || !t.indices.iter().all(|i| u.indices.contains(i)) {
                    continue;
                }
                let added = u.indices.iter().find(|i| !t.indices.contains(i)).copied();
                let Some(added) = added else { continue };
                let before = t.indices.iter().filter(|&&i| i < added).count();
                out.push(Incidence {
                    from,
                    to,
                    sign: if before % 2 == 0 { 1 } else { -1 },
                });
            }
        }
        out
    }
}

impl fmt::Display for CechSkeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        for d in 0..=self.length() {
            let row: Vec<&str> = terms
                .iter()
                .filter(|t| t.degree() == d)
                .map(|t| t.token.as_str())
                .collect();
            writeln!(f, "C^{d}: {}", row.join(" + "))?;
        }
        Ok(())
    }
}

/// `Γ_{I,J}(R/K)` for `I = (a_list)`, the kernel of `M → ∏ M_{a_i,J}`.
/// Checked against the intersection of the single-factor kernels.
pub fn position_zero_kernel(a_list: &[Polynomial], j: &Ideal, k: &Ideal) -> Result<GammaResult> {
    if a_list.is_empty() {
        return Err(Error::precondition("cech", "the element list is empty"));
    }
    let ring = k.ring();
    let ctx = PairContext::new(Ideal::new(ring, a_list.to_vec()), j.clone(), k.clone())?;
    let whole = gamma_monomial(&ctx)?;
    let mut meet = None;
    for a in a_list {
        let single = PairContext::new(Ideal::new(ring, vec![a.clone()]), j.clone(), k.clone())?;
        let lift = gamma_monomial(&single)?.lift;
        meet = Some(match meet {
            None => lift,
            Some(m) => lift.intersect(&m),
        });
    }
    if meet.as_ref() != Some(&whole.lift) {
        return Err(Error::Internal(
            "position-0 kernel differs from the intersection of factor kernels".into(),
        ));
    }
    Ok(whole)
}
