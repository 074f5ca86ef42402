//! Numerical invariants of `H^i_{I,J}(R/K)`: the lowest nonvanishing degree
//! as an infimum of depths over `W(I, J)`, upper vanishing bounds, the top
//! nonvanishing degree, an arithmetic-rank bound and the Lichtenbaum–
//! Hartshorne type vanishing test.
//!
//! Local statements are read in the localization at `(x_1, ..., x_n)`.

use crate::depth::{depth_at_face, Depth};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::FacePrime;
use crate::support::w_member;
use crate::torsion::{monomial_of, PairContext};

/// Which primes `pair_depth` minimized over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateFamily {
    FacePrimes,
    FacePrimesAndExtras,
}

impl CandidateFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            CandidateFamily::FacePrimes => "face-primes",
            CandidateFamily::FacePrimesAndExtras => "face-primes+extras",
        }
    }
}

/// Infimum of `depth M_p` over the candidate primes `p ∈ W(I, J)`.
///
/// This is an upper bound for the infimum over all of `W(I, J)`, exact when
/// the infimum is attained on a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDepth {
    pub value: Depth,
    /// Rendered prime attaining the minimum; `None` when no candidate
    /// qualified (the infimum of the empty set is `∞`).
    pub witness: Option<String>,
    pub family: CandidateFamily,
    /// Candidates that lie in `W(I, J) ∩ Supp(M)`.
    pub qualifying: usize,
}

/// Minimizes `depth_at_face` over face primes in `W(I, J)` (by size, then
/// lexicographically), then over `extras` passing `w_member` with depth
/// `n - dim R/p`. Extras must lie in the irrelevant ideal and need `K = 0`.
pub fn pair_depth(ctx: &PairContext, extras: &[Ideal]) -> Result<PairDepth> {
    let ring = ctx.ring();
    let k = monomial_of(&ctx.k, "K")?;
    if !extras.is_empty() && !ctx.k.is_zero() {
        return Err(Error::precondition(
            "pair-depth",
            "extra candidates need K = 0",
        ));
    }
    for p in extras {
        if !p.in_maximal_ideal() {
            return Err(Error::precondition(
                "pair-depth",
                format!("extra candidate {p} is not inside the irrelevant ideal"),
            ));
        }
    }

    let mut faces: Vec<FacePrime> = FacePrime::all(ring.nvars()).collect();
    faces.sort_by(|a, b| (a.len(), a.vars()).cmp(&(b.len(), b.vars())));

    let mut best: Option<(Depth, String)> = None;
    let mut qualifying = 0;
    let mut offer = |d: Depth, w: String| {
        qualifying += 1;
        let better = match &best {
            None => true,
            Some((bd, bw)) => (d, &w) < (*bd, bw),
        };
        if better {
            best = Some((d, w));
        }
    };
    for s in &faces {
        let Some(d) = depth_at_face(&k, s, ring.field())? else {
            continue;
        };
        if w_member(&s.to_ideal(ring), &ctx.pair)? {
            offer(d, s.render(ring));
        }
    }
    for p in extras {
        if w_member(p, &ctx.pair)? {
            let height = ring.nvars() as i64 - p.dim_quotient()?;
            offer(Depth::Finite(height as usize), p.to_string());
        }
    }
    let family = if extras.is_empty() {
        CandidateFamily::FacePrimes
    } else {
        CandidateFamily::FacePrimesAndExtras
    };
    Ok(match best {
        Some((value, w)) => PairDepth {
            value,
            witness: Some(w),
            family,
            qualifying,
        },
        None => PairDepth {
            value: Depth::Infinite,
            witness: None,
            family,
            qualifying,
        },
    })
}

/// Degrees above which `H^i_{I,J}(M)` vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VanishingBounds {
    /// `dim M/JM`, valid in the local model.
    pub local: i64,
    /// `min(dim M, dim M/JM + 1)`, valid over any ring.
    pub nonlocal: i64,
}

pub fn vanishing_bounds(ctx: &PairContext) -> Result<VanishingBounds> {
    if ctx.j().is_unit()? {
        return Err(Error::precondition(
            "vanishing-bounds",
            "bound does not apply for J = R: dim M/JM = -1 while H^0 = M",
        ));
    }
    let local = ctx.k.sum(ctx.j()).dim_quotient()?;
    let nonlocal = ctx.k.dim_quotient()?.min(local + 1);
    Ok(VanishingBounds { local, nonlocal })
}

/// `sup { i : H^i_{I,J}(M) ≠ 0 } = dim M/JM` when `I + J` is primary to
/// the irrelevant ideal on `M`.
pub fn top_nonvanishing(ctx: &PairContext) -> Result<i64> {
    let total = ctx.i().sum(ctx.j()).sum(&ctx.k);
    if !total.in_maximal_ideal() {
        return Err(Error::precondition(
            "top-degree",
            "I + J + K is not contained in the irrelevant ideal",
        ));
    }
    let dim = total.dim_quotient()?;
    if dim != 0 {
        return Err(Error::precondition(
            "top-degree",
            format!("I + J + K is not primary to the irrelevant ideal (dim R/(I+J+K) = {dim})"),
        ));
    }
    ctx.k.sum(ctx.j()).dim_quotient()
}

/// `H^d_{I,J}(R/K) = 0` for `d = dim R/K` iff every `p ∈ Assh(R/K)` with
/// `J ⊆ p` has `dim R/(I + p) > 0`.
pub fn lh_vanishes(ctx: &PairContext) -> Result<bool> {
    let k = monomial_of(&ctx.k, "K")?;
    if ctx.i().sum(&ctx.k).is_unit()? {
        return Err(Error::precondition("lh", "I is not proper modulo K"));
    }
    if ctx.j().sum(&ctx.k).is_unit()? {
        return Err(Error::precondition("lh", "J is not proper modulo K"));
    }
    let ring = ctx.ring();
    for p in k.assh() {
        let p = p.to_ideal(ring);
        if p.contains_ideal(ctx.j())? && ctx.i().sum(&p).dim_quotient()? <= 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of generators of `I` outside `√(J + K)`; an upper bound for
/// `ara(I R̄)` with `R̄ = R/√(J + K)`.
pub fn ara_upper_bound(ctx: &PairContext) -> Result<usize> {
    let jk = ctx.j().sum(&ctx.k);
    let mut count = 0;
    for g in ctx.i().nonzero_generators() {
        if !jk.radical_contains(g)? {
            count += 1;
        }
    }
    Ok(count)
}

/// All invariants of one context, checked against each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub pair_depth: PairDepth,
    pub bounds: Option<VanishingBounds>,
    pub top_degree: Option<i64>,
    pub ara_bound: usize,
    pub lh_verdict: Option<bool>,
    /// Set when the candidate infimum exceeds the top degree, which shows
    /// the candidate family missed the true infimum.
    pub candidates_overshoot: bool,
}

pub fn invariant_report(ctx: &PairContext, extras: &[Ideal]) -> Result<InvariantReport> {
    let pair_depth = pair_depth(ctx, extras)?;
    let bounds = optional(vanishing_bounds(ctx))?;
    let top_degree = optional(top_nonvanishing(ctx))?;
    let ara_bound = ara_upper_bound(ctx)?;
    let lh_verdict = optional(lh_vanishes(ctx))?;

    if let Some(b) = bounds {
        if b.nonlocal < b.local {
            return Err(Error::Internal("nonlocal bound below local bound".into()));
        }
    }
    let mut candidates_overshoot = false;
    if let Some(top) = top_degree {
        if let Depth::Finite(d) = pair_depth.value {
            candidates_overshoot = d as i64 > top;
        }
        if let Some(b) = bounds {
            if top > b.local {
                return Err(Error::Internal(format!(
                    "top degree {top} exceeds local bound {}",
                    b.local
                )));
            }
        }
    }
    Ok(InvariantReport {
        pair_depth,
        bounds,
        top_degree,
        ara_bound,
        lh_verdict,
        candidates_overshoot,
    })
}

/// Precondition failures become `None`; anything else propagates.
fn optional<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Precondition { .. }) | Err(Error::NonMonomial(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Polynomial, Ring};
    use std::sync::Arc;

    fn xy() -> (Arc<Ring>, Polynomial, Polynomial) {
        let r = Ring::qq(&["x", "y"]);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        (r, x, y)
    }

    fn ctx(r: &Arc<Ring>, i: Vec<Polynomial>, j: Vec<Polynomial>, k: Vec<Polynomial>) -> PairContext {
        PairContext::new(Ideal::new(r, i), Ideal::new(r, j), Ideal::new(r, k)).unwrap()
    }

    #[test]
    fn pair_depth_examples() {
        let (r, x, y) = xy();
        let c = ctx(&r, vec![x.clone()], vec![y.clone()], vec![]);
        let pd = pair_depth(&c, &[]).unwrap();
        assert_eq!(pd.value, Depth::Finite(1));
        assert_eq!(pd.witness.as_deref(), Some("(x)"));
        assert_eq!(pd.family, CandidateFamily::FacePrimes);

        let x2y = &(&x * &x) * &y;
        let c = ctx(&r, vec![x.clone()], vec![x.clone(), y.clone()], vec![x2y]);
        assert_eq!(pair_depth(&c, &[]).unwrap().value, Depth::Finite(0));

        let c = ctx(&r, vec![x.clone()], vec![y.clone()], vec![Polynomial::one(&r)]);
        let pd = pair_depth(&c, &[]).unwrap();
        assert_eq!((pd.value, pd.witness), (Depth::Infinite, None));
    }

    #[test]
    fn pair_depth_with_diagonal_extra() {
        let r = Ring::qq(&["X", "Y", "Z", "W"]);
        let v: Vec<Polynomial> = (0..4).map(|i| Polynomial::var(&r, i)).collect();
        let j = vec![&v[0] * &v[2], &v[0] * &v[3], &v[1] * &v[2], &v[1] * &v[3]];
        let c = ctx(&r, v.clone(), j, vec![]);
        assert_eq!(pair_depth(&c, &[]).unwrap().value, Depth::Finite(4));
        let diag = Ideal::new(&r, vec![&v[0] - &v[2], &v[1] - &v[3]]);
        let pd = pair_depth(&c, &[diag]).unwrap();
        assert_eq!(pd.value, Depth::Finite(2));
        assert_eq!(pd.witness.as_deref(), Some("(X - Z, Y - W)"));

        let off = Ideal::new(&r, vec![&v[0] - &Polynomial::one(&r)]);
        assert!(pair_depth(&c, &[off]).is_err());
        let c2 = c.with_module(Ideal::new(&r, vec![v[0].clone()])).unwrap();
        assert!(pair_depth(&c2, &[Ideal::new(&r, vec![v[0].clone()])]).is_err());
    }

    #[test]
    fn bounds_examples() {
        let r = Ring::qq(&["x"]);
        let x = Polynomial::var(&r, 0);
        let one = Polynomial::one(&r);
        let c = ctx(&r, vec![&x - &one], vec![&(&x * &x) - &x], vec![]);
        assert_eq!(vanishing_bounds(&c).unwrap(), VanishingBounds { local: 0, nonlocal: 1 });

        let (r, x, y) = xy();
        let c = ctx(&r, vec![x.clone()], vec![y.clone()], vec![]);
        assert_eq!(vanishing_bounds(&c).unwrap(), VanishingBounds { local: 1, nonlocal: 2 });
        let c = ctx(&r, vec![x.clone()], vec![Polynomial::one(&r)], vec![]);
        assert!(matches!(vanishing_bounds(&c), Err(Error::Precondition { .. })));
    }

    #[test]
    fn top_degree_examples() {
        let (r, x, y) = xy();
        assert_eq!(top_nonvanishing(&ctx(&r, vec![x.clone()], vec![y.clone()], vec![])).unwrap(), 1);
        assert_eq!(top_nonvanishing(&ctx(&r, vec![x.clone(), y.clone()], vec![], vec![])).unwrap(), 2);
        assert!(top_nonvanishing(&ctx(&r, vec![x.clone()], vec![x.clone()], vec![])).is_err());
        let one = Polynomial::one(&r);
        let shifted = ctx(&r, vec![&x - &one], vec![&y - &one], vec![]);
        assert!(top_nonvanishing(&shifted).is_err());
    }

    #[test]
    fn lh_examples() {
        let (r, x, y) = xy();
        assert!(lh_vanishes(&ctx(&r, vec![x.clone()], vec![y.clone()], vec![])).unwrap());
        assert!(!lh_vanishes(&ctx(&r, vec![x.clone(), y.clone()], vec![], vec![])).unwrap());
        assert!(lh_vanishes(&ctx(&r, vec![x.clone()], vec![], vec![])).unwrap());
        assert!(lh_vanishes(&ctx(&r, vec![Polynomial::one(&r)], vec![], vec![])).is_err());
    }

    #[test]
    fn ara_examples() {
        let (r, x, y) = xy();
        let c = ctx(&r, vec![&x * &x, &x * &y], vec![y.clone()], vec![]);
        assert_eq!(ara_upper_bound(&c).unwrap(), 1);
        let c = ctx(&r, vec![x.clone()], vec![&x * &x], vec![]);
        assert_eq!(ara_upper_bound(&c).unwrap(), 0);
        let c = ctx(&r, vec![x.clone(), y.clone()], vec![], vec![]);
        assert_eq!(ara_upper_bound(&c).unwrap(), 2);
    }

    #[test]
    fn report_is_coherent() {
        let (r, x, y) = xy();
        let c = ctx(&r, vec![x.clone()], vec![y.clone()], vec![]);
        let rep = invariant_report(&c, &[]).unwrap();
        assert_eq!(rep.top_degree, Some(1));
        assert_eq!(rep.lh_verdict, Some(true));
        assert_eq!(rep.ara_bound, 1);
        assert!(!rep.candidates_overshoot);
    }

    #[test]
    fn face_candidates_overshoot_on_two_planes() {
        let r = Ring::qq(&["X", "Y", "Z", "W"]);
        let v: Vec<Polynomial> = (0..4).map(|i| Polynomial::var(&r, i)).collect();
        let j = vec![&v[0] * &v[2], &v[0] * &v[3], &v[1] * &v[2], &v[1] * &v[3]];
        let c = ctx(&r, v.clone(), j, vec![]);
        let rep = invariant_report(&c, &[]).unwrap();
        assert_eq!(rep.top_degree, Some(2));
        assert!(rep.candidates_overshoot);
        let diag = Ideal::new(&r, vec![&v[0] - &v[2], &v[1] - &v[3]]);
        assert!(!invariant_report(&c, &[diag]).unwrap().candidates_overshoot);
    }
}
