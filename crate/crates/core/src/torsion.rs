//! The `(I, J)`-torsion functor on cyclic modules `M = R/K`.
//!
//! Submodules of `R/K` are represented by their lifts `L ⊇ K`. For monomial
//! data `Γ_{I,J}(R/K)` is computed three ways: a radical test on each box
//! monomial, a minimal-prime test against `W(I, J)`, and a union of
//! saturations over the directed family `W̃(I, J)`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::{box_monomials, FacePrime, MonomialIdeal};
use crate::ring::{ExpVec, Polynomial, Ring};
use crate::support::{w_member, wtilde_member, PairSpec};

/// Boxes with more monomials than this are refused.
pub const MAX_BOX: usize = 1 << 20;

/// The pair `(I, J)` and the defining ideal `K` of `M = R/K`.
#[derive(Clone, Debug)]
pub struct PairContext {
    pub pair: PairSpec,
    pub k: Ideal,
}

impl PairContext {
    pub fn new(i: Ideal, j: Ideal, k: Ideal) -> Result<Self> {
        if !Ring::same(i.ring(), k.ring()) {
            return Err(Error::RingMismatch);
        }
        Ok(PairContext {
            pair: PairSpec::new(i, j)?,
            k,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.k.ring()
    }

    pub fn i(&self) -> &Ideal {
        &self.pair.i
    }

    pub fn j(&self) -> &Ideal {
        &self.pair.j
    }

    /// The same pair acting on `R/K'`.
    pub fn with_module(&self, k: Ideal) -> Result<Self> {
        PairContext::new(self.pair.i.clone(), self.pair.j.clone(), k)
    }
}

/// `I`, `J`, `K` as monomial ideals.
#[derive(Clone, Debug)]
pub struct MonomialContext {
    pub i: MonomialIdeal,
    pub j: MonomialIdeal,
    pub k: MonomialIdeal,
}

impl MonomialContext {
    pub fn from_context(ctx: &PairContext) -> Result<Self> {
        Ok(MonomialContext {
            i: monomial_of(ctx.i(), "I")?,
            j: monomial_of(ctx.j(), "J")?,
            k: monomial_of(&ctx.k, "K")?,
        })
    }

    /// Monomial membership test for `x^b ∈ Γ`: `I ⊆ √((K : x^b) + J)`.
    pub fn member(&self, b: &ExpVec) -> bool {
        let a = self.k.colon_monomial(b).sum(&self.j);
        self.i.generators().iter().all(|g| a.radical_contains(g))
    }
}

pub(crate) fn monomial_of(ideal: &Ideal, name: &str) -> Result<MonomialIdeal> {
    ideal
        .as_monomial()?
        .ok_or_else(|| Error::NonMonomial(format!("{name} = {ideal}")))
}

/// A lift `L` of `Γ_{I,J}(R/K)` together with how each new generator was
/// certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaResult {
    pub lift: MonomialIdeal,
    pub whole_module: bool,
    /// Generators of `L` outside `K`, keyed by exponent, with the kind of
    /// certificate that admitted them.
    pub witnesses: BTreeMap<ExpVec, String>,
}

impl GammaResult {
    fn assemble(k: &MonomialIdeal, extra: Vec<ExpVec>, kind: impl Fn(&ExpVec) -> String) -> Self {
        let lift = k.sum(&MonomialIdeal::new(k.nvars(), extra));
        let witnesses = lift
            .generators()
            .iter()
            .filter(|g| !k.contains(g))
            .map(|g| (g.clone(), kind(g)))
            .collect();
        GammaResult {
            whole_module: lift.is_unit(),
            lift,
            witnesses,
        }
    }
}

/// `x ∈ Γ_{I,J}(R/K)`: `I ⊆ √((K : x) + J)`, with `x` read modulo `K`.
pub fn gamma_member(x: &Polynomial, ctx: &PairContext) -> Result<bool> {
    if !Ring::same(x.ring(), ctx.ring()) {
        return Err(Error::RingMismatch);
    }
    let x = ctx.k.groebner()?.reduce(x)?;
    if x.is_zero() {
        return Ok(true);
    }
    ctx.k.colon_poly(&x)?.sum(ctx.j()).radical_contains_ideal(ctx.i())
}

/// Exponent box `0 ≤ b ≤ e`, where `e` bounds the exponents of `K`'s
/// minimal generators. `(K : x^b)` only depends on `min(b, e)`.
pub fn exponent_box(k: &MonomialIdeal) -> Result<Vec<ExpVec>> {
    let e = k.max_exponents();
    let size = e
        .iter()
        .try_fold(1usize, |acc, &x| acc.checked_mul(x as usize + 1))
        .unwrap_or(usize::MAX);
    if size > MAX_BOX {
        return Err(Error::BoxTooLarge(size));
    }
    Ok(box_monomials(&e))
}

/// `Γ_{I,J}(R/K)` for monomial `I`, `J`, `K` by testing each box monomial.
pub fn gamma_monomial(ctx: &PairContext) -> Result<GammaResult> {
    let mc = MonomialContext::from_context(ctx)?;
    let members = exponent_box(&mc.k)?
        .into_iter()
        .filter(|b| !mc.k.contains(b) && mc.member(b))
        .collect();
    Ok(GammaResult::assemble(&mc.k, members, |_| "radical-colon".into()))
}

/// Independent computation: `x^b` is torsion iff every minimal prime of
/// `(K : x^b)` lies in `W(I, J)`.
pub fn gamma_minprime_oracle(ctx: &PairContext) -> Result<GammaResult> {
    let mc = MonomialContext::from_context(ctx)?;
    let ring = ctx.ring();
    let mut in_w: BTreeMap<FacePrime, bool> = BTreeMap::new();
    let mut members = Vec::new();
    for b in exponent_box(&mc.k)? {
        let colon = mc.k.colon_monomial(&b);
        if colon.is_unit() {
            continue;
        }
        let mut all = true;
        for p in colon.min_primes() {
            let ok = match in_w.get(&p) {
                Some(&v) => v,
                None => {
                    let v = w_member(&p.to_ideal(ring), &ctx.pair)?;
                    in_w.insert(p.clone(), v);
                    v
                }
            };
            if !ok {
                all = false;
                break;
            }
        }
        if all {
            members.push(b);
        }
    }
    Ok(GammaResult::assemble(&mc.k, members, |_| "min-primes-in-W".into()))
}

/// Independent computation as a directed union: `L = K + Σ (K : a^∞)` over
/// the candidate ideals `a = (K : x^b)` that lie in `W̃(I, J)`. Saturations
/// and `W̃` tests use Gröbner bases.
pub fn gamma_colimit_oracle(ctx: &PairContext) -> Result<GammaResult> {
    let mc = MonomialContext::from_context(ctx)?;
    let ring = ctx.ring();
    let candidates: BTreeSet<MonomialIdeal> = exponent_box(&mc.k)?
        .iter()
        .map(|b| mc.k.colon_monomial(b))
        .collect();
    let mut extra = Vec::new();
    for a in candidates {
        let a_ideal = a.to_ideal(ring);
        if !wtilde_member(&a_ideal, &ctx.pair)? {
            continue;
        }
        let sat = ctx.k.saturate(&a_ideal)?;
        let sat = monomial_of(&sat, "saturation")?;
        extra.extend(sat.generators().iter().cloned());
    }
    Ok(GammaResult::assemble(&mc.k, extra, |_| "saturation".into()))
}

/// `R/K` is `(I, J)`-torsion iff its minimal primes lie in `W(I, J)`.
pub fn is_torsion(ctx: &PairContext) -> Result<bool> {
    let k = monomial_of(&ctx.k, "K")?;
    for p in k.min_primes() {
        if !w_member(&p.to_ideal(ctx.ring()), &ctx.pair)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `M/JM = R/(K + J)` is `I`-torsion.
pub fn mj_quotient_is_i_torsion(ctx: &PairContext) -> Result<bool> {
    ctx.k.sum(ctx.j()).radical_contains_ideal(ctx.i())
}

/// `Ass(L/K)` for monomial ideals `K ⊆ L`: the face primes `(K : m)` over
/// box monomials `m ∈ L \ K`.
pub fn ass_of_submodule(k: &MonomialIdeal, lift: &MonomialIdeal) -> Result<Vec<FacePrime>> {
    let mut out = BTreeSet::new();
    for b in exponent_box(k)? {
        if lift.contains(&b) && !k.contains(&b) {
            if let Some(p) = k.colon_monomial(&b).as_face_prime() {
                out.insert(p);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// `Ass(R/K) ∩ W(I, J)` for monomial `K`.
pub fn ass_in_w(ctx: &PairContext) -> Result<Vec<FacePrime>> {
    let k = monomial_of(&ctx.k, "K")?;
    let mut out = Vec::new();
    for p in k.associated_primes() {
        if w_member(&p.to_ideal(ctx.ring()), &ctx.pair)? {
            out.push(p);
        }
    }
    Ok(out)
}
