//! Seeded randomized property suites.
//!
//! Every sample draws from its own ChaCha stream (keyed by the suite name,
//! the seed and the sample index), so a failing sample can be replayed in
//! isolation and results do not depend on evaluation order.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cech::{build_cech, collapse, position_zero_kernel};
use crate::depth::{depth_quotient, hochster_betti, koszul_tor, polarize};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::invariants::{ara_upper_bound, pair_depth};
use crate::monomial::{FacePrime, MonomialIdeal};
use crate::ring::{Coeff, ExpVec, Field, MonomialOrder, Polynomial, Ring};
use crate::support::{w_member, PairSpec};
use crate::torsion::{
    ass_in_w, ass_of_submodule, gamma_colimit_oracle, gamma_minprime_oracle, gamma_monomial,
    monomial_of, PairContext,
};

/// Suite names with their default sample counts.
pub const SUITES: &[(&str, usize)] = &[
    ("groebner", 500),
    ("w-identities", 200),
    ("gamma-triangle", 200),
    ("gamma-identities", 200),
    ("identity-functor", 50),
    ("ass", 100),
    ("torsion-free", 100),
    ("hochster", 50),
    ("polarization", 50),
    ("pair-depth", 100),
    ("cech", 100),
];

pub const DEFAULT_SEED: u64 = 20240601;

/// Failures kept verbatim in a report.
const MAX_FAILURES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub passed: usize,
    pub failed: usize,
    /// `"sample N: reason"` for the first few failures.
    pub failures: Vec<String>,
}

type Outcome = std::result::Result<(), String>;

pub fn run_suite(name: &str, seed: u64, samples: usize) -> Result<SuiteReport> {
    let sample: fn(&mut ChaCha8Rng, usize) -> Result<Outcome> = match name {
        "groebner" => groebner_sample,
        "w-identities" => w_identities_sample,
        "gamma-triangle" => triangle_sample,
        "gamma-identities" => gamma_identities_sample,
        "identity-functor" => identity_sample,
        "ass" => ass_sample,
        "torsion-free" => torsion_free_sample,
        "hochster" => hochster_sample,
        "polarization" => polarization_sample,
        "pair-depth" => pair_depth_sample,
        "cech" => cech_sample,
        _ => {
            return Err(Error::precondition(
                "check",
                format!("unknown suite `{name}`"),
            ))
        }
    };
    let mut report = SuiteReport {
        suite: name.to_string(),
        seed,
        samples,
        passed: 0,
        failed: 0,
        failures: Vec::new(),
    };
    for idx in 0..samples {
        let mut rng = sample_rng(name, seed, idx);
        let outcome = match sample(&mut rng, idx) {
            Ok(o) => o,
            Err(e) => Err(format!("error: {e}")),
        };
        match outcome {
            Ok(()) => report.passed += 1,
            Err(why) => {
                report.failed += 1;
                if report.failures.len() < MAX_FAILURES {
                    report.failures.push(format!("sample {idx}: {why}"));
                }
            }
        }
    }
    Ok(report)
}

fn sample_rng(name: &str, seed: u64, idx: usize) -> ChaCha8Rng {
    // FNV-1a over the suite name keeps streams of different suites apart
    let tag = name
        .bytes()
        .fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ tag);
    rng.set_stream(idx as u64);
    rng
}

const NAMES: [&str; 5] = ["x", "y", "z", "w", "v"];

fn qq_ring(n: usize) -> Arc<Ring> {
    Ring::qq(&NAMES[..n])
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn rand_exp(rng: &mut ChaCha8Rng, n: usize, max: u32) -> ExpVec {
    loop {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
        if e.iter().any(|&a| a > 0) {
            return ExpVec::from(e);
        }
    }
}

fn rand_monomial_ideal(rng: &mut ChaCha8Rng, n: usize, max: u32, gens: usize) -> MonomialIdeal {
    let count = rng.gen_range(1..=gens);
    MonomialIdeal::new(n, (0..count).map(|_| rand_exp(rng, n, max)))
}

/// Random monomial ideal that is zero with probability `p_zero`.
fn maybe_zero(rng: &mut ChaCha8Rng, n: usize, max: u32, gens: usize, p_zero: f64) -> MonomialIdeal {
    if rng.gen_bool(p_zero) {
        MonomialIdeal::zero(n)
    } else {
        rand_monomial_ideal(rng, n, max, gens)
    }
}

fn mono_ctx(ring: &Arc<Ring>, i: &MonomialIdeal, j: &MonomialIdeal, k: &MonomialIdeal) -> Result<PairContext> {
    PairContext::new(i.to_ideal(ring), j.to_ideal(ring), k.to_ideal(ring))
}

fn lift(ring: &Arc<Ring>, i: &MonomialIdeal, j: &MonomialIdeal, k: &MonomialIdeal) -> Result<MonomialIdeal> {
    Ok(gamma_monomial(&mono_ctx(ring, i, j, k)?)?.lift)
}

/// Random context over `k[x_1..x_n]`, `1 ≤ n ≤ 3`, exponents at most 3.
fn rand_context(rng: &mut ChaCha8Rng) -> (Arc<Ring>, MonomialIdeal, MonomialIdeal, MonomialIdeal) {
    let n = rng.gen_range(1..=3);
    let i = rand_monomial_ideal(rng, n, 3, 3);
    let j = maybe_zero(rng, n, 3, 3, 0.2);
    let k = maybe_zero(rng, n, 3, 3, 0.15);
    (qq_ring(n), i, j, k)
}

fn show(ring: &Arc<Ring>, m: &MonomialIdeal) -> String {
    format!("({})", m.render_generators(ring).join(", "))
}

fn rand_coeff(rng: &mut ChaCha8Rng, field: Field) -> Coeff {
    loop {
        let c = field.from_i64(rng.gen_range(-5..=5));
        if !field.is_zero(&c) {
            return c;
        }
    }
}

fn rand_poly(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, max_deg: u32, terms: usize) -> Polynomial {
    let n = ring.nvars();
    let count = rng.gen_range(1..=terms);
    let field = ring.field();
    Polynomial::from_terms(
        ring,
        (0..count).map(|_| {
            let deg = rng.gen_range(0..=max_deg);
            (rand_exp_of_degree(rng, n, deg), rand_coeff(rng, field))
        }),
    )
}

fn rand_exp_of_degree(rng: &mut ChaCha8Rng, n: usize, deg: u32) -> ExpVec {
    let mut e = vec![0u32; n];
    for _ in 0..deg {
        e[rng.gen_range(0..n)] += 1;
    }
    ExpVec::from(e)
}

fn rand_homogeneous(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, deg: u32, terms: usize) -> Polynomial {
    let n = ring.nvars();
    let field = ring.field();
    loop {
        let count = rng.gen_range(1..=terms);
        let f = Polynomial::from_terms(
            ring,
            (0..count).map(|_| (rand_exp_of_degree(rng, n, deg), rand_coeff(rng, field))),
        );
        if !f.is_zero() {
            return f;
        }
    }
}

/// Membership with a constructed witness `f = Σ h_i g_i`, and
/// non-membership of `f + (term of degree below every generator)` for
/// homogeneous generators.
fn groebner_sample(rng: &mut ChaCha8Rng, idx: usize) -> Result<Outcome> {
    let field = if idx.is_multiple_of(2) {
        Field::Rational
    } else {
        Field::prime(32003)?
    };
    let order = if rng.gen_bool(0.5) {
        MonomialOrder::GrevLex
    } else {
        MonomialOrder::Lex
    };
    let ring = Ring::new(field, NAMES[..3].iter().map(|s| s.to_string()).collect(), order)?;

    let ngens = rng.gen_range(2..=3);
    let gens: Vec<Polynomial> = (0..ngens).map(|_| rand_poly(rng, &ring, 3, 3)).collect();
    let mut f = Polynomial::zero(&ring);
    for g in &gens {
        f = &f + &(&rand_poly(rng, &ring, 2, 2) * g);
    }
    let ideal = Ideal::new(&ring, gens);
    let gb = ideal.groebner()?;
    if !gb.verify_certificate()? || !gb.is_reduced() {
        return Ok(Err(format!("basis of {ideal} fails its certificate")));
    }
    if !ideal.contains(&f)? {
        return Ok(Err(format!("{f} not found in {ideal}")));
    }

    let deg = rng.gen_range(2..=3);
    let hgens: Vec<Polynomial> = (0..ngens).map(|_| rand_homogeneous(rng, &ring, deg, 3)).collect();
    let low = rng.gen_range(0..deg);
    let mut g = Polynomial::monomial(&ring, rand_exp_of_degree(rng, 3, low), rand_coeff(rng, field));
    for h in &hgens {
        g = &g + &(&rand_poly(rng, &ring, 2, 2) * h);
    }
    let hideal = Ideal::new(&ring, hgens);
    let hgb = hideal.groebner()?;
    if !hgb.verify_certificate()? || !hgb.is_reduced() {
        return Ok(Err(format!("basis of {hideal} fails its certificate")));
    }
    Ok(check(!hideal.contains(&g)?, || format!("{g} wrongly found in {hideal}")))
}

/// The fixed non-face primes used alongside the face primes of `k[x,y,z]`.
fn shifted_primes(ring: &Arc<Ring>) -> Vec<Ideal> {
    let v = |i| Polynomial::var(ring, i);
    let c = |k: i64| Polynomial::constant(ring, ring.field().from_i64(k));
    vec![
        Ideal::new(ring, vec![&v(0) - &c(1)]),
        Ideal::new(ring, vec![&v(1) + &c(2)]),
        Ideal::new(ring, vec![&v(2) - &c(3)]),
        Ideal::new(ring, vec![&v(0) - &c(1), &v(1) - &c(1)]),
        Ideal::new(ring, vec![v(0), &v(1) - &c(1), &v(2) + &c(1)]),
    ]
}

/// Pointwise identities for `W(I, J)` at all face primes and five shifted
/// primes of `k[x,y,z]`.
fn w_identities_sample(rng: &mut ChaCha8Rng, _idx: usize) -> Result<Outcome> {
    let ring = qq_ring(3);
    let i = rand_monomial_ideal(rng, 3, 3, 3);
    let i_big = i.sum(&rand_monomial_ideal(rng, 3, 3, 2));
    let i2 = rand_monomial_ideal(rng, 3, 3, 3);
    let j = maybe_zero(rng, 3, 3, 3, 0.2);
    let j_big = j.sum(&rand_monomial_ideal(rng, 3, 3, 2));
    let j2 = maybe_zero(rng, 3, 3, 3, 0.2);
    let zero = MonomialIdeal::zero(3);

    let mut primes: Vec<Ideal> = FacePrime::all(3).map(|p| p.to_ideal(&ring)).collect();
    primes.extend(shifted_primes(&ring));
    for p in &primes {
        let w = |a: &MonomialIdeal, b: &MonomialIdeal| -> Result<bool> {
            w_member(p, &PairSpec::new(a.to_ideal(&ring), b.to_ideal(&ring))?)
        };
        let base = w(&i, &j)?;
        let fail = |what: &str| Ok(Err(format!("{what} at {p} for I={}, J={}", show(&ring, &i), show(&ring, &j))));
        if w(&i_big, &j)? && !base {
            return fail("larger I gained a prime");
        }
        if base && !w(&i, &j_big)? {
            return fail("larger J lost a prime");
        }
        if w(&i.sum(&i2), &j)? != (base && w(&i2, &j)?) {
            return fail("W(I+I',J) differs from the intersection");
        }
        let meet = base && w(&i, &j2)?;
        if w(&i, &j.product(&j2))? != meet || w(&i, &j.intersect(&j2))? != meet {
            return fail("W(I,JJ'), W(I,J∩J') and W(I,J)∩W(I,J') differ");
        }
        if w(&i.radical(), &j)? != base || w(&i, &j.radical())? != base {
            return fail("W changes under radicals");
        }
        if w(&i, &zero)? != p.contains_ideal(&i.to_ideal(&ring))? {
            return fail("W(I,0) differs from V(I)");
        }
    }
    Ok(Ok(()))
}

fn triangle_sample(rng: &mut ChaCha8Rng, _idx: usize) -> Result<Outcome> {
    let (ring, i, j, k) = rand_context(rng);
    let ctx = mono_ctx(&ring, &i, &j, &k)?;
    let a = gamma_monomial(&ctx)?;
    let b = gamma_minprime_oracle(&ctx)?;
    let c = gamma_colimit_oracle(&ctx)?;
    let same = |x: &crate::torsion::GammaResult| x.lift == a.lift && x.whole_module == a.whole_module;
    Ok(check(same(&b) && same(&c), || {
        format!(
            "I={}, J={}, K={}: box {} / min-prime {} / colimit {}",
            show(&ring, &i),
            show(&ring, &j),
            show(&ring, &k),
            show(&ring, &a.lift),
            show(&ring, &b.lift),
            show(&ring, &c.lift)
        )
    }))
}

/// Identities for lifts of `Γ_{I,J}(R/K)`: monotonicity in `I` and `J`,
/// composition, products versus intersections of `J`, absorbing part of
/// `J` into `I`, and invariance under radicals.
fn gamma_identities_sample(rng: &mut ChaCha8Rng, _idx: usize) -> Result<Outcome> {
    let (ring, i, j, k) = rand_context(rng);
    let n = ring.nvars();
    let i_big = i.sum(&rand_monomial_ideal(rng, n, 3, 2));
    let i2 = rand_monomial_ideal(rng, n, 3, 3);
    let j_big = j.sum(&rand_monomial_ideal(rng, n, 3, 2));
    let j2 = maybe_zero(rng, n, 3, 3, 0.2);
    let j_small = j.product(&rand_monomial_ideal(rng, n, 2, 2));

    let l = |a: &MonomialIdeal, b: &MonomialIdeal| lift(&ring, a, b, &k);
    let base = l(&i, &j)?;
    let ctx = || format!("I={}, J={}, K={}", show(&ring, &i), show(&ring, &j), show(&ring, &k));
    if !base.contains_ideal(&l(&i_big, &j)?) {
        return Ok(Err(format!("enlarging I grew Γ ({})", ctx())));
    }
    if !l(&i, &j_big)?.contains_ideal(&base) {
        return Ok(Err(format!("enlarging J shrank Γ ({})", ctx())));
    }
    if base.intersect(&l(&i2, &j)?) != l(&i.sum(&i2), &j)? {
        return Ok(Err(format!("Γ_I∘Γ_I' differs from Γ_(I+I') ({})", ctx())));
    }
    let meet = base.intersect(&l(&i, &j2)?);
    if meet != l(&i, &j.product(&j2))? || meet != l(&i, &j.intersect(&j2))? {
        return Ok(Err(format!("Γ_J∘Γ_J', Γ_JJ', Γ_(J∩J') differ ({})", ctx())));
    }
    if l(&i.sum(&j_small), &j)? != base {
        return Ok(Err(format!("adding J' ⊆ J to I changed Γ ({})", ctx())));
    }
    if l(&i.radical(), &j)? != base || l(&i, &j.radical())? != base {
        return Ok(Err(format!("Γ changes under radicals ({})", ctx())));
    }
    Ok(Ok(()))
}

/// `I ⊆ √J` forces `Γ_{I,J}(M) = M`.
fn identity_sample(rng: &mut ChaCha8Rng, _idx: usize) -> Result<Outcome> {
    let n = rng.gen_range(1..=3);
    let ring = qq_ring(n);
    let j = rand_monomial_ideal(rng, n, 3, 3);
    let count = rng.gen_range(1..=3);
    let i = MonomialIdeal::new(
        n,
        (0..count).map(|_| {
            let g = &j.generators()[rng.gen_range(0..j.generators().len())];
            let m = ExpVec::from((0..n).map(|_| rng.gen_range(0..=1)).collect::<Vec<u32>>());
            g.radical().mul(&m).expect("small exponents")
        }),
    );
    let k = maybe_zero(rng, n, 3, 3, 0.2);
    if !j.to_ideal(&ring).radical_contains_ideal(&i.to_ideal(&ring))? {
        return Ok(Err("constructed I is not inside √J".into()));
    }
    let g = gamma_monomial(&mono_ctx(&ring, &i, &j, &k)?)?;
    Ok(check(g.whole_module && g.lift.is_unit(), || {
        format!("I={} ⊆ √J={} but Γ = {}", show(&ring, &i), show(&ring, &j), show(&ring, &g.lift))
    }))
}

fn ass_sample(rng: &mut ChaCha8Rng, _idx: usize) -> Result<Outcome> {
    let (ring, i, j, k) = rand_context(rng);
    let ctx = mono_ctx(&ring, &i, &j, &k)?;
    let g = gamma_monomial(&ctx)?;
    let lhs = ass_of_submodule(&k, &g.lift)?;
    let rhs = ass_in_w(&ctx)?;
    Ok(check(lhs == rhs, || {
        let r = |v: &[FacePrime]| v.iter().map(|p| p.render(&ring)).collect::<Vec<_>>().join(" ");
        format!(
            "I={}, J={}, K={}: Ass(Γ) = {} but Ass(M) ∩ W = {}",
            show(&ring, &i),
            show(&ring, &j),
            show(&ring, &k),
            r(&lhs),
            r(&rhs)
        )
    }))
}

fn torsion_free_sample(rng: &mut ChaCha8Rng, _idx: usize) -> Result<Outcome> {
    let (ring, i, j, k) = rand_context(rng);
    let l = lift(&ring, &i, &j, &k)?;
    let again = lift(&ring, &i, &j, &l)?;
    Ok(check(again == l, || {
        format!("Γ(M/Γ(M)) ≠ 0: lift {} then {}", show(&ring, &l), show(&ring, &again))
    }))
}

fn hochster_sample(rng: &mut ChaCha8Rng, _idx: usize) -> Result<Outcome> {
    let n = rng.gen_range(2..=5);
    let count = rng.gen_range(1..=4);
    let k = MonomialIdeal::new(n, (0..count).map(|_| rand_exp(rng, n, 1)));
    let h = hochster_betti(&k, Field::Rational)?;
    let t = koszul_tor(&k, Field::Rational)?;
    if h != t {
        return Ok(Err(format!("Betti tables differ for {:?}", k.generators())));
    }
    let depth = depth_quotient(&k, Field::Rational)?;
    Ok(check(
        depth.finite().zip(t.pd()).is_some_and(|(d, p)| d + p == n),
        || format!("depth + pd ≠ n for {:?}", k.generators()),
    ))
}

fn polarization_sample(rng: &mut ChaCha8Rng, _idx: usize) -> Result<Outcome> {
    let n = rng.gen_range(1..=3);
    let k = rand_monomial_ideal(rng, n, 3, 3);
    let pol = polarize(&k)?;
    let a = hochster_betti(&pol.ideal, Field::Rational)?.pd();
    let b = koszul_tor(&k, Field::Rational)?.pd();
    Ok(check(a == b, || format!("pd {a:?} after polarization vs {b:?} for {:?}", k.generators())))
}

/// With `I = m` and `J ⊆ √K` the face-restricted infimum is `depth R/K`.
fn pair_depth_sample(rng: &mut ChaCha8Rng, _idx: usize) -> Result<Outcome> {
    let n = rng.gen_range(1..=4);
    let ring = qq_ring(n);
    let k = rand_monomial_ideal(rng, n, 3, 3);
    let mut jgens: Vec<ExpVec> = Vec::new();
    for g in k.generators() {
        if rng.gen_bool(0.7) {
            let m = ExpVec::from((0..n).map(|_| rng.gen_range(0..=1)).collect::<Vec<u32>>());
            jgens.push(g.radical().mul(&m)?);
        }
    }
    let j = MonomialIdeal::new(n, jgens);
    let kk = k.to_ideal(&ring);
    if !kk.radical_contains_ideal(&j.to_ideal(&ring))? {
        return Ok(Err("constructed J is not inside √K".into()));
    }
    let ctx = PairContext::new(Ideal::maximal(&ring), j.to_ideal(&ring), kk)?;
    let pd = pair_depth(&ctx, &[])?;
    let depth = depth_quotient(&k, Field::Rational)?;
    Ok(check(pd.value == depth, || {
        format!(
            "K={}, J={}: face infimum {} (at {:?}) vs depth {}",
            show(&ring, &k),
            show(&ring, &j),
            pd.value,
            pd.witness,
            depth
        )
    }))
}

fn cech_sample(rng: &mut ChaCha8Rng, _idx: usize) -> Result<Outcome> {
    let n = 3;
    let ring = qq_ring(n);
    let count = rng.gen_range(1..=3);
    let a_list: Vec<Polynomial> = (0..count)
        .map(|_| Polynomial::monomial(&ring, rand_exp(rng, n, 2), ring.field().one()))
        .collect();
    let j = maybe_zero(rng, n, 3, 3, 0.2).to_ideal(&ring);
    let k = maybe_zero(rng, n, 3, 3, 0.2).to_ideal(&ring);

    let sk = build_cech(&a_list, &j)?;
    let once = collapse(&sk)?;
    let twice = collapse(&once)?;
    if once.factors() != twice.factors() || once.length() > sk.length() {
        return Ok(Err("collapse is not idempotent".into()));
    }
    let full = position_zero_kernel(&a_list, &j, &k)?;
    let survivors: Vec<Polynomial> = once
        .factors()
        .iter()
        .filter(|f| !f.collapsed)
        .map(|f| f.a.clone())
        .collect();
    let reduced = if survivors.is_empty() {
        MonomialIdeal::unit(n)
    } else {
        position_zero_kernel(&survivors, &j, &k)?.lift
    };
    if reduced != full.lift {
        return Ok(Err(format!(
            "collapse changed the position-0 kernel: {} vs {}",
            show(&ring, &full.lift),
            show(&ring, &reduced)
        )));
    }
    let ctx = PairContext::new(Ideal::new(&ring, a_list.clone()), j.clone(), k.clone())?;
    let ara = ara_upper_bound(&ctx)?;
    monomial_of(&k, "K")?;
    Ok(check(ara <= once.length(), || {
        format!("ara bound {ara} exceeds collapsed length {}", once.length())
    }))
}
