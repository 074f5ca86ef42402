//! Cross-checks against brute-force evaluations of the defining conditions.

use std::sync::Arc;

use pairloc_core::depth::{depth_at_face, depth_quotient, koszul_tor, Depth};
use pairloc_core::ideal::Ideal;
use pairloc_core::monomial::{FacePrime, MonomialIdeal};
use pairloc_core::ring::{ExpVec, Field, Polynomial, Ring};
use pairloc_core::support::{s_zero, w_member, PairSpec};
use pairloc_core::torsion::{gamma_member, gamma_monomial, PairContext};
use proptest::prelude::*;

const QQ: Field = Field::Rational;
const NAMES: [&str; 4] = ["x", "y", "z", "w"];

fn ring(n: usize) -> Arc<Ring> {
    Ring::qq(&NAMES[..n])
}

/// Plain exponent-vector lists, kept apart from the library's types.
type Gens = Vec<Vec<u32>>;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn in_ideal(gens: &Gens, m: &[u32]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

fn times(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn power(gens: &Gens, n: u32, nvars: usize) -> Gens {
    let mut acc: Gens = vec![vec![0; nvars]];
    for _ in 0..n {
        let mut next: Gens = Vec::new();
        for a in &acc {
            for g in gens {
                let m = times(a, g);
                if !next.contains(&m) {
                    next.push(m);
                }
            }
        }
        acc = next;
    }
    acc
}

fn lib(n: usize, gens: &Gens) -> MonomialIdeal {
    MonomialIdeal::new(n, gens.iter().map(|g| ExpVec::from_slice(g)))
}

fn same_ideal(a: &MonomialIdeal, b: &Gens) -> bool {
    let a_gens: Gens = a.generators().iter().map(|g| g.iter().copied().collect()).collect();
    a_gens.iter().all(|g| in_ideal(b, g)) && b.iter().all(|g| in_ideal(&a_gens, g))
}

fn exps(n: usize, max: u32, count: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Gens> {
    prop::collection::vec(prop::collection::vec(0..=max, n), count)
        .prop_map(|v| v.into_iter().filter(|g| g.iter().any(|&e| e > 0)).collect())
}

/// `(n, I, J, K)` with `I` nonempty.
fn context() -> impl Strategy<Value = (usize, Gens, Gens, Gens)> {
    (1usize..=3).prop_flat_map(|n| {
        (
            Just(n),
            exps(n, 3, 1..=3).prop_filter("I nonempty", |g| !g.is_empty()),
            exps(n, 3, 0..=3),
            exps(n, 3, 0..=3),
        )
    })
}

fn box_of(k: &Gens, n: usize) -> Gens {
    let e: Vec<u32> = (0..n).map(|i| k.iter().map(|g| g[i]).max().unwrap_or(0)).collect();
    let mut out: Gens = vec![vec![]];
    for &ei in &e {
        out = out
            .into_iter()
            .flat_map(|p| (0..=ei).map(move |a| [p.clone(), vec![a]].concat()))
            .collect();
    }
    out
}

/// `Γ_{I,J}(R/K)` by the definition `I^N x ⊆ J x + K` with `N` large enough
/// for at most three generators with exponents at most three.
fn gamma_by_definition(n: usize, i: &Gens, j: &Gens, k: &Gens) -> Gens {
    let big = power(i, 8, n);
    let mut lift = k.clone();
    for b in box_of(k, n) {
        if in_ideal(k, &b) {
            continue;
        }
        let mut target: Gens = j.iter().map(|g| times(g, &b)).collect();
        target.extend(k.iter().cloned());
        if big.iter().all(|m| in_ideal(&target, &times(m, &b))) {
            lift.push(b);
        }
    }
    lift
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn gamma_agrees_with_definition((n, i, j, k) in context()) {
        let r = ring(n);
        let ctx = PairContext::new(
            lib(n, &i).to_ideal(&r),
            lib(n, &j).to_ideal(&r),
            lib(n, &k).to_ideal(&r),
        ).unwrap();
        let got = gamma_monomial(&ctx).unwrap();
        let want = gamma_by_definition(n, &i, &j, &k);
        prop_assert!(same_ideal(&got.lift, &want), "{:?} vs {:?}", got.lift, want);
        prop_assert_eq!(got.whole_module, in_ideal(&want, &vec![0; n]));
    }

    #[test]
    fn w_member_agrees_with_powers((n, i, j, _k) in context()) {
        let r = ring(n);
        let ii = lib(n, &i).to_ideal(&r);
        let pair = PairSpec::new(ii.clone(), lib(n, &j).to_ideal(&r)).unwrap();
        let big = ii.power(7);
        for p in FacePrime::all(n) {
            let p = p.to_ideal(&r);
            let literal = pair.j.sum(&p).contains_ideal(&big).unwrap();
            prop_assert_eq!(w_member(&p, &pair).unwrap(), literal);
        }
    }

    #[test]
    fn s_zero_agrees_with_powers((n, i, j, _k) in context()) {
        let r = ring(n);
        let a = Polynomial::monomial(&r, ExpVec::from_slice(&i[0]), r.field().one());
        let jj = lib(n, &j).to_ideal(&r);
        let literal = jj.contains(&a.pow(3).unwrap()).unwrap();
        prop_assert_eq!(s_zero(&a, &jj).unwrap(), literal);
    }

    #[test]
    fn monomial_operations_agree_with_groebner((n, i, j, _k) in context()) {
        let r = ring(n);
        let (a, b) = (lib(n, &i), lib(n, &j));
        let (ga, gb) = (a.to_ideal(&r), b.to_ideal(&r));
        prop_assert!(a.intersect(&b).to_ideal(&r).equals(&ga.intersect(&gb).unwrap()).unwrap());
        prop_assert!(a.colon(&b).to_ideal(&r).equals(&ga.colon(&gb).unwrap()).unwrap());
        prop_assert!(a.product(&b).to_ideal(&r).equals(&ga.product(&gb)).unwrap());
        prop_assert_eq!(a.dim(), ga.dim_quotient().unwrap());
        for g in b.generators() {
            let m = Polynomial::monomial(&r, g.clone(), r.field().one());
            prop_assert_eq!(a.radical_contains(g), ga.radical_contains(&m).unwrap());
        }
    }

    #[test]
    fn min_primes_are_minimal_containing_faces((n, i, _j, _k) in context()) {
        let a = lib(n, &i);
        let containing: Vec<FacePrime> = FacePrime::all(n)
            .filter(|p| i.iter().all(|g| p.vars().iter().any(|&v| g[v] > 0)))
            .collect();
        let mut minimal: Vec<FacePrime> = containing
            .iter()
            .filter(|p| !containing.iter().any(|q| q != *p && q.mask() & !p.mask() == 0))
            .cloned()
            .collect();
        minimal.sort_by_key(|p| p.mask());
        prop_assert_eq!(a.min_primes(), minimal);
    }

    #[test]
    fn depth_conventions((n, i, _j, _k) in context()) {
        let k = lib(n, &i);
        let d = depth_quotient(&k, QQ).unwrap();
        let pd = koszul_tor(&k, QQ).unwrap().pd().unwrap();
        prop_assert_eq!(d, Depth::Finite(n - pd));
        let full = FacePrime::new(0..n);
        prop_assert_eq!(d == Depth::Finite(0), k.associated_primes().contains(&full));
        for s in FacePrime::all(n) {
            if let Some(ds) = depth_at_face(&k, &s, QQ).unwrap() {
                prop_assert!(ds.finite().is_some_and(|v| v <= s.len()));
            }
        }
    }

    #[test]
    fn reduced_basis_is_canonical(seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let r = ring(3);
        let mut gens: Vec<Polynomial> = (0..3)
            .map(|_| {
                Polynomial::from_terms(&r, (0..2).map(|_| {
                    let e: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=2)).collect();
                    (ExpVec::from(e), r.field().from_i64(rng.gen_range(1..=4)))
                }))
            })
            .collect();
        let a = Ideal::new(&r, gens.clone()).groebner().unwrap().generators().to_vec();
        gens.reverse();
        gens[0] = gens[0].scale(&r.field().from_i64(-3));
        let b = Ideal::new(&r, gens).groebner().unwrap().generators().to_vec();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Γ of a graded module is graded: a polynomial is torsion iff each of
    /// its terms is.
    #[test]
    fn gamma_member_splits_over_terms((n, i, j, k) in context(), coeffs in prop::collection::vec(1i64..5, 3), picks in prop::collection::vec(0usize..64, 3)) {
        let r = ring(n);
        let kk = lib(n, &k);
        let ctx = PairContext::new(
            lib(n, &i).to_ideal(&r),
            lib(n, &j).to_ideal(&r),
            kk.to_ideal(&r),
        ).unwrap();
        let b = box_of(&k, n);
        let terms: Vec<Polynomial> = picks
            .iter()
            .zip(&coeffs)
            .map(|(&p, &c)| Polynomial::monomial(&r, ExpVec::from_slice(&b[p % b.len()]), r.field().from_i64(c)))
            .collect();
        let x = terms.iter().fold(Polynomial::zero(&r), |acc, t| &acc + t);
        let each = x
            .terms()
            .iter()
            .map(|(e, c)| gamma_member(&Polynomial::monomial(&r, e.clone(), c.clone()), &ctx))
            .collect::<Result<Vec<bool>, _>>()
            .unwrap();
        prop_assert_eq!(gamma_member(&x, &ctx).unwrap(), each.iter().all(|&v| v));
    }

    /// For `J ⊆ √K` the `(a, J)`-torsion is the ordinary `a`-torsion.
    #[test]
    fn j_torsion_modules_reduce_to_saturation((n, i, _j, k) in context(), mult in prop::collection::vec(0u32..=1, 3)) {
        let r = ring(n);
        prop_assume!(!k.is_empty());
        let kk = lib(n, &k);
        let jgens: Gens = k.iter().map(|g| {
            g.iter().zip(&mult).map(|(&e, &m)| u32::from(e > 0) + m * u32::from(e > 0)).collect()
        }).collect();
        let j = lib(n, &jgens).to_ideal(&r);
        prop_assert!(kk.to_ideal(&r).radical_contains_ideal(&j).unwrap());
        let a = lib(n, &vec![i[0].clone()]).to_ideal(&r);
        let ctx = PairContext::new(a.clone(), j, kk.to_ideal(&r)).unwrap();
        let lhs = gamma_monomial(&ctx).unwrap().lift.to_ideal(&r);
        let rhs = kk.to_ideal(&r).saturate(&a).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
    }
}

/// Hand-checkable instances, evaluated by the brute-force oracles above and
/// frozen; the library must reproduce both.
#[test]
fn frozen_oracle_values() {
    let v = |e: &[u32]| e.to_vec();
    // I=(x), J=(y), K=(x²y): the lift is (y).
    let (i, j, k) = (vec![v(&[1, 0])], vec![v(&[0, 1])], vec![v(&[2, 1])]);
    let want = gamma_by_definition(2, &i, &j, &k);
    assert!(same_ideal(&lib(2, &vec![v(&[0, 1])]), &want));
    // I=(x), J=(y), K=(x²): the whole module.
    let want = gamma_by_definition(2, &i, &j, &vec![v(&[2, 0])]);
    assert!(in_ideal(&want, &[0, 0]));
    // I=(x), J=(y), K=0: nothing.
    let want = gamma_by_definition(2, &i, &j, &vec![]);
    assert!(want.is_empty());
    // I=(x), J=0, K=(x²y): ordinary saturation (y).
    let want = gamma_by_definition(2, &i, &vec![], &k);
    assert!(same_ideal(&lib(2, &vec![v(&[0, 1])]), &want));

    let r = ring(2);
    for (kk, jj, lift) in [
        (&k, &j, vec![v(&[0, 1])]),
        (&vec![v(&[2, 0])], &j, vec![v(&[0, 0])]),
        (&vec![], &j, vec![]),
        (&k, &vec![], vec![v(&[0, 1])]),
    ] {
        let ctx = PairContext::new(
            lib(2, &i).to_ideal(&r),
            lib(2, jj).to_ideal(&r),
            lib(2, kk).to_ideal(&r),
        )
        .unwrap();
        assert!(same_ideal(&gamma_monomial(&ctx).unwrap().lift, &[lift, kk.clone()].concat()));
    }
}

/// The two-planes ring: `(X−Z, Y−W)` lies in `W(m, J)` for
/// `J = (XZ, XW, YZ, YW)`, checked as `m² ⊆ J + p`.
#[test]
fn frozen_two_planes_membership() {
    let s = pairloc_core::session::parse_session(
        "ring QQ[X,Y,Z,W]\nideal J = X*Z, X*W, Y*Z, Y*W\nideal P = X - Z, Y - W\n",
    )
    .unwrap();
    let m = Ideal::maximal(s.ideal("J").unwrap().ring());
    let (j, p) = (s.ideal("J").unwrap(), s.ideal("P").unwrap());
    assert!(!j.sum(p).contains_ideal(&m).unwrap());
    assert!(j.sum(p).contains_ideal(&m.power(2)).unwrap());
    let pair = PairSpec::new(m, j.clone()).unwrap();
    assert!(w_member(p, &pair).unwrap());
}

/// `pd((x², xy)) = 2` by counting a minimal free resolution by hand:
/// `0 → R(-3) → R(-2)² → R`.
#[test]
fn frozen_projective_dimensions() {
    let k = lib(2, &vec![vec![2, 0], vec![1, 1]]);
    let t = koszul_tor(&k, QQ).unwrap();
    assert_eq!(t.totals(), [1, 2, 1]);
    assert_eq!(depth_quotient(&k, QQ).unwrap(), Depth::Finite(0));
    let k = lib(2, &vec![vec![1, 1]]);
    assert_eq!(koszul_tor(&k, QQ).unwrap().totals(), [1, 1]);
    assert_eq!(depth_quotient(&k, QQ).unwrap(), Depth::Finite(1));
}
