use std::fs;
use std::time::Instant;

use pairloc_core::cech::{build_cech, collapse, position_zero_kernel};
use pairloc_core::depth::{depth_at_face, depth_quotient, hochster_betti, koszul_tor, restrict_to_face, BettiTable, Depth};
use pairloc_core::ideal::Ideal;
use pairloc_core::invariants::{ara_upper_bound, lh_vanishes, pair_depth, top_nonvanishing, vanishing_bounds};
use pairloc_core::monomial::{FacePrime, MonomialIdeal};
use pairloc_core::ring::{Polynomial, Ring};
use pairloc_core::session::{parse_session, Session};
use pairloc_core::suites::{run_suite, DEFAULT_SEED, SUITES};
use pairloc_core::support::{s_certificate, w_member, wtilde_member, PairSpec, SearchBounds};
use pairloc_core::torsion::{gamma_member, gamma_monomial, is_torsion, GammaResult, PairContext};
use pairloc_core::Error;
use serde_json::{json, Map, Value};

use crate::args::{BettiMethod, Cli, Command, ContextArgs, PairArgs};
use crate::report::{Failure, Report};

type Outcome<T> = std::result::Result<T, Failure>;

/// Collects echoed inputs while arguments are parsed.
struct Inputs<'s> {
    session: Option<&'s Session>,
    echo: Map<String, Value>,
}

impl<'s> Inputs<'s> {
    fn session(&self) -> Outcome<&'s Session> {
        self.session
            .ok_or_else(|| Failure::Usage("this command needs a session file (--session)".into()))
    }

    fn ideal(&mut self, key: &str, text: &str) -> Outcome<Ideal> {
        let ideal = self.session()?.ideal_arg(text)?;
        self.echo.insert(key.into(), gens_json(ideal.generators()));
        Ok(ideal)
    }

    fn poly(&mut self, key: &str, text: &str) -> Outcome<Polynomial> {
        let p = self.session()?.polynomial(text)?;
        self.echo.insert(key.into(), p.to_string().into());
        Ok(p)
    }

    fn poly_list(&mut self, key: &str, text: &str) -> Outcome<Vec<Polynomial>> {
        let session = self.session()?;
        let list = text
            .split(',')
            .map(|t| session.polynomial(t.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        self.echo.insert(key.into(), gens_json(&list));
        Ok(list)
    }

    fn pair(&mut self, args: &PairArgs) -> Outcome<PairSpec> {
        let i = self.ideal("I", &args.i)?;
        let j = self.ideal("J", &args.j)?;
        Ok(PairSpec::new(i, j)?)
    }

    fn context(&mut self, args: &ContextArgs) -> Outcome<PairContext> {
        let pair = self.pair(&args.pair)?;
        let k = self.ideal("K", &args.k)?;
        Ok(PairContext::new(pair.i, pair.j, k)?)
    }

    fn monomial(&mut self, key: &str, text: &str) -> Outcome<MonomialIdeal> {
        let ideal = self.ideal(key, text)?;
        ideal
            .as_monomial()?
            .ok_or_else(|| Failure::Core(Error::NonMonomial(key.into())))
    }

    fn scalar(&mut self, key: &str, value: impl Into<Value>) {
        self.echo.insert(key.into(), value.into());
    }
}

fn gens_json(gens: &[Polynomial]) -> Value {
    gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().into()
}

fn canonical(ideal: &Ideal) -> Outcome<Value> {
    Ok(gens_json(&ideal.canonical_generators()?))
}

fn depth_json(d: Depth) -> Value {
    match d {
        Depth::Finite(v) => v.into(),
        Depth::Infinite => "inf".into(),
    }
}

fn gamma_json(g: &GammaResult, ring: &std::sync::Arc<Ring>) -> (Value, Value) {
    let result = json!({
        "generators": g.lift.render_generators(ring),
        "wholeModule": g.whole_module,
    });
    let mut witnesses = Map::new();
    for (e, kind) in &g.witnesses {
        let m = Polynomial::monomial(ring, e.clone(), ring.field().one());
        witnesses.insert(m.to_string(), kind.clone().into());
    }
    (result, Value::Object(witnesses))
}

fn betti_json(t: &BettiTable, ring: &std::sync::Arc<Ring>) -> Value {
    let entries: Vec<Value> = t
        .entries
        .iter()
        .map(|((i, d), v)| {
            let m = Polynomial::monomial(ring, d.clone(), ring.field().one());
            json!({ "homologicalDegree": i, "multidegree": m.to_string(), "value": v })
        })
        .collect();
    json!({ "pd": t.pd(), "totals": t.totals(), "entries": entries })
}

fn load_session(cli: &Cli) -> Outcome<Option<Session>> {
    let Some(path) = &cli.session else {
        return Ok(None);
    };
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(Some(parse_session(&text)?))
}

pub fn run(cli: &Cli) -> Outcome<Report> {
    let started = Instant::now();
    let session = load_session(cli)?;
    let mut inputs = Inputs {
        session: session.as_ref(),
        echo: Map::new(),
    };
    if let Some(s) = &session {
        let ring = s.to_string().lines().next().unwrap_or_default().trim_start_matches("ring ").to_string();
        inputs.scalar("ring", ring);
    }
    let (result, witnesses, citations) = dispatch(cli, &mut inputs)?;
    Ok(Report {
        command: cli.command.name(),
        inputs: inputs.echo,
        result,
        witnesses,
        citations,
        elapsed: started.elapsed(),
    })
}

fn dispatch(cli: &Cli, inp: &mut Inputs<'_>) -> Outcome<(Value, Value, Vec<&'static str>)> {
    let none = || json!({});
    Ok(match &cli.command {
        Command::Gb { ideal } => {
            let ideal = inp.ideal("ideal", ideal)?;
            let gb = ideal.groebner()?;
            let result = json!({
                "generators": canonical(&ideal)?,
                "certified": gb.verify_certificate()?,
            });
            (result, none(), vec!["Buchberger algorithm with reduced output"])
        }
        Command::Member(a) => {
            let ideal = inp.ideal("ideal", &a.ideal)?;
            let f = inp.poly("poly", &a.poly)?;
            let gb = ideal.groebner()?;
            let remainder = gb.reduce(&f)?;
            let result = json!({ "member": remainder.is_zero() });
            (result, json!({ "remainder": remainder.to_string() }), vec!["normal form modulo a reduced basis"])
        }
        Command::RadicalMember(a) => {
            let ideal = inp.ideal("ideal", &a.ideal)?;
            let f = inp.poly("poly", &a.poly)?;
            let result = json!({ "member": ideal.radical_contains(&f)? });
            (result, none(), vec!["Rabinowitsch trick: f ∈ √A iff 1 ∈ A + (1 - t f)"])
        }
        Command::Intersect(t) => {
            let (a, b) = (inp.ideal("a", &t.a)?, inp.ideal("b", &t.b)?);
            let result = json!({ "generators": canonical(&a.intersect(&b)?)? });
            (result, none(), vec!["elimination of t from t·a + (1 - t)·b"])
        }
        Command::Colon(t) => {
            let (a, b) = (inp.ideal("a", &t.a)?, inp.ideal("b", &t.b)?);
            let result = json!({ "generators": canonical(&a.colon(&b)?)? });
            (result, none(), vec!["quotient as an intersection of principal quotients"])
        }
        Command::Saturate(t) => {
            let (a, b) = (inp.ideal("a", &t.a)?, inp.ideal("b", &t.b)?);
            let result = json!({ "generators": canonical(&a.saturate(&b)?)? });
            (result, none(), vec!["iterated quotients until stable"])
        }
        Command::Dim { ideal } => {
            let ideal = inp.ideal("ideal", ideal)?;
            let result = json!({ "dim": ideal.dim_quotient()? });
            (result, none(), vec!["maximal independent sets of leading monomials", "dim of the zero ring is -1"])
        }
        Command::WMember { p, pair } => {
            let pair = inp.pair(pair)?;
            let p = inp.ideal("p", p)?;
            let result = json!({ "member": w_member(&p, &pair)? });
            (result, none(), vec!["W(I,J): primes p with I^n ⊆ J + p", "checked as I ⊆ √(J + p)"])
        }
        Command::WtildeMember { a, pair } => {
            let pair = inp.pair(pair)?;
            let a = inp.ideal("a", a)?;
            let result = json!({ "member": wtilde_member(&a, &pair)? });
            (result, none(), vec!["W̃(I,J): ideals a with I^n ⊆ a + J"])
        }
        Command::SCertificate { p, a, j, pool, n_max, degree_cap } => {
            let s = inp.session()?;
            let p = inp.ideal("p", p)?;
            let a = inp.poly("a", a)?;
            let j = inp.ideal("J", j)?;
            let pool = pool
                .iter()
                .map(|t| s.polynomial(t))
                .collect::<Result<Vec<_>, _>>()?;
            inp.scalar("pool", gens_json(&pool));
            let defaults = SearchBounds::default();
            let bounds = SearchBounds {
                n_max: n_max.or(s.options.n_max).unwrap_or(defaults.n_max),
                degree_cap: degree_cap.or(s.options.degree_cap).unwrap_or(defaults.degree_cap),
            };
            inp.scalar("nMax", bounds.n_max);
            inp.scalar("degreeCap", bounds.degree_cap);
            let search = s_certificate(&p, &a, &j, bounds, &pool)?;
            let result = match &search.certificate {
                Some(c) => json!({ "found": true, "n": c.n, "j": c.j.to_string() }),
                None => json!({ "found": false, "n": null, "j": null }),
            };
            let witnesses = json!({ "multipliers": search.multipliers });
            (result, witnesses, vec!["S_{a,J} = { a^n + j : n ≥ 0, j ∈ J }"])
        }
        Command::Gamma(c) => {
            let ctx = inp.context(c)?;
            let g = gamma_monomial(&ctx)?;
            let (result, witnesses) = gamma_json(&g, ctx.ring());
            (result, witnesses, vec!["Γ_{I,J}(M) = { x : I^n x ⊆ J x for some n }", "x ∈ Γ_{I,J}(R/K) iff I ⊆ √((K : x) + J)"])
        }
        Command::GammaMember { x, ctx } => {
            let ctx = inp.context(ctx)?;
            let x = inp.poly("x", x)?;
            let result = json!({ "member": gamma_member(&x, &ctx)? });
            (result, none(), vec!["x ∈ Γ_{I,J}(R/K) iff I ⊆ √((K : x) + J)"])
        }
        Command::IsTorsion(c) => {
            let ctx = inp.context(c)?;
            let result = json!({ "torsion": is_torsion(&ctx)? });
            (result, none(), vec!["M is (I,J)-torsion iff Supp M ⊆ W(I,J)"])
        }
        Command::Depth { k } => {
            let s = inp.session()?;
            let k = inp.monomial("K", k)?;
            let result = json!({ "depth": depth_json(depth_quotient(&k, s.ring.field())?) });
            (result, none(), vec!["Auslander–Buchsbaum: depth R/K = n - pd R/K"])
        }
        Command::DepthAtFace { k, face } => {
            let s = inp.session()?;
            let k = inp.monomial("K", k)?;
            let vars = face
                .split(',')
                .map(|v| s.ring.var_index(v.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let face = FacePrime::new(vars);
            inp.scalar("face", face.render(&s.ring));
            let depth = depth_at_face(&k, &face, s.ring.field())?;
            let restriction = restrict_to_face(&k, &face).map(|r| {
                let sub = s.ring.restricted(face.vars());
                r.render_generators(&sub)
            });
            let result = json!({
                "inSupport": depth.is_some(),
                "depth": depth.map(depth_json),
            });
            (result, json!({ "restriction": restriction }), vec!["localizing at a face prime sets the other variables to 1"])
        }
        Command::Betti { k, method } => {
            let s = inp.session()?;
            let k = inp.monomial("K", k)?;
            let (table, label, cite) = match method {
                BettiMethod::Koszul => (koszul_tor(&k, s.ring.field())?, "koszul", "Koszul homology in each multidegree"),
                BettiMethod::Hochster => (hochster_betti(&k, s.ring.field())?, "hochster", "Hochster's formula"),
            };
            inp.scalar("method", label);
            (betti_json(&table, &s.ring), none(), vec![cite])
        }
        Command::PairDepth { ctx, extra } => {
            let ctx = inp.context(ctx)?;
            let extras = extra
                .iter()
                .enumerate()
                .map(|(n, t)| inp.ideal(&format!("extra{n}"), t))
                .collect::<Outcome<Vec<_>>>()?;
            let pd = pair_depth(&ctx, &extras)?;
            let result = json!({
                "value": depth_json(pd.value),
                "family": pd.family.as_str(),
                "qualifying": pd.qualifying,
            });
            (result, json!({ "prime": pd.witness }), vec!["lowest nonvanishing degree = inf { depth M_p : p ∈ W(I,J) }"])
        }
        Command::Bounds(c) => {
            let ctx = inp.context(c)?;
            let b = vanishing_bounds(&ctx)?;
            let result = json!({ "local": b.local, "nonLocal": b.nonlocal });
            (result, none(), vec!["H^i_{I,J}(M) = 0 for i > dim M/JM over a local ring", "H^i_{I,J}(M) = 0 for i > min(dim M, dim M/JM + 1)"])
        }
        Command::TopDegree(c) => {
            let ctx = inp.context(c)?;
            let result = json!({ "topDegree": top_nonvanishing(&ctx)? });
            (result, none(), vec!["I + J primary to the maximal ideal: top nonvanishing degree = dim M/JM"])
        }
        Command::Lh(c) => {
            let ctx = inp.context(c)?;
            let result = json!({ "vanishes": lh_vanishes(&ctx)? });
            (result, none(), vec!["H^d_{I,J}(M) = 0 iff dim R/(I + p) > 0 for all p ∈ Assh M with J ⊆ p"])
        }
        Command::AraBound(c) => {
            let ctx = inp.context(c)?;
            let result = json!({ "araBound": ara_upper_bound(&ctx)? });
            (result, none(), vec!["generators of I outside √(J + K) bound the arithmetic rank"])
        }
        Command::Cech { a, j, k, collapse: do_collapse } => {
            let s = inp.session()?;
            let a_list = inp.poly_list("a", a)?;
            let j = inp.ideal("J", j)?;
            let k = inp.ideal("K", k)?;
            inp.scalar("collapse", *do_collapse);
            let mut sk = build_cech(&a_list, &j)?;
            if *do_collapse {
                sk = collapse(&sk)?;
            }
            let terms: Vec<Value> = sk
                .terms()
                .into_iter()
                .map(|t| json!({ "indices": t.indices, "token": t.token }))
                .collect();
            let incidences: Vec<Value> = sk
                .incidences()
                .into_iter()
                .map(|i| json!({ "from": i.from, "to": i.to, "sign": i.sign }))
                .collect();
            let factors: Vec<Value> = sk
                .factors()
                .iter()
                .map(|f| json!({ "a": f.a.to_string(), "collapsed": f.collapsed }))
                .collect();
            let kernel = position_zero_kernel(&a_list, &j, &k)?;
            let (kernel_json, kernel_witnesses) = gamma_json(&kernel, &s.ring);
            let result = json!({
                "length": sk.length(),
                "factors": factors,
                "terms": terms,
                "incidences": incidences,
                "rendering": sk.to_string(),
                "positionZeroKernel": kernel_json,
            });
            (result, kernel_witnesses, vec!["Čech complex built from the localizations at S_{a_i,J}", "position-0 kernel = intersection of factor kernels"])
        }
        Command::Check { suite, samples } => {
            let seed = cli
                .seed
                .or(inp.session.and_then(|s| s.options.seed))
                .unwrap_or(DEFAULT_SEED);
            let default = SUITES.iter().find(|(n, _)| n == suite).map(|&(_, c)| c);
            let samples = samples.or(default).unwrap_or(0);
            inp.scalar("suite", suite.as_str());
            inp.scalar("samples", samples);
            inp.scalar("seed", seed);
            let r = run_suite(suite, seed, samples)?;
            if r.failed > 0 {
                return Err(Failure::SuiteFailed(format!(
                    "{} of {} samples failed: {}",
                    r.failed,
                    r.samples,
                    r.failures.join("; ")
                )));
            }
            let result = json!({
                "suite": r.suite,
                "passed": r.passed,
                "failed": r.failed,
                "samples": r.samples,
                "seed": r.seed,
            });
            (result, json!({ "failures": r.failures }), vec!["seeded randomized property suite"])
        }
    })
}
