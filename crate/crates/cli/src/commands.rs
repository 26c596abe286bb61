use serde_json::{json, Value};
use starchains::family::{adjacent_family, brute_force_family, build_chain, family_count_check};
use starchains::frobenius::{decomposition_check, frobenius_closure, is_frobenius_closed, special_part};
use starchains::{ClosureConfig, Colength, Error, Ideal, Polynomial, QuotientRing, ReductionCandidate, ReductionScene};

use crate::report::Report;
use crate::session::Workspace;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Gb,
    Closure,
    Special,
    IsClosed,
    Spread,
    Reduction,
    Extend,
    Swap,
    Family,
    Chain,
    VerifyAll,
    ValidateRing,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Closure => "closure",
            Command::Special => "special",
            Command::IsClosed => "is-closed",
            Command::Spread => "spread",
            Command::Reduction => "reduction",
            Command::Extend => "extend",
            Command::Swap => "swap",
            Command::Family => "family",
            Command::Chain => "chain",
            Command::VerifyAll => "verify-all",
            Command::ValidateRing => "validate-ring",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Request {
    pub command: Command,
    pub j: Option<String>,
    pub i: Option<String>,
    pub k: Vec<String>,
    pub f: Option<String>,
    pub e_max: Option<u32>,
    pub degree_cap: Option<u32>,
}

impl Request {
    pub fn new(command: Command) -> Self {
        Request { command, j: None, i: None, k: Vec::new(), f: None, e_max: None, degree_cap: None }
    }

    pub fn with_j(mut self, name: &str) -> Self {
        self.j = Some(name.into());
        self
    }

    pub fn with_i(mut self, name: &str) -> Self {
        self.i = Some(name.into());
        self
    }

    pub fn with_k(mut self, names: &[&str]) -> Self {
        self.k = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn with_f(mut self, f: &str) -> Self {
        self.f = Some(f.into());
        self
    }
}

struct Ctx<'a> {
    ws: &'a Workspace,
    req: &'a Request,
    cfg: ClosureConfig,
}

fn gens(i: &Ideal) -> Value {
    json!(i.canonical_generators())
}

fn polys(fs: &[Polynomial]) -> Value {
    json!(fs.iter().map(|f| f.to_string()).collect::<Vec<_>>())
}

impl Ctx<'_> {
    fn i(&self) -> Result<(&str, &Ideal), CliError> {
        let name = self.req.i.as_deref().ok_or_else(|| CliError::Usage("this command needs --I".into()))?;
        Ok((name, self.ws.ideal(name)?))
    }

    /// `--J`, or the zero ideal when omitted.
    fn j(&self) -> Result<(String, Ideal), CliError> {
        match self.req.j.as_deref() {
            Some(name) => Ok((name.to_string(), self.ws.ideal(name)?.clone())),
            None => Ok(("0".into(), Ideal::zero(&self.ws.ring))),
        }
    }

    /// Generators of the `--K` ideals, concatenated in order.
    fn k(&self) -> Result<Vec<Polynomial>, CliError> {
        let mut out = Vec::new();
        for name in &self.req.k {
            out.extend(self.ws.ideal(name)?.gens().iter().cloned());
        }
        Ok(out)
    }

    fn scene(&self, r: &mut Report) -> Result<ReductionScene, CliError> {
        let (jn, j) = self.j()?;
        let (iname, i) = self.i()?;
        r.set("J", jn).set("I", iname);
        Ok(ReductionScene::new(&j, i, self.cfg)?)
    }

    fn f(&self) -> Result<Polynomial, CliError> {
        let text = self.req.f.as_deref().ok_or_else(|| CliError::Usage("this command needs --f".into()))?;
        self.ws.parse_poly(text)
    }
}

pub fn run(ws: &Workspace, req: &Request) -> Result<Report, CliError> {
    let mut cfg = ws.cfg;
    if let Some(e) = req.e_max {
        cfg.e_max = e;
    }
    if req.degree_cap.is_some() {
        cfg.degree_cap = req.degree_cap;
    }
    cfg.validate()?;
    let ctx = Ctx { ws, req, cfg };
    let mut r = Report::new(req.command.name());
    match req.command {
        Command::Gb => {
            let (name, i) = ctx.i()?;
            r.set("ideal", name).set("generators", gens(i));
        }
        Command::Closure => {
            let (name, i) = ctx.i()?;
            let (c, cert) = frobenius_closure(i, &cfg)?;
            let witnesses: Vec<Value> = cert
                .new_generators
                .iter()
                .map(|w| json!({"element": w.element.to_string(), "e": w.exponent}))
                .collect();
            r.set("ideal", name)
                .set("generators", gens(&c))
                .set("certificate", witnesses)
                .set("stabilized_at", cert.stabilized_at)
                .set("capped", cert.capped);
            if cert.capped {
                r.exit_status = 3;
            }
        }
        Command::Special => {
            let (name, i) = ctx.i()?;
            let sp = special_part(i, &cfg)?;
            let witnesses: Vec<Value> = sp
                .witnesses
                .iter()
                .map(|w| json!({"element": w.element.to_string(), "e0": w.e0, "e": w.exponent - w.e0}))
                .collect();
            r.set("ideal", name).set("generators", gens(&sp.ideal)).set("witnesses", witnesses).set("capped", sp.capped);
            if sp.capped {
                r.exit_status = 3;
            }
        }
        Command::IsClosed => {
            let (name, i) = ctx.i()?;
            r.set("ideal", name).set("closed", is_frobenius_closed(i, &cfg)?);
        }
        Command::Spread => {
            let s = ctx.scene(&mut r)?;
            let l = s.f_spread()?;
            r.set("spread", l).set("dim_I_mod_mI_J", s.dim_v0()).set("dim_special_mod_mI_J", s.special_subspace().dim());
        }
        Command::Reduction => {
            let s = ctx.scene(&mut r)?;
            if ctx.req.k.is_empty() {
                let k = s.minimal_reduction();
                r.set("spread", s.spread()).set("reduction", polys(k.fs()));
            } else {
                let k = s.candidate(ctx.k()?)?;
                r.set("candidate", polys(k.fs()))
                    .set("spread", s.spread())
                    .set("intersection_condition", s.condition_b(&k))
                    .set("sum_condition", s.condition_c(&k)?)
                    .set("minimal_reduction", s.is_minimal_reduction(&k)?);
            }
        }
        Command::Extend => {
            let s = ctx.scene(&mut r)?;
            let partial = s.candidate(ctx.k()?)?;
            r.set("partial", polys(partial.fs()));
            match s.extend_to_reduction(&partial)? {
                Some(k) => r.set("extended", true).set("reduction", polys(k.fs())),
                None => r.set("extended", false).set("reason", "the special part meets (J, partial) outside mI + J"),
            };
        }
        Command::Swap => {
            let s = ctx.scene(&mut r)?;
            let k: ReductionCandidate =
                if ctx.req.k.is_empty() { s.minimal_reduction() } else { s.candidate(ctx.k()?)? };
            let f = ctx.f()?;
            r.set("reduction", polys(k.fs())).set("f", f.to_string());
            match s.swap_generator(&k, &f)? {
                Some((idx, k2)) => r.set("swapped", true).set("index", idx).set("new_reduction", polys(k2.fs())),
                None => r.set("swapped", false).set("reason", "f lies in the special part plus J"),
            };
        }
        Command::Family => {
            let s = ctx.scene(&mut r)?;
            let fam = adjacent_family(&s)?;
            let members: Vec<Value> = fam
                .members
                .iter()
                .zip(&fam.parameters)
                .map(|(m, p)| json!({"parameter": p, "generators": m.canonical_generators()}))
                .collect();
            r.set("spread", fam.spread)
                .set("count", fam.members.len())
                .set("count_check", family_count_check(&fam)?)
                .set("members", members);
        }
        Command::Chain => {
            let (jn, j) = ctx.j()?;
            let (iname, i) = ctx.i()?;
            let chain = build_chain(&j, i, &cfg)?;
            let links: Vec<Value> = chain
                .links
                .iter()
                .map(|l| json!({"colength": colength_value(l), "generators": l.canonical_generators()}))
                .collect();
            r.set("J", jn)
                .set("I", iname)
                .set("length", chain.length())
                .set("verified", chain.verify(&cfg)?)
                .set("links", links);
        }
        Command::VerifyAll => verify_all(&ctx, &mut r)?,
        Command::ValidateRing => return Ok(validate_ring(ws)),
    }
    Ok(r)
}

fn colength_value(i: &Ideal) -> Value {
    match i.colength() {
        Colength::Finite(n) => json!(n),
        Colength::Infinite => json!("infinite"),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
    Capped,
    Skipped,
}

fn verdict(res: Result<bool, Error>) -> (Verdict, Option<String>) {
    match res {
        Ok(true) => (Verdict::Pass, None),
        Ok(false) => (Verdict::Fail, None),
        Err(e @ (Error::CapExceeded(_) | Error::ExponentOverflow(_))) => (Verdict::Capped, Some(e.to_string())),
        Err(e @ Error::TooLarge(_)) => (Verdict::Skipped, Some(e.to_string())),
        Err(e) => (Verdict::Fail, Some(e.to_string())),
    }
}

fn push(checks: &mut Vec<Value>, worst: &mut Vec<Verdict>, check: &str, subject: &str, res: Result<bool, Error>) {
    let (v, detail) = verdict(res);
    let word = match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Capped => "capped",
        Verdict::Skipped => "skipped",
    };
    let mut entry = json!({"check": check, "subject": subject, "result": word});
    if let Some(d) = detail {
        entry["detail"] = json!(d);
    }
    checks.push(entry);
    worst.push(v);
}

fn scene_checks(s: &ReductionScene, cfg: &ClosureConfig) -> Vec<(&'static str, Result<bool, Error>)> {
    let mut out = Vec::new();
    out.push(("direct sum", s.f_spread().map(|l| l == s.spread() && s.direct_sum_holds())));
    out.push(("reduction equivalence", reduction_agreement(s)));
    let fam = adjacent_family(s);
    out.push(("family count", fam.as_ref().map_err(Clone::clone).and_then(family_count_check)));
    out.push((
        "family completeness",
        fam.clone().and_then(|f| {
            let brute = brute_force_family(s)?;
            same_sets(&brute, &f.members)
        }),
    ));
    out.push((
        "chain",
        build_chain(s.j(), s.i(), cfg).and_then(|c| {
            let gap = match (s.j().colength(), s.i().colength()) {
                (Colength::Finite(a), Colength::Finite(b)) => a - b,
                _ => return Err(Error::NotMPrimary),
            };
            Ok(c.length() == gap && c.verify(cfg)?)
        }),
    ));
    out
}

fn same_sets(a: &[Ideal], b: &[Ideal]) -> Result<bool, Error> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for x in a {
        let mut found = false;
        for y in b {
            if x.equals(y)? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The two characterizations of minimality agree on every `l`-subset of the
/// coordinate generators (at most 64 subsets), and the constructed
/// reduction passes.
fn reduction_agreement(s: &ReductionScene) -> Result<bool, Error> {
    if !s.is_minimal_reduction(&s.minimal_reduction())? {
        return Ok(false);
    }
    let gens = s.basis_generators();
    let l = s.spread();
    let mut idx: Vec<usize> = (0..l).collect();
    let mut tried = 0;
    while tried < 64 && l <= gens.len() {
        let k = s.candidate(idx.iter().map(|&t| gens[t].clone()).collect())?;
        s.is_minimal_reduction(&k)?;
        tried += 1;
        // next l-subset in lexicographic order
        let Some(pos) = (0..l).rev().find(|&p| idx[p] < gens.len() - l + p) else { break };
        idx[pos] += 1;
        for q in pos + 1..l {
            idx[q] = idx[q - 1] + 1;
        }
    }
    Ok(true)
}

fn verify_all(ctx: &Ctx, r: &mut Report) -> Result<(), CliError> {
    let cfg = ctx.cfg;
    let named: Vec<(String, Ideal)> = match (&ctx.req.j, &ctx.req.i) {
        (None, None) => ctx.ws.ideals.clone(),
        _ => {
            let (jn, j) = ctx.j()?;
            let (iname, i) = ctx.i()?;
            vec![(jn, j), (iname.to_string(), i.clone())]
        }
    };
    let mut checks = Vec::new();
    let mut seen = Vec::new();
    let mut skipped = Vec::new();
    for (name, i) in &named {
        if i.is_m_primary() {
            push(&mut checks, &mut seen, "decomposition", name, decomposition_check(i, &cfg));
        } else {
            skipped.push(json!({"subject": name, "reason": "not m-primary"}));
        }
    }
    let closed: Vec<bool> = named
        .iter()
        .map(|(_, i)| i.is_m_primary() && is_frobenius_closed(i, &cfg).unwrap_or(false))
        .collect();
    for (a, (jn, j)) in named.iter().enumerate() {
        for (b, (iname, i)) in named.iter().enumerate() {
            if a == b || !i.contains(j)? || j.equals(i)? {
                continue;
            }
            let subject = format!("{jn} < {iname}");
            if !closed[a] || !closed[b] {
                skipped.push(json!({"subject": subject, "reason": "not a pair of closed m-primary ideals"}));
                continue;
            }
            match ReductionScene::new(j, i, cfg) {
                Ok(s) => {
                    for (check, res) in scene_checks(&s, &cfg) {
                        push(&mut checks, &mut seen, check, &subject, res);
                    }
                }
                Err(e) => push(&mut checks, &mut seen, "scene", &subject, Err(e)),
            }
        }
    }
    let failed = seen.iter().filter(|v| **v == Verdict::Fail).count();
    let capped = seen.iter().filter(|v| **v == Verdict::Capped).count();
    let passed = seen.iter().filter(|v| **v == Verdict::Pass).count();
    r.set("checks", checks)
        .set("skipped", skipped)
        .set("passed", passed)
        .set("failed", failed)
        .set("capped", capped);
    r.exit_status = if failed > 0 {
        4
    } else if capped > 0 {
        3
    } else {
        0
    };
    Ok(())
}

/// Certifies normality of a hypersurface `S/(f)` when the Jacobian ideal
/// `(f, ∂f/∂x_i)` has finite colength and `dim S/(f) ≥ 2`.
pub fn validate_ring(ws: &Workspace) -> Report {
    let mut r = Report::new("validate-ring");
    let ring = &ws.ring;
    let n = ring.ambient().nvars();
    let (status, reason) = match ws.modulus_len {
        0 => ("certified", "polynomial ring".to_string()),
        1 => {
            let f = ring.modulus()[0].clone();
            let s = QuotientRing::polynomial_ring(ring.ambient());
            let mut gens = vec![f.clone()];
            gens.extend((0..n).map(|i| f.derivative(i)));
            let jac = Ideal::new(&s, gens).expect("same ambient ring");
            if jac.is_unit() {
                ("certified", "the hypersurface is regular".to_string())
            } else if jac.has_finite_colength() && n >= 3 {
                ("certified", format!("isolated singularity in dimension {}", n - 1))
            } else if jac.has_finite_colength() {
                ("not certified", "isolated singular point of a curve".to_string())
            } else {
                ("inconclusive", "the Jacobian ideal does not have finite colength".to_string())
            }
        }
        _ => ("not checked", "the modulus is not a hypersurface".to_string()),
    };
    r.set("normality", status).set("reason", reason);
    r
}
