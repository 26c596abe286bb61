//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use starchains::family::{adjacent_family, brute_force_family, build_chain, family_count_check};
use starchains::frobenius::{
    closure_membership, decomposition_check, frobenius_closure, is_frobenius_closed, special_part,
};
use starchains::reduction::bracket_generator_count;
use starchains::{ClosureConfig, Colength, Ideal, Polynomial, ReductionScene, SubspaceBasis};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn scene(pair: &SuitePair) -> Result<ReductionScene, String> {
    ReductionScene::new(&pair.j, &pair.i, ClosureConfig::default()).map_err(|e| format!("{}: {e}", pair.name))
}

fn colength(i: &Ideal) -> usize {
    match i.colength() {
        Colength::Finite(n) => n,
        Colength::Infinite => panic!("{i} has infinite colength"),
    }
}

fn frobenius_nontriviality() -> Outcome {
    let start = Instant::now();
    let f = r3();
    let i = ideal(&f, &["x", "y"]);
    let (closure, cert) = frobenius_closure(&i, &ClosureConfig::default()).map_err(|e| e.to_string())?;
    check(closure.equals(&ideal(&f, &["x", "y", "z^2"])).unwrap(), || format!("closure was {closure}"))?;
    check(!cert.capped, || "capped".into())?;
    let z2 = f.parse("z^2").unwrap();
    check(cert.new_generators.iter().any(|w| w.element == z2 && w.exponent == 1), || "no z^2 witness at e = 1".into())?;
    let nf = ideal(&f, &["x^2", "y^2"]).normal_form(&f.parse("z^4").unwrap());
    check(nf.is_zero(), || format!("z^4 reduces to {nf}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("closure (x, y, z^2), witness z^2 at e = 1, {:.2?}", start.elapsed()))
}

fn decomposition() -> Outcome {
    let start = Instant::now();
    let cfg = ClosureConfig::default();
    let mut ideals: Vec<Ideal> = Vec::new();
    let (a, b, c, f) = (r1(), r2(), r4(), r3());
    for (r, gens) in [
        (&a, vec!["x", "y"]),
        (&a, vec!["x^2", "y^3"]),
        (&b, vec!["x^2 + y^2", "x*y"]),
        (&c, vec!["x^2", "x*y", "y^2"]),
        (&f, vec!["x", "y"]),
        (&f, vec!["x", "y", "z"]),
        (&f, vec!["x^2", "y^2", "z^2"]),
        (&f, vec!["x", "y^2", "z^2"]),
    ] {
        ideals.push(ideal(r, &gens));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for r in [&a, &b, &c, &f] {
        for _ in 0..4 {
            ideals.push(random_m_primary(&mut rng, r, 3));
        }
    }
    let mut grew = 0;
    for i in &ideals {
        let ok = decomposition_check(i, &cfg).map_err(|e| format!("{i}: {e}"))?;
        check(ok, || format!("decomposition fails for {i}"))?;
        if !frobenius_closure(i, &cfg).unwrap().1.new_generators.is_empty() {
            grew += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{} ideals, {grew} with nontrivial closure, {:.2?}", ideals.len(), start.elapsed()))
}

fn direct_sum() -> Outcome {
    let pairs = suite_scenes();
    for pair in &pairs {
        let s = scene(pair)?;
        let l = s.f_spread().map_err(|e| format!("{}: {e}", pair.name))?;
        // dimensions from colengths, independent of the scene coordinates
        let base = s.base();
        let dim_v0 = colength(base) - colength(&pair.i);
        let floor = s.special().ideal.sum(&pair.j).unwrap();
        let dim_u = colength(base) - colength(&floor);
        check(dim_v0 == l + dim_u, || format!("{}: {dim_v0} != {l} + {dim_u}", pair.name))?;
        let k = s.minimal_reduction();
        let c = SubspaceBasis::span_of(s.field(), s.dim_v0(), k.images());
        check(c.meets_trivially(s.special_subspace()) && c.dim() == l, || format!("{}: sum not direct", pair.name))?;
    }
    Ok(format!("{} scenes", pairs.len()))
}

/// `I ⊆ K^F`, tested element by element through Frobenius powers.
fn directly_reduces(s: &ReductionScene, k: &Ideal) -> bool {
    s.i().gb().iter().all(|g| closure_membership(g, k, s.config()).unwrap().is_some())
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Nonzero vectors of `V0` lifted to `I`.
fn nonzero_lifts(s: &ReductionScene) -> Vec<Polynomial> {
    all_combinations(s.basis_generators()).into_iter().filter(|f| !f.is_zero()).collect()
}

fn binary_scenes() -> Vec<SuitePair> {
    suite_scenes().into_iter().filter(|s| s.ring.ambient().characteristic() == 2 && s.name.starts_with("R1")).collect()
}

fn three_way() -> Outcome {
    let mut total = 0;
    for pair in binary_scenes() {
        let s = scene(&pair)?;
        let l = s.spread();
        let vs = nonzero_lifts(&s);
        let sets = subsets(vs.len(), l);
        check(sets.len() <= 1 << 8, || format!("{}: {} candidates", pair.name, sets.len()))?;
        for idx in sets {
            let fs: Vec<Polynomial> = idx.iter().map(|&t| vs[t].clone()).collect();
            let Ok(k) = s.candidate(fs.clone()) else { continue };
            total += 1;
            let b = s.condition_b(&k);
            let c = s.condition_c(&k).unwrap();
            let direct = directly_reduces(&s, &pair.j.add_generators(&fs).unwrap());
            check(b == c && c == direct, || format!("{}: {fs:?} gives b={b} c={c} direct={direct}", pair.name))?;
            check(s.is_minimal_reduction(&k).unwrap() == b, || format!("{}: verdict differs", pair.name))?;
        }
    }
    Ok(format!("{total} candidate sets, no disagreement"))
}

fn spread_well_defined() -> Outcome {
    let mut found = 0;
    for pair in binary_scenes() {
        let s = scene(&pair)?;
        let l = s.spread();
        let vs = nonzero_lifts(&s);
        for size in 0..=s.dim_v0() {
            for idx in subsets(vs.len(), size) {
                let fs: Vec<Polynomial> = idx.iter().map(|&t| vs[t].clone()).collect();
                let k = pair.j.add_generators(&fs).unwrap();
                if directly_reduces(&s, &k) && s.is_star_independent(&fs).unwrap() {
                    found += 1;
                    check(size == l, || format!("{}: minimal reduction {fs:?} has {size} generators, l = {l}", pair.name))?;
                }
            }
        }
    }
    let pairs = suite_scenes();
    for pair in &pairs {
        let s = scene(pair)?;
        let l = s.spread();
        let e = s.config().e_max;
        for e in [e - 1, e] {
            let count = bracket_generator_count(&pair.i, &pair.j, e).unwrap();
            check(count == l, || format!("{}: {count} bracket generators at e = {e}, l = {l}", pair.name))?;
        }
    }
    Ok(format!("{found} minimal reductions all of size l; bracket counts agree on {} scenes", pairs.len()))
}

fn families() -> Outcome {
    let start = Instant::now();
    let mut sizes = Vec::new();
    for pair in suite_scenes() {
        let s = scene(&pair)?;
        let fam = adjacent_family(&s).map_err(|e| format!("{}: {e}", pair.name))?;
        check(family_count_check(&fam).unwrap(), || format!("{}: count check fails", pair.name))?;
        let p = s.field().characteristic() as usize;
        let expected = if fam.spread == 0 { 0 } else { (p.pow(fam.spread as u32) - 1) / (p - 1) };
        check(fam.members.len() == expected, || format!("{}: {} members", pair.name, fam.members.len()))?;
        match pair.name {
            "R1 m^2 < m" => check(fam.members.len() == 3, || "R1 family size".into())?,
            "R2 m^2 < m" => check(fam.members.len() == 4, || "R2 family size".into())?,
            _ => {}
        }
        let brute = brute_force_family(&s).map_err(|e| format!("{}: {e}", pair.name))?;
        check(same_ideal_sets(&brute, &fam.members), || format!("{}: brute force differs", pair.name))?;
        sizes.push(fam.members.len().to_string());
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("family sizes [{}] match the brute-force oracle, {:.2?}", sizes.join(", "), start.elapsed()))
}

fn chains() -> Outcome {
    let cfg = ClosureConfig::default();
    let a = r1();
    let chain = build_chain(&ideal(&a, &["x^2", "x*y", "y^2"]), &ideal(&a, &["x", "y"]), &cfg).unwrap();
    check(chain.length() == 2, || format!("length {}", chain.length()))?;
    for link in &chain.links {
        check(is_frobenius_closed(link, &cfg).unwrap(), || format!("{link} not closed"))?;
    }
    let pairs = suite_scenes();
    for pair in &pairs {
        let chain = build_chain(&pair.j, &pair.i, &cfg).map_err(|e| format!("{}: {e}", pair.name))?;
        let gap = colength(&pair.j) - colength(&pair.i);
        check(chain.length() == gap, || format!("{}: length {} vs {gap}", pair.name, chain.length()))?;
        check(chain.verify(&cfg).unwrap(), || format!("{}: invalid chain", pair.name))?;
    }
    Ok(format!("R1 chain of length 2; {} scene chains", pairs.len()))
}

/// Elements of `I` spanned by monomials of degree at most `top`.
fn bounded_elements(s: &ReductionScene, top: u32) -> Vec<Polynomial> {
    let r = s.i().ring().clone();
    let ring = r.ambient().clone();
    let zero = Ideal::zero(&r);
    let mut basis: Vec<Polynomial> = Vec::new();
    for d in 1..=top {
        for m in zero.graded_basis(d).unwrap() {
            let f = ring.term(m, 1);
            if s.i().contains_element(&f).unwrap() {
                basis.push(f);
            }
        }
    }
    all_combinations(&basis)
}

fn swaps() -> Outcome {
    let (mut yes, mut no) = (0, 0);
    for pair in suite_scenes() {
        if !(pair.name.starts_with("R1") || pair.name.starts_with("R3")) {
            continue;
        }
        let s = scene(&pair)?;
        let k = s.minimal_reduction();
        let sp = &s.special().ideal;
        let floor = sp.sum(&pair.j).unwrap();
        let top = pair.i.max_generator_degree();
        let mut elements = bounded_elements(&s, top + 1);
        if elements.len() > 1 << 12 {
            elements = bounded_elements(&s, top);
        }
        check(elements.len() <= 1 << 12, || format!("{}: {} elements", pair.name, elements.len()))?;
        for f in elements {
            let out = s.swap_generator(&k, &f).map_err(|e| format!("{}: {f}: {e}", pair.name))?;
            if sp.contains_element(&f).unwrap() || floor.contains_element(&f).unwrap() {
                check(out.is_none(), || format!("{}: swap found for {f} in the special part", pair.name))?;
                no += 1;
            } else {
                let (_, k2) = out.ok_or_else(|| format!("{}: no swap for {f}", pair.name))?;
                check(s.is_minimal_reduction(&k2).unwrap(), || format!("{}: swap with {f} not minimal", pair.name))?;
                yes += 1;
            }
        }
    }
    Ok(format!("{yes} swaps found, {no} definitive negatives"))
}

fn nakayama_and_closure_rules() -> Outcome {
    let cfg = ClosureConfig::default();
    let mut counts = Vec::new();
    for (seed, r) in [(11u64, r1()), (12, r2()), (13, r3()), (14, r4())] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut n = 0;
        while n < 50 {
            let j = random_m_primary(&mut rng, &r, 3);
            let (jf, _) = frobenius_closure(&j, &cfg).unwrap();
            // Nakayama: J ⊆ I ⊆ (J + mI)^F forces I ⊆ J^F
            let d = rng.gen_range(1..=2);
            let noise = random_form(&mut rng, &r, d);
            let extra: Vec<Polynomial> =
                jf.gens().iter().chain(std::iter::once(&noise)).filter(|_| rng.gen_bool(0.7)).cloned().collect();
            let i = j.add_generators(&extra).unwrap();
            let (upper, _) = frobenius_closure(&i.times_maximal().sum(&j).unwrap(), &cfg).unwrap();
            if upper.contains(&i).unwrap() {
                check(jf.contains(&i).unwrap(), || format!("Nakayama fails for J = {j}, I = {i}"))?;
            }
            // f^q ∈ (I^{[q]})^F exactly when f ∈ I^F
            let d = rng.gen_range(1..=3);
            let f = random_form(&mut rng, &r, d);
            let (jq, _) = frobenius_closure(&j.bracket_power(1).unwrap(), &cfg).unwrap();
            let lhs = jq.contains_element(&f.frobenius_power(1).unwrap()).unwrap();
            check(lhs == jf.contains_element(&f).unwrap(), || format!("Frobenius root rule fails for {f} in {j}"))?;
            // (I1 + I2^F)^F = (I1 + I2)^F
            let i1 = random_m_primary(&mut rng, &r, 3);
            let (a, _) = frobenius_closure(&i1.sum(&jf).unwrap(), &cfg).unwrap();
            let (b, _) = frobenius_closure(&i1.sum(&j).unwrap(), &cfg).unwrap();
            check(a.equals(&b).unwrap(), || format!("sum rule fails for {i1} and {j}"))?;
            n += 1;
        }
        counts.push(n);
    }
    Ok(format!("{} instances per ring", counts[0]))
}

/// `x ∉ I` has no Frobenius power in `I^{[q]}`, checked on every element
/// of a complement of `I` up to the given degree.
fn regular_closed_by_scan(i: &Ideal, e_max: u32) -> bool {
    let r = i.ring().clone();
    let ring = r.ambient().clone();
    let reps: Vec<Polynomial> = i.standard_monomials(None).unwrap().into_iter().map(|m| ring.term(m, 1)).collect();
    let sample: Vec<Polynomial> = if reps.len() <= 8 {
        all_combinations(&reps)
    } else {
        reps.clone()
    };
    sample.iter().filter(|f| !f.is_zero()).all(|f| {
        (1..=e_max).all(|e| !i.bracket_power(e).unwrap().contains_element(&f.frobenius_power(e).unwrap()).unwrap())
    })
}

fn regular_sanity() -> Outcome {
    let cfg = ClosureConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut tested = 0;
    for r in [r1(), r2(), r4()] {
        for _ in 0..8 {
            let i = random_m_primary(&mut rng, &r, 3);
            check(is_frobenius_closed(&i, &cfg).unwrap(), || format!("{i} not closed"))?;
            check(regular_closed_by_scan(&i, 2), || format!("scan finds {i} not closed"))?;
            let sp = special_part(&i, &cfg).unwrap();
            check(!sp.capped && sp.ideal.equals(&i.times_maximal()).unwrap(), || format!("special part of {i} is {}", sp.ideal))?;
            // no element outside mI has x^{q0} ∈ m I^{[q0]}
            let mi = i.times_maximal();
            for g in i.gb() {
                if mi.contains_element(g).unwrap() {
                    continue;
                }
                for e0 in 1..=2 {
                    let target = i.bracket_power(e0).unwrap().times_maximal();
                    check(!target.contains_element(&g.frobenius_power(e0).unwrap()).unwrap(), || format!("{g} special in {i}"))?;
                }
            }
            tested += 1;
        }
    }
    Ok(format!("{tested} ideals closed with special part mI"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 Frobenius nontriviality", frobenius_nontriviality),
        ("2 closure decomposition", decomposition),
        ("3 direct sum", direct_sum),
        ("4 three-way equivalence", three_way),
        ("5 spread well-defined", spread_well_defined),
        ("6 adjacent families", families),
        ("7 closed chains", chains),
        ("8 generator swap", swaps),
        ("9 Nakayama and closure rules", nakayama_and_closure_rules),
        ("10 regular-ring sanity", regular_sanity),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why}) after {:.2?}", start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
