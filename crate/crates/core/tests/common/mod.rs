#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use starchains::{Ideal, MonomialOrder, PolyRing, Polynomial, QuotientRing};

pub fn plane(p: u64) -> Arc<QuotientRing> {
    QuotientRing::polynomial_ring(&PolyRing::new(p, &["x", "y"], MonomialOrder::Grevlex).unwrap())
}

pub fn r1() -> Arc<QuotientRing> {
    plane(2)
}

pub fn r2() -> Arc<QuotientRing> {
    plane(3)
}

pub fn r4() -> Arc<QuotientRing> {
    plane(5)
}

/// `F_2[x,y,z]/(x^3 + y^3 + z^3)`
pub fn r3() -> Arc<QuotientRing> {
    let s = PolyRing::new(2, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
    QuotientRing::new(&s, vec![s.parse("x^3 + y^3 + z^3").unwrap()], "fermat").unwrap()
}

pub fn ideal(r: &Arc<QuotientRing>, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

pub fn random_form(rng: &mut ChaCha8Rng, r: &Arc<QuotientRing>, d: u32) -> Polynomial {
    let s = r.ambient();
    let p = s.characteristic();
    s.from_terms(s.monomials_of_degree(d).into_iter().map(|m| (m, rng.gen_range(0..p))))
}

/// A homogeneous ideal of finite colength: a pure power of each variable
/// (bounded by `top`) plus up to two random forms.
pub fn random_m_primary(rng: &mut ChaCha8Rng, r: &Arc<QuotientRing>, top: u32) -> Ideal {
    let s = r.ambient();
    let n = s.nvars();
    let mut gens = Vec::new();
    for i in 0..n {
        let cap = if r.is_polynomial_ring() { top } else { top.min(2) };
        let e = rng.gen_range(1..=cap);
        gens.push(s.var(i).pow(e as u64));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let d = rng.gen_range(1..=top);
        let f = random_form(rng, r, d);
        if !f.is_zero() {
            gens.push(f);
        }
    }
    Ideal::new(r, gens).unwrap()
}

/// All `F_p`-combinations of `basis` (including zero), in counting order.
pub fn all_combinations(basis: &[Polynomial]) -> Vec<Polynomial> {
    let s = basis[0].ring().clone();
    let p = s.characteristic() as u64;
    let total = p.pow(basis.len() as u32);
    (0..total)
        .map(|mut idx| {
            let mut acc = s.zero();
            for b in basis {
                let c = (idx % p) as u32;
                idx /= p;
                acc = &acc + &b.scale(c);
            }
            acc
        })
        .collect()
}

/// Ideals compared as sets of ideals, by Gröbner bases.
pub fn same_ideal_sets(a: &[Ideal], b: &[Ideal]) -> bool {
    a.len() == b.len()
        && a.iter().all(|x| b.iter().any(|y| x.equals(y).unwrap()))
        && b.iter().all(|y| a.iter().any(|x| x.equals(y).unwrap()))
}

/// Scenes `(ring, J, I, degree cap)` of closed pairs used across the suite.
pub struct SuitePair {
    pub name: &'static str,
    pub ring: Arc<QuotientRing>,
    pub j: Ideal,
    pub i: Ideal,
}

pub fn suite_scenes() -> Vec<SuitePair> {
    let (a, b, c, f) = (r1(), r2(), r4(), r3());
    let mut out = vec![
        SuitePair { name: "R1 m^2 < m", ring: a.clone(), j: ideal(&a, &["x^2", "x*y", "y^2"]), i: ideal(&a, &["x", "y"]) },
        SuitePair { name: "R1 (x,y^2) < m", ring: a.clone(), j: ideal(&a, &["x", "y^2"]), i: ideal(&a, &["x", "y"]) },
        SuitePair {
            name: "R1 m^3 < m^2",
            ring: a.clone(),
            j: ideal(&a, &["x^3", "x^2*y", "x*y^2", "y^3"]),
            i: ideal(&a, &["x^2", "x*y", "y^2"]),
        },
        SuitePair {
            name: "R1 (x^2,xy,y^3) < (x,y^2)",
            ring: a.clone(),
            j: ideal(&a, &["x^2", "x*y", "y^3"]),
            i: ideal(&a, &["x", "y^2"]),
        },
        SuitePair { name: "R1 (x^2,y^2) < m", ring: a.clone(), j: ideal(&a, &["x^2", "y^2"]), i: ideal(&a, &["x", "y"]) },
        SuitePair { name: "R2 m^2 < m", ring: b.clone(), j: ideal(&b, &["x^2", "x*y", "y^2"]), i: ideal(&b, &["x", "y"]) },
        SuitePair {
            name: "R2 m^3 < m^2",
            ring: b.clone(),
            j: ideal(&b, &["x^3", "x^2*y", "x*y^2", "y^3"]),
            i: ideal(&b, &["x^2", "x*y", "y^2"]),
        },
        SuitePair { name: "R4 m^2 < m", ring: c.clone(), j: ideal(&c, &["x^2", "x*y", "y^2"]), i: ideal(&c, &["x", "y"]) },
        SuitePair {
            name: "R4 (x^2+y^2,xy) < m",
            ring: c.clone(),
            j: ideal(&c, &["x^2 + y^2", "x*y"]),
            i: ideal(&c, &["x", "y"]),
        },
        SuitePair { name: "R3 (x,y,z^2) < m", ring: f.clone(), j: ideal(&f, &["x", "y", "z^2"]), i: ideal(&f, &["x", "y", "z"]) },
        SuitePair {
            name: "R3 m^2 < m",
            ring: f.clone(),
            j: ideal(&f, &["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]),
            i: ideal(&f, &["x", "y", "z"]),
        },
    ];
    let i = ideal(&f, &["x", "y", "z^2"]);
    let (j, _) = starchains::frobenius::frobenius_closure(&i.times_maximal(), &Default::default()).unwrap();
    out.push(SuitePair { name: "R3 (m(x,y,z^2))^F < (x,y,z^2)", ring: f.clone(), j, i });
    out
}
