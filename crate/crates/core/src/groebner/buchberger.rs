use std::collections::HashSet;

use crate::fp_poly::{Monomial, Polynomial};

/// Full normal form of `f` with respect to `basis` (every term reduced).
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let field = ring.field();
    let mut work = f.clone();
    let mut rem: Vec<(Monomial, u32)> = Vec::new();
    while let Some((lm, lc)) = work.leading_term() {
        let lm = lm.clone();
        match basis.iter().find(|g| g.leading_monomial().is_some_and(|gl| gl.divides(&lm))) {
            Some(g) => {
                let (glm, glc) = g.leading_term().unwrap();
                let shift = glm.quotient_of(&lm);
                let c = if glc == 1 { lc } else { field.mul(lc, field.inv(glc)) };
                work = work.merge(g, field.neg(c), Some(&shift));
            }
            None => {
                rem.push(work.pop_leading().unwrap());
            }
        }
    }
    // remainder terms were produced in descending order
    Polynomial::from_sorted_terms(&ring, rem)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let l = lf.lcm(lg);
    let field = f.ring().field();
    f.mul_monomial(&lf.quotient_of(&l)).merge(g, field.neg(1), Some(&lg.quotient_of(&l)))
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial]) -> Vec<Polynomial> {
    buchberger_extend(&[], gens)
}

/// Reduced Gröbner basis of `(known, extra)` where `known` is already a
/// Gröbner basis (pairs inside `known` are never formed).
pub fn buchberger_extend(known: &[Polynomial], extra: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = known.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    // returns false once the unit ideal is reached
    let insert = |h: Polynomial, basis: &mut Vec<Polynomial>, pending: &mut Vec<(usize, usize)>,
                      pending_set: &mut HashSet<(usize, usize)>| {
        let h = h.monic();
        if h.leading_monomial().unwrap().is_one() {
            return false;
        }
        let j = basis.len();
        for i in 0..j {
            pending.push((i, j));
            pending_set.insert((i, j));
        }
        basis.push(h);
        true
    };

    let unit = |f: &Polynomial| vec![f.ring().one()];

    for f in extra {
        let h = reduce(f, &basis);
        if !h.is_zero() && !insert(h.clone(), &mut basis, &mut pending, &mut pending_set) {
            return unit(f);
        }
    }

    while !pending.is_empty() {
        // normal strategy: smallest lcm first (degree, then order)
        let order = basis[0].ring().order();
        let pick = (0..pending.len())
            .min_by(|&a, &b| {
                let (ia, ja) = pending[a];
                let (ib, jb) = pending[b];
                let la = basis[ia].leading_monomial().unwrap().lcm(basis[ja].leading_monomial().unwrap());
                let lb = basis[ib].leading_monomial().unwrap().lcm(basis[jb].leading_monomial().unwrap());
                la.degree().cmp(&lb.degree()).then_with(|| order.cmp(&la, &lb)).then_with(|| (ia, ja).cmp(&(ib, jb)))
            })
            .unwrap();
        let (i, j) = pending.swap_remove(pick);
        pending_set.remove(&(i, j));

        let li = basis[i].leading_monomial().unwrap();
        let lj = basis[j].leading_monomial().unwrap();
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pending_set.contains(&(i.min(k), i.max(k)))
                && !pending_set.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let h = reduce(&s, &basis);
        if !h.is_zero() && !insert(h, &mut basis, &mut pending, &mut pending_set) {
            return unit(&basis[0]);
        }
    }

    if basis.is_empty() {
        return basis;
    }
    interreduce(basis)
}

fn interreduce(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lg = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let lh = h.leading_monomial().unwrap();
            k != idx && lh.divides(lg) && (lh != lg || k < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Polynomial> =
                minimal.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| g.clone()).collect();
            reduce(&minimal[i], &others).monic()
        })
        .collect();
    let order = reduced[0].ring().order();
    reduced.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    reduced
}
