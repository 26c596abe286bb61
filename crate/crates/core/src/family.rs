//! Adjacent families `F(J, I)` of closed ideals one step below `I`, and
//! chains of closed ideals with unit colength gaps.
//!
//! Members are parametrized by hyperplanes `W` of `V = I/(J + I^Fsp)`: each
//! one gives `I' = J + I^Fsp + lift(W)`.

use crate::error::{Error, Result};
use crate::fp_linear::{enumerate_hyperplanes, projective_point_count, SubspaceBasis};
use crate::frobenius::{is_frobenius_closed, ClosureConfig};
use crate::groebner::{Colength, Ideal};
use crate::reduction::ReductionScene;

#[derive(Clone, Debug)]
pub struct AdjacentFamily {
    pub p: u32,
    pub spread: usize,
    pub members: Vec<Ideal>,
    /// Normalized covectors on `V`, one per member.
    pub parameters: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct ClosedChain {
    /// From `J` up to `I`.
    pub links: Vec<Ideal>,
}

impl ClosedChain {
    pub fn length(&self) -> usize {
        self.links.len() - 1
    }

    /// Every link closed, consecutive links nested with colength gap one.
    pub fn verify(&self, cfg: &ClosureConfig) -> Result<bool> {
        for w in self.links.windows(2) {
            if !w[1].contains(&w[0])? || colength_gap(&w[1], &w[0])? != Some(1) {
                return Ok(false);
            }
        }
        for link in &self.links {
            if !is_frobenius_closed(link, cfg)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `λ(big/small)` when both have finite colength.
fn colength_gap(big: &Ideal, small: &Ideal) -> Result<Option<usize>> {
    match (big.colength(), small.colength()) {
        (Colength::Finite(b), Colength::Finite(s)) if s >= b => Ok(Some(s - b)),
        (Colength::Finite(_), Colength::Finite(_)) => Err(Error::Hypothesis(format!("{small} is larger than {big}"))),
        _ => Ok(None),
    }
}

/// `dim I/I'` for `mI + J ⊆ I' ⊆ I`, read in the scene's coordinates.
fn quotient_dim(scene: &ReductionScene, member: &Ideal) -> Result<usize> {
    let images: Vec<Vec<u32>> =
        member.gens().iter().map(|g| scene.image(g)).collect::<Result<_>>()?;
    let span = SubspaceBasis::span_of(scene.field(), scene.dim_v0(), &images);
    Ok(scene.dim_v0() - span.dim())
}

/// Checks one member: closed, inside `I`, one step below it.
fn verify_member(scene: &ReductionScene, member: &Ideal) -> Result<()> {
    if !scene.i().contains(member)? || !member.contains(scene.j())? {
        return Err(Error::TheoremViolation(format!("{member} is not between J and I")));
    }
    let gap = match colength_gap(scene.i(), member)? {
        Some(g) => g,
        None => quotient_dim(scene, member)?,
    };
    if gap != 1 {
        return Err(Error::TheoremViolation(format!("{member} has colength {gap} in I")));
    }
    if !is_frobenius_closed(member, scene.config())? {
        return Err(Error::TheoremViolation(format!("{member} is not Frobenius-closed")));
    }
    Ok(())
}

/// `F(J, I)`, in the order of the hyperplane parameters. Empty when `l = 0`.
pub fn adjacent_family(scene: &ReductionScene) -> Result<AdjacentFamily> {
    let field = scene.field();
    let l = scene.spread();
    let mut fam = AdjacentFamily { p: field.characteristic(), spread: l, members: Vec::new(), parameters: Vec::new() };
    if l == 0 {
        return Ok(fam);
    }
    let complement = scene.minimal_reduction();
    let k = scene.dim_v0();
    let floor = scene.special().ideal.sum(scene.j())?;
    for h in enumerate_hyperplanes(field, l)? {
        let lifts: Vec<_> = h
            .basis
            .vectors()
            .iter()
            .map(|w| {
                let mut v = vec![0u32; k];
                for (coef, c) in w.iter().zip(complement.images()) {
                    for (acc, x) in v.iter_mut().zip(c) {
                        *acc = field.add(*acc, field.mul(*coef, *x));
                    }
                }
                scene.lift(&v)
            })
            .collect();
        let member = floor.add_generators(&lifts)?;
        verify_member(scene, &member)?;
        fam.members.push(member);
        fam.parameters.push(h.normal);
    }
    Ok(fam)
}

/// `|F| = (p^l − 1)/(p − 1)` and the members are pairwise distinct.
pub fn family_count_check(fam: &AdjacentFamily) -> Result<bool> {
    let expected = if fam.spread == 0 { Some(0) } else { projective_point_count(fam.p, fam.spread) };
    if expected != Some(fam.members.len() as u64) || fam.parameters.len() != fam.members.len() {
        return Ok(false);
    }
    for (a, x) in fam.members.iter().enumerate() {
        for y in &fam.members[a + 1..] {
            if x.equals(y)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest number of hyperplanes [`brute_force_family`] will try.
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 10;

/// Every hyperplane of the full space `I/(mI + J)`, lifted and filtered by
/// closedness. Independent of the special part; used as an oracle.
pub fn brute_force_family(scene: &ReductionScene) -> Result<Vec<Ideal>> {
    let field = scene.field();
    let k = scene.dim_v0();
    if k == 0 {
        return Ok(Vec::new());
    }
    match projective_point_count(field.characteristic(), k) {
        Some(c) if c <= BRUTE_FORCE_LIMIT => {}
        _ => return Err(Error::TooLarge(format!("{k}-dimensional space over F_{}", field.characteristic()))),
    }
    let floor = scene.base().clone();
    let mut out = Vec::new();
    for h in enumerate_hyperplanes(field, k)? {
        let lifts: Vec<_> = h.basis.vectors().iter().map(|v| scene.lift(v)).collect();
        let candidate = floor.add_generators(&lifts)?;
        if is_frobenius_closed(&candidate, scene.config())? {
            out.push(candidate);
        }
    }
    Ok(out)
}

/// Descends from `I` to `J` through first family members.
pub fn build_chain(j: &Ideal, i: &Ideal, cfg: &ClosureConfig) -> Result<ClosedChain> {
    if !j.is_m_primary() || !i.is_m_primary() {
        return Err(Error::NotMPrimary);
    }
    let mut links = vec![i.clone()];
    let mut current = i.clone();
    while !current.equals(j)? {
        let scene = ReductionScene::new(j, &current, *cfg)?;
        let fam = adjacent_family(&scene)?;
        let next = fam
            .members
            .into_iter()
            .next()
            .ok_or_else(|| Error::TheoremViolation(format!("no closed ideal between {j} and {current}")))?;
        links.push(next.clone());
        current = next;
    }
    links.reverse();
    Ok(ClosedChain { links })
}
