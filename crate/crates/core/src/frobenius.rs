//! Frobenius closure `I^F`, the closedness test, and the special part
//! `I^Fsp`.
//!
//! Both closures are computed as kernels of `F_p`-linear maps. For a fixed
//! `q = p^e` the map `x ↦ x^q mod T` is additive and fixes `F_p`, so on the
//! finite-dimensional space spanned by the standard monomials of a base
//! ideal `B` (with `B^{[q]} ⊆ T`) its kernel is computed by one rref:
//!
//! * closure: `B = I`, `T = I^{[q]}`;
//! * special part: `B = mI`, `T = (m I^{[q0]})^{[q]}`, exponent `q0·q`.
//!
//! The base needs finite colength; otherwise a degree cap restricts the
//! candidates (homogeneous input only).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fp_linear::{kernel_basis, FpMatrix, SubspaceBasis};
use crate::fp_poly::{Monomial, Polynomial};
use crate::groebner::Ideal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureConfig {
    /// Largest Frobenius exponent `e` tried (`q = p^e`).
    pub e_max: u32,
    /// Largest `e0` tried for the special part (`q0 = p^e0`).
    pub e0_max: u32,
    /// Candidate degree bound, required for ideals of infinite colength.
    pub degree_cap: Option<u32>,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig { e_max: 5, e0_max: 3, degree_cap: None }
    }
}

impl ClosureConfig {
    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = Some(cap);
        self
    }

    pub fn with_e_max(mut self, e_max: u32) -> Self {
        self.e_max = e_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.e_max < 1 || self.e0_max < 1 {
            return Err(Error::InvalidArgument("e_max and e0_max must be at least 1".into()));
        }
        if self.e_max + self.e0_max > 16 {
            return Err(Error::InvalidArgument("e_max + e0_max exceeds the exponent budget".into()));
        }
        Ok(())
    }
}

/// An element together with the Frobenius exponent that certifies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub element: Polynomial,
    /// `element^{p^exponent} ∈ I^{[p^exponent]}` (closure), or the total
    /// exponent `e0 + e` for the special part.
    pub exponent: u32,
    /// `e0` for special-part witnesses; 0 for closure witnesses.
    pub e0: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureCertificate {
    pub new_generators: Vec<Witness>,
    /// Last exponent at which the closure grew.
    pub stabilized_at: u32,
    /// Growth had not stopped for two consecutive exponents within the cap.
    pub capped: bool,
}

/// Candidate coordinates for a base ideal: its standard monomials.
fn candidates(base: &Ideal, cfg: &ClosureConfig) -> Result<Vec<Monomial>> {
    if base.has_finite_colength() {
        return base.standard_monomials(None);
    }
    let cap = cfg.degree_cap.ok_or(Error::NotMPrimary)?;
    if !base.is_homogeneous() {
        return Err(Error::NotHomogeneous(format!("{base} has infinite colength and is not homogeneous")));
    }
    base.standard_monomials(Some(cap))
}

/// Kernel of `x ↦ NF_target(x^{p^exponent})` on the span of `coords`.
fn frobenius_kernel(coords: &[Monomial], target: &Ideal, exponent: u32) -> Result<SubspaceBasis> {
    let ring = target.ambient().clone();
    let field = ring.field();
    let q = (field.characteristic() as u64)
        .checked_pow(exponent)
        .filter(|&q| q <= u16::MAX as u64)
        .ok_or_else(|| Error::ExponentOverflow(format!("p^{exponent}")))? as u32;
    let mut row_index: HashMap<Monomial, usize> = HashMap::new();
    let mut images: Vec<Vec<(usize, u32)>> = Vec::with_capacity(coords.len());
    for m in coords {
        let power = ring.term(m.pow(q)?, 1);
        let nf = target.normal_form(&power);
        let col = nf
            .terms()
            .iter()
            .map(|(t, c)| {
                let next = row_index.len();
                (*row_index.entry(t.clone()).or_insert(next), *c)
            })
            .collect();
        images.push(col);
    }
    let mut mat = FpMatrix::zero(field, row_index.len(), coords.len());
    for (j, col) in images.iter().enumerate() {
        for &(i, c) in col {
            mat.set(i, j, c);
        }
    }
    Ok(kernel_basis(&mat))
}

fn lift(ideal: &Ideal, coords: &[Monomial], v: &[u32]) -> Polynomial {
    Polynomial::from_coordinates(ideal.ambient(), coords, v)
}

/// Greedily adds the vectors of `new` not already in `acc`; returns the
/// ones that were added.
fn absorb(acc: &mut SubspaceBasis, new: &SubspaceBasis) -> Vec<Vec<u32>> {
    let mut added = Vec::new();
    for v in new.vectors() {
        if !acc.contains(v) {
            let mut vs = acc.vectors().to_vec();
            vs.push(v.clone());
            *acc = SubspaceBasis::new(acc.field(), acc.ambient_dim(), vs).expect("independent by construction");
            added.push(v.clone());
        }
    }
    added
}

/// Homogeneous piece `{x ∈ R_d : x^{p^e} ∈ I^{[p^e]}}`, in the coordinates
/// of the degree-`d` standard monomials of `R`.
#[derive(Clone, Debug)]
pub struct GradedRootSpace {
    pub degree: u32,
    pub coordinates: Vec<Monomial>,
    pub basis: SubspaceBasis,
}

impl GradedRootSpace {
    pub fn elements(&self, ideal: &Ideal) -> Vec<Polynomial> {
        self.basis.vectors().iter().map(|v| lift(ideal, &self.coordinates, v)).collect()
    }
}

pub fn frobenius_root_space(ideal: &Ideal, e: u32, d: u32) -> Result<GradedRootSpace> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous(format!("{ideal}")));
    }
    let coordinates = Ideal::zero(ideal.ring()).graded_basis(d)?;
    let target = ideal.bracket_power(e)?;
    let basis = frobenius_kernel(&coordinates, &target, e)?;
    Ok(GradedRootSpace { degree: d, coordinates, basis })
}

/// `I^F` up to the exponent cap, with witnesses for every new generator.
pub fn frobenius_closure(ideal: &Ideal, cfg: &ClosureConfig) -> Result<(Ideal, ClosureCertificate)> {
    cfg.validate()?;
    if ideal.is_unit() {
        let cert = ClosureCertificate { new_generators: Vec::new(), stabilized_at: 0, capped: false };
        return Ok((ideal.clone(), cert));
    }
    let coords = candidates(ideal, cfg)?;
    let field = ideal.ambient().field();
    let mut acc = SubspaceBasis::empty(field, coords.len());
    let mut witnesses = Vec::new();
    let mut stabilized_at = 0;
    let mut quiet = 0;
    for e in 1..=cfg.e_max {
        let kernel = frobenius_kernel(&coords, &ideal.bracket_power(e)?, e)?;
        let added = absorb(&mut acc, &kernel);
        if added.is_empty() {
            quiet += 1;
            if quiet == 2 {
                break;
            }
        } else {
            quiet = 0;
            stabilized_at = e;
            witnesses.extend(added.iter().map(|v| Witness { element: lift(ideal, &coords, v), exponent: e, e0: 0 }));
        }
    }
    let extra: Vec<Polynomial> = witnesses.iter().map(|w| w.element.clone()).collect();
    let closure = ideal.add_generators(&extra)?;
    let cert = ClosureCertificate { new_generators: witnesses, stabilized_at, capped: quiet < 2 };
    Ok((closure, cert))
}

/// `I = I^F`. A capped computation that found nothing is inconclusive and
/// reported as [`Error::CapExceeded`]; any witness settles the answer.
pub fn is_frobenius_closed(ideal: &Ideal, cfg: &ClosureConfig) -> Result<bool> {
    let (_, cert) = frobenius_closure(ideal, cfg)?;
    if !cert.new_generators.is_empty() {
        return Ok(false);
    }
    if cert.capped {
        return Err(Error::CapExceeded(format!("closure of {ideal} did not stabilize by e = {}", cfg.e_max)));
    }
    Ok(true)
}

/// Direct membership test `f ∈ I^F`: the smallest `e ≤ e_max` with
/// `f^{p^e} ∈ I^{[p^e]}`, if any.
pub fn closure_membership(f: &Polynomial, ideal: &Ideal, cfg: &ClosureConfig) -> Result<Option<u32>> {
    for e in 0..=cfg.e_max {
        if ideal.bracket_power(e)?.contains_element(&f.frobenius_power(e)?)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct SpecialPart {
    pub ideal: Ideal,
    /// Elements outside `mI`, each with the `(e0, e0 + e)` that certified it.
    pub witnesses: Vec<Witness>,
    pub capped: bool,
}

/// `I^Fsp = {x : x^{q0} ∈ (m I^{[q0]})^F for some q0}`, searched over
/// `e0 ≤ e0_max` and `e ≤ e_max`.
pub fn special_part(ideal: &Ideal, cfg: &ClosureConfig) -> Result<SpecialPart> {
    cfg.validate()?;
    let base = ideal.times_maximal();
    let coords = candidates(&base, cfg)?;
    let field = ideal.ambient().field();
    let mut acc = SubspaceBasis::empty(field, coords.len());
    let mut witnesses = Vec::new();
    let mut capped = false;
    let mut quiet_outer = 0;
    let mut stable_outer = false;
    for e0 in 0..=cfg.e0_max {
        let inner = ideal.bracket_power(e0)?.times_maximal();
        let before = acc.dim();
        let mut quiet = 0;
        for e in 0..=cfg.e_max {
            let kernel = frobenius_kernel(&coords, &inner.bracket_power(e)?, e0 + e)?;
            let added = absorb(&mut acc, &kernel);
            if added.is_empty() {
                quiet += 1;
                if quiet == 2 {
                    break;
                }
            } else {
                quiet = 0;
                witnesses.extend(added.iter().map(|v| Witness { element: lift(ideal, &coords, v), exponent: e0 + e, e0 }));
            }
        }
        if quiet < 2 {
            capped = true;
        }
        if e0 > 0 && acc.dim() == before {
            quiet_outer += 1;
            if quiet_outer == 2 {
                stable_outer = true;
                break;
            }
        } else if e0 > 0 {
            quiet_outer = 0;
        }
    }
    if !stable_outer {
        capped = true;
    }
    let mut gens = base.gens().to_vec();
    gens.extend(witnesses.iter().map(|w| w.element.clone()));
    Ok(SpecialPart { ideal: Ideal::new(ideal.ring(), gens)?, witnesses, capped })
}

/// `I^F = I + I^Fsp`, both sides computed independently.
pub fn decomposition_check(ideal: &Ideal, cfg: &ClosureConfig) -> Result<bool> {
    let (closure, cert) = frobenius_closure(ideal, cfg)?;
    let sp = special_part(ideal, cfg)?;
    if cert.capped || sp.capped {
        return Err(Error::CapExceeded(format!("decomposition of {ideal}")));
    }
    closure.equals(&ideal.sum(&sp.ideal)?)
}
