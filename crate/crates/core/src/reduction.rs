//! F-spread, independence and minimal reductions of `I` modulo `J`.
//!
//! Everything after the scene is built is linear algebra in the vector space
//! `V0 = I/(mI + J)`. Its coordinates come from a fixed generating set of
//! `I`: the Gröbner basis elements by ascending degree, keeping those whose
//! images are independent. A coordinate vector therefore lifts to an actual
//! element of `I`.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fp_linear::{complement_basis, rref, FpMatrix, PrimeField, SubspaceBasis};
use crate::fp_poly::{Monomial, Polynomial};
use crate::frobenius::{frobenius_closure, is_frobenius_closed, special_part, ClosureConfig, SpecialPart};
use crate::groebner::Ideal;

/// A pair `J ⊆ I` of Frobenius-closed ideals with its cached special part
/// and coordinates on `I/(mI + J)`.
#[derive(Debug)]
pub struct ReductionScene {
    j: Ideal,
    i: Ideal,
    cfg: ClosureConfig,
    special: SpecialPart,
    /// `mI + J`
    base: Ideal,
    /// monomials supporting the normal forms modulo `base`
    monomials: Vec<Monomial>,
    /// generators of `I` whose images form the basis of `V0`
    basis_gens: Vec<Polynomial>,
    /// their images, in monomial coordinates
    basis_images: Vec<Vec<u32>>,
    /// image of `I^Fsp + J` in `V0` coordinates
    u: SubspaceBasis,
    cross_check: OnceLock<std::result::Result<usize, Error>>,
}

/// `fs = (f_1, …, f_k)` with independent images in `I/(mI + J)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCandidate {
    fs: Vec<Polynomial>,
    images: Vec<Vec<u32>>,
}

impl ReductionCandidate {
    pub fn fs(&self) -> &[Polynomial] {
        &self.fs
    }

    pub fn images(&self) -> &[Vec<u32>] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.fs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fs.is_empty()
    }
}

impl ReductionScene {
    pub fn new(j: &Ideal, i: &Ideal, cfg: ClosureConfig) -> Result<Self> {
        if j.ring() != i.ring() {
            return Err(Error::RingMismatch);
        }
        if !i.contains(j)? {
            return Err(Error::Hypothesis(format!("{j} is not contained in {i}")));
        }
        if !is_frobenius_closed(j, &cfg)? {
            return Err(Error::Hypothesis(format!("{j} is not Frobenius-closed")));
        }
        if !is_frobenius_closed(i, &cfg)? {
            return Err(Error::Hypothesis(format!("{i} is not Frobenius-closed")));
        }
        let special = special_part(i, &cfg)?;
        if special.capped {
            return Err(Error::CapExceeded(format!("special part of {i}")));
        }
        let base = i.times_maximal().sum(j)?;

        let order = i.ambient().order();
        let mut gens: Vec<Polynomial> = i.gb().to_vec();
        gens.sort_by(|a, b| order.coordinate_cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        let nfs: Vec<Polynomial> = gens.iter().map(|g| base.normal_form(g)).collect();
        let mut monomials: Vec<Monomial> =
            nfs.iter().flat_map(|f| f.terms().iter().map(|(m, _)| m.clone())).collect();
        monomials.sort_by(|a, b| order.coordinate_cmp(a, b));
        monomials.dedup();
        let index: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let to_vec = |f: &Polynomial| {
            let mut v = vec![0; monomials.len()];
            for (m, c) in f.terms() {
                v[index[m]] = *c;
            }
            v
        };
        let field = i.ambient().field();
        let mut basis_gens = Vec::new();
        let mut basis_images: Vec<Vec<u32>> = Vec::new();
        let mut span = SubspaceBasis::empty(field, monomials.len());
        for (g, nf) in gens.iter().zip(&nfs) {
            let v = to_vec(nf);
            if !span.contains(&v) {
                span = span.join(&SubspaceBasis::span_of(field, monomials.len(), std::slice::from_ref(&v)));
                basis_gens.push(g.clone());
                basis_images.push(v);
            }
        }
        let mut scene = ReductionScene {
            j: j.clone(),
            i: i.clone(),
            cfg,
            special,
            base,
            monomials,
            basis_gens,
            basis_images,
            u: SubspaceBasis::empty(field, 0),
            cross_check: OnceLock::new(),
        };
        let images = scene
            .special
            .ideal
            .gens()
            .iter()
            .map(|h| scene.coordinates(h).ok_or_else(|| Error::TheoremViolation(format!("{h} in the special part lies outside {i}"))))
            .collect::<Result<Vec<_>>>()?;
        scene.u = SubspaceBasis::span_of(field, scene.dim_v0(), &images);
        Ok(scene)
    }

    pub fn j(&self) -> &Ideal {
        &self.j
    }

    pub fn i(&self) -> &Ideal {
        &self.i
    }

    pub fn config(&self) -> &ClosureConfig {
        &self.cfg
    }

    pub fn field(&self) -> PrimeField {
        self.i.ambient().field()
    }

    /// `I^Fsp` with its certificate.
    pub fn special(&self) -> &SpecialPart {
        &self.special
    }

    /// `mI + J`.
    pub fn base(&self) -> &Ideal {
        &self.base
    }

    /// `dim I/(mI + J)`.
    pub fn dim_v0(&self) -> usize {
        self.basis_gens.len()
    }

    /// Generators of `I` lifting the coordinate basis of `V0`.
    pub fn basis_generators(&self) -> &[Polynomial] {
        &self.basis_gens
    }

    /// Image of `I^Fsp + J` in `V0`.
    pub fn special_subspace(&self) -> &SubspaceBasis {
        &self.u
    }

    /// `l = dim V0 − dim U`, without the bracket-power cross-check.
    pub fn spread(&self) -> usize {
        self.dim_v0() - self.u.dim()
    }

    /// Coordinates of the image of `f` in `V0`, or `None` when the normal
    /// form modulo `mI + J` leaves the span of `I`.
    fn coordinates(&self, f: &Polynomial) -> Option<Vec<u32>> {
        let nf = self.base.normal_form(f);
        let field = self.field();
        let k = self.dim_v0();
        let rows = self.monomials.len();
        let mut mat = FpMatrix::zero(field, rows, k + 1);
        for (t, img) in self.basis_images.iter().enumerate() {
            for (r, &c) in img.iter().enumerate() {
                mat.set(r, t, c);
            }
        }
        for (m, c) in nf.terms() {
            let r = self.monomials.iter().position(|x| x == m)?;
            mat.set(r, k, *c);
        }
        let (red, pivots) = rref(&mat);
        if pivots.contains(&k) {
            return None;
        }
        // the basis images are independent, so pivot t sits in row t
        Some((0..k).map(|t| red.get(t, k)).collect())
    }

    /// Image of `f ∈ I` in `V0`.
    pub fn image(&self, f: &Polynomial) -> Result<Vec<u32>> {
        if !self.i.contains_element(f)? {
            return Err(Error::Hypothesis(format!("{f} is not in {}", self.i)));
        }
        self.coordinates(f).ok_or_else(|| Error::TheoremViolation(format!("{f} has no image in I/(mI+J)")))
    }

    /// An element of `I` with the given image.
    pub fn lift(&self, v: &[u32]) -> Polynomial {
        let field = self.field();
        let mut acc = self.i.ambient().zero();
        for (g, &c) in self.basis_gens.iter().zip(v) {
            if c != 0 {
                acc = acc.merge(g, field.from_u64(c as u64), None);
            }
        }
        acc
    }

    pub fn candidate(&self, fs: Vec<Polynomial>) -> Result<ReductionCandidate> {
        let images = fs.iter().map(|f| self.image(f)).collect::<Result<Vec<_>>>()?;
        SubspaceBasis::new(self.field(), self.dim_v0(), images.clone())
            .map_err(|_| Error::Hypothesis("images are not linearly independent in I/(mI+J)".into()))?;
        Ok(ReductionCandidate { fs, images })
    }

    fn candidate_from_images(&self, images: Vec<Vec<u32>>) -> ReductionCandidate {
        let fs = images.iter().map(|v| self.lift(v)).collect();
        ReductionCandidate { fs, images }
    }

    /// `l`, cross-checked against the minimal generator count of `I^{[q]}`
    /// modulo `J^{[q]}` at `e_max − 1` and `e_max`.
    pub fn f_spread(&self) -> Result<usize> {
        self.cross_check.get_or_init(|| self.bracket_check()).clone()
    }

    fn bracket_check(&self) -> Result<usize> {
        let l = self.spread();
        for e in [self.cfg.e_max - 1, self.cfg.e_max] {
            let count = bracket_generator_count(&self.i, &self.j, e)?;
            if count != l {
                return Err(Error::CapExceeded(format!(
                    "spread {l} disagrees with {count} generators of the bracket power at e = {e}"
                )));
            }
        }
        Ok(l)
    }

    /// `V0 = C ⊕ U` for the complement `C` used by
    /// [`Self::minimal_reduction`].
    pub fn direct_sum_holds(&self) -> bool {
        let c = SubspaceBasis::span_of(self.field(), self.dim_v0(), self.minimal_reduction().images());
        c.meets_trivially(&self.u) && c.dim() + self.u.dim() == self.dim_v0() && c.dim() == self.spread()
    }

    /// No `f_i` lies in the Frobenius closure of `J` and the other `f`s.
    pub fn is_star_independent(&self, fs: &[Polynomial]) -> Result<bool> {
        for (idx, f) in fs.iter().enumerate() {
            if !self.i.contains_element(f)? {
                return Err(Error::Hypothesis(format!("{f} is not in {}", self.i)));
            }
            let rest: Vec<Polynomial> =
                fs.iter().enumerate().filter(|(k, _)| *k != idx).map(|(_, g)| g.clone()).collect();
            let (closure, cert) = frobenius_closure(&self.j.add_generators(&rest)?, &self.cfg)?;
            if closure.contains_element(f)? {
                return Ok(false);
            }
            if cert.capped {
                return Err(Error::CapExceeded(format!("closure of ({}, …) while testing {f}", self.j)));
            }
        }
        Ok(true)
    }

    /// `I^Fsp ∩ K ⊆ mI + J`, read in `V0`.
    pub fn condition_b(&self, k: &ReductionCandidate) -> bool {
        SubspaceBasis::span_of(self.field(), self.dim_v0(), &k.images).meets_trivially(&self.u)
    }

    /// `I = I^Fsp + K`, by Gröbner bases.
    pub fn condition_c(&self, k: &ReductionCandidate) -> Result<bool> {
        let sum = self.special.ideal.sum(&self.j)?.add_generators(&k.fs)?;
        sum.equals(&self.i)
    }

    pub fn is_minimal_reduction(&self, k: &ReductionCandidate) -> Result<bool> {
        if k.len() != self.spread() {
            return Ok(false);
        }
        let b = self.condition_b(k);
        let c = self.condition_c(k)?;
        if b != c {
            return Err(Error::TheoremViolation(format!(
                "intersection condition gives {b} but sum condition gives {c} for {:?}",
                k.fs.iter().map(|f| f.to_string()).collect::<Vec<_>>()
            )));
        }
        Ok(b)
    }

    /// Lifts of the complement of `U` chosen greedily among coordinate vectors.
    pub fn minimal_reduction(&self) -> ReductionCandidate {
        let empty = SubspaceBasis::empty(self.field(), self.dim_v0());
        let c = complement_basis(&empty, &self.u).expect("the empty set meets U trivially");
        self.candidate_from_images(c.into_vectors())
    }

    /// Completes `partial` to a minimal reduction, or `None` when
    /// `I^Fsp ∩ (J, partial) ⊄ mI + J`.
    pub fn extend_to_reduction(&self, partial: &ReductionCandidate) -> Result<Option<ReductionCandidate>> {
        if partial.len() > self.spread() {
            return Err(Error::InvalidArgument(format!(
                "{} elements exceed the spread {}",
                partial.len(),
                self.spread()
            )));
        }
        if !self.condition_b(partial) {
            return Ok(None);
        }
        let w = SubspaceBasis::new(self.field(), self.dim_v0(), partial.images.clone())?;
        let extra = complement_basis(&w, &self.u)?;
        let mut out = partial.clone();
        for v in extra.into_vectors() {
            out.fs.push(self.lift(&v));
            out.images.push(v);
        }
        Ok(Some(out))
    }

    /// Replaces some `f_i` (smallest index that works) by `f`. `None` when
    /// `f ∈ I^Fsp + J`, where no replacement can exist.
    pub fn swap_generator(
        &self,
        k: &ReductionCandidate,
        f: &Polynomial,
    ) -> Result<Option<(usize, ReductionCandidate)>> {
        let v = self.image(f)?;
        if self.u.contains(&v) {
            return Ok(None);
        }
        for idx in 0..k.len() {
            let mut images = k.images.clone();
            images[idx] = v.clone();
            let span = SubspaceBasis::span_of(self.field(), self.dim_v0(), &images);
            if span.dim() == images.len() && span.meets_trivially(&self.u) {
                let mut fs = k.fs.clone();
                fs[idx] = f.clone();
                return Ok(Some((idx, ReductionCandidate { fs, images })));
            }
        }
        Err(Error::TheoremViolation(format!("no generator of the reduction can be exchanged for {f}")))
    }
}

/// `dim (I^{[q]} + J^{[q]}) / (m I^{[q]} + J^{[q]})`, the minimal number of
/// generators of `I^{[q]}` modulo `J^{[q]}`.
pub fn bracket_generator_count(i: &Ideal, j: &Ideal, e: u32) -> Result<usize> {
    let iq = i.bracket_power(e)?;
    let jq = j.bracket_power(e)?;
    let lower = iq.times_maximal().sum(&jq)?;
    let field = i.ambient().field();
    let nfs: Vec<Polynomial> = iq.gens().iter().map(|g| lower.normal_form(g)).collect();
    let mut index: HashMap<&Monomial, usize> = HashMap::new();
    for f in &nfs {
        for (m, _) in f.terms() {
            let next = index.len();
            index.entry(m).or_insert(next);
        }
    }
    let rows: Vec<Vec<u32>> = nfs
        .iter()
        .map(|f| {
            let mut v = vec![0; index.len()];
            for (m, c) in f.terms() {
                v[index[m]] = *c;
            }
            v
        })
        .collect();
    Ok(SubspaceBasis::span_of(field, index.len(), &rows).dim())
}
