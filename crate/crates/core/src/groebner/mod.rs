//! Quotient rings `R = S/Q`, ideals of `R`, and the Gröbner machinery that
//! decides membership and containment.
//!
//! An ideal of `R` is stored as an ideal of the ambient polynomial ring `S`
//! that contains `Q`: its Gröbner basis is always computed from its
//! generators together with the modulus.

mod buchberger;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use buchberger::{buchberger, buchberger_extend, reduce};

use crate::error::{Error, Result};
use crate::fp_poly::{same_ring, Monomial, PolyRing, Polynomial};

/// `R = S/Q` with `Q` homogeneous and proper.
#[derive(Debug)]
pub struct QuotientRing {
    ambient: Arc<PolyRing>,
    modulus: Vec<Polynomial>,
    modulus_gb: Vec<Polynomial>,
    name: String,
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ambient, &other.ambient) && self.modulus_gb == other.modulus_gb
    }
}

impl QuotientRing {
    pub fn new(ambient: &Arc<PolyRing>, modulus: Vec<Polynomial>, name: impl Into<String>) -> Result<Arc<Self>> {
        for f in &modulus {
            if !same_ring(f.ring(), ambient) {
                return Err(Error::RingMismatch);
            }
            if !f.is_homogeneous() {
                return Err(Error::NotHomogeneous(format!("modulus generator {f}")));
            }
        }
        let modulus: Vec<Polynomial> = modulus.into_iter().filter(|f| !f.is_zero()).collect();
        let modulus_gb = buchberger(&modulus);
        if modulus_gb.iter().any(|g| g.leading_monomial().is_some_and(|m| m.is_one())) {
            return Err(Error::InvalidRing("the modulus is the unit ideal".into()));
        }
        Ok(Arc::new(QuotientRing { ambient: ambient.clone(), modulus, modulus_gb, name: name.into() }))
    }

    pub fn polynomial_ring(ambient: &Arc<PolyRing>) -> Arc<Self> {
        Self::new(ambient, Vec::new(), "S").expect("the zero modulus is always valid")
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn modulus(&self) -> &[Polynomial] {
        &self.modulus
    }

    pub fn modulus_gb(&self) -> &[Polynomial] {
        &self.modulus_gb
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.modulus_gb.is_empty()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        self.ambient.parse(text)
    }
}

fn same_quotient(a: &Arc<QuotientRing>, b: &Arc<QuotientRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Length of `R/I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Colength {
    Finite(usize),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<usize> {
        match self {
            Colength::Finite(n) => Some(n),
            Colength::Infinite => None,
        }
    }
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => write!(f, "infinite"),
        }
    }
}

/// An ideal of `R`, with a write-once cache of its reduced Gröbner basis.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<QuotientRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<Vec<Polynomial>>>,
}

impl Ideal {
    pub fn new(ring: &Arc<QuotientRing>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !same_ring(g.ring(), &ring.ambient) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(Self::from_parts(ring, gens))
    }

    fn from_parts(ring: &Arc<QuotientRing>, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn parse(ring: &Arc<QuotientRing>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn zero(ring: &Arc<QuotientRing>) -> Self {
        Self::from_parts(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<QuotientRing>) -> Self {
        Self::from_parts(ring, vec![ring.ambient.one()])
    }

    /// The homogeneous maximal ideal generated by all variables.
    pub fn maximal(ring: &Arc<QuotientRing>) -> Self {
        Self::from_parts(ring, ring.ambient.variables_as_polys())
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ring.ambient
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Gröbner basis of `gens + Q`, computed once.
    pub fn gb(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| Arc::new(buchberger_extend(&self.ring.modulus_gb, &self.gens)))
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if same_quotient(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_poly(&self, f: &Polynomial) -> Result<()> {
        if same_ring(f.ring(), &self.ring.ambient) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce(f, self.gb())
    }

    pub fn contains_element(&self, f: &Polynomial) -> Result<bool> {
        self.check_poly(f)?;
        Ok(self.normal_form(f).is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(other.gens.iter().all(|g| self.normal_form(g).is_zero()))
    }

    /// Equality of ideals of `R` (identical reduced Gröbner bases).
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.gb() == other.gb())
    }

    pub fn is_unit(&self) -> bool {
        self.gb().first().is_some_and(|g| g.leading_monomial().is_some_and(|m| m.is_one()))
    }

    /// `I = Q`, i.e. the zero ideal of `R`.
    pub fn is_zero(&self) -> bool {
        self.gb() == self.ring.modulus_gb.as_slice()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::from_parts(&self.ring, gens))
    }

    pub fn add_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        for f in extra {
            self.check_poly(f)?;
        }
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ok(Self::from_parts(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ok(Self::from_parts(&self.ring, gens))
    }

    /// `m·I`.
    pub fn times_maximal(&self) -> Ideal {
        Ideal::maximal(&self.ring).product(self).expect("same ring")
    }

    /// `I^{[p^e]}`: `p^e`-th powers of the generators, plus `Q`.
    pub fn bracket_power(&self, e: u32) -> Result<Ideal> {
        if e == 0 {
            return Ok(self.clone());
        }
        let gens = self.gens.iter().map(|g| g.frobenius_power(e)).collect::<Result<Vec<_>>>()?;
        let out = Self::from_parts(&self.ring, gens);
        if self.ring.is_polynomial_ring() {
            // Frobenius is flat on S: the q-th powers of a reduced Gröbner
            // basis form the reduced Gröbner basis of the bracket power.
            let gb = self.gb().iter().map(|g| g.frobenius_power(e)).collect::<Result<Vec<_>>>()?;
            let _ = out.gb.set(Arc::new(gb));
        }
        Ok(out)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gb().iter().all(|g| g.is_homogeneous())
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.gb().iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    fn leading_monomials(&self) -> Vec<Monomial> {
        self.gb().iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    /// `R/I` is finite-dimensional: every variable has a pure power among
    /// the leading monomials.
    pub fn has_finite_colength(&self) -> bool {
        let lms = self.leading_monomials();
        if lms.iter().any(|m| m.is_one()) {
            return true;
        }
        (0..self.ambient().nvars()).all(|i| lms.iter().any(|m| m.pure_power_var() == Some(i)))
    }

    /// Proper, finite colength, and every variable nilpotent modulo `I`.
    pub fn is_m_primary(&self) -> bool {
        if self.is_unit() || !self.has_finite_colength() {
            return false;
        }
        let n = match self.colength() {
            Colength::Finite(n) => n as u64,
            Colength::Infinite => return false,
        };
        let ambient = self.ambient().clone();
        (0..ambient.nvars()).all(|i| self.normal_form(&ambient.var(i).pow(n)).is_zero())
    }

    pub fn colength(&self) -> Colength {
        if !self.has_finite_colength() {
            return Colength::Infinite;
        }
        Colength::Finite(self.standard_monomials(None).map(|v| v.len()).unwrap_or(0))
    }

    /// Monomials not divisible by any leading monomial of the Gröbner basis,
    /// in coordinate order, up to `degree_cap` when given. Without a cap the
    /// ideal must have finite colength.
    pub fn standard_monomials(&self, degree_cap: Option<u32>) -> Result<Vec<Monomial>> {
        if degree_cap.is_none() && !self.has_finite_colength() {
            return Err(Error::NotMPrimary);
        }
        let lms = self.leading_monomials();
        let n = self.ambient().nvars();
        let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
        let mut out = Vec::new();
        let one = Monomial::one(n);
        if !standard(&one) {
            return Ok(out);
        }
        // each monomial is generated once, from its parent by raising a
        // variable of index >= the last nonzero one
        let mut stack = vec![(one, 0usize)];
        while let Some((m, last)) = stack.pop() {
            for i in last..n {
                let child = m.mul(&Monomial::var(i, n));
                if degree_cap.is_some_and(|c| child.degree() > c) || !standard(&child) {
                    continue;
                }
                stack.push((child, i));
            }
            out.push(m);
        }
        let order = self.ambient().order();
        out.sort_by(|a, b| order.coordinate_cmp(a, b));
        Ok(out)
    }

    /// Standard monomials of degree `d`: a basis of `(R/I)_d`.
    pub fn graded_basis(&self, d: u32) -> Result<Vec<Monomial>> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous(format!("ideal {self}")));
        }
        let lms = self.leading_monomials();
        Ok(self.ambient().monomials_of_degree(d).into_iter().filter(|m| !lms.iter().any(|l| l.divides(m))).collect())
    }

    /// The reduced Gröbner basis of `I + Q` rendered as strings, by
    /// ascending degree of the leading monomial.
    pub fn canonical_generators(&self) -> Vec<String> {
        let order = self.ambient().order();
        let mut gb: Vec<&Polynomial> = self.gb().iter().collect();
        gb.sort_by(|a, b| order.coordinate_cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        gb.into_iter().map(|g| g.to_string()).collect()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_poly::MonomialOrder;

    fn plane(p: u64) -> Arc<QuotientRing> {
        QuotientRing::polynomial_ring(&PolyRing::new(p, &["x", "y"], MonomialOrder::Grevlex).unwrap())
    }

    fn fermat() -> Arc<QuotientRing> {
        let s = PolyRing::new(2, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let f = s.parse("x^3 + y^3 + z^3").unwrap();
        QuotientRing::new(&s, vec![f], "fermat").unwrap()
    }

    #[test]
    fn rejects_bad_moduli() {
        let s = PolyRing::new(2, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        assert!(matches!(QuotientRing::new(&s, vec![s.parse("x + 1").unwrap()], "bad"), Err(Error::NotHomogeneous(_))));
        assert!(QuotientRing::new(&s, vec![s.one()], "unit").is_err());
    }

    #[test]
    fn normal_form_examples() {
        let r = fermat();
        let i = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        assert!(i.normal_form(&r.parse("z^4").unwrap()).is_zero());
        assert!(!i.normal_form(&r.parse("z^2").unwrap()).is_zero());
        assert!(i.contains_element(&r.parse("x^2*y").unwrap()).unwrap());
    }

    #[test]
    fn membership_and_containment() {
        let r = plane(2);
        let m = Ideal::maximal(&r);
        assert!(m.contains_element(&r.parse("x").unwrap()).unwrap());
        let m2 = Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap();
        assert!(m.contains(&m2).unwrap());
        assert!(!m2.contains(&m).unwrap());
        let a = Ideal::parse(&r, &["x", "y^2", "x*y"]).unwrap();
        let b = Ideal::parse(&r, &["x", "y^2"]).unwrap();
        assert!(a.equals(&b).unwrap());
        let other = plane(3);
        assert_eq!(a.contains(&Ideal::maximal(&other)), Err(Error::RingMismatch));
    }

    #[test]
    fn arithmetic() {
        let r = plane(2);
        let m = Ideal::maximal(&r);
        let i = Ideal::parse(&r, &["x", "y"]).unwrap();
        assert!(i.bracket_power(1).unwrap().equals(&Ideal::parse(&r, &["x^2", "y^2"]).unwrap()).unwrap());
        assert!(i.bracket_power(0).unwrap().equals(&i).unwrap());
        let prod = m.product(&i).unwrap();
        assert!(prod.equals(&Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap()).unwrap());
        assert!(i.sum(&prod).unwrap().equals(&i).unwrap());
    }

    #[test]
    fn graded_basis_examples() {
        let r = plane(2);
        let m = Ideal::maximal(&r);
        assert_eq!(m.graded_basis(0).unwrap(), vec![Monomial::one(2)]);
        let sq = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        assert_eq!(sq.graded_basis(1).unwrap().len(), 2);
        let f = fermat();
        let xy = Ideal::parse(&f, &["x", "y"]).unwrap();
        let b = xy.graded_basis(2).unwrap();
        assert_eq!(b, vec![Monomial::from_exponents(vec![0, 0, 2])]);
        let nonhom = Ideal::parse(&r, &["x + y^2"]).unwrap();
        assert!(nonhom.graded_basis(1).is_err());
    }

    #[test]
    fn colength_examples() {
        let r = plane(2);
        assert_eq!(Ideal::maximal(&r).colength(), Colength::Finite(1));
        assert_eq!(Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap().colength(), Colength::Finite(3));
        assert_eq!(Ideal::parse(&r, &["x"]).unwrap().colength(), Colength::Infinite);
        assert_eq!(Ideal::unit(&r).colength(), Colength::Finite(0));
        // non-homogeneous but supported at the origin
        let i = Ideal::parse(&r, &["x + y^2", "x^2", "x*y", "y^3"]).unwrap();
        assert!(i.is_m_primary());
        // supported at (1, 0) as well
        let j = Ideal::parse(&r, &["x^2 + x", "y"]).unwrap();
        assert!(j.has_finite_colength());
        assert!(!j.is_m_primary());
    }

    #[test]
    fn fermat_bracket_power_gb() {
        let r = fermat();
        let i = Ideal::parse(&r, &["x", "y", "z^2"]).unwrap();
        let b = i.bracket_power(2).unwrap();
        for g in b.gens() {
            assert!(b.contains_element(g).unwrap());
        }
        assert!(b.contains_element(&r.parse("x^3 + y^3 + z^3").unwrap()).unwrap());
        assert!(b.has_finite_colength());
    }
}
