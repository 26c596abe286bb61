//! Sparse multivariate polynomials over `F_p`.

mod monomial;
mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use monomial::{Monomial, MonomialOrder};

use crate::error::{Error, Result};
use crate::fp_linear::PrimeField;

/// `F_p[x_0, ..., x_{n-1}]` with a fixed monomial order.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    variables: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(p: u64, variables: &[&str], order: MonomialOrder) -> Result<Arc<Self>> {
        Self::from_names(p, variables.iter().map(|s| s.to_string()).collect(), order)
    }

    pub fn from_names(p: u64, variables: Vec<String>, order: MonomialOrder) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        if variables.is_empty() {
            return Err(Error::InvalidRing("no variables".into()));
        }
        for (i, v) in variables.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if variables[..i].contains(v) {
                return Err(Error::InvalidRing(format!("variable `{v}` declared twice")));
            }
        }
        Ok(Arc::new(PolyRing { field, variables, order }))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(self: &Arc<Self>, c: u32) -> Polynomial {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        self.term(Monomial::var(i, self.nvars()), 1)
    }

    pub fn variables_as_polys(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn term(self: &Arc<Self>, m: Monomial, c: u32) -> Polynomial {
        let c = self.field.from_u64(c as u64);
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: self.clone(), terms }
    }

    /// Collects arbitrary terms (duplicates summed, zeros dropped).
    pub fn from_terms(self: &Arc<Self>, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Polynomial {
        let f = self.field;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, f.from_u64(c as u64));
        }
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        let order = self.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: self.clone(), terms }
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial> {
        parse::parse_polynomial(self, text)
    }

    /// All monomials of total degree `d`, in coordinate order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u16; n];
        fn rec(i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if i + 1 == exps.len() {
                exps[i] = left as u16;
                out.push(Monomial::from_exponents(exps.clone()));
                return;
            }
            for e in (0..=left).rev() {
                exps[i] = e as u16;
                rec(i + 1, left - e, exps, out);
            }
            exps[i] = 0;
        }
        rec(0, d, &mut exps, &mut out);
        let order = self.order;
        out.sort_by(|a, b| order.coordinate_cmp(a, b));
        out
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A polynomial: terms strictly descending in the ring's order, no zero
/// coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|(t, _)| t == m).map_or(0, |t| t.1)
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, 1, None))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, self.ring.field.neg(1), None))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// `self + c * shift * other`, by a linear merge of sorted term lists.
    pub(crate) fn merge(&self, other: &Polynomial, c: u32, shift: Option<&Monomial>) -> Polynomial {
        let f = self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let scaled = other.terms.iter().map(|(m, k)| {
            let m = match shift {
                Some(s) => m.mul(s),
                None => m.clone(),
            };
            (m, f.mul(*k, c))
        });
        let mut b = scaled.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((ma, _)), Some((mb, _))) => match order.cmp(ma, mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap().clone();
                        let (_, cb) = b.next().unwrap();
                        let s = f.add(ca, cb);
                        if s != 0 {
                            out.push((m, s));
                        }
                    }
                },
            }
        }
        out.retain(|(_, k)| *k != 0);
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let f = self.ring.field;
        let mut acc = self.ring.zero();
        if self.terms.len() > other.terms.len() {
            return other.mul_unchecked(self);
        }
        for (m, c) in &self.terms {
            acc = acc.merge(other, *c, Some(m));
        }
        debug_assert!(acc.terms.iter().all(|(_, c)| *c < f.characteristic()));
        acc
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field;
        let c = f.from_u64(c as u64);
        if c == 0 {
            return self.ring.zero();
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, k)| (m.clone(), f.mul(*k, c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, k)| (t.mul(m), *k)).collect() }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }

    /// Scaled so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scale(self.ring.field.inv(*c)),
        }
    }

    /// `f^(p^e)`, computed termwise: Frobenius is additive and fixes `F_p`.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        let q = (self.ring.characteristic() as u64)
            .checked_pow(e)
            .filter(|&q| q <= u16::MAX as u64 || self.is_constant())
            .ok_or_else(|| Error::ExponentOverflow(format!("p^{e} exceeds the exponent width")))?;
        if q > u16::MAX as u64 {
            return Ok(self.clone());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.pow(q as u32)?, *c));
        }
        // m -> m^q preserves the order, so the term list stays sorted.
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Plain power by repeated squaring.
    pub fn pow(&self, mut n: u64) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let f = self.ring.field;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[i];
            if e == 0 {
                return None;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            Some((Monomial::from_exponents(exps), f.mul(*c, f.from_u64(e as u64))))
        });
        self.ring.from_terms(terms.collect::<Vec<_>>())
    }

    /// Linear combination `Σ c_i m_i` over the given coordinate monomials.
    pub fn from_coordinates(ring: &Arc<PolyRing>, coords: &[Monomial], v: &[u32]) -> Polynomial {
        ring.from_terms(coords.iter().cloned().zip(v.iter().copied()))
    }

    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, u32)>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, u32)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (v, &e) in self.ring.variables.iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl std::ops::$trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("polynomials from different rings")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
