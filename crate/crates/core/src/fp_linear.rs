//! Dense exact linear algebra over a prime field.
//!
//! Every vector space that shows up in the closure computations (graded
//! pieces, `I/(mI+J)`, `I/(J+I^Fsp)`) is small, so matrices are stored dense
//! and row-major. Elements of `F_p` are plain `u32` residues in `[0, p)`;
//! the modulus lives in a [`PrimeField`] value passed alongside them.

use crate::error::{Error, Result};

/// Largest admissible characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u32 = 1 << 16;

/// The prime field `F_p`, `p < 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= MAX_CHARACTERISTIC as u64 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn from_u64(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; entries are reduced mod `p`.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Linear(format!("row of length {} in a {}-column matrix", r.len(), cols)));
            }
            data.extend(r.iter().map(|&v| field.from_u64(v as u64)));
        }
        Ok(FpMatrix { field, rows: rows.len(), cols, data })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

/// Reduced row-echelon form and the pivot columns.
pub fn rref(m: &FpMatrix) -> (FpMatrix, Vec<usize>) {
    let f = m.field;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(pr) = (row..a.rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        a.swap_rows(row, pr);
        let inv = f.inv(a.get(row, col));
        if inv != 1 {
            for c in col..a.cols {
                let v = f.mul(a.get(row, c), inv);
                a.set(row, c, v);
            }
        }
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let factor = a.get(r, col);
            if factor == 0 {
                continue;
            }
            for c in col..a.cols {
                let v = f.sub(a.get(r, c), f.mul(factor, a.get(row, c)));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// A list of linearly independent vectors in `F_p^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    field: PrimeField,
    ambient_dim: usize,
    vectors: Vec<Vec<u32>>,
}

impl SubspaceBasis {
    pub fn empty(field: PrimeField, ambient_dim: usize) -> Self {
        SubspaceBasis { field, ambient_dim, vectors: Vec::new() }
    }

    /// Wraps vectors that must already be independent.
    pub fn new(field: PrimeField, ambient_dim: usize, vectors: Vec<Vec<u32>>) -> Result<Self> {
        let basis = SubspaceBasis { field, ambient_dim, vectors };
        if basis.vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::Linear("vector length differs from ambient dimension".into()));
        }
        if rank_of(field, ambient_dim, &basis.vectors) != basis.vectors.len() {
            return Err(Error::Linear("vectors are linearly dependent".into()));
        }
        Ok(basis)
    }

    /// Basis of the span of arbitrary vectors: the nonzero rows of their rref.
    pub fn span_of(field: PrimeField, ambient_dim: usize, vectors: &[Vec<u32>]) -> Self {
        let m = FpMatrix::from_rows(field, ambient_dim, vectors).expect("vector length mismatch");
        let (r, piv) = rref(&m);
        let vectors = (0..piv.len()).map(|i| r.row(i).to_vec()).collect();
        SubspaceBasis { field, ambient_dim, vectors }
    }

    pub fn standard(field: PrimeField, ambient_dim: usize) -> Self {
        let vectors = (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)).collect();
        SubspaceBasis { field, ambient_dim, vectors }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<Vec<u32>> {
        self.vectors
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut all = self.vectors.clone();
        all.push(v.to_vec());
        rank_of(self.field, self.ambient_dim, &all) == self.vectors.len()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        let mut all = self.vectors.clone();
        all.extend(other.vectors.iter().cloned());
        rank_of(self.field, self.ambient_dim, &all) == self.vectors.len()
    }

    /// Basis of `self + other`.
    pub fn join(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut all = self.vectors.clone();
        all.extend(other.vectors.iter().cloned());
        SubspaceBasis::span_of(self.field, self.ambient_dim, &all)
    }

    /// `self ∩ other = 0`.
    pub fn meets_trivially(&self, other: &SubspaceBasis) -> bool {
        self.join(other).dim() == self.dim() + other.dim()
    }

    /// Same subspace, in reduced row-echelon form.
    pub fn canonical(&self) -> SubspaceBasis {
        SubspaceBasis::span_of(self.field, self.ambient_dim, &self.vectors)
    }
}

pub fn unit_vector(dim: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn rank_of(field: PrimeField, cols: usize, vectors: &[Vec<u32>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    FpMatrix::from_rows(field, cols, vectors).map(|m| m.rank()).unwrap_or(0)
}

/// Basis of `{v : Mv = 0}`, one vector per free column of the rref.
pub fn kernel_basis(m: &FpMatrix) -> SubspaceBasis {
    let f = m.field;
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; m.cols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(i, free));
        }
        vectors.push(v);
    }
    SubspaceBasis { field: f, ambient_dim: m.cols, vectors }
}

/// Extends `w` by standard basis vectors (taken in index order) to a
/// subspace complementary to `u`.
///
/// Fails when `span(w) ∩ span(u) ≠ 0`.
pub fn complement_basis(w: &SubspaceBasis, u: &SubspaceBasis) -> Result<SubspaceBasis> {
    if w.ambient_dim != u.ambient_dim {
        return Err(Error::Linear("ambient dimensions differ".into()));
    }
    let field = w.field;
    let n = w.ambient_dim;
    let mut acc: Vec<Vec<u32>> = w.vectors.iter().chain(u.vectors.iter()).cloned().collect();
    if rank_of(field, n, &acc) != w.dim() + u.dim() {
        return Err(Error::Linear("span(W) ∩ span(U) is nonzero".into()));
    }
    let mut chosen = Vec::new();
    for i in 0..n {
        if acc.len() == n {
            break;
        }
        let e = unit_vector(n, i);
        acc.push(e.clone());
        if rank_of(field, n, &acc) == acc.len() {
            chosen.push(e);
        } else {
            acc.pop();
        }
    }
    Ok(SubspaceBasis { field, ambient_dim: n, vectors: chosen })
}

/// A codimension-one subspace together with its normalized normal covector
/// (first nonzero coordinate equal to 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<u32>,
    pub basis: SubspaceBasis,
}

/// Upper bound on the number of hyperplanes [`enumerate_hyperplanes`] will produce.
pub const MAX_HYPERPLANES: u64 = 1 << 20;

/// Number of points of `P^{dim-1}(F_p)`, if it fits the enumeration bound.
pub fn projective_point_count(p: u32, dim: usize) -> Option<u64> {
    let mut total: u64 = 0;
    let mut power: u64 = 1;
    for _ in 0..dim {
        total = total.checked_add(power)?;
        power = power.checked_mul(p as u64)?;
    }
    Some(total)
}

/// All hyperplanes of `F_p^dim`, ordered lexicographically by normalized
/// covector (coordinate 0 most significant), so `(0,1) < (1,0) < (1,1)`.
pub fn enumerate_hyperplanes(field: PrimeField, dim: usize) -> Result<Vec<Hyperplane>> {
    if dim == 0 {
        return Err(Error::InvalidArgument("hyperplanes of the zero space".into()));
    }
    let p = field.characteristic();
    match projective_point_count(p, dim) {
        Some(c) if c <= MAX_HYPERPLANES => {}
        _ => return Err(Error::TooLarge(format!("P^{}(F_{}) has too many points", dim - 1, p))),
    }
    let mut out = Vec::new();
    for lead in (0..dim).rev() {
        let tail_len = dim - lead - 1;
        let count = (p as u64).pow(tail_len as u32);
        for idx in 0..count {
            let mut normal = vec![0u32; dim];
            normal[lead] = 1;
            let mut rest = idx;
            for pos in (lead + 1..dim).rev() {
                normal[pos] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            let m = FpMatrix::from_rows(field, dim, std::slice::from_ref(&normal))?;
            out.push(Hyperplane { basis: kernel_basis(&m), normal });
        }
    }
    Ok(out)
}
