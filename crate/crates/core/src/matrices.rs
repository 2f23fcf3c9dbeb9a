//! Square matrices over the coefficient rings used here and the monomial
//! matrices with free-group entries.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{BraidWord, FreeWord, GroupRingElt, Laurent, MultiLaurent};
use crate::error::{Error, Result};

/// The operations a matrix coefficient ring has to provide.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_is_zero(&self) -> bool;
    fn r_add(&self, other: &Self) -> Self;
    fn r_mul(&self, other: &Self) -> Self;
    fn r_neg(&self) -> Self;
    fn r_sub(&self, other: &Self) -> Self {
        self.r_add(&other.r_neg())
    }
}

/// Rings with an anti-involution (the bar map on group rings).
pub trait Involutive: Ring {
    fn involute(&self) -> Self;
}

macro_rules! impl_ring {
    ($t:ty, $zero:expr, $one:expr, $is_zero:ident) => {
        impl Ring for $t {
            fn r_zero() -> Self {
                $zero
            }
            fn r_one() -> Self {
                $one
            }
            fn r_is_zero(&self) -> bool {
                self.$is_zero()
            }
            fn r_add(&self, other: &Self) -> Self {
                self + other
            }
            fn r_mul(&self, other: &Self) -> Self {
                self * other
            }
            fn r_neg(&self) -> Self {
                -self
            }
        }
    };
}

impl_ring!(BigInt, BigInt::zero(), BigInt::one(), is_zero);
impl_ring!(GroupRingElt, GroupRingElt::zero(), GroupRingElt::one(), is_zero);
impl_ring!(Laurent, Laurent::zero(), Laurent::one(), is_zero);
impl_ring!(MultiLaurent, MultiLaurent::zero(), MultiLaurent::one(), is_zero);

impl Involutive for GroupRingElt {
    fn involute(&self) -> Self {
        GroupRingElt::involute(self)
    }
}

impl Involutive for BigInt {
    fn involute(&self) -> Self {
        self.clone()
    }
}

/// Dense square matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingMatrix<R> {
    n: usize,
    data: Vec<R>,
}

pub type IntMatrix = RingMatrix<BigInt>;

impl<R: Ring> RingMatrix<R> {
    pub fn zero(n: usize) -> Self {
        Self { n, data: vec![R::r_zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zero(n);
        for i in 0..n {
            a.data[i * n + i] = R::r_one();
        }
        a
    }

    /// Builds a matrix from rows; all rows must have length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Size("matrix is not square".into()));
        }
        Ok(Self { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> R>(n: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// The matrix unit `E_{ij}` (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut a = Self::zero(n);
        a.data[i * n + j] = R::r_one();
        a
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at row `i`, column `j` (0-based).
    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: R) {
        self.data[i * self.n + j] = x;
    }

    pub fn rows(&self) -> Vec<Vec<R>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, f: F) -> RingMatrix<S> {
        RingMatrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Size(format!("{}x{} vs {}x{}", self.n, self.n, other.n, other.n)));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.r_is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if b.r_is_zero() {
                        continue;
                    }
                    let cell = &mut out.data[i * n + j];
                    *cell = cell.r_add(&a.r_mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a.r_add(b)).collect() })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        Ok(Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a.r_sub(b)).collect() })
    }

    /// Panicking product, for sizes already known to agree.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matrix sizes agree")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("matrix sizes agree")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("matrix sizes agree")
    }

    pub fn scale(&self, k: &R) -> Self {
        self.map(|x| k.r_mul(x))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.r_neg())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> R {
        (0..self.n).fold(R::r_zero(), |acc, i| acc.r_add(self.get(i, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).r_is_zero()))
    }
}

impl<R: Involutive> RingMatrix<R> {
    /// Entrywise involution followed by transposition.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).involute())
    }
}

impl IntMatrix {
    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        self.rows().iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect()
    }
}

impl<R: Ring> fmt::Display for RingMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatOp {
    Multiply,
    ConjTranspose,
}

pub fn mat_arith<R: Involutive>(op: MatOp, a: &RingMatrix<R>, b: Option<&RingMatrix<R>>) -> Result<RingMatrix<R>> {
    match op {
        MatOp::Multiply => a.try_mul(b.ok_or_else(|| Error::Invalid("multiply needs two matrices".into()))?),
        MatOp::ConjTranspose => Ok(a.conj_transpose()),
    }
}

/// A permutation matrix with one free-group word per column: column `j`
/// carries `entries[j]` in row `perm[j]` (all indices 0-based).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialGammaMatrix {
    perm: Vec<usize>,
    entries: Vec<FreeWord>,
}

impl MonomialGammaMatrix {
    pub fn identity(m: usize) -> Self {
        Self { perm: (0..m).collect(), entries: vec![FreeWord::identity(); m] }
    }

    pub fn new(perm: Vec<usize>, entries: Vec<FreeWord>) -> Result<Self> {
        let m = perm.len();
        if entries.len() != m {
            return Err(Error::Size("permutation and entries differ in length".into()));
        }
        let mut seen = vec![false; m];
        for &p in &perm {
            if p >= m || seen[p] {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(Self { perm, entries })
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    /// Row index of the nonzero entry in column `j`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Word in column `j`.
    pub fn entries(&self) -> &[FreeWord] {
        &self.entries
    }

    pub fn entry(&self, j: usize) -> &FreeWord {
        &self.entries[j]
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size() != other.size() {
            return Err(Error::Size(format!("{} vs {}", self.size(), other.size())));
        }
        Ok(())
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.size(), other.size());
        let perm = other.perm.iter().map(|&k| self.perm[k]).collect();
        let entries = (0..self.size())
            .map(|k| &self.entries[other.perm[k]] * &other.entries[k])
            .collect();
        Self { perm, entries }
    }

    pub fn invert(&self) -> Self {
        let m = self.size();
        let mut inv = vec![0; m];
        for (j, &p) in self.perm.iter().enumerate() {
            inv[p] = j;
        }
        let entries = (0..m).map(|i| self.entries[inv[i]].inverse()).collect();
        Self { perm: inv, entries }
    }

    /// Applies the braid automorphism to every entry; the permutation is kept.
    pub fn act(&self, sigma: &BraidWord) -> Self {
        let images = sigma.generator_images();
        Self {
            perm: self.perm.clone(),
            entries: self.entries.iter().map(|w| w.substitute(&images)).collect(),
        }
    }

    pub fn map_entries<F: Fn(&FreeWord) -> FreeWord>(&self, f: F) -> Self {
        Self { perm: self.perm.clone(), entries: self.entries.iter().map(f).collect() }
    }

    pub fn to_dense(&self) -> RingMatrix<GroupRingElt> {
        let m = self.size();
        let mut a = RingMatrix::zero(m);
        for j in 0..m {
            a.set(self.perm[j], j, GroupRingElt::from_word(self.entries[j].clone()));
        }
        a
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p == j) && self.entries.iter().all(|w| w.is_identity())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOp {
    Compose,
    Invert,
    Act,
    ToDense,
}

/// Result of [`monomial_arith`]: `to_dense` leaves the monomial world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialResult {
    Monomial(MonomialGammaMatrix),
    Dense(RingMatrix<GroupRingElt>),
}

pub fn monomial_arith(
    op: MonomialOp,
    a: &MonomialGammaMatrix,
    b: Option<&MonomialGammaMatrix>,
    sigma: Option<&BraidWord>,
) -> Result<MonomialResult> {
    Ok(match op {
        MonomialOp::Compose => {
            let b = b.ok_or_else(|| Error::Invalid("compose needs two matrices".into()))?;
            a.check_size(b)?;
            MonomialResult::Monomial(a.compose(b))
        }
        MonomialOp::Invert => MonomialResult::Monomial(a.invert()),
        MonomialOp::Act => {
            let s = sigma.ok_or_else(|| Error::Invalid("act needs a braid word".into()))?;
            if s.m != a.size() {
                return Err(Error::Size(format!("braid on {} strands, matrix of size {}", s.m, a.size())));
            }
            MonomialResult::Monomial(a.act(s))
        }
        MonomialOp::ToDense => MonomialResult::Dense(a.to_dense()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s).unwrap()
    }
    fn r(s: &str) -> GroupRingElt {
        GroupRingElt::parse(s).unwrap()
    }

    #[test]
    fn conj_transpose_single_entry() {
        let mut a = RingMatrix::<GroupRingElt>::zero(2);
        a.set(0, 1, r("g1"));
        let t = mat_arith(MatOp::ConjTranspose, &a, None).unwrap();
        let mut expect = RingMatrix::zero(2);
        expect.set(1, 0, r("g1'"));
        assert_eq!(t, expect);
    }

    #[test]
    fn identity_is_unit() {
        let a = RingMatrix::from_rows(vec![vec![r("g1 + 2"), r("g2'")], vec![r("0"), r("-g1 g2")]]).unwrap();
        let i = RingMatrix::identity(2);
        assert_eq!(mat_arith(MatOp::Multiply, &i, Some(&a)).unwrap(), a);
        assert_eq!(a.mul(&i), a);
    }

    #[test]
    fn monomial_inverse_example() {
        let a = MonomialGammaMatrix::new(vec![1, 0], vec![w("g1'"), w("1")]).unwrap();
        let inv = a.invert();
        assert_eq!(inv, MonomialGammaMatrix::new(vec![1, 0], vec![w("1"), w("g1")]).unwrap());
        assert!(a.compose(&inv).is_identity());
        assert!(inv.compose(&a).is_identity());
    }

    #[test]
    fn to_dense_is_multiplicative() {
        let a = MonomialGammaMatrix::new(vec![2, 0, 1], vec![w("g1"), w("g2' g3"), w("1")]).unwrap();
        let b = MonomialGammaMatrix::new(vec![1, 2, 0], vec![w("g3^2"), w("g1'"), w("g2")]).unwrap();
        assert_eq!(a.compose(&b).to_dense(), a.to_dense().mul(&b.to_dense()));
    }

    #[test]
    fn size_mismatch_is_reported() {
        let a = MonomialGammaMatrix::identity(2);
        let b = MonomialGammaMatrix::identity(3);
        assert!(monomial_arith(MonomialOp::Compose, &a, Some(&b), None).is_err());
        assert!(RingMatrix::<BigInt>::identity(2).try_mul(&RingMatrix::identity(3)).is_err());
        assert!(MonomialGammaMatrix::new(vec![0, 0], vec![w("1"), w("1")]).is_err());
    }
}
