//! Intersection matrices, the representation `ρ_N`, the integer braid
//! cocycle `S(σ, N)` and the induced action `σ*N`, integer kernels, and the
//! permutation model of a branched cover.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{BraidWord, FreeWord};
use crate::cocycles::pl_cocycle;
use crate::error::{Error, Result};
use crate::matrices::IntMatrix;

/// The fibre dimension `n` modulo 4, which fixes every sign used below.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ParityClass(u8);

impl ParityClass {
    pub fn new(n: i64) -> Self {
        Self(n.rem_euclid(4) as u8)
    }

    pub fn n_mod_4(self) -> u8 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }

    /// `(-1)^n`.
    pub fn sgn(self) -> i64 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    /// `(-1)^{n(n+1)/2}`.
    pub fn eps(self) -> i64 {
        match self.0 {
            0 | 3 => 1,
            _ => -1,
        }
    }

    /// Forced diagonal entry: `0` for odd `n`, `2(-1)^{n/2}` for even `n`.
    pub fn diag(self) -> i64 {
        match self.0 {
            0 => 2,
            2 => -2,
            _ => 0,
        }
    }

    /// `(-1)^{n+1}`, the sign picked up by a boundary twist.
    pub fn twist(self) -> i64 {
        -self.sgn()
    }

    pub fn all() -> [ParityClass; 4] {
        [Self(0), Self(1), Self(2), Self(3)]
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Checks `a_ij = sgn a_ji` and `a_ii = diag`, naming the first violation.
pub(crate) fn check_symmetry(parity: ParityClass, a: &IntMatrix, what: &str) -> Result<()> {
    let m = a.size();
    let sgn = BigInt::from(parity.sgn());
    let diag = BigInt::from(parity.diag());
    for i in 0..m {
        if a.get(i, i) != &diag {
            return Err(Error::Invalid(format!(
                "{what}: diagonal entry ({0},{0}) is {1}, expected {diag} for n = {parity} mod 4",
                i + 1,
                a.get(i, i)
            )));
        }
        for j in i + 1..m {
            if a.get(i, j) != &(&sgn * a.get(j, i)) {
                return Err(Error::Invalid(format!(
                    "{what}: entries ({},{}) = {} and ({},{}) = {} violate the {} law",
                    i + 1,
                    j + 1,
                    a.get(i, j),
                    j + 1,
                    i + 1,
                    a.get(j, i),
                    if parity.is_odd() { "skew-symmetry" } else { "symmetry" }
                )));
            }
        }
    }
    Ok(())
}

/// An intersection matrix together with its parity class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntersectionMatrix {
    parity: ParityClass,
    n: IntMatrix,
}

impl IntersectionMatrix {
    pub fn parity(&self) -> ParityClass {
        self.parity
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.n
    }

    pub fn size(&self) -> usize {
        self.n.size()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        self.n.get(i, j)
    }
}

pub fn validate_n(parity: ParityClass, m: IntMatrix) -> Result<IntersectionMatrix> {
    check_symmetry(parity, &m, "intersection matrix")?;
    Ok(IntersectionMatrix { parity, n: m })
}

/// Cached `ρ_N(g_i^{±1})` for repeated evaluation.
pub struct Rho<'a> {
    n: &'a IntersectionMatrix,
    pos: Vec<IntMatrix>,
    neg: Vec<IntMatrix>,
}

impl<'a> Rho<'a> {
    pub fn new(n: &'a IntersectionMatrix) -> Self {
        let m = n.size();
        let p = n.parity;
        let make = |i: usize, c: i64| {
            let mut r = IntMatrix::identity(m);
            for j in 0..m {
                let x = r.get(i, j) - BigInt::from(c) * n.get(i, j);
                r.set(i, j, x);
            }
            r
        };
        let pos = (0..m).map(|i| make(i, p.eps())).collect();
        let neg = (0..m).map(|i| make(i, p.sgn() * p.eps())).collect();
        Self { n, pos, neg }
    }

    pub fn eval(&self, g: &FreeWord) -> Result<IntMatrix> {
        let m = self.n.size();
        g.check_rank(m)?;
        let mut acc = IntMatrix::identity(m);
        for &(i, e) in g.letters() {
            let f = if e > 0 { &self.pos[i - 1] } else { &self.neg[i - 1] };
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(f);
            }
        }
        Ok(acc)
    }

    /// The character value `N ρ_N(g)`.
    pub fn character(&self, g: &FreeWord) -> Result<IntMatrix> {
        Ok(self.n.matrix().mul(&self.eval(g)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoWant {
    Rho,
    Character,
}

pub fn rho_and_character(n: &IntersectionMatrix, g: &FreeWord, want: RhoWant) -> Result<IntMatrix> {
    let rho = Rho::new(n);
    match want {
        RhoWant::Rho => rho.eval(g),
        RhoWant::Character => rho.character(g),
    }
}

fn check_strands(sigma: &BraidWord, n: &IntersectionMatrix) -> Result<()> {
    if sigma.m != n.size() {
        return Err(Error::Size(format!("braid on {} strands, matrix of size {}", sigma.m, n.size())));
    }
    Ok(())
}

/// `S(σ, N)`: column `j` is column `π(j)` of `ρ_N(s_j^{-1})`, where
/// `(π, s)` is the monomial cocycle of `σ`.
pub fn theorem_b_s(sigma: &BraidWord, n: &IntersectionMatrix) -> Result<IntMatrix> {
    check_strands(sigma, n)?;
    let sc = pl_cocycle(sigma)?;
    let rho = Rho::new(n);
    let m = n.size();
    let mut s = IntMatrix::zero(m);
    for j in 0..m {
        let r = rho.eval(&sc.entry(j).inverse())?;
        let pj = sc.perm()[j];
        for i in 0..m {
            s.set(i, j, r.get(i, pj).clone());
        }
    }
    Ok(s)
}

/// `σ*N = S(σ,N)^T N S(σ,N)`.
pub fn act_on_n(sigma: &BraidWord, n: &IntersectionMatrix) -> Result<IntersectionMatrix> {
    let s = theorem_b_s(sigma, n)?;
    act_with(&s, n)
}

pub(crate) fn act_with(s: &IntMatrix, n: &IntersectionMatrix) -> Result<IntersectionMatrix> {
    let out = s.transpose().mul(n.matrix()).mul(s);
    check_symmetry(n.parity, &out, "transformed matrix").map_err(|e| Error::Internal(e.to_string()))?;
    Ok(IntersectionMatrix { parity: n.parity, n: out })
}

/// Evaluates `S_c(τ)^t 𝒩 S_c(τ)` at `g`, where `𝒩(x) = N ρ_N(x)`.
pub fn character_transform(n: &IntersectionMatrix, tau: &BraidWord, g: &FreeWord) -> Result<IntMatrix> {
    check_strands(tau, n)?;
    let sc = pl_cocycle(tau)?;
    let rho = Rho::new(n);
    let m = n.size();
    let mut out = IntMatrix::zero(m);
    for j in 0..m {
        for l in 0..m {
            let x = &(sc.entry(j) * g) * &sc.entry(l).inverse();
            let c = rho.character(&x)?;
            out.set(j, l, c.get(sc.perm()[j], sc.perm()[l]).clone());
        }
    }
    Ok(out)
}

/// Rank of `N` and a basis of its integer kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub rank: usize,
    pub basis: Vec<Vec<BigInt>>,
}

/// Integer kernel by unimodular column reduction to echelon form.
pub fn kernel_basis(n: &IntMatrix) -> KernelBasis {
    let m = n.size();
    let mut a = n.rows();
    let mut u: Vec<Vec<BigInt>> = IntMatrix::identity(m).rows();
    let col_op = |mat: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in mat.iter_mut() {
            let v = &row[src] * q;
            row[dst] -= v;
        }
    };
    let swap = |mat: &mut Vec<Vec<BigInt>>, x: usize, y: usize| {
        for row in mat.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut pivot = 0;
    for r in 0..m {
        if pivot == m {
            break;
        }
        loop {
            let nz: Vec<usize> = (pivot..m).filter(|&c| !a[r][c].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&c) = nz.first() {
                    swap(&mut a, pivot, c);
                    swap(&mut u, pivot, c);
                    pivot += 1;
                }
                break;
            }
            let k = *nz.iter().min_by_key(|&&c| a[r][c].abs()).unwrap();
            for &c in &nz {
                if c != k {
                    let q = &a[r][c] / &a[r][k];
                    col_op(&mut a, c, k, &q);
                    col_op(&mut u, c, k, &q);
                }
            }
        }
    }
    let basis = (pivot..m).map(|c| u.iter().map(|row| row[c].clone()).collect()).collect();
    KernelBasis { rank: pivot, basis }
}

// ---------------------------------------------------------------------------
// Branched-cover model

/// Two distinct fibre labels with opposite-or-equal signs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientedZeroSphere {
    pub points: [(usize, i64); 2],
}

impl OrientedZeroSphere {
    pub fn new(a: (usize, i64), b: (usize, i64)) -> Result<Self> {
        if a.0 == b.0 {
            return Err(Error::Invalid(format!("zero-sphere repeats label {}", a.0)));
        }
        Ok(Self { points: [a, b] })
    }

    fn permuted(&self, perm: &[usize]) -> Self {
        Self { points: self.points.map(|(l, s)| (perm[l - 1], s)) }
    }

    pub fn pairing(&self, other: &Self) -> i64 {
        let mut total = 0;
        for &(l, s) in &self.points {
            for &(l2, s2) in &other.points {
                if l == l2 {
                    total += s * s2;
                }
            }
        }
        total
    }
}

/// Entry `(i, j)` is `<L_i, g L_j>`; generators act on fibre labels
/// (1-based images), the rightmost factor of `g` first. `g` is a list of
/// `(generator name, exponent)`.
pub fn cover_character(
    perms: &BTreeMap<String, Vec<usize>>,
    cycles: &[OrientedZeroSphere],
    g: &[(String, i64)],
) -> Result<IntMatrix> {
    for c in cycles {
        for &(l, _) in &c.points {
            if perms.values().any(|p| l == 0 || l > p.len()) {
                return Err(Error::Invalid(format!("label {l} outside the fibre")));
            }
        }
    }
    let mut moved: Vec<OrientedZeroSphere> = cycles.to_vec();
    for (name, e) in g.iter().rev() {
        let p = perms.get(name).ok_or_else(|| Error::Invalid(format!("generator {name} has no permutation")))?;
        let mut inv = vec![0; p.len()];
        for (i, &x) in p.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        let step = if *e > 0 { p } else { &inv };
        for _ in 0..e.unsigned_abs() {
            moved = moved.iter().map(|c| c.permuted(step)).collect();
        }
    }
    let m = cycles.len();
    Ok(IntMatrix::from_fn(m, |i, j| BigInt::from(cycles[i].pairing(&moved[j]))))
}

/// Parses whitespace separated generator names with optional `'` or `^k`.
pub fn parse_named_word(text: &str) -> Result<Vec<(String, i64)>> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (name, e) = if let Some(n) = tok.strip_suffix('\'') {
            (n, -1)
        } else if let Some((n, k)) = tok.split_once('^') {
            (n, k.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?)
        } else {
            (tok, 1)
        };
        if name.is_empty() {
            return Err(Error::Parse(format!("empty generator in {tok:?}")));
        }
        out.push((name.to_string(), e));
    }
    Ok(out)
}

/// The three-sheeted cover of the torus with four simple branch points.
pub mod cover {
    use super::*;

    pub fn permutations() -> BTreeMap<String, Vec<usize>> {
        let t12 = vec![2, 1, 3];
        let t13 = vec![3, 2, 1];
        let t23 = vec![1, 3, 2];
        [("g1", &t12), ("g3", &t12), ("a", &t12), ("g2", &t13), ("g4", &t13), ("b", &t23)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect()
    }

    pub fn cycles() -> Vec<OrientedZeroSphere> {
        let l = |a, b| OrientedZeroSphere::new(a, b).unwrap();
        vec![l((1, -1), (2, 1)), l((1, 1), (3, -1)), l((1, 1), (2, -1)), l((1, 1), (3, -1))]
    }

    pub fn parity() -> ParityClass {
        ParityClass::new(0)
    }

    /// Character value at a named word such as `"a b"`.
    pub fn value(word: &str) -> Result<IntMatrix> {
        cover_character(&permutations(), &cycles(), &parse_named_word(word)?)
    }

    /// Names and values of the six matrices that determine the character.
    pub fn table() -> Vec<(&'static str, IntMatrix)> {
        [("1", "1"), ("g2", "g2"), ("a", "a"), ("b", "b"), ("ab", "a b"), ("ba", "b a")]
            .into_iter()
            .map(|(name, w)| (name, value(w).expect("fixture words are valid")))
            .collect()
    }

    /// `N - N E_i N` with `N` the value at 1 (0-based `i`).
    pub fn glued(i: usize) -> IntMatrix {
        let n = value("1").unwrap();
        n.sub(&n.mul(&IntMatrix::unit(4, i, i)).mul(&n))
    }

    /// The identities the fixture is expected to satisfy, with outcomes.
    pub fn checks() -> Vec<(String, bool)> {
        let v = |w: &str| value(w).unwrap();
        let mut out = Vec::new();
        for (i, target) in [(0, "a"), (1, "g2"), (2, "a"), (3, "g2")] {
            out.push((format!("N - N E{} N = N({target})", i + 1), glued(i) == v(target)));
            out.push((format!("N(g{}) = N({target})", i + 1), v(&format!("g{}", i + 1)) == v(target)));
        }
        out.push(("N(ba) = N(ab)^T".into(), v("b a") == v("a b").transpose()));
        let e1 = IntMatrix::unit(4, 0, 0);
        let rhs = v("a b").sub(&v("a").mul(&e1).mul(&v("b")));
        out.push(("N(b) = N(ab) - N(a) E1 N(b)".into(), v("b") == rhs));
        out.push(("N(b) = N(a g1 b)".into(), v("b") == v("a g1 b")));
        out.push(("N(1) satisfies the n = 0 laws".into(), check_symmetry(parity(), &v("1"), "N").is_ok()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn im(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64(rows).unwrap()
    }
    fn skew() -> IntersectionMatrix {
        validate_n(ParityClass::new(1), im(&[vec![0, 1], vec![-1, 0]])).unwrap()
    }
    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s).unwrap()
    }

    #[test]
    fn parity_table() {
        let t: Vec<(i64, i64, i64)> = ParityClass::all().iter().map(|p| (p.sgn(), p.eps(), p.diag())).collect();
        assert_eq!(t, vec![(1, 1, 2), (-1, -1, 0), (1, -1, -2), (-1, 1, 0)]);
        assert_eq!(ParityClass::new(-3), ParityClass::new(1));
    }

    #[test]
    fn validation() {
        assert!(validate_n(ParityClass::new(1), im(&[vec![0, 1], vec![-1, 0]])).is_ok());
        assert!(validate_n(ParityClass::new(0), im(&[vec![2, -1], vec![-1, 2]])).is_ok());
        let err = validate_n(ParityClass::new(0), im(&[vec![3, 0], vec![0, 3]])).unwrap_err();
        assert!(err.to_string().contains("(1,1)"));
        let err = validate_n(ParityClass::new(0), im(&[vec![2, 1], vec![0, 2]])).unwrap_err();
        assert!(err.to_string().contains("(1,2)"));
    }

    #[test]
    fn rho_examples() {
        let n = skew();
        assert_eq!(rho_and_character(&n, &w("1"), RhoWant::Rho).unwrap(), IntMatrix::identity(2));
        assert_eq!(rho_and_character(&n, &w("g1"), RhoWant::Rho).unwrap(), im(&[vec![1, 1], vec![0, 1]]));
        assert_eq!(rho_and_character(&n, &w("g1"), RhoWant::Character).unwrap(), im(&[vec![0, 1], vec![-1, -1]]));
        let r = rho_and_character(&n, &w("g1 g1'"), RhoWant::Rho).unwrap();
        assert_eq!(r, IntMatrix::identity(2));
    }

    #[test]
    fn integer_cocycle_examples() {
        let n = skew();
        let s2 = parse_braid("s2", 2).unwrap();
        assert_eq!(theorem_b_s(&s2, &n).unwrap(), im(&[vec![1, 1], vec![1, 0]]));
        assert_eq!(act_on_n(&s2, &n).unwrap().matrix(), &im(&[vec![0, -1], vec![1, 0]]));
        assert_eq!(act_on_n(&BraidWord::empty(2), &n).unwrap(), n);
        let e1 = parse_braid("e1", 2).unwrap();
        assert_eq!(theorem_b_s(&e1, &n).unwrap(), IntMatrix::identity(2));
        assert!(theorem_b_s(&parse_braid("s2", 3).unwrap(), &n).is_err());
    }

    #[test]
    fn character_transform_examples() {
        let n = skew();
        let g = w("g1 g2'");
        assert_eq!(
            character_transform(&n, &BraidWord::empty(2), &g).unwrap(),
            rho_and_character(&n, &g, RhoWant::Character).unwrap()
        );
        let tau = parse_braid("s2 s2 s2", 2).unwrap();
        assert_eq!(
            &character_transform(&n, &tau, &FreeWord::identity()).unwrap(),
            act_on_n(&tau, &n).unwrap().matrix()
        );
    }

    #[test]
    fn kernels() {
        let k = kernel_basis(&im(&[vec![0, 1], vec![-1, 0]]));
        assert_eq!((k.rank, k.basis.len()), (2, 0));
        let k = kernel_basis(&IntMatrix::zero(3));
        assert_eq!((k.rank, k.basis.len()), (0, 3));
        let n1 = cover::value("1").unwrap();
        let k = kernel_basis(&n1);
        assert_eq!((k.rank, k.basis.len()), (2, 2));
        for v in &k.basis {
            for i in 0..4 {
                let s: BigInt = (0..4).map(|j| n1.get(i, j) * &v[j]).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn cover_matrices() {
        let t = cover::table();
        assert_eq!(t[0].1, im(&[vec![2, -1, -2, -1], vec![-1, 2, 1, 2], vec![-2, 1, 2, 1], vec![-1, 2, 1, 2]]));
        assert_eq!(t[2].1, im(&[vec![-2, 1, 2, 1], vec![1, 1, -1, 1], vec![2, -1, -2, -1], vec![1, 1, -1, 1]]));
        assert_eq!(
            t[4].1,
            im(&[vec![-1, 2, 1, 2], vec![-1, -1, 1, -1], vec![1, -2, -1, -2], vec![-1, -1, 1, -1]])
        );
        for (name, ok) in cover::checks() {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn cover_errors() {
        assert!(cover::value("c").is_err());
        assert!(OrientedZeroSphere::new((1, 1), (1, -1)).is_err());
        assert!(parse_named_word("a^x").is_err());
    }
}
