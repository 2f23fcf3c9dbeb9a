//! Braid words: parsing, permutations, purity and linking numbers.

use std::fmt;

use crate::algebra::{parse_token, BraidLetter, BraidWord, LetterKind};
use crate::error::{Error, Result};

/// Parses tokens `s<k>` (`k >= 2`) and `e<i>`, each optionally followed by
/// `'` or `^<int>`. Powers are expanded into repeated letters.
pub fn parse_braid(text: &str, m: usize) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let (kind, e) = if tok.starts_with('s') {
            let (k, e) = parse_token(tok, 's')?;
            (LetterKind::Sigma(k), e)
        } else if tok.starts_with('e') {
            let (i, e) = parse_token(tok, 'e')?;
            (LetterKind::Epsilon(i), e)
        } else {
            return Err(Error::Parse(format!("unknown braid token {tok:?}")));
        };
        let step = if e > 0 { 1 } else { -1 };
        for _ in 0..e.unsigned_abs() {
            letters.push(BraidLetter { kind, exp: step });
        }
    }
    BraidWord::new(m, letters)
}

pub fn format_braid(w: &BraidWord) -> String {
    w.to_string()
}

pub fn invert_braid(w: &BraidWord) -> BraidWord {
    w.inverse()
}

/// A permutation of `0..m`, stored as the list of images.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Self { images: (0..m).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if i >= m || seen[i] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Transposition of `a` and `b` (0-based).
    pub fn transposition(m: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(m);
        p.images.swap(a, b);
        p
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<String> = self.images.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", one_based.join(" "))
    }
}

fn letter_permutation(m: usize, l: &BraidLetter) -> Permutation {
    match l.kind {
        LetterKind::Sigma(k) => Permutation::transposition(m, k - 2, k - 1),
        LetterKind::Epsilon(_) => Permutation::identity(m),
    }
}

/// The permutation of a braid word and whether the word is pure.
pub fn braid_permutation(w: &BraidWord) -> (Permutation, bool) {
    let p = w
        .letters
        .iter()
        .fold(Permutation::identity(w.m), |acc, l| acc.compose(&letter_permutation(w.m, l)));
    let pure = p.is_identity();
    (p, pure)
}

/// Pairwise linking numbers of the closure of a pure braid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinkingMatrix {
    pub m: usize,
    pub lk: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.lk[i][j]
    }
}

/// Each `s_k^e` letter crossing strands of components `i != j` adds `-e` to
/// a crossing count `c(i, j)`; linking numbers are `c / 2`. Framing letters
/// are ignored.
pub fn linking_numbers(w: &BraidWord) -> Result<LinkingMatrix> {
    if !braid_permutation(w).1 {
        return Err(Error::Invalid(format!("braid {w} is not pure")));
    }
    let m = w.m;
    let mut c = vec![vec![0i64; m]; m];
    let mut label: Vec<usize> = (0..m).collect();
    for l in w.letters.iter().rev() {
        if let LetterKind::Sigma(k) = l.kind {
            let (a, b) = (label[k - 2], label[k - 1]);
            c[a][b] -= l.exp as i64;
            c[b][a] -= l.exp as i64;
            label.swap(k - 2, k - 1);
        }
    }
    let mut lk = vec![vec![0i64; m]; m];
    for i in 0..m {
        for j in 0..m {
            if c[i][j] % 2 != 0 {
                return Err(Error::Internal(format!("odd crossing count between strands {} and {}", i + 1, j + 1)));
            }
            lk[i][j] = c[i][j] / 2;
        }
    }
    Ok(LinkingMatrix { m, lk })
}
