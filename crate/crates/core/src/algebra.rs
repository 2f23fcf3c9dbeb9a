//! Free groups, the braid action on them, integer group rings and their
//! abelian (Laurent) reductions.
//!
//! Products follow the path convention: in `g * h` the factor `h` is
//! traversed first. Braid words act right to left, so the leftmost letter
//! acts last.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A freely reduced word in the free group on `g_1, g_2, ...`.
///
/// Letters are stored run-length encoded as `(generator, exponent)`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FreeWord {
    letters: Vec<(usize, i64)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn gen(i: usize) -> Self {
        Self::from_letters([(i, 1)])
    }

    pub fn gen_pow(i: usize, e: i64) -> Self {
        Self::from_letters([(i, e)])
    }

    /// Builds a word from arbitrary letters, reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = (usize, i64)>>(letters: I) -> Self {
        let mut w = Self::identity();
        for (i, e) in letters {
            w.push(i, e);
        }
        w
    }

    fn push(&mut self, i: usize, e: i64) {
        assert!(i >= 1, "generator indices start at 1");
        if e == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == i {
                last.1 += e;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((i, e));
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn len(&self) -> usize {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn check_rank(&self, m: usize) -> Result<()> {
        match self.letters.iter().find(|&&(i, _)| i > m) {
            Some(&(i, _)) => Err(Error::Index(format!("generator g{i} outside g1..g{m}"))),
            None => Ok(()),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|&(i, e)| (i, -e)).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// Replaces every generator `g_i` by `images[i - 1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        let mut out = Self::identity();
        for &(i, e) in &self.letters {
            let img = if e > 0 { images[i - 1].clone() } else { images[i - 1].inverse() };
            for _ in 0..e.unsigned_abs() {
                for &(j, f) in &img.letters {
                    out.push(j, f);
                }
            }
        }
        out
    }

    /// Sum of exponents of each generator, indexed from 1 (entry 0 unused).
    pub fn exponent_sums(&self, m: usize) -> Vec<i64> {
        let mut v = vec![0; m + 1];
        for &(i, e) in &self.letters {
            if i >= v.len() {
                v.resize(i + 1, 0);
            }
            v[i] += e;
        }
        v
    }

    /// Parses whitespace separated tokens `g<i>`, `g<i>'`, `g<i>^<int>`.
    /// The empty string and `1` denote the identity.
    pub fn parse(text: &str) -> Result<Self> {
        let mut w = Self::identity();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (i, e) = parse_token(tok, 'g')?;
            if i == 0 {
                return Err(Error::Parse(format!("generator index 0 in {tok:?}")));
            }
            w.push(i, e);
        }
        Ok(w)
    }
}

/// Parses `<prefix><index>` followed by `'` or `^<int>`.
pub(crate) fn parse_token(tok: &str, prefix: char) -> Result<(usize, i64)> {
    let bad = || Error::Parse(format!("unrecognized token {tok:?}"));
    let rest = tok.strip_prefix(prefix).ok_or_else(bad)?;
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    if digits.is_empty() {
        return Err(bad());
    }
    let i: usize = digits.parse().map_err(|_| bad())?;
    let suffix = &rest[digits.len()..];
    let e = match suffix {
        "" => 1,
        "'" => -1,
        s => s
            .strip_prefix('^')
            .and_then(|p| p.parse::<i64>().ok())
            .ok_or_else(bad)?,
    };
    Ok((i, e))
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(i, e)| match e {
                1 => format!("g{i}"),
                -1 => format!("g{i}'"),
                _ => format!("g{i}^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;
    fn mul(self, rhs: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &(i, e) in &rhs.letters {
            out.push(i, e);
        }
        out
    }
}

impl Mul for FreeWord {
    type Output = FreeWord;
    fn mul(self, rhs: FreeWord) -> FreeWord {
        &self * &rhs
    }
}

/// `multiply` or `invert` on free-group words, with an optional rank check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordOp {
    Multiply,
    Invert,
}

pub fn word_arith(op: WordOp, m: usize, u: &FreeWord, v: Option<&FreeWord>) -> Result<FreeWord> {
    u.check_rank(m)?;
    match op {
        WordOp::Invert => Ok(u.inverse()),
        WordOp::Multiply => {
            let v = v.ok_or_else(|| Error::Invalid("multiply needs two words".into()))?;
            v.check_rank(m)?;
            Ok(u * v)
        }
    }
}

// ---------------------------------------------------------------------------
// Braid words

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LetterKind {
    /// `sigma_k`, exchanging punctures `k-1` and `k`; `k` runs over `2..=m`.
    Sigma(usize),
    /// `epsilon_i`, a full counterclockwise framing twist at puncture `i`.
    Epsilon(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BraidLetter {
    pub kind: LetterKind,
    /// Either `1` or `-1`.
    pub exp: i8,
}

impl BraidLetter {
    pub fn sigma(k: usize) -> Self {
        Self { kind: LetterKind::Sigma(k), exp: 1 }
    }
    pub fn epsilon(i: usize) -> Self {
        Self { kind: LetterKind::Epsilon(i), exp: 1 }
    }
    pub fn inverse(self) -> Self {
        Self { kind: self.kind, exp: -self.exp }
    }
    pub fn is_epsilon(&self) -> bool {
        matches!(self.kind, LetterKind::Epsilon(_))
    }

    /// Image of the generator `g_j` under this letter.
    pub fn act_generator(&self, j: usize) -> FreeWord {
        match self.kind {
            LetterKind::Epsilon(_) => FreeWord::gen(j),
            LetterKind::Sigma(k) => {
                let (a, b) = (k - 1, k);
                if self.exp > 0 {
                    if j == a {
                        FreeWord::from_letters([(a, 1), (b, 1), (a, -1)])
                    } else if j == b {
                        FreeWord::gen(a)
                    } else {
                        FreeWord::gen(j)
                    }
                } else if j == a {
                    FreeWord::gen(b)
                } else if j == b {
                    FreeWord::from_letters([(b, -1), (a, 1), (b, 1)])
                } else {
                    FreeWord::gen(j)
                }
            }
        }
    }

    pub fn act(&self, w: &FreeWord) -> FreeWord {
        match self.kind {
            LetterKind::Epsilon(_) => w.clone(),
            LetterKind::Sigma(k) => {
                let m = w.max_generator().max(k);
                let images: Vec<FreeWord> = (1..=m).map(|j| self.act_generator(j)).collect();
                w.substitute(&images)
            }
        }
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, i) = match self.kind {
            LetterKind::Sigma(k) => ('s', k),
            LetterKind::Epsilon(i) => ('e', i),
        };
        if self.exp > 0 {
            write!(f, "{c}{i}")
        } else {
            write!(f, "{c}{i}'")
        }
    }
}

/// A word in the framed braid group on `m` strands.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BraidWord {
    pub m: usize,
    pub letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(m: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        let w = Self { m, letters };
        w.validate()?;
        Ok(w)
    }

    pub fn empty(m: usize) -> Self {
        Self { m, letters: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        for l in &self.letters {
            match l.kind {
                LetterKind::Sigma(k) if k < 2 || k > self.m => {
                    return Err(Error::Index(format!("s{k} outside s2..s{}", self.m)))
                }
                LetterKind::Epsilon(i) if i < 1 || i > self.m => {
                    return Err(Error::Index(format!("e{i} outside e1..e{}", self.m)))
                }
                _ => {}
            }
            if l.exp != 1 && l.exp != -1 {
                return Err(Error::Invalid(format!("letter exponent {} is not +-1", l.exp)));
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Self {
        Self {
            m: self.m,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenation `self * other`; `other` acts first.
    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { m: self.m.max(other.m), letters }
    }

    pub fn has_epsilon(&self) -> bool {
        self.letters.iter().any(|l| l.is_epsilon())
    }

    /// Images of `g_1..g_m` under the induced automorphism.
    pub fn generator_images(&self) -> Vec<FreeWord> {
        // Accumulate phi = l_1 ... l_r from the left: (phi l)(g) = phi(l(g)).
        let mut images: Vec<FreeWord> = (1..=self.m).map(FreeWord::gen).collect();
        for l in &self.letters {
            if l.is_epsilon() {
                continue;
            }
            let next: Vec<FreeWord> =
                (1..=self.m).map(|j| l.act_generator(j).substitute(&images)).collect();
            images = next;
        }
        images
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Applies `sigma_*` to `w`; letters act right to left.
pub fn braid_act_word(sigma: &BraidWord, w: &FreeWord) -> Result<FreeWord> {
    sigma.validate()?;
    w.check_rank(sigma.m)?;
    Ok(w.substitute(&sigma.generator_images()))
}

// ---------------------------------------------------------------------------
// Group ring

/// Finite integer combination of free-group words.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct GroupRingElt {
    terms: BTreeMap<FreeWord, BigInt>,
}

impl GroupRingElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        Self::from_term(w, BigInt::one())
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        Self::from_term(FreeWord::identity(), c.into())
    }

    pub fn from_term(w: FreeWord, c: BigInt) -> Self {
        let mut x = Self::zero();
        x.add_term(w, c);
        x
    }

    pub fn from_terms<I: IntoIterator<Item = (FreeWord, BigInt)>>(terms: I) -> Self {
        let mut x = Self::zero();
        for (w, c) in terms {
            x.add_term(w, c);
        }
        x
    }

    pub fn add_term(&mut self, w: FreeWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &FreeWord) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The single word of a monomial `1*w`, if this is one.
    pub fn as_word(&self) -> Option<&FreeWord> {
        if self.terms.len() == 1 {
            let (w, c) = self.terms.iter().next().unwrap();
            if c.is_one() {
                return Some(w);
            }
        }
        None
    }

    pub fn max_generator(&self) -> usize {
        self.terms.keys().map(|w| w.max_generator()).max().unwrap_or(0)
    }

    /// `sum c_g g  ->  sum c_g g^{-1}`.
    pub fn involute(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.inverse(), c.clone())))
    }

    pub fn map_words<F: Fn(&FreeWord) -> FreeWord>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c * k)))
    }

    /// Parses e.g. `2*g1 g2' + 1` or `-g1 + 3*g2^2`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut x = Self::zero();
        for (sign, body) in split_signed_terms(text)? {
            let (coef, word) = match body.split_once('*') {
                Some((c, w)) => (parse_bigint(c.trim())?, FreeWord::parse(w)?),
                None => {
                    let b = body.trim();
                    if !b.is_empty() && b.chars().all(|c| c.is_ascii_digit()) {
                        (parse_bigint(b)?, FreeWord::identity())
                    } else {
                        (BigInt::one(), FreeWord::parse(b)?)
                    }
                }
            };
            x.add_term(word, if sign { -coef } else { coef });
        }
        Ok(x)
    }

    fn sorted_terms(&self) -> Vec<(&FreeWord, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        v
    }
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

/// Splits `a + b - c` into signed pieces. A `-` directly after `^` is part of
/// an exponent, not a separator.
pub(crate) fn split_signed_terms(text: &str) -> Result<Vec<(bool, String)>> {
    let text = text.trim();
    if text.is_empty() || text == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut neg = false;
    let mut cur = String::new();
    let mut prev = ' ';
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && prev != '^' {
            if !cur.trim().is_empty() {
                out.push((neg, cur.trim().to_string()));
            } else if !out.is_empty() || neg {
                return Err(Error::Parse(format!("dangling sign in {text:?}")));
            }
            cur.clear();
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev = ch;
        }
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("trailing sign in {text:?}")));
    }
    out.push((neg, cur.trim().to_string()));
    Ok(out)
}

fn write_signed_terms(f: &mut fmt::Formatter<'_>, terms: Vec<(BigInt, String)>) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (c, mono)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        let body = if mono.is_empty() {
            a.to_string()
        } else if a.is_one() {
            mono
        } else {
            format!("{a}*{mono}")
        };
        match (k, neg) {
            (0, false) => write!(f, "{body}")?,
            (0, true) => write!(f, "-{body}")?,
            (_, false) => write!(f, " + {body}")?,
            (_, true) => write!(f, " - {body}")?,
        }
    }
    Ok(())
}

impl fmt::Display for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .sorted_terms()
            .into_iter()
            .map(|(w, c)| (c.clone(), if w.is_identity() { String::new() } else { w.to_string() }))
            .collect();
        write_signed_terms(f, terms)
    }
}

impl Add for &GroupRingElt {
    type Output = GroupRingElt;
    fn add(self, rhs: &GroupRingElt) -> GroupRingElt {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GroupRingElt {
    type Output = GroupRingElt;
    fn sub(self, rhs: &GroupRingElt) -> GroupRingElt {
        self + &(-rhs)
    }
}

impl Neg for &GroupRingElt {
    type Output = GroupRingElt;
    fn neg(self) -> GroupRingElt {
        GroupRingElt { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Mul for &GroupRingElt {
    type Output = GroupRingElt;
    fn mul(self, rhs: &GroupRingElt) -> GroupRingElt {
        let mut acc: BTreeMap<FreeWord, BigInt> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                *acc.entry(u * v).or_insert_with(BigInt::zero) += a * b;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        GroupRingElt { terms: acc }
    }
}

macro_rules! owned_binops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_binops!(GroupRingElt);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Convolve,
    Involute,
}

pub fn ring_arith(op: RingOp, a: &GroupRingElt, b: Option<&GroupRingElt>) -> Result<GroupRingElt> {
    let need_b = || b.ok_or_else(|| Error::Invalid("operation needs two operands".into()));
    Ok(match op {
        RingOp::Add => a + need_b()?,
        RingOp::Convolve => a * need_b()?,
        RingOp::Involute => a.involute(),
    })
}

// ---------------------------------------------------------------------------
// Laurent polynomials

/// Univariate Laurent polynomial in `t` with integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Laurent {
    terms: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }
    pub fn t() -> Self {
        Self::monomial(1, BigInt::one())
    }
    pub fn monomial(k: i64, c: BigInt) -> Self {
        let mut x = Self::zero();
        x.add_term(k, c);
        x
    }
    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(0, c.into())
    }
    pub fn add_term(&mut self, k: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coefficient(&self, k: i64) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_else(BigInt::zero)
    }
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.terms.iter()
    }

    /// Parses e.g. `1 - t`, `t^-1`, `-2*t^3 + 4`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut x = Self::zero();
        for (neg, body) in split_signed_terms(text)? {
            let (c, mono) = split_coefficient(&body)?;
            let k = match mono.as_deref() {
                None => 0,
                Some("t") => 1,
                Some(s) => s
                    .strip_prefix("t^")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad monomial {s:?}")))?,
            };
            x.add_term(k, if neg { -c } else { c });
        }
        Ok(x)
    }
}

fn split_coefficient(body: &str) -> Result<(BigInt, Option<String>)> {
    let body = body.trim();
    if body.chars().all(|c| c.is_ascii_digit()) {
        return Ok((parse_bigint(body)?, None));
    }
    match body.split_once('*') {
        Some((c, rest)) if c.trim().chars().all(|ch| ch.is_ascii_digit()) => {
            Ok((parse_bigint(c.trim())?, Some(rest.trim().to_string())))
        }
        _ => Ok((BigInt::one(), Some(body.to_string()))),
    }
}

fn power_string(var: &str, k: i64) -> String {
    if k == 1 {
        var.to_string()
    } else {
        format!("{var}^{k}")
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (c.clone(), if k == 0 { String::new() } else { power_string("t", k) }))
            .collect();
        write_signed_terms(f, terms)
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}
impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}
impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}
impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}
owned_binops!(Laurent);

/// Multivariate Laurent polynomial in `t_1, t_2, ...`.
///
/// Exponent vectors are stored without trailing zeros, so the number of
/// variables never has to be fixed in advance.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct MultiLaurent {
    terms: BTreeMap<Vec<i64>, BigInt>,
}

fn trim_exponents(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl MultiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn one() -> Self {
        Self::monomial(Vec::new(), BigInt::one())
    }
    /// The variable `t_i`, `i >= 1`.
    pub fn var(i: usize) -> Self {
        let mut v = vec![0; i];
        v[i - 1] = 1;
        Self::monomial(v, BigInt::one())
    }
    pub fn monomial(exps: Vec<i64>, c: BigInt) -> Self {
        let mut x = Self::zero();
        x.add_term(exps, c);
        x
    }
    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(Vec::new(), c.into())
    }
    pub fn add_term(&mut self, exps: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let exps = trim_exponents(exps);
        let e = self.terms.entry(exps.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    /// Parses e.g. `t1^-1*t2`, `1 - t1 + 2*t2^3`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut x = Self::zero();
        for (neg, body) in split_signed_terms(text)? {
            let mut coef = BigInt::one();
            let mut exps: Vec<i64> = Vec::new();
            for factor in body.split('*') {
                let factor = factor.trim();
                if factor.chars().all(|c| c.is_ascii_digit()) {
                    coef *= parse_bigint(factor)?;
                    continue;
                }
                let (i, k) = parse_token(factor, 't')?;
                if i == 0 {
                    return Err(Error::Parse(format!("variable index 0 in {factor:?}")));
                }
                if exps.len() < i {
                    exps.resize(i, 0);
                }
                exps[i - 1] += k;
            }
            x.add_term(exps, if neg { -coef } else { coef });
        }
        Ok(x)
    }
}

impl fmt::Display for MultiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(v, c)| {
                let mono: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(i, &k)| power_string(&format!("t{}", i + 1), k))
                    .collect();
                (c.clone(), mono.join("*"))
            })
            .collect();
        write_signed_terms(f, terms)
    }
}

fn add_exps(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

impl Add for &MultiLaurent {
    type Output = MultiLaurent;
    fn add(self, rhs: &MultiLaurent) -> MultiLaurent {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}
impl Sub for &MultiLaurent {
    type Output = MultiLaurent;
    fn sub(self, rhs: &MultiLaurent) -> MultiLaurent {
        self + &(-rhs)
    }
}
impl Neg for &MultiLaurent {
    type Output = MultiLaurent;
    fn neg(self) -> MultiLaurent {
        MultiLaurent { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }
}
impl Mul for &MultiLaurent {
    type Output = MultiLaurent;
    fn mul(self, rhs: &MultiLaurent) -> MultiLaurent {
        let mut out = MultiLaurent::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(add_exps(a, b), x * y);
            }
        }
        out
    }
}
owned_binops!(MultiLaurent);

// ---------------------------------------------------------------------------
// Abelian reduction

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReduceMode {
    Univariate,
    Multivariate,
}

/// Either flavour of Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaurentElt {
    Uni(Laurent),
    Multi(MultiLaurent),
}

impl fmt::Display for LaurentElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentElt::Uni(x) => x.fmt(f),
            LaurentElt::Multi(x) => x.fmt(f),
        }
    }
}

/// `g_i -> t^{-1}`.
pub fn reduce_univariate(x: &GroupRingElt) -> Laurent {
    let mut out = Laurent::zero();
    for (w, c) in x.terms() {
        let k: i64 = w.letters().iter().map(|&(_, e)| e).sum();
        out.add_term(-k, c.clone());
    }
    out
}

/// `g_i -> t_i^{-1}`.
pub fn reduce_multivariate(x: &GroupRingElt) -> MultiLaurent {
    let mut out = MultiLaurent::zero();
    for (w, c) in x.terms() {
        let sums = w.exponent_sums(w.max_generator());
        out.add_term(sums[1..].iter().map(|e| -e).collect(), c.clone());
    }
    out
}

pub fn abelian_reduce(x: &GroupRingElt, mode: ReduceMode) -> LaurentElt {
    match mode {
        ReduceMode::Univariate => LaurentElt::Uni(reduce_univariate(x)),
        ReduceMode::Multivariate => LaurentElt::Multi(reduce_multivariate(x)),
    }
}
