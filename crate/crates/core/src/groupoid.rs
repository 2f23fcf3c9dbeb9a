//! Words in the groupoid of straight-line paths between configuration
//! points, and the evaluator of the character determined by straight-line
//! data `Q`.
//!
//! A word `(z_0, m_0, ..., z_k, m_k)` stands for
//! `ε(z_0)^{m_0} s(z_0, z_1) ε(z_1)^{m_1} ... s(z_{k-1}, z_k) ε(z_k)^{m_k}`,
//! a path from `z_k` to `z_0`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{chain_in, extremal_in, is_local_triangle_in, mu, AdmissibleConfig, Mask};
use crate::matrices::IntMatrix;
use crate::monodromy::{check_symmetry, ParityClass};

/// Point indices are 0-based internally and 1-based in text.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupoidWord {
    steps: Vec<(usize, i64)>,
}

impl GroupoidWord {
    pub fn new(steps: Vec<(usize, i64)>) -> Result<Self> {
        let w = Self { steps };
        w.validate()?;
        Ok(w)
    }

    /// The twist `ε(z)^m`.
    pub fn twist(z: usize, m: i64) -> Self {
        Self { steps: vec![(z, m)] }
    }

    /// The straight line `s(z, z')`, a path from `z'` to `z`.
    pub fn line(z: usize, z2: usize) -> Result<Self> {
        Self::new(vec![(z, 0), (z2, 0)])
    }

    pub fn steps(&self) -> &[(usize, i64)] {
        &self.steps
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps.is_empty() {
            return Err(Error::Invalid("groupoid word is empty".into()));
        }
        for (i, w) in self.steps.windows(2).enumerate() {
            if w[0].0 == w[1].0 {
                return Err(Error::Invalid(format!(
                    "positions {} and {} repeat point {}",
                    i + 1,
                    i + 2,
                    w[0].0 + 1
                )));
            }
        }
        Ok(())
    }

    pub fn check_points(&self, m: usize) -> Result<()> {
        match self.steps.iter().find(|&&(z, _)| z >= m) {
            Some(&(z, _)) => Err(Error::Index(format!("point {} outside 1..{m}", z + 1))),
            None => Ok(()),
        }
    }

    /// Endpoint of the path (`z_k`).
    pub fn source(&self) -> usize {
        self.steps.last().unwrap().0
    }

    /// Start of the listing (`z_0`).
    pub fn target(&self) -> usize {
        self.steps[0].0
    }

    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `self ∘ other`: `other` is traversed first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.source() != other.target() {
            return Err(Error::Invalid(format!(
                "cannot compose: path ends at point {} but the next one starts at point {}",
                other.target() + 1,
                self.source() + 1
            )));
        }
        let mut steps = self.steps.clone();
        steps.last_mut().unwrap().1 += other.steps[0].1;
        steps.extend_from_slice(&other.steps[1..]);
        Ok(Self { steps })
    }

    pub fn inverse(&self) -> Self {
        Self { steps: self.steps.iter().rev().map(|&(z, m)| (z, -m)).collect() }
    }

    /// Parses comma separated `index:exponent` pairs, e.g. `1:0,3:2,2:-1`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for part in text.split(',') {
            let (z, m) = part
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected index:exponent, got {part:?}")))?;
            let z: usize = z.trim().parse().map_err(|_| Error::Parse(format!("bad index {z:?}")))?;
            let m: i64 = m.trim().parse().map_err(|_| Error::Parse(format!("bad exponent {m:?}")))?;
            if z == 0 {
                return Err(Error::Parse("point indices start at 1".into()));
            }
            steps.push((z - 1, m));
        }
        Self::new(steps)
    }
}

impl fmt::Display for GroupoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|&(z, m)| format!("{}:{m}", z + 1)).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupoidOp {
    Compose,
    Invert,
    Validate,
}

pub fn word_arith_groupoid(op: GroupoidOp, u: &GroupoidWord, v: Option<&GroupoidWord>) -> Result<GroupoidWord> {
    u.validate()?;
    match op {
        GroupoidOp::Validate => Ok(u.clone()),
        GroupoidOp::Invert => Ok(u.inverse()),
        GroupoidOp::Compose => u.compose(v.ok_or_else(|| Error::Invalid("compose needs two words".into()))?),
    }
}

/// Values `Q(z, z')` on straight lines, indexed by configuration order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StraightLineData {
    parity: ParityClass,
    q: IntMatrix,
}

impl StraightLineData {
    pub fn parity(&self) -> ParityClass {
        self.parity
    }
    pub fn matrix(&self) -> &IntMatrix {
        &self.q
    }
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        self.q.get(i, j)
    }
}

pub fn validate_q(cfg: &AdmissibleConfig, m: IntMatrix) -> Result<StraightLineData> {
    if m.size() != cfg.size() {
        return Err(Error::Size(format!("Q has size {}, configuration has {} points", m.size(), cfg.size())));
    }
    check_symmetry(cfg.parity(), &m, "straight-line data")?;
    Ok(StraightLineData { parity: cfg.parity(), q: m })
}

/// Default bound on evaluation steps.
pub const DEFAULT_STEP_LIMIT: u64 = 1_000_000;

type Key = (Mask, Vec<(usize, i64)>);

/// Evaluation context: holds the memo table, the step counter and, in the
/// randomized mode, the generator that breaks ties.
pub struct Evaluator<'a> {
    cfg: &'a AdmissibleConfig,
    q: &'a StraightLineData,
    memo: HashMap<Key, BigInt>,
    steps: u64,
    limit: u64,
    rng: Option<ChaCha8Rng>,
    geo: GeometryCache,
}

/// Geometric predicates are exact but slow; the evaluator asks for the same
/// ones many times.
#[derive(Default)]
struct GeometryCache {
    mu: HashMap<(usize, usize, usize), i64>,
    hulls: HashMap<Mask, Vec<usize>>,
    chains: HashMap<(Mask, usize, usize, usize), Vec<usize>>,
}

impl GeometryCache {
    fn mu(&mut self, cfg: &AdmissibleConfig, z0: usize, w: usize, z1: usize) -> i64 {
        *self.mu.entry((z0, w, z1)).or_insert_with(|| mu(cfg, z0, w, z1) as i64)
    }

    fn hull(&mut self, cfg: &AdmissibleConfig, mask: Mask) -> &[usize] {
        self.hulls.entry(mask).or_insert_with(|| extremal_in(cfg, mask))
    }

    /// Chain from `z` to `a` around `e`, checked to consist of local triangles.
    fn chain(&mut self, cfg: &AdmissibleConfig, mask: Mask, e: usize, z: usize, a: usize) -> Result<Vec<usize>> {
        if let Some(c) = self.chains.get(&(mask, e, z, a)) {
            return Ok(c.clone());
        }
        let chain = chain_in(cfg, mask, e, z, a);
        for pair in chain.windows(2) {
            if !is_local_triangle_in(cfg, mask, pair[0], e, pair[1]) {
                return Err(Error::Internal(format!(
                    "chain triple ({}, {}, {}) is not a local triangle",
                    pair[0] + 1,
                    e + 1,
                    pair[1] + 1
                )));
            }
        }
        self.chains.insert((mask, e, z, a), chain.clone());
        Ok(chain)
    }
}

impl<'a> Evaluator<'a> {
    pub fn new(cfg: &'a AdmissibleConfig, q: &'a StraightLineData) -> Self {
        Self { cfg, q, memo: HashMap::new(), steps: 0, limit: DEFAULT_STEP_LIMIT, rng: None, geo: GeometryCache::default() }
    }

    /// Chooses extremal points and reflection order at random.
    pub fn randomized(cfg: &'a AdmissibleConfig, q: &'a StraightLineData, seed: u64) -> Self {
        let mut ev = Self::new(cfg, q);
        ev.rng = Some(ChaCha8Rng::seed_from_u64(seed));
        ev
    }

    pub fn with_step_limit(mut self, limit: u64) -> Self {
        self.limit = limit;
        self
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn eval(&mut self, w: &GroupoidWord) -> Result<BigInt> {
        w.validate()?;
        w.check_points(self.cfg.size())?;
        if self.q.parity != self.cfg.parity() {
            return Err(Error::Invalid("Q and configuration have different parity classes".into()));
        }
        self.eval_in(self.cfg.full_mask(), w.steps.clone())
    }

    fn parity(&self) -> ParityClass {
        self.cfg.parity()
    }

    /// `sum_{j<m} r^j` with `r = (-1)^{n+1}`, extended to negative `m`.
    fn twist_sum(&self, m: i64) -> i64 {
        if self.parity().is_odd() {
            m
        } else {
            m.rem_euclid(2)
        }
    }

    fn eval_in(&mut self, mask: Mask, w: Vec<(usize, i64)>) -> Result<BigInt> {
        let (sign, canon) = self.canonicalize(w);
        if let Some(v) = self.memo.get(&(mask, canon.clone())) {
            return Ok(v * sign);
        }
        self.steps += 1;
        if self.steps > self.limit {
            return Err(Error::StepLimit(self.limit));
        }
        let v = self.eval_canonical(mask, &canon)?;
        self.memo.insert((mask, canon), v.clone());
        Ok(v * sign)
    }

    /// Cancels `s(x,y) s(y,x)` backtracks and strips the end twists, which
    /// only contribute a sign.
    fn canonicalize(&self, w: Vec<(usize, i64)>) -> (i64, Vec<(usize, i64)>) {
        let mut stack: Vec<(usize, i64)> = Vec::with_capacity(w.len());
        for (z, mut m) in w {
            while stack.len() >= 2 && stack[stack.len() - 1].1 == 0 && stack[stack.len() - 2].0 == z {
                stack.pop();
                m += stack.pop().unwrap().1;
            }
            stack.push((z, m));
        }
        let k = stack.len() - 1;
        let ends = if k == 0 { stack[0].1 } else { stack[0].1 + stack[k].1 };
        stack[0].1 = 0;
        stack[k].1 = 0;
        let sign = if self.parity().twist() == -1 && ends.rem_euclid(2) == 1 { -1 } else { 1 };
        (sign, stack)
    }

    fn pick(&mut self, n: usize) -> usize {
        match &mut self.rng {
            Some(r) => r.gen_range(0..n),
            None => 0,
        }
    }

    /// Value with the interior exponent at `i` moved to `target`, corrected
    /// by the reflection formula.
    fn shift(&mut self, mask: Mask, w: &[(usize, i64)], i: usize, target: i64) -> Result<BigInt> {
        let m = w[i].1;
        let mut moved = w.to_vec();
        moved[i].1 = target;
        let mut prefix = w[..=i].to_vec();
        prefix[i].1 = 0;
        let mut suffix = w[i..].to_vec();
        suffix[0].1 = 0;
        let base = self.eval_in(mask, moved)?;
        let a = self.eval_in(mask, prefix)?;
        let b = self.eval_in(mask, suffix)?;
        let delta = self.twist_sum(m) - self.twist_sum(target);
        Ok(base - a * b * (self.parity().eps() * delta))
    }

    fn eval_canonical(&mut self, mask: Mask, w: &[(usize, i64)]) -> Result<BigInt> {
        let k = w.len() - 1;
        if k == 0 {
            return Ok(BigInt::from(self.parity().diag()));
        }
        if k == 1 {
            return Ok(self.q.get(w[0].0, w[1].0).clone());
        }
        let mut visited: Vec<usize> = w.iter().map(|&(z, _)| z).collect();
        visited.sort_unstable();
        visited.dedup();
        if visited.len() <= 2 {
            let nonzero: Vec<usize> = (1..k).filter(|&i| w[i].1 != 0).collect();
            if nonzero.is_empty() {
                return Err(Error::Internal(format!("two-point word {w:?} did not cancel")));
            }
            let i = nonzero[self.pick(nonzero.len())];
            return self.shift(mask, w, i, 0);
        }

        let (first, last) = (w[0].0, w[k].0);
        let candidates: Vec<usize> =
            self.geo.hull(self.cfg, mask).iter().copied().filter(|&e| e != first && e != last).collect();
        if candidates.is_empty() {
            return Err(Error::Internal(format!("no extremal point available for {w:?}")));
        }
        let e = candidates[self.pick(candidates.len())];
        let smaller = mask & !(1 << e);
        let visits: Vec<usize> = (1..k).filter(|&i| w[i].0 == e).collect();
        if visits.is_empty() {
            return self.eval_in(smaller, w.to_vec());
        }

        let mut off = Vec::new();
        for &i in &visits {
            let (z, a) = (w[i - 1].0, w[i + 1].0);
            let target = if z == a { 0 } else { self.geo.mu(self.cfg, z, e, a) };
            if w[i].1 != target {
                off.push((i, target));
            }
        }
        if !off.is_empty() {
            let (i, target) = off[self.pick(off.len())];
            return self.shift(mask, w, i, target);
        }

        // every visit now matches the local-triangle relation along the chain around e
        let mut delta = vec![0i64; w.len()];
        let mut inner: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for &i in &visits {
            let chain = self.geo.chain(self.cfg, mask, e, w[i - 1].0, w[i + 1].0)?;
            let t = chain.len() - 1;
            delta[i - 1] -= self.geo.mu(self.cfg, chain[1], chain[0], e);
            delta[i + 1] -= self.geo.mu(self.cfg, e, chain[t], chain[t - 1]);
            let mid = (1..t)
                .map(|j| {
                    let c = chain[j];
                    let m = self.geo.mu(self.cfg, e, c, chain[j - 1]) + self.geo.mu(self.cfg, chain[j + 1], c, e);
                    (c, -m)
                })
                .collect();
            inner.insert(i, mid);
        }
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(w.len() * 2);
        for (i, &(z, m)) in w.iter().enumerate() {
            match inner.remove(&i) {
                Some(mid) => out.extend(mid),
                None => out.push((z, m + delta[i])),
            }
        }
        self.eval_in(smaller, out)
    }
}

/// Evaluates the character with the deterministic strategy.
pub fn chi_evaluate(cfg: &AdmissibleConfig, q: &StraightLineData, w: &GroupoidWord) -> Result<BigInt> {
    Evaluator::new(cfg, q).eval(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{validate_admissible, RationalPoint};

    fn gw(s: &str) -> GroupoidWord {
        GroupoidWord::parse(s).unwrap()
    }

    fn two_points(n: i64, q12: i64) -> (AdmissibleConfig, StraightLineData) {
        let p = ParityClass::new(n);
        let cfg = validate_admissible(
            vec![RationalPoint::from_ints(0, 0), RationalPoint::from_ints(3, 1)],
            vec![RationalPoint::from_ints(0, 1), RationalPoint::from_ints(0, 1)],
            p,
        )
        .unwrap();
        let d = p.diag();
        let q = IntMatrix::from_i64(&[vec![d, q12], vec![p.sgn() * q12, d]]).unwrap();
        let q = validate_q(&cfg, q).unwrap();
        (cfg, q)
    }

    #[test]
    fn word_operations() {
        assert_eq!(gw("1:0,2:3").compose(&gw("2:1,3:0")).unwrap(), gw("1:0,2:4,3:0"));
        assert_eq!(gw("1:2,2:-1").inverse(), gw("2:1,1:-2"));
        assert!(GroupoidWord::parse("1:0,1:0").is_err());
        assert!(gw("1:0,2:0").compose(&gw("3:0,1:0")).is_err());
        assert!(GroupoidWord::parse("0:1").is_err());
        assert!(GroupoidWord::parse("1;2").is_err());
        assert_eq!(gw("3:-2,1:0,2:5").to_string(), "3:-2,1:0,2:5");
        assert!(word_arith_groupoid(GroupoidOp::Validate, &gw("1:0,2:0"), None).is_ok());
    }

    #[test]
    fn q_validation() {
        let (cfg, _) = two_points(1, 3);
        assert!(validate_q(&cfg, IntMatrix::from_i64(&[vec![0, 3], vec![-3, 0]]).unwrap()).is_ok());
        let (cfg0, _) = two_points(0, 1);
        assert!(validate_q(&cfg0, IntMatrix::from_i64(&[vec![1, 1], vec![1, 2]]).unwrap()).is_err());
        let (cfg2, _) = two_points(2, 1);
        assert!(validate_q(&cfg2, IntMatrix::from_i64(&[vec![-2, 1], vec![1, -2]]).unwrap()).is_ok());
    }

    #[test]
    fn base_values() {
        let (cfg, q) = two_points(1, 2);
        assert_eq!(chi_evaluate(&cfg, &q, &gw("1:0,2:0")).unwrap(), BigInt::from(2));
        assert_eq!(chi_evaluate(&cfg, &q, &gw("2:0,1:0")).unwrap(), BigInt::from(-2));
        assert_eq!(chi_evaluate(&cfg, &q, &gw("1:0,2:1,1:0")).unwrap(), BigInt::from(-4));
        let (cfg, q) = two_points(0, 5);
        assert_eq!(chi_evaluate(&cfg, &q, &gw("1:3")).unwrap(), BigInt::from(-2));
        assert_eq!(chi_evaluate(&cfg, &q, &gw("1:4")).unwrap(), BigInt::from(2));
        assert_eq!(chi_evaluate(&cfg, &q, &gw("1:1,2:0")).unwrap(), BigInt::from(-5));
        let (cfg, q) = two_points(2, 5);
        assert_eq!(chi_evaluate(&cfg, &q, &gw("2:7")).unwrap(), BigInt::from(2));
    }

    #[test]
    fn two_point_reflections() {
        // chi(A e B) = chi(AB) - eps chi(A) chi(B) with A = s(1,2), B = s(2,1)
        for n in 0..4 {
            let (cfg, q) = two_points(n, 3);
            let p = cfg.parity();
            let ab = chi_evaluate(&cfg, &q, &gw("1:0")).unwrap();
            let a = chi_evaluate(&cfg, &q, &gw("1:0,2:0")).unwrap();
            let b = chi_evaluate(&cfg, &q, &gw("2:0,1:0")).unwrap();
            let lhs = chi_evaluate(&cfg, &q, &gw("1:0,2:1,1:0")).unwrap();
            assert_eq!(lhs, &ab - &a * &b * p.eps());
            let lhs = chi_evaluate(&cfg, &q, &gw("1:0,2:-1,1:0")).unwrap();
            assert_eq!(lhs, &ab - &a * &b * (p.eps() * p.sgn()));
        }
    }

    #[test]
    fn step_limit_is_enforced() {
        let (cfg, q) = two_points(1, 2);
        let mut ev = Evaluator::new(&cfg, &q).with_step_limit(2);
        let err = ev.eval(&gw("1:0,2:3,1:-2,2:5,1:1,2:0")).unwrap_err();
        assert_eq!(err, Error::StepLimit(2));
        assert!(err.is_internal());
    }
}
