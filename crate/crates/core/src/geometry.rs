//! Exact rational plane geometry of admissible configurations: orientation
//! tests, local triangles, the index `μ`, extremal points and angular chains.
//!
//! Subsets of a configuration are passed around as bitmasks over point
//! indices, so configurations hold at most 64 points.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::monodromy::ParityClass;

pub type Rat = BigRational;
pub type Mask = u64;

/// Largest supported configuration size.
pub const MAX_POINTS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalPoint {
    pub x: Rat,
    pub y: Rat,
}

impl RationalPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self { x: Rat::from_integer(x.into()), y: Rat::from_integer(y.into()) }
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        Self {
            x: Rat::new(x.0.into(), x.1.into()),
            y: Rat::new(y.0.into(), y.1.into()),
        }
    }

    pub fn parse(x: &str, y: &str) -> Result<Self> {
        Ok(Self { x: parse_rational(x)?, y: parse_rational(y)? })
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Self { x: &self.x * k, y: &self.y * k }
    }

    pub fn neg(&self) -> Self {
        Self { x: -&self.x, y: -&self.y }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((_, d)) = s.split_once('/') {
        if d.trim().parse::<BigInt>().map(|d| d.is_zero()).unwrap_or(false) {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
    }
    Rat::from_str(s).map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

/// `a.x b.y - a.y b.x`.
pub fn cross(a: &RationalPoint, b: &RationalPoint) -> Rat {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &RationalPoint, b: &RationalPoint) -> Rat {
    &a.x * &b.x + &a.y * &b.y
}

/// Sign of the orientation of the triangle `p, q, r`: `1` counterclockwise,
/// `-1` clockwise, `0` collinear.
pub fn orient(p: &RationalPoint, q: &RationalPoint, r: &RationalPoint) -> i32 {
    sign(&cross(&q.sub(p), &r.sub(p)))
}

pub fn sign(x: &Rat) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// True if `b` is a positive multiple of `a`.
pub fn same_direction(a: &RationalPoint, b: &RationalPoint) -> bool {
    cross(a, b).is_zero() && dot(a, b).is_positive()
}

/// True if `p` lies strictly inside the triangle `a, b, c`.
pub fn strictly_inside(p: &RationalPoint, a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> bool {
    let o = orient(a, b, c);
    o != 0 && orient(a, b, p) == o && orient(b, c, p) == o && orient(c, a, p) == o
}

/// Points with tangent vectors, parity class attached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdmissibleConfig {
    points: Vec<RationalPoint>,
    tangents: Vec<RationalPoint>,
    parity: ParityClass,
}

impl AdmissibleConfig {
    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &RationalPoint {
        &self.points[i]
    }

    pub fn tangents(&self) -> &[RationalPoint] {
        &self.tangents
    }

    pub fn tangent(&self, i: usize) -> &RationalPoint {
        &self.tangents[i]
    }

    pub fn parity(&self) -> ParityClass {
        self.parity
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn full_mask(&self) -> Mask {
        full_mask(self.size())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.size() {
            return Err(Error::Index(format!("point {} outside 1..{}", i + 1, self.size())));
        }
        Ok(())
    }
}

pub fn full_mask(m: usize) -> Mask {
    if m >= 64 {
        Mask::MAX
    } else {
        (1 << m) - 1
    }
}

pub fn mask_indices(mask: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// Checks distinctness, general position and that no tangent aims straight
/// at another point.
pub fn validate_admissible(
    points: Vec<RationalPoint>,
    tangents: Vec<RationalPoint>,
    parity: ParityClass,
) -> Result<AdmissibleConfig> {
    let m = points.len();
    if m == 0 {
        return Err(Error::Invalid("configuration has no points".into()));
    }
    if m > MAX_POINTS {
        return Err(Error::Invalid(format!("at most {MAX_POINTS} points are supported")));
    }
    if tangents.len() != m {
        return Err(Error::Invalid(format!("{m} points but {} tangents", tangents.len())));
    }
    for (i, v) in tangents.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::Invalid(format!("tangent at point {} is zero", i + 1)));
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            if points[i] == points[j] {
                return Err(Error::Invalid(format!("points {} and {} coincide", i + 1, j + 1)));
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                if orient(&points[i], &points[j], &points[k]) == 0 {
                    return Err(Error::Invalid(format!(
                        "points {}, {}, {} are collinear",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            if i != j && same_direction(&points[j].sub(&points[i]), &tangents[i]) {
                return Err(Error::Invalid(format!(
                    "tangent at point {} points at point {}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(AdmissibleConfig { points, tangents, parity })
}

/// No other point of `mask` lies in the triangle `i, w, j`.
pub fn is_local_triangle_in(cfg: &AdmissibleConfig, mask: Mask, i: usize, w: usize, j: usize) -> bool {
    let (a, b, c) = (cfg.point(i), cfg.point(w), cfg.point(j));
    mask_indices(mask)
        .filter(|&k| k != i && k != w && k != j)
        .all(|k| !strictly_inside(cfg.point(k), a, b, c))
}

pub fn is_local_triangle(cfg: &AdmissibleConfig, i: usize, w: usize, j: usize) -> Result<bool> {
    for k in [i, w, j] {
        cfg.check_index(k)?;
    }
    if i == w || w == j || i == j {
        return Err(Error::Index("triangle corners must be distinct".into()));
    }
    Ok(is_local_triangle_in(cfg, cfg.full_mask(), i, w, j))
}

/// `μ(z0, w, z1)`: zero unless the tangent at `w` points into the triangle,
/// then `+1` for a counterclockwise and `-1` for a clockwise triangle.
pub fn mu(cfg: &AdmissibleConfig, z0: usize, w: usize, z1: usize) -> i32 {
    let pw = cfg.point(w);
    let a = cfg.point(z0).sub(pw);
    let b = cfg.point(z1).sub(pw);
    let v = cfg.tangent(w);
    let s = sign(&cross(&a, &b));
    let inside = sign(&cross(&a, v)) == s && sign(&cross(v, &b)) == s;
    if inside {
        orient(cfg.point(z0), pw, cfg.point(z1))
    } else {
        0
    }
}

pub fn mu_index(cfg: &AdmissibleConfig, z0: usize, w: usize, z1: usize) -> Result<i32> {
    for k in [z0, w, z1] {
        cfg.check_index(k)?;
    }
    if z0 == w || w == z1 || z0 == z1 {
        return Err(Error::Index("mu needs three distinct points".into()));
    }
    Ok(mu(cfg, z0, w, z1))
}

/// Convex hull vertices of the points in `mask`, in increasing index order.
pub fn extremal_in(cfg: &AdmissibleConfig, mask: Mask) -> Vec<usize> {
    let mut idx: Vec<usize> = mask_indices(mask).collect();
    if idx.len() <= 2 {
        return idx;
    }
    idx.sort_by(|&a, &b| {
        let (p, q) = (cfg.point(a), cfg.point(b));
        p.x.cmp(&q.x).then(p.y.cmp(&q.y))
    });
    let mut hull: Vec<usize> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let seq: Vec<usize> = if pass == 0 { idx.clone() } else { idx.iter().rev().copied().collect() };
        for &k in &seq {
            while hull.len() >= start + 2
                && orient(cfg.point(hull[hull.len() - 2]), cfg.point(hull[hull.len() - 1]), cfg.point(k)) <= 0
            {
                hull.pop();
            }
            hull.push(k);
        }
        hull.pop();
    }
    hull.sort_unstable();
    hull.dedup();
    hull
}

/// Points of `mask` other than `e`, sorted counterclockwise as seen from the
/// extremal point `e`.
pub fn angular_order(cfg: &AdmissibleConfig, mask: Mask, e: usize) -> Vec<usize> {
    let pe = cfg.point(e);
    let mut others: Vec<usize> = mask_indices(mask).filter(|&k| k != e).collect();
    others.sort_by(|&a, &b| {
        let c = cross(&cfg.point(a).sub(pe), &cfg.point(b).sub(pe));
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    others
}

/// Angularly consecutive points from `z` to `a` around the extremal `e`.
pub fn chain_in(cfg: &AdmissibleConfig, mask: Mask, e: usize, z: usize, a: usize) -> Vec<usize> {
    let order = angular_order(cfg, mask, e);
    let iz = order.iter().position(|&k| k == z).expect("z in mask");
    let ia = order.iter().position(|&k| k == a).expect("a in mask");
    if iz <= ia {
        order[iz..=ia].to_vec()
    } else {
        order[ia..=iz].iter().rev().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtremalOrChain {
    Extremal(Vec<usize>),
    Chain(Vec<usize>),
}

/// `extremal` when `e` is `None`, otherwise the chain from `z` to `a` around `e`.
pub fn extremal_and_chain(
    cfg: &AdmissibleConfig,
    e: Option<usize>,
    z: Option<usize>,
    a: Option<usize>,
) -> Result<ExtremalOrChain> {
    let hull = extremal_in(cfg, cfg.full_mask());
    let Some(e) = e else {
        return Ok(ExtremalOrChain::Extremal(hull));
    };
    let (z, a) = match (z, a) {
        (Some(z), Some(a)) => (z, a),
        _ => return Err(Error::Invalid("chain needs both endpoints".into())),
    };
    for k in [e, z, a] {
        cfg.check_index(k)?;
    }
    if !hull.contains(&e) {
        return Err(Error::Invalid(format!("point {} is not extremal", e + 1)));
    }
    if z == e || a == e {
        return Err(Error::Invalid("chain endpoints must differ from the extremal point".into()));
    }
    Ok(ExtremalOrChain::Chain(chain_in(cfg, cfg.full_mask(), e, z, a)))
}
