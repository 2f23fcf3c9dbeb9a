//! Fan configurations, the anchor compiler from groupoid words to free-group
//! words, the forward map `N -> Q` and its inverse.
//!
//! A fan joins a basepoint `b` to every point by a straight segment; the
//! `k`-th generator of the free group runs out along the `k`-th segment and
//! circles the point counterclockwise. Words are read off from crossings
//! with the rays that continue each segment beyond its point.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::FreeWord;
use crate::error::{Error, Result};
use crate::geometry::{cross, dot, orient, same_direction, validate_admissible, AdmissibleConfig, Rat, RationalPoint};
use crate::groupoid::{validate_q, Evaluator, GroupoidWord, StraightLineData};
use crate::matrices::IntMatrix;
use crate::monodromy::{validate_n, IntersectionMatrix, ParityClass, Rho};

/// Points reindexed in clockwise order around the basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanConfiguration {
    cfg: AdmissibleConfig,
    basepoint: RationalPoint,
    order: Vec<usize>,
}

impl FanConfiguration {
    pub fn config(&self) -> &AdmissibleConfig {
        &self.cfg
    }

    pub fn basepoint(&self) -> &RationalPoint {
        &self.basepoint
    }

    /// `order[i]` is the input index of the `i`-th fan point.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.cfg.size()
    }

    pub fn parity(&self) -> ParityClass {
        self.cfg.parity()
    }

    /// Direction of the ray through point `k`, pointing away from the basepoint.
    fn ray(&self, k: usize) -> RationalPoint {
        self.cfg.point(k).sub(&self.basepoint)
    }

    fn inward(&self, k: usize) -> RationalPoint {
        self.basepoint.sub(self.cfg.point(k))
    }
}

/// 0 for angles in `[0, π)` measured counterclockwise from `a`, 1 otherwise.
fn half(a: &RationalPoint, x: &RationalPoint) -> u8 {
    let c = cross(a, x);
    if c.is_positive() || (c.is_zero() && dot(a, x).is_positive()) {
        0
    } else {
        1
    }
}

/// Compares counterclockwise angles from `a` to `x` and to `y`.
fn ccw_cmp(a: &RationalPoint, x: &RationalPoint, y: &RationalPoint) -> Ordering {
    half(a, x).cmp(&half(a, y)).then_with(|| {
        let c = cross(x, y);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// True if `d` lies in the open sector swept counterclockwise from `a` to `b`.
fn in_ccw_sector(a: &RationalPoint, b: &RationalPoint, d: &RationalPoint) -> bool {
    !same_direction(a, d) && ccw_cmp(a, d, b) == Ordering::Less
}

/// Orders points clockwise around `basepoint`, starting from the direction
/// pointing from the centroid to the basepoint, so that points lying above a
/// basepoint are numbered left to right. Without `tangents`, every tangent
/// points back at the basepoint.
pub fn build_fan_config(
    points: Vec<RationalPoint>,
    basepoint: RationalPoint,
    parity: ParityClass,
    tangents: Option<Vec<RationalPoint>>,
) -> Result<FanConfiguration> {
    let m = points.len();
    if m == 0 {
        return Err(Error::Invalid("configuration has no points".into()));
    }
    if let Some(t) = &tangents {
        if t.len() != m {
            return Err(Error::Invalid(format!("{m} points but {} tangents", t.len())));
        }
    }
    for (i, p) in points.iter().enumerate() {
        if *p == basepoint {
            return Err(Error::Invalid(format!("point {} coincides with the basepoint", i + 1)));
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            if orient(&basepoint, &points[i], &points[j]) == 0 {
                return Err(Error::Invalid(format!(
                    "points {} and {} are collinear with the basepoint",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut sum = RationalPoint::from_ints(0, 0);
    for p in &points {
        sum = sum.add(p);
    }
    let centroid = sum.scale(&Rat::new(BigInt::from(1), BigInt::from(m)));
    let mut reference = basepoint.sub(&centroid);
    if reference.is_zero() {
        reference = RationalPoint::from_ints(0, -1);
    }
    let dirs: Vec<RationalPoint> = points.iter().map(|p| p.sub(&basepoint)).collect();
    // 0 for clockwise angles in [0, π) from the reference, 1 otherwise
    let cw_half = |x: &RationalPoint| -> u8 {
        let c = cross(&reference, x);
        if c.is_negative() || same_direction(&reference, x) {
            0
        } else {
            1
        }
    };
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| {
        cw_half(&dirs[i]).cmp(&cw_half(&dirs[j])).then_with(|| {
            let c = cross(&dirs[i], &dirs[j]);
            if c.is_negative() {
                Ordering::Less
            } else if c.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });

    let sorted: Vec<RationalPoint> = order.iter().map(|&i| points[i].clone()).collect();
    let vs: Vec<RationalPoint> = match tangents {
        None => sorted.iter().map(|p| basepoint.sub(p)).collect(),
        Some(t) => {
            let vs: Vec<RationalPoint> = order.iter().map(|&i| t[i].clone()).collect();
            for (k, v) in vs.iter().enumerate() {
                if same_direction(&sorted[k].sub(&basepoint), v) {
                    return Err(Error::Invalid(format!(
                        "tangent at point {} points straight away from the basepoint",
                        order[k] + 1
                    )));
                }
            }
            vs
        }
    };
    let cfg = validate_admissible(sorted, vs, parity)?;
    Ok(FanConfiguration { cfg, basepoint, order })
}

/// The free-group element attached to a groupoid word from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchorWord {
    pub source: usize,
    pub target: usize,
    pub word: FreeWord,
}

/// Loop letters of a turn around point `k` from direction `a` to direction `b`.
fn sweep(fan: &FanConfiguration, k: usize, a: &RationalPoint, b: &RationalPoint, ccw: bool, out: &mut Vec<(usize, i64)>) {
    let d = fan.ray(k);
    let hit = if ccw { in_ccw_sector(a, b, &d) } else { in_ccw_sector(b, a, &d) };
    if hit {
        out.push((k + 1, if ccw { 1 } else { -1 }));
    }
}

/// Anchor of the straight line `s(z_i, z_j)` as letters in time order.
fn line_letters(fan: &FanConfiguration, i: usize, j: usize) -> Vec<(usize, i64)> {
    let cfg = &fan.cfg;
    let (zi, zj) = (cfg.point(i), cfg.point(j));
    let p = zi.sub(zj);
    let mut out = Vec::new();

    sweep(fan, j, &fan.inward(j), cfg.tangent(j), true, &mut out);
    sweep(fan, j, cfg.tangent(j), &p, false, &mut out);

    let mut hits: Vec<(Rat, usize, i64)> = Vec::new();
    for k in 0..fan.size() {
        if k == i || k == j {
            continue;
        }
        let d = fan.ray(k);
        let den = cross(&p, &d);
        if den.is_zero() {
            continue;
        }
        // zj + t p = zk + s d
        let w = cfg.point(k).sub(zj);
        let t = cross(&w, &d) / &den;
        let s = cross(&w, &p) / &den;
        if t.is_positive() && t < Rat::from_integer(1.into()) && s.is_positive() {
            hits.push((t, k, if den.is_negative() { 1 } else { -1 }));
        }
    }
    hits.sort();
    out.extend(hits.into_iter().map(|(_, k, e)| (k + 1, e)));

    sweep(fan, i, &p.neg(), cfg.tangent(i), true, &mut out);
    sweep(fan, i, cfg.tangent(i), &fan.inward(i), false, &mut out);
    out
}

fn from_time_order(letters: Vec<(usize, i64)>) -> FreeWord {
    FreeWord::from_letters(letters.into_iter().rev())
}

pub fn anchor_word(fan: &FanConfiguration, w: &GroupoidWord) -> Result<AnchorWord> {
    w.validate()?;
    w.check_points(fan.size())?;
    let steps = w.steps();
    let mut word = FreeWord::identity();
    for (idx, &(z, m)) in steps.iter().enumerate() {
        word = &word * &FreeWord::gen_pow(z + 1, m);
        if let Some(&(next, _)) = steps.get(idx + 1) {
            word = &word * &from_time_order(line_letters(fan, z, next));
        }
    }
    Ok(AnchorWord { source: w.source(), target: w.target(), word })
}

/// Twist-dressed lines `c_k c_{k+1}^{-1}` with trivial anchor.
pub fn hop_words(fan: &FanConfiguration) -> Result<Vec<GroupoidWord>> {
    let m = fan.size();
    if m < 2 {
        return Err(Error::Invalid("hops need at least two points".into()));
    }
    (0..m - 1)
        .map(|k| {
            let u = anchor_word(fan, &GroupoidWord::line(k, k + 1)?)?.word;
            let mut alpha = 0;
            let mut beta = 0;
            for (n, &(g, e)) in u.letters().iter().enumerate() {
                match (n, g) {
                    (0, g) if g == k + 1 => alpha = e,
                    (_, g) if g == k + 2 && beta == 0 => beta = e,
                    _ => {
                        return Err(Error::Internal(format!(
                            "anchor {u} of line {}-{} is not of the form g{}^a g{}^b",
                            k + 1,
                            k + 2,
                            k + 1,
                            k + 2
                        )))
                    }
                }
            }
            if alpha.abs() > 1 || beta.abs() > 1 {
                return Err(Error::Internal(format!("anchor {u} has exponents outside -1..1")));
            }
            GroupoidWord::new(vec![(k, -alpha), (k + 1, -beta)])
        })
        .collect()
}

fn check_matches(fan: &FanConfiguration, n: &IntersectionMatrix) -> Result<()> {
    if n.size() != fan.size() {
        return Err(Error::Size(format!("matrix of size {} for {} points", n.size(), fan.size())));
    }
    if n.parity() != fan.parity() {
        return Err(Error::Invalid("matrix and configuration have different parity classes".into()));
    }
    Ok(())
}

/// `Q(z_i, z_j) = (N ρ_N(anchor s(z_i, z_j)))_{ij}`.
pub fn forward_q(fan: &FanConfiguration, n: &IntersectionMatrix) -> Result<StraightLineData> {
    check_matches(fan, n)?;
    let m = fan.size();
    let rho = Rho::new(n);
    let mut q = IntMatrix::zero(m);
    for i in 0..m {
        for j in 0..m {
            let v = if i == j {
                BigInt::from(fan.parity().diag())
            } else {
                let g = anchor_word(fan, &GroupoidWord::line(i, j)?)?.word;
                rho.character(&g)?.get(i, j).clone()
            };
            q.set(i, j, v);
        }
    }
    validate_q(&fan.cfg, q).map_err(|e| Error::Internal(e.to_string()))
}

/// Recovers `N` from straight-line data by evaluating telescoped hops.
pub fn reconstruct_n(fan: &FanConfiguration, q: &StraightLineData) -> Result<IntersectionMatrix> {
    if q.matrix().size() != fan.size() {
        return Err(Error::Size(format!("Q of size {} for {} points", q.matrix().size(), fan.size())));
    }
    let q = validate_q(&fan.cfg, q.matrix().clone())?;
    let m = fan.size();
    let p = fan.parity();
    let mut n = IntMatrix::zero(m);
    for i in 0..m {
        n.set(i, i, BigInt::from(p.diag()));
    }
    if m > 1 {
        let hops = hop_words(fan)?;
        let mut ev = Evaluator::new(&fan.cfg, &q);
        for i in 0..m {
            let mut path = hops[i.min(m - 2)].clone();
            for j in i + 1..m {
                if j > i + 1 {
                    path = path.compose(&hops[j - 1])?;
                }
                let v = ev.eval(&path)?;
                n.set(j, i, &v * p.sgn());
                n.set(i, j, v);
            }
        }
    }
    validate_n(p, n).map_err(|e| Error::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<RationalPoint> {
        v.iter().map(|&(x, y)| RationalPoint::from_ints(x, y)).collect()
    }

    fn two_fan() -> FanConfiguration {
        build_fan_config(pts(&[(2, 4), (-2, 4)]), RationalPoint::from_ints(0, -1), ParityClass::new(1), None).unwrap()
    }

    #[test]
    fn clockwise_order() {
        let fan = build_fan_config(
            pts(&[(3, 0), (-4, 1), (0, 2)]),
            RationalPoint::from_ints(0, -10),
            ParityClass::new(0),
            None,
        )
        .unwrap();
        assert_eq!(fan.order(), &[1, 2, 0]);
        assert_eq!(two_fan().order(), &[1, 0]);
        assert!(build_fan_config(pts(&[(1, 1), (2, 2)]), RationalPoint::from_ints(0, 0), ParityClass::new(0), None)
            .is_err());
        let one = build_fan_config(pts(&[(1, 1)]), RationalPoint::from_ints(0, 0), ParityClass::new(0), None).unwrap();
        assert_eq!(one.config().tangent(0), &RationalPoint::from_ints(-1, -1));
    }

    #[test]
    fn sectors() {
        let e = |x, y| RationalPoint::from_ints(x, y);
        assert!(in_ccw_sector(&e(1, 0), &e(-1, 1), &e(0, 1)));
        assert!(!in_ccw_sector(&e(1, 0), &e(0, 1), &e(0, -1)));
        assert!(in_ccw_sector(&e(0, 1), &e(1, 0), &e(0, -1)));
        assert!(!in_ccw_sector(&e(1, 0), &e(1, 0), &e(0, 1)));
        assert!(!in_ccw_sector(&e(1, 0), &e(0, 1), &e(2, 0)));
    }

    #[test]
    fn twist_anchor_is_generator() {
        let fan = two_fan();
        let a = anchor_word(&fan, &GroupoidWord::twist(1, 1)).unwrap();
        assert_eq!(a.word, FreeWord::gen(2));
        let a = anchor_word(&fan, &GroupoidWord::parse("1:0,2:0,1:0").unwrap()).unwrap();
        assert!(a.word.is_identity());
    }

    #[test]
    fn hops_have_trivial_anchor() {
        let fan = two_fan();
        for h in hop_words(&fan).unwrap() {
            assert!(anchor_word(&fan, &h).unwrap().word.is_identity());
        }
    }

    #[test]
    fn singletons() {
        let fan = build_fan_config(pts(&[(1, 1)]), RationalPoint::from_ints(0, 0), ParityClass::new(0), None).unwrap();
        let n = validate_n(ParityClass::new(0), IntMatrix::from_i64(&[vec![2]]).unwrap()).unwrap();
        let q = forward_q(&fan, &n).unwrap();
        assert_eq!(q.matrix(), n.matrix());
        assert_eq!(reconstruct_n(&fan, &q).unwrap(), n);
    }

    #[test]
    fn two_point_roundtrip() {
        let fan = two_fan();
        let n = validate_n(ParityClass::new(1), IntMatrix::from_i64(&[vec![0, 1], vec![-1, 0]]).unwrap()).unwrap();
        let q = forward_q(&fan, &n).unwrap();
        assert_eq!(reconstruct_n(&fan, &q).unwrap(), n);
    }
}
