#![allow(dead_code)]

use braidco::algebra::{BraidLetter, BraidWord, FreeWord};
use braidco::geometry::{cross, is_local_triangle, mu, validate_admissible, AdmissibleConfig, Rat, RationalPoint};
use braidco::groupoid::{validate_q, GroupoidWord, StraightLineData};
use braidco::matrices::IntMatrix;
use braidco::monodromy::{validate_n, IntersectionMatrix, ParityClass};
use braidco::reconstruct::{build_fan_config, FanConfiguration};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_point<R: Rng>(r: &mut R) -> RationalPoint {
    let mut c = || Rat::new(BigInt::from(r.gen_range(-40..=40)), BigInt::from(r.gen_range(1..=4)));
    RationalPoint::new(c(), c())
}

fn random_direction<R: Rng>(r: &mut R) -> RationalPoint {
    loop {
        let v = RationalPoint::from_ints(r.gen_range(-5..=5), r.gen_range(-5..=5));
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn random_config<R: Rng>(r: &mut R, m: usize, parity: ParityClass) -> AdmissibleConfig {
    loop {
        let pts: Vec<RationalPoint> = (0..m).map(|_| random_point(r)).collect();
        let vs: Vec<RationalPoint> = (0..m).map(|_| random_direction(r)).collect();
        if let Ok(cfg) = validate_admissible(pts, vs, parity) {
            return cfg;
        }
    }
}

pub fn random_fan<R: Rng>(r: &mut R, m: usize, parity: ParityClass, free_tangents: bool) -> FanConfiguration {
    loop {
        let pts: Vec<RationalPoint> = (0..m).map(|_| random_point(r)).collect();
        let base = random_point(r);
        let vs = free_tangents.then(|| (0..m).map(|_| random_direction(r)).collect());
        if let Ok(fan) = build_fan_config(pts, base, parity, vs) {
            return fan;
        }
    }
}

pub fn random_parity<R: Rng>(r: &mut R) -> ParityClass {
    ParityClass::new(r.gen_range(0..4))
}

/// Random element of sN_m with off-diagonal entries in `-bound..=bound`.
pub fn random_n<R: Rng>(r: &mut R, m: usize, parity: ParityClass, bound: i64) -> IntersectionMatrix {
    let mut a = IntMatrix::zero(m);
    for i in 0..m {
        a.set(i, i, BigInt::from(parity.diag()));
        for j in i + 1..m {
            let x = r.gen_range(-bound..=bound);
            a.set(i, j, BigInt::from(x));
            a.set(j, i, BigInt::from(parity.sgn() * x));
        }
    }
    validate_n(parity, a).unwrap()
}

pub fn random_q<R: Rng>(r: &mut R, cfg: &AdmissibleConfig, bound: i64) -> StraightLineData {
    let n = random_n(r, cfg.size(), cfg.parity(), bound);
    validate_q(cfg, n.matrix().clone()).unwrap()
}

/// Random word with `len` lines, optionally pinned to `(target, source)`.
pub fn random_gword<R: Rng>(r: &mut R, m: usize, len: usize, ends: Option<(usize, usize)>) -> GroupoidWord {
    if let Some((t, s)) = ends {
        assert!(len >= 2 || (len == 0) == (t == s), "no word of length {len} from {s} to {t}");
    }
    let step = |r: &mut R, prev: usize| {
        let z = r.gen_range(0..m - 1);
        if z >= prev {
            z + 1
        } else {
            z
        }
    };
    loop {
        let first = ends.map(|e| e.0).unwrap_or_else(|| r.gen_range(0..m));
        let mut steps = vec![(first, r.gen_range(-2..=2))];
        let free = if ends.is_some() { len.saturating_sub(1) } else { len };
        for _ in 0..free {
            let z = step(r, steps.last().unwrap().0);
            steps.push((z, r.gen_range(-2..=2)));
        }
        if let (Some((_, last)), true) = (ends, len > 0) {
            if steps.last().unwrap().0 == last {
                continue;
            }
            steps.push((last, r.gen_range(-2..=2)));
        }
        return GroupoidWord::new(steps).unwrap();
    }
}

/// Local triangles `(z, e, a)` of the whole configuration.
pub fn local_triangles(cfg: &AdmissibleConfig) -> Vec<(usize, usize, usize)> {
    let m = cfg.size();
    let mut out = Vec::new();
    for z in 0..m {
        for e in 0..m {
            for a in 0..m {
                if z != e && e != a && z != a && is_local_triangle(cfg, z, e, a).unwrap() {
                    out.push((z, e, a));
                }
            }
        }
    }
    out
}

/// The relator `s(z,e) ε(e)^μ s(e,a) ε(a)^μ' s(a,z) ε(z)^μ''` that the
/// local-triangle relation declares trivial, as a loop at `z`.
pub fn triangle_relator(cfg: &AdmissibleConfig, z: usize, e: usize, a: usize) -> GroupoidWord {
    GroupoidWord::new(vec![
        (z, 0),
        (e, mu(cfg, z, e, a) as i64),
        (a, mu(cfg, e, a, z) as i64),
        (z, mu(cfg, a, z, e) as i64),
    ])
    .unwrap()
}

/// Applies one random relation rewrite; the result represents the same morphism.
/// `tris` are the local triangles of `cfg`.
pub fn rewrite_once<R: Rng>(
    r: &mut R,
    cfg: &AdmissibleConfig,
    tris: &[(usize, usize, usize)],
    w: &GroupoidWord,
) -> GroupoidWord {
    let m = cfg.size();
    let mut s = w.steps().to_vec();
    for _ in 0..20 {
        match r.gen_range(0..4) {
            // insert a backtrack z -> y -> z
            0 if m >= 2 => {
                let i = r.gen_range(0..s.len());
                let (z, mz) = s[i];
                let mut y = r.gen_range(0..m - 1);
                if y >= z {
                    y += 1;
                }
                let split = r.gen_range(-2..=2);
                s.splice(i..=i, [(z, split), (y, 0), (z, mz - split)]);
                return GroupoidWord::new(s).unwrap();
            }
            // cancel a backtrack
            1 => {
                let cands: Vec<usize> =
                    (1..s.len().saturating_sub(1)).filter(|&i| s[i].1 == 0 && s[i - 1].0 == s[i + 1].0).collect();
                if let Some(&i) = cands.get(r.gen_range(0..cands.len().max(1))) {
                    let merged = (s[i - 1].0, s[i - 1].1 + s[i + 1].1);
                    s.splice(i - 1..=i + 1, [merged]);
                    return GroupoidWord::new(s).unwrap();
                }
            }
            // replace a line z-a by the detour through e
            2 if s.len() >= 2 => {
                let i = r.gen_range(0..s.len() - 1);
                let (z, a) = (s[i].0, s[i + 1].0);
                let es: Vec<usize> = tris.iter().filter(|t| t.0 == z && t.2 == a).map(|t| t.1).collect();
                if es.is_empty() {
                    continue;
                }
                let e = es[r.gen_range(0..es.len())];
                s[i].1 += mu(cfg, a, z, e) as i64;
                s[i + 1].1 += mu(cfg, e, a, z) as i64;
                s.insert(i + 1, (e, mu(cfg, z, e, a) as i64));
                return GroupoidWord::new(s).unwrap();
            }
            // contract a detour z-e-a into the line z-a
            3 if s.len() >= 3 => {
                let i = r.gen_range(0..s.len() - 2);
                let (z, e, a) = (s[i].0, s[i + 1].0, s[i + 2].0);
                if !tris.contains(&(z, e, a)) || s[i + 1].1 != mu(cfg, z, e, a) as i64 {
                    continue;
                }
                s[i].1 -= mu(cfg, a, z, e) as i64;
                s[i + 2].1 -= mu(cfg, e, a, z) as i64;
                s.remove(i + 1);
                return GroupoidWord::new(s).unwrap();
            }
            _ => {}
        }
    }
    w.clone()
}

pub fn random_braid<R: Rng>(r: &mut R, m: usize, len: usize, framed: bool) -> BraidWord {
    let letters = (0..len)
        .map(|_| {
            let l = if framed && r.gen_bool(0.3) || m < 2 {
                BraidLetter::epsilon(r.gen_range(1..=m))
            } else {
                BraidLetter::sigma(r.gen_range(2..=m))
            };
            if r.gen_bool(0.5) {
                l.inverse()
            } else {
                l
            }
        })
        .collect();
    BraidWord::new(m, letters).unwrap()
}

pub fn random_free_word<R: Rng>(r: &mut R, m: usize, len: usize) -> FreeWord {
    FreeWord::from_letters((0..len).map(|_| (r.gen_range(1..=m), if r.gen_bool(0.5) { 1 } else { -1 })))
}

/// Traces the loop `c_i^{-1} · s(z_i, z_j) · c_j` as an explicit polyline
/// and reads off ray crossings. Turns are replaced by walks along small
/// axis-parallel squares around the points.
pub fn traced_line_anchor(fan: &FanConfiguration, i: usize, j: usize) -> FreeWord {
    let cfg = fan.config();
    let m = cfg.size();
    let b = fan.basepoint();
    let ray = |k: usize| cfg.point(k).sub(b);

    // every point stays far from every ray line and every segment line
    let mut lines: Vec<(RationalPoint, RationalPoint)> = (0..m).map(|k| (b.clone(), ray(k))).collect();
    for p in 0..m {
        for q in 0..m {
            if p != q {
                lines.push((cfg.point(p).clone(), cfg.point(q).sub(cfg.point(p))));
            }
        }
    }
    let mut min_d2: Option<Rat> = None;
    for k in 0..m {
        for (o, d) in &lines {
            let c = cross(d, &cfg.point(k).sub(o));
            if c.is_zero() {
                continue;
            }
            let d2 = &c * &c / (&d.x * &d.x + &d.y * &d.y);
            if min_d2.as_ref().is_none_or(|x| d2 < *x) {
                min_d2 = Some(d2);
            }
        }
    }
    let mut delta = Rat::from_integer(1.into());
    let bound = min_d2.unwrap_or_else(|| Rat::from_integer(1.into()));
    while Rat::from_integer(64.into()) * &delta * &delta >= bound {
        delta /= Rat::from_integer(2.into());
    }

    let on_square = |z: &RationalPoint, v: &RationalPoint| -> RationalPoint {
        let n = if v.x.abs() > v.y.abs() { v.x.abs() } else { v.y.abs() };
        z.add(&v.scale(&(&delta / n)))
    };
    let corners = |z: &RationalPoint| -> [RationalPoint; 4] {
        let d = &delta;
        [
            z.add(&RationalPoint::new(d.clone(), d.clone())),
            z.add(&RationalPoint::new(-d.clone(), d.clone())),
            z.add(&RationalPoint::new(-d.clone(), -d.clone())),
            z.add(&RationalPoint::new(d.clone(), -d.clone())),
        ]
    };
    // square perimeter position in [0, 8): counterclockwise starting at the right edge midpoint
    let param = |z: &RationalPoint, p: &RationalPoint| -> Rat {
        let v = p.sub(z);
        let t = |x: &Rat| x / &delta;
        if v.x == delta && !v.y.is_negative() {
            t(&v.y)
        } else if v.y == delta {
            Rat::from_integer(2.into()) - t(&v.x)
        } else if v.x == -delta.clone() {
            Rat::from_integer(4.into()) - t(&v.y)
        } else if v.y == -delta.clone() {
            Rat::from_integer(6.into()) + t(&v.x)
        } else {
            Rat::from_integer(8.into()) + t(&v.y)
        }
    };
    let corner_params = [1i64, 3, 5, 7];
    let walk = |z: &RationalPoint, a: &RationalPoint, c: &RationalPoint, ccw: bool, out: &mut Vec<RationalPoint>| {
        let pa = on_square(z, a);
        let pc = on_square(z, c);
        let (ta, mut tc) = (param(z, &pa), param(z, &pc));
        let eight = Rat::from_integer(8.into());
        out.push(pa.clone());
        let cs = corners(z);
        if ta == tc {
            return;
        }
        if ccw {
            if tc <= ta {
                tc += &eight;
            }
            let mut cps: Vec<(Rat, usize)> = Vec::new();
            for (n, &cp) in corner_params.iter().enumerate() {
                for shift in [0i64, 8] {
                    let x = Rat::from_integer((cp + shift).into());
                    if x > ta && x < tc {
                        cps.push((x, n));
                    }
                }
            }
            cps.sort();
            out.extend(cps.into_iter().map(|(_, n)| cs[n].clone()));
        } else {
            let mut ta = ta;
            if ta <= tc {
                ta += &eight;
            }
            let mut cps: Vec<(Rat, usize)> = Vec::new();
            for (n, &cp) in corner_params.iter().enumerate() {
                for shift in [0i64, 8] {
                    let x = Rat::from_integer((cp + shift).into());
                    if x > tc && x < ta {
                        cps.push((x, n));
                    }
                }
            }
            cps.sort();
            cps.reverse();
            out.extend(cps.into_iter().map(|(_, n)| cs[n].clone()));
        }
        out.push(pc);
    };

    let (zi, zj) = (cfg.point(i), cfg.point(j));
    let uj = b.sub(zj);
    let ui = b.sub(zi);
    let mut path = vec![b.clone()];
    walk(zj, &uj, cfg.tangent(j), true, &mut path);
    walk(zj, cfg.tangent(j), &zi.sub(zj), false, &mut path);
    walk(zi, &zj.sub(zi), cfg.tangent(i), true, &mut path);
    walk(zi, cfg.tangent(i), &ui, false, &mut path);
    path.push(b.clone());

    let mut letters = Vec::new();
    for seg in path.windows(2) {
        let (p, q) = (&seg[0], &seg[1]);
        let mut hits: Vec<(Rat, usize, i64)> = Vec::new();
        for k in 0..m {
            let zk = cfg.point(k);
            let d = ray(k);
            let side = |x: &RationalPoint| !cross(&d, &x.sub(zk)).is_negative();
            let (sp, sq) = (side(p), side(q));
            if sp == sq {
                continue;
            }
            let pq = q.sub(p);
            let den = cross(&pq, &d);
            let w = zk.sub(p);
            let t = cross(&w, &d) / &den;
            let s = cross(&w, &pq) / &den;
            if s.is_positive() {
                hits.push((t, k, if sq { 1 } else { -1 }));
            }
        }
        hits.sort();
        letters.extend(hits.into_iter().map(|(_, k, e)| (k + 1, e)));
    }
    FreeWord::from_letters(letters.into_iter().rev())
}
