//! Randomized consistency checks, run at small sizes from the command line.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BraidLetter, BraidWord, FreeWord, GroupRingElt, MultiLaurent};
use crate::braid::linking_numbers;
use crate::cocycles::{act_on_matrix, fox_derivative, magnus_cocycle, pl_cocycle, reduce_reps, LaurentMatrix, Rep};
use crate::error::Result;
use crate::geometry::RationalPoint;
use crate::groupoid::{Evaluator, GroupoidWord};
use crate::matrices::{IntMatrix, RingMatrix};
use crate::monodromy::{act_on_n, cover, theorem_b_s, validate_n, IntersectionMatrix, ParityClass};
use crate::reconstruct::{build_fan_config, forward_q, reconstruct_n};

/// Random word with fewer than `max_len` letters.
fn braid<R: Rng>(r: &mut R, m: usize, max_len: usize, framed: bool) -> BraidWord {
    let len = r.gen_range(0..max_len);
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
    BraidWord { m, letters }
}

fn intersection<R: Rng>(r: &mut R, m: usize, p: ParityClass) -> IntersectionMatrix {
    let mut a = IntMatrix::zero(m);
    for i in 0..m {
        a.set(i, i, BigInt::from(p.diag()));
        for j in i + 1..m {
            let x = r.gen_range(-5..=5);
            a.set(i, j, BigInt::from(x));
            a.set(j, i, BigInt::from(p.sgn() * x));
        }
    }
    validate_n(p, a).expect("constructed in sN_m")
}

fn cocycle_laws<R: Rng>(r: &mut R, rounds: usize) -> Result<bool> {
    for _ in 0..rounds {
        let m = r.gen_range(2..=4);
        let (s, t) = (braid(r, m, 5, true), braid(r, m, 5, true));
        let st = s.concat(&t);
        if pl_cocycle(&st)? != pl_cocycle(&s)?.compose(&pl_cocycle(&t)?.act(&s)) {
            return Ok(false);
        }
        let p = ParityClass::new(r.gen_range(0..4));
        let n = intersection(r, m, p);
        let lhs = theorem_b_s(&st, &n)?;
        let rhs = theorem_b_s(&s, &n)?.mul(&theorem_b_s(&t, &act_on_n(&s, &n)?)?);
        if lhs != rhs {
            return Ok(false);
        }
        let (s, t) = (braid(r, m, 4, false), braid(r, m, 4, false));
        let st = s.concat(&t);
        if magnus_cocycle(&st)? != magnus_cocycle(&s)?.mul(&act_on_matrix(&s, &magnus_cocycle(&t)?)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn fox_formula<R: Rng>(r: &mut R, rounds: usize) -> bool {
    (0..rounds).all(|_| {
        let m = r.gen_range(1..=4);
        let len = r.gen_range(0..12);
        let a = FreeWord::from_letters((0..len).map(|_| (r.gen_range(1..=m), if r.gen_bool(0.5) { 1 } else { -1 })));
        let mut sum = GroupRingElt::zero();
        for i in 1..=m {
            let gi = &GroupRingElt::from_word(FreeWord::gen(i)) - &GroupRingElt::one();
            sum = &sum + &(&fox_derivative(&a, i) * &gi);
        }
        sum == &GroupRingElt::from_word(a) - &GroupRingElt::one()
    })
}

fn linking<R: Rng>(r: &mut R, rounds: usize) -> Result<bool> {
    let mut done = 0;
    while done < rounds {
        let m = r.gen_range(2..=4);
        let w = braid(r, m, 8, false);
        let Ok(lk) = linking_numbers(&w) else { continue };
        done += 1;
        let LaurentMatrix::Multi(a) = reduce_reps(&w, Rep::Linking)? else { return Ok(false) };
        let want = RingMatrix::from_fn(m, |i, j| {
            if i != j {
                return MultiLaurent::from_int(0);
            }
            let mut e = vec![0; m];
            for (k, x) in e.iter_mut().enumerate() {
                if k != i {
                    *x = -lk.get(i, k);
                }
            }
            MultiLaurent::monomial(e, 1.into())
        });
        if a != want {
            return Ok(false);
        }
    }
    Ok(true)
}

fn roundtrip<R: Rng>(r: &mut R, rounds: usize) -> Result<bool> {
    let mut done = 0;
    while done < rounds {
        let m = r.gen_range(1..=4);
        let mut pt = || RationalPoint::from_ints(r.gen_range(-9..=9), r.gen_range(-9..=9));
        let pts: Vec<RationalPoint> = (0..m).map(|_| pt()).collect();
        let base = pt();
        let p = ParityClass::new(r.gen_range(0..4));
        let Ok(fan) = build_fan_config(pts, base, p, None) else { continue };
        done += 1;
        let n = intersection(r, m, p);
        let q = forward_q(&fan, &n)?;
        if reconstruct_n(&fan, &q)? != n {
            return Ok(false);
        }
        if m >= 2 {
            // order independence of the evaluator
            let w = GroupoidWord::new(vec![(0, 1), (1, -1), (0, 2), (1, 0)])?;
            let a = Evaluator::new(fan.config(), &q).eval(&w)?;
            let b = Evaluator::randomized(fan.config(), &q, r.gen()).eval(&w)?;
            if a != b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Named pass/fail results; `rounds` scales the number of random samples.
pub fn run_selftest(seed: u64, rounds: usize) -> Result<Vec<(String, bool)>> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![
        ("cocycle laws".to_string(), cocycle_laws(&mut r, rounds)?),
        ("fox fundamental formula".to_string(), fox_formula(&mut r, rounds)),
        ("linking reduction".to_string(), linking(&mut r, rounds)?),
        ("reconstruction roundtrip".to_string(), roundtrip(&mut r, rounds)?),
    ];
    out.extend(cover::checks().into_iter().map(|(name, ok)| (format!("cover: {name}"), ok)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes() {
        for (name, ok) in run_selftest(7, 5).unwrap() {
            assert!(ok, "{name}");
        }
    }
}
