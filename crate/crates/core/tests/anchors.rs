mod common;

use braidco::algebra::FreeWord;
use braidco::geometry::RationalPoint;
use braidco::groupoid::{chi_evaluate, GroupoidWord};
use braidco::monodromy::{ParityClass, Rho};
use braidco::reconstruct::{anchor_word, build_fan_config, forward_q, hop_words, reconstruct_n};
use common::*;
use rand::Rng;

#[test]
fn line_anchors_match_traced_polylines() {
    let mut r = rng(11);
    for trial in 0..30 {
        let m = r.gen_range(2..=6);
        let fan = random_fan(&mut r, m, ParityClass::new(1), trial % 2 == 1);
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let got = anchor_word(&fan, &GroupoidWord::line(i, j).unwrap()).unwrap().word;
                assert_eq!(got, traced_line_anchor(&fan, i, j), "line {i}-{j} of {fan:?}");
            }
        }
    }
}

#[test]
fn relators_have_trivial_anchors() {
    let mut r = rng(12);
    for trial in 0..60 {
        let m = r.gen_range(2..=6);
        let parity = random_parity(&mut r);
        let fan = random_fan(&mut r, m, parity, trial % 3 == 0);
        let cfg = fan.config();
        for z in 0..m {
            for y in 0..m {
                if z != y {
                    let w = GroupoidWord::new(vec![(z, 0), (y, 0), (z, 0)]).unwrap();
                    assert!(anchor_word(&fan, &w).unwrap().word.is_identity());
                }
            }
        }
        for (z, e, a) in local_triangles(cfg) {
            let w = triangle_relator(cfg, z, e, a);
            let got = anchor_word(&fan, &w).unwrap().word;
            assert!(got.is_identity(), "triangle ({z},{e},{a}) gives {got}");
        }
    }
}

#[test]
fn anchor_is_functorial() {
    let mut r = rng(13);
    for _ in 0..100 {
        let m = r.gen_range(2..=5);
        let free = r.gen_bool(0.5);
        let fan = random_fan(&mut r, m, ParityClass::new(0), free);
        let (lu, lv) = (r.gen_range(0..4), r.gen_range(0..4));
        let u = random_gword(&mut r, m, lu, None);
        let v = loop {
            let v = random_gword(&mut r, m, lv, None);
            if v.target() == u.source() {
                break v;
            }
        };
        let uv = u.compose(&v).unwrap();
        let lhs = anchor_word(&fan, &uv).unwrap().word;
        let rhs = &anchor_word(&fan, &u).unwrap().word * &anchor_word(&fan, &v).unwrap().word;
        assert_eq!(lhs, rhs);
        let inv = anchor_word(&fan, &u.inverse()).unwrap().word;
        assert_eq!(inv, anchor_word(&fan, &u).unwrap().word.inverse());
    }
}

#[test]
fn twist_anchor_is_generator() {
    let mut r = rng(14);
    let fan = random_fan(&mut r, 4, ParityClass::new(2), true);
    for i in 0..4 {
        assert_eq!(anchor_word(&fan, &GroupoidWord::twist(i, 1)).unwrap().word, FreeWord::gen(i + 1));
    }
}

#[test]
fn hop_example() {
    let pts = vec![RationalPoint::from_ints(-2, 4), RationalPoint::from_ints(2, 4)];
    let fan = build_fan_config(pts, RationalPoint::from_ints(0, -1), ParityClass::new(1), None).unwrap();
    assert_eq!(fan.order(), &[0, 1]);
    let traced = traced_line_anchor(&fan, 0, 1);
    assert_eq!(traced, FreeWord::gen(1));
    let hops = hop_words(&fan).unwrap();
    assert_eq!(hops, vec![GroupoidWord::parse("1:-1,2:0").unwrap()]);
}

#[test]
fn hops_telescope() {
    let mut r = rng(15);
    for _ in 0..40 {
        let m = r.gen_range(2..=6);
        let (parity, free) = (random_parity(&mut r), r.gen_bool(0.5));
        let fan = random_fan(&mut r, m, parity, free);
        let hops = hop_words(&fan).unwrap();
        let mut path = hops[0].clone();
        for h in &hops {
            assert!(anchor_word(&fan, h).unwrap().word.is_identity());
        }
        for h in &hops[1..] {
            path = path.compose(h).unwrap();
        }
        assert_eq!((path.target(), path.source()), (0, m - 1));
    }
}

#[test]
fn chi_matches_anchored_character() {
    let mut r = rng(16);
    for trial in 0..40 {
        let m = r.gen_range(2..=5);
        let parity = random_parity(&mut r);
        let fan = random_fan(&mut r, m, parity, trial % 2 == 1);
        let n = random_n(&mut r, m, parity, 4);
        let q = forward_q(&fan, &n).unwrap();
        let rho = Rho::new(&n);
        for _ in 0..30 {
            let len = r.gen_range(0..5);
            let w = random_gword(&mut r, m, len, None);
            let a = anchor_word(&fan, &w).unwrap();
            let want = rho.character(&a.word).unwrap().get(a.target, a.source).clone();
            assert_eq!(chi_evaluate(fan.config(), &q, &w).unwrap(), want, "word {w}");
        }
        assert_eq!(reconstruct_n(&fan, &q).unwrap(), n);
    }
}
