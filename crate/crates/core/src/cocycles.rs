//! The monomial (Picard–Lefschetz) cocycle, the Magnus cocycle built from
//! Fox derivatives, and their Laurent reductions.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{
    reduce_multivariate, reduce_univariate, BraidLetter, BraidWord, FreeWord, GroupRingElt, Laurent, LetterKind,
    MultiLaurent,
};
use crate::braid::braid_permutation;
use crate::error::{Error, Result};
use crate::matrices::{MonomialGammaMatrix, RingMatrix};

fn single(m: usize, l: BraidLetter) -> BraidWord {
    BraidWord { m, letters: vec![l] }
}

/// Cocycle value on a positive generator.
fn positive_letter_value(m: usize, kind: LetterKind) -> MonomialGammaMatrix {
    let mut perm: Vec<usize> = (0..m).collect();
    let mut entries = vec![FreeWord::identity(); m];
    match kind {
        LetterKind::Sigma(k) => {
            // columns k-1, k (1-based) swap; column k-1 carries g_{k-1}^{-1}
            perm.swap(k - 2, k - 1);
            entries[k - 2] = FreeWord::gen_pow(k - 1, -1);
        }
        LetterKind::Epsilon(i) => entries[i - 1] = FreeWord::gen(i),
    }
    MonomialGammaMatrix::new(perm, entries).expect("generator value is monomial")
}

/// Cocycle value on a single letter. Inverse letters use
/// `S(l^{-1}) = (l^{-1})_* S(l)^{-1}`.
pub fn pl_letter(m: usize, l: BraidLetter) -> MonomialGammaMatrix {
    let pos = positive_letter_value(m, l.kind);
    if l.exp > 0 {
        pos
    } else {
        pos.invert().act(&single(m, l))
    }
}

/// The monomial cocycle, by `S(l w) = S(l) * l_* S(w)`.
pub fn pl_cocycle(sigma: &BraidWord) -> Result<MonomialGammaMatrix> {
    sigma.validate()?;
    let m = sigma.m;
    let mut s = MonomialGammaMatrix::identity(m);
    for &l in sigma.letters.iter().rev() {
        s = pl_letter(m, l).compose(&s.act(&single(m, l)));
    }
    Ok(s)
}

/// Checks `S(l) * l_* S(l^{-1}) = 1` for every generator on `m` strands.
pub fn verify_letter_inverses(m: usize) -> Result<()> {
    let mut letters: Vec<BraidLetter> = (2..=m).map(BraidLetter::sigma).collect();
    letters.extend((1..=m).map(BraidLetter::epsilon));
    for l in letters {
        for l in [l, l.inverse()] {
            let prod = pl_letter(m, l).compose(&pl_letter(m, l.inverse()).act(&single(m, l)));
            if !prod.is_identity() {
                return Err(Error::Internal(format!("cocycle value of {l} is not inverted by its inverse letter")));
            }
        }
    }
    Ok(())
}

/// `S_c(tau)^{-1} S_c(sigma) sigma_* S_c(tau)`, the cocycle value for the
/// configuration transported by `tau`.
pub fn coboundary_transport(sigma: &BraidWord, tau: &BraidWord) -> Result<MonomialGammaMatrix> {
    if sigma.m != tau.m {
        return Err(Error::Size(format!("braids on {} and {} strands", sigma.m, tau.m)));
    }
    let st = pl_cocycle(tau)?;
    Ok(st.invert().compose(&pl_cocycle(sigma)?).compose(&st.act(sigma)))
}

/// Fox derivative `d a / d g_i`.
pub fn fox_derivative(a: &FreeWord, i: usize) -> GroupRingElt {
    let mut out = GroupRingElt::zero();
    let mut prefix = FreeWord::identity();
    for &(j, e) in a.letters() {
        if j == i {
            if e > 0 {
                for k in 0..e {
                    out.add_term(&prefix * &FreeWord::gen_pow(i, k), BigInt::one());
                }
            } else {
                for k in 1..=-e {
                    out.add_term(&prefix * &FreeWord::gen_pow(i, -k), -BigInt::one());
                }
            }
        }
        prefix = &prefix * &FreeWord::gen_pow(j, e);
    }
    out
}

/// Magnus cocycle: entry `(i, j)` is the bar of `d(sigma_* g_j)/d g_i`.
pub fn magnus_cocycle(sigma: &BraidWord) -> Result<RingMatrix<GroupRingElt>> {
    sigma.validate()?;
    if sigma.has_epsilon() {
        return Err(Error::Invalid("the Magnus cocycle is defined on words without framing letters".into()));
    }
    let images = sigma.generator_images();
    let m = sigma.m;
    Ok(RingMatrix::from_fn(m, |i, j| fox_derivative(&images[j], i + 1).involute()))
}

/// Applies the braid automorphism to every entry of a group-ring matrix.
pub fn act_on_matrix(sigma: &BraidWord, a: &RingMatrix<GroupRingElt>) -> RingMatrix<GroupRingElt> {
    let images = sigma.generator_images();
    a.map(|x| x.map_words(|w| w.substitute(&images)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rep {
    Burau,
    Tym,
    TymFramed,
    Gassner,
    Linking,
}

impl std::str::FromStr for Rep {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "burau" => Rep::Burau,
            "tym" => Rep::Tym,
            "tym-framed" | "tym_framed" => Rep::TymFramed,
            "gassner" => Rep::Gassner,
            "linking" => Rep::Linking,
            _ => return Err(Error::Parse(format!("unknown representation {s:?}"))),
        })
    }
}

/// A matrix over one of the two Laurent rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaurentMatrix {
    Uni(RingMatrix<Laurent>),
    Multi(RingMatrix<MultiLaurent>),
}

impl LaurentMatrix {
    pub fn string_rows(&self) -> Vec<Vec<String>> {
        fn go<R: crate::matrices::Ring>(a: &RingMatrix<R>) -> Vec<Vec<String>> {
            a.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
        }
        match self {
            LaurentMatrix::Uni(a) => go(a),
            LaurentMatrix::Multi(a) => go(a),
        }
    }
}

pub fn reduce_reps(sigma: &BraidWord, rep: Rep) -> Result<LaurentMatrix> {
    let needs_pure = matches!(rep, Rep::Gassner | Rep::Linking);
    let no_eps = !matches!(rep, Rep::TymFramed);
    if no_eps && sigma.has_epsilon() {
        return Err(Error::Invalid(format!("{rep:?} takes braid words without framing letters")));
    }
    if needs_pure && !braid_permutation(sigma).1 {
        return Err(Error::Invalid(format!("{rep:?} takes pure braid words")));
    }
    Ok(match rep {
        Rep::Burau => LaurentMatrix::Uni(magnus_cocycle(sigma)?.map(reduce_univariate)),
        Rep::Gassner => LaurentMatrix::Multi(magnus_cocycle(sigma)?.map(reduce_multivariate)),
        Rep::Tym | Rep::TymFramed => LaurentMatrix::Uni(pl_cocycle(sigma)?.to_dense().map(reduce_univariate)),
        Rep::Linking => LaurentMatrix::Multi(pl_cocycle(sigma)?.to_dense().map(reduce_multivariate)),
    })
}

/// Equality in the framed braid group, decided by comparing cocycle values.
pub fn braid_equal(w1: &BraidWord, w2: &BraidWord) -> Result<bool> {
    if w1.m != w2.m {
        return Err(Error::Size(format!("braids on {} and {} strands", w1.m, w2.m)));
    }
    Ok(pl_cocycle(w1)? == pl_cocycle(w2)?)
}
