//! Scripted demonstrations of lists whose realizability does not carry over
//! to every Jordan structure.
//!
//! `{l1, l1, l2, l2}` with `l1 > 0 > l2 >= -l1` and `l1 + 2 l2 < 0` is only
//! realized by reducible matrices `[[B, 0], [C, D]]` with `B`, `D`
//! irreducible of spectrum `{l1, l2}`. The minimal polynomial of the form
//! `diag(l1, l1) + J2(l2)` is `(x - l1)(x - l2)^2`; evaluating it at such a
//! matrix leaves `-l2 (CB + DC) + DCB + l2^2 C` in the lower-left block,
//! a sum of nonnegative terms that vanishes only when `C = 0`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family5::{diagonalizable_realization, make_point, region_member, D1Choice, Family};
use crate::jcfcert::weyr_sequence;
use crate::matrix::RationalMatrix;
use crate::scalar::{int, Rational};
use crate::spectrum::Spectrum;
use crate::Error;

/// `l1 > 0 > l2 >= -l1` and `l1 + 2 l2 < 0`.
pub fn lemma_hypothesis(l1: &Rational, l2: &Rational) -> bool {
    let zero = int(0);
    *l1 > zero && *l2 < zero && *l2 >= -l1.clone() && l1 + int(2) * l2 < zero
}

/// One sampled realization `[[B, 0], [C, D]]`, possibly permuted.
#[derive(Clone, Debug)]
pub struct BlockSample {
    pub b: RationalMatrix,
    pub c: RationalMatrix,
    pub d: RationalMatrix,
    pub matrix: RationalMatrix,
    pub weyr_l1: Vec<usize>,
    pub weyr_l2: Vec<usize>,
}

impl BlockSample {
    /// The structure `diag(l1, l1) + J2(l2)`.
    pub fn is_forbidden_form(&self) -> bool {
        self.weyr_l1 == [2] && self.weyr_l2 == [1, 2]
    }
}

#[derive(Clone, Debug, Default)]
pub struct ObstructionReport {
    pub trials: usize,
    /// Samples with `C = 0`.
    pub zero_coupling: usize,
    /// Samples whose Weyr sequence at `l2` is `(2)`.
    pub weyr_two_at_l2: usize,
    /// Samples with a 2x2 block at `l2`, of any structure at `l1`.
    pub jordan_block_at_l2: usize,
    /// Samples with the structure `diag(l1, l1) + J2(l2)`.
    pub forbidden: usize,
    /// Samples where the minimal-polynomial block vanished with `C != 0`.
    pub algebra_violations: usize,
}

fn rand_positive(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(1..=20).into(), rng.gen_range(1..=10).into())
}

/// Irreducible nonnegative 2x2 matrix with spectrum `{l1, l2}`.
fn random_pair_block(l1: &Rational, l2: &Rational, rng: &mut ChaCha8Rng) -> RationalMatrix {
    let trace = l1 + l2;
    let zero = int(0);
    let (a, d) = if trace > zero {
        let s = Rational::new(rng.gen_range(0..=8).into(), 8.into());
        (&trace * &s, &trace * (int(1) - s))
    } else {
        (zero.clone(), trace)
    };
    // ad - xy = l1 l2 with l1 l2 < 0
    let x = rand_positive(rng);
    let y = (&a * &d - l1 * l2) / &x;
    RationalMatrix::from_rows(vec![vec![a, x], vec![y, d]]).expect("2x2")
}

fn random_coupling(rng: &mut ChaCha8Rng) -> RationalMatrix {
    // a quarter of the draws are zero, the rest have random support
    if rng.gen_range(0..4) == 0 {
        return RationalMatrix::zeros(2, 2);
    }
    loop {
        let c = RationalMatrix::from_fn(2, 2, |_, _| if rng.gen_bool(0.6) { rand_positive(rng) } else { int(0) });
        if !c.is_zero() {
            return c;
        }
    }
}

/// `-l2 (CB + DC) + DCB + l2^2 C`.
pub fn forced_block(b: &RationalMatrix, c: &RationalMatrix, d: &RationalMatrix, l2: &Rational) -> RationalMatrix {
    let cb = c * b;
    let dc = d * c;
    let dcb = &dc * b;
    let l2sq = l2 * l2;
    RationalMatrix::from_fn(2, 2, |i, j| {
        -l2 * (&cb[(i, j)] + &dc[(i, j)]) + &dcb[(i, j)] + &l2sq * &c[(i, j)]
    })
}

/// Lower-left block of `(A - l1 I)(A - l2 I)^2` for `A = [[B, 0], [C, D]]`.
pub fn minimal_poly_block(a: &RationalMatrix, l1: &Rational, l2: &Rational) -> RationalMatrix {
    let x = a.shift(l1);
    let y = a.shift(l2);
    let p = &(&x * &y) * &y;
    p.block(2, 4, 0, 2)
}

pub fn sample_block_realization(l1: &Rational, l2: &Rational, rng: &mut ChaCha8Rng) -> Result<BlockSample, Error> {
    let b = random_pair_block(l1, l2, rng);
    let d = random_pair_block(l1, l2, rng);
    let c = random_coupling(rng);
    let mut a = RationalMatrix::zeros(4, 4);
    a.set_block(0, 0, &b);
    a.set_block(2, 0, &c);
    a.set_block(2, 2, &d);
    let mut perm = [0usize, 1, 2, 3];
    for i in (1..4).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let matrix = a.permuted(&perm);
    Ok(BlockSample {
        weyr_l1: weyr_sequence(&matrix, l1)?,
        weyr_l2: weyr_sequence(&matrix, l2)?,
        b,
        c,
        d,
        matrix,
    })
}

/// Randomized search over reducible nonnegative realizations of
/// `{l1, l1, l2, l2}` for the structure `diag(l1, l1) + J2(l2)`. Each sample
/// also checks that the minimal-polynomial block equals [`forced_block`]
/// and vanishes exactly when `C = 0`.
pub fn obstruction_check(l1: &Rational, l2: &Rational, trials: usize, seed: u64) -> Result<ObstructionReport, Error> {
    if !lemma_hypothesis(l1, l2) {
        return Err(Error::Domain(format!(
            "need l1 > 0 > l2 >= -l1 and l1 + 2 l2 < 0, got l1 = {l1}, l2 = {l2}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ObstructionReport {
        trials,
        ..Default::default()
    };
    for _ in 0..trials {
        let s = sample_block_realization(l1, l2, &mut rng)?;
        let mut unpermuted = RationalMatrix::zeros(4, 4);
        unpermuted.set_block(0, 0, &s.b);
        unpermuted.set_block(2, 0, &s.c);
        unpermuted.set_block(2, 2, &s.d);
        let block = minimal_poly_block(&unpermuted, l1, l2);
        let forced = forced_block(&s.b, &s.c, &s.d, l2);
        if block != forced || block.is_zero() != s.c.is_zero() {
            report.algebra_violations += 1;
        }
        report.zero_coupling += usize::from(s.c.is_zero());
        report.weyr_two_at_l2 += usize::from(s.weyr_l2 == [2]);
        report.jordan_block_at_l2 += usize::from(s.weyr_l2 == [1, 2]);
        report.forbidden += usize::from(s.is_forbidden_form());
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct Demonstration {
    pub title: String,
    pub lines: Vec<String>,
    pub passed: bool,
}

/// The three demonstrations: the collapse of a diagonalizably realizable
/// point onto the `pm` family, the union `{1,-1} + {1,-1}`, and the forced
/// vanishing of the coupling block on sampled instances.
pub fn obstruction_witness_families(trials: usize, seed: u64) -> Result<Vec<Demonstration>, Error> {
    Ok(vec![
        collapse_demo()?,
        union_demo(trials, seed)?,
        forced_zero_demo(seed)?,
    ])
}

fn collapse_demo() -> Result<Demonstration, Error> {
    let (t0, t) = (int(1), Rational::new(4.into(), 5.into()));
    let mut lines = Vec::new();
    let point = make_point(Family::TT0, &t0, &t)?;
    let real = diagonalizable_realization(&point, &D1Choice::Auto)?;
    lines.push(format!(
        "start: {} at t0 = {t0}, t = {t}, diagonalizable realization certificate: {}",
        point.list,
        real.certificate.verdict()
    ));
    // eps = t0 added to the largest value and taken from -2 + t0
    let mut values = Family::TT0.template(&t0, &t);
    values[0] += &t0;
    values[2] -= &t0;
    let perturbed = Spectrum::new(values);
    let collapsed = make_point(Family::PmT, &int(0), &t)?;
    lines.push(format!(
        "perturb by eps = t0 = {t0}: {perturbed}, the pm list at t = {t}"
    ));
    let flags = region_member(Family::PmT, &int(0), &t)?;
    lines.push(format!(
        "collapsed list: realizable {}, symmetric flag (t >= 1) {}",
        collapsed.torre().realizable(),
        flags.symmetric
    ));
    let blocked = diagonalizable_realization(&collapsed, &D1Choice::Auto);
    let blocked_ok = matches!(blocked, Err(Error::ConstructionUnavailable(_)));
    lines.push(match &blocked {
        Err(e) => format!("diagonalizable construction: {e}"),
        Ok(_) => "diagonalizable construction unexpectedly succeeded".into(),
    });
    lines.push(
        "cited fact: the list {3+t, 3-t, -2, -2, -2} is diagonalizably realizable only for t >= 1, \
         so the perturbed list is not universally realizable"
            .into(),
    );
    Ok(Demonstration {
        title: "perturbation of a universally realizable list".into(),
        passed: real.certificate.passed && !flags.symmetric && blocked_ok && collapsed.list == perturbed,
        lines,
    })
}

fn union_demo(trials: usize, seed: u64) -> Result<Demonstration, Error> {
    let (l1, l2) = (int(1), int(-1));
    let r = obstruction_check(&l1, &l2, trials, seed)?;
    let lines = vec![
        format!(
            "hypothesis l1 > 0 > l2 >= -l1, l1 + 2 l2 < 0: {}",
            lemma_hypothesis(&l1, &l2)
        ),
        format!("{} random realizations [[B,0],[C,D]] of {{1,1,-1,-1}}", r.trials),
        format!("C = 0 in {} samples", r.zero_coupling),
        format!("Weyr (2) at -1: {}", r.weyr_two_at_l2),
        format!(
            "2x2 block at -1 (always with a 2x2 block at 1): {}",
            r.jordan_block_at_l2
        ),
        format!("structure diag(1,1) + J2(-1): {}", r.forbidden),
    ];
    Ok(Demonstration {
        title: "union {1,-1} + {1,-1}".into(),
        passed: r.forbidden == 0 && r.algebra_violations == 0,
        lines,
    })
}

fn forced_zero_demo(seed: u64) -> Result<Demonstration, Error> {
    let (l1, l2) = (int(1), int(-1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut lines = Vec::new();
    let mut passed = true;
    let mut shown = 0;
    while shown < 3 {
        let s = sample_block_realization(&l1, &l2, &mut rng)?;
        if s.c.is_zero() {
            continue;
        }
        shown += 1;
        let forced = forced_block(&s.b, &s.c, &s.d, &l2);
        let mut a = RationalMatrix::zeros(4, 4);
        a.set_block(0, 0, &s.b);
        a.set_block(2, 0, &s.c);
        a.set_block(2, 2, &s.d);
        let block = minimal_poly_block(&a, &l1, &l2);
        passed &= block == forced && !forced.is_zero() && forced.is_nonnegative();
        lines.push(format!(
            "B = {:?}, C = {:?}, D = {:?}: -l2 (CB + DC) + DCB + l2^2 C = {:?}, nonzero",
            rows(&s.b),
            rows(&s.c),
            rows(&s.d),
            rows(&forced)
        ));
    }
    lines.push("a nonzero C leaves a nonzero block, so the minimal polynomial (x-1)(x+1)^2 needs C = 0".into());
    Ok(Demonstration {
        title: "forced vanishing of the coupling".into(),
        lines,
        passed,
    })
}

fn rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypothesis_arithmetic() {
        assert!(lemma_hypothesis(&int(1), &int(-1)));
        assert!(!lemma_hypothesis(&int(3), &int(-1)));
    }

    #[test]
    fn no_forbidden_structure_in_small_search() {
        let r = obstruction_check(&int(1), &int(-1), 300, 1).unwrap();
        assert_eq!(r.forbidden, 0);
        assert_eq!(r.algebra_violations, 0);
        assert_eq!(r.weyr_two_at_l2 + r.jordan_block_at_l2, r.trials);
    }

    #[test]
    fn demonstrations_pass() {
        for d in obstruction_witness_families(200, 3).unwrap() {
            assert!(d.passed, "{}: {:?}", d.title, d.lines);
        }
    }
}
