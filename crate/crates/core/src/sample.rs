//! Seeded random instances for property checks and sweeps.

use rand::Rng;

use crate::matrix::RationalMatrix;
use crate::scalar::{int, Rational};
use crate::spectrum::JordanSpec;

fn small_positive<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=4).into())
}

/// Irreducible nonnegative `k x k` block with every row summing to `r > 0`.
/// Blocks of size at most 2 have rational spectra.
pub fn irreducible_block<R: Rng>(rng: &mut R, k: usize, r: &Rational) -> RationalMatrix {
    if k == 1 {
        return RationalMatrix::from_rows(vec![vec![r.clone()]]).expect("1x1");
    }
    // a k-cycle keeps the pattern irreducible
    let mut w = RationalMatrix::zeros(k, k);
    for i in 0..k {
        w[(i, (i + 1) % k)] = small_positive(rng);
        for j in 0..k {
            if j != (i + 1) % k && rng.gen_bool(0.35) {
                w[(i, j)] = small_positive(rng);
            }
        }
    }
    let sums = w.row_sums();
    RationalMatrix::from_fn(k, k, |i, j| &w[(i, j)] * r / &sums[i])
}

/// Nonnegative `n x n` matrix with a simple rational Perron root, built from
/// irreducible classes with constant row sums, random couplings below the
/// diagonal, and a random permutation. Classes below the Perron root may
/// share radii, which produces nontrivial Jordan structure.
pub fn class_matrix<R: Rng>(rng: &mut R, n: usize, small_classes: bool) -> RationalMatrix {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let cap = if small_classes { left.min(2) } else { left.min(4) };
        let k = rng.gen_range(1..=cap);
        sizes.push(k);
        left -= k;
    }
    let m = sizes.len();
    let perron = rng.gen_range(0..m);
    let top = int(rng.gen_range(3..=6));
    // radii below the top drawn from a short list so that repeats happen
    let pool = [
        int(1),
        int(2),
        Rational::new(1.into(), 2.into()),
        Rational::new(5.into(), 2.into()),
    ];
    let radii: Vec<Rational> = (0..m)
        .map(|c| {
            if c == perron {
                top.clone()
            } else {
                pool[rng.gen_range(0..pool.len())].clone()
            }
        })
        .collect();
    let mut starts = vec![0];
    for k in &sizes {
        starts.push(starts.last().unwrap() + k);
    }
    let mut a = RationalMatrix::zeros(n, n);
    for c in 0..m {
        let block = irreducible_block(rng, sizes[c], &radii[c]);
        a.set_block(starts[c], starts[c], &block);
        for d in 0..c {
            if rng.gen_bool(0.5) {
                for i in starts[c]..starts[c + 1] {
                    for j in starts[d]..starts[d + 1] {
                        if rng.gen_bool(0.4) {
                            a[(i, j)] = small_positive(rng);
                        }
                    }
                }
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    a.permuted(&perm)
}

/// Random Jordan structure on at most `n_max` rows with small integer and
/// half-integer eigenvalues.
pub fn jordan_structure<R: Rng>(rng: &mut R, n_max: usize) -> JordanSpec {
    let n = rng.gen_range(1..=n_max);
    let mut blocks: Vec<(Rational, Vec<usize>)> = Vec::new();
    let mut left = n;
    while left > 0 {
        let value = Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=2).into());
        let size = rng.gen_range(1..=left.min(3));
        left -= size;
        match blocks.iter_mut().find(|(v, _)| *v == value) {
            Some((_, s)) => s.push(size),
            None => blocks.push((value, vec![size])),
        }
    }
    JordanSpec::new(blocks)
}

/// The upper-triangular Jordan matrix of `j`, blocks in increasing order.
pub fn jordan_matrix(j: &JordanSpec) -> RationalMatrix {
    let n = j.spectrum().order();
    let mut m = RationalMatrix::zeros(n, n);
    let mut at = 0;
    let mut entries: Vec<(&Rational, &[usize])> = j.iter().collect();
    entries.sort_by(|a, b| a.0.cmp(b.0));
    for (v, sizes) in entries {
        for &s in sizes {
            for k in 0..s {
                m[(at + k, at + k)] = v.clone();
                if k + 1 < s {
                    m[(at + k, at + k + 1)] = int(1);
                }
            }
            at += s;
        }
    }
    m
}

/// Random invertible rational matrix with small entries, with its inverse.
pub fn invertible<R: Rng>(rng: &mut R, n: usize) -> (RationalMatrix, RationalMatrix) {
    loop {
        let s = RationalMatrix::from_fn(n, n, |_, _| {
            if rng.gen_bool(0.6) {
                Rational::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into())
            } else {
                int(0)
            }
        });
        if let Some(inv) = s.inverse() {
            return (s, inv);
        }
    }
}

/// `S J S^{-1}` for a random invertible `S`.
pub fn planted<R: Rng>(rng: &mut R, j: &JordanSpec) -> RationalMatrix {
    let jm = jordan_matrix(j);
    let (s, inv) = invertible(rng, jm.rows());
    &(&s * &jm) * &inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jcfcert::jordan_spec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn blocks_have_the_requested_row_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = irreducible_block(&mut rng, 4, &int(3));
        assert!(b.row_sums().iter().all(|s| *s == int(3)));
        assert!(crate::structure::is_irreducible(&b).unwrap());
    }

    #[test]
    fn planted_structure_is_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let j = JordanSpec::new([(int(2), vec![2, 1]), (int(-1), vec![1])]);
        let a = planted(&mut rng, &j);
        assert_eq!(jordan_spec(&a, &j.spectrum()).unwrap(), j);
    }
}
