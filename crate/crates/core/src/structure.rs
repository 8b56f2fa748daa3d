//! Digraph structure of nonnegative matrices: strongly connected classes,
//! Frobenius normal form and Perron vectors.

use std::ops::Range;

use crate::matrix::{FloatMatrix, Matrix};
use crate::scalar::Scalar;
use crate::Error;

/// Default residual tolerance for [`perron_data`].
pub const PERRON_TOL: f64 = 1e-10;
/// Default iteration cap for [`perron_data`].
pub const PERRON_MAX_ITER: usize = 200_000;

/// Role of a diagonal block in the normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// Holds the spectral radius of the whole matrix.
    Perron,
    /// Has a nonzero coupling row into earlier blocks.
    Chained,
    /// Has a zero coupling row.
    Isolated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusForm<T> {
    /// Position `i` of the normal form holds original index `permutation[i]`.
    pub permutation: Vec<usize>,
    pub block_boundaries: Vec<Range<usize>>,
    pub diag_blocks: Vec<Matrix<T>>,
    pub kinds: Vec<BlockKind>,
    /// The permuted matrix.
    pub permuted: Matrix<T>,
    pub is_block_lower_triangular: bool,
}

impl<T: Scalar> FrobeniusForm<T> {
    pub fn block_count(&self) -> usize {
        self.block_boundaries.len()
    }

    /// Block `(i, j)` of the permuted matrix.
    pub fn coupling(&self, i: usize, j: usize) -> Matrix<T> {
        let (r, c) = (&self.block_boundaries[i], &self.block_boundaries[j]);
        self.permuted.block(r.start, r.end, c.start, c.end)
    }

    /// Undoes the permutation.
    pub fn unpermute(&self, m: &Matrix<T>) -> Matrix<T> {
        let n = self.permutation.len();
        let mut inverse = vec![0; n];
        for (i, &p) in self.permutation.iter().enumerate() {
            inverse[p] = i;
        }
        m.permuted(&inverse)
    }
}

fn check_nonnegative<T: Scalar>(a: &Matrix<T>) -> Result<usize, Error> {
    let n = a.ensure_square()?;
    if let Some((i, j, v)) = a.first_negative() {
        return Err(Error::Domain(format!("entry ({i}, {j}) = {v} is negative")));
    }
    Ok(n)
}

/// Strongly connected classes of the digraph `i -> j iff a_ij > 0`. Each
/// class is sorted, and classes are ordered by their smallest index.
pub fn strong_components<T: Scalar>(a: &Matrix<T>) -> Vec<Vec<usize>> {
    struct Tarjan<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }
    impl Tarjan<'_> {
        fn visit(&mut self, v: usize) {
            self.index[v] = Some(self.next);
            self.low[v] = self.next;
            self.next += 1;
            self.stack.push(v);
            self.on_stack[v] = true;
            for &w in &self.adj[v] {
                match self.index[w] {
                    None => {
                        self.visit(w);
                        self.low[v] = self.low[v].min(self.low[w]);
                    }
                    Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                    Some(_) => {}
                }
            }
            if Some(self.low[v]) == self.index[v] {
                let mut class = Vec::new();
                while let Some(w) = self.stack.pop() {
                    self.on_stack[w] = false;
                    class.push(w);
                    if w == v {
                        break;
                    }
                }
                class.sort_unstable();
                self.out.push(class);
            }
        }
    }

    let n = a.rows();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| a[(i, j)].is_positive_strict()).collect())
        .collect();
    let mut t = Tarjan {
        adj: &adj,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if t.index[v].is_none() {
            t.visit(v);
        }
    }
    let mut out = t.out;
    out.sort_by_key(|c| c[0]);
    out
}

/// Strong connectivity of the digraph of `a`. A 1x1 matrix counts as
/// irreducible, including `[0]`.
pub fn is_irreducible<T: Scalar>(a: &Matrix<T>) -> Result<bool, Error> {
    let n = check_nonnegative(a)?;
    Ok(n <= 1 || strong_components(a).len() == 1)
}

/// Frobenius normal form with the class of largest (estimated) spectral
/// radius placed as early as the block structure allows.
pub fn frobenius_normal_form<T: Scalar>(a: &Matrix<T>) -> Result<FrobeniusForm<T>, Error> {
    check_nonnegative(a)?;
    let classes = strong_components(a);
    let mut best: Option<(usize, f64)> = None;
    for (k, class) in classes.iter().enumerate() {
        let rho = class_radius(&a.principal(class).map(Scalar::to_f64))?;
        if best.is_none_or(|(_, r)| rho > r + 1e-9) {
            best = Some((k, rho));
        }
    }
    order_classes(a, classes, best.map(|(k, _)| k))
}

/// Frobenius normal form with a caller-chosen Perron class: the class that
/// contains original index `perron_member`.
pub fn frobenius_normal_form_with<T: Scalar>(a: &Matrix<T>, perron_member: usize) -> Result<FrobeniusForm<T>, Error> {
    check_nonnegative(a)?;
    let classes = strong_components(a);
    let k = classes.iter().position(|c| c.contains(&perron_member));
    if k.is_none() {
        return Err(Error::Dimension(format!("index {perron_member} out of range")));
    }
    order_classes(a, classes, k)
}

/// Block lower triangular form in plain topological order, without
/// estimating spectral radii. Every block is tagged chained or isolated.
pub fn topological_form<T: Scalar>(a: &Matrix<T>) -> Result<FrobeniusForm<T>, Error> {
    check_nonnegative(a)?;
    order_classes(a, strong_components(a), None)
}

fn class_radius(block: &FloatMatrix) -> Result<f64, Error> {
    if block.rows() == 1 {
        return Ok(block[(0, 0)]);
    }
    Ok(perron_data(block, PERRON_TOL, PERRON_MAX_ITER)?.0)
}

/// Orders classes topologically so that every class only points to earlier
/// ones. Among available classes the Perron class wins, then chained
/// classes, then isolated ones; ties go to the smallest original index.
fn order_classes<T: Scalar>(
    a: &Matrix<T>,
    classes: Vec<Vec<usize>>,
    perron: Option<usize>,
) -> Result<FrobeniusForm<T>, Error> {
    let n = a.rows();
    let mut class_of = vec![0; n];
    for (k, c) in classes.iter().enumerate() {
        for &i in c {
            class_of[i] = k;
        }
    }
    let m = classes.len();
    // targets[k]: classes that class k points to
    let mut targets = vec![Vec::new(); m];
    for i in 0..n {
        for j in 0..n {
            let (ci, cj) = (class_of[i], class_of[j]);
            if ci != cj && a[(i, j)].is_positive_strict() && !targets[ci].contains(&cj) {
                targets[ci].push(cj);
            }
        }
    }
    let kind = |k: usize| {
        if Some(k) == perron {
            BlockKind::Perron
        } else if targets[k].is_empty() {
            BlockKind::Isolated
        } else {
            BlockKind::Chained
        }
    };
    let rank = |k: usize| match kind(k) {
        BlockKind::Perron => 0,
        BlockKind::Chained => 1,
        BlockKind::Isolated => 2,
    };
    let mut placed = vec![false; m];
    let mut order = Vec::with_capacity(m);
    while order.len() < m {
        let next = (0..m)
            .filter(|&k| !placed[k] && targets[k].iter().all(|&t| placed[t]))
            .min_by_key(|&k| (rank(k), classes[k][0]))
            .expect("class graph is acyclic");
        placed[next] = true;
        order.push(next);
    }

    let mut permutation = Vec::with_capacity(n);
    let mut block_boundaries = Vec::with_capacity(m);
    for &k in &order {
        let start = permutation.len();
        permutation.extend_from_slice(&classes[k]);
        block_boundaries.push(start..permutation.len());
    }
    let permuted = a.permuted(&permutation);
    let diag_blocks = block_boundaries
        .iter()
        .map(|r| permuted.block(r.start, r.end, r.start, r.end))
        .collect();
    let is_block_lower_triangular = block_boundaries.iter().enumerate().all(|(bi, r)| {
        block_boundaries[bi + 1..]
            .iter()
            .all(|later| permuted.block(r.start, r.end, later.start, later.end).is_zero())
    });
    Ok(FrobeniusForm {
        permutation,
        block_boundaries,
        diag_blocks,
        kinds: order.iter().map(|&k| kind(k)).collect(),
        permuted,
        is_block_lower_triangular,
    })
}

/// Spectral radius and positive right Perron vector (max entry 1) of an
/// irreducible nonnegative matrix, by power iteration on `A + I`.
pub fn perron_data(a: &FloatMatrix, tol: f64, max_iter: usize) -> Result<(f64, Vec<f64>), Error> {
    let n = check_nonnegative(a)?;
    if n == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    if !is_irreducible(a)? {
        return Err(Error::Domain("power iteration needs an irreducible matrix".into()));
    }
    let mut x = vec![1.0; n];
    for _ in 0..max_iter {
        let ax = a.mul_vec(&x);
        let rho = ax.iter().cloned().fold(f64::MIN, f64::max);
        let residual = ax
            .iter()
            .zip(&x)
            .map(|(y, xi)| (y - rho * xi).abs())
            .fold(0.0, f64::max);
        if residual <= tol {
            return Ok((rho, x));
        }
        let shifted: Vec<f64> = ax.iter().zip(&x).map(|(y, xi)| y + xi).collect();
        let top = shifted.iter().cloned().fold(f64::MIN, f64::max);
        x = shifted.iter().map(|v| v / top).collect();
    }
    Err(Error::Iteration(format!(
        "no convergence to {tol:e} after {max_iter} steps"
    )))
}

/// [`perron_data`] for the transpose: a positive left Perron vector.
pub fn left_perron_data(a: &FloatMatrix, tol: f64, max_iter: usize) -> Result<(f64, Vec<f64>), Error> {
    perron_data(&a.transpose(), tol, max_iter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::char_poly;
    use crate::matrix::RationalMatrix;
    use crate::scalar::{int, Rational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rm(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&rm(&[&[0, 2], &[2, 0]])).unwrap());
        assert!(!is_irreducible(&rm(&[&[1, 0], &[1, 1]])).unwrap());
        assert!(is_irreducible(&rm(&[&[0]])).unwrap());
        assert!(matches!(
            is_irreducible(&rm(&[&[0, -1], &[1, 0]])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn already_lower_form_is_kept() {
        let a = rm(&[&[2, 0, 0], &[1, 1, 1], &[0, 1, 1]]);
        let f = frobenius_normal_form(&a).unwrap();
        assert_eq!(f.permutation, vec![0, 1, 2]);
        assert_eq!(f.block_boundaries, vec![0..1, 1..3]);
        assert_eq!(f.kinds, vec![BlockKind::Perron, BlockKind::Chained]);
        assert!(f.is_block_lower_triangular);
    }

    #[test]
    fn upper_form_is_flipped() {
        // [[A2, A3'], [0, A1]] with A1 = [3]
        let a = rm(&[&[1, 1, 1], &[1, 0, 1], &[0, 0, 3]]);
        let f = frobenius_normal_form(&a).unwrap();
        assert_eq!(f.permutation, vec![2, 0, 1]);
        assert_eq!(f.block_boundaries, vec![0..1, 1..3]);
        assert!(f.is_block_lower_triangular);
        assert_eq!(f.unpermute(&f.permuted), a);
    }

    #[test]
    fn planted_classes_are_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let sizes = [1usize, 2, 3];
            let mut lower = RationalMatrix::zeros(6, 6);
            let mut start = 0;
            for &s in &sizes {
                for i in start..start + s {
                    for j in start..start + s {
                        // cycle plus random extras keeps each block irreducible
                        let on_cycle = s > 1 && j == start + (i - start + 1) % s;
                        if on_cycle || rng.gen_bool(0.3) {
                            lower[(i, j)] = int(rng.gen_range(1..5));
                        }
                    }
                }
                for i in start..start + s {
                    for j in 0..start {
                        if rng.gen_bool(0.5) {
                            lower[(i, j)] = int(rng.gen_range(1..5));
                        }
                    }
                }
                start += s;
            }
            let mut perm: Vec<usize> = (0..6).collect();
            for i in (1..6).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let scrambled = lower.permuted(&perm);
            let f = frobenius_normal_form(&scrambled).unwrap();
            assert!(f.is_block_lower_triangular);
            assert_eq!(f.unpermute(&f.permuted), scrambled);
            let mut got: Vec<Vec<usize>> = f
                .block_boundaries
                .iter()
                .map(|r| {
                    let mut v: Vec<usize> = f.permutation[r.clone()].iter().map(|&p| perm[p]).collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            got.sort();
            assert_eq!(got, vec![vec![0], vec![1, 2], vec![3, 4, 5]]);
            for b in &f.diag_blocks {
                assert!(is_irreducible(b).unwrap());
            }
        }
    }

    #[test]
    fn perron_of_swap_pattern() {
        let a = FloatMatrix::from_rows(vec![vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap();
        let (rho, v) = perron_data(&a, 1e-12, 1000).unwrap();
        assert!((rho - 2.0).abs() < 1e-12);
        assert_eq!(v, vec![1.0, 1.0]);
        let (_, z) = left_perron_data(&a, 1e-12, 1000).unwrap();
        assert_eq!(z, vec![1.0, 1.0]);
    }

    #[test]
    fn perron_rejects_reducible() {
        let a = FloatMatrix::from_rows(vec![vec![2.0, 0.0, 0.0], vec![0.0, 2.0, 0.0], vec![2.0, 0.0, 1.0]]).unwrap();
        assert!(matches!(perron_data(&a, 1e-12, 100), Err(Error::Domain(_))));
    }

    #[test]
    fn perron_matches_bisected_char_poly_root() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = RationalMatrix::from_fn(4, 4, |_, _| {
                Rational::new(rng.gen_range(1..20).into(), rng.gen_range(1..6).into())
            });
            let p = char_poly(&a).unwrap();
            let bound = a.row_sums().iter().map(Scalar::to_f64).fold(0.0, f64::max) + 1.0;
            let roots = p.real_roots_in(-bound, bound, 4000, 1e-13);
            let largest = roots.iter().cloned().fold(f64::MIN, f64::max);
            let (rho, v) = perron_data(&a.to_float(), 1e-11, 100_000).unwrap();
            assert!((rho - largest).abs() <= 1e-9, "{rho} vs {largest}");
            assert!(v.iter().all(|&x| x > 0.0));
            let (rho_l, z) = left_perron_data(&a.to_float(), 1e-11, 100_000).unwrap();
            assert!((rho_l - rho).abs() < 1e-9);
            let za = a.to_float().vec_mul(&z);
            for (l, r) in za.iter().zip(&z) {
                assert!((l / rho - r).abs() < 1e-9);
            }
        }
    }
}
