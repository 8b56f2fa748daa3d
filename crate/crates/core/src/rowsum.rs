//! Similarity of a nonnegative matrix with a simple Perron root to a
//! nonnegative matrix with constant row sums.
//!
//! The reduction works block by block on the Frobenius normal form. The
//! Perron class goes first and is scaled by its Perron vector; every later
//! class is then folded into the accumulated leading block, either by the
//! eigenvector lift (coupling nonnegative and nonzero) or by first creating a
//! coupling with a shear (coupling zero). Each step is an explicit `n x n`
//! similarity recorded in the transcript.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::char_poly;
use crate::matrix::{FloatMatrix, Matrix, RationalMatrix};
use crate::scalar::{best_rational, Rational, Scalar};
use crate::structure::{
    frobenius_normal_form_with, left_perron_data, perron_data, strong_components, topological_form, PERRON_MAX_ITER,
    PERRON_TOL,
};
use crate::Error;

/// Float-mode tolerance for row sums and the similarity identity.
pub const FLOAT_TOL: f64 = 1e-9;

/// Cap on candidate supports tried when repairing a mixed-sign coupling.
const REPAIR_SEARCH_LIMIT: usize = 200_000;

/// Transposing similarities tried before a mixed-sign coupling is declared
/// irreparable.
const TRANSPOSE_ATTEMPTS: usize = 8;
const FLIP_LIMIT: u64 = 128;
// Relative singular value cutoff for float kernels.
const FLOAT_KERNEL_TOL: f64 = 1e-9;
// Float entries this small (relative to lambda1) are set to zero.
const FLOAT_CHOP: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "exact" => Ok(Self::Exact),
            "float" => Ok(Self::Float),
            other => Err(Error::Parse(format!(
                "unknown mode {other:?} (expected exact or float)"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::Float => "float",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Permutation,
    /// Similarity `T` with `T^{-1} M T = M^T` on a leading block.
    Transpose,
    DiagonalScaling,
    /// Shear that turns a mixed-sign coupling into a nonnegative one.
    CouplingRepair,
    /// Similarity `diag(Y, I)` with `Y` commuting with the folded leading
    /// block; only the couplings into that block change.
    CommutantMix,
    Lemma2Coupling,
    Lemma1Lift,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Permutation => "permutation",
            Self::Transpose => "transpose",
            Self::DiagonalScaling => "diagonal_scaling",
            Self::CouplingRepair => "coupling_repair",
            Self::CommutantMix => "commutant_mix",
            Self::Lemma2Coupling => "lemma2_coupling",
            Self::Lemma1Lift => "lemma1_lift",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step<T> {
    pub kind: StepKind,
    /// Indices of the normal-form blocks involved.
    pub blocks: Vec<usize>,
    pub note: String,
    /// `n x n` similarity factor.
    pub factor: Matrix<T>,
    inverse: Matrix<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RowSumResult<T> {
    pub b: Matrix<T>,
    /// `S^{-1} A S = B`.
    pub s: Matrix<T>,
    pub lambda1: T,
    pub transcript: Vec<Step<T>>,
    pub warnings: Vec<String>,
}

impl<T: Scalar> RowSumResult<T> {
    /// Product of the transcript factors in order; equals `s`.
    pub fn composed_similarity(&self) -> Matrix<T> {
        let n = self.b.rows();
        self.transcript
            .iter()
            .fold(Matrix::identity(n), |acc, step| &acc * &step.factor)
    }
}

/// Positive eigenvector data of one irreducible diagonal block.
#[derive(Clone, Debug)]
pub enum ClassRadius<T> {
    /// Spectral radius with a positive right Perron vector (max entry 1).
    Known { rho: T, vector: Vec<T> },
    /// Radius not representable in the scalar type; float estimate only.
    Approx(f64),
}

impl<T: Scalar> ClassRadius<T> {
    fn estimate(&self) -> f64 {
        match self {
            Self::Known { rho, .. } => rho.to_f64(),
            Self::Approx(r) => *r,
        }
    }
}

/// Scalar-specific pieces of the reduction.
pub trait FoldScalar: Scalar {
    fn class_radius(block: &Matrix<Self>) -> Result<ClassRadius<Self>, Error>;

    /// Positive left Perron vector (max entry 1) of an irreducible block
    /// whose spectral radius is `rho`.
    fn left_perron(block: &Matrix<Self>, rho: &Self) -> Result<Vec<Self>, Error>;

    /// Algebraic multiplicity of `lambda` in the whole matrix, when it can
    /// be decided exactly.
    fn exact_multiplicity(a: &Matrix<Self>, lambda: &Self) -> Option<usize>;

    /// `a == b` up to the mode tolerance, relative to `scale`.
    fn close(a: &Self, b: &Self, scale: f64) -> bool;

    /// Basis of the right kernel.
    fn kernel(m: &Matrix<Self>) -> Vec<Vec<Self>>;

    /// Some solution of `m x = rhs`, if the system is consistent.
    fn solve_any(m: &Matrix<Self>, rhs: &[Self]) -> Option<Vec<Self>>;

    /// Replaces entries that are zero up to rounding by exact zeros.
    fn chop(_m: &mut Matrix<Self>, _scale: f64) {}
}

impl FoldScalar for Rational {
    fn class_radius(block: &RationalMatrix) -> Result<ClassRadius<Rational>, Error> {
        if block.rows() == 1 {
            return Ok(ClassRadius::Known {
                rho: block[(0, 0)].clone(),
                vector: vec![Rational::from_i64(1)],
            });
        }
        let (estimate, _) = perron_data(&block.to_float(), PERRON_TOL, PERRON_MAX_ITER)?;
        let mut tried = Vec::new();
        for max_den in [1u64, 10, 100, 1_000, 10_000, 100_000, 1_000_000] {
            let Some(r) = best_rational(estimate, max_den) else {
                continue;
            };
            if tried.contains(&r) || (r.to_f64() - estimate).abs() > 1e-6 * estimate.abs().max(1.0) {
                continue;
            }
            if let [v] = block.shift(&r).nullspace().as_slice() {
                if let Some(vector) = normalize_positive(v) {
                    return Ok(ClassRadius::Known { rho: r, vector });
                }
            }
            tried.push(r);
        }
        Ok(ClassRadius::Approx(estimate))
    }

    fn left_perron(block: &RationalMatrix, rho: &Rational) -> Result<Vec<Rational>, Error> {
        match block.transpose().shift(rho).nullspace().as_slice() {
            [v] => normalize_positive(v),
            _ => None,
        }
        .ok_or_else(|| Error::InvariantViolation("left Perron vector is not positive".into()))
    }

    fn exact_multiplicity(a: &RationalMatrix, lambda: &Rational) -> Option<usize> {
        char_poly(a).ok().map(|p| p.root_multiplicity(lambda))
    }

    fn close(a: &Rational, b: &Rational, _scale: f64) -> bool {
        a == b
    }

    fn kernel(m: &RationalMatrix) -> Vec<Vec<Rational>> {
        m.nullspace()
    }

    fn solve_any(m: &RationalMatrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
        m.solve_any(rhs)
    }
}

impl FoldScalar for f64 {
    fn class_radius(block: &FloatMatrix) -> Result<ClassRadius<f64>, Error> {
        if block.rows() == 1 {
            return Ok(ClassRadius::Known {
                rho: block[(0, 0)],
                vector: vec![1.0],
            });
        }
        let (rho, vector) = perron_data(block, PERRON_TOL, PERRON_MAX_ITER)?;
        Ok(ClassRadius::Known { rho, vector })
    }

    fn left_perron(block: &FloatMatrix, _rho: &f64) -> Result<Vec<f64>, Error> {
        if block.rows() == 1 {
            return Ok(vec![1.0]);
        }
        Ok(left_perron_data(block, PERRON_TOL, PERRON_MAX_ITER)?.1)
    }

    fn exact_multiplicity(_a: &FloatMatrix, _lambda: &f64) -> Option<usize> {
        None
    }

    fn close(a: &f64, b: &f64, scale: f64) -> bool {
        (a - b).abs() <= FLOAT_TOL * scale.max(1.0)
    }

    fn kernel(m: &FloatMatrix) -> Vec<Vec<f64>> {
        let (rows, cols) = (m.rows(), m.cols());
        if cols == 0 {
            return Vec::new();
        }
        // Pad to at least square so the SVD returns all right singular vectors.
        let mut dm = nalgebra::DMatrix::<f64>::zeros(rows.max(cols), cols);
        for i in 0..rows {
            for j in 0..cols {
                dm[(i, j)] = m[(i, j)];
            }
        }
        let svd = dm.svd(false, true);
        let v_t = svd.v_t.expect("requested V^T");
        let top = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let threshold = FLOAT_KERNEL_TOL * top.max(1.0);
        (0..cols)
            .filter(|&k| svd.singular_values[k] <= threshold)
            .map(|k| v_t.row(k).iter().copied().collect())
            .collect()
    }

    fn solve_any(m: &FloatMatrix, rhs: &[f64]) -> Option<Vec<f64>> {
        let (rows, cols) = (m.rows(), m.cols());
        let dm = nalgebra::DMatrix::from_row_slice(rows, cols, m.entries());
        let svd = dm.clone().svd(true, true);
        let top = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let b = nalgebra::DVector::from_column_slice(rhs);
        let x = svd.solve(&b, FLOAT_KERNEL_TOL * top.max(1.0)).ok()?;
        let residual = (&dm * &x - &b).amax();
        (residual <= FLOAT_TOL * b.amax().max(1.0)).then(|| x.iter().copied().collect())
    }

    fn chop(m: &mut FloatMatrix, scale: f64) {
        let cut = FLOAT_CHOP * scale.max(1.0);
        *m = m.map(|x| if x.abs() <= cut { 0.0 } else { *x });
    }
}

/// Scales a vector whose entries share one strict sign to positive entries
/// with maximum 1.
fn normalize_positive<T: Scalar>(v: &[T]) -> Option<Vec<T>> {
    let v: Vec<T> = if v.iter().all(Scalar::is_negative_strict) {
        v.iter().map(|x| -x.clone()).collect()
    } else {
        v.to_vec()
    };
    if !v.iter().all(Scalar::is_positive_strict) {
        return None;
    }
    let top = v.iter().cloned().fold(T::zero(), |m, x| if x > m { x } else { m });
    Some(v.into_iter().map(|x| x / top.clone()).collect())
}

/// The common row sum, if every row sums to the same value.
pub fn constant_row_sum<T: FoldScalar>(m: &Matrix<T>) -> Option<T> {
    let sums = m.row_sums();
    let first = sums.first()?.clone();
    let scale = first.to_f64().abs();
    sums.iter().all(|s| T::close(s, &first, scale)).then_some(first)
}

fn ones<T: Scalar>(k: usize) -> Vec<T> {
    vec![T::one(); k]
}

/// Output of [`lemma1_lift`].
#[derive(Clone, Debug, PartialEq)]
pub struct Lift<T> {
    /// Positive eigenvector `[e; y]` of `[[A1, 0], [A3, A2]]` at `lambda1`.
    pub x: Vec<T>,
    /// `[[A1, 0], [Y^{-1} A3, Y^{-1} A2 Y]]`, in `CS_lambda1`.
    pub b: Matrix<T>,
}

/// Eigenvector lift: for `A1` with constant row sums `lambda1`, `A2` with
/// spectral radius below `lambda1` and `A3 >= 0` nonzero, the matrix
/// `[[A1, 0], [A3, A2]]` has the eigenvector `[e; y]` with
/// `y = (lambda1 I - A2)^{-1} A3 e > 0`, and scaling by it gives constant
/// row sums.
pub fn lemma1_lift<T: FoldScalar>(a1: &Matrix<T>, a2: &Matrix<T>, a3: &Matrix<T>) -> Result<Lift<T>, Error> {
    let k = a1.ensure_square()?;
    let m = a2.ensure_square()?;
    if (a3.rows(), a3.cols()) != (m, k) {
        return Err(Error::Dimension(format!(
            "A3 must be {m}x{k}, got {}x{}",
            a3.rows(),
            a3.cols()
        )));
    }
    let lambda1 = constant_row_sum(a1).ok_or_else(|| Error::Domain("A1 does not have constant row sums".into()))?;
    if let Some((i, j, v)) = a3.first_negative() {
        return Err(Error::Domain(format!("A3 entry ({i}, {j}) = {v} is negative")));
    }
    if a3.is_zero() {
        return Err(Error::Coupling(
            "A3 = 0; create a coupling with lemma2_coupling first".into(),
        ));
    }
    let gap = a2.scale(&-T::one()).shift(&-lambda1.clone());
    let dominated = gap
        .solve_vec(&ones(m))
        .is_some_and(|v| v.iter().all(Scalar::is_positive_strict));
    if !dominated {
        return Err(Error::SpectralDominance(format!(
            "spectral radius of A2 is not below lambda1 = {lambda1}"
        )));
    }
    let y = lift_vector(a2, &a3.mul_vec(&ones(k)), &lambda1)?;
    let mut x = ones(k);
    x.extend(y.iter().cloned());
    let d = Matrix::diagonal(&x);
    let d_inv = Matrix::diagonal(&x.iter().map(|v| T::one() / v.clone()).collect::<Vec<_>>());
    let mut whole = Matrix::zeros(k + m, k + m);
    whole.set_block(0, 0, a1);
    whole.set_block(k, 0, a3);
    whole.set_block(k, k, a2);
    Ok(Lift {
        x,
        b: &(&d_inv * &whole) * &d,
    })
}

/// `y = (lambda1 I - M)^{-1} f`, required to be strictly positive.
fn lift_vector<T: Scalar>(m: &Matrix<T>, f: &[T], lambda1: &T) -> Result<Vec<T>, Error> {
    let gap = m.scale(&-T::one()).shift(&-lambda1.clone());
    let y = gap
        .solve_vec(f)
        .ok_or_else(|| Error::SpectralDominance(format!("lambda1 = {lambda1} is an eigenvalue of the block")))?;
    if !y.iter().all(Scalar::is_positive_strict) {
        return Err(Error::InvariantViolation(format!(
            "lift vector is not positive: {}",
            y.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        )));
    }
    Ok(y)
}

/// Output of [`lemma2_coupling`].
#[derive(Clone, Debug, PartialEq)]
pub struct Coupling<T> {
    /// `[[I, 0], [-e z^T, I]]`.
    pub s: Matrix<T>,
    /// Coupling block `e z^T A1 - A2 e z^T = (lambda1 - rho) e z^T`.
    pub a3: Matrix<T>,
}

/// Coupling shear: with `A1` in `CS_lambda1`, `A2` in `CS_rho`, `rho <
/// lambda1` and `A1^T z = lambda1 z`, `S^{-1} diag(A1, A2) S = [[A1, 0],
/// [A3, A2]]` with every row of `A3` equal to `(lambda1 - rho) z^T`.
pub fn lemma2_coupling<T: FoldScalar>(a1: &Matrix<T>, a2: &Matrix<T>, z: &[T]) -> Result<Coupling<T>, Error> {
    let k = a1.ensure_square()?;
    let m = a2.ensure_square()?;
    if z.len() != k {
        return Err(Error::Dimension(format!("z has length {}, expected {k}", z.len())));
    }
    let lambda1 = constant_row_sum(a1).ok_or_else(|| Error::Domain("A1 does not have constant row sums".into()))?;
    let rho = constant_row_sum(a2).ok_or_else(|| Error::Domain("A2 does not have constant row sums".into()))?;
    if z.iter().any(Scalar::is_negative_strict) {
        return Err(Error::Domain("z has a negative entry".into()));
    }
    if z.iter().all(Scalar::is_negligible) {
        return Err(Error::Domain("z is zero".into()));
    }
    let scale = lambda1.to_f64().abs();
    let residual_ok = a1
        .transpose()
        .mul_vec(z)
        .iter()
        .zip(z)
        .all(|(l, zi)| T::close(l, &(lambda1.clone() * zi.clone()), scale));
    if !residual_ok {
        return Err(Error::Domain("z is not a left eigenvector of A1 at lambda1".into()));
    }
    if T::close(&lambda1, &rho, scale) {
        return Err(Error::Coupling(format!(
            "lambda1 = rho(A2) = {rho}: the coupling block would vanish"
        )));
    }
    if rho > lambda1 {
        return Err(Error::SpectralDominance(format!(
            "rho(A2) = {rho} exceeds lambda1 = {lambda1}"
        )));
    }
    let ez = Matrix::from_fn(m, k, |_, j| z[j].clone());
    let mut s = Matrix::identity(k + m);
    s.set_block(k, 0, &ez.scale(&-T::one()));
    let a3 = &(&ez * a1) - &(a2 * &ez);
    Ok(Coupling { s, a3 })
}

struct Folder<T> {
    cur: Matrix<T>,
    s: Matrix<T>,
    transcript: Vec<Step<T>>,
    scale: f64,
}

impl<T: FoldScalar> Folder<T> {
    fn apply(&mut self, kind: StepKind, blocks: Vec<usize>, note: String, factor: Matrix<T>, inverse: Matrix<T>) {
        self.cur = &(&inverse * &self.cur) * &factor;
        T::chop(&mut self.cur, self.scale);
        self.s = &self.s * &factor;
        self.transcript.push(Step {
            kind,
            blocks,
            note,
            factor,
            inverse,
        });
    }

    fn permute(&mut self, perm: &[usize], note: String) {
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return;
        }
        let p = Matrix::permutation(perm);
        let pt = p.transpose();
        self.apply(StepKind::Permutation, vec![], note, p, pt);
    }

    fn shear(&mut self, kind: StepKind, block: usize, rows: &Range<usize>, g: &Matrix<T>, note: String) {
        let n = self.cur.rows();
        let mut f = Matrix::identity(n);
        f.set_block(rows.start, 0, g);
        let mut inv = Matrix::identity(n);
        inv.set_block(rows.start, 0, &g.scale(&-T::one()));
        self.apply(kind, vec![block], note, f, inv);
    }

    fn scale(&mut self, kind: StepKind, blocks: Vec<usize>, d: &[T], note: String) {
        let inv: Vec<T> = d.iter().map(|x| T::one() / x.clone()).collect();
        self.apply(kind, blocks, note, Matrix::diagonal(d), Matrix::diagonal(&inv));
    }
}

fn fmt_vec<T: Scalar>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

/// Similarity to a nonnegative matrix with constant row sums, in exact
/// rational arithmetic. Requires a rational simple Perron root.
pub fn to_constant_row_sums(a: &RationalMatrix) -> Result<RowSumResult<Rational>, Error> {
    fold(a)
}

/// [`to_constant_row_sums`] in floating point, with tolerance 1e-9.
pub fn to_constant_row_sums_float(a: &FloatMatrix) -> Result<RowSumResult<f64>, Error> {
    let mut out = fold(a)?;
    out.warnings
        .insert(0, format!("float mode: identities hold to {FLOAT_TOL:e}, not exactly"));
    Ok(out)
}

fn fold<T: FoldScalar>(a: &Matrix<T>) -> Result<RowSumResult<T>, Error> {
    let n = a.ensure_square()?;
    if n == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    if let Some((i, j, v)) = a.first_negative() {
        return Err(Error::Domain(format!("entry ({i}, {j}) = {v} is negative")));
    }
    let mut warnings = Vec::new();

    // Perron class and simplicity.
    let classes = strong_components(a);
    let radii = classes
        .iter()
        .map(|c| T::class_radius(&a.principal(c)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut pc = 0;
    for (k, r) in radii.iter().enumerate() {
        if r.estimate() > radii[pc].estimate() {
            pc = k;
        }
    }
    let lambda1 = match &radii[pc] {
        ClassRadius::Known { rho, .. } => rho.clone(),
        ClassRadius::Approx(r) => {
            return Err(Error::Mode(format!(
                "the Perron root {r} is not rational; use float mode"
            )))
        }
    };
    let scale = lambda1.to_f64().abs();
    if let Some(mult) = T::exact_multiplicity(a, &lambda1) {
        if mult > 1 {
            return Err(Error::PerronNotSimple(format!(
                "lambda1 = {lambda1} has algebraic multiplicity {mult}"
            )));
        }
    }
    for (k, r) in radii.iter().enumerate() {
        if k == pc {
            continue;
        }
        let below = match r {
            ClassRadius::Known { rho, .. } => *rho < lambda1 && !T::close(rho, &lambda1, scale),
            ClassRadius::Approx(_) => {
                let gap = a.principal(&classes[k]).scale(&-T::one()).shift(&-lambda1.clone());
                gap.solve_vec(&ones(classes[k].len()))
                    .is_some_and(|v| v.iter().all(Scalar::is_positive_strict))
            }
        };
        if !below {
            return Err(Error::PerronNotSimple(format!(
                "classes {:?} and {:?} both reach lambda1 = {lambda1}",
                classes[pc], classes[k]
            )));
        }
    }

    let mut attempt = Attempt::default();
    let mut tries = 1usize;
    let folder = loop {
        let mut attempt_warnings = Vec::new();
        let outcome = fold_attempt(a, &classes, pc, &lambda1, attempt, &mut attempt_warnings).map_err(|f| {
            // Rounding can break any step in float mode; other attempts may avoid it.
            match f.error {
                Error::InvariantViolation(msg)
                | Error::Domain(msg)
                | Error::Coupling(msg)
                | Error::SpectralDominance(msg)
                    if !T::EXACT =>
                {
                    AttemptFailure {
                        error: Error::Unsupported(format!(
                            "float arithmetic lost accuracy ({msg}); exact mode may succeed"
                        )),
                        ..f
                    }
                }
                _ => f,
            }
        });
        match outcome {
            Ok(folder) => {
                warnings.extend(attempt_warnings);
                if tries > 1 {
                    warnings.push(format!(
                        "needed {tries} attempts (transposed sets, transposing draws and block \
                         orientations) before every coupling could be repaired"
                    ));
                }
                break folder;
            }
            Err(AttemptFailure {
                error: Error::Unsupported(msg),
                transposed,
                narrow_differs,
                blocks,
            }) => {
                let orientations = 1u64 << (blocks - 1).min(20);
                if attempt.flips + 1 < orientations.min(FLIP_LIMIT) {
                    attempt.flips += 1;
                } else if transposed && attempt.draw + 1 < TRANSPOSE_ATTEMPTS {
                    attempt.draw += 1;
                    attempt.flips = 0;
                } else if narrow_differs && !attempt.narrow {
                    attempt = Attempt {
                        narrow: true,
                        ..Attempt::default()
                    };
                } else {
                    return Err(Error::Unsupported(format!("{msg} (after {tries} attempts)")));
                }
                tries += 1;
            }
            Err(f) => return Err(f.error),
        }
    };

    let b = folder.cur;
    Ok(RowSumResult {
        b,
        s: folder.s,
        lambda1,
        transcript: folder.transcript,
        warnings,
    })
}

/// Choices that vary between runs of the fold.
#[derive(Clone, Copy, Debug, Default)]
struct Attempt {
    /// Transpose only the Perron class and its descendants.
    narrow: bool,
    /// Which transposing similarity to draw.
    draw: usize,
    /// Bit `k - 1` reverses the sign of block `k`.
    flips: u64,
}

struct AttemptFailure {
    error: Error,
    transposed: bool,
    narrow_differs: bool,
    blocks: usize,
}

fn fold_attempt<T: FoldScalar>(
    a: &Matrix<T>,
    classes: &[Vec<usize>],
    pc: usize,
    lambda1: &T,
    attempt: Attempt,
    warnings: &mut Vec<String>,
) -> Result<Folder<T>, AttemptFailure> {
    let flips = attempt.flips;
    let n = a.rows();
    let mut folder = Folder {
        cur: a.clone(),
        s: Matrix::identity(n),
        transcript: Vec::new(),
        scale: lambda1.to_f64().abs(),
    };
    let arranged = arrange(&mut folder, classes, pc, attempt).map_err(|error| AttemptFailure {
        error,
        transposed: false,
        narrow_differs: false,
        blocks: classes.len(),
    })?;
    let (blocks, transposed, narrow_differs) = (arranged.blocks, arranged.transposed, arranged.narrow_differs);
    let tag = |error: Error| AttemptFailure {
        error,
        transposed,
        narrow_differs,
        blocks: blocks.len(),
    };

    // Diagonal scaling of every block.
    let mut d = Vec::with_capacity(n);
    for (b, r) in blocks.iter().enumerate() {
        let block = folder.cur.block(r.start, r.end, r.start, r.end);
        match T::class_radius(&block).map_err(tag)? {
            ClassRadius::Known { vector, .. } => d.extend(vector),
            ClassRadius::Approx(est) => {
                let gap = block.scale(&-T::one()).shift(&-lambda1.clone());
                let v = gap
                    .solve_vec(&ones(r.len()))
                    .filter(|v| v.iter().all(Scalar::is_positive_strict))
                    .ok_or_else(|| tag(Error::InvariantViolation(format!("block {b} is not dominated"))))?;
                warnings.push(format!(
                    "block {b}: spectral radius {est:.6} is irrational; scaled by (lambda1 I - A_bb)^-1 e \
                     so its row sums stay below lambda1"
                ));
                d.extend(v);
            }
        }
    }
    folder.scale(
        StepKind::DiagonalScaling,
        (0..blocks.len()).collect(),
        &d,
        "scale each diagonal block by its Perron vector".into(),
    );
    if flips != 0 {
        let flipped: Vec<usize> = (1..blocks.len()).filter(|k| flips >> (k - 1) & 1 == 1).collect();
        let mut d = ones(n);
        for &k in &flipped {
            for i in blocks[k].clone() {
                d[i] = -T::one();
            }
        }
        folder.scale(
            StepKind::DiagonalScaling,
            flipped.clone(),
            &d,
            format!("reverse the orientation of blocks {flipped:?}"),
        );
    }

    // Fold every later block into the leading one.
    let p_range = blocks[0].clone();
    for (b, r) in blocks.iter().enumerate().skip(1) {
        let acc = 0..r.start;
        let coupling = folder.cur.block(r.start, r.end, acc.start, acc.end);
        if coupling.first_negative().is_some() {
            let bacc = folder.cur.block(0, acc.end, 0, acc.end);
            let m = folder.cur.block(r.start, r.end, r.start, r.end);
            let unsupported = |e| match e {
                Error::Unsupported(msg) => tag(Error::Unsupported(format!("block {b}: {msg}"))),
                other => tag(other),
            };
            let g = match repair_coupling(&bacc, &m, &coupling) {
                Ok(g) => g,
                Err(Error::Unsupported(_)) => {
                    let y = commutant_mix(&bacc, &m, &coupling).map_err(unsupported)?;
                    let y_inv = y.inverse().expect("commutant mix is invertible");
                    let mut f = Matrix::identity(n);
                    f.set_block(0, 0, &y);
                    let mut f_inv = Matrix::identity(n);
                    f_inv.set_block(0, 0, &y_inv);
                    folder.apply(
                        StepKind::CommutantMix,
                        (0..b).collect(),
                        format!("mix blocks 0..{b} through their commutant to unblock block {b}"),
                        f,
                        f_inv,
                    );
                    let coupling = folder.cur.block(r.start, r.end, acc.start, acc.end);
                    repair_coupling(&bacc, &m, &coupling).map_err(unsupported)?
                }
                Err(e) => return Err(tag(e)),
            };
            folder.shear(
                StepKind::CouplingRepair,
                b,
                r,
                &g,
                format!("shear block {b} so its coupling row becomes nonnegative"),
            );
        }
        let coupling = folder.cur.block(r.start, r.end, acc.start, acc.end);
        if coupling.is_zero() {
            let pblock = folder.cur.block(p_range.start, p_range.end, p_range.start, p_range.end);
            let zp = T::left_perron(&pblock, lambda1).map_err(tag)?;
            let mut z = zp;
            z.resize(acc.len(), T::zero());
            let g = Matrix::from_fn(r.len(), acc.len(), |_, j| -z[j].clone());
            folder.shear(
                StepKind::Lemma2Coupling,
                b,
                r,
                &g,
                format!("block {b} has no coupling; shear with z = {}", fmt_vec(&z)),
            );
        }
        let coupling = folder.cur.block(r.start, r.end, acc.start, acc.end);
        let m = folder.cur.block(r.start, r.end, r.start, r.end);
        let y = lift_vector(&m, &coupling.mul_vec(&ones(acc.len())), lambda1).map_err(tag)?;
        let mut d = ones(n);
        d[r.clone()].clone_from_slice(&y);
        folder.scale(
            StepKind::Lemma1Lift,
            vec![b],
            &d,
            format!("lift block {b} with y = {}", fmt_vec(&y)),
        );
    }

    verify(a, &folder, lambda1).map_err(tag)?;
    Ok(folder)
}

fn verify<T: FoldScalar>(a: &Matrix<T>, folder: &Folder<T>, lambda1: &T) -> Result<(), Error> {
    let scale = folder.scale;
    let b = &folder.cur;
    if let Some((i, j, v)) = b.first_negative() {
        return Err(Error::InvariantViolation(format!(
            "B has negative entry ({i}, {j}) = {v}"
        )));
    }
    if let Some((i, s)) = b
        .row_sums()
        .into_iter()
        .enumerate()
        .find(|(_, s)| !T::close(s, lambda1, scale))
    {
        return Err(Error::InvariantViolation(format!(
            "row {i} of B sums to {s}, not {lambda1}"
        )));
    }
    let lhs = a * &folder.s;
    let rhs = &folder.s * b;
    let identity_holds = lhs
        .entries()
        .iter()
        .zip(rhs.entries())
        .all(|(x, y)| T::close(x, y, scale));
    if !identity_holds {
        return Err(Error::InvariantViolation("A S differs from S B".into()));
    }
    Ok(())
}

struct Arranged {
    blocks: Vec<Range<usize>>,
    transposed: bool,
    narrow_differs: bool,
}

/// Brings the matrix to block lower triangular form with the Perron class
/// first and returns the block ranges.
///
/// When the Perron class reaches other classes it cannot come first. Then
/// a set of classes closed under reachability and containing the Perron
/// class (so a leading block `M`) is replaced by `M^T` through an explicit
/// similarity; in `M^T` the Perron class reaches nothing. The set is either
/// every class that cannot reach the Perron class, or (narrow) only the
/// classes it reaches. Couplings from the remaining classes may turn
/// mixed-sign and are repaired during the fold.
fn arrange<T: FoldScalar>(
    folder: &mut Folder<T>,
    classes: &[Vec<usize>],
    pc: usize,
    attempt: Attempt,
) -> Result<Arranged, Error> {
    let a = folder.cur.clone();
    let n = a.rows();
    let mut class_of = vec![0; n];
    for (k, c) in classes.iter().enumerate() {
        for &i in c {
            class_of[i] = k;
        }
    }
    let m = classes.len();
    let mut edges = vec![vec![false; m]; m];
    for i in 0..n {
        for j in 0..n {
            if class_of[i] != class_of[j] && a[(i, j)].is_positive_strict() {
                edges[class_of[i]][class_of[j]] = true;
            }
        }
    }
    let p_points_out = edges[pc].iter().any(|&e| e);
    if !p_points_out {
        let form = frobenius_normal_form_with(&a, classes[pc][0])?;
        folder.permute(&form.permutation, "Frobenius normal form, Perron class first".into());
        return Ok(Arranged {
            blocks: form.block_boundaries,
            transposed: false,
            narrow_differs: false,
        });
    }

    let closure = |rev: bool| {
        let mut mark = vec![false; m];
        mark[pc] = true;
        loop {
            let mut changed = false;
            for k in 0..m {
                if !mark[k] && (0..m).any(|t| mark[t] && if rev { edges[k][t] } else { edges[t][k] }) {
                    mark[k] = true;
                    changed = true;
                }
            }
            if !changed {
                return mark;
            }
        }
    };
    let reaches = closure(true);
    let reached = closure(false);
    let narrow_differs = (0..m).any(|k| !reaches[k] && !reached[k]);
    let in_w = |k: usize| {
        if attempt.narrow {
            reached[k]
        } else {
            k == pc || !reaches[k]
        }
    };
    let w_idx: Vec<usize> = (0..n).filter(|&i| in_w(class_of[i])).collect();
    let u_idx: Vec<usize> = (0..n).filter(|&i| !in_w(class_of[i])).collect();
    let w = w_idx.len();
    let perm: Vec<usize> = w_idx.iter().chain(&u_idx).copied().collect();
    folder.permute(
        &perm,
        "move a reachability-closed set holding the Perron class to the front".into(),
    );

    let mw = folder.cur.block(0, w, 0, w);
    let t = transposing_similarity(&mw, attempt.draw)?;
    let t_inv = t.inverse().expect("transposing similarity is invertible");
    let mut f = Matrix::identity(n);
    f.set_block(0, 0, &t);
    let mut f_inv = Matrix::identity(n);
    f_inv.set_block(0, 0, &t_inv);
    folder.apply(
        StepKind::Transpose,
        vec![],
        format!("replace the leading {w}x{w} block M by M^T"),
        f,
        f_inv,
    );

    let p_local = perm
        .iter()
        .position(|&i| i == classes[pc][0])
        .expect("Perron class is in the leading block");
    let lead = frobenius_normal_form_with(&folder.cur.block(0, w, 0, w), p_local)?;
    let tail = topological_form(&folder.cur.block(w, n, w, n))?;
    let perm2: Vec<usize> = lead
        .permutation
        .iter()
        .copied()
        .chain(tail.permutation.iter().map(|&i| i + w))
        .collect();
    folder.permute(&perm2, "Frobenius normal form, Perron class first".into());
    let blocks = lead
        .block_boundaries
        .into_iter()
        .chain(tail.block_boundaries.into_iter().map(|r| r.start + w..r.end + w))
        .collect();
    Ok(Arranged {
        blocks,
        transposed: true,
        narrow_differs,
    })
}

/// An invertible `T` with `M T = T M^T`, drawn as a seeded random
/// combination of a basis of all solutions; `attempt` picks the k-th
/// invertible draw.
fn transposing_similarity<T: FoldScalar>(m: &Matrix<T>, attempt: usize) -> Result<Matrix<T>, Error> {
    let w = m.rows();
    let mut sys = Matrix::<T>::zeros(w * w, w * w);
    for i in 0..w {
        for j in 0..w {
            for l in 0..w {
                // (M T)_ij - (T M^T)_ij
                let r = i * w + j;
                sys[(r, l * w + j)] = sys[(r, l * w + j)].clone() + m[(i, l)].clone();
                sys[(r, i * w + l)] = sys[(r, i * w + l)].clone() - m[(j, l)].clone();
            }
        }
    }
    let basis = T::kernel(&sys);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a11);
    let mut found = 0;
    for _ in 0..64 * (attempt + 1) {
        let mut t = vec![T::zero(); w * w];
        for v in &basis {
            let c = T::from_i64(rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 });
            for (ti, vi) in t.iter_mut().zip(v) {
                *ti = ti.clone() + c.clone() * vi.clone();
            }
        }
        let t = Matrix::new(w, w, t)?;
        if t.inverse().is_some() {
            if found == attempt {
                return Ok(t);
            }
            found += 1;
        }
    }
    Err(Error::InvariantViolation(
        "no invertible solution of M T = T M^T found".into(),
    ))
}

/// A shear `G` making `F + M G - G B` nonnegative.
///
/// The reachable couplings are `F + range(G -> MG - GB)`; the range is the
/// joint kernel of the cokernel functionals `c_s`. A nonnegative target with
/// `<c_s, F'> = <c_s, F>` exists iff one exists supported on as many entries
/// as there are functionals, so those supports are searched directly.
fn repair_coupling<T: FoldScalar>(b: &Matrix<T>, m: &Matrix<T>, f: &Matrix<T>) -> Result<Matrix<T>, Error> {
    let sys = sylvester(m, b);
    let cokernel = T::kernel(&sys.transpose());
    let fv = f.entries().to_vec();
    let beta: Vec<T> = cokernel.iter().map(|c| dot(c, &fv)).collect();
    let target = if beta.iter().all(Scalar::is_negligible) {
        vec![T::zero(); fv.len()]
    } else {
        nonnegative_target(&cokernel, &beta, &column_major(m.rows(), b.rows()))?
    };
    let rhs: Vec<T> = target.iter().zip(&fv).map(|(t, x)| t.clone() - x.clone()).collect();
    let g =
        T::solve_any(&sys, &rhs).ok_or_else(|| Error::InvariantViolation("repair target is not reachable".into()))?;
    Matrix::new(m.rows(), b.rows(), g)
}

/// The matrix of `G -> M G - G B` acting on row-major `vec(G)`.
fn sylvester<T: Scalar>(m: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let (rows, k) = (m.rows(), b.rows());
    let size = rows * k;
    let mut sys = Matrix::<T>::zeros(size, size);
    for i in 0..rows {
        for j in 0..k {
            let r = i * k + j;
            for l in 0..rows {
                sys[(r, l * k + j)] = sys[(r, l * k + j)].clone() + m[(i, l)].clone();
            }
            for l in 0..k {
                sys[(r, i * k + l)] = sys[(r, i * k + l)].clone() - b[(l, j)].clone();
            }
        }
    }
    sys
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

// Positions of a rows x k coupling, leading columns first.
fn column_major(rows: usize, k: usize) -> Vec<usize> {
    (0..k).flat_map(|j| (0..rows).map(move |i| i * k + j)).collect()
}

/// An invertible `Y` commuting with `B` such that `F Y` can be repaired.
///
/// With `Y = sum c_i Y_i` over a basis of the commutant, the cokernel values
/// of `F Y` are `Bm c`. A repairable `F Y` needs `Bm c = K x` for some
/// `x >= 0`, `K` holding the cokernel functionals. Vertices of
/// `{x >= 0, sum x = 1, K x in range(Bm)}` are enumerated and random
/// positive combinations of them (plus kernel directions of `Bm`) are
/// tried until `Y` is invertible.
fn commutant_mix<T: FoldScalar>(b: &Matrix<T>, m: &Matrix<T>, f: &Matrix<T>) -> Result<Matrix<T>, Error> {
    let k = b.rows();
    let basis = T::kernel(&sylvester(b, b));
    let cokernel = T::kernel(&sylvester(m, b).transpose());
    let d = basis.len();
    let r = cokernel.len();
    let mut bm = Matrix::<T>::zeros(r, d);
    for (i, y) in basis.iter().enumerate() {
        let fy = f * &Matrix::new(k, k, y.clone())?;
        for (s, c) in cokernel.iter().enumerate() {
            bm[(s, i)] = dot(c, fy.entries());
        }
    }
    let kernel = T::kernel(&bm);
    let combine = |c: &[T]| -> Result<Matrix<T>, Error> {
        let mut y = vec![T::zero(); k * k];
        for (ci, v) in c.iter().zip(&basis) {
            for (yi, vi) in y.iter_mut().zip(v) {
                *yi = yi.clone() + ci.clone() * vi.clone();
            }
        }
        Matrix::new(k, k, y)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0de);
    let draw = |fixed: &[Vec<T>], rng: &mut ChaCha8Rng| -> Result<Option<Matrix<T>>, Error> {
        for _ in 0..8 {
            let mut c = vec![T::zero(); d];
            for v in fixed {
                let w = T::from_i64(rng.gen_range(1..=9));
                for (ci, vi) in c.iter_mut().zip(v) {
                    *ci = ci.clone() + w.clone() * vi.clone();
                }
            }
            for v in &kernel {
                let w = T::from_i64(rng.gen_range(-9..=9));
                for (ci, vi) in c.iter_mut().zip(v) {
                    *ci = ci.clone() + w.clone() * vi.clone();
                }
            }
            let y = combine(&c)?;
            if y.inverse().is_some() {
                return Ok(Some(y));
            }
        }
        Ok(None)
    };
    // Couplings that become repairable with target zero.
    if let Some(y) = draw(&[], &mut rng)? {
        return Ok(y);
    }

    // Vertices: x on a support of size rank(E), E = [N K; 1^T].
    let size = f.rows() * k;
    let left = T::kernel(&bm.transpose());
    let mut e_rows: Vec<Vec<T>> = left
        .iter()
        .map(|nv| {
            (0..size)
                .map(|p| (0..r).fold(T::zero(), |acc, s| acc + nv[s].clone() * cokernel[s][p].clone()))
                .collect()
        })
        .collect();
    e_rows.push(vec![T::one(); size]);
    let e = Matrix::from_rows(e_rows)?;
    let mut rhs = vec![T::zero(); e.rows()];
    rhs[e.rows() - 1] = T::one();
    let q = e.rank_by_elimination();
    let order = column_major(f.rows(), k);
    let mut vertices: Vec<Vec<T>> = Vec::new();
    let mut support: Vec<usize> = (0..q).collect();
    let mut tried = 0;
    loop {
        tried += 1;
        if tried > REPAIR_SEARCH_LIMIT || q > size {
            break;
        }
        let sub = Matrix::from_fn(e.rows(), q, |s, t| e[(s, order[support[t]])].clone());
        if let Some(u) = sub.solve_any(&rhs) {
            if !u.iter().any(Scalar::is_negative_strict) {
                let mut x = vec![T::zero(); size];
                for (pos, val) in support.iter().zip(u) {
                    x[order[*pos]] = val;
                }
                let kx: Vec<T> = cokernel.iter().map(|c| dot(c, &x)).collect();
                let c = T::solve_any(&bm, &kx)
                    .ok_or_else(|| Error::InvariantViolation("vertex outside range(Bm)".into()))?;
                vertices.push(c);
                if let Some(y) = draw(&vertices, &mut rng)? {
                    return Ok(y);
                }
            }
        }
        let Some(i) = (0..q).rev().find(|&i| support[i] < size - q + i) else {
            break;
        };
        support[i] += 1;
        for j in i + 1..q {
            support[j] = support[j - 1] + 1;
        }
    }
    Err(Error::Unsupported(
        "no nonnegative coupling is similar to this one under block shears and commutant mixing".into(),
    ))
}

/// A nonnegative vector `x` with `cokernel . x = beta`, supported on `r`
/// positions; supports are tried in lexicographic order of `order`.
fn nonnegative_target<T: Scalar>(cokernel: &[Vec<T>], beta: &[T], order: &[usize]) -> Result<Vec<T>, Error> {
    let r = cokernel.len();
    let size = order.len();
    if r > size {
        return Err(Error::Unsupported("cokernel larger than the coupling".into()));
    }
    let mut support: Vec<usize> = (0..r).collect();
    let mut tried = 0;
    loop {
        tried += 1;
        if tried > REPAIR_SEARCH_LIMIT {
            return Err(Error::Unsupported(format!(
                "no nonnegative coupling found within {REPAIR_SEARCH_LIMIT} supports"
            )));
        }
        let sub = Matrix::from_fn(r, r, |s, t| cokernel[s][order[support[t]]].clone());
        if let Some(u) = sub.solve_vec(beta) {
            if !u.iter().any(Scalar::is_negative_strict) {
                let mut out = vec![T::zero(); size];
                for (pos, val) in support.iter().zip(u) {
                    out[order[*pos]] = val;
                }
                return Ok(out);
            }
        }
        // next combination in lexicographic order
        let Some(i) = (0..r).rev().find(|&i| support[i] < size - r + i) else {
            return Err(Error::Unsupported(
                "no nonnegative coupling is similar to this one under block shears".into(),
            ));
        };
        support[i] += 1;
        for j in i + 1..r {
            support[j] = support[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn rm(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    fn check(a: &RationalMatrix) -> RowSumResult<Rational> {
        let out = to_constant_row_sums(a).unwrap();
        assert!(out.b.is_nonnegative());
        assert!(out.b.row_sums().iter().all(|s| *s == out.lambda1));
        assert_eq!(&out.s.inverse().unwrap() * &(a * &out.s), out.b);
        assert_eq!(out.composed_similarity(), out.s);
        assert_eq!(char_poly(a).unwrap(), char_poly(&out.b).unwrap());
        out
    }

    #[test]
    fn lift_of_remark_slice() {
        let lift = lemma1_lift(&rm(&[&[2]]), &rm(&[&[1]]), &rm(&[&[2]])).unwrap();
        assert_eq!(lift.x, vec![int(1), int(2)]);
        assert_eq!(lift.b, rm(&[&[2, 0], &[1, 1]]));
    }

    #[test]
    fn lift_with_scalar_block() {
        let a1 = rm(&[&[1, 2], &[2, 1]]);
        let lift = lemma1_lift(&a1, &rm(&[&[0]]), &rm(&[&[1, 1]])).unwrap();
        assert_eq!(lift.x, vec![int(1), int(1), ratio(2, 3)]);
        assert!(lift.b.row_sums().iter().all(|s| *s == int(3)));
    }

    #[test]
    fn lift_errors() {
        assert!(matches!(
            lemma1_lift(&rm(&[&[1]]), &rm(&[&[2]]), &rm(&[&[1]])),
            Err(Error::SpectralDominance(_))
        ));
        assert!(matches!(
            lemma1_lift(&rm(&[&[2]]), &rm(&[&[1]]), &rm(&[&[0]])),
            Err(Error::Coupling(_))
        ));
    }

    #[test]
    fn coupling_examples() {
        let c = lemma2_coupling(&rm(&[&[2]]), &rm(&[&[1]]), &[int(1)]).unwrap();
        assert_eq!(c.a3, rm(&[&[1]]));
        let c = lemma2_coupling(&rm(&[&[0, 2], &[2, 0]]), &rm(&[&[1]]), &[int(1), int(1)]).unwrap();
        assert_eq!(c.a3, rm(&[&[1, 1]]));
        let a = RationalMatrix::block_diagonal(&[&rm(&[&[0, 2], &[2, 0]]), &rm(&[&[1]])]);
        let moved = &(&c.s.inverse().unwrap() * &a) * &c.s;
        assert_eq!(moved.block(2, 3, 0, 2), c.a3);
        assert!(matches!(
            lemma2_coupling(&rm(&[&[2]]), &rm(&[&[2]]), &[int(1)]),
            Err(Error::Coupling(_))
        ));
        assert!(matches!(
            lemma2_coupling(&rm(&[&[2]]), &rm(&[&[1]]), &[int(-1)]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn non_simple_perron_roots_are_rejected() {
        for a in [rm(&[&[1, 0], &[1, 1]]), rm(&[&[2, 0, 0], &[0, 2, 0], &[2, 0, 1]])] {
            assert!(matches!(to_constant_row_sums(&a), Err(Error::PerronNotSimple(_))));
        }
    }

    #[test]
    fn scrambled_triangular_example() {
        let a = rm(&[&[1, 1], &[0, 3]]);
        let out = check(&a);
        assert_eq!(out.lambda1, int(3));
    }

    #[test]
    fn irreducible_input_needs_one_scaling() {
        let a = rm(&[&[1, 2], &[3, 4]]);
        let err = to_constant_row_sums(&a).unwrap_err();
        assert!(matches!(err, Error::Mode(_)));
        let out = to_constant_row_sums_float(&a.to_float()).unwrap();
        let rho = (5.0 + 33f64.sqrt()) / 2.0;
        assert!(out.b.row_sums().iter().all(|s| (s - rho).abs() < 1e-9));
        assert_eq!(out.transcript.len(), 1);
    }

    #[test]
    fn isolated_block_gets_a_coupling() {
        let a = RationalMatrix::block_diagonal(&[&rm(&[&[0, 2], &[2, 0]]), &rm(&[&[1]])]);
        let out = check(&a);
        let kinds: Vec<_> = out.transcript.iter().map(|s| s.kind).collect();
        assert_eq!(
            kinds,
            vec![
                StepKind::DiagonalScaling,
                StepKind::Lemma2Coupling,
                StepKind::Lemma1Lift
            ]
        );
    }

    #[test]
    fn perron_class_with_ancestors_and_descendants() {
        // 2 -> 1 -> 0 with the Perron root on the middle class
        let a = rm(&[&[1, 0, 0], &[1, 2, 0], &[0, 1, 1]]);
        let out = check(&a);
        assert!(out.transcript.iter().any(|s| s.kind == StepKind::Transpose));
    }

    #[test]
    fn irrational_inner_radius_in_exact_mode() {
        let a = rm(&[&[5, 0, 0], &[1, 1, 1], &[0, 1, 0]]);
        let out = check(&a);
        assert_eq!(out.lambda1, int(5));
        assert_eq!(out.warnings.len(), 1);
    }
}
