//! Semisimplicity, nilpotency, Jordan–Chevalley decomposition and eigenvalue
//! reports for square matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{char_poly, min_poly, rank};
use crate::matrix::Matrix;
use crate::poly::{count_real_roots, require_exact, roots_exact, roots_numeric, Polynomial};
use crate::scalar::{FieldContext, FieldKind, Scalar};

/// Numeric eigenvalues closer than this are merged into one cluster.
pub const CLUSTER_TOLERANCE: f64 = 1e-7;

/// Semisimple over ℂ, i.e. the minimal polynomial is squarefree. Exact only.
pub fn is_semisimple<T: Scalar>(a: &Matrix<T>) -> Result<bool> {
    require_exact::<T>("is_semisimple")?;
    min_poly(a)?.is_squarefree()
}

/// `A^dim = 0`, within the field tolerance for approximate input.
pub fn is_nilpotent<T: Scalar>(a: &Matrix<T>, ctx: &FieldContext) -> Result<bool> {
    let n = a.ensure_square()?;
    let power = a.pow(n as u32)?;
    if ctx.is_exact() {
        return Ok(power.as_slice().iter().all(num_traits::Zero::is_zero));
    }
    let scale = (1.0 + a.max_magnitude()).powi(n as i32);
    Ok(power
        .as_slice()
        .iter()
        .all(|x| x.is_negligible(ctx.tolerance() * scale)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct JordanPair<T: Scalar> {
    /// Semisimple part.
    pub s: Matrix<T>,
    /// Nilpotent part.
    pub n: Matrix<T>,
}

/// Outcome of re-checking a decomposition against the original matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JordanChecks {
    pub sums_to_original: bool,
    pub parts_commute: bool,
    pub s_semisimple: bool,
    pub n_nilpotent: bool,
    pub commute_with_original: bool,
}

impl JordanChecks {
    pub fn all(&self) -> bool {
        self.sums_to_original
            && self.parts_commute
            && self.s_semisimple
            && self.n_nilpotent
            && self.commute_with_original
    }
}

impl<T: Scalar> JordanPair<T> {
    pub fn check(&self, a: &Matrix<T>) -> Result<JordanChecks> {
        let ctx = FieldContext::exact();
        Ok(JordanChecks {
            sums_to_original: &self.s + &self.n == *a,
            parts_commute: self.s.commutator(&self.n).is_zero_matrix(&ctx),
            s_semisimple: is_semisimple(&self.s)?,
            n_nilpotent: is_nilpotent(&self.n, &ctx)?,
            commute_with_original: self.s.commutator(a).is_zero_matrix(&ctx)
                && self.n.commutator(a).is_zero_matrix(&ctx),
        })
    }

    pub fn nilpotent_is_zero(&self) -> bool {
        self.n.as_slice().iter().all(num_traits::Zero::is_zero)
    }
}

/// `A = s + n` by Newton's iteration `s ← s − f(s)·h(s)` on the squarefree
/// part `f` of the characteristic polynomial, with `h·f′ ≡ 1 (mod f)`.
/// Exact only.
pub fn jordan_chevalley<T: Scalar>(a: &Matrix<T>) -> Result<JordanPair<T>> {
    require_exact::<T>("jordan_chevalley")?;
    let dim = a.ensure_square()?;
    if dim == 0 {
        return Ok(JordanPair {
            s: a.clone(),
            n: a.clone(),
        });
    }
    let f = char_poly(a)?.squarefree_part()?;
    let (g, h, _) = f.derivative().extended_gcd(&f)?;
    if g.degree() != Some(0) {
        return Err(Error::Internal(
            "squarefree part shares a factor with its derivative".into(),
        ));
    }
    let max_steps = usize::BITS - (dim - 1).leading_zeros() + 1;
    let mut s = a.clone();
    let mut converged = false;
    for _ in 0..=max_steps {
        let fs = f.eval_matrix(&s)?;
        if fs.as_slice().iter().all(num_traits::Zero::is_zero) {
            converged = true;
            break;
        }
        s = &s - &(&fs * &h.eval_matrix(&s)?);
    }
    if !converged {
        return Err(Error::Internal(format!(
            "Jordan–Chevalley iteration did not terminate in {max_steps} steps"
        )));
    }
    let pair = JordanPair { n: a - &s, s };
    if !pair.check(a)?.all() {
        return Err(Error::Internal("Jordan–Chevalley invariants failed".into()));
    }
    Ok(pair)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenvalue<T> {
    pub value: T,
    pub algebraic: usize,
    pub geometric: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenReport<T: Scalar> {
    pub characteristic: Polynomial<T>,
    /// Rational eigenvalues (exact field) or clustered numeric eigenvalues
    /// (approximate field), ascending.
    pub eigenvalues: Vec<Eigenvalue<T>>,
    /// Monic factor of the characteristic polynomial without rational roots;
    /// `1` when the spectrum is rational and always `1` on the approximate field.
    pub residual_factor: Polynomial<T>,
    /// Numeric roots of the residual factor.
    pub residual_roots: Vec<Complex64>,
    /// Largest `|residual(root)|` over `residual_roots`.
    pub residual_error: f64,
    /// Distinct conjugate pairs of non-real eigenvalues.
    pub non_real_pairs: usize,
    pub diagonalizable_over_c: bool,
    /// Over ℝ for rational input (decided exactly with Sturm sequences), over
    /// ℂ for complex input.
    pub diagonalizable_over_base: bool,
}

impl<T: Scalar> EigenReport<T> {
    pub fn algebraic_total(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.algebraic).sum::<usize>()
            + self.residual_factor.degree().unwrap_or(0)
    }
}

pub fn eigen_report<T: Scalar>(a: &Matrix<T>, ctx: &FieldContext) -> Result<EigenReport<T>> {
    ctx.ensure_matches::<T>()?;
    a.ensure_square()?;
    match T::KIND {
        FieldKind::Exact => exact_report(a),
        FieldKind::Approx => approx_report(a, ctx),
    }
}

fn geometric_multiplicity<T: Scalar>(a: &Matrix<T>, lambda: &T, ctx: &FieldContext) -> usize {
    let n = a.rows();
    let shifted = a - &Matrix::identity(n).scale(lambda);
    n - rank(&shifted, ctx)
}

fn exact_report<T: Scalar>(a: &Matrix<T>) -> Result<EigenReport<T>> {
    let ctx = FieldContext::exact();
    let characteristic = char_poly(a)?;
    let (roots, residual_factor) = roots_exact(&characteristic)?;
    let eigenvalues = roots
        .into_iter()
        .map(|(value, algebraic)| Eigenvalue {
            geometric: geometric_multiplicity(a, &value, &ctx),
            value,
            algebraic,
        })
        .collect();
    let (residual_roots, residual_error, non_real_pairs, residual_all_real) =
        match residual_factor.degree() {
            None | Some(0) => (Vec::new(), 0.0, 0, true),
            Some(_) => {
                let roots = roots_numeric(&residual_factor)?;
                let err = roots
                    .iter()
                    .map(|&z| residual_factor.eval_complex(z).norm())
                    .fold(0.0, f64::max);
                let distinct = residual_factor.squarefree_part()?.degree().unwrap_or(0);
                let real = count_real_roots(&residual_factor)?;
                (roots, err, (distinct - real) / 2, real == distinct)
            }
        };
    let diagonalizable_over_c = min_poly(a)?.is_squarefree()?;
    Ok(EigenReport {
        characteristic,
        eigenvalues,
        residual_factor,
        residual_roots,
        residual_error,
        non_real_pairs,
        diagonalizable_over_c,
        diagonalizable_over_base: diagonalizable_over_c && residual_all_real,
    })
}

fn approx_report<T: Scalar>(a: &Matrix<T>, ctx: &FieldContext) -> Result<EigenReport<T>> {
    let n = a.rows();
    let characteristic = char_poly(a)?;
    let roots = if n == 0 {
        Vec::new()
    } else {
        roots_numeric(&characteristic)?
    };
    let residual_error = roots
        .iter()
        .map(|&z| characteristic.eval_complex(z).norm())
        .fold(0.0, f64::max);
    let clusters = cluster(&roots, CLUSTER_TOLERANCE * (1.0 + a.max_magnitude()));
    let rank_ctx = FieldContext::approx(CLUSTER_TOLERANCE)?;
    let eigenvalues: Vec<Eigenvalue<T>> = clusters
        .into_iter()
        .map(|(z, algebraic)| {
            let value = T::from_complex(z)
                .ok_or_else(|| Error::Internal("complex eigenvalue in an exact field".into()))?;
            Ok(Eigenvalue {
                geometric: geometric_multiplicity(a, &value, &rank_ctx),
                value,
                algebraic,
            })
        })
        .collect::<Result<_>>()?;
    let tol = ctx.tolerance().max(CLUSTER_TOLERANCE) * (1.0 + a.max_magnitude());
    let non_real = eigenvalues
        .iter()
        .filter(|e| e.value.to_complex().im.abs() > tol)
        .count();
    let diagonalizable = eigenvalues.iter().all(|e| e.geometric == e.algebraic);
    Ok(EigenReport {
        characteristic,
        eigenvalues,
        residual_factor: Polynomial::one(),
        residual_roots: Vec::new(),
        residual_error,
        non_real_pairs: non_real / 2,
        diagonalizable_over_c: diagonalizable,
        diagonalizable_over_base: diagonalizable,
    })
}

/// Greedy clustering of sorted roots; each cluster is reported by its mean.
fn cluster(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &z in roots {
        match groups.iter_mut().find(|g| (g[0] - z).norm() <= tol) {
            Some(g) => g.push(z),
            None => groups.push(vec![z]),
        }
    }
    let mut out: Vec<(Complex64, usize)> = groups
        .into_iter()
        .map(|g| {
            let mean = g.iter().sum::<Complex64>() / g.len() as f64;
            (mean, g.len())
        })
        .collect();
    out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    out
}
