//! Dense elimination over a [`Scalar`] field.
//!
//! Exact rationals pivot on the first nonzero entry of a column, which keeps
//! outputs deterministic. The approximate field uses partial pivoting and
//! treats a pivot as zero when `|pivot| <= tol * scale`, where `scale` is the
//! largest column magnitude of the input.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{require_exact, Polynomial};
use crate::scalar::{FieldContext, Scalar};

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<T: Scalar> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn zero_threshold<T: Scalar>(a: &Matrix<T>, ctx: &FieldContext) -> f64 {
    if ctx.is_exact() {
        0.0
    } else {
        ctx.tolerance() * a.max_magnitude().max(f64::MIN_POSITIVE)
    }
}

/// Gauss–Jordan elimination to reduced row echelon form.
///
/// Only the first `limit` columns are eligible as pivots, which lets callers
/// reduce an augmented system without pivoting on the right-hand side.
pub fn row_reduce_limited<T: Scalar>(
    a: &Matrix<T>,
    limit: usize,
    ctx: &FieldContext,
) -> Echelon<T> {
    let (rows, cols) = (a.rows(), a.cols());
    let threshold = zero_threshold(a, ctx);
    let mut m: Vec<Vec<T>> = a.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit.min(cols) {
        if r == rows {
            break;
        }
        let pick = if ctx.is_exact() {
            (r..rows).find(|&i| !m[i][c].is_zero())
        } else {
            (r..rows)
                .max_by(|&i, &j| m[i][c].magnitude().total_cmp(&m[j][c].magnitude()))
                .filter(|&i| !m[i][c].is_negligible(threshold))
        };
        let Some(p) = pick else {
            if !ctx.is_exact() {
                for row in m.iter_mut().skip(r) {
                    row[c] = T::zero();
                }
            }
            continue;
        };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        m[r][c] = T::one();
        // support of the pivot row; most systems here are very sparse
        let support: Vec<usize> = (0..cols).filter(|&j| !m[r][j].is_zero()).collect();
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] -= factor.clone() * pivot_row[j].clone();
            }
            row[c] = T::zero();
        }
        pivots.push(c);
        r += 1;
    }
    let reduced = Matrix::from_rows(m).unwrap_or_else(|_| Matrix::zeros(rows, cols));
    Echelon { reduced, pivots }
}

pub fn row_reduce<T: Scalar>(a: &Matrix<T>, ctx: &FieldContext) -> Echelon<T> {
    row_reduce_limited(a, a.cols(), ctx)
}

pub fn rank<T: Scalar>(a: &Matrix<T>, ctx: &FieldContext) -> usize {
    row_reduce(a, ctx).rank()
}

/// One solution of `A·x = b`, or `None` when the system is inconsistent.
///
/// Free variables are set to zero. Over the approximate field a solution is
/// only returned when its residual is at most `tol·(1 + ‖b‖)`.
pub fn solve_linear<T: Scalar>(
    a: &Matrix<T>,
    b: &[T],
    ctx: &FieldContext,
) -> Result<Option<Vec<T>>> {
    if a.rows() != b.len() {
        return Err(Error::dims(format!(
            "system has {} rows but right-hand side has length {}",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let aug = Matrix::from_fn(a.rows(), n + 1, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let ech = row_reduce_limited(&aug, n, ctx);
    let threshold = zero_threshold(&aug, ctx);
    for i in ech.rank()..a.rows() {
        if !ech.reduced[(i, n)].is_negligible(threshold) {
            return Ok(None);
        }
    }
    let mut x = vec![T::zero(); n];
    for (i, &c) in ech.pivots.iter().enumerate() {
        x[c] = ech.reduced[(i, n)].clone();
    }
    if !ctx.is_exact() {
        let ax = a.mul_vec(&x)?;
        let residual = ax
            .iter()
            .zip(b)
            .map(|(u, v)| (u.clone() - v.clone()).magnitude().powi(2))
            .sum::<f64>()
            .sqrt();
        let bnorm = b.iter().map(|v| v.magnitude().powi(2)).sum::<f64>().sqrt();
        if residual > ctx.tolerance() * (1.0 + bnorm) {
            return Ok(None);
        }
    }
    Ok(Some(x))
}

/// Basis of `{x : A·x = 0}`, one vector per free column in column order.
pub fn kernel_basis<T: Scalar>(a: &Matrix<T>, ctx: &FieldContext) -> Vec<Vec<T>> {
    let ech = row_reduce(a, ctx);
    let n = a.cols();
    let mut is_pivot = vec![false; n];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![T::zero(); n];
            v[f] = T::one();
            for (i, &c) in ech.pivots.iter().enumerate() {
                v[c] = -ech.reduced[(i, f)].clone();
            }
            v
        })
        .collect()
}

/// Canonical basis of the span of the given vectors (nonzero rows of the
/// reduced echelon form).
pub fn span_basis<T: Scalar>(
    dim: usize,
    vectors: &[Vec<T>],
    ctx: &FieldContext,
) -> Result<Vec<Vec<T>>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let m = Matrix::from_rows(vectors.to_vec())?;
    if m.cols() != dim {
        return Err(Error::dims("vector length differs from dimension"));
    }
    let ech = row_reduce(&m, ctx);
    Ok((0..ech.rank())
        .map(|i| ech.reduced.row(i).to_vec())
        .collect())
}

/// Indices of a maximal linearly independent subset, greedy in input order.
pub fn independent_subset<T: Scalar>(
    dim: usize,
    vectors: &[Vec<T>],
    ctx: &FieldContext,
) -> Result<Vec<usize>> {
    if vectors.iter().any(|v| v.len() != dim) {
        return Err(Error::dims("vector length differs from dimension"));
    }
    let cols = Matrix::from_columns(dim, vectors)?;
    Ok(row_reduce(&cols, ctx).pivots)
}

/// Whether `target` lies in the span of `vectors`.
pub fn in_span<T: Scalar>(
    dim: usize,
    vectors: &[Vec<T>],
    target: &[T],
    ctx: &FieldContext,
) -> Result<bool> {
    if target.len() != dim {
        return Err(Error::dims("target length differs from dimension"));
    }
    if vectors.is_empty() {
        let tol =
            ctx.tolerance() * (1.0 + target.iter().map(Scalar::magnitude).fold(0.0, f64::max));
        return Ok(target.iter().all(|x| x.is_negligible(tol)));
    }
    let cols = Matrix::from_columns(dim, vectors)?;
    Ok(solve_linear(&cols, target, ctx)?.is_some())
}

pub fn determinant<T: Scalar>(a: &Matrix<T>, ctx: &FieldContext) -> Result<T> {
    let n = a.ensure_square()?;
    let threshold = zero_threshold(a, ctx);
    let mut m = a.to_rows();
    let mut det = T::one();
    for c in 0..n {
        let pick = if ctx.is_exact() {
            (c..n).find(|&i| !m[i][c].is_zero())
        } else {
            (c..n)
                .max_by(|&i, &j| m[i][c].magnitude().total_cmp(&m[j][c].magnitude()))
                .filter(|&i| !m[i][c].is_negligible(threshold))
        };
        let Some(p) = pick else {
            return Ok(T::zero());
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone() / pivot.clone();
            let (upper, lower) = m.split_at_mut(i);
            for (target, source) in lower[0][c..].iter_mut().zip(&upper[c][c..]) {
                *target -= &(factor.clone() * source.clone());
            }
        }
    }
    Ok(det)
}

pub fn inverse<T: Scalar>(a: &Matrix<T>, ctx: &FieldContext) -> Result<Matrix<T>> {
    let n = a.ensure_square()?;
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else if j - n == i {
            T::one()
        } else {
            T::zero()
        }
    });
    let ech = row_reduce_limited(&aug, n, ctx);
    if ech.rank() < n {
        return Err(Error::Singular);
    }
    Ok(ech.reduced.block(0, n, n, n))
}

/// Monic `det(T·I − A)` by the Faddeev–LeVerrier recursion; every division is
/// by an integer, so the result is exact over the rationals.
pub fn char_poly<T: Scalar>(a: &Matrix<T>) -> Result<Polynomial<T>> {
    let n = a.ensure_square()?;
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let identity = Matrix::identity(n);
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = &(a * &m) + &identity.scale(&coeffs[n - k + 1]);
        let am = a * &m;
        coeffs[n - k] = -am.trace() / T::from_i64(k as i64);
    }
    Ok(Polynomial::new(coeffs))
}

/// Monic minimal polynomial from the first linear dependency among
/// `I, A, A², …`. Exact field only.
pub fn min_poly<T: Scalar>(a: &Matrix<T>) -> Result<Polynomial<T>> {
    require_exact::<T>("min_poly")?;
    let n = a.ensure_square()?;
    let ctx = FieldContext::exact();
    let mut powers: Vec<Vec<T>> = vec![Matrix::<T>::identity(n).flatten()];
    let mut current = Matrix::identity(n);
    for _ in 1..=n {
        current = &current * a;
        let target = current.flatten();
        let basis = Matrix::from_columns(n * n, &powers)?;
        if let Some(c) = solve_linear(&basis, &target, &ctx)? {
            // A^d = Σ c_i A^i  ⇒  T^d − Σ c_i T^i
            let mut coeffs: Vec<T> = c.into_iter().map(|x| -x).collect();
            coeffs.push(T::one());
            return Ok(Polynomial::new(coeffs));
        }
        powers.push(target);
    }
    Err(Error::Internal(
        "no dependency among the first n+1 powers (contradicts Cayley–Hamilton)".into(),
    ))
}

/// Standard skew form `ω(e_i, e_{n+j}) = δ_ij` of size `2n`.
pub fn standard_symplectic<T: Scalar>(n: usize) -> Matrix<T> {
    Matrix::from_fn(2 * n, 2 * n, |i, j| {
        if i < n && j == i + n {
            T::one()
        } else if i >= n && j + n == i {
            -T::one()
        } else {
            T::zero()
        }
    })
}

/// Basis change `P` (columns `e_1..e_n, f_1..f_n`) with `Pᵀ·Ω·P` equal to the
/// standard form `ω(e_i, f_j) = δ_ij`, by symplectic Gram–Schmidt.
pub fn darboux_basis<T: Scalar>(omega: &Matrix<T>, ctx: &FieldContext) -> Result<Matrix<T>> {
    let dim = omega.ensure_square()?;
    if dim % 2 == 1 {
        return Err(Error::OddDimension(dim));
    }
    if !omega.is_skew(ctx) {
        return Err(Error::NotSkew);
    }
    let form = |u: &[T], v: &[T]| -> T {
        let ov = omega.mul_vec(v).expect("square form");
        u.iter()
            .zip(&ov)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    };
    let threshold = zero_threshold(omega, ctx);
    let mut pool: Vec<Vec<T>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let mut es = Vec::new();
    let mut fs = Vec::new();
    while !pool.is_empty() {
        let u = pool.remove(0);
        let pairing: Vec<T> = pool.iter().map(|w| form(&u, w)).collect();
        let partner = if ctx.is_exact() {
            pairing.iter().position(|x| !x.is_zero())
        } else {
            (0..pool.len())
                .max_by(|&i, &j| pairing[i].magnitude().total_cmp(&pairing[j].magnitude()))
                .filter(|&i| !pairing[i].is_negligible(threshold))
        };
        let Some(k) = partner else {
            return Err(Error::DegenerateForm);
        };
        let scale = T::one() / pairing[k].clone();
        let v: Vec<T> = pool
            .remove(k)
            .into_iter()
            .map(|x| x * scale.clone())
            .collect();
        // w ← w − ω(w, v)·u + ω(w, u)·v makes w orthogonal to both
        for w in pool.iter_mut() {
            let wv = form(w, &v);
            let wu = form(w, &u);
            for ((x, ui), vi) in w.iter_mut().zip(&u).zip(&v) {
                *x -= wv.clone() * ui.clone();
                *x += wu.clone() * vi.clone();
            }
        }
        es.push(u);
        fs.push(v);
    }
    es.extend(fs);
    Matrix::from_columns(dim, &es)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type M = Matrix<Rational>;

    fn exact() -> FieldContext {
        FieldContext::exact()
    }

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    #[test]
    fn solve_examples() {
        let id = M::identity(2);
        assert_eq!(
            solve_linear(&id, &r(&[3, 5]), &exact()).unwrap(),
            Some(r(&[3, 5]))
        );
        let rot = M::from_i64_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(
            solve_linear(&rot, &r(&[0, 1]), &exact()).unwrap(),
            Some(r(&[1, 0]))
        );
        let singular = M::from_i64_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(
            solve_linear(&singular, &r(&[1, 0]), &exact()).unwrap(),
            None
        );
        assert!(solve_linear(&singular, &r(&[1]), &exact()).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            kernel_basis(&M::from_i64_rows(&[&[0, 0], &[0, 1]]), &exact()),
            vec![r(&[1, 0])]
        );
        assert!(kernel_basis(&M::identity(3), &exact()).is_empty());
        let k = kernel_basis(&M::from_i64_rows(&[&[1, 2], &[2, 4]]), &exact());
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(
            k[0][0].clone() * Rational::from_i64(-1),
            k[0][1].clone() * Rational::from_i64(2)
        );
    }

    #[test]
    fn char_poly_examples() {
        let d = M::diagonal(&r(&[1, 2]));
        assert_eq!(char_poly(&d).unwrap(), Polynomial::from_i64(&[2, -3, 1]));
        let rot = M::from_i64_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(char_poly(&rot).unwrap(), Polynomial::from_i64(&[1, 0, 1]));
        assert!(char_poly(&M::zeros(2, 3)).is_err());
    }

    #[test]
    fn min_poly_examples() {
        assert_eq!(
            min_poly(&M::identity(3)).unwrap(),
            Polynomial::from_i64(&[-1, 1])
        );
        let block = M::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            min_poly(&block).unwrap(),
            Polynomial::from_i64(&[-1, 1]).pow(2)
        );
        let d = M::diagonal(&r(&[2, 2, 3]));
        assert_eq!(min_poly(&d).unwrap(), Polynomial::from_i64(&[6, -5, 1]));
        let c: Matrix<num_complex::Complex64> = Matrix::identity(2);
        assert!(matches!(min_poly(&c), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = M::from_i64_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(determinant(&a, &exact()).unwrap(), Rational::from_i64(18));
        let inv = inverse(&a, &exact()).unwrap();
        assert_eq!(&a * &inv, M::identity(3));
        let s = M::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(inverse(&s, &exact()), Err(Error::Singular));
        assert_eq!(determinant(&s, &exact()).unwrap(), Rational::from_i64(0));
    }

    #[test]
    fn darboux_examples() {
        let std4: M = standard_symplectic(2);
        assert_eq!(darboux_basis(&std4, &exact()).unwrap(), M::identity(4));

        let omega = M::from_i64_rows(&[&[0, -1], &[1, 0]]);
        let p = darboux_basis(&omega, &exact()).unwrap();
        assert_eq!(
            &(&p.transpose() * &omega) * &p,
            M::from_i64_rows(&[&[0, 1], &[-1, 0]])
        );

        assert_eq!(
            darboux_basis(&M::zeros(3, 3), &exact()),
            Err(Error::OddDimension(3))
        );
        assert_eq!(
            darboux_basis(&M::identity(2), &exact()),
            Err(Error::NotSkew)
        );
        assert_eq!(
            darboux_basis(&M::zeros(2, 2), &exact()),
            Err(Error::DegenerateForm)
        );
    }

    #[test]
    fn approx_rank_uses_relative_threshold() {
        use num_complex::Complex64;
        let ctx = FieldContext::of::<Complex64>();
        let a = Matrix::from_rows(vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
            vec![Complex64::new(2.0, 0.0), Complex64::new(4.0 + 1e-13, 0.0)],
        ])
        .unwrap();
        assert_eq!(rank(&a, &ctx), 1);
        assert_eq!(kernel_basis(&a, &ctx).len(), 1);
    }
}
