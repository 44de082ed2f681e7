//! Concrete algebras: `aff(n)`, `gl(n) ⋉ M_{n,p}`, the family `G_{k,ξ}` and
//! the named presets. Every constructor returns a validated algebra.

use crate::error::{Error, Result};
use crate::lie::{Functional, LieAlgebra};
use crate::matrix::Matrix;
use crate::scalar::{FieldContext, Scalar};
use crate::Rational;

fn gl_label(prefix: char, i: usize, j: usize, wide: bool) -> String {
    if wide {
        format!("{prefix}{},{}", i + 1, j + 1)
    } else {
        format!("{prefix}{}{}", i + 1, j + 1)
    }
}

/// `gl(n) ⋉ 𝕂ⁿ` on `E11, E12, …, Enn, f1, …, fn`.
pub fn aff<T: Scalar>(n: usize, field: FieldContext) -> Result<LieAlgebra<T>> {
    if n < 1 {
        return Err(Error::InvalidArgument("aff(n) needs n >= 1".into()));
    }
    let mut labels: Vec<String> = (0..n * n)
        .map(|a| gl_label('E', a / n, a % n, n >= 10))
        .collect();
    labels.extend((0..n).map(|k| format!("f{}", k + 1)));
    let mut brackets = gl_brackets::<T>(n);
    let e = |i: usize, j: usize| i * n + j;
    for i in 0..n {
        for j in 0..n {
            brackets.push((e(i, j), n * n + j, n * n + i, T::one()));
        }
    }
    LieAlgebra::new(labels, brackets, field)?.into_validated()
}

/// `[E_ij, E_kl] = δ_jk E_il − δ_li E_kj` for index pairs in increasing order.
fn gl_brackets<T: Scalar>(n: usize) -> Vec<(usize, usize, usize, T)> {
    let mut out = Vec::new();
    for a in 0..n * n {
        for b in a + 1..n * n {
            let (i, j, k, l) = (a / n, a % n, b / n, b % n);
            if j == k {
                out.push((a, b, i * n + l, T::one()));
            }
            if l == i {
                out.push((a, b, k * n + j, -T::one()));
            }
        }
    }
    out
}

/// `gl(n) ⋉ M_{n,p}` with `gl(n)` acting by left multiplication; requires `p | n`.
pub fn gl_semidirect<T: Scalar>(n: usize, p: usize, field: FieldContext) -> Result<LieAlgebra<T>> {
    if n < 1 || p < 1 || !n.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!(
            "gl({n}) ⋉ M({n},{p}) needs p >= 1 dividing n >= 1"
        )));
    }
    let wide = n >= 10 || p >= 10;
    let mut labels: Vec<String> = (0..n * n)
        .map(|a| gl_label('E', a / n, a % n, wide))
        .collect();
    labels.extend((0..n * p).map(|c| gl_label('F', c / p, c % p, wide)));
    let mut brackets = gl_brackets::<T>(n);
    for i in 0..n {
        for j in 0..n {
            for b in 0..p {
                // [E_ij, F_jb] = F_ib
                brackets.push((i * n + j, n * n + j * p + b, n * n + i * p + b, T::one()));
            }
        }
    }
    LieAlgebra::new(labels, brackets, field)?.into_validated()
}

/// Parameters of `G_{k,ξ}`: `k ≠ 0` and the `2n × 2n` matrix `M` of `ξ`,
/// which must be conformal with factor `k` for the canonical symplectic form.
#[derive(Debug, Clone, PartialEq)]
pub struct GkXiSpec<T: Scalar> {
    n: usize,
    k: T,
    m: Matrix<T>,
}

impl<T: Scalar> GkXiSpec<T> {
    pub fn new(n: usize, k: T, m: Matrix<T>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument("G_{k,ξ} needs n >= 1".into()));
        }
        if (m.rows(), m.cols()) != (2 * n, 2 * n) {
            return Err(Error::DimensionMismatch(format!(
                "ξ must be {0}x{0}, got {1}x{2}",
                2 * n,
                m.rows(),
                m.cols()
            )));
        }
        let field = FieldContext::of::<T>();
        if k.is_negligible(field.tolerance()) {
            return Err(Error::CspViolation("k must be nonzero".into()));
        }
        if let Some(msg) = csp_coefficient_violation(&m, &k, n, &field) {
            return Err(Error::CspViolation(msg));
        }
        Ok(Self { n, k, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> &T {
        &self.k
    }

    pub fn xi(&self) -> &Matrix<T> {
        &self.m
    }
}

fn csp_coefficient_violation<T: Scalar>(
    m: &Matrix<T>,
    k: &T,
    n: usize,
    field: &FieldContext,
) -> Option<String> {
    let tol = field.tolerance() * (1.0 + m.max_magnitude() + k.magnitude());
    let zero = |x: T| x.is_negligible(tol);
    for i in 0..n {
        for j in 0..n {
            let kd = if i == j { k.clone() } else { T::zero() };
            if !zero(kd - m[(j, i)].clone() - m[(n + i, n + j)].clone()) {
                return Some(format!(
                    "k·δ({i},{j}) != M[{j}][{i}] + M[{}][{}]",
                    n + i,
                    n + j
                ));
            }
            if !zero(m[(i, n + j)].clone() - m[(j, n + i)].clone()) {
                return Some(format!("M[{i}][{}] != M[{j}][{}]", n + j, n + i));
            }
            if !zero(m[(n + i, j)].clone() - m[(n + j, i)].clone()) {
                return Some(format!("M[{}][{j}] != M[{}][{i}]", n + i, n + j));
            }
        }
    }
    None
}

/// Matrix of `Ω = Σ e*_{n+i} ∧ e*_i`: `Ω(e_{n+i}, e_i) = 1`.
pub fn canonical_form<T: Scalar>(n: usize) -> Matrix<T> {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(n + i, i)] = T::one();
        j[(i, n + i)] = -T::one();
    }
    j
}

/// `Ω(Mx, y) + Ω(x, My) = k·Ω(x, y)`, i.e. `MᵀJ + JM = kJ`. Agrees with the
/// coefficient conditions enforced by [`GkXiSpec::new`].
pub fn csp_check<T: Scalar>(m: &Matrix<T>, k: &T, n: usize) -> bool {
    if (m.rows(), m.cols()) != (2 * n, 2 * n) {
        return false;
    }
    let field = FieldContext::of::<T>();
    let j = canonical_form::<T>(n);
    let lhs = &(&m.transpose() * &j) + &(&j * m);
    let by_form = lhs.approx_eq(&j.scale(k), &field);
    debug_assert_eq!(
        by_form,
        csp_coefficient_violation(m, k, n, &field).is_none()
    );
    by_form
}

/// `G_{k,ξ}` on `(e-1, e0, e1, …, e2n)`: `[e_i, e_{n+i}] = e0`,
/// `[e-1, e0] = k·e0`, `[e-1, e_t] = Σ_s M[s][t]·e_s`.
pub fn g_k_xi<T: Scalar>(spec: &GkXiSpec<T>) -> Result<LieAlgebra<T>> {
    let n = spec.n;
    let mut labels = vec!["e-1".to_string(), "e0".to_string()];
    labels.extend((1..=2 * n).map(|t| format!("e{t}")));
    let mut brackets = vec![(0, 1, 1, spec.k.clone())];
    for i in 0..n {
        brackets.push((i + 2, n + i + 2, 1, T::one()));
    }
    for t in 0..2 * n {
        for s in 0..2 * n {
            let c = &spec.m[(s, t)];
            if !c.is_zero() {
                brackets.push((0, t + 2, s + 2, c.clone()));
            }
        }
    }
    LieAlgebra::new(labels, brackets, FieldContext::of::<T>())?.into_validated()
}

/// `G_{1,ξ}` whose ξ-blocks are `[[2, −1], [1, −1]]` (characteristic
/// polynomial `T² − T − 1`) on each pair `(e_i, e_{n+i})`.
pub fn golden_instance<T: Scalar>(n: usize) -> Result<LieAlgebra<T>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "golden instance needs n >= 2".into(),
        ));
    }
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m[(i, i)] = T::from_i64(2);
        m[(n + i, n + i)] = T::from_i64(-1);
        m[(n + i, i)] = T::from_i64(1);
        m[(i, n + i)] = T::from_i64(-1);
    }
    g_k_xi(&GkXiSpec::new(n, T::one(), m)?)
}

/// `G_{1,ξ}` with `ξ = diag(rates, 1 − rates)`.
pub fn diagonal_instance<T: Scalar>(rates: &[T]) -> Result<LieAlgebra<T>> {
    let n = rates.len();
    let entries: Vec<T> = rates
        .iter()
        .cloned()
        .chain(rates.iter().map(|r| T::one() - r.clone()))
        .collect();
    g_k_xi(&GkXiSpec::new(n, T::one(), Matrix::diagonal(&entries))?)
}

/// The two-dimensional algebra `[e1, e2] = e2`.
pub fn aff1_example() -> LieAlgebra<Rational> {
    LieAlgebra::new(
        LieAlgebra::<Rational>::default_labels(2),
        [(0, 1, 1, Rational::from_i64(1))],
        FieldContext::exact(),
    )
    .and_then(LieAlgebra::into_validated)
    .expect("aff(1) is a Lie algebra")
}

pub const PRESET_NAMES: [&str; 4] = ["aff1", "g7a", "g7b", "g7c"];

/// A named example with its canonical Frobenius functional (`e2*` for
/// `aff1`, `e0*` for the `G_{k,ξ}` presets). `k_tilde` parametrizes `g7c`
/// (default 1) and is rejected elsewhere.
pub fn example_preset(
    name: &str,
    k_tilde: Option<Rational>,
) -> Result<(LieAlgebra<Rational>, Functional<Rational>)> {
    if k_tilde.is_some() && name != "g7c" {
        return Err(Error::InvalidArgument(format!(
            "preset {name} takes no parameter"
        )));
    }
    let q = |n: i64| Rational::from_i64(n);
    let m = |rows: &[&[i64]]| Matrix::<Rational>::from_i64_rows(rows);
    let algebra = match name {
        "aff1" => return Ok((aff1_example(), Functional::unit(2, 1))),
        "g7a" => g_k_xi(&GkXiSpec::new(1, q(1), m(&[&[0, 0], &[0, 1]]))?)?,
        "g7b" => g_k_xi(&GkXiSpec::new(1, q(-2), m(&[&[-1, -1], &[0, -1]]))?)?,
        "g7c" => {
            let kt = k_tilde.unwrap_or_else(|| q(1));
            if num_traits::Zero::is_zero(&kt) {
                return Err(Error::InvalidArgument("k̃ must be nonzero".into()));
            }
            let xi = Matrix::from_rows(vec![vec![kt.clone(), q(1)], vec![q(-1), kt.clone()]])?;
            g_k_xi(&GkXiSpec::new(1, kt * q(2), xi)?)?
        }
        other => return Err(Error::InvalidArgument(format!("unknown preset {other}"))),
    };
    let dim = algebra.dim();
    Ok((algebra, Functional::unit(dim, 1)))
}
