//! Derivation algebras, inner/outer classification, and the check that
//! principal elements of algebras with only inner derivations have semisimple
//! adjoint operators.

use crate::catalog::{csp_check, g_k_xi, GkXiSpec};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusStructure;
use crate::lie::LieAlgebra;
use crate::linalg::{in_span, independent_subset, kernel_basis};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::spectral::{jordan_chevalley, JordanPair};

#[derive(Debug, Clone, PartialEq)]
pub struct DerivationSpace<T: Scalar> {
    /// Basis of `Der(𝒢)`; entry `[a][b]` is the coefficient of `e_a` in `D(e_b)`.
    pub basis: Vec<Matrix<T>>,
    /// Independent subset of `{ad(e_i)}`.
    pub inner_basis: Vec<Matrix<T>>,
    pub outer_dim: usize,
}

impl<T: Scalar> DerivationSpace<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn inner_dim(&self) -> usize {
        self.inner_basis.len()
    }

    pub fn is_inner(&self, d: &Matrix<T>, algebra: &LieAlgebra<T>) -> Result<bool> {
        let p = algebra.dim();
        let flat: Vec<Vec<T>> = self.inner_basis.iter().map(Matrix::flatten).collect();
        in_span(p * p, &flat, &d.flatten(), algebra.field())
    }
}

/// Kernel of the linear system `D[e_i, e_j] = [D e_i, e_j] + [e_i, D e_j]`,
/// one equation per pair `i < j` and output coordinate `k`, in the `p²`
/// unknowns `D[a][b]` (row-major).
pub fn derivation_basis<T: Scalar>(algebra: &LieAlgebra<T>) -> Result<DerivationSpace<T>> {
    algebra.ensure_validated()?;
    let p = algebra.dim();
    let field = algebra.field();
    let pairs: Vec<(usize, usize)> = (0..p)
        .flat_map(|i| (i + 1..p).map(move |j| (i, j)))
        .collect();
    let mut system = Matrix::zeros(pairs.len() * p, p * p);
    for (row_block, &(i, j)) in pairs.iter().enumerate() {
        for k in 0..p {
            let r = row_block * p + k;
            // Σ_m c[m][i][j]·D[k][m]
            for (m, c) in algebra.basis_bracket(i, j).iter().enumerate() {
                if !c.is_zero() {
                    system[(r, k * p + m)] += c;
                }
            }
            // − Σ_a D[a][i]·c[k][a][j] − Σ_a D[a][j]·c[k][i][a]
            for a in 0..p {
                let c = algebra.constant(a, j, k);
                if !c.is_zero() {
                    system[(r, a * p + i)] -= c;
                }
                let c = algebra.constant(i, a, k);
                if !c.is_zero() {
                    system[(r, a * p + j)] -= c;
                }
            }
        }
    }
    let basis: Vec<Matrix<T>> = kernel_basis(&system, field)
        .into_iter()
        .map(|v| Matrix::from_vec(p, p, v))
        .collect::<Result<_>>()?;
    let ads: Vec<Matrix<T>> = (0..p).map(|i| algebra.ad_basis(i)).collect();
    let flat: Vec<Vec<T>> = ads.iter().map(Matrix::flatten).collect();
    let inner_basis: Vec<Matrix<T>> = independent_subset(p * p, &flat, field)?
        .into_iter()
        .map(|i| ads[i].clone())
        .collect();
    let outer_dim = basis
        .len()
        .checked_sub(inner_basis.len())
        .ok_or_else(|| Error::Internal("more inner derivations than derivations".into()))?;
    Ok(DerivationSpace {
        basis,
        inner_basis,
        outer_dim,
    })
}

/// Checks `D[e_i, e_j] = [D e_i, e_j] + [e_i, D e_j]` on all basis pairs.
pub fn is_derivation<T: Scalar>(algebra: &LieAlgebra<T>, d: &Matrix<T>) -> Result<bool> {
    let p = algebra.dim();
    if (d.rows(), d.cols()) != (p, p) {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator on a {p}-dimensional algebra",
            d.rows(),
            d.cols()
        )));
    }
    let image = |b: usize| crate::lie::Vector(d.column(b));
    let unit = |b: usize| crate::lie::Vector::unit(p, b);
    let field = algebra.field();
    for i in 0..p {
        for j in i + 1..p {
            let lhs = crate::lie::Vector(d.mul_vec(algebra.basis_bracket(i, j))?);
            let rhs = algebra
                .bracket(&image(i), &unit(j))?
                .add(&algebra.bracket(&unit(i), &image(j))?);
            if !lhs.sub(&rhs).is_negligible(field) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn all_derivations_inner<T: Scalar>(algebra: &LieAlgebra<T>) -> Result<bool> {
    Ok(derivation_basis(algebra)?.outer_dim == 0)
}

/// `D(e-1) = 0`, `D(e0) = k′·e0`, `D(e_t) = ξ′(e_t)` on `G_{k,ξ}`, for `ξ′`
/// conformal with factor `k′` and commuting with `ξ`.
pub fn gkxi_outer_derivation<T: Scalar>(
    spec: &GkXiSpec<T>,
    k_prime: &T,
    xi_prime: &Matrix<T>,
) -> Result<Matrix<T>> {
    let n = spec.n();
    if !csp_check(xi_prime, k_prime, n) {
        return Err(Error::CspViolation(format!(
            "ξ′ is not conformal with factor {}",
            k_prime.render()
        )));
    }
    let xi = spec.xi();
    let field = crate::scalar::FieldContext::of::<T>();
    if !xi.commutator(xi_prime).is_zero_matrix(&field) {
        return Err(Error::InvalidArgument("ξ′ does not commute with ξ".into()));
    }
    let p = 2 * n + 2;
    let d = Matrix::from_fn(p, p, |a, b| match (a, b) {
        (1, 1) => k_prime.clone(),
        (a, b) if a >= 2 && b >= 2 => xi_prime[(a - 2, b - 2)].clone(),
        _ => T::zero(),
    });
    if !is_derivation(&g_k_xi(spec)?, &d)? {
        return Err(Error::NotDerivation(
            "D(k′, ξ′) fails the derivation identity".into(),
        ));
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport<T: Scalar> {
    pub derivation_dim: usize,
    pub inner_dim: usize,
    pub outer_dim: usize,
    pub all_inner: bool,
    pub jordan: JordanPair<T>,
    pub nilpotent_zero: bool,
}

impl<T: Scalar> PipelineReport<T> {
    /// "Only inner derivations ⇒ `ad(x₀)` semisimple"; the converse is not claimed.
    pub fn consistent(&self) -> bool {
        !self.all_inner || self.nilpotent_zero
    }
}

/// Derivation dimensions and the Jordan–Chevalley split of `ad(x₀)`.
pub fn principal_semisimplicity_pipeline<T: Scalar>(
    structure: &FrobeniusStructure<'_, T>,
) -> Result<PipelineReport<T>> {
    let algebra = structure.algebra();
    let space = derivation_basis(algebra)?;
    let jordan = jordan_chevalley(&algebra.ad(&structure.x0)?)?;
    Ok(PipelineReport {
        derivation_dim: space.dim(),
        inner_dim: space.inner_dim(),
        outer_dim: space.outer_dim,
        all_inner: space.outer_dim == 0,
        nilpotent_zero: jordan.nilpotent_is_zero(),
        jordan,
    })
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::catalog::{aff, aff1_example, example_preset};
    use crate::frobenius::principal_element;
    use crate::scalar::FieldContext;
    use crate::Rational;

    type M = Matrix<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn aff1_derivations() {
        let l = aff1_example();
        let space = derivation_basis(&l).unwrap();
        assert_eq!((space.dim(), space.outer_dim), (2, 0));
        // Der = {e1 ↦ b·e2, e2 ↦ d·e2}
        for d in &space.basis {
            assert!(d[(0, 0)].is_zero() && d[(0, 1)].is_zero());
            assert!(is_derivation(&l, d).unwrap());
        }
    }

    #[test]
    fn abelian_derivations_are_all_outer() {
        let ab = LieAlgebra::<Rational>::abelian(3, FieldContext::exact()).unwrap();
        let space = derivation_basis(&ab).unwrap();
        assert_eq!((space.dim(), space.outer_dim), (9, 9));
        assert!(!all_derivations_inner(&ab).unwrap());
    }

    #[test]
    fn aff2_has_only_inner_derivations() {
        let a2 = aff::<Rational>(2, FieldContext::exact()).unwrap();
        let space = derivation_basis(&a2).unwrap();
        assert_eq!((space.dim(), space.outer_dim), (6, 0));
    }

    #[test]
    fn g_family_outer_derivation() {
        let spec = GkXiSpec::new(1, q(1, 1), M::diagonal(&[q(0, 1), q(1, 1)])).unwrap();
        let d = gkxi_outer_derivation(&spec, &q(1, 1), &M::identity(2).scale(&q(1, 2))).unwrap();
        assert_eq!(d, M::diagonal(&[q(0, 1), q(1, 1), q(1, 2), q(1, 2)]));
        let g = g_k_xi(&spec).unwrap();
        let space = derivation_basis(&g).unwrap();
        assert!(!space.is_inner(&d, &g).unwrap());
        assert!(!all_derivations_inner(&g).unwrap());

        let zero = gkxi_outer_derivation(&spec, &q(0, 1), &M::zeros(2, 2)).unwrap();
        assert_eq!(zero, M::zeros(4, 4));

        // ξ′ = ξ with k′ = k is a derivation; whether it is inner is only recorded
        let d = gkxi_outer_derivation(&spec, &q(1, 1), spec.xi()).unwrap();
        assert!(is_derivation(&g, &d).unwrap());
        let _ = space.is_inner(&d, &g).unwrap();

        let not_csp = M::from_i64_rows(&[&[1, 0], &[0, 1]]);
        assert!(gkxi_outer_derivation(&spec, &q(1, 1), &not_csp).is_err());
    }

    #[test]
    fn pipeline_examples() {
        let (b, alpha) = example_preset("g7b", None).unwrap();
        let f = principal_element(&b, &alpha).unwrap();
        let r = principal_semisimplicity_pipeline(&f).unwrap();
        assert!(!r.all_inner && !r.nilpotent_zero && r.consistent());

        let (a, alpha) = example_preset("g7a", None).unwrap();
        let f = principal_element(&a, &alpha).unwrap();
        let r = principal_semisimplicity_pipeline(&f).unwrap();
        assert!(!r.all_inner && r.nilpotent_zero);
    }
}
