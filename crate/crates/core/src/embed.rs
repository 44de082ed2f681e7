//! Faithful representation of an algebra with a compatible left-symmetric
//! product in `sl(p+1)`.
//!
//! `φ(x) = [[L_x − c·I, x], [0, −c]]` with `c = Tr(L_x)/(p+1)`. The
//! uncorrected block matrix `[[L_x, x], [0, −Tr L_x]]` is traceless but not a
//! homomorphism: its commutators pick up `Tr(L_x)·y − Tr(L_y)·x` in the last
//! column. [`embed_uncorrected`] builds it for comparison.

use crate::check::CheckResult;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, Vector};
use crate::linalg::{rank, solve_linear};
use crate::lsa::LsaProduct;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub const TRACELESS: &str = "traceless";
pub const HOMOMORPHISM: &str = "bracket preserved";
pub const INJECTIVE: &str = "injective";

#[derive(Debug, Clone, PartialEq)]
pub struct SlEmbedding<T: Scalar> {
    /// `images[i] = φ(e_i)`, each `(p+1) × (p+1)`.
    pub images: Vec<Matrix<T>>,
}

impl<T: Scalar> SlEmbedding<T> {
    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, x: &Vector<T>) -> Result<Matrix<T>> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for an embedding of dimension {}",
                x.dim(),
                self.dim()
            )));
        }
        let size = self.dim() + 1;
        let mut out = Matrix::zeros(size, size);
        for (m, c) in self.images.iter().zip(x.coords()) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        Ok(out)
    }

    /// Trace of `ad(φ(x))` restricted to `φ(𝒢)`, in the basis `φ(e_i)`.
    pub fn restricted_ad_trace(&self, x: &Vector<T>, algebra: &LieAlgebra<T>) -> Result<T> {
        let p = self.dim();
        let size = p + 1;
        let phi_x = self.image(x)?;
        let flat: Vec<Vec<T>> = self.images.iter().map(Matrix::flatten).collect();
        let basis = Matrix::from_columns(size * size, &flat)?;
        let mut trace = T::zero();
        for (j, m) in self.images.iter().enumerate() {
            let coords = solve_linear(&basis, &phi_x.commutator(m).flatten(), algebra.field())?
                .ok_or_else(|| Error::Internal("image is not closed under brackets".into()))?;
            trace += &coords[j];
        }
        Ok(trace)
    }
}

fn check_inputs<T: Scalar>(algebra: &LieAlgebra<T>, product: &LsaProduct<T>) -> Result<()> {
    if algebra.dim() == 0 {
        return Err(Error::InvalidArgument(
            "cannot embed the zero algebra".into(),
        ));
    }
    product.verify(algebra)
}

fn build<T: Scalar>(product: &LsaProduct<T>, corrected: bool) -> Result<SlEmbedding<T>> {
    let p = product.dim();
    let scale = T::one() / T::from_i64(p as i64 + 1);
    let images = (0..p)
        .map(|i| {
            let l = product.left_mult(&Vector::unit(p, i))?;
            let t = l.trace();
            let (shift, corner) = if corrected {
                let c = t * scale.clone();
                (c.clone(), -c)
            } else {
                (T::zero(), -t)
            };
            Ok(Matrix::from_fn(p + 1, p + 1, |r, c| match (r < p, c < p) {
                (true, true) if r == c => l[(r, c)].clone() - shift.clone(),
                (true, true) => l[(r, c)].clone(),
                (true, false) => {
                    if r == i {
                        T::one()
                    } else {
                        T::zero()
                    }
                }
                (false, true) => T::zero(),
                (false, false) => corner.clone(),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(SlEmbedding { images })
}

/// The trace-corrected embedding; verified before it is returned.
pub fn embed<T: Scalar>(
    algebra: &LieAlgebra<T>,
    product: &LsaProduct<T>,
) -> Result<SlEmbedding<T>> {
    check_inputs(algebra, product)?;
    let embedding = build(product, true)?;
    let check = verify_embedding(&embedding, algebra)?;
    if let Some(first) = check.failures.first() {
        return Err(Error::Internal(format!("embedding {first}")));
    }
    Ok(embedding)
}

/// `[[L_x, x], [0, −Tr L_x]]` without the trace correction. Not a
/// homomorphism when some `Tr L_x ≠ 0`.
pub fn embed_uncorrected<T: Scalar>(
    algebra: &LieAlgebra<T>,
    product: &LsaProduct<T>,
) -> Result<SlEmbedding<T>> {
    check_inputs(algebra, product)?;
    build(product, false)
}

/// Tracelessness of each image, `[φ(e_i), φ(e_j)] = φ([e_i, e_j])` for
/// `i < j`, and injectivity (rank of the stacked images equals `p`).
pub fn verify_embedding<T: Scalar>(
    embedding: &SlEmbedding<T>,
    algebra: &LieAlgebra<T>,
) -> Result<CheckResult> {
    let p = algebra.dim();
    if embedding.dim() != p
        || embedding
            .images
            .iter()
            .any(|m| (m.rows(), m.cols()) != (p + 1, p + 1))
    {
        return Err(Error::DimensionMismatch(format!(
            "embedding does not consist of {p} matrices of size {}",
            p + 1
        )));
    }
    let field = algebra.field();
    let mut result = CheckResult::default();
    for (i, m) in embedding.images.iter().enumerate() {
        if !m
            .trace()
            .is_negligible(field.tolerance() * (1.0 + m.max_magnitude()))
        {
            result.record(TRACELESS, vec![i]);
        }
    }
    for i in 0..p {
        for j in i + 1..p {
            let lhs = embedding.images[i].commutator(&embedding.images[j]);
            let rhs = embedding.image(&Vector(algebra.basis_bracket(i, j).to_vec()))?;
            if !lhs.approx_eq(&rhs, field) {
                result.record(HOMOMORPHISM, vec![i, j]);
            }
        }
    }
    let stacked = Matrix::from_rows(embedding.images.iter().map(Matrix::flatten).collect())?;
    if rank(&stacked, field) != p {
        result.record(INJECTIVE, Vec::new());
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::catalog::{aff1_example, example_preset};
    use crate::frobenius::principal_element;
    use crate::scalar::FieldContext;
    use crate::{Functional, Rational};

    type M = Matrix<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn aff1_images() {
        let l = aff1_example();
        let f = principal_element(&l, &Functional::unit(2, 1)).unwrap();
        let e = embed(&l, &f.lsa().unwrap()).unwrap();
        let phi1 = M::from_rows(vec![
            vec![q(-2, 3), q(0, 1), q(1, 1)],
            vec![q(0, 1), q(1, 3), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(1, 3)],
        ])
        .unwrap();
        let phi2 = M::from_i64_rows(&[&[0, 0, 0], &[-1, 0, 1], &[0, 0, 0]]);
        assert_eq!(e.images, vec![phi1.clone(), phi2.clone()]);
        assert_eq!(phi1.commutator(&phi2), phi2);
        assert!(verify_embedding(&e, &l).unwrap().passed());
    }

    #[test]
    fn uncorrected_form_is_not_a_homomorphism() {
        let l = aff1_example();
        let f = principal_element(&l, &Functional::unit(2, 1)).unwrap();
        let e = embed_uncorrected(&l, &f.lsa().unwrap()).unwrap();
        let check = verify_embedding(&e, &l).unwrap();
        assert!(!check.fails(TRACELESS));
        assert_eq!(check.failures.len(), 1);
        assert_eq!(
            (check.failures[0].property, check.failures[0].basis.clone()),
            (HOMOMORPHISM, vec![0, 1])
        );
    }

    #[test]
    fn abelian_images_are_strictly_upper_triangular() {
        let ab = LieAlgebra::<Rational>::abelian(2, FieldContext::exact()).unwrap();
        let e = embed(&ab, &LsaProduct::zero(&ab).unwrap()).unwrap();
        for m in &e.images {
            for r in 0..3 {
                for c in 0..=r {
                    assert!(m[(r, c)].is_zero());
                }
            }
        }
        let empty = LieAlgebra::<Rational>::abelian(0, FieldContext::exact()).unwrap();
        assert!(embed(&empty, &LsaProduct::zero(&empty).unwrap()).is_err());
    }

    #[test]
    fn example_a_embeds_with_consistent_traces() {
        let (g, alpha) = example_preset("g7a", None).unwrap();
        let f = principal_element(&g, &alpha).unwrap();
        let e = embed(&g, &f.lsa().unwrap()).unwrap();
        assert_eq!(e.images.len(), 4);
        assert!(e.images.iter().all(|m| m.rows() == 5));
        assert_eq!(
            e.restricted_ad_trace(&f.x0, &g).unwrap(),
            g.ad(&f.x0).unwrap().trace()
        );
    }
}
