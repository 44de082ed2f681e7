//! Left-symmetric products compatible with a Lie bracket.
//!
//! A product `x·y` is left-symmetric when `(xy)z − x(yz) = (yx)z − y(xz)`, and
//! it is compatible with the bracket when `xy − yx = [x, y]`. Together these
//! say that `x ↦ L_x` is a representation of the Lie algebra.

use crate::check::CheckResult;
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusStructure;
use crate::lie::{Functional, LieAlgebra, Vector};
use crate::matrix::Matrix;
use crate::scalar::{FieldContext, Scalar};

/// Multiplication table: `table[i*dim + j]` holds the coordinates of `e_i·e_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LsaProduct<T> {
    dim: usize,
    table: Vec<Vec<T>>,
    field: FieldContext,
}

pub const LEFT_SYMMETRY: &str = "left symmetry";
pub const COMMUTATOR: &str = "commutator equals bracket";
pub const LEFT_REPRESENTATION: &str = "left multiplication is a representation";

impl<T: Scalar> LsaProduct<T> {
    /// Builds a product and verifies both axioms against `algebra`.
    pub fn new(
        algebra: &LieAlgebra<T>,
        triples: impl IntoIterator<Item = (usize, usize, usize, T)>,
    ) -> Result<Self> {
        let product = Self::new_unchecked(algebra.dim(), triples, *algebra.field())?;
        product.verify(algebra)?;
        Ok(product)
    }

    /// Builds a product from sparse `(i, j, k, c)` triples meaning
    /// `e_i·e_j += c·e_k`, without checking any axiom.
    pub fn new_unchecked(
        dim: usize,
        triples: impl IntoIterator<Item = (usize, usize, usize, T)>,
        field: FieldContext,
    ) -> Result<Self> {
        field.ensure_matches::<T>()?;
        let mut table = vec![vec![T::zero(); dim]; dim * dim];
        for (i, j, k, c) in triples {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidLsa(format!(
                    "index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            table[i * dim + j][k] += c;
        }
        Ok(Self { dim, table, field })
    }

    pub fn zero(algebra: &LieAlgebra<T>) -> Result<Self> {
        Self::new(algebra, [])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[T] {
        &self.table[i * self.dim + j]
    }

    /// Nonzero entries as `(i, j, k, c)`.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize, &T)> {
        let p = self.dim;
        self.table.iter().enumerate().flat_map(move |(ij, v)| {
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(k, c)| (ij / p, ij % p, k, c))
        })
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {len}",
                self.dim
            )))
        }
    }

    pub fn product(&self, x: &Vector<T>, y: &Vector<T>) -> Result<Vector<T>> {
        self.check_dim(x.dim())?;
        self.check_dim(y.dim())?;
        let mut out = vec![T::zero(); self.dim];
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let coef = xi.clone() * yj.clone();
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += coef.clone() * c.clone();
                    }
                }
            }
        }
        Ok(Vector(out))
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult(&self, x: &Vector<T>) -> Result<Matrix<T>> {
        self.check_dim(x.dim())?;
        let p = self.dim;
        let columns: Vec<Vec<T>> = (0..p)
            .map(|j| self.product(x, &Vector::unit(p, j)).map(|v| v.0))
            .collect::<Result<_>>()?;
        Matrix::from_columns(p, &columns)
    }

    /// Matrix of `x ↦ x·y`.
    pub fn right_mult(&self, y: &Vector<T>) -> Result<Matrix<T>> {
        self.check_dim(y.dim())?;
        let p = self.dim;
        let columns: Vec<Vec<T>> = (0..p)
            .map(|i| self.product(&Vector::unit(p, i), y).map(|v| v.0))
            .collect::<Result<_>>()?;
        Matrix::from_columns(p, &columns)
    }

    pub fn is_right_unit(&self, y: &Vector<T>) -> Result<bool> {
        let r = self.right_mult(y)?;
        Ok(r.approx_eq(&Matrix::identity(self.dim), &self.field))
    }

    pub fn is_right_nil(&self, y: &Vector<T>) -> Result<bool> {
        Ok(self.right_mult(y)?.is_zero_matrix(&self.field))
    }

    fn left_basis(&self) -> Vec<Matrix<T>> {
        (0..self.dim)
            .map(|i| {
                self.left_mult(&Vector::unit(self.dim, i))
                    .expect("basis vector")
            })
            .collect()
    }

    fn combine(mats: &[Matrix<T>], coords: &[T]) -> Matrix<T> {
        let p = mats.first().map_or(0, Matrix::rows);
        let mut out = Matrix::zeros(p, p);
        for (m, c) in mats.iter().zip(coords) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    /// `xy − yx = [x, y]` on every basis pair `i < j`.
    pub fn commutator_check(&self, algebra: &LieAlgebra<T>) -> CheckResult {
        let mut result = CheckResult::default();
        let p = self.dim;
        let tol = self.field.tolerance();
        for i in 0..p {
            for j in i + 1..p {
                let ok = self
                    .basis_product(i, j)
                    .iter()
                    .zip(self.basis_product(j, i))
                    .zip(algebra.basis_bracket(i, j))
                    .all(|((a, b), c)| {
                        (a.clone() - b.clone() - c.clone())
                            .is_negligible(tol * (1.0 + c.magnitude()))
                    });
                if !ok {
                    result.record(COMMUTATOR, vec![i, j]);
                }
            }
        }
        result
    }

    /// `(e_i e_j) e_k − e_i (e_j e_k)` symmetric in `i, j`, for `i < j`.
    pub fn left_symmetry_check(&self) -> CheckResult {
        let mut result = CheckResult::default();
        let p = self.dim;
        let left = self.left_basis();
        for i in 0..p {
            for j in i + 1..p {
                // as operators in z: L_{e_i e_j} − L_i L_j
                let assoc_ij =
                    &Self::combine(&left, self.basis_product(i, j)) - &(&left[i] * &left[j]);
                let assoc_ji =
                    &Self::combine(&left, self.basis_product(j, i)) - &(&left[j] * &left[i]);
                if !assoc_ij.approx_eq(&assoc_ji, &self.field) {
                    result.record(LEFT_SYMMETRY, vec![i, j]);
                }
            }
        }
        result
    }

    /// `L_{[e_i, e_j]} = [L_i, L_j]` on every basis pair `i < j`; the
    /// offending pairs are reported.
    pub fn left_rep_check(&self, algebra: &LieAlgebra<T>) -> CheckResult {
        let mut result = CheckResult::default();
        let p = self.dim;
        let left = self.left_basis();
        for i in 0..p {
            for j in i + 1..p {
                let lhs = Self::combine(&left, algebra.basis_bracket(i, j));
                if !lhs.approx_eq(&left[i].commutator(&left[j]), &self.field) {
                    result.record(LEFT_REPRESENTATION, vec![i, j]);
                }
            }
        }
        result
    }

    /// Both axioms; a failure is a hard error.
    pub fn verify(&self, algebra: &LieAlgebra<T>) -> Result<()> {
        if algebra.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "product of dimension {} on an algebra of dimension {}",
                self.dim,
                algebra.dim()
            )));
        }
        let check = self
            .commutator_check(algebra)
            .merge(self.left_symmetry_check());
        match check.failures.first() {
            None => Ok(()),
            Some(first) => Err(Error::InvalidLsa(first.to_string())),
        }
    }
}

/// The product determined by `ω(x·y, z) = −ω(y, [x, z])`: for each pair
/// `(i, j)` the functional `z ↦ −ω(e_j, [e_i, z])` is pulled back through `q`.
pub fn lsa_from_frobenius<T: Scalar>(
    structure: &FrobeniusStructure<'_, T>,
) -> Result<LsaProduct<T>> {
    let algebra = structure.algebra();
    let p = algebra.dim();
    let omega = &structure.omega.matrix;
    let mut triples = Vec::new();
    for i in 0..p {
        for j in 0..p {
            let beta: Vec<T> = (0..p)
                .map(|z| {
                    let mut acc = T::zero();
                    for (k, c) in algebra.basis_bracket(i, z).iter().enumerate() {
                        if !c.is_zero() {
                            acc -= c.clone() * omega[(j, k)].clone();
                        }
                    }
                    acc
                })
                .collect();
            let v = structure.q_inv(&Functional(beta));
            triples.extend(
                v.0.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (i, j, k, c)),
            );
        }
    }
    LsaProduct::new(algebra, triples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{aff1_example, example_preset};
    use crate::frobenius::principal_element;
    use crate::Rational;

    type V = Vector<Rational>;
    type M = Matrix<Rational>;

    fn aff1_lsa() -> LsaProduct<Rational> {
        let l = aff1_example();
        let f = principal_element(&l, &Functional::unit(2, 1)).unwrap();
        f.lsa().unwrap()
    }

    #[test]
    fn aff1_table() {
        let p = aff1_lsa();
        assert_eq!(p.basis_product(0, 0), V::from_i64(&[-1, 0]).coords());
        assert_eq!(p.basis_product(0, 1), V::from_i64(&[0, 0]).coords());
        assert_eq!(p.basis_product(1, 0), V::from_i64(&[0, -1]).coords());
        assert_eq!(p.basis_product(1, 1), V::from_i64(&[0, 0]).coords());
    }

    #[test]
    fn multiplication_operators() {
        let p = aff1_lsa();
        assert_eq!(
            p.left_mult(&V::unit(2, 0)).unwrap(),
            M::from_i64_rows(&[&[-1, 0], &[0, 0]])
        );
        assert_eq!(p.left_mult(&V::zero(2)).unwrap(), M::zeros(2, 2));
        assert_eq!(
            p.left_mult(&V::from_i64(&[-1, 0])).unwrap(),
            M::from_i64_rows(&[&[1, 0], &[0, 0]])
        );
        assert_eq!(
            p.right_mult(&V::from_i64(&[-1, 0])).unwrap(),
            M::identity(2)
        );
        assert_eq!(p.right_mult(&V::unit(2, 1)).unwrap(), M::zeros(2, 2));
        assert_eq!(p.right_mult(&V::zero(2)).unwrap(), M::zeros(2, 2));
        assert!(p.left_mult(&V::zero(3)).is_err());
    }

    #[test]
    fn right_units_and_nils() {
        let p = aff1_lsa();
        assert!(p.is_right_unit(&V::from_i64(&[-1, 0])).unwrap());
        assert!(p.is_right_nil(&V::unit(2, 1)).unwrap());
        let e1 = V::unit(2, 0);
        assert!(!p.is_right_unit(&e1).unwrap() && !p.is_right_nil(&e1).unwrap());
    }

    #[test]
    fn perturbed_table_is_caught() {
        let l = aff1_example();
        let p = aff1_lsa();
        assert!(p.left_rep_check(&l).passed());
        let mut triples: Vec<_> = p
            .triples()
            .map(|(i, j, k, c)| (i, j, k, c.clone()))
            .collect();
        triples.push((1, 1, 1, Rational::from_i64(1)));
        let bad = LsaProduct::new_unchecked(2, triples.clone(), *l.field()).unwrap();
        let check = bad.left_rep_check(&l);
        assert_eq!(check.failures.len(), 1);
        assert_eq!(check.failures[0].basis, vec![0, 1]);
        assert!(matches!(
            LsaProduct::new(&l, triples),
            Err(Error::InvalidLsa(_))
        ));
    }

    #[test]
    fn zero_product_on_abelian() {
        let ab = LieAlgebra::<Rational>::abelian(3, FieldContext::exact()).unwrap();
        let p = LsaProduct::zero(&ab).unwrap();
        assert!(p.left_rep_check(&ab).passed());
        // the zero product is not compatible with a nonabelian bracket
        assert!(LsaProduct::zero(&aff1_example()).is_err());
    }

    #[test]
    fn example_a_units_and_nils() {
        let (g, alpha) = example_preset("g7a", None).unwrap();
        let f = principal_element(&g, &alpha).unwrap();
        let p = f.lsa().unwrap();
        assert!(p.is_right_unit(&V::from_i64(&[-1, 0, 0, 0])).unwrap());
        assert!(p.is_right_nil(&V::unit(4, 1)).unwrap());
        assert!(p.is_right_nil(&V::unit(4, 3)).unwrap());
        assert!(!p.is_right_nil(&V::unit(4, 2)).unwrap());
    }
}
