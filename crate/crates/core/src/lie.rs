//! Lie algebras given by structure constants.
//!
//! Brackets are supplied as sparse triples `[e_i, e_j] += c·e_k` with `i < j`;
//! antisymmetric completion is implicit. Construction never checks the Jacobi
//! identity: [`LieAlgebra::validate`] produces a report and
//! [`LieAlgebra::into_validated`] is the gate every analysis entry point
//! requires.

use std::collections::BTreeMap;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, span_basis};
use crate::matrix::Matrix;
use crate::scalar::{FieldContext, Scalar};

/// Coordinates of an element of the algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<T>(pub Vec<T>);

/// Coordinates of a linear form in the dual basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Functional<T>(pub Vec<T>);

macro_rules! coordinate_type {
    ($name:ident) => {
        impl<T: Scalar> $name<T> {
            pub fn zero(dim: usize) -> Self {
                Self(vec![T::zero(); dim])
            }

            /// The `i`-th basis element.
            pub fn unit(dim: usize, i: usize) -> Self {
                let mut v = vec![T::zero(); dim];
                v[i] = T::one();
                Self(v)
            }

            pub fn from_i64(coords: &[i64]) -> Self {
                Self(coords.iter().map(|&c| T::from_i64(c)).collect())
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[T] {
                &self.0
            }

            pub fn scale(&self, c: &T) -> Self {
                Self(self.0.iter().map(|x| x.clone() * c.clone()).collect())
            }

            pub fn add(&self, other: &Self) -> Self {
                Self(
                    self.0
                        .iter()
                        .zip(&other.0)
                        .map(|(a, b)| a.clone() + b.clone())
                        .collect(),
                )
            }

            pub fn sub(&self, other: &Self) -> Self {
                Self(
                    self.0
                        .iter()
                        .zip(&other.0)
                        .map(|(a, b)| a.clone() - b.clone())
                        .collect(),
                )
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|x| x.is_zero())
            }

            pub fn is_negligible(&self, ctx: &FieldContext) -> bool {
                let scale = 1.0 + self.0.iter().map(Scalar::magnitude).fold(0.0, f64::max);
                self.0
                    .iter()
                    .all(|x| x.is_negligible(ctx.tolerance() * scale))
            }
        }

        impl<T> Index<usize> for $name<T> {
            type Output = T;

            fn index(&self, i: usize) -> &T {
                &self.0[i]
            }
        }
    };
}

coordinate_type!(Vector);
coordinate_type!(Functional);

impl<T: Scalar> Functional<T> {
    /// `⟨self, v⟩`.
    pub fn pair(&self, v: &Vector<T>) -> T {
        self.0
            .iter()
            .zip(&v.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }
}

/// One failed Jacobi triple with its residual `[e_i,[e_j,e_k]] + cyclic`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiViolation<T> {
    pub triple: (usize, usize, usize),
    pub residual: Vector<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport<T> {
    pub violations: Vec<JacobiViolation<T>>,
}

impl<T> ValidationReport<T> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra<T> {
    dim: usize,
    labels: Vec<String>,
    /// Sparse source of truth, keys `(i, j, k)` with `i < j`.
    structure: BTreeMap<(usize, usize, usize), T>,
    /// Dense antisymmetric table: `table[i*dim + j]` is `[e_i, e_j]`.
    table: Vec<Vec<T>>,
    field: FieldContext,
    validated: bool,
}

impl<T: Scalar> LieAlgebra<T> {
    /// Builds an unvalidated algebra. Triples accumulate (`+=`), must satisfy
    /// `i < j`, and indices must be in range.
    pub fn new(
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, usize, T)>,
        field: FieldContext,
    ) -> Result<Self> {
        field.ensure_matches::<T>()?;
        let dim = labels.len();
        let mut structure: BTreeMap<(usize, usize, usize), T> = BTreeMap::new();
        for (i, j, k, c) in brackets {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidArgument(format!(
                    "bracket index ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            if i >= j {
                return Err(Error::InvalidArgument(format!(
                    "bracket ({i},{j}) must have i < j"
                )));
            }
            *structure.entry((i, j, k)).or_insert_with(T::zero) += &c;
        }
        structure.retain(|_, c| !c.is_zero());
        let mut table = vec![vec![T::zero(); dim]; dim * dim];
        for (&(i, j, k), c) in &structure {
            table[i * dim + j][k] = c.clone();
            table[j * dim + i][k] = -c.clone();
        }
        Ok(Self {
            dim,
            labels,
            structure,
            table,
            field,
            validated: false,
        })
    }

    /// Labels `e1, …, e_dim`.
    pub fn default_labels(dim: usize) -> Vec<String> {
        (1..=dim).map(|i| format!("e{i}")).collect()
    }

    pub fn abelian(dim: usize, field: FieldContext) -> Result<Self> {
        Self::new(Self::default_labels(dim), [], field)?.into_validated()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    /// Nonzero structure constants `(i, j, k, c)` with `i < j`, sorted.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &T)> {
        self.structure.iter().map(|(&(i, j, k), c)| (i, j, k, c))
    }

    /// `[e_i, e_j]` as a coordinate slice.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[T] {
        &self.table[i * self.dim + j]
    }

    /// Structure constant `c^k_{ij}`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &T {
        &self.table[i * self.dim + j][k]
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Every Jacobi triple `i < j < k` whose jacobiator does not vanish.
    pub fn validate(&self) -> ValidationReport<T> {
        let p = self.dim;
        let mut violations = Vec::new();
        for i in 0..p {
            for j in i + 1..p {
                for k in j + 1..p {
                    let residual = self.jacobiator(i, j, k);
                    if !residual.is_negligible(&self.field) {
                        violations.push(JacobiViolation {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vector<T> {
        let unit = |a| Vector::unit(self.dim, a);
        let term = |a: usize, b: usize, c: usize| {
            let inner = Vector(self.basis_bracket(b, c).to_vec());
            self.bracket_unchecked(&unit(a), &inner)
        };
        term(i, j, k).add(&term(j, k, i)).add(&term(k, i, j))
    }

    /// Runs validation and marks the algebra as usable for analysis.
    pub fn into_validated(mut self) -> Result<Self> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::Jacobi(report.violations.len()));
        }
        self.validated = true;
        Ok(self)
    }

    pub fn ensure_validated(&self) -> Result<()> {
        if self.validated {
            Ok(())
        } else {
            Err(Error::NotValidated)
        }
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.dim {
            Ok(())
        } else {
            Err(Error::dims(format!(
                "expected {} coordinates, got {len}",
                self.dim
            )))
        }
    }

    pub fn bracket(&self, x: &Vector<T>, y: &Vector<T>) -> Result<Vector<T>> {
        self.check_dim(x.dim())?;
        self.check_dim(y.dim())?;
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &Vector<T>, y: &Vector<T>) -> Vector<T> {
        let p = self.dim;
        let mut out = vec![T::zero(); p];
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.0.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let coef = xi.clone() * yj.clone();
                for (k, c) in self.basis_bracket(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += coef.clone() * c.clone();
                    }
                }
            }
        }
        Vector(out)
    }

    /// Matrix of `y ↦ [x, y]`.
    pub fn ad(&self, x: &Vector<T>) -> Result<Matrix<T>> {
        self.check_dim(x.dim())?;
        let p = self.dim;
        let columns: Vec<Vec<T>> = (0..p)
            .map(|j| self.bracket_unchecked(x, &Vector::unit(p, j)).0)
            .collect();
        Matrix::from_columns(p, &columns)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix<T> {
        self.ad(&Vector::unit(self.dim, i))
            .expect("basis vector has the right length")
    }

    /// Basis of `[𝒢, 𝒢]` in reduced echelon form.
    pub fn derived_ideal_basis(&self) -> Result<Vec<Vector<T>>> {
        self.ensure_validated()?;
        let p = self.dim;
        let brackets: Vec<Vec<T>> = (0..p)
            .flat_map(|i| (i + 1..p).map(move |j| (i, j)))
            .map(|(i, j)| self.basis_bracket(i, j).to_vec())
            .collect();
        Ok(span_basis(p, &brackets, &self.field)?
            .into_iter()
            .map(Vector)
            .collect())
    }

    /// Basis of `Z(𝒢)`: kernel of all `ad_{e_i}` stacked.
    pub fn center_basis(&self) -> Result<Vec<Vector<T>>> {
        self.ensure_validated()?;
        let p = self.dim;
        // row (i, k) of the stacked system: x ↦ [e_i, x]_k
        let stacked = Matrix::from_fn(p * p, p, |r, j| self.constant(r / p, j, r % p).clone());
        Ok(kernel_basis(&stacked, &self.field)
            .into_iter()
            .map(Vector)
            .collect())
    }

    /// True iff every `ad_{e_i}` is traceless.
    pub fn is_unimodular(&self) -> Result<bool> {
        self.ensure_validated()?;
        let tol = self.field.tolerance();
        Ok((0..self.dim).all(|i| self.ad_basis(i).trace().is_negligible(tol)))
    }

    /// Basis of the annihilator of `[𝒢, 𝒢]` (closed linear forms).
    pub fn closed_one_forms_basis(&self) -> Result<Vec<Functional<T>>> {
        let derived = self.derived_ideal_basis()?;
        let p = self.dim;
        if derived.is_empty() {
            return Ok((0..p).map(|i| Functional::unit(p, i)).collect());
        }
        let rows = Matrix::from_rows(derived.into_iter().map(|v| v.0).collect())?;
        Ok(kernel_basis(&rows, &self.field)
            .into_iter()
            .map(Functional)
            .collect())
    }

    /// Block-diagonal direct sum; both summands become ideals. Labels of the
    /// second summand are kept unless they collide, in which case they are
    /// suffixed with `'`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field.kind().name(),
                found: other.field.kind().name(),
            });
        }
        let shift = self.dim;
        let mut labels = self.labels.clone();
        for l in &other.labels {
            if labels.contains(l) {
                labels.push(format!("{l}'"));
            } else {
                labels.push(l.clone());
            }
        }
        let brackets = self
            .structure_constants()
            .map(|(i, j, k, c)| (i, j, k, c.clone()))
            .chain(
                other
                    .structure_constants()
                    .map(|(i, j, k, c)| (i + shift, j + shift, k + shift, c.clone())),
            )
            .collect::<Vec<_>>();
        let sum = Self::new(labels, brackets, self.field)?;
        if self.validated && other.validated {
            sum.into_validated()
        } else {
            Ok(sum)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type L = LieAlgebra<Rational>;
    type V = Vector<Rational>;

    fn aff1() -> L {
        L::new(
            L::default_labels(2),
            [(0, 1, 1, Rational::from_i64(1))],
            FieldContext::exact(),
        )
        .unwrap()
        .into_validated()
        .unwrap()
    }

    fn heisenberg() -> L {
        L::new(
            L::default_labels(3),
            [(0, 1, 2, Rational::from_i64(1))],
            FieldContext::exact(),
        )
        .unwrap()
        .into_validated()
        .unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(aff1().validate().is_valid());
        assert!(L::abelian(4, FieldContext::exact())
            .unwrap()
            .validate()
            .is_valid());

        let one = Rational::from_i64(1);
        let broken = L::new(
            L::default_labels(3),
            [(0, 1, 0, one.clone()), (0, 2, 1, one)],
            FieldContext::exact(),
        )
        .unwrap();
        let report = broken.validate();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].triple, (0, 1, 2));
        assert_eq!(report.violations[0].residual, V::from_i64(&[0, -1, 0]));
        assert_eq!(broken.into_validated(), Err(Error::Jacobi(1)));
    }

    #[test]
    fn constructor_rejects_bad_triples() {
        let c = Rational::from_i64(1);
        let ctx = FieldContext::exact();
        assert!(L::new(L::default_labels(2), [(1, 0, 0, c.clone())], ctx).is_err());
        assert!(L::new(L::default_labels(2), [(0, 0, 0, c.clone())], ctx).is_err());
        assert!(L::new(L::default_labels(2), [(0, 1, 2, c.clone())], ctx).is_err());
        let approx = FieldContext::of::<num_complex::Complex64>();
        assert!(matches!(
            L::new(L::default_labels(2), [(0, 1, 1, c)], approx),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn bracket_and_ad() {
        let l = aff1();
        assert_eq!(
            l.bracket(&V::unit(2, 0), &V::unit(2, 1)).unwrap(),
            V::unit(2, 1)
        );
        let x = V::from_i64(&[3, -7]);
        assert!(l.bracket(&x, &x).unwrap().is_zero());
        assert_eq!(
            l.ad(&V::unit(2, 0)).unwrap(),
            Matrix::from_i64_rows(&[&[0, 0], &[0, 1]])
        );
        assert_eq!(l.ad(&V::zero(2)).unwrap(), Matrix::zeros(2, 2));
        assert!(l.bracket(&V::zero(3), &x).is_err());
    }

    #[test]
    fn characteristic_subspaces() {
        let l = aff1();
        assert_eq!(l.derived_ideal_basis().unwrap(), vec![V::unit(2, 1)]);
        assert!(l.center_basis().unwrap().is_empty());
        assert!(!l.is_unimodular().unwrap());
        assert_eq!(
            l.closed_one_forms_basis().unwrap(),
            vec![Functional::unit(2, 0)]
        );

        let ab = L::abelian(3, FieldContext::exact()).unwrap();
        assert!(ab.derived_ideal_basis().unwrap().is_empty());
        assert_eq!(ab.center_basis().unwrap().len(), 3);
        assert_eq!(ab.closed_one_forms_basis().unwrap().len(), 3);
        assert!(ab.is_unimodular().unwrap());

        assert!(heisenberg().is_unimodular().unwrap());
    }

    #[test]
    fn analysis_requires_validation() {
        let raw = L::new(
            L::default_labels(2),
            [(0, 1, 1, Rational::from_i64(1))],
            FieldContext::exact(),
        )
        .unwrap();
        assert_eq!(raw.derived_ideal_basis(), Err(Error::NotValidated));
        assert_eq!(raw.is_unimodular(), Err(Error::NotValidated));
    }

    #[test]
    fn direct_sums() {
        let s = aff1().direct_sum(&aff1()).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(s.is_validated());
        assert_eq!(
            s.derived_ideal_basis().unwrap(),
            vec![V::unit(4, 1), V::unit(4, 3)]
        );
        assert!(s.center_basis().unwrap().is_empty());

        let empty = L::abelian(0, FieldContext::exact()).unwrap();
        assert_eq!(aff1().direct_sum(&empty).unwrap(), aff1());
    }
}
