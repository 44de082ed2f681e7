//! Frobenius structures: the coboundary form `ω = ∂α`, the map
//! `q(x) = ω(x, ·)`, principal elements, right-nils and right-units,
//! conformal factors and the skew tensor `r = q⁻¹`.
//!
//! Conventions: `Ω[i][j] = ω(e_i, e_j) = −α([e_i, e_j])`, and column `i` of the
//! q-matrix holds `q(e_i)` in dual coordinates, so `q(x) = Q·x` and `Q = Ωᵀ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lie::{Functional, LieAlgebra, Vector};
use crate::linalg::{determinant, in_span, inverse, solve_linear};
use crate::lsa::{lsa_from_frobenius, LsaProduct};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Skew matrix of a 2-form in the basis of the algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewForm<T: Scalar> {
    pub matrix: Matrix<T>,
}

impl<T: Scalar> SkewForm<T> {
    pub fn eval(&self, x: &Vector<T>, y: &Vector<T>) -> T {
        let my = self.matrix.mul_vec(y.coords()).expect("matching dimension");
        x.coords()
            .iter()
            .zip(&my)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// `Σ_cyclic ω([x,y],z)` on every basis triple vanishes.
    pub fn is_closed(&self, algebra: &LieAlgebra<T>) -> bool {
        let p = algebra.dim();
        let field = algebra.field();
        let unit = |i| Vector::unit(p, i);
        let on = |i: usize, j: usize, k: usize| {
            self.eval(&Vector(algebra.basis_bracket(i, j).to_vec()), &unit(k))
        };
        let tol = field.tolerance() * (1.0 + self.matrix.max_magnitude());
        (0..p).all(|i| {
            (i + 1..p).all(|j| {
                (j + 1..p).all(|k| (on(i, j, k) + on(j, k, i) + on(k, i, j)).is_negligible(tol))
            })
        })
    }
}

/// `Ω[i][j] = −⟨α, [e_i, e_j]⟩`.
pub fn coboundary_form<T: Scalar>(
    algebra: &LieAlgebra<T>,
    alpha: &Functional<T>,
) -> Result<SkewForm<T>> {
    algebra.ensure_validated()?;
    let p = algebra.dim();
    if alpha.dim() != p {
        return Err(Error::DimensionMismatch(format!(
            "functional has {} coordinates, algebra has dimension {p}",
            alpha.dim()
        )));
    }
    let matrix = Matrix::from_fn(p, p, |i, j| {
        -alpha.pair(&Vector(algebra.basis_bracket(i, j).to_vec()))
    });
    Ok(SkewForm { matrix })
}

/// Nondegeneracy of `∂α`.
pub fn is_frobenius_functional<T: Scalar>(
    algebra: &LieAlgebra<T>,
    alpha: &Functional<T>,
) -> Result<bool> {
    let p = algebra.dim();
    if p % 2 == 1 {
        // validation and dimension checks still apply
        coboundary_form(algebra, alpha)?;
        return Ok(false);
    }
    let omega = coboundary_form(algebra, alpha)?;
    let det = determinant(&omega.matrix, algebra.field())?;
    let threshold =
        algebra.field().tolerance() * (1.0 + omega.matrix.max_magnitude()).powi(p as i32);
    Ok(!det.is_negligible(threshold))
}

/// Why a search can prove that no Frobenius functional exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonFrobeniusCertificate {
    OddDimension,
    /// `∂α ≡ 0` for every functional: the algebra is abelian.
    VanishingCoboundary,
    /// A central element lies in the radical of every `∂α`.
    NontrivialCenter,
    /// Frobenius algebras are never unimodular.
    Unimodular,
}

impl NonFrobeniusCertificate {
    pub fn describe(self) -> &'static str {
        match self {
            Self::OddDimension => "odd dimension",
            Self::VanishingCoboundary => "every coboundary 2-form vanishes",
            Self::NontrivialCenter => "nontrivial center",
            Self::Unimodular => "unimodular algebra",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionalSearch<T> {
    Found(Functional<T>),
    /// Proven absent.
    CertifiedNone(NonFrobeniusCertificate),
    /// Nothing found within the search budget; not a proof.
    NotFound,
}

impl<T: Scalar> FunctionalSearch<T> {
    pub fn functional(&self) -> Option<&Functional<T>> {
        match self {
            Self::Found(f) => Some(f),
            _ => None,
        }
    }

    pub fn into_functional(self) -> Option<Functional<T>> {
        match self {
            Self::Found(f) => Some(f),
            _ => None,
        }
    }
}

/// Number of integer combinations tried before random sampling.
pub const INTEGER_SWEEP_BUDGET: usize = 4096;
/// Number of random rational functionals tried last.
pub const RANDOM_SAMPLES: usize = 200;

/// Deterministic search: dual basis vectors, then integer combinations with
/// coefficients in `{−2,…,2}` by growing support (up to
/// [`INTEGER_SWEEP_BUDGET`]), then [`RANDOM_SAMPLES`] seeded random rational
/// functionals.
pub fn find_frobenius_functional<T: Scalar>(
    algebra: &LieAlgebra<T>,
    seed: u64,
) -> Result<FunctionalSearch<T>> {
    algebra.ensure_validated()?;
    let p = algebra.dim();
    if p % 2 == 1 {
        return Ok(FunctionalSearch::CertifiedNone(
            NonFrobeniusCertificate::OddDimension,
        ));
    }
    if algebra.derived_ideal_basis()?.is_empty() {
        return Ok(FunctionalSearch::CertifiedNone(
            NonFrobeniusCertificate::VanishingCoboundary,
        ));
    }
    if !algebra.center_basis()?.is_empty() {
        return Ok(FunctionalSearch::CertifiedNone(
            NonFrobeniusCertificate::NontrivialCenter,
        ));
    }
    if algebra.is_unimodular()? {
        return Ok(FunctionalSearch::CertifiedNone(
            NonFrobeniusCertificate::Unimodular,
        ));
    }
    for i in 0..p {
        let alpha = Functional::unit(p, i);
        if is_frobenius_functional(algebra, &alpha)? {
            return Ok(FunctionalSearch::Found(alpha));
        }
    }
    for coeffs in IntegerSweep::new(p).take(INTEGER_SWEEP_BUDGET) {
        let alpha = Functional(coeffs.iter().map(|&c| T::from_i64(c)).collect());
        if is_frobenius_functional(algebra, &alpha)? {
            return Ok(FunctionalSearch::Found(alpha));
        }
    }
    for alpha in seeded_functionals(p, seed).take(RANDOM_SAMPLES) {
        if is_frobenius_functional(algebra, &alpha)? {
            return Ok(FunctionalSearch::Found(alpha));
        }
    }
    Ok(FunctionalSearch::NotFound)
}

/// Reproducible stream of random rational functionals whose coordinates have
/// numerators and denominators in `[−20, 20]` (denominators nonzero).
pub fn seeded_functionals<T: Scalar>(dim: usize, seed: u64) -> impl Iterator<Item = Functional<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    std::iter::repeat_with(move || {
        Functional(
            (0..dim)
                .map(|_| {
                    let num = rng.gen_range(-20i64..=20);
                    let mut den = rng.gen_range(-20i64..=19);
                    if den >= 0 {
                        den += 1;
                    }
                    T::from_ratio(num, den)
                })
                .collect(),
        )
    })
}

/// Integer coefficient vectors with support of size ≥ 2, growing support
/// first, entries in `{−2,−1,1,2}`, first nonzero entry positive and
/// coefficients coprime (so no vector is a multiple of an earlier one).
struct IntegerSweep {
    dim: usize,
    support: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

const SWEEP_VALUES: [i64; 4] = [1, -1, 2, -2];

impl IntegerSweep {
    fn new(dim: usize) -> Self {
        Self {
            dim,
            support: (0..2.min(dim)).collect(),
            digits: vec![0; 2.min(dim)],
            done: dim < 2,
        }
    }

    fn current(&self) -> Vec<i64> {
        let mut v = vec![0; self.dim];
        for (&idx, &d) in self.support.iter().zip(&self.digits) {
            v[idx] = SWEEP_VALUES[d];
        }
        v
    }

    fn advance(&mut self) {
        // the first support coordinate ranges over the positive values only
        for pos in (0..self.digits.len()).rev() {
            let limit = if pos == 0 { 3 } else { 4 };
            let step = if pos == 0 { 2 } else { 1 };
            self.digits[pos] += step;
            if self.digits[pos] < limit {
                return;
            }
            self.digits[pos] = 0;
        }
        if !next_subset(&mut self.support, self.dim) {
            let s = self.support.len() + 1;
            if s > self.dim {
                self.done = true;
                return;
            }
            self.support = (0..s).collect();
            self.digits = vec![0; s];
        }
    }
}

fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Iterator for IntegerSweep {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        while !self.done {
            let v = self.current();
            self.advance();
            let g = v.iter().fold(0i64, |acc, &c| num_integer::gcd(acc, c));
            if g == 1 {
                return Some(v);
            }
        }
        None
    }
}

/// A Frobenius functional together with everything derived from it.
#[derive(Debug, Clone)]
pub struct FrobeniusStructure<'a, T: Scalar> {
    algebra: &'a LieAlgebra<T>,
    pub alpha: Functional<T>,
    pub omega: SkewForm<T>,
    /// Column `i` is `q(e_i)` in dual coordinates.
    pub q_matrix: Matrix<T>,
    q_inverse: Matrix<T>,
    /// Principal element `x₀ = q⁻¹(α)`.
    pub x0: Vector<T>,
}

/// `x₀ = q⁻¹(α)` and the full structure. Fails with
/// [`Error::DegenerateForm`] when `∂α` is degenerate.
pub fn principal_element<'a, T: Scalar>(
    algebra: &'a LieAlgebra<T>,
    alpha: &Functional<T>,
) -> Result<FrobeniusStructure<'a, T>> {
    let omega = coboundary_form(algebra, alpha)?;
    if !is_frobenius_functional(algebra, alpha)? {
        return Err(Error::DegenerateForm);
    }
    let q_matrix = omega.matrix.transpose();
    let q_inverse = inverse(&q_matrix, algebra.field()).map_err(|_| Error::DegenerateForm)?;
    let x0 = Vector(q_inverse.mul_vec(alpha.coords())?);
    let structure = FrobeniusStructure {
        algebra,
        alpha: alpha.clone(),
        omega,
        q_matrix,
        q_inverse,
        x0,
    };
    let back = structure.q(&structure.x0);
    if !back.sub(alpha).is_negligible(algebra.field()) {
        return Err(Error::Internal("q(x₀) differs from α".into()));
    }
    Ok(structure)
}

/// The set `x₀ + span(right-nils)` of right-units.
#[derive(Debug, Clone, PartialEq)]
pub struct RightUnitSet<T> {
    pub base: Vector<T>,
    pub directions: Vec<Vector<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceIdentity<T> {
    pub trace: T,
    pub half_dim: usize,
    pub trace_matches: bool,
    pub outside_derived_ideal: bool,
}

impl<T> TraceIdentity<T> {
    pub fn passed(&self) -> bool {
        self.trace_matches && self.outside_derived_ideal
    }
}

/// `r = q⁻¹` read as a 2-tensor on the dual space.
#[derive(Debug, Clone, PartialEq)]
pub struct RTensor<T: Scalar> {
    pub matrix: Matrix<T>,
}

impl<'a, T: Scalar> FrobeniusStructure<'a, T> {
    pub fn algebra(&self) -> &'a LieAlgebra<T> {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `q(x) = ω(x, ·)`.
    pub fn q(&self, x: &Vector<T>) -> Functional<T> {
        Functional(
            self.q_matrix
                .mul_vec(x.coords())
                .expect("matching dimension"),
        )
    }

    pub fn q_inv(&self, beta: &Functional<T>) -> Vector<T> {
        Vector(
            self.q_inverse
                .mul_vec(beta.coords())
                .expect("matching dimension"),
        )
    }

    pub fn lsa(&self) -> Result<LsaProduct<T>> {
        lsa_from_frobenius(self)
    }

    /// `q⁻¹` of a basis of closed 1-forms, cross-checked against the
    /// left-symmetric product (each returned vector has zero right product).
    pub fn right_nil_basis(&self) -> Result<Vec<Vector<T>>> {
        let nils: Vec<Vector<T>> = self
            .algebra
            .closed_one_forms_basis()?
            .iter()
            .map(|beta| self.q_inv(beta))
            .collect();
        let product = self.lsa()?;
        for v in &nils {
            if !product.is_right_nil(v)? {
                return Err(Error::Internal(
                    "q⁻¹ of a closed form is not right-nil".into(),
                ));
            }
        }
        Ok(nils)
    }

    pub fn right_unit_set(&self) -> Result<RightUnitSet<T>> {
        Ok(RightUnitSet {
            base: self.x0.clone(),
            directions: self.right_nil_basis()?,
        })
    }

    /// The unique `λ` with `ω([v,x],y) + ω(x,[v,y]) = λ·ω(x,y)` on all basis
    /// pairs, if `v` is a conformal vector.
    pub fn conformal_factor(&self, v: &Vector<T>) -> Result<Option<T>> {
        let ad = self.algebra.ad(v)?;
        let omega = &self.omega.matrix;
        // ω(A e_i, e_j) + ω(e_i, A e_j) = (AᵀΩ + ΩA)[i][j]
        let lhs = &(&ad.transpose() * omega) + &(omega * &ad);
        let p = self.dim();
        let coeff = Matrix::from_vec(p * p, 1, omega.flatten())?;
        Ok(solve_linear(&coeff, &lhs.flatten(), self.algebra.field())?.map(|mut x| x.remove(0)))
    }

    /// `trace(ad x₀) = −n` (with `dim = 2n`) and `x₀ ∉ [𝒢, 𝒢]`.
    pub fn trace_identity_check(&self) -> Result<TraceIdentity<T>> {
        self.trace_identity_at(&self.x0)
    }

    /// The trace identity at an arbitrary right-unit `y₀`.
    pub fn trace_identity_at(&self, y0: &Vector<T>) -> Result<TraceIdentity<T>> {
        let p = self.dim();
        let trace = self.algebra.ad(y0)?.trace();
        let half_dim = p / 2;
        let expected = -T::from_i64(half_dim as i64);
        let field = self.algebra.field();
        let trace_matches =
            (trace.clone() - expected).is_negligible(field.tolerance() * (1.0 + p as f64));
        let derived: Vec<Vec<T>> = self
            .algebra
            .derived_ideal_basis()?
            .into_iter()
            .map(|v| v.0)
            .collect();
        let outside_derived_ideal = !in_span(p, &derived, y0.coords(), field)?;
        Ok(TraceIdentity {
            trace,
            half_dim,
            trace_matches,
            outside_derived_ideal,
        })
    }

    pub fn r_tensor(&self) -> Result<RTensor<T>> {
        let matrix = self.q_inverse.clone();
        if !matrix.is_skew(self.algebra.field()) {
            return Err(Error::Internal("q⁻¹ is not skew-symmetric".into()));
        }
        Ok(RTensor { matrix })
    }
}
