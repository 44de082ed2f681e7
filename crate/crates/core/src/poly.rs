//! Univariate polynomials over a [`Scalar`] field, plus root finding.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{FieldKind, Scalar};

/// Coefficients in ascending degree; no trailing zeros. The zero polynomial
/// has no coefficients at all.
#[derive(Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monic linear factor `T − root`.
    pub fn linear(root: T) -> Self {
        Self::new(vec![-root, T::one()])
    }

    /// `T^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![T::zero(); k + 1];
        c[k] = T::one();
        Self::new(c)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?.clone();
        let inv = T::one() / lead;
        Ok(Self::new(
            self.coeffs
                .iter()
                .map(|c| c.clone() * inv.clone())
                .collect(),
        ))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Coefficient of `T^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_complex();
        }
        acc
    }

    /// Matrix substitution `p(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        let n = a.ensure_square()?;
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + &Matrix::identity(n).scale(c);
        }
        Ok(acc)
    }

    /// Euclidean division; fails on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dlead = divisor.leading().ok_or(Error::ZeroPolynomial)?.clone();
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - ddeg];
        for shift in (0..quot.len()).rev() {
            let top = rem[shift + ddeg].clone();
            if top.is_zero() {
                continue;
            }
            let factor = top / dlead.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= factor.clone() * d.clone();
            }
            // The leading term cancels exactly for rationals; pin it for floats.
            rem[shift + ddeg] = T::zero();
            quot[shift] = factor;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact division, failing when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic().unwrap_or_else(|_| Self::zero())
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn extended_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lead = r0.leading().ok_or(Error::ZeroPolynomial)?.clone();
        let inv = T::one() / lead;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// `p / gcd(p, p′)`, made monic. Exact field only.
    pub fn squarefree_part(&self) -> Result<Self> {
        require_exact::<T>("squarefree_part")?;
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        let (q, _) = self.div_rem(&g)?;
        q.monic()
    }

    /// True when `gcd(p, p′) = 1`. Exact field only.
    pub fn is_squarefree(&self) -> Result<bool> {
        require_exact::<T>("is_squarefree")?;
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }
}

pub(crate) fn require_exact<T: Scalar>(operation: &'static str) -> Result<()> {
    match T::KIND {
        FieldKind::Exact => Ok(()),
        FieldKind::Approx => Err(Error::Unsupported {
            operation,
            field: FieldKind::Approx.name(),
        }),
    }
}

impl<T: Scalar> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    /// Renders as `T^2 - T - 1`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.render();
            let (negative, body) = match text.strip_prefix('-') {
                // a leading minus on a complex number may belong to the real part only
                Some(rest) if T::KIND == FieldKind::Exact => (true, rest.to_string()),
                _ => (false, text.clone()),
            };
            let body = if T::KIND == FieldKind::Approx && deg > 0 && body.contains(['+', 'i']) {
                format!("({body})")
            } else {
                body
            };
            let sep = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let var = match deg {
                0 => String::new(),
                1 => "T".to_string(),
                d => format!("T^{d}"),
            };
            let coeff = if deg > 0 && body == "1" {
                String::new()
            } else {
                body
            };
            let joiner = if !coeff.is_empty() && !var.is_empty() {
                "*"
            } else {
                ""
            };
            write!(f, "{sep}{coeff}{joiner}{var}")?;
            first = false;
        }
        Ok(())
    }
}

/// Rational roots with multiplicities (ascending) and the monic cofactor
/// without rational roots.
pub type RootSplit<T> = (Vec<(T, usize)>, Polynomial<T>);

/// Splits off the rational roots of `p`. Exact field only.
pub fn roots_exact<T: Scalar>(p: &Polynomial<T>) -> Result<RootSplit<T>> {
    require_exact::<T>("roots_exact")?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut cofactor = p.monic()?;
    let mut found: Vec<(BigRational, usize)> = Vec::new();
    for root in rational_root_candidates(&cofactor)? {
        let factor = Polynomial::linear(T::from_rational(&root));
        let mut mult = 0;
        while let Some(q) = cofactor.div_exact(&factor) {
            cofactor = q;
            mult += 1;
        }
        if mult > 0 {
            found.push((root, mult));
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((
        found
            .into_iter()
            .map(|(r, m)| (T::from_rational(&r), m))
            .collect(),
        cofactor,
    ))
}

/// Integer divisor enumeration below this bound; numeric guidance above it.
const DIVISOR_BOUND: u64 = 1_000_000_000_000;

/// Candidate rational roots of a nonzero rational polynomial. Every rational
/// root is guaranteed to appear; candidates are verified by the caller.
fn rational_root_candidates<T: Scalar>(p: &Polynomial<T>) -> Result<Vec<BigRational>> {
    let q = p.squarefree_part()?;
    let ints = primitive_integer_coeffs(&q);
    let mut candidates = Vec::new();
    // strip the root at zero so the constant term is nonzero
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        candidates.push(BigRational::zero());
    }
    let ints = &ints[low..];
    if ints.len() <= 1 {
        return Ok(candidates);
    }
    let lead = ints.last().unwrap().abs();
    let constant = ints[0].abs();
    let small = |x: &BigInt| x.to_u64().is_some_and(|v| v <= DIVISOR_BOUND);
    if small(&lead) && small(&constant) {
        let num_divs = divisors(constant.to_u64().unwrap());
        let den_divs = divisors(lead.to_u64().unwrap());
        for &a in &num_divs {
            for &b in &den_divs {
                let r = BigRational::new(BigInt::from(a), BigInt::from(b));
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
    } else {
        // a rational root p/q has q | lead, so lead·root is an integer; the
        // squarefree part has simple roots, which the numeric solver resolves
        let monic: Polynomial<Complex64> = Polynomial::new(
            ints.iter()
                .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
                .collect(),
        );
        for z in roots_numeric(&monic)? {
            let scaled = z.re * lead.to_f64().unwrap_or(f64::INFINITY);
            if !scaled.is_finite() {
                continue;
            }
            for m in [scaled.floor(), scaled.ceil()] {
                if let Some(m) = BigInt::from_f64(m) {
                    candidates.push(BigRational::new(m, lead.clone()));
                }
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    Ok(candidates)
}

/// Integer coefficients with unit content, ascending.
fn primitive_integer_coeffs<T: Scalar>(p: &Polynomial<T>) -> Vec<BigInt> {
    let rats: Vec<BigRational> = p
        .coeffs()
        .iter()
        .map(|c| c.to_rational().expect("exact field"))
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Tolerance and sweep limit for the simultaneous iteration.
pub const DURAND_KERNER_TOL: f64 = 1e-12;
pub const DURAND_KERNER_MAX_SWEEPS: usize = 1000;

/// All complex roots (with multiplicity) by Durand–Kerner iteration from
/// deterministic starting points, sorted by `(re, im)`.
pub fn roots_numeric<T: Scalar>(p: &Polynomial<T>) -> Result<Vec<Complex64>> {
    let degree = match p.degree() {
        None | Some(0) => {
            return Err(Error::InvalidArgument(
                "numeric roots need degree at least 1".into(),
            ))
        }
        Some(d) => d,
    };
    let lead = p.leading().unwrap().to_complex();
    let monic: Vec<Complex64> = p.coeffs().iter().map(|c| c.to_complex() / lead).collect();
    if monic.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument("non-finite coefficient".into()));
    }
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    };
    // Horner bound on the rounding error of p(z), used as a second stop test.
    let noise = |z: Complex64| {
        let r = z.norm();
        monic.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
            * 8.0
            * f64::EPSILON
            * degree as f64
    };

    // Starts on a circle of Cauchy-bound radius, rotated off the real axis.
    let radius = 1.0 + monic[..degree].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|i| {
            let angle = 2.0 * std::f64::consts::PI * i as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    for _ in 0..DURAND_KERNER_MAX_SWEEPS {
        let mut max_step: f64 = 0.0;
        for i in 0..degree {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..degree {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(f64::EPSILON, 0.0);
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        let settled = z.iter().all(|&zi| eval(zi).norm() <= noise(zi));
        if max_step <= DURAND_KERNER_TOL || settled {
            z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            return Ok(z);
        }
    }
    Err(Error::NonConvergence(format!(
        "Durand–Kerner did not converge in {DURAND_KERNER_MAX_SWEEPS} sweeps (degree {degree})"
    )))
}

/// Number of distinct real roots via a Sturm sequence. Exact field only.
pub fn count_real_roots<T: Scalar>(p: &Polynomial<T>) -> Result<usize> {
    require_exact::<T>("count_real_roots")?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = p.squarefree_part()?;
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1])?;
        seq.push(r.scale(&-T::one()));
    }
    seq.pop();
    let sign = |x: &T| x.to_rational().expect("exact field").signum();
    let changes = |signs: Vec<BigRational>| {
        let nonzero: Vec<_> = signs.into_iter().filter(|s| !s.is_zero()).collect();
        nonzero.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let at_pos_inf = seq.iter().map(|q| sign(q.leading().unwrap())).collect();
    let at_neg_inf = seq
        .iter()
        .map(|q| {
            let s = sign(q.leading().unwrap());
            if q.degree().unwrap() % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    Ok(changes(at_neg_inf) - changes(at_pos_inf))
}
