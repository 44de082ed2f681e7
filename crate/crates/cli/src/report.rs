//! Structured analysis report. The JSON form is the source of truth; the text
//! form is rendered from the same values.

use std::fmt::Write as _;

use lie_frobenius::derivations::derivation_basis;
use lie_frobenius::embed::{embed, verify_embedding, HOMOMORPHISM, INJECTIVE, TRACELESS};
use lie_frobenius::frobenius::{
    find_frobenius_functional, principal_element, FrobeniusStructure, FunctionalSearch,
};
use lie_frobenius::linalg::determinant;
use lie_frobenius::lsa::LsaProduct;
use lie_frobenius::spectral::{eigen_report, jordan_chevalley};
use lie_frobenius::{FieldKind, Functional, LieAlgebra, Matrix, Scalar, Vector};
use serde::Serialize;

use crate::error::{CliResult, Status};
use crate::format::FileScalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Section<S> {
    Present(S),
    Skipped { reason: String },
}

impl<S> Section<S> {
    fn skipped(reason: impl Into<String>) -> Self {
        Self::Skipped {
            reason: reason.into(),
        }
    }

    pub fn present(&self) -> Option<&S> {
        match self {
            Self::Present(s) => Some(s),
            Self::Skipped { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub triple: [usize; 3],
    pub labels: [String; 3],
    pub residual: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationSection {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrobeniusSection {
    /// Where the functional came from: `argument`, `file`, `preset` or `search`.
    pub origin: String,
    pub functional: Vec<String>,
    pub det_omega: String,
    pub x0: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Product {
    pub i: usize,
    pub j: usize,
    pub value: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LsaSection {
    /// Nonzero products `e_i·e_j`; all others vanish.
    pub products: Vec<Product>,
    pub left_symmetric: bool,
    pub commutator_is_bracket: bool,
    pub left_representation: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RightUnitSection {
    pub base: Vec<String>,
    pub right_nils: Vec<Vec<String>>,
    pub derived_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConformalSection {
    /// `None` when the vector is not conformal.
    pub x0: Option<String>,
    pub right_nils: Vec<Option<String>>,
    pub basis: Vec<Option<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenEntry {
    pub value: String,
    pub algebraic: usize,
    pub geometric: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSection {
    pub characteristic: String,
    pub eigenvalues: Vec<EigenEntry>,
    /// Factor of the characteristic polynomial without roots in the field.
    pub residual_factor: String,
    pub residual_roots: Vec<ComplexValue>,
    pub residual_error: f64,
    pub non_real_pairs: usize,
    pub diagonalizable_over_c: bool,
    /// Over ℝ for rational input, over ℂ for complex input.
    pub diagonalizable_over_base: bool,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JordanSection {
    pub semisimple: Vec<Vec<String>>,
    pub nilpotent: Vec<Vec<String>>,
    pub nilpotent_zero: bool,
    pub invariants_hold: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivationSection {
    pub total: usize,
    pub inner: usize,
    pub outer: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingSection {
    pub size: usize,
    pub traceless: bool,
    pub bracket_preserved: bool,
    pub injective: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnimodularSection {
    pub unimodular: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceSection {
    pub trace: String,
    pub expected: String,
    pub matches: bool,
    pub x0_outside_derived: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub source: String,
    pub field: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub validation: ValidationSection,
    pub frobenius: Section<FrobeniusSection>,
    pub lsa: Section<LsaSection>,
    pub right_units: Section<RightUnitSection>,
    pub conformal_factors: Section<ConformalSection>,
    pub spectrum: Section<SpectrumSection>,
    pub jordan: Section<JordanSection>,
    pub derivations: Section<DerivationSection>,
    pub embedding: Section<EmbeddingSection>,
    pub unimodular: Section<UnimodularSection>,
    pub trace_identity: Section<TraceSection>,
}

/// How the functional for the analysis is chosen.
#[derive(Debug, Clone)]
pub enum FunctionalChoice<T> {
    Given {
        functional: Functional<T>,
        origin: &'static str,
    },
    Search {
        seed: u64,
    },
}

fn strings<T: Scalar>(v: &[T]) -> Vec<String> {
    v.iter().map(Scalar::render).collect()
}

fn matrix_strings<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| strings(r)).collect()
}

pub fn validation_section<T: Scalar>(algebra: &LieAlgebra<T>) -> ValidationSection {
    let report = algebra.validate();
    let labels = algebra.labels();
    ValidationSection {
        valid: report.is_valid(),
        violations: report
            .violations
            .iter()
            .map(|v| {
                let (i, j, k) = v.triple;
                Violation {
                    triple: [i, j, k],
                    labels: [labels[i].clone(), labels[j].clone(), labels[k].clone()],
                    residual: strings(v.residual.coords()),
                }
            })
            .collect(),
    }
}

/// Outcome of the Frobenius step: a structure, or the reason there is none.
fn frobenius_step<'a, T: Scalar>(
    algebra: &'a LieAlgebra<T>,
    choice: &FunctionalChoice<T>,
) -> CliResult<Result<(FrobeniusStructure<'a, T>, &'static str), String>> {
    let (alpha, origin) = match choice {
        FunctionalChoice::Given { functional, origin } => {
            if functional.dim() != algebra.dim() {
                return Err(crate::error::CliError::Usage(format!(
                    "functional has {} coordinates for dim {}",
                    functional.dim(),
                    algebra.dim()
                )));
            }
            (functional.clone(), *origin)
        }
        FunctionalChoice::Search { seed } => match find_frobenius_functional(algebra, *seed)? {
            FunctionalSearch::Found(f) => (f, "search"),
            FunctionalSearch::CertifiedNone(cert) => {
                return Ok(Err(format!(
                    "no Frobenius functional exists ({})",
                    cert.describe()
                )))
            }
            FunctionalSearch::NotFound => {
                return Ok(Err(format!(
                    "no Frobenius functional found by the seeded search (seed {seed})"
                )))
            }
        },
    };
    match principal_element(algebra, &alpha) {
        Ok(s) => Ok(Ok((s, origin))),
        Err(lie_frobenius::Error::DegenerateForm) => Ok(Err(format!(
            "the {origin} functional [{}] is not Frobenius: its coboundary form is degenerate",
            strings(alpha.coords()).join(", ")
        ))),
        Err(e) => Err(e.into()),
    }
}

fn lsa_section<T: Scalar>(algebra: &LieAlgebra<T>, lsa: &LsaProduct<T>) -> LsaSection {
    let p = lsa.dim();
    let mut products = Vec::new();
    for i in 0..p {
        for j in 0..p {
            let v = lsa.basis_product(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                products.push(Product {
                    i,
                    j,
                    value: strings(v),
                });
            }
        }
    }
    LsaSection {
        products,
        left_symmetric: lsa.left_symmetry_check().passed(),
        commutator_is_bracket: lsa.commutator_check(algebra).passed(),
        left_representation: lsa.left_rep_check(algebra).passed(),
    }
}

fn spectrum_section<T: Scalar>(
    ad: &Matrix<T>,
    algebra: &LieAlgebra<T>,
) -> CliResult<SpectrumSection> {
    let r = eigen_report(ad, algebra.field())?;
    let verdict = match (r.diagonalizable_over_c, r.diagonalizable_over_base) {
        (false, _) => "not diagonalizable",
        (true, false) => "diagonalizable over C, not over R",
        (true, true) if T::KIND == FieldKind::Exact => "diagonalizable over R",
        (true, true) => "diagonalizable over C",
    };
    Ok(SpectrumSection {
        characteristic: r.characteristic.to_string(),
        eigenvalues: r
            .eigenvalues
            .iter()
            .map(|e| EigenEntry {
                value: e.value.render(),
                algebraic: e.algebraic,
                geometric: e.geometric,
            })
            .collect(),
        residual_factor: r.residual_factor.to_string(),
        residual_roots: r
            .residual_roots
            .iter()
            .map(|z| ComplexValue { re: z.re, im: z.im })
            .collect(),
        residual_error: r.residual_error,
        non_real_pairs: r.non_real_pairs,
        diagonalizable_over_c: r.diagonalizable_over_c,
        diagonalizable_over_base: r.diagonalizable_over_base,
        verdict: verdict.into(),
    })
}

fn embedding_section<T: Scalar>(
    algebra: &LieAlgebra<T>,
    lsa: &LsaProduct<T>,
) -> CliResult<EmbeddingSection> {
    let size = algebra.dim() + 1;
    match embed(algebra, lsa) {
        Ok(e) => {
            let check = verify_embedding(&e, algebra)?;
            Ok(EmbeddingSection {
                size,
                traceless: !check.fails(TRACELESS),
                bracket_preserved: !check.fails(HOMOMORPHISM),
                injective: !check.fails(INJECTIVE),
                failures: check.failures.iter().map(ToString::to_string).collect(),
            })
        }
        Err(e) => Ok(EmbeddingSection {
            size,
            traceless: false,
            bracket_preserved: false,
            injective: false,
            failures: vec![e.to_string()],
        }),
    }
}

/// Runs the full pipeline. The status is nonzero when the algebra is
/// invalid, no Frobenius functional is available, or a verification fails.
pub fn analyze<T: FileScalar>(
    source: &str,
    algebra: LieAlgebra<T>,
    choice: &FunctionalChoice<T>,
) -> CliResult<(AnalysisReport, Status)> {
    let validation = validation_section(&algebra);
    let mut report = AnalysisReport {
        source: source.into(),
        field: T::FIELD.as_str().into(),
        dim: algebra.dim(),
        basis: algebra.labels().to_vec(),
        validation,
        frobenius: Section::skipped("the algebra is invalid"),
        lsa: Section::skipped("the algebra is invalid"),
        right_units: Section::skipped("the algebra is invalid"),
        conformal_factors: Section::skipped("the algebra is invalid"),
        spectrum: Section::skipped("the algebra is invalid"),
        jordan: Section::skipped("the algebra is invalid"),
        derivations: Section::skipped("the algebra is invalid"),
        embedding: Section::skipped("the algebra is invalid"),
        unimodular: Section::skipped("the algebra is invalid"),
        trace_identity: Section::skipped("the algebra is invalid"),
    };
    if !report.validation.valid {
        return Ok((report, Status::Validation));
    }
    let algebra = algebra.into_validated()?;
    let space = derivation_basis(&algebra)?;
    report.derivations = Section::Present(DerivationSection {
        total: space.dim(),
        inner: space.inner_dim(),
        outer: space.outer_dim,
    });
    report.unimodular = Section::Present(UnimodularSection {
        unimodular: algebra.is_unimodular()?,
    });

    let (structure, origin) = match frobenius_step(&algebra, choice)? {
        Ok(found) => found,
        Err(reason) => {
            report.frobenius = Section::Skipped { reason };
            let dependent = "no Frobenius functional";
            report.lsa = Section::skipped(dependent);
            report.right_units = Section::skipped(dependent);
            report.conformal_factors = Section::skipped(dependent);
            report.spectrum = Section::skipped(dependent);
            report.jordan = Section::skipped(dependent);
            report.embedding = Section::skipped(dependent);
            report.trace_identity = Section::skipped(dependent);
            return Ok((report, Status::NotFrobenius));
        }
    };
    let field = algebra.field();
    report.frobenius = Section::Present(FrobeniusSection {
        origin: origin.into(),
        functional: strings(structure.alpha.coords()),
        det_omega: determinant(&structure.omega.matrix, field)?.render(),
        x0: strings(structure.x0.coords()),
    });

    let lsa = structure.lsa()?;
    let lsa_report = lsa_section(&algebra, &lsa);
    let lsa_ok = lsa_report.left_symmetric
        && lsa_report.commutator_is_bracket
        && lsa_report.left_representation;
    report.lsa = Section::Present(lsa_report);

    let nils = structure.right_nil_basis()?;
    report.right_units = Section::Present(RightUnitSection {
        base: strings(structure.x0.coords()),
        right_nils: nils.iter().map(|n| strings(n.coords())).collect(),
        derived_dim: algebra.derived_ideal_basis()?.len(),
    });

    let factor = |v: &Vector<T>| -> CliResult<Option<String>> {
        Ok(structure.conformal_factor(v)?.map(|c| c.render()))
    };
    report.conformal_factors = Section::Present(ConformalSection {
        x0: factor(&structure.x0)?,
        right_nils: nils.iter().map(factor).collect::<CliResult<_>>()?,
        basis: (0..algebra.dim())
            .map(|i| factor(&Vector::unit(algebra.dim(), i)))
            .collect::<CliResult<_>>()?,
    });

    let ad = algebra.ad(&structure.x0)?;
    report.spectrum = Section::Present(spectrum_section(&ad, &algebra)?);
    report.jordan = match T::KIND {
        FieldKind::Exact => {
            let pair = jordan_chevalley(&ad)?;
            Section::Present(JordanSection {
                semisimple: matrix_strings(&pair.s),
                nilpotent: matrix_strings(&pair.n),
                nilpotent_zero: pair.nilpotent_is_zero(),
                invariants_hold: pair.check(&ad)?.all(),
            })
        }
        FieldKind::Approx => Section::skipped("requires the exact rational field"),
    };

    let embedding = embedding_section(&algebra, &lsa)?;
    let embedding_ok = embedding.failures.is_empty();
    report.embedding = Section::Present(embedding);

    let trace = structure.trace_identity_check()?;
    report.trace_identity = Section::Present(TraceSection {
        trace: trace.trace.render(),
        expected: T::from_ratio(-(algebra.dim() as i64), 2).render(),
        matches: trace.trace_matches,
        x0_outside_derived: trace.outside_derived_ideal,
    });

    let status = if lsa_ok && embedding_ok {
        Status::Ok
    } else {
        Status::Verification
    };
    Ok((report, status))
}

/// `2*e1 - 1/2*e3`; `0` for the zero vector.
pub fn combination(coords: &[String], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in coords.iter().zip(labels) {
        if c == "0" {
            continue;
        }
        let (negative, magnitude) = match c.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => (true, rest),
            _ => (false, c.as_str()),
        };
        let term = match magnitude {
            "1" => label.clone(),
            m if m.contains(['+', '-']) => format!("({m})*{label}"),
            m => format!("{m}*{label}"),
        };
        match (out.is_empty(), negative) {
            (true, true) => write!(out, "-{term}"),
            (true, false) => write!(out, "{term}"),
            (false, true) => write!(out, " - {term}"),
            (false, false) => write!(out, " + {term}"),
        }
        .expect("writing to a String");
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ok_fail(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn render_matrix(out: &mut String, rows: &[Vec<String>], indent: &str) {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{indent}[ {} ]", cells.join("  "));
    }
}

fn heading<S>(out: &mut String, title: &str, section: &Section<S>) -> Option<()> {
    match section {
        Section::Present(_) => {
            let _ = writeln!(out, "\n{title}:");
            Some(())
        }
        Section::Skipped { reason } => {
            let _ = writeln!(out, "\n{title}: skipped ({reason})");
            None
        }
    }
}

pub fn validation_text(v: &ValidationSection, labels: &[String]) -> String {
    if v.valid {
        return "Jacobi identity holds\n".into();
    }
    let mut out = format!(
        "Jacobi identity fails on {} triple(s):\n",
        v.violations.len()
    );
    for x in &v.violations {
        let _ = writeln!(
            out,
            "  ({}, {}, {}): residual {}",
            x.labels[0],
            x.labels[1],
            x.labels[2],
            combination(&x.residual, labels)
        );
    }
    out
}

pub fn render_text(r: &AnalysisReport) -> String {
    let labels = &r.basis;
    let mut out = String::new();
    let _ = writeln!(out, "source: {}", r.source);
    let _ = writeln!(out, "field: {}, dim {}", r.field, r.dim);
    let _ = writeln!(out, "basis: {}", labels.join(", "));
    let _ = write!(
        out,
        "validation: {}",
        validation_text(&r.validation, labels)
    );

    if heading(&mut out, "frobenius functional", &r.frobenius).is_some() {
        let f = r.frobenius.present().expect("present");
        let _ = writeln!(out, "  alpha ({}): [{}]", f.origin, f.functional.join(", "));
        let _ = writeln!(out, "  det omega: {}", f.det_omega);
        let _ = writeln!(
            out,
            "  principal element: x0 = {}",
            combination(&f.x0, labels)
        );
    }

    if heading(&mut out, "left-symmetric product", &r.lsa).is_some() {
        let s = r.lsa.present().expect("present");
        for p in &s.products {
            let _ = writeln!(
                out,
                "  {} * {} = {}",
                labels[p.i],
                labels[p.j],
                combination(&p.value, labels)
            );
        }
        let _ = writeln!(out, "  all other products of basis vectors vanish");
        let _ = writeln!(
            out,
            "  left symmetry: {}; commutator equals bracket: {}; left multiplication is a representation: {}",
            ok_fail(s.left_symmetric),
            ok_fail(s.commutator_is_bracket),
            ok_fail(s.left_representation)
        );
    }

    if heading(&mut out, "right units", &r.right_units).is_some() {
        let s = r.right_units.present().expect("present");
        let nils: Vec<String> = s
            .right_nils
            .iter()
            .map(|n| combination(n, labels))
            .collect();
        let _ = writeln!(out, "  right units: x0 + span{{{}}}", nils.join(", "));
        let _ = writeln!(
            out,
            "  right nils: dim {} (dim - dim [g,g] = {} - {})",
            nils.len(),
            r.dim,
            s.derived_dim
        );
    }

    if heading(&mut out, "conformal factors", &r.conformal_factors).is_some() {
        let s = r.conformal_factors.present().expect("present");
        let show = |c: &Option<String>| c.clone().unwrap_or_else(|| "not conformal".into());
        let _ = writeln!(out, "  lambda(x0) = {}", show(&s.x0));
        if let Some(u) = r.right_units.present() {
            for (n, c) in u.right_nils.iter().zip(&s.right_nils) {
                let _ = writeln!(out, "  lambda({}) = {}", combination(n, labels), show(c));
            }
        }
        for (label, c) in labels.iter().zip(&s.basis) {
            let _ = writeln!(out, "  lambda({label}) = {}", show(c));
        }
    }

    if heading(&mut out, "spectrum of ad(x0)", &r.spectrum).is_some() {
        let s = r.spectrum.present().expect("present");
        let _ = writeln!(out, "  characteristic polynomial: {}", s.characteristic);
        let values: Vec<String> = s
            .eigenvalues
            .iter()
            .map(|e| {
                format!(
                    "{} (algebraic {}, geometric {})",
                    e.value, e.algebraic, e.geometric
                )
            })
            .collect();
        let _ = writeln!(
            out,
            "  eigenvalues: {}",
            if values.is_empty() {
                "none in the field".into()
            } else {
                values.join("; ")
            }
        );
        if !s.residual_roots.is_empty() {
            let roots: Vec<String> = s
                .residual_roots
                .iter()
                .map(|z| {
                    lie_frobenius::scalar::render_complex(lie_frobenius::Complex::new(z.re, z.im))
                })
                .collect();
            let _ = writeln!(out, "  residual factor: {}", s.residual_factor);
            let _ = writeln!(
                out,
                "  residual roots: {} (max |residual| {:e})",
                roots.join(", "),
                s.residual_error
            );
        }
        let _ = writeln!(out, "  non-real conjugate pairs: {}", s.non_real_pairs);
        let _ = writeln!(out, "  verdict: {}", s.verdict);
    }

    if heading(&mut out, "jordan decomposition of ad(x0)", &r.jordan).is_some() {
        let s = r.jordan.present().expect("present");
        let _ = writeln!(out, "  semisimple part:");
        render_matrix(&mut out, &s.semisimple, "    ");
        if s.nilpotent_zero {
            let _ = writeln!(out, "  nilpotent part: zero");
        } else {
            let _ = writeln!(out, "  nilpotent part: nonzero");
            render_matrix(&mut out, &s.nilpotent, "    ");
        }
        let _ = writeln!(out, "  invariants: {}", ok_fail(s.invariants_hold));
    }

    if heading(&mut out, "derivations", &r.derivations).is_some() {
        let s = r.derivations.present().expect("present");
        let _ = writeln!(
            out,
            "  dim {}, inner {}, outer {}",
            s.total, s.inner, s.outer
        );
    }

    if heading(&mut out, "embedding", &r.embedding).is_some() {
        let s = r.embedding.present().expect("present");
        let _ = writeln!(
            out,
            "  into sl({}): traceless {}; bracket preserved {}; injective {}",
            s.size,
            ok_fail(s.traceless),
            ok_fail(s.bracket_preserved),
            ok_fail(s.injective)
        );
        for f in &s.failures {
            let _ = writeln!(out, "  failure: {f}");
        }
    }

    if heading(&mut out, "unimodular", &r.unimodular).is_some() {
        let _ = writeln!(
            out,
            "  {}",
            yes_no(r.unimodular.present().expect("present").unimodular)
        );
    }

    if heading(&mut out, "trace identity", &r.trace_identity).is_some() {
        let s = r.trace_identity.present().expect("present");
        let _ = writeln!(
            out,
            "  trace ad(x0) = {} (expected -dim/2 = {}): {}",
            s.trace,
            s.expected,
            ok_fail(s.matches)
        );
        let _ = writeln!(out, "  x0 outside [g,g]: {}", yes_no(s.x0_outside_derived));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn combinations() {
        let labels = v(&["e1", "e2", "e3"]);
        assert_eq!(combination(&v(&["-1", "0", "0"]), &labels), "-e1");
        assert_eq!(
            combination(&v(&["2", "0", "-1/2"]), &labels),
            "2*e1 - 1/2*e3"
        );
        assert_eq!(combination(&v(&["0", "0", "0"]), &labels), "0");
        assert_eq!(
            combination(&v(&["0", "1+2i", "-3-1i"]), &labels),
            "(1+2i)*e2 + (-3-1i)*e3"
        );
    }
}
