//! The four subcommands. Each writes its output to the given writer and
//! returns the process status; hard errors come back as [`CliError`].

use std::io::Write;
use std::path::{Path, PathBuf};

use lie_frobenius::catalog::{
    aff, diagonal_instance, example_preset, g_k_xi, gl_semidirect, golden_instance, GkXiSpec,
    PRESET_NAMES,
};
use lie_frobenius::embed::embed;
use lie_frobenius::frobenius::{find_frobenius_functional, principal_element, FunctionalSearch};
use lie_frobenius::lsa::LsaProduct;
use lie_frobenius::{Complex, FieldContext, Functional, LieAlgebra, Matrix, Rational};
use serde::Serialize;

use crate::error::{CliError, CliResult, Status};
use crate::format::{
    algebra_file, embedding_file, parse_list, read_algebra, AnyAlgebra, FieldName, FileScalar,
    Loaded,
};
use crate::report::{analyze, render_text, validation_section, validation_text, FunctionalChoice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// An algebra file or a named preset.
#[derive(Debug, Clone, Default)]
pub struct Source {
    pub path: Option<PathBuf>,
    pub preset: Option<String>,
    pub k_tilde: Option<String>,
}

/// Functional and search options shared by `analyze` and `embed`.
#[derive(Debug, Clone, Default)]
pub struct FunctionalOptions {
    /// Comma-separated coordinates.
    pub functional: Option<String>,
    pub seed: u64,
}

struct Resolved {
    label: String,
    algebra: AnyAlgebra,
    /// Origin of the functional carried by the algebra, if any.
    origin: &'static str,
}

fn resolve(source: &Source) -> CliResult<Resolved> {
    match (&source.path, &source.preset) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either a file or --preset, not both".into(),
        )),
        (None, None) => Err(CliError::Usage(
            "an algebra file or --preset is required".into(),
        )),
        (Some(path), None) => {
            if source.k_tilde.is_some() {
                return Err(CliError::Usage(
                    "--k-tilde applies only to --preset g7c".into(),
                ));
            }
            Ok(Resolved {
                label: path.display().to_string(),
                algebra: read_algebra(path)?,
                origin: "file",
            })
        }
        (None, Some(name)) => {
            let k_tilde = source
                .k_tilde
                .as_deref()
                .map(Rational::from_text)
                .transpose()?;
            if !PRESET_NAMES.contains(&name.as_str()) {
                return Err(CliError::Usage(format!(
                    "unknown preset {name:?} (known: {})",
                    PRESET_NAMES.join(", ")
                )));
            }
            let (algebra, functional) =
                example_preset(name, k_tilde).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(Resolved {
                label: format!("preset {name}"),
                algebra: AnyAlgebra::Rational(Loaded {
                    algebra,
                    functional: Some(functional),
                    lsa: None,
                }),
                origin: "preset",
            })
        }
    }
}

fn choice<T: FileScalar>(
    loaded: &Loaded<T>,
    origin: &'static str,
    options: &FunctionalOptions,
) -> CliResult<FunctionalChoice<T>> {
    if let Some(text) = &options.functional {
        return Ok(FunctionalChoice::Given {
            functional: Functional(parse_list(text)?),
            origin: "argument",
        });
    }
    Ok(match &loaded.functional {
        Some(f) => FunctionalChoice::Given {
            functional: f.clone(),
            origin,
        },
        None => FunctionalChoice::Search { seed: options.seed },
    })
}

fn write_json<S: Serialize>(out: &mut dyn Write, value: &S) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Parse(e.to_string()))?;
    writeln!(out, "{text}").map_err(stdout_error)
}

fn stdout_error(source: std::io::Error) -> CliError {
    CliError::Write {
        path: "<stdout>".into(),
        source,
    }
}

#[derive(Serialize)]
struct ValidationOutput<'a> {
    source: &'a str,
    field: &'static str,
    dim: usize,
    #[serde(flatten)]
    validation: crate::report::ValidationSection,
}

fn validate_typed<T: FileScalar>(
    label: &str,
    loaded: &Loaded<T>,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<Status> {
    let algebra = &loaded.algebra;
    let validation = validation_section(algebra);
    let status = if validation.valid {
        Status::Ok
    } else {
        Status::Validation
    };
    match format {
        Format::Json => write_json(
            out,
            &ValidationOutput {
                source: label,
                field: T::FIELD.as_str(),
                dim: algebra.dim(),
                validation,
            },
        )?,
        Format::Text => {
            write!(
                out,
                "{label}: {}, dim {}\n{}",
                T::FIELD.as_str(),
                algebra.dim(),
                validation_text(&validation, algebra.labels())
            )
            .map_err(stdout_error)?;
        }
    }
    Ok(status)
}

/// Jacobi check of an algebra file: 0 when valid, 2 with the list of
/// violated triples otherwise.
pub fn cmd_validate(path: &Path, format: Format, out: &mut dyn Write) -> CliResult<Status> {
    let label = path.display().to_string();
    match read_algebra(path)? {
        AnyAlgebra::Rational(l) => validate_typed(&label, &l, format, out),
        AnyAlgebra::Complex(l) => validate_typed(&label, &l, format, out),
    }
}

fn analyze_typed<T: FileScalar>(
    resolved: &Resolved,
    loaded: Loaded<T>,
    options: &FunctionalOptions,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<Status> {
    let choice = choice(&loaded, resolved.origin, options)?;
    let (report, status) = analyze(&resolved.label, loaded.algebra, &choice)?;
    match format {
        Format::Json => write_json(out, &report)?,
        Format::Text => write!(out, "{}", render_text(&report)).map_err(stdout_error)?,
    }
    Ok(status)
}

/// Full pipeline report; deterministic for a given input and seed.
pub fn cmd_analyze(
    source: &Source,
    options: &FunctionalOptions,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<Status> {
    let resolved = resolve(source)?;
    match resolved.algebra.clone() {
        AnyAlgebra::Rational(l) => analyze_typed(&resolved, l, options, format, out),
        AnyAlgebra::Complex(l) => analyze_typed(&resolved, l, options, format, out),
    }
}

fn embed_typed<T: FileScalar>(
    resolved: &Resolved,
    loaded: Loaded<T>,
    options: &FunctionalOptions,
) -> CliResult<crate::format::EmbeddingFile> {
    let report = validation_section(&loaded.algebra);
    if !report.valid {
        return Err(CliError::Validation(format!(
            "{}: Jacobi identity fails on {} triple(s)",
            resolved.label,
            report.violations.len()
        )));
    }
    let algebra: LieAlgebra<T> = loaded.algebra.clone().into_validated()?;
    let product = match &loaded.lsa {
        Some(triples) if options.functional.is_none() => {
            LsaProduct::new_unchecked(algebra.dim(), triples.iter().cloned(), *algebra.field())?
        }
        _ => {
            let alpha = match choice(&loaded, resolved.origin, options)? {
                FunctionalChoice::Given { functional, .. } => functional,
                FunctionalChoice::Search { seed } => {
                    match find_frobenius_functional(&algebra, seed)? {
                        FunctionalSearch::Found(f) => f,
                        FunctionalSearch::CertifiedNone(cert) => {
                            return Err(CliError::NotFrobenius(cert.describe().into()))
                        }
                        FunctionalSearch::NotFound => {
                            return Err(CliError::NotFrobenius(format!(
                                "no functional found by the seeded search (seed {seed})"
                            )))
                        }
                    }
                }
            };
            if alpha.dim() != algebra.dim() {
                return Err(CliError::Usage(format!(
                    "functional has {} coordinates for dim {}",
                    alpha.dim(),
                    algebra.dim()
                )));
            }
            match principal_element(&algebra, &alpha) {
                Ok(structure) => structure.lsa()?,
                Err(lie_frobenius::Error::DegenerateForm) => {
                    return Err(CliError::NotFrobenius(
                        "the functional's coboundary form is degenerate".into(),
                    ))
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    let embedding = embed(&algebra, &product).map_err(|e| CliError::Verification(e.to_string()))?;
    Ok(embedding_file(algebra.labels(), &embedding.images))
}

/// Writes the verified images `φ(e_i)` to `out_path`, or to `out` when no
/// path is given. Nothing is written when verification fails.
pub fn cmd_embed(
    source: &Source,
    options: &FunctionalOptions,
    out_path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult<Status> {
    let resolved = resolve(source)?;
    let file = match resolved.algebra.clone() {
        AnyAlgebra::Rational(l) => embed_typed(&resolved, l, options)?,
        AnyAlgebra::Complex(l) => embed_typed(&resolved, l, options)?,
    };
    match out_path {
        None => write_json(out, &file)?,
        Some(path) => {
            let text =
                serde_json::to_string_pretty(&file).map_err(|e| CliError::Parse(e.to_string()))?;
            std::fs::write(path, text + "\n").map_err(|source| CliError::Write {
                path: path.display().to_string(),
                source,
            })?;
        }
    }
    Ok(Status::Ok)
}

/// Catalog constructors.
#[derive(Debug, Clone, PartialEq)]
pub enum CatalogEntry {
    Aff {
        n: usize,
    },
    Gl {
        n: usize,
        p: usize,
    },
    /// `G_{k,ξ}` with diagonal `ξ`.
    Gkxi {
        n: usize,
        k: String,
        diag: String,
    },
    Golden {
        n: usize,
    },
    /// `G_{1,ξ}` with `ξ = diag(rates, 1 − rates)`.
    Diagonal {
        rates: String,
    },
    Preset {
        name: String,
        k_tilde: Option<String>,
    },
}

fn catalog_typed<T: FileScalar>(entry: &CatalogEntry) -> CliResult<crate::format::AlgebraFile> {
    let field = FieldContext::of::<T>();
    let canonical = |algebra: LieAlgebra<T>| {
        let f = Functional::unit(algebra.dim(), 1);
        algebra_file(&algebra, Some(&f))
    };
    let usage = |e: lie_frobenius::Error| CliError::Usage(e.to_string());
    Ok(match entry {
        CatalogEntry::Aff { n } => algebra_file(&aff::<T>(*n, field).map_err(usage)?, None),
        CatalogEntry::Gl { n, p } => {
            algebra_file(&gl_semidirect::<T>(*n, *p, field).map_err(usage)?, None)
        }
        CatalogEntry::Gkxi { n, k, diag } => {
            let entries: Vec<T> = parse_list(diag)?;
            if entries.len() != 2 * n {
                return Err(CliError::Usage(format!(
                    "--diag needs {} entries for n = {n}",
                    2 * n
                )));
            }
            let spec =
                GkXiSpec::new(*n, T::from_text(k)?, Matrix::diagonal(&entries)).map_err(usage)?;
            canonical(g_k_xi(&spec).map_err(usage)?)
        }
        CatalogEntry::Golden { n } => canonical(golden_instance::<T>(*n).map_err(usage)?),
        CatalogEntry::Diagonal { rates } => {
            canonical(diagonal_instance(&parse_list::<T>(rates)?).map_err(usage)?)
        }
        CatalogEntry::Preset { .. } => unreachable!("presets are rational"),
    })
}

/// Emits a catalog algebra as a file accepted by `validate`.
pub fn cmd_catalog(
    entry: &CatalogEntry,
    field: FieldName,
    out: &mut dyn Write,
) -> CliResult<Status> {
    let file = match (entry, field) {
        (CatalogEntry::Preset { name, k_tilde }, FieldName::Rational) => {
            let source = Source {
                path: None,
                preset: Some(name.clone()),
                k_tilde: k_tilde.clone(),
            };
            let AnyAlgebra::Rational(loaded) = resolve(&source)?.algebra else {
                unreachable!("presets are rational")
            };
            algebra_file(&loaded.algebra, loaded.functional.as_ref())
        }
        (CatalogEntry::Preset { .. }, FieldName::Complex64) => {
            return Err(CliError::Usage(
                "presets are defined over the rationals".into(),
            ))
        }
        (_, FieldName::Rational) => catalog_typed::<Rational>(entry)?,
        (_, FieldName::Complex64) => catalog_typed::<Complex>(entry)?,
    };
    write_json(out, &file)?;
    Ok(Status::Ok)
}
