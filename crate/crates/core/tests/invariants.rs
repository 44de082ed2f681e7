use lie_frobenius::catalog::{aff, example_preset, golden_instance};
use lie_frobenius::derivations::{all_derivations_inner, derivation_basis, is_derivation};
use lie_frobenius::embed::{embed, verify_embedding};
use lie_frobenius::frobenius::{principal_element, seeded_functionals, FrobeniusStructure};
use lie_frobenius::linalg::{in_span, kernel_basis, rank, span_basis};
use lie_frobenius::spectral::{eigen_report, is_nilpotent};
use lie_frobenius::{FieldContext, Functional, LieAlgebra, Matrix, Rational, Scalar, Vector};

type L = LieAlgebra<Rational>;

fn exact() -> FieldContext {
    FieldContext::exact()
}

fn presets() -> Vec<(String, L, Functional<Rational>)> {
    let mut out: Vec<_> = ["aff1", "g7a", "g7b", "g7c"]
        .iter()
        .map(|name| {
            let (g, alpha) = example_preset(name, None).unwrap();
            (name.to_string(), g, alpha)
        })
        .collect();
    let golden = golden_instance::<Rational>(2).unwrap();
    out.push(("golden2".into(), golden, Functional::unit(6, 1)));
    out
}

fn right_units(f: &FrobeniusStructure<'_, Rational>) -> Vec<Vector<Rational>> {
    let units = f.right_unit_set().unwrap();
    let mut out = vec![units.base.clone()];
    for (i, n) in units.directions.iter().enumerate() {
        out.push(units.base.add(&n.scale(&Rational::from_i64(i as i64 + 2))));
    }
    out
}

#[test]
fn principal_element_is_a_right_unit_and_nils_are_invariants() {
    for (name, g, alpha) in presets() {
        let f = principal_element(&g, &alpha).unwrap();
        let lsa = f.lsa().unwrap();
        assert!(lsa.is_right_unit(&f.x0).unwrap(), "{name}");
        let p = g.dim();
        for nil in f.right_nil_basis().unwrap() {
            for y in 0..p {
                assert!(
                    lsa.product(&Vector::unit(p, y), &nil).unwrap().is_zero(),
                    "{name}"
                );
            }
        }
    }
}

#[test]
fn right_nils_are_exactly_the_pullbacks_of_closed_forms() {
    for (name, g, alpha) in presets() {
        let f = principal_element(&g, &alpha).unwrap();
        let lsa = f.lsa().unwrap();
        let p = g.dim();
        // right-nils computed independently: kernel of y ↦ (e_i·y)_i stacked
        let stacked = Matrix::from_fn(p * p, p, |r, j| lsa.basis_product(r / p, j)[r % p].clone());
        let direct = span_basis(p, &kernel_basis(&stacked, &exact()), &exact()).unwrap();
        let via_q: Vec<Vec<Rational>> = f
            .right_nil_basis()
            .unwrap()
            .into_iter()
            .map(|v| v.0)
            .collect();
        assert_eq!(span_basis(p, &via_q, &exact()).unwrap(), direct, "{name}");
        let derived = g.derived_ideal_basis().unwrap().len();
        assert_eq!(direct.len(), p - derived, "{name}");
    }
}

#[test]
fn right_unit_spectral_properties() {
    for (name, g, alpha) in presets() {
        let f = principal_element(&g, &alpha).unwrap();
        let lsa = f.lsa().unwrap();
        let p = g.dim();
        let codim = p - g.derived_ideal_basis().unwrap().len();
        for y0 in right_units(&f) {
            assert!(lsa.is_right_unit(&y0).unwrap(), "{name}");
            let ad = g.ad(&y0).unwrap();
            let left = lsa.left_mult(&y0).unwrap();
            assert_eq!(left, &Matrix::identity(p) + &ad, "{name}");
            assert!(!is_nilpotent(&ad, &exact()).unwrap(), "{name}");
            let report = eigen_report(&ad, &exact()).unwrap();
            let values: Vec<Rational> =
                report.eigenvalues.iter().map(|e| e.value.clone()).collect();
            assert!(
                values.contains(&Rational::from_i64(-1)) && values.contains(&Rational::from_i64(0)),
                "{name}"
            );
            let ker_left = p - rank(&left, &exact());
            let minus_one = report
                .eigenvalues
                .iter()
                .find(|e| e.value == Rational::from_i64(-1))
                .unwrap();
            assert_eq!(ker_left, minus_one.geometric, "{name}");
            assert!(ker_left >= codim, "{name}");
        }
    }
}

#[test]
fn q_is_equivariant() {
    for (name, g, alpha) in presets() {
        let f = principal_element(&g, &alpha).unwrap();
        let lsa = f.lsa().unwrap();
        let p = g.dim();
        for x in 0..p {
            for y in 0..p {
                let xy = Vector(lsa.basis_product(x, y).to_vec());
                let lhs = f.q(&xy);
                let qy = f.q(&Vector::unit(p, y));
                for z in 0..p {
                    let rhs = -qy.pair(&Vector(g.basis_bracket(x, z).to_vec()));
                    assert_eq!(lhs[z], rhs, "{name} ({x},{y},{z})");
                }
            }
        }
    }
}

#[test]
fn g_family_principal_elements() {
    for (name, g, alpha) in presets().into_iter().skip(1) {
        let f = principal_element(&g, &alpha).unwrap();
        let k = g.basis_bracket(0, 1)[1].clone();
        let p = g.dim();
        let scale = -k.recip();
        assert_eq!(f.x0, Vector::unit(p, 0).scale(&scale), "{name}");
        // ad(x₀) = −(1/k)·blockdiag(0, k, M)
        let ad = g.ad(&f.x0).unwrap();
        let expected = Matrix::from_fn(p, p, |a, b| match (a, b) {
            (0, _) | (_, 0) => Rational::from_i64(0),
            (1, 1) => Rational::from_i64(-1),
            (1, _) | (_, 1) => Rational::from_i64(0),
            _ => g.constant(0, b, a).clone() * scale.clone(),
        });
        assert_eq!(ad, expected, "{name}");
    }
}

#[test]
fn derivation_space_invariants() {
    let mut algebras: Vec<L> = presets().into_iter().map(|(_, g, _)| g).collect();
    algebras.push(
        LieAlgebra::new(
            L::default_labels(3),
            [(0, 1, 2, Rational::from_i64(1))],
            exact(),
        )
        .unwrap()
        .into_validated()
        .unwrap(),
    );
    for g in algebras {
        let p = g.dim();
        let space = derivation_basis(&g).unwrap();
        let flat: Vec<Vec<Rational>> = space.basis.iter().map(Matrix::flatten).collect();
        for i in 0..p {
            assert!(is_derivation(&g, &g.ad_basis(i)).unwrap());
        }
        for d in &space.basis {
            assert!(is_derivation(&g, d).unwrap());
        }
        for inner in &space.inner_basis {
            assert!(in_span(p * p, &flat, &inner.flatten(), &exact()).unwrap());
        }
        assert_eq!(space.inner_dim(), p - g.center_basis().unwrap().len());
        assert_eq!(space.outer_dim, space.dim() - space.inner_dim());
    }
}

#[test]
fn small_affine_algebras_have_only_inner_derivations() {
    for n in 1..=2 {
        assert!(all_derivations_inner(&aff::<Rational>(n, exact()).unwrap()).unwrap());
    }
}

#[test]
fn embeddings_land_in_sl_and_preserve_traces() {
    for (name, g, alpha) in presets() {
        let f = principal_element(&g, &alpha).unwrap();
        let e = embed(&g, &f.lsa().unwrap()).unwrap();
        let p = g.dim();
        assert!(
            e.images
                .iter()
                .all(|m| m.rows() == p + 1 && m.cols() == p + 1),
            "{name}"
        );
        assert!(verify_embedding(&e, &g).unwrap().passed(), "{name}");
        assert_eq!(
            e.restricted_ad_trace(&f.x0, &g).unwrap(),
            g.ad(&f.x0).unwrap().trace(),
            "{name}"
        );
    }
}

#[test]
fn eigen_report_totals() {
    for (name, g, alpha) in presets() {
        let f = principal_element(&g, &alpha).unwrap();
        let ad = g.ad(&f.x0).unwrap();
        let r = eigen_report(&ad, &exact()).unwrap();
        assert_eq!(r.algebraic_total(), g.dim(), "{name}");
        assert!(
            r.eigenvalues
                .iter()
                .all(|e| e.geometric <= e.algebraic && e.geometric >= 1),
            "{name}"
        );
    }
}

#[test]
fn random_functionals_give_the_same_trace() {
    let (g, _) = example_preset("g7b", None).unwrap();
    let mut seen = 0;
    for alpha in seeded_functionals::<Rational>(4, 11).take(40) {
        let Ok(f) = principal_element(&g, &alpha) else {
            continue;
        };
        seen += 1;
        assert!(f.trace_identity_check().unwrap().passed());
        assert_eq!(
            f.conformal_factor(&f.x0).unwrap(),
            Some(Rational::from_i64(-1))
        );
    }
    assert!(seen > 20);
}

#[test]
fn conformal_factor_scales_linearly() {
    let (g, alpha) = example_preset("g7a", None).unwrap();
    let f = principal_element(&g, &alpha).unwrap();
    // x₀ = −e-1, so λ(e-1) = −λ(x₀) = 1
    assert_eq!(
        f.conformal_factor(&Vector::unit(4, 0)).unwrap(),
        Some(Rational::from_i64(1))
    );
    let y = f.x0.scale(&Rational::from_i64(3));
    assert_eq!(
        f.conformal_factor(&y).unwrap(),
        Some(Rational::from_i64(-3))
    );
}
