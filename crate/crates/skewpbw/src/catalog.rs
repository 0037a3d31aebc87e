//! Built-in example algebras and extensions used by the tests and the CLI.
//!
//! The named entries cover the worked examples: the Jordan plane and the
//! quantum plane as extensions of a one-variable base, homogenized
//! enveloping algebras (abelian, Heisenberg, sl2), a free extension over
//! the Jordan plane, the order-sensitive PBW example, the Koszul-but-not-
//! PBW algebra with its central variable, and the two-generator algebra
//! with relations y^2 - xy and y^2.

use std::collections::BTreeMap;

use crate::extension::{ExtensionBuilder, ExtensionData};
use crate::freealg::{Context, FreePoly, GeneratorOrder};
use crate::presentation::Presentation;
use crate::scalar::{FieldSpec, Scalar};
use crate::{Error, Result};

#[derive(Clone)]
pub enum CatalogItem {
    Presentation(Presentation),
    Extension(ExtensionData),
}

impl std::fmt::Debug for CatalogItem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CatalogItem::Presentation(p) => {
                write!(f, "Presentation({} relations)", p.relations().len())
            }
            CatalogItem::Extension(x) => {
                write!(f, "Extension({} variables)", x.n_vars())
            }
        }
    }
}

impl CatalogItem {
    pub fn kind(&self) -> &'static str {
        match self {
            CatalogItem::Presentation(_) => "presentation",
            CatalogItem::Extension(_) => "extension",
        }
    }

    /// The underlying presentation: extensions are emitted on base
    /// generators plus variables.
    pub fn as_presentation(&self) -> Presentation {
        match self {
            CatalogItem::Presentation(p) => p.clone(),
            CatalogItem::Extension(e) => e.emit_presentation(),
        }
    }
}

/// One row of `catalog list`.
pub struct EntryInfo {
    pub name: &'static str,
    pub kind: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

pub fn entries() -> Vec<EntryInfo> {
    vec![
        EntryInfo {
            name: "jordan_plane",
            kind: "extension",
            params: "-",
            summary: "K<x,y>/(yx - xy - x^2) as an extension of K[x] with sigma = id, delta(x) = x^2",
        },
        EntryInfo {
            name: "quantum_plane",
            kind: "extension",
            params: "q (nonzero, default 2)",
            summary: "K<t,x>/(xt - q tx), quasi-commutative over K[t]",
        },
        EntryInfo {
            name: "abelian2",
            kind: "extension",
            params: "-",
            summary: "homogenized enveloping algebra of the abelian Lie algebra on 2 generators (K[z,x1,x2])",
        },
        EntryInfo {
            name: "heisenberg",
            kind: "extension",
            params: "-",
            summary: "homogenized enveloping algebra of the Heisenberg Lie algebra ([x1,x2] = x3)",
        },
        EntryInfo {
            name: "sl2",
            kind: "extension",
            params: "-",
            summary: "homogenized enveloping algebra of sl2 ([x1,x2] = x3, [x3,x1] = 2x1, [x3,x2] = -2x2)",
        },
        EntryInfo {
            name: "free_over_jordan",
            kind: "extension",
            params: "-",
            summary: "trivial extension of the Jordan plane by one central variable u",
        },
        EntryInfo {
            name: "remark_order_algebra",
            kind: "presentation",
            params: "-",
            summary: "K<x,y,z>/(z^2 - xy - yx, zx - xz, zy - yz); PBW depends on the generator order",
        },
        EntryInfo {
            name: "koszul_non_pbw",
            kind: "presentation",
            params: "a (not 0 or 1, default 2)",
            summary: "K<x,y,z,u>/(x^2 + yz, x^2 + a zy, u central); Koszul but not PBW in this order",
        },
        EntryInfo {
            name: "remark_v_algebra",
            kind: "presentation",
            params: "-",
            summary: "K<x,y>/(y^2 - xy, y^2); its relation span is the monomial span {xy, y^2}",
        },
    ]
}

pub fn names() -> Vec<&'static str> {
    entries().iter().map(|e| e.name).collect()
}

fn free_base(field: FieldSpec, names: &[&str]) -> Presentation {
    let order = GeneratorOrder::new(names.iter().map(|n| (n.to_string(), 1)).collect())
        .expect("catalog generator names are valid");
    Presentation::new(Context::arc(field, order), Vec::new())
}

/// Trivial extension: sigma = id, delta = 0, c = 1, lower = 0, so the
/// variables are central over the base.
pub fn free_over(base: &Presentation, vars: &[&str]) -> Result<ExtensionData> {
    let b = ExtensionBuilder::new(base.clone(), vars.iter().map(|v| v.to_string()).collect())?;
    Ok(b.build())
}

/// Homogenized enveloping algebra of an n-dimensional Lie algebra given by
/// sparse structure constants: each (i, j, k, coef) entry says the bracket
/// [x_i, x_j] contains coef * x_k (0-based, i < j; antisymmetry is filled
/// in). The base is K[z]; the Jacobi identity is verified exactly.
pub fn homogenized_enveloping(
    field: FieldSpec,
    n: usize,
    brackets: &[(usize, usize, usize, Scalar)],
) -> Result<ExtensionData> {
    if n == 0 {
        return Err(Error::Parameter("need at least one Lie generator".into()));
    }
    let zero = field.zero();
    let mut c = vec![vec![vec![zero.clone(); n]; n]; n];
    for (i, j, k, coef) in brackets {
        if *i >= *j {
            return Err(Error::Parameter(format!(
                "bracket entry ({i},{j},{k}) must have i < j; antisymmetry is implied"
            )));
        }
        if *j >= n || *k >= n {
            return Err(Error::Parameter(format!(
                "bracket entry ({i},{j},{k}) is out of range for n = {n}"
            )));
        }
        if coef.field() != field {
            return Err(Error::Parameter(
                "bracket coefficient belongs to a different field".into(),
            ));
        }
        if !c[*i][*j][*k].is_zero() {
            return Err(Error::Parameter(format!(
                "duplicate bracket entry ({i},{j},{k})"
            )));
        }
        c[*i][*j][*k] = coef.clone();
        c[*j][*i][*k] = coef.neg();
    }
    // Jacobi: [[xi,xj],xl] + [[xj,xl],xi] + [[xl,xi],xj] = 0, coefficient
    // of x_m for every i, j, l, m.
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for m in 0..n {
                    let mut sum = zero.clone();
                    for k in 0..n {
                        sum = sum
                            .add(&c[i][j][k].mul(&c[k][l][m]))
                            .add(&c[j][l][k].mul(&c[k][i][m]))
                            .add(&c[l][i][k].mul(&c[k][j][m]));
                    }
                    if !sum.is_zero() {
                        return Err(Error::Parameter(format!(
                            "structure constants violate the Jacobi identity at (i,j,l,m)=({i},{j},{l},{m})"
                        )));
                    }
                }
            }
        }
    }
    let base = free_base(field, &["z"]);
    let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut b = ExtensionBuilder::new(base, vars)?;
    let combined = b.combined_ctx().clone();
    let z = FreePoly::generator(&combined, 0);
    for j in 0..n {
        for i in 0..j {
            let mut lower = FreePoly::zero(&combined);
            for (k, coef) in c[j][i].iter().enumerate() {
                if !coef.is_zero() {
                    let xk = FreePoly::generator(&combined, 1 + k);
                    lower = lower.add(&z.mul(&xk).scale(coef));
                }
            }
            b = b.lower(j, i, lower);
        }
    }
    Ok(b.build())
}

fn jordan_plane(field: FieldSpec) -> ExtensionData {
    let base = free_base(field, &["x"]);
    let ctx = base.ctx().clone();
    let x = FreePoly::generator(&ctx, 0);
    ExtensionBuilder::new(base, vec!["y".into()])
        .expect("jordan plane names are valid")
        .delta(0, 0, x.mul(&x))
        .build()
}

fn quantum_plane(field: FieldSpec, q: Scalar) -> Result<ExtensionData> {
    if q.is_zero() {
        return Err(Error::Parameter("quantum_plane needs q != 0".into()));
    }
    let base = free_base(field, &["t"]);
    let ctx = base.ctx().clone();
    let t = FreePoly::generator(&ctx, 0);
    Ok(ExtensionBuilder::new(base, vec!["x".into()])
        .expect("quantum plane names are valid")
        .sigma(0, 0, t.scale(&q))
        .build())
}

fn remark_order_algebra(field: FieldSpec) -> Presentation {
    let p = free_base(field, &["x", "y", "z"]);
    let ctx = p.ctx().clone();
    let x = FreePoly::generator(&ctx, 0);
    let y = FreePoly::generator(&ctx, 1);
    let z = FreePoly::generator(&ctx, 2);
    Presentation::new(
        ctx.clone(),
        vec![
            z.mul(&z).sub(&x.mul(&y)).sub(&y.mul(&x)),
            z.mul(&x).sub(&x.mul(&z)),
            z.mul(&y).sub(&y.mul(&z)),
        ],
    )
}

fn koszul_non_pbw(field: FieldSpec, a: Scalar) -> Result<Presentation> {
    if a.is_zero() || a.is_one() {
        return Err(Error::Parameter("koszul_non_pbw needs a outside {0, 1}".into()));
    }
    let p = free_base(field, &["x", "y", "z", "u"]);
    let ctx = p.ctx().clone();
    let x = FreePoly::generator(&ctx, 0);
    let y = FreePoly::generator(&ctx, 1);
    let z = FreePoly::generator(&ctx, 2);
    let u = FreePoly::generator(&ctx, 3);
    let xx = x.mul(&x);
    Ok(Presentation::new(
        ctx.clone(),
        vec![
            xx.add(&y.mul(&z)),
            xx.add(&z.mul(&y).scale(&a)),
            u.mul(&x).sub(&x.mul(&u)),
            u.mul(&y).sub(&y.mul(&u)),
            u.mul(&z).sub(&z.mul(&u)),
        ],
    ))
}

fn remark_v_algebra(field: FieldSpec) -> Presentation {
    let p = free_base(field, &["x", "y"]);
    let ctx = p.ctx().clone();
    let x = FreePoly::generator(&ctx, 0);
    let y = FreePoly::generator(&ctx, 1);
    let yy = y.mul(&y);
    Presentation::new(ctx.clone(), vec![yy.sub(&x.mul(&y)), yy])
}

fn take_param(
    params: &BTreeMap<String, Scalar>,
    entry: &str,
    key: &str,
    default: Scalar,
    field: FieldSpec,
) -> Result<Scalar> {
    for k in params.keys() {
        if k != key {
            return Err(Error::Parameter(format!(
                "unknown parameter '{k}' for {entry} (accepts: {key})"
            )));
        }
    }
    match params.get(key) {
        None => Ok(default),
        Some(s) if s.field() == field => Ok(s.clone()),
        Some(_) => Err(Error::Parameter(format!(
            "parameter '{key}' belongs to a different field"
        ))),
    }
}

fn no_params(params: &BTreeMap<String, Scalar>, entry: &str) -> Result<()> {
    if let Some(k) = params.keys().next() {
        return Err(Error::Parameter(format!(
            "unknown parameter '{k}' for {entry} (accepts none)"
        )));
    }
    Ok(())
}

pub fn build(
    name: &str,
    field: FieldSpec,
    params: &BTreeMap<String, Scalar>,
) -> Result<CatalogItem> {
    match name {
        "jordan_plane" => {
            no_params(params, name)?;
            Ok(CatalogItem::Extension(jordan_plane(field)))
        }
        "quantum_plane" => {
            let q = take_param(params, name, "q", field.integer(2), field)?;
            Ok(CatalogItem::Extension(quantum_plane(field, q)?))
        }
        "abelian2" => {
            no_params(params, name)?;
            Ok(CatalogItem::Extension(homogenized_enveloping(field, 2, &[])?))
        }
        "heisenberg" => {
            no_params(params, name)?;
            let one = field.one();
            Ok(CatalogItem::Extension(homogenized_enveloping(
                field,
                3,
                &[(0, 1, 2, one)],
            )?))
        }
        "sl2" => {
            no_params(params, name)?;
            let brackets = [
                (0, 1, 2, field.one()),
                (0, 2, 0, field.integer(-2)),
                (1, 2, 1, field.integer(2)),
            ];
            Ok(CatalogItem::Extension(homogenized_enveloping(field, 3, &brackets)?))
        }
        "free_over_jordan" => {
            no_params(params, name)?;
            let base = jordan_plane(field).emit_presentation();
            Ok(CatalogItem::Extension(free_over(&base, &["u"])?))
        }
        "remark_order_algebra" => {
            no_params(params, name)?;
            Ok(CatalogItem::Presentation(remark_order_algebra(field)))
        }
        "koszul_non_pbw" => {
            let a = take_param(params, name, "a", field.integer(2), field)?;
            Ok(CatalogItem::Presentation(koszul_non_pbw(field, a)?))
        }
        "remark_v_algebra" => {
            no_params(params, name)?;
            Ok(CatalogItem::Presentation(remark_v_algebra(field)))
        }
        _ => Err(Error::UnknownCatalog(name.to_string())),
    }
}

/// Every extension entry built with default parameters.
pub fn extension_entries(field: FieldSpec) -> Vec<(&'static str, ExtensionData)> {
    entries()
        .iter()
        .filter(|e| e.kind == "extension")
        .map(|e| {
            let item = build(e.name, field, &BTreeMap::new()).expect("default build succeeds");
            match item {
                CatalogItem::Extension(x) => (e.name, x),
                CatalogItem::Presentation(_) => unreachable!("entry {} is an extension", e.name),
            }
        })
        .collect()
}

/// Every presentation entry built with default parameters.
pub fn presentation_entries(field: FieldSpec) -> Vec<(&'static str, Presentation)> {
    entries()
        .iter()
        .filter(|e| e.kind == "presentation")
        .map(|e| {
            let item = build(e.name, field, &BTreeMap::new()).expect("default build succeeds");
            match item {
                CatalogItem::Presentation(p) => (e.name, p),
                CatalogItem::Extension(_) => unreachable!("entry {} is a presentation", e.name),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_builds_and_validates() {
        for field in [FieldSpec::rationals(), FieldSpec::default_prime_field()] {
            for e in entries() {
                let item = build(e.name, field, &BTreeMap::new()).unwrap();
                match &item {
                    CatalogItem::Presentation(p) => {
                        assert!(p.validate().is_valid(), "{} validates", e.name);
                    }
                    CatalogItem::Extension(x) => {
                        assert!(x.validate_extension(4).is_valid(), "{} validates", e.name);
                        assert!(x.check_graded().is_valid(), "{} is graded", e.name);
                        let p = x.emit_presentation();
                        assert!(p.validate().is_valid(), "{} emits cleanly", e.name);
                    }
                }
            }
        }
    }

    #[test]
    fn jordan_plane_matches_its_relation() {
        let item = build("jordan_plane", FieldSpec::rationals(), &BTreeMap::new()).unwrap();
        let p = item.as_presentation();
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.relations()[0].to_string(), "y*x - x*y - x^2");
    }

    #[test]
    fn quantum_plane_parameters() {
        let field = FieldSpec::rationals();
        let mut params = BTreeMap::new();
        params.insert("q".to_string(), field.one());
        let item = build("quantum_plane", field, &params).unwrap();
        let CatalogItem::Extension(x) = item else { panic!() };
        let flags = x.classify(3);
        assert!(flags.semi_commutative, "q = 1 degenerates to the polynomial ring");

        params.insert("q".to_string(), field.zero());
        assert!(matches!(
            build("quantum_plane", field, &params),
            Err(Error::Parameter(_))
        ));

        let mut bad = BTreeMap::new();
        bad.insert("b".to_string(), field.one());
        assert!(matches!(
            build("quantum_plane", field, &bad),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn koszul_non_pbw_rejects_degenerate_a() {
        let field = FieldSpec::rationals();
        for bad in [field.zero(), field.one()] {
            let mut params = BTreeMap::new();
            params.insert("a".to_string(), bad);
            assert!(matches!(
                build("koszul_non_pbw", field, &params),
                Err(Error::Parameter(_))
            ));
        }
    }

    #[test]
    fn heisenberg_relation_follows_the_bracket() {
        let item = build("heisenberg", FieldSpec::rationals(), &BTreeMap::new()).unwrap();
        let p = item.as_presentation();
        let rendered: Vec<String> = p.relations().iter().map(|r| r.to_string()).collect();
        assert!(rendered.contains(&"x2*x1 - x1*x2 + z*x3".to_string()), "{rendered:?}");
        assert!(rendered.contains(&"x1*z - z*x1".to_string()));
    }

    #[test]
    fn sl2_module_hilbert() {
        let item = build("sl2", FieldSpec::rationals(), &BTreeMap::new()).unwrap();
        let CatalogItem::Extension(x) = item else { panic!() };
        assert_eq!(x.module_hilbert(2), vec![1, 4, 10]);
    }

    #[test]
    fn jacobi_violations_are_rejected() {
        let field = FieldSpec::rationals();
        // [x1,x2] = x1 and [x2,x3] = x2 break Jacobi.
        let bad = [(0, 1, 0, field.one()), (1, 2, 1, field.one())];
        assert!(matches!(
            homogenized_enveloping(field, 3, &bad),
            Err(Error::Parameter(_))
        ));
        // i >= j is rejected rather than silently reinterpreted.
        let swapped = [(1, 0, 2, field.one())];
        assert!(matches!(
            homogenized_enveloping(field, 3, &swapped),
            Err(Error::Parameter(_))
        ));
        let dup = [(0, 1, 2, field.one()), (0, 1, 2, field.one())];
        assert!(matches!(
            homogenized_enveloping(field, 3, &dup),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn unknown_entry_is_reported() {
        assert!(matches!(
            build("nope", FieldSpec::rationals(), &BTreeMap::new()),
            Err(Error::UnknownCatalog(_))
        ));
    }

    #[test]
    fn entry_lists_are_consistent() {
        assert_eq!(
            entries().len(),
            extension_entries(FieldSpec::rationals()).len()
                + presentation_entries(FieldSpec::rationals()).len()
        );
        assert!(names().contains(&"jordan_plane"));
    }
}
