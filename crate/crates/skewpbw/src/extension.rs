//! Graded skew PBW extensions of a finitely presented base algebra.
//!
//! The data of an extension A over base R: new degree-1 variables x_i, for
//! each of them an endomorphism sigma_i and a sigma_i-derivation delta_i of
//! R (given on base generators), the commutation scalars c_{i,j}, and the
//! lower terms d_{ji} of x_j x_i - c_{i,j} x_i x_j, constrained to
//! R_2 + R_1 x_1 + ... + R_1 x_n. Validation checks that sigma and delta
//! descend to the quotient R, that sigma stays injective degree by degree,
//! and that the lower terms have the graded shape; emission turns the data
//! into an ordinary presentation of A.

use std::sync::Arc;

use crate::freealg::{Context, FreePoly, GeneratorOrder, Word};
use crate::presentation::{Presentation, ValidationReport};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Subclass membership flags. Every flag is decided from the defining data
/// modulo the base ideal; bijectivity is certified degree by degree up to
/// the requested bound.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ClassFlags {
    pub pre_commutative: bool,
    pub quasi_commutative: bool,
    pub bijective_to_bound: bool,
    pub derivation_type: bool,
    pub endomorphism_type: bool,
    pub constant: bool,
    pub semi_commutative: bool,
}

/// Constructs `ExtensionData` step by step: defaults are the trivial
/// extension (sigma = id, delta = 0, c = 1, lower = 0).
pub struct ExtensionBuilder {
    base: Presentation,
    vars: Vec<String>,
    combined: Arc<Context>,
    sigma: Vec<Vec<FreePoly>>,
    delta: Vec<Vec<FreePoly>>,
    c: Vec<Vec<Scalar>>,
    lower: Vec<Vec<FreePoly>>,
}

impl ExtensionBuilder {
    pub fn new(base: Presentation, vars: Vec<String>) -> Result<ExtensionBuilder> {
        let base_ord = &base.ctx().order;
        let mut combined_gens: Vec<(String, u32)> = (0..base_ord.len())
            .map(|i| (base_ord.name(i).to_string(), base_ord.weight(i)))
            .collect();
        for v in &vars {
            if base_ord.index_of(v).is_some() {
                return Err(Error::Extension(format!(
                    "variable '{v}' collides with a base generator"
                )));
            }
            combined_gens.push((v.clone(), 1));
        }
        // GeneratorOrder::new re-checks distinctness and name syntax.
        let combined_order = GeneratorOrder::new(combined_gens)?;
        let combined = Context::arc(base.ctx().field, combined_order);
        let m = base_ord.len();
        let n = vars.len();
        let id_images: Vec<FreePoly> =
            (0..m).map(|k| FreePoly::generator(base.ctx(), k)).collect();
        let zero = FreePoly::zero(base.ctx());
        let czero = FreePoly::zero(&combined);
        let one = base.ctx().field.one();
        Ok(ExtensionBuilder {
            sigma: vec![id_images; n],
            delta: vec![vec![zero; m]; n],
            c: vec![vec![one; n]; n],
            lower: vec![vec![czero; n]; n],
            base,
            vars,
            combined,
        })
    }

    pub fn base_ctx(&self) -> &Arc<Context> {
        self.base.ctx()
    }

    pub fn combined_ctx(&self) -> &Arc<Context> {
        &self.combined
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// sigma_i(t_k) = image, a polynomial over the base generators.
    pub fn sigma(mut self, i: usize, k: usize, image: FreePoly) -> Self {
        assert!(**image.ctx() == **self.base.ctx(), "sigma image must use the base context");
        self.sigma[i][k] = image;
        self
    }

    pub fn delta(mut self, i: usize, k: usize, image: FreePoly) -> Self {
        assert!(**image.ctx() == **self.base.ctx(), "delta image must use the base context");
        self.delta[i][k] = image;
        self
    }

    /// c_{i,j} for i < j (0-based variable indices).
    pub fn c(mut self, i: usize, j: usize, value: Scalar) -> Self {
        assert!(i < j && j < self.vars.len(), "require i < j < n");
        assert!(value.field() == self.base.ctx().field, "scalar field mismatch");
        self.c[i][j] = value;
        self
    }

    /// Lower term d_{ji} of x_j x_i - c_{i,j} x_i x_j, over the combined
    /// context (j > i, 0-based).
    pub fn lower(mut self, j: usize, i: usize, value: FreePoly) -> Self {
        assert!(i < j && j < self.vars.len(), "require i < j < n");
        assert!(**value.ctx() == *self.combined, "lower term must use the combined context");
        self.lower[j][i] = value;
        self
    }

    pub fn build(self) -> ExtensionData {
        ExtensionData {
            base: self.base,
            vars: self.vars,
            combined: self.combined,
            sigma: self.sigma,
            delta: self.delta,
            c: self.c,
            lower: self.lower,
        }
    }
}

/// A graded skew PBW extension, held as defining data over the base.
#[derive(Clone)]
pub struct ExtensionData {
    base: Presentation,
    vars: Vec<String>,
    combined: Arc<Context>,
    sigma: Vec<Vec<FreePoly>>,
    delta: Vec<Vec<FreePoly>>,
    c: Vec<Vec<Scalar>>,
    lower: Vec<Vec<FreePoly>>,
}

impl PartialEq for ExtensionData {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.vars == other.vars
            && self.sigma == other.sigma
            && self.delta == other.delta
            && self.c == other.c
            && self.lower == other.lower
    }
}
impl Eq for ExtensionData {}

impl std::fmt::Debug for ExtensionData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ExtensionData({} base gens, vars {:?})",
            self.base.ctx().order.len(),
            self.vars
        )
    }
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

impl ExtensionData {
    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn combined_ctx(&self) -> &Arc<Context> {
        &self.combined
    }

    pub fn sigma_image(&self, i: usize, k: usize) -> &FreePoly {
        &self.sigma[i][k]
    }

    pub fn delta_image(&self, i: usize, k: usize) -> &FreePoly {
        &self.delta[i][k]
    }

    pub fn c_scalar(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < j, "c is stored for i < j");
        &self.c[i][j]
    }

    pub fn lower_term(&self, j: usize, i: usize) -> &FreePoly {
        assert!(i < j, "lower terms are stored for j > i");
        &self.lower[j][i]
    }

    /// sigma_i applied to an arbitrary base polynomial.
    pub fn sigma_hat(&self, i: usize, f: &FreePoly) -> FreePoly {
        f.substitute(self.base.ctx(), &self.sigma[i])
    }

    /// delta_i extended by the twisted Leibniz rule
    /// delta(a b) = sigma(a) delta(b) + delta(a) b.
    pub fn delta_hat(&self, i: usize, f: &FreePoly) -> FreePoly {
        let ctx = self.base.ctx();
        let mut acc = FreePoly::zero(ctx);
        for (w, coef) in f.terms() {
            // Right-to-left over the word: dw = delta(suffix), sw = suffix.
            let mut dw = FreePoly::zero(ctx);
            let mut sw = FreePoly::one(ctx);
            for &a in w.letters().iter().rev() {
                let a = a as usize;
                dw = self.sigma[i][a].mul(&dw).add(&self.delta[i][a].mul(&sw));
                sw = FreePoly::generator(ctx, a).mul(&sw);
            }
            acc = acc.add(&dw.scale(coef));
        }
        acc
    }

    fn in_base_ideal(&self, f: &FreePoly) -> bool {
        if f.is_zero() {
            return true;
        }
        let mut degs: Vec<u32> = f
            .terms()
            .iter()
            .map(|(w, _)| self.base.ctx().order.word_degree(w))
            .collect();
        degs.sort_unstable();
        degs.dedup();
        degs.iter().all(|&d| {
            self.base
                .slice(d)
                .class_of_poly(&f.component(d))
                .is_empty()
        })
    }

    /// Splits a lower term: (pure base part, coefficient of each variable).
    /// Violating terms (a variable letter anywhere but last, more than one
    /// variable letter, or degree != 2) are reported by word.
    fn split_lower(&self, f: &FreePoly) -> (FreePoly, Vec<FreePoly>, Vec<String>) {
        let m = self.base.ctx().order.len() as u32;
        let base_ctx = self.base.ctx();
        let mut base_part = FreePoly::zero(base_ctx);
        let mut var_coefs = vec![FreePoly::zero(base_ctx); self.vars.len()];
        let mut bad = Vec::new();
        for (w, coef) in f.terms() {
            let letters = w.letters();
            let var_positions: Vec<usize> =
                (0..letters.len()).filter(|&p| letters[p] >= m).collect();
            let word_str = FreePoly::monomial(&self.combined, w.clone(), coef.clone()).to_string();
            let deg = self.combined.order.word_degree(w);
            match var_positions.len() {
                0 => {
                    if deg != 2 {
                        bad.push(format!("term {word_str} has base degree {deg}, expected 2"));
                    } else {
                        let bw = Word::from_letters(letters.to_vec());
                        base_part = base_part.add(&FreePoly::monomial(base_ctx, bw, coef.clone()));
                    }
                }
                1 => {
                    let p = var_positions[0];
                    if p != letters.len() - 1 {
                        bad.push(format!("term {word_str} has a variable before base letters"));
                    } else if deg != 2 {
                        bad.push(format!("term {word_str} has degree {deg}, expected 2"));
                    } else {
                        let var = (letters[p] - m) as usize;
                        let bw = Word::from_letters(letters[..p].to_vec());
                        var_coefs[var] =
                            var_coefs[var].add(&FreePoly::monomial(base_ctx, bw, coef.clone()));
                    }
                }
                _ => bad.push(format!("term {word_str} uses more than one variable")),
            }
        }
        (base_part, var_coefs, bad)
    }

    fn lower_is_zero(&self, j: usize, i: usize) -> bool {
        let (base_part, var_coefs, bad) = self.split_lower(&self.lower[j][i]);
        bad.is_empty()
            && self.in_base_ideal(&base_part)
            && var_coefs.iter().all(|r| r.is_zero())
    }

    /// Structural validation: the base validates, sigma_i descends to R and
    /// is injective on R_d for d <= bound, delta_i descends to R, the
    /// commutation scalars are nonzero, and the lower terms have the
    /// graded shape.
    pub fn validate_extension(&self, bound: u32) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let base_rep = self.base.validate();
        for e in base_rep.errors {
            rep.error(format!("base: {e}"));
        }
        for w in base_rep.warnings {
            rep.warn(format!("base: {w}"));
        }
        for (i, var) in self.vars.iter().enumerate() {
            for r in self.base.relations() {
                let s = self.sigma_hat(i, r);
                if !self.in_base_ideal(&s) {
                    rep.error(format!(
                        "sigma for {var} does not preserve the base ideal: image of {r} is {s}"
                    ));
                }
                let d = self.delta_hat(i, r);
                if !self.in_base_ideal(&d) {
                    rep.error(format!(
                        "delta for {var} is not well defined on the base: image of {r} is {d}"
                    ));
                }
            }
            for d in 1..=bound {
                if !self.sigma_injective_on(i, d) {
                    rep.error(format!(
                        "sigma for {var} is not injective on the degree-{d} part of the base"
                    ));
                    break;
                }
            }
        }
        for j in 0..self.vars.len() {
            for i in 0..j {
                if self.c[i][j].is_zero() {
                    rep.error(format!(
                        "c for ({}, {}) is zero",
                        self.vars[i], self.vars[j]
                    ));
                }
                let (_, _, bad) = self.split_lower(&self.lower[j][i]);
                for b in bad {
                    rep.error(format!(
                        "lower term for ({}, {}): {b}",
                        self.vars[j], self.vars[i]
                    ));
                }
            }
        }
        rep
    }

    /// Injectivity of the induced map on R_d. Images of the normal-word
    /// basis are reduced degree by degree (so a non-graded sigma is judged
    /// on its full image) and ranked.
    fn sigma_injective_on(&self, i: usize, d: u32) -> bool {
        let slice = self.base.slice(d);
        let words = slice.normal_words();
        if words.is_empty() {
            return true;
        }
        let ctx = self.base.ctx();
        let images: Vec<FreePoly> = words
            .iter()
            .map(|w| {
                self.sigma_hat(i, &FreePoly::monomial(ctx, w.clone(), ctx.field.one()))
            })
            .collect();
        let mut degs: Vec<u32> = images
            .iter()
            .flat_map(|f| f.terms().iter().map(|(w, _)| ctx.order.word_degree(w)))
            .collect();
        degs.sort_unstable();
        degs.dedup();
        let mut offsets = std::collections::BTreeMap::new();
        let mut width = 0usize;
        for &dd in &degs {
            offsets.insert(dd, width);
            width += self.base.slice(dd).dim();
        }
        let vecs: Vec<crate::linalg::SparseVec> = images
            .iter()
            .map(|f| {
                let mut v: crate::linalg::SparseVec = Vec::new();
                for &dd in &degs {
                    let comp = f.component(dd);
                    if comp.is_zero() {
                        continue;
                    }
                    let off = offsets[&dd];
                    for (col, coef) in self.base.slice(dd).class_of_poly(&comp) {
                        v.push((off + col, coef));
                    }
                }
                v.sort_by_key(|(c, _)| *c);
                v
            })
            .collect();
        crate::linalg::rank_of_vectors(ctx.field, width.max(1), &vecs) == words.len()
    }

    /// Grading checks: variables sit in degree 1 by construction; sigma
    /// must preserve degrees, delta must raise them by 1, and the lower
    /// terms must live in R_2 + R_1 x_1 + ... + R_1 x_n.
    pub fn check_graded(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let ord = &self.base.ctx().order;
        for (i, var) in self.vars.iter().enumerate() {
            for k in 0..ord.len() {
                let w = ord.weight(k);
                let s = &self.sigma[i][k];
                match s.homogeneous_degree() {
                    Some(d) if d == w => {}
                    Some(d) => rep.error(format!(
                        "sigma for {var} sends {} (degree {w}) to a degree-{d} element",
                        ord.name(k)
                    )),
                    None if s.is_zero() => rep.error(format!(
                        "sigma for {var} sends {} to zero",
                        ord.name(k)
                    )),
                    None => rep.error(format!(
                        "sigma for {var} sends {} to an inhomogeneous element {s}",
                        ord.name(k)
                    )),
                }
                let dl = &self.delta[i][k];
                if !dl.is_zero() {
                    match dl.homogeneous_degree() {
                        Some(d) if d == w + 1 => {}
                        Some(d) => rep.error(format!(
                            "delta for {var} sends {} (degree {w}) to a degree-{d} element, expected {}",
                            ord.name(k),
                            w + 1
                        )),
                        None => rep.error(format!(
                            "delta for {var} sends {} to an inhomogeneous element {dl}",
                            ord.name(k)
                        )),
                    }
                }
            }
        }
        for j in 0..self.vars.len() {
            for i in 0..j {
                if self.c[i][j].is_zero() {
                    rep.error(format!("c for ({}, {}) is zero", self.vars[i], self.vars[j]));
                }
                let (_, _, bad) = self.split_lower(&self.lower[j][i]);
                for b in bad {
                    rep.error(format!(
                        "lower term for ({}, {}): {b}",
                        self.vars[j], self.vars[i]
                    ));
                }
            }
        }
        rep
    }

    fn to_combined(&self, f: &FreePoly) -> FreePoly {
        f.map_letters(&self.combined, |l| l)
    }

    /// The extension as a presentation on base generators plus variables:
    /// base relations, then x_h t_k - sigma_h(t_k) x_h - delta_h(t_k) for
    /// every variable/generator pair, then
    /// x_j x_i - c_{i,j} x_i x_j - d_{ji} for j > i.
    pub fn emit_presentation(&self) -> Presentation {
        let m = self.base.ctx().order.len();
        let mut relations: Vec<FreePoly> = self
            .base
            .relations()
            .iter()
            .map(|r| self.to_combined(r))
            .collect();
        for h in 0..self.vars.len() {
            let xh = FreePoly::generator(&self.combined, m + h);
            for k in 0..m {
                let tk = FreePoly::generator(&self.combined, k);
                let s = self.to_combined(&self.sigma[h][k]);
                let d = self.to_combined(&self.delta[h][k]);
                relations.push(xh.mul(&tk).sub(&s.mul(&xh)).sub(&d));
            }
        }
        for j in 0..self.vars.len() {
            for i in 0..j {
                let xi = FreePoly::generator(&self.combined, m + i);
                let xj = FreePoly::generator(&self.combined, m + j);
                let g = xj
                    .mul(&xi)
                    .sub(&xi.mul(&xj).scale(&self.c[i][j]))
                    .sub(&self.lower[j][i]);
                relations.push(g);
            }
        }
        Presentation::new(self.combined.clone(), relations)
    }

    /// Subclass flags, decided modulo the base ideal.
    pub fn classify(&self, bound: u32) -> ClassFlags {
        let ord = &self.base.ctx().order;
        let mut derivation_type = true;
        let mut endomorphism_type = true;
        for i in 0..self.vars.len() {
            for k in 0..ord.len() {
                let gen = FreePoly::generator(self.base.ctx(), k);
                if !self.in_base_ideal(&self.sigma[i][k].sub(&gen)) {
                    derivation_type = false;
                }
                if !self.in_base_ideal(&self.delta[i][k]) {
                    endomorphism_type = false;
                }
            }
        }
        let mut lower_zero = true;
        let mut lower_pre = true;
        for j in 0..self.vars.len() {
            for i in 0..j {
                if !self.lower_is_zero(j, i) {
                    lower_zero = false;
                }
                // Pre-commutative allows R_1 x_h terms but no pure R_2 part.
                let (base_part, _, bad) = self.split_lower(&self.lower[j][i]);
                if !bad.is_empty() || !self.in_base_ideal(&base_part) {
                    lower_pre = false;
                }
            }
        }
        let quasi_commutative = endomorphism_type && lower_zero;
        let graded_ok = self.check_graded().is_valid();
        let bijective_to_bound = graded_ok
            && (1..=bound).all(|d| (0..self.vars.len()).all(|i| self.sigma_injective_on(i, d)));
        let constant = derivation_type && endomorphism_type;
        ClassFlags {
            pre_commutative: lower_pre,
            quasi_commutative,
            bijective_to_bound,
            derivation_type,
            endomorphism_type,
            constant,
            semi_commutative: quasi_commutative && constant,
        }
    }

    /// Hilbert function of A as a free left R-module with the standard
    /// monomials in the variables as basis:
    /// h_A(p) = sum_t h_R(t) * C(p - t + n - 1, n - 1).
    pub fn module_hilbert(&self, to: u32) -> Vec<usize> {
        let h_r = self.base.hilbert(to);
        let n = self.vars.len() as u64;
        if n == 0 {
            return h_r;
        }
        (0..=to as usize)
            .map(|p| {
                let mut acc: u128 = 0;
                for t in 0..=p {
                    acc += h_r[t] as u128 * binom((p - t) as u64 + n - 1, n - 1);
                }
                usize::try_from(acc).expect("module Hilbert value overflows usize")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    fn base_free(field: FieldSpec, names: &[&str]) -> Presentation {
        let order = GeneratorOrder::new(names.iter().map(|n| (n.to_string(), 1)).collect()).unwrap();
        Presentation::new(Context::arc(field, order), vec![])
    }

    fn base_commutative_plane(field: FieldSpec) -> Presentation {
        let p = base_free(field, &["t1", "t2"]);
        let c = p.ctx().clone();
        let t1 = FreePoly::generator(&c, 0);
        let t2 = FreePoly::generator(&c, 1);
        Presentation::new(c, vec![t2.mul(&t1).sub(&t1.mul(&t2))])
    }

    fn jordan_extension(field: FieldSpec) -> ExtensionData {
        let base = base_free(field, &["x"]);
        let c = base.ctx().clone();
        let x = FreePoly::generator(&c, 0);
        ExtensionBuilder::new(base, vec!["y".into()])
            .unwrap()
            .delta(0, 0, x.mul(&x))
            .build()
    }

    #[test]
    fn jordan_emits_its_presentation() {
        let e = jordan_extension(FieldSpec::rationals());
        assert!(e.validate_extension(4).is_valid());
        assert!(e.check_graded().is_valid());
        let p = e.emit_presentation();
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.relations()[0].to_string(), "y*x - x*y - x^2");
        assert_eq!(p.hilbert(6), e.module_hilbert(6));
        assert_eq!(e.module_hilbert(4), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn jordan_classification() {
        let e = jordan_extension(FieldSpec::rationals());
        let f = e.classify(4);
        assert!(f.derivation_type);
        assert!(!f.endomorphism_type);
        assert!(!f.constant);
        assert!(!f.quasi_commutative);
        assert!(f.pre_commutative);
        assert!(f.bijective_to_bound);
        assert!(!f.semi_commutative);
    }

    #[test]
    fn quantum_plane_classification() {
        let base = base_free(FieldSpec::rationals(), &["t"]);
        let c = base.ctx().clone();
        let t = FreePoly::generator(&c, 0);
        let q = c.field.integer(2);
        let e = ExtensionBuilder::new(base, vec!["x".into()])
            .unwrap()
            .sigma(0, 0, t.scale(&q))
            .build();
        assert!(e.validate_extension(4).is_valid());
        let p = e.emit_presentation();
        assert_eq!(p.relations()[0].to_string(), "x*t - 2*t*x");
        let f = e.classify(4);
        assert!(f.endomorphism_type);
        assert!(!f.derivation_type);
        assert!(f.quasi_commutative);
        assert!(f.pre_commutative);
        assert!(!f.constant);
        assert!(!f.semi_commutative);
        assert!(f.bijective_to_bound);
        assert_eq!(e.module_hilbert(5), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn trivial_extension_is_semi_commutative() {
        let base = base_commutative_plane(FieldSpec::rationals());
        let e = ExtensionBuilder::new(base, vec!["u".into(), "v".into()])
            .unwrap()
            .build();
        assert!(e.validate_extension(3).is_valid());
        let f = e.classify(3);
        assert!(f.quasi_commutative && f.constant && f.semi_commutative);
        assert!(f.pre_commutative && f.derivation_type && f.endomorphism_type);
        // Free module over the plane on monomials in u, v.
        let p = e.emit_presentation();
        assert_eq!(p.hilbert(5), e.module_hilbert(5));
        assert_eq!(e.module_hilbert(3), vec![1, 4, 10, 20]);
    }

    #[test]
    fn sigma_must_preserve_the_ideal() {
        // Base K<t1,t2>/(t1 t2); swapping the generators does not fix it.
        let free = base_free(FieldSpec::rationals(), &["t1", "t2"]);
        let c = free.ctx().clone();
        let t1 = FreePoly::generator(&c, 0);
        let t2 = FreePoly::generator(&c, 1);
        let base = Presentation::new(c, vec![t1.mul(&t2)]);
        let e = ExtensionBuilder::new(base, vec!["x".into()])
            .unwrap()
            .sigma(0, 0, t2.clone())
            .sigma(0, 1, t1.clone())
            .build();
        let rep = e.validate_extension(3);
        assert!(!rep.is_valid());
        assert!(rep.errors.iter().any(|e| e.contains("does not preserve")));
    }

    #[test]
    fn delta_must_be_well_defined() {
        // Base K<t1,t2>/(t2 t1), delta(t1) = t2^2: delta of the relation is
        // t2^3, which is not in the ideal.
        let free = base_free(FieldSpec::rationals(), &["t1", "t2"]);
        let c = free.ctx().clone();
        let t1 = FreePoly::generator(&c, 0);
        let t2 = FreePoly::generator(&c, 1);
        let base = Presentation::new(c, vec![t2.mul(&t1)]);
        let e = ExtensionBuilder::new(base, vec!["x".into()])
            .unwrap()
            .delta(0, 0, t2.mul(&t2))
            .build();
        let rep = e.validate_extension(3);
        assert!(!rep.is_valid());
        assert!(rep.errors.iter().any(|e| e.contains("delta")));
    }

    #[test]
    fn sigma_must_be_injective() {
        let base = base_commutative_plane(FieldSpec::rationals());
        let c = base.ctx().clone();
        let t1 = FreePoly::generator(&c, 0);
        let e = ExtensionBuilder::new(base, vec!["x".into()])
            .unwrap()
            .sigma(0, 0, t1.clone())
            .sigma(0, 1, t1.clone())
            .build();
        let rep = e.validate_extension(3);
        assert!(!rep.is_valid());
        assert!(rep.errors.iter().any(|e| e.contains("injective")));
        assert!(!e.classify(3).bijective_to_bound);
    }

    #[test]
    fn lower_terms_must_have_graded_shape() {
        let base = base_free(FieldSpec::rationals(), &["t"]);
        let e = ExtensionBuilder::new(base, vec!["u".into(), "v".into()]).unwrap();
        let comb = e.combined_ctx().clone();
        let t = FreePoly::generator(&comb, 0);
        let u = FreePoly::generator(&comb, 1);
        let v = FreePoly::generator(&comb, 2);
        // u*v has two variables; t^3 has wrong degree; u*t puts the
        // variable first. t*u and t^2 are fine.
        let bad = u.mul(&v).add(&t.mul(&t).mul(&t)).add(&u.mul(&t));
        let ext = e.lower(1, 0, bad).build();
        let rep = ext.validate_extension(3);
        assert_eq!(
            rep.errors
                .iter()
                .filter(|m| m.contains("lower term"))
                .count(),
            3
        );

        let base2 = base_free(FieldSpec::rationals(), &["t"]);
        let e2 = ExtensionBuilder::new(base2, vec!["u".into(), "v".into()]).unwrap();
        let comb2 = e2.combined_ctx().clone();
        let t2 = FreePoly::generator(&comb2, 0);
        let u2 = FreePoly::generator(&comb2, 1);
        let good = t2.mul(&t2).add(&t2.mul(&u2));
        let ext2 = e2.lower(1, 0, good).build();
        assert!(ext2.validate_extension(3).is_valid());
        let flags = ext2.classify(3);
        // An R_2 component breaks pre-commutativity; R_1 x terms alone do not.
        assert!(!flags.pre_commutative);
        assert!(!flags.quasi_commutative);
    }

    #[test]
    fn zero_c_is_rejected() {
        let base = base_free(FieldSpec::rationals(), &["t"]);
        let e = ExtensionBuilder::new(base, vec!["u".into(), "v".into()])
            .unwrap()
            .c(0, 1, FieldSpec::rationals().zero())
            .build();
        let rep = e.validate_extension(2);
        assert!(rep.errors.iter().any(|m| m.contains("c for")));
    }

    #[test]
    fn variable_name_collision_is_rejected() {
        let base = base_free(FieldSpec::rationals(), &["t"]);
        assert!(ExtensionBuilder::new(base, vec!["t".into()]).is_err());
        let base2 = base_free(FieldSpec::rationals(), &["t"]);
        assert!(ExtensionBuilder::new(base2, vec!["u".into(), "u".into()]).is_err());
    }

    #[test]
    fn graded_check_catches_degree_drift() {
        let base = base_free(FieldSpec::rationals(), &["t"]);
        let c = base.ctx().clone();
        let t = FreePoly::generator(&c, 0);
        let e = ExtensionBuilder::new(base, vec!["x".into()])
            .unwrap()
            .sigma(0, 0, t.mul(&t))
            .delta(0, 0, t.clone())
            .build();
        let rep = e.check_graded();
        assert_eq!(rep.errors.len(), 2);
    }

    #[test]
    fn classify_implications_hold() {
        for e in [
            jordan_extension(FieldSpec::rationals()),
            jordan_extension(FieldSpec::default_prime_field()),
        ] {
            let f = e.classify(3);
            if f.semi_commutative {
                assert!(f.quasi_commutative && f.constant);
            }
            if f.constant {
                assert!(f.derivation_type && f.endomorphism_type);
            }
            if f.quasi_commutative {
                assert!(f.pre_commutative);
            }
        }
    }
}
