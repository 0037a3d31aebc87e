//! Free associative algebra over a weighted, totally ordered alphabet.
//!
//! Words are sequences of generator indices; polynomials keep their terms
//! strictly descending under deglex, so structural equality is equality of
//! canonical forms.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::scalar::{FieldSpec, Scalar};
use crate::{Error, Result};

/// A word in the free monoid: generator indices, leftmost letter first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl Into<Vec<u32>>) -> Self {
        Word(letters.into())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Leftmost occurrence of `pattern` as a factor, if any.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.0.is_empty() || pattern.0.len() > self.0.len() {
            return None;
        }
        self.0
            .windows(pattern.0.len())
            .position(|w| w == pattern.0.as_slice())
    }

    pub fn contains_factor(&self, pattern: &Word) -> bool {
        self.find(pattern).is_some()
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// The ordered weighted alphabet x_1 < x_2 < ... < x_n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorOrder {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl GeneratorOrder {
    /// Names must be distinct identifiers; weights must be positive.
    pub fn new(gens: Vec<(String, u32)>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Generators("at least one generator is required".into()));
        }
        let mut names = Vec::with_capacity(gens.len());
        let mut weights = Vec::with_capacity(gens.len());
        for (name, w) in gens {
            if !valid_name(&name) {
                return Err(Error::Generators(format!("invalid generator name '{name}'")));
            }
            if names.contains(&name) {
                return Err(Error::Generators(format!("duplicate generator name '{name}'")));
            }
            if w == 0 {
                return Err(Error::Generators(format!("generator '{name}' has weight 0")));
            }
            names.push(name);
            weights.push(w);
        }
        Ok(GeneratorOrder { names, weights })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn word_degree(&self, w: &Word) -> u32 {
        w.letters().iter().map(|&i| self.weights[i as usize]).sum()
    }

    /// Degree-first, then left-to-right comparison of letters: a larger
    /// generator index wins at the first difference. At equal degree no word
    /// is a proper prefix of another (weights are positive), so the letter
    /// scan always decides.
    pub fn compare_deglex(&self, u: &Word, v: &Word) -> Ordering {
        let (du, dv) = (self.word_degree(u), self.word_degree(v));
        if du != dv {
            return du.cmp(&dv);
        }
        for (a, b) in u.letters().iter().zip(v.letters()) {
            if a != b {
                return a.cmp(b);
            }
        }
        u.len().cmp(&v.len())
    }

    /// All words of total weight `k`, in descending deglex order.
    pub fn words_of_degree(&self, k: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.enumerate_words(k, &mut prefix, &mut out);
        out
    }

    fn enumerate_words(&self, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Word>) {
        if k == 0 {
            out.push(Word(prefix.clone()));
            return;
        }
        for i in (0..self.names.len()).rev() {
            let w = self.weights[i];
            if w <= k {
                prefix.push(i as u32);
                self.enumerate_words(k - w, prefix, out);
                prefix.pop();
            }
        }
    }

    /// The same alphabet with generators permuted: position `i` of the new
    /// order is `perm[i]` of the old one.
    pub fn permuted(&self, perm: &[usize]) -> Result<GeneratorOrder> {
        if perm.len() != self.names.len() {
            return Err(Error::Order(format!(
                "permutation lists {} generators, expected {}",
                perm.len(),
                self.names.len()
            )));
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::Order("not a permutation of the generators".into()));
            }
            seen[p] = true;
        }
        Ok(GeneratorOrder {
            names: perm.iter().map(|&p| self.names[p].clone()).collect(),
            weights: perm.iter().map(|&p| self.weights[p]).collect(),
        })
    }
}

/// Shared scaffolding for every algebraic object: the field and the alphabet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Context {
    pub field: FieldSpec,
    pub order: GeneratorOrder,
}

impl Context {
    pub fn arc(field: FieldSpec, order: GeneratorOrder) -> Arc<Context> {
        Arc::new(Context { field, order })
    }
}

fn same_ctx(a: &Arc<Context>, b: &Arc<Context>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An element of the free algebra. Terms are strictly descending in deglex
/// with nonzero coefficients, so `PartialEq` is mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreePoly {
    ctx: Arc<Context>,
    terms: Vec<(Word, Scalar)>,
}

impl FreePoly {
    pub fn zero(ctx: &Arc<Context>) -> FreePoly {
        FreePoly { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn one(ctx: &Arc<Context>) -> FreePoly {
        FreePoly::monomial(ctx, Word::empty(), ctx.field.one())
    }

    pub fn generator(ctx: &Arc<Context>, i: usize) -> FreePoly {
        assert!(i < ctx.order.len(), "generator index {i} out of range");
        FreePoly::monomial(ctx, Word::from_letters(vec![i as u32]), ctx.field.one())
    }

    pub fn monomial(ctx: &Arc<Context>, word: Word, coef: Scalar) -> FreePoly {
        FreePoly::from_terms(ctx, vec![(word, coef)])
    }

    /// Normalizes an arbitrary term list: sorts descending, merges equal
    /// words, drops zeros. Letters and coefficient fields are checked.
    pub fn from_terms(
        ctx: &Arc<Context>,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> FreePoly {
        let n = ctx.order.len() as u32;
        let mut list: Vec<(Word, Scalar)> = terms.into_iter().collect();
        for (w, c) in &list {
            assert!(
                w.letters().iter().all(|&l| l < n),
                "word letter out of range for this alphabet"
            );
            assert!(c.field() == ctx.field, "coefficient field mismatch");
        }
        list.sort_by(|a, b| ctx.order.compare_deglex(&b.0, &a.0));
        let mut out: Vec<(Word, Scalar)> = Vec::with_capacity(list.len());
        for (w, c) in list {
            match out.last_mut() {
                Some((lw, lc)) if *lw == w => *lc = lc.add(&c),
                _ => out.push((w, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        FreePoly { ctx: ctx.clone(), terms: out }
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Word, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest term under deglex.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.first().map(|(w, c)| (w, c))
    }

    pub fn add(&self, other: &FreePoly) -> FreePoly {
        assert!(same_ctx(&self.ctx, &other.ctx), "context mismatch");
        // Merge of two descending term lists.
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (wa, ca) = &self.terms[i];
            let (wb, cb) = &other.terms[j];
            match self.ctx.order.compare_deglex(wa, wb) {
                Ordering::Greater => {
                    out.push((wa.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((wb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.add(cb);
                    if !c.is_zero() {
                        out.push((wa.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().cloned());
        FreePoly { ctx: self.ctx.clone(), terms: out }
    }

    pub fn neg(&self) -> FreePoly {
        FreePoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &FreePoly) -> FreePoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> FreePoly {
        if s.is_zero() {
            return FreePoly::zero(&self.ctx);
        }
        FreePoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, other: &FreePoly) -> FreePoly {
        assert!(same_ctx(&self.ctx, &other.ctx), "context mismatch");
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                terms.push((wa.concat(wb), ca.mul(cb)));
            }
        }
        FreePoly::from_terms(&self.ctx, terms)
    }

    /// u * self * v. Two-sided monomial products preserve the term order, so
    /// this avoids a re-sort.
    pub fn sandwich(&self, u: &Word, v: &Word) -> FreePoly {
        let n = self.ctx.order.len() as u32;
        assert!(
            u.letters().iter().chain(v.letters()).all(|&l| l < n),
            "word letter out of range for this alphabet"
        );
        FreePoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (u.concat(w).concat(v), c.clone()))
                .collect(),
        }
    }

    /// Total weighted degree of a term's word.
    pub fn term_degree(&self, idx: usize) -> u32 {
        self.ctx.order.word_degree(&self.terms[idx].0)
    }

    /// Maximum degree over terms; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .map(|(w, _)| self.ctx.order.word_degree(w))
            .max()
    }

    /// The degree-k homogeneous part.
    pub fn component(&self, k: u32) -> FreePoly {
        FreePoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| self.ctx.order.word_degree(w) == k)
                .cloned()
                .collect(),
        }
    }

    /// Some(d) when nonzero with all terms of degree d.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.iter().map(|(w, _)| self.ctx.order.word_degree(w));
        let first = degs.next()?;
        if degs.all(|d| d == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> FreePoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Reinterprets letters through `f` into another context (same field).
    pub fn map_letters(&self, target: &Arc<Context>, f: impl Fn(u32) -> u32) -> FreePoly {
        assert!(target.field == self.ctx.field, "field mismatch");
        FreePoly::from_terms(
            target,
            self.terms.iter().map(|(w, c)| {
                (
                    Word::from_letters(w.letters().iter().map(|&l| f(l)).collect::<Vec<_>>()),
                    c.clone(),
                )
            }),
        )
    }

    /// Applies the algebra map sending generator i to `images[i]`.
    pub fn substitute(&self, target: &Arc<Context>, images: &[FreePoly]) -> FreePoly {
        assert_eq!(images.len(), self.ctx.order.len(), "one image per generator");
        assert!(target.field == self.ctx.field, "field mismatch");
        let mut acc = FreePoly::zero(target);
        for (w, c) in &self.terms {
            let mut prod = FreePoly::one(target);
            for &l in w.letters() {
                prod = prod.mul(&images[l as usize]);
            }
            acc = acc.add(&prod.scale(c));
        }
        acc
    }
}

impl fmt::Display for FreePoly {
    /// Canonical text: terms in descending deglex, ` + `/` - ` separators,
    /// coefficients omitted when ±1 (except on the empty word), exponents
    /// collapse repeated letters. Parses back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.prints_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs_part();
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else {
                let mut lead = true;
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                    lead = false;
                }
                let letters = w.letters();
                let mut run_start = 0;
                for j in 0..=letters.len() {
                    if j == letters.len() || letters[j] != letters[run_start] {
                        if !lead {
                            write!(f, "*")?;
                        }
                        let name = self.ctx.order.name(letters[run_start] as usize);
                        let count = j - run_start;
                        if count == 1 {
                            write!(f, "{name}")?;
                        } else {
                            write!(f, "{name}^{count}")?;
                        }
                        lead = false;
                        run_start = j;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx2() -> Arc<Context> {
        Context::arc(
            FieldSpec::rationals(),
            GeneratorOrder::new(vec![("x".into(), 1), ("y".into(), 1)]).unwrap(),
        )
    }

    fn ctx_xyz_weighted() -> Arc<Context> {
        Context::arc(
            FieldSpec::rationals(),
            GeneratorOrder::new(vec![("x".into(), 1), ("y".into(), 1), ("z".into(), 2)]).unwrap(),
        )
    }

    fn w(letters: &[u32]) -> Word {
        Word::from_letters(letters.to_vec())
    }

    #[test]
    fn generator_order_rejects_bad_input() {
        assert!(GeneratorOrder::new(vec![]).is_err());
        assert!(GeneratorOrder::new(vec![("x".into(), 0)]).is_err());
        assert!(GeneratorOrder::new(vec![("x".into(), 1), ("x".into(), 1)]).is_err());
        assert!(GeneratorOrder::new(vec![("1x".into(), 1)]).is_err());
        assert!(GeneratorOrder::new(vec![("x y".into(), 1)]).is_err());
        assert!(GeneratorOrder::new(vec![("_ok2".into(), 3)]).is_ok());
    }

    #[test]
    fn deglex_degree_beats_lex() {
        let c = ctx2();
        // y < xx even though y's letter is bigger.
        assert_eq!(c.order.compare_deglex(&w(&[1]), &w(&[0, 0])), Ordering::Less);
        // xy < yx at equal degree.
        assert_eq!(c.order.compare_deglex(&w(&[0, 1]), &w(&[1, 0])), Ordering::Less);
        assert_eq!(c.order.compare_deglex(&w(&[1, 0]), &w(&[1, 0])), Ordering::Equal);
    }

    #[test]
    fn deglex_weighted_single_letter() {
        let c = ctx_xyz_weighted();
        // z has weight 2, so z and xy share a degree; z wins on the first letter.
        assert_eq!(c.order.compare_deglex(&w(&[2]), &w(&[0, 1])), Ordering::Greater);
        assert_eq!(
            c.order.words_of_degree(2),
            vec![w(&[2]), w(&[1, 1]), w(&[1, 0]), w(&[0, 1]), w(&[0, 0])]
        );
    }

    #[test]
    fn words_of_degree_counts_and_order() {
        let c = ctx2();
        for k in 0..=8u32 {
            let words = c.order.words_of_degree(k);
            assert_eq!(words.len(), 1usize << k);
            for pair in words.windows(2) {
                assert_eq!(c.order.compare_deglex(&pair[0], &pair[1]), Ordering::Greater);
            }
        }
    }

    #[test]
    fn product_of_binomials() {
        let c = ctx2();
        let x = FreePoly::generator(&c, 0);
        let y = FreePoly::generator(&c, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        // (x + y)(x - y) = x^2 - xy + yx - y^2, stored descending.
        let expect = FreePoly::from_terms(
            &c,
            vec![
                (w(&[0, 0]), c.field.one()),
                (w(&[0, 1]), c.field.integer(-1)),
                (w(&[1, 0]), c.field.one()),
                (w(&[1, 1]), c.field.integer(-1)),
            ],
        );
        assert_eq!(p, expect);
        assert_eq!(p.to_string(), "-y^2 + y*x - x*y + x^2");
    }

    #[test]
    fn component_picks_one_degree() {
        let c = ctx2();
        let x = FreePoly::generator(&c, 0);
        let y = FreePoly::generator(&c, 1);
        let f = x.mul(&y).add(&x).sub(&FreePoly::one(&c));
        assert_eq!(f.component(2), x.mul(&y));
        assert_eq!(f.component(1), x);
        assert_eq!(f.component(0), FreePoly::one(&c).neg());
        assert!(f.component(3).is_zero());
        assert_eq!(f.homogeneous_degree(), None);
        assert_eq!(x.mul(&y).homogeneous_degree(), Some(2));
    }

    #[test]
    fn sandwich_matches_mul() {
        let c = ctx2();
        let x = FreePoly::generator(&c, 0);
        let y = FreePoly::generator(&c, 1);
        let f = x.mul(&y).sub(&y.mul(&y)).add(&x);
        let u = w(&[1, 0]);
        let v = w(&[0]);
        let via_mul = FreePoly::monomial(&c, u.clone(), c.field.one())
            .mul(&f)
            .mul(&FreePoly::monomial(&c, v.clone(), c.field.one()));
        assert_eq!(f.sandwich(&u, &v), via_mul);
    }

    #[test]
    fn substitute_is_an_algebra_map() {
        let c = ctx2();
        let x = FreePoly::generator(&c, 0);
        let y = FreePoly::generator(&c, 1);
        let images = [x.add(&y), y.clone()];
        let f = x.mul(&y).sub(&y.mul(&x));
        let g = f.substitute(&c, &images);
        let direct = images[0].mul(&images[1]).sub(&images[1].mul(&images[0]));
        assert_eq!(g, direct);
    }

    #[test]
    #[should_panic(expected = "context mismatch")]
    fn mixing_contexts_panics() {
        let a = ctx2();
        let b = ctx_xyz_weighted();
        let _ = FreePoly::generator(&a, 0).add(&FreePoly::generator(&b, 0));
    }

    #[test]
    fn find_factor() {
        let u = w(&[0, 1, 1, 0]);
        assert_eq!(u.find(&w(&[1, 1])), Some(1));
        assert_eq!(u.find(&w(&[1, 0])), Some(2));
        assert_eq!(u.find(&w(&[0, 0])), None);
        assert!(u.contains_factor(&w(&[0, 1])));
    }

    #[test]
    fn permuted_order() {
        let c = ctx_xyz_weighted();
        let p = c.order.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.names(), &["z".to_string(), "x".to_string(), "y".to_string()]);
        assert_eq!(p.weight(0), 2);
        assert!(c.order.permuted(&[0, 0, 1]).is_err());
        assert!(c.order.permuted(&[0, 1]).is_err());
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec(0u32..2, 0..5).prop_map(Word::from_letters)
    }

    fn arb_poly() -> impl Strategy<Value = FreePoly> {
        proptest::collection::vec((arb_word(), -3i64..=3), 0..5).prop_map(|terms| {
            let c = ctx2();
            let f = c.field;
            FreePoly::from_terms(&c, terms.into_iter().map(|(w, n)| (w, f.integer(n))))
        })
    }

    proptest! {
        #[test]
        fn deglex_is_total_and_multiplicative(a in arb_word(), b in arb_word(), u in arb_word(), v in arb_word()) {
            let c = ctx2();
            let ord = &c.order;
            let cmp = ord.compare_deglex(&a, &b);
            prop_assert_eq!(ord.compare_deglex(&b, &a), cmp.reverse());
            if cmp != Ordering::Equal {
                let ua_v = u.concat(&a).concat(&v);
                let ub_v = u.concat(&b).concat(&v);
                prop_assert_eq!(ord.compare_deglex(&ua_v, &ub_v), cmp);
            } else {
                prop_assert_eq!(&a, &b);
            }
        }

        #[test]
        fn ring_axioms_sampled(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(f.add(&g), g.add(&f));
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert_eq!(f.add(&g).mul(&h), f.mul(&h).add(&g.mul(&h)));
            prop_assert!(f.sub(&f).is_zero());
        }

        #[test]
        fn product_components(f in arb_poly(), g in arb_poly(), k in 0u32..6) {
            // Degree-k part of f*g is the sum over splits of component products.
            let prod_k = f.mul(&g).component(k);
            let c = f.ctx().clone();
            let mut acc = FreePoly::zero(&c);
            for i in 0..=k {
                acc = acc.add(&f.component(i).mul(&g.component(k - i)));
            }
            prop_assert_eq!(prod_k, acc);
        }
    }
}
