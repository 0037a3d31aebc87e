//! Finitely presented graded algebras: ideal degree slices, Hilbert
//! function, quadratic duals, and a canonical subspace calculus on the
//! word basis of each graded piece of the free algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use crate::freealg::{Context, FreePoly, Word};
use crate::linalg::{Echelon, ReducedBasis, SparseVec};
use crate::{Error, Result};

/// The degree-k piece of the free algebra with its word basis, stored in
/// descending deglex order so column indices increase as words decrease.
pub struct Ambient {
    ctx: Arc<Context>,
    degree: u32,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl Ambient {
    pub fn new(ctx: &Arc<Context>, degree: u32) -> Arc<Ambient> {
        let words = ctx.order.words_of_degree(degree);
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Arc::new(Ambient { ctx: ctx.clone(), degree, words, index })
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Coordinates of a homogeneous polynomial of this degree. Terms are
    /// stored descending, so the sparse vector comes out sorted.
    pub fn poly_to_vec(&self, f: &FreePoly) -> SparseVec {
        assert!(
            **f.ctx() == *self.ctx,
            "polynomial context does not match the ambient space"
        );
        let v: SparseVec = f
            .terms()
            .iter()
            .map(|(w, c)| {
                let i = self
                    .index
                    .get(w)
                    .copied()
                    .unwrap_or_else(|| panic!("term of degree != {} in ambient", self.degree));
                (i, c.clone())
            })
            .collect();
        debug_assert!(v.windows(2).all(|p| p[0].0 < p[1].0));
        v
    }

    pub fn vec_to_poly(&self, v: &SparseVec) -> FreePoly {
        FreePoly::from_terms(
            &self.ctx,
            v.iter().map(|(i, c)| (self.words[*i].clone(), c.clone())),
        )
    }
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && *self.ctx == *other.ctx
    }
}
impl Eq for Ambient {}

fn same_ambient(a: &Arc<Ambient>, b: &Arc<Ambient>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A subspace of one graded piece, held as canonical reduced row-echelon
/// rows. Equality of subspaces is equality of these matrices.
#[derive(Clone)]
pub struct Subspace {
    ambient: Arc<Ambient>,
    rows: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: &Arc<Ambient>) -> Subspace {
        Subspace { ambient: ambient.clone(), rows: Vec::new() }
    }

    pub fn from_vectors(ambient: &Arc<Ambient>, vecs: impl IntoIterator<Item = SparseVec>) -> Subspace {
        let rb = ReducedBasis::from_vectors(ambient.ctx().field, ambient.dim(), vecs);
        Subspace { ambient: ambient.clone(), rows: rb.rref_rows() }
    }

    pub fn from_polys<'a>(
        ambient: &Arc<Ambient>,
        polys: impl IntoIterator<Item = &'a FreePoly>,
    ) -> Subspace {
        let vecs: Vec<SparseVec> = polys.into_iter().map(|f| ambient.poly_to_vec(f)).collect();
        Subspace::from_vectors(ambient, vecs)
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn basis_polys(&self) -> Vec<FreePoly> {
        self.rows.iter().map(|r| self.ambient.vec_to_poly(r)).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert!(same_ambient(&self.ambient, &other.ambient), "ambient mismatch");
        Subspace::from_vectors(
            &self.ambient,
            self.rows.iter().chain(&other.rows).cloned().collect::<Vec<_>>(),
        )
    }

    /// Zassenhaus: stack [u|u] for our rows and [w|0] for the other side;
    /// echelon rows supported entirely in the right block span the
    /// intersection.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert!(same_ambient(&self.ambient, &other.ambient), "ambient mismatch");
        let m = self.ambient.dim();
        let field = self.ambient.ctx().field;
        let mut e = Echelon::new(field, 2 * m);
        for u in &self.rows {
            let mut v: SparseVec = Vec::with_capacity(2 * u.len());
            v.extend(u.iter().cloned());
            v.extend(u.iter().map(|(c, x)| (c + m, x.clone())));
            e.insert(v);
        }
        for w in &other.rows {
            e.insert(w.clone());
        }
        let mut vecs: Vec<SparseVec> = Vec::new();
        for (pivot, row) in e.rows_with_pivots() {
            if pivot >= m {
                vecs.push(row.iter().map(|(c, x)| (c - m, x.clone())).collect());
            }
        }
        Subspace::from_vectors(&self.ambient, vecs)
    }

    pub fn contains_vec(&self, v: &SparseVec) -> bool {
        let field = self.ambient.ctx().field;
        let mut e = Echelon::new(field, self.ambient.dim());
        for r in &self.rows {
            e.insert(r.clone());
        }
        e.contains(v.clone())
    }

    pub fn contains_poly(&self, f: &FreePoly) -> bool {
        self.contains_vec(&self.ambient.poly_to_vec(f))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        assert!(same_ambient(&self.ambient, &other.ambient), "ambient mismatch");
        let field = self.ambient.ctx().field;
        let mut e = Echelon::new(field, self.ambient.dim());
        for r in &other.rows {
            e.insert(r.clone());
        }
        self.rows.iter().all(|r| e.contains(r.clone()))
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        same_ambient(&self.ambient, &other.ambient) && self.rows == other.rows
    }
}
impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for row in &self.rows {
            row.len().hash(state);
            for (c, x) in row {
                c.hash(state);
                x.hash(state);
            }
        }
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(deg {}, dim {})", self.ambient.degree(), self.rows.len())
    }
}

/// Outcome of structural validation: errors invalidate the object,
/// warnings flag redundancy.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn error(&mut self, msg: impl Into<String>) {
        self.errors.push(msg.into());
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.errors.extend(other.errors);
        self.warnings.extend(other.warnings);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.errors {
            writeln!(f, "error: {e}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        if self.errors.is_empty() {
            writeln!(f, "valid")?;
        } else {
            writeln!(f, "invalid")?;
        }
        Ok(())
    }
}

/// Degree-k data of the quotient algebra: the ideal slice in reduced form
/// and with it the classes of all words in the surviving (normal) basis.
pub struct QuotientSlice {
    ambient: Arc<Ambient>,
    basis: ReducedBasis,
}

impl QuotientSlice {
    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn ideal_rank(&self) -> usize {
        self.basis.rank()
    }

    /// Dimension of the quotient in this degree.
    pub fn dim(&self) -> usize {
        self.ambient.dim() - self.basis.rank()
    }

    /// Words whose classes form the quotient basis, in descending deglex.
    pub fn normal_words(&self) -> Vec<Word> {
        self.basis
            .normal_columns()
            .iter()
            .map(|&c| self.ambient.word(c).clone())
            .collect()
    }

    /// Class of a degree-k word in normal-basis coordinates.
    pub fn class_of_word(&self, w: &Word) -> SparseVec {
        let col = self
            .ambient
            .index_of(w)
            .expect("word does not live in this degree");
        self.basis.class_of_column(col)
    }

    /// Class of a homogeneous degree-k polynomial.
    pub fn class_of_poly(&self, f: &FreePoly) -> SparseVec {
        self.basis.reduce_to_classes(&self.ambient.poly_to_vec(f))
    }

    pub fn ideal_subspace(&self) -> Subspace {
        Subspace {
            ambient: self.ambient.clone(),
            rows: self.basis.rref_rows(),
        }
    }
}

#[derive(Default)]
struct PresCache {
    ambients: BTreeMap<u32, Arc<Ambient>>,
    ideal_dims: BTreeMap<u32, usize>,
    slices: BTreeMap<u32, Arc<QuotientSlice>>,
}

/// A finitely presented algebra: the free algebra on the context's
/// alphabet modulo the two-sided ideal of the relations.
pub struct Presentation {
    ctx: Arc<Context>,
    relations: Vec<FreePoly>,
    cache: Arc<Mutex<PresCache>>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            ctx: self.ctx.clone(),
            relations: self.relations.clone(),
            cache: self.cache.clone(),
        }
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.relations == other.relations
    }
}
impl Eq for Presentation {}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Presentation({} gens, {} relations)",
            self.ctx.order.len(),
            self.relations.len()
        )
    }
}

impl Presentation {
    pub fn new(ctx: Arc<Context>, relations: Vec<FreePoly>) -> Presentation {
        for r in &relations {
            assert!(**r.ctx() == *ctx, "relation context mismatch");
        }
        Presentation { ctx, relations, cache: Arc::new(Mutex::new(PresCache::default())) }
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn relations(&self) -> &[FreePoly] {
        &self.relations
    }

    /// Structural validation: nonzero homogeneous relations of degree >= 2,
    /// with a warning for linearly dependent relation sets.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        for (i, r) in self.relations.iter().enumerate() {
            if r.is_zero() {
                rep.error(format!("relation {} is zero", i + 1));
                continue;
            }
            match r.homogeneous_degree() {
                None => rep.error(format!("relation {} is not homogeneous: {r}", i + 1)),
                Some(d) if d < 2 => {
                    rep.error(format!("relation {} has degree {d}, expected at least 2: {r}", i + 1))
                }
                Some(_) => {}
            }
        }
        // Dependence check per degree over the homogeneous relations.
        let mut by_degree: BTreeMap<u32, Vec<&FreePoly>> = BTreeMap::new();
        for r in &self.relations {
            if let Some(d) = r.homogeneous_degree() {
                by_degree.entry(d).or_default().push(r);
            }
        }
        for (d, rels) in by_degree {
            let ambient = self.ambient(d);
            let mut e = Echelon::new(self.ctx.field, ambient.dim());
            for r in rels {
                if !e.insert(ambient.poly_to_vec(r)) {
                    rep.warn(format!("relation {r} is linearly dependent on earlier degree-{d} relations"));
                }
            }
        }
        rep
    }

    pub fn ambient(&self, k: u32) -> Arc<Ambient> {
        let mut cache = self.cache.lock().unwrap();
        cache
            .ambients
            .entry(k)
            .or_insert_with(|| Ambient::new(&self.ctx, k))
            .clone()
    }

    fn for_each_spanning_vector(&self, k: u32, ambient: &Ambient, mut f: impl FnMut(SparseVec)) {
        for r in &self.relations {
            if r.is_zero() {
                continue;
            }
            // Homogeneous relations contribute themselves; for malformed
            // inhomogeneous input each homogeneous part spans separately,
            // which keeps the computation defined (validate flags it).
            let degs: Vec<u32> = {
                let mut ds: Vec<u32> = r
                    .terms()
                    .iter()
                    .map(|(w, _)| self.ctx.order.word_degree(w))
                    .collect();
                ds.sort_unstable();
                ds.dedup();
                ds
            };
            for d in degs {
                if d > k {
                    continue;
                }
                let comp = r.component(d);
                for a in 0..=(k - d) {
                    let b = k - d - a;
                    for u in self.ctx.order.words_of_degree(a) {
                        for v in self.ctx.order.words_of_degree(b) {
                            f(ambient.poly_to_vec(&comp.sandwich(&u, &v)));
                        }
                    }
                }
            }
        }
    }

    /// dim of the degree-k slice of the relation ideal.
    pub fn ideal_dim(&self, k: u32) -> usize {
        if let Some(&d) = self.cache.lock().unwrap().ideal_dims.get(&k) {
            return d;
        }
        let ambient = self.ambient(k);
        let mut e = Echelon::new(self.ctx.field, ambient.dim());
        self.for_each_spanning_vector(k, &ambient, |v| {
            e.insert(v);
        });
        let d = e.rank();
        self.cache.lock().unwrap().ideal_dims.insert(k, d);
        d
    }

    /// Full reduced data for degree k: ideal slice plus quotient classes.
    pub fn slice(&self, k: u32) -> Arc<QuotientSlice> {
        if let Some(s) = self.cache.lock().unwrap().slices.get(&k) {
            return s.clone();
        }
        let ambient = self.ambient(k);
        let mut e = Echelon::new(self.ctx.field, ambient.dim());
        self.for_each_spanning_vector(k, &ambient, |v| {
            e.insert(v);
        });
        let basis = ReducedBasis::from_echelon(&e);
        let slice = Arc::new(QuotientSlice { ambient, basis });
        let mut cache = self.cache.lock().unwrap();
        cache.ideal_dims.insert(k, slice.ideal_rank());
        cache.slices.insert(k, slice.clone());
        slice
    }

    /// The degree-k slice of the relation ideal as a canonical subspace.
    pub fn ideal_component(&self, k: u32) -> Subspace {
        self.slice(k).ideal_subspace()
    }

    /// Hilbert function h(0..=to). In the standard grading a zero value
    /// forces all later values to zero (the algebra is generated in
    /// degree 1), which skips the large eliminations entirely.
    pub fn hilbert(&self, to: u32) -> Vec<usize> {
        let standard = self.ctx.order.is_standard_graded();
        let mut out = Vec::with_capacity(to as usize + 1);
        let mut dead = false;
        for k in 0..=to {
            if dead {
                out.push(0);
                continue;
            }
            let h = self.ambient(k).dim() - self.ideal_dim(k);
            if standard && h == 0 {
                dead = true;
            }
            out.push(h);
        }
        out
    }

    /// Ok when every generator has weight 1 and every relation is
    /// homogeneous of degree exactly 2.
    pub fn homogeneous_quadratic(&self) -> Result<()> {
        for i in 0..self.ctx.order.len() {
            if self.ctx.order.weight(i) != 1 {
                return Err(Error::NotQuadratic(format!(
                    "generator {} has weight {}",
                    self.ctx.order.name(i),
                    self.ctx.order.weight(i)
                )));
            }
        }
        for r in &self.relations {
            if r.is_zero() {
                return Err(Error::NotQuadratic("a relation is zero".into()));
            }
            match r.homogeneous_degree() {
                Some(2) => {}
                Some(d) => {
                    return Err(Error::NotQuadratic(format!(
                        "relation {r} has degree {d}"
                    )))
                }
                None => {
                    return Err(Error::NotQuadratic(format!(
                        "relation {r} is not homogeneous"
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn is_homogeneous_quadratic(&self) -> bool {
        self.homogeneous_quadratic().is_ok()
    }

    /// Span of the homogeneous degree-k relations inside L_k.
    pub fn relation_subspace(&self, k: u32) -> Subspace {
        let ambient = self.ambient(k);
        let rels: Vec<&FreePoly> = self
            .relations
            .iter()
            .filter(|r| r.homogeneous_degree() == Some(k))
            .collect();
        Subspace::from_polys(&ambient, rels)
    }

    /// Quadratic dual: generators keep their names; relations span the
    /// orthogonal complement of the relation space under the word-basis
    /// pairing on L_2.
    pub fn quadratic_dual(&self) -> Result<Presentation> {
        self.homogeneous_quadratic()?;
        let ambient = self.ambient(2);
        let vecs: Vec<SparseVec> = self
            .relations
            .iter()
            .map(|r| ambient.poly_to_vec(r))
            .collect();
        let rb = ReducedBasis::from_vectors(self.ctx.field, ambient.dim(), vecs);
        let dual_rels: Vec<FreePoly> = rb
            .kernel_basis()
            .into_iter()
            .map(|v| ambient.vec_to_poly(&v))
            .collect();
        Ok(Presentation::new(self.ctx.clone(), dual_rels))
    }

    /// Same algebra with generators re-ordered: position i of the new order
    /// is generator perm[i] of the old one.
    pub fn reorder(&self, perm: &[usize]) -> Result<Presentation> {
        let new_order = self.ctx.order.permuted(perm)?;
        let mut inv = vec![0u32; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i as u32;
        }
        let new_ctx = Context::arc(self.ctx.field, new_order);
        let relations = self
            .relations
            .iter()
            .map(|r| r.map_letters(&new_ctx, |l| inv[l as usize]))
            .collect();
        Ok(Presentation::new(new_ctx, relations))
    }

    pub fn reorder_by_names(&self, names: &[String]) -> Result<Presentation> {
        let perm: Vec<usize> = names
            .iter()
            .map(|n| {
                self.ctx
                    .order
                    .index_of(n)
                    .ok_or_else(|| Error::Order(format!("unknown generator '{n}'")))
            })
            .collect::<Result<_>>()?;
        self.reorder(&perm)
    }
}
