//! Sparse exact linear algebra over a `FieldSpec`.
//!
//! Vectors are sorted (column, coefficient) lists. The workhorse is an
//! incremental echelon form; `ReducedBasis` finishes it into a canonical
//! reduced form that doubles as a quotient-space calculator (classes of
//! basis columns in terms of non-pivot columns). Large prime-field rank
//! computations switch to a dense elimination.

use std::collections::HashMap;

use crate::scalar::{FieldSpec, Scalar};

/// Sorted by column, strictly ascending, nonzero coefficients only.
pub type SparseVec = Vec<(usize, Scalar)>;

/// a + s*b for sorted sparse vectors.
pub fn axpy(a: &SparseVec, s: &Scalar, b: &SparseVec) -> SparseVec {
    if s.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0, s.mul(&b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = a[i].1.add(&s.mul(&b[j].1));
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (col, c) in &b[j..] {
        out.push((*col, s.mul(c)));
    }
    out
}

pub fn scale_vec(v: &SparseVec, s: &Scalar) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(c, x)| (*c, s.mul(x))).collect()
}

/// Incremental row echelon form. Stored rows are monic at their pivot
/// (their smallest column) and mutually reduced against existing pivots at
/// insertion time; columns are eliminated greedily left to right.
pub struct Echelon {
    field: FieldSpec,
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: FieldSpec, ncols: usize) -> Self {
        Echelon { field, ncols, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every entry of `v` sitting in a pivot column.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut i = 0;
        while i < v.len() {
            let col = v[i].0;
            debug_assert!(col < self.ncols, "column out of range");
            match self.pivot_row.get(&col) {
                Some(&r) => {
                    let factor = v[i].1.neg();
                    v = axpy(&v, &factor, &self.rows[r]);
                    // The pivot entry cancelled; entries before position i
                    // are untouched because the row starts at `col`.
                }
                None => i += 1,
            }
        }
        v
    }

    /// Reduce-then-store. Returns false when `v` was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.inv();
        let monic = scale_vec(&r, &inv);
        self.pivot_row.insert(monic[0].0, self.rows.len());
        self.rows.push(monic);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivot_row.keys().copied().collect();
        cols.sort_unstable();
        cols
    }

    /// Stored rows with their pivot columns (a row's pivot is its first entry).
    pub fn rows_with_pivots(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|r| (r[0].0, r))
    }
}

/// Canonical reduced form of an `Echelon`, plus the induced quotient map.
///
/// For every pivot column c the table stores class(c): the image of the unit
/// vector e_c in the quotient by the row space, written in coordinates of the
/// non-pivot ("normal") columns. Canonical RREF rows are e_c - class(c).
pub struct ReducedBasis {
    field: FieldSpec,
    ncols: usize,
    pivots: Vec<usize>,
    normal: Vec<usize>,
    normal_idx: HashMap<usize, usize>,
    classes: HashMap<usize, SparseVec>,
}

impl ReducedBasis {
    pub fn from_echelon(e: &Echelon) -> ReducedBasis {
        let pivots = e.pivot_columns();
        let pivot_set: HashMap<usize, ()> = pivots.iter().map(|&c| (c, ())).collect();
        let normal: Vec<usize> = (0..e.ncols).filter(|c| !pivot_set.contains_key(c)).collect();
        let normal_idx: HashMap<usize, usize> =
            normal.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut classes: HashMap<usize, SparseVec> = HashMap::with_capacity(pivots.len());
        // Tail columns of any row are strictly right of its pivot, so a
        // descending sweep has every needed class ready when it is used.
        for &c in pivots.iter().rev() {
            let row = &e.rows[e.pivot_row[&c]];
            let mut acc: SparseVec = Vec::new();
            for (col, coef) in &row[1..] {
                match normal_idx.get(col) {
                    Some(&ni) => acc = axpy(&acc, &coef.neg(), &vec![(ni, e.field.one())]),
                    None => acc = axpy(&acc, &coef.neg(), &classes[col]),
                }
            }
            classes.insert(c, acc);
        }
        ReducedBasis { field: e.field, ncols: e.ncols, pivots, normal, normal_idx, classes }
    }

    pub fn from_vectors(
        field: FieldSpec,
        ncols: usize,
        vecs: impl IntoIterator<Item = SparseVec>,
    ) -> ReducedBasis {
        let mut e = Echelon::new(field, ncols);
        for v in vecs {
            e.insert(v);
        }
        ReducedBasis::from_echelon(&e)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Non-pivot columns, ascending.
    pub fn normal_columns(&self) -> &[usize] {
        &self.normal
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.classes.contains_key(&col)
    }

    pub fn normal_index(&self, col: usize) -> Option<usize> {
        self.normal_idx.get(&col).copied()
    }

    /// Quotient image of e_col in normal coordinates.
    pub fn class_of_column(&self, col: usize) -> SparseVec {
        assert!(col < self.ncols, "column out of range");
        match self.classes.get(&col) {
            Some(v) => v.clone(),
            None => vec![(self.normal_idx[&col], self.field.one())],
        }
    }

    /// Quotient image of an ambient vector in normal coordinates.
    pub fn reduce_to_classes(&self, v: &SparseVec) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (col, coef) in v {
            match self.classes.get(col) {
                Some(class) => acc = axpy(&acc, coef, class),
                None => acc = axpy(&acc, coef, &vec![(self.normal_idx[col], self.field.one())]),
            }
        }
        acc
    }

    /// Canonical representative of v modulo the row space: every pivot
    /// column eliminated.
    pub fn reduce_canonical(&self, v: &SparseVec) -> SparseVec {
        self.to_ambient(&self.reduce_to_classes(v))
    }

    fn to_ambient(&self, classes_vec: &SparseVec) -> SparseVec {
        classes_vec
            .iter()
            .map(|(ni, c)| (self.normal[*ni], c.clone()))
            .collect()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce_to_classes(v).is_empty()
    }

    /// Canonical RREF rows sorted by pivot column: row(c) = e_c - class(c).
    pub fn rref_rows(&self) -> Vec<SparseVec> {
        self.pivots
            .iter()
            .map(|&c| {
                let mut row = vec![(c, self.field.one())];
                for (ni, coef) in &self.classes[&c] {
                    row.push((self.normal[*ni], coef.neg()));
                }
                row.sort_by_key(|(col, _)| *col);
                row
            })
            .collect()
    }

    /// Basis of the nullspace of the matrix whose rows span this space: one
    /// vector per normal column.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut out: Vec<SparseVec> = self
            .normal
            .iter()
            .map(|&f| vec![(f, self.field.one())])
            .collect();
        for &c in &self.pivots {
            for (ni, coef) in &self.classes[&c] {
                out[*ni].push((c, coef.clone()));
            }
        }
        for v in &mut out {
            v.sort_by_key(|(col, _)| *col);
        }
        out
    }
}

/// Rank of a list of vectors. Prime-field inputs of moderate size take a
/// dense elimination; everything else goes through the sparse echelon.
pub fn rank_of_vectors(field: FieldSpec, ncols: usize, vecs: &[SparseVec]) -> usize {
    const DENSE_LIMIT: usize = 1 << 26;
    if let FieldSpec::PrimeField(p) = field {
        if ncols > 0 && vecs.len() > 0 && vecs.len().saturating_mul(ncols) <= DENSE_LIMIT {
            return rank_dense_fp(p, ncols, vecs);
        }
    }
    let mut e = Echelon::new(field, ncols);
    for v in vecs {
        e.insert(v.clone());
    }
    e.rank()
}

/// Dense row elimination over GF(p). Residues stay below 2^31, so a u64
/// multiply-accumulate never overflows.
pub fn rank_dense_fp(p: u64, ncols: usize, vecs: &[SparseVec]) -> usize {
    let mut rows: Vec<Vec<u32>> = vecs
        .iter()
        .map(|v| {
            let mut row = vec![0u32; ncols];
            for (col, c) in v {
                match c {
                    Scalar::Mod { value, modulus } => {
                        assert_eq!(*modulus, p, "modulus mismatch");
                        row[*col] = *value as u32;
                    }
                    Scalar::Rational(_) => panic!("rational scalar in dense GF(p) elimination"),
                }
            }
            row
        })
        .collect();
    let mut rank = 0usize;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = {
            let (mut r0, mut r1) = (rows[rank][col] as i128, p as i128);
            let (mut s0, mut s1) = (1i128, 0i128);
            while r1 != 0 {
                let q = r0 / r1;
                (r0, r1) = (r1, r0 - q * r1);
                (s0, s1) = (s1, s0 - q * s1);
            }
            s0.rem_euclid(p as i128) as u64
        };
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            let v = row[col] as u64;
            if v == 0 {
                continue;
            }
            // factor * pivot_value == v (mod p), so subtracting factor times
            // the pivot row clears this column.
            let factor = v * inv % p;
            let mul = p - factor;
            for j in col..ncols {
                let pv = prow[j] as u64;
                if pv != 0 {
                    row[j] = ((row[j] as u64 + mul * pv) % p) as u32;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn sv(field: FieldSpec, entries: &[(usize, i64)]) -> SparseVec {
        let mut v: SparseVec = entries
            .iter()
            .filter(|(_, x)| *x != 0)
            .map(|(c, x)| (*c, field.integer(*x)))
            .collect();
        v.sort_by_key(|(c, _)| *c);
        v
    }

    #[test]
    fn rank_and_membership() {
        let f = q();
        let mut e = Echelon::new(f, 3);
        assert!(e.insert(sv(f, &[(0, 1), (1, 2)])));
        assert!(e.insert(sv(f, &[(1, 1), (2, 1)])));
        // Dependent on the first two.
        assert!(!e.insert(sv(f, &[(0, 2), (1, 5), (2, 1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(sv(f, &[(0, 1), (1, 2)])));
        assert!(!e.contains(sv(f, &[(2, 1)])));
    }

    #[test]
    fn canonical_rows_ignore_input_order() {
        let f = q();
        let vecs = vec![
            sv(f, &[(0, 1), (1, 2), (3, 1)]),
            sv(f, &[(1, 1), (2, 1), (3, 5)]),
            sv(f, &[(0, 3), (2, -1), (3, 7)]),
        ];
        let a = ReducedBasis::from_vectors(f, 4, vecs.clone());
        let b = ReducedBasis::from_vectors(f, 4, vecs.into_iter().rev());
        assert_eq!(a.rref_rows(), b.rref_rows());
    }

    #[test]
    fn classes_are_quotient_images() {
        let f = q();
        let vecs = vec![sv(f, &[(0, 1), (1, 1)]), sv(f, &[(1, 1), (2, 1), (3, 1)])];
        let rb = ReducedBasis::from_vectors(f, 4, vecs.clone());
        assert_eq!(rb.rank(), 2);
        // e_pivot - class(pivot) must lie in the row space.
        let mut e = Echelon::new(f, 4);
        for v in &vecs {
            e.insert(v.clone());
        }
        for row in rb.rref_rows() {
            assert!(e.contains(row));
        }
        // Reduction of a spanning vector is zero.
        assert!(rb.contains(&sv(f, &[(0, 2), (1, 3), (2, 1), (3, 1)])));
        assert!(!rb.contains(&sv(f, &[(0, 1)])));
    }

    #[test]
    fn kernel_annihilates_rows() {
        let f = q();
        let vecs = vec![
            sv(f, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
            sv(f, &[(1, 1), (3, 2)]),
        ];
        let rb = ReducedBasis::from_vectors(f, 4, vecs.clone());
        let kernel = rb.kernel_basis();
        assert_eq!(kernel.len(), 2);
        for k in &kernel {
            for row in &vecs {
                // Dot product via dense expansion.
                let mut dot = f.zero();
                for (c, x) in row {
                    if let Ok(pos) = k.binary_search_by_key(c, |(kc, _)| *kc) {
                        dot = dot.add(&x.mul(&k[pos].1));
                    }
                }
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn dense_rank_matches_sparse() {
        let f = FieldSpec::prime_field(7).unwrap();
        let vecs = vec![
            sv(f, &[(0, 1), (1, 3), (2, 5)]),
            sv(f, &[(0, 2), (1, 6), (2, 10)]),
            sv(f, &[(1, 1), (2, 1)]),
            sv(f, &[(0, 1), (2, 4)]),
        ];
        let dense = rank_dense_fp(7, 3, &vecs);
        let mut e = Echelon::new(f, 3);
        for v in &vecs {
            e.insert(v.clone());
        }
        assert_eq!(dense, e.rank());
        assert_eq!(dense, 3);
    }

    proptest! {
        #[test]
        fn dense_and_sparse_rank_agree(rows in proptest::collection::vec(
            proptest::collection::vec(0i64..7, 5), 0..8)) {
            let f = FieldSpec::prime_field(7).unwrap();
            let vecs: Vec<SparseVec> = rows
                .iter()
                .map(|r| sv(f, &r.iter().enumerate().map(|(i, &x)| (i, x)).collect::<Vec<_>>()))
                .collect();
            let mut e = Echelon::new(f, 5);
            for v in &vecs {
                e.insert(v.clone());
            }
            prop_assert_eq!(rank_dense_fp(7, 5, &vecs), e.rank());
        }

        #[test]
        fn rref_is_canonical_under_row_mixing(rows in proptest::collection::vec(
            proptest::collection::vec(-4i64..5, 4), 1..5), mix in 0usize..4) {
            let f = q();
            let vecs: Vec<SparseVec> = rows
                .iter()
                .map(|r| sv(f, &r.iter().enumerate().map(|(i, &x)| (i, x)).collect::<Vec<_>>()))
                .collect();
            // Add one row to another: the span is unchanged.
            let mut mixed = vecs.clone();
            if mixed.len() >= 2 {
                let j = mix % mixed.len();
                let k = (mix + 1) % mixed.len();
                if j != k {
                    mixed[j] = axpy(&mixed[j], &f.one(), &mixed[k].clone());
                }
            }
            let a = ReducedBasis::from_vectors(f, 4, vecs);
            let b = ReducedBasis::from_vectors(f, 4, mixed);
            prop_assert_eq!(a.rref_rows(), b.rref_rows());
        }
    }
}
