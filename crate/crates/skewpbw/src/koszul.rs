//! Bounded-degree Koszulness probes.
//!
//! Three independent checks, each sound as a refutation at its bound:
//! vanishing of the off-diagonal bar-complex Ext dimensions, the numerical
//! duality between the Hilbert functions of an algebra and its quadratic
//! dual, and distributivity of the degree-k relation-subspace lattices.
//! A Pass is bounded evidence only; the one exact certificate comes from
//! the PBW shortcut, since a quadratic algebra with a PBW basis is Koszul.

use std::collections::HashMap;
use std::fmt;

use crate::freealg::{FreePoly, Word};
use crate::linalg::{rank_of_vectors, SparseVec};
use crate::presentation::{Presentation, Subspace};
use crate::rewriting::{pbw_check, PbwStatus, PbwVerdict, RewriteSystem};
use crate::scalar::{FieldSpec, Scalar};
use crate::{Error, Result};

/// Degree bounds for one report run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct KoszulBounds {
    pub s_max: usize,
    pub p_max: u32,
    /// Degree up to which the Hilbert-duality convolution is checked.
    pub duality_to: u32,
    pub k_max: u32,
    /// Largest number of distinct subspaces the lattice closure may reach.
    pub cap: usize,
}

impl Default for KoszulBounds {
    fn default() -> Self {
        KoszulBounds { s_max: 5, p_max: 5, duality_to: 8, k_max: 4, cap: 500 }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProbeStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for ProbeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeStatus::Pass => write!(f, "Pass"),
            ProbeStatus::Fail => write!(f, "Fail"),
            ProbeStatus::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

/// Outcome of one probe. A Fail always carries a witness; an Inconclusive
/// always carries a reason.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub status: ProbeStatus,
    pub witness: Option<String>,
    pub reason: Option<String>,
}

impl Verdict {
    pub fn pass() -> Verdict {
        Verdict { status: ProbeStatus::Pass, witness: None, reason: None }
    }

    pub fn fail(witness: impl Into<String>) -> Verdict {
        Verdict { status: ProbeStatus::Fail, witness: Some(witness.into()), reason: None }
    }

    pub fn inconclusive(reason: impl Into<String>) -> Verdict {
        Verdict { status: ProbeStatus::Inconclusive, witness: None, reason: Some(reason.into()) }
    }

    pub fn is_pass(&self) -> bool {
        self.status == ProbeStatus::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == ProbeStatus::Fail
    }

    /// Witness or reason for report lines; `-` when there is neither.
    pub fn detail(&self) -> &str {
        self.witness
            .as_deref()
            .or(self.reason.as_deref())
            .unwrap_or("-")
    }
}

/// Degree-wise multiplication of a quotient algebra on its normal-word
/// basis. Two interchangeable routes: normal forms of a rewrite system
/// completed (hence confluent) up to the needed degree, or linear algebra
/// against the cached ideal slices. Both order each degree's basis in
/// descending deglex, so product tables agree entry for entry.
pub enum MulOracle {
    Rewriting(RewriteSystem),
    Quotient(Presentation),
}

impl MulOracle {
    /// The rewriting route when completion certifies confluence to `deg`,
    /// otherwise the quotient route.
    pub fn preferred(p: &Presentation, deg: u32) -> MulOracle {
        let rs = RewriteSystem::orient(p).complete(deg);
        if rs.confluent_to() >= deg {
            MulOracle::Rewriting(rs)
        } else {
            MulOracle::Quotient(p.clone())
        }
    }

    pub fn quotient(p: &Presentation) -> MulOracle {
        MulOracle::Quotient(p.clone())
    }

    pub fn route(&self) -> &'static str {
        match self {
            MulOracle::Rewriting(_) => "rewriting",
            MulOracle::Quotient(_) => "quotient",
        }
    }

    fn field(&self) -> FieldSpec {
        match self {
            MulOracle::Rewriting(rs) => rs.ctx().field,
            MulOracle::Quotient(p) => p.ctx().field,
        }
    }

    /// Basis of the degree-d component, descending deglex.
    pub fn basis_words(&self, d: u32) -> Vec<Word> {
        match self {
            MulOracle::Rewriting(rs) => rs.normal_words(d),
            MulOracle::Quotient(p) => p.slice(d).normal_words(),
        }
    }

    /// Class of the product of two basis words, as coordinates in the
    /// degree-(|u|+|v|) basis. `target` indexes that basis by word.
    fn product(&self, u: &Word, v: &Word, target: &HashMap<Word, usize>) -> SparseVec {
        match self {
            MulOracle::Rewriting(rs) => {
                let ctx = rs.ctx();
                let m = FreePoly::monomial(ctx, u.concat(v), ctx.field.one());
                let nf = rs.normal_form(&m);
                let mut out: SparseVec = nf
                    .terms()
                    .iter()
                    .map(|(w, c)| {
                        (*target.get(w).expect("normal form landed outside the basis"), c.clone())
                    })
                    .collect();
                out.sort_by_key(|(i, _)| *i);
                out
            }
            MulOracle::Quotient(p) => {
                let w = u.concat(v);
                p.slice(p.ctx().order.word_degree(&w)).class_of_word(&w)
            }
        }
    }
}

/// Bar-complex dimension table: `dims[s][p]` = dim Ext^{s,p}(K, K) for
/// s <= s_max, p <= p_max.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtTable {
    pub s_max: usize,
    pub p_max: u32,
    pub dims: Vec<Vec<usize>>,
}

impl ExtTable {
    pub fn dim(&self, s: usize, p: u32) -> usize {
        self.dims[s][p as usize]
    }
}

impl fmt::Display for ExtTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, row) in self.dims.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|d| d.to_string()).collect();
            writeln!(f, "s={s}: {}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Compositions of p into s parts, each at least 1, first part ascending.
fn compositions_of(p: u32, s: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(s);
    fn rec(p: u32, s: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if s == 1 {
            if p >= 1 {
                prefix.push(p);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for first in 1..=p.saturating_sub(s as u32 - 1) {
            prefix.push(first);
            rec(p - first, s - 1, prefix, out);
            prefix.pop();
        }
    }
    if s >= 1 {
        rec(p, s, &mut prefix, &mut out);
    }
    out
}

/// The normalized bar complex of a connected graded algebra, truncated at
/// internal degree p_max: strand s of degree p is the direct sum of
/// A_{d1} x ... x A_{ds} over compositions d1+...+ds = p with di >= 1.
struct BarComplex {
    field: FieldSpec,
    /// adim[d] = dim A_d for d <= p_max; adim[0] = 1 (connected).
    adim: Vec<usize>,
    /// Product tables mu[(d1,d2)][i*adim[d2]+j] = class of basis_i * basis_j.
    mu: HashMap<(u32, u32), Vec<SparseVec>>,
}

struct Strand {
    comps: Vec<Vec<u32>>,
    offsets: Vec<usize>,
    dim: usize,
}

impl BarComplex {
    fn new(oracle: &MulOracle, p_max: u32) -> BarComplex {
        let field = oracle.field();
        let mut basis: Vec<Vec<Word>> = vec![Vec::new()];
        let mut index: Vec<HashMap<Word, usize>> = vec![HashMap::new()];
        let mut adim = vec![1usize];
        for d in 1..=p_max {
            let words = oracle.basis_words(d);
            adim.push(words.len());
            index.push(
                words
                    .iter()
                    .enumerate()
                    .map(|(i, w)| (w.clone(), i))
                    .collect(),
            );
            basis.push(words);
        }
        let mut mu = HashMap::new();
        for d1 in 1..p_max {
            for d2 in 1..=(p_max - d1) {
                let mut table = Vec::with_capacity(adim[d1 as usize] * adim[d2 as usize]);
                let target = &index[(d1 + d2) as usize];
                for u in &basis[d1 as usize] {
                    for v in &basis[d2 as usize] {
                        table.push(oracle.product(u, v, target));
                    }
                }
                mu.insert((d1, d2), table);
            }
        }
        BarComplex { field, adim, mu }
    }

    fn strand(&self, s: usize, p: u32) -> Strand {
        if s == 0 {
            let dim = if p == 0 { 1 } else { 0 };
            return Strand { comps: Vec::new(), offsets: Vec::new(), dim };
        }
        let comps = compositions_of(p, s);
        let mut offsets = Vec::with_capacity(comps.len());
        let mut dim = 0usize;
        for c in &comps {
            offsets.push(dim);
            dim += c.iter().map(|&d| self.adim[d as usize]).product::<usize>();
        }
        Strand { comps, offsets, dim }
    }

    /// Rank of d_s: strand s -> strand s-1 at internal degree p (s >= 2).
    /// d(a_1 x ... x a_s) = sum over 1 <= i <= s-1 of (-1)^i times the
    /// tensor with a_i a_{i+1} merged.
    fn differential_rank(&self, s: usize, p: u32) -> usize {
        debug_assert!(s >= 2);
        let dom = self.strand(s, p);
        let tgt = self.strand(s - 1, p);
        if dom.dim == 0 || tgt.dim == 0 {
            return 0;
        }
        let tgt_pos: HashMap<&[u32], usize> = tgt
            .comps
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_slice(), i))
            .collect();
        let mut vecs: Vec<SparseVec> = Vec::with_capacity(dom.dim);
        let mut merged = Vec::with_capacity(s - 1);
        for comp in &dom.comps {
            let fdims: Vec<usize> = comp.iter().map(|&d| self.adim[d as usize]).collect();
            let block: usize = fdims.iter().product();
            if block == 0 {
                continue;
            }
            let mut tuple = vec![0usize; s];
            loop {
                let mut acc: HashMap<usize, Scalar> = HashMap::new();
                for pos in 0..s - 1 {
                    let (d1, d2) = (comp[pos], comp[pos + 1]);
                    let entry =
                        &self.mu[&(d1, d2)][tuple[pos] * self.adim[d2 as usize] + tuple[pos + 1]];
                    if entry.is_empty() {
                        continue;
                    }
                    merged.clear();
                    merged.extend_from_slice(&comp[..pos]);
                    merged.push(d1 + d2);
                    merged.extend_from_slice(&comp[pos + 2..]);
                    let tci = tgt_pos[merged.as_slice()];
                    let base = tgt.offsets[tci];
                    let negative = pos % 2 == 0;
                    for (k, coef) in entry {
                        let mut idx = 0usize;
                        for f in 0..s - 1 {
                            let (fd, digit) = if f < pos {
                                (comp[f], tuple[f])
                            } else if f == pos {
                                (d1 + d2, *k)
                            } else {
                                (comp[f + 1], tuple[f + 1])
                            };
                            idx = idx * self.adim[fd as usize] + digit;
                        }
                        let signed = if negative { coef.neg() } else { coef.clone() };
                        match acc.entry(base + idx) {
                            std::collections::hash_map::Entry::Occupied(mut o) => {
                                let s2 = o.get().add(&signed);
                                if s2.is_zero() {
                                    o.remove();
                                } else {
                                    *o.get_mut() = s2;
                                }
                            }
                            std::collections::hash_map::Entry::Vacant(vac) => {
                                vac.insert(signed);
                            }
                        }
                    }
                }
                let mut v: SparseVec = acc.into_iter().collect();
                v.sort_by_key(|(i, _)| *i);
                if !v.is_empty() {
                    vecs.push(v);
                }
                // odometer over the tuple
                let mut carry = s;
                while carry > 0 {
                    tuple[carry - 1] += 1;
                    if tuple[carry - 1] < fdims[carry - 1] {
                        break;
                    }
                    tuple[carry - 1] = 0;
                    carry -= 1;
                }
                if carry == 0 {
                    break;
                }
            }
        }
        rank_of_vectors(self.field, tgt.dim, &vecs)
    }
}

fn bar_preconditions(p: &Presentation) -> Result<()> {
    if !p.ctx().order.is_standard_graded() {
        return Err(Error::Precondition(
            "the bar complex needs weight-1 generators".into(),
        ));
    }
    for r in p.relations() {
        match r.homogeneous_degree() {
            Some(d) if d >= 1 => {}
            Some(_) | None => {
                return Err(Error::Precondition(format!(
                    "relation {r} is not homogeneous of positive degree"
                )))
            }
        }
    }
    Ok(())
}

/// Ext dimension table via the normalized bar complex:
/// dim Ext^{s,p} = dim Tor_{s,p} = dim C_s(p) - rank d_s - rank d_{s+1}.
pub fn bar_ext_table(p: &Presentation, s_max: usize, p_max: u32) -> Result<ExtTable> {
    let oracle = MulOracle::preferred(p, p_max);
    bar_ext_table_with_oracle(p, &oracle, s_max, p_max)
}

/// Same computation against a caller-chosen multiplication oracle, so the
/// two routes can be compared entry for entry.
pub fn bar_ext_table_with_oracle(
    p: &Presentation,
    oracle: &MulOracle,
    s_max: usize,
    p_max: u32,
) -> Result<ExtTable> {
    bar_preconditions(p)?;
    let bar = BarComplex::new(oracle, p_max);
    let mut ranks: HashMap<(usize, u32), usize> = HashMap::new();
    for q in 0..=p_max {
        for s in 2..=(s_max + 1).min(q as usize) {
            ranks.insert((s, q), bar.differential_rank(s, q));
        }
    }
    let rank_at = |s: usize, q: u32| -> usize { *ranks.get(&(s, q)).unwrap_or(&0) };
    let mut dims = vec![vec![0usize; p_max as usize + 1]; s_max + 1];
    for s in 0..=s_max {
        for q in 0..=p_max {
            let c = bar.strand(s, q).dim;
            if c == 0 {
                continue;
            }
            dims[s][q as usize] = c
                .checked_sub(rank_at(s, q) + rank_at(s + 1, q))
                .expect("bar differential ranks exceed the strand dimension");
        }
    }
    Ok(ExtTable { s_max, p_max, dims })
}

/// Koszulness along the diagonal: Fail on the first nonzero off-diagonal
/// entry, scanning s then p.
pub fn diagonal_check(t: &ExtTable) -> Verdict {
    for s in 0..=t.s_max {
        for p in 0..=t.p_max {
            if s as u32 != p && t.dim(s, p) != 0 {
                return Verdict::fail(format!("(s,p)=({s},{p})"));
            }
        }
    }
    Verdict::pass()
}

/// Numerical Koszul duality: the Hilbert functions of A and its quadratic
/// dual must satisfy sum_{i=0..k} (-1)^i h_dual(i) h(k-i) = 0 for every
/// k >= 1. Fail reports the first violating k.
pub fn hilbert_duality_check(p: &Presentation, to: u32) -> Result<Verdict> {
    p.homogeneous_quadratic()?;
    let dual = p.quadratic_dual()?;
    let h = p.hilbert(to);
    let hd = dual.hilbert(to);
    for k in 1..=to as usize {
        let mut sum: i128 = 0;
        for i in 0..=k {
            let term = hd[i] as i128 * h[k - i] as i128;
            if i % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        if sum != 0 {
            return Ok(Verdict::fail(format!("k={k}")));
        }
    }
    Ok(Verdict::pass())
}

/// Distributivity of the lattice generated by a collection of subspaces of
/// one ambient space: closes the collection under sum and intersection
/// (canonical echelon rows make equality exact), then verifies
/// a ^ (b v c) = (a ^ b) v (a ^ c) over all triples of the closure.
/// Inconclusive when the closure would exceed `cap` subspaces.
pub fn check_distributive_collection(gens: &[Subspace], cap: usize) -> Verdict {
    let mut elems: Vec<Subspace> = Vec::new();
    let mut pos: HashMap<Subspace, usize> = HashMap::new();
    for g in gens {
        if !pos.contains_key(g) {
            pos.insert(g.clone(), elems.len());
            elems.push(g.clone());
        }
    }
    if elems.len() <= 1 {
        return Verdict::pass();
    }
    let mut i = 0;
    while i < elems.len() {
        for j in 0..=i {
            for new in [elems[i].sum(&elems[j]), elems[i].intersect(&elems[j])] {
                if !pos.contains_key(&new) {
                    if elems.len() >= cap {
                        return Verdict::inconclusive("cap exceeded");
                    }
                    pos.insert(new.clone(), elems.len());
                    elems.push(new);
                }
            }
        }
        i += 1;
    }
    let n = elems.len();
    let mut sum_t = vec![vec![0usize; n]; n];
    let mut int_t = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..=a {
            let s = pos[&elems[a].sum(&elems[b])];
            let m = pos[&elems[a].intersect(&elems[b])];
            sum_t[a][b] = s;
            sum_t[b][a] = s;
            int_t[a][b] = m;
            int_t[b][a] = m;
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if int_t[a][sum_t[b][c]] != sum_t[int_t[a][b]][int_t[a][c]] {
                    return Verdict::fail(format!("({a},{b},{c})"));
                }
            }
        }
    }
    Verdict::pass()
}

/// The degree-k distributivity probe: X_i = L_{i-1} P L_{k-i-1} inside
/// L_k for i = 1..k-1, where P is the span of the quadratic relations.
pub fn distributivity_probe(p: &Presentation, k: u32, cap: usize) -> Result<Verdict> {
    p.homogeneous_quadratic()?;
    if k < 2 {
        return Err(Error::Precondition(
            "the distributivity probe needs degree k >= 2".into(),
        ));
    }
    let ambient = p.ambient(k);
    let rel_polys = p.relation_subspace(2).basis_polys();
    let order = &p.ctx().order;
    let mut gens = Vec::with_capacity(k as usize - 1);
    for i in 1..k {
        let mut spanning = Vec::new();
        for u in order.words_of_degree(i - 1) {
            for r in &rel_polys {
                for v in order.words_of_degree(k - 1 - i) {
                    spanning.push(r.sandwich(&u, &v));
                }
            }
        }
        gens.push(Subspace::from_polys(&ambient, spanning.iter()));
    }
    Ok(check_distributive_collection(&gens, cap))
}

/// Aggregated report: the PBW shortcut plus the three probes.
#[derive(Clone, Debug)]
pub struct KoszulReport {
    pub pbw_shortcut: PbwVerdict,
    pub ext_diagonal: Verdict,
    pub hilbert_duality: Verdict,
    pub distributivity: Vec<(u32, Verdict)>,
    pub overall: ProbeStatus,
    pub bounds: KoszulBounds,
}

impl KoszulReport {
    pub fn is_fail(&self) -> bool {
        self.overall == ProbeStatus::Fail
    }
}

/// Runs every probe, degrading to Inconclusive where a precondition bars a
/// probe. Overall: Fail as soon as any probe fails (sound refutation);
/// Pass only with a passing diagonal and no failure anywhere; otherwise
/// Inconclusive.
pub fn koszul_report(p: &Presentation, bounds: &KoszulBounds) -> KoszulReport {
    let pbw_shortcut = pbw_check(p, 3).unwrap_or(PbwVerdict {
        status: PbwStatus::Inconclusive,
        s_pairs: Vec::new(),
        witness: None,
    });
    let ext_diagonal = match bar_ext_table(p, bounds.s_max, bounds.p_max) {
        Ok(t) => diagonal_check(&t),
        Err(e) => Verdict::inconclusive(e.to_string()),
    };
    let hilbert_duality = match hilbert_duality_check(p, bounds.duality_to) {
        Ok(v) => v,
        Err(e) => Verdict::inconclusive(e.to_string()),
    };
    let mut distributivity = Vec::new();
    for k in 3..=bounds.k_max {
        let v = match distributivity_probe(p, k, bounds.cap) {
            Ok(v) => v,
            Err(e) => Verdict::inconclusive(e.to_string()),
        };
        distributivity.push((k, v));
    }
    let any_fail = ext_diagonal.is_fail()
        || hilbert_duality.is_fail()
        || distributivity.iter().any(|(_, v)| v.is_fail());
    let overall = if any_fail {
        ProbeStatus::Fail
    } else if ext_diagonal.is_pass() {
        ProbeStatus::Pass
    } else {
        ProbeStatus::Inconclusive
    };
    KoszulReport {
        pbw_shortcut,
        ext_diagonal,
        hilbert_duality,
        distributivity,
        overall,
        bounds: *bounds,
    }
}

/// The same report after permuting generators to the given name order.
pub fn koszul_report_with_order(
    p: &Presentation,
    names: &[String],
    bounds: &KoszulBounds,
) -> Result<KoszulReport> {
    Ok(koszul_report(&p.reorder_by_names(names)?, bounds))
}

impl fmt::Display for KoszulReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pbw_witness = match &self.pbw_shortcut.witness {
            Some(w) => w.to_string(),
            None => "-".into(),
        };
        writeln!(
            f,
            "probe=pbw_shortcut status={} witness={} bounds=degree<=3",
            self.pbw_shortcut.status, pbw_witness
        )?;
        writeln!(
            f,
            "probe=ext_diagonal status={} witness={} bounds=s<={},p<={}",
            self.ext_diagonal.status,
            self.ext_diagonal.detail(),
            self.bounds.s_max,
            self.bounds.p_max
        )?;
        writeln!(
            f,
            "probe=hilbert_duality status={} witness={} bounds=N<={}",
            self.hilbert_duality.status,
            self.hilbert_duality.detail(),
            self.bounds.duality_to
        )?;
        for (k, v) in &self.distributivity {
            writeln!(
                f,
                "probe=distributivity_k{k} status={} witness={} bounds=cap={}",
                v.status,
                v.detail(),
                self.bounds.cap
            )?;
        }
        writeln!(f, "overall={}", self.overall)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{Context, GeneratorOrder};
    use crate::scalar::FieldSpec;

    fn free_pres(field: FieldSpec, names: &[&str]) -> Presentation {
        let order = GeneratorOrder::new(names.iter().map(|n| (n.to_string(), 1)).collect()).unwrap();
        Presentation::new(Context::arc(field, order), vec![])
    }

    fn jordan(field: FieldSpec) -> Presentation {
        let order =
            GeneratorOrder::new(vec![("x".into(), 1), ("y".into(), 1)]).unwrap();
        let ctx = Context::arc(field, order);
        let x = FreePoly::generator(&ctx, 0);
        let y = FreePoly::generator(&ctx, 1);
        Presentation::new(ctx.clone(), vec![y.mul(&x).sub(&x.mul(&y)).sub(&x.mul(&x))])
    }

    #[test]
    fn compositions_are_complete() {
        assert_eq!(compositions_of(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(compositions_of(3, 3), vec![vec![1, 1, 1]]);
        assert_eq!(compositions_of(2, 3), Vec::<Vec<u32>>::new());
    }

    #[test]
    fn free_algebra_tables() {
        for n in [1usize, 2] {
            let names: Vec<&str> = ["x", "y"][..n].to_vec();
            let p = free_pres(FieldSpec::rationals(), &names);
            let t = bar_ext_table(&p, 3, 3).unwrap();
            for s in 0..=3usize {
                for q in 0..=3u32 {
                    let expect = match (s, q) {
                        (0, 0) => 1,
                        (1, 1) => n,
                        _ => 0,
                    };
                    assert_eq!(t.dim(s, q), expect, "free n={n} at ({s},{q})");
                }
            }
            assert!(diagonal_check(&t).is_pass());
        }
    }

    #[test]
    fn jordan_table_is_diagonal() {
        let p = jordan(FieldSpec::rationals());
        let t = bar_ext_table(&p, 4, 4).unwrap();
        assert_eq!(t.dim(0, 0), 1);
        assert_eq!(t.dim(1, 1), 2);
        assert_eq!(t.dim(2, 2), 1);
        assert_eq!(t.dim(3, 3), 0);
        for s in 0..=4usize {
            for q in 0..=4u32 {
                if s as u32 != q {
                    assert_eq!(t.dim(s, q), 0, "off-diagonal at ({s},{q})");
                }
            }
        }
        assert!(diagonal_check(&t).is_pass());
    }

    #[test]
    fn diagonal_check_reports_first_witness() {
        let mut dims = vec![vec![0usize; 4]; 4];
        dims[0][0] = 1;
        dims[2][3] = 1;
        dims[3][1] = 2;
        let t = ExtTable { s_max: 3, p_max: 3, dims };
        let v = diagonal_check(&t);
        assert!(v.is_fail());
        assert_eq!(v.witness.as_deref(), Some("(s,p)=(2,3)"));
    }

    #[test]
    fn oracle_routes_agree_on_jordan() {
        let p = jordan(FieldSpec::default_prime_field());
        let pref = MulOracle::preferred(&p, 4);
        assert_eq!(pref.route(), "rewriting");
        let quot = MulOracle::quotient(&p);
        for d in 1..=4 {
            assert_eq!(pref.basis_words(d), quot.basis_words(d), "basis at degree {d}");
        }
        let a = bar_ext_table_with_oracle(&p, &pref, 4, 4).unwrap();
        let b = bar_ext_table_with_oracle(&p, &quot, 4, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn duality_passes_on_jordan_and_commutative_plane() {
        let p = jordan(FieldSpec::rationals());
        assert!(hilbert_duality_check(&p, 6).unwrap().is_pass());

        let order =
            GeneratorOrder::new(vec![("x".into(), 1), ("y".into(), 1)]).unwrap();
        let ctx = Context::arc(FieldSpec::rationals(), order);
        let x = FreePoly::generator(&ctx, 0);
        let y = FreePoly::generator(&ctx, 1);
        let comm = Presentation::new(ctx.clone(), vec![y.mul(&x).sub(&x.mul(&y))]);
        assert!(hilbert_duality_check(&comm, 6).unwrap().is_pass());
    }

    #[test]
    fn duality_rejects_non_quadratic_input() {
        let order = GeneratorOrder::new(vec![("x".into(), 1)]).unwrap();
        let ctx = Context::arc(FieldSpec::rationals(), order);
        let x = FreePoly::generator(&ctx, 0);
        let cubic = Presentation::new(ctx.clone(), vec![x.mul(&x).mul(&x)]);
        assert!(hilbert_duality_check(&cubic, 4).is_err());
    }

    #[test]
    fn classic_triple_fails_distributivity() {
        let order =
            GeneratorOrder::new(vec![("x".into(), 1), ("y".into(), 1)]).unwrap();
        let ctx = Context::arc(FieldSpec::rationals(), order);
        let free = Presentation::new(ctx.clone(), vec![]);
        let ambient = free.ambient(1);
        let x = FreePoly::generator(&ctx, 0);
        let y = FreePoly::generator(&ctx, 1);
        let d = x.add(&y);
        let line = |f: &FreePoly| Subspace::from_polys(&ambient, std::iter::once(f));
        let v = check_distributive_collection(&[line(&x), line(&y), line(&d)], 100);
        assert!(v.is_fail());
        assert_eq!(v.witness.as_deref(), Some("(0,1,2)"));

        // Every two-element collection from the same lines passes.
        for pair in [[&x, &y], [&x, &d], [&y, &d]] {
            let v = check_distributive_collection(&[line(pair[0]), line(pair[1])], 100);
            assert!(v.is_pass());
        }
    }

    #[test]
    fn cap_yields_inconclusive() {
        let order =
            GeneratorOrder::new(vec![("x".into(), 1), ("y".into(), 1)]).unwrap();
        let ctx = Context::arc(FieldSpec::rationals(), order);
        let free = Presentation::new(ctx.clone(), vec![]);
        let ambient = free.ambient(1);
        let x = FreePoly::generator(&ctx, 0);
        let y = FreePoly::generator(&ctx, 1);
        let line = |f: &FreePoly| Subspace::from_polys(&ambient, std::iter::once(f));
        let v = check_distributive_collection(&[line(&x), line(&y), line(&x.add(&y))], 3);
        assert_eq!(v.status, ProbeStatus::Inconclusive);
        assert_eq!(v.reason.as_deref(), Some("cap exceeded"));
    }

    #[test]
    fn jordan_distributivity_passes() {
        let p = jordan(FieldSpec::rationals());
        assert!(distributivity_probe(&p, 2, 500).unwrap().is_pass());
        assert!(distributivity_probe(&p, 3, 500).unwrap().is_pass());
        assert!(distributivity_probe(&p, 4, 500).unwrap().is_pass());
    }

    #[test]
    fn jordan_report_passes_with_pbw() {
        let p = jordan(FieldSpec::default_prime_field());
        let r = koszul_report(&p, &KoszulBounds::default());
        assert_eq!(r.pbw_shortcut.status, PbwStatus::IsPbw);
        assert!(r.ext_diagonal.is_pass());
        assert!(r.hilbert_duality.is_pass());
        assert!(r.distributivity.iter().all(|(_, v)| v.is_pass()));
        assert_eq!(r.overall, ProbeStatus::Pass);
        let text = r.to_string();
        assert!(text.contains("probe=pbw_shortcut status=IsPBW"));
        assert!(text.ends_with("overall=Pass\n"));
    }

    /// K<x,y,z>/(z^2, zy, zx - x^2) is quadratic but not Koszul: the bar
    /// diagonal first breaks at (3,4), and independently the duality
    /// convolution has value 1 at k = 4 (h = [1,3,6,11,20] against
    /// h_dual = [1,3,3,2,2]).
    fn non_koszul_fixture(field: FieldSpec) -> Presentation {
        let order = GeneratorOrder::new(vec![
            ("x".into(), 1),
            ("y".into(), 1),
            ("z".into(), 1),
        ])
        .unwrap();
        let ctx = Context::arc(field, order);
        let x = FreePoly::generator(&ctx, 0);
        let y = FreePoly::generator(&ctx, 1);
        let z = FreePoly::generator(&ctx, 2);
        Presentation::new(
            ctx.clone(),
            vec![z.mul(&z), z.mul(&y), z.mul(&x).sub(&x.mul(&x))],
        )
    }

    #[test]
    fn non_koszul_fixture_fails_both_probes() {
        for field in [FieldSpec::rationals(), FieldSpec::default_prime_field()] {
            let p = non_koszul_fixture(field);
            assert_eq!(p.hilbert(4), vec![1, 3, 6, 11, 20]);
            assert_eq!(p.quadratic_dual().unwrap().hilbert(4), vec![1, 3, 3, 2, 2]);
            let t = bar_ext_table(&p, 3, 4).unwrap();
            let v = diagonal_check(&t);
            assert!(v.is_fail());
            assert_eq!(v.witness.as_deref(), Some("(s,p)=(3,4)"));
            let d = hilbert_duality_check(&p, 6).unwrap();
            assert!(d.is_fail());
            assert_eq!(d.witness.as_deref(), Some("k=4"));
            let r = koszul_report(&p, &KoszulBounds { s_max: 3, p_max: 4, duality_to: 6, k_max: 4, cap: 500 });
            assert_eq!(r.overall, ProbeStatus::Fail);
        }
    }

    #[test]
    fn report_degrades_on_non_quadratic_input() {
        let order = GeneratorOrder::new(vec![("x".into(), 1)]).unwrap();
        let ctx = Context::arc(FieldSpec::rationals(), order);
        let x = FreePoly::generator(&ctx, 0);
        let cubic = Presentation::new(ctx.clone(), vec![x.mul(&x).mul(&x)]);
        let r = koszul_report(&cubic, &KoszulBounds { s_max: 3, p_max: 3, duality_to: 4, k_max: 4, cap: 100 });
        assert_eq!(r.pbw_shortcut.status, PbwStatus::Inconclusive);
        assert_eq!(r.hilbert_duality.status, ProbeStatus::Inconclusive);
        assert!(r.distributivity.iter().all(|(_, v)| v.status == ProbeStatus::Inconclusive));
        // K<x>/(x^3) is not Koszul: the bar diagonal sees Ext^{2,3}.
        assert!(r.ext_diagonal.is_fail());
        assert_eq!(r.overall, ProbeStatus::Fail);
    }
}
