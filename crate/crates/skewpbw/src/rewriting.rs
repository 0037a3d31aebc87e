//! Degree-bounded rewriting for homogeneous presentations.
//!
//! Relations are oriented into monic rules lhs -> rhs with every rhs term
//! strictly below the lhs in deglex. Overlap ambiguities are completed in
//! (degree, deglex) order up to a bound; for quadratic systems the degree-3
//! ambiguities decide the existence of a PBW basis, and any surviving
//! nonzero overlap is an explicit witness against it.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::freealg::{Context, FreePoly, Word};
use crate::presentation::Presentation;
use crate::Result;

/// A monic rewrite rule: lhs (a word) maps to a polynomial strictly below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: FreePoly,
}

impl RewriteRule {
    /// lhs - rhs as a polynomial: the ideal element the rule encodes.
    pub fn as_poly(&self) -> FreePoly {
        let ctx = self.rhs.ctx();
        FreePoly::monomial(ctx, self.lhs.clone(), ctx.field.one()).sub(&self.rhs)
    }

    fn from_poly(f: &FreePoly) -> RewriteRule {
        let monic = f.monic();
        let (lhs, _) = monic.leading().expect("cannot orient the zero polynomial");
        let lhs = lhs.clone();
        let ctx = monic.ctx().clone();
        let rhs = FreePoly::monomial(&ctx, lhs.clone(), ctx.field.one()).sub(&monic);
        RewriteRule { lhs, rhs }
    }
}

/// An oriented, interreduced rule set with a certified confluence bound:
/// normal forms are unique for inputs of degree <= confluent_to.
pub struct RewriteSystem {
    ctx: Arc<Context>,
    rules: Vec<RewriteRule>,
    confluent_to: u32,
}

fn rules_of(polys: &[FreePoly]) -> Vec<RewriteRule> {
    polys.iter().map(RewriteRule::from_poly).collect()
}

/// One deterministic rewrite pass: repeatedly take the largest reducible
/// term and rewrite the leftmost occurrence of the largest applicable lhs.
fn reduce_with(rules: &[RewriteRule], f: &FreePoly) -> FreePoly {
    let ctx = f.ctx().clone();
    // Rules scanned largest lhs first.
    let mut order: Vec<usize> = (0..rules.len()).collect();
    order.sort_by(|&a, &b| ctx.order.compare_deglex(&rules[b].lhs, &rules[a].lhs));
    let mut work = f.clone();
    loop {
        let mut hit: Option<(usize, usize, Word)> = None;
        'scan: for (w, _) in work.terms() {
            for &ri in &order {
                if let Some(pos) = w.find(&rules[ri].lhs) {
                    hit = Some((ri, pos, w.clone()));
                    break 'scan;
                }
            }
        }
        let Some((ri, pos, w)) = hit else {
            return work;
        };
        let rule = &rules[ri];
        let coef = work
            .terms()
            .iter()
            .find(|(tw, _)| *tw == w)
            .map(|(_, c)| c.clone())
            .unwrap();
        let u = w.slice(0, pos);
        let v = w.slice(pos + rule.lhs.len(), w.len());
        let replaced = rule.rhs.sandwich(&u, &v).scale(&coef);
        work = work
            .sub(&FreePoly::monomial(&ctx, w, coef))
            .add(&replaced);
    }
}

/// Mutual reduction to a fixpoint: no rule's polynomial contains another
/// rule's lhs in any term. Zero polynomials drop out.
fn interreduce(ctx: &Arc<Context>, polys: Vec<FreePoly>) -> Vec<FreePoly> {
    let mut polys: Vec<FreePoly> = polys
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic())
        .collect();
    loop {
        let mut changed = false;
        for i in 0..polys.len() {
            let others: Vec<FreePoly> = polys
                .iter()
                .enumerate()
                .filter(|&(j, p)| j != i && !p.is_zero())
                .map(|(_, p)| p.clone())
                .collect();
            let rules = rules_of(&others);
            let nf = reduce_with(&rules, &polys[i]);
            if nf != polys[i] {
                polys[i] = nf.monic();
                changed = true;
            }
        }
        polys.retain(|p| !p.is_zero());
        if !changed {
            break;
        }
    }
    polys.sort_by(|a, b| {
        ctx.order
            .compare_deglex(a.leading().unwrap().0, b.leading().unwrap().0)
    });
    polys.dedup();
    polys
}

/// Proper overlaps u = a.b, v = b.c with b nonempty: the ambiguity word is
/// a.b.c. Inclusion overlaps cannot occur between interreduced rules.
fn overlap_words(rules: &[RewriteRule]) -> Vec<(usize, usize, Word)> {
    let mut out = Vec::new();
    for (i, ri) in rules.iter().enumerate() {
        for (j, rj) in rules.iter().enumerate() {
            let li = ri.lhs.letters();
            let lj = rj.lhs.letters();
            let max_ov = li.len().min(lj.len()) - 1;
            for ov in 1..=max_ov {
                if li[li.len() - ov..] == lj[..ov] {
                    let mut w = li.to_vec();
                    w.extend_from_slice(&lj[ov..]);
                    out.push((i, j, Word::from_letters(w)));
                }
            }
        }
    }
    out
}

impl RewriteSystem {
    /// Orients a presentation's relations by leading word under the
    /// presentation's own generator order, then interreduces.
    pub fn orient(p: &Presentation) -> RewriteSystem {
        let ctx = p.ctx().clone();
        let polys: Vec<FreePoly> = p.relations().iter().filter(|r| !r.is_zero()).cloned().collect();
        let polys = interreduce(&ctx, polys);
        RewriteSystem { ctx, rules: rules_of(&polys), confluent_to: 0 }
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// Largest degree with certified unique normal forms (0 = none).
    pub fn confluent_to(&self) -> u32 {
        self.confluent_to
    }

    pub fn normal_form(&self, f: &FreePoly) -> FreePoly {
        reduce_with(&self.rules, f)
    }

    /// Knuth-Bendix completion over ambiguities of degree <= bound,
    /// processed in ascending (degree, deglex) order. Also returns the
    /// nonzero overlap normal forms in discovery order.
    pub fn complete_trace(&self, bound: u32) -> (RewriteSystem, Vec<FreePoly>) {
        let ctx = self.ctx.clone();
        let mut polys: Vec<FreePoly> = self.rules.iter().map(|r| r.as_poly()).collect();
        let mut added: Vec<FreePoly> = Vec::new();
        'outer: loop {
            let rules = rules_of(&polys);
            let mut cands = overlap_words(&rules);
            cands.retain(|(_, _, w)| ctx.order.word_degree(w) <= bound);
            cands.sort_by(|a, b| match ctx.order.compare_deglex(&a.2, &b.2) {
                Ordering::Equal => (a.0, a.1).cmp(&(b.0, b.1)),
                o => o,
            });
            for (i, j, w) in cands {
                let ri = &rules[i];
                let rj = &rules[j];
                let q = w.len() - rj.lhs.len();
                // Two one-step rewrites of w: by rule i at position 0 and by
                // rule j at position q.
                let left = ri.rhs.sandwich(&Word::empty(), &w.slice(ri.lhs.len(), w.len()));
                let right = rj.rhs.sandwich(&w.slice(0, q), &Word::empty());
                let spoly = left.sub(&right);
                let nf = reduce_with(&rules, &spoly);
                if !nf.is_zero() {
                    added.push(nf.monic());
                    polys.push(nf);
                    polys = interreduce(&ctx, polys);
                    assert!(
                        polys.len() <= 100_000,
                        "rule set exploded during completion"
                    );
                    continue 'outer;
                }
            }
            break;
        }
        (
            RewriteSystem { ctx, rules: rules_of(&polys), confluent_to: bound },
            added,
        )
    }

    pub fn complete(&self, bound: u32) -> RewriteSystem {
        self.complete_trace(bound).0
    }

    /// Words of degree k containing no rule's lhs, descending deglex.
    pub fn normal_words(&self, k: u32) -> Vec<Word> {
        self.ctx
            .order
            .words_of_degree(k)
            .into_iter()
            .filter(|w| !self.rules.iter().any(|r| w.contains_factor(&r.lhs)))
            .collect()
    }

    pub fn count_normal_words(&self, k: u32) -> usize {
        self.normal_words(k).len()
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = self.rhs.ctx();
        let lhs = FreePoly::monomial(ctx, self.lhs.clone(), ctx.field.one());
        write!(f, "{} -> {}", lhs, self.rhs)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PbwStatus {
    IsPbw,
    NotPbw,
    Inconclusive,
}

impl fmt::Display for PbwStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PbwStatus::IsPbw => write!(f, "IsPBW"),
            PbwStatus::NotPbw => write!(f, "NotPBW"),
            PbwStatus::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

/// Outcome of the PBW test: the index pairs (i, j) whose word x_i.x_j
/// stays standard (1-based, in the order used for the check), plus a
/// witness dependence when the basis fails.
#[derive(Clone, Debug)]
pub struct PbwVerdict {
    pub status: PbwStatus,
    pub s_pairs: Vec<(usize, usize)>,
    pub witness: Option<FreePoly>,
}

impl PbwVerdict {
    pub fn s_pairs_string(&self) -> String {
        let items: Vec<String> = self
            .s_pairs
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect();
        format!("{{{}}}", items.join(","))
    }
}

/// PBW detection for a quadratic presentation under its own generator
/// order. Quadratic rules only overlap in degree 3, so completion at
/// bound >= 3 is a full certificate: no new rule means the standard
/// monomials form a basis in every degree, and the first surviving overlap
/// normal form refutes the basis with an explicit dependence.
pub fn pbw_check(p: &Presentation, bound: u32) -> Result<PbwVerdict> {
    p.homogeneous_quadratic()?;
    let rs = RewriteSystem::orient(p);
    let n = p.ctx().order.len();
    let lead: Vec<&Word> = rs.rules.iter().map(|r| &r.lhs).collect();
    let mut s_pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let w = Word::from_letters(vec![i as u32, j as u32]);
            if !lead.iter().any(|l| **l == w) {
                s_pairs.push((i + 1, j + 1));
            }
        }
    }
    let (_, added) = rs.complete_trace(bound.max(3));
    match added.into_iter().next() {
        None => Ok(PbwVerdict { status: PbwStatus::IsPbw, s_pairs, witness: None }),
        Some(w) => Ok(PbwVerdict { status: PbwStatus::NotPbw, s_pairs, witness: Some(w) }),
    }
}

/// The same test after permuting generators to the given name order.
pub fn pbw_check_with_order(p: &Presentation, names: &[String], bound: u32) -> Result<PbwVerdict> {
    pbw_check(&p.reorder_by_names(names)?, bound)
}

/// Runs the test under every permutation of the generators, in
/// lexicographic permutation order. Returns (name order, verdict) pairs.
pub fn pbw_check_all_orders(p: &Presentation, bound: u32) -> Result<Vec<(Vec<String>, PbwVerdict)>> {
    let n = p.ctx().order.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let q = p.reorder(&perm)?;
        let names = q.ctx().order.names().to_vec();
        out.push((names, pbw_check(&q, bound)?));
        // Next lexicographic permutation.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    Ok(out)
}
