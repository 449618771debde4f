//! Positive words in Artin monoids.
//!
//! Equality in `A+(Γ)` is decided through the left-greedy normal form: a
//! positive word is factored as a sequence of simple elements (elements of
//! the Coxeter group `W(Γ)`) in which each factor absorbs as much as possible
//! from its right neighbour. Two words are equal in the monoid iff their
//! factor sequences coincide, and for finite type this also decides equality
//! in the Artin group.
//!
//! [`brute_force_equal`] is the independent rewriting oracle: it explores the
//! equivalence class of a word by applying the defining relations in both
//! directions.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::coxeter::{CoxeterElement, CoxeterGraph, Label};
use crate::error::{Error, Result};

/// Closure size used by the rewriting oracle unless overridden.
pub const DEFAULT_ORACLE_BUDGET: usize = 1_000_000;

const REVERSING_STEP_LIMIT: usize = 1_000_000;

/// A word in the generators of a Coxeter graph; an element of `A+(Γ)`.
///
/// `PartialEq` compares letter sequences literally. Use [`words_equal`] for
/// equality in the monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PositiveWord {
    graph: Arc<CoxeterGraph>,
    letters: Vec<usize>,
}

fn same_graph(a: &Arc<CoxeterGraph>, b: &Arc<CoxeterGraph>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl PositiveWord {
    pub fn new(graph: &Arc<CoxeterGraph>, letters: Vec<usize>) -> Result<Self> {
        for &s in &letters {
            graph.check_generator(s)?;
        }
        Ok(PositiveWord { graph: Arc::clone(graph), letters })
    }

    pub fn identity(graph: &Arc<CoxeterGraph>) -> Self {
        PositiveWord { graph: Arc::clone(graph), letters: Vec::new() }
    }

    pub fn generator(graph: &Arc<CoxeterGraph>, s: usize) -> Result<Self> {
        Self::new(graph, vec![s])
    }

    /// Parses whitespace-separated generator indices, e.g. `"1 2 1"`.
    /// The empty string is the identity.
    pub fn parse(graph: &Arc<CoxeterGraph>, text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad generator index {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, letters)
    }

    pub fn graph(&self) -> &Arc<CoxeterGraph> {
        &self.graph
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &PositiveWord) -> Result<PositiveWord> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(Error::GraphMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(PositiveWord { graph: Arc::clone(&self.graph), letters })
    }

    pub fn pow(&self, n: usize) -> PositiveWord {
        PositiveWord { graph: Arc::clone(&self.graph), letters: self.letters.repeat(n) }
    }

    /// Replaces every letter through `map` (a monoid map sending generators
    /// to generators of a possibly different graph).
    pub fn relabel(&self, target: &Arc<CoxeterGraph>, map: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new(target, self.letters.iter().map(|&s| map(s)).collect())
    }
}

impl fmt::Display for PositiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}

/// `prod(a, b; l) = a b a ...` with `l` alternating factors.
pub fn prod_word(a: &PositiveWord, b: &PositiveWord, l: usize) -> Result<PositiveWord> {
    if l == 0 {
        return Err(Error::EmptyAlternatingProduct);
    }
    if !same_graph(&a.graph, &b.graph) {
        return Err(Error::GraphMismatch);
    }
    let mut letters = Vec::with_capacity(l.div_ceil(2) * a.len() + (l / 2) * b.len());
    for i in 0..l {
        letters.extend_from_slice(if i % 2 == 0 { &a.letters } else { &b.letters });
    }
    Ok(PositiveWord { graph: Arc::clone(&a.graph), letters })
}

fn alternating(s: usize, t: usize, l: usize) -> Vec<usize> {
    (0..l).map(|i| if i % 2 == 0 { s } else { t }).collect()
}

/// Left-weighted factorization of a positive word into simple elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    graph: Arc<CoxeterGraph>,
    factors: Vec<CoxeterElement>,
}

impl NormalForm {
    pub fn factors(&self) -> &[CoxeterElement] {
        &self.factors
    }

    pub fn graph(&self) -> &Arc<CoxeterGraph> {
        &self.graph
    }

    pub fn letter_count(&self) -> usize {
        self.factors.iter().map(CoxeterElement::length).sum()
    }

    /// Every left descent of each factor is a right descent of its
    /// predecessor, and no factor is trivial.
    pub fn is_left_weighted(&self) -> bool {
        self.factors.iter().all(|f| !f.is_identity())
            && self.factors.windows(2).all(|pair| {
                pair[1]
                    .left_descents()
                    .into_iter()
                    .all(|s| pair[0].has_right_descent(s))
            })
    }

    /// Concatenated reduced words of the factors.
    pub fn to_word(&self) -> PositiveWord {
        let letters = self.factors.iter().flat_map(CoxeterElement::reduced_word).collect();
        PositiveWord { graph: Arc::clone(&self.graph), letters }
    }

    pub fn factor_words(&self) -> Vec<Vec<usize>> {
        self.factors.iter().map(CoxeterElement::reduced_word).collect()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for word in self.factor_words() {
            let parts: Vec<String> = word.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Moves letters from `q` into `p` until the pair is left-weighted.
fn settle_pair(p: &mut CoxeterElement, q: &mut CoxeterElement) -> bool {
    let rank = p.rank();
    let mut changed = false;
    while let Some(s) = (1..=rank).find(|&s| q.has_left_descent(s) && !p.has_right_descent(s)) {
        p.rmul_gen(s);
        q.lmul_gen(s);
        changed = true;
    }
    changed
}

fn push_generator(factors: &mut Vec<CoxeterElement>, graph: &CoxeterGraph, s: usize) -> Result<()> {
    factors.push(graph.generator(s)?);
    let mut i = factors.len() - 1;
    while i > 0 {
        let (left, right) = factors.split_at_mut(i);
        if !settle_pair(&mut left[i - 1], &mut right[0]) {
            break;
        }
        i -= 1;
    }
    while factors.last().is_some_and(CoxeterElement::is_identity) {
        factors.pop();
    }
    Ok(())
}

pub fn normal_form(w: &PositiveWord) -> Result<NormalForm> {
    let graph = &w.graph;
    if graph.catalog().is_none() {
        return Err(Error::NotCatalog);
    }
    let mut factors = Vec::new();
    for &s in &w.letters {
        push_generator(&mut factors, graph, s)?;
    }
    let nf = NormalForm { graph: Arc::clone(graph), factors };
    debug_assert!(nf.is_left_weighted());
    Ok(nf)
}

/// Equality in `A+(Γ)` (hence in `A(Γ)` for finite type).
pub fn words_equal(u: &PositiveWord, v: &PositiveWord) -> Result<bool> {
    if !same_graph(&u.graph, &v.graph) {
        return Err(Error::GraphMismatch);
    }
    if u.graph.catalog().is_none() {
        return Err(Error::NotCatalog);
    }
    if u.len() != v.len() {
        return Ok(false);
    }
    if u.letters == v.letters {
        return Ok(true);
    }
    Ok(normal_form(u)?.factors == normal_form(v)?.factors)
}

/// Both directions of every defining relation with a finite label.
fn relations(graph: &CoxeterGraph) -> Vec<(Vec<u16>, Vec<u16>)> {
    let mut rules = Vec::new();
    let r = graph.rank();
    for s in 1..=r {
        for t in s + 1..=r {
            if let Label::Finite(m) = graph.label(s, t) {
                let m = m as usize;
                let lhs: Vec<u16> = alternating(s, t, m).into_iter().map(|x| x as u16).collect();
                let rhs: Vec<u16> = alternating(t, s, m).into_iter().map(|x| x as u16).collect();
                rules.push((lhs.clone(), rhs.clone()));
                rules.push((rhs, lhs));
            }
        }
    }
    rules
}

fn encode(w: &PositiveWord) -> Vec<u16> {
    w.letters.iter().map(|&s| s as u16).collect()
}

/// Breadth-first closure of `start` under single-site relation rewrites,
/// stopping early once `target` (if any) is reached.
fn explore(
    graph: &CoxeterGraph,
    start: Vec<u16>,
    target: Option<&[u16]>,
    budget: usize,
) -> Result<(HashSet<Vec<u16>>, bool)> {
    let rules = relations(graph);
    let mut seen = HashSet::from([start.clone()]);
    if target == Some(start.as_slice()) {
        return Ok((seen, true));
    }
    let mut queue = VecDeque::from([start]);
    while let Some(word) = queue.pop_front() {
        for (lhs, rhs) in &rules {
            if lhs.len() > word.len() {
                continue;
            }
            for pos in 0..=word.len() - lhs.len() {
                if word[pos..pos + lhs.len()] != lhs[..] {
                    continue;
                }
                let mut next = word.clone();
                next[pos..pos + lhs.len()].copy_from_slice(rhs);
                if seen.contains(&next) {
                    continue;
                }
                if target == Some(next.as_slice()) {
                    seen.insert(next);
                    return Ok((seen, true));
                }
                seen.insert(next.clone());
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                queue.push_back(next);
            }
        }
    }
    Ok((seen, false))
}

/// The full equivalence class of `w` as letter sequences.
pub fn rewrite_closure(w: &PositiveWord, node_budget: usize) -> Result<Vec<Vec<usize>>> {
    let (seen, _) = explore(&w.graph, encode(w), None, node_budget)?;
    let mut out: Vec<Vec<usize>> = seen
        .into_iter()
        .map(|v| v.into_iter().map(usize::from).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// Rewriting oracle: `Ok(true)` iff `v` is reachable from `u` by applying
/// defining relations. Works for any graph, including custom ones.
pub fn brute_force_equal(u: &PositiveWord, v: &PositiveWord, node_budget: usize) -> Result<bool> {
    if !same_graph(&u.graph, &v.graph) {
        return Err(Error::GraphMismatch);
    }
    if u.len() != v.len() {
        return Ok(false);
    }
    let target = encode(v);
    let (_, found) = explore(&u.graph, encode(u), Some(&target), node_budget)?;
    Ok(found)
}

/// `s | w`: some word equal to `w` starts with `s`.
pub fn left_divides(s: usize, w: &PositiveWord) -> Result<bool> {
    w.graph.check_generator(s)?;
    let nf = normal_form(w)?;
    Ok(nf.factors.first().is_some_and(|head| head.has_left_descent(s)))
}

/// `V` with `w = s V`, when `s | w`.
pub fn left_cancel(s: usize, w: &PositiveWord) -> Result<Option<PositiveWord>> {
    w.graph.check_generator(s)?;
    let mut nf = normal_form(w)?;
    match nf.factors.first_mut() {
        Some(head) if head.has_left_descent(s) => {
            head.lmul_gen(s);
            Ok(Some(nf.to_word()))
        }
        _ => Ok(None),
    }
}

/// `V` with `w = u V`, when `u | w`, found by cancelling the letters of `u`
/// one generator at a time.
pub fn left_quotient(u: &PositiveWord, w: &PositiveWord) -> Result<Option<PositiveWord>> {
    if !same_graph(&u.graph, &w.graph) {
        return Err(Error::GraphMismatch);
    }
    let mut rest = w.clone();
    for &s in &u.letters {
        match left_cancel(s, &rest)? {
            Some(r) => rest = r,
            None => return Ok(None),
        }
    }
    Ok(Some(rest))
}

pub fn divides(u: &PositiveWord, w: &PositiveWord) -> Result<bool> {
    Ok(left_quotient(u, w)?.is_some())
}

/// Witness `W` of the reduction lemma: from `s X = t Y`, returns `W` with
/// `X = prod(t, s; m_st - 1) W` and `Y = prod(s, t; m_st - 1) W`.
pub fn reduction_step(s: usize, t: usize, x: &PositiveWord, y: &PositiveWord) -> Result<PositiveWord> {
    if !same_graph(&x.graph, &y.graph) {
        return Err(Error::GraphMismatch);
    }
    let graph = &x.graph;
    graph.check_generator(s)?;
    graph.check_generator(t)?;
    let m = graph.label(s, t).finite().ok_or(Error::InfiniteLabel(s, t))? as usize;
    let sx = PositiveWord::generator(graph, s)?.concat(x)?;
    let ty = PositiveWord::generator(graph, t)?.concat(y)?;
    if !words_equal(&sx, &ty)? {
        return Err(Error::Precondition(format!("s{s}·X and s{t}·Y are not equal")));
    }
    let x_prefix = PositiveWord::new(graph, alternating(t, s, m - 1))?;
    let y_prefix = PositiveWord::new(graph, alternating(s, t, m - 1))?;
    let witness = left_quotient(&x_prefix, x)?.ok_or_else(|| {
        Error::Precondition(format!("prod(s{t}, s{s}; {}) does not divide X", m - 1))
    })?;
    if !words_equal(x, &x_prefix.concat(&witness)?)? || !words_equal(y, &y_prefix.concat(&witness)?)? {
        return Err(Error::Precondition("reduction witness failed verification".into()));
    }
    Ok(witness)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Signed {
    Pos(usize),
    Neg(usize),
}

/// Least common multiple `[u, v]` by right word reversing of `u^-1 v`.
///
/// Reversing rewrites `s^-1 t` into `prod(t,s;m-1) prod(s,t;m-1)^-1` until
/// the word has the shape `P N^-1`; then `u P = v N = [u, v]`.
pub fn lcm_pair(u: &PositiveWord, v: &PositiveWord) -> Result<PositiveWord> {
    if !same_graph(&u.graph, &v.graph) {
        return Err(Error::GraphMismatch);
    }
    let graph = &u.graph;
    let mut word: Vec<Signed> = u
        .letters
        .iter()
        .rev()
        .map(|&s| Signed::Neg(s))
        .chain(v.letters.iter().map(|&s| Signed::Pos(s)))
        .collect();
    let mut steps = 0;
    // A negative letter directly followed by a positive one.
    while let Some(i) = word
        .windows(2)
        .position(|p| matches!(p, [Signed::Neg(_), Signed::Pos(_)]))
    {
        steps += 1;
        if steps > REVERSING_STEP_LIMIT {
            return Err(Error::ReversingDiverged(REVERSING_STEP_LIMIT));
        }
        let (Signed::Neg(s), Signed::Pos(t)) = (word[i], word[i + 1]) else {
            unreachable!()
        };
        if s == t {
            word.drain(i..i + 2);
            continue;
        }
        let m = graph.label(s, t).finite().ok_or(Error::InfiniteLabel(s, t))? as usize;
        let replacement = alternating(t, s, m - 1)
            .into_iter()
            .map(Signed::Pos)
            .chain(alternating(s, t, m - 1).into_iter().rev().map(Signed::Neg));
        word.splice(i..i + 2, replacement);
    }
    let tail: Vec<usize> = word
        .iter()
        .filter_map(|l| match l {
            Signed::Pos(s) => Some(*s),
            Signed::Neg(_) => None,
        })
        .collect();
    let lcm = u.concat(&PositiveWord::new(graph, tail)?)?;
    if graph.catalog().is_some() {
        debug_assert!(divides(u, &lcm)? && divides(v, &lcm)?);
    }
    Ok(lcm)
}

/// Fundamental element of a set of pairwise commuting generators: their
/// product in ascending order.
pub fn delta_commuting(graph: &Arc<CoxeterGraph>, set: &[usize]) -> Result<PositiveWord> {
    if set.is_empty() {
        return Err(Error::Precondition("generator set is empty".into()));
    }
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &s in &sorted {
        graph.check_generator(s)?;
    }
    for (i, &s) in sorted.iter().enumerate() {
        for &t in &sorted[i + 1..] {
            if graph.label(s, t) != Label::Finite(2) {
                return Err(Error::Precondition(format!(
                    "generators {s} and {t} do not commute (m = {})",
                    graph.label(s, t)
                )));
            }
        }
    }
    PositiveWord::new(graph, sorted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(g: CoxeterGraph) -> Arc<CoxeterGraph> {
        Arc::new(g)
    }

    fn word(g: &Arc<CoxeterGraph>, letters: &[usize]) -> PositiveWord {
        PositiveWord::new(g, letters.to_vec()).unwrap()
    }

    #[test]
    fn alternating_products() {
        let g = graph(CoxeterGraph::a(3).unwrap());
        let (s, t) = (word(&g, &[1]), word(&g, &[2]));
        assert_eq!(prod_word(&s, &t, 3).unwrap().letters(), &[1, 2, 1]);
        assert_eq!(prod_word(&s, &t, 1).unwrap().letters(), &[1]);
        let (x, y) = (word(&g, &[1]), word(&g, &[2, 3]));
        assert_eq!(prod_word(&x, &y, 4).unwrap().letters(), &[1, 2, 3, 1, 2, 3]);
        assert_eq!(prod_word(&x, &y, 0), Err(Error::EmptyAlternatingProduct));
        assert_eq!(prod_word(&x, &y, 5).unwrap().len(), 3 + 2 * 2);
    }

    #[test]
    fn parse_and_display() {
        let g = graph(CoxeterGraph::a(3).unwrap());
        let w = PositiveWord::parse(&g, " 1 2  1 ").unwrap();
        assert_eq!(w.letters(), &[1, 2, 1]);
        assert_eq!(w.to_string(), "1 2 1");
        assert!(PositiveWord::parse(&g, "").unwrap().is_empty());
        assert!(matches!(PositiveWord::parse(&g, "1 x"), Err(Error::Parse(_))));
        assert!(matches!(
            PositiveWord::parse(&g, "4"),
            Err(Error::GeneratorOutOfRange { index: 4, rank: 3 })
        ));
    }

    #[test]
    fn normal_form_examples() {
        let g = graph(CoxeterGraph::a(2).unwrap());
        assert!(normal_form(&word(&g, &[])).unwrap().factors().is_empty());
        let nf = normal_form(&word(&g, &[1, 2, 1])).unwrap();
        assert_eq!(nf.factors().len(), 1);
        assert_eq!(nf.factors()[0].length(), 3);
        let nf = normal_form(&word(&g, &[1, 1, 2])).unwrap();
        assert_eq!(nf.factor_words(), vec![vec![1], vec![1, 2]]);
        assert_eq!(nf.to_string(), "(1)(1 2)");
        let custom = graph(CoxeterGraph::custom(2, &[(1, 2, Label::Finite(3))]).unwrap());
        assert_eq!(normal_form(&word(&custom, &[1])), Err(Error::NotCatalog));
    }

    #[test]
    fn equality_examples() {
        let g = graph(CoxeterGraph::a(2).unwrap());
        assert!(words_equal(&word(&g, &[1, 2, 1]), &word(&g, &[2, 1, 2])).unwrap());
        assert!(!words_equal(&word(&g, &[1, 2]), &word(&g, &[2, 1])).unwrap());
        let w = word(&g, &[2, 1, 1, 2, 2, 1]);
        assert!(words_equal(&w, &w).unwrap());
        let other = graph(CoxeterGraph::a(3).unwrap());
        assert_eq!(words_equal(&w, &word(&other, &[1])), Err(Error::GraphMismatch));
    }

    #[test]
    fn oracle_examples() {
        let g = graph(CoxeterGraph::a(2).unwrap());
        assert!(brute_force_equal(&word(&g, &[1, 2, 1]), &word(&g, &[2, 1, 2]), 100).unwrap());
        assert!(!brute_force_equal(&word(&g, &[1, 2]), &word(&g, &[2, 1]), 100).unwrap());
        assert_eq!(rewrite_closure(&word(&g, &[1, 2]), 100).unwrap(), vec![vec![1, 2]]);
        assert_eq!(rewrite_closure(&word(&g, &[1, 1, 2]), 100).unwrap(), vec![vec![1, 1, 2]]);
        // the class of the longest element of A_4 has 768 reduced words
        let a4 = graph(CoxeterGraph::a(4).unwrap());
        let w0 = word(&a4, &[1, 2, 1, 3, 2, 1, 4, 3, 2, 1]);
        assert_eq!(rewrite_closure(&w0, 10_000).unwrap().len(), 768);
        assert_eq!(rewrite_closure(&w0, 100), Err(Error::BudgetExceeded(100)));
    }

    #[test]
    fn oracle_handles_custom_and_infinite_labels() {
        let g = graph(CoxeterGraph::custom(3, &[(1, 2, Label::Infinite), (2, 3, Label::Finite(4))]).unwrap());
        assert!(!brute_force_equal(&word(&g, &[1, 2]), &word(&g, &[2, 1]), 100).unwrap());
        assert!(brute_force_equal(&word(&g, &[1, 2, 3, 2, 3]), &word(&g, &[1, 3, 2, 3, 2]), 100).unwrap());
        assert!(brute_force_equal(&word(&g, &[1, 3]), &word(&g, &[3, 1]), 100).unwrap());
        assert_eq!(words_equal(&word(&g, &[1]), &word(&g, &[1])), Err(Error::NotCatalog));
    }

    #[test]
    fn divisibility_examples() {
        let g = graph(CoxeterGraph::a(2).unwrap());
        assert!(left_divides(2, &word(&g, &[1, 2, 1])).unwrap());
        assert!(!left_divides(2, &word(&g, &[1, 2])).unwrap());
        assert!(left_divides(1, &word(&g, &[1])).unwrap());
        assert!(!left_divides(1, &word(&g, &[])).unwrap());
        let q = left_cancel(2, &word(&g, &[1, 2, 1])).unwrap().unwrap();
        assert!(words_equal(&q, &word(&g, &[1, 2])).unwrap());
        assert!(divides(&word(&g, &[2, 1]), &word(&g, &[1, 2, 1, 1])).unwrap());
        assert!(divides(&word(&g, &[2, 2]), &word(&g, &[1, 2, 1, 1])).unwrap());
        assert!(!divides(&word(&g, &[1, 1]), &word(&g, &[1, 2, 1])).unwrap());
    }

    #[test]
    fn reduction_examples() {
        let g = graph(CoxeterGraph::a(2).unwrap());
        let w = reduction_step(1, 2, &word(&g, &[2, 1]), &word(&g, &[1, 2])).unwrap();
        assert!(w.is_empty());
        let w = reduction_step(1, 1, &word(&g, &[1, 2, 1]), &word(&g, &[2, 1, 2])).unwrap();
        assert_eq!(w.letters(), &[1, 2, 1]);
        assert!(matches!(
            reduction_step(1, 2, &word(&g, &[1]), &word(&g, &[1])),
            Err(Error::Precondition(_))
        ));
        let a3 = graph(CoxeterGraph::a(3).unwrap());
        let w = reduction_step(1, 3, &word(&a3, &[3, 2]), &word(&a3, &[1, 2])).unwrap();
        assert_eq!(w.letters(), &[2]);
        // an infinite label makes the lemma vacuous
        let inf = graph(CoxeterGraph::custom(2, &[(1, 2, Label::Infinite)]).unwrap());
        assert_eq!(
            reduction_step(1, 2, &word(&inf, &[2]), &word(&inf, &[1])),
            Err(Error::InfiniteLabel(1, 2))
        );
    }

    #[test]
    fn lcm_examples() {
        let g = graph(CoxeterGraph::i2(5).unwrap());
        let l = lcm_pair(&word(&g, &[1]), &word(&g, &[2])).unwrap();
        assert_eq!(l.letters(), &[1, 2, 1, 2, 1]);
        let u = word(&g, &[1, 2, 2]);
        assert!(words_equal(&lcm_pair(&u, &u).unwrap(), &u).unwrap());
        let a3 = graph(CoxeterGraph::a(3).unwrap());
        let l = lcm_pair(&word(&a3, &[1]), &word(&a3, &[3])).unwrap();
        assert_eq!(l.letters(), &[1, 3]);
        let inf = graph(CoxeterGraph::custom(2, &[(1, 2, Label::Infinite)]).unwrap());
        assert_eq!(lcm_pair(&word(&inf, &[1]), &word(&inf, &[2])), Err(Error::InfiniteLabel(1, 2)));
    }

    #[test]
    fn delta_examples() {
        let a3 = graph(CoxeterGraph::a(3).unwrap());
        assert_eq!(delta_commuting(&a3, &[3, 1]).unwrap().letters(), &[1, 3]);
        assert_eq!(delta_commuting(&a3, &[2]).unwrap().letters(), &[2]);
        assert!(matches!(delta_commuting(&a3, &[1, 2]), Err(Error::Precondition(_))));
        assert!(matches!(delta_commuting(&a3, &[]), Err(Error::Precondition(_))));
        let d4 = graph(CoxeterGraph::d(4).unwrap());
        let delta = delta_commuting(&d4, &[1, 3, 4]).unwrap();
        assert_eq!(delta.letters(), &[1, 3, 4]);
        let other = word(&d4, &[4, 1, 3]);
        assert!(words_equal(&delta, &other).unwrap());
        assert!(brute_force_equal(&delta, &other, 1000).unwrap());
        let set_lcm = lcm_pair(&lcm_pair(&word(&d4, &[1]), &word(&d4, &[3])).unwrap(), &word(&d4, &[4])).unwrap();
        assert!(words_equal(&set_lcm, &delta).unwrap());
    }

    #[test]
    fn braid_relations_hold_and_truncations_fail() {
        let graphs = [
            CoxeterGraph::a(4).unwrap(),
            CoxeterGraph::d(5).unwrap(),
            CoxeterGraph::i2(3).unwrap(),
            CoxeterGraph::i2(6).unwrap(),
            CoxeterGraph::i2(9).unwrap(),
        ];
        for g in graphs.map(graph) {
            for s in 1..=g.rank() {
                for t in s + 1..=g.rank() {
                    let m = g.label(s, t).finite().unwrap() as usize;
                    let (a, b) = (word(&g, &[s]), word(&g, &[t]));
                    assert!(words_equal(&prod_word(&a, &b, m).unwrap(), &prod_word(&b, &a, m).unwrap()).unwrap());
                    for r in 1..m {
                        assert!(!words_equal(&prod_word(&a, &b, r).unwrap(), &prod_word(&b, &a, r).unwrap())
                            .unwrap());
                    }
                }
            }
        }
    }

    fn catalog(choice: u8) -> Arc<CoxeterGraph> {
        graph(match choice % 6 {
            0 => CoxeterGraph::a(2).unwrap(),
            1 => CoxeterGraph::a(3).unwrap(),
            2 => CoxeterGraph::a(4).unwrap(),
            3 => CoxeterGraph::d(4).unwrap(),
            4 => CoxeterGraph::i2(4).unwrap(),
            _ => CoxeterGraph::i2(7).unwrap(),
        })
    }

    fn letters(g: &CoxeterGraph, raw: &[usize]) -> Vec<usize> {
        raw.iter().map(|x| x % g.rank() + 1).collect()
    }

    /// Applies `steps` random relation rewrites, producing an equal word.
    fn scramble(g: &CoxeterGraph, w: &[usize], choices: &[usize]) -> Vec<usize> {
        let rules = relations(g);
        let mut cur: Vec<u16> = w.iter().map(|&s| s as u16).collect();
        for &c in choices {
            let mut sites = Vec::new();
            for (ri, (lhs, _)) in rules.iter().enumerate() {
                if lhs.len() <= cur.len() {
                    for pos in 0..=cur.len() - lhs.len() {
                        if cur[pos..pos + lhs.len()] == lhs[..] {
                            sites.push((ri, pos));
                        }
                    }
                }
            }
            if sites.is_empty() {
                break;
            }
            let (ri, pos) = sites[c % sites.len()];
            let rhs = &rules[ri].1;
            cur[pos..pos + rhs.len()].copy_from_slice(rhs);
        }
        cur.into_iter().map(usize::from).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn normal_form_is_sound(choice in 0u8..6, raw in prop::collection::vec(0usize..8, 0..12)) {
            let g = catalog(choice);
            let w = word(&g, &letters(&g, &raw));
            let nf = normal_form(&w).unwrap();
            prop_assert!(nf.is_left_weighted());
            prop_assert_eq!(nf.letter_count(), w.len());
            prop_assert_eq!(&normal_form(&nf.to_word()).unwrap(), &nf);
            prop_assert!(brute_force_equal(&w, &nf.to_word(), DEFAULT_ORACLE_BUDGET).unwrap());
        }

        #[test]
        fn scrambled_words_stay_equal(choice in 0u8..6, raw in prop::collection::vec(0usize..8, 0..12),
                                      walk in prop::collection::vec(0usize..64, 0..20)) {
            let g = catalog(choice);
            let u = letters(&g, &raw);
            let v = scramble(&g, &u, &walk);
            prop_assert!(words_equal(&word(&g, &u), &word(&g, &v)).unwrap());
        }

        #[test]
        fn equality_is_length_homogeneous(choice in 0u8..6,
                                          a in prop::collection::vec(0usize..8, 0..10),
                                          b in prop::collection::vec(0usize..8, 0..10)) {
            let g = catalog(choice);
            let (u, v) = (word(&g, &letters(&g, &a)), word(&g, &letters(&g, &b)));
            if words_equal(&u, &v).unwrap() {
                prop_assert_eq!(u.len(), v.len());
            }
        }

        #[test]
        fn monoid_is_cancellative(choice in 0u8..6,
                                  pre in prop::collection::vec(0usize..8, 0..4),
                                  mid in prop::collection::vec(0usize..8, 0..5),
                                  post in prop::collection::vec(0usize..8, 0..4),
                                  walk in prop::collection::vec(0usize..64, 0..12),
                                  other in prop::collection::vec(0usize..8, 0..5)) {
            let g = catalog(choice);
            let (pre, mid, post) = (letters(&g, &pre), letters(&g, &mid), letters(&g, &post));
            let whole: Vec<usize> = [pre.clone(), mid.clone(), post.clone()].concat();
            let scrambled = scramble(&g, &whole, &walk);
            let u = word(&g, &pre);
            let v = word(&g, &post);
            // A_2 obtained either by scrambling or as an unrelated word
            for a2 in [mid.clone(), letters(&g, &other)] {
                let lhs = u.concat(&word(&g, &mid)).unwrap().concat(&v).unwrap();
                let rhs = u.concat(&word(&g, &a2)).unwrap().concat(&v).unwrap();
                if words_equal(&lhs, &rhs).unwrap() {
                    prop_assert!(words_equal(&word(&g, &mid), &word(&g, &a2)).unwrap());
                }
            }
            prop_assert!(words_equal(&word(&g, &whole), &word(&g, &scrambled)).unwrap());
        }

        #[test]
        fn lcm_is_universal(choice in 0u8..6,
                            a in prop::collection::vec(0usize..8, 0..4),
                            b in prop::collection::vec(0usize..8, 0..4),
                            c in prop::collection::vec(0usize..8, 0..6)) {
            let g = catalog(choice);
            let (u, v) = (word(&g, &letters(&g, &a)), word(&g, &letters(&g, &b)));
            let l = lcm_pair(&u, &v).unwrap();
            prop_assert!(divides(&u, &l).unwrap());
            prop_assert!(divides(&v, &l).unwrap());
            let m = u.concat(&word(&g, &letters(&g, &c))).unwrap();
            if divides(&v, &m).unwrap() {
                prop_assert!(divides(&l, &m).unwrap());
            }
            // lcm of multiples: [u, u w] = u w
            let uw = m.clone();
            prop_assert!(words_equal(&lcm_pair(&u, &uw).unwrap(), &uw).unwrap());
        }

        #[test]
        fn reduction_witness_exists(choice in 0u8..6, s in 0usize..8, t in 0usize..8,
                                    tail in prop::collection::vec(0usize..8, 0..6)) {
            let g = catalog(choice);
            let (s, t) = (s % g.rank() + 1, t % g.rank() + 1);
            // build a common multiple of s and t, then split it both ways
            let common = lcm_pair(&word(&g, &[s]), &word(&g, &[t])).unwrap()
                .concat(&word(&g, &letters(&g, &tail))).unwrap();
            let x = left_cancel(s, &common).unwrap().unwrap();
            let y = left_cancel(t, &common).unwrap().unwrap();
            let w = reduction_step(s, t, &x, &y).unwrap();
            let m = g.label(s, t).finite().unwrap() as usize;
            prop_assert_eq!(w.len() + if s == t { 0 } else { m - 1 }, x.len());
        }
    }
}
