//! Curve systems: curve graphs, the topological type of their regular
//! neighbourhood, and the action of Dehn twists on the span of the curve
//! classes in homology.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::artin::PositiveWord;
use crate::coxeter::{CoxeterGraph, Label};
use crate::error::{Error, Result};

/// Curves `1..=n` and their geometric intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveGraph {
    names: Vec<String>,
    // (i, j) with i < j, value >= 1
    intersections: BTreeMap<(usize, usize), u32>,
}

impl CurveGraph {
    pub fn new(count: usize, intersections: &[(usize, usize, u32)]) -> Result<Self> {
        if count == 0 {
            return Err(Error::CurveGraph("need at least one curve".into()));
        }
        let mut map = BTreeMap::new();
        for &(i, j, n) in intersections {
            if i == 0 || j == 0 || i > count || j > count || i == j {
                return Err(Error::CurveGraph(format!("bad intersection pair ({i}, {j})")));
            }
            if n > 0 {
                map.insert((i.min(j), i.max(j)), n);
            }
        }
        Ok(CurveGraph { names: (1..=count).map(|i| format!("a{i}")).collect(), intersections: map })
    }

    /// Chain of `p` curves: consecutive curves meet once.
    pub fn chain(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::CurveGraph("chain length must be >= 1".into()));
        }
        let edges: Vec<_> = (1..p).map(|j| (j, j + 1, 1)).collect();
        Self::new(p, &edges)
    }

    /// Curves with intersection pattern `D_n`.
    pub fn d_type(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::CurveGraph(format!("D_n curve graph needs n >= 4, got {n}")));
        }
        let mut edges: Vec<_> = (1..n - 2).map(|j| (j, j + 1, 1)).collect();
        edges.push((n - 2, n - 1, 1));
        edges.push((n - 2, n, 1));
        Self::new(n, &edges)
    }

    /// Curves realising a small-type Coxeter graph: label 3 becomes a
    /// single intersection, label 2 disjointness.
    pub fn from_coxeter(g: &CoxeterGraph) -> Result<Self> {
        let mut edges = Vec::new();
        for (s, t, m) in g.edges() {
            match m {
                Label::Finite(3) => edges.push((s, t, 1)),
                other => {
                    return Err(Error::CurveGraph(format!(
                        "label {other} on ({s}, {t}) is not realised by a single intersection"
                    )))
                }
            }
        }
        Self::new(g.rank(), &edges)
    }

    pub fn curve_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn intersection(&self, i: usize, j: usize) -> u32 {
        self.intersections.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    /// Intersecting pairs `(i, j, i(a_i, a_j))` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        self.intersections.iter().map(|(&(i, j), &n)| (i, j, n)).collect()
    }

    pub fn is_chain(&self) -> bool {
        let n = self.curve_count();
        self.intersections.len() == n - 1
            && (1..n).all(|j| self.intersection(j, j + 1) == 1)
    }

    fn has_unit_labels(&self) -> bool {
        self.intersections.values().all(|&n| n == 1)
    }

    fn is_connected(&self) -> bool {
        let n = self.curve_count();
        let mut seen = vec![false; n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        while let Some(v) = stack.pop() {
            for &(i, j) in self.intersections.keys() {
                let w = if i == v { j } else if j == v { i } else { continue };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen[1..].iter().all(|&b| b)
    }

    pub fn is_tree(&self) -> bool {
        self.intersections.len() + 1 == self.curve_count() && self.is_connected()
    }
}

/// `S_{g,b}` with its Euler characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceType {
    pub genus: u32,
    pub boundary: u32,
    pub chi: i64,
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}} (chi = {})", self.genus, self.boundary, self.chi)
    }
}

/// Choices made while plumbing annuli: the cyclic order of intersection
/// points along each curve and the local orientation of each crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plumbing {
    /// For each curve (0-based), indices into `CurveGraph::edges()` in the
    /// order met along the curve.
    pub cyclic_orders: Vec<Vec<usize>>,
    /// Per intersection: `true` if the second curve crosses the first from
    /// right to left.
    pub crossing_signs: Vec<bool>,
}

impl Plumbing {
    pub fn canonical(cg: &CurveGraph) -> Self {
        let edges = cg.edges();
        let cyclic_orders = (1..=cg.curve_count())
            .map(|c| {
                edges
                    .iter()
                    .enumerate()
                    .filter(|(_, &(i, j, _))| i == c || j == c)
                    .map(|(e, _)| e)
                    .collect()
            })
            .collect();
        Plumbing { cyclic_orders, crossing_signs: vec![true; edges.len()] }
    }

    pub fn random<R: Rng + ?Sized>(cg: &CurveGraph, rng: &mut R) -> Self {
        let mut p = Self::canonical(cg);
        for order in &mut p.cyclic_orders {
            order.shuffle(rng);
        }
        for sign in &mut p.crossing_signs {
            *sign = rng.gen();
        }
        p
    }
}

/// Topological type of the regular neighbourhood of a tree of curves that
/// pairwise meet at most once.
pub fn surface_of(cg: &CurveGraph) -> Result<SurfaceType> {
    surface_of_plumbing(cg, &Plumbing::canonical(cg))
}

/// Builds the ribbon graph of the plumbing (one vertex per intersection,
/// one band per arc of curve between consecutive intersections) and counts
/// its boundary circuits.
pub fn surface_of_plumbing(cg: &CurveGraph, plumbing: &Plumbing) -> Result<SurfaceType> {
    if !cg.has_unit_labels() {
        return Err(Error::CurveGraph("intersection numbers must all be 1".into()));
    }
    if !cg.is_tree() {
        return Err(Error::CurveGraph("curve graph must be a connected tree".into()));
    }
    let edges = cg.edges();
    if edges.is_empty() {
        // a lone annulus
        return Ok(SurfaceType { genus: 0, boundary: 2, chi: 0 });
    }
    if plumbing.cyclic_orders.len() != cg.curve_count() || plumbing.crossing_signs.len() != edges.len() {
        return Err(Error::CurveGraph("plumbing does not match curve graph".into()));
    }

    // Dart 4e + 0/1/2/3: leaving along the lower curve, leaving along the
    // upper curve, arriving along the lower curve, arriving along the upper.
    let darts = 4 * edges.len();
    let mut rotation = vec![0usize; darts];
    for (e, &sign) in plumbing.crossing_signs.iter().enumerate() {
        let cycle = if sign { [0, 1, 2, 3] } else { [0, 3, 2, 1] };
        for k in 0..4 {
            rotation[4 * e + cycle[k]] = 4 * e + cycle[(k + 1) % 4];
        }
    }
    let mut opposite = vec![usize::MAX; darts];
    for (c, order) in plumbing.cyclic_orders.iter().enumerate() {
        let curve = c + 1;
        let mut sorted = order.clone();
        sorted.sort_unstable();
        let expected: Vec<usize> =
            (0..edges.len()).filter(|&e| edges[e].0 == curve || edges[e].1 == curve).collect();
        if sorted != expected {
            return Err(Error::CurveGraph(format!("cyclic order for curve {curve} is inconsistent")));
        }
        let dart = |e: usize, leaving: bool| {
            let lower = edges[e].0 == curve;
            4 * e + match (leaving, lower) {
                (true, true) => 0,
                (true, false) => 1,
                (false, true) => 2,
                (false, false) => 3,
            }
        };
        for (idx, &e) in order.iter().enumerate() {
            let next = order[(idx + 1) % order.len()];
            let (from, to) = (dart(e, true), dart(next, false));
            opposite[from] = to;
            opposite[to] = from;
        }
    }
    debug_assert!(opposite.iter().all(|&d| d != usize::MAX));

    let mut visited = vec![false; darts];
    let mut boundary = 0u32;
    for start in 0..darts {
        if visited[start] {
            continue;
        }
        boundary += 1;
        let mut d = start;
        while !visited[d] {
            visited[d] = true;
            d = rotation[opposite[d]];
        }
    }
    let vertices = edges.len() as i64;
    let bands = 2 * edges.len() as i64;
    let chi = vertices - bands;
    let twice_genus = 2 - chi - boundary as i64;
    assert!(twice_genus >= 0 && twice_genus % 2 == 0, "ribbon graph is not orientable");
    Ok(SurfaceType { genus: (twice_genus / 2) as u32, boundary, chi })
}

/// Square integer matrix with overflow-checked products.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let term = a.checked_mul(other.get(k, j)).ok_or(Error::Overflow)?;
                    out.data[i * n + j] = out.data[i * n + j].checked_add(term).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        (0..self.n)
            .map(|i| {
                (0..self.n).try_fold(0i64, |acc, j| {
                    self.get(i, j)
                        .checked_mul(v[j])
                        .and_then(|t| acc.checked_add(t))
                        .ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(<[i64]>::to_vec).collect()
    }
}

/// Transvections `x -> x + <a_i, x> a_i` on the lattice spanned by the curve
/// classes, with `<a_i, a_j> = +1` for intersecting `i < j`.
///
/// The representation factors through the Artin group, so unequal matrices
/// certify that two twist words differ; equal matrices certify nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransvectionRep {
    pairing: IntMatrix,
    twists: Vec<IntMatrix>,
}

pub fn transvection_rep(cg: &CurveGraph) -> Result<TransvectionRep> {
    if !cg.has_unit_labels() {
        return Err(Error::CurveGraph("transvections need intersection numbers in {0, 1}".into()));
    }
    let n = cg.curve_count();
    let mut pairing = IntMatrix::zeros(n);
    for (i, j, _) in cg.edges() {
        pairing.set(i - 1, j - 1, 1);
        pairing.set(j - 1, i - 1, -1);
    }
    let twists = (0..n)
        .map(|a| {
            let mut m = IntMatrix::identity(n);
            for c in 0..n {
                m.set(a, c, m.get(a, c) + pairing.get(a, c));
            }
            m
        })
        .collect();
    Ok(TransvectionRep { pairing, twists })
}

impl TransvectionRep {
    pub fn rank(&self) -> usize {
        self.pairing.size()
    }

    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    /// Matrix of the twist along curve `i` (1-based).
    pub fn twist(&self, i: usize) -> &IntMatrix {
        &self.twists[i - 1]
    }

    pub fn evaluate_letters(&self, letters: &[usize]) -> Result<IntMatrix> {
        let mut acc = IntMatrix::identity(self.rank());
        for &s in letters {
            if s == 0 || s > self.rank() {
                return Err(Error::GeneratorOutOfRange { index: s, rank: self.rank() });
            }
            acc = acc.mul(&self.twists[s - 1])?;
        }
        Ok(acc)
    }

    /// Ordered product of twist matrices; the last letter acts first.
    pub fn evaluate_word(&self, w: &PositiveWord) -> Result<IntMatrix> {
        self.evaluate_letters(w.letters())
    }

    /// `true` when the two words act differently, proving them unequal.
    pub fn separates(&self, u: &PositiveWord, v: &PositiveWord) -> Result<bool> {
        Ok(self.evaluate_word(u)? != self.evaluate_word(v)?)
    }

    pub fn preserves_pairing(&self, i: usize) -> Result<bool> {
        let m = self.twist(i);
        Ok(m.transpose().mul(&self.pairing)?.mul(m)? == self.pairing)
    }
}
