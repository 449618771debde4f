//! Coxeter graphs and concrete arithmetic in the finite Coxeter groups of
//! type `A_n`, `D_n` and `I_2(m)`.
//!
//! Generators are numbered from 1, in the order of the catalog pictures:
//! `A_n` is the path `s_1 - s_2 - ... - s_n`, `D_n` is the path
//! `s_1 - ... - s_{n-2}` with `s_{n-1}` and `s_n` both attached to `s_{n-2}`,
//! and `I_2(m)` is the single edge `s_1 - s_2` labelled `m`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Off-diagonal entry of a Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogType {
    A(usize),
    D(usize),
    I2(u32),
}

impl fmt::Display for CatalogType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogType::A(n) => write!(f, "A{n}"),
            CatalogType::D(n) => write!(f, "D{n}"),
            CatalogType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecKind {
    A,
    D,
    I2,
    #[serde(rename = "custom")]
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeLabel {
    Finite(u32),
    Named(String),
}

/// Graph description as read from JSON:
/// `{ "type": "A"|"D"|"I2"|"custom", "rank": n, "label": m, "edges": [[i,j,m], ...] }`.
///
/// Infinite labels in custom edge lists are written `"inf"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    #[serde(rename = "type")]
    pub kind: SpecKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(usize, usize, EdgeLabel)>>,
}

impl GraphSpec {
    pub fn a(n: usize) -> Self {
        GraphSpec { kind: SpecKind::A, rank: Some(n), label: None, edges: None }
    }

    pub fn d(n: usize) -> Self {
        GraphSpec { kind: SpecKind::D, rank: Some(n), label: None, edges: None }
    }

    pub fn i2(m: u32) -> Self {
        GraphSpec { kind: SpecKind::I2, rank: Some(2), label: Some(m), edges: None }
    }

    pub fn build(&self) -> Result<CoxeterGraph> {
        let rank = || {
            self.rank
                .ok_or_else(|| Error::MalformedGraph("missing \"rank\"".into()))
        };
        match self.kind {
            SpecKind::A => CoxeterGraph::a(rank()?),
            SpecKind::D => CoxeterGraph::d(rank()?),
            SpecKind::I2 => {
                if let Some(r) = self.rank {
                    if r != 2 {
                        return Err(Error::MalformedGraph(format!("I2 has rank 2, got {r}")));
                    }
                }
                let m = self
                    .label
                    .ok_or_else(|| Error::MalformedGraph("I2 needs \"label\"".into()))?;
                CoxeterGraph::i2(m)
            }
            SpecKind::Custom => {
                let edges = self
                    .edges
                    .as_deref()
                    .unwrap_or_default()
                    .iter()
                    .map(|(i, j, m)| {
                        let label = match m {
                            EdgeLabel::Finite(m) => Label::Finite(*m),
                            EdgeLabel::Named(s) if s == "inf" || s == "∞" => Label::Infinite,
                            EdgeLabel::Named(s) => {
                                return Err(Error::MalformedGraph(format!("bad edge label {s:?}")))
                            }
                        };
                        Ok((*i, *j, label))
                    })
                    .collect::<Result<Vec<_>>>()?;
                CoxeterGraph::custom(rank()?, &edges)
            }
        }
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    /// Accepts the JSON object form or a shorthand such as `A4`, `D5`, `I2(7)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
        }
        let bad = || Error::Parse(format!("unrecognised graph spec {s:?}"));
        let upper = s.to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("I2") {
            let digits = rest.trim_matches(|c| c == '(' || c == ')' || c == ':' || c == '_');
            let m = digits.parse().map_err(|_| bad())?;
            return Ok(GraphSpec::i2(m));
        }
        if let Some(rest) = upper.strip_prefix('A') {
            return Ok(GraphSpec::a(rest.trim_start_matches('_').parse().map_err(|_| bad())?));
        }
        if let Some(rest) = upper.strip_prefix('D') {
            return Ok(GraphSpec::d(rest.trim_start_matches('_').parse().map_err(|_| bad())?));
        }
        Err(bad())
    }
}

/// A Coxeter graph together with its Coxeter matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    catalog: Option<CatalogType>,
    names: Vec<String>,
    // row-major rank x rank, diagonal entries are Finite(1)
    matrix: Vec<Label>,
}

impl CoxeterGraph {
    fn from_edges(
        catalog: Option<CatalogType>,
        names: Vec<String>,
        edges: &[(usize, usize, Label)],
    ) -> Result<Self> {
        let rank = names.len();
        let mut matrix = vec![Label::Finite(2); rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = Label::Finite(1);
        }
        let mut seen = BTreeMap::new();
        for &(i, j, m) in edges {
            if i == 0 || j == 0 || i > rank || j > rank {
                return Err(Error::MalformedGraph(format!(
                    "edge ({i}, {j}) outside vertices 1..={rank}"
                )));
            }
            if i == j {
                return Err(Error::MalformedGraph(format!("loop at vertex {i}")));
            }
            if let Label::Finite(v) = m {
                if v < 2 {
                    return Err(Error::MalformedGraph(format!(
                        "edge ({i}, {j}) has label {v}; labels must be >= 2 or infinite"
                    )));
                }
            }
            let key = (i.min(j), i.max(j));
            if let Some(prev) = seen.insert(key, m) {
                if prev != m {
                    return Err(Error::MalformedGraph(format!(
                        "edge {key:?} given labels {prev} and {m}"
                    )));
                }
            }
            matrix[(i - 1) * rank + (j - 1)] = m;
            matrix[(j - 1) * rank + (i - 1)] = m;
        }
        Ok(CoxeterGraph { catalog, names, matrix })
    }

    fn indexed_names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("s{i}")).collect()
    }

    pub fn a(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::RankOutOfRange("A_n needs n >= 1".into()));
        }
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1, Label::Finite(3))).collect();
        Self::from_edges(Some(CatalogType::A(n)), Self::indexed_names(n), &edges)
    }

    pub fn d(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::RankOutOfRange(format!("D_n needs n >= 4, got {n}")));
        }
        let mut edges: Vec<_> = (1..n - 2).map(|i| (i, i + 1, Label::Finite(3))).collect();
        edges.push((n - 2, n - 1, Label::Finite(3)));
        edges.push((n - 2, n, Label::Finite(3)));
        Self::from_edges(Some(CatalogType::D(n)), Self::indexed_names(n), &edges)
    }

    pub fn i2(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::RankOutOfRange(format!("I2(m) needs m >= 3, got {m}")));
        }
        Self::from_edges(
            Some(CatalogType::I2(m)),
            vec!["s".into(), "t".into()],
            &[(1, 2, Label::Finite(m))],
        )
    }

    /// Graph on `rank` vertices from an explicit edge list. Only monoid-level
    /// rewriting is available for custom graphs.
    pub fn custom(rank: usize, edges: &[(usize, usize, Label)]) -> Result<Self> {
        if rank == 0 {
            return Err(Error::MalformedGraph("graph needs at least one vertex".into()));
        }
        Self::from_edges(None, Self::indexed_names(rank), edges)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn catalog(&self) -> Option<CatalogType> {
        self.catalog
    }

    pub fn has_infinite_label(&self) -> bool {
        self.matrix.contains(&Label::Infinite)
    }

    /// `m_st` for 1-based generators.
    pub fn label(&self, s: usize, t: usize) -> Label {
        let r = self.rank();
        self.matrix[(s - 1) * r + (t - 1)]
    }

    pub fn coxeter_matrix(&self) -> Vec<Vec<Label>> {
        self.matrix.chunks(self.rank()).map(<[Label]>::to_vec).collect()
    }

    /// Pairs `(s, t, m)` with `s < t` and `m >= 3` (the drawn edges).
    pub fn edges(&self) -> Vec<(usize, usize, Label)> {
        let r = self.rank();
        let mut out = Vec::new();
        for s in 1..=r {
            for t in s + 1..=r {
                let m = self.label(s, t);
                if m != Label::Finite(2) {
                    out.push((s, t, m));
                }
            }
        }
        out
    }

    pub fn check_generator(&self, s: usize) -> Result<()> {
        if s == 0 || s > self.rank() {
            return Err(Error::GeneratorOutOfRange { index: s, rank: self.rank() });
        }
        Ok(())
    }

    pub fn spec(&self) -> GraphSpec {
        match self.catalog {
            Some(CatalogType::A(n)) => GraphSpec::a(n),
            Some(CatalogType::D(n)) => GraphSpec::d(n),
            Some(CatalogType::I2(m)) => GraphSpec::i2(m),
            None => GraphSpec {
                kind: SpecKind::Custom,
                rank: Some(self.rank()),
                label: None,
                edges: Some(
                    self.edges()
                        .into_iter()
                        .map(|(s, t, m)| {
                            let l = match m {
                                Label::Finite(v) => EdgeLabel::Finite(v),
                                Label::Infinite => EdgeLabel::Named("inf".into()),
                            };
                            (s, t, l)
                        })
                        .collect(),
                ),
            },
        }
    }

    pub fn identity(&self) -> Result<CoxeterElement> {
        match self.catalog.ok_or(Error::NotCatalog)? {
            CatalogType::A(n) => Ok(CoxeterElement::A(Permutation::identity(n + 1))),
            CatalogType::D(n) => Ok(CoxeterElement::D(SignedPermutation::identity(n))),
            CatalogType::I2(m) => Ok(CoxeterElement::I2(Dihedral { m, rotation: 0, reflection: false })),
        }
    }

    pub fn generator(&self, s: usize) -> Result<CoxeterElement> {
        self.check_generator(s)?;
        let mut e = self.identity()?;
        e.rmul_gen(s);
        Ok(e)
    }

    /// Element represented by a word in the generators.
    pub fn element_of(&self, word: &[usize]) -> Result<CoxeterElement> {
        let mut e = self.identity()?;
        for &s in word {
            self.check_generator(s)?;
            e.rmul_gen(s);
        }
        Ok(e)
    }

    /// Order of the product of all generators taken in `order`.
    pub fn coxeter_element_order(&self, order: &[usize]) -> Result<u32> {
        let c = self.element_of(order)?;
        let id = self.identity()?;
        let mut p = c.clone();
        let mut k = 1;
        while p != id {
            p = p.mul(&c)?;
            k += 1;
        }
        Ok(k)
    }

    /// Order of `s_1 s_2 ... s_n`.
    pub fn coxeter_number(&self) -> Result<u32> {
        let order: Vec<usize> = (1..=self.rank()).collect();
        self.coxeter_element_order(&order)
    }
}

impl fmt::Display for CoxeterGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.catalog {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "custom(rank {})", self.rank()),
        }
    }
}

/// Permutation of `0..len` in one-line notation: `w[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    fn identity(len: usize) -> Self {
        Permutation((0..len as u8).collect())
    }

    fn position(&self, value: u8) -> usize {
        self.0.iter().position(|&v| v == value).expect("permutation is total")
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }
}

/// Signed permutation of `1..=n`; `w[i]` is the signed image of `i + 1`.
///
/// Generator `s_j` of `D_n` acts as `r_{n-j}` where `r_0` sends `1 -> -2`,
/// `2 -> -1` and `r_i` (i >= 1) swaps `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation(Vec<i8>);

impl SignedPermutation {
    fn identity(n: usize) -> Self {
        SignedPermutation((1..=n as i8).collect())
    }

    fn apply(&self, x: i8) -> i8 {
        let image = self.0[(x.unsigned_abs() - 1) as usize];
        if x < 0 {
            -image
        } else {
            image
        }
    }

    fn inverse_at(&self, value: u8) -> i8 {
        for (i, &v) in self.0.iter().enumerate() {
            if v.unsigned_abs() == value {
                let i = (i + 1) as i8;
                return if v < 0 { -i } else { i };
            }
        }
        unreachable!("signed permutation is total")
    }

    pub fn sign_changes(&self) -> usize {
        self.0.iter().filter(|&&v| v < 0).count()
    }

    pub fn images(&self) -> &[i8] {
        &self.0
    }
}

/// `rho^rotation * sigma^reflection` in the dihedral group of order `2m`,
/// with generators `s = sigma` and `t = rho sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dihedral {
    pub m: u32,
    pub rotation: u32,
    pub reflection: bool,
}

impl Dihedral {
    fn mul(self, other: Dihedral) -> Dihedral {
        let m = self.m;
        let b = if self.reflection { (m - other.rotation) % m } else { other.rotation };
        Dihedral {
            m,
            rotation: (self.rotation + b) % m,
            reflection: self.reflection ^ other.reflection,
        }
    }

    fn length(self) -> usize {
        let (m, k) = (self.m, self.rotation);
        if self.reflection {
            1 + 2 * ((m - k) % m).min((k + m - 1) % m) as usize
        } else {
            2 * k.min(m - k) as usize
        }
    }

    fn generator(m: u32, s: usize) -> Dihedral {
        Dihedral { m, rotation: (s - 1) as u32, reflection: true }
    }
}

/// Element of a finite Coxeter group of catalog type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoxeterElement {
    A(Permutation),
    D(SignedPermutation),
    I2(Dihedral),
}

impl CoxeterElement {
    pub fn rank(&self) -> usize {
        match self {
            CoxeterElement::A(p) => p.0.len() - 1,
            CoxeterElement::D(p) => p.0.len(),
            CoxeterElement::I2(_) => 2,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.length() == 0
    }

    fn same_group(&self, other: &CoxeterElement) -> bool {
        match (self, other) {
            (CoxeterElement::A(a), CoxeterElement::A(b)) => a.0.len() == b.0.len(),
            (CoxeterElement::D(a), CoxeterElement::D(b)) => a.0.len() == b.0.len(),
            (CoxeterElement::I2(a), CoxeterElement::I2(b)) => a.m == b.m,
            _ => false,
        }
    }

    /// `self * other`, composing as maps (`other` acts first).
    pub fn mul(&self, other: &CoxeterElement) -> Result<CoxeterElement> {
        if !self.same_group(other) {
            return Err(Error::GroupMismatch);
        }
        Ok(match (self, other) {
            (CoxeterElement::A(a), CoxeterElement::A(b)) => {
                CoxeterElement::A(Permutation(b.0.iter().map(|&i| a.0[i as usize]).collect()))
            }
            (CoxeterElement::D(a), CoxeterElement::D(b)) => {
                CoxeterElement::D(SignedPermutation(b.0.iter().map(|&i| a.apply(i)).collect()))
            }
            (CoxeterElement::I2(a), CoxeterElement::I2(b)) => CoxeterElement::I2(a.mul(*b)),
            _ => unreachable!(),
        })
    }

    pub fn inverse(&self) -> CoxeterElement {
        match self {
            CoxeterElement::A(p) => {
                let mut inv = vec![0u8; p.0.len()];
                for (i, &v) in p.0.iter().enumerate() {
                    inv[v as usize] = i as u8;
                }
                CoxeterElement::A(Permutation(inv))
            }
            CoxeterElement::D(p) => {
                let n = p.0.len();
                CoxeterElement::D(SignedPermutation(
                    (1..=n as u8).map(|v| p.inverse_at(v)).collect(),
                ))
            }
            CoxeterElement::I2(d) => {
                let rotation =
                    if d.reflection { d.rotation } else { (d.m - d.rotation) % d.m };
                CoxeterElement::I2(Dihedral { rotation, ..*d })
            }
        }
    }

    /// Coxeter length: inversions for `A_n`, inversions plus negative-sum
    /// pairs for `D_n`.
    pub fn length(&self) -> usize {
        match self {
            CoxeterElement::A(p) => {
                let w = &p.0;
                let mut inv = 0;
                for i in 0..w.len() {
                    for j in i + 1..w.len() {
                        if w[i] > w[j] {
                            inv += 1;
                        }
                    }
                }
                inv
            }
            CoxeterElement::D(p) => {
                let w = &p.0;
                let mut len = 0;
                for i in 0..w.len() {
                    for j in i + 1..w.len() {
                        if w[i] > w[j] {
                            len += 1;
                        }
                        if w[i] + w[j] < 0 {
                            len += 1;
                        }
                    }
                }
                len
            }
            CoxeterElement::I2(d) => d.length(),
        }
    }

    /// In-place `self * s`.
    pub fn rmul_gen(&mut self, s: usize) {
        match self {
            CoxeterElement::A(p) => p.0.swap(s - 1, s),
            CoxeterElement::D(p) => {
                let r = p.0.len() - s;
                if r == 0 {
                    let (a, b) = (p.0[0], p.0[1]);
                    p.0[0] = -b;
                    p.0[1] = -a;
                } else {
                    p.0.swap(r - 1, r);
                }
            }
            CoxeterElement::I2(d) => *d = d.mul(Dihedral::generator(d.m, s)),
        }
    }

    /// In-place `s * self`.
    pub fn lmul_gen(&mut self, s: usize) {
        match self {
            CoxeterElement::A(p) => {
                let (lo, hi) = ((s - 1) as u8, s as u8);
                for v in p.0.iter_mut() {
                    if *v == lo {
                        *v = hi;
                    } else if *v == hi {
                        *v = lo;
                    }
                }
            }
            CoxeterElement::D(p) => {
                let r = (p.0.len() - s) as i8;
                for v in p.0.iter_mut() {
                    let (sign, a) = (v.signum(), v.abs());
                    if r == 0 {
                        if a == 1 {
                            *v = -2 * sign;
                        } else if a == 2 {
                            *v = -sign;
                        }
                    } else if a == r {
                        *v = (r + 1) * sign;
                    } else if a == r + 1 {
                        *v = r * sign;
                    }
                }
            }
            CoxeterElement::I2(d) => *d = Dihedral::generator(d.m, s).mul(*d),
        }
    }

    /// `length(self * s) < length(self)`.
    pub fn has_right_descent(&self, s: usize) -> bool {
        match self {
            CoxeterElement::A(p) => p.0[s - 1] > p.0[s],
            CoxeterElement::D(p) => {
                let r = p.0.len() - s;
                if r == 0 {
                    p.0[0] + p.0[1] < 0
                } else {
                    p.0[r - 1] > p.0[r]
                }
            }
            CoxeterElement::I2(d) => d.mul(Dihedral::generator(d.m, s)).length() < d.length(),
        }
    }

    /// `length(s * self) < length(self)`.
    pub fn has_left_descent(&self, s: usize) -> bool {
        match self {
            CoxeterElement::A(p) => p.position((s - 1) as u8) > p.position(s as u8),
            CoxeterElement::D(p) => {
                let r = (p.0.len() - s) as u8;
                if r == 0 {
                    p.inverse_at(1) + p.inverse_at(2) < 0
                } else {
                    p.inverse_at(r) > p.inverse_at(r + 1)
                }
            }
            CoxeterElement::I2(d) => Dihedral::generator(d.m, s).mul(*d).length() < d.length(),
        }
    }

    pub fn left_descents(&self) -> Vec<usize> {
        (1..=self.rank()).filter(|&s| self.has_left_descent(s)).collect()
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (1..=self.rank()).filter(|&s| self.has_right_descent(s)).collect()
    }

    /// A reduced word, built by repeatedly stripping the smallest left descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut out = Vec::with_capacity(self.length());
        while let Some(s) = (1..=w.rank()).find(|&s| w.has_left_descent(s)) {
            out.push(s);
            w.lmul_gen(s);
        }
        out
    }
}
