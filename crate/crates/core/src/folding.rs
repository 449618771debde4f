//! Dihedral foldings `Γ' -> I_2(h)` of the catalog graphs and their
//! LCM-homomorphisms `A+(I_2(h)) -> A+(Γ')`.
//!
//! The fibres of the folding are the two colour classes of the bipartite
//! graph `Γ'`; each generator of `I_2(h)` is sent to the fundamental element
//! (product) of its fibre.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use crate::artin::{self, delta_commuting, prod_word, words_equal, PositiveWord};
use crate::coxeter::{CatalogType, CoxeterGraph, GraphSpec, Label};
use crate::error::{Error, Result};

/// Which colour class is sent to the first generator `s` of `I_2(h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Orientation {
    /// The class containing vertex 1 maps to `s`.
    #[default]
    Positive,
    /// The class containing vertex 1 maps to `t`.
    Negative,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// Two-colouring of a connected graph; the class of vertex 1 comes first.
///
/// Edges are the pairs with `m_st >= 3` (including infinite labels).
pub fn bipartition(g: &CoxeterGraph) -> Result<(Vec<usize>, Vec<usize>)> {
    let r = g.rank();
    let mut colour: Vec<Option<bool>> = vec![None; r + 1];
    colour[1] = Some(false);
    let mut queue = VecDeque::from([1usize]);
    while let Some(v) = queue.pop_front() {
        let c = colour[v].expect("queued vertices are coloured");
        for w in 1..=r {
            if w == v || g.label(v, w) == Label::Finite(2) {
                continue;
            }
            match colour[w] {
                None => {
                    colour[w] = Some(!c);
                    queue.push_back(w);
                }
                Some(cw) if cw == c => return Err(Error::NotBipartite),
                Some(_) => {}
            }
        }
    }
    if colour[1..].iter().any(Option::is_none) {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    let first = (1..=r).filter(|&v| colour[v] == Some(false)).collect();
    let second = (1..=r).filter(|&v| colour[v] == Some(true)).collect();
    Ok((first, second))
}

/// A dihedral folding of a catalog graph onto `I_2(h)`, `h` its Coxeter number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Folding {
    source: Arc<CoxeterGraph>,
    h: u32,
    k_s: Vec<usize>,
    k_t: Vec<usize>,
    orientation: Orientation,
}

pub fn dihedral_folding(source: &Arc<CoxeterGraph>, orientation: Orientation) -> Result<Folding> {
    match source.catalog() {
        Some(CatalogType::A(n)) if n >= 2 => {}
        Some(CatalogType::D(_)) | Some(CatalogType::I2(_)) => {}
        Some(CatalogType::A(_)) => {
            return Err(Error::UnsupportedFolding(
                "A_1 has a single vertex; both fibres must be nonempty".into(),
            ))
        }
        None => return Err(Error::UnsupportedFolding(format!("{source} is not a catalog graph"))),
    }
    let h = source.coxeter_number()?;
    let (first, second) = bipartition(source)?;
    let (k_s, k_t) = match orientation {
        Orientation::Positive => (first, second),
        Orientation::Negative => (second, first),
    };
    Ok(Folding { source: Arc::clone(source), h, k_s, k_t, orientation })
}

impl Folding {
    pub fn source(&self) -> &Arc<CoxeterGraph> {
        &self.source
    }

    /// Label of the target edge.
    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn target(&self) -> Result<CoxeterGraph> {
        CoxeterGraph::i2(self.h)
    }

    pub fn k_s(&self) -> &[usize] {
        &self.k_s
    }

    pub fn k_t(&self) -> &[usize] {
        &self.k_t
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Images `(x, y)` of the two target generators.
    pub fn lcm_hom_images(&self) -> Result<(PositiveWord, PositiveWord)> {
        Ok((delta_commuting(&self.source, &self.k_s)?, delta_commuting(&self.source, &self.k_t)?))
    }

    /// Image of a word of `A+(I_2(h))` under the LCM-homomorphism.
    pub fn map_word(&self, w: &PositiveWord) -> Result<PositiveWord> {
        if w.graph().catalog() != Some(CatalogType::I2(self.h)) {
            return Err(Error::GraphMismatch);
        }
        let (x, y) = self.lcm_hom_images()?;
        let letters = w
            .letters()
            .iter()
            .flat_map(|&s| if s == 1 { x.letters().to_vec() } else { y.letters().to_vec() })
            .collect();
        PositiveWord::new(&self.source, letters)
    }

    /// Checks the alternating relation of length `h` between the images, that
    /// both images divide its common value, and that no shorter alternating
    /// relation holds.
    pub fn verify_lcm_hom(&self) -> Result<LcmHomReport> {
        let (x, y) = self.lcm_hom_images()?;
        let h = self.h as usize;
        let at_h = prod_word(&x, &y, h)?;
        let relation_at_h = words_equal(&at_h, &prod_word(&y, &x, h)?)?;
        let divisibility = artin::divides(&x, &at_h)? && artin::divides(&y, &at_h)?;
        let mut first_shorter_relation = None;
        for r in 1..h {
            if words_equal(&prod_word(&x, &y, r)?, &prod_word(&y, &x, r)?)? {
                first_shorter_relation = Some(r as u32);
                break;
            }
        }
        Ok(LcmHomReport {
            source: self.source.spec(),
            h: self.h,
            x: x.to_string(),
            y: y.to_string(),
            relation_at_h,
            divisibility,
            first_shorter_relation,
        })
    }

    /// `[x, y] = prod(x, y; h)`: the images respect the lcm of `s` and `t`.
    pub fn respects_lcm(&self) -> Result<bool> {
        let (x, y) = self.lcm_hom_images()?;
        let lcm = artin::lcm_pair(&x, &y)?;
        words_equal(&lcm, &prod_word(&x, &y, self.h as usize)?)
    }
}

/// Outcome of [`Folding::verify_lcm_hom`]; words are in literal syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcmHomReport {
    pub source: GraphSpec,
    pub h: u32,
    pub x: String,
    pub y: String,
    pub relation_at_h: bool,
    pub divisibility: bool,
    pub first_shorter_relation: Option<u32>,
}

impl LcmHomReport {
    pub fn passed(&self) -> bool {
        self.relation_at_h && self.divisibility && self.first_shorter_relation.is_none()
    }
}
