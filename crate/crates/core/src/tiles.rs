//! Tile alphabets and transition matrices of a triangle presentation.
//!
//! A tile is a basepointed labeled parallelogram: two chambers glued along
//! a middle edge, recorded by its five edge labels. Two tiles are adjacent
//! in direction 1 when the second sits diagonally up-right of the first
//! sharing the edge ur/ll, and in direction 2 up-left sharing ul/lr; in
//! both cases the second tile must not fold back onto the first tile's
//! upper chamber, which is the `!= mid` exclusion below.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::mat01::Mat01;
use crate::presentation::{Gen, ValidatedPresentation};
use crate::system::{DecorationMap, TransitionSystem};

/// Five edge labels of a tile: lower-left, lower-right, middle,
/// upper-right, upper-left. `mid` completes (ll, lr) and `ul` completes
/// (ur, mid).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile {
    pub ll: Gen,
    pub lr: Gen,
    pub mid: Gen,
    pub ur: Gen,
    pub ul: Gen,
}

impl fmt::Debug for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Tile({},{},{},{},{})",
            self.ll, self.lr, self.mid, self.ur, self.ul
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TileError {
    #[error("tile not in the alphabet: {0:?}")]
    UnknownTile(Tile),
    #[error("corner completion precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency error: {0}")]
    InternalConsistency(String),
}

/// All tiles of a validated presentation, ordered by (ll, lr, ur).
///
/// For each incident pair (ll, lr) the middle edge is forced; every ur
/// whose line contains mid then forces ul. Excluding ur = lr leaves
/// q(q+1)(q^2+q+1) tiles.
pub fn build_alphabet(p: &ValidatedPresentation) -> Vec<Tile> {
    let n = p.generator_count();
    let mut tiles = Vec::new();
    for ll in 0..n {
        for lr in p.lambda_derived(ll) {
            let mid = p.completion(ll, lr).expect("validated completion");
            for ur in 0..n {
                if ur == lr {
                    continue;
                }
                let Some(ul) = p.completion(ur, mid) else {
                    continue;
                };
                tiles.push(Tile { ll, lr, mid, ur, ul });
            }
        }
    }
    tiles.sort_unstable_by_key(|t| (t.ll, t.lr, t.ur));
    tiles
}

/// The two transition matrices over a tile alphabet.
///
/// M1(b, a) = 1 iff ll(b) = ur(a) and lr(b) != mid(a);
/// M2(c, a) = 1 iff lr(c) = ul(a) and ll(c) != mid(a).
/// Row and column sums are checked against q^2; a violation means the
/// adjacency rule disagrees with the presentation and is reported as an
/// internal consistency error rather than bad input.
pub fn build_transition_matrices(
    tiles: &[Tile],
    p: &ValidatedPresentation,
) -> Result<(Mat01, Mat01), TileError> {
    let n = tiles.len();
    let mut by_ll: BTreeMap<Gen, Vec<usize>> = BTreeMap::new();
    let mut by_lr: BTreeMap<Gen, Vec<usize>> = BTreeMap::new();
    for (i, t) in tiles.iter().enumerate() {
        by_ll.entry(t.ll).or_default().push(i);
        by_lr.entry(t.lr).or_default().push(i);
    }
    let mut m1 = Mat01::zeros(n);
    let mut m2 = Mat01::zeros(n);
    for (a_idx, a) in tiles.iter().enumerate() {
        if let Some(candidates) = by_ll.get(&a.ur) {
            for &b_idx in candidates {
                if tiles[b_idx].lr != a.mid {
                    m1.set(b_idx, a_idx, true);
                }
            }
        }
        if let Some(candidates) = by_lr.get(&a.ul) {
            for &c_idx in candidates {
                if tiles[c_idx].ll != a.mid {
                    m2.set(c_idx, a_idx, true);
                }
            }
        }
    }
    let expected = p.q() * p.q();
    for (name, m) in [("M1", &m1), ("M2", &m2)] {
        for i in 0..n {
            if m.row_sum(i) != expected {
                return Err(TileError::InternalConsistency(format!(
                    "{name} row {i} sums to {}, expected {expected}",
                    m.row_sum(i)
                )));
            }
            if m.col_sum(i) != expected {
                return Err(TileError::InternalConsistency(format!(
                    "{name} column {i} sums to {}, expected {expected}",
                    m.col_sum(i)
                )));
            }
        }
    }
    Ok((m1, m2))
}

/// A tile alphabet with its transition system; the decoration is the
/// trivial one (D = A, delta the identity).
#[derive(Clone, Debug)]
pub struct TileSystem {
    q: usize,
    generator_names: Vec<String>,
    tiles: Vec<Tile>,
    index: BTreeMap<Tile, usize>,
    system: TransitionSystem,
}

impl TileSystem {
    pub fn from_presentation(p: &ValidatedPresentation) -> Result<Self, TileError> {
        let tiles = build_alphabet(p);
        let q = p.q();
        let expected = q * (q + 1) * (q * q + q + 1);
        if tiles.len() != expected {
            return Err(TileError::InternalConsistency(format!(
                "alphabet has {} tiles, expected {expected}",
                tiles.len()
            )));
        }
        let (m1, m2) = build_transition_matrices(&tiles, p)?;

        // H1a/H1b as a build postcondition: the matrices must commute with
        // a {0,1} product, otherwise the adjacency rule itself is broken.
        let p12 = m1.product_counts(&m2);
        let p21 = m2.product_counts(&m1);
        if p12 != p21 {
            return Err(TileError::InternalConsistency(
                "M1*M2 != M2*M1 on this alphabet".to_string(),
            ));
        }
        if p12.iter().any(|&v| v > 1) {
            return Err(TileError::InternalConsistency(
                "M1*M2 has an entry greater than 1".to_string(),
            ));
        }

        let names = p.generators().to_vec();
        let labels: Vec<String> = tiles.iter().map(|t| tile_label(t, &names)).collect();
        let decoration = DecorationMap {
            names: labels.clone(),
            targets: (0..tiles.len()).collect(),
        };
        let system = TransitionSystem::new(labels, vec![m1, m2])
            .expect("square matrices by construction")
            .with_decoration(decoration)
            .expect("identity decoration is in range");
        let index = tiles.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        Ok(TileSystem {
            q,
            generator_names: names,
            tiles,
            index,
            system,
        })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn system(&self) -> &TransitionSystem {
        &self.system
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn tile_index(&self, tile: &Tile) -> Option<usize> {
        self.index.get(tile).copied()
    }

    /// Given a, b, c with M1(b, a) = 1 and M2(c, b) = 1, the unique tile d
    /// with M2(d, a) = 1 and M1(c, d) = 1, found by scanning the whole
    /// alphabet. Zero or several candidates mean the transition rule is
    /// inconsistent and are reported as such.
    pub fn corner_complete(&self, a: &Tile, b: &Tile, c: &Tile) -> Result<Tile, TileError> {
        let ai = self.tile_index(a).ok_or(TileError::UnknownTile(*a))?;
        let bi = self.tile_index(b).ok_or(TileError::UnknownTile(*b))?;
        let ci = self.tile_index(c).ok_or(TileError::UnknownTile(*c))?;
        let m1 = self.system.matrix(0);
        let m2 = self.system.matrix(1);
        if !m1.get(bi, ai) {
            return Err(TileError::Precondition(format!(
                "M1(b, a) = 0 for b={b:?}, a={a:?}"
            )));
        }
        if !m2.get(ci, bi) {
            return Err(TileError::Precondition(format!(
                "M2(c, b) = 0 for c={c:?}, b={b:?}"
            )));
        }
        let candidates: Vec<usize> = (0..self.tiles.len())
            .filter(|&d| m2.get(d, ai) && m1.get(ci, d))
            .collect();
        match candidates.as_slice() {
            [d] => Ok(self.tiles[*d]),
            other => Err(TileError::InternalConsistency(format!(
                "corner completion found {} candidates for a={a:?}, b={b:?}, c={c:?}",
                other.len()
            ))),
        }
    }

    /// Tile table: `tile <index> <ll> <lr> <mid> <ur> <ul>` with generator
    /// names, in the canonical tile order the matrices are indexed by.
    pub fn export_tile_table(&self) -> String {
        let mut out = String::new();
        out.push_str("format 1\n");
        for (i, t) in self.tiles.iter().enumerate() {
            let g = &self.generator_names;
            out.push_str(&format!(
                "tile {} {} {} {} {} {}\n",
                i, g[t.ll], g[t.lr], g[t.mid], g[t.ur], g[t.ul]
            ));
        }
        out
    }
}

fn tile_label(t: &Tile, names: &[String]) -> String {
    format!(
        "{};{};{};{};{}",
        names[t.ll], names[t.lr], names[t.mid], names[t.ur], names[t.ul]
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    const C1_TEXT: &str =
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/c1.tri"));

    fn c1_system() -> TileSystem {
        let p = parse_presentation(C1_TEXT).unwrap().validated().unwrap();
        TileSystem::from_presentation(&p).unwrap()
    }

    #[test]
    fn c1_has_42_tiles() {
        let ts = c1_system();
        assert_eq!(ts.tiles().len(), 42);
    }

    #[test]
    fn c1_contains_the_reference_tile_and_not_its_degenerate_variant() {
        let ts = c1_system();
        let a = Tile { ll: 0, lr: 2, mid: 3, ur: 1, ul: 5 };
        assert!(ts.tile_index(&a).is_some());
        // ur = lr is excluded by non-degeneracy
        let degenerate = Tile { ll: 0, lr: 2, mid: 3, ur: 2, ul: 0 };
        assert!(ts.tile_index(&degenerate).is_none());
        assert!(!ts.tiles().iter().any(|t| t.ur == t.lr));
        assert!(!ts.tiles().iter().any(|t| t.ul == t.ll));
    }

    #[test]
    fn c1_transition_values_from_the_diagram() {
        let ts = c1_system();
        let a = ts.tile_index(&Tile { ll: 0, lr: 2, mid: 3, ur: 1, ul: 5 }).unwrap();
        let b = ts.tile_index(&Tile { ll: 1, lr: 5, mid: 4, ur: 2, ul: 5 }).unwrap();
        let c = ts.tile_index(&Tile { ll: 4, lr: 5, mid: 2, ur: 1, ul: 6 }).unwrap();
        let m1 = ts.system().matrix(0);
        let m2 = ts.system().matrix(1);
        assert!(m1.get(b, a));
        assert!(m2.get(c, a));
        assert!(m2.get(b, a));
        assert!(!m1.get(c, a));
    }

    #[test]
    fn c1_row_and_column_sums_are_q_squared() {
        let ts = c1_system();
        for m in ts.system().matrices() {
            for i in 0..42 {
                assert_eq!(m.row_sum(i), 4);
                assert_eq!(m.col_sum(i), 4);
            }
        }
    }

    #[test]
    fn rebuild_is_bit_identical() {
        let a = c1_system();
        let b = c1_system();
        assert_eq!(a.tiles(), b.tiles());
        assert_eq!(a.system().matrix(0), b.system().matrix(0));
        assert_eq!(a.system().matrix(1), b.system().matrix(1));
    }

    #[test]
    fn corner_completion_is_unique_on_a_sample() {
        let ts = c1_system();
        let m1 = ts.system().matrix(0);
        let m2 = ts.system().matrix(1);
        let a = Tile { ll: 0, lr: 2, mid: 3, ur: 1, ul: 5 };
        let b = Tile { ll: 1, lr: 5, mid: 4, ur: 2, ul: 5 };
        let bi = ts.tile_index(&b).unwrap();
        // every c above b yields exactly one d
        for ci in 0..42 {
            if !m2.get(ci, bi) {
                continue;
            }
            let c = ts.tiles()[ci];
            let d = ts.corner_complete(&a, &b, &c).unwrap();
            let di = ts.tile_index(&d).unwrap();
            let ai = ts.tile_index(&a).unwrap();
            assert!(m2.get(di, ai) && m1.get(ci, di));
        }
    }

    #[test]
    fn corner_completion_is_unique_for_every_valid_triple() {
        let ts = c1_system();
        let m1 = ts.system().matrix(0);
        let m2 = ts.system().matrix(1);
        let n = ts.tiles().len();
        let mut triples = 0;
        for a in 0..n {
            for b in m1.transpose().row_ones(a) {
                for c in m2.transpose().row_ones(b) {
                    let ds: Vec<usize> = (0..n)
                        .filter(|&d| m2.get(d, a) && m1.get(c, d))
                        .collect();
                    assert_eq!(ds.len(), 1, "a={a} b={b} c={c}");
                    triples += 1;
                }
            }
        }
        // q^2 choices of b above a, q^2 choices of c above b
        assert_eq!(triples, 42 * 16);
    }

    #[test]
    fn corner_completion_checks_preconditions() {
        let ts = c1_system();
        let a = Tile { ll: 0, lr: 2, mid: 3, ur: 1, ul: 5 };
        let c = Tile { ll: 4, lr: 5, mid: 2, ur: 1, ul: 6 };
        // M1(c, a) = 0, so using c in the b slot must be rejected.
        let err = ts.corner_complete(&a, &c, &a).unwrap_err();
        assert!(matches!(err, TileError::Precondition(_)));
    }

    #[test]
    fn exports_are_deterministic_and_indexed_consistently() {
        let ts = c1_system();
        let table = ts.export_tile_table();
        assert!(table.starts_with("format 1\ntile 0 "));
        assert_eq!(table.lines().count(), 43);
        let m1_text = ts.system().export_matrix(0, "M1");
        assert!(m1_text.contains("matrix M1 42 42"));
        let (_, m1) = crate::system::parse_matrix(&m1_text).unwrap();
        assert_eq!(&m1, ts.system().matrix(0));
    }
}
