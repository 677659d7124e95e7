//! Symmetries of the cube `{0,1}^3`: player permutations composed with
//! per-player input flips.
//!
//! A point is the 3-bit integer `x·4 + y·2 + z` (player 0 is the high bit).
//! The symmetry `(perm, flip)` sends `p` to the point whose coordinate `i` is
//! `p[perm[i]] ⊕ flip[i]`. Symmetries are enumerated with permutations in
//! lexicographic order and, within each, flip masks `0..8` (player 0 the
//! high bit); the identity comes first.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{Game, SupportPoint};

pub const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CubeSymmetry {
    pub perm: [usize; 3],
    pub flip: [bool; 3],
}

pub fn bit(p: u8, player: usize) -> u8 {
    (p >> (2 - player)) & 1
}

pub fn point(bits: [u8; 3]) -> u8 {
    bits[0] << 2 | bits[1] << 1 | bits[2]
}

impl CubeSymmetry {
    pub const IDENTITY: CubeSymmetry = CubeSymmetry { perm: [0, 1, 2], flip: [false; 3] };

    /// All 48 symmetries in enumeration order.
    pub fn all() -> Vec<CubeSymmetry> {
        PERMUTATIONS
            .iter()
            .flat_map(|&perm| (0..8u8).map(move |m| CubeSymmetry { perm, flip: [m & 4 != 0, m & 2 != 0, m & 1 != 0] }))
            .collect()
    }

    pub fn apply_point(&self, p: u8) -> u8 {
        point([0, 1, 2].map(|i| bit(p, self.perm[i]) ^ self.flip[i] as u8))
    }

    /// Image of a point set, sorted and deduplicated.
    pub fn apply_set(&self, s: &[u8]) -> Vec<u8> {
        let mut out: Vec<u8> = s.iter().map(|&p| self.apply_point(p)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &CubeSymmetry) -> CubeSymmetry {
        // (self∘other)(p)[i] = other(p)[perm[i]] ⊕ flip[i]
        //                    = p[other.perm[perm[i]]] ⊕ other.flip[perm[i]] ⊕ flip[i]
        CubeSymmetry {
            perm: [0, 1, 2].map(|i| other.perm[self.perm[i]]),
            flip: [0, 1, 2].map(|i| other.flip[self.perm[i]] ^ self.flip[i]),
        }
    }

    pub fn inverse(&self) -> CubeSymmetry {
        let mut perm = [0; 3];
        let mut flip = [false; 3];
        for i in 0..3 {
            perm[self.perm[i]] = i;
            flip[self.perm[i]] = self.flip[i];
        }
        CubeSymmetry { perm, flip }
    }

    /// Relabels a 3-player game with binary questions: new player `i` is old
    /// player `perm[i]`, with its question bit flipped when `flip[i]`.
    /// Answers move with their player unchanged.
    pub fn apply_game(&self, g: &Game) -> Result<Game> {
        require_binary3(g)?;
        let qa = self.perm.map(|j| g.question_alphabets()[j].clone()).to_vec();
        let aa: Vec<Vec<String>> = self.perm.map(|j| g.answer_alphabets()[j].clone()).to_vec();
        let new_sizes: Vec<usize> = aa.iter().map(Vec::len).collect();
        let new_radix = crate::game::Radix::new(&new_sizes).expect("same size as the original");
        let old_radix = g.answer_radix();
        let points = g
            .support()
            .iter()
            .map(|p| {
                let q = [0, 1, 2].map(|i| p.question()[self.perm[i]] ^ self.flip[i] as usize).to_vec();
                let wins = (0..new_radix.total())
                    .map(|t| {
                        let a_new = new_radix.decode(t);
                        let mut a_old = [0usize; 3];
                        for i in 0..3 {
                            a_old[self.perm[i]] = a_new[i];
                        }
                        p.wins_at(old_radix.encode(&a_old))
                    })
                    .collect();
                SupportPoint::new(q, p.scenario(), p.weight().clone(), wins)
            })
            .collect();
        Game::new(qa, aa, points)
    }
}

pub(crate) fn require_binary3(g: &Game) -> Result<()> {
    if g.players() != 3 || g.question_sizes().iter().any(|&n| n != 2) {
        return Err(Error::Unsupported("expected a 3-player game with binary questions".into()));
    }
    Ok(())
}

/// Distinct support questions of a binary 3-player game as cube points.
pub fn support_points(g: &Game) -> Result<Vec<u8>> {
    require_binary3(g)?;
    Ok(g.support_questions().iter().map(|(q, _)| point([q[0] as u8, q[1] as u8, q[2] as u8])).collect())
}

/// Lexicographically smallest image of `s` under the 48 symmetries, with the
/// first symmetry (in enumeration order) that produces it.
pub fn canonicalize_support(s: &[u8]) -> Result<(Vec<u8>, CubeSymmetry)> {
    if s.is_empty() {
        return Err(Error::InvalidGame { path: "support".into(), message: "empty point set".into() });
    }
    if let Some(&p) = s.iter().find(|&&p| p >= 8) {
        return Err(Error::IndexOutOfRange { path: "support".into(), index: p as usize, limit: 8 });
    }
    let mut best: Option<(Vec<u8>, CubeSymmetry)> = None;
    for sym in CubeSymmetry::all() {
        let image = sym.apply_set(s);
        if best.as_ref().map_or(true, |(b, _)| image < *b) {
            best = Some((image, sym));
        }
    }
    Ok(best.expect("48 candidates"))
}
