//! The decision tree for 3-player games with binary questions: connected,
//! reducible to two players, or one of four symmetry classes of supports.

use serde::Serialize;

use super::cube::{self, canonicalize_support, CubeSymmetry};
use super::graphs::connection_graph;
use crate::error::{Error, Result};
use crate::game::Game;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassTag {
    Connected,
    TwoPlayerReducible,
    HammingWeightOne,
    GHZSupport,
    FourPointAND,
    FivePointPlayerwise,
}

impl ClassTag {
    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Connected => "Connected",
            ClassTag::TwoPlayerReducible => "TwoPlayerReducible",
            ClassTag::HammingWeightOne => "HammingWeightOne",
            ClassTag::GHZSupport => "GHZSupport",
            ClassTag::FourPointAND => "FourPointAND",
            ClassTag::FivePointPlayerwise => "FivePointPlayerwise",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Connected supports need no witness.
    None,
    /// Players whose questions are in bijection on the support.
    PlayerPair(usize, usize),
    /// Maps the support onto the canonical set of its tag.
    Symmetry(CubeSymmetry),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameClass {
    pub tag: ClassTag,
    pub witness: Witness,
}

pub const HW1_POINTS: [u8; 3] = [0b100, 0b010, 0b001];
pub const GHZ_POINTS: [u8; 4] = [0b000, 0b110, 0b101, 0b011];
pub const FOUR_POINT_AND_POINTS: [u8; 4] = [0b000, 0b100, 0b010, 0b111];
pub const FIVE_POINT_POINTS: [u8; 5] = [0b000, 0b100, 0b010, 0b001, 0b111];

/// Canonical set of each symmetry class, in matching order.
pub fn canonical_classes() -> Vec<(ClassTag, Vec<u8>)> {
    [
        (ClassTag::HammingWeightOne, &HW1_POINTS[..]),
        (ClassTag::GHZSupport, &GHZ_POINTS[..]),
        (ClassTag::FourPointAND, &FOUR_POINT_AND_POINTS[..]),
        (ClassTag::FivePointPlayerwise, &FIVE_POINT_POINTS[..]),
    ]
    .into_iter()
    .map(|(t, s)| (t, canonicalize_support(s).expect("nonempty").0))
    .collect()
}

/// First pair `(j1, j2)`, `j1 < j2`, whose questions determine each other on
/// the support.
pub fn reducing_pair(points: &[u8]) -> Option<(usize, usize)> {
    for (j1, j2) in [(0, 1), (0, 2), (1, 2)] {
        let mut fwd = [None::<u8>; 2];
        let mut back = [None::<u8>; 2];
        let ok = points.iter().all(|&p| {
            let (a, b) = (cube::bit(p, j1), cube::bit(p, j2));
            let f = *fwd[a as usize].get_or_insert(b) == b;
            let r = *back[b as usize].get_or_insert(a) == a;
            f && r
        });
        if ok {
            return Some((j1, j2));
        }
    }
    None
}

/// Classifies a nonempty point set of `{0,1}^3`. Only the support matters,
/// so the weights of a game need not be uniform.
pub fn classify_points(points: &[u8]) -> Result<GameClass> {
    let g = crate::zoo::binary3_game(points, |_, _| true)?;
    if connection_graph(&g).is_connected() {
        return Ok(GameClass { tag: ClassTag::Connected, witness: Witness::None });
    }
    if let Some((a, b)) = reducing_pair(points) {
        return Ok(GameClass { tag: ClassTag::TwoPlayerReducible, witness: Witness::PlayerPair(a, b) });
    }
    let (canon, sym) = canonicalize_support(points)?;
    for (tag, set) in canonical_classes() {
        if set == canon {
            return Ok(GameClass { tag, witness: Witness::Symmetry(sym) });
        }
    }
    Err(Error::Internal(format!("support {points:?} matches no case of the classification")))
}

pub fn classify_binary3(g: &Game) -> Result<GameClass> {
    classify_points(&cube::support_points(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn spec_examples() {
        // Two points differing in one player are adjacent, so connectivity fires
        // before the bijection test even though players 0 and 1 are constant.
        assert_eq!(classify_points(&[0b000, 0b001]).unwrap().tag, ClassTag::Connected);
        assert_eq!(reducing_pair(&[0b000, 0b001]), Some((0, 1)));
        assert_eq!(
            classify_points(&[0b000, 0b011]).unwrap(),
            GameClass { tag: ClassTag::TwoPlayerReducible, witness: Witness::PlayerPair(1, 2) }
        );
        assert_eq!(classify_points(&[0b100, 0b010, 0b111]).unwrap().tag, ClassTag::HammingWeightOne);
        assert_eq!(classify_points(&FIVE_POINT_POINTS).unwrap().tag, ClassTag::FivePointPlayerwise);
        assert_eq!(classify_binary3(&zoo::anti_correlation()).unwrap().tag, ClassTag::HammingWeightOne);
        assert_eq!(classify_binary3(&zoo::ghz_game()).unwrap().tag, ClassTag::GHZSupport);
        assert_eq!(classify_binary3(&zoo::four_point_and_default()).unwrap().tag, ClassTag::FourPointAND);
    }

    #[test]
    fn witness_maps_onto_canonical_set() {
        let classes = canonical_classes();
        for mask in 1u16..256 {
            let pts: Vec<u8> = (0..8).filter(|p| mask >> p & 1 == 1).collect();
            let c = classify_points(&pts).unwrap();
            if let Witness::Symmetry(s) = c.witness {
                let set = &classes.iter().find(|(t, _)| *t == c.tag).unwrap().1;
                assert_eq!(&s.apply_set(&pts), set);
            }
        }
    }

    #[test]
    fn rejects_non_binary() {
        assert!(classify_binary3(&zoo::hw1_canonical(2).unwrap()).is_ok());
        let g = zoo::random_3cnf_game(3, 2, 1).unwrap().1;
        assert_eq!(classify_binary3(&g).unwrap_err().kind(), "unsupported");
    }
}
