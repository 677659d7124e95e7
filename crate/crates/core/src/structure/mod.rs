//! Connectivity structure of supports and the binary 3-player classifier.

mod classify;
mod cube;
mod graphs;

pub use classify::{
    canonical_classes, classify_binary3, classify_points, reducing_pair, ClassTag, GameClass, Witness,
    FIVE_POINT_POINTS, FOUR_POINT_AND_POINTS, GHZ_POINTS, HW1_POINTS,
};
pub use cube::{bit, canonicalize_support, point, support_points, CubeSymmetry, PERMUTATIONS};
pub use graphs::{
    classify_connectivity, connection_graph, playerwise_graphs, Connectivity, PlayerGraph, SupportGraph, UnionFind,
};
