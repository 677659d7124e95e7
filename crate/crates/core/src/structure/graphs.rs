use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::game::Game;

/// Disjoint sets over `0..n`; roots are always the smallest member.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let r = self.find(v);
            by_root[r].push(v);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

fn components_of(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for &(a, b) in edges {
        uf.union(a, b);
    }
    uf.components()
}

/// Connection graph on the distinct support questions: two questions are
/// adjacent when they differ for exactly one player.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportGraph {
    pub vertices: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
}

impl SupportGraph {
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }
}

/// Questions of one player, adjacent when they co-occur with a common
/// question tuple of the other players.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlayerGraph {
    pub player: usize,
    /// Questions with positive marginal probability.
    pub vertices: Vec<usize>,
    /// Pairs of question indices, smaller first.
    pub edges: Vec<(usize, usize)>,
    /// Components as lists of question indices.
    pub components: Vec<Vec<usize>>,
}

impl PlayerGraph {
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Connectivity {
    Connected,
    PlayerwiseConnectedOnly,
    NotPlayerwiseConnected,
}

impl Connectivity {
    pub fn name(self) -> &'static str {
        match self {
            Connectivity::Connected => "Connected",
            Connectivity::PlayerwiseConnectedOnly => "PlayerwiseConnectedOnly",
            Connectivity::NotPlayerwiseConnected => "NotPlayerwiseConnected",
        }
    }
}

fn without(q: &[usize], j: usize) -> Vec<usize> {
    q.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x).collect()
}

pub fn connection_graph(g: &Game) -> SupportGraph {
    let vertices: Vec<Vec<usize>> = g.support_questions().into_iter().map(|(q, _)| q).collect();
    let mut edges = BTreeSet::new();
    for j in 0..g.players() {
        let mut groups: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (v, q) in vertices.iter().enumerate() {
            groups.entry(without(q, j)).or_default().push(v);
        }
        for members in groups.values() {
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    edges.insert((a.min(b), a.max(b)));
                }
            }
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    let components = components_of(vertices.len(), &edges);
    SupportGraph { vertices, edges, components }
}

pub fn playerwise_graphs(g: &Game) -> Vec<PlayerGraph> {
    let questions: Vec<Vec<usize>> = g.support_questions().into_iter().map(|(q, _)| q).collect();
    (0..g.players())
        .map(|j| {
            let vertices: Vec<usize> = questions.iter().map(|q| q[j]).collect::<BTreeSet<_>>().into_iter().collect();
            let mut groups: HashMap<Vec<usize>, BTreeSet<usize>> = HashMap::new();
            for q in &questions {
                groups.entry(without(q, j)).or_default().insert(q[j]);
            }
            let mut edges = BTreeSet::new();
            for members in groups.values() {
                let m: Vec<usize> = members.iter().copied().collect();
                for (i, &a) in m.iter().enumerate() {
                    for &b in &m[i + 1..] {
                        edges.insert((a, b));
                    }
                }
            }
            let edges: Vec<(usize, usize)> = edges.into_iter().collect();
            let pos = |q: usize| vertices.binary_search(&q).expect("edge endpoints are vertices");
            let local: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (pos(a), pos(b))).collect();
            let components = components_of(vertices.len(), &local)
                .into_iter()
                .map(|c| c.into_iter().map(|v| vertices[v]).collect())
                .collect();
            PlayerGraph { player: j, vertices, edges, components }
        })
        .collect()
}

pub fn classify_connectivity(g: &Game) -> Connectivity {
    if connection_graph(g).is_connected() {
        Connectivity::Connected
    } else if playerwise_graphs(g).iter().all(PlayerGraph::is_connected) {
        Connectivity::PlayerwiseConnectedOnly
    } else {
        Connectivity::NotPlayerwiseConnected
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn anti_correlation_is_isolated_points() {
        let g = connection_graph(&zoo::anti_correlation());
        assert!(g.edges.is_empty());
        assert_eq!(g.components.len(), 3);
        let pg = playerwise_graphs(&zoo::anti_correlation());
        assert!(pg.iter().all(|p| p.edges.is_empty()));
    }

    #[test]
    fn five_point_components() {
        let g = zoo::five_point_example();
        let sg = connection_graph(&g);
        let comps: Vec<Vec<Vec<usize>>> =
            sg.components.iter().map(|c| c.iter().map(|&v| sg.vertices[v].clone()).collect()).collect();
        assert_eq!(comps, vec![vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]], vec![vec![1, 1, 1]],]);
        for p in playerwise_graphs(&g) {
            assert_eq!(p.edges, vec![(0, 1)]);
        }
        assert_eq!(classify_connectivity(&g), Connectivity::PlayerwiseConnectedOnly);
    }

    #[test]
    fn ghz_and_full_cube() {
        assert_eq!(classify_connectivity(&zoo::ghz_game()), Connectivity::NotPlayerwiseConnected);
        let cube = zoo::binary3_game(&(0..8).collect::<Vec<u8>>(), |_, _| true).unwrap();
        let sg = connection_graph(&cube);
        assert_eq!(sg.edges.len(), 12);
        assert_eq!(classify_connectivity(&cube), Connectivity::Connected);
    }

    #[test]
    fn union_find_labels_by_smallest() {
        let mut uf = UnionFind::new(5);
        uf.union(4, 2);
        uf.union(3, 1);
        uf.union(2, 3);
        assert_eq!(uf.components(), vec![vec![0], vec![1, 2, 3, 4]]);
    }
}
