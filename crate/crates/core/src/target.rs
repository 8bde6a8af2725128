//! Monochromatic targets and forbidden rainbow patterns.
//!
//! A target is a disjoint union of paths, even cycles, stars and bicliques —
//! exactly the families the closed-form catalog treats. Odd cycles are not
//! representable: they are not bipartite.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TargetError {
    #[error("path needs at least 2 vertices, got {0}")]
    ShortPath(usize),
    #[error("cycle must have even vertex count >= 4, got {0} (odd cycles are not bipartite)")]
    BadCycle(usize),
    #[error("star needs at least 1 leaf")]
    EmptyStar,
    #[error("biclique part sizes must satisfy 1 <= s <= t, got ({0},{1})")]
    BadBiclique(usize, usize),
    #[error("target must have at least one component")]
    Empty,
}

/// One connected component of a target graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Component {
    /// Path on `vertices` vertices (P_l, l >= 2).
    Path { vertices: usize },
    /// Cycle on `vertices` vertices; must be even and >= 4.
    Cycle { vertices: usize },
    /// Star K_{1,leaves}.
    Star { leaves: usize },
    /// Complete bipartite K_{s,t} with 1 <= s <= t.
    Biclique { s: usize, t: usize },
}

impl Component {
    pub fn validate(self) -> Result<(), TargetError> {
        match self {
            Component::Path { vertices } if vertices < 2 => Err(TargetError::ShortPath(vertices)),
            Component::Cycle { vertices } if vertices < 4 || vertices % 2 != 0 => {
                Err(TargetError::BadCycle(vertices))
            }
            Component::Star { leaves: 0 } => Err(TargetError::EmptyStar),
            Component::Biclique { s, t } if s < 1 || s > t => Err(TargetError::BadBiclique(s, t)),
            _ => Ok(()),
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            Component::Path { vertices } | Component::Cycle { vertices } => vertices,
            Component::Star { leaves } => leaves + 1,
            Component::Biclique { s, t } => s + t,
        }
    }

    pub fn edge_count(self) -> usize {
        match self {
            Component::Path { vertices } => vertices - 1,
            Component::Cycle { vertices } => vertices,
            Component::Star { leaves } => leaves,
            Component::Biclique { s, t } => s * t,
        }
    }

    /// Bipartition sizes (x,y) of the component in one fixed orientation.
    /// Every embedding into a bipartite host uses exactly (x,y) or (y,x)
    /// vertices on the two sides.
    pub fn footprint(self) -> (usize, usize) {
        match self {
            Component::Path { vertices } => (vertices.div_ceil(2), vertices / 2),
            Component::Cycle { vertices } => (vertices / 2, vertices / 2),
            Component::Star { leaves } => (1, leaves),
            Component::Biclique { s, t } => (s, t),
        }
    }

    /// Abstract edges in the component's canonical vertex order: paths and
    /// cycles are numbered along the walk, stars center-first, bicliques
    /// s-side first. Used by certificates and the embedding oracle.
    pub fn abstract_edges(self) -> Vec<(usize, usize)> {
        match self {
            Component::Path { vertices } => (0..vertices - 1).map(|i| (i, i + 1)).collect(),
            Component::Cycle { vertices } => {
                let mut e: Vec<(usize, usize)> = (0..vertices - 1).map(|i| (i, i + 1)).collect();
                e.push((vertices - 1, 0));
                e
            }
            Component::Star { leaves } => (1..=leaves).map(|i| (0, i)).collect(),
            Component::Biclique { s, t } => {
                let mut e = Vec::with_capacity(s * t);
                for i in 0..s {
                    for j in 0..t {
                        e.push((i, s + j));
                    }
                }
                e
            }
        }
    }

    /// Side of each canonical vertex in the orientation of `footprint()`:
    /// `false` = x-side, `true` = y-side.
    pub fn vertex_sides(self) -> Vec<bool> {
        match self {
            Component::Path { vertices } | Component::Cycle { vertices } => {
                (0..vertices).map(|i| i % 2 == 1).collect()
            }
            Component::Star { leaves } => {
                let mut v = vec![true; leaves + 1];
                v[0] = false;
                v
            }
            Component::Biclique { s, t } => {
                let mut v = vec![false; s];
                v.extend(std::iter::repeat(true).take(t));
                v
            }
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Path { vertices } => write!(f, "P{vertices}"),
            Component::Cycle { vertices } => write!(f, "C{vertices}"),
            Component::Star { leaves } => write!(f, "K1,{leaves}"),
            Component::Biclique { s, t } => write!(f, "K{s},{t}"),
        }
    }
}

/// A monochromatic target: a multiset of components, embedded vertex-disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TargetGraph {
    components: Vec<Component>,
}

impl TargetGraph {
    pub fn new(mut components: Vec<Component>) -> Result<TargetGraph, TargetError> {
        if components.is_empty() {
            return Err(TargetError::Empty);
        }
        for c in &components {
            c.validate()?;
        }
        components.sort();
        Ok(TargetGraph { components })
    }

    pub fn single(c: Component) -> Result<TargetGraph, TargetError> {
        TargetGraph::new(vec![c])
    }

    pub fn path(vertices: usize) -> Result<TargetGraph, TargetError> {
        TargetGraph::single(Component::Path { vertices })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn vertex_count(&self) -> usize {
        self.components.iter().map(|c| c.vertex_count()).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.components.iter().map(|c| c.edge_count()).sum()
    }

    /// Components with star/biclique aliases folded into the smaller family:
    /// K_{1,1} and K_{1,2} are paths, K_{1,t} is a star. Used by the formula
    /// catalog so that equal graphs match the same theorem.
    pub fn normalized_components(&self) -> Vec<Component> {
        self.components
            .iter()
            .map(|&c| match c {
                Component::Biclique { s: 1, t } => match t {
                    1 => Component::Path { vertices: 2 },
                    2 => Component::Path { vertices: 3 },
                    t => Component::Star { leaves: t },
                },
                Component::Star { leaves: 1 } => Component::Path { vertices: 2 },
                Component::Star { leaves: 2 } => Component::Path { vertices: 3 },
                other => other,
            })
            .collect()
    }
}

impl fmt::Display for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// The three rainbow-forbidden patterns the structure theorems treat.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RainbowPattern {
    P4,
    P5,
    K13,
}

impl RainbowPattern {
    pub fn edge_count(self) -> usize {
        match self {
            RainbowPattern::P4 => 3,
            RainbowPattern::P5 => 4,
            RainbowPattern::K13 => 3,
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            RainbowPattern::P4 => 4,
            RainbowPattern::P5 => 5,
            RainbowPattern::K13 => 4,
        }
    }

    /// Abstract edges in certificate vertex order: paths along the walk,
    /// star center-first.
    pub fn abstract_edges(self) -> Vec<(usize, usize)> {
        match self {
            RainbowPattern::P4 => vec![(0, 1), (1, 2), (2, 3)],
            RainbowPattern::P5 => vec![(0, 1), (1, 2), (2, 3), (3, 4)],
            RainbowPattern::K13 => vec![(0, 1), (0, 2), (0, 3)],
        }
    }
}

impl fmt::Display for RainbowPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RainbowPattern::P4 => write!(f, "P4"),
            RainbowPattern::P5 => write!(f, "P5"),
            RainbowPattern::K13 => write!(f, "K1,3"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_cycles_and_degenerate_parts() {
        assert!(TargetGraph::single(Component::Cycle { vertices: 5 }).is_err());
        assert!(TargetGraph::single(Component::Cycle { vertices: 3 }).is_err());
        assert!(TargetGraph::single(Component::Path { vertices: 1 }).is_err());
        assert!(TargetGraph::single(Component::Biclique { s: 3, t: 2 }).is_err());
        assert!(TargetGraph::new(vec![]).is_err());
    }

    #[test]
    fn footprints() {
        assert_eq!(Component::Path { vertices: 5 }.footprint(), (3, 2));
        assert_eq!(Component::Cycle { vertices: 6 }.footprint(), (3, 3));
        assert_eq!(Component::Star { leaves: 4 }.footprint(), (1, 4));
        assert_eq!(Component::Biclique { s: 2, t: 3 }.footprint(), (2, 3));
    }

    #[test]
    fn counts() {
        let h = TargetGraph::new(vec![
            Component::Path { vertices: 4 },
            Component::Cycle { vertices: 6 },
        ])
        .unwrap();
        assert_eq!(h.vertex_count(), 10);
        assert_eq!(h.edge_count(), 9);
    }

    #[test]
    fn normalization_folds_aliases() {
        let h = TargetGraph::new(vec![
            Component::Biclique { s: 1, t: 2 },
            Component::Star { leaves: 1 },
            Component::Biclique { s: 1, t: 5 },
        ])
        .unwrap();
        let n = h.normalized_components();
        assert!(n.contains(&Component::Path { vertices: 3 }));
        assert!(n.contains(&Component::Path { vertices: 2 }));
        assert!(n.contains(&Component::Star { leaves: 5 }));
    }

    #[test]
    fn cycle_vertex_sides_alternate() {
        let sides = Component::Cycle { vertices: 6 }.vertex_sides();
        assert_eq!(sides, vec![false, true, false, true, false, true]);
    }
}
