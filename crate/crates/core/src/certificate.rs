//! Embedding certificates.
//!
//! A certificate pins down an explicit rainbow or monochromatic copy inside a
//! host coloring: the claim, the vertex map from the pattern/target's
//! canonical vertex order into the host, and the resulting edge list. Any
//! third party can re-check it in time linear in the host size.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bigraph::{Color, ColoredBigraph, Side, Vertex};
use crate::target::{RainbowPattern, TargetGraph};

/// What a certificate claims to exhibit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Claim {
    Rainbow(RainbowPattern),
    Monochromatic(TargetGraph),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Rainbow,
    Monochromatic,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("vertex map has {got} entries, expected {expected}")]
    WrongVertexCount { expected: usize, got: usize },
    #[error("vertex map is not injective on one side")]
    NotInjective,
    #[error("mapped vertex out of host range")]
    OutOfRange,
    #[error("pattern vertex {0} mapped across sides inconsistently")]
    SideMismatch(usize),
    #[error("edge list does not realize the claimed shape")]
    WrongEdges,
    #[error("edge colors are not pairwise distinct")]
    NotRainbow,
    #[error("edge ({0},{1}) is not the claimed color")]
    NotMonochromatic(usize, usize),
    #[error("monochromatic certificate is missing its color")]
    MissingColor,
}

/// An explicit embedding witnessing a rainbow pattern or a monochromatic
/// target inside a [`ColoredBigraph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub kind: CertificateKind,
    pub claim: Claim,
    /// Color of every edge; only present for monochromatic certificates.
    pub color: Option<Color>,
    /// Host edges (left index, right index), in the canonical edge order of
    /// the claimed shape.
    pub edges: Vec<(usize, usize)>,
    /// Image of the shape's canonical vertices in the host.
    pub vertex_map: Vec<Vertex>,
}

impl Certificate {
    /// Canonical vertex sides and abstract edges of the claimed shape.
    fn shape(&self) -> (Vec<(usize, usize)>, usize) {
        match &self.claim {
            Claim::Rainbow(p) => (p.abstract_edges(), p.vertex_count()),
            Claim::Monochromatic(h) => {
                let mut edges = Vec::new();
                let mut offset = 0;
                for comp in h.components() {
                    for (x, y) in comp.abstract_edges() {
                        edges.push((offset + x, offset + y));
                    }
                    offset += comp.vertex_count();
                }
                (edges, h.vertex_count())
            }
        }
    }

    /// Re-check the certificate against a host coloring.
    pub fn check(&self, g: &ColoredBigraph) -> Result<(), CertificateError> {
        let (abstract_edges, nverts) = self.shape();
        if self.vertex_map.len() != nverts {
            return Err(CertificateError::WrongVertexCount {
                expected: nverts,
                got: self.vertex_map.len(),
            });
        }
        let mut seen_left = std::collections::HashSet::new();
        let mut seen_right = std::collections::HashSet::new();
        for v in &self.vertex_map {
            let (limit, seen) = match v.side {
                Side::Left => (g.left_size(), &mut seen_left),
                Side::Right => (g.right_size(), &mut seen_right),
            };
            if v.index >= limit {
                return Err(CertificateError::OutOfRange);
            }
            if !seen.insert(v.index) {
                return Err(CertificateError::NotInjective);
            }
        }
        if self.edges.len() != abstract_edges.len() {
            return Err(CertificateError::WrongEdges);
        }
        let mut colors = Vec::with_capacity(self.edges.len());
        for (&(x, y), &(eu, ev)) in abstract_edges.iter().zip(&self.edges) {
            let (vx, vy) = (self.vertex_map[x], self.vertex_map[y]);
            let (u, v) = match (vx.side, vy.side) {
                (Side::Left, Side::Right) => (vx.index, vy.index),
                (Side::Right, Side::Left) => (vy.index, vx.index),
                _ => return Err(CertificateError::SideMismatch(x)),
            };
            if (u, v) != (eu, ev) {
                return Err(CertificateError::WrongEdges);
            }
            colors.push(g.color(u, v));
        }
        match self.kind {
            CertificateKind::Rainbow => {
                let mut sorted = colors.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != colors.len() {
                    return Err(CertificateError::NotRainbow);
                }
            }
            CertificateKind::Monochromatic => {
                let c = self.color.ok_or(CertificateError::MissingColor)?;
                for (i, &col) in colors.iter().enumerate() {
                    if col != c {
                        let (u, v) = self.edges[i];
                        return Err(CertificateError::NotMonochromatic(u, v));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::target::Component;

    #[test]
    fn rainbow_star_certificate_checks() {
        let g = ColoredBigraph::from_rows(3, &[vec![1, 2, 3], vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        let cert = Certificate {
            kind: CertificateKind::Rainbow,
            claim: Claim::Rainbow(RainbowPattern::K13),
            color: None,
            edges: vec![(0, 0), (0, 1), (0, 2)],
            vertex_map: vec![Vertex::left(0), Vertex::right(0), Vertex::right(1), Vertex::right(2)],
        };
        assert_eq!(cert.check(&g), Ok(()));
    }

    #[test]
    fn rainbow_certificate_rejects_repeated_color() {
        let g = ColoredBigraph::from_rows(3, &[vec![1, 2, 2], vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        let cert = Certificate {
            kind: CertificateKind::Rainbow,
            claim: Claim::Rainbow(RainbowPattern::K13),
            color: None,
            edges: vec![(0, 0), (0, 1), (0, 2)],
            vertex_map: vec![Vertex::left(0), Vertex::right(0), Vertex::right(1), Vertex::right(2)],
        };
        assert_eq!(cert.check(&g), Err(CertificateError::NotRainbow));
    }

    #[test]
    fn mono_cycle_certificate_checks() {
        let g = ColoredBigraph::constant(3, 3, 1, 1).unwrap();
        let h = TargetGraph::single(Component::Cycle { vertices: 6 }).unwrap();
        let cert = Certificate {
            kind: CertificateKind::Monochromatic,
            claim: Claim::Monochromatic(h),
            color: Some(1),
            edges: vec![(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)],
            vertex_map: vec![
                Vertex::left(0),
                Vertex::right(0),
                Vertex::left(1),
                Vertex::right(1),
                Vertex::left(2),
                Vertex::right(2),
            ],
        };
        assert_eq!(cert.check(&g), Ok(()));
    }

    #[test]
    fn certificate_rejects_non_injective_map() {
        let g = ColoredBigraph::constant(3, 3, 1, 1).unwrap();
        let cert = Certificate {
            kind: CertificateKind::Rainbow,
            claim: Claim::Rainbow(RainbowPattern::P4),
            color: None,
            edges: vec![(0, 0), (0, 0), (0, 1)],
            vertex_map: vec![Vertex::left(0), Vertex::right(0), Vertex::left(0), Vertex::right(1)],
        };
        assert_eq!(cert.check(&g), Err(CertificateError::NotInjective));
    }
}
