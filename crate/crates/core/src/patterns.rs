//! Rainbow-pattern detection, monochromatic-target detection via embedding
//! search, and an analytic containment calculus for complete bipartite hosts.
//!
//! Everything here is exhaustive and deterministic: detectors enumerate
//! vertex tuples directly, the embedding oracle is a complete backtracking
//! search, and `biclique_contains` decides containment in K_{a,b} by a
//! footprint subset-sum. At desk scale this is microseconds and correctness
//! is paramount.

use crate::bigraph::{Color, ColoredBigraph, Side, Vertex};
use crate::certificate::{Certificate, CertificateKind, Claim};
use crate::target::{Component, RainbowPattern, TargetGraph};

/// Maximum vertices per side of an embedding host (adjacency rows are u64
/// bitmasks).
pub const MAX_HOST_SIDE: usize = 64;

/// A bipartite graph given as adjacency bitmasks, the host of the embedding
/// oracle. `adj_left[u]` has bit v set iff u~v; `adj_right` is the mirror.
#[derive(Debug, Clone)]
pub struct BipartiteHost {
    left: usize,
    right: usize,
    adj_left: Vec<u64>,
    adj_right: Vec<u64>,
}

impl BipartiteHost {
    pub fn empty(left: usize, right: usize) -> BipartiteHost {
        assert!(left <= MAX_HOST_SIDE && right <= MAX_HOST_SIDE, "host side exceeds {MAX_HOST_SIDE}");
        BipartiteHost { left, right, adj_left: vec![0; left], adj_right: vec![0; right] }
    }

    pub fn complete(left: usize, right: usize) -> BipartiteHost {
        let mut h = BipartiteHost::empty(left, right);
        let full_r = mask_full(right);
        let full_l = mask_full(left);
        for m in &mut h.adj_left {
            *m = full_r;
        }
        for m in &mut h.adj_right {
            *m = full_l;
        }
        h
    }

    /// The subgraph of `g` formed by the edges of one color.
    pub fn color_class(g: &ColoredBigraph, color: Color) -> BipartiteHost {
        let mut h = BipartiteHost::empty(g.left_size(), g.right_size());
        for u in 0..g.left_size() {
            for v in 0..g.right_size() {
                if g.color(u, v) == color {
                    h.add_edge(u, v);
                }
            }
        }
        h
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.left && v < self.right);
        self.adj_left[u] |= 1 << v;
        self.adj_right[v] |= 1 << u;
    }

    pub fn left_size(&self) -> usize {
        self.left
    }

    pub fn right_size(&self) -> usize {
        self.right
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.left && v < self.right && self.adj_left[u] & (1 << v) != 0
    }

    /// Vertices with at least one edge, per side.
    pub fn occupied(&self) -> (usize, usize) {
        let l = self.adj_left.iter().filter(|&&m| m != 0).count();
        let r = self.adj_right.iter().filter(|&&m| m != 0).count();
        (l, r)
    }
}

/// Does this host contain the target? A side-capacity check first: every
/// embedded vertex is an edge endpoint, so the target's footprint must fit
/// in the occupied rows x occupied columns; only then run the backtracking
/// oracle.
pub fn host_contains(host: &BipartiteHost, target: &TargetGraph) -> bool {
    let (l, r) = host.occupied();
    biclique_contains(l, r, target) && embed(target, host).is_some()
}

fn mask_full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

// ----- embedding oracle ----------------------------------------------------

/// One slot of the unified backtracking search: a vertex of some component,
/// to be placed after all lower slots.
struct Slot {
    comp: usize,
    /// Canonical side (false = x-side of the footprint orientation).
    canon_side: bool,
    /// Earlier slots this vertex must be adjacent to.
    neighbors: Vec<usize>,
}

struct EmbedState<'a> {
    host: &'a BipartiteHost,
    slots: Vec<Slot>,
    /// First slot index of each component, for orientation branching.
    comp_first: Vec<usize>,
    /// Orientation flip per component, decided at its first slot.
    flipped: Vec<bool>,
    /// Component values in placement order, for identical-component pruning.
    comps: Vec<Component>,
    placed: Vec<Vertex>,
    used_left: u64,
    used_right: u64,
}

impl EmbedState<'_> {
    fn anchor_key(&self, slot: usize) -> usize {
        let v = self.placed[slot];
        match v.side {
            Side::Left => v.index,
            Side::Right => MAX_HOST_SIDE + v.index,
        }
    }

    fn search(&mut self, si: usize) -> bool {
        if si == self.slots.len() {
            return true;
        }
        let is_first = self.comp_first[self.slots[si].comp] == si;
        let mut orient_buf = [false, true];
        let orientations: &[bool] = if is_first {
            match self.comps[self.slots[si].comp] {
                Component::Cycle { .. } => &orient_buf[..1],
                Component::Path { vertices } if vertices % 2 == 0 => &orient_buf[..1],
                Component::Biclique { s, t } if s == t => &orient_buf[..1],
                _ => &orient_buf[..2],
            }
        } else {
            orient_buf[0] = self.flipped[self.slots[si].comp];
            &orient_buf[..1]
        };
        for &flip in orientations {
            if is_first {
                self.flipped[self.slots[si].comp] = flip;
            }
            let side = if self.slots[si].canon_side != flip { Side::Right } else { Side::Left };
            let mut cand = match side {
                Side::Left => mask_full(self.host.left) & !self.used_left,
                Side::Right => mask_full(self.host.right) & !self.used_right,
            };
            for &nb in &self.slots[si].neighbors {
                let w = self.placed[nb];
                cand &= match w.side {
                    Side::Left => self.host.adj_left[w.index],
                    Side::Right => self.host.adj_right[w.index],
                };
            }
            let mut bits = cand;
            while bits != 0 {
                let idx = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let vertex = Vertex { side, index: idx };
                self.placed[si] = vertex;
                // identical components embed with increasing anchors
                if is_first {
                    let ci = self.slots[si].comp;
                    if ci > 0 && self.comps[ci] == self.comps[ci - 1] {
                        let prev_first = self.comp_first[ci - 1];
                        if self.anchor_key(prev_first) >= self.anchor_key(si) {
                            continue;
                        }
                    }
                }
                match side {
                    Side::Left => self.used_left |= 1 << idx,
                    Side::Right => self.used_right |= 1 << idx,
                }
                if self.search(si + 1) {
                    return true;
                }
                match side {
                    Side::Left => self.used_left &= !(1 << idx),
                    Side::Right => self.used_right &= !(1 << idx),
                }
            }
        }
        false
    }
}

/// Complete backtracking search for a vertex-disjoint embedding of `target`
/// into `host`. Returns the vertex map in the target's canonical vertex
/// order, or `None` when no embedding exists.
///
/// Components are tried largest-first; within a path or cycle, vertices are
/// placed end-to-end.
pub fn embed(target: &TargetGraph, host: &BipartiteHost) -> Option<Vec<Vertex>> {
    if target.vertex_count() > host.left_size() + host.right_size() {
        return None;
    }
    let mut order: Vec<usize> = (0..target.components().len()).collect();
    order.sort_by_key(|&i| {
        let c = target.components()[i];
        (std::cmp::Reverse(c.vertex_count()), std::cmp::Reverse(c.edge_count()), i)
    });

    let mut slots = Vec::new();
    let mut comp_first = vec![0; order.len()];
    let mut comps = Vec::with_capacity(order.len());
    for (pi, &oi) in order.iter().enumerate() {
        let comp = target.components()[oi];
        comps.push(comp);
        comp_first[pi] = slots.len();
        let sides = comp.vertex_sides();
        let base = slots.len();
        for v in 0..comp.vertex_count() {
            // edges back to already-created slots of this component
            let neighbors: Vec<usize> = comp
                .abstract_edges()
                .iter()
                .filter_map(|&(x, y)| {
                    if y == v && x < v {
                        Some(base + x)
                    } else if x == v && y < v {
                        Some(base + y)
                    } else {
                        None
                    }
                })
                .collect();
            slots.push(Slot { comp: pi, canon_side: sides[v], neighbors });
        }
    }

    let nslots = slots.len();
    let mut state = EmbedState {
        host,
        slots,
        comp_first,
        flipped: vec![false; order.len()],
        comps,
        placed: vec![Vertex::left(0); nslots],
        used_left: 0,
        used_right: 0,
    };
    if !state.search(0) {
        return None;
    }

    // Reassemble the map in the target's own component order.
    let mut result = vec![Vertex::left(0); target.vertex_count()];
    let mut target_offsets = Vec::with_capacity(order.len());
    let mut off = 0;
    for c in target.components() {
        target_offsets.push(off);
        off += c.vertex_count();
    }
    for (pi, &oi) in order.iter().enumerate() {
        let comp = target.components()[oi];
        let from = state.comp_first[pi];
        for v in 0..comp.vertex_count() {
            result[target_offsets[oi] + v] = state.placed[from + v];
        }
    }
    Some(result)
}

// ----- rainbow detection ---------------------------------------------------

/// Exhaustive search for a rainbow copy of `pattern` in `g`. Returns a
/// re-checkable certificate for the first copy in scan order, or `None`.
pub fn find_rainbow(g: &ColoredBigraph, pattern: RainbowPattern) -> Option<Certificate> {
    let (a, b) = (g.left_size(), g.right_size());
    let mk = |edges: Vec<(usize, usize)>, map: Vec<Vertex>| Certificate {
        kind: CertificateKind::Rainbow,
        claim: Claim::Rainbow(pattern),
        color: None,
        edges,
        vertex_map: map,
    };
    match pattern {
        RainbowPattern::K13 => {
            for u in 0..a {
                if let Some(vs) = three_distinct_positions(g.row(u)) {
                    let edges = vs.iter().map(|&v| (u, v)).collect();
                    let map = vec![Vertex::left(u), Vertex::right(vs[0]), Vertex::right(vs[1]), Vertex::right(vs[2])];
                    return Some(mk(edges, map));
                }
            }
            for v in 0..b {
                let col: Vec<Color> = (0..a).map(|u| g.color(u, v)).collect();
                if let Some(us) = three_distinct_positions(&col) {
                    let edges = us.iter().map(|&u| (u, v)).collect();
                    let map = vec![Vertex::right(v), Vertex::left(us[0]), Vertex::left(us[1]), Vertex::left(us[2])];
                    return Some(mk(edges, map));
                }
            }
            None
        }
        RainbowPattern::P4 => {
            // u1-v1-u2-v2; mirrored copies are reversals of these.
            for u1 in 0..a {
                for v1 in 0..b {
                    let c1 = g.color(u1, v1);
                    for u2 in 0..a {
                        if u2 == u1 {
                            continue;
                        }
                        let c2 = g.color(u2, v1);
                        if c2 == c1 {
                            continue;
                        }
                        for v2 in 0..b {
                            if v2 == v1 {
                                continue;
                            }
                            let c3 = g.color(u2, v2);
                            if c3 != c1 && c3 != c2 {
                                return Some(mk(
                                    vec![(u1, v1), (u2, v1), (u2, v2)],
                                    vec![Vertex::left(u1), Vertex::right(v1), Vertex::left(u2), Vertex::right(v2)],
                                ));
                            }
                        }
                    }
                }
            }
            None
        }
        RainbowPattern::P5 => {
            // u1-v1-u2-v2-u3 (three left vertices)
            for u1 in 0..a {
                for v1 in 0..b {
                    let c1 = g.color(u1, v1);
                    for u2 in 0..a {
                        if u2 == u1 {
                            continue;
                        }
                        let c2 = g.color(u2, v1);
                        if c2 == c1 {
                            continue;
                        }
                        for v2 in 0..b {
                            if v2 == v1 {
                                continue;
                            }
                            let c3 = g.color(u2, v2);
                            if c3 == c1 || c3 == c2 {
                                continue;
                            }
                            for u3 in 0..a {
                                if u3 == u1 || u3 == u2 {
                                    continue;
                                }
                                let c4 = g.color(u3, v2);
                                if c4 != c1 && c4 != c2 && c4 != c3 {
                                    return Some(mk(
                                        vec![(u1, v1), (u2, v1), (u2, v2), (u3, v2)],
                                        vec![
                                            Vertex::left(u1),
                                            Vertex::right(v1),
                                            Vertex::left(u2),
                                            Vertex::right(v2),
                                            Vertex::left(u3),
                                        ],
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            // v1-u1-v2-u2-v3 (three right vertices)
            for v1 in 0..b {
                for u1 in 0..a {
                    let c1 = g.color(u1, v1);
                    for v2 in 0..b {
                        if v2 == v1 {
                            continue;
                        }
                        let c2 = g.color(u1, v2);
                        if c2 == c1 {
                            continue;
                        }
                        for u2 in 0..a {
                            if u2 == u1 {
                                continue;
                            }
                            let c3 = g.color(u2, v2);
                            if c3 == c1 || c3 == c2 {
                                continue;
                            }
                            for v3 in 0..b {
                                if v3 == v1 || v3 == v2 {
                                    continue;
                                }
                                let c4 = g.color(u2, v3);
                                if c4 != c1 && c4 != c2 && c4 != c3 {
                                    return Some(mk(
                                        vec![(u1, v1), (u1, v2), (u2, v2), (u2, v3)],
                                        vec![
                                            Vertex::right(v1),
                                            Vertex::left(u1),
                                            Vertex::right(v2),
                                            Vertex::left(u2),
                                            Vertex::right(v3),
                                        ],
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            None
        }
    }
}

fn three_distinct_positions(colors: &[Color]) -> Option<[usize; 3]> {
    for i in 0..colors.len() {
        for j in i + 1..colors.len() {
            if colors[j] == colors[i] {
                continue;
            }
            for l in j + 1..colors.len() {
                if colors[l] != colors[i] && colors[l] != colors[j] {
                    return Some([i, j, l]);
                }
            }
        }
    }
    None
}

// ----- monochromatic detection ----------------------------------------------

/// Search each color class, in increasing color order, for an embedding of
/// `target`. Returns the first hit as a certificate.
pub fn find_monochromatic(g: &ColoredBigraph, target: &TargetGraph) -> Option<Certificate> {
    for color in 1..=g.declared_colors() {
        let host = BipartiteHost::color_class(g, color);
        let (l, r) = host.occupied();
        if !biclique_contains(l, r, target) {
            continue;
        }
        if let Some(map) = embed(target, &host) {
            return Some(mono_certificate(target, color, map));
        }
    }
    None
}

fn mono_certificate(target: &TargetGraph, color: Color, map: Vec<Vertex>) -> Certificate {
    let mut edges = Vec::new();
    let mut offset = 0;
    for comp in target.components() {
        for (x, y) in comp.abstract_edges() {
            let (vx, vy) = (map[offset + x], map[offset + y]);
            let (u, v) = match vx.side {
                Side::Left => (vx.index, vy.index),
                Side::Right => (vy.index, vx.index),
            };
            edges.push((u, v));
        }
        offset += comp.vertex_count();
    }
    Certificate {
        kind: CertificateKind::Monochromatic,
        claim: Claim::Monochromatic(target.clone()),
        color: Some(color),
        edges,
        vertex_map: map,
    }
}

// ----- analytic containment --------------------------------------------------

/// Does K_{a,b} contain `target`? Each component occupies its footprint in
/// one of two orientations; containment reduces to a subset-sum over the
/// orientation choices.
pub fn biclique_contains(a: usize, b: usize, target: &TargetGraph) -> bool {
    let mut reach = vec![vec![false; b + 1]; a + 1];
    reach[0][0] = true;
    for comp in target.components() {
        let (x, y) = comp.footprint();
        let mut next = vec![vec![false; b + 1]; a + 1];
        for i in 0..=a {
            for j in 0..=b {
                if !reach[i][j] {
                    continue;
                }
                if i + x <= a && j + y <= b {
                    next[i + x][j + y] = true;
                }
                if i + y <= a && j + x <= b {
                    next[i + y][j + x] = true;
                }
            }
        }
        reach = next;
    }
    reach.iter().any(|row| row.iter().any(|&r| r))
}
