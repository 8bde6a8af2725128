//! Classifiers mapping a rainbow-free coloring of K_{n,n} to a case of the
//! P4, P5 or K13 structure theorem, emitting an independently checkable
//! witness.
//!
//! Cases overlap, so classification uses a fixed priority a < b < c < d < e
//! with the unswapped orientation tried first; the first matching case wins.
//! The two sporadic P5 cases are single isomorphism classes and are matched
//! by canonical-form equality against the stored colorings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bigraph::{Color, ColorSet, ColoredBigraph, Vertex};
use crate::certificate::Certificate;
use crate::constructions::{sporadic_p5, SporadicP5};
use crate::patterns::find_rainbow;
use crate::search::canonical::canonical_form;
use crate::target::RainbowPattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StructureTheorem {
    /// Rainbow-P4-free structure.
    T13,
    /// Rainbow-P5-free structure.
    T14,
    /// Rainbow-K13-free structure.
    T21,
}

impl StructureTheorem {
    pub fn parse(s: &str) -> Option<StructureTheorem> {
        match s.to_ascii_uppercase().as_str() {
            "T13" => Some(StructureTheorem::T13),
            "T14" => Some(StructureTheorem::T14),
            "T21" => Some(StructureTheorem::T21),
            _ => None,
        }
    }

    pub fn pattern(self) -> RainbowPattern {
        match self {
            StructureTheorem::T13 => RainbowPattern::P4,
            StructureTheorem::T14 => RainbowPattern::P5,
            StructureTheorem::T21 => RainbowPattern::K13,
        }
    }

    /// Smallest n the theorem speaks about.
    pub fn min_n(self) -> usize {
        match self {
            StructureTheorem::T13 => 2,
            StructureTheorem::T14 | StructureTheorem::T21 => 3,
        }
    }
}

impl std::fmt::Display for StructureTheorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseLabel {
    A,
    B,
    C,
    D,
    E,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseLabel::A => "a",
            CaseLabel::B => "b",
            CaseLabel::C => "c",
            CaseLabel::D => "d",
            CaseLabel::E => "e",
        };
        f.write_str(s)
    }
}

/// Per-case color data of a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "colors", rename_all = "kebab-case")]
pub enum CaseColors {
    /// One color per part, in part order. T13(b): row parts; T14(b): column
    /// parts, first entry the base color.
    PartColors(Vec<Color>),
    /// Diagonal-block cases T14(c)/T21(b): part i may use {base, color_i};
    /// entry 0 is the base color itself.
    DiagonalPairs { part_colors: Vec<Color> },
    /// T21(c): the (at most two) colors each part is incident with.
    PartPalettes { u: Vec<Vec<Color>>, v: Vec<Vec<Color>> },
    /// T21(d)/(e): the renumbering, i.e. the actual colors playing the
    /// theorem's roles 1,2,3,4.
    ColorOrder([Color; 4]),
}

/// A partition witness certifying one case of a structure theorem.
///
/// Partitions are written in the theorem's orientation: when `swapped` is
/// set, the theorem's U is the graph's right side and verification runs on
/// the transpose.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StructureWitness {
    pub theorem: StructureTheorem,
    pub case: CaseLabel,
    pub swapped: bool,
    pub u_partition: Vec<Vec<usize>>,
    pub v_partition: Option<Vec<Vec<usize>>>,
    pub base_color: Option<Color>,
    pub color_assignment: CaseColors,
}

/// Result of classifying one coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// The coloring contains the forbidden rainbow pattern; the certificate
    /// exhibits a copy.
    NotApplicable(Box<Certificate>),
    Case { label: CaseLabel, witness: Option<StructureWitness> },
}

impl Classification {
    pub fn case(label: CaseLabel) -> Classification {
        Classification::Case { label, witness: None }
    }

    pub fn with_witness(w: StructureWitness) -> Classification {
        Classification::Case { label: w.case, witness: Some(w) }
    }

    pub fn label(&self) -> Option<CaseLabel> {
        match self {
            Classification::Case { label, .. } => Some(*label),
            Classification::NotApplicable(_) => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("classifier needs a square coloring, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("classifier needs n >= {min}, got {got}")]
    TooSmall { min: usize, got: usize },
    #[error("classifier needs an exact coloring ({used} of {declared} colors used)")]
    NotExact { used: usize, declared: u16 },
    #[error("no case of {0} matches; the coloring is a counterexample")]
    NoCaseMatched(StructureTheorem),
    #[error("malformed witness: {0}")]
    MalformedWitness(String),
    #[error(transparent)]
    Search(#[from] crate::search::SearchError),
}

fn validate_input(g: &ColoredBigraph, min_n: usize) -> Result<(), StructureError> {
    if !g.is_square() {
        return Err(StructureError::NotSquare(g.left_size(), g.right_size()));
    }
    if g.left_size() < min_n {
        return Err(StructureError::TooSmall { min: min_n, got: g.left_size() });
    }
    if !g.is_exact() {
        return Err(StructureError::NotExact { used: g.used_count(), declared: g.declared_colors() });
    }
    Ok(())
}

// ----- classifiers -----------------------------------------------------------

/// Theorem T13: a rainbow-P4-free exact coloring uses at most two colors (a)
/// or one side splits into constant-color blocks (b).
pub fn classify_p4_free(g: &ColoredBigraph) -> Result<Classification, StructureError> {
    validate_input(g, 2)?;
    if g.used_count() <= 2 {
        // a rainbow P4 needs three colors, so (a) colorings are rainbow-free
        return Ok(Classification::case(CaseLabel::A));
    }
    if let Some(cert) = find_rainbow(g, RainbowPattern::P4) {
        return Ok(Classification::NotApplicable(Box::new(cert)));
    }
    for swapped in [false, true] {
        let view = orient(g, swapped);
        if let Some(w) = match_t13_row_blocks(&view, swapped) {
            return Ok(Classification::with_witness(w));
        }
    }
    Err(StructureError::NoCaseMatched(StructureTheorem::T13))
}

/// Theorem T14: rainbow-P5-free structure with cases (a)-(e).
pub fn classify_p5_free(g: &ColoredBigraph) -> Result<Classification, StructureError> {
    validate_input(g, 3)?;
    if g.used_count() <= 3 {
        // a rainbow P5 needs four colors
        return Ok(Classification::case(CaseLabel::A));
    }
    if let Some(cert) = find_rainbow(g, RainbowPattern::P5) {
        return Ok(Classification::NotApplicable(Box::new(cert)));
    }
    for swapped in [false, true] {
        let view = orient(g, swapped);
        if let Some(w) = match_t14_split(&view, swapped) {
            return Ok(Classification::with_witness(w));
        }
    }
    if let Some(w) = match_diagonal_pairs(g, StructureTheorem::T14, CaseLabel::C) {
        return Ok(Classification::with_witness(w));
    }
    let n = g.left_size();
    if g.used_count() == 4 && (n == 3 || n == 4) {
        let sporadic = sporadic_p5(if n == 3 { SporadicP5::N3 } else { SporadicP5::N4 });
        if canonical_form(g)? == canonical_form(&sporadic)? {
            return Ok(Classification::case(if n == 3 { CaseLabel::D } else { CaseLabel::E }));
        }
    }
    Err(StructureError::NoCaseMatched(StructureTheorem::T14))
}

/// Theorem T21: rainbow-K13-free structure with cases (a)-(e).
pub fn classify_k13_free(g: &ColoredBigraph) -> Result<Classification, StructureError> {
    validate_input(g, 3)?;
    if g.used_count() <= 2 {
        return Ok(Classification::case(CaseLabel::A));
    }
    if let Some(cert) = find_rainbow(g, RainbowPattern::K13) {
        return Ok(Classification::NotApplicable(Box::new(cert)));
    }
    // From here every vertex palette has at most 2 colors.
    if let Some(w) = match_diagonal_pairs(g, StructureTheorem::T21, CaseLabel::B) {
        return Ok(Classification::with_witness(w));
    }
    if g.used_count() == 3 {
        return Ok(Classification::with_witness(match_three_color_parts(g)));
    }
    if g.used_count() == 4 {
        for swapped in [false, true] {
            let view = orient(g, swapped);
            if let Some(w) = match_star_four(&view, swapped) {
                return Ok(Classification::with_witness(w));
            }
        }
        for swapped in [false, true] {
            let view = orient(g, swapped);
            if let Some(w) = match_two_by_four(&view, swapped) {
                return Ok(Classification::with_witness(w));
            }
        }
    }
    Err(StructureError::NoCaseMatched(StructureTheorem::T21))
}

/// Classify under the given theorem.
pub fn classify(g: &ColoredBigraph, theorem: StructureTheorem) -> Result<Classification, StructureError> {
    match theorem {
        StructureTheorem::T13 => classify_p4_free(g),
        StructureTheorem::T14 => classify_p5_free(g),
        StructureTheorem::T21 => classify_k13_free(g),
    }
}

fn orient(g: &ColoredBigraph, swapped: bool) -> ColoredBigraph {
    if swapped {
        g.transpose()
    } else {
        g.clone()
    }
}

/// T13(b): every row constant, rows grouped by color.
fn match_t13_row_blocks(g: &ColoredBigraph, swapped: bool) -> Option<StructureWitness> {
    let n = g.left_size();
    let mut row_color = Vec::with_capacity(n);
    for u in 0..n {
        let row = g.row(u);
        if row.iter().any(|&c| c != row[0]) {
            return None;
        }
        row_color.push(row[0]);
    }
    let colors = g.used_colors().to_vec();
    let parts: Vec<Vec<usize>> = colors
        .iter()
        .map(|&c| (0..n).filter(|&u| row_color[u] == c).collect())
        .collect();
    Some(StructureWitness {
        theorem: StructureTheorem::T13,
        case: CaseLabel::B,
        swapped,
        u_partition: parts,
        v_partition: None,
        base_color: None,
        color_assignment: CaseColors::PartColors(colors),
    })
}

/// T14(b): U splits into U_1 (identical non-constant rows) and U_2 (rows
/// constant in the base color); columns split by the color U_1 sees.
fn match_t14_split(g: &ColoredBigraph, swapped: bool) -> Option<StructureWitness> {
    let n = g.left_size();
    let used = g.used_colors();
    for base in used.iter() {
        let (mut u1, mut u2) = (Vec::new(), Vec::new());
        for u in 0..n {
            if g.row(u).iter().all(|&c| c == base) {
                u2.push(u);
            } else {
                u1.push(u);
            }
        }
        if u1.is_empty() {
            continue;
        }
        let w = g.row(u1[0]);
        if u1[1..].iter().any(|&u| g.row(u) != w) {
            continue;
        }
        let w_colors: ColorSet = w.iter().copied().collect();
        let mut covered = w_colors;
        if !u2.is_empty() {
            covered.insert(base);
        }
        if covered != used {
            continue;
        }
        let mut v_parts = vec![(0..n).filter(|&v| w[v] == base).collect::<Vec<_>>()];
        let mut part_colors = vec![base];
        for c in used.iter().filter(|&c| c != base) {
            v_parts.push((0..n).filter(|&v| w[v] == c).collect());
            part_colors.push(c);
        }
        return Some(StructureWitness {
            theorem: StructureTheorem::T14,
            case: CaseLabel::B,
            swapped,
            u_partition: vec![u1, u2],
            v_partition: Some(v_parts),
            base_color: Some(base),
            color_assignment: CaseColors::PartColors(part_colors),
        });
    }
    None
}

/// The shared diagonal shape of T14(c) and T21(b): for some base color,
/// every vertex sees at most one other color; grouping vertices by that
/// color gives blocks E(U_i,V_i) in {base, i} with base everywhere else.
fn match_diagonal_pairs(
    g: &ColoredBigraph,
    theorem: StructureTheorem,
    case: CaseLabel,
) -> Option<StructureWitness> {
    let n = g.left_size();
    let used = g.used_colors();
    'base: for base in used.iter() {
        let mut row_extra = Vec::with_capacity(n);
        let mut col_extra = Vec::with_capacity(n);
        for u in 0..n {
            let extra = g.palette(Vertex::left(u)).minus(ColorSet::single(base));
            if extra.len() > 1 {
                continue 'base;
            }
            row_extra.push(extra.iter().next());
        }
        for v in 0..n {
            let extra = g.palette(Vertex::right(v)).minus(ColorSet::single(base));
            if extra.len() > 1 {
                continue 'base;
            }
            col_extra.push(extra.iter().next());
        }
        let others: Vec<Color> = used.iter().filter(|&c| c != base).collect();
        let mut u_parts = vec![(0..n).filter(|&u| row_extra[u].is_none()).collect::<Vec<_>>()];
        let mut v_parts = vec![(0..n).filter(|&v| col_extra[v].is_none()).collect::<Vec<_>>()];
        let mut part_colors = vec![base];
        for &c in &others {
            u_parts.push((0..n).filter(|&u| row_extra[u] == Some(c)).collect());
            v_parts.push((0..n).filter(|&v| col_extra[v] == Some(c)).collect());
            part_colors.push(c);
        }
        return Some(StructureWitness {
            theorem,
            case,
            swapped: false,
            u_partition: u_parts,
            v_partition: Some(v_parts),
            base_color: Some(base),
            color_assignment: CaseColors::DiagonalPairs { part_colors },
        });
    }
    None
}

/// T21(c): with exactly three colors and all palettes of size at most two,
/// each side can always be split into three parts spanning at most two
/// colors each.
fn match_three_color_parts(g: &ColoredBigraph) -> StructureWitness {
    let used = g.used_colors().to_vec();
    let (x, y, z) = (used[0], used[1], used[2]);
    let n = g.left_size();
    let group = |palettes: Vec<ColorSet>| -> (Vec<Vec<usize>>, Vec<Vec<Color>>) {
        let pair_xy: ColorSet = [x, y].into_iter().collect();
        let pair_xz: ColorSet = [x, z].into_iter().collect();
        let mut parts = vec![Vec::new(), Vec::new(), Vec::new()];
        for (i, p) in palettes.iter().enumerate() {
            if p.is_subset_of(pair_xy) {
                parts[0].push(i);
            } else if p.is_subset_of(pair_xz) {
                parts[1].push(i);
            } else {
                parts[2].push(i);
            }
        }
        (parts, vec![vec![x, y], vec![x, z], vec![y, z]])
    };
    let (u_parts, u_pal) = group((0..n).map(|u| g.palette(Vertex::left(u))).collect());
    let (v_parts, v_pal) = group((0..n).map(|v| g.palette(Vertex::right(v))).collect());
    StructureWitness {
        theorem: StructureTheorem::T21,
        case: CaseLabel::C,
        swapped: false,
        u_partition: u_parts,
        v_partition: Some(v_parts),
        base_color: None,
        color_assignment: CaseColors::PartPalettes { u: u_pal, v: v_pal },
    }
}

fn permutations4(colors: [Color; 4]) -> Vec<[Color; 4]> {
    let mut out = Vec::with_capacity(24);
    let mut items = colors;
    permute(&mut items, 0, &mut out);
    out
}

fn permute(items: &mut [Color; 4], at: usize, out: &mut Vec<[Color; 4]>) {
    if at == 4 {
        out.push(*items);
        return;
    }
    for i in at..4 {
        items.swap(at, i);
        permute(items, at + 1, out);
        items.swap(at, i);
    }
}

/// T21(d): after renumbering, row palettes fit {1,2},{2,3},{1,4} and column
/// palettes fit {1,2},{1,3},{2,4}.
fn match_star_four(g: &ColoredBigraph, swapped: bool) -> Option<StructureWitness> {
    let n = g.left_size();
    let used: Vec<Color> = g.used_colors().to_vec();
    let [c1, c2, c3, c4] = [used[0], used[1], used[2], used[3]];
    let rows: Vec<ColorSet> = (0..n).map(|u| g.palette(Vertex::left(u))).collect();
    let cols: Vec<ColorSet> = (0..n).map(|v| g.palette(Vertex::right(v))).collect();
    for order in permutations4([c1, c2, c3, c4]) {
        let [p1, p2, p3, p4] = order;
        let u_pairs: [ColorSet; 3] = [
            [p1, p2].into_iter().collect(),
            [p2, p3].into_iter().collect(),
            [p1, p4].into_iter().collect(),
        ];
        let v_pairs: [ColorSet; 3] = [
            [p1, p2].into_iter().collect(),
            [p1, p3].into_iter().collect(),
            [p2, p4].into_iter().collect(),
        ];
        let assign = |palettes: &[ColorSet], pairs: &[ColorSet; 3]| -> Option<Vec<Vec<usize>>> {
            let mut parts = vec![Vec::new(), Vec::new(), Vec::new()];
            for (i, p) in palettes.iter().enumerate() {
                let slot = pairs.iter().position(|pair| p.is_subset_of(*pair))?;
                parts[slot].push(i);
            }
            Some(parts)
        };
        let (Some(u_parts), Some(v_parts)) = (assign(&rows, &u_pairs), assign(&cols, &v_pairs))
        else {
            continue;
        };
        return Some(StructureWitness {
            theorem: StructureTheorem::T21,
            case: CaseLabel::D,
            swapped,
            u_partition: u_parts,
            v_partition: Some(v_parts),
            base_color: None,
            color_assignment: CaseColors::ColorOrder(order),
        });
    }
    None
}

/// T21(e): exactly two distinct row vectors with disjoint two-color
/// palettes; columns split into the four palette combinations.
fn match_two_by_four(g: &ColoredBigraph, swapped: bool) -> Option<StructureWitness> {
    let n = g.left_size();
    let first = g.row(0).to_vec();
    let mut second: Option<Vec<Color>> = None;
    let (mut u1, mut u2) = (vec![0usize], Vec::new());
    for u in 1..n {
        let row = g.row(u);
        if row == first.as_slice() {
            u1.push(u);
        } else {
            match &second {
                None => {
                    second = Some(row.to_vec());
                    u2.push(u);
                }
                Some(s) if row == s.as_slice() => u2.push(u),
                Some(_) => return None,
            }
        }
    }
    let second = second?;
    let pal1: ColorSet = first.iter().copied().collect();
    let pal2: ColorSet = second.iter().copied().collect();
    if pal1.len() != 2 || pal2.len() != 2 || pal1.iter().any(|c| pal2.contains(c)) {
        return None;
    }
    let p1 = pal1.to_vec();
    let p2 = pal2.to_vec();
    let (c1, c4, c2, c3) = (p1[0], p1[1], p2[0], p2[1]);
    let mut v_parts = vec![Vec::new(), Vec::new(), Vec::new(), Vec::new()];
    for v in 0..n {
        let slot = match (first[v] == c1, second[v] == c2) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
        };
        v_parts[slot].push(v);
    }
    Some(StructureWitness {
        theorem: StructureTheorem::T21,
        case: CaseLabel::E,
        swapped,
        u_partition: vec![u1, u2],
        v_partition: Some(v_parts),
        base_color: None,
        color_assignment: CaseColors::ColorOrder([c1, c2, c3, c4]),
    })
}

// ----- witness verification ---------------------------------------------------

/// Check that every edge of `g` obeys the witness's case constraints.
/// `Ok(false)` means a well-formed witness whose constraints fail;
/// `Err` means the witness shape itself is invalid for its case.
pub fn verify_witness(g: &ColoredBigraph, w: &StructureWitness) -> Result<bool, StructureError> {
    let view = orient(g, w.swapped);
    let n = view.left_size();
    if !view.is_square() {
        return Err(StructureError::NotSquare(view.left_size(), view.right_size()));
    }
    check_partition(&w.u_partition, n, "uPartition")?;
    if let Some(vp) = &w.v_partition {
        check_partition(vp, n, "vPartition")?;
    }
    let used = view.used_colors();
    let part_of = |parts: &[Vec<usize>]| {
        let mut owner = vec![0usize; n];
        for (i, part) in parts.iter().enumerate() {
            for &x in part {
                owner[x] = i;
            }
        }
        owner
    };
    match (w.theorem, w.case) {
        (StructureTheorem::T13, CaseLabel::B) => {
            let CaseColors::PartColors(colors) = &w.color_assignment else {
                return Err(StructureError::MalformedWitness("T13(b) needs PartColors".into()));
            };
            if colors.len() != w.u_partition.len() {
                return Err(StructureError::MalformedWitness("one color per part".into()));
            }
            let distinct: ColorSet = colors.iter().copied().collect();
            if distinct.len() != colors.len() || distinct != used {
                return Ok(false);
            }
            if w.u_partition.iter().any(Vec::is_empty) {
                return Ok(false);
            }
            for (part, &c) in w.u_partition.iter().zip(colors) {
                for &u in part {
                    if view.row(u).iter().any(|&x| x != c) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        (StructureTheorem::T14, CaseLabel::B) => {
            let CaseColors::PartColors(colors) = &w.color_assignment else {
                return Err(StructureError::MalformedWitness("T14(b) needs PartColors".into()));
            };
            let Some(v_parts) = &w.v_partition else {
                return Err(StructureError::MalformedWitness("T14(b) needs a column partition".into()));
            };
            if w.u_partition.len() != 2 || colors.len() != v_parts.len() {
                return Err(StructureError::MalformedWitness("T14(b) arity".into()));
            }
            let base = match w.base_color {
                Some(b) if b == colors[0] => b,
                _ => return Err(StructureError::MalformedWitness("base must equal first part color".into())),
            };
            let distinct: ColorSet = colors.iter().copied().collect();
            if distinct.len() != colors.len() || distinct != used {
                return Ok(false);
            }
            if w.u_partition[0].is_empty() || v_parts[1..].iter().any(Vec::is_empty) {
                return Ok(false);
            }
            for (part, &c) in v_parts.iter().zip(colors) {
                for &v in part {
                    for &u in &w.u_partition[0] {
                        if view.color(u, v) != c {
                            return Ok(false);
                        }
                    }
                }
            }
            for &u in &w.u_partition[1] {
                if view.row(u).iter().any(|&x| x != base) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (StructureTheorem::T14, CaseLabel::C) | (StructureTheorem::T21, CaseLabel::B) => {
            let CaseColors::DiagonalPairs { part_colors } = &w.color_assignment else {
                return Err(StructureError::MalformedWitness("diagonal case needs DiagonalPairs".into()));
            };
            let Some(v_parts) = &w.v_partition else {
                return Err(StructureError::MalformedWitness("diagonal case needs both partitions".into()));
            };
            if part_colors.len() != w.u_partition.len() || v_parts.len() != w.u_partition.len() {
                return Err(StructureError::MalformedWitness("diagonal case arity".into()));
            }
            let base = match w.base_color {
                Some(b) if b == part_colors[0] => b,
                _ => return Err(StructureError::MalformedWitness("base must equal first part color".into())),
            };
            let distinct: ColorSet = part_colors.iter().copied().collect();
            if distinct.len() != part_colors.len() || distinct != used {
                return Ok(false);
            }
            if w.u_partition[1..].iter().any(Vec::is_empty) || v_parts[1..].iter().any(Vec::is_empty) {
                return Ok(false);
            }
            let u_owner = part_of(&w.u_partition);
            let v_owner = part_of(v_parts);
            for u in 0..n {
                for v in 0..n {
                    let c = view.color(u, v);
                    let ok = if u_owner[u] == v_owner[v] {
                        c == base || c == part_colors[u_owner[u]]
                    } else {
                        c == base
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        (StructureTheorem::T21, CaseLabel::C) => {
            let CaseColors::PartPalettes { u: u_pal, v: v_pal } = &w.color_assignment else {
                return Err(StructureError::MalformedWitness("T21(c) needs PartPalettes".into()));
            };
            let Some(v_parts) = &w.v_partition else {
                return Err(StructureError::MalformedWitness("T21(c) needs both partitions".into()));
            };
            if w.u_partition.len() != 3 || v_parts.len() != 3 {
                return Err(StructureError::MalformedWitness("T21(c) needs 3+3 parts".into()));
            }
            if u_pal.len() != 3 || v_pal.len() != 3 {
                return Err(StructureError::MalformedWitness("T21(c) needs palettes per part".into()));
            }
            if used.len() > 3 || u_pal.iter().chain(v_pal).any(|p| p.len() > 2) {
                return Ok(false);
            }
            let check = |parts: &[Vec<usize>], pals: &[Vec<Color>], is_rows: bool| -> bool {
                parts.iter().zip(pals).all(|(part, pal)| {
                    let allowed: ColorSet = pal.iter().copied().collect();
                    part.iter().all(|&i| {
                        let p = if is_rows {
                            view.palette(Vertex::left(i))
                        } else {
                            view.palette(Vertex::right(i))
                        };
                        p.is_subset_of(allowed)
                    })
                })
            };
            Ok(check(&w.u_partition, u_pal, true) && check(v_parts, v_pal, false))
        }
        (StructureTheorem::T21, CaseLabel::D) => {
            let CaseColors::ColorOrder([p1, p2, p3, p4]) = w.color_assignment else {
                return Err(StructureError::MalformedWitness("T21(d) needs ColorOrder".into()));
            };
            let Some(v_parts) = &w.v_partition else {
                return Err(StructureError::MalformedWitness("T21(d) needs both partitions".into()));
            };
            if w.u_partition.len() != 3 || v_parts.len() != 3 {
                return Err(StructureError::MalformedWitness("T21(d) needs 3+3 parts".into()));
            }
            let order: ColorSet = [p1, p2, p3, p4].into_iter().collect();
            if order.len() != 4 || !used.is_subset_of(order) {
                return Ok(false);
            }
            let u_pairs: [ColorSet; 3] = [
                [p1, p2].into_iter().collect(),
                [p2, p3].into_iter().collect(),
                [p1, p4].into_iter().collect(),
            ];
            let v_pairs: [ColorSet; 3] = [
                [p1, p2].into_iter().collect(),
                [p1, p3].into_iter().collect(),
                [p2, p4].into_iter().collect(),
            ];
            let ok_u = w.u_partition.iter().zip(&u_pairs).all(|(part, pair)| {
                part.iter().all(|&u| view.palette(Vertex::left(u)).is_subset_of(*pair))
            });
            let ok_v = v_parts.iter().zip(&v_pairs).all(|(part, pair)| {
                part.iter().all(|&v| view.palette(Vertex::right(v)).is_subset_of(*pair))
            });
            Ok(ok_u && ok_v)
        }
        (StructureTheorem::T21, CaseLabel::E) => {
            let CaseColors::ColorOrder([c1, c2, c3, c4]) = w.color_assignment else {
                return Err(StructureError::MalformedWitness("T21(e) needs ColorOrder".into()));
            };
            let Some(v_parts) = &w.v_partition else {
                return Err(StructureError::MalformedWitness("T21(e) needs both partitions".into()));
            };
            if w.u_partition.len() != 2 || v_parts.len() != 4 {
                return Err(StructureError::MalformedWitness("T21(e) needs 2+4 parts".into()));
            }
            // block colors: (U1,V1/V2)=c1, (U1,V3/V4)=c4, (U2,V1/V3)=c2, (U2,V2/V4)=c3
            let expected = |ui: usize, vi: usize| -> Color {
                match (ui, vi) {
                    (0, 0) | (0, 1) => c1,
                    (0, _) => c4,
                    (_, 0) | (_, 2) => c2,
                    (_, _) => c3,
                }
            };
            for (ui, upart) in w.u_partition.iter().enumerate() {
                for &u in upart {
                    for (vi, vpart) in v_parts.iter().enumerate() {
                        for &v in vpart {
                            if view.color(u, v) != expected(ui, vi) {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
            Ok(true)
        }
        (t, c) => Err(StructureError::MalformedWitness(format!("{t} has no witness case {c}"))),
    }
}

fn check_partition(parts: &[Vec<usize>], n: usize, name: &str) -> Result<(), StructureError> {
    let mut seen = vec![false; n];
    let mut count = 0;
    for part in parts {
        for &x in part {
            if x >= n || seen[x] {
                return Err(StructureError::MalformedWitness(format!(
                    "{name} is not a partition of 0..{n}"
                )));
            }
            seen[x] = true;
            count += 1;
        }
    }
    if count != n {
        return Err(StructureError::MalformedWitness(format!("{name} does not cover 0..{n}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{col_blocks, diagonal, row_blocks};

    fn assert_case(c: &Classification, label: CaseLabel) {
        assert_eq!(c.label(), Some(label), "got {c:?}");
    }

    #[test]
    fn p4_constant_coloring_is_case_a() {
        let g = ColoredBigraph::constant(3, 3, 1, 1).unwrap();
        assert_case(&classify_p4_free(&g).unwrap(), CaseLabel::A);
    }

    #[test]
    fn p4_row_blocks_is_case_b_with_verified_witness() {
        let g = row_blocks(6, 3, &[2, 2, 2]).unwrap();
        let c = classify_p4_free(&g).unwrap();
        assert_case(&c, CaseLabel::B);
        let Classification::Case { witness: Some(w), .. } = &c else { panic!() };
        assert!(!w.swapped);
        assert!(verify_witness(&g, w).unwrap());
    }

    #[test]
    fn p4_col_blocks_classifies_via_swap() {
        let g = col_blocks(6, 3, &[2, 2, 2]).unwrap();
        let c = classify_p4_free(&g).unwrap();
        let Classification::Case { witness: Some(w), .. } = &c else { panic!() };
        assert!(w.swapped);
        assert!(verify_witness(&g, w).unwrap());
    }

    #[test]
    fn p4_rainbow_coloring_is_not_applicable() {
        let g = ColoredBigraph::from_rows(
            3,
            &[vec![1, 2, 1], vec![3, 1, 1], vec![1, 1, 1]],
        )
        .unwrap();
        let c = classify_p4_free(&g).unwrap();
        let Classification::NotApplicable(cert) = c else { panic!("expected rainbow") };
        assert_eq!(cert.check(&g), Ok(()));
    }

    #[test]
    fn p4_rejects_non_square_and_tiny_inputs() {
        let g = ColoredBigraph::constant(2, 3, 1, 1).unwrap();
        assert!(matches!(classify_p4_free(&g), Err(StructureError::NotSquare(2, 3))));
        let g = ColoredBigraph::constant(1, 1, 1, 1).unwrap();
        assert!(matches!(classify_p4_free(&g), Err(StructureError::TooSmall { .. })));
        let g = ColoredBigraph::constant(2, 2, 2, 1).unwrap();
        assert!(matches!(classify_p4_free(&g), Err(StructureError::NotExact { .. })));
    }

    #[test]
    fn p5_three_colors_is_case_a() {
        let g = row_blocks(3, 3, &[1, 1, 1]).unwrap();
        assert_case(&classify_p5_free(&g).unwrap(), CaseLabel::A);
    }

    #[test]
    fn p5_split_coloring_is_case_b() {
        // U_1 = {0}, U_2 = {1,2}: row 0 carries colors 1..4, others constant 1.
        let g = ColoredBigraph::from_rows(
            4,
            &[vec![1, 2, 3, 4], vec![1, 1, 1, 1], vec![1, 1, 1, 1], vec![1, 1, 1, 1]],
        )
        .unwrap();
        let c = classify_p5_free(&g).unwrap();
        assert_case(&c, CaseLabel::B);
        let Classification::Case { witness: Some(w), .. } = &c else { panic!() };
        assert!(verify_witness(&g, w).unwrap());
        assert_eq!(w.base_color, Some(1));
    }

    #[test]
    fn p5_diagonal_coloring_is_case_c() {
        let g = diagonal(4, 5, &[1, 1, 1, 1], &[1, 1, 1, 1], 1).unwrap();
        let c = classify_p5_free(&g).unwrap();
        assert_case(&c, CaseLabel::C);
        let Classification::Case { witness: Some(w), .. } = &c else { panic!() };
        assert!(verify_witness(&g, w).unwrap());
    }

    #[test]
    fn p5_sporadic_colorings_hit_cases_d_and_e() {
        let g3 = sporadic_p5(SporadicP5::N3);
        assert_case(&classify_p5_free(&g3).unwrap(), CaseLabel::D);
        let g4 = sporadic_p5(SporadicP5::N4);
        assert_case(&classify_p5_free(&g4).unwrap(), CaseLabel::E);
    }

    #[test]
    fn p5_sporadic_matches_relabeled_transposed_copies() {
        // transpose + color swap (1 2) keeps the isomorphism class
        let g = sporadic_p5(SporadicP5::N3).transpose();
        let cells: Vec<Color> = g
            .cells()
            .iter()
            .map(|&c| match c {
                1 => 2,
                2 => 1,
                other => other,
            })
            .collect();
        let g = ColoredBigraph::new(3, 3, 4, cells).unwrap();
        assert_case(&classify_p5_free(&g).unwrap(), CaseLabel::D);
    }

    #[test]
    fn k13_two_colors_is_case_a() {
        let g = ColoredBigraph::from_rows(2, &[vec![2, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        assert_case(&classify_k13_free(&g).unwrap(), CaseLabel::A);
    }

    #[test]
    fn k13_diagonal_is_case_b() {
        // c(U_i,V_i) = i+1 off a base color 1
        let g = diagonal(6, 5, &[2, 2, 1, 1], &[2, 2, 1, 1], 1).unwrap();
        let c = classify_k13_free(&g).unwrap();
        assert_case(&c, CaseLabel::B);
        let Classification::Case { witness: Some(w), .. } = &c else { panic!() };
        assert_eq!(w.base_color, Some(1));
        assert!(verify_witness(&g, w).unwrap());
    }

    #[test]
    fn k13_three_colors_is_case_c_unless_diagonal() {
        // rows with palettes {1,2},{1,3},{2,3}: no single base color works,
        // so this is case (c) and not (b).
        let g = ColoredBigraph::from_rows(
            3,
            &[vec![1, 2, 2], vec![1, 3, 3], vec![3, 2, 3]],
        )
        .unwrap();
        assert!(find_rainbow(&g, RainbowPattern::K13).is_none());
        let c = classify_k13_free(&g).unwrap();
        assert_case(&c, CaseLabel::C);
        let Classification::Case { witness: Some(w), .. } = &c else { panic!() };
        assert!(verify_witness(&g, w).unwrap());
    }

    #[test]
    fn k13_palette_shape_is_case_d() {
        // the proof's Case 1 shape: U palettes {1,4},{2,3},{1,2},
        // V palettes {1,3},{2,4},{1,2}
        let g = ColoredBigraph::from_rows(
            4,
            &[vec![1, 4, 1], vec![3, 2, 2], vec![1, 2, 2]],
        )
        .unwrap();
        assert!(find_rainbow(&g, RainbowPattern::K13).is_none());
        let c = classify_k13_free(&g).unwrap();
        assert_case(&c, CaseLabel::D);
        let Classification::Case { witness: Some(w), .. } = &c else { panic!() };
        assert!(verify_witness(&g, w).unwrap());
    }

    #[test]
    fn k13_two_row_types_is_case_d_or_e_and_verifies() {
        // rows alternate between palette {1,4} and {2,3} vectors
        let g = ColoredBigraph::from_rows(
            4,
            &[vec![1, 1, 4], vec![2, 2, 3], vec![1, 1, 4]],
        )
        .unwrap();
        let c = classify_k13_free(&g).unwrap();
        let Classification::Case { witness: Some(w), label } = &c else { panic!() };
        assert!(*label == CaseLabel::D || *label == CaseLabel::E);
        assert!(verify_witness(&g, w).unwrap());
    }

    #[test]
    fn verify_witness_rejects_tampered_partition() {
        let g = diagonal(6, 5, &[2, 2, 1, 1], &[2, 2, 1, 1], 1).unwrap();
        let c = classify_k13_free(&g).unwrap();
        let Classification::Case { witness: Some(w), .. } = c else { panic!() };
        let mut bad = w.clone();
        // swap two parts between colors
        bad.u_partition.swap(1, 2);
        assert!(!verify_witness(&g, &bad).unwrap());
        // malformed: drop a vertex
        let mut malformed = w;
        malformed.u_partition[1].clear();
        assert!(verify_witness(&g, &malformed).is_err());
    }

    #[test]
    fn transpose_classifies_to_the_same_label() {
        for g in [
            row_blocks(4, 4, &[1, 1, 1, 1]).unwrap(),
            diagonal(5, 4, &[2, 2, 1], &[1, 2, 2], 4).unwrap(),
            sporadic_p5(SporadicP5::N3),
        ] {
            let l1 = classify_p5_free(&g).unwrap().label();
            let l2 = classify_p5_free(&g.transpose()).unwrap().label();
            assert_eq!(l1, l2);
        }
    }
}
