//! The colored-bigraph data model: an exact k-edge-coloring of K_{a,b} as a
//! row-major color matrix, together with color statistics and the `.cbg` text
//! format.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Colors are 1-based to match the usual notation; `0` never appears in a
/// valid matrix.
pub type Color = u16;

/// Hard cap on the declared color count so palettes fit in a `u128` bitset.
pub const MAX_COLORS: u16 = 128;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BigraphError {
    #[error("part sizes must be positive, got {a}x{b}")]
    EmptySide { a: usize, b: usize },
    #[error("declared color count must be in 1..={MAX_COLORS}, got {0}")]
    BadColorCount(u32),
    #[error("matrix has {got} entries, expected {expected}")]
    WrongCellCount { expected: usize, got: usize },
    #[error("entry at ({u},{v}) is {color}, outside 1..={k}")]
    EntryOutOfRange { u: usize, v: usize, color: u32, k: u16 },
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, got: usize },
    #[error("expected {expected} rows, got {got}")]
    MissingRows { expected: usize, got: usize },
    #[error("unparsable entry `{0}`")]
    BadEntry(String),
    #[error("vertex set is empty or out of range")]
    BadVertexSet,
}

/// Which side of the bipartition a vertex lives on. Left indexes rows of the
/// color matrix, right indexes columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A vertex of the host K_{a,b}, addressed by side and index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub fn left(index: usize) -> Vertex {
        Vertex { side: Side::Left, index }
    }
    pub fn right(index: usize) -> Vertex {
        Vertex { side: Side::Right, index }
    }
}

/// A set of colors as a bitmask; color c occupies bit c-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ColorSet(u128);

impl ColorSet {
    pub fn new() -> ColorSet {
        ColorSet(0)
    }

    pub fn insert(&mut self, c: Color) {
        debug_assert!(c >= 1 && c <= MAX_COLORS);
        self.0 |= 1u128 << (c - 1);
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1u128 << (c - 1));
    }

    pub fn contains(self, c: Color) -> bool {
        c >= 1 && c <= MAX_COLORS && self.0 & (1u128 << (c - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn minus(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    pub fn single(c: Color) -> ColorSet {
        let mut s = ColorSet::new();
        s.insert(c);
        s
    }

    pub fn is_subset_of(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Colors in ascending order.
    pub fn iter(self) -> impl Iterator<Item = Color> {
        let bits = self.0;
        (1..=MAX_COLORS).filter(move |c| bits & (1u128 << (c - 1)) != 0)
    }

    pub fn to_vec(self) -> Vec<Color> {
        self.iter().collect()
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> ColorSet {
        let mut s = ColorSet::new();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

/// An edge-coloring of the complete bipartite graph K_{a,b} with colors in
/// {1..k}, stored row-major: entry (u,v) is the color of the edge between
/// left vertex u and right vertex v.
///
/// The value is immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredBigraph {
    a: usize,
    b: usize,
    k: Color,
    cells: Vec<Color>,
}

impl ColoredBigraph {
    pub fn new(a: usize, b: usize, k: u16, cells: Vec<Color>) -> Result<ColoredBigraph, BigraphError> {
        if a == 0 || b == 0 {
            return Err(BigraphError::EmptySide { a, b });
        }
        if k == 0 || k > MAX_COLORS {
            return Err(BigraphError::BadColorCount(k as u32));
        }
        if cells.len() != a * b {
            return Err(BigraphError::WrongCellCount { expected: a * b, got: cells.len() });
        }
        for (i, &c) in cells.iter().enumerate() {
            if c == 0 || c > k {
                return Err(BigraphError::EntryOutOfRange { u: i / b, v: i % b, color: c as u32, k });
            }
        }
        Ok(ColoredBigraph { a, b, k, cells })
    }

    pub fn from_rows(k: u16, rows: &[Vec<Color>]) -> Result<ColoredBigraph, BigraphError> {
        let a = rows.len();
        let b = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != b {
                return Err(BigraphError::RaggedRow { row: i, expected: b, got: row.len() });
            }
        }
        ColoredBigraph::new(a, b, k, rows.concat())
    }

    /// Constant coloring of K_{a,b} in a single color.
    pub fn constant(a: usize, b: usize, k: u16, color: Color) -> Result<ColoredBigraph, BigraphError> {
        ColoredBigraph::new(a, b, k, vec![color; a * b])
    }

    pub fn left_size(&self) -> usize {
        self.a
    }

    pub fn right_size(&self) -> usize {
        self.b
    }

    pub fn is_square(&self) -> bool {
        self.a == self.b
    }

    pub fn declared_colors(&self) -> Color {
        self.k
    }

    pub fn cells(&self) -> &[Color] {
        &self.cells
    }

    /// The color c(uv) of the edge between left vertex `u` and right vertex
    /// `v`. Panics if an index is out of range.
    pub fn color(&self, u: usize, v: usize) -> Color {
        assert!(u < self.a && v < self.b, "edge ({u},{v}) outside {}x{}", self.a, self.b);
        self.cells[u * self.b + v]
    }

    pub fn get(&self, u: usize, v: usize) -> Option<Color> {
        if u < self.a && v < self.b {
            Some(self.cells[u * self.b + v])
        } else {
            None
        }
    }

    pub fn row(&self, u: usize) -> &[Color] {
        &self.cells[u * self.b..(u + 1) * self.b]
    }

    /// The palette C(x): the set of distinct colors on edges at `x`.
    pub fn palette(&self, x: Vertex) -> ColorSet {
        let mut s = ColorSet::new();
        match x.side {
            Side::Left => {
                assert!(x.index < self.a, "left vertex {} out of range", x.index);
                for &c in self.row(x.index) {
                    s.insert(c);
                }
            }
            Side::Right => {
                assert!(x.index < self.b, "right vertex {} out of range", x.index);
                for u in 0..self.a {
                    s.insert(self.cells[u * self.b + x.index]);
                }
            }
        }
        s
    }

    /// Color degree d_c(S) of a nonempty vertex set on one side: the number
    /// of distinct colors on edges between S and the opposite side.
    pub fn color_degree_of_set(&self, side: Side, indices: &[usize]) -> Result<usize, BigraphError> {
        let limit = match side {
            Side::Left => self.a,
            Side::Right => self.b,
        };
        if indices.is_empty() || indices.iter().any(|&i| i >= limit) {
            return Err(BigraphError::BadVertexSet);
        }
        let mut s = ColorSet::new();
        for &i in indices {
            s = s.union(self.palette(Vertex { side, index: i }));
        }
        Ok(s.len())
    }

    /// (delta_c, Delta_c): minimum and maximum palette size over all a+b
    /// vertices.
    pub fn min_max_color_degree(&self) -> (usize, usize) {
        let mut lo = usize::MAX;
        let mut hi = 0;
        for u in 0..self.a {
            let d = self.palette(Vertex::left(u)).len();
            lo = lo.min(d);
            hi = hi.max(d);
        }
        for v in 0..self.b {
            let d = self.palette(Vertex::right(v)).len();
            lo = lo.min(d);
            hi = hi.max(d);
        }
        (lo, hi)
    }

    /// The set of colors appearing on at least one edge.
    pub fn used_colors(&self) -> ColorSet {
        let mut s = ColorSet::new();
        for &c in &self.cells {
            s.insert(c);
        }
        s
    }

    pub fn used_count(&self) -> usize {
        self.used_colors().len()
    }

    /// A coloring is exact when every color in {1..k} appears on some edge.
    pub fn is_exact(&self) -> bool {
        self.used_count() == self.k as usize
    }

    pub fn transpose(&self) -> ColoredBigraph {
        let mut cells = Vec::with_capacity(self.a * self.b);
        for v in 0..self.b {
            for u in 0..self.a {
                cells.push(self.cells[u * self.b + v]);
            }
        }
        ColoredBigraph { a: self.b, b: self.a, k: self.k, cells }
    }

    // ----- `.cbg` text format --------------------------------------------

    /// Parse the `.cbg` text format: header `a b k` (or `n k` as square
    /// shorthand), then `a` lines of `b` space-separated colors; `#` starts a
    /// comment line.
    pub fn parse(text: &str) -> Result<ColoredBigraph, BigraphError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| BigraphError::BadHeader("empty input".into()))?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        let parse_num = |s: &str| -> Result<usize, BigraphError> {
            s.parse::<usize>().map_err(|_| BigraphError::BadHeader(format!("bad header field `{s}`")))
        };
        let (a, b, k) = match nums.as_slice() {
            [n, k] => {
                let n = parse_num(n)?;
                (n, n, parse_num(k)?)
            }
            [a, b, k] => (parse_num(a)?, parse_num(b)?, parse_num(k)?),
            _ => return Err(BigraphError::BadHeader(format!("expected `a b k` or `n k`, got `{header}`"))),
        };
        if k == 0 || k > MAX_COLORS as usize {
            return Err(BigraphError::BadColorCount(k as u32));
        }
        let mut rows: Vec<Vec<Color>> = Vec::with_capacity(a);
        for (i, line) in lines.enumerate() {
            if i >= a {
                return Err(BigraphError::MissingRows { expected: a, got: i + 1 });
            }
            let mut row = Vec::with_capacity(b);
            for tok in line.split_whitespace() {
                let c: u32 = tok.parse().map_err(|_| BigraphError::BadEntry(tok.to_string()))?;
                if c == 0 || c > k as u32 {
                    return Err(BigraphError::EntryOutOfRange { u: i, v: row.len(), color: c, k: k as u16 });
                }
                row.push(c as Color);
            }
            if row.len() != b {
                return Err(BigraphError::RaggedRow { row: i, expected: b, got: row.len() });
            }
            rows.push(row);
        }
        if rows.len() != a {
            return Err(BigraphError::MissingRows { expected: a, got: rows.len() });
        }
        ColoredBigraph::from_rows(k as u16, &rows)
    }

    /// Serialize to the `.cbg` text format. `parse(render(g)) == g`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {} {}\n", self.a, self.b, self.k));
        for u in 0..self.a {
            let row: Vec<String> = self.row(u).iter().map(|c| c.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for ColoredBigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// JSON mirror of the `.cbg` fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigraphJson {
    pub a: usize,
    pub b: usize,
    pub k: u16,
    pub colors: Vec<Vec<Color>>,
}

impl From<&ColoredBigraph> for BigraphJson {
    fn from(g: &ColoredBigraph) -> BigraphJson {
        BigraphJson {
            a: g.a,
            b: g.b,
            k: g.k,
            colors: (0..g.a).map(|u| g.row(u).to_vec()).collect(),
        }
    }
}

impl TryFrom<BigraphJson> for ColoredBigraph {
    type Error = BigraphError;

    fn try_from(j: BigraphJson) -> Result<ColoredBigraph, BigraphError> {
        if j.colors.len() != j.a {
            return Err(BigraphError::MissingRows { expected: j.a, got: j.colors.len() });
        }
        ColoredBigraph::from_rows(j.k, &j.colors)
    }
}
