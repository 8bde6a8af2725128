//! Generators for the extremal lower-bound colorings and the two sporadic
//! rainbow-P5-free colorings.
//!
//! Every generated coloring is exact, and the lower-bound constructions avoid
//! both the rainbow pattern and the monochromatic target of their theorem;
//! the detectors verify this for every parameter tuple in the test grids.

use thiserror::Error;

use crate::bigraph::{Color, ColoredBigraph};
use crate::catalog::{T31Family, TheoremInstance};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("part sizes {0:?} must be positive and sum to {1}")]
    BadSizes(Vec<usize>, usize),
    #[error("expected {expected} part sizes, got {got}")]
    WrongPartCount { expected: usize, got: usize },
    #[error("diagonal construction needs at least 2 non-base blocks (k >= 3)")]
    TooFewBlocks,
    #[error("base color {0} outside 1..={1}")]
    BadBaseColor(Color, u16),
    #[error("block sizes must not exceed {limit}, got {got}")]
    BlockTooLarge { limit: usize, got: usize },
    #[error("left and right block sizes must be equal for this theorem")]
    UnequalBlocks,
    #[error("{0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Bigraph(#[from] crate::bigraph::BigraphError),
}

fn check_sizes(n: usize, count: usize, sizes: &[usize]) -> Result<(), ConstructError> {
    if sizes.len() != count {
        return Err(ConstructError::WrongPartCount { expected: count, got: sizes.len() });
    }
    if sizes.iter().any(|&s| s == 0) || sizes.iter().sum::<usize>() != n {
        return Err(ConstructError::BadSizes(sizes.to_vec(), n));
    }
    Ok(())
}

/// Partition the rows into k blocks of the given sizes and color every edge
/// leaving block i with color i.
pub fn row_blocks(n: usize, k: u16, sizes: &[usize]) -> Result<ColoredBigraph, ConstructError> {
    check_sizes(n, k as usize, sizes)?;
    let mut cells = Vec::with_capacity(n * n);
    for (i, &sz) in sizes.iter().enumerate() {
        let color = (i + 1) as Color;
        for _ in 0..sz {
            cells.extend(std::iter::repeat(color).take(n));
        }
    }
    Ok(ColoredBigraph::new(n, n, k, cells)?)
}

/// Transpose analogue of [`row_blocks`]: column block i gets color i.
pub fn col_blocks(n: usize, k: u16, sizes: &[usize]) -> Result<ColoredBigraph, ConstructError> {
    Ok(row_blocks(n, k, sizes)?.transpose())
}

/// Block-diagonal coloring: both sides are split into k-1 nonempty parts,
/// the edges inside block (U_i, V_i) get the i-th non-base color, and every
/// other edge gets `base_color`.
pub fn diagonal(
    n: usize,
    k: u16,
    u_sizes: &[usize],
    v_sizes: &[usize],
    base_color: Color,
) -> Result<ColoredBigraph, ConstructError> {
    if k < 3 {
        return Err(ConstructError::TooFewBlocks);
    }
    if base_color == 0 || base_color > k {
        return Err(ConstructError::BadBaseColor(base_color, k));
    }
    check_sizes(n, k as usize - 1, u_sizes)?;
    check_sizes(n, k as usize - 1, v_sizes)?;
    let block_colors: Vec<Color> = (1..=k).filter(|&c| c != base_color).collect();
    let mut u_block = vec![0usize; n];
    let mut idx = 0;
    for (bi, &sz) in u_sizes.iter().enumerate() {
        for _ in 0..sz {
            u_block[idx] = bi;
            idx += 1;
        }
    }
    let mut v_block = vec![0usize; n];
    idx = 0;
    for (bi, &sz) in v_sizes.iter().enumerate() {
        for _ in 0..sz {
            v_block[idx] = bi;
            idx += 1;
        }
    }
    let mut cells = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            if u_block[u] == v_block[v] {
                cells.push(block_colors[u_block[u]]);
            } else {
                cells.push(base_color);
            }
        }
    }
    Ok(ColoredBigraph::new(n, n, k, cells)?)
}

/// Which of the two sporadic rainbow-P5-free colorings to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SporadicP5 {
    N3,
    N4,
}

/// The listed sporadic colorings: the 3x3 and 4x4 four-color colorings that
/// avoid a rainbow P5 without fitting the partition cases.
pub fn sporadic_p5(which: SporadicP5) -> ColoredBigraph {
    match which {
        SporadicP5::N3 => {
            ColoredBigraph::from_rows(4, &[vec![1, 3, 2], vec![2, 4, 1], vec![3, 1, 4]]).unwrap()
        }
        SporadicP5::N4 => ColoredBigraph::from_rows(
            4,
            &[vec![1, 3, 2, 4], vec![2, 4, 1, 3], vec![3, 1, 4, 2], vec![4, 2, 3, 1]],
        )
        .unwrap(),
    }
}

/// Split `n` into `parts` sizes as equal as possible, remainder to the
/// low-index parts.
pub fn near_equal_split(n: usize, parts: usize) -> Vec<usize> {
    let q = n / parts;
    let r = n % parts;
    (0..parts).map(|i| q + usize::from(i < r)).collect()
}

/// The extremal coloring certifying the theorem's lower bound: a coloring of
/// K_{v-1,v-1} (v the closed-form value) avoiding both the rainbow pattern
/// and the monochromatic target, with the part sizes the proofs use.
pub fn lower_bound_for(instance: &TheoremInstance) -> Result<ColoredBigraph, ConstructError> {
    instance
        .check_hypotheses()
        .map_err(ConstructError::HypothesisViolated)?;
    let v = instance.value();
    let n = (v - 1) as usize;
    match instance {
        TheoremInstance::T31 { k, family } => {
            let base = match *family {
                T31Family::PathPair { r, l } => r / 2 + (r + l) / 2,
                T31Family::CyclePair { l1, l2 } => l1 + l2,
                T31Family::PathCycle { m, l } => l + m / 2,
            };
            row_blocks(n, *k, &vec![base - 1; *k as usize])
        }
        TheoremInstance::T32 { k, copies, length } => {
            let base = copies * (length / 2);
            col_blocks(n, *k, &vec![base - 1; *k as usize])
        }
        TheoremInstance::T33 { k, lengths } => {
            let base: usize = lengths.iter().map(|&l| l / 2).sum();
            col_blocks(n, *k, &vec![base - 1; *k as usize])
        }
        TheoremInstance::T34 { k, path_lengths, cycle_halves } => {
            let base: usize = path_lengths.iter().map(|&l| l / 2).sum::<usize>()
                + cycle_halves.iter().sum::<usize>();
            col_blocks(n, *k, &vec![base - 1; *k as usize])
        }
        TheoremInstance::C31 { k, cycle_halves } => {
            let base: usize = cycle_halves.iter().sum();
            col_blocks(n, *k, &vec![base - 1; *k as usize])
        }
        TheoremInstance::T36 { k, t } => col_blocks(n, *k, &vec![t - 1; *k as usize]),
        TheoremInstance::T41 { k, .. } => {
            let sizes = near_equal_split(n, *k as usize - 1);
            diagonal(n, *k, &sizes, &sizes, *k)
        }
        TheoremInstance::T42 { k, t, .. } => {
            let sizes = near_equal_split(n, *k as usize - 1);
            if let Some(&max) = sizes.iter().max() {
                if max > t - 1 {
                    return Err(ConstructError::BlockTooLarge { limit: t - 1, got: max });
                }
            }
            diagonal(n, *k, &sizes, &sizes, *k)
        }
    }
}
