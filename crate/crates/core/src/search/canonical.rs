//! Canonical forms of colored bigraphs under the full symmetry group: row
//! permutations x column permutations x transpose (square case) x color
//! relabeling.
//!
//! The code is the lexicographically minimal row-major scan over all row and
//! column orders, with colors renamed by first occurrence. Minimization is a
//! branch-and-bound: pick a first row, grow a column order choosing only
//! value-minimal next columns (branching on ties, deduplicated by identical
//! raw columns), then order the remaining rows greedily; every prefix is
//! pruned against the best scan found so far.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::bigraph::{Color, ColoredBigraph};
use crate::search::{SearchError, MAX_SEARCH_SIDE};

/// A compact byte string identifying the orbit of a coloring: two colorings
/// have equal codes iff one maps to the other under the symmetry group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn canonical_form(g: &ColoredBigraph) -> Result<CanonicalCode, SearchError> {
    let (a, b) = (g.left_size(), g.right_size());
    if a > MAX_SEARCH_SIDE || b > MAX_SEARCH_SIDE {
        return Err(SearchError::SizeGuard(a, b));
    }
    let mut best: Option<Vec<u8>> = None;
    minimize_scan(g, &mut best);
    if g.is_square() {
        minimize_scan(&g.transpose(), &mut best);
    }
    let mut code = vec![a as u8, b as u8];
    code.extend(best.expect("nonempty matrix"));
    Ok(CanonicalCode(code))
}

struct Minimizer<'a> {
    rows: Vec<&'a [Color]>,
    b: usize,
    best: &'a mut Option<Vec<u8>>,
}

fn minimize_scan(g: &ColoredBigraph, best: &mut Option<Vec<u8>>) {
    let a = g.left_size();
    let rows: Vec<&[Color]> = (0..a).map(|u| g.row(u)).collect();
    let b = g.right_size();
    let mut m = Minimizer { rows, b, best };
    for r0 in 0..a {
        let mut rename = vec![0u8; usize::from(g.declared_colors()) + 1];
        let mut scan = Vec::with_capacity(a * b);
        let mut cols = Vec::with_capacity(b);
        m.grow_columns(r0, &mut cols, &mut rename, 1, &mut scan);
    }
}

impl Minimizer<'_> {
    /// Is `scan` still able to beat the best? `Some(true)` means strictly
    /// smaller already, `Some(false)` means still equal, `None` means prune.
    fn viable(&self, scan: &[u8]) -> Option<bool> {
        match self.best.as_deref() {
            None => Some(true),
            Some(best) => match scan.cmp(&best[..scan.len()]) {
                Ordering::Less => Some(true),
                Ordering::Equal => Some(false),
                Ordering::Greater => None,
            },
        }
    }

    fn grow_columns(
        &mut self,
        r0: usize,
        cols: &mut Vec<usize>,
        rename: &mut [u8],
        next_label: u8,
        scan: &mut Vec<u8>,
    ) {
        if self.viable(scan).is_none() {
            return;
        }
        if cols.len() == self.b {
            self.order_rows(r0, cols, rename.to_vec(), next_label, scan.clone());
            return;
        }
        let row = self.rows[r0];
        // minimal next normalized value over the unused columns
        let mut min_val = u8::MAX;
        for c in 0..self.b {
            if cols.contains(&c) {
                continue;
            }
            let val = match rename[usize::from(row[c])] {
                0 => next_label,
                l => l,
            };
            min_val = min_val.min(val);
        }
        // branch on ties, skipping raw-identical columns
        let mut tried: Vec<usize> = Vec::new();
        'cand: for c in 0..self.b {
            if cols.contains(&c) {
                continue;
            }
            let raw = row[c];
            let val = match rename[usize::from(raw)] {
                0 => next_label,
                l => l,
            };
            if val != min_val {
                continue;
            }
            for &t in &tried {
                if (0..self.rows.len()).all(|r| self.rows[r][t] == self.rows[r][c]) {
                    continue 'cand;
                }
            }
            tried.push(c);
            let introduced = rename[usize::from(raw)] == 0;
            if introduced {
                rename[usize::from(raw)] = next_label;
            }
            cols.push(c);
            scan.push(val);
            self.grow_columns(r0, cols, rename, next_label + u8::from(introduced), scan);
            scan.pop();
            cols.pop();
            if introduced {
                rename[usize::from(raw)] = 0;
            }
        }
    }

    /// With the column order fixed, append the remaining rows: only rows with
    /// the minimal normalized string can extend a minimal scan, but tied rows
    /// with different raw colors diverge later, so ties branch (raw-identical
    /// rows are interchangeable and deduplicated).
    fn order_rows(
        &mut self,
        r0: usize,
        cols: &[usize],
        rename: Vec<u8>,
        next_label: u8,
        scan: Vec<u8>,
    ) {
        let a = self.rows.len();
        let remaining: Vec<usize> = (0..a).filter(|&r| r != r0).collect();
        self.order_rows_rec(cols, &remaining, rename, next_label, scan);
    }

    fn order_rows_rec(
        &mut self,
        cols: &[usize],
        remaining: &[usize],
        rename: Vec<u8>,
        next_label: u8,
        scan: Vec<u8>,
    ) {
        if self.viable(&scan).is_none() {
            return;
        }
        if remaining.is_empty() {
            if self.viable(&scan) == Some(true) {
                *self.best = Some(scan);
            }
            return;
        }
        let normalized = |r: usize| -> Vec<u8> {
            let mut trial = rename.clone();
            let mut label = next_label;
            let mut s = Vec::with_capacity(self.b);
            for &c in cols {
                let raw = usize::from(self.rows[r][c]);
                if trial[raw] == 0 {
                    trial[raw] = label;
                    label += 1;
                }
                s.push(trial[raw]);
            }
            s
        };
        let strings: Vec<Vec<u8>> = remaining.iter().map(|&r| normalized(r)).collect();
        let min_s = strings.iter().min().expect("nonempty").clone();
        let mut tried: Vec<usize> = Vec::new();
        'cand: for (i, &r) in remaining.iter().enumerate() {
            if strings[i] != min_s {
                continue;
            }
            for &t in &tried {
                if cols.iter().all(|&c| self.rows[t][c] == self.rows[r][c]) {
                    continue 'cand;
                }
            }
            tried.push(r);
            let mut rename2 = rename.clone();
            let mut label2 = next_label;
            for &c in cols {
                let raw = usize::from(self.rows[r][c]);
                if rename2[raw] == 0 {
                    rename2[raw] = label2;
                    label2 += 1;
                }
            }
            let mut scan2 = scan.clone();
            scan2.extend_from_slice(&min_s);
            let rest: Vec<usize> = remaining.iter().copied().filter(|&x| x != r).collect();
            self.order_rows_rec(cols, &rest, rename2, label2, scan2);
        }
    }
}
