//! Closed-form bipartite Gallai-Ramsey values with hypothesis guards,
//! the two-sided bound machinery for rainbow P4, and bipartition statistics.
//!
//! Hypothesis clauses are checked literally as stated; the formulas are never
//! extrapolated outside their ranges. Where two theorems both apply, all are
//! evaluated and any value disagreement is surfaced as an error rather than
//! silently picking one.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::target::{Component, RainbowPattern, TargetGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("{0}")]
    HypothesisViolated(String),
    #[error("theorems {0:?} disagree on the value: {1:?}")]
    TheoremDisagreement(Vec<TheoremId>, Vec<u64>),
    #[error("br_2(P_n) requires n >= 3, got {0}")]
    PathTooShort(usize),
}

/// Identifiers of the closed-form value theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    T31,
    T32,
    T33,
    T34,
    C31,
    T36,
    T41,
    T42,
}

impl TheoremId {
    pub fn parse(s: &str) -> Option<TheoremId> {
        match s.to_ascii_uppercase().as_str() {
            "T31" => Some(TheoremId::T31),
            "T32" => Some(TheoremId::T32),
            "T33" => Some(TheoremId::T33),
            "T34" => Some(TheoremId::T34),
            "C31" => Some(TheoremId::C31),
            "T36" => Some(TheoremId::T36),
            "T41" => Some(TheoremId::T41),
            "T42" => Some(TheoremId::T42),
            _ => None,
        }
    }

    pub fn pattern(self) -> RainbowPattern {
        match self {
            TheoremId::T31 => RainbowPattern::P4,
            TheoremId::T32 | TheoremId::T33 | TheoremId::T34 | TheoremId::C31 | TheoremId::T36 => {
                RainbowPattern::P5
            }
            TheoremId::T41 | TheoremId::T42 => RainbowPattern::K13,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The target family of the two-paths / two-cycles / path-cycle theorem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum T31Family {
    /// H = P_r u P_{r+l}
    PathPair { r: usize, l: usize },
    /// H = C_{2l1} u C_{2l2}
    CyclePair { l1: usize, l2: usize },
    /// H = P_m u C_{2l}
    PathCycle { m: usize, l: usize },
}

/// A theorem together with the parameters extracted from a concrete
/// (pattern, target, k) triple. Carries enough to evaluate the closed form
/// and to build the matching extremal lower-bound coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremInstance {
    T31 { k: u16, family: T31Family },
    T32 { k: u16, copies: usize, length: usize },
    T33 { k: u16, lengths: Vec<usize> },
    T34 { k: u16, path_lengths: Vec<usize>, cycle_halves: Vec<usize> },
    C31 { k: u16, cycle_halves: Vec<usize> },
    T36 { k: u16, t: usize },
    T41 { k: u16, t: usize },
    T42 { k: u16, s: usize, t: usize },
}

impl TheoremInstance {
    pub fn id(&self) -> TheoremId {
        match self {
            TheoremInstance::T31 { .. } => TheoremId::T31,
            TheoremInstance::T32 { .. } => TheoremId::T32,
            TheoremInstance::T33 { .. } => TheoremId::T33,
            TheoremInstance::T34 { .. } => TheoremId::T34,
            TheoremInstance::C31 { .. } => TheoremId::C31,
            TheoremInstance::T36 { .. } => TheoremId::T36,
            TheoremInstance::T41 { .. } => TheoremId::T41,
            TheoremInstance::T42 { .. } => TheoremId::T42,
        }
    }

    /// The closed-form value; meaningful only when the hypotheses hold.
    /// The definition requires n^2 >= k, so the formula is floored at
    /// ceil(sqrt(k)); this only bites degenerate corners like a single P_2.
    pub fn value(&self) -> u64 {
        let k = match self {
            TheoremInstance::T31 { k, .. }
            | TheoremInstance::T32 { k, .. }
            | TheoremInstance::T33 { k, .. }
            | TheoremInstance::T34 { k, .. }
            | TheoremInstance::C31 { k, .. }
            | TheoremInstance::T36 { k, .. }
            | TheoremInstance::T41 { k, .. }
            | TheoremInstance::T42 { k, .. } => *k,
        };
        self.raw_value().max(ceil_sqrt(k))
    }

    fn raw_value(&self) -> u64 {
        match self {
            TheoremInstance::T31 { k, family } => {
                let k = *k as u64;
                let base = match *family {
                    T31Family::PathPair { r, l } => (r / 2 + (r + l) / 2) as u64,
                    T31Family::CyclePair { l1, l2 } => (l1 + l2) as u64,
                    T31Family::PathCycle { m, l } => (l + m / 2) as u64,
                };
                k * base - k + 1
            }
            TheoremInstance::T32 { k, copies, length } => {
                let k = *k as u64;
                k * (*copies as u64) * ((*length / 2) as u64) - k + 1
            }
            TheoremInstance::T33 { k, lengths } => {
                let k = *k as u64;
                let base: u64 = lengths.iter().map(|&l| (l / 2) as u64).sum();
                k * base - k + 1
            }
            TheoremInstance::T34 { k, path_lengths, cycle_halves } => {
                let k = *k as u64;
                let base: u64 = path_lengths.iter().map(|&l| (l / 2) as u64).sum::<u64>()
                    + cycle_halves.iter().map(|&m| m as u64).sum::<u64>();
                k * base - k + 1
            }
            TheoremInstance::C31 { k, cycle_halves } => {
                let k = *k as u64;
                let base: u64 = cycle_halves.iter().map(|&m| m as u64).sum();
                k * base - k + 1
            }
            TheoremInstance::T36 { k, t } => {
                let k = *k as u64;
                k * (*t as u64) - k + 1
            }
            TheoremInstance::T41 { t, .. } => (*t as u64) + 1,
            TheoremInstance::T42 { s, t, .. } => (*s + *t) as u64,
        }
    }

    /// Check every hypothesis clause literally; `Ok` returns the list of
    /// clauses that were checked, `Err` the first violated one.
    pub fn check_hypotheses(&self) -> Result<Vec<String>, String> {
        let mut checked = Vec::new();
        let mut require = |ok: bool, clause: &str| -> Result<(), String> {
            if ok {
                checked.push(clause.to_string());
                Ok(())
            } else {
                Err(format!("{}: requires {}", self.id(), clause))
            }
        };
        match self {
            TheoremInstance::T31 { k, family } => {
                require(*k >= 3, "k >= 3")?;
                if let T31Family::PathPair { r, l } = family {
                    require(*r >= 2, "r >= 2")?;
                    require(*l >= 2, "l >= 2 (path lengths differing by at least 2)")?;
                }
            }
            TheoremInstance::T32 { k, copies, length } => {
                require(*k >= 4, "k >= 4")?;
                require(*length >= 10, "l >= 10")?;
                require(*copies >= 1, "r >= 1")?;
            }
            TheoremInstance::T33 { k, lengths } => {
                require(*k >= 5, "k >= 5")?;
                require(!lengths.is_empty(), "r >= 1")?;
                require(lengths.iter().all(|&l| l >= 10), "l_i >= 10")?;
            }
            TheoremInstance::T34 { k, path_lengths, cycle_halves } => {
                require(!path_lengths.is_empty() || !cycle_halves.is_empty(), "r, s not both 0")?;
                let threshold: usize = path_lengths.iter().map(|&l| l / 2 + 1).sum::<usize>()
                    + cycle_halves.iter().sum::<usize>()
                    + 2;
                require(
                    *k as usize >= threshold,
                    &format!("k >= 2 + sum(floor(l_i/2)+1) + sum(m_j) = {threshold}"),
                )?;
            }
            TheoremInstance::C31 { k, cycle_halves } => {
                let threshold: usize = cycle_halves.iter().sum::<usize>() + 2;
                require(*k as usize >= threshold, &format!("k >= 2 + sum(l_i) = {threshold}"))?;
            }
            TheoremInstance::T36 { k, t } => {
                require(*t >= 3, "t >= 3")?;
                require(*k as usize >= *t + 2, "k >= t + 2")?;
            }
            TheoremInstance::T41 { k, t } => {
                require(*t >= 5, "t >= 5")?;
                require(*k as usize >= *t && *k as usize <= *t + 1, "t <= k <= t + 1")?;
            }
            TheoremInstance::T42 { k, s, t } => {
                require(*s >= 2 && *s < *t, "2 <= s < t")?;
                require(*t >= 5, "t >= 5")?;
                require(
                    *k as usize >= *t + *s - *t / 2 && *k as usize <= *t + *s,
                    "t + s - floor(t/2) <= k <= t + s",
                )?;
            }
        }
        Ok(checked)
    }
}

/// Smallest n with n * n >= k.
fn ceil_sqrt(k: u16) -> u64 {
    let mut n = 0u64;
    while n * n < u64::from(k) {
        n += 1;
    }
    n
}

/// All theorem instances whose target family matches (pattern, H, k),
/// regardless of whether the numeric hypotheses hold.
pub fn match_instances(pattern: RainbowPattern, target: &TargetGraph, k: u16) -> Vec<TheoremInstance> {
    let comps = target.normalized_components();
    let mut paths: Vec<usize> = Vec::new();
    let mut cycles: Vec<usize> = Vec::new();
    let mut stars: Vec<usize> = Vec::new();
    let mut bicliques: Vec<(usize, usize)> = Vec::new();
    for c in &comps {
        match *c {
            Component::Path { vertices } => paths.push(vertices),
            Component::Cycle { vertices } => cycles.push(vertices / 2),
            Component::Star { leaves } => stars.push(leaves),
            Component::Biclique { s, t } => bicliques.push((s, t)),
        }
    }
    paths.sort_unstable();
    cycles.sort_unstable();

    let mut out = Vec::new();
    match pattern {
        RainbowPattern::P4 => {
            if stars.is_empty() && bicliques.is_empty() {
                match (paths.as_slice(), cycles.as_slice()) {
                    ([p1, p2], []) => out.push(TheoremInstance::T31 {
                        k,
                        family: T31Family::PathPair { r: *p1, l: p2 - p1 },
                    }),
                    ([], [l1, l2]) => out.push(TheoremInstance::T31 {
                        k,
                        family: T31Family::CyclePair { l1: *l1, l2: *l2 },
                    }),
                    ([m], [l]) => out.push(TheoremInstance::T31 {
                        k,
                        family: T31Family::PathCycle { m: *m, l: *l },
                    }),
                    _ => {}
                }
            }
        }
        RainbowPattern::P5 => {
            if stars.is_empty() && bicliques.is_empty() {
                if cycles.is_empty() && !paths.is_empty() {
                    if paths.iter().all(|&l| l == paths[0]) {
                        out.push(TheoremInstance::T32 { k, copies: paths.len(), length: paths[0] });
                    }
                    out.push(TheoremInstance::T33 { k, lengths: paths.clone() });
                }
                if paths.is_empty() && !cycles.is_empty() {
                    out.push(TheoremInstance::C31 { k, cycle_halves: cycles.clone() });
                }
                if !paths.is_empty() || !cycles.is_empty() {
                    out.push(TheoremInstance::T34 {
                        k,
                        path_lengths: paths.clone(),
                        cycle_halves: cycles.clone(),
                    });
                }
            }
            if paths.is_empty() && cycles.is_empty() && stars.is_empty() {
                if let [(s, t)] = bicliques.as_slice() {
                    if s == t {
                        out.push(TheoremInstance::T36 { k, t: *t });
                    }
                }
            }
        }
        RainbowPattern::K13 => {
            if paths.is_empty() && cycles.is_empty() && bicliques.is_empty() {
                if let [t] = stars.as_slice() {
                    out.push(TheoremInstance::T41 { k, t: *t });
                }
            }
            if paths.is_empty() && cycles.is_empty() && stars.is_empty() {
                if let [(s, t)] = bicliques.as_slice() {
                    if *s >= 2 {
                        out.push(TheoremInstance::T42 { k, s: *s, t: *t });
                    }
                }
            }
        }
    }
    out
}

/// Outcome of a closed-form lookup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BgrOutcome {
    Value {
        value: u64,
        /// Every theorem whose hypotheses hold; all agree on the value.
        theorems: Vec<TheoremId>,
        hypotheses_checked: Vec<String>,
    },
    OutOfTheoremRange {
        /// Nearest theorem (right target family, violated range) if any.
        nearest: Option<TheoremId>,
        violated: Option<String>,
    },
}

/// Evaluate bgr_k(pattern : target) against the theorem catalog.
///
/// Total over all inputs; `Err` occurs only if two applicable theorems were
/// ever to disagree, which the formulas rule out.
pub fn bgr_value(
    pattern: RainbowPattern,
    target: &TargetGraph,
    k: u16,
) -> Result<BgrOutcome, CatalogError> {
    let instances = match_instances(pattern, target, k);
    let mut applicable = Vec::new();
    let mut nearest: Option<(TheoremId, String)> = None;
    for inst in &instances {
        match inst.check_hypotheses() {
            Ok(clauses) => applicable.push((inst.id(), inst.value(), clauses)),
            Err(clause) => {
                if nearest.is_none() {
                    nearest = Some((inst.id(), clause));
                }
            }
        }
    }
    if applicable.is_empty() {
        let (nearest, violated) = match nearest {
            Some((id, clause)) => (Some(id), Some(clause)),
            None => (None, None),
        };
        return Ok(BgrOutcome::OutOfTheoremRange { nearest, violated });
    }
    let values: Vec<u64> = applicable.iter().map(|(_, v, _)| *v).collect();
    if values.windows(2).any(|w| w[0] != w[1]) {
        return Err(CatalogError::TheoremDisagreement(
            applicable.iter().map(|(id, _, _)| *id).collect(),
            values,
        ));
    }
    let value = values[0];
    debug_assert!(value.saturating_mul(value) >= k as u64, "value^2 >= k must hold");
    let mut hypotheses_checked = Vec::new();
    for (_, _, clauses) in &applicable {
        for c in clauses {
            if !hypotheses_checked.contains(c) {
                hypotheses_checked.push(c.clone());
            }
        }
    }
    Ok(BgrOutcome::Value {
        value,
        theorems: applicable.iter().map(|(id, _, _)| *id).collect(),
        hypotheses_checked,
    })
}

/// The applicable theorem instances for (pattern, target, k), hypotheses
/// verified. Used to derive the matching extremal construction.
pub fn applicable_instances(
    pattern: RainbowPattern,
    target: &TargetGraph,
    k: u16,
) -> Vec<TheoremInstance> {
    match_instances(pattern, target, k)
        .into_iter()
        .filter(|inst| inst.check_hypotheses().is_ok())
        .collect()
}

// ----- bipartition statistics -------------------------------------------------

/// s, t, s*, t* of a bipartite target: extremes of part sizes over all
/// bipartitions (S,T) with |S| <= |T|. Each component's bipartition may be
/// flipped independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitionStats {
    pub s: usize,
    pub t: usize,
    pub s_star: usize,
    pub t_star: usize,
}

pub fn bipartition_stats(target: &TargetGraph) -> BipartitionStats {
    let total = target.vertex_count();
    // Subset-sum over per-component orientation choices.
    let mut reach = vec![false; total + 1];
    reach[0] = true;
    for comp in target.components() {
        let (x, y) = comp.footprint();
        let mut next = vec![false; total + 1];
        for (sum, &r) in reach.iter().enumerate() {
            if r {
                next[sum + x] = true;
                next[sum + y] = true;
            }
        }
        reach = next;
    }
    // Achievable sums come in complementary pairs, so the minimum is a valid
    // |S| and the maximum valid |S| is the largest sum <= total/2.
    let s = reach.iter().position(|&r| r).expect("nonempty target");
    let s_star = (0..=total / 2).rev().find(|&x| reach[x]).expect("nonempty target");
    BipartitionStats { s, t: total - s, s_star, t_star: total - s_star }
}

/// Lower/upper bounds on bgr_k(P4 : H); `exact` when the two sides pinch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiBounds {
    pub lower: u64,
    pub upper: u64,
    pub exact: Option<u64>,
}

pub fn li_bounds(target: &TargetGraph, k: u16) -> Result<LiBounds, CatalogError> {
    let stats = bipartition_stats(target);
    if k < 3 {
        return Err(CatalogError::HypothesisViolated("li_bounds requires k >= 3".into()));
    }
    if stats.s < 2 {
        return Err(CatalogError::HypothesisViolated("li_bounds requires s(H) >= 2".into()));
    }
    let k = k as u64;
    let lower = (stats.t_star as u64).max((stats.s as u64 - 1) * k + 1);
    let upper = ((stats.t as u64).max((stats.s as u64 - 1) * k + 1))
        .min((stats.t_star as u64).max((stats.s_star as u64 - 1) * k + 1));
    let exact = (lower == upper).then_some(lower);
    Ok(LiBounds { lower, upper, exact })
}

/// br_2(P_n): n-1 for even n, n for odd n (n >= 3).
pub fn br2_path(n: usize) -> Result<u64, CatalogError> {
    if n < 3 {
        return Err(CatalogError::PathTooShort(n));
    }
    Ok(if n % 2 == 0 { (n - 1) as u64 } else { n as u64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tg(comps: Vec<Component>) -> TargetGraph {
        TargetGraph::new(comps).unwrap()
    }

    fn path(n: usize) -> Component {
        Component::Path { vertices: n }
    }

    #[test]
    fn stats_of_star() {
        let st = bipartition_stats(&tg(vec![Component::Star { leaves: 3 }]));
        assert_eq!(st, BipartitionStats { s: 1, t: 3, s_star: 1, t_star: 3 });
    }

    #[test]
    fn stats_of_two_paths() {
        let st = bipartition_stats(&tg(vec![path(2), path(4)]));
        assert_eq!(st, BipartitionStats { s: 3, t: 3, s_star: 3, t_star: 3 });
    }

    #[test]
    fn stats_of_two_small_stars() {
        let st = bipartition_stats(&tg(vec![
            Component::Star { leaves: 2 },
            Component::Star { leaves: 2 },
        ]));
        assert_eq!(st, BipartitionStats { s: 2, t: 4, s_star: 3, t_star: 3 });
    }

    #[test]
    fn li_bounds_exact_for_two_paths() {
        let b = li_bounds(&tg(vec![path(2), path(4)]), 3).unwrap();
        assert_eq!(b.exact, Some(7));
    }

    #[test]
    fn li_bounds_exact_for_balanced_biclique() {
        let b = li_bounds(&tg(vec![Component::Biclique { s: 3, t: 3 }]), 5).unwrap();
        assert_eq!(b.exact, Some(11));
    }

    #[test]
    fn li_bounds_pinch_for_two_small_stars() {
        let b = li_bounds(
            &tg(vec![Component::Star { leaves: 2 }, Component::Star { leaves: 2 }]),
            4,
        )
        .unwrap();
        assert_eq!((b.lower, b.upper), (5, 5));
        assert_eq!(b.exact, Some(5));
    }

    #[test]
    fn li_bounds_guards_hypotheses() {
        assert!(li_bounds(&tg(vec![path(2), path(4)]), 2).is_err());
        assert!(li_bounds(&tg(vec![Component::Star { leaves: 4 }]), 3).is_err());
    }

    #[test]
    fn bgr_value_examples() {
        let v = |p, h: &TargetGraph, k| match bgr_value(p, h, k).unwrap() {
            BgrOutcome::Value { value, .. } => Some(value),
            BgrOutcome::OutOfTheoremRange { .. } => None,
        };
        assert_eq!(v(RainbowPattern::P4, &tg(vec![path(2), path(4)]), 3), Some(7));
        assert_eq!(
            v(RainbowPattern::P5, &tg(vec![Component::Biclique { s: 3, t: 3 }]), 5),
            Some(11)
        );
        assert_eq!(v(RainbowPattern::K13, &tg(vec![Component::Star { leaves: 5 }]), 5), Some(6));
        assert_eq!(
            v(RainbowPattern::K13, &tg(vec![Component::Biclique { s: 2, t: 5 }]), 5),
            Some(7)
        );
    }

    #[test]
    fn bgr_value_cycle_families() {
        let v = |p, h: &TargetGraph, k| match bgr_value(p, h, k).unwrap() {
            BgrOutcome::Value { value, theorems, .. } => Some((value, theorems)),
            BgrOutcome::OutOfTheoremRange { .. } => None,
        };
        // two cycles under P4: k(l1+l2)-k+1
        let (val, _) = v(
            RainbowPattern::P4,
            &tg(vec![Component::Cycle { vertices: 4 }, Component::Cycle { vertices: 6 }]),
            3,
        )
        .unwrap();
        assert_eq!(val, 3 * 5 - 3 + 1);
        // cycles under P5 match both T34 and C31 and agree
        let (val, thms) = v(
            RainbowPattern::P5,
            &tg(vec![Component::Cycle { vertices: 4 }, Component::Cycle { vertices: 6 }]),
            7,
        )
        .unwrap();
        assert_eq!(val, 7 * 5 - 7 + 1);
        assert!(thms.contains(&TheoremId::T34) && thms.contains(&TheoremId::C31));
    }

    #[test]
    fn bgr_value_out_of_range_reports_nearest() {
        // K_{1,5} with k = 8 violates t <= k <= t+1.
        let out = bgr_value(RainbowPattern::K13, &tg(vec![Component::Star { leaves: 5 }]), 8).unwrap();
        match out {
            BgrOutcome::OutOfTheoremRange { nearest, violated } => {
                assert_eq!(nearest, Some(TheoremId::T41));
                assert!(violated.unwrap().contains("t <= k <= t + 1"));
            }
            _ => panic!("expected out of range"),
        }
        // equal-length path pair is not a T31 family
        let out = bgr_value(RainbowPattern::P4, &tg(vec![path(3), path(3)]), 3).unwrap();
        match out {
            BgrOutcome::OutOfTheoremRange { nearest, .. } => {
                assert_eq!(nearest, Some(TheoremId::T31));
            }
            _ => panic!("expected out of range"),
        }
    }

    #[test]
    fn t32_and_t33_agree_on_equal_long_paths() {
        let h = tg(vec![path(10), path(10)]);
        match bgr_value(RainbowPattern::P5, &h, 5).unwrap() {
            BgrOutcome::Value { value, theorems, .. } => {
                assert_eq!(value, 5 * 10 - 5 + 1);
                assert!(theorems.contains(&TheoremId::T32));
                assert!(theorems.contains(&TheoremId::T33));
            }
            _ => panic!("expected value"),
        }
    }

    #[test]
    fn br2_path_values() {
        assert_eq!(br2_path(4).unwrap(), 3);
        assert_eq!(br2_path(5).unwrap(), 5);
        assert_eq!(br2_path(6).unwrap(), 5);
        assert_eq!(br2_path(7).unwrap(), 7);
        assert!(br2_path(2).is_err());
    }

    #[test]
    fn normalized_star_matches_star_theorem() {
        // K_{1,5} written as a biclique still matches the star theorem.
        let h = tg(vec![Component::Biclique { s: 1, t: 5 }]);
        match bgr_value(RainbowPattern::K13, &h, 5).unwrap() {
            BgrOutcome::Value { value, theorems, .. } => {
                assert_eq!(value, 6);
                assert_eq!(theorems, vec![TheoremId::T41]);
            }
            _ => panic!("expected value"),
        }
    }
}
