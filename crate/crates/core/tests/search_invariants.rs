//! Cross-checks for the search machinery: pruned search against naive
//! enumeration, orbit counts against brute-force canonicalization, detector
//! completeness against an independent edge-subset oracle, and report
//! determinism.

use std::collections::HashSet;

use bgr_core::bigraph::{Color, ColoredBigraph};
use bgr_core::patterns::{find_monochromatic, find_rainbow};
use bgr_core::search::verify::{check_structure_theorem, StructureCheckOptions};
use bgr_core::search::{
    canonical_form, enumerate_colorings, exists_avoiding, no_prune, AvoidSpec, EnumerateOptions,
};
use bgr_core::structure::{classify, Classification, StructureTheorem};
use bgr_core::target::{Component, RainbowPattern, TargetGraph};

/// Every coloring of K_{n,n} with colors from {1..k}, by counting.
fn naive_colorings(n: usize, k: u16) -> impl Iterator<Item = ColoredBigraph> {
    let cells = n * n;
    let total = (k as u64).pow(cells as u32);
    (0..total).map(move |mut x| {
        let mut v = Vec::with_capacity(cells);
        for _ in 0..cells {
            v.push((x % k as u64) as Color + 1);
            x /= k as u64;
        }
        ColoredBigraph::new(n, n, k, v).unwrap()
    })
}

#[test]
fn pruned_and_naive_avoidance_agree_on_small_instances() {
    let targets = [
        TargetGraph::path(4).unwrap(),
        TargetGraph::path(5).unwrap(),
        TargetGraph::new(vec![Component::Cycle { vertices: 4 }]).unwrap(),
        TargetGraph::new(vec![
            Component::Path { vertices: 2 },
            Component::Path { vertices: 2 },
        ])
        .unwrap(),
    ];
    for n in 2..=3usize {
        for k in 1..=3u16 {
            for target in &targets {
                for rainbow in [None, Some(RainbowPattern::P4), Some(RainbowPattern::K13)] {
                    let naive_exists = naive_colorings(n, k).any(|g| {
                        g.is_exact()
                            && find_monochromatic(&g, target).is_none()
                            && rainbow.is_none_or(|p| find_rainbow(&g, p).is_none())
                    });
                    let spec = AvoidSpec {
                        n,
                        k,
                        forbid_rainbow: rainbow,
                        forbid_mono: Some(target.clone()),
                        require_exact: true,
                    };
                    let (witness, _) = exists_avoiding(&spec, 1 << 28, 1).unwrap();
                    assert_eq!(
                        witness.is_some(),
                        naive_exists,
                        "pruned vs naive disagree at n={n} k={k} target={target} rainbow={rainbow:?}"
                    );
                    if let Some(g) = witness {
                        assert!(find_monochromatic(&g, target).is_none());
                        if let Some(p) = rainbow {
                            assert!(find_rainbow(&g, p).is_none());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn orbit_filtered_count_matches_naive_canonical_dedup() {
    for (n, k) in [(2usize, 2u16), (2, 3), (3, 2), (3, 3)] {
        let mut naive = HashSet::new();
        for g in naive_colorings(n, k) {
            naive.insert(canonical_form(&g).unwrap());
        }
        let mut seen = 0u64;
        let stats = enumerate_colorings(
            n,
            k,
            &no_prune,
            |_| {
                seen += 1;
                true
            },
            &EnumerateOptions { orbit_filter: true, ..Default::default() },
        )
        .unwrap();
        assert_eq!(seen, naive.len() as u64, "orbit count mismatch at n={n} k={k}");
        assert_eq!(stats.orbits, Some(naive.len() as u64));
    }
}

#[test]
fn avoidance_search_finds_the_extremal_witness_below_the_value() {
    // bgr_3(P4 : P2+P4) = 7: an avoiding coloring of K_{6,6} must exist
    let target = TargetGraph::new(vec![
        Component::Path { vertices: 2 },
        Component::Path { vertices: 4 },
    ])
    .unwrap();
    let spec = AvoidSpec {
        n: 6,
        k: 3,
        forbid_rainbow: Some(RainbowPattern::P4),
        forbid_mono: Some(target.clone()),
        require_exact: true,
    };
    let (witness, _) = exists_avoiding(&spec, 1 << 28, 1).unwrap();
    let g = witness.expect("K_{6,6} admits an avoiding coloring");
    assert!(find_rainbow(&g, RainbowPattern::P4).is_none());
    assert!(find_monochromatic(&g, &target).is_none());
}

#[test]
fn witness_restrictions_remain_avoiding() {
    // restriction of an avoiding coloring is avoiding (possibly not exact)
    let target = TargetGraph::path(6).unwrap();
    let spec = AvoidSpec {
        n: 4,
        k: 2,
        forbid_rainbow: None,
        forbid_mono: Some(target.clone()),
        require_exact: true,
    };
    let (witness, _) = exists_avoiding(&spec, 1 << 28, 1).unwrap();
    let g = witness.expect("br_2(P_6) = 5");
    for m in 3..=4usize {
        let cells: Vec<Color> =
            (0..m).flat_map(|u| (0..m).map(move |v| (u, v))).map(|(u, v)| g.color(u, v)).collect();
        let sub = ColoredBigraph::new(m, m, g.declared_colors(), cells).unwrap();
        assert!(find_monochromatic(&sub, &target).is_none(), "restriction to {m}x{m} gained a P6");
    }
}

/// Independent rainbow oracle: enumerate all edge subsets of the right size
/// and test the shape directly on degrees, never reusing the detector's
/// tuple scan.
fn rainbow_oracle(g: &ColoredBigraph, pattern: RainbowPattern) -> bool {
    let (a, b) = (g.left_size(), g.right_size());
    let all_edges: Vec<(usize, usize)> = (0..a).flat_map(|u| (0..b).map(move |v| (u, v))).collect();
    let m = pattern.edge_count();
    let mut picks = vec![0usize; m];
    fn subsets(
        edges: &[(usize, usize)],
        m: usize,
        from: usize,
        at: usize,
        picks: &mut Vec<usize>,
        test: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if at == m {
            return test(picks);
        }
        for i in from..edges.len() {
            picks[at] = i;
            if subsets(edges, m, i + 1, at + 1, picks, test) {
                return true;
            }
        }
        false
    }
    let mut test = |picks: &[usize]| -> bool {
        let chosen: Vec<(usize, usize)> = picks.iter().map(|&i| all_edges[i]).collect();
        let mut colors: Vec<Color> = chosen.iter().map(|&(u, v)| g.color(u, v)).collect();
        colors.sort_unstable();
        colors.dedup();
        if colors.len() != chosen.len() {
            return false;
        }
        // degree profile over the chosen edges
        let mut deg = std::collections::HashMap::new();
        for &(u, v) in &chosen {
            *deg.entry(("u", u)).or_insert(0) += 1;
            *deg.entry(("v", v)).or_insert(0) += 1;
        }
        let mut profile: Vec<usize> = deg.values().copied().collect();
        profile.sort_unstable();
        match pattern {
            RainbowPattern::K13 => profile == [1, 1, 1, 3],
            // a path with e edges has e+1 vertices, two of degree 1; the
            // degree profile alone identifies it among 3- and 4-edge
            // bipartite subgraphs except C4+edge-disjoint cases, which the
            // vertex count rules out
            RainbowPattern::P4 => profile == [1, 1, 2, 2],
            RainbowPattern::P5 => profile == [1, 1, 2, 2, 2] && is_connected(&chosen),
        }
    };
    subsets(&all_edges, m, 0, 0, &mut picks, &mut test)
}

fn is_connected(edges: &[(usize, usize)]) -> bool {
    let mut verts: Vec<(usize, usize)> = Vec::new();
    for &(u, v) in edges {
        for key in [(0, u), (1, v)] {
            if !verts.contains(&key) {
                verts.push(key);
            }
        }
    }
    let mut reach = vec![false; verts.len()];
    reach[0] = true;
    loop {
        let mut changed = false;
        for &(u, v) in edges {
            let iu = verts.iter().position(|&x| x == (0, u)).unwrap();
            let iv = verts.iter().position(|&x| x == (1, v)).unwrap();
            if reach[iu] != reach[iv] {
                reach[iu] = true;
                reach[iv] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    reach.iter().all(|&r| r)
}

#[test]
fn detector_completeness_against_subset_oracle() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for _ in 0..400 {
        let a = rng.gen_range(2..=4);
        let b = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=5u16);
        let cells: Vec<Color> = (0..a * b).map(|_| rng.gen_range(1..=k)).collect();
        let g = ColoredBigraph::new(a, b, k, cells).unwrap();
        for pattern in [RainbowPattern::P4, RainbowPattern::P5, RainbowPattern::K13] {
            let found = find_rainbow(&g, pattern);
            assert_eq!(
                found.is_some(),
                rainbow_oracle(&g, pattern),
                "detector vs oracle disagree for {pattern} on\n{g}"
            );
            if let Some(cert) = found {
                assert_eq!(cert.check(&g), Ok(()));
            }
        }
    }
}

#[test]
fn classifier_dichotomy_and_orientation_closure_at_n3() {
    // over every exact rainbow-free coloring at n=3, k<=4: classifier result
    // must be a case (never NotApplicable), the transpose must classify to
    // the same label, and any witness must verify
    for theorem in [StructureTheorem::T13, StructureTheorem::T14, StructureTheorem::T21] {
        let mut checked = 0u64;
        enumerate_colorings(
            3,
            4,
            &no_prune,
            |g| {
                if find_rainbow(g, theorem.pattern()).is_some() {
                    let c = classify(g, theorem).unwrap();
                    assert!(matches!(c, Classification::NotApplicable(_)));
                    return true;
                }
                let c = classify(g, theorem).unwrap();
                let Classification::Case { label, witness } = &c else {
                    panic!("rainbow-free coloring classified NotApplicable:\n{g}");
                };
                if let Some(w) = witness {
                    assert!(bgr_core::structure::verify_witness(g, w).unwrap(), "{g}");
                }
                let ct = classify(&g.transpose(), theorem).unwrap();
                assert_eq!(ct.label(), Some(*label), "transpose label differs for\n{g}");
                checked += 1;
                true
            },
            &EnumerateOptions::default(),
        )
        .unwrap();
        assert!(checked > 0);
    }
}

#[test]
fn structure_reports_are_deterministic_and_parallel_consistent() {
    let opts1 = StructureCheckOptions { k_max: 4, node_budget: 1 << 30, jobs: 1 };
    let opts2 = StructureCheckOptions { jobs: 3, ..opts1.clone() };
    let a = check_structure_theorem(StructureTheorem::T21, 3, &opts1).unwrap();
    let b = check_structure_theorem(StructureTheorem::T21, 3, &opts1).unwrap();
    let c = check_structure_theorem(StructureTheorem::T21, 3, &opts2).unwrap();
    assert_eq!(a.canonical_json(), b.canonical_json());
    assert_eq!(a.canonical_json(), c.canonical_json());
}
