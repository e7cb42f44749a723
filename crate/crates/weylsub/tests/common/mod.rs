//! Shared oracles for the integration suites. Everything here recomputes
//! results by brute force, independently of the library's formula paths.
//!
//! Not every suite uses every oracle.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use weylsub::affine::AffRoot;
use weylsub::finsub::RootSubset;
use weylsub::refsub::{validate_gf, GFPair};
use weylsub::rootsys::{build_root_system, RootSystem};

pub fn sys(s: &str) -> RootSystem {
    build_root_system(&s.parse().unwrap()).unwrap()
}

/// Integer Cartan pairing table `⟨α_a, α̌_b⟩` for fast affine reflections.
pub fn cartan_table(rs: &RootSystem) -> Vec<Vec<i64>> {
    (0..rs.num_roots())
        .map(|a| (0..rs.num_roots()).map(|b| rs.cartan_pair_roots(a, b)).collect())
        .collect()
}

/// Reflection closure of a set of affine roots under its own reflections,
/// truncated to `|level| ≤ work_bound`: the smallest set containing the seed
/// with `s_x(y)` in the set for all members `x, y` (applying
/// `s_{α+nδ}(β+mδ) = s_α(β) + (m − n⟨β,α̌⟩)δ`), modulo the level cutoff.
pub fn affine_closure_oracle(
    rs: &RootSystem,
    seed: &[AffRoot],
    work_bound: i64,
) -> BTreeSet<AffRoot> {
    let table = cartan_table(rs);
    let reflect = |x: &AffRoot, y: &AffRoot| -> AffRoot {
        AffRoot::new(
            rs.reflect_root(x.root, y.root),
            y.level - x.level * table[y.root][x.root],
        )
    };
    let mut set: BTreeSet<AffRoot> = seed.iter().copied().collect();
    let mut members: Vec<AffRoot> = set.iter().copied().collect();
    let mut queue: Vec<AffRoot> = members.clone();
    while let Some(x) = queue.pop() {
        let snapshot = members.clone();
        for y in &snapshot {
            for img in [reflect(&x, y), reflect(y, &x)] {
                if img.level.abs() <= work_bound && set.insert(img) {
                    members.push(img);
                    queue.push(img);
                }
            }
        }
    }
    set
}

/// All np subsets of the full root set (pairwise nonpositive inner products),
/// including the empty set, by backtracking.
pub fn all_np_subsets(rs: &RootSystem) -> Vec<Vec<usize>> {
    let n = rs.num_roots();
    let nonpos: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    use num::Signed;
                    !rs.inner_roots(a, b).is_positive()
                })
                .collect()
        })
        .collect();
    let mut out = vec![vec![]];
    let mut cur: Vec<usize> = Vec::new();
    fn extend(
        start: usize,
        n: usize,
        nonpos: &[Vec<bool>],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for next in start..n {
            if cur.iter().all(|&c| nonpos[c][next]) {
                cur.push(next);
                out.push(cur.clone());
                extend(next + 1, n, nonpos, cur, out);
                cur.pop();
            }
        }
    }
    extend(0, n, &nonpos, &mut cur, &mut out);
    out
}

/// All canonical `(Γ, f)` pairs over the system with labels at most `fmax`.
pub fn all_gf_pairs(rs: &RootSystem, fmax: i64) -> Vec<GFPair> {
    let mut out = Vec::new();
    for gamma in all_np_subsets(rs) {
        let gamma_set: RootSubset = gamma.iter().copied().collect();
        // Label ranges: [0, fmax] on positive members, [1, fmax] on negative.
        let ranges: Vec<Vec<i64>> = gamma
            .iter()
            .map(|&r| {
                if rs.is_positive(r) {
                    (0..=fmax).collect()
                } else {
                    (1..=fmax).collect()
                }
            })
            .collect();
        let mut stack: Vec<Vec<i64>> = vec![vec![]];
        for range in &ranges {
            let mut next = Vec::new();
            for prefix in &stack {
                for &v in range {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            stack = next;
        }
        for labels in stack {
            let f: BTreeMap<usize, i64> = gamma.iter().copied().zip(labels).collect();
            out.push(validate_gf(rs, &gamma_set, &f).expect("canonical pair"));
        }
    }
    out
}

/// Independent volume oracle for the full pair of a rank-1 system: the length
/// of the segment `[0, α̌/2]`, squared (rational).
pub fn rank1_alcove_length_squared(rs: &RootSystem) -> weylsub::Rat {
    let half = rs.coroot(rs.simple_root(0)).scale(&weylsub::linalg::rat(1, 2));
    rs.inner(&half, &half)
}

/// Independent volume oracle: covolume²(Q)/|W|² — the squared volume of a
/// fundamental domain of the affine Weyl group.
pub fn covolume_over_weyl_squared(rs: &RootSystem) -> weylsub::Rat {
    let (q, _, _) = rs.lattices().unwrap();
    let gram = weylsub::linalg::Mat::new(
        q.basis
            .iter()
            .map(|a| q.basis.iter().map(|b| rs.inner(a, b)).collect())
            .collect(),
    );
    let det = gram.det();
    let w = rs.weyl_group().unwrap().len() as i64;
    det / weylsub::linalg::rat_int(w * w)
}
