//! Subsystems of a finite root system: simple-subsystem and np-subset tests,
//! orthogonal decomposition of np subsets, elementary extensions, the
//! completed-Dynkin-diagram enumeration of subsystems up to conjugacy, and
//! closedness.
//!
//! A subset is always a set of root indices interpreted against an explicitly
//! supplied [`RootSystem`]; subsets never own their ambient system.

use crate::linalg::{self, Mat, Rat};
use crate::par::{map_items, Exec};
use crate::rootsys::{Family, RootSystem, SimpleType, WeylElement};
use crate::{Error, Result};
use num::{Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// A subset of the roots of an ambient system, by index.
pub type RootSubset = BTreeSet<usize>;

/// One orthogonal component of an np subset. For a linearly dependent
/// component, `alpha` is a distinguished root with `gamma = gamma_prime ∪
/// {alpha}` such that `gamma_prime` is a simple subsystem containing `alpha`
/// in its span, and `c` holds the unique positive integer relation
/// coefficients with gcd 1 (normalised so `c[alpha] = 1`, which the gcd
/// normalisation forces for crystallographic data).
#[derive(Debug, Clone)]
pub struct NpComponent {
    pub gamma: Vec<usize>,
    pub gamma_prime: Vec<usize>,
    pub alpha: Option<usize>,
    pub c: Option<BTreeMap<usize, i64>>,
}

impl NpComponent {
    pub fn is_dependent(&self) -> bool {
        self.alpha.is_some()
    }
}

/// Orthogonal decomposition of an np subset.
#[derive(Debug, Clone)]
pub struct NpDecomposition {
    pub components: Vec<NpComponent>,
}

/// `true` iff `⟨α, β⟩ ≤ 0` for all distinct members.
pub fn is_np_subset(rs: &RootSystem, s: &RootSubset) -> bool {
    let v: Vec<usize> = s.iter().copied().collect();
    for (i, &a) in v.iter().enumerate() {
        for &b in &v[i + 1..] {
            if rs.inner_roots(a, b).is_positive() {
                return false;
            }
        }
    }
    true
}

/// `true` iff the subset is linearly independent with pairwise nonpositive
/// Cartan pairings — the simple-subsystem criterion.
pub fn is_simple_subsystem(rs: &RootSystem, s: &RootSubset) -> bool {
    if !is_np_subset(rs, s) {
        return false;
    }
    is_independent(rs, s)
}

fn is_independent(rs: &RootSystem, s: &RootSubset) -> bool {
    if s.is_empty() {
        return true;
    }
    let cols: Vec<Vec<Rat>> = s.iter().map(|&r| rs.root_vector(r).coords).collect();
    Mat::from_columns(&cols).rank() == cols.len()
}

/// Partition a subset into its orthogonality components.
pub fn orthogonal_components(rs: &RootSystem, s: &RootSubset) -> Vec<Vec<usize>> {
    let v: Vec<usize> = s.iter().copied().collect();
    let n = v.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut block = vec![start];
        comp[start] = id;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if comp[j] == usize::MAX && !rs.inner_roots(v[i], v[j]).is_zero() {
                    comp[j] = id;
                    block.push(j);
                    stack.push(j);
                }
            }
        }
        let mut roots: Vec<usize> = block.iter().map(|&i| v[i]).collect();
        roots.sort_unstable();
        out.push(roots);
    }
    out.sort();
    out
}

/// The smallest reflection-closed superset of `s`: the root subsystem whose
/// reflections are those of the group generated by `{s_α : α ∈ s}`.
pub fn subsystem_of(rs: &RootSystem, s: &RootSubset) -> RootSubset {
    let mut closed: RootSubset = s.clone();
    let mut frontier: Vec<usize> = closed.iter().copied().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        let members: Vec<usize> = closed.iter().copied().collect();
        for &b in &frontier {
            for &a in &members {
                for img in [rs.reflect_root(a, b), rs.reflect_root(b, a)] {
                    if closed.insert(img) {
                        next.push(img);
                    }
                }
            }
        }
        frontier = next;
    }
    closed
}

/// Decompose an np subset per its orthogonal components, finding for each
/// linearly dependent component the distinguished root and the integer
/// relation. The distinguished root is the smallest-index member that works.
pub fn np_decompose(rs: &RootSystem, s: &RootSubset) -> Result<NpDecomposition> {
    if !is_np_subset(rs, s) {
        return Err(Error::invalid("subset is not an np subset"));
    }
    let mut components = Vec::new();
    for block in orthogonal_components(rs, s) {
        let block_set: RootSubset = block.iter().copied().collect();
        if is_independent(rs, &block_set) {
            components.push(NpComponent {
                gamma: block,
                gamma_prime: block_set.iter().copied().collect(),
                alpha: None,
                c: None,
            });
            continue;
        }
        // Dependent component: search for θ with Γ∖{θ} independent and
        // θ in the subsystem generated by Γ∖{θ}. Negative candidates are
        // preferred so that Γ' keeps as many positive roots as possible
        // (a dependent np component always contains a negative root).
        let mut found = None;
        let mut candidates = block.clone();
        candidates.sort_by_key(|&r| (rs.is_positive(r), r));
        for &theta in &candidates {
            let mut rest: RootSubset = block_set.clone();
            rest.remove(&theta);
            if !is_independent(rs, &rest) {
                continue;
            }
            if subsystem_of(rs, &rest).contains(&theta) {
                found = Some((theta, rest));
                break;
            }
        }
        let (theta, rest) = found.ok_or_else(|| {
            Error::internal("dependent np component admits no distinguished root")
        })?;
        // Unique relation Σ c_γ γ = 0; scale to coprime positive integers.
        let cols: Vec<Vec<Rat>> = block.iter().map(|&r| rs.root_vector(r).coords).collect();
        let kernel = Mat::from_columns(&cols).kernel();
        if kernel.len() != 1 {
            return Err(Error::internal(
                "dependent np component with kernel of dimension != 1",
            ));
        }
        let prim = linalg::primitive_integer_vector(&kernel[0]);
        if prim.iter().any(|x| !x.is_positive()) {
            return Err(Error::internal("relation coefficients not all positive"));
        }
        let c: BTreeMap<usize, i64> = block
            .iter()
            .zip(&prim)
            .map(|(&r, x)| (r, x.to_i64().expect("small coefficient")))
            .collect();
        debug_assert_eq!(c[&theta], 1, "gcd-normalised relation has c_theta = 1");
        components.push(NpComponent {
            gamma: block,
            gamma_prime: rest.iter().copied().collect(),
            alpha: Some(theta),
            c: Some(c),
        });
    }
    Ok(NpDecomposition { components })
}

/// The canonical simple system of a subsystem: the positive members that are
/// not a sum of two positive members.
pub fn canonical_simple_system(rs: &RootSystem, sub: &RootSubset) -> Vec<usize> {
    let positives: Vec<usize> = sub.iter().copied().filter(|&r| rs.is_positive(r)).collect();
    let pos_set: BTreeSet<Vec<i64>> = positives.iter().map(|&r| rs.roots[r].clone()).collect();
    positives
        .iter()
        .copied()
        .filter(|&a| {
            !positives.iter().any(|&b| {
                let diff: Vec<i64> = (0..rs.rank)
                    .map(|i| rs.roots[a][i] - rs.roots[b][i])
                    .collect();
                b != a && pos_set.contains(&diff)
            })
        })
        .collect()
}

/// How an emitted subsystem arose from the completed-diagram construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionStep {
    /// Roots of the component block of the canonical simple system used.
    pub component: Vec<usize>,
    /// The adjoined chamber root `θ` (the new simple root is `−θ`).
    pub theta: usize,
    /// `true` when `θ̌` is the highest coroot rather than `θ` the highest root.
    pub dual_side: bool,
    /// The deleted node.
    pub deleted: usize,
}

/// For a subsystem `Ψ`, emit every subsystem `Ψ'` obtained from the canonical
/// simple system of `Ψ` by adjoining the negative of a chamber root `θ` of an
/// indecomposable component and deleting one node of that component's block;
/// `Ψ` is then an elementary extension of each emitted `Ψ'`, and each `Ψ'`
/// strictly contains the subsystem of the deleted diagram.
pub fn elementary_extensions(
    rs: &RootSystem,
    psi: &RootSubset,
) -> Result<Vec<(RootSubset, ExtensionStep)>> {
    let delta = canonical_simple_system(rs, psi);
    let delta_set: RootSubset = delta.iter().copied().collect();
    let mut out = Vec::new();
    for block in orthogonal_components(rs, &delta_set) {
        let block_sub = subsystem_of(rs, &block.iter().copied().collect());
        let (omega, omega_dual) = chamber_roots(rs, &block_sub, &block)?;
        let mut thetas = vec![(omega, false)];
        if omega_dual != omega {
            thetas.push((omega_dual, true));
        }
        for (theta, dual_side) in thetas {
            for &deleted in &block {
                let mut gens: RootSubset = delta_set.clone();
                gens.remove(&deleted);
                gens.insert(rs.negative_of(theta));
                let ext = subsystem_of(rs, &gens);
                out.push((
                    ext,
                    ExtensionStep {
                        component: block.clone(),
                        theta,
                        dual_side,
                        deleted,
                    },
                ));
            }
        }
    }
    Ok(out)
}

/// Chamber roots (highest root, dual-highest coroot's root) of an
/// indecomposable subsystem with the given simple system.
pub fn chamber_roots(
    rs: &RootSystem,
    sub: &RootSubset,
    simple: &[usize],
) -> Result<(usize, usize)> {
    let cols: Vec<Vec<Rat>> = simple.iter().map(|&r| rs.root_vector(r).coords).collect();
    let basis = Mat::from_columns(&cols);
    let mut best_ht: Option<(Rat, usize)> = None;
    let mut best_dual: Option<(Rat, usize)> = None;
    for &r in sub {
        let coords = basis
            .solve(&rs.root_vector(r).coords)
            .ok_or_else(|| Error::internal("subsystem root outside simple span"))?;
        let ht: Rat = coords.iter().fold(Rat::zero(), |a, b| a + b);
        if best_ht.as_ref().map_or(true, |(b, _)| &ht > b) {
            best_ht = Some((ht.clone(), r));
        }
        // Dual height: coefficients of the coroot over the simple coroots.
        let dual_ht: Rat = coords
            .iter()
            .zip(simple)
            .map(|(c, &s)| c * &rs.norm_half[s])
            .fold(Rat::zero(), |a, b| a + b)
            / &rs.norm_half[r];
        if best_dual.as_ref().map_or(true, |(b, _)| &dual_ht > b) {
            best_dual = Some((dual_ht, r));
        }
    }
    Ok((
        best_ht.ok_or_else(|| Error::internal("empty subsystem component"))?.1,
        best_dual.unwrap().1,
    ))
}

/// Literal closedness test: whenever `α, β ∈ Ψ` and `α + β ∈ Φ`, also
/// `α + β ∈ Ψ`.
pub fn is_closed(rs: &RootSystem, psi: &RootSubset) -> bool {
    let v: Vec<usize> = psi.iter().copied().collect();
    for (i, &a) in v.iter().enumerate() {
        for &b in &v[i + 1..] {
            let sum: Vec<i64> = (0..rs.rank).map(|k| rs.roots[a][k] + rs.roots[b][k]).collect();
            if let Some(idx) = rs.index_of_root_coords(&sum) {
                if !psi.contains(&idx) {
                    return false;
                }
            }
        }
    }
    true
}

/// The dual root system, materialised as a genuine [`RootSystem`] whose roots
/// are the coroots of `rs`, together with the index map sending each root of
/// `rs` to its coroot in the dual.
pub fn dual_system(rs: &RootSystem) -> Result<(RootSystem, Vec<usize>)> {
    let gram: Vec<Vec<Rat>> = (0..rs.rank)
        .map(|i| {
            (0..rs.rank)
                .map(|j| {
                    let si = rs.simple_root(i);
                    let sj = rs.simple_root(j);
                    &rs.gram[i][j] / (&rs.norm_half[si] * &rs.norm_half[sj])
                })
                .collect()
        })
        .collect();
    let dual = RootSystem::from_gram(gram)?;
    if dual.num_roots() != rs.num_roots() {
        return Err(Error::internal("dual system has a different root count"));
    }
    let map: Vec<usize> = (0..rs.num_roots())
        .map(|r| {
            let coords = rs.coroot_coords_dual_basis(r);
            let ints: Vec<i64> = coords
                .iter()
                .map(|c| c.to_i64().expect("small coroot coordinate"))
                .collect();
            dual.index_of_root_coords(&ints)
                .ok_or_else(|| Error::internal("coroot missing from dual system"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((dual, map))
}

/// Closedness of `Ψ̌` inside `Φ̌`.
pub fn is_dual_closed(rs: &RootSystem, psi: &RootSubset) -> Result<bool> {
    let (dual, map) = dual_system(rs)?;
    let mapped: RootSubset = psi.iter().map(|&r| map[r]).collect();
    Ok(is_closed(&dual, &mapped))
}

// ---------------------------------------------------------------------------
// Dynkin diagrams and type classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormTag {
    Only,
    Short,
    Long,
}

#[derive(Debug, Clone)]
pub struct DiagNode {
    pub root: usize,
    pub tag: NormTag,
}

#[derive(Debug, Clone)]
pub struct DiagEdge {
    pub a: usize,
    pub b: usize,
    /// Bond count `⟨α,β̌⟩⟨β,α̌⟩ ∈ {1,2,3}`.
    pub bond: u8,
    /// For multiple bonds, the index of the shorter of the two nodes (the
    /// arrow points at it).
    pub arrow_to: Option<usize>,
}

/// The Dynkin diagram of a simple subsystem.
#[derive(Debug, Clone)]
pub struct DynkinDiagram {
    pub nodes: Vec<DiagNode>,
    pub edges: Vec<DiagEdge>,
}

impl DynkinDiagram {
    pub fn from_simple_set(rs: &RootSystem, simple: &[usize]) -> Result<Self> {
        let set: RootSubset = simple.iter().copied().collect();
        if !is_simple_subsystem(rs, &set) {
            return Err(Error::invalid("not a simple subsystem"));
        }
        let norms: Vec<Rat> = simple.iter().map(|&r| rs.norm_half[r].clone()).collect();
        let nodes = simple
            .iter()
            .zip(&norms)
            .map(|(&root, n)| {
                // Tag relative to the other norms in the same diagram component;
                // refined below once edges are known. Start with Only.
                let _ = n;
                DiagNode {
                    root,
                    tag: NormTag::Only,
                }
            })
            .collect::<Vec<_>>();
        let mut edges = Vec::new();
        for i in 0..simple.len() {
            for j in i + 1..simple.len() {
                let cij = rs.cartan_pair_roots(simple[i], simple[j]);
                let cji = rs.cartan_pair_roots(simple[j], simple[i]);
                let bond = (cij * cji) as u8;
                if bond == 0 {
                    continue;
                }
                if bond > 3 {
                    return Err(Error::internal("bond count above 3 in finite diagram"));
                }
                let arrow_to = if bond > 1 {
                    Some(if norms[i] < norms[j] { i } else { j })
                } else {
                    None
                };
                edges.push(DiagEdge {
                    a: i,
                    b: j,
                    bond,
                    arrow_to,
                });
            }
        }
        let mut diag = DynkinDiagram { nodes, edges };
        diag.retag(&norms);
        Ok(diag)
    }

    fn retag(&mut self, norms: &[Rat]) {
        let comps = self.connected_components();
        for comp in comps {
            let max = comp.iter().map(|&i| norms[i].clone()).max().unwrap();
            let min = comp.iter().map(|&i| norms[i].clone()).min().unwrap();
            for &i in &comp {
                self.nodes[i].tag = if max == min {
                    NormTag::Only
                } else if norms[i] == max {
                    NormTag::Long
                } else {
                    NormTag::Short
                };
            }
        }
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u8)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.a].push((e.b, e.bond));
            adj[e.b].push((e.a, e.bond));
        }
        adj
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for &(j, _) in &adj[i] {
                    if !seen[j] {
                        seen[j] = true;
                        comp.push(j);
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Classify each connected component as an indecomposable Cartan type.
    pub fn classify(&self) -> Result<Vec<SimpleType>> {
        let adj = self.adjacency();
        let mut types = Vec::new();
        for comp in self.connected_components() {
            types.push(classify_component(&adj, &comp, &self.nodes)?);
        }
        types.sort();
        Ok(types)
    }

    /// Plain-text rendering, one line per component, e.g. `o---o=>=o`.
    pub fn render(&self) -> String {
        let adj = self.adjacency();
        let mut lines = Vec::new();
        for comp in self.connected_components() {
            lines.push(render_component(&adj, &comp));
        }
        lines.join("\n")
    }
}

fn classify_component(
    adj: &[Vec<(usize, u8)>],
    comp: &[usize],
    nodes: &[DiagNode],
) -> Result<SimpleType> {
    let n = comp.len();
    if n == 1 {
        return SimpleType::new(Family::A, 1);
    }
    let bonds: Vec<u8> = comp
        .iter()
        .flat_map(|&i| adj[i].iter().filter(|(j, _)| comp.contains(j)).map(|&(_, b)| b))
        .collect();
    if bonds.iter().any(|&b| b == 3) {
        if n == 2 {
            return SimpleType::new(Family::G, 2);
        }
        return Err(Error::internal("triple bond in a component of rank > 2"));
    }
    let degrees: Vec<usize> = comp.iter().map(|&i| adj[i].len()).collect();
    let n_double = bonds.iter().filter(|&&b| b == 2).count() / 2;
    if n_double > 0 {
        if n_double != 1 || degrees.iter().any(|&d| d > 2) {
            return Err(Error::internal("unrecognised multiply-laced diagram"));
        }
        if n == 2 {
            return SimpleType::new(Family::B, 2);
        }
        // A path; orient it and inspect where the double bond sits.
        let path = path_order(adj, comp)?;
        let dpos = (0..n - 1)
            .find(|&i| edge_bond(adj, path[i], path[i + 1]) == 2)
            .expect("double bond on the path");
        let at_end = dpos == 0 || dpos == n - 2;
        if !at_end {
            if n == 4 && dpos == 1 {
                return SimpleType::new(Family::F, 4);
            }
            return Err(Error::internal("interior double bond outside F4"));
        }
        // Put the double bond at the far end.
        let path: Vec<usize> = if dpos == 0 {
            path.into_iter().rev().collect()
        } else {
            path
        };
        let last_short = nodes[path[n - 1]].tag == NormTag::Short;
        if last_short {
            SimpleType::new(Family::B, n)
        } else {
            SimpleType::new(Family::C, n)
        }
    } else {
        // Simply laced: A, D or E by tree shape.
        let branch: Vec<usize> = comp.iter().copied().filter(|&i| adj[i].len() >= 3).collect();
        match branch.len() {
            0 => SimpleType::new(Family::A, n),
            1 => {
                let b = branch[0];
                if adj[b].len() != 3 {
                    return Err(Error::internal("node of degree > 3"));
                }
                let mut arms: Vec<usize> = adj[b]
                    .iter()
                    .map(|&(start, _)| arm_length(adj, b, start))
                    .collect();
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, _] => SimpleType::new(Family::D, n),
                    [1, 2, 2] => SimpleType::new(Family::E, 6),
                    [1, 2, 3] => SimpleType::new(Family::E, 7),
                    [1, 2, 4] => SimpleType::new(Family::E, 8),
                    _ => Err(Error::internal("unrecognised simply-laced tree")),
                }
            }
            _ => Err(Error::internal("more than one branch node")),
        }
    }
}

fn edge_bond(adj: &[Vec<(usize, u8)>], a: usize, b: usize) -> u8 {
    adj[a]
        .iter()
        .find(|&&(j, _)| j == b)
        .map(|&(_, bond)| bond)
        .unwrap_or(0)
}

fn path_order(adj: &[Vec<(usize, u8)>], comp: &[usize]) -> Result<Vec<usize>> {
    let ends: Vec<usize> = comp.iter().copied().filter(|&i| adj[i].len() == 1).collect();
    if ends.len() != 2 {
        return Err(Error::internal("component is not a path"));
    }
    let mut path = vec![ends[0]];
    let mut prev = usize::MAX;
    while path.len() < comp.len() {
        let cur = *path.last().unwrap();
        let next = adj[cur]
            .iter()
            .map(|&(j, _)| j)
            .find(|&j| j != prev)
            .ok_or_else(|| Error::internal("broken path"))?;
        prev = cur;
        path.push(next);
    }
    Ok(path)
}

fn arm_length(adj: &[Vec<(usize, u8)>], branch: usize, start: usize) -> usize {
    let mut len = 1;
    let mut prev = branch;
    let mut cur = start;
    loop {
        let next: Vec<usize> = adj[cur].iter().map(|&(j, _)| j).filter(|&j| j != prev).collect();
        match next.as_slice() {
            [] => return len,
            [n] => {
                prev = cur;
                cur = *n;
                len += 1;
            }
            _ => return len, // nested branch; classification will reject
        }
    }
}

fn render_component(adj: &[Vec<(usize, u8)>], comp: &[usize]) -> String {
    if comp.len() == 1 {
        return "o".to_string();
    }
    // Render paths linearly; for branched diagrams fall back to an edge list.
    if let Ok(path) = path_order(adj, comp) {
        let mut s = String::from("o");
        for w in path.windows(2) {
            let bond = edge_bond(adj, w[0], w[1]);
            s.push_str(match bond {
                1 => "---",
                2 => "=2=",
                _ => "=3=",
            });
            s.push('o');
        }
        s
    } else {
        let mut parts = Vec::new();
        for &i in comp {
            for &(j, bond) in &adj[i] {
                if j > i {
                    parts.push(format!("{i}-{bond}-{j}"));
                }
            }
        }
        parts.join(" ")
    }
}

/// Human-readable type string of a subsystem: component types sorted, with a
/// `(short)`/`(long)` annotation for one-length components sitting inside a
/// two-length ambient component.
pub fn subsystem_type_string(rs: &RootSystem, sub: &RootSubset) -> Result<String> {
    if sub.is_empty() {
        return Ok("empty".to_string());
    }
    let simple = canonical_simple_system(rs, sub);
    let simple_set: RootSubset = simple.iter().copied().collect();
    let mut names = Vec::new();
    for block in orthogonal_components(rs, &simple_set) {
        let diag = DynkinDiagram::from_simple_set(rs, &block)?;
        let ty = diag.classify()?;
        debug_assert_eq!(ty.len(), 1);
        let mut name = ty[0].to_string();
        let norms: BTreeSet<Rat> = block.iter().map(|&r| rs.norm_half[r].clone()).collect();
        if norms.len() == 1 {
            let ambient_comp = rs.comp_of_root[block[0]];
            if rs.length_ratio(ambient_comp) > 1 {
                let r = block[0];
                name.push_str(if rs.is_long(r) { "(long)" } else { "(short)" });
            }
        }
        names.push(name);
    }
    names.sort();
    Ok(names.join("x"))
}

// ---------------------------------------------------------------------------
// Enumeration of subsystems up to conjugacy
// ---------------------------------------------------------------------------

/// A conjugacy class of subsystems.
#[derive(Debug, Clone)]
pub struct SubsystemClass {
    /// Canonical representative: the W-minimal sorted member list.
    pub rep: Vec<usize>,
    pub type_string: String,
    pub size: usize,
    pub closed: bool,
    pub dual_closed: bool,
}

/// Result of a classification run.
#[derive(Debug, Clone)]
pub struct Classification {
    pub classes: Vec<SubsystemClass>,
    /// Set when conjugacy was decided by type/norm fingerprints because the
    /// Weyl group exceeded the enumeration cap.
    pub fingerprint_only: bool,
}

fn canonical_form_under(weyl: &[WeylElement], sub: &RootSubset) -> Vec<usize> {
    // Fast path: encode member sets as bitmasks (every system in range here
    // has at most 128 roots below E7).
    let n = weyl.first().map(|w| w.perm.len()).unwrap_or(0);
    if n > 0 && n <= 128 {
        let mut best = u128::MAX;
        for w in weyl {
            let mut mask: u128 = 0;
            for &r in sub {
                mask |= 1u128 << w.perm[r];
            }
            if mask < best {
                best = mask;
            }
        }
        return (0..n).filter(|&i| best & (1u128 << i) != 0).collect();
    }
    let mut out: Option<Vec<usize>> = None;
    for w in weyl {
        let mut img: Vec<usize> = sub.iter().map(|&r| w.apply_root(r)).collect();
        img.sort_unstable();
        if out.as_ref().map_or(true, |b| &img < b) {
            out = Some(img);
        }
    }
    out.unwrap_or_else(|| sub.iter().copied().collect())
}

fn class_of(rs: &RootSystem, rep: Vec<usize>) -> Result<SubsystemClass> {
    let set: RootSubset = rep.iter().copied().collect();
    Ok(SubsystemClass {
        type_string: subsystem_type_string(rs, &set)?,
        size: rep.len(),
        closed: is_closed(rs, &set),
        dual_closed: is_dual_closed(rs, &set)?,
        rep,
    })
}

fn sort_classes(classes: &mut Vec<SubsystemClass>) {
    classes.sort_by(|a, b| {
        (a.size, &a.type_string, &a.rep).cmp(&(b.size, &b.type_string, &b.rep))
    });
}

/// Fixpoint of the completed-diagram operations: starting from `Φ`, apply
/// (1) deletion of arbitrary subsets of the canonical simple system and
/// (2) elementary-extension reversals (complete one component, delete one
/// node), closing under both and deduplicating up to W-conjugacy.
pub fn enumerate_subsystems(rs: &RootSystem, weyl_cap: usize) -> Result<Classification> {
    let weyl = match rs.weyl_group_capped(weyl_cap) {
        Ok(w) => Some(w),
        Err(Error::Resource(_)) => None,
        Err(e) => return Err(e),
    };
    let full: RootSubset = (0..rs.num_roots()).collect();

    match weyl {
        Some(weyl) => {
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            let mut work: Vec<RootSubset> = Vec::new();
            let canon_full = canonical_form_under(&weyl, &full);
            seen.insert(canon_full.clone());
            work.push(canon_full.iter().copied().collect());
            let mut idx = 0;
            while idx < work.len() {
                let psi = work[idx].clone();
                idx += 1;
                let delta = canonical_simple_system(rs, &psi);
                // (1) parabolic deletions: all proper subsets of the simple system.
                for mask in 0..(1u64 << delta.len()) {
                    let gens: RootSubset = delta
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, &r)| r)
                        .collect();
                    let sub = subsystem_of(rs, &gens);
                    let canon = canonical_form_under(&weyl, &sub);
                    if seen.insert(canon.clone()) {
                        work.push(canon.iter().copied().collect());
                    }
                }
                // (2) completed-diagram deletions.
                for (ext, _) in elementary_extensions(rs, &psi)? {
                    let canon = canonical_form_under(&weyl, &ext);
                    if seen.insert(canon.clone()) {
                        work.push(canon.iter().copied().collect());
                    }
                }
            }
            let mut classes = seen
                .into_iter()
                .map(|rep| class_of(rs, rep))
                .collect::<Result<Vec<_>>>()?;
            sort_classes(&mut classes);
            Ok(Classification {
                classes,
                fingerprint_only: false,
            })
        }
        None => {
            // Fingerprint fallback: dedupe by (type string, norm multiset).
            let mut seen: BTreeMap<(String, Vec<Rat>), Vec<usize>> = BTreeMap::new();
            let mut work: Vec<RootSubset> = vec![full.clone()];
            let fp = |rs: &RootSystem, s: &RootSubset| -> Result<(String, Vec<Rat>)> {
                let mut norms: Vec<Rat> = s.iter().map(|&r| rs.norm_half[r].clone()).collect();
                norms.sort();
                Ok((subsystem_type_string(rs, s)?, norms))
            };
            seen.insert(fp(rs, &full)?, full.iter().copied().collect());
            let mut idx = 0;
            while idx < work.len() {
                let psi = work[idx].clone();
                idx += 1;
                let delta = canonical_simple_system(rs, &psi);
                let mut candidates: Vec<RootSubset> = Vec::new();
                for mask in 0..(1u64 << delta.len()) {
                    let gens: RootSubset = delta
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, &r)| r)
                        .collect();
                    candidates.push(subsystem_of(rs, &gens));
                }
                for (ext, _) in elementary_extensions(rs, &psi)? {
                    candidates.push(ext);
                }
                for sub in candidates {
                    let key = fp(rs, &sub)?;
                    if !seen.contains_key(&key) {
                        seen.insert(key, sub.iter().copied().collect());
                        work.push(sub);
                    }
                }
            }
            let mut classes = seen
                .into_values()
                .map(|rep| class_of(rs, rep))
                .collect::<Result<Vec<_>>>()?;
            sort_classes(&mut classes);
            Ok(Classification {
                classes,
                fingerprint_only: true,
            })
        }
    }
}

/// Diagram-method enumeration certified against the brute-force oracle: both
/// routes are run and their class representatives compared; a mismatch is an
/// internal-consistency error.
pub fn enumerate_subsystems_certified(
    rs: &RootSystem,
    weyl_cap: usize,
    exec: Exec,
) -> Result<Classification> {
    let enumerated = enumerate_subsystems(rs, weyl_cap)?;
    if enumerated.fingerprint_only {
        return Err(Error::resource(
            "certification requires exact conjugacy (raise the Weyl cap)",
        ));
    }
    let oracle = oracle_subsystem_classes(rs, exec)?;
    let a: Vec<&Vec<usize>> = enumerated.classes.iter().map(|c| &c.rep).collect();
    let b: Vec<&Vec<usize>> = oracle.classes.iter().map(|c| &c.rep).collect();
    if a != b {
        return Err(Error::internal(
            "diagram enumeration disagrees with the brute-force oracle",
        ));
    }
    Ok(enumerated)
}

/// Brute-force oracle: close every subset of at most `rank` positive roots,
/// deduplicate the resulting subsystems, and group them into W-conjugacy
/// classes. Exhaustive because every subsystem has a canonical simple system
/// of size at most the ambient rank contained in the positive roots.
pub fn oracle_subsystem_classes(rs: &RootSystem, exec: Exec) -> Result<Classification> {
    let weyl = rs.weyl_group()?;
    let mut subsets: Vec<Vec<usize>> = vec![vec![]];
    // All ≤ rank subsets of the positive roots.
    fn extend(
        positives: usize,
        max: usize,
        cur: &mut Vec<usize>,
        start: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == max {
            return;
        }
        for next in start..positives {
            cur.push(next);
            out.push(cur.clone());
            extend(positives, max, cur, next + 1, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    extend(rs.n_positive, rs.rank, &mut cur, 0, &mut subsets);

    let closures = map_items(exec, &subsets, |gens| {
        let set: RootSubset = gens.iter().copied().collect();
        let sub = subsystem_of(rs, &set);
        sub.into_iter().collect::<Vec<usize>>()
    });
    let distinct: BTreeSet<Vec<usize>> = closures.into_iter().collect();
    let distinct: Vec<Vec<usize>> = distinct.into_iter().collect();
    let canons = map_items(exec, &distinct, |sub| {
        canonical_form_under(&weyl, &sub.iter().copied().collect())
    });
    let reps: BTreeSet<Vec<usize>> = canons.into_iter().collect();
    let mut classes = reps
        .into_iter()
        .map(|rep| class_of(rs, rep))
        .collect::<Result<Vec<_>>>()?;
    sort_classes(&mut classes);
    Ok(Classification {
        classes,
        fingerprint_only: false,
    })
}

// ---------------------------------------------------------------------------
// Stabilisers and upward steps
// ---------------------------------------------------------------------------

/// Brute-force setwise stabiliser `{w ∈ W : w(S) = S}`.
pub fn setwise_stabilizer(weyl: &[WeylElement], s: &RootSubset) -> Vec<WeylElement> {
    weyl.iter()
        .filter(|w| {
            let img: RootSubset = s.iter().map(|&r| w.apply_root(r)).collect();
            img == *s
        })
        .cloned()
        .collect()
}

/// Setwise stabiliser of `Γ = Π ∪ {−θ}` (θ the highest root, or the root
/// whose coroot is the dual highest root) in an indecomposable system; its
/// order is the index of connection.
pub fn np_stabilizer(rs: &RootSystem, gamma: &RootSubset) -> Result<Vec<WeylElement>> {
    if rs.components.len() != 1 {
        return Err(Error::invalid("np_stabilizer requires an indecomposable system"));
    }
    let mut allowed: Vec<RootSubset> = Vec::new();
    for theta in [rs.highest[0], rs.highest_dual[0]] {
        let mut g: RootSubset = (0..rs.rank).map(|i| rs.simple_root(i)).collect();
        g.insert(rs.negative_of(theta));
        allowed.push(g);
    }
    if !allowed.contains(gamma) {
        return Err(Error::invalid(
            "np_stabilizer requires Γ = Π ∪ {−θ} with θ a chamber root",
        ));
    }
    let weyl = rs.weyl_group()?;
    Ok(setwise_stabilizer(&weyl, gamma))
}

/// One upward step of the extension theorem: for a proper subsystem `Ψ`,
/// produce `Ψ̂` with `Ψ ⊊ Ψ̂ ⊆ Φ` such that `Ψ` is parabolic in `Ψ̂` or `Ψ̂`
/// is an elementary extension of `Ψ`. Returns `None` when `Ψ = Φ`.
pub fn enlarge_subsystem(rs: &RootSystem, psi: &RootSubset) -> Result<Option<RootSubset>> {
    if psi.len() == rs.num_roots() {
        return Ok(None);
    }
    let gamma = canonical_simple_system(rs, psi);
    let alpha0 = (0..rs.num_roots())
        .find(|r| !psi.contains(r))
        .expect("proper subsystem misses a root");
    // Push α into the antidominant chamber of W_Ψ for Γ.
    let mut alpha = alpha0;
    loop {
        match gamma
            .iter()
            .find(|&&g| rs.inner_roots(g, alpha).is_positive())
        {
            Some(&g) => alpha = rs.reflect_root(g, alpha),
            None => break,
        }
    }
    debug_assert!(!psi.contains(&alpha));
    let mut gamma_ext: RootSubset = gamma.iter().copied().collect();
    gamma_ext.insert(alpha);
    if is_independent(rs, &gamma_ext) {
        return Ok(Some(subsystem_of(rs, &gamma_ext)));
    }
    let dec = np_decompose(rs, &gamma_ext)?;
    let comp = dec
        .components
        .iter()
        .find(|c| c.gamma.contains(&alpha))
        .expect("alpha lies in a component");
    let theta = comp
        .alpha
        .ok_or_else(|| Error::internal("alpha's component must be dependent"))?;
    let mut gens = gamma_ext;
    gens.remove(&theta);
    Ok(Some(subsystem_of(rs, &gens)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, CartanType};

    fn sys(s: &str) -> RootSystem {
        build_root_system(&s.parse::<CartanType>().unwrap()).unwrap()
    }

    fn pi_union_minus_highest(rs: &RootSystem) -> RootSubset {
        let mut g: RootSubset = (0..rs.rank).map(|i| rs.simple_root(i)).collect();
        g.insert(rs.negative_of(rs.highest[0]));
        g
    }

    #[test]
    fn simple_subsystem_examples() {
        let rs = sys("A2");
        let pi: RootSubset = (0..2).map(|i| rs.simple_root(i)).collect();
        assert!(is_simple_subsystem(&rs, &pi));

        let a1 = rs.simple_root(0);
        let dep: RootSubset = [a1, rs.negative_of(a1)].into_iter().collect();
        assert!(!is_simple_subsystem(&rs, &dep));

        let sum = rs.index_of_root_coords(&[1, 1]).unwrap();
        let bad: RootSubset = [a1, sum].into_iter().collect();
        assert!(!is_simple_subsystem(&rs, &bad));
        assert!(!is_np_subset(&rs, &bad));
    }

    #[test]
    fn np_subset_examples() {
        let rs = sys("A2");
        assert!(is_np_subset(&rs, &pi_union_minus_highest(&rs)));
        let single: RootSubset = [rs.simple_root(0)].into_iter().collect();
        assert!(is_np_subset(&rs, &single));
    }

    #[test]
    fn np_decompose_a2_affine_shape() {
        let rs = sys("A2");
        let g = pi_union_minus_highest(&rs);
        let dec = np_decompose(&rs, &g).unwrap();
        assert_eq!(dec.components.len(), 1);
        let comp = &dec.components[0];
        assert!(comp.is_dependent());
        let c = comp.c.as_ref().unwrap();
        assert!(c.values().all(|&x| x == 1));
        assert_eq!(comp.gamma_prime.len(), 2);
        // Relation sums to zero.
        let mut total = vec![0i64; rs.rank];
        for (&r, &coeff) in c {
            for i in 0..rs.rank {
                total[i] += coeff * rs.roots[r][i];
            }
        }
        assert!(total.iter().all(|&x| x == 0));
    }

    #[test]
    fn np_decompose_independent_and_orthogonal() {
        let rs = sys("B2");
        let pi: RootSubset = (0..2).map(|i| rs.simple_root(i)).collect();
        let dec = np_decompose(&rs, &pi).unwrap();
        assert_eq!(dec.components.len(), 1);
        assert!(!dec.components[0].is_dependent());

        let rs = sys("A3");
        let two: RootSubset = [rs.simple_root(0), rs.simple_root(2)].into_iter().collect();
        let dec = np_decompose(&rs, &two).unwrap();
        assert_eq!(dec.components.len(), 2);
    }

    #[test]
    fn subsystem_closure_examples() {
        let rs = sys("A2");
        let pi: RootSubset = (0..2).map(|i| rs.simple_root(i)).collect();
        assert_eq!(subsystem_of(&rs, &pi).len(), 6);
        assert!(subsystem_of(&rs, &RootSubset::new()).is_empty());

        let rs = sys("G2");
        let longs: RootSubset = (0..rs.num_roots()).filter(|&r| rs.is_long(r)).collect();
        let long_simples = canonical_simple_system(&rs, &longs);
        let closure = subsystem_of(&rs, &long_simples.iter().copied().collect());
        assert_eq!(closure.len(), 6);
        assert_eq!(subsystem_type_string(&rs, &closure).unwrap(), "A2(long)");
    }

    #[test]
    fn elementary_extension_examples() {
        // The long A2 inside G2 arises from G2's completed diagram.
        let rs = sys("G2");
        let full: RootSubset = (0..rs.num_roots()).collect();
        let exts = elementary_extensions(&rs, &full).unwrap();
        let longs: RootSubset = (0..rs.num_roots()).filter(|&r| rs.is_long(r)).collect();
        assert!(exts.iter().any(|(e, _)| *e == longs));
        // Deleted-diagram subsystem is strictly contained in each emitted one.
        for (ext, step) in &exts {
            let delta = canonical_simple_system(&rs, &full);
            let rest: RootSubset = delta
                .iter()
                .copied()
                .filter(|&r| r != step.deleted)
                .collect();
            let small = subsystem_of(&rs, &rest);
            assert!(small.is_subset(ext) && small.len() < ext.len());
        }

        // An A1 component: the completed diagram has two nodes, deleting the
        // original one returns the same A1.
        let rs = sys("A1");
        let full: RootSubset = (0..2).collect();
        let exts = elementary_extensions(&rs, &full).unwrap();
        assert!(exts.iter().all(|(e, _)| *e == full));

        // Empty input gives empty output.
        let empty = RootSubset::new();
        assert!(elementary_extensions(&rs, &empty).unwrap().is_empty());
    }

    #[test]
    fn closedness_examples() {
        let rs = sys("B2");
        let full: RootSubset = (0..rs.num_roots()).collect();
        assert!(is_closed(&rs, &full));
        // Short A1xA1 is not closed, but its dual is.
        let shorts: RootSubset = (0..rs.num_roots()).filter(|&r| rs.is_short(r)).collect();
        assert_eq!(shorts.len(), 4);
        assert!(!is_closed(&rs, &shorts));
        assert!(is_dual_closed(&rs, &shorts).unwrap());

        let rs = sys("G2");
        let longs: RootSubset = (0..rs.num_roots()).filter(|&r| rs.is_long(r)).collect();
        assert!(is_closed(&rs, &longs));
    }

    #[test]
    fn enumerate_matches_examples() {
        let rs = sys("A2");
        let classes = enumerate_subsystems(&rs, 1000).unwrap();
        assert!(!classes.fingerprint_only);
        let types: Vec<&str> = classes.classes.iter().map(|c| c.type_string.as_str()).collect();
        assert_eq!(types, vec!["empty", "A1", "A2"]);

        let rs = sys("B2");
        let classes = enumerate_subsystems(&rs, 1000).unwrap();
        assert_eq!(classes.classes.len(), 6);
        let types: Vec<&str> = classes.classes.iter().map(|c| c.type_string.as_str()).collect();
        assert_eq!(
            types,
            vec![
                "empty",
                "A1(long)",
                "A1(short)",
                "A1(long)xA1(long)",
                "A1(short)xA1(short)",
                "B2"
            ]
        );

        let rs = sys("G2");
        let classes = enumerate_subsystems(&rs, 1000).unwrap();
        assert!(classes
            .classes
            .iter()
            .any(|c| c.type_string == "A2(long)"));
    }

    #[test]
    fn oracle_agrees_on_small_types() {
        for t in ["A2", "B2", "G2", "A3"] {
            let rs = sys(t);
            let a = enumerate_subsystems(&rs, 100000).unwrap();
            let b = oracle_subsystem_classes(&rs, Exec::Sequential).unwrap();
            let ra: Vec<&Vec<usize>> = a.classes.iter().map(|c| &c.rep).collect();
            let rb: Vec<&Vec<usize>> = b.classes.iter().map(|c| &c.rep).collect();
            assert_eq!(ra, rb, "{t}");
        }
    }

    #[test]
    fn np_stabilizer_orders_match_index_of_connection() {
        for (t, f) in [("A2", 3), ("G2", 1), ("A1", 2)] {
            let rs = sys(t);
            let g = pi_union_minus_highest(&rs);
            let stab = np_stabilizer(&rs, &g).unwrap();
            assert_eq!(stab.len(), f, "{t}");
        }
    }

    #[test]
    fn np_stabilizer_rejects_other_subsets() {
        let rs = sys("A2");
        let pi: RootSubset = (0..2).map(|i| rs.simple_root(i)).collect();
        assert!(np_stabilizer(&rs, &pi).is_err());
    }

    #[test]
    fn ascending_chain_reaches_full_system() {
        for t in ["A2", "B2", "G2", "A3"] {
            let rs = sys(t);
            let classes = enumerate_subsystems(&rs, 100000).unwrap();
            for class in &classes.classes {
                let mut cur: RootSubset = class.rep.iter().copied().collect();
                let mut steps = 0;
                while let Some(next) = enlarge_subsystem(&rs, &cur).unwrap() {
                    assert!(cur.is_subset(&next) && cur.len() < next.len());
                    cur = next;
                    steps += 1;
                    assert!(steps <= rs.num_roots(), "no progress in {t}");
                }
                assert_eq!(cur.len(), rs.num_roots());
            }
        }
    }

    #[test]
    fn maximal_subsystems_closed_or_dual_closed() {
        for t in ["A2", "B2", "G2", "A3", "B3"] {
            let rs = sys(t);
            let classes = enumerate_subsystems(&rs, 100000).unwrap();
            let weyl = rs.weyl_group().unwrap();
            let full_len = rs.num_roots();
            // Orbits of each class as member sets.
            let orbits: Vec<BTreeSet<Vec<usize>>> = classes
                .classes
                .iter()
                .map(|c| {
                    weyl.iter()
                        .map(|w| {
                            let mut img: Vec<usize> =
                                c.rep.iter().map(|&r| w.apply_root(r)).collect();
                            img.sort_unstable();
                            img
                        })
                        .collect()
                })
                .collect();
            for (i, class) in classes.classes.iter().enumerate() {
                if class.size == full_len {
                    continue;
                }
                let rep: BTreeSet<usize> = class.rep.iter().copied().collect();
                let is_maximal = !classes.classes.iter().enumerate().any(|(j, other)| {
                    j != i
                        && other.size < full_len
                        && other.size > class.size
                        && orbits[j].iter().any(|cand| {
                            let cs: BTreeSet<usize> = cand.iter().copied().collect();
                            rep.is_subset(&cs)
                        })
                });
                if is_maximal {
                    assert!(
                        class.closed || class.dual_closed,
                        "{t}: maximal class {} neither closed nor dual closed",
                        class.type_string
                    );
                }
            }
        }
    }

    #[test]
    fn diagram_classification_round_trip() {
        for t in ["A3", "B3", "C3", "D4", "F4", "G2"] {
            let rs = sys(t);
            let simples: Vec<usize> = (0..rs.rank).map(|i| rs.simple_root(i)).collect();
            let diag = DynkinDiagram::from_simple_set(&rs, &simples).unwrap();
            let types = diag.classify().unwrap();
            assert_eq!(types.len(), 1);
            assert_eq!(types[0].to_string(), t, "classification of {t}");
        }
    }

    #[test]
    fn diagram_render_shapes() {
        let rs = sys("B3");
        let simples: Vec<usize> = (0..rs.rank).map(|i| rs.simple_root(i)).collect();
        let diag = DynkinDiagram::from_simple_set(&rs, &simples).unwrap();
        assert_eq!(diag.render(), "o---o=2=o");
    }
}
