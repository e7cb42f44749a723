//! Finite crystallographic root systems with exact rational arithmetic.
//!
//! All coordinates live in the simple-root basis `Π`, so roots have integer
//! coordinates and the inner product is the Gram matrix of `Π`. Per component
//! the normalisation is fixed so long roots have squared length 2.

mod cartan;
mod quadval;

pub use cartan::{CartanType, Family, SimpleType};
pub use quadval::QuadVal;

use crate::linalg::{self, Mat};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

pub type Rat = linalg::Rat;

/// Default cap on Weyl group enumeration.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

/// A rational vector in simple-root coordinates of some root system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    pub coords: Vec<Rat>,
}

impl Vector {
    pub fn new(coords: Vec<Rat>) -> Self {
        Vector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Vector {
            coords: vec![Rat::zero(); rank],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Vector {
        Vector::new(self.coords.iter().map(|a| -a.clone()).collect())
    }

    pub fn scale(&self, s: &Rat) -> Vector {
        Vector::new(self.coords.iter().map(|a| a * s).collect())
    }

    pub fn from_ints(coords: &[i64]) -> Vector {
        Vector::new(coords.iter().map(|&c| linalg::rat_int(c)).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(crate::jsonio::rat_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// An element of the Weyl group, stored as a permutation of the root index
/// set together with its integer matrix in the `Π`-basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub perm: Vec<u32>,
    pub matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        let perm = (0..rs.roots.len() as u32).collect();
        let mut matrix = vec![vec![0i64; rs.rank]; rs.rank];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 1;
        }
        WeylElement { perm, matrix }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let perm = other.perm.iter().map(|&i| self.perm[i as usize]).collect();
        let n = self.matrix.len();
        let mut matrix = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = self.matrix[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    matrix[i][j] += a * other.matrix[k][j];
                }
            }
        }
        WeylElement { perm, matrix }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut perm = vec![0u32; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p as usize] = i as u32;
        }
        // The inverse matrix is integral; invert exactly over the rationals.
        let m = Mat::new(
            self.matrix
                .iter()
                .map(|r| r.iter().map(|&x| linalg::rat_int(x)).collect())
                .collect(),
        );
        let inv = m.inverse().expect("Weyl matrix is invertible");
        let matrix = inv
            .a
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        debug_assert!(linalg::is_int(x));
                        x.numer().to_i64().expect("small integer entries")
                    })
                    .collect()
            })
            .collect();
        WeylElement { perm, matrix }
    }

    pub fn apply_root(&self, root: usize) -> usize {
        self.perm[root] as usize
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let n = self.matrix.len();
        debug_assert_eq!(v.dim(), n);
        let mut out = vec![Rat::zero(); n];
        for (i, row) in self.matrix.iter().enumerate() {
            let mut acc = Rat::zero();
            for (j, &a) in row.iter().enumerate() {
                if a != 0 {
                    acc += &v.coords[j] * linalg::rat_int(a);
                }
            }
            out[i] = acc;
        }
        Vector::new(out)
    }
}

/// Tag for the standard lattices attached to a root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    CorootQ,
    CoweightP,
    Intermediate,
}

/// A full-rank-or-smaller lattice given by an explicit basis (rational
/// coordinates in the ambient `Π`-basis).
#[derive(Debug, Clone)]
pub struct LatticeData {
    pub basis: Vec<Vector>,
    pub kind: LatticeKind,
}

impl LatticeData {
    pub fn new(basis: Vec<Vector>, kind: LatticeKind) -> Result<Self> {
        if !basis.is_empty() {
            let m = Mat::from_columns(&basis.iter().map(|b| b.coords.clone()).collect::<Vec<_>>());
            if m.rank() != basis.len() {
                return Err(Error::invalid("lattice basis is linearly dependent"));
            }
        }
        Ok(LatticeData { basis, kind })
    }

    /// Exact coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &Vector) -> Option<Vec<Rat>> {
        if self.basis.is_empty() {
            return if v.is_zero() { Some(vec![]) } else { None };
        }
        let m = Mat::from_columns(&self.basis.iter().map(|b| b.coords.clone()).collect::<Vec<_>>());
        let x = m.solve(&v.coords)?;
        // Verify (solve() may return a particular solution only when the
        // system is consistent; with independent columns it is exact).
        let back = m.mul_vec(&x);
        if back == v.coords {
            Some(x)
        } else {
            None
        }
    }

    /// Membership test: `v ∈ L` iff its basis coordinates are all integers.
    pub fn contains(&self, v: &Vector) -> bool {
        match self.coordinates(v) {
            Some(c) => c.iter().all(linalg::is_int),
            None => false,
        }
    }

    /// Canonical coset representative with basis coordinates in `[0, 1)`.
    pub fn coset_reduce(&self, v: &Vector) -> Result<Vector> {
        let c = self
            .coordinates(v)
            .ok_or_else(|| Error::invalid("vector outside the span of the lattice"))?;
        let frac: Vec<Rat> = c
            .iter()
            .map(|x| x - Rat::from(linalg::floor_rat(x)))
            .collect();
        let mut out = Vector::zero(v.dim());
        for (b, f) in self.basis.iter().zip(&frac) {
            out = out.add(&b.scale(f));
        }
        Ok(out)
    }
}

/// A finite crystallographic root system, immutable after construction.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub rank: usize,
    /// Gram matrix `⟨α_i, α_j⟩` over the simple roots.
    pub gram: Vec<Vec<Rat>>,
    /// Integer Cartan matrix `⟨α_i, α̌_j⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// All roots in `Π`-coordinates; the first `n_positive` are the positive
    /// ones and `roots[n_positive + i] = -roots[i]`.
    pub roots: Vec<Vec<i64>>,
    pub n_positive: usize,
    /// Partition of the simple indices `0..rank` into indecomposable blocks.
    pub components: Vec<Vec<usize>>,
    comp_of_simple: Vec<usize>,
    /// Component index of each root.
    pub comp_of_root: Vec<usize>,
    /// Half squared length `⟨α, α⟩ / 2` of each root.
    pub norm_half: Vec<Rat>,
    /// Per component: the highest root `ω`.
    pub highest: Vec<usize>,
    /// Per component: the root `ω*̌` whose coroot is the highest root of the
    /// dual system.
    pub highest_dual: Vec<usize>,
    /// Declared Cartan type, when built from one.
    pub cartan_type: Option<CartanType>,
    root_index: HashMap<Vec<i64>, usize>,
    /// `reflect_table[a][b]` = index of `s_{α_a}(α_b)`.
    reflect_table: Vec<Vec<u32>>,
}

/// Construct the root system of a Cartan type. Per component, long roots have
/// squared length 2.
pub fn build_root_system(t: &CartanType) -> Result<RootSystem> {
    let mut rs = RootSystem::from_gram(t.gram())?;
    rs.cartan_type = Some(t.clone());
    Ok(rs)
}

impl RootSystem {
    /// Build from the Gram matrix of a simple system. Checks positive
    /// definiteness and the crystallographic condition, generates all roots
    /// by reflection closure, and locates the chamber roots per component.
    pub fn from_gram(gram: Vec<Vec<Rat>>) -> Result<RootSystem> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::invalid("rank zero system"));
        }
        // Positive definiteness: leading principal minors > 0.
        for k in 1..=rank {
            let sub = Mat::new(
                (0..k)
                    .map(|i| (0..k).map(|j| gram[i][j].clone()).collect())
                    .collect(),
            );
            if !sub.det().is_positive() {
                return Err(Error::invalid("Gram matrix is not positive definite"));
            }
        }
        // Cartan matrix ⟨α_i, α̌_j⟩ = 2⟨α_i,α_j⟩/⟨α_j,α_j⟩ must be integral.
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                let c = &gram[i][j] * linalg::rat_int(2) / &gram[j][j];
                if !linalg::is_int(&c) {
                    return Err(Error::invalid("Gram data is not crystallographic"));
                }
                cartan[i][j] = c
                    .numer()
                    .to_i64()
                    .ok_or_else(|| Error::invalid("Cartan entry out of range"))?;
            }
        }

        // Reflection closure from the simple roots, in integer coordinates.
        let pair_with_coroot = |v: &[i64], j: usize| -> i64 {
            (0..rank).map(|i| v[i] * cartan[i][j]).sum()
        };
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..rank {
            let mut e = vec![0i64; rank];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(v) = queue.pop_front() {
            for j in 0..rank {
                let c = pair_with_coroot(&v, j);
                let mut w = v.clone();
                w[j] -= c;
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }

        // Sign partition and ordering: positives sorted by (height, coords),
        // then the negatives aligned with them.
        let mut positives: Vec<Vec<i64>> = Vec::new();
        for v in &seen {
            let pos = v.iter().all(|&c| c >= 0);
            let neg = v.iter().all(|&c| c <= 0);
            if !(pos || neg) {
                return Err(Error::internal(
                    "root with mixed-sign coordinates in closure",
                ));
            }
            if pos {
                positives.push(v.clone());
            }
        }
        positives.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
        let n_positive = positives.len();
        if seen.len() != 2 * n_positive {
            return Err(Error::internal("roots do not split into ± pairs"));
        }
        let mut roots = positives;
        for i in 0..n_positive {
            let neg: Vec<i64> = roots[i].iter().map(|&c| -c).collect();
            roots.push(neg);
        }
        let root_index: HashMap<Vec<i64>, usize> = roots
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();

        // Components of the simple diagram.
        let mut comp_of_simple = vec![usize::MAX; rank];
        let mut components = Vec::new();
        for start in 0..rank {
            if comp_of_simple[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut block = vec![start];
            comp_of_simple[start] = id;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..rank {
                    if comp_of_simple[j] == usize::MAX && !gram[i][j].is_zero() {
                        comp_of_simple[j] = id;
                        block.push(j);
                        stack.push(j);
                    }
                }
            }
            block.sort_unstable();
            components.push(block);
        }
        let comp_of_root: Vec<usize> = roots
            .iter()
            .map(|v| {
                let i = v.iter().position(|&c| c != 0).expect("nonzero root");
                comp_of_simple[i]
            })
            .collect();

        // Norms.
        let inner_ints = |u: &[i64], v: &[i64]| -> Rat {
            let mut acc = Rat::zero();
            for i in 0..rank {
                if u[i] == 0 {
                    continue;
                }
                for j in 0..rank {
                    if v[j] != 0 {
                        acc += &gram[i][j] * linalg::rat_int(u[i] * v[j]);
                    }
                }
            }
            acc
        };
        let norm_half: Vec<Rat> = roots
            .iter()
            .map(|v| inner_ints(v, v) / linalg::rat_int(2))
            .collect();

        // Crystallographic + closure checks on the full root set.
        let mut reflect_table = vec![vec![0u32; roots.len()]; roots.len()];
        for a in 0..roots.len() {
            for b in 0..roots.len() {
                let c = inner_ints(&roots[a], &roots[b]) / &norm_half[a];
                if !linalg::is_int(&c) {
                    return Err(Error::internal("non-integral Cartan pairing"));
                }
                let c = c.numer().to_i64().unwrap();
                let w: Vec<i64> = (0..rank).map(|i| roots[b][i] - c * roots[a][i]).collect();
                let idx = root_index
                    .get(&w)
                    .ok_or_else(|| Error::internal("reflection escapes the root set"))?;
                reflect_table[a][b] = *idx as u32;
            }
        }

        let mut rs = RootSystem {
            rank,
            gram,
            cartan,
            roots,
            n_positive,
            components,
            comp_of_simple,
            comp_of_root,
            norm_half,
            highest: Vec::new(),
            highest_dual: Vec::new(),
            cartan_type: None,
            root_index,
            reflect_table,
        };
        let (h, hd) = rs.locate_chamber_roots()?;
        rs.highest = h;
        rs.highest_dual = hd;
        // Per-component norm ratio k ∈ {1,2,3}.
        for comp in 0..rs.components.len() {
            let mut norms: Vec<Rat> = Vec::new();
            for r in 0..rs.n_positive {
                if rs.comp_of_root[r] == comp && !norms.contains(&rs.norm_half[r]) {
                    norms.push(rs.norm_half[r].clone());
                }
            }
            if norms.len() > 2 {
                return Err(Error::internal("more than two root lengths in a component"));
            }
            if norms.len() == 2 {
                let hi = norms.iter().max().unwrap();
                let lo = norms.iter().min().unwrap();
                let k = hi / lo;
                if ![linalg::rat_int(2), linalg::rat_int(3)].contains(&k) {
                    return Err(Error::internal("length ratio outside {2,3}"));
                }
            }
        }
        Ok(rs)
    }

    fn locate_chamber_roots(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        let mut highest = Vec::new();
        let mut highest_dual = Vec::new();
        for (comp, _) in self.components.iter().enumerate() {
            // Highest root: maximal coordinate sum, unique per component.
            let mut best: Option<(i64, usize)> = None;
            let mut best_dual: Option<(Rat, usize)> = None;
            for r in 0..self.n_positive {
                if self.comp_of_root[r] != comp {
                    continue;
                }
                let ht: i64 = self.roots[r].iter().sum();
                match &best {
                    Some((b, _)) if *b >= ht => {}
                    _ => best = Some((ht, r)),
                }
                // Dual height: the coroot of root r expanded over the simple
                // coroots has coefficients v_i·d_i/d_r.
                let dual_ht: Rat = (0..self.rank)
                    .map(|i| {
                        linalg::rat_int(self.roots[r][i]) * &self.gram[i][i] / linalg::rat_int(2)
                    })
                    .fold(Rat::zero(), |a, b| a + b)
                    / &self.norm_half[r];
                match &best_dual {
                    Some((b, _)) if *b >= dual_ht => {}
                    _ => best_dual = Some((dual_ht, r)),
                }
            }
            let (_, w) = best.ok_or_else(|| Error::internal("empty component"))?;
            let (_, wd) = best_dual.unwrap();
            // Both chamber roots pair nonnegatively with every simple coroot.
            for j in 0..self.rank {
                let sj = self.simple_root(j);
                if self.cartan_pair_roots(w, sj) < 0 || self.cartan_pair_roots(wd, sj) < 0 {
                    return Err(Error::internal("chamber root outside the chamber"));
                }
            }
            highest.push(w);
            highest_dual.push(wd);
        }
        Ok((highest, highest_dual))
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Index of the `i`-th simple root in the root list.
    pub fn simple_root(&self, i: usize) -> usize {
        let mut e = vec![0i64; self.rank];
        e[i] = 1;
        self.root_index[&e]
    }

    pub fn is_positive(&self, root: usize) -> bool {
        root < self.n_positive
    }

    pub fn component_of_simple(&self, i: usize) -> usize {
        self.comp_of_simple[i]
    }

    pub fn negative_of(&self, root: usize) -> usize {
        if root < self.n_positive {
            root + self.n_positive
        } else {
            root - self.n_positive
        }
    }

    pub fn root_vector(&self, root: usize) -> Vector {
        Vector::from_ints(&self.roots[root])
    }

    pub fn index_of_root_coords(&self, coords: &[i64]) -> Option<usize> {
        self.root_index.get(coords).copied()
    }

    pub fn index_of_vector(&self, v: &Vector) -> Option<usize> {
        if !v.coords.iter().all(linalg::is_int) {
            return None;
        }
        let ints: Option<Vec<i64>> = v.coords.iter().map(|c| c.numer().to_i64()).collect();
        self.index_of_root_coords(&ints?)
    }

    /// Exact inner product of two rational vectors.
    pub fn inner(&self, u: &Vector, v: &Vector) -> Rat {
        debug_assert_eq!(u.dim(), self.rank);
        debug_assert_eq!(v.dim(), self.rank);
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if u.coords[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if !v.coords[j].is_zero() {
                    acc += &u.coords[i] * &self.gram[i][j] * &v.coords[j];
                }
            }
        }
        acc
    }

    /// `⟨α_r, v⟩` for a root index and a rational vector.
    pub fn inner_root_vec(&self, root: usize, v: &Vector) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if self.roots[root][i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if !v.coords[j].is_zero() {
                    acc += linalg::rat_int(self.roots[root][i]) * &self.gram[i][j] * &v.coords[j];
                }
            }
        }
        acc
    }

    /// `⟨α_a, β̌_b⟩` for two root indices — always an integer.
    pub fn cartan_pair_roots(&self, a: usize, b: usize) -> i64 {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if self.roots[a][i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if self.roots[b][j] != 0 {
                    acc += linalg::rat_int(self.roots[a][i] * self.roots[b][j]) * &self.gram[i][j];
                }
            }
        }
        let c = acc / &self.norm_half[b];
        debug_assert!(linalg::is_int(&c));
        c.numer().to_i64().unwrap()
    }

    /// Symmetric inner product of two roots.
    pub fn inner_roots(&self, a: usize, b: usize) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..self.rank {
            if self.roots[a][i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if self.roots[b][j] != 0 {
                    acc += linalg::rat_int(self.roots[a][i] * self.roots[b][j]) * &self.gram[i][j];
                }
            }
        }
        acc
    }

    /// Index of `s_{α_a}(α_b)`.
    pub fn reflect_root(&self, a: usize, b: usize) -> usize {
        self.reflect_table[a][b] as usize
    }

    /// Reflection `s_α(v) = v − ⟨α̌, v⟩ α` of a rational vector.
    pub fn reflect(&self, root: usize, v: &Vector) -> Result<Vector> {
        if v.dim() != self.rank {
            return Err(Error::invalid(format!(
                "ambient mismatch: vector of dimension {} in rank-{} system",
                v.dim(),
                self.rank
            )));
        }
        let c = self.inner_root_vec(root, v) / &self.norm_half[root];
        Ok(Vector::new(
            (0..self.rank)
                .map(|i| &v.coords[i] - &c * linalg::rat_int(self.roots[root][i]))
                .collect(),
        ))
    }

    /// The coroot `α̌ = 2α/⟨α,α⟩` of a root.
    pub fn coroot(&self, root: usize) -> Vector {
        let inv = Rat::one() / &self.norm_half[root];
        Vector::new(
            (0..self.rank)
                .map(|i| linalg::rat_int(self.roots[root][i]) * &inv)
                .collect(),
        )
    }

    /// Coordinates of the coroot of `root` in the basis of simple coroots.
    /// Always integral.
    pub fn coroot_coords_dual_basis(&self, root: usize) -> Vec<BigInt> {
        (0..self.rank)
            .map(|i| {
                let c = linalg::rat_int(self.roots[root][i]) * &self.gram[i][i]
                    / (linalg::rat_int(2) * &self.norm_half[root]);
                debug_assert!(linalg::is_int(&c));
                c.numer().clone()
            })
            .collect()
    }

    /// Per component, the chamber roots `(ω, ω*̌)` of the component: the
    /// highest root and the coroot of the highest root of the dual.
    pub fn highest_roots(&self) -> Vec<(usize, usize)> {
        self.highest
            .iter()
            .zip(&self.highest_dual)
            .map(|(&a, &b)| (a, b))
            .collect()
    }

    /// The simple reflection `s_{α_i}` as a Weyl element.
    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        self.reflection(self.simple_root(i))
    }

    /// The reflection `s_α` as a Weyl element.
    pub fn reflection(&self, root: usize) -> WeylElement {
        let perm: Vec<u32> = (0..self.num_roots())
            .map(|b| self.reflect_table[root][b])
            .collect();
        let mut matrix = vec![vec![0i64; self.rank]; self.rank];
        for j in 0..self.rank {
            let img = perm[self.simple_root(j)] as usize;
            for i in 0..self.rank {
                matrix[i][j] = self.roots[img][i];
            }
        }
        WeylElement { perm, matrix }
    }

    /// Complete duplicate-free enumeration of the Weyl group by closure of the
    /// simple reflections. Errors when the group would exceed `cap`. The size
    /// is cross-checked against the number of simple systems in the orbit of
    /// `Π` (the group acts regularly on simple systems).
    pub fn weyl_group_capped(&self, cap: usize) -> Result<Vec<WeylElement>> {
        let gens: Vec<WeylElement> = (0..self.rank).map(|i| self.simple_reflection(i)).collect();
        let id = WeylElement::identity(self);
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(id.perm.clone());
        let mut elements = vec![id];
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &idx in &frontier {
                for g in &gens {
                    let w = g.compose(&elements[idx]);
                    if seen.insert(w.perm.clone()) {
                        if elements.len() >= cap {
                            return Err(Error::resource(format!(
                                "Weyl group enumeration exceeds the configured bound {cap}"
                            )));
                        }
                        next.push(elements.len());
                        elements.push(w);
                    }
                }
            }
            frontier = next;
        }
        // Regularity check: distinct elements give distinct simple systems.
        let simples: Vec<usize> = (0..self.rank).map(|i| self.simple_root(i)).collect();
        let mut images: BTreeSet<Vec<u32>> = BTreeSet::new();
        for w in &elements {
            let mut img: Vec<u32> = simples.iter().map(|&s| w.perm[s]).collect();
            img.sort_unstable();
            images.insert(img);
        }
        if images.len() != elements.len() {
            return Err(Error::internal(
                "Weyl enumeration does not act regularly on simple systems",
            ));
        }
        Ok(elements)
    }

    pub fn weyl_group(&self) -> Result<Vec<WeylElement>> {
        self.weyl_group_capped(DEFAULT_WEYL_CAP)
    }

    /// Fundamental coweights: the basis of `V` dual to the simple roots.
    pub fn fundamental_coweights(&self) -> Vec<Vector> {
        let g = Mat::new(self.gram.clone());
        let inv = g.inverse().expect("Gram is positive definite");
        (0..self.rank)
            .map(|j| Vector::new((0..self.rank).map(|i| inv.a[i][j].clone()).collect()))
            .collect()
    }

    /// The coroot lattice `Q`, the coweight lattice `P`, and the index of
    /// connection `f = [P:Q] = det(Cartan matrix)`, computed both as the
    /// Cartan determinant and as the lattice index, with the two asserted
    /// equal.
    pub fn lattices(&self) -> Result<(LatticeData, LatticeData, BigInt)> {
        let q_basis: Vec<Vector> = (0..self.rank)
            .map(|i| self.coroot(self.simple_root(i)))
            .collect();
        let p_basis = self.fundamental_coweights();
        let q = LatticeData::new(q_basis, LatticeKind::CorootQ)?;
        let p = LatticeData::new(p_basis, LatticeKind::CoweightP)?;

        let cartan_det = Mat::new(
            self.cartan
                .iter()
                .map(|r| r.iter().map(|&x| linalg::rat_int(x)).collect())
                .collect(),
        )
        .det();

        // Lattice index: |det| of the integer matrix expressing Q's basis in
        // P's basis.
        let p_mat =
            Mat::from_columns(&p.basis.iter().map(|b| b.coords.clone()).collect::<Vec<_>>());
        let mut change = Vec::new();
        for qv in &q.basis {
            let x = p_mat
                .solve(&qv.coords)
                .ok_or_else(|| Error::internal("coroot outside coweight span"))?;
            if !x.iter().all(linalg::is_int) {
                return Err(Error::internal("Q is not contained in P"));
            }
            change.push(x);
        }
        let index = Mat::from_columns(&change).det();
        let f_index = index.numer().abs();

        if Rat::from(f_index.clone()) != cartan_det.abs() {
            return Err(Error::internal(format!(
                "index of connection mismatch: det(Cartan) = {cartan_det}, [P:Q] = {f_index}"
            )));
        }
        Ok((q, p, f_index))
    }

    /// The index of connection `f = det(Cartan)`.
    pub fn index_of_connection(&self) -> BigInt {
        Mat::new(
            self.cartan
                .iter()
                .map(|r| r.iter().map(|&x| linalg::rat_int(x)).collect())
                .collect(),
        )
        .det()
        .numer()
        .abs()
    }

    /// Per-component length ratio `k ∈ {1, 2, 3}`.
    pub fn length_ratio(&self, comp: usize) -> i64 {
        let mut hi: Option<Rat> = None;
        let mut lo: Option<Rat> = None;
        for r in 0..self.n_positive {
            if self.comp_of_root[r] != comp {
                continue;
            }
            let n = &self.norm_half[r];
            if hi.as_ref().map_or(true, |h| n > h) {
                hi = Some(n.clone());
            }
            if lo.as_ref().map_or(true, |l| n < l) {
                lo = Some(n.clone());
            }
        }
        let k = hi.unwrap() / lo.unwrap();
        debug_assert!(linalg::is_int(&k));
        k.numer().to_i64().unwrap()
    }

    /// Whether root `r` is long within its component (in a one-length
    /// component every root counts as long and short at once).
    pub fn is_long(&self, r: usize) -> bool {
        let comp = self.comp_of_root[r];
        let mut hi: Option<Rat> = None;
        for s in 0..self.n_positive {
            if self.comp_of_root[s] == comp {
                let n = &self.norm_half[s];
                if hi.as_ref().map_or(true, |h| n > h) {
                    hi = Some(n.clone());
                }
            }
        }
        self.norm_half[r] == hi.unwrap()
    }

    pub fn is_short(&self, r: usize) -> bool {
        let comp = self.comp_of_root[r];
        let mut lo: Option<Rat> = None;
        for s in 0..self.n_positive {
            if self.comp_of_root[s] == comp {
                let n = &self.norm_half[s];
                if lo.as_ref().map_or(true, |l| n < l) {
                    lo = Some(n.clone());
                }
            }
        }
        self.norm_half[r] == lo.unwrap()
    }
}
