//! Reflection subgroups of the affine Weyl group.
//!
//! Two parameterisations coexist. This module implements the `(Γ, f)` side: a
//! np subset of the finite system plus nonnegative integer labels, giving the
//! canonical simple system `{α + f(α)δ}` of the subgroup. The `(Ψ, X)` side
//! lives in [`psix`].

pub mod psix;

pub use psix::{
    act_on_psix, centralizes, elements_of_psix, normalizes, pointwise_stabilizer, roots_of_psix,
    same_orbit, validate_psix, AdmComponent, AdmKind, AdmissibleLattice, Progression, PsiXPair,
};

use crate::affine::{AffRoot, AlcoveIneq, ExtAffElement};
use crate::finsub::{self, NpComponent, RootSubset};
use crate::linalg::{self, Mat, Rat};
use crate::rootsys::{LatticeData, QuadVal, RootSystem, Vector};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Derived data for one orthogonal component of a `(Γ, f)` pair.
#[derive(Debug, Clone)]
pub struct GfComponent {
    pub np: NpComponent,
    /// `K_i = Σ c_γ f(γ)`; zero for an independent component.
    pub k_big: i64,
    /// The finite subsystem `Σ_i` generated by `Γ'_i`.
    pub sigma: Vec<usize>,
    /// Coordinates `a_{β,γ}` of each `β ∈ Σ_i` over `Γ'_i` (order of
    /// `np.gamma_prime`).
    pub coords: BTreeMap<usize, Vec<i64>>,
    /// `r_β = Σ a_{β,γ} f(γ)`.
    pub r: BTreeMap<usize, i64>,
    /// `k_{β,Γ} ∈ {1,2,3}`.
    pub k_beta: BTreeMap<usize, i64>,
}

impl GfComponent {
    pub fn is_dependent(&self) -> bool {
        self.np.is_dependent()
    }

    /// Modulus of the level progression of `β` in this component.
    pub fn level_modulus(&self, beta: usize) -> i64 {
        if self.is_dependent() {
            self.k_big * self.k_beta[&beta]
        } else {
            0
        }
    }
}

/// A validated `(Γ, f)` pair: a np subset with labels `f ≥ 0`, positive on
/// the negative roots of `Γ`, together with all derived component data.
#[derive(Debug, Clone)]
pub struct GFPair {
    pub gamma: Vec<usize>,
    pub f: BTreeMap<usize, i64>,
    pub comps: Vec<GfComponent>,
}

/// Compatibility of an arbitrary integer label map with a np subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compatibility {
    /// All component sums `d_i` share one strict sign (implies strong).
    Compatible,
    /// All `d_i` nonzero but of mixed signs.
    StronglyCompatible,
    Neither,
}

/// Classify the label map: `d_i = Σ c_γ f(γ)` over the dependent components;
/// compatible iff all `d_i > 0` or all `d_i < 0`, strongly compatible iff all
/// `d_i ≠ 0`.
pub fn is_compatible(
    rs: &RootSystem,
    gamma: &RootSubset,
    f: &BTreeMap<usize, i64>,
) -> Result<Compatibility> {
    let dec = finsub::np_decompose(rs, gamma)?;
    let mut ds = Vec::new();
    for comp in &dec.components {
        if let Some(c) = &comp.c {
            ds.push(c.iter().map(|(&r, &cr)| cr * f[&r]).sum::<i64>());
        }
    }
    if ds.iter().all(|&d| d > 0) || ds.iter().all(|&d| d < 0) {
        Ok(Compatibility::Compatible)
    } else if ds.iter().all(|&d| d != 0) {
        Ok(Compatibility::StronglyCompatible)
    } else {
        Ok(Compatibility::Neither)
    }
}

/// Validate a canonical `(Γ, f)` pair and compute its derived data.
pub fn validate_gf(rs: &RootSystem, gamma: &RootSubset, f: &BTreeMap<usize, i64>) -> Result<GFPair> {
    let members: Vec<usize> = gamma.iter().copied().collect();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if rs.inner_roots(a, b).is_positive() {
                return Err(Error::invalid(format!(
                    "not an np subset: roots {:?} and {:?} have positive inner product",
                    rs.roots[a], rs.roots[b]
                )));
            }
        }
    }
    const LABEL_CAP: i64 = 1 << 32;
    for &r in &members {
        let fr = *f
            .get(&r)
            .ok_or_else(|| Error::invalid(format!("missing label for root {r}")))?;
        if fr < 0 {
            return Err(Error::invalid(format!(
                "label f({:?}) = {fr} is negative",
                rs.roots[r]
            )));
        }
        if fr > LABEL_CAP {
            return Err(Error::invalid(format!(
                "label f({:?}) = {fr} exceeds the supported magnitude 2^32",
                rs.roots[r]
            )));
        }
        if !rs.is_positive(r) && fr == 0 {
            return Err(Error::invalid(format!(
                "label f({:?}) must be positive on a negative root",
                rs.roots[r]
            )));
        }
    }
    if f.len() != members.len() {
        return Err(Error::invalid("label map does not match Γ"));
    }

    let dec = finsub::np_decompose(rs, gamma)?;
    let mut comps = Vec::new();
    for np in dec.components {
        let k_big = match &np.c {
            Some(c) => c.iter().map(|(&r, &cr)| cr * f[&r]).sum::<i64>(),
            None => 0,
        };
        if np.is_dependent() && k_big <= 0 {
            return Err(Error::internal(
                "canonical pair with nonpositive K on a dependent component",
            ));
        }
        let gp_set: RootSubset = np.gamma_prime.iter().copied().collect();
        let sigma_set = finsub::subsystem_of(rs, &gp_set);
        let basis = Mat::from_columns(
            &np.gamma_prime
                .iter()
                .map(|&r| rs.root_vector(r).coords)
                .collect::<Vec<_>>(),
        );
        // Norm data for k_{β,Γ}.
        let max_norm = np
            .gamma
            .iter()
            .map(|&r| rs.norm_half[r].clone())
            .max()
            .expect("nonempty component");
        let alpha_short = np
            .alpha
            .map(|a| rs.norm_half[a] < max_norm)
            .unwrap_or(false);
        let mut coords = BTreeMap::new();
        let mut r_map = BTreeMap::new();
        let mut k_map = BTreeMap::new();
        for &beta in &sigma_set {
            let sol = basis
                .solve(&rs.root_vector(beta).coords)
                .ok_or_else(|| Error::internal("Σ root outside the span of Γ'"))?;
            let ints: Vec<i64> = sol
                .iter()
                .map(|x| {
                    debug_assert!(linalg::is_int(x));
                    x.numer().to_i64().expect("small root coordinate")
                })
                .collect();
            let r_beta: i64 = ints
                .iter()
                .zip(&np.gamma_prime)
                .map(|(&a, g)| a * f[g])
                .sum();
            let k_beta = if np.is_dependent() && alpha_short {
                let ratio = &rs.norm_half[beta] / &rs.norm_half[np.alpha.unwrap()];
                debug_assert!(linalg::is_int(&ratio));
                ratio.numer().to_i64().unwrap()
            } else {
                1
            };
            coords.insert(beta, ints);
            r_map.insert(beta, r_beta);
            k_map.insert(beta, k_beta);
        }
        comps.push(GfComponent {
            np,
            k_big,
            sigma: sigma_set.into_iter().collect(),
            coords,
            r: r_map,
            k_beta: k_map,
        });
    }
    Ok(GFPair {
        gamma: members,
        f: f.clone(),
        comps,
    })
}

impl GFPair {
    /// The canonical simple system `Δ(Γ, f) = {α + f(α)δ}`.
    pub fn delta(&self) -> Vec<AffRoot> {
        self.gamma
            .iter()
            .map(|&r| AffRoot::new(r, self.f[&r]))
            .collect()
    }

    /// Union of the `Γ'_i`.
    pub fn gamma_prime(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .comps
            .iter()
            .flat_map(|c| c.np.gamma_prime.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// The component holding a given `Σ` root, if any.
    fn comp_of_sigma_root(&self, beta: usize) -> Option<&GfComponent> {
        self.comps.iter().find(|c| c.r.contains_key(&beta))
    }

    pub fn max_label(&self) -> i64 {
        self.f.values().copied().max().unwrap_or(0)
    }

    pub fn max_modulus(&self) -> i64 {
        self.comps
            .iter()
            .flat_map(|c| c.sigma.iter().map(|&b| c.level_modulus(b)))
            .max()
            .unwrap_or(0)
    }

    /// Canonical key for equality-of-subgroup comparisons.
    pub fn canonical_key(&self) -> Vec<(usize, i64)> {
        self.gamma.iter().map(|&r| (r, self.f[&r])).collect()
    }
}

/// The pair `(Γ₀, f₀)` representing the full affine Weyl group: `Γ₀` is the
/// simple system together with the negatives of the highest roots, `f₀` is 0
/// on positive and 1 on negative members.
pub fn full_gf_pair(rs: &RootSystem) -> Result<GFPair> {
    let mut gamma: RootSubset = (0..rs.rank).map(|i| rs.simple_root(i)).collect();
    for &theta in &rs.highest {
        gamma.insert(rs.negative_of(theta));
    }
    let f: BTreeMap<usize, i64> = gamma
        .iter()
        .map(|&r| (r, if rs.is_positive(r) { 0 } else { 1 }))
        .collect();
    validate_gf(rs, &gamma, &f)
}

/// Exact membership of an affine root in the subsystem of a `(Γ, f)` pair:
/// the level of `β` runs over `r_β + K_i k_{β,Γ} Z` (a single value when the
/// component is independent).
pub fn gf_contains_affroot(p: &GFPair, x: &AffRoot) -> bool {
    match p.comp_of_sigma_root(x.root) {
        None => false,
        Some(c) => {
            let r = c.r[&x.root];
            let m = c.level_modulus(x.root);
            if m == 0 {
                x.level == r
            } else {
                (x.level - r).rem_euclid(m) == 0
            }
        }
    }
}

/// All roots of the subsystem with `|level| ≤ bound`.
pub fn roots_of_gf(p: &GFPair, bound: i64) -> BTreeSet<AffRoot> {
    let mut out = BTreeSet::new();
    for c in &p.comps {
        for &beta in &c.sigma {
            let r = c.r[&beta];
            let m = c.level_modulus(beta);
            if m == 0 {
                if r.abs() <= bound {
                    out.insert(AffRoot::new(beta, r));
                }
            } else {
                // levels r + mZ within [−bound, bound]
                let lo = -bound - r;
                let start = lo.div_euclid(m) + i64::from(lo.rem_euclid(m) != 0);
                let mut q = start;
                while r + q * m <= bound {
                    out.insert(AffRoot::new(beta, r + q * m));
                    q += 1;
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Alcove, volume, index
// ---------------------------------------------------------------------------

/// Per-component geometry of the fundamental chamber `C(Γ, f)`.
#[derive(Debug, Clone)]
pub enum GfChamberPiece {
    /// Simplicial cone: vertex plus extreme ray directions.
    Cone { vertex: Vector, rays: Vec<Vector> },
    /// Simplex: the base vertex followed by the remaining vertices.
    Simplex { vertices: Vec<Vector> },
}

/// The chamber `C = {v : ⟨v, γ⟩ + f(γ) ≥ 0}` with its orthogonal
/// decomposition: the fixed subspace `C₀` and one cone or simplex per
/// component.
#[derive(Debug, Clone)]
pub struct GfChamber {
    pub ineqs: Vec<AlcoveIneq>,
    pub c0_basis: Vec<Vector>,
    pub pieces: Vec<GfChamberPiece>,
}

/// Fundamental coweights of `Γ'` (the dual basis of `RΓ'`), keyed by member.
fn gamma_prime_coweights(rs: &RootSystem, gamma_prime: &[usize]) -> Result<BTreeMap<usize, Vector>> {
    if gamma_prime.is_empty() {
        return Ok(BTreeMap::new());
    }
    let basis = Mat::from_columns(
        &gamma_prime
            .iter()
            .map(|&r| rs.root_vector(r).coords)
            .collect::<Vec<_>>(),
    );
    let gram = Mat::new(
        gamma_prime
            .iter()
            .map(|&a| gamma_prime.iter().map(|&b| rs.inner_roots(a, b)).collect())
            .collect(),
    );
    let inv = gram
        .inverse()
        .ok_or_else(|| Error::internal("Γ' Gram matrix is singular"))?;
    let mut out = BTreeMap::new();
    for (j, &g) in gamma_prime.iter().enumerate() {
        let z: Vec<Rat> = (0..gamma_prime.len()).map(|i| inv.a[i][j].clone()).collect();
        let coords = basis.mul_vec(&z);
        out.insert(g, Vector::new(coords));
    }
    Ok(out)
}

/// The chamber of a pair, with every claimed vertex re-verified against the
/// defining inequalities (tight exactly on the expected walls).
pub fn alcove_of_gf(rs: &RootSystem, p: &GFPair) -> Result<GfChamber> {
    let ineqs: Vec<AlcoveIneq> = p
        .gamma
        .iter()
        .map(|&g| AlcoveIneq {
            normal: rs.root_vector(g),
            constant: linalg::rat_int(p.f[&g]),
            strict: false,
        })
        .collect();
    // C₀ = Γ-perpendicular subspace.
    let c0_basis = if p.gamma.is_empty() {
        (0..rs.rank)
            .map(|i| {
                let mut v = vec![Rat::zero(); rs.rank];
                v[i] = Rat::one();
                Vector::new(v)
            })
            .collect()
    } else {
        let m = Mat::new(
            p.gamma
                .iter()
                .map(|&g| {
                    (0..rs.rank)
                        .map(|j| {
                            (0..rs.rank)
                                .map(|i| linalg::rat_int(rs.roots[g][i]) * &rs.gram[i][j])
                                .fold(Rat::zero(), |a, b| a + b)
                        })
                        .collect()
                })
                .collect(),
        );
        m.kernel().into_iter().map(Vector::new).collect()
    };

    let mut pieces = Vec::new();
    for c in &p.comps {
        let coweights = gamma_prime_coweights(rs, &c.np.gamma_prime)?;
        let mut vertex0 = Vector::zero(rs.rank);
        for &g in &c.np.gamma_prime {
            vertex0 = vertex0.sub(&coweights[&g].scale(&linalg::rat_int(p.f[&g])));
        }
        // Wall-evaluation helper within this component.
        let value = |v: &Vector, g: usize| rs.inner_root_vec(g, v) + linalg::rat_int(p.f[&g]);
        // vertex0 lies on every Γ'_i wall.
        for &g in &c.np.gamma_prime {
            if !value(&vertex0, g).is_zero() {
                return Err(Error::internal("base vertex off its defining wall"));
            }
        }
        if let Some(alpha) = c.np.alpha {
            // Dependent: ⟨v₀, α_i⟩ + f(α_i) = K_i, and the remaining vertices
            // each leave exactly one wall.
            if value(&vertex0, alpha) != linalg::rat_int(c.k_big) {
                return Err(Error::internal("base vertex fails the K_i identity"));
            }
            let mut vertices = vec![vertex0.clone()];
            let cmap = c.np.c.as_ref().expect("dependent component has a relation");
            for &g in &c.np.gamma_prime {
                let t = linalg::rat(c.k_big, cmap[&g]);
                let v = vertex0.add(&coweights[&g].scale(&t));
                for &h in &c.np.gamma {
                    let val = value(&v, h);
                    let expect_zero = h != g;
                    if expect_zero != val.is_zero() || val.is_negative() {
                        return Err(Error::internal("vertex has wrong wall pattern"));
                    }
                }
                vertices.push(v);
            }
            pieces.push(GfChamberPiece::Simplex { vertices });
        } else {
            let rays = c
                .np
                .gamma_prime
                .iter()
                .map(|&g| coweights[&g].clone())
                .collect();
            pieces.push(GfChamberPiece::Cone {
                vertex: vertex0,
                rays,
            });
        }
    }
    Ok(GfChamber {
        ineqs,
        c0_basis,
        pieces,
    })
}

/// Volume of the fundamental chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Volume {
    Finite(QuadVal),
    Infinite,
}

impl std::fmt::Display for Volume {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Volume::Finite(q) => write!(f, "{q}"),
            Volume::Infinite => write!(f, "infinite"),
        }
    }
}

/// Exact chamber volume: finite iff every component is dependent and `Γ`
/// spans the ambient space, in which case
/// `μ(C) = √(1/f_{Γ'} · Π_{β∈Γ'} 2/⟨β,β⟩) · Π_i K_i^{r_i}/(r_i!·Π c_α)`.
pub fn volume_of_gf(rs: &RootSystem, p: &GFPair) -> Result<Volume> {
    let gamma_prime = p.gamma_prime();
    let all_dependent = p.comps.iter().all(|c| c.is_dependent());
    if !all_dependent || gamma_prime.len() != rs.rank {
        return Ok(Volume::Infinite);
    }
    // Index of connection of Φ_{Γ'}: determinant of the Cartan matrix of Γ'.
    let cartan = Mat::new(
        gamma_prime
            .iter()
            .map(|&a| {
                gamma_prime
                    .iter()
                    .map(|&b| linalg::rat_int(rs.cartan_pair_roots(a, b)))
                    .collect()
            })
            .collect(),
    );
    let f_gp = cartan.det();
    if !f_gp.is_positive() {
        return Err(Error::internal("Γ' Cartan determinant not positive"));
    }
    let mut inside = Rat::one() / f_gp;
    for &b in &gamma_prime {
        inside *= Rat::one() / &rs.norm_half[b];
    }
    let mut rational = Rat::one();
    for c in &p.comps {
        let r_i = c.np.gamma_prime.len();
        let mut factorial = BigInt::one();
        for k in 2..=r_i {
            factorial *= BigInt::from(k);
        }
        let mut denom = Rat::from(factorial);
        let cmap = c.np.c.as_ref().unwrap();
        for &g in &c.np.gamma_prime {
            denom *= linalg::rat_int(cmap[&g]);
        }
        let mut pow = Rat::one();
        for _ in 0..r_i {
            pow *= linalg::rat_int(c.k_big);
        }
        rational *= pow / denom;
    }
    let vol = QuadVal::sqrt_of_rational(&inside)?.mul(&QuadVal::from_rational(rational)?);
    Ok(Volume::Finite(vol))
}

/// Containment of subgroups: every canonical simple root of `sub` lies in the
/// root system of `sup` (decided exactly via the level progressions).
pub fn gf_subgroup_contains(sup: &GFPair, sub: &GFPair) -> bool {
    sub.delta().iter().all(|x| gf_contains_affroot(sup, x))
}

/// Index `[W^a(sup) : W^a(sub)]` as the exact ratio of chamber volumes; must
/// reduce to a positive integer.
pub fn index_of_gf(rs: &RootSystem, sub: &GFPair, sup: &GFPair) -> Result<BigInt> {
    if !gf_subgroup_contains(sup, sub) {
        return Err(Error::invalid(
            "index undefined: the claimed subgroup is not contained in the claimed supergroup",
        ));
    }
    let (vs, vp) = match (volume_of_gf(rs, sub)?, volume_of_gf(rs, sup)?) {
        (Volume::Finite(a), Volume::Finite(b)) => (a, b),
        _ => {
            return Err(Error::invalid(
                "index computation requires both chambers to have finite volume",
            ))
        }
    };
    let ratio = vs.div(&vp)?;
    let q = ratio
        .as_rational()
        .ok_or_else(|| Error::internal("volume ratio is irrational"))?;
    if !linalg::is_int(&q) || !q.is_positive() {
        return Err(Error::internal(format!(
            "volume ratio {q} is not a positive integer"
        )));
    }
    Ok(q.numer().clone())
}

// ---------------------------------------------------------------------------
// Coset representatives
// ---------------------------------------------------------------------------

/// The coset representative set `G = {w t_γ : w ∈ W, γ ∈ R, w t_γ Δ(Γ,f) ⊆
/// Φ^a_+}` with its cardinality identity.
#[derive(Debug, Clone)]
pub struct CosetReps {
    pub reps: Vec<ExtAffElement>,
    pub index: BigInt,
    pub r_over_q: BigInt,
}

/// Lattice index `[R : Q]` for `Q ⊆ R`.
fn lattice_index(r: &LatticeData, q: &LatticeData) -> Result<BigInt> {
    let rmat = Mat::from_columns(&r.basis.iter().map(|b| b.coords.clone()).collect::<Vec<_>>());
    let mut cols = Vec::new();
    for b in &q.basis {
        let x = rmat
            .solve(&b.coords)
            .ok_or_else(|| Error::invalid("Q outside the span of R"))?;
        if !x.iter().all(linalg::is_int) {
            return Err(Error::invalid("Q is not a sublattice of R"));
        }
        cols.push(x);
    }
    Ok(Mat::from_columns(&cols).det().numer().abs())
}

/// Minimal coset representatives of `W^a(Γ,f)` in `W ⋉ τ_R`, by scanning the
/// lattice points of `R` inside the chamber polytope and testing the
/// sign-split inequalities `⟨α,γ⟩ ≥ −f(α)` (image positive) or `≥ 1 − f(α)`
/// (image negative) for each `α ∈ Γ`. The returned elements are the affine
/// pairs of the linear `w t_γ` under the `t ↦ τ` dictionary.
pub fn coset_reps(rs: &RootSystem, p: &GFPair, r_lattice: &LatticeData) -> Result<CosetReps> {
    let full = full_gf_pair(rs)?;
    let index = index_of_gf(rs, p, &full)?;
    let (q, _, _) = rs.lattices()?;
    let r_over_q = lattice_index(r_lattice, &q)?;

    // Candidate box: R-basis coefficients of the chamber vertices.
    let chamber = alcove_of_gf(rs, p)?;
    let rmat = Mat::from_columns(
        &r_lattice
            .basis
            .iter()
            .map(|b| b.coords.clone())
            .collect::<Vec<_>>(),
    );
    let rinv = rmat
        .inverse()
        .ok_or_else(|| Error::invalid("R basis does not span the ambient space"))?;
    let n = rs.rank;
    let mut lo = vec![Rat::zero(); n];
    let mut hi = vec![Rat::zero(); n];
    for piece in &chamber.pieces {
        let verts: Vec<&Vector> = match piece {
            GfChamberPiece::Simplex { vertices } => vertices.iter().collect(),
            GfChamberPiece::Cone { .. } => {
                return Err(Error::invalid(
                    "coset representatives require a finite-index subgroup",
                ))
            }
        };
        let coeffs: Vec<Vec<Rat>> = verts.iter().map(|v| rinv.mul_vec(&v.coords)).collect();
        for j in 0..n {
            let col: Vec<&Rat> = coeffs.iter().map(|c| &c[j]).collect();
            lo[j] += (*col.iter().min().unwrap()).clone();
            hi[j] += (*col.iter().max().unwrap()).clone();
        }
    }

    let weyl = rs.weyl_group()?;
    let mut reps = Vec::new();
    let lo_i: Vec<i64> = lo
        .iter()
        .map(|x| linalg::ceil_rat(x).to_i64().expect("small box"))
        .collect();
    let hi_i: Vec<i64> = hi
        .iter()
        .map(|x| linalg::floor_rat(x).to_i64().expect("small box"))
        .collect();
    let mut counters = lo_i.clone();
    'outer: loop {
        let gamma = {
            let mut v = Vector::zero(n);
            for (j, &c) in counters.iter().enumerate() {
                v = v.add(&r_lattice.basis[j].scale(&linalg::rat_int(c)));
            }
            v
        };
        // Integer pairings ⟨α, γ⟩ for all members of Γ.
        let pairings: Result<Vec<i64>> = p
            .gamma
            .iter()
            .map(|&g| {
                let x = rs.inner_root_vec(g, &gamma);
                if !linalg::is_int(&x) {
                    return Err(Error::invalid("R is not contained in the coweight lattice"));
                }
                Ok(x.numer().to_i64().expect("small pairing"))
            })
            .collect();
        let pairings = pairings?;
        for w in &weyl {
            let ok = p.gamma.iter().zip(&pairings).all(|(&g, &pv)| {
                if rs.is_positive(w.apply_root(g)) {
                    pv >= -p.f[&g]
                } else {
                    pv >= 1 - p.f[&g]
                }
            });
            if ok {
                // w t_γ = t_{w(γ)} w, stored as the affine pair (w, w(γ)).
                let tw = w.apply(&gamma);
                reps.push(ExtAffElement::new(rs, w.clone(), tw)?);
            }
        }
        // advance the counter
        for j in 0..=n {
            if j == n {
                break 'outer;
            }
            counters[j] += 1;
            if counters[j] <= hi_i[j] {
                break;
            }
            counters[j] = lo_i[j];
            if j == n - 1 {
                break 'outer;
            }
        }
    }

    let expected = &index * &r_over_q;
    if BigInt::from(reps.len()) != expected {
        return Err(Error::internal(format!(
            "coset count {} differs from index·[R:Q] = {}",
            reps.len(),
            expected
        )));
    }
    Ok(CosetReps {
        reps,
        index,
        r_over_q,
    })
}

// ---------------------------------------------------------------------------
// Isomorphism type
// ---------------------------------------------------------------------------

/// Isomorphism descriptor of one component of a reflection subgroup: the
/// finite Weyl group of `Σ_i`, its affine Weyl group, or the affine Weyl
/// group of the dual of `Σ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoComponent {
    Finite(String),
    Affine(String),
    AffineDual(String),
}

impl std::fmt::Display for IsoComponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IsoComponent::Finite(t) => write!(f, "{t}"),
            IsoComponent::Affine(t) => write!(f, "{t}~"),
            IsoComponent::AffineDual(t) => write!(f, "{t}v~"),
        }
    }
}

/// Per-component isomorphism type of the subgroup: finite when the component
/// is independent, otherwise affine of `Σ_i` (when `−α_i` is its highest
/// root) or affine of the dual (when `−α̌_i` is the dual highest root).
pub fn isomorphism_type(rs: &RootSystem, p: &GFPair) -> Result<Vec<IsoComponent>> {
    let mut out = Vec::new();
    for c in &p.comps {
        let diag = crate::finsub::DynkinDiagram::from_simple_set(rs, &c.np.gamma_prime)?;
        let types = diag.classify()?;
        let base = types
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join("x");
        match c.np.alpha {
            None => out.push(IsoComponent::Finite(base)),
            Some(alpha) => {
                let sub: RootSubset = c.sigma.iter().copied().collect();
                let (omega, omega_dual) =
                    crate::finsub::chamber_roots(rs, &sub, &c.np.gamma_prime)?;
                let neg = rs.negative_of(alpha);
                if neg == omega {
                    out.push(IsoComponent::Affine(base));
                } else if neg == omega_dual {
                    out.push(IsoComponent::AffineDual(base));
                } else {
                    return Err(Error::internal(
                        "distinguished root is not a chamber root of its component",
                    ));
                }
            }
        }
    }
    Ok(out)
}
