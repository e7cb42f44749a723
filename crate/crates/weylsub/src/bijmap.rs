//! The bijection between the `(Γ, f)` and `(Ψ, X)` parameterisations.
//!
//! Forward: from the component data of a pair, `Ψ = Φ_{Γ'}`, the coset
//! representative is `v_x = Σ f(γ)·ω_γ(Γ')`, and per component the lattice is
//! `0`, `K_i·P(Σ_i)` or `K_i·P(Σ_i°)` according to the length of the
//! distinguished root.
//!
//! Two inverses are provided and cross-validated: the minimal-level
//! construction (take the least admissible level per root, then extract the
//! unique inclusion-minimal subset generating the rest over `N`), and the
//! alcove-geometric composite `q ∘ g ∘ k ∘ h` through the fundamental domains
//! `D` and `D'` of the affine group `W' = W_Ψ ⋉ τ_{Y'}` acting on `RΨ`.
//!
//! Everything here runs over exact rationals; the lower-closure convention is
//! the one forced by the labelling of canonical pairs: each alcove keeps the
//! walls whose outward normal is a negative-root multiple, so per positive
//! root the slots are the half-open intervals `[m·n_α, (m+1)·n_α)`.

use crate::affine::{AffRoot, AlcoveIneq};
use crate::finsub::{self, RootSubset};
use crate::linalg::{self, Rat};
use crate::refsub::{
    psix::subsystem_coweights, roots_of_gf, roots_of_psix, validate_gf, validate_psix,
    AdmComponent, AdmKind, AdmissibleLattice, GFPair, PsiXPair,
};
use crate::rootsys::{LatticeData, LatticeKind, RootSystem, Vector, WeylElement};
use crate::{Error, Result};
use num::{Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet, HashSet};

// ---------------------------------------------------------------------------
// j forward
// ---------------------------------------------------------------------------

/// `j(Γ, f) = (Ψ, v_x + X')`. The result is revalidated by comparing the
/// truncated root systems of both sides.
pub fn j_forward(rs: &RootSystem, p: &GFPair) -> Result<PsiXPair> {
    let gamma_prime = p.gamma_prime();
    let coweights = subsystem_coweights(rs, &gamma_prime)?;
    let mut a = Vector::zero(rs.rank);
    for &g in &gamma_prime {
        a = a.add(&coweights[&g].scale(&linalg::rat_int(p.f[&g])));
    }
    let psi: RootSubset = p.comps.iter().flat_map(|c| c.sigma.iter().copied()).collect();
    let components = finsub::orthogonal_components(rs, &psi);
    let mut comps = Vec::new();
    for block in &components {
        let gc = p
            .comps
            .iter()
            .find(|c| c.sigma.contains(&block[0]))
            .ok_or_else(|| Error::internal("component mismatch in j_forward"))?;
        let comp = match gc.np.alpha {
            None => AdmComponent {
                kind: AdmKind::Zero,
                m: 0,
            },
            Some(alpha) => {
                let max_norm = gc
                    .sigma
                    .iter()
                    .map(|&r| rs.norm_half[r].clone())
                    .max()
                    .unwrap();
                let kind = if rs.norm_half[alpha] == max_norm {
                    AdmKind::P
                } else {
                    AdmKind::PCirc
                };
                AdmComponent { kind, m: gc.k_big }
            }
        };
        comps.push(comp);
    }
    let result = validate_psix(rs, &psi, &a, &AdmissibleLattice { comps })?;
    // Cross-validate the two root systems on a sufficient window.
    let bound = p.max_label() + p.max_modulus() + 2;
    if roots_of_gf(p, bound) != roots_of_psix(rs, &result, bound)? {
        return Err(Error::internal(
            "j_forward produced a pair with a different root system",
        ));
    }
    Ok(result)
}

// ---------------------------------------------------------------------------
// j inverse, minimal-level route
// ---------------------------------------------------------------------------

/// Positivity-graded height of an affine root, strictly positive exactly on
/// `Φ^a_+`.
fn aff_height(rs: &RootSystem, coords: &[i64], level: i64) -> i64 {
    let max_ht: i64 = (0..rs.n_positive)
        .map(|r| rs.roots[r].iter().sum::<i64>())
        .max()
        .unwrap_or(0);
    let ht: i64 = coords.iter().sum();
    ht + level * (max_ht + 1)
}

/// The unique inclusion-minimal `Δ ⊆ Δ''` with `Δ'' ⊆ NΔ`: an element stays
/// exactly when it is not an `N`-combination of the others.
pub fn minimal_simple_subset(rs: &RootSystem, delta2: &[AffRoot]) -> Vec<AffRoot> {
    let vec_of = |x: &AffRoot| -> Vec<i64> {
        let mut v: Vec<i64> = rs.roots[x.root].clone();
        v.push(x.level);
        v
    };
    let lambda = |v: &[i64]| aff_height(rs, &v[..rs.rank], v[rs.rank]);
    let items: Vec<Vec<i64>> = delta2.iter().map(vec_of).collect();
    let mut keep = Vec::new();
    for (i, x) in items.iter().enumerate() {
        let others: Vec<&Vec<i64>> = items
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, y)| y)
            .collect();
        // DFS over N-combinations, pruned by the positive grading.
        let mut dead: HashSet<Vec<i64>> = HashSet::new();
        fn reachable(
            target: &[i64],
            others: &[&Vec<i64>],
            lambda: &dyn Fn(&[i64]) -> i64,
            dead: &mut HashSet<Vec<i64>>,
        ) -> bool {
            if target.iter().all(|&c| c == 0) {
                return true;
            }
            if lambda(target) <= 0 {
                return false;
            }
            if dead.contains(target) {
                return false;
            }
            for y in others {
                let rest: Vec<i64> = target.iter().zip(y.iter()).map(|(a, b)| a - b).collect();
                if reachable(&rest, others, lambda, dead) {
                    return true;
                }
            }
            dead.insert(target.to_vec());
            false
        }
        if !reachable(x, &others, &lambda, &mut dead) {
            keep.push(delta2[i]);
        }
    }
    keep
}

/// `j⁻¹` by minimal levels: `r'_α = min{n ∈ Z_α : α + nδ ∈ Φ^a_+}`, then the
/// inclusion-minimal generating subset of `{α + r'_α δ}`.
pub fn j_inverse_minimal(rs: &RootSystem, p: &PsiXPair) -> Result<GFPair> {
    let z = p.z_family(rs)?;
    let mut delta2 = Vec::new();
    for &alpha in &p.psi {
        let low = if rs.is_positive(alpha) { 0 } else { 1 };
        if let Some(n) = z[&alpha].min_at_least(low) {
            delta2.push(AffRoot::new(alpha, n));
        }
    }
    let delta = minimal_simple_subset(rs, &delta2);
    let gamma: RootSubset = delta.iter().map(|x| x.root).collect();
    let f: BTreeMap<usize, i64> = delta.iter().map(|x| (x.root, x.level)).collect();
    validate_gf(rs, &gamma, &f)
}

// ---------------------------------------------------------------------------
// Alcove geometry of W' = W_Ψ ⋉ τ_{Y'}
// ---------------------------------------------------------------------------

/// Slot of a point against the hyperplane family of one positive root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// `m·n ≤ ⟨v,α⟩ < (m+1)·n` for the family modulus `n > 0`.
    Bounded { m: i64 },
    /// `⟨v,α⟩ ≥ 0` against the single hyperplane of a zero-modulus family.
    HalfNonNeg,
    /// `⟨v,α⟩ < 0`.
    HalfNeg,
}

/// The lower closure `B₀` of an alcove of `W'`, encoded by one slot per
/// positive root of `Ψ`. Walls with a positive-root outward normal are open,
/// the others closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerClosedAlcove {
    pub slots: BTreeMap<usize, Slot>,
}

/// Geometric context for the maps `h`, `k`, `g`: the subsystem, its lattice
/// data, and the hyperplane families `⟨·,α⟩ ∈ n_α Z` of `W'` on `RΨ`.
pub struct SubAlcoveContext<'a> {
    pub rs: &'a RootSystem,
    pub p: &'a PsiXPair,
    /// Positive members of `Ψ`.
    pub pos: Vec<usize>,
}

impl<'a> SubAlcoveContext<'a> {
    pub fn new(rs: &'a RootSystem, p: &'a PsiXPair) -> Self {
        let pos = p.psi.iter().copied().filter(|&r| rs.is_positive(r)).collect();
        SubAlcoveContext { rs, p, pos }
    }

    /// The unique lower-closed alcove containing `v`, by exact floor
    /// arithmetic per hyperplane family.
    pub fn locate_lower_closure(&self, v: &Vector) -> LowerClosedAlcove {
        let mut slots = BTreeMap::new();
        for &alpha in &self.pos {
            let t = self.rs.inner_root_vec(alpha, v);
            let n = self.p.n_alpha[&alpha];
            let slot = if n > 0 {
                let m = linalg::floor_rat(&(t / linalg::rat_int(n)))
                    .to_i64()
                    .expect("small slot index");
                Slot::Bounded { m }
            } else if t.is_negative() {
                Slot::HalfNeg
            } else {
                Slot::HalfNonNeg
            };
            slots.insert(alpha, slot);
        }
        LowerClosedAlcove { slots }
    }

    pub fn lower_closure_contains(&self, b: &LowerClosedAlcove, v: &Vector) -> bool {
        b.slots.iter().all(|(&alpha, slot)| {
            let t = self.rs.inner_root_vec(alpha, v);
            let n = self.p.n_alpha[&alpha];
            match slot {
                Slot::Bounded { m } => {
                    let lo = linalg::rat_int(m * n);
                    let hi = linalg::rat_int((m + 1) * n);
                    t >= lo && t < hi
                }
                Slot::HalfNonNeg => !t.is_negative(),
                Slot::HalfNeg => t.is_negative(),
            }
        })
    }

    /// Whether the closure of the alcove contains the origin.
    pub fn closure_contains_zero(&self, b: &LowerClosedAlcove) -> bool {
        b.slots
            .values()
            .all(|slot| !matches!(slot, Slot::Bounded { m } if *m != -1 && *m != 0))
    }

    /// Wall inequalities of the lower closure (strict on the walls with
    /// positive-root outward normal).
    pub fn wall_ineqs(&self, b: &LowerClosedAlcove) -> Vec<AlcoveIneq> {
        let mut out = Vec::new();
        for (&alpha, slot) in &b.slots {
            let n = self.p.n_alpha[&alpha];
            match slot {
                Slot::Bounded { m } => {
                    // closed lower wall: ⟨α,v⟩ − m·n ≥ 0
                    out.push(AlcoveIneq {
                        normal: self.rs.root_vector(alpha),
                        constant: linalg::rat_int(-m * n),
                        strict: false,
                    });
                    // open upper wall: ⟨−α,v⟩ + (m+1)·n > 0
                    out.push(AlcoveIneq {
                        normal: self.rs.root_vector(alpha).neg(),
                        constant: linalg::rat_int((m + 1) * n),
                        strict: true,
                    });
                }
                Slot::HalfNonNeg => out.push(AlcoveIneq {
                    normal: self.rs.root_vector(alpha),
                    constant: Rat::zero(),
                    strict: false,
                }),
                Slot::HalfNeg => out.push(AlcoveIneq {
                    normal: self.rs.root_vector(alpha).neg(),
                    constant: Rat::zero(),
                    strict: true,
                }),
            }
        }
        out
    }

    /// A rational point in the open alcove whose lower closure contains `v`:
    /// push `v` off the closed walls along the dominant direction.
    fn interior_point(&self, v: &Vector) -> Vector {
        let mut z = Vector::zero(self.rs.rank);
        for w in self.p.coweights.values() {
            z = z.add(w);
        }
        let mut eps: Option<Rat> = None;
        for &alpha in &self.pos {
            let t = self.rs.inner_root_vec(alpha, v);
            let ht = self.rs.inner_root_vec(alpha, &z);
            debug_assert!(ht.is_positive());
            let n = self.p.n_alpha[&alpha];
            let room = if n > 0 {
                let m = linalg::floor_rat(&(&t / linalg::rat_int(n)));
                linalg::rat_int(n) * Rat::from(m + num::BigInt::from(1)) - &t
            } else if t.is_negative() {
                -t.clone()
            } else {
                continue;
            };
            let bound = room / &ht;
            if eps.as_ref().map_or(true, |e| &bound < e) {
                eps = Some(bound);
            }
        }
        let eps = eps.map(|e| e / linalg::rat_int(2)).unwrap_or_else(|| linalg::rat_int(1));
        v.add(&z.scale(&eps))
    }

    /// `h`: the unique representative of `a + X'` in the box fundamental
    /// domain `D` (simple-coweight coordinates reduced into `[0, n_γ)` on the
    /// non-zero components, untouched elsewhere).
    pub fn map_h(&self, a: &Vector) -> Result<Vector> {
        let proj_ok = if self.p.simple.is_empty() {
            a.is_zero()
        } else {
            crate::refsub::psix::project_onto(self.rs, &self.p.simple, a)? == *a
        };
        if !proj_ok {
            return Err(Error::invalid("map_h argument outside the span of Ψ"));
        }
        let mut d = Vector::zero(self.rs.rank);
        for &g in &self.p.simple {
            let e = self.rs.inner_root_vec(g, a);
            let n = self.p.n_alpha[&g];
            let reduced = if n > 0 {
                linalg::rem_euclid_rat(&e, &num::BigInt::from(n))
            } else {
                e
            };
            d = d.add(&self.p.coweights[&g].scale(&reduced));
        }
        Ok(d)
    }

    /// `k`: translate the alcove of `d` by the unique `γ_B ∈ Y'` that carries
    /// its lower closure into `D'`, via the affine normalisation walk of
    /// `W'`. Returns `d + γ_B`.
    pub fn map_k(&self, d: &Vector) -> Result<Vector> {
        let mut u = self.interior_point(d);
        debug_assert!(self.lower_closure_contains(&self.locate_lower_closure(d), &u));
        // Walk u into the fundamental alcove {0 ≤ ⟨v,α⟩ ≤ n_α}, tracking the
        // group element x ↦ w(x) + t.
        let mut w = WeylElement::identity(self.rs);
        let mut t = Vector::zero(self.rs.rank);
        let mut guard = 0usize;
        loop {
            guard += 1;
            if guard > 100_000 {
                return Err(Error::internal("alcove normalisation walk did not terminate"));
            }
            let mut acted = false;
            for &alpha in &self.pos {
                let n = self.p.n_alpha[&alpha];
                if n == 0 {
                    continue;
                }
                let val = self.rs.inner_root_vec(alpha, &u);
                if val.is_negative() {
                    u = self.rs.reflect(alpha, &u)?;
                    let refl = self.rs.reflection(alpha);
                    w = refl.compose(&w);
                    t = refl.apply(&t);
                    acted = true;
                    break;
                }
                if val > linalg::rat_int(n) {
                    // s_{α,n}: v ↦ v − (⟨α,v⟩ − n)α̌ = s_α(v) + n·α̌
                    let shift = self.rs.coroot(alpha).scale(&linalg::rat_int(n));
                    u = self.rs.reflect(alpha, &u)?.add(&shift);
                    let refl = self.rs.reflection(alpha);
                    w = refl.compose(&w);
                    t = refl.apply(&t).add(&shift);
                    acted = true;
                    break;
                }
            }
            if !acted {
                break;
            }
        }
        // The walk is x ↦ w(x) + t, so alcove(d) + w⁻¹(t) contains 0 in its
        // closure.
        let gamma_b = w.inverse().apply(&t);
        let image = d.add(&gamma_b);
        // k(d) − d ∈ Y' and the image lies in D'.
        let y = LatticeData::new(self.p.yprime_basis.clone(), LatticeKind::Intermediate)?;
        if !y.contains(&gamma_b) {
            return Err(Error::internal("map_k translation is not in Y'"));
        }
        if !self.closure_contains_zero(&self.locate_lower_closure(&image)) {
            return Err(Error::internal("map_k image is not in D'"));
        }
        Ok(image)
    }

    /// `g`: from a point of `D'`, recover the triple `(Γ, Γ', f)` whose
    /// attached point `v_x` is the input. The alcove containing the point
    /// determines the simple system; the lattice kinds determine which
    /// chamber root completes each component; the labels are wall distances.
    pub fn map_g(&self, d: &Vector) -> Result<(Vec<usize>, Vec<usize>, BTreeMap<usize, Rat>)> {
        let alcove = self.locate_lower_closure(d);
        if !self.closure_contains_zero(&alcove) {
            return Err(Error::invalid("map_g argument outside D'"));
        }
        let u = self.interior_point(d);
        let positive: Vec<usize> = self
            .p
            .psi
            .iter()
            .copied()
            .filter(|&r| self.rs.inner_root_vec(r, &u).is_positive())
            .collect();
        let pos_vecs: BTreeSet<Vec<i64>> =
            positive.iter().map(|&r| self.rs.roots[r].clone()).collect();
        let gamma_prime: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&a| {
                !positive.iter().any(|&b| {
                    let diff: Vec<i64> = (0..self.rs.rank)
                        .map(|i| self.rs.roots[a][i] - self.rs.roots[b][i])
                        .collect();
                    b != a && pos_vecs.contains(&diff)
                })
            })
            .collect();

        let mut gamma: Vec<usize> = gamma_prime.clone();
        let mut f: BTreeMap<usize, Rat> = gamma_prime
            .iter()
            .map(|&g| (g, self.rs.inner_root_vec(g, d)))
            .collect();
        for (ci, block) in self.p.components.iter().enumerate() {
            let adm = self.p.xprime.comps[ci];
            if adm.kind == AdmKind::Zero {
                continue;
            }
            let block_sub: RootSubset = block.iter().copied().collect();
            let gp_block: Vec<usize> = gamma_prime
                .iter()
                .copied()
                .filter(|g| block.contains(g))
                .collect();
            let (omega, omega_dual) = finsub::chamber_roots(self.rs, &block_sub, &gp_block)?;
            let theta = match adm.kind {
                AdmKind::P => omega,
                AdmKind::PCirc => omega_dual,
                AdmKind::Zero => unreachable!(),
            };
            let alpha0 = self.rs.negative_of(theta);
            gamma.push(alpha0);
            f.insert(
                alpha0,
                linalg::rat_int(adm.m) + self.rs.inner_root_vec(alpha0, d),
            );
        }
        gamma.sort_unstable();
        // The labels must satisfy the canonical sign constraints.
        for &g in &gamma {
            let val = &f[&g];
            let ok = if self.rs.is_positive(g) {
                !val.is_negative()
            } else {
                val.is_positive()
            };
            if !ok {
                return Err(Error::internal(
                    "map_g produced labels violating the canonical sign rule",
                ));
            }
        }
        Ok((gamma, gamma_prime, f))
    }
}

/// `j⁻¹` through alcove geometry: `q ∘ g ∘ k ∘ h` applied to the coset.
pub fn j_inverse_alcove(rs: &RootSystem, p: &PsiXPair) -> Result<GFPair> {
    let ctx = SubAlcoveContext::new(rs, p);
    let d = ctx.map_h(&p.a)?;
    let d2 = ctx.map_k(&d)?;
    let (gamma, _gamma_prime, f) = ctx.map_g(&d2)?;
    let f_int: BTreeMap<usize, i64> = f
        .iter()
        .map(|(&g, v)| {
            if !linalg::is_int(v) {
                return Err(Error::internal("integral datum produced non-integral labels"));
            }
            Ok((g, v.numer().to_i64().expect("small label")))
        })
        .collect::<Result<_>>()?;
    let gamma_set: RootSubset = gamma.into_iter().collect();
    validate_gf(rs, &gamma_set, &f_int)
}

/// Convenience: both inverse routes with the cross-check that they agree.
pub fn j_inverse_checked(rs: &RootSystem, p: &PsiXPair) -> Result<GFPair> {
    let minimal = j_inverse_minimal(rs, p)?;
    let alcove = j_inverse_alcove(rs, p)?;
    if minimal.canonical_key() != alcove.canonical_key() {
        return Err(Error::internal(
            "minimal-level and alcove-geometric inverses disagree",
        ));
    }
    Ok(minimal)
}

/// Used by tests: the round-trip identity from a canonical pair.
pub fn round_trip_gf(rs: &RootSystem, p: &GFPair) -> Result<bool> {
    let psix = j_forward(rs, p)?;
    let back = j_inverse_checked(rs, &psix)?;
    Ok(back.canonical_key() == p.canonical_key())
}

/// Used by tests: the round-trip identity from a `(Ψ, X)` pair.
pub fn round_trip_psix(rs: &RootSystem, p: &PsiXPair) -> Result<bool> {
    let gf = j_inverse_checked(rs, p)?;
    let forward = j_forward(rs, &gf)?;
    Ok(forward.canonical_key() == p.canonical_key())
}
