//! The affine root system `Φ^a = Φ + Zδ` and the extended affine Weyl group
//! acting on it.
//!
//! Elements are stored as affine transformations `v ↦ w(v) + γ` of `V`, the
//! pair `(w, γ)` meaning `τ_γ ∘ w` with `γ` in the coweight lattice. Two
//! dictionaries translate to the linear picture on `V ⊕ Rδ`:
//!
//! * the `t ↦ τ` dictionary sends `τ_γ w ↔ t_γ w`; this is the convention
//!   [`act_on_affroot`] uses, so `(id, γ)` raises the level of `α` by
//!   `⟨α, γ⟩`;
//! * the `t ↦ τ⁻` dictionary sends `τ_γ w ↔ t_{−γ} w`; under it the affine
//!   reflection in the hyperplane `⟨v, α⟩ = m` corresponds to the linear
//!   reflection in the affine root `mδ − α`, which is what
//!   [`reflection_of_affroot`] implements.
//!
//! `Φ^a` itself is never materialised; affine roots are produced lazily
//! within caller-supplied level bounds.

use crate::linalg::{self, Rat};
use crate::rootsys::{RootSystem, Vector, WeylElement};
use crate::{Error, Result};
use num::{Signed, Zero};

/// A root `α + nδ` of `Φ^a`: a finite root index plus an integer level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffRoot {
    pub root: usize,
    pub level: i64,
}

impl AffRoot {
    pub fn new(root: usize, level: i64) -> Self {
        AffRoot { root, level }
    }

    /// Positivity: `n > 0`, or `n = 0` with `α` positive.
    pub fn is_positive(&self, rs: &RootSystem) -> bool {
        self.level > 0 || (self.level == 0 && rs.is_positive(self.root))
    }

    pub fn negated(&self, rs: &RootSystem) -> AffRoot {
        AffRoot {
            root: rs.negative_of(self.root),
            level: -self.level,
        }
    }
}

/// An element of the extended affine Weyl group as the affine map
/// `v ↦ w(v) + γ`, with `γ` constrained to the coweight lattice so that the
/// action on `Φ^a` stays integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtAffElement {
    pub w: WeylElement,
    pub gamma: Vector,
}

impl ExtAffElement {
    /// Build `τ_γ ∘ w`, checking `⟨α, γ⟩ ∈ Z` for all roots.
    pub fn new(rs: &RootSystem, w: WeylElement, gamma: Vector) -> Result<Self> {
        if gamma.dim() != rs.rank {
            return Err(Error::invalid("translation part has wrong dimension"));
        }
        for i in 0..rs.rank {
            if !linalg::is_int(&rs.inner_root_vec(rs.simple_root(i), &gamma)) {
                return Err(Error::invalid(
                    "translation part outside the coweight lattice",
                ));
            }
        }
        Ok(ExtAffElement { w, gamma })
    }

    pub fn identity(rs: &RootSystem) -> Self {
        ExtAffElement {
            w: WeylElement::identity(rs),
            gamma: Vector::zero(rs.rank),
        }
    }

    pub fn translation(rs: &RootSystem, gamma: Vector) -> Result<Self> {
        Self::new(rs, WeylElement::identity(rs), gamma)
    }

    pub fn from_weyl(rs: &RootSystem, w: WeylElement) -> Self {
        let gamma = Vector::zero(rs.rank);
        ExtAffElement { w, gamma }
    }

    pub fn is_identity(&self) -> bool {
        self.w.is_identity() && self.gamma.is_zero()
    }

    /// `self ∘ other` (apply `other` first): `τ_{γ₁ + w₁γ₂} (w₁w₂)`.
    pub fn compose(&self, other: &ExtAffElement) -> ExtAffElement {
        ExtAffElement {
            w: self.w.compose(&other.w),
            gamma: self.gamma.add(&self.w.apply(&other.gamma)),
        }
    }

    pub fn inverse(&self) -> ExtAffElement {
        let winv = self.w.inverse();
        let gamma = winv.apply(&self.gamma).neg();
        ExtAffElement { w: winv, gamma }
    }

    /// Action on a point of `V`.
    pub fn act_on_point(&self, v: &Vector) -> Vector {
        self.w.apply(v).add(&self.gamma)
    }

    /// The linear pair `(w, γ)` with `self = t_γ w` under the `t ↦ τ`
    /// dictionary (same `γ`).
    pub fn linear_pair_tau_plus(&self) -> (&WeylElement, &Vector) {
        (&self.w, &self.gamma)
    }

    /// The linear pair `(w, γ)` with `self ↔ t_γ w` under the `t ↦ τ⁻`
    /// dictionary (negated translation).
    pub fn linear_pair_tau_minus(&self) -> (WeylElement, Vector) {
        (self.w.clone(), self.gamma.neg())
    }
}

/// Action of `g = τ_γ w` on an affine root through the `t ↦ τ` dictionary:
/// `t_γ w (α + mδ) = w(α) + (m + ⟨w(α), γ⟩) δ`.
pub fn act_on_affroot(rs: &RootSystem, g: &ExtAffElement, x: &AffRoot) -> Result<AffRoot> {
    let img = g.w.apply_root(x.root);
    let pairing = rs.inner_root_vec(img, &g.gamma);
    if !linalg::is_int(&pairing) {
        return Err(Error::invalid(
            "action would produce a non-integral level (translation outside P)",
        ));
    }
    let shift: i64 = num::ToPrimitive::to_i64(pairing.numer())
        .ok_or_else(|| Error::invalid("level out of range"))?;
    Ok(AffRoot {
        root: img,
        level: x.level + shift,
    })
}

/// The affine reflection `s_{α,m}(v) = v − (⟨α, v⟩ − m) α̌` fixing the
/// hyperplane `⟨v, α⟩ = m`.
pub fn affine_reflection_apply(rs: &RootSystem, alpha: usize, m: i64, v: &Vector) -> Vector {
    let c = rs.inner_root_vec(alpha, v) - linalg::rat_int(m);
    let coroot = rs.coroot(alpha);
    v.sub(&coroot.scale(&c))
}

/// The affine transformation attached to an affine root under the `t ↦ τ⁻`
/// dictionary: the root `mδ − α` maps to `s_{α,m} = τ_{mα̌} s_α`, so
/// `β + nδ` maps to `τ_{−nβ̌} s_β`. Its action on points equals
/// [`affine_reflection_apply`] with `(α, m) = (−β, n)`... i.e. writing
/// `β + nδ = mδ − α` with `α = −β`, `m = n`.
pub fn reflection_of_affroot(rs: &RootSystem, x: &AffRoot) -> ExtAffElement {
    let w = rs.reflection(x.root);
    let gamma = rs.coroot(x.root).scale(&linalg::rat_int(-x.level));
    ExtAffElement { w, gamma }
}

/// One closed half-space `⟨normal, v⟩ + constant ≥ 0` (or `> 0` when strict).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlcoveIneq {
    pub normal: Vector,
    pub constant: Rat,
    pub strict: bool,
}

impl AlcoveIneq {
    pub fn satisfied_by(&self, rs: &RootSystem, v: &Vector) -> bool {
        let val = rs.inner(&self.normal, v) + &self.constant;
        if self.strict {
            val.is_positive()
        } else {
            !val.is_negative()
        }
    }
}

/// The closed fundamental alcove `A = {v : ⟨v, α⟩ ≥ 0 ∀α ∈ Π, ⟨v, θ⟩ ≤ 1` for
/// the highest roots `θ` of the components`}`, as an inequality list. The
/// walls are exactly the loci where one inequality is tight.
pub fn fundamental_alcove(rs: &RootSystem) -> Vec<AlcoveIneq> {
    let mut out = Vec::new();
    for i in 0..rs.rank {
        out.push(AlcoveIneq {
            normal: rs.root_vector(rs.simple_root(i)),
            constant: Rat::zero(),
            strict: false,
        });
    }
    for &theta in &rs.highest {
        out.push(AlcoveIneq {
            normal: rs.root_vector(theta).neg(),
            constant: linalg::rat_int(1),
            strict: false,
        });
    }
    out
}

pub fn alcove_contains(rs: &RootSystem, ineqs: &[AlcoveIneq], v: &Vector) -> bool {
    ineqs.iter().all(|i| i.satisfied_by(rs, v))
}

/// Special points are exactly the coweight lattice: `⟨α, v⟩ ∈ Z` for all
/// roots `α`.
pub fn is_special_point(rs: &RootSystem, v: &Vector) -> Result<bool> {
    let (_, p, _) = rs.lattices()?;
    Ok(p.contains(v))
}

/// Definitional form of the special-point condition, for cross-checks.
pub fn is_special_point_definitional(rs: &RootSystem, v: &Vector) -> bool {
    (0..rs.num_roots()).all(|r| linalg::is_int(&rs.inner_root_vec(r, v)))
}
