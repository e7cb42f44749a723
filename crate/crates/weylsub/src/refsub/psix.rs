//! The `(Ψ, X)` parameterisation: a subsystem of the finite system together
//! with a coset `X = a + X'` of an admissible coweight lattice. The levels of
//! the corresponding affine subsystem are the arithmetic progressions
//! `Z_α = ⟨α, a⟩ + n_α Z`.

use crate::affine::{AffRoot, ExtAffElement};
use crate::finsub::{self, RootSubset};
use crate::linalg::{self, integer_left_kernel, row_hnf, Mat, Rat};
use crate::rootsys::{LatticeData, RootSystem, Vector, WeylElement, DEFAULT_WEYL_CAP};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{Integer, One, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// Kind of one component of an admissible coweight lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AdmKind {
    /// `X_i = 0` (finite component).
    Zero,
    /// `X_i = m·P(Ψ_i)`.
    P,
    /// `X_i = m·P(Ψ_i°)`, where `Ψ°` rescales the long roots by `1/k`.
    PCirc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmComponent {
    pub kind: AdmKind,
    pub m: i64,
}

/// An admissible coweight lattice, one entry per component of `Ψ` (component
/// order: blocks sorted by smallest root index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleLattice {
    pub comps: Vec<AdmComponent>,
}

impl AdmissibleLattice {
    pub fn zero(n: usize) -> Self {
        AdmissibleLattice {
            comps: vec![
                AdmComponent {
                    kind: AdmKind::Zero,
                    m: 0
                };
                n
            ],
        }
    }
}

/// An arithmetic progression `offset + modulus·Z` (`modulus = 0` meaning the
/// singleton `{offset}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progression {
    pub offset: i64,
    pub modulus: i64,
}

impl Progression {
    pub fn contains(&self, n: i64) -> bool {
        if self.modulus == 0 {
            n == self.offset
        } else {
            (n - self.offset).rem_euclid(self.modulus) == 0
        }
    }

    /// The set `self − c·other` as a progression.
    pub fn minus_scaled(&self, c: i64, other: &Progression) -> Progression {
        Progression {
            offset: self.offset - c * other.offset,
            modulus: self.modulus.gcd(&(c.abs() * other.modulus)),
        }
    }

    pub fn subset_of(&self, other: &Progression) -> bool {
        if other.modulus == 0 {
            self.modulus == 0 && self.offset == other.offset
        } else {
            self.modulus % other.modulus == 0
                && (self.offset - other.offset).rem_euclid(other.modulus) == 0
        }
    }

    /// Smallest member `≥ low`; `None` for an empty intersection (only
    /// possible for singletons).
    pub fn min_at_least(&self, low: i64) -> Option<i64> {
        if self.modulus == 0 {
            (self.offset >= low).then_some(self.offset)
        } else {
            let m = self.modulus;
            Some(low + (self.offset - low).rem_euclid(m))
        }
    }

    /// Canonical form (offset reduced modulo the modulus).
    pub fn canonical(&self) -> Progression {
        if self.modulus == 0 {
            *self
        } else {
            Progression {
                offset: self.offset.rem_euclid(self.modulus),
                modulus: self.modulus,
            }
        }
    }
}

/// A validated `(Ψ, X = a + X')` pair with its derived data.
#[derive(Debug, Clone)]
pub struct PsiXPair {
    /// Sorted members of the subsystem.
    pub psi: Vec<usize>,
    /// Canonical coset representative (simple-coweight coordinates reduced
    /// into `[0, n_γ)` on the non-zero components).
    pub a: Vector,
    pub xprime: AdmissibleLattice,
    /// Orthogonal components of `Ψ` (blocks sorted by smallest member).
    pub components: Vec<Vec<usize>>,
    /// Canonical simple system `Γ'_0 ⊆ Φ_+` of `Ψ`.
    pub simple: Vec<usize>,
    /// `n_α` per member: the modulus of `Z_α`.
    pub n_alpha: BTreeMap<usize, i64>,
    /// Fundamental coweights `ω'_γ` of the simple system.
    pub coweights: BTreeMap<usize, Vector>,
    pub comp_of_member: BTreeMap<usize, usize>,
    /// Basis of `X'` (the vectors `n_γ ω'_γ` over non-zero components).
    pub xprime_basis: Vec<Vector>,
    /// Basis of the corresponding admissible coroot lattice `Y'`.
    pub yprime_basis: Vec<Vector>,
}

/// Fundamental coweights of a simple subsystem, keyed by member root.
pub fn subsystem_coweights(
    rs: &RootSystem,
    simple: &[usize],
) -> Result<BTreeMap<usize, Vector>> {
    if simple.is_empty() {
        return Ok(BTreeMap::new());
    }
    let basis = Mat::from_columns(
        &simple
            .iter()
            .map(|&r| rs.root_vector(r).coords)
            .collect::<Vec<_>>(),
    );
    let gram = Mat::new(
        simple
            .iter()
            .map(|&a| simple.iter().map(|&b| rs.inner_roots(a, b)).collect())
            .collect(),
    );
    let inv = gram
        .inverse()
        .ok_or_else(|| Error::internal("simple-system Gram matrix is singular"))?;
    let mut out = BTreeMap::new();
    for (j, &g) in simple.iter().enumerate() {
        let z: Vec<Rat> = (0..simple.len()).map(|i| inv.a[i][j].clone()).collect();
        out.insert(g, Vector::new(basis.mul_vec(&z)));
    }
    Ok(out)
}

/// Orthogonal projection of `v` onto the span of the given simple system.
pub fn project_onto(rs: &RootSystem, simple: &[usize], v: &Vector) -> Result<Vector> {
    if simple.is_empty() {
        return Ok(Vector::zero(rs.rank));
    }
    let gram = Mat::new(
        simple
            .iter()
            .map(|&a| simple.iter().map(|&b| rs.inner_roots(a, b)).collect())
            .collect(),
    );
    let rhs: Vec<Rat> = simple.iter().map(|&g| rs.inner_root_vec(g, v)).collect();
    let z = gram
        .solve(&rhs)
        .ok_or_else(|| Error::internal("projection system is singular"))?;
    let mut out = Vector::zero(rs.rank);
    for (zi, &g) in z.iter().zip(simple) {
        out = out.add(&rs.root_vector(g).scale(zi));
    }
    Ok(out)
}

/// Validate a `(Ψ, a, X')` datum. `psi` may be given by generators; the
/// subsystem closure is taken. The representative is canonicalised, the level
/// family is built, and condition (Z) is verified on every pair of roots.
pub fn validate_psix(
    rs: &RootSystem,
    psi_gens: &RootSubset,
    a: &Vector,
    xprime: &AdmissibleLattice,
) -> Result<PsiXPair> {
    let psi_set = finsub::subsystem_of(rs, psi_gens);
    let psi: Vec<usize> = psi_set.iter().copied().collect();
    let components = finsub::orthogonal_components(rs, &psi_set);
    if xprime.comps.len() != components.len() {
        return Err(Error::invalid(format!(
            "admissible lattice has {} components but Ψ has {}",
            xprime.comps.len(),
            components.len()
        )));
    }
    for c in &xprime.comps {
        if c.kind != AdmKind::Zero && c.m <= 0 {
            return Err(Error::invalid("admissible multiplier must be positive"));
        }
        if c.m > (1 << 32) {
            return Err(Error::invalid(
                "admissible multiplier exceeds the supported magnitude 2^32",
            ));
        }
    }
    let simple = finsub::canonical_simple_system(rs, &psi_set);
    let coweights = subsystem_coweights(rs, &simple)?;

    // a ∈ P(Ψ): inside the span with integral pairings against Ψ.
    if a.dim() != rs.rank {
        return Err(Error::invalid("representative has wrong dimension"));
    }
    let in_span = if simple.is_empty() {
        a.is_zero()
    } else {
        project_onto(rs, &simple, a)? == *a
    };
    if !in_span {
        return Err(Error::invalid("representative a is not in the span of Ψ"));
    }
    for &g in &simple {
        if !linalg::is_int(&rs.inner_root_vec(g, a)) {
            return Err(Error::invalid(
                "representative a is not in the coweight lattice of Ψ",
            ));
        }
    }

    let mut comp_of_member = BTreeMap::new();
    for (ci, block) in components.iter().enumerate() {
        for &r in block {
            comp_of_member.insert(r, ci);
        }
    }

    // Norm data per component, for long/short decisions inside Ψ.
    let comp_max_norm: Vec<Rat> = components
        .iter()
        .map(|block| block.iter().map(|&r| rs.norm_half[r].clone()).max().unwrap())
        .collect();
    let comp_min_norm: Vec<Rat> = components
        .iter()
        .map(|block| block.iter().map(|&r| rs.norm_half[r].clone()).min().unwrap())
        .collect();

    // Canonicalise the lattice kinds: in a one-length component P and P°
    // coincide; store P. Zero components carry m = 0.
    let mut xprime = xprime.clone();
    for (ci, comp) in xprime.comps.iter_mut().enumerate() {
        match comp.kind {
            AdmKind::Zero => comp.m = 0,
            AdmKind::PCirc if comp_max_norm[ci] == comp_min_norm[ci] => comp.kind = AdmKind::P,
            _ => {}
        }
    }

    let mut n_alpha = BTreeMap::new();
    for &r in &psi {
        let ci = comp_of_member[&r];
        let adm = &xprime.comps[ci];
        let n = match adm.kind {
            AdmKind::Zero => 0,
            AdmKind::P => adm.m,
            AdmKind::PCirc => {
                if rs.norm_half[r] == comp_max_norm[ci] {
                    let k = (&comp_max_norm[ci] / &comp_min_norm[ci])
                        .numer()
                        .to_i64()
                        .unwrap();
                    adm.m * k
                } else {
                    adm.m
                }
            }
        };
        n_alpha.insert(r, n);
    }

    // Canonical representative: reduce the simple-coweight coordinates.
    let mut a_canon = Vector::zero(rs.rank);
    for &g in &simple {
        let e = rs.inner_root_vec(g, a);
        let n = n_alpha[&g];
        let e_red = if n > 0 {
            linalg::rem_euclid_rat(&e, &BigInt::from(n))
        } else {
            e
        };
        a_canon = a_canon.add(&coweights[&g].scale(&e_red));
    }

    // Lattice bases.
    let mut xprime_basis = Vec::new();
    let mut yprime_basis = Vec::new();
    for (ci, block) in components.iter().enumerate() {
        let adm = &xprime.comps[ci];
        if adm.kind == AdmKind::Zero {
            continue;
        }
        let k_comp = (&comp_max_norm[ci] / &comp_min_norm[ci])
            .numer()
            .to_i64()
            .unwrap();
        for &g in &simple {
            if !block.contains(&g) {
                continue;
            }
            xprime_basis.push(coweights[&g].scale(&linalg::rat_int(n_alpha[&g])));
            let coroot_scale = match adm.kind {
                AdmKind::P => adm.m,
                AdmKind::PCirc => {
                    if rs.norm_half[g] == comp_max_norm[ci] {
                        adm.m * k_comp
                    } else {
                        adm.m
                    }
                }
                AdmKind::Zero => unreachable!(),
            };
            yprime_basis.push(rs.coroot(g).scale(&linalg::rat_int(coroot_scale)));
        }
    }

    let pair = PsiXPair {
        psi,
        a: a_canon,
        xprime,
        components,
        simple,
        n_alpha,
        coweights,
        comp_of_member,
        xprime_basis,
        yprime_basis,
    };

    // Condition (Z) on every pair of roots of Ψ.
    let z = pair.z_family(rs)?;
    for &alpha in &pair.psi {
        for &beta in &pair.psi {
            let c = rs.cartan_pair_roots(beta, alpha);
            let img = rs.reflect_root(alpha, beta);
            let lhs = z[&beta].minus_scaled(c, &z[&alpha]);
            if !lhs.subset_of(&z[&img]) {
                return Err(Error::internal(format!(
                    "condition (Z) fails for roots {beta}, {alpha}"
                )));
            }
        }
    }
    Ok(pair)
}

impl PsiXPair {
    /// The level progressions `Z_α = ⟨α, a⟩ + n_α Z`.
    pub fn z_family(&self, rs: &RootSystem) -> Result<BTreeMap<usize, Progression>> {
        let mut out = BTreeMap::new();
        for &r in &self.psi {
            let off = rs.inner_root_vec(r, &self.a);
            if !linalg::is_int(&off) {
                return Err(Error::internal("non-integral level offset"));
            }
            out.insert(
                r,
                Progression {
                    offset: off.numer().to_i64().expect("small offset"),
                    modulus: self.n_alpha[&r],
                }
                .canonical(),
            );
        }
        Ok(out)
    }

    /// Membership of `v` in `X'`.
    pub fn xprime_contains(&self, v: &Vector) -> bool {
        match LatticeData::new(
            self.xprime_basis.clone(),
            crate::rootsys::LatticeKind::Intermediate,
        ) {
            Ok(l) => l.contains(v),
            Err(_) => false,
        }
    }

    /// Canonical comparison key: member set, per-component lattice data, and
    /// the reduced representative.
    pub fn canonical_key(&self) -> (Vec<usize>, Vec<(u8, i64)>, Vec<Rat>) {
        let kinds = self
            .xprime
            .comps
            .iter()
            .map(|c| {
                let k = match c.kind {
                    AdmKind::Zero => 0u8,
                    AdmKind::P => 1,
                    AdmKind::PCirc => 2,
                };
                (k, c.m)
            })
            .collect();
        (self.psi.clone(), kinds, self.a.coords.clone())
    }
}

/// All roots `α + nδ` with `n ∈ Z_α` and `|n| ≤ bound`.
pub fn roots_of_psix(rs: &RootSystem, p: &PsiXPair, bound: i64) -> Result<BTreeSet<AffRoot>> {
    let z = p.z_family(rs)?;
    let mut out = BTreeSet::new();
    for &r in &p.psi {
        let prog = &z[&r];
        if prog.modulus == 0 {
            if prog.offset.abs() <= bound {
                out.insert(AffRoot::new(r, prog.offset));
            }
        } else if let Some(mut n) = prog.min_at_least(-bound) {
            while n <= bound {
                out.insert(AffRoot::new(r, n));
                n += prog.modulus;
            }
        }
    }
    Ok(out)
}

/// Action of `g = τ_γ w` (equivalently the linear `t_γ w`) on a pair:
/// `Ψ' = w(Ψ)` and `X'' = p_{Ψ'}(γ) + w(a) + w(X')`. Requires the
/// translation part in the coweight lattice of the ambient system.
pub fn act_on_psix(rs: &RootSystem, g: &ExtAffElement, p: &PsiXPair) -> Result<PsiXPair> {
    let psi_img: RootSubset = p.psi.iter().map(|&r| g.w.apply_root(r)).collect();
    let components_img = finsub::orthogonal_components(rs, &psi_img);
    // Transport the lattice kinds along w.
    let mut comps = Vec::with_capacity(components_img.len());
    for block in &components_img {
        let pre = g.w.inverse().apply_root(block[0]);
        let old = p.xprime.comps[p.comp_of_member[&pre]];
        comps.push(old);
    }
    let simple_img = finsub::canonical_simple_system(rs, &psi_img);
    let a_img = project_onto(rs, &simple_img, &g.gamma)?.add(&g.w.apply(&p.a));
    validate_psix(rs, &psi_img, &a_img, &AdmissibleLattice { comps })
}

/// The finite reflection group `W_Ψ` as Weyl elements of the ambient system.
pub fn subsystem_weyl_group(
    rs: &RootSystem,
    simple: &[usize],
    cap: usize,
) -> Result<Vec<WeylElement>> {
    let gens: Vec<WeylElement> = simple.iter().map(|&r| rs.reflection(r)).collect();
    let id = WeylElement::identity(rs);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(id.perm.clone());
    let mut elements = vec![id];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for g in &gens {
                let w = g.compose(&elements[i]);
                if seen.insert(w.perm.clone()) {
                    if elements.len() >= cap {
                        return Err(Error::resource(format!(
                            "subsystem Weyl group exceeds the bound {cap}"
                        )));
                    }
                    next.push(elements.len());
                    elements.push(w);
                }
            }
        }
        frontier = next;
    }
    Ok(elements)
}

/// Elements `t_{b − w(b) + γ} w` of the subgroup, for `w ∈ W_Ψ` and `γ` over
/// `Y'` with basis coefficients bounded by `translation_bound`.
pub fn elements_of_psix(
    rs: &RootSystem,
    p: &PsiXPair,
    translation_bound: i64,
) -> Result<Vec<ExtAffElement>> {
    let weyl = subsystem_weyl_group(rs, &p.simple, DEFAULT_WEYL_CAP)?;
    let b = &p.a;
    let mut translations = vec![Vector::zero(rs.rank)];
    for basis_vec in &p.yprime_basis {
        let mut next = Vec::new();
        for t in &translations {
            for c in -translation_bound..=translation_bound {
                next.push(t.add(&basis_vec.scale(&linalg::rat_int(c))));
            }
        }
        translations = next;
    }
    let mut out = Vec::new();
    for w in &weyl {
        let shift = b.sub(&w.apply(b));
        for t in &translations {
            out.push(ExtAffElement::new(rs, w.clone(), shift.add(t))?);
        }
    }
    Ok(out)
}

/// Pointwise stabiliser of the affine subsystem in `W ⋉ τ_R`: the parabolic
/// `W_{Φ ∩ Ψ^⊥}` together with the translations by `R ∩ Ψ^⊥`.
#[derive(Debug, Clone)]
pub struct PointwiseStabilizer {
    /// The orthogonal subsystem `Φ ∩ Ψ^⊥`.
    pub weyl_part: Vec<usize>,
    /// Its canonical simple system (reflection generators).
    pub weyl_simple: Vec<usize>,
    /// Basis of the translation lattice `R ∩ Ψ^⊥`.
    pub translation_basis: Vec<Vector>,
}

pub fn pointwise_stabilizer(
    rs: &RootSystem,
    p: &PsiXPair,
    r_lattice: &LatticeData,
) -> Result<PointwiseStabilizer> {
    let perp: RootSubset = (0..rs.num_roots())
        .filter(|&r| p.simple.iter().all(|&g| rs.inner_roots(r, g).is_zero()))
        .collect();
    let weyl_simple = finsub::canonical_simple_system(rs, &perp);
    // Integer kernel: coefficients c over the R basis with ⟨Σ c_j b_j, γ⟩ = 0
    // for all simple γ of Ψ.
    let translation_basis = if p.simple.is_empty() {
        r_lattice.basis.clone()
    } else {
        let mut m: Vec<Vec<Rat>> = r_lattice
            .basis
            .iter()
            .map(|b| p.simple.iter().map(|&g| rs.inner_root_vec(g, b)).collect())
            .collect();
        // Clear denominators columnwise (kernel unchanged).
        let cols = p.simple.len();
        for j in 0..cols {
            let mut lcm = BigInt::one();
            for row in m.iter() {
                lcm = lcm.lcm(row[j].denom());
            }
            for row in m.iter_mut() {
                row[j] *= Rat::from(lcm.clone());
            }
        }
        let m_int: Vec<Vec<BigInt>> = m
            .iter()
            .map(|row| row.iter().map(|x| x.numer().clone()).collect())
            .collect();
        integer_left_kernel(&m_int)
            .into_iter()
            .map(|coeffs| {
                let mut v = Vector::zero(rs.rank);
                for (c, b) in coeffs.iter().zip(&r_lattice.basis) {
                    v = v.add(&b.scale(&Rat::from(c.clone())));
                }
                v
            })
            .collect()
    };
    Ok(PointwiseStabilizer {
        weyl_part: perp.into_iter().collect(),
        weyl_simple,
        translation_basis,
    })
}

/// Centraliser test for `g` stored as `τ_μ w` (so `g = w t_γ` with
/// `γ = w⁻¹(μ)`): per component, either `w` fixes the component pointwise and
/// `γ` is orthogonal to it, or the component is finite (`X_i = 0`), `w`
/// negates it, and `⟨γ, α⟩ = −2⟨a, α⟩` throughout.
pub fn centralizes(rs: &RootSystem, g: &ExtAffElement, p: &PsiXPair) -> bool {
    let gamma = g.w.inverse().apply(&g.gamma);
    p.components.iter().enumerate().all(|(ci, block)| {
        let fixes = block.iter().all(|&r| {
            g.w.apply_root(r) == r && rs.inner_root_vec(r, &gamma).is_zero()
        });
        if fixes {
            return true;
        }
        if p.xprime.comps[ci].kind != AdmKind::Zero {
            return false;
        }
        block.iter().all(|&r| {
            g.w.apply_root(r) == rs.negative_of(r)
                && rs.inner_root_vec(r, &gamma)
                    == -linalg::rat_int(2) * rs.inner_root_vec(r, &p.a)
        })
    })
}

fn lattice_equal_under(w: &WeylElement, p_from: &PsiXPair, p_to: &PsiXPair) -> bool {
    let img: Vec<Vector> = p_from.xprime_basis.iter().map(|b| w.apply(b)).collect();
    let to = match LatticeData::new(
        p_to.xprime_basis.clone(),
        crate::rootsys::LatticeKind::Intermediate,
    ) {
        Ok(l) => l,
        Err(_) => return false,
    };
    if !img.iter().all(|v| to.contains(v)) {
        return false;
    }
    let from = match LatticeData::new(img, crate::rootsys::LatticeKind::Intermediate) {
        Ok(l) => l,
        Err(_) => return false,
    };
    p_to.xprime_basis.iter().all(|v| from.contains(v))
}

/// Normaliser test for `g` stored as `τ_γ w` (the same element as the linear
/// `t_γ w`): `w(Ψ) = Ψ`, `w(X') = X'`, and `p_Ψ(γ) ∈ a − w(a) + X'`.
pub fn normalizes(rs: &RootSystem, g: &ExtAffElement, p: &PsiXPair) -> Result<bool> {
    let psi_set: RootSubset = p.psi.iter().copied().collect();
    let img: RootSubset = p.psi.iter().map(|&r| g.w.apply_root(r)).collect();
    if img != psi_set {
        return Ok(false);
    }
    if !lattice_equal_under(&g.w, p, p) {
        return Ok(false);
    }
    let proj = project_onto(rs, &p.simple, &g.gamma)?;
    let v = proj.sub(&p.a).add(&g.w.apply(&p.a));
    Ok(p.xprime_contains(&v))
}

/// Membership of an integer vector in the integer row span of `rows`.
fn in_int_row_span(rows: &[Vec<BigInt>], target: &[BigInt]) -> bool {
    let (h, _) = row_hnf(rows);
    let nonzero: Vec<&Vec<BigInt>> = h.iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let mut t = target.to_vec();
    let cols = t.len();
    let mut row_iter = nonzero.iter();
    let mut current = row_iter.next();
    for col in 0..cols {
        // advance to the row whose pivot is at or before this column
        while let Some(row) = current {
            let pivot = row.iter().position(|x| !x.is_zero()).unwrap();
            if pivot < col {
                current = row_iter.next();
            } else {
                break;
            }
        }
        if t[col].is_zero() {
            continue;
        }
        match current {
            Some(row) => {
                let pivot = row.iter().position(|x| !x.is_zero()).unwrap();
                if pivot != col {
                    return false;
                }
                let (q, r) = t[col].div_rem(&row[pivot]);
                if !r.is_zero() {
                    return false;
                }
                for j in 0..cols {
                    t[j] = &t[j] - &q * &row[j];
                }
                current = row_iter.next();
            }
            None => return false,
        }
    }
    t.iter().all(|x| x.is_zero())
}

/// Membership of `v` in the lattice generated by a (possibly dependent)
/// rational spanning set.
fn in_lattice_span(gens: &[Vector], v: &Vector) -> bool {
    if gens.is_empty() {
        return v.is_zero();
    }
    let mut lcm = BigInt::one();
    for g in gens.iter().chain(std::iter::once(v)) {
        for c in &g.coords {
            lcm = lcm.lcm(c.denom());
        }
    }
    let scale = |u: &Vector| -> Vec<BigInt> {
        u.coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect()
    };
    let rows: Vec<Vec<BigInt>> = gens.iter().map(scale).collect();
    in_int_row_span(&rows, &scale(v))
}

/// Same-orbit test under `W ⋉ τ_R`: search for `w' ∈ W` with
/// `w'(Ψ₁) = Ψ₂`, `w'(X₁') = X₂'` and `a₂ − w'(a₁) ∈ p_{Ψ₂}(R) + X₂'`.
pub fn same_orbit(
    rs: &RootSystem,
    p1: &PsiXPair,
    p2: &PsiXPair,
    r_lattice: &LatticeData,
) -> Result<bool> {
    let weyl = rs.weyl_group()?;
    let psi2: RootSubset = p2.psi.iter().copied().collect();
    let mut gens: Vec<Vector> = r_lattice
        .basis
        .iter()
        .map(|b| project_onto(rs, &p2.simple, b))
        .collect::<Result<Vec<_>>>()?;
    gens.extend(p2.xprime_basis.iter().cloned());
    for w in &weyl {
        let img: RootSubset = p1.psi.iter().map(|&r| w.apply_root(r)).collect();
        if img != psi2 {
            continue;
        }
        if !lattice_equal_under(w, p1, p2) {
            continue;
        }
        let diff = p2.a.sub(&w.apply(&p1.a));
        if in_lattice_span(&gens, &diff) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_int};
    use num::Signed;
    use crate::rootsys::build_root_system;

    fn sys(s: &str) -> RootSystem {
        build_root_system(&s.parse().unwrap()).unwrap()
    }

    fn full_set(rs: &RootSystem) -> RootSubset {
        (0..rs.num_roots()).collect()
    }

    fn lat(kind: AdmKind, m: i64) -> AdmissibleLattice {
        AdmissibleLattice {
            comps: vec![AdmComponent { kind, m }],
        }
    }

    #[test]
    fn validate_full_a1_examples() {
        let rs = sys("A1");
        let zero = Vector::zero(1);
        // Full affine Weyl group: Z_α = Z.
        let p = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::P, 1)).unwrap();
        let z = p.z_family(&rs).unwrap();
        let a = rs.simple_root(0);
        assert_eq!(z[&a], Progression { offset: 0, modulus: 1 });
        // Zero lattice: finite W, Z_α = {0}.
        let p = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::Zero, 0)).unwrap();
        let z = p.z_family(&rs).unwrap();
        assert_eq!(z[&a], Progression { offset: 0, modulus: 0 });
        // ⟨α, a⟩ = 1 with n_α = 2: odd levels, and (Z) holds.
        let omega = rs.fundamental_coweights()[0].clone();
        let p = validate_psix(&rs, &full_set(&rs), &omega, &lat(AdmKind::P, 2)).unwrap();
        let z = p.z_family(&rs).unwrap();
        assert_eq!(z[&a], Progression { offset: 1, modulus: 2 });
        assert!(z[&rs.negative_of(a)].contains(-1));
        assert!(z[&rs.negative_of(a)].contains(1));
    }

    #[test]
    fn validate_rejects_bad_representative() {
        let rs = sys("A1");
        let half = rs.fundamental_coweights()[0].scale(&rat(1, 2));
        assert!(validate_psix(&rs, &full_set(&rs), &half, &lat(AdmKind::P, 1)).is_err());
        // Outside the span: A1xA1 with Ψ the first factor and a in the second.
        let rs2 = sys("A1xA1");
        let a1 = rs2.simple_root(0);
        let psi: RootSubset = [a1, rs2.negative_of(a1)].into_iter().collect();
        let bad = rs2.fundamental_coweights()[1].clone();
        assert!(validate_psix(&rs2, &psi, &bad, &lat(AdmKind::P, 1)).is_err());
    }

    #[test]
    fn roots_of_psix_examples() {
        let rs = sys("A1");
        let zero = Vector::zero(1);
        let a = rs.simple_root(0);
        // Full datum: all of Φ^a within the bound.
        let p = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::P, 1)).unwrap();
        let roots = roots_of_psix(&rs, &p, 2).unwrap();
        assert_eq!(roots.len(), 2 * 5);
        // Zero lattice: levels ⟨α, a⟩ only.
        let p = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::Zero, 0)).unwrap();
        let roots = roots_of_psix(&rs, &p, 5).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|x| x.level == 0));
        // Odd-level datum.
        let omega = rs.fundamental_coweights()[0].clone();
        let p = validate_psix(&rs, &full_set(&rs), &omega, &lat(AdmKind::P, 2)).unwrap();
        let roots = roots_of_psix(&rs, &p, 3).unwrap();
        assert!(roots.contains(&AffRoot::new(a, 1)));
        assert!(roots.contains(&AffRoot::new(a, -1)));
        assert!(!roots.contains(&AffRoot::new(a, 0)));
        assert!(!roots.contains(&AffRoot::new(a, 2)));
    }

    #[test]
    fn action_examples() {
        let rs = sys("A2");
        let zero = Vector::zero(2);
        let p = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::P, 2)).unwrap();
        // Identity acts trivially.
        let id = ExtAffElement::identity(&rs);
        let q = act_on_psix(&rs, &id, &p).unwrap();
        assert_eq!(q.canonical_key(), p.canonical_key());
        // Pure translation: Z'_α = Z_α + ⟨α, γ⟩.
        let omega = rs.fundamental_coweights()[0].clone();
        let t = ExtAffElement::translation(&rs, omega.clone()).unwrap();
        let q = act_on_psix(&rs, &t, &p).unwrap();
        let z_old = p.z_family(&rs).unwrap();
        let z_new = q.z_family(&rs).unwrap();
        for &r in &p.psi {
            let shift = rs.inner_root_vec(r, &omega).numer().to_i64().unwrap();
            let expected = Progression {
                offset: z_old[&r].offset + shift,
                modulus: z_old[&r].modulus,
            }
            .canonical();
            assert_eq!(z_new[&r], expected);
        }
        // Pure Weyl part: Ψ' = w(Ψ), Z'_α = Z_{w⁻¹ α}.
        let w = rs.simple_reflection(0);
        let winv = w.inverse();
        let g = ExtAffElement::from_weyl(&rs, w);
        let pw = validate_psix(&rs, &full_set(&rs), &omega, &lat(AdmKind::P, 2)).unwrap();
        let q = act_on_psix(&rs, &g, &pw).unwrap();
        let z_old = pw.z_family(&rs).unwrap();
        let z_new = q.z_family(&rs).unwrap();
        for &r in &q.psi {
            assert_eq!(z_new[&r], z_old[&winv.apply_root(r)].canonical());
        }
    }

    #[test]
    fn action_is_compatible_with_composition() {
        let rs = sys("A1");
        let zero = Vector::zero(1);
        let p = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::P, 3)).unwrap();
        let omega = rs.fundamental_coweights()[0].clone();
        let g = ExtAffElement::new(&rs, rs.simple_reflection(0), omega.clone()).unwrap();
        let h = ExtAffElement::translation(&rs, omega).unwrap();
        let lhs = act_on_psix(&rs, &g.compose(&h), &p).unwrap();
        let rhs = act_on_psix(&rs, &g, &act_on_psix(&rs, &h, &p).unwrap()).unwrap();
        assert_eq!(lhs.canonical_key(), rhs.canonical_key());
    }

    #[test]
    fn elements_examples() {
        let rs = sys("A1");
        let zero = Vector::zero(1);
        // Zero lattice at a = 0: exactly W_Ψ.
        let p = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::Zero, 0)).unwrap();
        let els = elements_of_psix(&rs, &p, 2).unwrap();
        assert_eq!(els.len(), 2);
        assert!(els.iter().all(|e| e.gamma.is_zero()));
        // Full lattice: ⟨s_α, t_{α̌}⟩ truncated.
        let p = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::P, 1)).unwrap();
        let els = elements_of_psix(&rs, &p, 2).unwrap();
        assert_eq!(els.len(), 2 * 5);
        // Closure under composition within bounds.
        let set: BTreeSet<(Vec<u32>, Vec<Rat>)> = els
            .iter()
            .map(|e| (e.w.perm.clone(), e.gamma.coords.clone()))
            .collect();
        for x in &els[..4] {
            for y in &els[..4] {
                let z = x.compose(y);
                let coeff = rs.inner_root_vec(rs.simple_root(0), &z.gamma);
                if coeff.numer().abs() <= BigInt::from(4) {
                    assert!(set.contains(&(z.w.perm.clone(), z.gamma.coords.clone())));
                }
            }
            let inv = x.inverse();
            let coeff = rs.inner_root_vec(rs.simple_root(0), &inv.gamma);
            if coeff.numer().abs() <= BigInt::from(4) {
                assert!(set.contains(&(inv.w.perm.clone(), inv.gamma.coords.clone())));
            }
        }
        // Empty Ψ: identity only.
        let p = validate_psix(
            &rs,
            &RootSubset::new(),
            &zero,
            &AdmissibleLattice { comps: vec![] },
        )
        .unwrap();
        let els = elements_of_psix(&rs, &p, 3).unwrap();
        assert_eq!(els.len(), 1);
        assert!(els[0].is_identity());
    }

    #[test]
    fn pointwise_stabilizer_examples() {
        let rs = sys("A1xA1");
        let (q, _, _) = rs.lattices().unwrap();
        let zero = Vector::zero(2);
        // Ψ = Φ: trivial stabiliser.
        let p = validate_psix(
            &rs,
            &full_set(&rs),
            &zero,
            &AdmissibleLattice {
                comps: vec![
                    AdmComponent { kind: AdmKind::P, m: 1 },
                    AdmComponent { kind: AdmKind::P, m: 1 },
                ],
            },
        )
        .unwrap();
        let st = pointwise_stabilizer(&rs, &p, &q).unwrap();
        assert!(st.weyl_part.is_empty());
        assert!(st.translation_basis.is_empty());
        // Ψ = {±α₁}: W part ⟨s_{α₂}⟩, lattice R ∩ α₁^⊥.
        let a1 = rs.simple_root(0);
        let psi: RootSubset = [a1, rs.negative_of(a1)].into_iter().collect();
        let p = validate_psix(&rs, &psi, &zero, &lat(AdmKind::P, 1)).unwrap();
        let st = pointwise_stabilizer(&rs, &p, &q).unwrap();
        assert_eq!(st.weyl_simple, vec![rs.simple_root(1)]);
        assert_eq!(st.translation_basis.len(), 1);
        assert!(rs
            .inner_root_vec(a1, &st.translation_basis[0])
            .is_zero());
        // Ψ = ∅: everything.
        let p = validate_psix(
            &rs,
            &RootSubset::new(),
            &zero,
            &AdmissibleLattice { comps: vec![] },
        )
        .unwrap();
        let st = pointwise_stabilizer(&rs, &p, &q).unwrap();
        assert_eq!(st.weyl_part.len(), rs.num_roots());
        assert_eq!(st.translation_basis.len(), 2);
    }

    #[test]
    fn centralizer_examples() {
        let rs = sys("A1");
        let zero = Vector::zero(1);
        let full = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::P, 1)).unwrap();
        let id = ExtAffElement::identity(&rs);
        assert!(centralizes(&rs, &id, &full));
        // Longest element = −1 on a finite component with a = 0, γ = 0.
        let fin = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::Zero, 0)).unwrap();
        let s = ExtAffElement::from_weyl(&rs, rs.simple_reflection(0));
        assert!(centralizes(&rs, &s, &fin));
        // t_ω against the full-lattice datum: fails both conditions.
        let omega = rs.fundamental_coweights()[0].clone();
        let t = ExtAffElement::translation(&rs, omega).unwrap();
        assert!(!centralizes(&rs, &t, &full));
    }

    #[test]
    fn normalizer_and_orbit_examples() {
        let rs = sys("A1");
        let zero = Vector::zero(1);
        let (q, p_lat, _) = rs.lattices().unwrap();
        let omega = rs.fundamental_coweights()[0].clone();
        let p = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::P, 2)).unwrap();
        // Identity normalises.
        assert!(normalizes(&rs, &ExtAffElement::identity(&rs), &p).unwrap());
        // Translation by a Y' generator normalises.
        let y = p.yprime_basis[0].clone();
        let t = ExtAffElement::translation(&rs, y).unwrap();
        assert!(normalizes(&rs, &t, &p).unwrap());
        // Translation by ω does not (p(ω) = ω ∉ a − a + X' = 2P).
        let t_bad = ExtAffElement::translation(&rs, omega.clone()).unwrap();
        assert!(!normalizes(&rs, &t_bad, &p).unwrap());

        // Orbit: a = 0 vs ⟨α, a'⟩ = 1 with n = 2: joined under R = P, not R = Q.
        let p1 = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::P, 2)).unwrap();
        let p2 = validate_psix(&rs, &full_set(&rs), &omega, &lat(AdmKind::P, 2)).unwrap();
        assert!(!same_orbit(&rs, &p1, &p2, &q).unwrap());
        assert!(same_orbit(&rs, &p1, &p2, &p_lat).unwrap());
        assert!(same_orbit(&rs, &p1, &p1, &q).unwrap());
    }

    #[test]
    fn progression_arithmetic() {
        let a = Progression { offset: 1, modulus: 2 };
        let b = Progression { offset: -1, modulus: 2 };
        // a − (−1)·b = {1 + 2k} + {−1 + 2j} shifts offset to 0 mod 2.
        let c = a.minus_scaled(-1, &b);
        assert_eq!(c.canonical(), Progression { offset: 0, modulus: 2 });
        assert!(c.subset_of(&Progression { offset: 0, modulus: 1 }));
        assert!(!Progression { offset: 0, modulus: 1 }.subset_of(&c));
        let s = Progression { offset: 3, modulus: 0 };
        assert!(s.subset_of(&Progression { offset: 1, modulus: 2 }));
        assert_eq!(s.min_at_least(4), None);
        assert_eq!(a.min_at_least(0), Some(1));
        assert_eq!(b.min_at_least(2), Some(3));
    }

    #[test]
    fn pcirc_moduli_in_b2() {
        let rs = sys("B2");
        let zero = Vector::zero(2);
        let p = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::PCirc, 1)).unwrap();
        // Long roots get modulus k = 2, short roots modulus 1.
        for &r in &p.psi {
            let expect = if rs.is_long(r) { 2 } else { 1 };
            assert_eq!(p.n_alpha[&r], expect, "root {r}");
        }
        // In a one-length system PCirc collapses to P.
        let rs = sys("A2");
        let zero = Vector::zero(2);
        let p = validate_psix(&rs, &full_set(&rs), &zero, &lat(AdmKind::PCirc, 2)).unwrap();
        assert_eq!(p.xprime.comps[0].kind, AdmKind::P);
        let _ = rat_int(0);
    }
}
