//! Brute-force verification of the combinatorial identities attached to the
//! counting of subgroup parameters: the generalized ordered partition
//! function, non-standard descent statistics over the Weyl group, the main
//! identity `Σ (d_i/f)·p(M−i) = M^N` (times `k^{N'}` in the short case), its
//! symmetry, and the type-A cyclic-descent specialisation.

use crate::finsub::{self, RootSubset};
use crate::par::{map_items, Exec};
use crate::rootsys::RootSystem;
use crate::{Error, Result};
use num::{Signed, ToPrimitive};
use serde::Serialize;
use std::collections::BTreeMap;

/// Which chamber root completes `Π`: the highest root (lattice side `P`) or
/// the root whose coroot is the dual highest root (lattice side `P°`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LatticeChoice {
    P,
    PDual,
}

/// Descent data of an indecomposable system for one lattice choice.
#[derive(Debug, Clone, Serialize)]
pub struct DescentProfile {
    /// Members of `Γ = Π ∪ {−θ}`.
    pub gamma: Vec<usize>,
    /// Relation coefficients (positive integers, `c = 1` on `−θ`).
    pub c: BTreeMap<usize, i64>,
    /// `h = Σ c_γ` (the Coxeter number when `θ` is the highest root).
    pub h: i64,
    /// `d_0 .. d_h`: the number of `w` with weighted descent sum `i`.
    pub d: Vec<u64>,
    /// Index of connection.
    pub f_phi: i64,
    pub lattice: LatticeChoice,
    /// `N = |Π|`.
    pub n_simple: usize,
    /// `N' = |Π_long|`.
    pub n_long: usize,
    /// Length ratio of the system.
    pub k_phi: i64,
    /// Whether `θ` is long (true for the highest root; for one-length
    /// systems every root counts as long).
    pub theta_long: bool,
    /// The member `−θ` of `Γ`.
    pub theta_member: usize,
}

/// Build the descent profile by sweeping the Weyl group: for each `w`,
/// `d(w) = {γ ∈ Γ : w(γ) ∈ Φ_-}` weighted by the relation coefficients.
pub fn descent_stats(rs: &RootSystem, choice: LatticeChoice, exec: Exec) -> Result<DescentProfile> {
    if rs.components.len() != 1 {
        return Err(Error::invalid("descent statistics require an indecomposable system"));
    }
    let theta = match choice {
        LatticeChoice::P => rs.highest[0],
        LatticeChoice::PDual => rs.highest_dual[0],
    };
    let mut gamma_set: RootSubset = (0..rs.rank).map(|i| rs.simple_root(i)).collect();
    gamma_set.insert(rs.negative_of(theta));
    let dec = finsub::np_decompose(rs, &gamma_set)?;
    if dec.components.len() != 1 || !dec.components[0].is_dependent() {
        return Err(Error::internal("Π ∪ {−θ} must be one dependent np component"));
    }
    let c = dec.components[0].c.clone().unwrap();
    if c[&rs.negative_of(theta)] != 1 {
        return Err(Error::internal("relation coefficient at −θ is not 1"));
    }
    let h: i64 = c.values().sum();
    let gamma: Vec<usize> = gamma_set.iter().copied().collect();

    let weyl = rs.weyl_group()?;
    let sums = map_items(exec, &weyl, |w| {
        gamma
            .iter()
            .filter(|&&g| !rs.is_positive(w.apply_root(g)))
            .map(|&g| c[&g])
            .sum::<i64>()
    });
    let mut d = vec![0u64; (h + 1) as usize];
    for s in sums {
        d[s as usize] += 1;
    }

    let f_phi = rs
        .index_of_connection()
        .to_i64()
        .ok_or_else(|| Error::internal("index of connection out of range"))?;
    if d[0] != 0 || d[h as usize] != 0 {
        return Err(Error::internal("descent counts must vanish at 0 and h"));
    }
    if d.iter().sum::<u64>() != weyl.len() as u64 {
        return Err(Error::internal("descent counts do not sum to |W|"));
    }
    if d.iter().any(|&di| di % (f_phi as u64) != 0) {
        return Err(Error::internal("descent count not divisible by the index of connection"));
    }

    let n_long = (0..rs.rank).filter(|&i| rs.is_long(rs.simple_root(i))).count();
    Ok(DescentProfile {
        gamma,
        c,
        h,
        d,
        f_phi,
        lattice: choice,
        n_simple: rs.rank,
        n_long,
        k_phi: rs.length_ratio(0),
        theta_long: rs.is_long(theta),
        theta_member: rs.negative_of(theta),
    })
}

/// The generalized ordered partition function
/// `p(M) = #{f: Γ → N : Σ c_γ f(γ) = M}`, cross-checked against the
/// equivalent count `#{f: Γ' → N : Σ c_γ f(γ) ≤ M}` over `Γ' = Γ ∖ {−θ}`.
pub fn partition_p(profile: &DescentProfile, m: i64) -> Result<u64> {
    if m < 0 {
        return Ok(0);
    }
    let coeffs: Vec<i64> = profile.gamma.iter().map(|g| profile.c[g]).collect();
    let exact = count_exact(&coeffs, m);
    // Dropping −θ (coefficient 1) and counting Σ ≤ M gives the same number.
    let theta_member = profile.theta_member;
    let reduced: Vec<i64> = profile
        .gamma
        .iter()
        .filter(|&&g| g != theta_member)
        .map(|g| profile.c[g])
        .collect();
    let le_count: u64 = {
        let mut acc = 0u64;
        // Σ over t ≤ M of #{Σ c f = t} with the reduced coefficient list.
        let per = counts_up_to(&reduced, m);
        for t in 0..=m {
            acc += per[t as usize];
        }
        acc
    };
    if exact != le_count {
        return Err(Error::internal(format!(
            "partition function mismatch: exact {exact} vs cumulative {le_count}"
        )));
    }
    Ok(exact)
}

fn count_exact(coeffs: &[i64], m: i64) -> u64 {
    let per = counts_up_to(coeffs, m);
    per[m as usize]
}

/// `out[t] = #{f : Σ c_γ f(γ) = t}` for `t = 0..=m`.
fn counts_up_to(coeffs: &[i64], m: i64) -> Vec<u64> {
    let mut dp = vec![0u64; (m + 1) as usize];
    dp[0] = 1;
    for &c in coeffs {
        let c = c as usize;
        for t in c..dp.len() {
            dp[t] += dp[t - c];
        }
    }
    dp
}

/// One check of the main identity at a value `M`.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub m: i64,
    pub lhs: u64,
    pub rhs: u64,
    pub pass: bool,
}

/// Structured report of the identity `Σ_{i=0}^{h} (d_i/f)·p(M−i) = M^N`
/// (`M^N·k^{N'}` when `θ` is short).
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub d: Vec<u64>,
    pub f_phi: i64,
    pub divisibility_pass: bool,
    pub symmetry_pass: bool,
    pub checks: Vec<IdentityCheck>,
    pub all_pass: bool,
}

pub fn verify_identity(
    profile: &DescentProfile,
    m_range: impl IntoIterator<Item = i64>,
) -> Result<IdentityReport> {
    let f = profile.f_phi as u64;
    let divisibility_pass = profile.d.iter().all(|&di| di % f == 0);
    let h = profile.h as usize;
    let symmetry_pass = (0..=h).all(|i| profile.d[i] == profile.d[h - i]);
    let mut checks = Vec::new();
    for m in m_range {
        let mut lhs: u64 = 0;
        for (i, &di) in profile.d.iter().enumerate() {
            lhs += (di / f) * partition_p(profile, m - i as i64)?;
        }
        let rhs = if profile.theta_long {
            (m as u64).pow(profile.n_simple as u32)
        } else {
            (m as u64).pow(profile.n_simple as u32)
                * (profile.k_phi as u64).pow(profile.n_long as u32)
        };
        checks.push(IdentityCheck {
            m,
            lhs,
            rhs,
            pass: lhs == rhs,
        });
    }
    let all_pass = divisibility_pass && symmetry_pass && checks.iter().all(|c| c.pass);
    Ok(IdentityReport {
        d: profile.d.clone(),
        f_phi: profile.f_phi,
        divisibility_pass,
        symmetry_pass,
        checks,
        all_pass,
    })
}

/// Symmetry is a theorem (hard failure when violated); strict unimodality is
/// only reported.
#[derive(Debug, Clone, Serialize)]
pub struct SymmetryReport {
    pub d: Vec<u64>,
    pub symmetric: bool,
    pub strictly_unimodal_half: bool,
}

pub fn symmetry_unimodality_report(profile: &DescentProfile) -> Result<SymmetryReport> {
    let h = profile.h as usize;
    let symmetric = (0..=h).all(|i| profile.d[i] == profile.d[h - i]);
    if !symmetric {
        return Err(Error::internal("descent sequence is not symmetric"));
    }
    let half = h.saturating_sub(1) / 2;
    let strictly_unimodal_half = (0..half).all(|i| profile.d[i] < profile.d[i + 1]);
    Ok(SymmetryReport {
        d: profile.d.clone(),
        symmetric,
        strictly_unimodal_half,
    })
}

/// Report for the type-A specialisation via cyclically consecutive descents.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicReport {
    pub n: usize,
    pub d: Vec<u64>,
    pub checks: Vec<IdentityCheck>,
    pub matches_descent_stats: bool,
    pub all_pass: bool,
}

/// Enumerate `S_{n+1}`, count cyclically consecutive descents against the
/// sequence `(n+1, 1, 2, ..., n+1)`, and verify
/// `M^n = Σ_{i=1}^{n} (d_i/(n+1))·C(M+i−1, n)`.
pub fn type_a_cyclic(
    n: usize,
    m_range: impl IntoIterator<Item = i64>,
    bound: usize,
    exec: Exec,
) -> Result<CyclicReport> {
    if n == 0 || n > bound {
        return Err(Error::resource(format!(
            "type-A specialisation bounded to 1 ≤ n ≤ {bound}"
        )));
    }
    let size = n + 1;
    let perms = all_permutations(size);
    let counts = map_items(exec, &perms, |perm| {
        // positions i_0..i_{n+1} = (n+1, 1, 2, ..., n+1), 1-based values.
        let val = |pos: usize| perm[pos - 1]; // σ(pos)
        let mut descents = 0u64;
        let mut prev = val(size);
        for k in 1..=size {
            let cur = val(k);
            if prev > cur {
                descents += 1;
            }
            prev = cur;
        }
        descents
    });
    let mut d = vec![0u64; size + 1];
    for c in counts {
        d[c as usize] += 1;
    }
    if d[0] != 0 || d[size] != 0 {
        return Err(Error::internal("cyclic descent counts must vanish at 0 and n+1"));
    }

    let mut checks = Vec::new();
    for m in m_range {
        let mut lhs: u64 = 0;
        for i in 1..=n {
            lhs += (d[i] / size as u64) * binomial(m + i as i64 - 1, n);
        }
        let rhs = (m as u64).pow(n as u32);
        checks.push(IdentityCheck {
            m,
            lhs,
            rhs,
            pass: lhs == rhs,
        });
    }

    // Cross-check against the Weyl-group descent statistics of type A_n.
    let ty = crate::rootsys::CartanType::simple(crate::rootsys::Family::A, n)?;
    let rs = crate::rootsys::build_root_system(&ty)?;
    let profile = descent_stats(&rs, LatticeChoice::P, exec)?;
    let matches_descent_stats = profile.d == d;

    let all_pass = matches_descent_stats && checks.iter().all(|c| c.pass);
    Ok(CyclicReport {
        n,
        d,
        checks,
        matches_descent_stats,
        all_pass,
    })
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

fn binomial(a: i64, k: usize) -> u64 {
    if a < k as i64 {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for j in 0..k {
        num *= (a - j as i64) as u128;
        den *= (j + 1) as u128;
    }
    (num / den) as u64
}

/// The two sides of the counting argument behind the main identity:
/// `#(D ∩ P(Φ))` by explicit lattice-point enumeration versus
/// `(1/f_Φ) Σ_i d_i·p(M−i)`.
#[derive(Debug, Clone, Serialize)]
pub struct DomainCount {
    pub m: i64,
    pub lattice_points: u64,
    pub weighted_count: u64,
    pub pass: bool,
}

pub fn count_domain_points(
    rs: &RootSystem,
    profile: &DescentProfile,
    m: i64,
) -> Result<DomainCount> {
    if m <= 0 {
        return Err(Error::invalid("domain count requires m ≥ 1"));
    }
    // Moduli n_γ = m·k_γ per simple root, where k_γ = k when the lattice is
    // P° and γ is long, else 1.
    let moduli: Vec<i64> = (0..rs.rank)
        .map(|i| {
            let g = rs.simple_root(i);
            if profile.lattice == LatticeChoice::PDual && rs.is_long(g) && rs.length_ratio(0) > 1 {
                m * rs.length_ratio(0)
            } else {
                m
            }
        })
        .collect();
    // Enumerate the integer coordinate box and verify the membership that the
    // counting argument claims.
    let coweights = rs.fundamental_coweights();
    let mut lattice_points = 0u64;
    let mut idx = vec![0i64; rs.rank];
    loop {
        let mut v = crate::rootsys::Vector::zero(rs.rank);
        for (j, &e) in idx.iter().enumerate() {
            v = v.add(&coweights[j].scale(&crate::linalg::rat_int(e)));
        }
        // v ∈ P(Φ) by construction; double-check it lands in the box D.
        let inside = (0..rs.rank).all(|j| {
            let t = rs.inner_root_vec(rs.simple_root(j), &v);
            !t.is_negative() && t < crate::linalg::rat_int(moduli[j])
        });
        if inside {
            lattice_points += 1;
        }
        let mut j = 0;
        loop {
            if j == rs.rank {
                break;
            }
            idx[j] += 1;
            if idx[j] < moduli[j] {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == rs.rank {
            break;
        }
    }

    let f = profile.f_phi as u64;
    let mut weighted: u64 = 0;
    for (i, &di) in profile.d.iter().enumerate() {
        weighted += di * partition_p(profile, m - i as i64)?;
    }
    let weighted_count = weighted / f;
    if weighted % f != 0 {
        return Err(Error::internal("weighted count not divisible by f"));
    }
    Ok(DomainCount {
        m,
        lattice_points,
        weighted_count,
        pass: lattice_points == weighted_count,
    })
}
