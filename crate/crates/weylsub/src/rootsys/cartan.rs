//! Cartan types: the indecomposable families `A..G` with their admissible
//! ranks, parsing of type strings like `"B3xG2"`, and the standard Gram data
//! (long roots normalised to squared length 2).

use crate::linalg::{rat, rat_int, Rat};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// An indecomposable Cartan type `(family, rank)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::invalid(format!(
                "invalid Cartan type {family}{rank} (admissible: A>=1, B>=2, C>=3, D>=4, E6-E8, F4, G2)"
            )));
        }
        Ok(SimpleType { family, rank })
    }

    /// Number of roots of this indecomposable type.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    /// Half squared lengths `d_i = ⟨α_i, α_i⟩/2` of the simple roots, and the
    /// symmetric Gram entries for the bonded pairs.
    fn gram_data(&self) -> (Vec<Rat>, Vec<(usize, usize, Rat)>) {
        let n = self.rank;
        let chain = |k: usize, v: Rat| -> Vec<(usize, usize, Rat)> {
            (0..k.saturating_sub(1)).map(|i| (i, i + 1, v.clone())).collect()
        };
        match self.family {
            Family::A => (vec![rat_int(1); n], chain(n, rat_int(-1))),
            Family::B => {
                // Last simple root short.
                let mut d = vec![rat_int(1); n];
                d[n - 1] = rat(1, 2);
                (d, chain(n, rat_int(-1)))
            }
            Family::C => {
                // Last simple root long.
                let mut d = vec![rat(1, 2); n];
                d[n - 1] = rat_int(1);
                let mut edges = chain(n - 1, rat(-1, 2));
                edges.push((n - 2, n - 1, rat_int(-1)));
                (d, edges)
            }
            Family::D => {
                let mut edges = chain(n - 1, rat_int(-1));
                edges.push((n - 3, n - 1, rat_int(-1)));
                (vec![rat_int(1); n], edges)
            }
            Family::E => {
                // Bourbaki numbering: the chain is 1-3-4-5-...-n with node 2
                // attached to node 4 (0-based: 0-2-3-4-..., 1 attached to 3).
                let mut edges = vec![(0usize, 2usize, rat_int(-1)), (1, 3, rat_int(-1))];
                for i in 2..n - 1 {
                    edges.push((i, i + 1, rat_int(-1)));
                }
                (vec![rat_int(1); n], edges)
            }
            Family::F => {
                let d = vec![rat_int(1), rat_int(1), rat(1, 2), rat(1, 2)];
                let edges = vec![
                    (0, 1, rat_int(-1)),
                    (1, 2, rat_int(-1)),
                    (2, 3, rat(-1, 2)),
                ];
                (d, edges)
            }
            Family::G => {
                // First simple root short.
                let d = vec![rat(1, 3), rat_int(1)];
                (d, vec![(0, 1, rat_int(-1))])
            }
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A possibly decomposable Cartan type: an orthogonal join of indecomposable
/// components, written `"A2"`, `"B3xG2"`, ...
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub components: Vec<SimpleType>,
}

impl CartanType {
    pub fn new(components: Vec<SimpleType>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::invalid("empty Cartan type"));
        }
        Ok(CartanType { components })
    }

    pub fn simple(family: Family, rank: usize) -> Result<Self> {
        Ok(CartanType {
            components: vec![SimpleType::new(family, rank)?],
        })
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    /// Gram matrix `⟨α_i, α_j⟩` over all simple roots, components laid out as
    /// orthogonal blocks in order.
    pub fn gram(&self) -> Vec<Vec<Rat>> {
        let rank = self.rank();
        let mut g = vec![vec![rat_int(0); rank]; rank];
        let mut offset = 0;
        for comp in &self.components {
            let (d, edges) = comp.gram_data();
            for (i, di) in d.iter().enumerate() {
                g[offset + i][offset + i] = di * rat_int(2);
            }
            for (i, j, v) in edges {
                g[offset + i][offset + j] = v.clone();
                g[offset + j][offset + i] = v;
            }
            offset += comp.rank;
        }
        g
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut components = Vec::new();
        for part in s.split('x') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::invalid(format!("empty component in type string {s:?}")));
            }
            let family = match part.chars().next().unwrap().to_ascii_uppercase() {
                'A' => Family::A,
                'B' => Family::B,
                'C' => Family::C,
                'D' => Family::D,
                'E' => Family::E,
                'F' => Family::F,
                'G' => Family::G,
                c => {
                    return Err(Error::invalid(format!(
                        "unknown family {c:?} in type string {s:?}"
                    )))
                }
            };
            let rank: usize = part[1..]
                .parse()
                .map_err(|_| Error::invalid(format!("bad rank in component {part:?}")))?;
            components.push(SimpleType::new(family, rank)?);
        }
        CartanType::new(components)
    }
}
