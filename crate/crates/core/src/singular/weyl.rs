//! Dynkin diagrams of type ADE, their Cartan matrices and Weyl groups.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::SingularityError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AdeFamily {
    A,
    D,
    E,
}

/// A simply-laced Dynkin type: `A_n (n >= 1)`, `D_n (n >= 4)`, `E_6`, `E_7`, `E_8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdeType {
    family: AdeFamily,
    rank: usize,
}

impl AdeType {
    pub fn new(family: AdeFamily, rank: usize) -> Result<Self, SingularityError> {
        let ok = match family {
            AdeFamily::A => rank >= 1,
            AdeFamily::D => rank >= 4,
            AdeFamily::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(AdeType { family, rank })
        } else {
            Err(SingularityError::InvalidAdeType(format!("{family:?}{rank}")))
        }
    }

    pub fn a(n: usize) -> Self {
        Self::new(AdeFamily::A, n).unwrap()
    }

    pub fn d(n: usize) -> Self {
        Self::new(AdeFamily::D, n).unwrap()
    }

    pub fn e(n: usize) -> Self {
        Self::new(AdeFamily::E, n).unwrap()
    }

    pub fn family(&self) -> AdeFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Edges of the Dynkin diagram, vertices numbered from 0.
    ///
    /// E-type numbering follows Bourbaki: the chain 1-3-4-5-..., with vertex 2
    /// attached to vertex 4.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            AdeFamily::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            AdeFamily::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            AdeFamily::E => {
                let mut e = vec![(0, 2), (1, 3), (2, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            a[i][j] = -1;
            a[j][i] = -1;
        }
        a
    }

    /// Closed-form order of the Weyl group.
    pub fn weyl_order(&self) -> BigInt {
        let fact = |k: usize| (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
        match (self.family, self.rank) {
            (AdeFamily::A, n) => fact(n + 1),
            (AdeFamily::D, n) => (BigInt::one() << (n - 1)) * fact(n),
            (AdeFamily::E, 6) => BigInt::from(51_840u64),
            (AdeFamily::E, 7) => BigInt::from(2_903_040u64),
            (AdeFamily::E, 8) => BigInt::from(696_729_600u64),
            _ => unreachable!(),
        }
    }

    pub fn weyl_name(&self) -> String {
        match self.family {
            AdeFamily::A => format!("S_{}", self.rank + 1),
            AdeFamily::D => format!("(Z/2)^{} : S_{}", self.rank - 1, self.rank),
            AdeFamily::E => format!("W(E_{})", self.rank),
        }
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for AdeType {
    type Err = SingularityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || SingularityError::InvalidAdeType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => AdeFamily::A,
            Some('D') => AdeFamily::D,
            Some('E') => AdeFamily::E,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank: usize = rest.parse().map_err(|_| bad())?;
        AdeType::new(family, rank)
    }
}

impl Serialize for AdeType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AdeType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Ranks up to this bound are cross-checked by enumerating the group.
pub const ENUMERATION_RANK_LIMIT: usize = 6;

/// Order of the group generated by the simple reflections
/// `s_i(α_j) = α_j - A_ij α_i`, acting on the root lattice, found by
/// breadth-first closure over integer matrices.
pub fn enumerate_weyl_group(t: AdeType) -> u64 {
    let n = t.rank();
    let a = t.cartan_matrix();
    // matrices stored row-major as i16
    let gens: Vec<Vec<i16>> = (0..n)
        .map(|i| {
            let mut m = vec![0i16; n * n];
            for j in 0..n {
                // column j = e_j - A_ij e_i
                m[j * n + j] += 1;
                m[i * n + j] -= a[i][j] as i16;
            }
            m
        })
        .collect();
    let mut identity = vec![0i16; n * n];
    for i in 0..n {
        identity[i * n + i] = 1;
    }
    let mul = |x: &[i16], y: &[i16]| -> Vec<i16> {
        let mut out = vec![0i16; n * n];
        for r in 0..n {
            for k in 0..n {
                let xv = x[r * n + k];
                if xv == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] += xv * y[k * n + c];
                }
            }
        }
        out
    };
    let mut seen: HashSet<Vec<i16>> = HashSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for s in &gens {
                let h = mul(s, g);
                if seen.insert(h.clone()) {
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    seen.len() as u64
}

fn enumeration_cache() -> &'static Mutex<HashMap<AdeType, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<AdeType, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn enumerated_order(t: AdeType) -> u64 {
    if let Some(v) = enumeration_cache().lock().unwrap().get(&t) {
        return *v;
    }
    let v = enumerate_weyl_group(t);
    enumeration_cache().lock().unwrap().insert(t, v);
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinData {
    /// Number of (−2)-curves in the minimal resolution.
    pub vertices: usize,
    #[serde(with = "crate::serde_bigint")]
    pub weyl_order: BigInt,
    pub weyl_name: String,
    /// Whether the order was confirmed by enumerating the group.
    pub enumerated: bool,
}

pub fn dynkin_data(t: AdeType) -> Result<DynkinData, SingularityError> {
    let order = t.weyl_order();
    let enumerated = t.rank() <= ENUMERATION_RANK_LIMIT;
    if enumerated {
        let count = enumerated_order(t);
        if BigInt::from(count) != order {
            return Err(SingularityError::WeylMismatch { ade: t.to_string(), closed_form: order.to_string(), enumerated: count });
        }
    }
    Ok(DynkinData { vertices: t.rank(), weyl_order: order, weyl_name: t.weyl_name(), enumerated })
}

/// Data attached to a configuration of rational double points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsWahlData {
    pub singularities: Vec<AdeType>,
    /// Total number of (−2)-curves.
    pub nu: usize,
    /// Order of the direct sum of the Weyl groups, equal to the length of
    /// the fibre over the origin when the local-to-global map is constant.
    #[serde(with = "crate::serde_bigint")]
    pub total_weyl_order: BigInt,
}

pub fn burns_wahl_data(sing: &[AdeType]) -> Result<BurnsWahlData, SingularityError> {
    if sing.is_empty() {
        return Err(SingularityError::EmptyConfiguration);
    }
    let nu = sing.iter().map(AdeType::rank).sum();
    let total = sing.iter().fold(BigInt::one(), |acc, t| acc * t.weyl_order());
    Ok(BurnsWahlData { singularities: sing.to_vec(), nu, total_weyl_order: total })
}
