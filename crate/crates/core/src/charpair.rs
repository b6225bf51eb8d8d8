//! Characteristic pairs on polygons.
//!
//! Edges are 1-based and cyclic: edge `E_i` joins vertices `v_i` and `v_{i+1}`.
//! Smoothness is reported per adjacent edge pair `(E_i, E_{i+1})`, which is the
//! form every downstream formula consumes. Note that a vertex-indexed reading
//! would name the common vertex of that pair `v_{i+1}`, one off from `i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlinalg::{complete_to_unimodular, det2, gcd, gcd_all, IntVec2, UnimodularMatrix2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonPrimitive { edge: usize },
    AdjacentDependent { edge: usize, next: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPrimitive { edge } => write!(f, "NonPrimitive({edge})"),
            Violation::AdjacentDependent { edge, next } => {
                write!(f, "AdjacentDependent({edge},{next})")
            }
        }
    }
}

/// Read access to the cyclically ordered edge vectors of a (possibly
/// degenerate) pair. Indices are 1-based.
pub trait EdgeVectors {
    fn vectors(&self) -> &[IntVec2];

    fn m(&self) -> usize {
        self.vectors().len()
    }

    fn n(&self) -> usize {
        self.m() - 2
    }

    /// `lambda(E_i)`, 1-based.
    fn vector(&self, i: usize) -> IntVec2 {
        self.vectors()[i - 1]
    }

    /// 1-based cyclic successor of edge `i`.
    fn next(&self, i: usize) -> usize {
        i % self.m() + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacteristicPair {
    vectors: Vec<IntVec2>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegenerateCharacteristicPair {
    vectors: Vec<IntVec2>,
}

impl EdgeVectors for CharacteristicPair {
    fn vectors(&self) -> &[IntVec2] {
        &self.vectors
    }
}

impl EdgeVectors for DegenerateCharacteristicPair {
    fn vectors(&self) -> &[IntVec2] {
        &self.vectors
    }
}

impl EdgeVectors for [IntVec2] {
    fn vectors(&self) -> &[IntVec2] {
        self
    }
}

impl EdgeVectors for Vec<IntVec2> {
    fn vectors(&self) -> &[IntVec2] {
        self
    }
}

fn primitivity_violations(vectors: &[IntVec2]) -> Vec<Violation> {
    vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_primitive())
        .map(|(i, _)| Violation::NonPrimitive { edge: i + 1 })
        .collect()
}

/// All violations of the characteristic-pair conditions, primitivity first.
pub fn violations(vectors: &[IntVec2]) -> Vec<Violation> {
    let m = vectors.len();
    let mut out = primitivity_violations(vectors);
    for i in 0..m {
        let j = (i + 1) % m;
        if det2(vectors[i], vectors[j]) == 0 {
            out.push(Violation::AdjacentDependent { edge: i + 1, next: j + 1 });
        }
    }
    out
}

impl CharacteristicPair {
    pub fn validate(vectors: Vec<IntVec2>) -> Result<Self> {
        if vectors.len() < 3 {
            return Err(Error::TooFewEdges(vectors.len()));
        }
        let v = violations(&vectors);
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }
        Ok(CharacteristicPair { vectors })
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::validate(pairs.iter().map(|&p| p.into()).collect())
    }

    pub fn into_vectors(self) -> Vec<IntVec2> {
        self.vectors
    }

    pub fn to_degenerate(&self) -> DegenerateCharacteristicPair {
        DegenerateCharacteristicPair { vectors: self.vectors.clone() }
    }

    /// 1-based indices `i` with `|det(lambda(E_i), lambda(E_{i+1}))| = 1`.
    pub fn smooth_edge_pairs(&self) -> Vec<usize> {
        (1..=self.m())
            .filter(|&i| det2(self.vector(i), self.vector(self.next(i))).abs() == 1)
            .collect()
    }

    /// Gcd of all 2x2 minors; the order of the degree-3 integral cohomology.
    pub fn torsion_order(&self) -> i128 {
        let m = self.m();
        let mut minors = Vec::with_capacity(m * (m - 1) / 2);
        for i in 0..m {
            for j in i + 1..m {
                minors.push(det2(self.vectors[i], self.vectors[j]));
            }
        }
        gcd_all(&minors)
    }

    /// Cyclic relabeling: position `p` of the result holds old position `p + r`.
    pub fn rotate(&self, r: usize) -> CharacteristicPair {
        CharacteristicPair { vectors: rotate_vec(&self.vectors, r) }
    }

    pub fn apply_basis_change(&self, u: &UnimodularMatrix2) -> Result<CharacteristicPair> {
        Ok(CharacteristicPair { vectors: apply_all(&self.vectors, u)? })
    }

    /// `lambda(E_{n+1}) = (1,0)` and `lambda(E_{n+2}) = (0,1)`.
    pub fn is_smooth_form(&self) -> bool {
        let n = self.n();
        self.vector(n + 1) == IntVec2::new(1, 0) && self.vector(n + 2) == IntVec2::new(0, 1)
    }

    /// `lambda(E_{n+1}) = (1,0)` and `a_{n+2} * b_{n+2} != 0`.
    pub fn is_half_form(&self) -> bool {
        let n = self.n();
        self.vector(n + 1) == IntVec2::new(1, 0) && self.vector(n + 2).product() != 0
    }

    /// Rotation that moves 1-based edge `index` to position `n+1`.
    fn rotation_for(&self, index: usize) -> usize {
        (index + 1) % self.m()
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.m() {
            return Err(Error::IndexOutOfRange { index, max: self.m() });
        }
        Ok(())
    }

    /// Relabel and change basis so that `lambda(E_{n+1}) = (1,0)`,
    /// `lambda(E_{n+2}) = (0,1)`.
    ///
    /// `chosen` is a smooth edge-pair index; by default the smooth pair needing
    /// the smallest rotation is used.
    pub fn normalize_smooth(&self, chosen: Option<usize>) -> Result<NormalizedPair> {
        let smooth = self.smooth_edge_pairs();
        if smooth.is_empty() {
            return Err(Error::NoSmoothVertex);
        }
        let index = match chosen {
            Some(i) => {
                self.check_index(i)?;
                if !smooth.contains(&i) {
                    return Err(Error::BadIndex {
                        index: i,
                        reason: "edge pair is not smooth".into(),
                    });
                }
                i
            }
            None => *smooth.iter().min_by_key(|&&i| self.rotation_for(i)).unwrap(),
        };
        let rotation = self.rotation_for(index);
        let rotated = self.rotate(rotation);
        let n = self.n();
        let (p, q) = (rotated.vector(n + 1), rotated.vector(n + 2));
        let u = UnimodularMatrix2::new([[p.a, q.a], [p.b, q.b]])?.inverse()?;
        let pair = rotated.apply_basis_change(&u)?;
        debug_assert!(pair.is_smooth_form());
        Ok(NormalizedPair { pair, basis_change: u, rotation, flavor: Flavor::Smooth, shear: None })
    }

    /// Relabel and change basis so that `lambda(E_{n+1}) = (1,0)` and
    /// `a_{n+2} b_{n+2} != 0`.
    ///
    /// Without `chosen`, every rotation is tried and the one minimizing
    /// `|b_{n+2}| / k` wins (ties: smallest rotation). Without `shear`, the
    /// smallest `|s|` making `a_{n+2} != 0` is used, positive on ties.
    pub fn normalize_half(&self, chosen: Option<usize>, shear: Option<i64>) -> Result<NormalizedPair> {
        let n = self.n();
        let k = self.torsion_order();
        let candidate = |rotation: usize| -> Result<(CharacteristicPair, UnimodularMatrix2)> {
            let rotated = self.rotate(rotation);
            let u = complete_to_unimodular(rotated.vector(n + 1))?;
            Ok((rotated.apply_basis_change(&u)?, u))
        };
        let rotation = match chosen {
            Some(i) => {
                self.check_index(i)?;
                self.rotation_for(i)
            }
            None => {
                let mut best: Option<(i128, usize)> = None;
                for r in 0..self.m() {
                    let (p, _) = candidate(r)?;
                    let score = p.vector(n + 2).b as i128 / k;
                    let score = score.abs();
                    if best.is_none_or(|(s, _)| score < s) {
                        best = Some((score, r));
                    }
                }
                best.unwrap().1
            }
        };
        let (pair, u) = candidate(rotation)?;
        let last = pair.vector(n + 2);
        let s = match shear {
            Some(s) => {
                if last.a as i128 + s as i128 * last.b as i128 == 0 {
                    return Err(Error::ShearRejected(s));
                }
                s
            }
            None if last.a != 0 => 0,
            // b_{n+2} is +-det of the adjacent pair, so it is never 0 here
            None => 1,
        };
        let sh = UnimodularMatrix2::shear(s);
        let pair = pair.apply_basis_change(&sh)?;
        let basis_change = sh.compose(&u)?;
        debug_assert!(pair.is_half_form());
        Ok(NormalizedPair { pair, basis_change, rotation, flavor: Flavor::Half, shear: Some(s) })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "edges": self.vectors })
    }
}

impl DegenerateCharacteristicPair {
    pub fn validate(vectors: Vec<IntVec2>) -> Result<Self> {
        if vectors.len() < 3 {
            return Err(Error::TooFewEdges(vectors.len()));
        }
        let v = primitivity_violations(&vectors);
        if !v.is_empty() {
            return Err(Error::Invalid(v));
        }
        Ok(DegenerateCharacteristicPair { vectors })
    }

    pub fn into_vectors(self) -> Vec<IntVec2> {
        self.vectors
    }

    /// Upgrades to a characteristic pair when adjacent vectors are independent.
    pub fn to_characteristic(&self) -> Result<CharacteristicPair> {
        CharacteristicPair::validate(self.vectors.clone())
    }

    pub fn is_characteristic(&self) -> bool {
        violations(&self.vectors).is_empty()
    }

    pub fn rotate(&self, r: usize) -> DegenerateCharacteristicPair {
        DegenerateCharacteristicPair { vectors: rotate_vec(&self.vectors, r) }
    }

    pub fn apply_basis_change(&self, u: &UnimodularMatrix2) -> Result<DegenerateCharacteristicPair> {
        Ok(DegenerateCharacteristicPair { vectors: apply_all(&self.vectors, u)? })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "edges": self.vectors })
    }
}

fn rotate_vec(v: &[IntVec2], r: usize) -> Vec<IntVec2> {
    let m = v.len();
    (0..m).map(|p| v[(p + r) % m]).collect()
}

fn apply_all(v: &[IntVec2], u: &UnimodularMatrix2) -> Result<Vec<IntVec2>> {
    v.iter().map(|&x| u.apply(x)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Smooth,
    Half,
}

/// A pair in one of the two working normal forms, with the relabeling and
/// basis change that produced it: `pair = basis_change * rotate(original, rotation)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedPair {
    pub pair: CharacteristicPair,
    pub basis_change: UnimodularMatrix2,
    pub rotation: usize,
    pub flavor: Flavor,
    pub shear: Option<i64>,
}

impl NormalizedPair {
    /// Wraps a pair that is already in smooth form.
    pub fn from_smooth_form(pair: CharacteristicPair) -> Result<Self> {
        if !pair.is_smooth_form() {
            return Err(Error::NotNormalized("expected (1,0), (0,1) at positions n+1, n+2".into()));
        }
        Ok(NormalizedPair {
            pair,
            basis_change: UnimodularMatrix2::IDENTITY,
            rotation: 0,
            flavor: Flavor::Smooth,
            shear: None,
        })
    }

    /// Wraps a pair that is already in half form.
    pub fn from_half_form(pair: CharacteristicPair) -> Result<Self> {
        if !pair.is_half_form() {
            return Err(Error::NotNormalized(
                "expected (1,0) at position n+1 and a_(n+2) b_(n+2) != 0".into(),
            ));
        }
        Ok(NormalizedPair {
            pair,
            basis_change: UnimodularMatrix2::IDENTITY,
            rotation: 0,
            flavor: Flavor::Half,
            shear: Some(0),
        })
    }

    /// Undoes the basis change and rotation.
    pub fn recover_original(&self) -> Result<CharacteristicPair> {
        let un = self.pair.apply_basis_change(&self.basis_change.inverse()?)?;
        let m = un.m();
        Ok(un.rotate((m - self.rotation % m) % m))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "flavor": self.flavor,
            "edges": self.pair.vectors(),
            "basis_change": self.basis_change,
            "rotation": self.rotation,
            "shear": self.shear,
        })
    }
}

#[derive(Debug, Deserialize)]
struct PairFile {
    edges: Vec<IntVec2>,
}

/// Parses `{"edges": [[a1,b1], ..., [am,bm]]}`.
pub fn parse_edges_json(text: &str) -> Result<Vec<IntVec2>> {
    let f: PairFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(f.edges)
}

/// Reference check of the two defining conditions, kept deliberately naive.
pub fn is_characteristic_naive(vectors: &[IntVec2]) -> bool {
    let m = vectors.len();
    m >= 3
        && vectors.iter().all(|v| gcd(v.a as i128, v.b as i128) == 1)
        && (0..m).all(|i| {
            let (p, q) = (vectors[i], vectors[(i + 1) % m]);
            p.a as i128 * q.b as i128 != p.b as i128 * q.a as i128
        })
}
