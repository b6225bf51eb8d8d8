//! Cohomology groups and closed-form cup-product matrices.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::charpair::{CharacteristicPair, EdgeVectors, Flavor, NormalizedPair};
use crate::error::{Error, Result};
use crate::intlinalg::{
    checked_mul, det2, exact_div, ext_gcd, format_rational, gcd, narrow, rat, rational_to_i128, IntVec2,
    RatMatrix, Rational,
};

/// Coefficient ring: `Z`, `Q` or `Z/m` with `m >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    Rationals,
    IntegersMod(i128),
}

impl RingSpec {
    pub fn integers_mod(m: i128) -> Result<Self> {
        if m < 2 {
            return Err(Error::Parse(format!("modulus must be at least 2, got {m}")));
        }
        Ok(RingSpec::IntegersMod(m))
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    /// Accepts `z`, `q` and `zmod:<m>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(RingSpec::Integers),
            "q" => Ok(RingSpec::Rationals),
            other => {
                let m = other
                    .strip_prefix("zmod:")
                    .ok_or_else(|| Error::Parse(format!("unknown ring '{s}'")))?
                    .parse::<i128>()
                    .map_err(|e| Error::Parse(format!("bad modulus in '{s}': {e}")))?;
                RingSpec::integers_mod(m)
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// An element of one of the supported rings. Residues are kept in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingElem {
    Int(i128),
    Rat(Rational),
    Mod { value: i128, m: i128 },
}

impl RingElem {
    pub fn residue(value: i128, m: i128) -> Self {
        RingElem::Mod { value: value.rem_euclid(m), m }
    }

    pub fn as_i128(&self) -> Option<i128> {
        match self {
            RingElem::Int(v) => Some(*v),
            RingElem::Rat(r) => rational_to_i128(r),
            RingElem::Mod { .. } => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            RingElem::Int(v) => Some(rat(*v, 1)),
            RingElem::Rat(r) => Some(r.clone()),
            RingElem::Mod { .. } => None,
        }
    }

    /// Integers and residues as JSON numbers (decimal strings beyond 64 bits),
    /// rationals as `"p"` or `"p/q"` strings.
    pub fn to_json(&self) -> Value {
        match self {
            RingElem::Int(v) | RingElem::Mod { value: v, .. } => int_json(*v),
            RingElem::Rat(r) => json!(format_rational(r)),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Int(v) => write!(f, "{v}"),
            RingElem::Rat(r) => write!(f, "{}", format_rational(r)),
            RingElem::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

pub fn int_json(v: i128) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

/// One cohomology group: a free part of the given rank plus cyclic torsion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupDesc {
    pub rank: usize,
    pub torsion: Vec<i128>,
}

impl GroupDesc {
    fn free(rank: usize) -> Self {
        GroupDesc { rank, torsion: Vec::new() }
    }

    fn cyclic(order: i128) -> Self {
        GroupDesc { rank: 0, torsion: if order >= 2 { vec![order] } else { Vec::new() } }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> i128 {
        self.torsion.iter().product()
    }

    fn describe(&self, ring: RingSpec) -> String {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(ring.to_string()),
            r => parts.push(format!("{ring}^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Cohomology of the orbifold in degrees 0 through 4 with the given coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyGroups {
    pub ring: RingSpec,
    pub k: i128,
    pub degrees: [GroupDesc; 5],
}

impl CohomologyGroups {
    pub fn degree(&self, d: usize) -> GroupDesc {
        self.degrees.get(d).cloned().unwrap_or_else(|| GroupDesc::free(0))
    }

    pub fn ranks(&self) -> [usize; 5] {
        std::array::from_fn(|d| self.degrees[d].rank)
    }

    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = self
            .degrees
            .iter()
            .enumerate()
            .map(|(d, g)| {
                let torsion: Vec<Value> = g.torsion.iter().map(|&t| int_json(t)).collect();
                json!({ "degree": d, "rank": g.rank, "torsion": torsion, "group": g.describe(self.ring) })
            })
            .collect();
        json!({ "ring": self.ring.to_string(), "k": int_json(self.k), "degrees": degrees })
    }
}

impl fmt::Display for CohomologyGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, g) in self.degrees.iter().enumerate() {
            writeln!(f, "H^{d}(X; {}) = {}", self.ring, g.describe(self.ring))?;
        }
        Ok(())
    }
}

pub fn groups_over_z(pair: &CharacteristicPair) -> CohomologyGroups {
    groups_over_ring(pair, RingSpec::Integers)
}

pub fn groups_over_ring(pair: &CharacteristicPair, ring: RingSpec) -> CohomologyGroups {
    let k = pair.torsion_order();
    let h3 = match ring {
        RingSpec::Integers => GroupDesc::cyclic(k),
        RingSpec::Rationals => GroupDesc::free(0),
        RingSpec::IntegersMod(m) => GroupDesc::cyclic(gcd(k, m)),
    };
    CohomologyGroups {
        ring,
        k,
        degrees: [GroupDesc::free(1), GroupDesc::free(0), GroupDesc::free(pair.n()), h3, GroupDesc::free(1)],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BasisTag {
    Smooth,
    Triangle,
    Pid,
}

impl BasisTag {
    /// Label of the closed form the matrix came from.
    pub fn theorem(&self) -> &'static str {
        match self {
            BasisTag::Smooth => "1.1",
            BasisTag::Triangle => "1.2",
            BasisTag::Pid => "1.3",
        }
    }
}

/// Symmetric matrix of `u_i ∪ u_j` against the top generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupMatrix {
    pub n: usize,
    pub ring: RingSpec,
    pub entries: Vec<Vec<RingElem>>,
    pub basis_tag: BasisTag,
    pub sign_freedom: bool,
}

impl CupMatrix {
    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Entries as integers, when every entry is one.
    pub fn to_i128_rows(&self) -> Option<Vec<Vec<i128>>> {
        self.entries.iter().map(|r| r.iter().map(RingElem::as_i128).collect()).collect()
    }

    /// The matrix over `Q`; `None` for residue matrices.
    pub fn to_rational(&self) -> Option<RatMatrix> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(RingElem::as_rational).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(RatMatrix::from_rows(rows))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> =
            self.entries.iter().map(|r| Value::Array(r.iter().map(RingElem::to_json).collect())).collect();
        let matrix = match self.ring {
            RingSpec::IntegersMod(m) => json!({ "mod": int_json(m), "entries": rows }),
            _ => Value::Array(rows),
        };
        json!({
            "theorem": self.basis_tag.theorem(),
            "ring": self.ring.to_string(),
            "n": self.n,
            "matrix": matrix,
            "sign_freedom": self.sign_freedom,
        })
    }
}

impl fmt::Display for CupMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[allow(clippy::needless_range_loop)]
fn symmetric(n: usize, mut entry: impl FnMut(usize, usize) -> Result<RingElem>) -> Result<Vec<Vec<RingElem>>> {
    let mut rows = vec![vec![RingElem::Int(0); n]; n];
    for i in 0..n {
        for j in i..n {
            let e = entry(i + 1, j + 1)?;
            rows[j][i] = e.clone();
            rows[i][j] = e;
        }
    }
    Ok(rows)
}

/// `u_i ∪ u_j = a_i b_j v` for `i <= j`.
pub fn cup_matrix_smooth(np: &NormalizedPair) -> Result<CupMatrix> {
    if np.flavor != Flavor::Smooth || !np.pair.is_smooth_form() {
        return Err(Error::NotNormalized("expected a smooth-form pair".into()));
    }
    let p = &np.pair;
    let n = p.n();
    let entries = symmetric(n, |i, j| Ok(RingElem::Int(p.vector(i).a as i128 * p.vector(j).b as i128)))?;
    Ok(CupMatrix { n, ring: RingSpec::Integers, entries, basis_tag: BasisTag::Smooth, sign_freedom: false })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriangleCup {
    pub c: i128,
    pub k: i128,
    pub sign_freedom: bool,
}

/// `u ∪ u = c v` on a triangle with `lambda(E_2) = (1,0)`, where
/// `k = gcd(b_1, b_3)` and `c = b_1 b_3 (a_1 b_3 - a_3 b_1) / k^2`.
pub fn cup_triangle(np: &NormalizedPair) -> Result<TriangleCup> {
    cup_triangle_vectors(np.pair.vectors())
}

pub fn cup_triangle_vectors(v: &[IntVec2]) -> Result<TriangleCup> {
    if v.len() != 3 || v[1] != IntVec2::new(1, 0) {
        return Err(Error::NotNormalized("expected a triangle with (1,0) at position 2".into()));
    }
    let (b1, b3) = (v[0].b as i128, v[2].b as i128);
    let k = gcd(b1, b3);
    let num = checked_mul(checked_mul(b1, b3)?, det2(v[0], v[2]))?;
    let c = exact_div(num, checked_mul(k, k)?)?;
    Ok(TriangleCup { c, k, sign_freedom: true })
}

fn inverse_mod(x: i128, m: i128) -> Option<i128> {
    let (g, s, _) = ext_gcd(x.rem_euclid(m), m);
    (g == 1).then(|| s.rem_euclid(m))
}

/// `u_i ∪ u_j = b_j (a_i b_{n+2} - a_{n+2} b_i) / b_{n+2}` evaluated in `ring`
/// as `b_j * (minor / k) * (b_{n+2} / k)^{-1}`.
pub fn cup_matrix_pid(np: &NormalizedPair, ring: RingSpec) -> Result<CupMatrix> {
    if !np.pair.is_half_form() {
        return Err(Error::NotNormalized("expected (1,0) at position n+1 and a_(n+2) b_(n+2) != 0".into()));
    }
    let p = &np.pair;
    let n = p.n();
    let k = p.torsion_order();
    let last = p.vector(n + 2);
    let bk = exact_div(last.b as i128, k)?;
    let unit = match ring {
        RingSpec::Rationals => None,
        RingSpec::Integers if bk.abs() == 1 => Some(bk),
        RingSpec::Integers => return Err(Error::NotInvertible { value: bk, ring: ring.to_string() }),
        RingSpec::IntegersMod(m) => {
            Some(inverse_mod(bk, m).ok_or(Error::NotInvertible { value: bk, ring: ring.to_string() })?)
        }
    };
    let entries = symmetric(n, |i, j| {
        let scaled_minor = exact_div(det2(p.vector(i), last), k)?;
        let bj = p.vector(j).b as i128;
        Ok(match ring {
            RingSpec::Rationals => RingElem::Rat(rat(checked_mul(bj, scaled_minor)?, bk)),
            RingSpec::Integers => RingElem::Int(checked_mul(checked_mul(bj, scaled_minor)?, unit.unwrap())?),
            RingSpec::IntegersMod(m) => {
                let x = (bj.rem_euclid(m) * scaled_minor.rem_euclid(m)).rem_euclid(m);
                RingElem::residue(checked_mul(x, unit.unwrap())?, m)
            }
        })
    })?;
    Ok(CupMatrix { n, ring, entries, basis_tag: BasisTag::Pid, sign_freedom: true })
}

/// The smooth pair `lambda_bar` attached to a half-form pair, with the scaling
/// factors `g_i` such that `tau(lambda(E_i)) = g_i lambda_bar(E_i)` for
/// `tau = [[b_{n+2}, -a_{n+2}], [0, a_{n+2}]]`.
///
/// `g_i = gcd(a_i b_{n+2}, a_{n+2} b_i)`, except that `g_{n+1} = b_{n+2}` and
/// `g_{n+2} = a_{n+2} b_{n+2}` carry their signs so the last two vectors land
/// exactly on `(1,0)` and `(0,1)`.
pub fn smooth_companion(np: &NormalizedPair) -> Result<(NormalizedPair, Vec<i128>)> {
    let p = &np.pair;
    if !p.is_half_form() {
        return Err(Error::NotNormalized("expected (1,0) at position n+1 and a_(n+2) b_(n+2) != 0".into()));
    }
    let n = p.n();
    let last = p.vector(n + 2);
    let (a, b) = (last.a as i128, last.b as i128);
    let mut vectors = Vec::with_capacity(p.m());
    let mut gs = Vec::with_capacity(p.m());
    for i in 1..=p.m() {
        let v = p.vector(i);
        let x = det2(v, last);
        let y = checked_mul(a, v.b as i128)?;
        let g = if i == n + 1 {
            b
        } else if i == n + 2 {
            checked_mul(a, b)?
        } else {
            gcd(checked_mul(v.a as i128, b)?, y)
        };
        vectors.push(IntVec2::new(narrow(exact_div(x, g)?)?, narrow(exact_div(y, g)?)?));
        gs.push(g);
    }
    let pair = CharacteristicPair::validate(vectors)?;
    Ok((NormalizedPair::from_smooth_form(pair)?, gs))
}

/// Whether two rational matrices agree up to one global sign.
pub fn equal_up_to_sign(a: &RatMatrix, b: &RatMatrix) -> bool {
    if a == b {
        return true;
    }
    a.rows() == b.rows()
        && a.cols() == b.cols()
        && (0..a.rows()).all(|i| (0..a.cols()).all(|j| (a.get(i, j) + b.get(i, j)).is_zero()))
}
