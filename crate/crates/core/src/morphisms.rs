//! Toric morphisms between characteristic pairs.
//!
//! A morphism is stored combinatorially: an edge map between the two polygons
//! (identity, order-preserving contraction, or bending) together with a
//! homomorphism `Psi` of the rank-2 torus. Edge and generator indices are
//! 1-based throughout.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::charpair::{CharacteristicPair, DegenerateCharacteristicPair, EdgeVectors};
use crate::error::{Error, Result};
use crate::intlinalg::{
    checked_add, det2, gcd, narrow, rat_int, rational_to_i128, solve_rational_combination, IntMatrix,
    IntVec2, RatMatrix, Rational, UnimodularMatrix2,
};
use crate::srengine::{multiply, Deg2Class, Deg4Class};

/// A nondecreasing surjection `{1..m} -> {1..m'}` with `1 -> 1` and `m -> m'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderSurjection {
    values: Vec<usize>,
}

impl OrderSurjection {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if values.first() != Some(&1) {
            return Err(Error::InvalidMorphism("surjection must send 1 to 1".into()));
        }
        for w in values.windows(2) {
            if w[1] < w[0] || w[1] > w[0] + 1 {
                return Err(Error::InvalidMorphism(format!(
                    "values {:?} are not a nondecreasing surjection",
                    values
                )));
            }
        }
        Ok(OrderSurjection { values })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn target_size(&self) -> usize {
        *self.values.last().unwrap()
    }

    /// `rho(j)`, 1-based.
    pub fn apply(&self, j: usize) -> usize {
        self.values[j - 1]
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &OrderSurjection) -> Result<OrderSurjection> {
        if self.target_size() != after.source_size() {
            return Err(Error::InvalidMorphism("surjection sizes do not compose".into()));
        }
        OrderSurjection::new(self.values.iter().map(|&v| after.apply(v)).collect())
    }

    /// Keeps `E_i, E_{n+1}, E_{n+2}` of an `m`-gon (`m = n + 2`).
    pub fn keep(m: usize, i: usize) -> Result<Self> {
        let n = m.checked_sub(2).ok_or(Error::TooFewEdges(m))?;
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        Self::new((1..=m).map(|j| if j <= i { 1 } else if j <= n + 1 { 2 } else { 3 }).collect())
    }

    /// Keeps `E_i, E_j, E_{n+1}, E_{n+2}` for `i < j`.
    pub fn keep2(m: usize, i: usize, j: usize) -> Result<Self> {
        let n = m.checked_sub(2).ok_or(Error::TooFewEdges(m))?;
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        if j <= i || j > n {
            return Err(Error::IndexOutOfRange { index: j, max: n });
        }
        Self::new(
            (1..=m)
                .map(|t| if t <= i { 1 } else if t <= j { 2 } else if t <= n + 1 { 3 } else { 4 })
                .collect(),
        )
    }

    /// The surjection from an `(m+1)`-gon that merges edges `i` and `i+1`.
    pub fn hat(m: usize, i: usize) -> Result<Self> {
        if i == 0 || i > m {
            return Err(Error::IndexOutOfRange { index: i, max: m });
        }
        Self::new((1..=m + 1).map(|j| if j <= i { j } else { j - 1 }).collect())
    }

    /// `max { j : rho(j) = k }`, the source edge that survives onto `E'_k`.
    pub fn survivor(&self, k: usize) -> usize {
        self.values.iter().rposition(|&v| v == k).unwrap() + 1
    }

    /// Whether edge `j` collapses to a vertex.
    pub fn is_contracted(&self, j: usize) -> bool {
        let m = self.source_size();
        self.apply(j) == self.apply(j % m + 1)
    }
}

impl fmt::Display for OrderSurjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.values)
    }
}

/// The jumping map splitting edge `i` of an `m`-gon into two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BendMap {
    pub source_size: usize,
    pub i: usize,
}

impl BendMap {
    pub fn new(source_size: usize, i: usize) -> Result<Self> {
        if i == 0 || i > source_size {
            return Err(Error::IndexOutOfRange { index: i, max: source_size });
        }
        Ok(BendMap { source_size, i })
    }

    pub fn target_size(&self) -> usize {
        self.source_size + 1
    }
}

/// Where a source edge lands in the target polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeImage {
    Edge(usize),
    /// The vertex `E'_p ∩ E'_q`.
    Vertex(usize, usize),
    /// A bent edge covering `E'_p ∪ E'_q`.
    Edges(usize, usize),
}

impl EdgeImage {
    /// Target edges whose vectors constrain the image.
    pub fn edges(&self) -> Vec<usize> {
        match *self {
            EdgeImage::Edge(k) => vec![k],
            EdgeImage::Vertex(p, q) | EdgeImage::Edges(p, q) => vec![p, q],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeMap {
    Identity(usize),
    Contract(OrderSurjection),
    Bend(BendMap),
}

impl EdgeMap {
    pub fn source_size(&self) -> usize {
        match self {
            EdgeMap::Identity(m) => *m,
            EdgeMap::Contract(r) => r.source_size(),
            EdgeMap::Bend(b) => b.source_size,
        }
    }

    pub fn target_size(&self) -> usize {
        match self {
            EdgeMap::Identity(m) => *m,
            EdgeMap::Contract(r) => r.target_size(),
            EdgeMap::Bend(b) => b.target_size(),
        }
    }

    pub fn image(&self, j: usize) -> EdgeImage {
        match self {
            EdgeMap::Identity(_) => EdgeImage::Edge(j),
            EdgeMap::Contract(r) => {
                let k = r.apply(j);
                if r.is_contracted(j) {
                    let prev = if k == 1 { r.target_size() } else { k - 1 };
                    EdgeImage::Vertex(prev, k)
                } else {
                    EdgeImage::Edge(k)
                }
            }
            EdgeMap::Bend(b) => match j.cmp(&b.i) {
                std::cmp::Ordering::Less => EdgeImage::Edge(j),
                std::cmp::Ordering::Equal => EdgeImage::Edges(j, j + 1),
                std::cmp::Ordering::Greater => EdgeImage::Edge(j + 1),
            },
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            EdgeMap::Identity(m) => json!({ "type": "identity", "m": m }),
            EdgeMap::Contract(r) => json!({ "type": "contract", "rho": r.values() }),
            EdgeMap::Bend(b) => json!({ "type": "bend", "i": b.i }),
        }
    }
}

/// A homomorphism of the rank-2 torus, given by its integer matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusHom2 {
    pub matrix: [[i64; 2]; 2],
}

impl TorusHom2 {
    pub const IDENTITY: TorusHom2 = TorusHom2 { matrix: [[1, 0], [0, 1]] };

    pub fn new(matrix: [[i64; 2]; 2]) -> Self {
        TorusHom2 { matrix }
    }

    pub fn diag(x: i64, y: i64) -> Self {
        TorusHom2 { matrix: [[x, 0], [0, y]] }
    }

    pub fn apply(&self, v: IntVec2) -> Result<IntVec2> {
        let [[p, q], [r, s]] = self.matrix;
        let row = |x: i64, y: i64| checked_add(x as i128 * v.a as i128, y as i128 * v.b as i128).and_then(narrow);
        Ok(IntVec2::new(row(p, q)?, row(r, s)?))
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&[self.matrix[0].to_vec(), self.matrix[1].to_vec()]).unwrap()
    }
}

impl From<UnimodularMatrix2> for TorusHom2 {
    fn from(u: UnimodularMatrix2) -> Self {
        TorusHom2 { matrix: u.entries() }
    }
}

/// Edge map plus torus homomorphism between two (possibly degenerate) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatiblePair {
    pub edge_map: EdgeMap,
    pub psi: TorusHom2,
    pub source: DegenerateCharacteristicPair,
    pub target: DegenerateCharacteristicPair,
}

impl CompatiblePair {
    pub fn new(
        edge_map: EdgeMap,
        psi: TorusHom2,
        source: DegenerateCharacteristicPair,
        target: DegenerateCharacteristicPair,
    ) -> Result<Self> {
        if edge_map.source_size() != source.m() || edge_map.target_size() != target.m() {
            return Err(Error::InvalidMorphism(format!(
                "edge map {} -> {} does not fit pairs of sizes {} and {}",
                edge_map.source_size(),
                edge_map.target_size(),
                source.m(),
                target.m()
            )));
        }
        Ok(CompatiblePair { edge_map, psi, source, target })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "edge_map": self.edge_map.to_json(),
            "psi": self.psi.matrix,
            "source": self.source.vectors(),
            "target": self.target.vectors(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatibilityViolation {
    pub edge: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub violations: Vec<CompatibilityViolation>,
    /// Source edges collapsing onto a vertex whose two target vectors are parallel.
    pub degenerate_vertices: Vec<usize>,
}

impl CompatibilityReport {
    pub fn is_compatible(&self) -> bool {
        self.violations.is_empty()
    }
}

fn on_line(w: IntVec2, line: IntVec2) -> bool {
    det2(w, line) == 0
}

/// Checks that `Psi lambda(E_j)` lies in the rational span of the target
/// vectors on the face containing the image of `E_j`, for every `j`.
pub fn validate_compatible(cp: &CompatiblePair) -> Result<CompatibilityReport> {
    let mut violations = Vec::new();
    let mut degenerate_vertices = Vec::new();
    for j in 1..=cp.source.m() {
        let w = cp.psi.apply(cp.source.vector(j))?;
        let t = |k: usize| cp.target.vector(k);
        match cp.edge_map.image(j) {
            EdgeImage::Edge(k) => {
                if !on_line(w, t(k)) {
                    violations.push(CompatibilityViolation {
                        edge: j,
                        reason: format!("image {w} is not on the line of lambda'(E'_{k}) = {}", t(k)),
                    });
                }
            }
            EdgeImage::Edges(p, q) => {
                for k in [p, q] {
                    if !on_line(w, t(k)) {
                        violations.push(CompatibilityViolation {
                            edge: j,
                            reason: format!("image {w} is not on the line of lambda'(E'_{k}) = {}", t(k)),
                        });
                    }
                }
            }
            EdgeImage::Vertex(p, q) => {
                if det2(t(p), t(q)) == 0 {
                    degenerate_vertices.push(j);
                    if !on_line(w, t(p)) {
                        violations.push(CompatibilityViolation {
                            edge: j,
                            reason: format!("image {w} is not on the degenerate vertex line {}", t(p)),
                        });
                    }
                }
            }
        }
    }
    Ok(CompatibilityReport { violations, degenerate_vertices })
}

/// Target vectors: `E'_k` receives the vector of the edge surviving onto it.
/// The flag reports whether the result is a characteristic pair.
pub fn pushforward(rho: &OrderSurjection, vectors: &[IntVec2]) -> Result<(DegenerateCharacteristicPair, bool)> {
    if rho.source_size() != vectors.len() {
        return Err(Error::InvalidMorphism(format!(
            "surjection on {} edges applied to a {}-gon",
            rho.source_size(),
            vectors.len()
        )));
    }
    let out: Vec<IntVec2> = (1..=rho.target_size()).map(|k| vectors[rho.survivor(k) - 1]).collect();
    let d = DegenerateCharacteristicPair::validate(out)?;
    let ok = d.is_characteristic();
    Ok((d, ok))
}

/// An integral lifting: the `m' x m` matrix covering the morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lifting {
    pub matrix: IntMatrix,
}

impl Lifting {
    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_int_rows(
            &self.matrix.to_rows().iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect::<Vec<_>>(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftResult {
    Lifted(Lifting),
    NoLifting { column: usize, reason: String },
}

fn require_characteristic_target(cp: &CompatiblePair) -> Result<()> {
    if !cp.target.is_characteristic() {
        return Err(Error::InvalidMorphism("liftings are only solved for characteristic targets".into()));
    }
    Ok(())
}

/// Rational coefficients of column `j`, keyed by target edge.
pub fn lifting_column(cp: &CompatiblePair, j: usize) -> Result<Vec<(usize, Rational)>> {
    let w = cp.psi.apply(cp.source.vector(j))?;
    let edges = cp.edge_map.image(j).edges();
    let basis: Vec<IntVec2> = edges.iter().map(|&k| cp.target.vector(k)).collect();
    let coeffs = match cp.edge_map.image(j) {
        EdgeImage::Edges(..) => solve_rational_combination(w, &basis[..1])?.map(|mut c| {
            c.push(Rational::zero());
            c
        }),
        _ => solve_rational_combination(w, &basis)?,
    };
    let coeffs = coeffs.ok_or_else(|| Error::InvalidMorphism(format!("pair is not compatible at edge {j}")))?;
    Ok(edges.into_iter().zip(coeffs).collect())
}

/// The unique rational matrix with `Lambda' L = Psi Lambda` and the face
/// support pattern of the edge map.
pub fn rational_lifting(cp: &CompatiblePair) -> Result<RatMatrix> {
    require_characteristic_target(cp)?;
    let mut out = RatMatrix::zeros(cp.target.m(), cp.source.m());
    for j in 1..=cp.source.m() {
        for (k, c) in lifting_column(cp, j)? {
            out.set(k - 1, j - 1, c);
        }
    }
    Ok(out)
}

/// Integral lifting, or the first column whose coefficients are not integers.
pub fn solve_lifting(cp: &CompatiblePair) -> Result<LiftResult> {
    require_characteristic_target(cp)?;
    let mut m = IntMatrix::zeros(cp.target.m(), cp.source.m());
    for j in 1..=cp.source.m() {
        for (k, c) in lifting_column(cp, j)? {
            match rational_to_i128(&c) {
                Some(v) => m.set(k - 1, j - 1, narrow(v)?),
                None => {
                    return Ok(LiftResult::NoLifting { column: j, reason: format!("non-integral column {j}") });
                }
            }
        }
    }
    let lhs = IntMatrix::characteristic(cp.target.vectors()).mul(&m)?;
    let rhs = cp.psi.to_int_matrix().mul(&IntMatrix::characteristic(cp.source.vectors()))?;
    if lhs != rhs {
        return Err(Error::InvalidMorphism("lifting does not commute with the characteristic matrices".into()));
    }
    Ok(LiftResult::Lifted(Lifting { matrix: m }))
}

/// `x_i -> sum_j l_ij y_j`: target generators to source classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionMap {
    rows: Vec<Deg2Class>,
}

impl SubstitutionMap {
    pub fn from_matrix(l: &RatMatrix) -> Self {
        SubstitutionMap { rows: (0..l.rows()).map(|i| Deg2Class::from_coeffs(l.row(i).to_vec())).collect() }
    }

    pub fn target_size(&self) -> usize {
        self.rows.len()
    }

    pub fn source_size(&self) -> usize {
        self.rows.first().map_or(0, Deg2Class::m)
    }

    /// Image of `x_i`, 1-based.
    pub fn generator(&self, i: usize) -> &Deg2Class {
        &self.rows[i - 1]
    }

    pub fn apply_deg2(&self, c: &Deg2Class) -> Deg2Class {
        assert_eq!(c.m(), self.target_size());
        c.coeffs()
            .iter()
            .zip(&self.rows)
            .filter(|(x, _)| !x.is_zero())
            .fold(Deg2Class::zero(self.source_size()), |acc, (x, r)| acc.add(&r.scale(x)))
    }

    pub fn apply_deg4(&self, c: &Deg4Class) -> Deg4Class {
        assert_eq!(c.m(), self.target_size());
        c.terms().fold(Deg4Class::zero(self.source_size()), |acc, ((i, j), x)| {
            acc.add(&multiply(self.generator(i), self.generator(j)).scale(x))
        })
    }

    /// Composite substitution: each `x_i` goes to `self(x_i)`, which is then
    /// rewritten with `first`. For morphisms `f` then `g` this is
    /// `sub(g).then(&sub(f))`.
    pub fn then(&self, first: &SubstitutionMap) -> SubstitutionMap {
        SubstitutionMap { rows: self.rows.iter().map(|r| first.apply_deg2(r)).collect() }
    }
}

pub fn induced_substitution(l: &Lifting) -> SubstitutionMap {
    SubstitutionMap::from_matrix(&l.to_rational())
}

/// Rescaling at `E_i`: `sigma_i = diag(b_i, a_i)` onto the pair with
/// `lambda'(E_j) = (a_j b_i, a_i b_j) / g_ij`.
///
/// `g_ij` is the positive gcd, except that `g_ii = a_i b_i`, and on a
/// smooth-form source `g_{i,n+1} = b_i` and `g_{i,n+2} = a_i`, so that
/// `lambda'(E_i) = (1,1)` and the last two vectors stay `(1,0)`, `(0,1)`.
pub fn rescale(pair: &CharacteristicPair, i: usize) -> Result<(CompatiblePair, Lifting)> {
    let m = pair.m();
    if i == 0 || i > m {
        return Err(Error::IndexOutOfRange { index: i, max: m });
    }
    let vi = pair.vector(i);
    if vi.product() == 0 {
        return Err(Error::ZeroProduct(i));
    }
    let n = pair.n();
    let smooth = pair.is_smooth_form();
    let mut target = Vec::with_capacity(m);
    for j in 1..=m {
        let vj = pair.vector(j);
        let x = vj.a as i128 * vi.b as i128;
        let y = vi.a as i128 * vj.b as i128;
        let g = if j == i {
            vi.product()
        } else if smooth && j == n + 1 {
            vi.b as i128
        } else if smooth && j == n + 2 {
            vi.a as i128
        } else {
            gcd(x, y)
        };
        target.push(IntVec2::new(narrow(x / g)?, narrow(y / g)?));
    }
    let target = CharacteristicPair::validate(target)?;
    let cp = CompatiblePair::new(
        EdgeMap::Identity(m),
        TorusHom2::diag(vi.b, vi.a),
        pair.to_degenerate(),
        target.to_degenerate(),
    )?;
    match solve_lifting(&cp)? {
        LiftResult::Lifted(l) => Ok((cp, l)),
        LiftResult::NoLifting { reason, .. } => Err(Error::InvalidMorphism(reason)),
    }
}

fn contraction(pair: &CharacteristicPair, rho: OrderSurjection) -> Result<CompatiblePair> {
    let (target, _) = pushforward(&rho, pair.vectors())?;
    CompatiblePair::new(EdgeMap::Contract(rho), TorusHom2::IDENTITY, pair.to_degenerate(), target)
}

/// The contraction `rho_i` onto `E_i, E_{n+1}, E_{n+2}`.
pub fn contract_keep(pair: &CharacteristicPair, i: usize) -> Result<CompatiblePair> {
    contraction(pair, OrderSurjection::keep(pair.m(), i)?)
}

/// The contraction `rho_ij` onto `E_i, E_j, E_{n+1}, E_{n+2}`.
pub fn contract_keep2(pair: &CharacteristicPair, i: usize, j: usize) -> Result<CompatiblePair> {
    contraction(pair, OrderSurjection::keep2(pair.m(), i, j)?)
}

/// `lambda^{delta_i}`: the edge vectors with `lambda(E_i)` repeated at `i, i+1`.
pub fn bend(vectors: &[IntVec2], i: usize) -> Result<(BendMap, DegenerateCharacteristicPair)> {
    let b = BendMap::new(vectors.len(), i)?;
    let mut out = vectors.to_vec();
    out.insert(i, vectors[i - 1]);
    Ok((b, DegenerateCharacteristicPair::validate(out)?))
}

/// Labels of the cellular basis `{u_1..u_n; v}`: entry `k - 1` is the source
/// index that `u'_k` corresponds to; `v'` always goes to `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellularIndexMap {
    pub u: Vec<usize>,
}

pub fn cellular_index_map(map: &EdgeMap) -> Result<CellularIndexMap> {
    match map {
        EdgeMap::Identity(m) => Ok(CellularIndexMap { u: (1..=m.saturating_sub(2)).collect() }),
        EdgeMap::Contract(rho) => {
            let (m, mt) = (rho.source_size(), rho.target_size());
            if m < 3 || mt < 3 || rho.apply(m - 1) != mt - 1 || rho.apply(m) != mt {
                return Err(Error::LabelingMismatch(format!(
                    "contraction {rho} does not send E_(n+1), E_(n+2) to E'_(n'+1), E'_(n'+2)"
                )));
            }
            Ok(CellularIndexMap { u: (1..=mt - 2).map(|k| rho.survivor(k)).collect() })
        }
        EdgeMap::Bend(b) => {
            let n = b.source_size.saturating_sub(2);
            if b.i > n {
                return Err(Error::LabelingMismatch(format!(
                    "bending at {} moves one of the last two edges of a {}-gon",
                    b.i, b.source_size
                )));
            }
            Ok(CellularIndexMap { u: (1..=n + 1).map(|j| if j <= b.i { j } else { j - 1 }).collect() })
        }
    }
}

/// A morphism as read from a JSON description.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MorphismSpec {
    Contract {
        rho: Vec<usize>,
    },
    Bend {
        i: usize,
    },
    Rescale {
        i: usize,
    },
    BasisChange {
        #[serde(rename = "U")]
        u: [[i64; 2]; 2],
    },
    Custom {
        rho: Vec<usize>,
        psi: [[i64; 2]; 2],
        #[serde(default)]
        target: Option<Vec<IntVec2>>,
    },
}

pub fn parse_morphism_json(text: &str) -> Result<MorphismSpec> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Instantiates a morphism description on a source pair. Targets default to
/// the pushforward (contractions), the bent pair, the rescaled pair, or the
/// transformed pair.
pub fn build_compatible_pair(spec: &MorphismSpec, source: &CharacteristicPair) -> Result<CompatiblePair> {
    let m = source.m();
    match spec {
        MorphismSpec::Contract { rho } => contraction(source, checked_surjection(rho, m)?),
        MorphismSpec::Bend { i } => {
            let (b, target) = bend(source.vectors(), *i)?;
            CompatiblePair::new(EdgeMap::Bend(b), TorusHom2::IDENTITY, source.to_degenerate(), target)
        }
        MorphismSpec::Rescale { i } => Ok(rescale(source, *i)?.0),
        MorphismSpec::BasisChange { u } => {
            let u = UnimodularMatrix2::new(*u)?;
            let target = source.apply_basis_change(&u)?;
            CompatiblePair::new(EdgeMap::Identity(m), u.into(), source.to_degenerate(), target.to_degenerate())
        }
        MorphismSpec::Custom { rho, psi, target } => {
            let rho = checked_surjection(rho, m)?;
            let target = match target {
                Some(t) => DegenerateCharacteristicPair::validate(t.clone())?,
                None => pushforward(&rho, source.vectors())?.0,
            };
            let edge_map = if rho.target_size() == m { EdgeMap::Identity(m) } else { EdgeMap::Contract(rho) };
            CompatiblePair::new(edge_map, TorusHom2::new(*psi), source.to_degenerate(), target)
        }
    }
}

fn checked_surjection(rho: &[usize], m: usize) -> Result<OrderSurjection> {
    if rho.len() != m {
        return Err(Error::InvalidMorphism(format!("rho has {} entries for a {m}-gon", rho.len())));
    }
    OrderSurjection::new(rho.to_vec())
}

/// `a_i b_i x_1` on the target triangle of `rho_i`.
pub fn scaled_first_generator(a_b: i128) -> Deg2Class {
    Deg2Class::generator(3, 1).scale(&rat_int(a_b))
}

/// Whether the lifting is a signed identity `diag(eps_1, ..., eps_m)`.
pub fn is_signed_identity(l: &Lifting) -> bool {
    let m = &l.matrix;
    m.rows() == m.cols()
        && (0..m.rows()).all(|i| (0..m.cols()).all(|j| if i == j { m.get(i, j).abs() == 1 } else { m.get(i, j) == 0 }))
}

impl fmt::Display for Lifting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.matrix.to_rows() {
            writeln!(f, "{r:?}")?;
        }
        Ok(())
    }
}
