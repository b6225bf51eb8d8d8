//! Graded Stanley-Reisner quotients over `Q` in degrees 2 and 4.
//!
//! Over a field of characteristic zero the cohomology ring of the orbifold is
//! `SR[P] / (I + J)`: the polygon's face ring modulo the two linear forms
//! `sum a_i y_i` and `sum b_i y_i`. This module computes that quotient by exact
//! elimination and never consults any closed-form cup-product formula, so it
//! can serve as an independent check on them.
//!
//! Generator indices in the public API are 1-based (`y_1 .. y_m`); class
//! coefficient vectors are stored 0-based.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::charpair::{CharacteristicPair, EdgeVectors};
use crate::error::{Error, Result};
use crate::intlinalg::{rat_int, rref_rational, IntVec2, RatMatrix, Rational, Rref};

/// A linear combination of the degree-2 generators `y_1 .. y_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deg2Class {
    coeffs: Vec<Rational>,
}

impl Deg2Class {
    pub fn zero(m: usize) -> Self {
        Deg2Class { coeffs: vec![Rational::zero(); m] }
    }

    /// The generator `y_i` (1-based).
    pub fn generator(m: usize, i: usize) -> Self {
        let mut c = Self::zero(m);
        c.coeffs[i - 1] = Rational::one();
        c
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Deg2Class { coeffs }
    }

    pub fn from_ints(coeffs: &[i128]) -> Self {
        Deg2Class { coeffs: coeffs.iter().map(|&c| rat_int(c)).collect() }
    }

    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `y_i` (1-based).
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i - 1]
    }

    pub fn add(&self, other: &Deg2Class) -> Deg2Class {
        assert_eq!(self.m(), other.m());
        Deg2Class { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Deg2Class) -> Deg2Class {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Deg2Class {
        Deg2Class { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Deg2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*y{}", crate::intlinalg::format_rational(c), i + 1))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Whether `y_i y_j` (0-based, any order) survives the Stanley-Reisner ideal of
/// an `m`-gon: squares and products of adjacent edges only.
pub fn is_allowed(m: usize, i: usize, j: usize) -> bool {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i == j || j == i + 1 || (i == 0 && j == m - 1)
}

/// Allowed quadratic monomials in lexicographic order (0-based pairs `i <= j`).
pub fn allowed_monomials(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in i..m {
            if is_allowed(m, i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// A degree-4 element of `SR[P]`, supported on allowed monomials only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deg4Class {
    m: usize,
    terms: BTreeMap<(usize, usize), Rational>,
}

impl Deg4Class {
    pub fn zero(m: usize) -> Self {
        Deg4Class { m, terms: BTreeMap::new() }
    }

    /// `y_i y_j` (1-based); the zero class when the edges do not meet.
    pub fn monomial(m: usize, i: usize, j: usize) -> Self {
        let mut c = Self::zero(m);
        c.add_term(i - 1, j - 1, Rational::one());
        c
    }

    fn add_term(&mut self, i: usize, j: usize, v: Rational) {
        if !is_allowed(self.m, i, j) || v.is_zero() {
            return;
        }
        let key = if i <= j { (i, j) } else { (j, i) };
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Nonzero terms keyed by 1-based `(i, j)` with `i <= j`.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.terms.iter().map(|(&(i, j), v)| ((i + 1, j + 1), v))
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        let key = if i <= j { (i - 1, j - 1) } else { (j - 1, i - 1) };
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Deg4Class) -> Deg4Class {
        let mut out = self.clone();
        for (&(i, j), v) in &other.terms {
            out.add_term(i, j, v.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Deg4Class {
        let mut out = Deg4Class::zero(self.m);
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v * s);
        }
        out
    }
}

impl fmt::Display for Deg4Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms()
            .map(|((i, j), c)| format!("{}*y{}y{}", crate::intlinalg::format_rational(c), i, j))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `(sum a_i y_i, sum b_i y_i)`.
pub fn linear_relations(vectors: &[IntVec2]) -> [Deg2Class; 2] {
    [
        Deg2Class { coeffs: vectors.iter().map(|v| rat_int(v.a as i128)).collect() },
        Deg2Class { coeffs: vectors.iter().map(|v| rat_int(v.b as i128)).collect() },
    ]
}

/// Product in `SR[P]`; cross terms of non-adjacent edges vanish.
pub fn multiply(c1: &Deg2Class, c2: &Deg2Class) -> Deg4Class {
    assert_eq!(c1.m(), c2.m(), "classes over different polygons");
    let m = c1.m();
    let mut out = Deg4Class::zero(m);
    for (i, x) in c1.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in c2.coeffs.iter().enumerate() {
            if !y.is_zero() {
                out.add_term(i, j, x * y);
            }
        }
    }
    out
}

/// The degree-4 part of `SR[P] / (I + J)` over `Q`, with coordinates taken
/// against the class of `y_{n+1} y_{n+2}`.
#[derive(Debug, Clone)]
pub struct Deg4Quotient {
    m: usize,
    monomials: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    relations: Rref,
    free_column: usize,
    generator_coord: Rational,
}

impl Deg4Quotient {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len() - self.relations.rank
    }

    pub fn rank(&self) -> usize {
        self.relations.rank
    }

    pub fn monomial_count(&self) -> usize {
        self.monomials.len()
    }

    /// 1-based indices of the monomial whose class spans the quotient.
    pub fn generator(&self) -> (usize, usize) {
        (self.m - 1, self.m)
    }

    fn coordinate(&self, c: &Deg4Class) -> Rational {
        // every monomial reduces to a multiple of the single free column
        let r = &self.relations;
        let mut acc = Rational::zero();
        for (&key, v) in &c.terms {
            let col = self.index[&key];
            if col == self.free_column {
                acc += v;
            } else if let Some(row) = r.pivots.iter().position(|&p| p == col) {
                acc -= v * r.matrix.get(row, self.free_column);
            }
        }
        acc
    }
}

fn relation_rows(vectors: &[IntVec2], monomials: &[(usize, usize)], index: &BTreeMap<(usize, usize), usize>) -> RatMatrix {
    let m = vectors.len();
    let mut rows = Vec::with_capacity(2 * m);
    for l in linear_relations(vectors) {
        for t in 1..=m {
            let prod = multiply(&l, &Deg2Class::generator(m, t));
            let mut row = vec![Rational::zero(); monomials.len()];
            for (key, v) in &prod.terms {
                row[index[key]] = v.clone();
            }
            rows.push(row);
        }
    }
    RatMatrix::from_rows(rows)
}

/// The `2m x (#allowed monomials)` matrix of the relations `l_a * y_t`.
pub fn relation_matrix(pair: &CharacteristicPair) -> RatMatrix {
    let monomials = allowed_monomials(pair.m());
    let index = monomials.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    relation_rows(pair.vectors(), &monomials, &index)
}

pub fn build_deg4_quotient(pair: &CharacteristicPair) -> Result<Deg4Quotient> {
    let m = pair.m();
    let monomials = allowed_monomials(m);
    let index: BTreeMap<_, _> = monomials.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let relations = rref_rational(&relation_rows(pair.vectors(), &monomials, &index));
    let dim = monomials.len() - relations.rank;
    if dim != 1 {
        return Err(Error::DegenerateQuotient(dim));
    }
    let free_column = (0..monomials.len()).find(|c| !relations.pivots.contains(c)).unwrap();
    let mut q = Deg4Quotient {
        m,
        monomials,
        index,
        relations,
        free_column,
        generator_coord: Rational::one(),
    };
    let g = q.coordinate(&Deg4Class::monomial(m, m - 1, m));
    if g.is_zero() {
        return Err(Error::DegenerateQuotient(0));
    }
    q.generator_coord = g;
    Ok(q)
}

/// The rational `r` with `[c] = r [y_{n+1} y_{n+2}]`.
pub fn reduce_to_generator(q: &Deg4Quotient, c: &Deg4Class) -> Rational {
    assert_eq!(q.m, c.m, "class and quotient over different polygons");
    q.coordinate(c) / &q.generator_coord
}

/// Whether two degree-2 classes agree modulo the linear forms.
pub fn deg2_equivalent(vectors: &[IntVec2], c1: &Deg2Class, c2: &Deg2Class) -> bool {
    let [l1, l2] = linear_relations(vectors);
    let diff = c1.sub(c2);
    if diff.is_zero() {
        return true;
    }
    let base = rref_rational(&RatMatrix::from_rows(vec![l1.coeffs.clone(), l2.coeffs.clone()])).rank;
    let with = rref_rational(&RatMatrix::from_rows(vec![l1.coeffs, l2.coeffs, diff.coeffs])).rank;
    base == with
}

fn require_smooth_form(pair: &CharacteristicPair) -> Result<()> {
    if !pair.is_smooth_form() {
        return Err(Error::NotNormalized("expected (1,0), (0,1) at positions n+1, n+2".into()));
    }
    Ok(())
}

/// `z_i = sum_{k<i} a_k b_i y_k + a_i b_i y_i + sum_{i<k<=n} a_i b_k y_k`.
pub fn representative_z(pair: &CharacteristicPair, i: usize) -> Result<Deg2Class> {
    require_smooth_form(pair)?;
    let n = pair.n();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    let vi = pair.vector(i);
    if vi.product() == 0 {
        return Err(Error::ZeroProduct(i));
    }
    let mut coeffs = vec![0i128; pair.m()];
    for (k, c) in coeffs.iter_mut().enumerate().take(n) {
        let vk = pair.vector(k + 1);
        *c = match (k + 1).cmp(&i) {
            std::cmp::Ordering::Less => vk.a as i128 * vi.b as i128,
            std::cmp::Ordering::Equal => vi.product(),
            std::cmp::Ordering::Greater => vi.a as i128 * vk.b as i128,
        };
    }
    Ok(Deg2Class::from_ints(&coeffs))
}

/// Cup products of the representatives `z_i`, measured against
/// `[y_{n+1} y_{n+2}]` in the rational quotient.
pub fn oracle_cup_matrix_smooth(pair: &CharacteristicPair) -> Result<RatMatrix> {
    require_smooth_form(pair)?;
    let q = build_deg4_quotient(pair)?;
    let n = pair.n();
    let z = (1..=n).map(|i| representative_z(pair, i)).collect::<Result<Vec<_>>>()?;
    let mut out = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = reduce_to_generator(&q, &multiply(&z[i], &z[j]));
            out.set(i, j, v.clone());
            out.set(j, i, v);
        }
    }
    Ok(out)
}

/// Gram matrix of the pairing on the classes `[y_1] .. [y_n]`, which form a
/// basis of the degree-2 quotient once `y_{n+1}, y_{n+2}` are eliminated.
pub fn gram_matrix_natural(pair: &CharacteristicPair) -> Result<(RatMatrix, String)> {
    let q = build_deg4_quotient(pair)?;
    let (m, n) = (pair.m(), pair.n());
    let mut g = RatMatrix::zeros(n, n);
    for i in 1..=n {
        for j in i..=n {
            let v = reduce_to_generator(&q, &Deg4Class::monomial(m, i, j));
            g.set(i - 1, j - 1, v.clone());
            g.set(j - 1, i - 1, v);
        }
    }
    let desc = format!("basis [y_1]..[y_{n}], degree 4 measured against [y_{}y_{}]", n + 1, n + 2);
    Ok((g, desc))
}

/// Determinant modulo nonzero rational squares, as a squarefree integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareClass {
    Zero,
    Class(BigInt),
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SquareClass::Zero => s.serialize_str("0"),
            SquareClass::Class(c) => s.serialize_str(&c.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceInvariants {
    pub rank: usize,
    pub signature: i64,
    pub det_square_class: SquareClass,
}

fn squarefree_part(x: &BigInt) -> BigInt {
    debug_assert!(x.is_positive());
    let mut r = x.clone();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p * &p <= r {
        let mut e = 0u32;
        while (&r % &p).is_zero() {
            r /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1u32;
    }
    // r now has at most two prime factors, each larger than the cube root
    let s = r.sqrt();
    if &s * &s != r {
        out *= r;
    }
    out
}

fn square_class(r: &Rational) -> SquareClass {
    if r.is_zero() {
        return SquareClass::Zero;
    }
    let mag = (r.numer() * r.denom()).abs();
    let sf = squarefree_part(&mag);
    SquareClass::Class(if r.is_negative() { -sf } else { sf })
}

/// Rank, signature and determinant square class of a symmetric rational
/// matrix, by symmetric elimination (a congruence, so all three are preserved).
#[allow(clippy::needless_range_loop)]
pub fn congruence_invariants(m: &RatMatrix) -> CongruenceInvariants {
    assert!(m.is_symmetric(), "congruence invariants need a symmetric matrix");
    let n = m.rows();
    let mut a = m.to_rows();
    let mut diag: Vec<Rational> = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][i].is_zero()).or_else(|| {
            // all remaining diagonal entries vanish: e_i += e_j makes a_ii = 2 a_ij
            let (i, j) = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())?;
            for c in 0..n {
                let v = a[j][c].clone();
                a[i][c] += v;
            }
            for row in a.iter_mut() {
                let v = row[j].clone();
                row[i] += v;
            }
            Some(i)
        });
        let Some(p) = pivot else { break };
        a.swap(k, p);
        for row in a.iter_mut() {
            row.swap(k, p);
        }
        let d = a[k][k].clone();
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &d;
            for c in k..n {
                let v = &f * &a[k][c];
                a[r][c] -= v;
            }
            for row in a.iter_mut().skip(k) {
                let v = &f * &row[k];
                row[r] -= v;
            }
        }
        diag.push(d);
    }
    let rank = diag.len();
    let signature = diag.iter().map(|d| if d.is_positive() { 1 } else { -1 }).sum();
    let det = if rank == n { diag.iter().fold(Rational::one(), |acc, d| acc * d) } else { Rational::zero() };
    CongruenceInvariants { rank, signature, det_square_class: square_class(&det) }
}
