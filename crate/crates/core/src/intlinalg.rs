//! Exact integer and rational linear algebra.
//!
//! Edge vectors are stored as `i64`; every product of input entries is formed in
//! `i128` with checked arithmetic, and anything that has to fit back into an
//! `i64` goes through [`narrow`]. Rational work uses arbitrary precision.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i128, den: i128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i128) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Returns the value as an `i128` when it is an integer that fits.
pub fn rational_to_i128(r: &Rational) -> Option<i128> {
    if r.denom().is_one() {
        r.numer().to_i128()
    } else {
        None
    }
}

pub fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

pub fn checked_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub fn checked_sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

pub fn checked_add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

/// Exact division; fails if `divisor` does not divide `numerator`.
pub fn exact_div(numerator: i128, divisor: i128) -> Result<i128> {
    if divisor == 0 || numerator % divisor != 0 {
        return Err(Error::IntegralityViolation { numerator, divisor });
    }
    Ok(numerator / divisor)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec2 {
    pub a: i64,
    pub b: i64,
}

impl IntVec2 {
    pub const fn new(a: i64, b: i64) -> Self {
        IntVec2 { a, b }
    }

    pub fn is_primitive(&self) -> bool {
        gcd(self.a as i128, self.b as i128) == 1
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn neg(&self) -> Result<IntVec2> {
        Ok(IntVec2::new(
            self.a.checked_neg().ok_or(Error::Overflow)?,
            self.b.checked_neg().ok_or(Error::Overflow)?,
        ))
    }

    /// Product `a * b` in `i128`.
    pub fn product(&self) -> i128 {
        self.a as i128 * self.b as i128
    }
}

impl fmt::Display for IntVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl From<(i64, i64)> for IntVec2 {
    fn from((a, b): (i64, i64)) -> Self {
        IntVec2::new(a, b)
    }
}

impl Serialize for IntVec2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntVec2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[i64; 2]>::deserialize(d)?;
        Ok(IntVec2::new(a, b))
    }
}

/// A 2x2 integer matrix with determinant +-1, acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix2 {
    entries: [[i64; 2]; 2],
}

impl UnimodularMatrix2 {
    pub const IDENTITY: UnimodularMatrix2 = UnimodularMatrix2 { entries: [[1, 0], [0, 1]] };

    pub fn new(entries: [[i64; 2]; 2]) -> Result<Self> {
        let det = entries[0][0] as i128 * entries[1][1] as i128
            - entries[0][1] as i128 * entries[1][0] as i128;
        if det.abs() != 1 {
            return Err(Error::InvalidMorphism(format!(
                "matrix {entries:?} has determinant {det}, not +-1"
            )));
        }
        Ok(UnimodularMatrix2 { entries })
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.entries
    }

    pub fn det(&self) -> i64 {
        let [[p, q], [r, s]] = self.entries;
        (p as i128 * s as i128 - q as i128 * r as i128) as i64
    }

    pub fn shear(s: i64) -> Self {
        UnimodularMatrix2 { entries: [[1, s], [0, 1]] }
    }

    pub fn apply(&self, v: IntVec2) -> Result<IntVec2> {
        let [[p, q], [r, s]] = self.entries;
        let a = p as i128 * v.a as i128 + q as i128 * v.b as i128;
        let b = r as i128 * v.a as i128 + s as i128 * v.b as i128;
        Ok(IntVec2::new(narrow(a)?, narrow(b)?))
    }

    /// `self * other`
    pub fn compose(&self, other: &UnimodularMatrix2) -> Result<UnimodularMatrix2> {
        let x = self.entries;
        let y = other.entries;
        let mut out = [[0i64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let v = x[i][0] as i128 * y[0][j] as i128 + x[i][1] as i128 * y[1][j] as i128;
                *cell = narrow(v)?;
            }
        }
        Ok(UnimodularMatrix2 { entries: out })
    }

    pub fn inverse(&self) -> Result<UnimodularMatrix2> {
        let [[p, q], [r, s]] = self.entries;
        let d = self.det();
        let neg = |x: i64| x.checked_neg().ok_or(Error::Overflow);
        // inverse = adj / det, and det = +-1
        let adj = [[s, neg(q)?], [neg(r)?, p]];
        let mut out = adj;
        if d == -1 {
            for row in out.iter_mut() {
                for cell in row.iter_mut() {
                    *cell = neg(*cell)?;
                }
            }
        }
        Ok(UnimodularMatrix2 { entries: out })
    }
}

impl Serialize for UnimodularMatrix2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    /// The 2 x m characteristic matrix whose columns are the edge vectors.
    pub fn characteristic(vectors: &[IntVec2]) -> Self {
        let mut m = IntMatrix::zeros(2, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            m.set(0, j, v.a);
            m.set(1, j, v.b);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Parse(format!(
                "dimension mismatch {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc = checked_add(acc, self.get(i, k) as i128 * other.get(k, j) as i128)?;
                }
                out.set(i, j, narrow(acc)?);
            }
        }
        Ok(out)
    }
}

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        let n = rows.len();
        RatMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[Vec<i128>]) -> Self {
        RatMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn scaled(&self, s: &Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Extended gcd: `(g, x, y)` with `a*x + b*y = g = gcd(|a|, |b|)`.
///
/// Runs the Euclidean recursion on `|a|, |b|` and fixes the signs afterwards,
/// so `(6, 4) -> (2, 1, -1)` and `(2, 3) -> (1, -1, 1)`. `(0, 0) -> (0, 0, 0)`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if a == 0 && b == 0 {
        return (0, 0, 0);
    }
    fn rec(a: i128, b: i128) -> (i128, i128, i128) {
        if b == 0 {
            (a, 1, 0)
        } else {
            let (g, x, y) = rec(b, a % b);
            (g, y, x - (a / b) * y)
        }
    }
    let (g, x, y) = rec(a.abs(), b.abs());
    let sx = if a < 0 { -1 } else { 1 };
    let sy = if b < 0 { -1 } else { 1 };
    (g, x * sx, y * sy)
}

pub fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

/// Gcd of absolute values; 0 for an empty or all-zero list.
pub fn gcd_all(values: &[i128]) -> i128 {
    values.iter().fold(0, |g, &v| g.gcd(&v))
}

/// `v.a * w.b - w.a * v.b`, exact.
pub fn det2(v: IntVec2, w: IntVec2) -> i128 {
    v.a as i128 * w.b as i128 - w.a as i128 * v.b as i128
}

/// A unimodular `U` with `U * v = (1, 0)`.
///
/// With `ext_gcd(a, b) = (1, x, y)` the matrix is `[[x, y], [-b, a]]`.
pub fn complete_to_unimodular(v: IntVec2) -> Result<UnimodularMatrix2> {
    let (g, x, y) = ext_gcd(v.a as i128, v.b as i128);
    if g != 1 {
        return Err(Error::NotPrimitive { a: v.a as i128, b: v.b as i128 });
    }
    let neg_b = (v.b as i128).checked_neg().ok_or(Error::Overflow)?;
    UnimodularMatrix2::new([[narrow(x)?, narrow(y)?], [narrow(neg_b)?, v.a]])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form over the rationals.
///
/// Pivot selection is deterministic: columns left to right, and within a
/// column the first row (from the current pivot row down) with a nonzero entry.
pub fn rref_rational(m: &RatMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..a.cols() {
        if prow == a.rows() {
            break;
        }
        let Some(r) = (prow..a.rows()).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(prow, r);
        let inv = a.get(prow, col).recip();
        for c in col..a.cols() {
            let v = a.get(prow, c) * &inv;
            a.set(prow, c, v);
        }
        for r in 0..a.rows() {
            if r == prow || a.get(r, col).is_zero() {
                continue;
            }
            let f = a.get(r, col).clone();
            for c in col..a.cols() {
                let v = a.get(r, c) - &f * a.get(prow, c);
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        prow += 1;
    }
    Rref { rank: pivots.len(), matrix: a, pivots }
}

/// The unique rational coefficients expressing `target` in `basis` (one or two
/// vectors). `None` when a single basis vector does not span `target`.
pub fn solve_rational_combination(
    target: IntVec2,
    basis: &[IntVec2],
) -> Result<Option<Vec<Rational>>> {
    match basis {
        [w] => {
            if w.is_zero() {
                return Err(Error::DependentBasis);
            }
            if det2(target, *w) != 0 {
                return Ok(None);
            }
            let c = if w.a != 0 { rat(target.a as i128, w.a as i128) } else { rat(target.b as i128, w.b as i128) };
            Ok(Some(vec![c]))
        }
        [w1, w2] => {
            let d = det2(*w1, *w2);
            if d == 0 {
                return Err(Error::DependentBasis);
            }
            Ok(Some(vec![rat(det2(target, *w2), d), rat(det2(*w1, target), d)]))
        }
        _ => Err(Error::DependentBasis),
    }
}

/// The unique integer coefficients expressing `target` in `basis`, or `None`
/// when the rational solution is not integral (or does not exist).
pub fn solve_int_combination(target: IntVec2, basis: &[IntVec2]) -> Result<Option<Vec<i64>>> {
    let Some(coeffs) = solve_rational_combination(target, basis)? else {
        return Ok(None);
    };
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        match rational_to_i128(&c) {
            Some(v) => out.push(narrow(v)?),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Whether a rational is the square of a nonzero rational.
pub fn is_nonzero_rational_square(r: &Rational) -> bool {
    if !r.is_positive() {
        return false;
    }
    let is_sq = |x: &BigInt| {
        let s = x.sqrt();
        &(&s * &s) == x
    };
    is_sq(r.numer()) && is_sq(r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ext_gcd_examples() {
        assert_eq!(ext_gcd(6, 4), (2, 1, -1));
        assert_eq!(ext_gcd(0, 0), (0, 0, 0));
        let (g, x, y) = ext_gcd(-3, 7);
        assert_eq!(g, 1);
        assert_eq!(-3 * x + 7 * y, 1);
        assert_eq!((x, y), (2, 1));
        assert_eq!(ext_gcd(2, 3), (1, -1, 1));
        assert_eq!(ext_gcd(0, 1), (1, 0, 1));
        assert_eq!(ext_gcd(0, -1), (1, 0, -1));
        assert_eq!(ext_gcd(-5, 0), (5, -1, 0));
    }

    #[test]
    fn gcd_all_examples() {
        assert_eq!(gcd_all(&[2, 2, 4]), 2);
        assert_eq!(gcd_all(&[1, 12345]), 1);
        assert_eq!(gcd_all(&[]), 0);
        assert_eq!(gcd_all(&[0, 0]), 0);
        assert_eq!(gcd_all(&[-6, 9]), 3);
    }

    #[test]
    fn det2_examples() {
        assert_eq!(det2(IntVec2::new(1, 0), IntVec2::new(0, 1)), 1);
        assert_eq!(det2(IntVec2::new(1, 2), IntVec2::new(-1, 2)), 4);
        assert_eq!(det2(IntVec2::new(7, -3), IntVec2::new(7, -3)), 0);
    }

    #[test]
    fn complete_to_unimodular_examples() {
        assert_eq!(complete_to_unimodular(IntVec2::new(1, 0)).unwrap(), UnimodularMatrix2::IDENTITY);
        let u = complete_to_unimodular(IntVec2::new(0, 1)).unwrap();
        assert_eq!(u.apply(IntVec2::new(0, 1)).unwrap(), IntVec2::new(1, 0));
        assert_eq!(u.entries(), [[0, 1], [-1, 0]]);
        let u = complete_to_unimodular(IntVec2::new(2, 3)).unwrap();
        assert_eq!(u.entries(), [[-1, 1], [-3, 2]]);
        assert_eq!(u.apply(IntVec2::new(2, 3)).unwrap(), IntVec2::new(1, 0));
        assert_eq!(u.det().abs(), 1);
        assert_eq!(
            complete_to_unimodular(IntVec2::new(2, 4)),
            Err(Error::NotPrimitive { a: 2, b: 4 })
        );
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let u = UnimodularMatrix2::new([[2, 1], [3, 1]]).unwrap();
        let inv = u.inverse().unwrap();
        assert_eq!(u.compose(&inv).unwrap(), UnimodularMatrix2::IDENTITY);
        assert!(UnimodularMatrix2::new([[2, 0], [0, 1]]).is_err());
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = RatMatrix::identity(4);
        let r = rref_rational(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 4);
        assert_eq!(r.pivots, vec![0, 1, 2, 3]);

        let z = RatMatrix::zeros(3, 5);
        let r = rref_rational(&z);
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_small_system() {
        // [[2, 4], [1, 3]] -> identity
        let m = RatMatrix::from_int_rows(&[vec![2, 4], vec![1, 3]]);
        let r = rref_rational(&m);
        assert_eq!(r.matrix, RatMatrix::identity(2));
        // dependent rows
        let m = RatMatrix::from_int_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let r = rref_rational(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn solve_int_combination_examples() {
        // no integral solution: (2,1) = -2/3 (-3,-2) + c (0,1)
        let r = solve_int_combination(
            IntVec2::new(2, 1),
            &[IntVec2::new(-3, -2), IntVec2::new(0, 1)],
        )
        .unwrap();
        assert_eq!(r, None);
        let q = solve_rational_combination(
            IntVec2::new(2, 1),
            &[IntVec2::new(-3, -2), IntVec2::new(0, 1)],
        )
        .unwrap()
        .unwrap();
        assert_eq!(q[0], rat(-2, 3));
        assert_eq!(
            solve_int_combination(IntVec2::new(0, 0), &[IntVec2::new(1, 1), IntVec2::new(1, -1)])
                .unwrap(),
            Some(vec![0, 0])
        );
        assert_eq!(
            solve_int_combination(IntVec2::new(5, 3), &[IntVec2::new(1, 0), IntVec2::new(0, 1)])
                .unwrap(),
            Some(vec![5, 3])
        );
        assert_eq!(
            solve_int_combination(IntVec2::new(4, 6), &[IntVec2::new(2, 3)]).unwrap(),
            Some(vec![2])
        );
        assert_eq!(solve_int_combination(IntVec2::new(4, 5), &[IntVec2::new(2, 3)]).unwrap(), None);
        assert_eq!(
            solve_int_combination(IntVec2::new(1, 1), &[IntVec2::new(1, 2), IntVec2::new(2, 4)]),
            Err(Error::DependentBasis)
        );
    }

    #[test]
    fn rational_squares() {
        assert!(is_nonzero_rational_square(&rat(4, 9)));
        assert!(!is_nonzero_rational_square(&rat(8, 1)));
        assert!(!is_nonzero_rational_square(&rat(-4, 1)));
        assert!(!is_nonzero_rational_square(&rat(0, 1)));
    }

    fn primitive_vec() -> impl Strategy<Value = IntVec2> {
        (-50i64..=50, -50i64..=50)
            .prop_filter("primitive", |&(a, b)| gcd(a as i128, b as i128) == 1)
            .prop_map(|(a, b)| IntVec2::new(a, b))
    }

    fn small_mat() -> impl Strategy<Value = RatMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-4i128..=4, c), r)
                .prop_map(|rows| RatMatrix::from_int_rows(&rows))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ext_gcd_bezout(a in -10_000i128..10_000, b in -10_000i128..10_000) {
            let (g, x, y) = ext_gcd(a, b);
            prop_assert_eq!(a * x + b * y, g);
            prop_assert_eq!(g, num_integer::Integer::gcd(&a, &b));
            prop_assert!(g >= 0);
        }

        #[test]
        fn unimodular_completion(v in primitive_vec()) {
            let u = complete_to_unimodular(v).unwrap();
            prop_assert_eq!(u.apply(v).unwrap(), IntVec2::new(1, 0));
            prop_assert_eq!(u.det().abs(), 1);
        }

        #[test]
        fn solve_roundtrip(t in (-20i64..20, -20i64..20), w1 in primitive_vec(), w2 in primitive_vec()) {
            let target = IntVec2::new(t.0, t.1);
            prop_assume!(det2(w1, w2) != 0);
            let q = solve_rational_combination(target, &[w1, w2]).unwrap().unwrap();
            let integral = q.iter().all(|c| c.is_integer());
            let ints = solve_int_combination(target, &[w1, w2]).unwrap();
            prop_assert_eq!(ints.is_some(), integral);
            if let Some(c) = ints {
                prop_assert_eq!(c[0] * w1.a + c[1] * w2.a, target.a);
                prop_assert_eq!(c[0] * w1.b + c[1] * w2.b, target.b);
            }
        }
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_row_order_invariant(m in small_mat(), seed in 0u64..1000) {
            let r = rref_rational(&m);
            let again = rref_rational(&r.matrix);
            prop_assert_eq!(&again.matrix, &r.matrix);
            let mut rows = m.to_rows();
            let k = rows.len();
            rows.rotate_left((seed as usize) % k);
            let permuted = rref_rational(&RatMatrix::from_rows(rows));
            prop_assert_eq!(permuted.rank, r.rank);
            prop_assert_eq!(permuted.matrix, r.matrix);
        }
    }
}
