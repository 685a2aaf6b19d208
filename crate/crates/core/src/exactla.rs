//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`] and [`BigRational`]; there is no
//! floating point anywhere in the crate. Matrices are dense and row-major and
//! are expected to be small (a few hundred rows at most).

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(int(num), int(den))
}

pub fn rat_from_int(v: &Int) -> Rational {
    BigRational::from_integer(v.clone())
}

/// Fractional part in `[0, 1)`; floor is toward negative infinity.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Formats a rational as `a/b`, or `a` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Scalars that know how to appear in JSON documents.
pub trait Scalar: Clone + Num + Signed + Ord + fmt::Display + fmt::Debug {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
    fn to_rational(&self) -> Rational;
}

impl Scalar for BigInt {
    fn to_json(&self) -> Value {
        match self.to_i64() {
            Some(v) => Value::from(v),
            None => Value::String(self.to_string()),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(BigInt::from(i))
                } else if let Some(u) = n.as_u64() {
                    Ok(BigInt::from(u))
                } else {
                    Err(Error::Parse(format!("expected an integer, found {n}")))
                }
            }
            Value::String(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("expected an integer, found {s:?}"))),
            other => Err(Error::Parse(format!("expected an integer, found {other}"))),
        }
    }

    fn to_rational(&self) -> Rational {
        rat_from_int(self)
    }
}

impl Scalar for BigRational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(_) => Ok(rat_from_int(&BigInt::from_json(v)?)),
            other => Err(Error::Parse(format!("expected a rational, found {other}"))),
        }
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

/// Dense vector of exact scalars. Ordering is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<T>(pub Vec<T>);

pub type IntVector = Vector<Int>;
pub type RatVector = Vector<Rational>;

/// Builds an integer vector from machine integers.
pub fn ivec(values: &[i64]) -> IntVector {
    Vector(values.iter().map(|&v| int(v)).collect())
}

/// Builds a rational vector from `(numerator, denominator)` pairs.
pub fn rvec(values: &[(i64, i64)]) -> RatVector {
    Vector(values.iter().map(|&(n, d)| rat(n, d)).collect())
}

impl<T> Deref for Vector<T> {
    type Target = [T];
    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> From<Vec<T>> for Vector<T> {
    fn from(v: Vec<T>) -> Self {
        Vector(v)
    }
}

impl<T: Scalar> Vector<T> {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![T::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = T::one();
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector(
            self.iter()
                .zip(other.iter())
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        Vector(
            self.iter()
                .zip(other.iter())
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        Vector(self.iter().map(|a| a.clone() * k.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Vector(self.iter().map(|a| -a.clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.iter().all(|a| !a.is_negative())
    }

    pub fn to_rational(&self) -> RatVector {
        Vector(self.iter().map(Scalar::to_rational).collect())
    }
}

impl RatVector {
    pub fn is_integral(&self) -> bool {
        self.iter().all(|x| x.is_integer())
    }

    pub fn to_integer(&self) -> Option<IntVector> {
        self.is_integral()
            .then(|| Vector(self.iter().map(|x| x.to_integer()).collect()))
    }

    /// Entrywise fractional part.
    pub fn frac(&self) -> RatVector {
        Vector(self.iter().map(frac).collect())
    }

    pub fn floor(&self) -> IntVector {
        Vector(self.iter().map(|x| x.floor().to_integer()).collect())
    }
}

/// Splits `x` into `(floor(x), {x})` with every fractional entry in `[0, 1)`.
pub fn floor_frac_split(x: &RatVector) -> (IntVector, RatVector) {
    (x.floor(), x.frac())
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl<T: Scalar> Serialize for Vector<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Value::Array(self.iter().map(Scalar::to_json).collect()).serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Vector<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        let items = v
            .as_array()
            .ok_or_else(|| D::Error::custom("expected a JSON array"))?;
        items
            .iter()
            .map(T::from_json)
            .collect::<Result<Vec<_>>>()
            .map(Vector)
            .map_err(D::Error::custom)
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<Int>;
pub type RatMatrix = Matrix<Rational>;

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector<T>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: col.len(),
                });
            }
            for i in 0..r {
                m.set(i, j, col[i].clone());
            }
        }
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in entries.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector<T> {
        Vector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<Vector<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diag(&self) -> Vector<T> {
        Vector(
            (0..self.rows.min(self.cols))
                .map(|i| self.get(i, i).clone())
                .collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Result<Vector<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(Vector(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.iter())
                        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
                })
                .collect(),
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(Scalar::to_rational)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j).clone() + k.clone() * self.get(src, j).clone();
            self.set(dst, j, v);
        }
    }

    /// col[dst] += k * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst).clone() + k.clone() * self.get(i, src).clone();
            self.set(i, dst, v);
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

impl IntMatrix {
    /// Builds an integer matrix from rows of machine integers.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Result<Int> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * &pivot - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = pivot;
        }
        Ok(sign * a.get(n - 1, n - 1).clone())
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        self.to_rational().inverse()
    }

    /// gcd of the absolute values of all entries.
    pub fn gcd_entries(&self) -> Result<Int> {
        let g = self.data.iter().fold(Int::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            Err(Error::AllZero)
        } else {
            Ok(g)
        }
    }
}

impl RatMatrix {
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_integer(&self) -> Option<IntMatrix> {
        self.is_integral().then(|| self.map(|x| x.to_integer()))
    }

    /// Least common multiple of the denominators of all entries.
    pub fn denominator_lcm(&self) -> Int {
        self.data.iter().fold(Int::one(), |l, x| l.lcm(x.denom()))
    }

    /// Determinant by exact Gaussian elimination.
    pub fn det(&self) -> Result<Rational> {
        let n = self.require_square()?;
        let mut a = self.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a.get(k, k).clone();
            det *= &pivot;
            for i in k + 1..n {
                let factor = a.get(i, k) / &pivot;
                if !factor.is_zero() {
                    a.add_row_multiple(i, k, &-factor);
                }
            }
        }
        Ok(det)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<RatMatrix> {
        let n = self.require_square()?;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for k in 0..n {
            let p = (k..n)
                .find(|&i| !a.get(i, k).is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(p, k);
            inv.swap_rows(p, k);
            let pivot = a.get(k, k).recip();
            for j in 0..n {
                let v = a.get(k, j) * &pivot;
                a.set(k, j, v);
                let w = inv.get(k, j) * &pivot;
                inv.set(k, j, w);
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = -a.get(i, k).clone();
                if !factor.is_zero() {
                    a.add_row_multiple(i, k, &factor);
                    inv.add_row_multiple(i, k, &factor);
                }
            }
        }
        debug_assert!(self.mul(&inv).map(|p| p.is_identity()).unwrap_or(false));
        Ok(inv)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: Scalar> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Value> = (0..self.rows)
            .map(|i| Value::Array(self.row(i).iter().map(Scalar::to_json).collect()))
            .collect();
        Value::Array(rows).serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vector<T>> = Vec::deserialize(d)?;
        Matrix::from_rows(rows.into_iter().map(|r| r.0).collect()).map_err(D::Error::custom)
    }
}
