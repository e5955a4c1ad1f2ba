//! Exact rational scalars and tagged coordinate vectors.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Formats as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => s.parse::<i128>().map(int).map_err(|_| bad()),
    }
}

/// Lowest common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> i128 {
    xs.into_iter().fold(1i128, |acc, x| acc.lcm(x.denom()))
}

/// Serde adapter: a single rational as a `"p/q"` string.
pub mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a list of rationals as `"p/q"` strings.
pub mod vec_as_strings {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(format_rational).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// Coordinate system a [`Vector`] is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisTag {
    /// Standard basis ε_1, …, ε_n of a classical Cartan subalgebra dual.
    Epsilon,
    /// Simple roots of the ambient algebra.
    SimpleRoot,
    /// Basis δ_1, …, δ_k of the dual of a toral subalgebra.
    Delta,
    /// Fundamental weights of a subalgebra (Dynkin labels).
    FundamentalWeight,
}

/// Exact vector tagged with its basis. Arithmetic between different tags panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vector {
    #[serde(with = "vec_as_strings")]
    pub coords: Vec<Rational>,
    pub basis: BasisTag,
}

impl Vector {
    pub fn new(coords: Vec<Rational>, basis: BasisTag) -> Self {
        Vector { coords, basis }
    }

    pub fn from_ints<I: IntoIterator<Item = i128>>(coords: I, basis: BasisTag) -> Self {
        Vector::new(coords.into_iter().map(int).collect(), basis)
    }

    pub fn zero(len: usize, basis: BasisTag) -> Self {
        Vector::new(vec![Rational::zero(); len], basis)
    }

    pub fn unit(len: usize, i: usize, basis: BasisTag) -> Self {
        let mut v = Vector::zero(len, basis);
        v.coords[i] = Rational::one();
        v
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, r: Rational) -> Vector {
        Vector::new(self.coords.iter().map(|c| c * r).collect(), self.basis)
    }

    /// Euclidean pairing of coordinates; only meaningful for orthonormal bases.
    pub fn dot(&self, other: &Vector) -> Rational {
        self.check(other);
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    /// Returns `Some(r)` with `self = r * other` when the vectors are proportional and `other ≠ 0`.
    pub fn ratio_to(&self, other: &Vector) -> Option<Rational> {
        self.check(other);
        let pivot = other.coords.iter().position(|c| !c.is_zero())?;
        let r = self.coords[pivot] / other.coords[pivot];
        (other.scale(r) == *self).then_some(r)
    }

    /// Integer coordinates, or `None` if some coordinate is fractional.
    pub fn to_integers(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| c.is_integer().then(|| *c.numer() as i64)).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    fn check(&self, other: &Vector) {
        assert_eq!(self.basis, other.basis, "mixing vectors written in different bases");
        assert_eq!(self.len(), other.len(), "vector length mismatch");
    }
}

impl Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.coords[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        self.check(rhs);
        Vector::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(), self.basis)
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        self.check(rhs);
        Vector::new(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(), self.basis)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector::new(self.coords.iter().map(|c| -c).collect(), self.basis)
    }
}

impl Mul<Rational> for &Vector {
    type Output = Vector;
    fn mul(self, r: Rational) -> Vector {
        self.scale(r)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Dense square matrix over the rationals, just enough for Cartan-matrix inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Rational::one();
        }
        Matrix { rows }
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        Matrix { rows: rows.iter().map(|r| r.iter().map(|&x| int(x as i128)).collect()).collect() }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.size();
        Matrix { rows: (0..n).map(|i| (0..n).map(|j| self.rows[j][i]).collect()).collect() }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.size();
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..n).map(|k| self.rows[i][k] * other.rows[k][j]).sum();
            }
        }
        Matrix { rows }
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.size();
        let mut a = self.rows.clone();
        let mut inv = Matrix::identity(n).rows;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col];
            for j in 0..n {
                a[col][j] /= p;
                inv[col][j] /= p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col];
                    for j in 0..n {
                        let (x, y) = (a[col][j], inv[col][j]);
                        a[r][j] -= f * x;
                        inv[r][j] -= f * y;
                    }
                }
            }
        }
        Some(Matrix { rows: inv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = rat(6, -4);
        assert_eq!(*r.numer(), -3);
        assert_eq!(*r.denom(), 2);
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), r);
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn reciprocal_product_is_one() {
        for (a, b) in [(3, 7), (-5, 11), (123456789, 987654321)] {
            let x = rat(a, b);
            assert_eq!(x * x.recip(), Rational::one());
        }
    }

    #[test]
    fn proportionality() {
        let v = Vector::from_ints([2, -4], BasisTag::Delta);
        let w = Vector::from_ints([-1, 2], BasisTag::Delta);
        assert_eq!(v.ratio_to(&w), Some(int(-2)));
        let u = Vector::from_ints([1, 1], BasisTag::Delta);
        assert_eq!(v.ratio_to(&u), None);
    }

    #[test]
    #[should_panic(expected = "different bases")]
    fn mixing_bases_panics() {
        let v = Vector::from_ints([1], BasisTag::Delta);
        let w = Vector::from_ints([1], BasisTag::Epsilon);
        let _ = &v + &w;
    }

    #[test]
    fn inverse_of_c3_cartan() {
        let c3 = Matrix::from_ints(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]);
        let inv = c3.inverse().unwrap();
        assert_eq!(c3.mul(&inv), Matrix::identity(3));
    }
}
