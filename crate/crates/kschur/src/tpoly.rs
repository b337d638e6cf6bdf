//! Exact univariate polynomials in t with arbitrary-precision integer
//! coefficients, and unitriangular matrix inversion over them.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Polynomial in t, canonical form: coefficient i is the coefficient of t^i,
/// no trailing zeros, the zero polynomial is the empty list.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TPoly {
    coeffs: Vec<BigInt>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        TPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        TPoly::from_coeffs(vec![BigInt::from(c)])
    }

    /// The monomial t^exp.
    pub fn monomial(exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = BigInt::one();
        TPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut poly = TPoly { coeffs };
        poly.normalize();
        poly
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        TPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of t^i.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// True when every coefficient is non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Exact evaluation at an integer.
    pub fn eval(&self, t0: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t0 + c;
        }
        acc
    }

    pub fn eval_i64(&self, t0: i64) -> BigInt {
        self.eval(&BigInt::from(t0))
    }

    pub fn scale(&self, c: &BigInt) -> TPoly {
        TPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Renders the polynomial with `var` as the variable name.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let term = if i == 0 {
                mag.to_string()
            } else {
                let var_pow = if i == 1 {
                    var.to_string()
                } else {
                    format!("{var}^{i}")
                };
                if mag.is_one() {
                    var_pow
                } else {
                    format!("{mag}*{var_pow}")
                }
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        TPoly::from_coeffs(coeffs)
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        TPoly::from_coeffs(coeffs)
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TPoly::from_coeffs(coeffs)
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl AddAssign<&TPoly> for TPoly {
    fn add_assign(&mut self, rhs: &TPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&TPoly> for TPoly {
    fn sub_assign(&mut self, rhs: &TPoly) {
        *self = &*self - rhs;
    }
}

impl Serialize for TPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        // ascending coefficient list; numbers when they fit, strings beyond;
        // the zero polynomial prints as [0]
        use serde::ser::SerializeSeq;
        if self.coeffs.is_empty() {
            let mut seq = serializer.serialize_seq(Some(1))?;
            seq.serialize_element(&0i64)?;
            return seq.end();
        }
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(small) => seq.serialize_element(&small)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Small(i64),
    Big(String),
}

impl<'de> Deserialize<'de> for TPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<CoeffRepr>::deserialize(deserializer)?;
        let mut coeffs = Vec::with_capacity(raw.len());
        for c in raw {
            match c {
                CoeffRepr::Small(v) => coeffs.push(BigInt::from(v)),
                CoeffRepr::Big(s) => coeffs.push(
                    s.parse::<BigInt>()
                        .map_err(|e| D::Error::custom(format!("bad coefficient {s}: {e}")))?,
                ),
            }
        }
        Ok(TPoly::from_coeffs(coeffs))
    }
}

/// A square matrix of polynomials indexed by a strictly descending list of
/// partitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TPolyMatrix {
    index: Vec<Partition>,
    entries: Vec<Vec<TPoly>>,
}

impl TPolyMatrix {
    pub fn new(index: Vec<Partition>, entries: Vec<Vec<TPoly>>) -> Result<Self> {
        if index.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::StructureError(
                "matrix index is not strictly descending".into(),
            ));
        }
        if entries.len() != index.len() || entries.iter().any(|row| row.len() != index.len()) {
            return Err(Error::StructureError("matrix is not square".into()));
        }
        Ok(TPolyMatrix { index, entries })
    }

    pub fn index(&self) -> &[Partition] {
        &self.index
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &TPoly {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<TPoly>] {
        &self.entries
    }

    pub fn position(&self, q: &Partition) -> Option<usize> {
        self.index.iter().position(|x| x == q)
    }

    pub fn identity(index: Vec<Partition>) -> Result<Self> {
        let n = index.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { TPoly::one() } else { TPoly::zero() })
                    .collect()
            })
            .collect();
        TPolyMatrix::new(index, entries)
    }

    fn is_upper_unitriangular(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| self.entries[i][i].is_one() && (0..i).all(|j| self.entries[i][j].is_zero()))
    }

    fn is_lower_unitriangular(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            self.entries[i][i].is_one() && (i + 1..n).all(|j| self.entries[i][j].is_zero())
        })
    }

    #[allow(clippy::needless_range_loop)]
    pub fn matmul(&self, rhs: &TPolyMatrix) -> Result<TPolyMatrix> {
        if self.index != rhs.index {
            return Err(Error::StructureError("matrix index mismatch".into()));
        }
        let n = self.dim();
        let mut entries = vec![vec![TPoly::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if self.entries[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if rhs.entries[l][j].is_zero() {
                        continue;
                    }
                    let prod = &self.entries[i][l] * &rhs.entries[l][j];
                    entries[i][j] += &prod;
                }
            }
        }
        TPolyMatrix::new(self.index.clone(), entries)
    }
}

/// Exact inverse of a unitriangular polynomial matrix by back-substitution.
/// The product with the input is checked against the identity before the
/// result is returned.
#[allow(clippy::needless_range_loop)]
pub fn unitriangular_inverse(m: &TPolyMatrix) -> Result<TPolyMatrix> {
    let n = m.dim();
    let upper = m.is_upper_unitriangular();
    if !upper && !m.is_lower_unitriangular() {
        return Err(Error::StructureError(
            "matrix is not unitriangular with respect to its index order".into(),
        ));
    }
    let mut inv = vec![vec![TPoly::zero(); n]; n];
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        inv[i][i] = TPoly::one();
    }
    if upper {
        // inv[i][j] = -(sum_{i < l <= j} m[i][l] * inv[l][j])
        for j in 0..n {
            for i in (0..j).rev() {
                let mut acc = TPoly::zero();
                for l in i + 1..=j {
                    if !m.entries[i][l].is_zero() && !inv[l][j].is_zero() {
                        let prod = &m.entries[i][l] * &inv[l][j];
                        acc += &prod;
                    }
                }
                inv[i][j] = -&acc;
            }
        }
    } else {
        for j in 0..n {
            for i in j + 1..n {
                let mut acc = TPoly::zero();
                for l in j..i {
                    if !m.entries[i][l].is_zero() && !inv[l][j].is_zero() {
                        let prod = &m.entries[i][l] * &inv[l][j];
                        acc += &prod;
                    }
                }
                inv[i][j] = -&acc;
            }
        }
    }
    let inverse = TPolyMatrix::new(m.index.clone(), inv)?;
    let product = m.matmul(&inverse)?;
    let identity = TPolyMatrix::identity(m.index.clone())?;
    if product != identity {
        return Err(Error::StructureError(
            "inverse verification failed: M * inv(M) != I".into(),
        ));
    }
    Ok(inverse)
}
