//! Exact arbitrary-precision arithmetic: integers, reduced rationals,
//! quadratic surds over a fixed radicand, and small rational matrices.
//!
//! Everything in this crate computes over these types; no floating point
//! appears anywhere in inputs, intermediates, or outputs.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

/// Arbitrary-precision signed integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, always stored reduced with positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("mixed radicands: {0} vs {1}")]
    MixedRadicand(Int, Int),
    #[error("zero surd has no inverse")]
    NonInvertibleSurd,
    #[error("singular matrix has no inverse")]
    SingularMatrix,
    #[error("matrix dimensions {0}x{1} and {2}x{3} do not compose")]
    DimMismatch(usize, usize, usize, usize),
    #[error("operation requires a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
}

/// Convenience constructor for small integer constants.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Convenience constructor for small rational constants.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Exact integer square root: `Some(s)` iff `s*s == n` with `s >= 0`.
///
/// Negative input is a contract violation and panics.
pub fn sqrt_exact(n: &Int) -> Option<Int> {
    assert!(!n.is_negative(), "sqrt_exact: negative input {n}");
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// True iff `n` is a perfect square (including 0).
pub fn is_square(n: &Int) -> bool {
    !n.is_negative() && sqrt_exact(n).is_some()
}

/// Splits `d` into `(s, d')` with `d = s^2 * d'` and `d'` square-free up to
/// the trial-division limit. Used only for display.
pub fn extract_square_factor(d: &Int) -> (Int, Int) {
    let mut s = Int::one();
    let mut rem = d.clone();
    let mut p = Int::from(2);
    let limit = Int::from(1_000_000u64);
    while &(&p * &p) <= &rem && p <= limit {
        let p2 = &p * &p;
        while (&rem % &p2).is_zero() {
            rem /= &p2;
            s *= &p;
        }
        p += 1;
    }
    (s, rem)
}

/// Quadratic surd `q0 + q1 * sqrt(d)` with exact rational coefficients.
///
/// The radicand is fixed per value: `d > 0` and not a perfect square, so the
/// representation is unique and arithmetic is closed for matching radicands.
/// Operations on mismatched radicands return `ExactError::MixedRadicand`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    q0: Rat,
    q1: Rat,
    d: Int,
}

impl Surd {
    /// Builds `q0 + q1*sqrt(d)`. Panics if `d <= 0` or `d` is a perfect square.
    pub fn new(q0: Rat, q1: Rat, d: Int) -> Surd {
        assert!(d.is_positive(), "surd radicand must be positive, got {d}");
        assert!(
            sqrt_exact(&d).is_none(),
            "surd radicand must not be a perfect square, got {d}"
        );
        Surd { q0, q1, d }
    }

    pub fn from_int(n: Int, d: Int) -> Surd {
        Surd::new(Rat::from(n), Rat::zero(), d)
    }

    pub fn q0(&self) -> &Rat {
        &self.q0
    }

    pub fn q1(&self) -> &Rat {
        &self.q1
    }

    pub fn radicand(&self) -> &Int {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.q0.is_zero() && self.q1.is_zero()
    }

    /// True iff the irrational part vanishes.
    pub fn is_rational(&self) -> bool {
        self.q1.is_zero()
    }

    /// Galois conjugate `q0 - q1*sqrt(d)`.
    pub fn conjugate(&self) -> Surd {
        Surd {
            q0: self.q0.clone(),
            q1: -self.q1.clone(),
            d: self.d.clone(),
        }
    }

    /// Field norm `q0^2 - d*q1^2`; zero only for the zero surd.
    pub fn norm(&self) -> Rat {
        &self.q0 * &self.q0 - Rat::from(self.d.clone()) * &self.q1 * &self.q1
    }

    fn check_same_radicand(&self, other: &Surd) -> Result<(), ExactError> {
        if self.d != other.d {
            return Err(ExactError::MixedRadicand(self.d.clone(), other.d.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Surd) -> Result<Surd, ExactError> {
        self.check_same_radicand(other)?;
        Ok(Surd {
            q0: &self.q0 + &other.q0,
            q1: &self.q1 + &other.q1,
            d: self.d.clone(),
        })
    }

    pub fn sub(&self, other: &Surd) -> Result<Surd, ExactError> {
        self.check_same_radicand(other)?;
        Ok(Surd {
            q0: &self.q0 - &other.q0,
            q1: &self.q1 - &other.q1,
            d: self.d.clone(),
        })
    }

    pub fn mul(&self, other: &Surd) -> Result<Surd, ExactError> {
        self.check_same_radicand(other)?;
        let d = Rat::from(self.d.clone());
        Ok(Surd {
            q0: &self.q0 * &other.q0 + &d * &self.q1 * &other.q1,
            q1: &self.q0 * &other.q1 + &self.q1 * &other.q0,
            d: self.d.clone(),
        })
    }

    /// Multiplicative inverse `conjugate / norm`.
    pub fn inverse(&self) -> Result<Surd, ExactError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactError::NonInvertibleSurd);
        }
        let c = self.conjugate();
        Ok(Surd {
            q0: c.q0 / &n,
            q1: c.q1 / &n,
            d: self.d.clone(),
        })
    }

    pub fn div(&self, other: &Surd) -> Result<Surd, ExactError> {
        self.mul(&other.inverse().map_err(|e| {
            // keep the radicand check first so mixed radicands report as such
            match self.check_same_radicand(other) {
                Err(m) => m,
                Ok(()) => e,
            }
        })?)
    }

    /// Integer power, negative exponents via the exact inverse.
    pub fn pow(&self, n: i64) -> Result<Surd, ExactError> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Surd {
            q0: Rat::one(),
            q1: Rat::zero(),
            d: self.d.clone(),
        };
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Surd {
    /// Renders with the square part of the radicand factored out, e.g.
    /// `q1 = 1, d = 12` prints as `2√3`, and rational parts over a common
    /// denominator: `(4 + √6)/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q1.is_zero() {
            return write!(f, "{}", self.q0);
        }
        let (s, d_red) = extract_square_factor(&self.d);
        let q1 = &self.q1 * Rat::from(s);
        let den = num::integer::lcm(self.q0.denom().clone(), q1.denom().clone());
        let n0 = self.q0.numer() * (&den / self.q0.denom());
        let n1 = q1.numer() * (&den / q1.denom());
        let root = format!("√{d_red}");
        let one = Int::one();
        let irr = if n1.abs() == one {
            root
        } else {
            format!("{}{}", n1.abs(), root)
        };
        let body = if n0.is_zero() {
            format!("{}{}", if n1.is_negative() { "-" } else { "" }, irr)
        } else {
            format!("{} {} {}", n0, if n1.is_negative() { "-" } else { "+" }, irr)
        };
        if den.is_one() {
            write!(f, "{body}")
        } else if n0.is_zero() {
            write!(f, "{body}/{den}")
        } else {
            write!(f, "({body})/{den}")
        }
    }
}

/// Dense matrix with exact rational entries; dimensions fixed at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatQ {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl MatQ {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> MatQ {
        let r = rows.len();
        assert!(r > 0, "matrix needs at least one row");
        let c = rows[0].len();
        assert!(
            rows.iter().all(|row| row.len() == c),
            "ragged matrix rows"
        );
        MatQ {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[Vec<Int>]) -> MatQ {
        MatQ::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|v| Rat::from(v.clone())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> MatQ {
        let mut m = MatQ {
            rows: n,
            cols: n,
            data: vec![Rat::zero(); n * n],
        };
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn mul(&self, other: &MatQ) -> Result<MatQ, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut data = vec![Rat::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = aik * other.at(k, j);
                    data[i * other.cols + j] += t;
                }
            }
        }
        Ok(MatQ {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Rat]) -> Result<Vec<Rat>, ExactError> {
        if self.cols != v.len() {
            return Err(ExactError::DimMismatch(self.rows, self.cols, v.len(), 1));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect())
    }

    /// Determinant by cofactor expansion; intended for the small matrices
    /// (2x2 and 3x3) this crate works with.
    pub fn det(&self) -> Result<Rat, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare(self.rows, self.cols));
        }
        Ok(det_rec(&self.data, self.rows))
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> MatQ {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in 0..self.rows {
            if r == skip_r {
                continue;
            }
            for c in 0..self.cols {
                if c == skip_c {
                    continue;
                }
                data.push(self.at(r, c).clone());
            }
        }
        MatQ {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// Exact inverse via adjugate over determinant.
    pub fn inverse(&self) -> Result<MatQ, ExactError> {
        let d = self.det()?;
        if d.is_zero() {
            return Err(ExactError::SingularMatrix);
        }
        let n = self.rows;
        if n == 1 {
            return Ok(MatQ::from_rows(vec![vec![Rat::one() / d]]));
        }
        let mut data = vec![Rat::zero(); n * n];
        for r in 0..n {
            for c in 0..n {
                let cof = det_rec(&self.minor(r, c).data, n - 1);
                let sign = if (r + c) % 2 == 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                };
                // adjugate transposes the cofactor matrix
                data[c * n + r] = sign * cof / &d;
            }
        }
        Ok(MatQ {
            rows: n,
            cols: n,
            data,
        })
    }

    /// Integer power by repeated squaring; negative exponents use the exact
    /// inverse and fail on singular matrices.
    pub fn pow(&self, n: i64) -> Result<MatQ, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare(self.rows, self.cols));
        }
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = MatQ::identity(self.rows);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// True iff every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }
}

fn det_rec(data: &[Rat], n: usize) -> Rat {
    match n {
        0 => Rat::one(),
        1 => data[0].clone(),
        2 => &data[0] * &data[3] - &data[1] * &data[2],
        _ => {
            let mut acc = Rat::zero();
            for c in 0..n {
                if data[c].is_zero() {
                    continue;
                }
                let mut sub = Vec::with_capacity((n - 1) * (n - 1));
                for r in 1..n {
                    for cc in 0..n {
                        if cc != c {
                            sub.push(data[r * n + cc].clone());
                        }
                    }
                }
                let term = &data[c] * det_rec(&sub, n - 1);
                if c % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

impl fmt::Display for MatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_exact_small_cases() {
        assert_eq!(sqrt_exact(&int(0)), Some(int(0)));
        assert_eq!(sqrt_exact(&int(24)), None);
        assert_eq!(sqrt_exact(&int(169)), Some(int(13)));
    }

    #[test]
    fn surd_square() {
        // (5 + 2√6)^2 = 49 + 20√6
        let s = Surd::new(rat(5, 1), rat(2, 1), int(6));
        let sq = s.pow(2).unwrap();
        assert_eq!(sq, Surd::new(rat(49, 1), rat(20, 1), int(6)));
    }

    #[test]
    fn surd_conjugate_product_is_norm() {
        // (2 + √3)(2 - √3) = 1
        let s = Surd::new(rat(2, 1), rat(1, 1), int(3));
        let p = s.mul(&s.conjugate()).unwrap();
        assert_eq!(p, Surd::new(rat(1, 1), rat(0, 1), int(3)));
        assert_eq!(s.norm(), rat(1, 1));
    }

    #[test]
    fn surd_mixed_radicand_rejected() {
        let a = Surd::new(rat(1, 1), rat(1, 1), int(2));
        let b = Surd::new(rat(1, 1), rat(1, 1), int(3));
        assert_eq!(a.add(&b), Err(ExactError::MixedRadicand(int(2), int(3))));
    }

    #[test]
    fn surd_negative_power_inverts() {
        let s = Surd::new(rat(5, 1), rat(2, 1), int(6));
        let p = s.pow(-1).unwrap();
        // 5 + 2√6 has norm 1, so the inverse is the conjugate
        assert_eq!(p, s.conjugate());
        assert_eq!(s.pow(3).unwrap().mul(&s.pow(-3).unwrap()).unwrap(),
            Surd::new(rat(1, 1), rat(0, 1), int(6)));
    }

    #[test]
    fn surd_display_extracts_square_part() {
        let s = Surd::new(rat(0, 1), rat(1, 1), int(12));
        assert_eq!(s.to_string(), "2√3");
        let t = Surd::new(rat(1, 1), rat(1, 4), int(6));
        assert_eq!(t.to_string(), "(4 + √6)/4");
    }

    #[test]
    fn mat_apply_pell_step() {
        // [[5,6],[4,5]] * (2,1) = (16,13)
        let m = MatQ::from_int_rows(&[vec![int(5), int(6)], vec![int(4), int(5)]]);
        let v = m.apply(&[rat(2, 1), rat(1, 1)]).unwrap();
        assert_eq!(v, vec![rat(16, 1), rat(13, 1)]);
    }

    #[test]
    fn mat_pow_squared_step() {
        // [[2,3],[1,2]]^2 * (2,0) = (14,8)
        let m = MatQ::from_int_rows(&[vec![int(2), int(3)], vec![int(1), int(2)]]);
        let v = m.pow(2).unwrap().apply(&[rat(2, 1), rat(0, 1)]).unwrap();
        assert_eq!(v, vec![rat(14, 1), rat(8, 1)]);
    }

    #[test]
    fn mat_pow_negative_is_inverse_power() {
        let m = MatQ::from_int_rows(&[vec![int(2), int(3)], vec![int(1), int(2)]]);
        let prod = m.pow(5).unwrap().mul(&m.pow(-5).unwrap()).unwrap();
        assert_eq!(prod, MatQ::identity(2));
    }

    #[test]
    fn mat_inverse_singular_rejected() {
        let m = MatQ::from_int_rows(&[vec![int(1), int(2)], vec![int(2), int(4)]]);
        assert_eq!(m.inverse(), Err(ExactError::SingularMatrix));
        assert_eq!(m.pow(-1), Err(ExactError::SingularMatrix));
    }

    #[test]
    fn mat_det_3x3() {
        let m = MatQ::from_int_rows(&[
            vec![int(2), int(0), int(1)],
            vec![int(1), int(3), int(-1)],
            vec![int(0), int(4), int(1)],
        ]);
        // 2*(3+4) - 0 + 1*(4-0) = 18
        assert_eq!(m.det().unwrap(), rat(18, 1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), MatQ::identity(3));
    }
}
