//! Brute-force enumerator over coordinate boxes, used as the independent
//! cross-check for every solver. Deliberately simple: direct substitution on
//! raw coefficients, no shared solving logic.

use crate::classify::PellEquation;
use crate::conic::GeneralConic;
use crate::exact::{sqrt_exact, Int};
use crate::nform::DiagonalForm;
use num::{Signed, Zero};

/// Largest box half-width for two-variable enumeration.
pub const ORACLE_BIVARIATE_LIMIT: u64 = 1_000_000;
/// Largest box half-width for three or more variables.
pub const ORACLE_MULTIVARIATE_LIMIT: u64 = 1_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("oracle box {bound} exceeds the guard {limit}")]
    BoundExceeded { bound: Int, limit: Int },
    #[error("oracle box must be nonnegative, got {0}")]
    NegativeBound(Int),
}

fn check_bound(bound: &Int, limit: u64) -> Result<(), OracleError> {
    if bound.is_negative() {
        return Err(OracleError::NegativeBound(bound.clone()));
    }
    if bound > &Int::from(limit) {
        return Err(OracleError::BoundExceeded {
            bound: bound.clone(),
            limit: Int::from(limit),
        });
    }
    Ok(())
}

/// All `(x, y)` with `|x|, |y| ≤ bound` and `a·x² − b·y² + c = 0`, sorted.
/// The inner coordinate is recovered by exact square root, then every
/// candidate is re-checked by direct substitution.
pub fn enumerate_pell(eq: &PellEquation, bound: &Int) -> Result<Vec<(Int, Int)>, OracleError> {
    check_bound(bound, ORACLE_BIVARIATE_LIMIT)?;
    let value = |x: &Int, y: &Int| eq.a() * x * x - eq.b() * y * y + eq.c();
    let mut out = Vec::new();
    let mut x = -bound.clone();
    while &x <= bound {
        // b·y² = a·x² + c
        let num = eq.a() * &x * &x + eq.c();
        let (q, r) = (&num / eq.b(), &num % eq.b());
        if r.is_zero() && !q.is_negative() {
            if let Some(y) = sqrt_exact(&q) {
                if &y <= bound {
                    for yy in if y.is_zero() { vec![y.clone()] } else { vec![-&y, y.clone()] } {
                        if value(&x, &yy).is_zero() {
                            out.push((x.clone(), yy));
                        }
                    }
                }
            }
        }
        x += 1;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// All `(x, y)` in the box satisfying the conic, sorted. Solves the equation
/// as a quadratic (or linear, or vacuous) condition in `y` per column `x`.
pub fn enumerate_conic(conic: &GeneralConic, bound: &Int) -> Result<Vec<(Int, Int)>, OracleError> {
    check_bound(bound, ORACLE_BIVARIATE_LIMIT)?;
    let value = |x: &Int, y: &Int| {
        conic.a() * x * x
            + conic.b() * x * y
            + conic.c() * y * y
            + conic.d() * x
            + conic.e() * y
            + conic.f()
    };
    let mut out = Vec::new();
    let mut x = -bound.clone();
    while &x <= bound {
        // c·y² + (b·x + e)·y + (a·x² + d·x + f) = 0
        let lin = conic.b() * &x + conic.e();
        let cst = conic.a() * &x * &x + conic.d() * &x + conic.f();
        let mut candidates: Vec<Int> = Vec::new();
        if conic.c().is_zero() {
            if lin.is_zero() {
                if cst.is_zero() {
                    // the whole column solves the equation
                    let mut y = -bound.clone();
                    while &y <= bound {
                        candidates.push(y.clone());
                        y += 1;
                    }
                }
            } else {
                let (q, exact) = (-&cst).div_exact(&lin);
                if exact {
                    candidates.push(q);
                }
            }
        } else {
            let disc = &lin * &lin - Int::from(4) * conic.c() * &cst;
            if !disc.is_negative() {
                if let Some(s) = sqrt_exact(&disc) {
                    let den = Int::from(2) * conic.c();
                    for num in [-&lin + &s, -&lin - &s] {
                        let (q, exact) = num.div_exact(&den);
                        if exact {
                            candidates.push(q);
                        }
                    }
                }
            }
        }
        for y in candidates {
            if &y.abs() <= bound && value(&x, &y).is_zero() {
                out.push((x.clone(), y));
            }
        }
        x += 1;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

trait DivExact {
    /// `(quotient, true)` when the division is exact, `(_, false)` otherwise.
    fn div_exact(&self, den: &Int) -> (Int, bool);
}

impl DivExact for Int {
    fn div_exact(&self, den: &Int) -> (Int, bool) {
        let q = self / den;
        let exact = (&q * den) == *self;
        (q, exact)
    }
}

/// All solution vectors of `∑ aᵢ·xᵢ² = b` in the box, sorted. The final
/// coordinate is recovered by exact square root and every vector re-checked.
pub fn enumerate_diagonal(
    form: &DiagonalForm,
    bound: &Int,
) -> Result<Vec<Vec<Int>>, OracleError> {
    let limit = if form.n() <= 2 {
        ORACLE_BIVARIATE_LIMIT
    } else {
        ORACLE_MULTIVARIATE_LIMIT
    };
    check_bound(bound, limit)?;
    let coeffs = form.coeffs();
    let value = |xs: &[Int]| {
        let s: Int = coeffs.iter().zip(xs).map(|(a, x)| a * x * x).sum();
        s - form.b()
    };
    fn rec(
        coeffs: &[Int],
        b: &Int,
        bound: &Int,
        partial: &Int,
        current: &mut Vec<Int>,
        out: &mut Vec<Vec<Int>>,
        value: &dyn Fn(&[Int]) -> Int,
    ) {
        let i = current.len();
        if i == coeffs.len() - 1 {
            let residual = b - partial;
            let (q, r) = (&residual / &coeffs[i], &residual % &coeffs[i]);
            if !r.is_zero() || q.is_negative() {
                return;
            }
            if let Some(x) = sqrt_exact(&q) {
                if &x > bound {
                    return;
                }
                for s in if x.is_zero() { vec![x.clone()] } else { vec![-&x, x.clone()] } {
                    current.push(s);
                    if value(current).is_zero() {
                        out.push(current.clone());
                    }
                    current.pop();
                }
            }
            return;
        }
        let mut x = -bound.clone();
        while &x <= bound {
            let next = partial + &coeffs[i] * &x * &x;
            current.push(x.clone());
            rec(coeffs, b, bound, &next, current, out, value);
            current.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    rec(
        coeffs,
        form.b(),
        bound,
        &Int::zero(),
        &mut Vec::new(),
        &mut out,
        &value,
    );
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn pell(a: i64, b: i64, c: i64) -> PellEquation {
        PellEquation::new(int(a), int(b), int(c)).unwrap()
    }

    fn pairs(v: &[(i64, i64)]) -> Vec<(Int, Int)> {
        v.iter().map(|&(x, y)| (int(x), int(y))).collect()
    }

    #[test]
    fn pell_sequence_closed_under_signs() {
        let got = enumerate_pell(&pell(1, 3, -4), &int(60)).unwrap();
        assert_eq!(
            got,
            pairs(&[
                (-52, -30),
                (-52, 30),
                (-14, -8),
                (-14, 8),
                (-4, -2),
                (-4, 2),
                (-2, 0),
                (2, 0),
                (4, -2),
                (4, 2),
                (14, -8),
                (14, 8),
                (52, -30),
                (52, 30),
            ])
        );
    }

    #[test]
    fn pell_congruence_obstructed_is_empty() {
        assert!(enumerate_pell(&pell(1, 12, 9), &int(1000)).unwrap().is_empty());
    }

    #[test]
    fn zero_box_keeps_origin_iff_constant_vanishes() {
        assert!(enumerate_pell(&pell(2, 3, -5), &int(0)).unwrap().is_empty());
        let through_origin =
            GeneralConic::new(int(1), int(0), int(1), int(0), int(0), int(0)).unwrap();
        assert_eq!(
            enumerate_conic(&through_origin, &int(0)).unwrap(),
            pairs(&[(0, 0)])
        );
        let f = DiagonalForm::new(vec![int(1), int(1), int(-1)], int(0)).unwrap();
        assert_eq!(
            enumerate_diagonal(&f, &int(0)).unwrap(),
            vec![vec![int(0), int(0), int(0)]]
        );
    }

    #[test]
    fn conic_circle_lattice_points() {
        let circle = GeneralConic::new(int(1), int(0), int(1), int(0), int(0), int(-25)).unwrap();
        let got = enumerate_conic(&circle, &int(25)).unwrap();
        assert_eq!(got.len(), 12);
        assert!(got.contains(&(int(-4), int(3))));
        assert!(got.contains(&(int(0), int(-5))));
    }

    #[test]
    fn conic_worked_example_solutions() {
        let c = GeneralConic::new(int(9), int(6), int(-13), int(-6), int(-16), int(20)).unwrap();
        let got = enumerate_conic(&c, &int(40)).unwrap();
        assert!(got.contains(&(int(1), int(1))));
        assert!(got.contains(&(int(2), int(-2))));
        assert!(got.contains(&(int(32), int(34))));
        assert!(got.contains(&(int(0), int(-2))));
        assert!(got.contains(&(int(-1), int(1))));
        for (x, y) in &got {
            assert!(c.is_solution(x, y));
        }
    }

    #[test]
    fn conic_degenerate_column_enumerates_whole_line() {
        // x² − x = 0 holds for x ∈ {0, 1} and every y
        let c = GeneralConic::new(int(1), int(0), int(0), int(-1), int(0), int(0)).unwrap();
        let got = enumerate_conic(&c, &int(2)).unwrap();
        assert_eq!(got.len(), 10);
        assert!(got.contains(&(int(0), int(-2))));
        assert!(got.contains(&(int(1), int(2))));
    }

    #[test]
    fn diagonal_small_box() {
        let f = DiagonalForm::new(vec![int(1), int(1), int(-1)], int(-1)).unwrap();
        let got = enumerate_diagonal(&f, &int(3)).unwrap();
        assert_eq!(got.len(), 10);
        assert!(got.contains(&vec![int(0), int(0), int(1)]));
        assert!(got.contains(&vec![int(-2), int(2), int(-3)]));
    }

    #[test]
    fn guards_reject_oversized_boxes() {
        assert!(matches!(
            enumerate_pell(&pell(1, 2, -1), &int(1_000_001)),
            Err(OracleError::BoundExceeded { .. })
        ));
        let f = DiagonalForm::new(vec![int(1), int(1), int(-1)], int(-1)).unwrap();
        assert!(matches!(
            enumerate_diagonal(&f, &int(1001)),
            Err(OracleError::BoundExceeded { .. })
        ));
        assert!(matches!(
            enumerate_pell(&pell(1, 2, -1), &int(-1)),
            Err(OracleError::NegativeBound(_))
        ));
    }
}
