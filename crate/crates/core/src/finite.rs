//! Finite solution regimes: square discriminant (the form factors into two
//! linear parts) and same-sign forms (bounded enumeration).

use crate::classify::{EquationError, PellEquation};
use crate::exact::{sqrt_exact, Int};
use num::{Integer, One, Signed, Zero};
use std::fmt;

/// Default ceiling on |a·c| for divisor enumeration by trial division.
pub const DIVISOR_CEILING_DEFAULT: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiniteError {
    #[error("factorization bound exceeded: |{0}| > {1}")]
    FactorizationBoundExceeded(Int, Int),
    #[error("degenerate form with a zero square coefficient has an unbounded solution set")]
    UnboundedDegenerate,
}

/// The equation `a·x² + b·y² + c = 0` with `a·b ≥ 0` and not both zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SameSignEquation {
    a: Int,
    b: Int,
    c: Int,
}

impl SameSignEquation {
    pub fn new(a: Int, b: Int, c: Int) -> Result<SameSignEquation, EquationError> {
        if (&a * &b).is_negative() {
            return Err(EquationError::NonPositiveCoefficient("a*b", &a * &b));
        }
        if a.is_zero() && b.is_zero() {
            return Err(EquationError::NonPositiveCoefficient("a,b", Int::zero()));
        }
        Ok(SameSignEquation { a, b, c })
    }

    pub fn a(&self) -> &Int {
        &self.a
    }

    pub fn b(&self) -> &Int {
        &self.b
    }

    pub fn c(&self) -> &Int {
        &self.c
    }

    pub fn is_solution(&self, x: &Int, y: &Int) -> bool {
        (&self.a * x * x + &self.b * y * y + &self.c).is_zero()
    }
}

impl fmt::Display for SameSignEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let co = |v: &Int| {
            if v.is_one() {
                String::new()
            } else {
                v.to_string()
            }
        };
        write!(f, "{}x^2", co(&self.a))?;
        if self.b.is_negative() {
            write!(f, " - {}y^2", co(&-&self.b))?;
        } else {
            write!(f, " + {}y^2", co(&self.b))?;
        }
        if self.c.is_positive() {
            write!(f, " + {}", self.c)?;
        } else if self.c.is_negative() {
            write!(f, " - {}", -&self.c)?;
        }
        write!(f, " = 0")
    }
}

/// Integer points `base + t·step` for all `t ∈ ℤ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub base: (Int, Int),
    pub step: (Int, Int),
}

impl Line {
    pub fn at(&self, t: &Int) -> (Int, Int) {
        (&self.base.0 + t * &self.step.0, &self.base.1 + t * &self.step.1)
    }
}

/// All positive divisors of |m|, ascending. `m` must be nonzero and within
/// the trial-division ceiling.
fn positive_divisors(m: &Int, ceiling: &Int) -> Result<Vec<Int>, FiniteError> {
    assert!(!m.is_zero(), "divisor enumeration needs a nonzero target");
    let abs = m.abs();
    if &abs > ceiling {
        return Err(FiniteError::FactorizationBoundExceeded(
            m.clone(),
            ceiling.clone(),
        ));
    }
    let n = u128::try_from(&abs).expect("within ceiling, fits u128");
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut i: u128 = 1;
    while i * i <= n {
        if n % i == 0 {
            low.push(Int::from(i));
            if i * i != n {
                high.push(Int::from(n / i));
            }
        }
        i += 1;
    }
    high.reverse();
    low.extend(high);
    Ok(low)
}

/// Solves `a·x² − b·y² + c = 0` when `a·b = k²` and `c ≠ 0`.
///
/// The form factors as `(a·x − k·y)(a·x + k·y) = −a·c`; every signed ordered
/// divisor pair `(d, e)` with `d·e = −a·c` yields the candidate
/// `x = (d + e)/(2a)`, `y = (e − d)/(2k)`, kept when both divisions are
/// exact. Results are sorted lexicographically.
pub fn solve_square_discriminant(
    eq: &PellEquation,
    k: &Int,
    ceiling: Option<&Int>,
) -> Result<Vec<(Int, Int)>, FiniteError> {
    assert!(!eq.c().is_zero(), "zero constant is the degenerate line case");
    assert_eq!(&eq.d(), &(k * k), "k must satisfy k^2 = a*b");
    let default = Int::from(DIVISOR_CEILING_DEFAULT);
    let ceiling = ceiling.unwrap_or(&default);
    let m = -(eq.a() * eq.c());
    let two_a = Int::from(2) * eq.a();
    let two_k = Int::from(2) * k;
    let mut out = Vec::new();
    for d_abs in positive_divisors(&m, ceiling)? {
        let e_abs = (&m / &d_abs).abs();
        for (d, e) in [
            (d_abs.clone(), if m.is_negative() { -&e_abs } else { e_abs.clone() }),
            (-&d_abs, if m.is_negative() { e_abs.clone() } else { -&e_abs }),
        ] {
            let (sx, rx) = (&d + &e).div_rem(&two_a);
            let (sy, ry) = (&e - &d).div_rem(&two_k);
            if rx.is_zero() && ry.is_zero() {
                debug_assert!(eq.is_solution(&sx, &sy));
                out.push((sx, sy));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Degenerate case `a·x² − b·y² = 0` with `a·b = k²`: two rational lines
/// `a·x = ±k·y`, returned as primitive integer directions through the origin.
pub fn parametric_lines(eq: &PellEquation, k: &Int) -> [Line; 2] {
    assert!(eq.c().is_zero(), "parametric lines require zero constant");
    assert_eq!(&eq.d(), &(k * k), "k must satisfy k^2 = a*b");
    let g = eq.a().gcd(k);
    let dx = k / &g;
    let dy = eq.a() / &g;
    let origin = (Int::zero(), Int::zero());
    [
        Line {
            base: origin.clone(),
            step: (dx.clone(), dy.clone()),
        },
        Line {
            base: origin,
            step: (dx, -dy),
        },
    ]
}

/// Solves `a·x² + b·y² + c = 0` with `a·b ≥ 0` by bounded enumeration.
///
/// After normalizing signs so `a, b ≥ 0`: positive `c` is impossible, zero
/// `c` admits only the origin, negative `c` bounds `|x| ≤ √(−c/a)`. A zero
/// square coefficient with a nonempty solution set is unbounded
/// (`FiniteError::UnboundedDegenerate`); those forms never reach this solver
/// from the conic reducer.
pub fn solve_same_sign(eq: &SameSignEquation) -> Result<Vec<(Int, Int)>, FiniteError> {
    let flip = eq.a.is_negative() || (eq.a.is_zero() && eq.b.is_negative());
    let (a, b, c) = if flip {
        (-&eq.a, -&eq.b, -&eq.c)
    } else {
        (eq.a.clone(), eq.b.clone(), eq.c.clone())
    };
    if c.is_positive() {
        return Ok(Vec::new());
    }
    if c.is_zero() {
        if a.is_zero() || b.is_zero() {
            // a·x² = 0 (or b·y² = 0) leaves the other coordinate free
            return Err(FiniteError::UnboundedDegenerate);
        }
        return Ok(vec![(Int::zero(), Int::zero())]);
    }
    let target = -&c;
    if a.is_zero() {
        let (q, r) = target.div_rem(&b);
        return if r.is_zero() && sqrt_exact(&q).is_some() {
            Err(FiniteError::UnboundedDegenerate)
        } else {
            Ok(Vec::new())
        };
    }
    if b.is_zero() {
        let (q, r) = target.div_rem(&a);
        return if r.is_zero() && sqrt_exact(&q).is_some() {
            Err(FiniteError::UnboundedDegenerate)
        } else {
            Ok(Vec::new())
        };
    }
    let xmax = (&target / &a).sqrt();
    let mut out = Vec::new();
    let mut x = Int::zero();
    while x <= xmax {
        let rest = &target - &a * &x * &x;
        let (q, r) = rest.div_rem(&b);
        if r.is_zero() {
            if let Some(y) = sqrt_exact(&q) {
                let xs = if x.is_zero() { vec![x.clone()] } else { vec![-&x, x.clone()] };
                let ys = if y.is_zero() { vec![y.clone()] } else { vec![-&y, y.clone()] };
                for xv in &xs {
                    for yv in &ys {
                        out.push((xv.clone(), yv.clone()));
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
