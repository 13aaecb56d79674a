//! Classification of `a·x² − b·y² + c = 0` into solvability regimes, plus
//! congruence-based insolvability certificates.

use crate::exact::{sqrt_exact, Int};
use num::{Integer, One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquationError {
    #[error("coefficient {0} must be a positive integer, got {1}")]
    NonPositiveCoefficient(&'static str, Int),
}

/// The equation `a·x² − b·y² + c = 0` with `a ≥ 1`, `b ≥ 1`, `c` arbitrary.
///
/// Sign normalization (making the x² coefficient positive) happens upstream,
/// in the conic reducer or the parser routing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellEquation {
    a: Int,
    b: Int,
    c: Int,
}

impl PellEquation {
    pub fn new(a: Int, b: Int, c: Int) -> Result<PellEquation, EquationError> {
        if !a.is_positive() {
            return Err(EquationError::NonPositiveCoefficient("a", a));
        }
        if !b.is_positive() {
            return Err(EquationError::NonPositiveCoefficient("b", b));
        }
        Ok(PellEquation { a, b, c })
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

    /// The product `a·b`, the discriminant-like quantity deciding the regime.
    pub fn d(&self) -> Int {
        &self.a * &self.b
    }

    /// Exact value of the left-hand side at `(x, y)`.
    pub fn eval(&self, x: &Int, y: &Int) -> Int {
        &self.a * x * x - &self.b * y * y + &self.c
    }

    pub fn is_solution(&self, x: &Int, y: &Int) -> bool {
        self.eval(x, y).is_zero()
    }
}

impl fmt::Display for PellEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let co = |v: &Int| {
            if v.is_one() {
                String::new()
            } else {
                v.to_string()
            }
        };
        write!(f, "{}x^2 - {}y^2", co(&self.a), co(&self.b))?;
        if self.c.is_positive() {
            write!(f, " + {}", self.c)?;
        } else if self.c.is_negative() {
            write!(f, " - {}", -&self.c)?;
        }
        write!(f, " = 0")
    }
}

/// Solvability regime of a `PellEquation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// `gcd(a, b)` does not divide `c`: no solutions.
    NoSolutionDivisibility { g: Int },
    /// Some modulus admits no residue solutions: no solutions.
    NoSolutionCongruence { modulus: Int },
    /// `a·b = k²`: the form factors, solution set is finite (or degenerate lines).
    FiniteSquareDiscriminant { k: Int },
    /// Both squares enter with the same sign: bounded, finite solution set.
    FiniteSameSign,
    /// `a·b` positive and not a perfect square: infinitely many solutions
    /// whenever any solution exists.
    InfiniteFamilyCandidate { d: Int },
}

impl Classification {
    /// Stable lowercase tag used in text and JSON output.
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::NoSolutionDivisibility { .. } => "no-solution-divisibility",
            Classification::NoSolutionCongruence { .. } => "no-solution-congruence",
            Classification::FiniteSquareDiscriminant { .. } => "finite-square-discriminant",
            Classification::FiniteSameSign => "finite-same-sign",
            Classification::InfiniteFamilyCandidate { .. } => "infinite-family-candidate",
        }
    }
}

/// Decides the regime from the coefficients alone.
///
/// Checks in order: divisibility obstruction, square discriminant, otherwise
/// infinite-family candidate. Congruence obstructions are a separate,
/// explicitly invoked certificate ([`congruence_certificate`]).
pub fn classify(eq: &PellEquation) -> Classification {
    let g = eq.a.gcd(&eq.b);
    if !(&eq.c % &g).is_zero() {
        return Classification::NoSolutionDivisibility { g };
    }
    let d = eq.d();
    if let Some(k) = sqrt_exact(&d) {
        return Classification::FiniteSquareDiscriminant { k };
    }
    Classification::InfiniteFamilyCandidate { d }
}

/// Default certificate moduli: a fixed small set plus `4ab` when it stays
/// within the 10^4 cap, ascending and deduplicated.
pub fn default_moduli(eq: &PellEquation) -> Vec<Int> {
    let mut m: Vec<Int> = [3u32, 4, 5, 7, 8, 9, 11, 13, 16]
        .iter()
        .map(|&v| Int::from(v))
        .collect();
    let four_ab = Int::from(4) * eq.d();
    if four_ab <= Int::from(10_000) {
        m.push(four_ab);
    }
    m.sort();
    m.dedup();
    m
}

/// Returns the first modulus in `moduli` under which
/// `a·x² − b·y² + c ≡ 0` has no residue solutions, or `None` if every
/// modulus admits one. A returned modulus is a sound emptiness proof.
///
/// Moduli must be in `2..=10^7`; anything else is a contract violation.
pub fn congruence_certificate(eq: &PellEquation, moduli: &[Int]) -> Option<Int> {
    moduli
        .iter()
        .find(|m| !has_residue_solution(eq, m))
        .cloned()
}

/// Checks solvability of the equation over (Z/m)².
///
/// Equivalent to scanning all m² residue pairs, but factored through the two
/// residue sets {a·x² mod m} and {b·y² − c mod m} so the cost is O(m).
fn has_residue_solution(eq: &PellEquation, m: &Int) -> bool {
    assert!(
        *m >= Int::from(2) && *m <= Int::from(10_000_000),
        "certificate modulus out of range: {m}"
    );
    let m64 = u64::try_from(m).expect("modulus fits u64");
    let a = reduce_mod(&eq.a, m64);
    let b = reduce_mod(&eq.b, m64);
    let c = reduce_mod(&eq.c, m64);
    let mut lhs = vec![false; m64 as usize];
    for x in 0..m64 {
        lhs[(a * (x * x % m64) % m64) as usize] = true;
    }
    (0..m64).any(|y| {
        let rhs = (b * (y * y % m64) % m64 + m64 - c) % m64;
        lhs[rhs as usize]
    })
}

fn reduce_mod(v: &Int, m: u64) -> u64 {
    let r = v.mod_floor(&Int::from(m));
    u64::try_from(&r).expect("floor residue is nonneg and below modulus")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn eq(a: i64, b: i64, c: i64) -> PellEquation {
        PellEquation::new(int(a), int(b), int(c)).unwrap()
    }

    #[test]
    fn classify_infinite_candidate() {
        assert_eq!(
            classify(&eq(2, 3, -5)),
            Classification::InfiniteFamilyCandidate { d: int(6) }
        );
    }

    #[test]
    fn classify_divisibility_obstruction() {
        // gcd(2,4) = 2 does not divide 3
        assert_eq!(
            classify(&eq(2, 4, 3)),
            Classification::NoSolutionDivisibility { g: int(2) }
        );
    }

    #[test]
    fn classify_square_discriminant() {
        assert_eq!(
            classify(&eq(1, 4, 3)),
            Classification::FiniteSquareDiscriminant { k: int(2) }
        );
    }

    #[test]
    fn classify_admits_zero_constant() {
        assert_eq!(
            classify(&eq(1, 2, 0)),
            Classification::InfiniteFamilyCandidate { d: int(2) }
        );
    }

    #[test]
    fn rejects_nonpositive_coefficients() {
        assert!(PellEquation::new(int(0), int(3), int(1)).is_err());
        assert!(PellEquation::new(int(2), int(-3), int(1)).is_err());
    }

    #[test]
    fn certificate_finds_first_failing_modulus() {
        // x² − 12y² + 9 ≡ x² + 1 (mod 4) and squares mod 4 are {0,1},
        // so 4 certifies; 8 and 12 do too, 9 does not.
        let e = eq(1, 12, 9);
        assert_eq!(congruence_certificate(&e, &[int(9), int(12)]), Some(int(12)));
        assert_eq!(
            congruence_certificate(&e, &[int(4), int(8), int(9), int(12)]),
            Some(int(4))
        );
        assert_eq!(congruence_certificate(&e, &[int(9), int(3)]), None);
    }

    #[test]
    fn certificate_none_when_solvable() {
        // (2, 0) solves x² − 3y² − 4 = 0, so every modulus passes
        let e = eq(1, 3, -4);
        assert_eq!(
            congruence_certificate(&e, &[int(3), int(4), int(5), int(8)]),
            None
        );
    }

    #[test]
    fn certificate_catches_parity() {
        // 2x² − 4y² + 3 ≡ 1 (mod 2)
        let e = eq(2, 4, 3);
        assert_eq!(congruence_certificate(&e, &[int(2)]), Some(int(2)));
    }

    #[test]
    fn default_moduli_include_capped_4ab() {
        let m = default_moduli(&eq(1, 12, 9));
        assert!(m.contains(&int(48)));
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        // 4ab beyond the cap is dropped
        let m2 = default_moduli(&eq(1, 5000, 1));
        assert!(!m2.iter().any(|v| v > &int(16)));
    }

    #[test]
    fn certificate_is_sound_on_fixtures() {
        // whenever a certificate is returned, re-check by brute force that
        // no residue pair solves the congruence
        for (a, b, c) in [(1, 12, 9), (2, 4, 3), (1, 3, -4), (2, 3, -5)] {
            let e = eq(a, b, c);
            if let Some(m) = congruence_certificate(&e, &default_moduli(&e)) {
                let m64 = u64::try_from(&m).unwrap();
                for x in 0..m64 {
                    for y in 0..m64 {
                        let v = e.eval(&int(x as i64), &int(y as i64));
                        assert!(
                            !v.mod_floor(&m).is_zero(),
                            "claimed certificate {m} admits ({x},{y})"
                        );
                    }
                }
            }
        }
    }
}
