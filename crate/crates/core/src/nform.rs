//! Diagonal forms in n variables: automorph search by coefficient
//! identification, descent-minimal fundamental solutions, and family
//! generation for `∑ aᵢ·xᵢ² = b`.

use crate::exact::{sqrt_exact, Int, MatQ, Rat};
use crate::pell::EmptyCertificate;
use num::{Integer, One, Signed, Zero};
use std::fmt;

/// Default entry bound for the automorph search.
pub const AUTOMORPH_BOUND_DEFAULT: u64 = 5;
/// Default half-width of the fundamental-solution box.
pub const NFORM_BOX_DEFAULT: u64 = 50;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NFormError {
    #[error("diagonal form needs at least two variables, got {0}")]
    TooFewVariables(usize),
    #[error("zero coefficient at position {0}")]
    ZeroCoefficient(usize),
}

/// `a₁·x₁² + … + aₙ·xₙ² = b` with every `aᵢ` nonzero and `n ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    coeffs: Vec<Int>,
    b: Int,
}

impl DiagonalForm {
    pub fn new(coeffs: Vec<Int>, b: Int) -> Result<DiagonalForm, NFormError> {
        if coeffs.len() < 2 {
            return Err(NFormError::TooFewVariables(coeffs.len()));
        }
        if let Some(i) = coeffs.iter().position(|a| a.is_zero()) {
            return Err(NFormError::ZeroCoefficient(i));
        }
        Ok(DiagonalForm { coeffs, b })
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn b(&self) -> &Int {
        &self.b
    }

    /// True when the coefficients carry both signs, the condition for the
    /// infinite-family route.
    pub fn mixed_signs(&self) -> bool {
        self.coeffs.iter().any(|a| a.is_positive()) && self.coeffs.iter().any(|a| a.is_negative())
    }

    /// `∑ aᵢ·xᵢ² − b`.
    pub fn eval(&self, x: &[Int]) -> Int {
        assert_eq!(x.len(), self.n(), "dimension mismatch");
        let sum: Int = self
            .coeffs
            .iter()
            .zip(x)
            .map(|(a, xi)| a * xi * xi)
            .sum();
        sum - &self.b
    }

    pub fn is_solution(&self, x: &[Int]) -> bool {
        self.eval(x).is_zero()
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.coeffs.iter().enumerate() {
            if i == 0 {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else if a.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = a.abs();
            if mag.is_one() {
                write!(f, "x{}^2", i + 1)?;
            } else {
                write!(f, "{}x{}^2", mag, i + 1)?;
            }
        }
        write!(f, " = {}", self.b)
    }
}

/// An integer matrix `M` with `Mᵀ·D·M = D` for `D = diag(coeffs)`; applying
/// it maps solutions of the form equation to solutions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Automorph {
    rows: Vec<Vec<Int>>,
}

impl Automorph {
    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.n(), "dimension mismatch");
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
            .collect()
    }

    pub fn matrix(&self) -> MatQ {
        MatQ::from_int_rows(&self.rows)
    }

    /// Integer inverse; exists because the form relation forces `det = ±1`.
    pub fn inverse(&self) -> Automorph {
        let inv = self.matrix().inverse().expect("det ±1");
        let rows = (0..self.n())
            .map(|i| {
                (0..self.n())
                    .map(|j| {
                        let e = inv.at(i, j);
                        assert!(e.is_integer(), "automorph inverse must be integral");
                        e.to_integer()
                    })
                    .collect()
            })
            .collect();
        Automorph { rows }
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() })
        })
    }

    /// One `±1` per row and per column, zeros elsewhere: a sign/coordinate
    /// shuffle that only permutes known solutions.
    pub fn is_signed_permutation(&self) -> bool {
        let n = self.n();
        let mut col_used = vec![false; n];
        for row in &self.rows {
            let mut hit = None;
            for (j, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if !e.abs().is_one() || hit.is_some() {
                    return false;
                }
                hit = Some(j);
            }
            match hit {
                Some(j) if !col_used[j] => col_used[j] = true,
                _ => return false,
            }
        }
        true
    }

    pub fn max_abs_entry(&self) -> Int {
        self.rows
            .iter()
            .flatten()
            .map(|e| e.abs())
            .max()
            .expect("nonempty matrix")
    }

    /// Exact check of the defining relation against `coeffs`.
    pub fn preserves(&self, coeffs: &[Int]) -> bool {
        let n = self.n();
        if coeffs.len() != n {
            return false;
        }
        for h in 0..n {
            for k in h..n {
                let s: Int = (0..n)
                    .map(|i| &coeffs[i] * &self.rows[i][h] * &self.rows[i][k])
                    .sum();
                let want = if h == k { coeffs[h].clone() } else { Int::zero() };
                if s != want {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for Automorph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// All column vectors `m` with entries in `[−K, K]` and `∑ aᵢ·mᵢ² = target`,
/// by depth-first search pruned with the achievable range of the remaining
/// (possibly indefinite) suffix.
fn column_candidates(coeffs: &[Int], target: &Int, k: &Int) -> Vec<Vec<Int>> {
    let n = coeffs.len();
    let k2 = k * k;
    let mut lo = vec![Int::zero(); n + 1];
    let mut hi = vec![Int::zero(); n + 1];
    for i in (0..n).rev() {
        if coeffs[i].is_positive() {
            lo[i] = lo[i + 1].clone();
            hi[i] = &hi[i + 1] + &coeffs[i] * &k2;
        } else {
            lo[i] = &lo[i + 1] + &coeffs[i] * &k2;
            hi[i] = hi[i + 1].clone();
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<Int> = Vec::with_capacity(n);
    fn rec(
        coeffs: &[Int],
        k: &Int,
        lo: &[Int],
        hi: &[Int],
        need: &Int,
        current: &mut Vec<Int>,
        out: &mut Vec<Vec<Int>>,
    ) {
        let i = current.len();
        if need < &lo[i] || need > &hi[i] {
            return;
        }
        if i == coeffs.len() {
            debug_assert!(need.is_zero());
            out.push(current.clone());
            return;
        }
        let mut m = -k.clone();
        while &m <= k {
            let next = need - &coeffs[i] * &m * &m;
            current.push(m.clone());
            rec(coeffs, k, lo, hi, &next, current, out);
            current.pop();
            m += 1;
        }
    }
    rec(coeffs, k, &lo, &hi, target, &mut current, &mut out);
    out
}

fn cross_term(coeffs: &[Int], c: &[Int], d: &[Int]) -> Int {
    coeffs
        .iter()
        .zip(c.iter().zip(d))
        .map(|(a, (ci, di))| a * ci * di)
        .sum()
}

/// All automorphs of the form with entries in `[−K, K]`: column `h` must have
/// `D`-norm `a_h` and distinct columns must be `D`-orthogonal. Column-by-column
/// backtracking over precomputed per-norm candidate lists; the result is
/// sorted row-major and re-verified against the defining relation.
/// `filter_trivial` drops signed permutation matrices (the identity included).
pub fn automorph_search(form: &DiagonalForm, k: &Int, filter_trivial: bool) -> Vec<Automorph> {
    assert!(k.is_positive(), "entry bound must be at least 1");
    let coeffs = form.coeffs();
    let n = form.n();
    let mut cands: Vec<Vec<Vec<Int>>> = Vec::with_capacity(n);
    for h in 0..n {
        match (0..h).find(|&j| coeffs[j] == coeffs[h]) {
            Some(j) => cands.push(cands[j].clone()),
            None => cands.push(column_candidates(coeffs, &coeffs[h], k)),
        }
    }
    fn assemble(
        coeffs: &[Int],
        cands: &[Vec<Vec<Int>>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let h = chosen.len();
        if h == cands.len() {
            out.push(chosen.clone());
            return;
        }
        'next: for (i, c) in cands[h].iter().enumerate() {
            for (j, &prev) in chosen.iter().enumerate() {
                if !cross_term(coeffs, c, &cands[j][prev]).is_zero() {
                    continue 'next;
                }
            }
            chosen.push(i);
            assemble(coeffs, cands, chosen, out);
            chosen.pop();
        }
    }
    let mut picks = Vec::new();
    assemble(coeffs, &cands, &mut Vec::new(), &mut picks);
    let mut found: Vec<Automorph> = picks
        .into_iter()
        .map(|pick| {
            let rows = (0..n)
                .map(|i| (0..n).map(|h| cands[h][pick[h]][i].clone()).collect())
                .collect();
            Automorph { rows }
        })
        .collect();
    for m in &found {
        assert!(m.preserves(coeffs), "search produced a non-automorph {m}");
    }
    if filter_trivial {
        found.retain(|m| !m.is_signed_permutation());
    }
    found.sort();
    found
}

/// `Mⁿ·seed`, exactly; `n` may be negative.
pub fn nform_generate(seed: &[Int], m: &Automorph, n: i64) -> Vec<Int> {
    let p = m.matrix().pow(n).expect("det ±1, always invertible");
    let v: Vec<Rat> = seed.iter().map(|x| Rat::from(x.clone())).collect();
    p.apply(&v)
        .expect("dimension checked")
        .into_iter()
        .map(|r| {
            assert!(r.is_integer(), "automorph power stays integral");
            r.to_integer()
        })
        .collect()
}

fn inf_norm(v: &[Int]) -> Int {
    v.iter().map(|x| x.abs()).max().expect("nonempty vector")
}

/// Sign-class representative: first nonzero coordinate made positive.
fn normalize_sign(v: &[Int]) -> Vec<Int> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => v.iter().map(|x| -x).collect(),
        _ => v.to_vec(),
    }
}

/// All solutions with `|xᵢ| ≤ boundsᵢ`, the last coordinate solved exactly.
fn enumerate_solutions(coeffs: &[Int], b: &Int, bounds: &[Int]) -> Vec<Vec<Int>> {
    fn rec(
        coeffs: &[Int],
        b: &Int,
        bounds: &[Int],
        partial: &Int,
        current: &mut Vec<Int>,
        out: &mut Vec<Vec<Int>>,
    ) {
        let i = current.len();
        if i == coeffs.len() - 1 {
            let residual = b - partial;
            let (q, r) = residual.div_rem(&coeffs[i]);
            if !r.is_zero() || q.is_negative() {
                return;
            }
            if let Some(x) = sqrt_exact(&q) {
                if x > bounds[i] {
                    return;
                }
                if x.is_zero() {
                    current.push(x);
                    out.push(current.clone());
                    current.pop();
                } else {
                    for s in [-&x, x.clone()] {
                        current.push(s);
                        out.push(current.clone());
                        current.pop();
                    }
                }
            }
            return;
        }
        let mut x = -bounds[i].clone();
        while x <= bounds[i] {
            let next = partial + &coeffs[i] * &x * &x;
            current.push(x.clone());
            rec(coeffs, b, bounds, &next, current, out);
            current.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    rec(coeffs, b, bounds, &Int::zero(), &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// Solutions in the box `max |xᵢ| ≤ bound` that no inverse of a supplied
/// automorph moves strictly closer to the origin (in max-norm), one
/// representative per `±` class, sorted.
pub fn nform_fundamentals(
    form: &DiagonalForm,
    bound: &Int,
    automorphs: &[Automorph],
) -> Vec<Vec<Int>> {
    assert!(!bound.is_negative(), "box bound must be nonnegative");
    let bounds = vec![bound.clone(); form.n()];
    let solutions = enumerate_solutions(form.coeffs(), form.b(), &bounds);
    let inverses: Vec<Automorph> = automorphs.iter().map(|m| m.inverse()).collect();
    let mut reps: Vec<Vec<Int>> = solutions
        .iter()
        .filter(|v| {
            let norm = inf_norm(v);
            inverses.iter().all(|m| inf_norm(&m.apply(v)) >= norm)
        })
        .map(|v| normalize_sign(v))
        .collect();
    reps.sort();
    reps.dedup();
    for v in &reps {
        debug_assert!(form.is_solution(v));
    }
    reps
}

/// Solution set of a diagonal form equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NFormSolutions {
    Empty {
        certificate: EmptyCertificate,
    },
    /// Complete list (same-sign coefficients bound the solutions).
    Finite {
        points: Vec<Vec<Int>>,
    },
    /// Mixed signs: seeds and the automorphs that generate orbits from them.
    /// Coverage of all solutions by these orbits is not claimed.
    Families {
        automorphs: Vec<Automorph>,
        trivial_count: usize,
        seeds: Vec<Vec<Int>>,
        box_bound: Int,
    },
    /// Mixed signs but no non-permutation automorph within the entry bound:
    /// distinct from "no solutions"; reported with the raw box solutions.
    NoAutomorph {
        box_solutions: Vec<Vec<Int>>,
        bound_k: Int,
        box_bound: Int,
    },
}

/// Same-sign coefficients: complete bounded enumeration. Mixed signs:
/// automorph search plus descent-minimal seeds.
pub fn nform_solve(form: &DiagonalForm, k: &Int, box_bound: &Int) -> NFormSolutions {
    if !form.mixed_signs() {
        let flip = form.coeffs()[0].is_negative();
        let (coeffs, b): (Vec<Int>, Int) = if flip {
            (form.coeffs().iter().map(|a| -a).collect(), -form.b())
        } else {
            (form.coeffs().to_vec(), form.b().clone())
        };
        if b.is_negative() {
            return NFormSolutions::Empty {
                certificate: EmptyCertificate::SignArgument,
            };
        }
        if b.is_zero() {
            return NFormSolutions::Finite {
                points: vec![vec![Int::zero(); form.n()]],
            };
        }
        let bounds: Vec<Int> = coeffs.iter().map(|a| (&b / a).sqrt()).collect();
        let points = enumerate_solutions(&coeffs, &b, &bounds);
        if points.is_empty() {
            NFormSolutions::Empty {
                certificate: EmptyCertificate::EnumerationComplete,
            }
        } else {
            NFormSolutions::Finite { points }
        }
    } else {
        let all = automorph_search(form, k, false);
        let trivial_count = all.iter().filter(|m| m.is_signed_permutation()).count();
        let nontrivial: Vec<Automorph> = all
            .iter()
            .filter(|m| !m.is_signed_permutation())
            .cloned()
            .collect();
        if nontrivial.is_empty() {
            return NFormSolutions::NoAutomorph {
                box_solutions: nform_fundamentals(form, box_bound, &[]),
                bound_k: k.clone(),
                box_bound: box_bound.clone(),
            };
        }
        let seeds = nform_fundamentals(form, box_bound, &all);
        if seeds.is_empty() {
            return NFormSolutions::Empty {
                certificate: EmptyCertificate::BoundExhausted {
                    y_bound: box_bound.clone(),
                    capped: true,
                },
            };
        }
        NFormSolutions::Families {
            automorphs: nontrivial,
            trivial_count,
            seeds,
            box_bound: box_bound.clone(),
        }
    }
}
