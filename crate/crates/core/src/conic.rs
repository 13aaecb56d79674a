//! Reduction of a general bivariate quadratic to canonical `p·u² + q·v² + r = 0`
//! by an integer-affine substitution, transport of automorphisms through the
//! substitution, and congruence certification of orbit integrality back in the
//! original variables.

use crate::classify::{classify, Classification, PellEquation};
use crate::exact::{Int, MatQ, Rat};
use crate::finite::{solve_same_sign, FiniteError, Line, SameSignEquation};
use crate::pell::{
    fundamental_solutions, generate, resolvent, solve, Automorphism, EmptyCertificate,
    SolutionFamily, SolutionSet, SolveOptions,
};
use num::{Integer, One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConicError {
    #[error("not a second-degree equation: all quadratic coefficients are zero")]
    NotQuadratic,
    #[error("parabolic case unsupported: discriminant B^2 - 4AC is zero")]
    Parabolic,
    #[error(transparent)]
    Finite(#[from] FiniteError),
}

/// `A·x² + B·xy + C·y² + D·x + E·y + F = 0` with integer coefficients and a
/// nonzero quadratic part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralConic {
    a: Int,
    b: Int,
    c: Int,
    d: Int,
    e: Int,
    f: Int,
}

impl GeneralConic {
    pub fn new(a: Int, b: Int, c: Int, d: Int, e: Int, f: Int) -> Result<Self, ConicError> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(ConicError::NotQuadratic);
        }
        Ok(GeneralConic { a, b, c, d, e, f })
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

    pub fn d(&self) -> &Int {
        &self.d
    }

    pub fn e(&self) -> &Int {
        &self.e
    }

    pub fn f(&self) -> &Int {
        &self.f
    }

    /// `B² − 4AC`; zero means parabolic, a positive square means the conic
    /// factors over the rationals or has rational asymptotes.
    pub fn discriminant(&self) -> Int {
        &self.b * &self.b - Int::from(4) * &self.a * &self.c
    }

    pub fn eval(&self, x: &Int, y: &Int) -> Int {
        &self.a * x * x
            + &self.b * x * y
            + &self.c * y * y
            + &self.d * x
            + &self.e * y
            + &self.f
    }

    pub fn is_solution(&self, x: &Int, y: &Int) -> bool {
        self.eval(x, y).is_zero()
    }
}

impl fmt::Display for GeneralConic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: [(&Int, &str); 6] = [
            (&self.a, "x^2"),
            (&self.b, "xy"),
            (&self.c, "y^2"),
            (&self.d, "x"),
            (&self.e, "y"),
            (&self.f, ""),
        ];
        let mut first = true;
        for (coeff, var) in terms {
            if coeff.is_zero() {
                continue;
            }
            let mag = coeff.abs();
            if first {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() && !var.is_empty() {
                write!(f, "{var}")?;
            } else if var.is_empty() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        write!(f, " = 0")
    }
}

/// Result of completing the square twice: an integer-affine substitution
/// `(u, v)` and a canonical equation `p·u² + q·v² + r = 0` with `p > 0`,
/// linked to the conic by `p·u² + q·v² + r = scale · f(x, y)` identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicReduction {
    conic: GeneralConic,
    /// Raw linear forms over (x, y, 1) before content extraction.
    u_raw: [Int; 3],
    v_raw: [Int; 3],
    /// Contents of the raw forms; `u = u_raw/g_u`.
    g_u: Int,
    g_v: Int,
    /// Content-extracted rows: `u = u_form · (x, y, 1)`.
    u_form: [Int; 3],
    v_form: [Int; 3],
    /// Canonical coefficients, `p > 0`, `gcd(p, q, r) = 1`.
    p: Int,
    q: Int,
    r: Int,
    /// Exact multiplier in `p·u² + q·v² + r = scale · f(x, y)`.
    scale: Rat,
}

fn gcd3(a: &Int, b: &Int, c: &Int) -> Int {
    a.gcd(b).gcd(c)
}

fn dot3(row: &[Int; 3], x: &Int, y: &Int) -> Int {
    &row[0] * x + &row[1] * y + &row[2]
}

impl ConicReduction {
    pub fn conic(&self) -> &GeneralConic {
        &self.conic
    }

    pub fn u_form(&self) -> &[Int; 3] {
        &self.u_form
    }

    pub fn v_form(&self) -> &[Int; 3] {
        &self.v_form
    }

    pub fn contents(&self) -> (&Int, &Int) {
        (&self.g_u, &self.g_v)
    }

    /// Canonical `(p, q, r)` with `p > 0`.
    pub fn canonical_triple(&self) -> (&Int, &Int, &Int) {
        (&self.p, &self.q, &self.r)
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    /// The mixed-sign canonical equation `p·u² − |q|·v² + r = 0`, when the
    /// canonical form is hyperbolic.
    pub fn pell_equation(&self) -> Option<PellEquation> {
        if self.q.is_negative() {
            Some(
                PellEquation::new(self.p.clone(), -&self.q, self.r.clone())
                    .expect("p and -q are positive"),
            )
        } else {
            None
        }
    }

    /// The same-sign canonical equation, when the canonical form is elliptic.
    pub fn same_sign_equation(&self) -> Option<SameSignEquation> {
        if self.q.is_positive() {
            Some(
                SameSignEquation::new(self.p.clone(), self.q.clone(), self.r.clone())
                    .expect("both coefficients positive"),
            )
        } else {
            None
        }
    }

    /// Substitution value `(u, v)` at an integer point; always integral.
    pub fn forward(&self, x: &Int, y: &Int) -> (Int, Int) {
        (dot3(&self.u_form, x, y), dot3(&self.v_form, x, y))
    }

    /// Determinant of the 2×2 linear part of the substitution; nonzero for
    /// every nondegenerate reduction.
    fn det2(&self) -> Int {
        &self.u_form[0] * &self.v_form[1] - &self.u_form[1] * &self.v_form[0]
    }

    /// Inverse of the substitution on one point: `Some((x, y))` when the
    /// rational preimage is integral, `None` otherwise.
    pub fn back_map(&self, u: &Int, v: &Int) -> Option<(Int, Int)> {
        let det = self.det2();
        let bu = u - &self.u_form[2];
        let bv = v - &self.v_form[2];
        let nx = &self.v_form[1] * &bu - &self.u_form[1] * &bv;
        let ny = -&self.v_form[0] * &bu + &self.u_form[0] * &bv;
        let (x, rx) = nx.div_rem(&det);
        let (y, ry) = ny.div_rem(&det);
        if rx.is_zero() && ry.is_zero() {
            Some((x, y))
        } else {
            None
        }
    }

    /// Exact rational preimage, for parametric-line transport.
    fn back_map_rat(&self, u: &Rat, v: &Rat) -> (Rat, Rat) {
        let det = Rat::from(self.det2());
        let bu = u - Rat::from(self.u_form[2].clone());
        let bv = v - Rat::from(self.v_form[2].clone());
        let x = (Rat::from(self.v_form[1].clone()) * &bu - Rat::from(self.u_form[1].clone()) * &bv)
            / det.clone();
        let y = (Rat::from(-&self.v_form[0]) * bu + Rat::from(self.u_form[0].clone()) * bv) / det;
        (x, y)
    }

    /// Homogeneous 3×3 form of the substitution: `(x, y, 1) -> (u, v, 1)`.
    pub fn matrix_t(&self) -> MatQ {
        MatQ::from_int_rows(&[
            self.u_form.to_vec(),
            self.v_form.to_vec(),
            vec![Int::zero(), Int::zero(), Int::one()],
        ])
    }
}

/// Completes the square twice. The three coefficient cases share one identity:
/// with `u_raw = 2Ax + By + D` and `v_raw = Δy − (2AE − BD)`,
/// `Δ·u_raw² − v_raw² + K = 4AΔ·f(x, y)` where `K = Δ(4AF − D²) + (2AE − BD)²`;
/// `A = 0, C ≠ 0` swaps the variable roles, and `A = C = 0` first substitutes
/// `x = s + t, y = s − t`.
pub fn reduce(conic: &GeneralConic) -> Result<ConicReduction, ConicError> {
    let delta = conic.discriminant();
    if delta.is_zero() {
        return Err(ConicError::Parabolic);
    }
    let two = Int::from(2);
    let four = Int::from(4);
    let (u_raw, v_raw, delta_used, k, scale_raw): ([Int; 3], [Int; 3], Int, Int, Int) =
        if !conic.a.is_zero() {
            let cross = &two * &conic.a * &conic.e - &conic.b * &conic.d;
            (
                [&two * &conic.a, conic.b.clone(), conic.d.clone()],
                [Int::zero(), delta.clone(), -&cross],
                delta.clone(),
                &delta * (&four * &conic.a * &conic.f - &conic.d * &conic.d) + &cross * &cross,
                &four * &conic.a * &delta,
            )
        } else if !conic.c.is_zero() {
            let cross = &two * &conic.c * &conic.d - &conic.b * &conic.e;
            (
                [conic.b.clone(), &two * &conic.c, conic.e.clone()],
                [delta.clone(), Int::zero(), -&cross],
                delta.clone(),
                &delta * (&four * &conic.c * &conic.f - &conic.e * &conic.e) + &cross * &cross,
                &four * &conic.c * &delta,
            )
        } else {
            // A = C = 0, B ≠ 0: through x = s + t, y = s − t the form becomes
            // B·s² − B·t² + (D+E)·s + (D−E)·t + F, reduced as in the first case
            let b = &conic.b;
            let sum = &conic.d + &conic.e;
            let diff = &conic.d - &conic.e;
            let d4 = &four * b * b;
            let cross = &two * b * &diff;
            (
                [b.clone(), b.clone(), sum.clone()],
                [&two * b * b, -(&two * b * b), -&cross],
                d4.clone(),
                &d4 * (&four * b * &conic.f - &sum * &sum) + &cross * &cross,
                Int::from(16) * b * b * b,
            )
        };
    let g_u = gcd3(&u_raw[0], &u_raw[1], &u_raw[2]);
    let g_v = gcd3(&v_raw[0], &v_raw[1], &v_raw[2]);
    let u_form = [&u_raw[0] / &g_u, &u_raw[1] / &g_u, &u_raw[2] / &g_u];
    let v_form = [&v_raw[0] / &g_v, &v_raw[1] / &g_v, &v_raw[2] / &g_v];
    let mut p = &delta_used * &g_u * &g_u;
    let mut q = -(&g_v * &g_v);
    let mut r = k;
    let g = gcd3(&p, &q, &r);
    p /= &g;
    q /= &g;
    r /= &g;
    let mut scale = Rat::new(scale_raw, g);
    if p.is_negative() {
        p = -p;
        q = -q;
        r = -r;
        scale = -scale;
    }
    Ok(ConicReduction {
        conic: conic.clone(),
        u_raw,
        v_raw,
        g_u,
        g_v,
        u_form,
        v_form,
        p,
        q,
        r,
        scale,
    })
}

/// The substitution's automorphism transported to original variables:
/// `T⁻¹·Â·T` with `T` the homogeneous substitution and `Â` the canonical
/// automorphism with trivial affine part. Entries may be rational; the orbit
/// certificate states exactly which powers land on integers.
pub fn affine_automorphism(red: &ConicReduction, aut: &Automorphism) -> MatQ {
    let t = red.matrix_t();
    let e = aut.entries();
    let a_hat = MatQ::from_int_rows(&[
        vec![e[0][0].clone(), e[0][1].clone(), Int::zero()],
        vec![e[1][0].clone(), e[1][1].clone(), Int::zero()],
        vec![Int::zero(), Int::zero(), Int::one()],
    ]);
    let t_inv = t.inverse().expect("substitution is invertible");
    t_inv.mul(&a_hat).expect("3x3").mul(&t).expect("3x3")
}

/// Which members of one canonical orbit are integral in original variables.
///
/// Integrality of the preimage of `(u, v)` is a pair of congruences modulo
/// `m = |det T|`; the canonical automorphism acts linearly on `(u, v) mod m`,
/// so the orbit's residue states cycle and one period decides every `n ∈ ℤ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCertificate {
    /// Modulus of the congruence conditions, `|det T|`.
    pub modulus: Int,
    /// Period of the residue states along the orbit.
    pub cycle_len: u64,
    /// Offsets `n mod cycle_len` whose members are integral.
    pub residues: Vec<u64>,
}

impl OrbitCertificate {
    /// True when every orbit member maps back to integers.
    pub fn fully_integral(&self) -> bool {
        self.residues.len() == self.cycle_len as usize
    }

    /// True when the `n`-th member maps back to integers.
    pub fn covers(&self, n: i64) -> bool {
        let r = n.rem_euclid(self.cycle_len as i64) as u64;
        self.residues.contains(&r)
    }

    /// Smallest nonnegative covered offset, if any member is integral.
    pub fn first_offset(&self) -> Option<u64> {
        self.residues.first().copied()
    }
}

/// Certifies the orbit of `seed` (a signed canonical point) under the
/// canonical automorphism.
pub fn certify_orbit(
    red: &ConicReduction,
    aut: &Automorphism,
    seed: &(Int, Int),
) -> OrbitCertificate {
    let det = red.det2();
    let m = det.abs();
    let e = aut.entries();
    let reduce_pt = |u: &Int, v: &Int| (u.mod_floor(&m), v.mod_floor(&m));
    let passes = |u: &Int, v: &Int| {
        let bu = u - &red.u_form[2];
        let bv = v - &red.v_form[2];
        let nx = &red.v_form[1] * &bu - &red.u_form[1] * &bv;
        let ny = -&red.v_form[0] * &bu + &red.u_form[0] * &bv;
        nx.mod_floor(&m).is_zero() && ny.mod_floor(&m).is_zero()
    };
    let start = reduce_pt(&seed.0, &seed.1);
    let mut state = start.clone();
    let mut residues = Vec::new();
    let mut k: u64 = 0;
    let guard = {
        // the state space has at most m² points, so the cycle closes by then
        let mm = &m * &m;
        u64::try_from(&mm).unwrap_or(u64::MAX).saturating_add(2)
    };
    loop {
        if passes(&state.0, &state.1) {
            residues.push(k);
        }
        let nu = &e[0][0] * &state.0 + &e[0][1] * &state.1;
        let nv = &e[1][0] * &state.0 + &e[1][1] * &state.1;
        state = reduce_pt(&nu, &nv);
        k += 1;
        if state == start {
            break;
        }
        assert!(k < guard, "residue orbit failed to close");
    }
    OrbitCertificate {
        modulus: m,
        cycle_len: k,
        residues,
    }
}

/// One infinite family of conic solutions: a canonical family pulled back
/// through the substitution, kept when at least one orbit member is integral.
/// `negated` marks the mirror orbit through `(u, v) -> (−u, −v)`, which maps
/// to different original-variable points under an affine substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicFamily {
    pub canonical: SolutionFamily,
    pub negated: bool,
    pub recurrence: MatQ,
    pub certificate: OrbitCertificate,
    /// First integral member in original variables (offset `first_offset()`).
    pub seed_xy: Option<(Int, Int)>,
}

impl ConicFamily {
    /// Signed canonical seed of this orbit, mirror sign applied.
    pub fn canonical_seed(&self) -> (Int, Int) {
        let (u, v) = self.canonical.signed_seed();
        if self.negated {
            (-u, -v)
        } else {
            (u, v)
        }
    }

    /// `n`-th canonical orbit member of this (possibly mirrored) family.
    pub fn canonical_member(&self, n: i64) -> (Int, Int) {
        let (u, v) = generate(&self.canonical, n);
        if self.negated {
            (-u, -v)
        } else {
            (u, v)
        }
    }

    /// `n`-th member in original variables, when integral.
    pub fn member(&self, red: &ConicReduction, n: i64) -> Option<(Int, Int)> {
        let (u, v) = self.canonical_member(n);
        let point = red.back_map(&u, &v);
        debug_assert_eq!(point.is_some(), self.certificate.covers(n));
        point
    }
}

/// Solution set of a conic in its original variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConicSolutions {
    Empty { certificate: EmptyCertificate },
    Finite { points: Vec<(Int, Int)> },
    Families { families: Vec<ConicFamily> },
    ParametricLines { lines: Vec<Line> },
}

/// A solved conic: the reduction, the canonical regime, and the mapped-back
/// solution set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicOutcome {
    pub reduction: ConicReduction,
    pub classification: Classification,
    pub solutions: ConicSolutions,
}

/// Transports one canonical parametric line through the inverse substitution:
/// the preimage is affine in the parameter with rational coefficients, and the
/// integral parameters form residue classes.
fn back_map_line(red: &ConicReduction, line: &Line) -> Vec<Line> {
    let (x0, y0) = red.back_map_rat(
        &Rat::from(line.base.0.clone()),
        &Rat::from(line.base.1.clone()),
    );
    let (x1, y1) = red.back_map_rat(
        &Rat::from(&line.base.0 + &line.step.0),
        &Rat::from(&line.base.1 + &line.step.1),
    );
    let dx = &x1 - &x0;
    let dy = &y1 - &y0;
    let period_int = dx.denom().lcm(dy.denom());
    let period = Rat::from(period_int.clone());
    let mut out = Vec::new();
    let mut t = Rat::zero();
    while &t < &period {
        let x = &x0 + &t * &dx;
        let y = &y0 + &t * &dy;
        if x.is_integer() && y.is_integer() {
            let sx = &period * &dx;
            let sy = &period * &dy;
            debug_assert!(sx.is_integer() && sy.is_integer());
            out.push(Line {
                base: (x.to_integer(), y.to_integer()),
                step: (sx.to_integer(), sy.to_integer()),
            });
        }
        t += Rat::one();
    }
    out
}

/// Full conic pipeline: reduce, solve the canonical equation, and pull every
/// outcome back to original variables. Families come in mirror pairs because
/// negating `(u, v)` preserves the canonical equation but lands on different
/// original-variable points.
pub fn solve_conic(conic: &GeneralConic, opts: &SolveOptions) -> Result<ConicOutcome, ConicError> {
    let red = reduce(conic)?;
    if let Some(pe) = red.pell_equation() {
        let classification = classify(&pe);
        let set = solve(&pe, opts)?;
        let solutions = match set {
            SolutionSet::Empty { certificate } => ConicSolutions::Empty { certificate },
            SolutionSet::Finite { points } => {
                let mut pts: Vec<(Int, Int)> = points
                    .iter()
                    .filter_map(|(u, v)| red.back_map(u, v))
                    .collect();
                pts.sort();
                pts.dedup();
                ConicSolutions::Finite { points: pts }
            }
            SolutionSet::ParametricLines { lines } => {
                let mapped: Vec<Line> = lines.iter().flat_map(|l| back_map_line(&red, l)).collect();
                ConicSolutions::ParametricLines { lines: mapped }
            }
            SolutionSet::Families { families } => {
                let mut out = Vec::new();
                for fam in families {
                    let recurrence = affine_automorphism(&red, &fam.automorphism);
                    for negated in [false, true] {
                        let (su, sv) = {
                            let (u, v) = fam.signed_seed();
                            if negated {
                                (-u, -v)
                            } else {
                                (u, v)
                            }
                        };
                        let certificate = certify_orbit(&red, &fam.automorphism, &(su, sv));
                        let conic_family = ConicFamily {
                            canonical: fam.clone(),
                            negated,
                            recurrence: recurrence.clone(),
                            seed_xy: None,
                            certificate,
                        };
                        let seed_xy = conic_family
                            .certificate
                            .first_offset()
                            .and_then(|n| conic_family.member(&red, n as i64));
                        out.push(ConicFamily {
                            seed_xy,
                            ..conic_family
                        });
                    }
                }
                // orbits with no integral member contribute nothing; if every
                // orbit is excluded the residue analysis is a completeness
                // proof modulo |det T₂|
                out.retain(|f| !f.certificate.residues.is_empty());
                if out.is_empty() {
                    ConicSolutions::Empty {
                        certificate: EmptyCertificate::Congruence {
                            modulus: red.det2().abs(),
                        },
                    }
                } else {
                    ConicSolutions::Families { families: out }
                }
            }
        };
        return Ok(ConicOutcome {
            reduction: red,
            classification,
            solutions,
        });
    }
    // elliptic canonical form: p, q > 0
    let sse = red.same_sign_equation().expect("q is positive here");
    let classification = Classification::FiniteSameSign;
    let solutions = if red.r.is_positive() {
        ConicSolutions::Empty {
            certificate: EmptyCertificate::SignArgument,
        }
    } else {
        let canonical_points = solve_same_sign(&sse)?;
        if canonical_points.is_empty() {
            ConicSolutions::Empty {
                certificate: EmptyCertificate::EnumerationComplete,
            }
        } else {
            let mut pts: Vec<(Int, Int)> = canonical_points
                .iter()
                .filter_map(|(u, v)| red.back_map(u, v))
                .collect();
            pts.sort();
            pts.dedup();
            ConicSolutions::Finite { points: pts }
        }
    };
    Ok(ConicOutcome {
        reduction: red,
        classification,
        solutions,
    })
}

/// Convenience scan used by tests: the canonical fundamental solutions of a
/// hyperbolic reduction.
pub fn canonical_fundamentals(red: &ConicReduction, opts: &SolveOptions) -> Vec<(Int, Int)> {
    let pe = red.pell_equation().expect("hyperbolic canonical form");
    let aut = resolvent(pe.a(), pe.b());
    fundamental_solutions(&pe, &aut, opts.y_bound.as_ref(), &opts.scan_cap).seeds
}
