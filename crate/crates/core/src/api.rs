//! One-call analysis of a routed equation plus text and JSON rendering.
//! Every integer in JSON output is an exact decimal string; nothing is ever
//! a float.

use crate::classify::{classify, Classification, PellEquation};
use crate::conic::{
    reduce, solve_conic, ConicError, ConicFamily, ConicOutcome, ConicReduction, ConicSolutions,
    GeneralConic,
};
use crate::exact::{Int, MatQ, Rat, Surd};
use crate::finite::{FiniteError, Line};
use crate::nform::{
    nform_solve, DiagonalForm, NFormSolutions, AUTOMORPH_BOUND_DEFAULT, NFORM_BOX_DEFAULT,
};
use crate::parse::{ParsedEquation, Problem};
use crate::pell::{
    closed_form, generate, resolvent, solve, Automorphism, ClosedForm, EmptyCertificate,
    SolutionFamily, SolutionSet, SolveOptions,
};
use num::{Integer, One, Signed, Zero};
use serde_json::{json, Value};
use std::fmt::Write as _;

/// Knobs for [`analyze`]; defaults match the individual solver defaults.
#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    /// Bivariate engine options (scan bound override, cap, moduli).
    pub solve: SolveOptions,
    /// Entry bound for the diagonal-form automorph search.
    pub automorph_bound: Int,
    /// Coordinate box for diagonal-form seeds and finite enumerations.
    pub box_bound: Int,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            solve: SolveOptions::default(),
            automorph_bound: Int::from(AUTOMORPH_BOUND_DEFAULT),
            box_bound: Int::from(NFORM_BOX_DEFAULT),
        }
    }
}

/// How the routed equation was solved.
#[derive(Debug, Clone)]
pub enum AnalysisKind {
    Pell {
        eq: PellEquation,
        classification: Classification,
        set: SolutionSet,
    },
    Conic {
        outcome: ConicOutcome,
    },
    Diagonal {
        form: DiagonalForm,
        solutions: NFormSolutions,
    },
}

/// A fully solved equation, ready for rendering.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub parsed: ParsedEquation,
    pub labels: Vec<String>,
    pub kind: AnalysisKind,
}

#[derive(Debug, thiserror::Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Conic(#[from] ConicError),
    #[error(transparent)]
    Finite(#[from] FiniteError),
    #[error("{0}")]
    Unsupported(String),
}

/// Solves the routed problem with the given options.
pub fn analyze(
    parsed: ParsedEquation,
    problem: Problem,
    opts: &AnalyzeOptions,
) -> Result<Analysis, AnalyzeError> {
    match problem {
        Problem::Pell { eq, labels } => {
            let classification = classify(&eq);
            let set = solve(&eq, &opts.solve)?;
            Ok(Analysis {
                parsed,
                labels: labels.to_vec(),
                kind: AnalysisKind::Pell { eq, classification, set },
            })
        }
        Problem::Conic { conic, labels } => {
            let outcome = solve_conic(&conic, &opts.solve)?;
            Ok(Analysis {
                parsed,
                labels: labels.to_vec(),
                kind: AnalysisKind::Conic { outcome },
            })
        }
        Problem::Diagonal { form, labels } => {
            let solutions = nform_solve(&form, &opts.automorph_bound, &opts.box_bound);
            Ok(Analysis {
                parsed,
                labels,
                kind: AnalysisKind::Diagonal { form, solutions },
            })
        }
    }
}

/// Process status for an analysis: 0 for success including proven emptiness,
/// 2 for inconclusive results (capped scan, missing automorph).
pub fn exit_code(analysis: &Analysis) -> u8 {
    fn empty_code(c: &EmptyCertificate) -> u8 {
        if c.is_proof() {
            0
        } else {
            2
        }
    }
    match &analysis.kind {
        AnalysisKind::Pell { set, .. } => match set {
            SolutionSet::Empty { certificate } => empty_code(certificate),
            _ => 0,
        },
        AnalysisKind::Conic { outcome } => match &outcome.solutions {
            ConicSolutions::Empty { certificate } => empty_code(certificate),
            _ => 0,
        },
        AnalysisKind::Diagonal { solutions, .. } => match solutions {
            NFormSolutions::Empty { certificate } => empty_code(certificate),
            NFormSolutions::NoAutomorph { .. } => 2,
            _ => 0,
        },
    }
}

/// Output shaping shared by the text and JSON renderers.
#[derive(Debug, Clone)]
pub struct RenderOptions {
    /// Family members listed per family.
    pub terms: i64,
    /// Print absolute values of coordinates.
    pub positive: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { terms: 5, positive: false }
    }
}

fn abs_pair(p: &(Int, Int), positive: bool) -> (Int, Int) {
    if positive {
        (p.0.abs(), p.1.abs())
    } else {
        p.clone()
    }
}

fn abs_tuple(v: &[Int], positive: bool) -> Vec<Int> {
    if positive {
        v.iter().map(|c| c.abs()).collect()
    } else {
        v.to_vec()
    }
}

fn fmt_pair(p: &(Int, Int)) -> String {
    format!("({}, {})", p.0, p.1)
}

fn fmt_tuple(v: &[Int]) -> String {
    let inner: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", inner.join(", "))
}

fn fmt_mat2(aut: &Automorphism) -> String {
    let e = aut.entries();
    format!("[[{}, {}], [{}, {}]]", e[0][0], e[0][1], e[1][0], e[1][1])
}

fn fmt_classification(c: &Classification) -> String {
    match c {
        Classification::NoSolutionDivisibility { g } => {
            format!("no-solution-divisibility (gcd = {g})")
        }
        Classification::NoSolutionCongruence { modulus } => {
            format!("no-solution-congruence (mod {modulus})")
        }
        Classification::FiniteSquareDiscriminant { k } => {
            format!("finite-square-discriminant (k = {k})")
        }
        Classification::FiniteSameSign => "finite-same-sign".into(),
        Classification::InfiniteFamilyCandidate { d } => {
            format!("infinite-family-candidate (d = {d})")
        }
    }
}

fn fmt_empty(c: &EmptyCertificate) -> String {
    match c {
        EmptyCertificate::Divisibility { g } => {
            format!("no solutions (divisibility argument, gcd = {g})")
        }
        EmptyCertificate::Congruence { modulus } => {
            format!("no solutions (congruence argument mod {modulus})")
        }
        EmptyCertificate::BoundExhausted { y_bound, capped: false } => {
            format!("no solutions (fundamental scan complete, y <= {y_bound})")
        }
        EmptyCertificate::BoundExhausted { y_bound, capped: true } => {
            format!("no solutions found (scan capped at y <= {y_bound}; unproven)")
        }
        EmptyCertificate::SignArgument => "no solutions (sign argument)".into(),
        EmptyCertificate::EnumerationComplete => "no solutions (complete enumeration)".into(),
    }
}

/// `c0·x + c1·y + c2` with the usual sign and coefficient-1 conventions.
fn fmt_linear_form(row: &[Int; 3], labels: &[String]) -> String {
    let mut out = String::new();
    let names = [labels[0].as_str(), labels[1].as_str(), ""];
    for (coeff, name) in row.iter().zip(names) {
        if coeff.is_zero() {
            continue;
        }
        let mag = coeff.abs();
        if out.is_empty() {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if name.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(name);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `p·u² + q·v² + r = 0` rendered with signs folded in.
fn fmt_canonical(p: &Int, q: &Int, r: &Int) -> String {
    let mut out = String::new();
    if !p.is_one() {
        out.push_str(&p.to_string());
    }
    out.push_str("u^2");
    if q.is_negative() {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    let qm = q.abs();
    if !qm.is_one() {
        out.push_str(&qm.to_string());
    }
    out.push_str("v^2");
    if !r.is_zero() {
        if r.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&r.abs().to_string());
    }
    out.push_str(" = 0");
    out
}

/// One row of the inverse substitution as `x = (2u - v + 3)/6`, reduced.
fn fmt_inverse_row(row: &[Rat], label: &str) -> String {
    let den = row
        .iter()
        .fold(Int::one(), |acc, r| num::integer::lcm(acc, r.denom().clone()));
    let numerators: Vec<Int> = row.iter().map(|r| r.numer() * (&den / r.denom())).collect();
    let g = numerators
        .iter()
        .fold(den.clone(), |acc, n| acc.gcd(n));
    let reduced: [Int; 3] = [
        &numerators[0] / &g,
        &numerators[1] / &g,
        &numerators[2] / &g,
    ];
    let den = &den / &g;
    let uv = ["u".to_string(), "v".to_string()];
    let body = fmt_linear_form(&reduced, &uv);
    if den.is_one() {
        format!("{label} = {body}")
    } else if reduced.iter().filter(|c| !c.is_zero()).count() > 1 {
        format!("{label} = ({body})/{den}")
    } else {
        format!("{label} = {body}/{den}")
    }
}

/// Integral original-variable members of a conic family, starting at the
/// first integral offset.
fn conic_members(red: &ConicReduction, fam: &ConicFamily, terms: i64) -> Vec<(i64, (Int, Int))> {
    let mut out = Vec::new();
    let Some(first) = fam.certificate.first_offset() else {
        return out;
    };
    let cycle = fam.certificate.cycle_len.max(1) as i64;
    let mut n = first as i64;
    let limit = n + terms.max(0) * cycle + cycle;
    while (out.len() as i64) < terms && n <= limit {
        if let Some(p) = fam.member(red, n) {
            out.push((n, p));
        }
        n += 1;
    }
    out
}

fn residues_text(fam: &ConicFamily) -> String {
    if fam.certificate.fully_integral() {
        "integral at all n".into()
    } else {
        let offsets: Vec<String> =
            fam.certificate.residues.iter().map(|r| r.to_string()).collect();
        format!(
            "integral at n = {} (mod {})",
            offsets.join(", "),
            fam.certificate.cycle_len
        )
    }
}

/// `coeff * base` with coefficient 1/-1 folded away; `sep` chooses how the
/// term attaches to what came before.
fn push_term(out: &mut String, coeff: &Surd, base: &str, first: bool) {
    let one = Surd::new(Rat::one(), Rat::zero(), coeff.radicand().clone());
    let minus_one = Surd::new(-Rat::one(), Rat::zero(), coeff.radicand().clone());
    let rendered = coeff.to_string();
    let (neg, body) = if *coeff == minus_one {
        (true, base.to_string())
    } else if *coeff == one {
        (false, base.to_string())
    } else if let Some(stripped) = rendered.strip_prefix('-') {
        (true, format!("{stripped} * {base}"))
    } else {
        (false, format!("{rendered} * {base}"))
    };
    if first {
        if neg {
            out.push('-');
        }
    } else if neg {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    out.push_str(&body);
}

fn fmt_closed_form_lines(cf: &ClosedForm, var_x: &str, var_y: &str) -> (String, String) {
    let mut x_line = String::new();
    push_term(&mut x_line, &cf.coeff_x_plus, "lambda^n", true);
    push_term(&mut x_line, &cf.coeff_x_minus, "lambda^(-n)", false);
    let mut y_line = String::new();
    push_term(&mut y_line, &cf.coeff_y_plus, "lambda^n", true);
    push_term(&mut y_line, &cf.coeff_y_minus, "lambda^(-n)", false);
    (format!("{var_x}(n) = {x_line}"), format!("{var_y}(n) = {y_line}"))
}

fn write_points_block(out: &mut String, points: &[Vec<Int>], opts: &RenderOptions) {
    let mut rows: Vec<Vec<Int>> =
        points.iter().map(|p| abs_tuple(p, opts.positive)).collect();
    if opts.positive {
        rows.sort();
        rows.dedup();
    }
    let _ = writeln!(
        out,
        "{} solution{}:",
        rows.len(),
        if rows.len() == 1 { "" } else { "s" }
    );
    for p in rows {
        let _ = writeln!(out, "  {}", fmt_tuple(&p));
    }
}

fn write_lines_block(out: &mut String, lines: &[Line], labels: &[String]) {
    let _ = writeln!(out, "{} parametric line{} (integer parameter t):", lines.len(), if lines.len() == 1 { "" } else { "s" });
    for l in lines {
        let _ = writeln!(
            out,
            "  ({}, {}) = {} + t*{}",
            labels[0],
            labels[1],
            fmt_pair(&l.base),
            fmt_pair(&l.step)
        );
    }
}

fn write_pell_families(
    out: &mut String,
    families: &[SolutionFamily],
    opts: &RenderOptions,
) {
    if let Some(first) = families.first() {
        let _ = writeln!(out, "automorphism matrix: {}", fmt_mat2(&first.automorphism));
    }
    let _ = writeln!(
        out,
        "{} famil{}:",
        families.len(),
        if families.len() == 1 { "y" } else { "ies" }
    );
    for (i, fam) in families.iter().enumerate() {
        let seed = fam.signed_seed();
        let _ = writeln!(
            out,
            "family {}: seed {}, epsilon {:+}",
            i + 1,
            fmt_pair(&abs_pair(&seed, opts.positive)),
            fam.epsilon
        );
        for n in 0..opts.terms.max(0) {
            let member = generate(fam, n);
            let _ = writeln!(out, "  n={}: {}", n, fmt_pair(&abs_pair(&member, opts.positive)));
        }
    }
}

fn write_reduction_header(out: &mut String, red: &ConicReduction, labels: &[String]) {
    let (gu, gv) = red.contents();
    let (p, q, r) = red.canonical_triple();
    let _ = writeln!(out, "discriminant: {}", red.conic().discriminant());
    let _ = writeln!(
        out,
        "substitution: u = {} (content {}), v = {} (content {})",
        fmt_linear_form(red.u_form(), labels),
        gu,
        fmt_linear_form(red.v_form(), labels),
        gv
    );
    let inv = red
        .matrix_t()
        .inverse()
        .expect("substitution matrix is invertible for non-degenerate conics");
    let row = |r: usize| -> Vec<Rat> { (0..3).map(|c| inv.at(r, c).clone()).collect() };
    let _ = writeln!(
        out,
        "inverse map: {}, {}",
        fmt_inverse_row(&row(0), &labels[0]),
        fmt_inverse_row(&row(1), &labels[1])
    );
    let _ = writeln!(out, "canonical form: {}", fmt_canonical(p, q, r));
}

fn write_conic_families(
    out: &mut String,
    red: &ConicReduction,
    families: &[ConicFamily],
    opts: &RenderOptions,
) {
    if let Some(first) = families.first() {
        let _ = writeln!(
            out,
            "canonical automorphism: {}",
            fmt_mat2(&first.canonical.automorphism)
        );
        let _ = writeln!(out, "affine recurrence on (x, y, 1):");
        for r in 0..3 {
            let entries: Vec<String> =
                (0..3).map(|c| first.recurrence.at(r, c).to_string()).collect();
            let _ = writeln!(out, "  [{}]", entries.join(", "));
        }
    }
    let _ = writeln!(
        out,
        "{} famil{}:",
        families.len(),
        if families.len() == 1 { "y" } else { "ies" }
    );
    for (i, fam) in families.iter().enumerate() {
        let mirror = if fam.negated { " (mirror)" } else { "" };
        let _ = writeln!(
            out,
            "family {}: canonical seed {}, epsilon {:+}{}, {}",
            i + 1,
            fmt_pair(&fam.canonical_seed()),
            fam.canonical.epsilon,
            mirror,
            residues_text(fam)
        );
        for (n, p) in conic_members(red, fam, opts.terms) {
            let _ = writeln!(out, "  n={}: {}", n, fmt_pair(&abs_pair(&p, opts.positive)));
        }
    }
}

/// Full plain-text report for `solve`.
pub fn render_text(analysis: &Analysis, opts: &RenderOptions) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "equation: {}", analysis.parsed.render());
    match &analysis.kind {
        AnalysisKind::Pell { classification, set, .. } => {
            let _ = writeln!(out, "classification: {}", fmt_classification(classification));
            match set {
                SolutionSet::Empty { certificate } => {
                    let _ = writeln!(out, "{}", fmt_empty(certificate));
                }
                SolutionSet::Finite { points } => {
                    let rows: Vec<Vec<Int>> =
                        points.iter().map(|(x, y)| vec![x.clone(), y.clone()]).collect();
                    write_points_block(&mut out, &rows, opts);
                }
                SolutionSet::ParametricLines { lines } => {
                    write_lines_block(&mut out, lines, &analysis.labels);
                }
                SolutionSet::Families { families } => {
                    write_pell_families(&mut out, families, opts);
                }
            }
        }
        AnalysisKind::Conic { outcome } => {
            write_reduction_header(&mut out, &outcome.reduction, &analysis.labels);
            let _ = writeln!(
                out,
                "classification: {}",
                fmt_classification(&outcome.classification)
            );
            match &outcome.solutions {
                ConicSolutions::Empty { certificate } => {
                    let _ = writeln!(out, "{}", fmt_empty(certificate));
                }
                ConicSolutions::Finite { points } => {
                    let rows: Vec<Vec<Int>> =
                        points.iter().map(|(x, y)| vec![x.clone(), y.clone()]).collect();
                    write_points_block(&mut out, &rows, opts);
                }
                ConicSolutions::ParametricLines { lines } => {
                    write_lines_block(&mut out, lines, &analysis.labels);
                }
                ConicSolutions::Families { families } => {
                    write_conic_families(&mut out, &outcome.reduction, families, opts);
                }
            }
        }
        AnalysisKind::Diagonal { form, solutions } => {
            let _ = writeln!(
                out,
                "classification: {}",
                if form.mixed_signs() { "diagonal-mixed-signs" } else { "diagonal-same-sign" }
            );
            match solutions {
                NFormSolutions::Empty { certificate } => {
                    let _ = writeln!(out, "{}", fmt_empty(certificate));
                }
                NFormSolutions::Finite { points } => {
                    write_points_block(&mut out, points, opts);
                }
                NFormSolutions::Families { automorphs, trivial_count, seeds, box_bound } => {
                    let _ = writeln!(
                        out,
                        "automorphs (excluding {} signed permutations): {}",
                        trivial_count,
                        automorphs.len()
                    );
                    for m in automorphs {
                        let _ = writeln!(out, "  {m}");
                    }
                    let _ = writeln!(out, "seeds within box {}: {}", box_bound, seeds.len());
                    for s in seeds {
                        let _ = writeln!(out, "  {}", fmt_tuple(&abs_tuple(s, opts.positive)));
                    }
                }
                NFormSolutions::NoAutomorph { box_solutions, bound_k, box_bound } => {
                    let _ = writeln!(
                        out,
                        "no non-permutation automorph with entries within {bound_k}"
                    );
                    let _ = writeln!(
                        out,
                        "solutions with coordinates within {box_bound}: {}",
                        box_solutions.len()
                    );
                    for s in box_solutions {
                        let _ = writeln!(out, "  {}", fmt_tuple(&abs_tuple(s, opts.positive)));
                    }
                    let _ = writeln!(
                        out,
                        "inconclusive: infinite families neither found nor excluded"
                    );
                }
            }
        }
    }
    out
}

/// Classification-only report (no solving beyond reduction).
pub fn classify_text(parsed: &ParsedEquation, problem: &Problem) -> Result<String, AnalyzeError> {
    let mut out = String::new();
    let _ = writeln!(out, "equation: {}", parsed.render());
    match problem {
        Problem::Pell { eq, .. } => {
            let _ = writeln!(out, "classification: {}", fmt_classification(&classify(eq)));
        }
        Problem::Conic { conic, labels } => {
            let red = reduce(conic)?;
            write_reduction_header(&mut out, &red, labels);
            let classification = match red.pell_equation() {
                Some(pe) => fmt_classification(&classify(&pe)),
                None => "finite-same-sign".into(),
            };
            let _ = writeln!(out, "classification: {classification}");
        }
        Problem::Diagonal { form, .. } => {
            let _ = writeln!(
                out,
                "classification: {} ({} variables)",
                if form.mixed_signs() { "diagonal-mixed-signs" } else { "diagonal-same-sign" },
                form.n()
            );
        }
    }
    Ok(out)
}

/// The conic view of any two-variable problem; diagonal forms are rejected.
fn as_conic(problem: &Problem) -> Result<(GeneralConic, [String; 2]), AnalyzeError> {
    match problem {
        Problem::Pell { eq, labels } => {
            let conic = GeneralConic::new(
                eq.a().clone(),
                Int::zero(),
                -eq.b().clone(),
                Int::zero(),
                Int::zero(),
                eq.c().clone(),
            )
            .expect("pell shape has a nonzero quadratic part");
            Ok((conic, labels.clone()))
        }
        Problem::Conic { conic, labels } => Ok((conic.clone(), labels.clone())),
        Problem::Diagonal { .. } => Err(AnalyzeError::Unsupported(
            "reduce applies to two-variable equations".into(),
        )),
    }
}

/// Reduction report for `reduce`: canonical form, substitution, inverse map,
/// and the affine recurrence when the canonical form has families.
pub fn reduce_text(parsed: &ParsedEquation, problem: &Problem) -> Result<String, AnalyzeError> {
    let (conic, labels) = as_conic(problem)?;
    let red = reduce(&conic)?;
    let mut out = String::new();
    let _ = writeln!(out, "equation: {}", parsed.render());
    write_reduction_header(&mut out, &red, &labels);
    let _ = writeln!(out, "scale: {}", red.scale());
    if let Some(pe) = red.pell_equation() {
        if let Classification::InfiniteFamilyCandidate { .. } = classify(&pe) {
            let aut = resolvent(pe.a(), pe.b());
            let _ = writeln!(out, "canonical automorphism: {}", fmt_mat2(&aut));
            let affine = crate::conic::affine_automorphism(&red, &aut);
            let _ = writeln!(out, "affine recurrence on ({}, {}, 1):", labels[0], labels[1]);
            for r in 0..3 {
                let entries: Vec<String> =
                    (0..3).map(|c| affine.at(r, c).to_string()).collect();
                let _ = writeln!(out, "  [{}]", entries.join(", "));
            }
        }
    }
    Ok(out)
}

/// Closed-form report: `lambda` and per-family surd coefficients.
pub fn closed_form_text(analysis: &Analysis) -> Result<String, AnalyzeError> {
    let mut out = String::new();
    let _ = writeln!(out, "equation: {}", analysis.parsed.render());
    match &analysis.kind {
        AnalysisKind::Pell { set, .. } => match set {
            SolutionSet::Families { families } => {
                let labels = &analysis.labels;
                for (i, fam) in families.iter().enumerate() {
                    let cf = closed_form(fam);
                    if i == 0 {
                        let _ = writeln!(out, "lambda = {}", cf.lambda);
                    }
                    let _ = writeln!(
                        out,
                        "family {}: seed {}, epsilon {:+}",
                        i + 1,
                        fmt_pair(&fam.signed_seed()),
                        fam.epsilon
                    );
                    let (lx, ly) = fmt_closed_form_lines(&cf, &labels[0], &labels[1]);
                    let _ = writeln!(out, "  {lx}");
                    let _ = writeln!(out, "  {ly}");
                }
                Ok(out)
            }
            SolutionSet::Empty { certificate } => {
                let _ = writeln!(out, "{}", fmt_empty(certificate));
                Ok(out)
            }
            _ => {
                let _ = writeln!(out, "no infinite families: solution set is finite");
                Ok(out)
            }
        },
        AnalysisKind::Conic { outcome } => match &outcome.solutions {
            ConicSolutions::Families { families } => {
                write_reduction_header(&mut out, &outcome.reduction, &analysis.labels);
                let mut seen = Vec::new();
                for fam in families {
                    if fam.negated {
                        // mirror orbits share the closed form up to sign
                        continue;
                    }
                    let key = fam.canonical.signed_seed();
                    if seen.contains(&key) {
                        continue;
                    }
                    seen.push(key);
                    let cf = closed_form(&fam.canonical);
                    if seen.len() == 1 {
                        let _ = writeln!(out, "lambda = {}", cf.lambda);
                    }
                    let _ = writeln!(
                        out,
                        "canonical family {}: seed {}, epsilon {:+}",
                        seen.len(),
                        fmt_pair(&fam.canonical.signed_seed()),
                        fam.canonical.epsilon
                    );
                    let (lu, lv) = fmt_closed_form_lines(&cf, "u", "v");
                    let _ = writeln!(out, "  {lu}");
                    let _ = writeln!(out, "  {lv}");
                }
                Ok(out)
            }
            ConicSolutions::Empty { certificate } => {
                let _ = writeln!(out, "{}", fmt_empty(certificate));
                Ok(out)
            }
            _ => {
                let _ = writeln!(out, "no infinite families: solution set is finite");
                Ok(out)
            }
        },
        AnalysisKind::Diagonal { .. } => Err(AnalyzeError::Unsupported(
            "closed-form applies to two-variable equations".into(),
        )),
    }
}

fn int_json(i: &Int) -> Value {
    Value::String(i.to_string())
}

fn pair_json(p: &(Int, Int)) -> Value {
    json!([p.0.to_string(), p.1.to_string()])
}

fn tuple_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

fn mat2_json(aut: &Automorphism) -> Value {
    let e = aut.entries();
    json!([
        [e[0][0].to_string(), e[0][1].to_string()],
        [e[1][0].to_string(), e[1][1].to_string()]
    ])
}

fn matq_json(m: &MatQ) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|r| {
            Value::Array(
                (0..m.cols())
                    .map(|c| Value::String(m.at(r, c).to_string()))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn certificate_json(c: &EmptyCertificate) -> Value {
    match c {
        EmptyCertificate::Divisibility { g } => {
            json!({"type": "divisibility", "gcd": g.to_string()})
        }
        EmptyCertificate::Congruence { modulus } => {
            json!({"type": "congruence", "modulus": modulus.to_string()})
        }
        EmptyCertificate::BoundExhausted { y_bound, capped } => json!({
            "type": "bound-exhausted",
            "y_bound": y_bound.to_string(),
            "capped": capped,
            "proof": c.is_proof(),
        }),
        EmptyCertificate::SignArgument => json!({"type": "sign-argument"}),
        EmptyCertificate::EnumerationComplete => json!({"type": "enumeration-complete"}),
    }
}

fn equation_json(p: &ParsedEquation) -> Value {
    let terms: Vec<Value> = p
        .terms
        .iter()
        .map(|(c, e)| json!({"coefficient": c.to_string(), "exponents": e}))
        .collect();
    json!({"text": p.render(), "variables": p.variables, "terms": terms})
}

fn lines_json(lines: &[Line]) -> Value {
    let rows: Vec<Value> = lines
        .iter()
        .map(|l| json!({"base": pair_json(&l.base), "step": pair_json(&l.step)}))
        .collect();
    Value::Array(rows)
}

fn pell_family_json(fam: &SolutionFamily, opts: &RenderOptions) -> Value {
    let members: Vec<Value> = (0..opts.terms.max(0))
        .map(|n| pair_json(&abs_pair(&generate(fam, n), opts.positive)))
        .collect();
    json!({
        "seed": pair_json(&fam.signed_seed()),
        "epsilon": fam.epsilon,
        "matrix": mat2_json(&fam.automorphism),
        "members": members,
    })
}

fn conic_family_json(red: &ConicReduction, fam: &ConicFamily, opts: &RenderOptions) -> Value {
    let members: Vec<Value> = conic_members(red, fam, opts.terms)
        .iter()
        .map(|(n, p)| json!({"n": n, "point": pair_json(&abs_pair(p, opts.positive))}))
        .collect();
    json!({
        "seed": pair_json(&fam.canonical_seed()),
        "epsilon": fam.canonical.epsilon,
        "matrix": mat2_json(&fam.canonical.automorphism),
        "negated": fam.negated,
        "xy_seed": fam.seed_xy.as_ref().map(pair_json),
        "affine_recurrence": matq_json(&fam.recurrence),
        "certificate": {
            "modulus": fam.certificate.modulus.to_string(),
            "cycle_length": fam.certificate.cycle_len,
            "residues": fam.certificate.residues,
        },
        "members": members,
    })
}

fn reduction_json(red: &ConicReduction) -> Value {
    let (gu, gv) = red.contents();
    let (p, q, r) = red.canonical_triple();
    let inv = red
        .matrix_t()
        .inverse()
        .expect("substitution matrix is invertible for non-degenerate conics");
    json!({
        "discriminant": red.conic().discriminant().to_string(),
        "u": {"coefficients": tuple_json(red.u_form()), "content": gu.to_string()},
        "v": {"coefficients": tuple_json(red.v_form()), "content": gv.to_string()},
        "canonical": [p.to_string(), q.to_string(), r.to_string()],
        "canonical_text": fmt_canonical(p, q, r),
        "scale": red.scale().to_string(),
        "matrix": matq_json(&red.matrix_t()),
        "inverse_matrix": matq_json(&inv),
    })
}

fn points_json(points: &[Vec<Int>], opts: &RenderOptions) -> Value {
    let mut rows: Vec<Vec<Int>> =
        points.iter().map(|p| abs_tuple(p, opts.positive)).collect();
    if opts.positive {
        rows.sort();
        rows.dedup();
    }
    Value::Array(rows.iter().map(|p| tuple_json(p)).collect())
}

fn pairs_as_rows(points: &[(Int, Int)]) -> Vec<Vec<Int>> {
    points.iter().map(|(x, y)| vec![x.clone(), y.clone()]).collect()
}

fn result_json(analysis: &Analysis, opts: &RenderOptions) -> Value {
    match &analysis.kind {
        AnalysisKind::Pell { set, .. } => match set {
            SolutionSet::Empty { certificate } => {
                json!({"kind": "empty", "certificate": certificate_json(certificate)})
            }
            SolutionSet::Finite { points } => {
                json!({"kind": "finite", "points": points_json(&pairs_as_rows(points), opts)})
            }
            SolutionSet::ParametricLines { lines } => {
                json!({"kind": "parametric-lines", "lines": lines_json(lines)})
            }
            SolutionSet::Families { families } => {
                let rows: Vec<Value> =
                    families.iter().map(|f| pell_family_json(f, opts)).collect();
                json!({"kind": "families", "families": rows})
            }
        },
        AnalysisKind::Conic { outcome } => match &outcome.solutions {
            ConicSolutions::Empty { certificate } => {
                json!({"kind": "empty", "certificate": certificate_json(certificate)})
            }
            ConicSolutions::Finite { points } => {
                json!({"kind": "finite", "points": points_json(&pairs_as_rows(points), opts)})
            }
            ConicSolutions::ParametricLines { lines } => {
                json!({"kind": "parametric-lines", "lines": lines_json(lines)})
            }
            ConicSolutions::Families { families } => {
                let rows: Vec<Value> = families
                    .iter()
                    .map(|f| conic_family_json(&outcome.reduction, f, opts))
                    .collect();
                json!({"kind": "families", "families": rows})
            }
        },
        AnalysisKind::Diagonal { solutions, .. } => match solutions {
            NFormSolutions::Empty { certificate } => {
                json!({"kind": "empty", "certificate": certificate_json(certificate)})
            }
            NFormSolutions::Finite { points } => {
                json!({"kind": "finite", "points": points_json(points, opts)})
            }
            NFormSolutions::Families { automorphs, trivial_count, seeds, box_bound } => {
                let mats: Vec<Value> = automorphs
                    .iter()
                    .map(|m| {
                        Value::Array(m.rows().iter().map(|r| tuple_json(r)).collect())
                    })
                    .collect();
                json!({
                    "kind": "families",
                    "automorphs": mats,
                    "trivial_count": trivial_count,
                    "seeds": points_json(seeds, opts),
                    "box_bound": int_json(box_bound),
                })
            }
            NFormSolutions::NoAutomorph { box_solutions, bound_k, box_bound } => json!({
                "kind": "no-automorph",
                "box_solutions": points_json(box_solutions, opts),
                "bound": int_json(bound_k),
                "box_bound": int_json(box_bound),
            }),
        },
    }
}

/// Stable-keyed JSON document for an analysis.
pub fn render_json(analysis: &Analysis, opts: &RenderOptions) -> Value {
    let classification = match &analysis.kind {
        AnalysisKind::Pell { classification, .. } => classification.tag().to_string(),
        AnalysisKind::Conic { outcome } => outcome.classification.tag().to_string(),
        AnalysisKind::Diagonal { form, .. } => if form.mixed_signs() {
            "diagonal-mixed-signs"
        } else {
            "diagonal-same-sign"
        }
        .to_string(),
    };
    let mut root = json!({
        "equation": equation_json(&analysis.parsed),
        "classification": classification,
        "result": result_json(analysis, opts),
    });
    if let AnalysisKind::Conic { outcome } = &analysis.kind {
        root["reduction"] = reduction_json(&outcome.reduction);
    }
    root
}

/// Brute-force enumeration for any routed problem, as uniform tuples.
pub fn oracle_points(problem: &Problem, bound: &Int) -> Result<Vec<Vec<Int>>, crate::oracle::OracleError> {
    match problem {
        Problem::Pell { eq, .. } => Ok(pairs_as_rows(&crate::oracle::enumerate_pell(eq, bound)?)),
        Problem::Conic { conic, .. } => {
            Ok(pairs_as_rows(&crate::oracle::enumerate_conic(conic, bound)?))
        }
        Problem::Diagonal { form, .. } => crate::oracle::enumerate_diagonal(form, bound),
    }
}

/// Plain tuple listing used by the oracle subcommand.
pub fn render_points_text(points: &[Vec<Int>], positive: bool) -> String {
    let opts = RenderOptions { terms: 0, positive };
    let mut out = String::new();
    write_points_block(&mut out, points, &opts);
    out
}

/// JSON document for the oracle subcommand.
pub fn render_oracle_json(parsed: &ParsedEquation, points: &[Vec<Int>], positive: bool) -> Value {
    let opts = RenderOptions { terms: 0, positive };
    json!({
        "equation": equation_json(parsed),
        "classification": "oracle-box-enumeration",
        "result": {"kind": "finite", "points": points_json(points, &opts)},
    })
}
