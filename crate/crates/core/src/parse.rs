//! Equation front door: a whitespace-insensitive grammar for bivariate
//! conics and n-variable diagonal forms, folding `lhs = rhs` into canonical
//! `… = 0` terms and routing to the matching solver input.
//!
//! Grammar:
//! `equation := poly "=" poly`,
//! `poly := ["+"|"-"] term {("+"|"-") term}`,
//! `term := integer | [integer] var [pow] [var [pow]]`,
//! `pow := "^" ("1"|"2")`,
//! `var := "x"|"y"|"z"|"x" digits`.

use crate::classify::PellEquation;
use crate::conic::GeneralConic;
use crate::exact::Int;
use crate::nform::DiagonalForm;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("degree {degree} at token `{token}` at byte {pos}")]
    DegreeTooHigh { degree: u32, token: String, pos: usize },
    #[error("unknown token `{token}` at byte {pos}")]
    UnknownToken { token: String, pos: usize },
    #[error("empty {side} side of `=` at byte {pos}")]
    EmptySide { side: &'static str, pos: usize },
    #[error("duplicate `=` at byte {pos}")]
    DuplicateEquals { pos: usize },
    #[error("expected `=` in equation")]
    MissingEquals,
    #[error("expected a term at byte {pos}, found `{found}`")]
    ExpectedTerm { found: String, pos: usize },
    #[error("exponent must be 1 or 2, got `{token}` at byte {pos}")]
    InvalidExponent { token: String, pos: usize },
    #[error("no second-degree term in equation")]
    NoQuadraticTerm,
    #[error("equation needs at least two variables")]
    SingleVariable,
    #[error("named variables (x, y, z) cannot be mixed with indexed variables (x1, x2, …)")]
    MixedIndexing,
    #[error("term `{token}` is not allowed here: outside two-variable x,y equations only squared variables and constants are supported")]
    NonDiagonalTerm { token: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(Int),
    Var(String),
    Caret,
    Plus,
    Minus,
    Equals,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    pos: usize,
    text: String,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push(Spanned { tok: Tok::Plus, pos: start, text: "+".into() });
                i += 1;
            }
            '-' => {
                out.push(Spanned { tok: Tok::Minus, pos: start, text: "-".into() });
                i += 1;
            }
            '^' => {
                out.push(Spanned { tok: Tok::Caret, pos: start, text: "^".into() });
                i += 1;
            }
            '=' => {
                out.push(Spanned { tok: Tok::Equals, pos: start, text: "=".into() });
                i += 1;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &text[start..i];
                let value: Int = text.parse().expect("digit run parses");
                out.push(Spanned { tok: Tok::Int(value), pos: start, text: text.into() });
            }
            'x' => {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let name = &text[start..i];
                out.push(Spanned { tok: Tok::Var(name.into()), pos: start, text: name.into() });
            }
            'y' | 'z' => {
                i += 1;
                if i < bytes.len() && bytes[i].is_ascii_digit() {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    return Err(ParseError::UnknownToken {
                        token: text[start..i].into(),
                        pos: start,
                    });
                }
                out.push(Spanned {
                    tok: Tok::Var(c.to_string()),
                    pos: start,
                    text: c.to_string(),
                });
            }
            _ => {
                return Err(ParseError::UnknownToken { token: c.to_string(), pos: start });
            }
        }
    }
    Ok(out)
}

type Monomial = BTreeMap<String, u32>;

struct TermParser<'a> {
    toks: &'a [Spanned],
    i: usize,
}

impl<'a> TermParser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.i)
    }

    fn found(&self) -> (String, usize) {
        match self.peek() {
            Some(s) => (s.text.clone(), s.pos),
            None => ("end of input".into(), self.toks.last().map_or(0, |s| s.pos + s.text.len())),
        }
    }

    /// `term := integer | [integer] var [pow] [var [pow]]`; variable factors
    /// accumulate exponents, and total degree above 2 is rejected with the
    /// term's source text.
    fn term(&mut self) -> Result<(Int, Monomial), ParseError> {
        let mut coeff = Int::one();
        let mut monomial = Monomial::new();
        let mut degree: u32 = 0;
        let mut consumed = String::new();
        let mut saw_anything = false;
        if let Some(Spanned { tok: Tok::Int(v), text, .. }) = self.peek() {
            coeff = v.clone();
            consumed.push_str(text);
            saw_anything = true;
            self.i += 1;
        }
        while let Some(Spanned { tok: Tok::Var(name), text, pos }) = self.peek() {
            let (name, var_text, var_pos) = (name.clone(), text.clone(), *pos);
            self.i += 1;
            consumed.push_str(&var_text);
            saw_anything = true;
            let mut exp: u32 = 1;
            if matches!(self.peek().map(|s| &s.tok), Some(Tok::Caret)) {
                self.i += 1;
                consumed.push('^');
                match self.peek() {
                    Some(Spanned { tok: Tok::Int(v), text, pos }) => {
                        consumed.push_str(text);
                        if v > &Int::from(2) {
                            return Err(ParseError::DegreeTooHigh {
                                degree: u32::try_from(v).unwrap_or(u32::MAX),
                                token: format!("{var_text}^{text}"),
                                pos: var_pos,
                            });
                        }
                        if v.is_zero() {
                            return Err(ParseError::InvalidExponent {
                                token: format!("{var_text}^{text}"),
                                pos: *pos,
                            });
                        }
                        exp = u32::try_from(v).expect("1 or 2");
                        self.i += 1;
                    }
                    _ => {
                        let (found, pos) = self.found();
                        return Err(ParseError::InvalidExponent { token: found, pos });
                    }
                }
            }
            degree += exp;
            if degree > 2 {
                return Err(ParseError::DegreeTooHigh {
                    degree,
                    token: consumed,
                    pos: var_pos,
                });
            }
            *monomial.entry(name).or_insert(0) += exp;
        }
        if !saw_anything {
            let (found, pos) = self.found();
            return Err(ParseError::ExpectedTerm { found, pos });
        }
        Ok((coeff, monomial))
    }

    /// `poly := ["+"|"-"] term {("+"|"-") term}`
    fn poly(&mut self) -> Result<Vec<(Int, Monomial)>, ParseError> {
        let mut out = Vec::new();
        let mut sign = Int::one();
        if let Some(s) = self.peek() {
            match s.tok {
                Tok::Plus => self.i += 1,
                Tok::Minus => {
                    sign = -sign;
                    self.i += 1;
                }
                _ => {}
            }
        }
        loop {
            let (coeff, monomial) = self.term()?;
            out.push((sign.clone() * coeff, monomial));
            match self.peek() {
                None => break,
                Some(s) => match s.tok {
                    Tok::Plus => {
                        sign = Int::one();
                        self.i += 1;
                    }
                    Tok::Minus => {
                        sign = -Int::one();
                        self.i += 1;
                    }
                    _ => {
                        let (found, pos) = self.found();
                        return Err(ParseError::ExpectedTerm { found, pos });
                    }
                },
            }
        }
        Ok(out)
    }
}

/// Canonical form of one input equation: everything moved to the left side,
/// like terms merged, zero terms dropped. `terms` holds (coefficient,
/// exponent vector over `variables`), quadratic part first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedEquation {
    pub variables: Vec<String>,
    pub terms: Vec<(Int, Vec<u32>)>,
}

/// Numeric suffix of an indexed variable name.
fn var_index(name: &str) -> Option<u64> {
    name.strip_prefix('x')
        .filter(|s| !s.is_empty())
        .and_then(|s| s.parse().ok())
}

fn variable_order(a: &String, b: &String) -> std::cmp::Ordering {
    match (var_index(a), var_index(b)) {
        (Some(i), Some(j)) => i.cmp(&j).then_with(|| a.cmp(b)),
        _ => a.cmp(b),
    }
}

pub fn parse_equation(text: &str) -> Result<ParsedEquation, ParseError> {
    let toks = tokenize(text)?;
    let eq_positions: Vec<usize> = toks
        .iter()
        .enumerate()
        .filter(|(_, s)| s.tok == Tok::Equals)
        .map(|(i, _)| i)
        .collect();
    let split = match eq_positions.as_slice() {
        [] => return Err(ParseError::MissingEquals),
        [one] => *one,
        [_, second, ..] => {
            return Err(ParseError::DuplicateEquals { pos: toks[*second].pos })
        }
    };
    let (lhs, rhs) = (&toks[..split], &toks[split + 1..]);
    if lhs.is_empty() {
        return Err(ParseError::EmptySide { side: "left", pos: toks[split].pos });
    }
    if rhs.is_empty() {
        return Err(ParseError::EmptySide { side: "right", pos: toks[split].pos });
    }
    let mut terms = TermParser { toks: lhs, i: 0 }.poly()?;
    let rhs_terms = TermParser { toks: rhs, i: 0 }.poly()?;
    for (coeff, monomial) in rhs_terms {
        terms.push((-coeff, monomial));
    }
    // merge like monomials and drop cancellations
    let mut merged: BTreeMap<Vec<(String, u32)>, Int> = BTreeMap::new();
    for (coeff, monomial) in terms {
        let key: Vec<(String, u32)> = monomial.into_iter().filter(|(_, e)| *e > 0).collect();
        *merged.entry(key).or_insert_with(Int::zero) += coeff;
    }
    merged.retain(|_, c| !c.is_zero());
    let mut variables: Vec<String> = merged
        .keys()
        .flat_map(|k| k.iter().map(|(n, _)| n.clone()))
        .collect();
    variables.sort_by(variable_order);
    variables.dedup();
    let mut terms: Vec<(Int, Vec<u32>)> = merged
        .into_iter()
        .map(|(key, coeff)| {
            let mut exps = vec![0u32; variables.len()];
            for (name, e) in key {
                let i = variables.iter().position(|v| v == &name).expect("collected above");
                exps[i] = e;
            }
            (coeff, exps)
        })
        .collect();
    // display order: total degree descending, then earlier variables first
    terms.sort_by(|(_, ea), (_, eb)| {
        let da: u32 = ea.iter().sum();
        let db: u32 = eb.iter().sum();
        db.cmp(&da).then_with(|| eb.cmp(ea))
    });
    Ok(ParsedEquation { variables, terms })
}

impl ParsedEquation {
    fn coefficient(&self, exps: &[u32]) -> Int {
        self.terms
            .iter()
            .find(|(_, e)| e == exps)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(Int::zero)
    }

    /// Canonical rendering `… = 0`; reparsing it reproduces `self`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0 = 0".into();
        }
        let mut out = String::new();
        for (i, (coeff, exps)) in self.terms.iter().enumerate() {
            let mag = coeff.abs();
            if i == 0 {
                if coeff.is_negative() {
                    out.push('-');
                }
            } else if coeff.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut body = String::new();
            for (name, e) in self.variables.iter().zip(exps) {
                match e {
                    0 => {}
                    1 => body.push_str(name),
                    _ => {
                        body.push_str(name);
                        body.push_str("^2");
                    }
                }
            }
            if body.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                }
                out.push_str(&body);
            }
        }
        out.push_str(" = 0");
        out
    }
}

impl fmt::Display for ParsedEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// A parsed equation routed to the solver that owns it. Labels preserve the
/// input variable names for rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Problem {
    /// Pure mixed-sign bivariate `a·x² − b·y² + c = 0`.
    Pell { eq: PellEquation, labels: [String; 2] },
    /// Any other bivariate equation in x and y.
    Conic { conic: GeneralConic, labels: [String; 2] },
    /// Squares-only form in named (with z) or indexed variables.
    Diagonal { form: DiagonalForm, labels: Vec<String> },
}

/// Chooses the solver for a parsed equation: two plain x,y variables go to
/// the bivariate engines (the pure mixed-sign shape directly to the infinite
/// -family engine), anything with z or indexed variables to diagonal forms.
pub fn route(parsed: &ParsedEquation) -> Result<Problem, ParseError> {
    if !parsed.terms.iter().any(|(_, e)| e.iter().sum::<u32>() == 2) {
        return Err(ParseError::NoQuadraticTerm);
    }
    let indexed = parsed.variables.iter().filter(|v| var_index(v).is_some()).count();
    if indexed > 0 && indexed < parsed.variables.len() {
        return Err(ParseError::MixedIndexing);
    }
    if parsed.variables.len() < 2 {
        return Err(ParseError::SingleVariable);
    }
    let bivariate_xy = indexed == 0 && parsed.variables == ["x".to_string(), "y".to_string()];
    if bivariate_xy {
        let a = parsed.coefficient(&[2, 0]);
        let b = parsed.coefficient(&[1, 1]);
        let c = parsed.coefficient(&[0, 2]);
        let d = parsed.coefficient(&[1, 0]);
        let e = parsed.coefficient(&[0, 1]);
        let f = parsed.coefficient(&[0, 0]);
        let labels = [parsed.variables[0].clone(), parsed.variables[1].clone()];
        if b.is_zero() && d.is_zero() && e.is_zero() && (&a * &c).is_negative() {
            let eq = if a.is_positive() {
                PellEquation::new(a, -c, f)
            } else {
                PellEquation::new(-a, c, -f)
            }
            .expect("both coefficients positive by construction");
            return Ok(Problem::Pell { eq, labels });
        }
        let conic = GeneralConic::new(a, b, c, d, e, f).expect("degree-2 term present");
        return Ok(Problem::Conic { conic, labels });
    }
    // diagonal route: squared single variables plus a constant
    let mut coeffs = vec![Int::zero(); parsed.variables.len()];
    let mut b = Int::zero();
    for (coeff, exps) in &parsed.terms {
        let support: Vec<usize> = exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
            .collect();
        match support.as_slice() {
            [] => b = -coeff,
            [i] if exps[*i] == 2 => coeffs[*i] = coeff.clone(),
            _ => {
                let token: String = parsed
                    .variables
                    .iter()
                    .zip(exps)
                    .filter(|(_, e)| **e > 0)
                    .map(|(name, e)| if *e == 2 { format!("{name}^2") } else { name.clone() })
                    .collect();
                return Err(ParseError::NonDiagonalTerm { token });
            }
        }
    }
    let form = DiagonalForm::new(coeffs, b).expect("n >= 2 and nonzero coefficients checked");
    Ok(Problem::Diagonal { form, labels: parsed.variables.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn parse(text: &str) -> ParsedEquation {
        parse_equation(text).unwrap()
    }

    #[test]
    fn parses_mixed_sign_bivariate() {
        let p = parse("2x^2 - 3y^2 = 5");
        assert_eq!(p.variables, vec!["x", "y"]);
        assert_eq!(
            p.terms,
            vec![
                (int(2), vec![2, 0]),
                (int(-3), vec![0, 2]),
                (int(-5), vec![0, 0]),
            ]
        );
        match route(&p).unwrap() {
            Problem::Pell { eq, .. } => {
                assert_eq!((eq.a(), eq.b(), eq.c()), (&int(2), &int(3), &int(-5)));
            }
            other => panic!("expected pell, got {other:?}"),
        }
    }

    #[test]
    fn parses_general_conic() {
        let p = parse("9x^2 + 6xy - 13y^2 - 6x - 16y + 20 = 0");
        match route(&p).unwrap() {
            Problem::Conic { conic, .. } => {
                assert_eq!(conic.a(), &int(9));
                assert_eq!(conic.b(), &int(6));
                assert_eq!(conic.c(), &int(-13));
                assert_eq!(conic.d(), &int(-6));
                assert_eq!(conic.e(), &int(-16));
                assert_eq!(conic.f(), &int(20));
            }
            other => panic!("expected conic, got {other:?}"),
        }
    }

    #[test]
    fn negated_leading_coefficient_normalizes_to_pell() {
        match route(&parse("-x^2 + 3y^2 = 2")).unwrap() {
            Problem::Pell { eq, .. } => {
                assert_eq!((eq.a(), eq.b(), eq.c()), (&int(1), &int(3), &int(2)));
            }
            other => panic!("expected pell, got {other:?}"),
        }
    }

    #[test]
    fn same_sign_and_cross_term_shapes_route_to_conic() {
        assert!(matches!(
            route(&parse("x^2 + y^2 + 1 = 0")).unwrap(),
            Problem::Conic { .. }
        ));
        assert!(matches!(
            route(&parse("xy - 2 = 0")).unwrap(),
            Problem::Conic { .. }
        ));
        // linear terms force the conic route even with mixed square signs
        assert!(matches!(
            route(&parse("x^2 - 3y^2 - x = 0")).unwrap(),
            Problem::Conic { .. }
        ));
    }

    #[test]
    fn routes_three_variables_to_diagonal() {
        let p = parse("x^2 + y^2 - z^2 + 1 = 0");
        match route(&p).unwrap() {
            Problem::Diagonal { form, labels } => {
                assert_eq!(labels, vec!["x", "y", "z"]);
                assert_eq!(form.coeffs(), &[int(1), int(1), int(-1)]);
                assert_eq!(form.b(), &int(-1));
            }
            other => panic!("expected diagonal, got {other:?}"),
        }
    }

    #[test]
    fn routes_indexed_variables_to_diagonal_in_numeric_order() {
        let p = parse("x2^2 - 3x1^2 + x10^2 = 4");
        match route(&p).unwrap() {
            Problem::Diagonal { form, labels } => {
                assert_eq!(labels, vec!["x1", "x2", "x10"]);
                assert_eq!(form.coeffs(), &[int(-3), int(1), int(1)]);
                assert_eq!(form.b(), &int(4));
            }
            other => panic!("expected diagonal, got {other:?}"),
        }
    }

    #[test]
    fn degree_errors_carry_token_and_position() {
        assert_eq!(
            parse_equation("x^3 = 1").unwrap_err(),
            ParseError::DegreeTooHigh { degree: 3, token: "x^3".into(), pos: 0 }
        );
        assert_eq!(
            parse_equation("2 + x^2y = 1").unwrap_err(),
            ParseError::DegreeTooHigh { degree: 3, token: "x^2y".into(), pos: 7 }
        );
        assert_eq!(
            parse_equation("x^3 = 1").unwrap_err().to_string(),
            "degree 3 at token `x^3` at byte 0"
        );
    }

    #[test]
    fn structural_errors_are_distinct() {
        assert_eq!(
            parse_equation("x^2 + w = 0").unwrap_err(),
            ParseError::UnknownToken { token: "w".into(), pos: 6 }
        );
        assert_eq!(
            parse_equation(" = 1").unwrap_err(),
            ParseError::EmptySide { side: "left", pos: 1 }
        );
        assert_eq!(
            parse_equation("x^2 = ").unwrap_err(),
            ParseError::EmptySide { side: "right", pos: 4 }
        );
        assert_eq!(
            parse_equation("x^2 = 1 = 2").unwrap_err(),
            ParseError::DuplicateEquals { pos: 8 }
        );
        assert_eq!(parse_equation("x^2 - 1").unwrap_err(), ParseError::MissingEquals);
        assert_eq!(
            parse_equation("x^2 + - y^2 = 1").unwrap_err(),
            ParseError::ExpectedTerm { found: "-".into(), pos: 6 }
        );
        assert_eq!(
            parse_equation("y2 = 1").unwrap_err(),
            ParseError::UnknownToken { token: "y2".into(), pos: 0 }
        );
        assert_eq!(
            parse_equation("x^0 = 1").unwrap_err(),
            ParseError::InvalidExponent { token: "x^0".into(), pos: 2 }
        );
    }

    #[test]
    fn semantic_errors_are_distinct() {
        assert_eq!(route(&parse("x^2 = 4")).unwrap_err(), ParseError::SingleVariable);
        assert_eq!(
            route(&parse("x^2 + x1^2 = 1")).unwrap_err(),
            ParseError::MixedIndexing
        );
        assert_eq!(
            route(&parse("x^2 + y = x^2 + 1")).unwrap_err(),
            ParseError::NoQuadraticTerm
        );
        assert_eq!(
            route(&parse("xz - 2 = 0")).unwrap_err(),
            ParseError::NonDiagonalTerm { token: "xz".into() }
        );
        assert_eq!(
            route(&parse("x^2 + y^2 - z^2 + z = 0")).unwrap_err(),
            ParseError::NonDiagonalTerm { token: "z".into() }
        );
    }

    #[test]
    fn folding_merges_and_cancels() {
        let p = parse("x^2 + xy + 1 = xy - y^2 + 1");
        assert_eq!(
            p.terms,
            vec![(int(1), vec![2, 0]), (int(1), vec![0, 2])]
        );
        // repeated variable factors accumulate exponents
        let q = parse("x x - y y = 0");
        assert_eq!(
            q.terms,
            vec![(int(1), vec![2, 0]), (int(-1), vec![0, 2])]
        );
    }

    #[test]
    fn render_is_canonical_and_reparses() {
        for (input, rendered) in [
            ("2x^2 - 3y^2 = 5", "2x^2 - 3y^2 - 5 = 0"),
            ("9x^2+6xy-13y^2-6x-16y+20=0", "9x^2 + 6xy - 13y^2 - 6x - 16y + 20 = 0"),
            ("x^2 + y^2 - z^2 + 1 = 0", "x^2 + y^2 - z^2 + 1 = 0"),
            ("- x^1 y^1 = 2", "-xy - 2 = 0"),
        ] {
            let p = parse(input);
            assert_eq!(p.render(), rendered);
            assert_eq!(parse(&p.render()), p, "round trip of {input}");
        }
    }

    #[test]
    fn large_coefficients_survive() {
        let p = parse("123456789012345678901234567890x^2 - y^2 = 1");
        assert_eq!(
            p.terms[0].0.to_string(),
            "123456789012345678901234567890"
        );
    }
}
