//! Exact solver for second-degree Diophantine equations: classification,
//! finite and infinite-family solution sets, conic reduction, diagonal forms
//! in several variables, and a brute-force oracle for cross-checking.

pub mod api;
pub mod classify;
pub mod conic;
pub mod exact;
pub mod finite;
pub mod nform;
pub mod oracle;
pub mod parse;
pub mod pell;

pub use api::{
    analyze, classify_text, closed_form_text, exit_code, oracle_points, reduce_text,
    render_json, render_oracle_json, render_points_text, render_text, Analysis, AnalysisKind,
    AnalyzeError, AnalyzeOptions, RenderOptions,
};
pub use classify::{classify, congruence_certificate, default_moduli, Classification, PellEquation};
pub use conic::{
    affine_automorphism, certify_orbit, reduce, solve_conic, ConicError, ConicFamily,
    ConicOutcome, ConicReduction, ConicSolutions, GeneralConic, OrbitCertificate,
};
pub use exact::{Int, MatQ, Rat, Surd};
pub use finite::{solve_same_sign, solve_square_discriminant, Line, SameSignEquation};
pub use nform::{
    automorph_search, nform_fundamentals, nform_generate, nform_solve, Automorph, DiagonalForm,
    NFormError, NFormSolutions,
};
pub use oracle::{enumerate_conic, enumerate_diagonal, enumerate_pell, OracleError};
pub use parse::{parse_equation, route, ParseError, ParsedEquation, Problem};
pub use pell::{
    closed_form, descend, families_from_seeds, fundamental_solutions, generate, pell_fundamental,
    resolvent, solve, Automorphism, ClosedForm, EmptyCertificate, SolutionFamily, SolutionSet,
    SolveOptions,
};
