//! `dioph`: parse a second-degree Diophantine equation, route it to the
//! right engine, and print families, finite sets, or emptiness proofs.

use clap::{Parser, Subcommand, ValueEnum};
use dioph_core::{
    analyze, automorph_search, classify_text, closed_form_text, exit_code, oracle_points,
    parse_equation, reduce_text, render_json, render_oracle_json, render_points_text,
    render_text, route, AnalyzeOptions, DiagonalForm, Int, RenderOptions,
};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dioph",
    version,
    about = "Exact solver for second-degree Diophantine equations",
    long_about = "Solves a*x^2 - b*y^2 + c = 0 families, general conics, and diagonal forms \
                  in several variables, entirely in exact integer arithmetic."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an equation: families, finite sets, or a proof of emptiness
    Solve {
        /// Equation text, e.g. "2x^2 - 3y^2 = 5"
        equation: String,
        /// Members listed per family
        #[arg(long, default_value_t = 5)]
        terms: i64,
        /// Override the fundamental-scan bound (two variables) or the
        /// enumeration box (diagonal forms)
        #[arg(long)]
        bound: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print absolute values of coordinates
        #[arg(long)]
        positive: bool,
    },
    /// Print the solution regime without solving
    Classify {
        equation: String,
    },
    /// Print per-family closed forms with exact surd coefficients
    ClosedForm {
        equation: String,
    },
    /// Print the canonical reduction of a two-variable equation
    Reduce {
        equation: String,
    },
    /// Search integer automorphs of a diagonal form
    Automorph {
        /// Comma-separated diagonal coefficients, e.g. 1,1,-1
        #[arg(long, required = true, value_delimiter = ',', allow_hyphen_values = true)]
        form: Vec<String>,
        /// Entry bound for the search
        #[arg(long, default_value_t = 5)]
        bound: u64,
        /// List signed permutations too
        #[arg(long)]
        include_trivial: bool,
    },
    /// Brute-force enumeration within a coordinate box
    Oracle {
        equation: String,
        /// Per-coordinate bound
        #[arg(long)]
        bound: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Print absolute values of coordinates
        #[arg(long)]
        positive: bool,
    },
}

fn parse_int(s: &str) -> Result<Int, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("invalid integer `{s}`"))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Solve { equation, terms, bound, format, positive } => {
            let parsed = parse_equation(&equation).map_err(|e| e.to_string())?;
            let problem = route(&parsed).map_err(|e| e.to_string())?;
            let mut opts = AnalyzeOptions::default();
            if let Some(b) = bound {
                let b = parse_int(&b)?;
                if b < Int::from(0) {
                    return Err(format!("bound must be nonnegative, got {b}"));
                }
                opts.solve.y_bound = Some(b.clone());
                opts.box_bound = b;
            }
            let analysis = analyze(parsed, problem, &opts).map_err(|e| e.to_string())?;
            let render = RenderOptions { terms, positive };
            match format {
                Format::Text => print!("{}", render_text(&analysis, &render)),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&render_json(&analysis, &render))
                        .expect("json rendering never fails")
                ),
            }
            Ok(ExitCode::from(exit_code(&analysis)))
        }
        Command::Classify { equation } => {
            let parsed = parse_equation(&equation).map_err(|e| e.to_string())?;
            let problem = route(&parsed).map_err(|e| e.to_string())?;
            let text = classify_text(&parsed, &problem).map_err(|e| e.to_string())?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::ClosedForm { equation } => {
            let parsed = parse_equation(&equation).map_err(|e| e.to_string())?;
            let problem = route(&parsed).map_err(|e| e.to_string())?;
            let analysis =
                analyze(parsed, problem, &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
            let text = closed_form_text(&analysis).map_err(|e| e.to_string())?;
            print!("{text}");
            Ok(ExitCode::from(exit_code(&analysis)))
        }
        Command::Reduce { equation } => {
            let parsed = parse_equation(&equation).map_err(|e| e.to_string())?;
            let problem = route(&parsed).map_err(|e| e.to_string())?;
            let text = reduce_text(&parsed, &problem).map_err(|e| e.to_string())?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Automorph { form, bound, include_trivial } => {
            let coeffs = form
                .iter()
                .map(|s| parse_int(s))
                .collect::<Result<Vec<Int>, String>>()?;
            let form =
                DiagonalForm::new(coeffs, Int::from(0)).map_err(|e| e.to_string())?;
            let k = Int::from(bound);
            let mats = automorph_search(&form, &k, !include_trivial);
            println!(
                "{} automorph{} with entries within {}{}:",
                mats.len(),
                if mats.len() == 1 { "" } else { "s" },
                k,
                if include_trivial { "" } else { " (excluding signed permutations)" }
            );
            for m in &mats {
                println!("  {m}");
            }
            if mats.is_empty() && !include_trivial {
                println!("inconclusive: a larger bound may still contain one");
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { equation, bound, format, positive } => {
            let parsed = parse_equation(&equation).map_err(|e| e.to_string())?;
            let problem = route(&parsed).map_err(|e| e.to_string())?;
            let b = parse_int(&bound)?;
            let points = oracle_points(&problem, &b).map_err(|e| e.to_string())?;
            match format {
                Format::Text => print!("{}", render_points_text(&points, positive)),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&render_oracle_json(&parsed, &points, positive))
                        .expect("json rendering never fails")
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
