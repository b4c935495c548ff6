use std::fs::File;
use std::io::BufReader;

use askdetect::eval::{load_corpus, load_validation, run_configs, EvalError};
use askdetect::Resources;

use crate::args::{CaseSelection, EvaluateArgs, Format};
use crate::{build_config, input_error, CliError};

fn eval_error(e: EvalError) -> CliError {
    match e {
        EvalError::Alignment { .. } => CliError::Alignment(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

pub fn run(resources: &Resources, args: &EvaluateArgs) -> Result<(), CliError> {
    let cases: Vec<u8> = match args.case {
        CaseSelection::All if args.overrides.any() => {
            return Err(CliError::Input(
                "feature overrides conflict with --case all; pick a single case to override".into(),
            ))
        }
        CaseSelection::All => (0..7).collect(),
        CaseSelection::One(n) => vec![n],
    };
    let configs = cases
        .iter()
        .map(|&n| Ok((n, build_config(n, &args.overrides, resources)?)))
        .collect::<Result<Vec<_>, CliError>>()?;

    let gold_file =
        File::open(&args.gold).map_err(|e| CliError::Input(format!("{}: {e}", args.gold.display())))?;
    let gold = load_validation(BufReader::new(gold_file))
        .map_err(|e| CliError::Input(format!("{}: {e}", args.gold.display())))?;
    let corpus = load_corpus(&args.corpus).map_err(eval_error)?;
    let report = run_configs(&corpus, &gold, resources, &configs).map_err(eval_error)?;

    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).map_err(input_error)?),
        Format::Table => print!("{}", report.to_table()),
    }
    Ok(())
}
