//! `train`, `tag` and `eval` subcommands.
//!
//! Exit codes: 0 on success, 1 for data or model errors, 2 for usage errors.
//! Diagnostics go to the error stream; data goes only to the declared output
//! paths (or standard output for `eval`).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::corpus::{
    load_dictionary, parse_test_file, parse_training_file, write_tagged_file, Dictionary,
};
use crate::decoder::tag_sentence_detailed;
use crate::eval::{evaluate, render_report, render_tsv};
use crate::features::Mode;
use crate::model::{read_model, write_model, EmissionVariant, ModelConfig, TrainedModel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "codemix-tagger",
    version,
    about = "Trigram HMM POS tagger for code-mixed text"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train a model from a word<TAB>lang<TAB>pos file.
    Train(TrainArgs),
    /// Tag a word<TAB>lang file with a trained model.
    Tag(TagArgs),
    /// Compare predicted tags against gold tags.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Constrained,
    Unconstrained,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    /// C(o,t) / C(o)
    Observation,
    /// C(o,t) / C(t)
    Conditional,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    model: PathBuf,
    #[arg(long, value_enum, default_value = "constrained")]
    mode: ModeArg,
    /// Broad-POS dictionary (word<TAB>VERB|PNON|CONJ); unconstrained mode only.
    #[arg(long)]
    dict: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "observation")]
    emission_variant: VariantArg,
    #[arg(long, default_value_t = 10)]
    max_suffix_len: usize,
    #[arg(long, default_value_t = 2)]
    rare_threshold: u64,
}

#[derive(Debug, Args)]
struct TagArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    gold: PathBuf,
    #[arg(long)]
    pred: PathBuf,
    /// Include one row per POS tag.
    #[arg(long)]
    per_tag: bool,
    /// Tab-separated output: OVERALL row plus one row per gold tag.
    #[arg(long)]
    tsv: bool,
}

/// Validated training options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub mode: Mode,
    pub emission_variant: EmissionVariant,
    pub max_suffix_len: usize,
    pub rare_threshold: u64,
    pub dict_path: Option<PathBuf>,
}

impl RunConfig {
    /// Unconstrained mode needs a dictionary; constrained mode may not use one.
    pub fn validate(&self) -> Result<(), String> {
        match (self.mode, &self.dict_path) {
            (Mode::Constrained, Some(path)) => Err(format!(
                "constrained mode forbids external resources (got --dict {})",
                path.display()
            )),
            (Mode::Unconstrained, None) => Err("unconstrained mode requires --dict".to_owned()),
            _ => Ok(()),
        }
    }

    pub fn model_config(&self) -> ModelConfig {
        ModelConfig {
            mode: self.mode,
            emission_variant: self.emission_variant,
            max_suffix_len: self.max_suffix_len,
            rare_threshold: self.rare_threshold,
        }
    }
}

impl From<&TrainArgs> for RunConfig {
    fn from(args: &TrainArgs) -> Self {
        RunConfig {
            mode: match args.mode {
                ModeArg::Constrained => Mode::Constrained,
                ModeArg::Unconstrained => Mode::Unconstrained,
            },
            emission_variant: match args.emission_variant {
                VariantArg::Observation => EmissionVariant::Observation,
                VariantArg::Conditional => EmissionVariant::Conditional,
            },
            max_suffix_len: args.max_suffix_len,
            rare_threshold: args.rare_threshold,
            dict_path: args.dict.clone(),
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents).map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, result: crate::Result<T>) -> Result<T, Failure> {
    result.map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

/// Runs the command line with explicit output streams and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match &cli.command {
        Command::Train(args) => cmd_train(args, stderr),
        Command::Tag(args) => cmd_tag(args, stderr),
        Command::Eval(args) => cmd_eval(args, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            failure.code
        }
    }
}

fn cmd_train(args: &TrainArgs, stderr: &mut dyn Write) -> CmdResult {
    let config = RunConfig::from(args);
    config.validate().map_err(Failure::usage)?;

    let corpus = in_file(&args.input, parse_training_file(read(&args.input)?))?;
    let dict: Option<Dictionary> = match &config.dict_path {
        Some(path) => {
            let dict = in_file(path, load_dictionary(read(path)?))?;
            for warning in dict.warnings() {
                let _ = writeln!(stderr, "warning: {}: {warning}", path.display());
            }
            Some(dict)
        }
        None => None,
    };

    let model = in_file(
        &args.input,
        TrainedModel::train(&corpus, dict, config.model_config()),
    )?;
    write(&args.model, &write_model(&model))?;

    let l = model.lambdas();
    let _ = writeln!(
        stderr,
        "trained on {} sentences, {} tokens, {} tags ({} mode)",
        corpus.len(),
        model.counts().token_total(),
        model.tag_set().len(),
        config.mode
    );
    let _ = writeln!(
        stderr,
        "lambdas: {:.6} {:.6} {:.6}",
        l.unigram, l.bigram, l.trigram
    );
    Ok(())
}

fn cmd_tag(args: &TagArgs, stderr: &mut dyn Write) -> CmdResult {
    let model_bytes = read(&args.model)?;
    let model_text = std::str::from_utf8(&model_bytes).map_err(|_| {
        Failure::data(format!(
            "{}: model is not valid UTF-8",
            args.model.display()
        ))
    })?;
    let model = in_file(&args.model, read_model(model_text))?;
    let sentences = in_file(&args.input, parse_test_file(read(&args.input)?))?;

    let tagged = sentences
        .par_iter()
        .map(|s| tag_sentence_detailed(&model, s))
        .collect::<crate::Result<Vec<_>>>();
    let tagged = in_file(&args.input, tagged)?;
    let fallbacks = tagged.iter().filter(|(_, d)| d.fallback_used).count();
    let sentences: Vec<_> = tagged.into_iter().map(|(s, _)| s).collect();
    let text = in_file(&args.output, write_tagged_file(&sentences))?;
    write(&args.output, &text)?;

    let _ = writeln!(stderr, "tagged {} sentences", sentences.len());
    if fallbacks > 0 {
        let _ = writeln!(
            stderr,
            "warning: {fallbacks} sentences had no non-zero path; majority tag used"
        );
    }
    Ok(())
}

fn cmd_eval(args: &EvalArgs, stdout: &mut dyn Write) -> CmdResult {
    let gold = in_file(&args.gold, parse_training_file(read(&args.gold)?))?;
    let pred = in_file(&args.pred, parse_training_file(read(&args.pred)?))?;
    let report = evaluate(&gold, &pred).map_err(|e| Failure::data(e.to_string()))?;
    let text = if args.tsv {
        render_tsv(&report)
    } else {
        render_report(&report, args.per_tag)
    };
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Failure::data(format!("writing report: {e}")))
}
