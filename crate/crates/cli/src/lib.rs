//! Command-line front end. Every command is a thin wrapper over the core
//! library and produces an [`Output`] that prints as text or JSON.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use strictify_core::{
    canonical_d, emit_dot, emit_svg, equal_structural, layout, nonstrictify, normalize_with_report,
    parse_mor_c, parse_mor_d, parse_obj, parse_obj_d, parse_signature, strictify_expand,
    strictify_shallow, typecheck_c, typecheck_d, FinModel, ModelConfig, ObjD, Signature,
};

#[derive(Debug, Parser)]
#[command(name = "strictify", version, about = "Strictification and coherence for free monoidal categories")]
pub struct Cli {
    /// Signature file (`obj <name>` / `gen <name> : <obj> -> <obj>` lines).
    /// Defaults to the single base object `W`.
    #[arg(long, global = true)]
    pub sig: Option<PathBuf>,
    /// Print a JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Finite model description (`seed`, `default_size`, `size.<base>`).
    #[arg(long, global = true)]
    pub model: Option<PathBuf>,
    /// Rewrite step budget for normalization.
    #[arg(long, global = true)]
    pub max_steps: Option<usize>,
    /// Output file for rendered diagrams.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive the type of a non-strict or strict term.
    Typecheck { term: String },
    /// Translate a non-strict term into the strict category.
    Strictify {
        term: String,
        #[arg(long, value_enum, default_value_t = Mode::Shallow)]
        mode: Mode,
    },
    /// Translate a strict term back into the non-strict category.
    Nonstrictify {
        term: String,
        /// Keep identity composites and tensors of identities.
        #[arg(long)]
        raw: bool,
    },
    /// Normalize adapters and print the rewrite trace.
    Normalize { term: String },
    /// Canonical adapter arrow between two objects (`A` or `[A|B]`).
    Canonical { from: String, to: String },
    /// Decide equality of two non-strict terms.
    Equal { left: String, right: String },
    /// Render a strict term as a string diagram.
    Render {
        term: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Built-in examples.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Shallow,
    Expand,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    Parity,
}

/// Stable result schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Output {
    pub command: String,
    pub input: Vec<String>,
    pub output: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<String>,
}

impl Output {
    fn new(command: &str, input: &[&str], output: String) -> Self {
        Output {
            command: command.to_string(),
            input: input.iter().map(|s| s.to_string()).collect(),
            output,
            trace: None,
            verdict: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(v) = &self.verdict {
            s.push_str(v);
            s.push('\n');
        }
        if !self.output.is_empty() {
            s.push_str(&self.output);
            if !self.output.ends_with('\n') {
                s.push('\n');
            }
        }
        for line in self.trace.iter().flatten() {
            s.push_str("  ");
            s.push_str(line);
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] strictify_core::Error),
    #[error("cannot access `{path}`: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn to_json(&self, command: &str) -> String {
        serde_json::json!({ "command": command, "error": self.to_string() }).to_string()
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_signature(cli: &Cli) -> Result<Signature, CliError> {
    match &cli.sig {
        Some(p) => Ok(parse_signature(&read(p)?)?),
        None => Ok(Signature::catw()),
    }
}

/// `A` is the one-wire object `[A]`.
fn parse_strict_obj(text: &str) -> Result<ObjD, CliError> {
    if text.trim_start().starts_with('[') {
        Ok(parse_obj_d(text)?)
    } else {
        Ok(ObjD::wire(parse_obj(text)?))
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Typecheck { .. } => "typecheck",
            Command::Strictify { .. } => "strictify",
            Command::Nonstrictify { .. } => "nonstrictify",
            Command::Normalize { .. } => "normalize",
            Command::Canonical { .. } => "canonical",
            Command::Equal { .. } => "equal",
            Command::Render { .. } => "render",
            Command::Demo { .. } => "demo",
        }
    }
}

fn render(t: &strictify_core::MorD, sig: &Signature, format: Format) -> Result<String, CliError> {
    let l = layout(t, sig)?;
    Ok(match format {
        Format::Dot => emit_dot(&l),
        Format::Svg => emit_svg(&l),
    })
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let sig = load_signature(cli)?;
    let name = cli.command.name();
    Ok(match &cli.command {
        Command::Typecheck { term } => {
            let (kind, dom, cod) = match parse_mor_c(term) {
                Ok(f) => {
                    let (d, c) = typecheck_c(&f, &sig)?;
                    ("non-strict", d.to_string(), c.to_string())
                }
                Err(c_err) => match parse_mor_d(term) {
                    Ok(t) => {
                        let (d, c) = typecheck_d(&t, &sig)?;
                        ("strict", d.to_string(), c.to_string())
                    }
                    Err(_) => return Err(c_err.into()),
                },
            };
            let mut out = Output::new(name, &[term], format!("{dom} -> {cod}"));
            out.verdict = Some(kind.to_string());
            out
        }
        Command::Strictify { term, mode } => {
            let f = parse_mor_c(term)?;
            let t = match mode {
                Mode::Shallow => strictify_shallow(&f, &sig)?,
                Mode::Expand => strictify_expand(&f, &sig)?,
            };
            Output::new(name, &[term], t.to_string())
        }
        Command::Nonstrictify { term, raw } => {
            let t = parse_mor_d(term)?;
            let f = nonstrictify(&t, &sig)?;
            let f = if *raw { f } else { f.simplify_identities() };
            Output::new(name, &[term], f.to_string())
        }
        Command::Normalize { term } => {
            let t = parse_mor_d(term)?;
            let report = normalize_with_report(&t, &sig, cli.max_steps)?;
            let mut out = Output::new(name, &[term], report.output.to_string());
            out.trace = Some(report.trace.iter().map(ToString::to_string).collect());
            out.verdict = Some(format!("cancelled pairs: {}", report.cancelled_pairs));
            out
        }
        Command::Canonical { from, to } => {
            let a = parse_strict_obj(from)?;
            let b = parse_strict_obj(to)?;
            for w in a.wires().iter().chain(b.wires()) {
                sig.check_obj(w)?;
            }
            Output::new(name, &[from, to], canonical_d(&a, &b)?.to_string())
        }
        Command::Equal { left, right } => {
            let f = parse_mor_c(left)?;
            let g = parse_mor_c(right)?;
            let model = match &cli.model {
                Some(p) => Some(FinModel::new(&sig, &ModelConfig::parse(&read(p)?)?)?),
                None => None,
            };
            let v = equal_structural(&f, &g, &sig, model.as_ref())?;
            let mut out = Output::new(name, &[left, right], String::new());
            out.verdict = Some(v.to_string());
            out
        }
        Command::Render { term, format } => {
            let t = parse_mor_d(term)?;
            typecheck_d(&t, &sig)?;
            let doc = render(&t, &sig, *format)?;
            match &cli.out {
                Some(p) => {
                    write(p, &doc)?;
                    Output::new(name, &[term], format!("wrote {}", p.display()))
                }
                None => Output::new(name, &[term], doc),
            }
        }
        Command::Demo { name: DemoName::Parity, n, format } => {
            let sig = strictify_core::demo::parity_signature();
            let t = strictify_core::demo::parity(*n);
            let l = layout(&t, &sig)?;
            let xors = l.count(strictify_core::BoxKind::Generator) - 1;
            let unpacks = l.count(strictify_core::BoxKind::Unpack);
            let n_text = n.to_string();
            let mut out = Output::new(name, &["parity", &n_text], t.to_string());
            out.verdict = Some(format!(
                "{xors} xor boxes, {unpacks} unpack glyphs, {} columns",
                l.columns.len()
            ));
            if let Some(p) = &cli.out {
                write(p, &render(&t, &sig, *format)?)?;
            }
            out
        }
    })
}
