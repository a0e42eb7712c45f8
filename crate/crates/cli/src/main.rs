use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fmadm_core::evaluate::{evaluate_all, explain, Method, MethodSelection, Overrides};
use fmadm_core::io::{load_dataset, load_scheme, render_documents, Meta};
use fmadm_core::model::{validate_dataset, Alternative, Scheme};
use fmadm_core::store::FileStore;
use fmadm_core::Error;

mod table;

#[derive(Debug, Parser)]
#[command(
    name = "fmadm",
    version,
    about = "Rank alternatives with fuzzy TOPSIS and fuzzy Weighted Product"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Topsis,
    Wp,
    Both,
}

impl From<MethodArg> for MethodSelection {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Topsis => MethodSelection::Topsis,
            MethodArg::Wp => MethodSelection::Wp,
            MethodArg::Both => MethodSelection::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SingleMethod {
    Topsis,
    Wp,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, clap::Args)]
struct Inputs {
    /// Scheme file (JSON)
    #[arg(long)]
    scheme: PathBuf,
    /// Dataset file (CSV)
    #[arg(long)]
    data: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a dataset against a scheme; exit 1 if any issue is found.
    Validate {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Rank every alternative.
    Rank {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Omit the engine/version/timestamp block from JSON output.
        #[arg(long)]
        no_meta: bool,
    },
    /// Show every intermediate value behind one alternative's score.
    Explain {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value = "topsis")]
        method: SingleMethod,
        /// Alternative id, e.g. MH10
        #[arg(long)]
        id: String,
    },
    /// Start the HTTP service.
    Serve {
        /// TCP port to listen on.
        #[arg(long)]
        port: u16,
        /// Directory holding stored schemes and datasets.
        #[arg(long)]
        store: PathBuf,
        /// Address to bind.
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        host: IpAddr,
    },
}

/// Exit code 1 for data problems, 2 for environment problems.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let mut message = err.to_string();
        if let Error::InvalidDataset(issues) = &err {
            for issue in issues {
                message.push_str(&format!("\n{issue}"));
            }
        }
        Failure {
            code: if err.is_io() { 2 } else { 1 },
            message,
        }
    }
}

fn load(inputs: &Inputs) -> Result<(Scheme, Vec<Alternative>), Error> {
    let scheme = load_scheme(&inputs.scheme)?;
    let alts = load_dataset(&inputs.data, &scheme)?;
    Ok((scheme, alts))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure {
            code: 2,
            message: format!("{}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { inputs } => {
            let (scheme, alts) = load(&inputs)?;
            let issues = validate_dataset(&scheme, &alts);
            if issues.is_empty() {
                println!("ok: {} alternatives, {} criteria", alts.len(), scheme.criteria().len());
                return Ok(());
            }
            for issue in &issues {
                println!("{issue}");
            }
            Err(Failure {
                code: 1,
                message: format!("{} issue(s) found", issues.len()),
            })
        }
        Command::Rank {
            inputs,
            method,
            format,
            out,
            no_meta,
        } => {
            let (scheme, alts) = load(&inputs)?;
            let mut docs = evaluate_all(&scheme, &alts, method.into(), &Overrides::new())?;
            let text = match format {
                Format::Json => {
                    if !no_meta {
                        let meta = Meta::now();
                        docs.iter_mut().for_each(|d| d.meta = Some(meta.clone()));
                    }
                    render_documents(&docs)
                }
                Format::Table => table::render(&docs),
            };
            emit(&text, out.as_deref())
        }
        Command::Explain { inputs, method, id } => {
            let (scheme, alts) = load(&inputs)?;
            let method = match method {
                SingleMethod::Topsis => Method::Topsis,
                SingleMethod::Wp => Method::Wp,
            };
            let explanation = explain(&scheme, &alts, method, &id)?;
            println!("{explanation}");
            Ok(())
        }
        Command::Serve { port, store, host } => {
            tracing_subscriber::fmt().with_writer(std::io::stderr).init();
            let store = FileStore::open(store)?;
            let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure {
                code: 2,
                message: e.to_string(),
            })?;
            runtime
                .block_on(fmadm_service::serve(SocketAddr::new(host, port), store))
                .map_err(|e| Failure {
                    code: 2,
                    message: e.to_string(),
                })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
