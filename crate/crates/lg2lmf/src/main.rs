use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lg2lmf::convert::{convert_dir, ConvertOptions};
use lg2lmf::error::Error;
use lg2lmf::lexicon::{dump_entry, Status};
use lg2lmf::lmf::{emit_element, emit_lmf, read_lmf};
use lg2lmf::stats::{compute_stats, render_json, render_text};
use lg2lmf::table::Category;
use lg2lmf::validate::{validate_bytes, validate_document};

#[derive(Parser)]
#[command(
    name = "lg2lmf",
    version,
    about = "Compile Lexicon-Grammar verb tables into an LMF XML lexicon"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatusArg {
    Completed,
    ToBeCompleted,
    ToBeEncoded,
}

impl From<StatusArg> for Status {
    fn from(value: StatusArg) -> Status {
        match value {
            StatusArg::Completed => Status::Completed,
            StatusArg::ToBeCompleted => Status::ToBeCompleted,
            StatusArg::ToBeEncoded => Status::ToBeEncoded,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct ConvertArgs {
    /// Directory of per-class `<class_id>.csv` tables.
    #[arg(long)]
    tables: PathBuf,
    /// The table of classes for the category.
    #[arg(long)]
    classes: PathBuf,
    /// Feature catalog configuration.
    #[arg(long)]
    catalog: PathBuf,
    #[arg(long, default_value = "verb")]
    category: String,
    /// Output LMF file.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads for per-table processing; output bytes do not
    /// depend on this.
    #[arg(long)]
    jobs: Option<usize>,
    /// Cell delimiter of the input tables.
    #[arg(long, default_value = ";")]
    delimiter: String,
    /// Also write the intermediate structured lexicon as a text tree.
    #[arg(long)]
    dump_intermediate: Option<PathBuf>,
    /// Drop entries with this status (repeatable).
    #[arg(long, value_enum)]
    exclude_status: Vec<StatusArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a directory of class tables into one LMF document.
    Convert(ConvertArgs),
    /// Check an LMF document against the structural invariants.
    Validate {
        file: PathBuf,
        /// Escalate compatibility warnings to errors.
        #[arg(long)]
        strict: bool,
    },
    /// Report counts over an LMF document.
    Stats {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print one entry's canonical XML.
    Extract {
        file: PathBuf,
        /// Entry identifier, e.g. V_32RA_96.
        #[arg(long)]
        entry: String,
    },
}

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::Usage(_) => ExitCode::from(EXIT_USAGE),
        _ => ExitCode::from(EXIT_ERROR),
    }
}

fn run_convert(args: ConvertArgs) -> ExitCode {
    let Some(category) = Category::from_name(&args.category) else {
        return fail(&Error::Usage(format!("unknown category {:?}", args.category)));
    };
    let delimiter_bytes = args.delimiter.as_bytes();
    if delimiter_bytes.len() != 1 {
        return fail(&Error::Usage(format!(
            "--delimiter must be a single byte, got {:?}",
            args.delimiter
        )));
    }
    if args.jobs == Some(0) {
        return fail(&Error::Usage("--jobs must be at least 1".into()));
    }
    let options = ConvertOptions {
        category,
        delimiter: delimiter_bytes[0],
        jobs: args.jobs,
        exclude_statuses: args.exclude_status.into_iter().map(Status::from).collect(),
    };
    let conversion = match convert_dir(&args.tables, &args.classes, &args.catalog, &options) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };

    let mut report = validate_document(&conversion.document, &[]);
    let mut findings = conversion.findings.clone();
    findings.append(&mut report.findings);
    report.findings = findings;

    let bytes = emit_lmf(&conversion.document);
    if let Err(e) = fs::write(&args.out, &bytes) {
        return fail(&Error::io(&args.out, e));
    }
    if let Some(dump_path) = args.dump_intermediate {
        let mut dump = String::new();
        for entry in &conversion.intermediate {
            dump.push_str(&dump_entry(entry));
        }
        if let Err(e) = fs::write(&dump_path, dump) {
            return fail(&Error::io(&dump_path, e));
        }
    }

    for finding in &report.findings {
        println!("{finding}");
    }
    let stats = compute_stats(&conversion.document, report.warning_count());
    print!("{}", render_text(&stats));
    println!("wrote {}", args.out.display());
    if report.passed() {
        ExitCode::from(EXIT_OK)
    } else {
        ExitCode::from(EXIT_ERROR)
    }
}

fn run_validate(file: PathBuf, strict: bool) -> ExitCode {
    let bytes = match fs::read(&file) {
        Ok(b) => b,
        Err(e) => return fail(&Error::io(&file, e)),
    };
    match validate_bytes(&bytes, strict) {
        Ok(report) => {
            println!("{report}");
            if report.passed() {
                ExitCode::from(EXIT_OK)
            } else {
                ExitCode::from(EXIT_ERROR)
            }
        }
        Err(e) => fail(&e),
    }
}

fn run_stats(file: PathBuf, format: Format) -> ExitCode {
    let bytes = match fs::read(&file) {
        Ok(b) => b,
        Err(e) => return fail(&Error::io(&file, e)),
    };
    let report = match validate_bytes(&bytes, false) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if !report.passed() {
        eprintln!("{report}");
        eprintln!("error: document does not validate; statistics not computed");
        return ExitCode::from(EXIT_ERROR);
    }
    let (doc, _) = match read_lmf(&bytes) {
        Ok(d) => d,
        Err(e) => return fail(&e),
    };
    let stats = compute_stats(&doc, report.warning_count());
    match format {
        Format::Text => print!("{}", render_text(&stats)),
        Format::Json => println!("{}", render_json(&stats)),
    }
    ExitCode::from(EXIT_OK)
}

fn run_extract(file: PathBuf, entry: String) -> ExitCode {
    let bytes = match fs::read(&file) {
        Ok(b) => b,
        Err(e) => return fail(&Error::io(&file, e)),
    };
    let (doc, _) = match read_lmf(&bytes) {
        Ok(d) => d,
        Err(e) => return fail(&e),
    };
    match emit_element(&doc, "LexicalEntry", &entry) {
        Some(xml) => {
            print!("{xml}");
            ExitCode::from(EXIT_OK)
        }
        None => {
            eprintln!("error: no entry {entry:?} in {}", file.display());
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Convert(args) => run_convert(args),
        Command::Validate { file, strict } => run_validate(file, strict),
        Command::Stats { file, format } => run_stats(file, format),
        Command::Extract { file, entry } => run_extract(file, entry),
    }
}
