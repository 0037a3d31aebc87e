//! Command-line front end. Exit codes: 0 for pass/ok, 1 for a definite
//! failure (with a witness in the output), 2 for inconclusive, 3 for
//! usage, parse, or I/O errors.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use skewpbw::catalog::{self, CatalogItem};
use skewpbw::koszul::{koszul_report, KoszulBounds};
use skewpbw::presentation::Presentation;
use skewpbw::rewriting::{pbw_check, pbw_check_all_orders, PbwStatus, PbwVerdict};
use skewpbw::scalar::FieldSpec;
use skewpbw::textio;
use skewpbw::{Error, ProbeStatus, Result};

#[derive(Parser)]
#[command(
    name = "skewpbw",
    version,
    about = "Exact workbench for graded algebra presentations and skew PBW extensions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct InputArgs {
    /// Algebra or extension file
    file: Option<PathBuf>,
    /// Use a built-in catalog entry instead of a file
    #[arg(long, value_name = "NAME", conflicts_with = "file")]
    catalog: Option<String>,
    /// Field for catalog entries, Q or GF<p>; files declare their own
    #[arg(long, value_name = "FIELD")]
    field: Option<String>,
    /// Parameter assignment, e.g. --param q=1/3 (repeatable)
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
}

#[derive(Args)]
struct OrderArg {
    /// Comma-separated generator names giving the order to use
    #[arg(long, value_name = "NAMES")]
    order: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that the input is well formed
    Validate {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Print the Hilbert function h(0) h(1) ... h(N), space-separated
    Hilbert {
        #[command(flatten)]
        input: InputArgs,
        /// Last degree to compute
        #[arg(long, default_value_t = 8, value_name = "N")]
        to: u32,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Decide whether the quadratic input has a PBW basis
    Pbw {
        #[command(flatten)]
        input: InputArgs,
        /// Completion bound; 3 already certifies quadratic systems
        #[arg(long, default_value_t = 3, value_name = "D")]
        degree: u32,
        #[command(flatten)]
        order: OrderArg,
        /// Try every permutation of the generators
        #[arg(long, conflicts_with = "order")]
        all_orders: bool,
    },
    /// Print the quadratic dual algebra as an algebra file
    Dual {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Print the presentation an extension generates, as an algebra file
    Extend {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Print the classification flags of an extension
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Degree bound for the bijectivity check
        #[arg(long, default_value_t = 5, value_name = "D")]
        to: u32,
    },
    /// Run the Koszulness probes and print the report
    Koszul {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        order: OrderArg,
        /// Largest homological degree for the Ext table
        #[arg(long, default_value_t = 5)]
        smax: usize,
        /// Largest internal degree for the Ext table
        #[arg(long, default_value_t = 5)]
        pmax: u32,
        /// Degree bound for the Hilbert series duality test
        #[arg(long = "hilbert-to", default_value_t = 8, value_name = "N")]
        hilbert_to: u32,
        /// Largest degree for the lattice distributivity test
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        /// Subspace count limit for the lattice closure
        #[arg(long, default_value_t = 500)]
        cap: usize,
    },
    /// List or show the built-in algebras
    Catalog {
        #[command(subcommand)]
        which: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// One line per entry
    List,
    /// Print an entry in the algebra file format
    Show {
        name: String,
        /// Field to build over, Q or GF<p>
        #[arg(long, value_name = "FIELD")]
        field: Option<String>,
        /// Parameter assignment, e.g. --param q=1/3 (repeatable)
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
    },
}

fn parse_field(text: &str) -> Result<FieldSpec> {
    if text == "Q" {
        return Ok(FieldSpec::rationals());
    }
    if let Some(p) = text.strip_prefix("GF") {
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Field(format!("bad modulus in '{text}'")))?;
        return FieldSpec::prime_field(p);
    }
    Err(Error::Field(format!(
        "unknown field '{text}', expected Q or GF<p>"
    )))
}

fn split_params(raw: &[String]) -> Result<Vec<(String, String)>> {
    raw.iter()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| {
                    Error::Parameter(format!("expected NAME=VALUE in '--param {kv}'"))
                })
        })
        .collect()
}

fn load(input: &InputArgs) -> Result<(String, CatalogItem)> {
    match (&input.file, &input.catalog) {
        (Some(path), None) => {
            if input.field.is_some() {
                return Err(Error::Parameter(
                    "--field applies to catalog entries; files declare their own".into(),
                ));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let overrides: BTreeMap<String, String> =
                split_params(&input.params)?.into_iter().collect();
            textio::parse_str_with(&text, &overrides)
        }
        (None, Some(name)) => {
            let field = match &input.field {
                Some(f) => parse_field(f)?,
                None => FieldSpec::rationals(),
            };
            let mut params = BTreeMap::new();
            for (k, v) in split_params(&input.params)? {
                let scalar = textio::parse_scalar_literal(field, &v)
                    .map_err(|e| Error::Parameter(format!("parameter '{k}': {e}")))?;
                params.insert(k, scalar);
            }
            Ok((name.clone(), catalog::build(name, field, &params)?))
        }
        (None, None) => Err(Error::Parameter(
            "an input file or --catalog NAME is required".into(),
        )),
        (Some(_), Some(_)) => unreachable!("clap rejects file together with --catalog"),
    }
}

fn presentation_of(item: &CatalogItem, order: &OrderArg) -> Result<Presentation> {
    let p = item.as_presentation();
    match &order.order {
        None => Ok(p),
        Some(names) => {
            let names: Vec<String> = names.split(',').map(|s| s.trim().to_string()).collect();
            p.reorder_by_names(&names)
        }
    }
}

fn status_code(status: ProbeStatus) -> u8 {
    match status {
        ProbeStatus::Pass => 0,
        ProbeStatus::Fail => 1,
        ProbeStatus::Inconclusive => 2,
    }
}

fn pbw_line(prefix: &str, v: &PbwVerdict) -> String {
    let witness = match &v.witness {
        Some(w) => w.to_string(),
        None => "-".into(),
    };
    format!("{prefix}status={} witness={witness}", v.status)
}

fn pbw_code(status: PbwStatus) -> u8 {
    match status {
        PbwStatus::IsPbw => 0,
        PbwStatus::NotPbw => 1,
        PbwStatus::Inconclusive => 2,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Validate { input } => {
            let (_, item) = load(&input)?;
            let report = match &item {
                CatalogItem::Presentation(p) => p.validate(),
                CatalogItem::Extension(x) => {
                    let mut r = x.validate_extension(5);
                    r.merge(x.check_graded());
                    r
                }
            };
            print!("{report}");
            Ok(if report.is_valid() { 0 } else { 1 })
        }
        Cmd::Hilbert { input, to, order } => {
            let (_, item) = load(&input)?;
            let p = presentation_of(&item, &order)?;
            let h = p.hilbert(to);
            let rendered: Vec<String> = h.iter().map(ToString::to_string).collect();
            println!("{}", rendered.join(" "));
            Ok(0)
        }
        Cmd::Pbw {
            input,
            degree,
            order,
            all_orders,
        } => {
            let (_, item) = load(&input)?;
            let p = presentation_of(&item, &order)?;
            if all_orders {
                let rows = match pbw_check_all_orders(&p, degree) {
                    Ok(rows) => rows,
                    Err(e) => {
                        println!("pbw status=Inconclusive witness=- reason={e}");
                        return Ok(2);
                    }
                };
                let mut best = 1u8;
                for (names, v) in &rows {
                    println!("{}", pbw_line(&format!("order={} ", names.join(",")), v));
                }
                if rows.iter().any(|(_, v)| v.status == PbwStatus::IsPbw) {
                    best = 0;
                } else if rows.iter().any(|(_, v)| v.status == PbwStatus::Inconclusive) {
                    best = 2;
                }
                Ok(best)
            } else {
                match pbw_check(&p, degree) {
                    Ok(v) => {
                        println!("{}", pbw_line("pbw ", &v));
                        Ok(pbw_code(v.status))
                    }
                    Err(e) => {
                        println!("pbw status=Inconclusive witness=- reason={e}");
                        Ok(2)
                    }
                }
            }
        }
        Cmd::Dual { input, order } => {
            let (name, item) = load(&input)?;
            let p = presentation_of(&item, &order)?;
            let dual = p.quadratic_dual()?;
            print!("{}", textio::render_presentation(&format!("{name}_dual"), &dual));
            Ok(0)
        }
        Cmd::Extend { input } => {
            let (name, item) = load(&input)?;
            let CatalogItem::Extension(x) = item else {
                return Err(Error::Parameter("input is not an extension".into()));
            };
            print!(
                "{}",
                textio::render_presentation(&name, &x.emit_presentation())
            );
            Ok(0)
        }
        Cmd::Classify { input, to } => {
            let (_, item) = load(&input)?;
            let CatalogItem::Extension(x) = item else {
                return Err(Error::Parameter("input is not an extension".into()));
            };
            let f = x.classify(to);
            println!("pre_commutative={}", f.pre_commutative);
            println!("quasi_commutative={}", f.quasi_commutative);
            println!("bijective_to_bound={}", f.bijective_to_bound);
            println!("derivation_type={}", f.derivation_type);
            println!("endomorphism_type={}", f.endomorphism_type);
            println!("constant={}", f.constant);
            println!("semi_commutative={}", f.semi_commutative);
            Ok(0)
        }
        Cmd::Koszul {
            input,
            order,
            smax,
            pmax,
            hilbert_to,
            kmax,
            cap,
        } => {
            let (_, item) = load(&input)?;
            let p = presentation_of(&item, &order)?;
            let bounds = KoszulBounds {
                s_max: smax,
                p_max: pmax,
                duality_to: hilbert_to,
                k_max: kmax,
                cap,
            };
            let report = koszul_report(&p, &bounds);
            print!("{report}");
            Ok(status_code(report.overall))
        }
        Cmd::Catalog { which } => match which {
            CatalogCmd::List => {
                for e in catalog::entries() {
                    println!("{} ({}; params: {}): {}", e.name, e.kind, e.params, e.summary);
                }
                Ok(0)
            }
            CatalogCmd::Show {
                name,
                field,
                params,
            } => {
                let input = InputArgs {
                    file: None,
                    catalog: Some(name),
                    field,
                    params,
                };
                let (name, item) = load(&input)?;
                print!("{}", textio::render_item(&name, &item));
                Ok(0)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage_ok = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if usage_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
