use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclic_dd::bits::BinaryMatrix;
use cyclic_dd::codealg::{bch_bound, CodeSpec, ExponentSet};
use cyclic_dd::decoders::{dual_orbit_parity_matrix, eg_line_parity_matrix, SparseParityMatrix};
use cyclic_dd::derivative::{cyclic_da, cyclic_dd, minimal_dd_basis};
use cyclic_dd::gf2m::{Field, FieldSpec};
use cyclic_dd::poly::Gf2Poly;
use cyclic_dd::sim::{
    load_config, parse_hex_u32, run_monte_carlo, write_results, CodeRef, DecoderConfig,
    FrameDecoder, HSource,
};
use cyclic_dd::{Error, Result};

#[derive(Parser)]
#[command(name = "cyclic-dd", version, about = "Derivative descendants and derivative decoding of extended binary cyclic codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a code, its cyclic derivative descendant or its ascendant.
    Code {
        #[arg(value_enum)]
        what: CodeView,
        #[command(flatten)]
        code: CodeArgs,
        /// Also write the generator matrix (one 0/1 row per line).
        #[arg(long)]
        generator_out: Option<PathBuf>,
    },
    /// Build or check sparse parity-check matrices.
    Hmatrix {
        #[command(subcommand)]
        action: HAction,
    },
    /// Decode LLR frames read from a file (one frame per line).
    Decode {
        /// gen:<m>:<hex>[:<prim>], bch:<m>:<delta> or rm:<m>:<r>.
        #[arg(long)]
        code: String,
        #[arg(long, value_enum)]
        algo: Algo,
        /// all or k:<count>:<seed>.
        #[arg(long, default_value = "all")]
        directions: String,
        /// Outer iterations for dd-*, iterations for spa.
        #[arg(long)]
        max_iter: Option<usize>,
        /// OSD order (osd, dd-osd).
        #[arg(long, default_value_t = 1)]
        order: usize,
        /// Parity checks for spa / dd-spa: eg:<mu>:<s>, dual:<w> or alist:<path>.
        #[arg(long)]
        h: Option<String>,
        /// Inner SPA iterations for dd-spa.
        #[arg(long, default_value_t = 20)]
        spa_max_iter: usize,
        #[arg(long)]
        llr_in: PathBuf,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a Monte-Carlo simulation described by a JSON config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeView {
    Info,
    Dd,
    Da,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Mld,
    Osd,
    Spa,
    DdSpa,
    DdOsd,
    DdMld,
}

#[derive(Args)]
struct CodeArgs {
    /// Code length: 2^m or 2^m - 1.
    #[arg(long)]
    n: usize,
    /// Generator polynomial of the cyclic code in hex, bit i = coefficient of x^i.
    #[arg(long)]
    gen_hex: String,
    /// Primitive polynomial of GF(2^m) in hex.
    #[arg(long)]
    prim_poly: Option<String>,
}

impl CodeArgs {
    fn build(&self) -> Result<CodeSpec> {
        let m = if self.n.is_power_of_two() {
            self.n.trailing_zeros()
        } else if (self.n + 1).is_power_of_two() {
            (self.n + 1).trailing_zeros()
        } else {
            return Err(Error::Parse(format!("length {} is neither 2^m nor 2^m - 1", self.n)));
        };
        let field = match &self.prim_poly {
            Some(p) => Field::new(FieldSpec::new(m, parse_hex_u32(p)?))?,
            None => Field::with_default_poly(m)?,
        };
        CodeSpec::from_generator(Arc::new(field), Gf2Poly::from_hex(&self.gen_hex)?)
    }
}

#[derive(Subcommand)]
enum HAction {
    /// Lines of the Euclidean geometry EG(mu, 2^s) on GF(2^(mu*s)).
    Eg {
        #[arg(long)]
        mu_dims: u32,
        #[arg(long)]
        subfield_bits: u32,
        #[arg(long)]
        prim_poly: Option<String>,
        #[arg(long)]
        alist: PathBuf,
    },
    /// Low-weight dual codewords of a code (or of its cyclic descendant).
    DualOrbit {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        max_weight: usize,
        /// Use the cyclic derivative descendant of the code.
        #[arg(long)]
        descendant: bool,
        #[arg(long)]
        alist: PathBuf,
    },
    /// Check an alist matrix against a code (or its cyclic descendant).
    Check {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        descendant: bool,
        #[arg(long)]
        alist: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Code {
            what,
            code,
            generator_out,
        } => {
            let c = code.build()?;
            let shown = match what {
                CodeView::Info => c.clone(),
                CodeView::Dd => CodeSpec::from_exponents(c.field().clone(), cyclic_dd(c.exponents())),
                CodeView::Da => CodeSpec::from_exponents(c.field().clone(), cyclic_da(c.exponents())),
            };
            print_code(&shown);
            if let CodeView::Dd = what {
                println!("minimal_dd_dim: {}", minimal_dd_basis(&c, 1)?.dimension());
            }
            if let Some(path) = generator_out {
                fs::write(path, shown.generator_matrix().to_text())?;
            }
            Ok(())
        }
        Command::Hmatrix { action } => hmatrix(action),
        Command::Decode {
            code,
            algo,
            directions,
            max_iter,
            order,
            h,
            spa_max_iter,
            llr_in,
            out,
        } => {
            let code = CodeRef::parse(&code)?.build()?;
            let need_h = || -> Result<HSource> {
                HSource::parse(h.as_deref().ok_or_else(|| {
                    Error::Config("spa and dd-spa need --h".into())
                })?)
            };
            let cfg = match algo {
                Algo::Mld => DecoderConfig::Mld,
                Algo::Osd => DecoderConfig::Osd { order },
                Algo::Spa => DecoderConfig::Spa {
                    max_iter: max_iter.unwrap_or(20),
                    h: need_h()?,
                },
                Algo::DdSpa => DecoderConfig::DdSpa {
                    directions,
                    max_iter: max_iter.unwrap_or(3),
                    spa_max_iter,
                    h: need_h()?,
                },
                Algo::DdOsd => DecoderConfig::DdOsd {
                    directions,
                    max_iter: max_iter.unwrap_or(4),
                    order,
                    half_length: true,
                },
                Algo::DdMld => DecoderConfig::DdMld {
                    directions,
                    max_iter: max_iter.unwrap_or(4),
                    minimal: false,
                },
            };
            let decoder = FrameDecoder::from_config(&code, &cfg)?;
            let text = fs::read_to_string(&llr_in)?;
            let sink: Box<dyn Write> = match out {
                Some(p) => Box::new(fs::File::create(p)?),
                None => Box::new(io::stdout()),
            };
            let mut sink = BufWriter::new(sink);
            for (ln, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let llr = line
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|_| Error::Parse(format!("line {}: bad LLR {t:?}", ln + 1)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if llr.len() != code.length() {
                    return Err(Error::LengthMismatch {
                        expected: code.length(),
                        found: llr.len(),
                    });
                }
                writeln!(sink, "{}", decoder.decode(&llr).codeword)?;
            }
            sink.flush()?;
            Ok(())
        }
        Command::Simulate { config, out } => {
            let cfg = load_config(&config)?;
            let result = run_monte_carlo(&cfg)?;
            for p in &result.points {
                println!(
                    "Eb/N0 {:>5.2} dB  frames {:>8}  errors {:>6}  BLER {:.3e}",
                    p.ebn0_db, p.frames, p.frame_errors, p.bler
                );
            }
            write_results(&result, out)
        }
    }
}

fn print_code(c: &CodeSpec) {
    let set: &ExponentSet = c.exponents();
    let join = |it: &mut dyn Iterator<Item = usize>| {
        it.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    };
    println!("length: {}", c.length());
    println!("dimension: {}", c.dimension());
    println!("generator: {}", c.gen_poly());
    println!("representatives: {{{}}}", join(&mut set.representatives().into_iter()));
    println!("exponents: {{{}}}", join(&mut set.iter()));
    println!("bch_bound: {}", bch_bound(set));
}

fn hmatrix(action: HAction) -> Result<()> {
    let report = |h: &SparseParityMatrix| {
        let rw = h.row_weights();
        let cw = h.col_weights();
        println!(
            "{} x {}  row weight {}..{}  column weight {}..{}",
            h.num_rows(),
            h.num_cols(),
            rw.iter().min().unwrap_or(&0),
            rw.iter().max().unwrap_or(&0),
            cw.iter().min().unwrap_or(&0),
            cw.iter().max().unwrap_or(&0)
        );
    };
    let target = |code: &CodeArgs, descendant: bool| -> Result<CodeSpec> {
        let c = code.build()?;
        Ok(if descendant {
            CodeSpec::from_exponents(c.field().clone(), cyclic_dd(c.exponents()))
        } else {
            c
        })
    };
    match action {
        HAction::Eg {
            mu_dims,
            subfield_bits,
            prim_poly,
            alist,
        } => {
            let m = mu_dims * subfield_bits;
            let field = match prim_poly {
                Some(p) => Field::new(FieldSpec::new(m, parse_hex_u32(&p)?))?,
                None => Field::with_default_poly(m)?,
            };
            let h = eg_line_parity_matrix(&field, mu_dims, subfield_bits)?;
            report(&h);
            h.write_alist(alist)
        }
        HAction::DualOrbit {
            code,
            max_weight,
            descendant,
            alist,
        } => {
            let h = dual_orbit_parity_matrix(&target(&code, descendant)?, max_weight)?;
            report(&h);
            h.write_alist(alist)
        }
        HAction::Check {
            code,
            descendant,
            alist,
        } => {
            let c = target(&code, descendant)?;
            let h = SparseParityMatrix::read_alist(alist)?;
            report(&h);
            h.check_orthogonal(c.generator_matrix())?;
            let dense: BinaryMatrix = h.to_dense();
            println!(
                "orthogonal to the ({}, {}) code; rank {} of dual dimension {}",
                c.length(),
                c.dimension(),
                dense.rank(),
                c.length() - c.dimension()
            );
            Ok(())
        }
    }
}
