use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use qdual_cli::corpus::{corpus_ids, load_module, load_ring, LoadError};
use qdual_cli::format::{serialize_module, FormatError};
use qdual_cli::suites::{run_suite, SuiteConfig};
use qdual_core::classes::{
    in_auslander_class, in_bass_class, is_derived_reflexive, is_quasidualizing, is_semidualizing,
    CheckReport, Verdict,
};
use qdual_core::functor::{hom_module, matlis_dual, tensor_module};
use qdual_core::homology::{ext_dims, ext_dims_via_injective, minimal_free_resolution, tor_dims};
use qdual_core::module::{regular_module, socle};
use qdual_core::{Module, Ring};

#[derive(Parser)]
#[command(
    name = "qdual",
    version,
    about = "Duality classes of modules over finite local algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a ring file or `corpus:<id>` and print its invariants.
    CheckRing { ring: String },
    /// List the built-in rings.
    Corpus,
    /// Print the Matlis dual of a module.
    Dual {
        #[arg(long)]
        ring: String,
        module: String,
    },
    /// Print Hom(M, N).
    Hom {
        #[arg(long)]
        ring: String,
        m: String,
        n: String,
    },
    /// Print M ⊗ N.
    Tensor {
        #[arg(long)]
        ring: String,
        m: String,
        n: String,
    },
    /// Dimensions of Ext^i(M, N) for 0 <= i <= bound.
    Ext {
        #[arg(long)]
        ring: String,
        #[arg(short = 'i', long = "bound", default_value_t = 4)]
        bound: usize,
        /// Compute from an injective coresolution of N.
        #[arg(long)]
        via_injective: bool,
        m: String,
        n: String,
    },
    /// Dimensions of Tor_i(M, N) for 0 <= i <= bound.
    Tor {
        #[arg(long)]
        ring: String,
        #[arg(short = 'i', long = "bound", default_value_t = 4)]
        bound: usize,
        m: String,
        n: String,
    },
    /// Betti numbers of a minimal free resolution.
    Resolve {
        #[arg(long)]
        ring: String,
        #[arg(short = 'i', long = "length", default_value_t = 4)]
        length: usize,
        module: String,
    },
    /// Test membership of a module in one class.
    Classify {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        module: String,
        #[arg(long = "as", value_enum)]
        role: Role,
        /// Parameter module for derived-reflexive, bass and auslander.
        #[arg(long)]
        param: Option<String>,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Run seeded verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value = "corpus:r5")]
        ring: String,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        max_free_rank: u32,
        /// Override the minimum count of non-degenerate instances.
        #[arg(long)]
        min_coverage: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Role {
    Semidualizing,
    Quasidualizing,
    DerivedReflexive,
    Bass,
    Auslander,
}

/// Exit statuses: 0 all pass, 1 failures, 2 usage or input errors.
enum Outcome {
    Pass,
    Fail,
}

fn ring(spec: &str) -> Result<Arc<Ring>, LoadError> {
    load_ring(spec).map(Arc::new)
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn report_lines(suite: &str, name: &str, r: &CheckReport) -> String {
    let mut out = String::new();
    for c in &r.conditions {
        out.push_str(&format!(
            "CHECK {suite}/{name} {} {}: {}\n",
            c.verdict, c.label, c.witness
        ));
    }
    out.push_str(&format!("RESULT {name} {} bound {}\n", r.verdict, r.bound));
    out
}

fn dims_line(label: &str, v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("{label} {}\n", parts.join(" "))
}

fn check_ring(spec: &str) -> Result<Outcome, LoadError> {
    match load_ring(spec) {
        Ok(r) => {
            let r = Arc::new(r);
            let soc = socle(&regular_module(&r)).dim();
            let gorenstein = soc == r.residue_degree();
            emit(&format!(
                "ring {} p {} dim {}\nradical-dim {} residue-degree {} socle-dim {} gorenstein {}\nCHECK check-ring/{} PASS ring laws and locality hold\n",
                r.name(),
                r.p(),
                r.dim(),
                r.radical().dim(),
                r.residue_degree(),
                soc,
                if gorenstein { "yes" } else { "no" },
                r.name(),
            ));
            Ok(Outcome::Pass)
        }
        Err(LoadError::Format {
            source: FormatError::Ring(e),
            ..
        }) => {
            emit(&format!("CHECK check-ring/{spec} FAIL {e}\n"));
            Ok(Outcome::Fail)
        }
        Err(e) => Err(e),
    }
}

fn run(cli: Cli) -> Result<Outcome, Box<dyn std::error::Error>> {
    match cli.command {
        Command::CheckRing { ring: spec } => Ok(check_ring(&spec)?),
        Command::Corpus => {
            for (id, desc) in corpus_ids() {
                emit(&format!("corpus:{id} {desc}\n"));
            }
            Ok(Outcome::Pass)
        }
        Command::Dual { ring: r, module } => {
            let r = ring(&r)?;
            let m = load_module(&module, &r)?;
            emit(&serialize_module(
                &matlis_dual(&m),
                &format!("dual({module})"),
            ));
            Ok(Outcome::Pass)
        }
        Command::Hom { ring: r, m, n } => {
            let r = ring(&r)?;
            let (a, b) = (load_module(&m, &r)?, load_module(&n, &r)?);
            let h = hom_module(&a, &b)?;
            emit(&format!("dim {}\n", h.dim()));
            emit(&serialize_module(&h.module, &format!("Hom({m},{n})")));
            Ok(Outcome::Pass)
        }
        Command::Tensor { ring: r, m, n } => {
            let r = ring(&r)?;
            let (a, b) = (load_module(&m, &r)?, load_module(&n, &r)?);
            let t = tensor_module(&a, &b)?;
            emit(&format!("dim {}\n", t.dim()));
            emit(&serialize_module(&t.module, &format!("{m}*{n}")));
            Ok(Outcome::Pass)
        }
        Command::Ext {
            ring: r,
            bound,
            via_injective,
            m,
            n,
        } => {
            let r = ring(&r)?;
            let (a, b) = (load_module(&m, &r)?, load_module(&n, &r)?);
            let t = if via_injective {
                ext_dims_via_injective(&a, &b, bound)?
            } else {
                ext_dims(&a, &b, bound)?
            };
            emit(&dims_line("dims", &t.dims));
            Ok(Outcome::Pass)
        }
        Command::Tor {
            ring: r,
            bound,
            m,
            n,
        } => {
            let r = ring(&r)?;
            let (a, b) = (load_module(&m, &r)?, load_module(&n, &r)?);
            emit(&dims_line("dims", &tor_dims(&a, &b, bound)?.dims));
            Ok(Outcome::Pass)
        }
        Command::Resolve {
            ring: r,
            length,
            module,
        } => {
            let r = ring(&r)?;
            let m = load_module(&module, &r)?;
            let res = minimal_free_resolution(&m, length);
            emit(&dims_line("betti", &res.betti[..=length]));
            Ok(Outcome::Pass)
        }
        Command::Classify {
            ring: r,
            module,
            role,
            param,
            bound,
        } => {
            let r = ring(&r)?;
            let m = load_module(&module, &r)?;
            let param = |name: &str| -> Result<Module, Box<dyn std::error::Error>> {
                let p = param
                    .as_deref()
                    .ok_or_else(|| format!("--as {name} requires --param"))?;
                Ok(load_module(p, &r)?)
            };
            let report = match role {
                Role::Semidualizing => is_semidualizing(&m, bound),
                Role::Quasidualizing => is_quasidualizing(&m, bound),
                Role::DerivedReflexive => {
                    is_derived_reflexive(&m, &param("derived-reflexive")?, bound)
                }
                Role::Bass => in_bass_class(&m, &param("bass")?, bound),
                Role::Auslander => in_auslander_class(&m, &param("auslander")?, bound),
            };
            emit(&report_lines("classify", &report.name, &report));
            Ok(if report.verdict == Verdict::Fail {
                Outcome::Fail
            } else {
                Outcome::Pass
            })
        }
        Command::Verify {
            suite,
            ring: r,
            bound,
            samples,
            seed,
            max_free_rank,
            min_coverage,
        } => {
            let mut cfg = SuiteConfig::new(ring(&r)?);
            cfg.bound = bound as usize;
            cfg.samples = samples as usize;
            cfg.seed = seed;
            cfg.max_free_rank = max_free_rank as usize;
            cfg.min_coverage = min_coverage;
            let report = run_suite(&suite, &cfg)?;
            emit(&report.render());
            Ok(if report.tally().fail > 0 {
                Outcome::Fail
            } else {
                Outcome::Pass
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qdual: {e}");
            ExitCode::from(2)
        }
    }
}
