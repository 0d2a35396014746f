//! `binlcp` command-line driver.
//!
//! Exit codes: 0 success, 1 input error, 2 the request is ruled out by a
//! theorem hypothesis or obstruction, 3 a search budget ran out.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use binlcp::constructions::{
    self, parse_kd, parse_matrix_blocks, ConstructionError, SolomonStifflerSpec,
};
use binlcp::lcppair::{self, LcpCertificate, LcpError};
use binlcp::search::{
    self, DlTable, SearchConfig, SearchError, SubspaceEnumeration, TableCell, DEFAULT_BUDGET,
    DEFAULT_SEED,
};
use binlcp::{format_matrix, parse_matrix, LinearCode, Strategy};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "binlcp",
    version,
    about = "Binary linear complementary pairs of codes"
)]
struct Cli {
    /// Run every sweep on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Budget {
    /// Largest number of candidates a search may examine.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Find σ making (C1, σ(C2)⊥) a linear complementary pair.
    BuildLcp {
        g1: PathBuf,
        g2: PathBuf,
        /// Prepend a zero coordinate to both codes first.
        #[arg(long)]
        pad: bool,
        /// Record the security parameter in the certificate.
        #[arg(long)]
        security: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Find σ with dim(C1 ∩ σ(C2)⊥) = ELL.
    EllPair {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long)]
        ell: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Hull C ∩ C⊥ and its dimension.
    Hull {
        g: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Minimum distance.
    Mindist { g: PathBuf },
    /// Generator of the dual code.
    Dual {
        g: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Solomon-Stiffler code for a spec such as `k=3,d=7`.
    Ss {
        spec: String,
        /// Also build an LCP from the code.
        #[arg(long)]
        lcp: bool,
        /// Subspace bases, one matrix block per subspace, blocks separated by blank lines.
        #[arg(long)]
        subspaces: Option<PathBuf>,
        /// Certificate destination (default: after the generator on the main output).
        #[arg(long)]
        cert: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// CSV of d_L(n,k) and d_LCP(n,k) over ranges such as `2-8`.
    Table {
        #[arg(long)]
        n: String,
        #[arg(long)]
        k: String,
        /// Fallback d_L values (`n k d [provenance]` per line).
        #[arg(long)]
        dl_table: Option<PathBuf>,
        /// Directory receiving one code and one certificate file per exact cell.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
    /// List every k-dimensional subspace of F₂ⁿ as an RREF generator.
    Enumerate {
        n: usize,
        k: usize,
        /// Keep only codes with exactly this minimum distance.
        #[arg(long)]
        distance: Option<usize>,
        /// Print only the number of codes.
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
    /// Recheck a certificate against the two generators.
    Verify {
        g1: PathBuf,
        g2: PathBuf,
        cert: PathBuf,
    },
    /// Exact d_LCP(n,k) with a certificate attaining it.
    Dlcp {
        n: usize,
        k: usize,
        /// Where to write the code generator.
        #[arg(long)]
        code: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
    /// Search for an [n,k] LCP with security parameter at least TARGET.
    Search {
        n: usize,
        k: usize,
        target: usize,
        #[arg(long)]
        code: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
    /// Which ℓ admit dim(C1 ∩ C2) = ℓ for [n,k1,d1] and [n,k2,d2] codes.
    Intersections {
        n: usize,
        k1: usize,
        k2: usize,
        d1: usize,
        d2: usize,
        #[command(flatten)]
        budget: Budget,
    },
}

enum Failure {
    Input(anyhow::Error),
    Obstruction(String),
    Budget(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<LcpError> for Failure {
    fn from(e: LcpError) -> Self {
        match e {
            LcpError::ConditionViolated {
                one_in_c1_meet_c2_dual,
                one_in_c2_meet_c1_dual,
                dim_c1_meet_c2_dual,
                dim_c2_meet_c1_dual,
            } => Failure::Obstruction(format!(
                "status = obstructed\n\
                 reason = all-one vector lies in C1 ∩ C2⊥ or C2 ∩ C1⊥\n\
                 one_in_c1_meet_c2_dual = {one_in_c1_meet_c2_dual}\n\
                 one_in_c2_meet_c1_dual = {one_in_c2_meet_c1_dual}\n\
                 dim_c1_meet_c2_dual = {dim_c1_meet_c2_dual}\n\
                 dim_c2_meet_c1_dual = {dim_c2_meet_c1_dual}\n"
            )),
            other => Failure::Input(other.into()),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            SearchError::Lcp(inner) => inner.into(),
            other => Failure::Input(other.into()),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::HypothesisViolated(h) => {
                Failure::Obstruction(format!("status = hypothesis-violated\nhypothesis = {h}\n"))
            }
            ConstructionError::Lcp(inner) => inner.into(),
            other => Failure::Input(other.into()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_code(path: &Path) -> anyhow::Result<LinearCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let m = parse_matrix(&text).with_context(|| format!("parsing {}", path.display()))?;
    if m.n_cols() == 0 {
        bail!("{} contains no matrix rows", path.display());
    }
    Ok(LinearCode::from_generator(&m))
}

fn emit(out: &Output, text: &str) -> anyhow::Result<()> {
    match &out.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn parse_range(s: &str) -> anyhow::Result<std::ops::RangeInclusive<usize>> {
    let parse = |t: &str| -> anyhow::Result<usize> {
        t.trim()
            .parse()
            .map_err(|_| anyhow!("bad range bound {t:?}"))
    };
    let (a, b) = match s.split_once('-') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if a > b {
        bail!("empty range {s:?}");
    }
    Ok(a..=b)
}

fn search_config(strategy: Strategy, budget: &Budget) -> SearchConfig {
    SearchConfig {
        budget: budget.budget,
        seed: budget.seed,
        strategy,
        ..SearchConfig::default()
    }
}

fn run(cli: Cli) -> Outcome {
    let strategy = if cli.sequential {
        Strategy::Sequential
    } else {
        Strategy::default()
    };
    match cli.command {
        Command::BuildLcp {
            g1,
            g2,
            pad,
            security,
            out,
        } => {
            let (c1, c2) = (read_code(&g1)?, read_code(&g2)?);
            let mut cert = if pad {
                lcppair::build_lcp_padded(&c1, &c2)?
            } else {
                lcppair::build_lcp(&c1, &c2)?
            };
            if security {
                cert = cert.with_security_parameter(&c1, &c2)?;
            }
            emit(&out, &cert.to_text())?;
        }
        Command::EllPair { g1, g2, ell, out } => {
            let (c1, c2) = (read_code(&g1)?, read_code(&g2)?);
            emit(&out, &lcppair::ell_pair(&c1, &c2, ell)?.to_text())?;
        }
        Command::Hull { g, out } => {
            let hull = read_code(&g)?.hull();
            let text = format!(
                "# hull dimension {}\n{}",
                hull.k(),
                format_matrix(hull.generator())
            );
            emit(&out, &text)?;
        }
        Command::Mindist { g } => {
            let d = read_code(&g)?.min_distance().map_err(|e| anyhow!(e))?;
            println!("{d}");
        }
        Command::Dual { g, out } => {
            emit(&out, &format_matrix(read_code(&g)?.dual().generator()))?;
        }
        Command::Ss {
            spec,
            lcp,
            subspaces,
            cert,
            out,
        } => {
            let (k, d) = parse_kd(&spec)?;
            let spec = match subspaces {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let blocks = parse_matrix_blocks(&text)
                        .with_context(|| format!("parsing {}", path.display()))?;
                    SolomonStifflerSpec::with_subspaces(k, d, blocks)?
                }
                None => SolomonStifflerSpec::new(k, d)?,
            };
            let built = if lcp {
                Some(constructions::ss_lcp_from_spec(&spec)?)
            } else {
                None
            };
            let ss = match &built {
                Some(l) => l.ss.clone(),
                None => constructions::solomon_stiffler_code(&spec)?,
            };
            let mut text = format!(
                "# [{}, {}, {}] Solomon-Stiffler code, s = {}, u = {:?}\n",
                ss.code.n(),
                spec.k,
                spec.d,
                spec.s,
                spec.u
            );
            text.push_str(&format_matrix(&ss.generator));
            if let Some(l) = built {
                let cert_text = l.certificate.to_text();
                match cert {
                    Some(p) => write_file(&p, &cert_text)?,
                    None => {
                        text.push('\n');
                        text.push_str(&cert_text);
                    }
                }
            }
            emit(&out, &text)?;
        }
        Command::Table {
            n,
            k,
            dl_table,
            witness_dir,
            budget,
            out,
        } => {
            let (ns, ks) = (parse_range(&n)?, parse_range(&k)?);
            let user = match dl_table {
                Some(p) => {
                    let text = fs::read_to_string(&p)
                        .with_context(|| format!("reading {}", p.display()))?;
                    Some(DlTable::parse(&text).map_err(|e| anyhow!(e))?)
                }
                None => None,
            };
            if let Some(dir) = &witness_dir {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            let cfg = search_config(strategy, &budget);
            let mut csv = format!("{}\n", TableCell::CSV_HEADER);
            for n in ns {
                for k in ks.clone() {
                    if k == 0 || k >= n {
                        continue;
                    }
                    let cell = search::table_cell(n, k, &cfg, user.as_ref());
                    let mut witness = None;
                    if let (Some(dir), Some(r)) = (&witness_dir, &cell.result) {
                        let stem = format!("lcp_n{n}_k{k}");
                        write_file(
                            &dir.join(format!("{stem}.code")),
                            &format_matrix(r.code.generator()),
                        )?;
                        write_file(&dir.join(format!("{stem}.cert")), &r.certificate.to_text())?;
                        witness = Some(format!("{stem}.cert"));
                    }
                    writeln!(csv, "{}", cell.csv_row(witness.as_deref())).expect("string write");
                }
            }
            emit(&out, &csv)?;
        }
        Command::Enumerate {
            n,
            k,
            distance,
            count,
            budget,
            out,
        } => {
            let e = SubspaceEnumeration::new(n, k, budget.budget)?;
            let mut text = String::new();
            let mut total = 0u128;
            for c in e.codes() {
                if let Some(d) = distance {
                    if c.k() == 0 || c.min_distance().map_err(|e| anyhow!(e))? != d {
                        continue;
                    }
                }
                total += 1;
                if !count {
                    if !text.is_empty() {
                        text.push('\n');
                    }
                    text.push_str(&format_matrix(c.generator()));
                }
            }
            if count {
                text = format!("{total}\n");
            }
            emit(&out, &text)?;
        }
        Command::Verify { g1, g2, cert } => {
            let (c1, c2) = (read_code(&g1)?, read_code(&g2)?);
            let text =
                fs::read_to_string(&cert).with_context(|| format!("reading {}", cert.display()))?;
            let cert = LcpCertificate::from_text(&text).map_err(|e| anyhow!(e))?;
            if !cert.check(&c1, &c2)? {
                return Err(Failure::Input(anyhow!(
                    "certificate does not verify: σ does not give intersection dimension {}",
                    cert.final_dim
                )));
            }
            if let Some(claimed) = cert.security_parameter {
                let actual = cert
                    .clone()
                    .with_security_parameter(&c1, &c2)?
                    .security_parameter;
                if actual != Some(claimed) {
                    return Err(Failure::Input(anyhow!(
                        "security parameter is {actual:?}, certificate claims {claimed}"
                    )));
                }
            }
            println!("verified: final_dim = {}", cert.final_dim);
        }
        Command::Dlcp {
            n,
            k,
            code,
            budget,
            out,
        } => {
            let r = search::d_lcp_exact_tiny(n, k, &search_config(strategy, &budget))?;
            if let Some(p) = code {
                write_file(&p, &format_matrix(r.code.generator()))?;
            }
            let route = match r.route {
                search::DlcpRoute::OptimalHullShift => "optimal-hull-shift",
                search::DlcpRoute::PuncturedOptimal => "punctured-optimal",
            };
            let text = format!(
                "# n = {n}, k = {k}, d_L = {}, d_LCP = {}, route = {route}\n\
                 # optimal codes: {}, even-like with all-one: {}\n{}",
                r.d_l,
                r.d_lcp,
                r.report.with_distance,
                r.report.even_like_with_one,
                r.certificate.to_text()
            );
            emit(&out, &text)?;
        }
        Command::Search {
            n,
            k,
            target,
            code,
            budget,
            out,
        } => {
            let cfg = search_config(strategy, &budget);
            match search::lcp_security_search(n, k, target, &cfg)? {
                Some(hit) => {
                    if let Some(p) = code {
                        write_file(&p, &format_matrix(hit.code.generator()))?;
                    }
                    emit(&out, &hit.certificate.to_text())?;
                }
                None if n <= search::MAX_SEARCH_LENGTH
                    && search::gaussian_binomial(n, k) <= cfg.budget =>
                {
                    return Err(Failure::Obstruction(format!(
                        "status = none\nreason = no [{n},{k}] code with distance ≥ {target} has the all-one vector outside its hull\n"
                    )));
                }
                None => {
                    return Err(Failure::Budget(format!(
                        "no hit among {} sampled codes",
                        cfg.budget
                    )))
                }
            }
        }
        Command::Intersections {
            n,
            k1,
            k2,
            d1,
            d2,
            budget,
        } => {
            let r = search::guenda_conjecture_check(
                n,
                k1,
                k2,
                d1,
                d2,
                &search_config(strategy, &budget),
            )?;
            print!("{r}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Obstruction(report)) => {
            print!("{report}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exhausted: {msg}");
            ExitCode::from(3)
        }
    }
}
