//! `dgft`: build directed graph Fourier bases and run filtering experiments.

mod error;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dgft_core::{
    construct, denoise_experiment, directed_variation, directed_variation_l1, format_signal,
    forward, ideal_frequencies, inverse, lowpass, normalized_dispersion, oracle_select_with_cap,
    parse_digraph, parse_signal, random_connected_digraph, BasisDocument, DgftBasis, DgftOptions,
    Digraph, FilterSpec, JacobiConfig, SpectrumSignal, DEFAULT_ORACLE_CAP,
};

use crate::error::CliError;

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "dgft",
    version,
    about = "Directed graph Fourier transform toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the DGFT basis of a graph and write it as a basis document
    Basis {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        build: BuildArgs,
        /// Write the document here; without it the document goes to stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print Laplacian eigenvalues and the candidate frequency pairs
    Spectrum {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Compare greedy selection against exhaustive enumeration
    Oracle {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Forward (or inverse) transform of a signal file; `-` reads stdin
    Transform {
        basis: PathBuf,
        signal: PathBuf,
        #[arg(long)]
        inverse: bool,
    },
    /// Keep the `w` lowest-frequency components of a signal
    Filter {
        basis: PathBuf,
        signal: PathBuf,
        #[arg(long)]
        window: usize,
    },
    /// Monte-Carlo denoising of a smooth signal; emits `window,mean_ratio` CSV
    Denoise {
        /// Edge list or basis document
        input: Option<PathBuf>,
        #[arg(long, num_args = 3, value_names = ["N", "M", "SEED"], conflicts_with = "input")]
        gen: Option<Vec<u64>>,
        #[command(flatten)]
        build: BuildArgs,
        /// Window size `w` or inclusive range `a..b`
        #[arg(long)]
        window: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-2)]
        noise_var: f64,
    },
    /// Directed variations of every basis column and normalized dispersion
    Compare {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Print a seeded random connected digraph as an edge list
    Gen { n: usize, m: usize, seed: u64 },
}

#[derive(Args)]
struct GraphSource {
    /// Edge-list file; `-` reads stdin
    graph: Option<PathBuf>,
    /// Use a seeded random connected digraph instead of a file
    #[arg(long, num_args = 3, value_names = ["N", "M", "SEED"], conflicts_with = "graph")]
    gen: Option<Vec<u64>>,
}

#[derive(Args)]
struct BuildArgs {
    /// Search all eigenvectors for the top frequency, not only the dominant one
    #[arg(long)]
    scan_fmax: bool,
    /// Relative off-diagonal threshold of the eigensolver
    #[arg(long)]
    tol: Option<f64>,
}

impl BuildArgs {
    fn options(&self) -> CliResult<DgftOptions> {
        let mut jacobi = JacobiConfig::default();
        if let Some(tol) = self.tol {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(CliError::input(format!(
                    "--tol must be positive, got {tol}"
                )));
            }
            jacobi.rel_tol = tol;
        }
        Ok(DgftOptions {
            scan_all: self.scan_fmax,
            jacobi,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Basis { graph, build, out } => {
            cmd_basis(&load_graph(&graph)?, &build, out.as_deref())
        }
        Command::Spectrum { graph, build } => cmd_spectrum(&load_graph(&graph)?, &build),
        Command::Oracle { graph, build } => cmd_oracle(&load_graph(&graph)?, &build),
        Command::Transform {
            basis,
            signal,
            inverse,
        } => cmd_transform(&basis, &signal, inverse),
        Command::Filter {
            basis,
            signal,
            window,
        } => cmd_filter(&basis, &signal, window),
        Command::Denoise {
            input,
            gen,
            build,
            window,
            trials,
            seed,
            noise_var,
        } => {
            let basis = match (input, gen) {
                (Some(path), _) => {
                    let text = read_input(&path)?;
                    if text.trim_start().starts_with('{') {
                        BasisDocument::from_json(&text)?.to_basis()
                    } else {
                        construct(&parse_digraph(&text)?, &build.options()?)?.basis
                    }
                }
                (None, gen) => {
                    let g = load_graph(&GraphSource { graph: None, gen })?;
                    construct(&g, &build.options()?)?.basis
                }
            };
            cmd_denoise(&basis, &window, trials, seed, noise_var)
        }
        Command::Compare { graph, build } => cmd_compare(&load_graph(&graph)?, &build),
        Command::Gen { n, m, seed } => {
            let g = random_connected_digraph(n, m, seed)?;
            emit(&g.to_edge_list())
        }
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load_graph(src: &GraphSource) -> CliResult<Digraph> {
    match (&src.graph, &src.gen) {
        (Some(path), _) => Ok(parse_digraph(&read_input(path)?)?),
        (None, Some(gen)) => {
            let (n, m, seed) = (gen[0] as usize, gen[1] as usize, gen[2]);
            Ok(random_connected_digraph(n, m, seed)?)
        }
        (None, None) => Err(CliError::input(
            "no graph given: pass a file or --gen N M SEED",
        )),
    }
}

fn load_basis(path: &Path) -> CliResult<DgftBasis> {
    Ok(BasisDocument::from_json(&read_input(path)?)?.to_basis())
}

fn emit(text: &str) -> CliResult {
    let mut out = io::stdout().lock();
    // a closed pipe downstream is not an error worth reporting
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
    Ok(())
}

fn cmd_basis(g: &Digraph, build: &BuildArgs, out: Option<&Path>) -> CliResult {
    let d = construct(g, &build.options()?)?;
    let doc = BasisDocument::from_dgft(&d);
    if d.basis
        .frequencies
        .last()
        .is_some_and(|&f| f > d.fmax.value)
    {
        eprintln!(
            "note: an interior component exceeds f_max_approx; --scan-fmax pins the largest one"
        );
    }

    let mut table = format!(
        "n {}\nlambda_max {:?}\nf_max_approx {:?}\n\ncomponent\tfrequency\teig_index\tsign\n",
        doc.n, d.fmax.lambda_max, d.fmax.value
    );
    for (k, (f, p)) in doc.frequencies.iter().zip(&doc.provenance).enumerate() {
        table.push_str(&format!("{}\t{f:?}\t{}\t{}\n", k + 1, p.eig_index, p.sign));
    }
    table.push_str(&format!(
        "\ndispersion {:?}\ndispersion_complement {:?}\n",
        doc.dispersion, doc.dispersion_complement
    ));

    match out {
        Some(path) => {
            fs::write(path, doc.to_json())
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            emit(&table)
        }
        None => {
            eprint!("{table}");
            emit(&doc.to_json())
        }
    }
}

fn cmd_spectrum(g: &Digraph, build: &BuildArgs) -> CliResult {
    let d = construct(g, &build.options()?)?;
    let mut s = String::from("eig_index\teigenvalue\n");
    for (k, l) in d.eigen.eigenvalues.iter().enumerate() {
        s.push_str(&format!("{k}\t{l:?}\n"));
    }
    s.push_str(&format!(
        "\nf_max_approx {:?} (eig_index {}, sign {})\n\neig_index\tf_pos\tf_neg\n",
        d.fmax.value, d.fmax.achiever.eig_index, d.fmax.achiever.sign
    ));
    for p in &d.candidates {
        s.push_str(&format!("{}\t{:?}\t{:?}\n", p.eig_index, p.f_pos, p.f_neg));
    }
    emit(&s)
}

fn oracle_cap() -> CliResult<usize> {
    match std::env::var("DGFT_ORACLE_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::input(format!("DGFT_ORACLE_CAP must be an integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

fn cmd_oracle(g: &Digraph, build: &BuildArgs) -> CliResult {
    let cap = oracle_cap()?;
    let pairs = g.node_count().saturating_sub(2);
    if pairs > cap {
        return Err(dgft_core::Error::TooLarge { pairs, cap }.into());
    }
    let d = construct(g, &build.options()?)?;
    let oracle = oracle_select_with_cap(&d.candidates, d.fmax.value, cap)?;
    let greedy = &d.selection;
    let ratio = if oracle.dispersion_complement > 0.0 {
        greedy.dispersion_complement / oracle.dispersion_complement
    } else {
        1.0
    };
    emit(&format!(
        "pairs {}\nf_max_approx {:?}\ngreedy_dispersion {:?}\noracle_dispersion {:?}\n\
         greedy_complement {:?}\noracle_complement {:?}\nratio {:?}\n",
        d.candidates.len(),
        d.fmax.value,
        greedy.dispersion,
        oracle.dispersion,
        greedy.dispersion_complement,
        oracle.dispersion_complement,
        ratio
    ))
}

fn cmd_transform(basis: &Path, signal: &Path, inverse_flag: bool) -> CliResult {
    let b = load_basis(basis)?;
    let x = parse_signal(&read_input(signal)?)?;
    let out = if inverse_flag {
        inverse(&b, &SpectrumSignal(x.into_inner()))?.into_inner()
    } else {
        forward(&b, &x)?.0
    };
    emit(&format_signal(&out))
}

fn cmd_filter(basis: &Path, signal: &Path, window: usize) -> CliResult {
    let b = load_basis(basis)?;
    let y = parse_signal(&read_input(signal)?)?;
    let spec = FilterSpec::new(window, b.len())?;
    emit(&format_signal(&lowpass(&b, &y, &spec)?))
}

/// `w` or inclusive `a..b`.
fn parse_windows(spec: &str, n: usize) -> CliResult<Vec<usize>> {
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| CliError::input(format!("bad window `{spec}`")))
    };
    let range = match spec.split_once("..") {
        Some((a, b)) => num(a)?..=num(b)?,
        None => {
            let w = num(spec)?;
            w..=w
        }
    };
    if range.is_empty() {
        return Err(CliError::input(format!("empty window range `{spec}`")));
    }
    for w in [*range.start(), *range.end()] {
        FilterSpec::new(w, n)?;
    }
    Ok(range.collect())
}

fn cmd_denoise(b: &DgftBasis, window: &str, trials: usize, seed: u64, noise_var: f64) -> CliResult {
    let windows = parse_windows(window, b.len())?;
    let mut csv = String::from("window,mean_ratio\n");
    for w in windows {
        let spec = FilterSpec::new(w, b.len())?;
        let report = denoise_experiment(b, &spec, trials, noise_var, seed)?;
        csv.push_str(&format!("{w},{:?}\n", report.mean_ratio));
    }
    eprintln!(
        "n {} trials {trials} noise_var {noise_var:?} seed {seed}",
        b.len()
    );
    emit(&csv)
}

fn cmd_compare(g: &Digraph, build: &BuildArgs) -> CliResult {
    let d = construct(g, &build.options()?)?;
    let n = d.basis.len();
    let mut s = String::from("component\tdv\tdv_l1\n");
    let mut l1 = Vec::with_capacity(n);
    for k in 0..n {
        let col = d.basis.column(k);
        let dv = directed_variation(g, &col)?;
        let dv1 = directed_variation_l1(g, &col)?;
        l1.push(dv1);
        s.push_str(&format!("{}\t{dv:?}\t{dv1:?}\n", k + 1));
    }
    let fmt = |r: Result<f64, dgft_core::Error>| match r {
        Ok(v) => format!("{v:?}"),
        Err(_) => "undefined".to_string(),
    };
    let ideal = ideal_frequencies(n, d.fmax.value).and_then(|f| normalized_dispersion(&f));
    s.push_str(&format!(
        "\nnormalized_dispersion_dv_l1 {}\nnormalized_dispersion_ideal {}\n",
        fmt(normalized_dispersion(&l1)),
        fmt(ideal)
    ));
    emit(&s)
}
