//! Command-line runner: argument types, per-command execution and output.
//!
//! Every artifact embeds the resolved configuration (all arguments except
//! `--threads` and `--output`, which do not change results).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{class_number, gauss_count, l_one_chi, l_one_from_class_number, Discriminant};
use crate::error::{Error, Result};
use crate::harmonics::{
    aggregates_from_points, cap_discrepancy_estimate, discrepancy_bound, variance_series,
    variance_series_from_aggregates, weyl_sums, zonal_coeffs, VarianceSeries,
};
use crate::lattice::{
    enumerate, is_three_square_representable, m_count_in, pair_table_of, write_lattice_set,
    write_pair_table_csv, LatticeSet,
};
use crate::report::{write_config_comment, write_csv, write_json, Cell};
use crate::spatial::{
    binomial_sample, box_moment, covering_lower_bound, covering_radius, covering_radius_mesh,
    geodesic_to_chord, nn_spacings, number_variance, riesz_energy, ripley_k, ripley_threshold,
    truncated_energy, AnnulusSpec, UnitPointSet, SPACING_MEAN_BOUND,
};
use crate::twosquares::{brun_step_check, gap_probe, gap_scan, BrunStep, ProbeReport};
use crate::verify::{verify_arith, verify_gauss, ArithReport, GaussReport};

#[derive(Debug, Clone, Parser)]
#[command(name = "sphere-lattice", version, about = "Integer points on spheres and their statistics")]
pub struct Cli {
    /// Cap on worker threads; outputs do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the artifact here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Output format (default depends on the command).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// List E(n) in the "x1 x2 x3" text format.
    Enumerate(NArgs),
    /// Inner-product histogram t -> A(n,t) as CSV.
    Pairs(NArgs),
    /// Riesz s-energy of the projected set.
    Energy(EnergyArgs),
    /// Ripley count of close pairs, cross-checked against the arithmetic count.
    Ripley(RipleyArgs),
    /// Nearest-neighbour spacing statistics.
    Spacing(SpacingArgs),
    /// Exact covering radius.
    Covering(CoveringArgs),
    /// Annulus number variance (Monte Carlo and/or spectral series).
    Variance(VarianceArgs),
    /// Second moment of counts over equal-area cells.
    Boxes(BoxesArgs),
    /// Weyl sums of one degree.
    Weyl(WeylArgs),
    /// Erdős-Turán bound shape and a sampled cap-discrepancy lower bound.
    Discrepancy(DiscrepancyArgs),
    /// Pair-count formulas against brute force, plus class-number checks.
    VerifyArith(VerifyArgs),
    /// N_n from class numbers and from L(1, χ).
    Gauss(GaussArgs),
    /// Zonal coefficients h(m) of a cap or annulus.
    Zonal(ZonalArgs),
    /// Maximal gaps between sums of two squares in dyadic windows.
    TwosqGaps(GapsArgs),
    /// Lattice points near the pole of E(m²) versus dist(2m, S₂).
    TwosqProbe(ProbeArgs),
    /// Any statistic evaluated on independent uniform points.
    Baseline(BaselineArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NArgs {
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EnergyArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    /// Truncate the kernel at n^{s·rho}.
    #[arg(long)]
    pub rho: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RipleyArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub r: f64,
    /// Read radii as geodesic angles in radians.
    #[arg(long)]
    pub geodesic: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpacingArgs {
    #[arg(long)]
    pub n: u64,
    /// Include every rescaled spacing in the output.
    #[arg(long)]
    pub values: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CoveringArgs {
    #[arg(long)]
    pub n: u64,
    /// Also run the mesh estimator at this resolution.
    #[arg(long)]
    pub mesh: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AnnulusArgs {
    #[arg(long, default_value_t = 0.0)]
    pub rho1: f64,
    #[arg(long)]
    pub rho2: Option<f64>,
    /// Cap of this normalized area (instead of --rho2).
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Read radii as geodesic angles in radians.
    #[arg(long)]
    pub geodesic: bool,
}

impl AnnulusArgs {
    fn resolve(&self) -> Result<AnnulusSpec> {
        let conv = |r: f64| if self.geodesic { geodesic_to_chord(r) } else { r };
        match (self.sigma, self.rho2) {
            (Some(s), None) if self.rho1 == 0.0 => AnnulusSpec::cap_with_area(s),
            (None, Some(r2)) => AnnulusSpec::new(conv(self.rho1), conv(r2)),
            _ => Err(Error::domain("give either --rho2 (with optional --rho1) or --sigma alone")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarianceMethod {
    Mc,
    Series,
    Both,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VarianceArgs {
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub annulus: AnnulusArgs,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = VarianceMethod::Both)]
    pub method: VarianceMethod,
    #[arg(long, default_value_t = 500)]
    pub m_max: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BoxesArgs {
    #[arg(long)]
    pub n: u64,
    /// Number of cells (default ⌈√n⌉).
    #[arg(long)]
    pub cells: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WeylArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub degree: usize,
    /// Use probability-orthonormal harmonics divided by N.
    #[arg(long)]
    pub normalized: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DiscrepancyArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 20)]
    pub m_max: usize,
    /// Random cap centers, in addition to every point of the set.
    #[arg(long, default_value_t = 1000)]
    pub centers: usize,
    /// Cap radii, spaced evenly in area.
    #[arg(long, default_value_t = 64)]
    pub radii: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 500)]
    pub n_max: u64,
    /// Upper end of the class-number range (default: n-max).
    #[arg(long)]
    pub gauss_max: Option<u64>,
    #[arg(long, default_value_t = 1e-8)]
    pub target_error: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GaussArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub target_error: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZonalArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub annulus: AnnulusArgs,
    #[arg(long, default_value_t = 100)]
    pub m_max: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GapsArgs {
    /// Window starts, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub y: Vec<u64>,
    /// Add the powers of ten from 10³ up to this bound.
    #[arg(long)]
    pub y_max: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ProbeArgs {
    #[arg(long)]
    pub m: u64,
    #[arg(long)]
    pub h: u64,
    /// Exponent of the smoothness cutoff in the Brun-step check.
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Energy,
    Ripley,
    Spacing,
    Covering,
    Variance,
    Boxes,
    Weyl,
    Discrepancy,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BaselineArgs {
    /// Number of uniform points N.
    #[arg(long)]
    pub count: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub statistic: Statistic,
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long)]
    pub r: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub annulus: AnnulusArgs,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 500)]
    pub m_max: usize,
    #[arg(long)]
    pub cells: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    #[arg(long, default_value_t = 1000)]
    pub centers: usize,
    #[arg(long, default_value_t = 64)]
    pub radii: usize,
    #[arg(long)]
    pub mesh: Option<f64>,
}

/// The configuration block written into every artifact.
#[derive(Serialize)]
struct Resolved<'a> {
    #[serde(flatten)]
    command: &'a Command,
    format: Format,
}

fn nonempty_lattice(n: u64) -> Result<LatticeSet> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if !is_three_square_representable(n) {
        return Err(Error::domain(format!(
            "n = {n} has the form 4^a(8b+7), so it is not a sum of three squares and E(n) is empty"
        )));
    }
    Ok(enumerate(n))
}

#[derive(Serialize)]
struct EnumerateResult {
    n: u64,
    #[serde(rename = "N")]
    count: usize,
    representable: bool,
    points: Vec<[i64; 3]>,
}

#[derive(Serialize)]
struct PairsResult {
    n: u64,
    #[serde(rename = "N")]
    count: usize,
    total: u64,
    entries: Vec<(i64, u64)>,
}

#[derive(Serialize)]
struct EnergyResult {
    n: Option<u64>,
    #[serde(rename = "N")]
    count: usize,
    s: f64,
    rho: Option<f64>,
    value: f64,
    baseline: f64,
    relative_deviation: f64,
}

#[derive(Serialize)]
struct RipleyResult {
    n: Option<u64>,
    #[serde(rename = "N")]
    count: usize,
    r: f64,
    k: u64,
    value: u64,
    baseline: f64,
    ratio: f64,
    /// Same count from the inner-product side, for lattice sets.
    m_count: Option<u64>,
}

#[derive(Serialize)]
struct SpacingResult {
    n: Option<u64>,
    #[serde(rename = "N")]
    count: usize,
    mean: f64,
    ks_distance_to_exp: f64,
    values: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct CoveringResult {
    n: Option<u64>,
    #[serde(rename = "N")]
    count: usize,
    value: f64,
    lower_bound: f64,
    /// value · N^{1/4}.
    scaled: f64,
    mesh_resolution: Option<f64>,
    mesh_value: Option<f64>,
}

#[derive(Serialize)]
struct VarianceResult {
    n: Option<u64>,
    #[serde(rename = "N")]
    count: usize,
    rho1: f64,
    rho2: f64,
    sigma: f64,
    seed: u64,
    samples: usize,
    mean: Option<f64>,
    value: Option<f64>,
    mean_se: Option<f64>,
    variance_se: Option<f64>,
    expected_mean: f64,
    baseline: f64,
    ratio: Option<f64>,
    series: Option<VarianceSeries>,
}

#[derive(Serialize)]
struct BoxesResult {
    n: Option<u64>,
    #[serde(rename = "N")]
    count: usize,
    cells: usize,
    sum_counts: u64,
    sum_squares: u64,
    /// sum_squares / √n (lattice) or / √N (baseline).
    value: f64,
    baseline: f64,
    max_cell_diameter: f64,
    /// Ordered pairs within the cell diameter; bounds sum_squares.
    close_pairs: Option<u64>,
}

#[derive(Serialize)]
struct WeylResult {
    n: Option<u64>,
    #[serde(rename = "N")]
    count: usize,
    degree: usize,
    normalized: bool,
    value: f64,
    values: Vec<f64>,
}

#[derive(Serialize)]
struct DiscrepancyResult {
    n: Option<u64>,
    #[serde(rename = "N")]
    count: usize,
    m_max: usize,
    value: f64,
    estimate: f64,
    seed: u64,
    samples: usize,
}

#[derive(Serialize)]
struct VerifyResult {
    arith: ArithReport,
    gauss: GaussReport,
}

#[derive(Serialize)]
struct GaussResult {
    n: u64,
    #[serde(rename = "N")]
    count: usize,
    discriminant: i64,
    class_number: u64,
    gauss_count: u64,
    l_value: f64,
    l_error_bound: f64,
    l_from_class_number: f64,
    value: f64,
}

#[derive(Serialize)]
struct ZonalResult {
    rho1: f64,
    rho2: f64,
    sigma: f64,
    m_max: usize,
    coeffs: Vec<f64>,
    parseval: f64,
}

#[derive(Serialize)]
struct ProbeResult {
    probe: ProbeReport,
    brun: BrunStep,
}

fn format_for(cmd: &Command, requested: Option<Format>) -> Result<Format> {
    let (default, allowed): (Format, &[Format]) = match cmd {
        Command::Enumerate(_) => (Format::Text, &[Format::Text, Format::Json]),
        Command::Pairs(_) => (Format::Csv, &[Format::Csv, Format::Json]),
        Command::Weyl(_) | Command::Zonal(_) => (Format::Json, &[Format::Json, Format::Csv]),
        Command::TwosqGaps(_) => (Format::Csv, &[Format::Csv, Format::Json]),
        _ => (Format::Json, &[Format::Json]),
    };
    let f = requested.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(Error::domain(format!("format {f:?} is not available for this command")));
    }
    Ok(f)
}

/// Parse-free entry point: run the command, writing to `--output` or stdout.
pub fn run(cli: &Cli) -> Result<()> {
    if let Some(t) = cli.threads {
        // Fails only if a pool already exists, in which case it is reused.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match &cli.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            execute(cli, &mut w)?;
            w.flush()?;
            Ok(())
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            execute(cli, &mut w)
        }
    }
}

/// Run the command and write its artifact to `w`.
pub fn execute<W: Write>(cli: &Cli, mut w: W) -> Result<()> {
    let format = format_for(&cli.command, cli.format)?;
    let config = Resolved { command: &cli.command, format };
    match &cli.command {
        Command::Enumerate(a) => {
            if a.n == 0 {
                return Err(Error::domain("n must be positive"));
            }
            if !is_three_square_representable(a.n) {
                eprintln!(
                    "warning: n = {} is not representable as a sum of three squares (n = 4^a(8b+7)); E(n) is empty",
                    a.n
                );
            }
            let set = enumerate(a.n);
            match format {
                Format::Text => {
                    write_config_comment(&mut w, &config)?;
                    write_lattice_set(&set, &mut w)?;
                }
                _ => {
                    let res = EnumerateResult {
                        n: a.n,
                        count: set.len(),
                        representable: !set.is_empty(),
                        points: set.points.iter().map(|p| p.coords()).collect(),
                    };
                    write_json(&mut w, &config, &res)?;
                }
            }
        }
        Command::Pairs(a) => {
            let set = nonempty_lattice(a.n)?;
            let table = pair_table_of(&set);
            let nn = set.len() as u64;
            if table.total() != nn * nn || table.get(a.n as i64) != nn {
                return Err(Error::Invariant("pair table marginals: sum A(n,t) = N^2 and A(n,n) = N".into()));
            }
            match format {
                Format::Csv => {
                    write_config_comment(&mut w, &config)?;
                    write_pair_table_csv(&table, &mut w)?;
                }
                _ => {
                    let res = PairsResult {
                        n: a.n,
                        count: set.len(),
                        total: table.total(),
                        entries: table.entries.iter().map(|(&t, &c)| (t, c)).collect(),
                    };
                    write_json(&mut w, &config, &res)?;
                }
            }
        }
        Command::Energy(a) => {
            let pts = UnitPointSet::from_lattice(&nonempty_lattice(a.n)?);
            write_json(&mut w, &config, &energy(&pts, a.s, a.rho)?)?;
        }
        Command::Ripley(a) => {
            let set = nonempty_lattice(a.n)?;
            let pts = UnitPointSet::from_lattice(&set);
            let r = if a.geodesic { geodesic_to_chord(a.r) } else { a.r };
            let mut res = ripley(&pts, r)?;
            let arith = m_count_in(&set, 0.0, ripley_threshold(r, a.n));
            res.m_count = Some(arith);
            if arith != res.k {
                return Err(Error::Invariant(format!(
                    "Ripley count {} differs from the pair-count sum M(n; 0, r^2 n) = {arith}",
                    res.k
                )));
            }
            write_json(&mut w, &config, &res)?;
        }
        Command::Spacing(a) => {
            let pts = UnitPointSet::from_lattice(&nonempty_lattice(a.n)?);
            write_json(&mut w, &config, &spacing(&pts, a.values)?)?;
        }
        Command::Covering(a) => {
            let pts = UnitPointSet::from_lattice(&nonempty_lattice(a.n)?);
            write_json(&mut w, &config, &covering(&pts, a.mesh)?)?;
        }
        Command::Variance(a) => {
            let set = nonempty_lattice(a.n)?;
            let pts = UnitPointSet::from_lattice(&set);
            let spec = a.annulus.resolve()?;
            let mut res = variance_mc(&pts, &spec, a.samples, a.seed, a.method != VarianceMethod::Series)?;
            if a.method != VarianceMethod::Mc {
                res.series = Some(variance_series(&pair_table_of(&set), &spec, a.m_max)?);
            }
            write_json(&mut w, &config, &res)?;
        }
        Command::Boxes(a) => {
            let set = nonempty_lattice(a.n)?;
            let pts = UnitPointSet::from_lattice(&set);
            let cells = a.cells.unwrap_or((a.n as f64).sqrt().ceil() as usize);
            let mut res = boxes(&pts, cells, (a.n as f64).sqrt())?;
            let d = res.max_cell_diameter;
            let close = pair_table_of(&set).shell_sum(-1.0, d * d * a.n as f64 * (1.0 + 1e-12));
            res.close_pairs = Some(close);
            if res.sum_squares > close {
                return Err(Error::Invariant(format!(
                    "box second moment {} exceeds the {close} ordered pairs within one cell diameter",
                    res.sum_squares
                )));
            }
            write_json(&mut w, &config, &res)?;
        }
        Command::Weyl(a) => {
            let pts = UnitPointSet::from_lattice(&nonempty_lattice(a.n)?);
            let res = weyl(&pts, a.degree, a.normalized)?;
            match format {
                Format::Csv => {
                    let rows = res.values.iter().enumerate().map(|(j, &v)| vec![Cell::from(j), Cell::from(v)]).collect();
                    write_csv(&mut w, &config, &["j", "value"], rows)?;
                }
                _ => write_json(&mut w, &config, &res)?,
            }
        }
        Command::Discrepancy(a) => {
            let pts = UnitPointSet::from_lattice(&nonempty_lattice(a.n)?);
            write_json(&mut w, &config, &discrepancy(&pts, a.m_max, a.centers, a.radii, a.seed)?)?;
        }
        Command::VerifyArith(a) => {
            let arith = verify_arith(a.n_max)?;
            let gauss = verify_gauss(a.gauss_max.unwrap_or(a.n_max), a.target_error)?;
            let ok = arith.ok() && gauss.ok();
            write_json(&mut w, &config, &VerifyResult { arith, gauss })?;
            if !ok {
                w.flush()?;
                return Err(Error::Invariant(
                    "formula and brute-force counts disagree; see the mismatch lists in the report".into(),
                ));
            }
        }
        Command::Gauss(a) => {
            let count = gauss_count(a.n)?;
            let disc = Discriminant::of_squarefree(a.n)?;
            let l = l_one_chi(a.n, a.target_error)?;
            let set = enumerate(a.n);
            if set.len() as u64 != count {
                return Err(Error::Invariant(format!(
                    "class-number count {count} differs from |E(n)| = {}",
                    set.len()
                )));
            }
            let res = GaussResult {
                n: a.n,
                count: set.len(),
                discriminant: disc.d,
                class_number: class_number(disc.d)?,
                gauss_count: count,
                l_value: l.value,
                l_error_bound: l.error_bound,
                l_from_class_number: l_one_from_class_number(a.n)?,
                value: 24.0 / std::f64::consts::PI * (a.n as f64).sqrt() * l.value,
            };
            write_json(&mut w, &config, &res)?;
        }
        Command::Zonal(a) => {
            let spec = a.annulus.resolve()?;
            let z = zonal_coeffs(&spec, a.m_max);
            match format {
                Format::Csv => {
                    let rows = z.coeffs.iter().enumerate().map(|(m, &h)| vec![Cell::from(m), Cell::from(h)]).collect();
                    write_csv(&mut w, &config, &["m", "h"], rows)?;
                }
                _ => {
                    let res = ZonalResult {
                        rho1: spec.rho1,
                        rho2: spec.rho2,
                        sigma: spec.area(),
                        m_max: a.m_max,
                        parseval: z.parseval(),
                        coeffs: z.coeffs,
                    };
                    write_json(&mut w, &config, &res)?;
                }
            }
        }
        Command::TwosqGaps(a) => {
            let mut ys = a.y.clone();
            if let Some(top) = a.y_max {
                let mut y = 1000u64;
                while y <= top {
                    ys.push(y);
                    y *= 10;
                }
            }
            if ys.is_empty() {
                return Err(Error::domain("give window starts with --y or --y-max"));
            }
            let rows = gap_scan(&ys)?;
            match format {
                Format::Csv => {
                    let cells = rows.iter().map(|r| vec![Cell::from(r.y), Cell::from(r.g), Cell::from(r.ratio)]).collect();
                    write_csv(&mut w, &config, &["Y", "G", "ratio"], cells)?;
                }
                _ => write_json(&mut w, &config, &rows)?,
            }
        }
        Command::TwosqProbe(a) => {
            let probe = gap_probe(a.m, a.h)?;
            let brun = brun_step_check(a.m, a.delta)?;
            write_json(&mut w, &config, &ProbeResult { probe, brun })?;
        }
        Command::Baseline(a) => {
            if a.count == 0 {
                return Err(Error::domain("baseline needs --count >= 1"));
            }
            let pts = binomial_sample(a.count, a.seed);
            let need_r = || a.r.ok_or_else(|| Error::domain("this statistic needs --r"));
            match a.statistic {
                Statistic::Energy => write_json(&mut w, &config, &energy(&pts, a.s, None)?)?,
                Statistic::Ripley => write_json(&mut w, &config, &ripley(&pts, need_r()?)?)?,
                Statistic::Spacing => write_json(&mut w, &config, &spacing(&pts, false)?)?,
                Statistic::Covering => write_json(&mut w, &config, &covering(&pts, a.mesh)?)?,
                Statistic::Variance => {
                    let spec = a.annulus.resolve()?;
                    let mut res = variance_mc(&pts, &spec, a.samples, a.seed, true)?;
                    if a.count <= 5000 {
                        let aggs = aggregates_from_points(&pts, a.m_max);
                        res.series = Some(variance_series_from_aggregates(&aggs, &spec)?);
                    }
                    write_json(&mut w, &config, &res)?;
                }
                Statistic::Boxes => {
                    let cells = a.cells.unwrap_or((a.count as f64).sqrt().ceil() as usize);
                    write_json(&mut w, &config, &boxes(&pts, cells, (a.count as f64).sqrt())?)?;
                }
                Statistic::Weyl => write_json(&mut w, &config, &weyl(&pts, a.degree, true)?)?,
                Statistic::Discrepancy => write_json(
                    &mut w,
                    &config,
                    &discrepancy(&pts, a.m_max.min(60), a.centers, a.radii, a.seed)?,
                )?,
            }
        }
    }
    Ok(())
}

fn energy(pts: &UnitPointSet, s: f64, rho: Option<f64>) -> Result<EnergyResult> {
    let rep = match rho {
        Some(r) => truncated_energy(pts, s, r)?,
        None => riesz_energy(pts, s)?,
    };
    Ok(EnergyResult {
        n: pts.source_n,
        count: pts.len(),
        s,
        rho,
        value: rep.value,
        baseline: rep.baseline,
        relative_deviation: rep.relative_deviation(),
    })
}

fn ripley(pts: &UnitPointSet, r: f64) -> Result<RipleyResult> {
    let rep = ripley_k(pts, r)?;
    Ok(RipleyResult {
        n: pts.source_n,
        count: pts.len(),
        r,
        k: rep.k,
        value: rep.k,
        baseline: rep.baseline,
        ratio: rep.k as f64 / rep.baseline,
        m_count: None,
    })
}

fn spacing(pts: &UnitPointSet, values: bool) -> Result<SpacingResult> {
    let rep = nn_spacings(pts)?;
    if rep.mean > SPACING_MEAN_BOUND {
        return Err(Error::Invariant(format!(
            "mean rescaled spacing {} exceeds the packing bound {SPACING_MEAN_BOUND}",
            rep.mean
        )));
    }
    Ok(SpacingResult {
        n: pts.source_n,
        count: pts.len(),
        mean: rep.mean,
        ks_distance_to_exp: rep.ks_distance_to_exp,
        values: values.then_some(rep.rescaled_values),
    })
}

fn covering(pts: &UnitPointSet, mesh: Option<f64>) -> Result<CoveringResult> {
    let value = covering_radius(pts)?;
    let lower_bound = covering_lower_bound(pts.len());
    if value < lower_bound {
        return Err(Error::Invariant(format!(
            "covering radius {value} is below the area bound 2/sqrt(N) = {lower_bound}"
        )));
    }
    let mesh_value = mesh.map(|res| covering_radius_mesh(pts, res)).transpose()?;
    Ok(CoveringResult {
        n: pts.source_n,
        count: pts.len(),
        value,
        lower_bound,
        scaled: value * (pts.len() as f64).powf(0.25),
        mesh_resolution: mesh,
        mesh_value,
    })
}

fn variance_mc(pts: &UnitPointSet, spec: &AnnulusSpec, samples: usize, seed: u64, sample: bool) -> Result<VarianceResult> {
    let sigma = spec.area();
    let nsigma = pts.len() as f64 * sigma;
    let mut res = VarianceResult {
        n: pts.source_n,
        count: pts.len(),
        rho1: spec.rho1,
        rho2: spec.rho2,
        sigma,
        seed,
        samples,
        mean: None,
        value: None,
        mean_se: None,
        variance_se: None,
        expected_mean: nsigma,
        baseline: nsigma,
        ratio: None,
        series: None,
    };
    if sample {
        let rep = number_variance(pts, spec, samples, seed)?;
        res.mean = Some(rep.mean);
        res.value = Some(rep.variance);
        res.mean_se = Some(rep.mean_se);
        res.variance_se = Some(rep.variance_se);
        res.ratio = Some(rep.variance / nsigma);
    }
    Ok(res)
}

fn boxes(pts: &UnitPointSet, cells: usize, scale: f64) -> Result<BoxesResult> {
    let bm = box_moment(pts, cells)?;
    if bm.sum_counts != pts.len() as u64 {
        return Err(Error::Invariant("box counts must add up to N".into()));
    }
    let n = pts.len() as f64;
    Ok(BoxesResult {
        n: pts.source_n,
        count: pts.len(),
        cells,
        sum_counts: bm.sum_counts,
        sum_squares: bm.sum_squares,
        value: bm.sum_squares as f64 / scale,
        baseline: n * n / cells as f64,
        max_cell_diameter: bm.max_cell_diameter,
        close_pairs: None,
    })
}

fn weyl(pts: &UnitPointSet, degree: usize, normalized: bool) -> Result<WeylResult> {
    let t = weyl_sums(pts, degree, normalized)?;
    Ok(WeylResult {
        n: pts.source_n,
        count: pts.len(),
        degree,
        normalized,
        value: t.aggregate(),
        values: t.values,
    })
}

fn discrepancy(pts: &UnitPointSet, m_max: usize, centers: usize, radii: usize, seed: u64) -> Result<DiscrepancyResult> {
    if radii == 0 {
        return Err(Error::domain("need at least one cap radius"));
    }
    let grid: Vec<f64> = (1..=radii).map(|k| 2.0 * (k as f64 / radii as f64).sqrt()).collect();
    let small = 1e-3 / (pts.len() as f64).sqrt();
    let mut grid = grid;
    grid.insert(0, small);
    Ok(DiscrepancyResult {
        n: pts.source_n,
        count: pts.len(),
        m_max,
        value: discrepancy_bound(pts, m_max)?,
        estimate: cap_discrepancy_estimate(pts, centers, &grid, seed)?,
        seed,
        samples: centers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<String> {
        let cli = Cli::try_parse_from(std::iter::once("sphere-lattice").chain(args.iter().copied()))
            .map_err(|e| Error::domain(e.to_string()))?;
        let mut buf = Vec::new();
        execute(&cli, &mut buf)?;
        Ok(String::from_utf8(buf).unwrap())
    }

    #[test]
    fn ripley_json() {
        let out = run_args(&["ripley", "--n", "5", "--r", "0.7746"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["config"]["command"], "ripley");
        assert_eq!(v["config"]["n"], 5);
        assert_eq!(v["result"]["k"], 72);
        let r: f64 = 0.7746;
        let base = v["result"]["baseline"].as_f64().unwrap();
        assert!((base - 24.0 * 23.0 * r * r / 4.0).abs() < 1e-9);
    }

    #[test]
    fn domain_errors() {
        let e = run_args(&["gauss", "--n", "15"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("7 (mod 8)"));
        let e = run_args(&["energy", "--n", "28"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(run_args(&["enumerate", "--n", "7"]).unwrap().contains("# n=7 N=0"));
        assert!(run_args(&["pairs", "--n", "5", "--format", "text"]).is_err());
    }
}
