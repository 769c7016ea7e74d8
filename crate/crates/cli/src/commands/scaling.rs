use std::path::PathBuf;

use clap::Args;
use gzl_core::scalinglaws::{
    brute_force_quanta_loss, elo_to_gamma, exponent_correlation_dataset, exponent_discrepancy, expected_loss_quanta,
    gamma_to_elo, size_scaling_exponent, ExponentDiscrepancy, QuantizationParams,
};
use gzl_core::zipfstats::{rank_curve, FitOptions};
use serde::{Deserialize, Serialize};

use super::{load_table, opt, write_csv_rows};
use crate::config::resolve;
use crate::error::CliError;
use crate::manifest::{with_suffix, write_json, Run};

#[derive(Args, Debug, Serialize)]
pub struct ScalingArgs {
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Quanta frequency exponent: p_k is proportional to k^-(alpha+1).
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long = "deltaL")]
    #[serde(rename = "delta_L")]
    pub delta_l: Option<f64>,
    #[arg(long = "Linf")]
    #[serde(rename = "L_inf")]
    pub l_inf: Option<f64>,
    /// Parameters per quantum.
    #[arg(long)]
    pub capacity: Option<f64>,
    /// Numbers of learned quanta, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<u64>>,
    /// Brute-force sums run to `n * cutoff_factor`.
    #[arg(long)]
    pub cutoff_factor: Option<u64>,
    /// Frequency tables as `temperature=path`, for the exponent table.
    #[arg(long, value_delimiter = ',')]
    pub runs: Option<Vec<String>>,
    /// Rank above which the tail exponent of each run is fitted.
    #[arg(long)]
    pub split: Option<u64>,
    /// Strength ratios to convert to Elo, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub gamma: Option<Vec<f64>>,
    /// Elo ratings to convert to strength ratios, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub elo: Option<Vec<f64>>,
    /// Elo of a strength ratio of 1.
    #[arg(long)]
    pub anchor: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScalingConfig {
    pub alpha: f64,
    #[serde(rename = "delta_L")]
    pub delta_l: f64,
    #[serde(rename = "L_inf")]
    pub l_inf: f64,
    pub capacity: f64,
    pub n: Vec<u64>,
    pub cutoff_factor: u64,
    pub runs: Vec<String>,
    pub split: u64,
    pub gamma: Vec<f64>,
    pub elo: Vec<f64>,
    pub anchor: f64,
    pub out: PathBuf,
}

impl Default for ScalingConfig {
    fn default() -> Self {
        ScalingConfig {
            alpha: 2.0,
            delta_l: 1.0,
            l_inf: 0.0,
            capacity: 1.0,
            n: vec![1, 10, 100, 1000],
            cutoff_factor: 100,
            runs: Vec::new(),
            split: 1000,
            gamma: Vec::new(),
            elo: Vec::new(),
            anchor: 0.0,
            out: "scaling".into(),
        }
    }
}

#[derive(Debug, Serialize)]
struct ScalingReport {
    params: QuantizationParams<f64>,
    /// Exponent of the loss in parameter count, `alpha - 1`.
    size_scaling_exponent: f64,
    /// Slopes between the smallest and largest `n`.
    discrepancy: Option<ExponentDiscrepancy<f64>>,
    gamma_to_elo: Vec<(f64, f64)>,
    elo_to_gamma: Vec<(f64, f64)>,
}

fn parse_run(s: &str) -> Result<(f64, PathBuf), CliError> {
    let (t, p) = s.split_once('=').ok_or_else(|| CliError::Config(format!("run {s:?} is not temperature=path")))?;
    let t = t.trim().parse().map_err(|_| CliError::Config(format!("bad temperature in {s:?}")))?;
    Ok((t, PathBuf::from(p.trim())))
}

pub fn run(args: ScalingArgs) -> Result<(), CliError> {
    let mut run = Run::start("scaling");
    let cfg: ScalingConfig = resolve(args.config.as_deref(), &args)?;
    let q = QuantizationParams { alpha: cfg.alpha, delta_l: cfg.delta_l, l_inf: cfg.l_inf, capacity: cfg.capacity };
    q.validate()?;

    let mut rows = Vec::with_capacity(cfg.n.len());
    for &n in &cfg.n {
        let formula = expected_loss_quanta(n, &q)?;
        let brute = brute_force_quanta_loss(n, &q, n.max(1) * cfg.cutoff_factor.max(10))?;
        let (lo, hi) = brute.limit_bounds();
        rows.push(format!("{n},{},{formula},{},{lo},{hi}", n as f64 * q.capacity, brute.midpoint()));
    }
    let csv = with_suffix(&cfg.out, "csv");
    let n_rows = write_csv_rows(&csv, "n,params,L_formula,L_bruteforce,L_bruteforce_lo,L_bruteforce_hi", rows)?;
    run.output(&csv, "csv", Some(n_rows));

    let (n_min, n_max) = (cfg.n.iter().copied().min(), cfg.n.iter().copied().max());
    let discrepancy = match (n_min, n_max) {
        (Some(a), Some(b)) if a >= 1 && b > a => Some(exponent_discrepancy(&q, a, b, cfg.cutoff_factor.max(10))?),
        _ => None,
    };
    let report = ScalingReport {
        params: q,
        size_scaling_exponent: size_scaling_exponent(q.alpha),
        discrepancy,
        gamma_to_elo: cfg.gamma.iter().map(|&g| Ok((g, gamma_to_elo(g, cfg.anchor)?))).collect::<Result<_, CliError>>()?,
        elo_to_gamma: cfg.elo.iter().map(|&e| Ok((e, elo_to_gamma(e, cfg.anchor)?))).collect::<Result<_, CliError>>()?,
    };
    let json = with_suffix(&cfg.out, "json");
    write_json(&json, &report)?;
    run.output(&json, "json", None);

    if !cfg.runs.is_empty() {
        let mut curves = Vec::new();
        for spec in &cfg.runs {
            let (t, path) = parse_run(spec)?;
            let (_, table) = load_table(&path)?;
            run.input(&path);
            curves.push((t, rank_curve::<f64>(&table)?));
        }
        let pairs = exponent_correlation_dataset(&curves, cfg.split, FitOptions::default())?;
        let csv = with_suffix(&cfg.out, "exponents.csv");
        let n = write_csv_rows(
            &csv,
            "temperature,zipf_alpha,fit_r2,split_rank,fit_lo,fit_hi,unique_states,predicted_alpha_n,scaling_alpha_n,scaling_source",
            pairs.iter().map(|p| {
                format!(
                    "{},{},{},{},{},{},{},{},{},{}",
                    p.temperature,
                    p.zipf_alpha,
                    p.fit_r2,
                    p.split_rank,
                    p.fit_lo,
                    p.fit_hi,
                    p.unique_states,
                    p.predicted_alpha_n,
                    opt(p.scaling_alpha_n),
                    serde_json::to_value(p.scaling_source).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
                )
            }),
        )?;
        run.output(&csv, "csv", Some(n));
    }
    run.finish(&cfg.out, None, &cfg)?;
    println!("{n_rows} loss points written to {}", csv.display());
    Ok(())
}
