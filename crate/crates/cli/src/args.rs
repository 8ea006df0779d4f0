use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "raman-nc", version, about = "Nonclassicality witnesses and count statistics for four-mode Raman scattering", allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Emit lambda targets as lambda - 1.
    #[arg(long, global = true)]
    pub minus_one: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate witnesses over a 0-2 axis parameter sweep.
    Witness(WitnessArgs),
    /// Count and quasi-distributions from their parameters.
    Dist(DistArgs),
    /// Sign table of every witness family over the preset's grid.
    Summary(SummaryArgs),
    /// Compare the model with exact truncated Fock-space evolution.
    Oracle(OracleArgs),
    /// List or print built-in and user presets.
    Presets(PresetsArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct ScenarioArgs {
    /// Built-in preset, or a `<name>.scenario` file under RAMAN_NC_PRESET_DIR.
    #[arg(long)]
    pub preset: Option<String>,
    /// Scenario file of `key = value` lines.
    #[arg(long, conflicts_with = "preset")]
    pub scenario: Option<PathBuf>,
    /// Override one scenario key, e.g. `--set phi_A=pi/6`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

#[derive(Args, Debug)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub source: ScenarioArgs,
    /// `name=min:max:count` with name in tau, p, theta1, theta2, mean_phonon, s.
    #[arg(long = "axis", value_name = "SPEC")]
    pub axes: Vec<String>,
    /// Comma-separated targets, e.g. `lambda_SA,Kp_SV,B_S,s_th_SV`.
    #[arg(long = "target", value_delimiter = ',', required = true)]
    pub targets: Vec<String>,
    /// Ordering parameter for s-dependent targets when s is not swept.
    #[arg(long, default_value = "1")]
    pub s: String,
}

#[derive(Args, Debug, Default)]
#[command(allow_negative_numbers = true)]
pub struct DistArgs {
    /// p_sv, p_lv, quasi_sv, quasi_lv, fano_L, fano_V, cond_L_given_V,
    /// cond_V_given_L, diff, poisson, subshot_R, s_th, s_th_sv, s_th_lv, s_shift
    pub name: String,
    #[arg(long = "B_S")]
    pub b_s: Option<f64>,
    #[arg(long = "B_L")]
    pub b_l: Option<f64>,
    #[arg(long = "B_V")]
    pub b_v: Option<f64>,
    #[arg(long = "B_i")]
    pub b_i: Option<f64>,
    #[arg(long = "B_j")]
    pub b_j: Option<f64>,
    #[arg(long = "K")]
    pub k: Option<f64>,
    #[arg(long = "K_SV")]
    pub k_sv: Option<f64>,
    #[arg(long = "K_LV")]
    pub k_lv: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub pair: Option<String>,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Quasi-distribution grid `min:max:count`, used for both axes.
    #[arg(long, default_value = "0:3:61")]
    pub grid: String,
    /// Range `a:b` of conditioning pump counts.
    #[arg(long = "n_L", default_value = "0:10")]
    pub n_l: String,
    #[arg(long)]
    pub given: Option<usize>,
    #[arg(long)]
    pub gt: Option<f64>,
    #[arg(long)]
    pub chit: Option<f64>,
    #[arg(long = "I_L")]
    pub i_l: Option<f64>,
    #[arg(long = "I_A")]
    pub i_a: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SummaryArgs {
    #[command(flatten)]
    pub source: ScenarioArgs,
    /// Replace the time grid, `min:max:count`.
    #[arg(long)]
    pub t: Option<String>,
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
pub struct OracleArgs {
    #[command(flatten)]
    pub source: ScenarioArgs,
    /// Comma-separated witness ids or B_X, C_X, D_XY, Dbar_XY, var_X, cov_XY.
    #[arg(long = "target", value_delimiter = ',')]
    pub targets: Vec<String>,
    /// Comma-separated evaluation times.
    #[arg(long = "t", value_delimiter = ',', required = true)]
    pub t: Vec<String>,
    /// Also report the joint count distribution of this pair at the largest time.
    #[arg(long)]
    pub counting: Option<String>,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    /// Count fluctuations: displace the pair by minus its mean amplitudes.
    #[arg(long)]
    pub fluctuations: bool,
    #[arg(long, default_value_t = 1e-15)]
    pub cutoff_tol: f64,
}

#[derive(Args, Debug)]
pub struct PresetsArgs {
    #[command(subcommand)]
    pub command: PresetsCommand,
}

#[derive(Subcommand, Debug)]
pub enum PresetsCommand {
    List,
    /// Print a preset as a scenario file.
    Show { name: String },
}
