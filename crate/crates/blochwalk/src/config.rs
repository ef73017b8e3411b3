//! Run configuration: command-line flags over a `key = value` file over defaults.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_2;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use blochwalk_core::{default_n_phi, default_n_theta, CoinPulse, SpinQuantum};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::RunError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Output {
    Wigner,
    Marginal,
    Sites,
    Sigma,
    Ideal,
}

impl Output {
    pub const ALL: [Output; 5] = [Output::Wigner, Output::Marginal, Output::Sites, Output::Sigma, Output::Ideal];

    pub fn name(self) -> &'static str {
        match self {
            Output::Wigner => "wigner",
            Output::Marginal => "marginal",
            Output::Sites => "sites",
            Output::Sigma => "sigma",
            Output::Ideal => "ideal",
        }
    }
}

impl FromStr for Output {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Output::ALL.into_iter().find(|o| o.name() == s).ok_or_else(|| format!("unknown output '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coin {
    Hadamard,
    Custom([f64; 3]),
}

impl Coin {
    pub fn pulse(self) -> CoinPulse {
        match self {
            Coin::Hadamard => CoinPulse::hadamard(),
            Coin::Custom(h) => CoinPulse::new(h),
        }
    }

    /// `hadamard` or `custom hx hy hz`, already split into tokens.
    pub fn parse_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self, RunError> {
        match tokens {
            [one] if one.as_ref() == "hadamard" => Ok(Coin::Hadamard),
            [kind, x, y, z] if kind.as_ref() == "custom" => {
                let mut h = [0.0; 3];
                for (slot, tok) in h.iter_mut().zip([x, y, z]) {
                    *slot = parse_number("coin", tok.as_ref())?;
                }
                Ok(Coin::Custom(h))
            }
            _ => {
                let joined: Vec<&str> = tokens.iter().map(|t| t.as_ref()).collect();
                Err(RunError::Config(format!(
                    "invalid coin '{}': expected 'hadamard' or 'custom hx hy hz'",
                    joined.join(" ")
                )))
            }
        }
    }
}

fn parse_number<T: FromStr>(key: &str, token: &str) -> Result<T, RunError> {
    token.trim().parse().map_err(|_| RunError::Config(format!("malformed number '{token}' for '{key}'")))
}

/// Settings from one source; `None` means "not given here".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigLayer {
    pub sites: Option<u32>,
    pub spins: Option<u32>,
    pub steps: Option<u32>,
    pub coin: Option<Coin>,
    pub theta0: Option<f64>,
    pub grid_theta: Option<usize>,
    pub grid_phi: Option<usize>,
    pub outputs: Option<BTreeSet<Output>>,
    pub out: Option<PathBuf>,
    pub svg: Option<bool>,
}

impl ConfigLayer {
    /// Fields set in `self` win over `lower`.
    pub fn over(self, lower: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            sites: self.sites.or(lower.sites),
            spins: self.spins.or(lower.spins),
            steps: self.steps.or(lower.steps),
            coin: self.coin.or(lower.coin),
            theta0: self.theta0.or(lower.theta0),
            grid_theta: self.grid_theta.or(lower.grid_theta),
            grid_phi: self.grid_phi.or(lower.grid_phi),
            outputs: self.outputs.or(lower.outputs),
            out: self.out.or(lower.out),
            svg: self.svg.or(lower.svg),
        }
    }

    /// Flat `key = value` lines; `#` starts a comment. Keys are the flag names
    /// (`grid-theta` and `grid_theta` are both accepted).
    pub fn parse_file_text(text: &str) -> Result<ConfigLayer, RunError> {
        let mut layer = ConfigLayer::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(RunError::Config(format!("line {}: expected 'key = value', got '{line}'", lineno + 1)));
            };
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            match key.as_str() {
                "sites" => layer.sites = Some(parse_number("sites", value)?),
                "spins" => layer.spins = Some(parse_number("spins", value)?),
                "steps" => layer.steps = Some(parse_number("steps", value)?),
                "theta0" => layer.theta0 = Some(parse_number("theta0", value)?),
                "grid-theta" => layer.grid_theta = Some(parse_number("grid-theta", value)?),
                "grid-phi" => layer.grid_phi = Some(parse_number("grid-phi", value)?),
                "coin" => {
                    let tokens: Vec<&str> = value.split([' ', '\t', ',']).filter(|t| !t.is_empty()).collect();
                    layer.coin = Some(Coin::parse_tokens(&tokens)?);
                }
                "outputs" => {
                    let set = value
                        .split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(|t| t.parse::<Output>().map_err(RunError::Config))
                        .collect::<Result<BTreeSet<_>, _>>()?;
                    layer.outputs = Some(set);
                }
                "out" => layer.out = Some(PathBuf::from(value)),
                "svg" => {
                    layer.svg = Some(match value {
                        "true" | "yes" | "1" => true,
                        "false" | "no" | "0" => false,
                        _ => return Err(RunError::Config(format!("invalid boolean '{value}' for 'svg'"))),
                    })
                }
                _ => {
                    return Err(RunError::Config(format!("line {}: unknown key '{}'", lineno + 1, key.trim())));
                }
            }
        }
        Ok(layer)
    }

    pub fn from_file(path: &Path) -> Result<ConfigLayer, RunError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::io(path, e))?;
        Self::parse_file_text(&text)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub sites: u32,
    pub spins: u32,
    pub steps: u32,
    pub coin: Coin,
    pub theta0: f64,
    pub n_theta: usize,
    pub n_phi: usize,
    pub outputs: BTreeSet<Output>,
    pub out_dir: PathBuf,
    pub svg: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::resolve(ConfigLayer::default()).expect("defaults are valid")
    }
}

impl RunConfig {
    /// Fills gaps with defaults (L = 6, N = 50, k = 2, Hadamard coin, equator,
    /// `n_theta = 2J + 2`, smallest multiple of `8L` above `2J` for `n_phi`) and
    /// validates.
    pub fn resolve(layer: ConfigLayer) -> Result<RunConfig, RunError> {
        let sites = layer.sites.unwrap_or(6);
        let spins = layer.spins.unwrap_or(50);
        if sites < 2 {
            return Err(RunError::Config(format!("sites must be at least 2, got {sites}")));
        }
        if spins < 1 {
            return Err(RunError::Config(format!("spins must be at least 1, got {spins}")));
        }
        let j = SpinQuantum::from_spins(spins);
        let theta0 = layer.theta0.unwrap_or(FRAC_PI_2);
        if !(0.0..=std::f64::consts::PI).contains(&theta0) {
            return Err(RunError::Config(format!("theta0 must lie in [0, pi], got {theta0}")));
        }
        let n_theta = layer.grid_theta.unwrap_or_else(|| default_n_theta(j));
        let n_phi = layer.grid_phi.unwrap_or_else(|| default_n_phi(j, sites));
        if n_theta == 0 {
            return Err(RunError::Config("grid-theta must be positive".into()));
        }
        if n_phi == 0 || !n_phi.is_multiple_of(sites as usize) {
            return Err(RunError::Config(format!("grid-phi must be a positive multiple of sites ({sites}), got {n_phi}")));
        }
        if let Coin::Custom(h) = layer.coin.unwrap_or(Coin::Hadamard) {
            if h.iter().any(|v| !v.is_finite()) {
                return Err(RunError::Config("coin pulse components must be finite".into()));
            }
        }
        Ok(RunConfig {
            sites,
            spins,
            steps: layer.steps.unwrap_or(2),
            coin: layer.coin.unwrap_or(Coin::Hadamard),
            theta0,
            n_theta,
            n_phi,
            outputs: layer.outputs.unwrap_or_else(|| Output::ALL.into_iter().collect()),
            out_dir: layer.out.unwrap_or_else(|| PathBuf::from("blochwalk-out")),
            svg: layer.svg.unwrap_or(true),
        })
    }

    pub fn spin(&self) -> SpinQuantum {
        SpinQuantum::from_spins(self.spins)
    }

    pub fn wants(&self, o: Output) -> bool {
        self.outputs.contains(&o)
    }

    /// Valid but questionable settings.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if 2 * self.steps >= self.sites {
            w.push(format!(
                "steps = {} >= sites / 2: the walk wraps around the circle; moments use unwrapped angles on [-pi, pi), \
                 where a circular (Holevo-type) spread measure would be more appropriate",
                self.steps
            ));
        }
        let j = self.spin();
        if self.n_theta < default_n_theta(j) {
            w.push(format!("grid-theta = {} is below 2J + 2 = {}; quadrature is not exact", self.n_theta, default_n_theta(j)));
        }
        if self.n_phi <= j.two_j() as usize {
            w.push(format!("grid-phi = {} does not exceed 2J = {}; azimuthal harmonics alias", self.n_phi, j.two_j()));
        }
        if self.spins > 200 {
            w.push(format!("spins = {} exceeds 200, the largest size the special functions are validated at", self.spins));
        }
        w
    }

    /// Echo for the manifest.
    pub fn to_json(&self) -> Value {
        let coin = match self.coin {
            Coin::Hadamard => json!("hadamard"),
            Coin::Custom(h) => json!({ "custom": h }),
        };
        json!({
            "sites": self.sites,
            "spins": self.spins,
            "steps": self.steps,
            "coin": coin,
            "theta0": self.theta0,
            "grid_theta": self.n_theta,
            "grid_phi": self.n_phi,
            "outputs": self.outputs.iter().map(|o| o.name()).collect::<Vec<_>>(),
            "out": self.out_dir.to_string_lossy(),
            "svg": self.svg,
        })
    }
}

#[derive(Debug, Parser)]
#[command(name = "blochwalk", version, about = "Discrete-time quantum walk of a spin coherent state on the Bloch sphere")]
#[command(args_conflicts_with_subcommands = true, allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve the walk and write the requested artifacts (the default).
    Run(RunArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Number of sites L on the circle.
    #[arg(long)]
    pub sites: Option<u32>,
    /// Number of spin-1/2 particles N in the walker (J = N/2).
    #[arg(long)]
    pub spins: Option<u32>,
    /// Number of walk steps k.
    #[arg(long)]
    pub steps: Option<u32>,
    /// `hadamard` or `custom HX HY HZ`.
    #[arg(long, num_args = 1..=4, value_names = ["KIND", "HX", "HY", "HZ"], allow_negative_numbers = true)]
    pub coin: Option<Vec<String>>,
    /// Polar angle of the walk's circle, radians.
    #[arg(long)]
    pub theta0: Option<f64>,
    /// Gauss-Legendre nodes in cos(theta).
    #[arg(long = "grid-theta")]
    pub grid_theta: Option<usize>,
    /// Uniform azimuthal nodes; must be a multiple of the number of sites.
    #[arg(long = "grid-phi")]
    pub grid_phi: Option<usize>,
    /// Comma-separated subset of wigner,marginal,sites,sigma,ideal.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub outputs: Option<Vec<Output>>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `key = value` config file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write SVG heatmaps next to the Wigner CSVs.
    #[arg(long, overrides_with = "no_svg")]
    pub svg: bool,
    #[arg(long = "no-svg", overrides_with = "svg")]
    pub no_svg: bool,
}

impl RunArgs {
    pub fn to_layer(&self) -> Result<ConfigLayer, RunError> {
        Ok(ConfigLayer {
            sites: self.sites,
            spins: self.spins,
            steps: self.steps,
            coin: self.coin.as_deref().map(Coin::parse_tokens).transpose()?,
            theta0: self.theta0,
            grid_theta: self.grid_theta,
            grid_phi: self.grid_phi,
            outputs: self.outputs.as_ref().map(|v| v.iter().copied().collect()),
            out: self.out.clone(),
            svg: if self.svg {
                Some(true)
            } else if self.no_svg {
                Some(false)
            } else {
                None
            },
        })
    }

    /// Flags, then the config file they name, then defaults.
    pub fn resolve(&self) -> Result<RunConfig, RunError> {
        let flags = self.to_layer()?;
        let file = match &self.config {
            Some(p) => ConfigLayer::from_file(p)?,
            None => ConfigLayer::default(),
        };
        RunConfig::resolve(flags.over(file))
    }
}

impl Cli {
    pub fn run_args(&self) -> &RunArgs {
        match &self.command {
            Some(Command::Run(args)) => args,
            None => &self.run,
        }
    }
}

/// Parses an argument vector (program name first) into a validated config.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig, RunError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| RunError::Config(e.to_string()))?;
    cli.run_args().resolve()
}
