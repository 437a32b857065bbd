//! Run configuration: a TOML file plus flag overrides, resolved into one
//! struct that every report echoes verbatim (with a stable hash) so results
//! are reproducible from their own output.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub out: String,
    /// Report envelope format: "csv" or "json".
    pub format: String,
    /// Also render simple SVG line plots for plot-ready data.
    pub svg: bool,
    pub verify_identities: VerifyIdentitiesConfig,
    pub lagrangian_eval: LagrangianEvalConfig,
    pub saddle: SaddleConfig,
    pub action_check: ActionCheckConfig,
    pub evolve: EvolveConfig,
    pub bi_electrostatic: BiElectrostaticConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            out: "out".to_string(),
            format: "csv".to_string(),
            svg: false,
            verify_identities: Default::default(),
            lagrangian_eval: Default::default(),
            saddle: Default::default(),
            action_check: Default::default(),
            evolve: Default::default(),
            bi_electrostatic: Default::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyIdentitiesConfig {
    pub samples: usize,
    pub exact_samples: usize,
    pub ks: Vec<f64>,
}

impl Default for VerifyIdentitiesConfig {
    fn default() -> Self {
        VerifyIdentitiesConfig {
            samples: 10_000,
            exact_samples: 2_000,
            ks: vec![0.5, 1.0, 10.0],
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LagrangianEvalConfig {
    pub e: [f64; 3],
    pub b: [f64; 3],
    pub k: f64,
    pub rho: f64,
    pub j: [f64; 3],
    pub phi: f64,
    pub a_pot: [f64; 3],
}

impl Default for LagrangianEvalConfig {
    fn default() -> Self {
        LagrangianEvalConfig {
            e: [1.0, 0.0, 0.0],
            b: [0.0, 1.0, 0.0],
            k: 1.0,
            rho: 0.0,
            j: [0.0; 3],
            phi: 0.0,
            a_pot: [0.0; 3],
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SaddleConfig {
    /// Built-in function name: z2, cubic, exp-mix, conj, abs2.
    pub function: String,
    pub start: [f64; 2],
    pub radius: f64,
    /// Samples per axis at the coarsest verification level; two further
    /// doublings are run for the refinement trend.
    pub samples: usize,
}

impl Default for SaddleConfig {
    fn default() -> Self {
        SaddleConfig {
            function: "z2".to_string(),
            start: [1.0, 1.0],
            radius: 1.0,
            samples: 16,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ActionCheckConfig {
    /// Hypercubic lattice extent per axis.
    pub lattice: usize,
    pub spacing: f64,
    pub k: f64,
    /// Target field amplitude in units of k.
    pub amplitude: f64,
    /// Potential initializer: "fourier" (smooth) or "random-nodes".
    pub initializer: String,
    /// Source initializer: "zero" or "conserved-random".
    pub sources: String,
    /// Source amplitude in units of the field amplitude.
    pub source_amplitude: f64,
    /// Amplitude sweep for the nonlinearity scaling, in units of k.
    pub sweep: Vec<f64>,
    /// Run the finite-difference gradient oracle.
    pub fd_check: bool,
    /// Config guard: the FD oracle is O(dof²); refuse beyond this many nodes.
    pub max_fd_nodes: usize,
}

impl Default for ActionCheckConfig {
    fn default() -> Self {
        ActionCheckConfig {
            lattice: 4,
            spacing: 0.5,
            k: 1.0,
            amplitude: 0.1,
            initializer: "fourier".to_string(),
            sources: "conserved-random".to_string(),
            source_amplitude: 0.1,
            sweep: vec![0.005, 0.0089, 0.0158, 0.0281, 0.05],
            fd_check: true,
            max_fd_nodes: 1296,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolveConfig {
    /// Initial data: "plane-wave", "standing-wave", or "zero".
    pub preset: String,
    /// Spatial operators: "spectral" or "fd".
    pub scheme: String,
    pub nx: usize,
    pub steps: usize,
    /// 0 means one wave period divided by `steps`.
    pub dt: f64,
    /// Trajectory snapshot stride in steps (0: initial and final only).
    pub snapshot_stride: usize,
    /// Also run the staggered two-field scheme and compare.
    pub compare_two_field: bool,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        EvolveConfig {
            preset: "plane-wave".to_string(),
            scheme: "spectral".to_string(),
            nx: 32,
            steps: 640,
            dt: 0.0,
            snapshot_stride: 160,
            compare_two_field: true,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BiElectrostaticConfig {
    pub q: f64,
    pub k: f64,
    /// Decades of r_min below the saturation radius for the finiteness
    /// series.
    pub decades: usize,
    /// Radial profile range in units of the saturation radius.
    pub r_min_factor: f64,
    pub r_max_factor: f64,
    pub profile_points: usize,
}

impl Default for BiElectrostaticConfig {
    fn default() -> Self {
        BiElectrostaticConfig {
            q: 1.0,
            k: 1.0,
            decades: 5,
            r_min_factor: 1e-3,
            r_max_factor: 1e2,
            profile_points: 60,
        }
    }
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(RunConfig::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::Config(format!("cannot read config {}: {e}", p.display()))
                })?;
                toml::from_str(&text)
                    .map_err(|e| CliError::Config(format!("bad config {}: {e}", p.display())))
            }
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let c = &self.verify_identities;
        if c.samples == 0 || c.exact_samples == 0 {
            return Err(CliError::Config("sample counts must be positive".into()));
        }
        if c.ks.iter().any(|&k| k <= 0.0) {
            return Err(CliError::Config("all k values must be positive".into()));
        }
        if self.lagrangian_eval.k <= 0.0
            || self.action_check.k <= 0.0
            || self.bi_electrostatic.k <= 0.0
        {
            return Err(CliError::Config("k must be positive".into()));
        }
        if self.format != "csv" && self.format != "json" {
            return Err(CliError::Config(format!(
                "unknown format '{}' (csv or json)",
                self.format
            )));
        }
        if self.saddle.samples < 8 {
            return Err(CliError::Config(
                "saddle sampling needs at least 8 points per axis".into(),
            ));
        }
        if self.saddle.radius <= 0.0 {
            return Err(CliError::Config("saddle radius must be positive".into()));
        }
        if self.action_check.lattice < 4 {
            return Err(CliError::Config("lattice extent must be at least 4".into()));
        }
        if self.bi_electrostatic.r_min_factor >= self.bi_electrostatic.r_max_factor {
            return Err(CliError::Config("need r_min < r_max".into()));
        }
        if self.bi_electrostatic.decades == 0 {
            return Err(CliError::Config("need at least one decade".into()));
        }
        if self.evolve.nx < 4 {
            return Err(CliError::Config("grid extent must be at least 4".into()));
        }
        if self.evolve.steps == 0 {
            return Err(CliError::Config("need at least one step".into()));
        }
        Ok(())
    }

    /// FNV-1a over the canonical JSON serialization: stable across runs,
    /// sensitive to every resolved numerical field. The output directory is
    /// excluded so the same computation hashes identically wherever it is
    /// written.
    pub fn hash(&self) -> String {
        let mut fingerprint = self.clone();
        fingerprint.out = String::new();
        let canonical = serde_json::to_string(&fingerprint).expect("config serializes");
        let mut h: u64 = 0xcbf29ce484222325;
        for byte in canonical.bytes() {
            h ^= u64::from(byte);
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid_and_hash_is_stable() {
        let config = RunConfig::default();
        config.validate().unwrap();
        assert_eq!(config.hash(), config.hash());
        let other = RunConfig {
            seed: 43,
            ..Default::default()
        };
        assert_ne!(config.hash(), other.hash());
    }

    #[test]
    fn zero_samples_rejected() {
        let mut config = RunConfig::default();
        config.verify_identities.samples = 0;
        assert!(config.validate().is_err());
    }
}
