use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::codealg::CodeSpec;
use crate::ddcodec::DirectionSet;
use crate::decoders::{dual_orbit_parity_matrix, eg_line_parity_matrix, SparseParityMatrix};
use crate::error::{Error, Result};
use crate::gf2m::{Field, FieldSpec};
use crate::poly::Gf2Poly;

/// Which extended cyclic code to simulate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum CodeRef {
    Generator {
        m: u32,
        gen_hex: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        prim_poly: Option<String>,
    },
    Bch {
        m: u32,
        designed_distance: usize,
    },
    Rm {
        m: u32,
        r: u32,
    },
}

impl CodeRef {
    /// Parses `gen:<m>:<hex>[:<prim hex>]`, `bch:<m>:<δ>` or `rm:<m>:<r>`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| -> Result<u32> {
            t.parse()
                .map_err(|_| Error::Parse(format!("expected an integer, got {t:?} in {s:?}")))
        };
        match parts.as_slice() {
            ["gen", m, hex] => Ok(CodeRef::Generator {
                m: num(m)?,
                gen_hex: hex.to_string(),
                prim_poly: None,
            }),
            ["gen", m, hex, prim] => Ok(CodeRef::Generator {
                m: num(m)?,
                gen_hex: hex.to_string(),
                prim_poly: Some(prim.to_string()),
            }),
            ["bch", m, d] => Ok(CodeRef::Bch {
                m: num(m)?,
                designed_distance: num(d)? as usize,
            }),
            ["rm", m, r] => Ok(CodeRef::Rm {
                m: num(m)?,
                r: num(r)?,
            }),
            _ => Err(Error::Parse(format!(
                "code spec {s:?} is not gen:<m>:<hex>[:<prim>], bch:<m>:<delta> or rm:<m>:<r>"
            ))),
        }
    }

    pub fn build(&self) -> Result<CodeSpec> {
        match self {
            CodeRef::Generator {
                m,
                gen_hex,
                prim_poly,
            } => {
                let field = match prim_poly {
                    Some(p) => Field::new(FieldSpec::new(*m, parse_hex_u32(p)?))?,
                    None => Field::with_default_poly(*m)?,
                };
                CodeSpec::from_generator(Arc::new(field), Gf2Poly::from_hex(gen_hex)?)
            }
            CodeRef::Bch {
                m,
                designed_distance,
            } => Ok(CodeSpec::bch(
                Arc::new(Field::with_default_poly(*m)?),
                *designed_distance,
            )),
            CodeRef::Rm { m, r } => {
                if *r >= *m {
                    return Err(Error::Config(format!(
                        "RM({r},{m}) is not an extended cyclic code; need r < m"
                    )));
                }
                Ok(CodeSpec::reed_muller(Arc::new(Field::with_default_poly(*m)?), *r))
            }
        }
    }
}

pub fn parse_hex_u32(s: &str) -> Result<u32> {
    let t = s.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u32::from_str_radix(t, 16).map_err(|_| Error::Parse(format!("invalid hex integer {s:?}")))
}

/// Where a sparse parity-check matrix comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case", deny_unknown_fields)]
pub enum HSource {
    /// Lines of EG(`mu_dims`, 2^`subfield_bits`).
    Eg { mu_dims: u32, subfield_bits: u32 },
    /// Low-weight dual codewords of the target code.
    DualOrbit { max_row_weight: usize },
    Alist { path: String },
}

impl HSource {
    /// Parses `eg:<mu_dims>:<subfield_bits>`, `dual:<max_row_weight>` or
    /// `alist:<path>`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("H source {s:?} is not eg:<mu>:<s>, dual:<w> or alist:<path>"));
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        if let Some(path) = s.strip_prefix("alist:") {
            return Ok(HSource::Alist { path: path.into() });
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["eg", mu, sb] => Ok(HSource::Eg {
                mu_dims: num(mu)?,
                subfield_bits: num(sb)?,
            }),
            ["dual", w] => Ok(HSource::DualOrbit {
                max_row_weight: num(w)? as usize,
            }),
            _ => Err(bad()),
        }
    }

    /// Builds the matrix and checks it against `target`.
    pub fn build(&self, target: &CodeSpec) -> Result<SparseParityMatrix> {
        let h = match self {
            HSource::Eg {
                mu_dims,
                subfield_bits,
            } => eg_line_parity_matrix(target.field(), *mu_dims, *subfield_bits)?,
            HSource::DualOrbit { max_row_weight } => dual_orbit_parity_matrix(target, *max_row_weight)?,
            HSource::Alist { path } => SparseParityMatrix::read_alist(path)?,
        };
        h.check_orthogonal(target.generator_matrix()).map_err(|e| {
            Error::Config(format!("parity-check matrix does not fit the code: {e}"))
        })?;
        Ok(h)
    }
}

fn default_dd_iters() -> usize {
    3
}

fn default_dd_osd_iters() -> usize {
    4
}

fn default_spa_iters() -> usize {
    20
}

fn default_true() -> bool {
    true
}

fn default_all() -> String {
    "all".into()
}

/// Decoder selection. `dd-*` variants decode through derivatives; their
/// inner decoder works on the cyclic descendant (`dd-spa`, `dd-mld`) or on
/// the minimal descendant in direction `α^0` (`dd-osd`, `dd-mld` with
/// `minimal`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DecoderConfig {
    Mld,
    Osd {
        order: usize,
    },
    Spa {
        #[serde(default = "default_spa_iters")]
        max_iter: usize,
        h: HSource,
    },
    DdSpa {
        #[serde(default = "default_all")]
        directions: String,
        #[serde(default = "default_dd_iters")]
        max_iter: usize,
        #[serde(default = "default_spa_iters")]
        spa_max_iter: usize,
        /// Parity checks of the cyclic descendant.
        h: HSource,
    },
    DdOsd {
        #[serde(default = "default_all")]
        directions: String,
        #[serde(default = "default_dd_osd_iters")]
        max_iter: usize,
        order: usize,
        #[serde(default = "default_true")]
        half_length: bool,
    },
    DdMld {
        #[serde(default = "default_all")]
        directions: String,
        #[serde(default = "default_dd_osd_iters")]
        max_iter: usize,
        #[serde(default)]
        minimal: bool,
    },
}

impl DecoderConfig {
    pub fn directions(&self, n: usize) -> Result<Option<DirectionSet>> {
        match self {
            DecoderConfig::DdSpa { directions, .. }
            | DecoderConfig::DdOsd { directions, .. }
            | DecoderConfig::DdMld { directions, .. } => Ok(Some(DirectionSet::parse(directions, n)?)),
            _ => Ok(None),
        }
    }
}

fn default_max_errors() -> u64 {
    100
}

fn default_seed() -> u64 {
    1
}

fn default_batch() -> usize {
    16
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub code: CodeRef,
    pub decoder: DecoderConfig,
    pub ebn0_db: Vec<f64>,
    pub max_frames: u64,
    #[serde(default = "default_max_errors")]
    pub max_frame_errors: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Logical workers; results are reproducible for a fixed count.
    /// Defaults to the environment setting, then the core count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    /// Frames each worker decodes per round.
    #[serde(default = "default_batch")]
    pub batch: usize,
    /// Transmit the all-zero codeword instead of random messages.
    #[serde(default)]
    pub all_zero: bool,
    /// Skip the noise (the σ → 0 limit with the nominal LLR scale).
    #[serde(default)]
    pub noiseless: bool,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_frames == 0 {
            return Err(Error::Config("max_frames must be at least 1".into()));
        }
        if self.ebn0_db.is_empty() || self.ebn0_db.iter().any(|x| !x.is_finite()) {
            return Err(Error::Config("ebn0_db must be a non-empty list of finite values".into()));
        }
        if self.batch == 0 || self.workers == Some(0) {
            return Err(Error::Config("batch and workers must be positive".into()));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SimConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }
}

pub fn load_config(path: impl AsRef<Path>) -> Result<SimConfig> {
    SimConfig::from_json(&std::fs::read_to_string(path)?)
}

pub fn save_config(cfg: &SimConfig, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, cfg.to_json())?;
    Ok(())
}
