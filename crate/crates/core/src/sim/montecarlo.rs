use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::channel::{transmit, transmit_noiseless, ChannelConfig};
use super::config::{DecoderConfig, SimConfig};
use crate::bits::{BinaryMatrix, BitVec};
use crate::codealg::CodeSpec;
use crate::ddcodec::{minimal_dd_half_osd, minimal_dd_osd, DecodeReport, DerivativeDecoder};
use crate::decoders::{Mld, Osd, SoftDecoder, Spa};
use crate::derivative::{cyclic_dd, minimal_dd_basis};
use crate::error::{Error, Result};

/// Environment variable giving the default number of simulation workers.
pub const WORKERS_ENV: &str = "CYCLIC_DD_WORKERS";

pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// A complete decoder for frames of the simulated code.
pub enum FrameDecoder {
    Direct {
        decoder: Box<dyn SoftDecoder>,
        parity: BinaryMatrix,
    },
    /// Derivative decoding with a decoder of the cyclic descendant.
    Cyclic {
        dd: DerivativeDecoder,
        inner: Box<dyn SoftDecoder>,
    },
    /// Derivative decoding with a decoder of the minimal descendant in
    /// direction `α^0`.
    Minimal {
        dd: DerivativeDecoder,
        inner: Box<dyn SoftDecoder>,
    },
}

fn pairing(e: Error, what: &str) -> Error {
    match e {
        Error::Config(_) => e,
        other => Error::Config(format!("{what}: {other}")),
    }
}

impl FrameDecoder {
    pub fn from_config(code: &CodeSpec, cfg: &DecoderConfig) -> Result<Self> {
        let n = code.field().n();
        let dirs = cfg.directions(n)?;
        let descendant = || CodeSpec::from_exponents(code.field().clone(), cyclic_dd(code.exponents()));
        Ok(match cfg {
            DecoderConfig::Mld => FrameDecoder::Direct {
                decoder: Box::new(Mld::new(code.generator_matrix()).map_err(|e| pairing(e, "MLD"))?),
                parity: code.parity_check_matrix(),
            },
            DecoderConfig::Osd { order } => FrameDecoder::Direct {
                decoder: Box::new(Osd::new(code.generator_matrix().clone(), *order)?),
                parity: code.parity_check_matrix(),
            },
            DecoderConfig::Spa { max_iter, h } => FrameDecoder::Direct {
                decoder: Box::new(Spa::new(h.build(code)?, *max_iter)),
                parity: code.parity_check_matrix(),
            },
            DecoderConfig::DdSpa {
                max_iter,
                spa_max_iter,
                h,
                ..
            } => {
                let h = h.build(&descendant()).map_err(|e| pairing(e, "descendant H"))?;
                FrameDecoder::Cyclic {
                    dd: DerivativeDecoder::for_code(code, dirs.unwrap(), *max_iter)?,
                    inner: Box::new(Spa::new(h, *spa_max_iter)),
                }
            }
            DecoderConfig::DdOsd {
                max_iter,
                order,
                half_length,
                ..
            } => {
                let inner: Box<dyn SoftDecoder> = if *half_length {
                    Box::new(minimal_dd_half_osd(code, *order)?)
                } else {
                    Box::new(minimal_dd_osd(code, *order)?)
                };
                FrameDecoder::Minimal {
                    dd: DerivativeDecoder::for_code(code, dirs.unwrap(), *max_iter)?,
                    inner,
                }
            }
            DecoderConfig::DdMld {
                max_iter, minimal, ..
            } => {
                let dd = DerivativeDecoder::for_code(code, dirs.unwrap(), *max_iter)?;
                if *minimal {
                    let g = minimal_dd_basis(code, 1)?.basis;
                    FrameDecoder::Minimal {
                        dd,
                        inner: Box::new(Mld::new(&g).map_err(|e| pairing(e, "minimal descendant MLD"))?),
                    }
                } else {
                    let g = descendant().generator_matrix().clone();
                    FrameDecoder::Cyclic {
                        dd,
                        inner: Box::new(Mld::new(&g).map_err(|e| pairing(e, "descendant MLD"))?),
                    }
                }
            }
        })
    }

    pub fn decode(&self, llr: &[f64]) -> DecodeReport {
        match self {
            FrameDecoder::Direct { decoder, parity } => {
                let out = decoder.decode(llr);
                DecodeReport {
                    converged: out.converged && parity.annihilates(&out.codeword),
                    codeword: out.codeword,
                    iterations: 0,
                    flops: out.flops,
                    inner_iterations: vec![out.iterations],
                    inner_calls: 1,
                }
            }
            FrameDecoder::Cyclic { dd, inner } => dd.decode_cyclic(llr, inner),
            FrameDecoder::Minimal { dd, inner } => dd.decode_minimal(llr, inner),
        }
    }
}

/// Statistics of one Eb/N0 point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointResult {
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub bler: f64,
    /// Outer derivative-decoding iterations per frame (0 for direct decoders).
    pub avg_dd_iters: f64,
    /// Iterations per inner-decoder call.
    pub avg_inner_iters: f64,
    /// Estimated flops per frame.
    pub flops_est: f64,
    pub converged_frames: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimResult {
    pub points: Vec<PointResult>,
}

#[derive(Clone, Copy, Debug, Default)]
struct Tally {
    frames: u64,
    errors: u64,
    bit_errors: u64,
    dd_iters: u64,
    inner_iters: u64,
    inner_calls: u64,
    flops: f64,
    converged: u64,
}

impl Tally {
    fn merge(&mut self, o: &Tally) {
        self.frames += o.frames;
        self.errors += o.errors;
        self.bit_errors += o.bit_errors;
        self.dd_iters += o.dd_iters;
        self.inner_iters += o.inner_iters;
        self.inner_calls += o.inner_calls;
        self.flops += o.flops;
        self.converged += o.converged;
    }
}

pub fn run_monte_carlo(cfg: &SimConfig) -> Result<SimResult> {
    cfg.validate()?;
    let code = cfg.code.build()?;
    let decoder = FrameDecoder::from_config(&code, &cfg.decoder)?;
    Ok(run_with_decoder(&code, &decoder, cfg))
}

/// Runs every Eb/N0 point of `cfg` with an already built decoder.
///
/// Each logical worker owns a ChaCha8 stream (stream id = point index and
/// worker index) and decodes a fixed quota per round; subtotals merge in
/// worker order, so the result depends only on the seed and worker count.
pub fn run_with_decoder(code: &CodeSpec, decoder: &FrameDecoder, cfg: &SimConfig) -> SimResult {
    let workers = cfg.workers.unwrap_or_else(default_workers);
    let k = code.dimension();
    let rate = k as f64 / code.length() as f64;
    let points = cfg
        .ebn0_db
        .iter()
        .enumerate()
        .map(|(pi, &ebn0)| {
            let channel = ChannelConfig::new(ebn0, rate);
            let mut rngs: Vec<ChaCha8Rng> = (0..workers)
                .map(|w| {
                    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
                    r.set_stream(((pi as u64) << 32) | w as u64);
                    r
                })
                .collect();
            let mut total = Tally::default();
            while total.frames < cfg.max_frames && total.errors < cfg.max_frame_errors {
                let remaining = cfg.max_frames - total.frames;
                let batch = cfg.batch as u64;
                let subs: Vec<Tally> = rngs
                    .par_iter_mut()
                    .enumerate()
                    .map(|(w, rng)| {
                        let quota = remaining.saturating_sub(w as u64 * batch).min(batch);
                        let mut t = Tally::default();
                        for _ in 0..quota {
                            let msg = BitVec::from_fn(k, |_| !cfg.all_zero && rng.random::<bool>());
                            let cw = code.encode(&msg);
                            let llr = if cfg.noiseless {
                                transmit_noiseless(&cw, &channel)
                            } else {
                                transmit(&cw, &channel, rng)
                            };
                            let rep = decoder.decode(&llr);
                            let diff = rep.codeword.xor(&cw).weight() as u64;
                            t.frames += 1;
                            t.errors += (diff > 0) as u64;
                            t.bit_errors += diff;
                            t.dd_iters += rep.iterations as u64;
                            t.inner_iters += rep.inner_iterations.iter().sum::<usize>() as u64;
                            t.inner_calls += rep.inner_calls as u64;
                            t.flops += rep.flops;
                            t.converged += rep.converged as u64;
                        }
                        t
                    })
                    .collect();
                for s in &subs {
                    total.merge(s);
                }
            }
            let f = total.frames as f64;
            PointResult {
                ebn0_db: ebn0,
                frames: total.frames,
                frame_errors: total.errors,
                bit_errors: total.bit_errors,
                bler: total.errors as f64 / f,
                avg_dd_iters: total.dd_iters as f64 / f,
                avg_inner_iters: if total.inner_calls == 0 {
                    0.0
                } else {
                    total.inner_iters as f64 / total.inner_calls as f64
                },
                flops_est: total.flops / f,
                converged_frames: total.converged,
            }
        })
        .collect();
    SimResult { points }
}

#[derive(Serialize)]
struct CsvRow {
    ebn0_db: f64,
    frames: u64,
    frame_errors: u64,
    bler: f64,
    avg_dd_iters: f64,
    avg_inner_iters: f64,
    flops_est: f64,
}

/// Writes one CSV row per Eb/N0 point.
pub fn write_results(result: &SimResult, path: impl AsRef<Path>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for p in &result.points {
        w.serialize(CsvRow {
            ebn0_db: p.ebn0_db,
            frames: p.frames,
            frame_errors: p.frame_errors,
            bler: p.bler,
            avg_dd_iters: p.avg_dd_iters,
            avg_inner_iters: p.avg_inner_iters,
            flops_est: p.flops_est,
        })?;
    }
    w.flush()?;
    Ok(())
}
