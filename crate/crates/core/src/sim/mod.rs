//! AWGN Monte-Carlo simulation of the decoders.

mod channel;
mod config;
mod montecarlo;

pub use channel::{transmit, transmit_noiseless, ChannelConfig};
pub use config::{
    load_config, parse_hex_u32, save_config, CodeRef, DecoderConfig, HSource, SimConfig,
};
pub use montecarlo::{
    default_workers, run_monte_carlo, run_with_decoder, write_results, FrameDecoder, PointResult, SimResult,
    WORKERS_ENV,
};
