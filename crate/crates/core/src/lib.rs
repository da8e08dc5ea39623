pub mod cli;
pub mod config;
pub mod groebner;
pub mod lnd;
pub mod pipeline;
pub mod poly;

pub use config::Caps;
