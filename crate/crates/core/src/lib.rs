pub mod aut_checker;
pub mod config;
pub mod error;
pub mod exact_poly;
pub mod expr;
pub mod field_tower;
pub mod galois_engine;
pub mod pipeline;
pub mod scheme_builder;

pub use config::Config;
pub use error::{Error, Result};
