//! Multi-UAV relay deployment for D2D networks.
//!
//! A scenario fixes the ground devices and physical parameters. Solutions
//! place a variable number of UAVs, assign relayed pairs and channels, and
//! are scored on network capacity, UAV count and mean deployment energy.
//! [`solvers`] searches that space; [`bench`] runs the trial protocol and
//! exports statistics.

pub mod bench;
pub mod encoding;
pub mod energy;
pub mod error;
pub mod moea;
pub mod radio;
pub mod scenario;
pub mod solvers;

pub use error::{Error, Result};
