//! Link diagrams: PD codes and braid words, turned into Wirtinger
//! presentations with the meridian map.

mod pd;
mod wirtinger;

pub use pd::{braid_to_pd, Crossing, PDCode};
pub use wirtinger::{meridian_map, pd_to_wirtinger, MeridianMap, Wirtinger};
