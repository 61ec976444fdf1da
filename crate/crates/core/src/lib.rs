//! Exact computation engine for the braided Temperley-Lieb category.

pub mod scalar;
pub mod linalg;
pub mod diagram;
pub mod morphism;
pub mod report;
pub mod braid;
pub mod dilute;
pub mod repr;
pub mod twist;
pub mod fusion;
pub mod integrable;
pub mod suite;
