//! Thresholds, solution counting and region scans.

mod count;
mod scan;
mod thresholds;

pub use count::{count_solutions, Branch, ClassificationReport, ScanConfig, ScanStatus};
pub use scan::{region_scan, thresholds_crossed, RecordStatus, ScanRecord};
pub use thresholds::{threshold_gamma, threshold_gamma_weighted};
