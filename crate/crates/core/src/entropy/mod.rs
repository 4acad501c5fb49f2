//! Joint histograms, Shannon entropies, and the (focussed) MI, NMI and ECC criteria.

mod criteria;
pub(crate) mod histogram;
mod shannon;

pub use criteria::{criteria_from_histogram, evaluate_all, evaluate_criterion, Criterion, CriterionValues};
pub use histogram::{accumulate_joint, accumulate_joint_rows, JointHistogram};
pub use shannon::{shannon_entropy, DISTRIBUTION_TOLERANCE};
