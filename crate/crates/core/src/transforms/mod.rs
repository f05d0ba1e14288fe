//! Numerical transforms: Meijer G evaluation, forward Laplace transform and
//! fixed-Talbot inverse Laplace transform.

mod laplace;
mod meijer;
mod talbot;

pub use laplace::forward_laplace;
pub use meijer::{
    contour_truncation_ratio, meijer_g, meijer_g_contour, meijer_g_contour_log, meijer_shift,
    ContourConfig, MeijerSpec,
};
pub use talbot::{inverse_laplace_talbot, inverse_laplace_talbot_log};
