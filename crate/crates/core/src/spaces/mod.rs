//! Concrete metric spaces with binary averages.

mod euclidean;
mod hermite;
pub(crate) mod linalg;
mod sets;
mod sphere;
mod wasserstein;

pub use euclidean::Euclidean;
pub use hermite::{adaptive_c as hermite_adaptive_c, bezier_average, CPolicy, HermiteMode, HermitePair, HermiteSpace};
pub use sets::{hausdorff_distance, metric_average, metric_pairs, FiniteSet, MetricPairSet, SetSpace};
pub use sphere::{Sphere, SpherePoint, ANTIPODAL_MARGIN};
pub use wasserstein::{
    quantile_coupling, wasserstein_average, wasserstein_distance, Atom, Chunk, Measure,
    MonotoneCoupling, Wasserstein,
};
