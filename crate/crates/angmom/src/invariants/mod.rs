// SPDX-License-Identifier: MIT OR Apache-2.0

//! Semitoric invariants at `t = 1/2`: height, weighted polygons, the linear Eliasson frame
//! at the focus-focus point and the linear Taylor coefficients `a₁`, `a₂`.

mod eliasson;
mod height;
mod polygon;
mod taylor;

pub use eliasson::{eliasson_frame, EliassonFrame};
pub use height::{height, height_closed_form, height_quadrature, HeightResult};
pub use polygon::{canonical_vertices, is_convex, polygon_group_action, polygons, rational, RationalPoint, WeightedPolygon};
pub use taylor::{
    colinearity_factor, kappa_integral_closed_form, polar_rates, radial_loop, rho_sequence, taylor_a1, taylor_a2,
    taylor_coefficients, taylor_samples, TaylorCoeffs, TaylorSample,
};

use crate::geometry::SystemParams;

/// True when `(R₁, R₂) = (1, 5/2)`, the pair for which the loop formulas are derived in closed form.
pub fn is_reference_pair(params: &SystemParams) -> bool {
    params.r1() == 1.0 && params.r2() == 2.5
}
