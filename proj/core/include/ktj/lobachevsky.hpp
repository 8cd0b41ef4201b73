#pragma once

namespace ktj {

/// Lobachevsky function L(theta) = -int_0^theta log|2 sin t| dt.
///
/// The endpoint log singularity is integrated in closed form against log(2t);
/// the smooth remainder log(sin t / t) goes through adaptive Simpson
/// quadrature with relative tolerance 1e-12.
double lobachevsky(double theta);

/// Independent evaluation through the zeta series
/// L(theta) = theta - theta log(2 theta) + sum_n zeta(2n) theta^{2n+1} / (n (2n+1) pi^{2n}),
/// valid for |theta| < pi. Used as the cross-check oracle for the quadrature.
double lobachevsky_series(double theta);

/// Volume of the regular ideal octahedron, 8 L(pi/4).
double vol_oct();

} // namespace ktj
