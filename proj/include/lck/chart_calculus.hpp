#pragma once

// Exterior calculus on the two-chart leaf space: dd^c, the reference
// Fubini-Study form, and partition-of-unity quadrature.
//
// Sign convention throughout: d^c = i(dbar - d), so dd^c u has chart
// component equal to the flat chart Laplacian of u, and
// dd^c log(1 + |w|^2) has component 4 / (1 + |w|^2)^2.

#include <functional>

#include "lck/grid.hpp"

namespace lck {

// Smooth partition bump: 1 for r <= 0.9, 0 for r >= 1.1, C-infinity between.
double partition_weight(double r);

// dd^c of a scalar field.  Interior points use the 7-point 6th-order second
// difference per axis; points too close to the chart boundary are filled
// through the transition rule from the other chart's interior values.
Form11Field ddc(const ScalarField& u);

// eta_0 = dd^c log(1 + |w|^2), evaluated analytically.
Form11Field fubini_study_reference(const GridSpec& g);

// Integral over CP^1 with the smooth two-chart partition of unity; per-cell
// tensor Gauss-Legendre quadrature against degree-7 interpolation.
double integrate(const Form11Field& f);

// Integral of fn(s) * f, with s interpolated to the quadrature nodes before
// fn is applied (fn defaults to the identity, giving the integral of s * f).
double integrate_scaled(const Form11Field& f, const ScalarField& s,
                        const std::function<double(double)>& fn = nullptr);

}  // namespace lck
