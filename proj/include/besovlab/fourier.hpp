#pragma once

#include <functional>
#include <vector>

#include "besovlab/grid.hpp"

namespace besovlab {

/// Pointwise norm on the component vector E.
using VectorNorm = std::function<double(std::span<const cd>)>;

/// Forward transform with the convention F f(xi) = \int e^{-i xi.x} f(x) dx,
/// approximated by the h^N-scaled DFT.  Output is in centered frequency
/// ordering.
Field forward_ft(const Field& f);

/// Inverse transform with the (2 pi)^{-N} normalization; exact inverse of
/// forward_ft on grid functions.
Field inverse_ft(const Field& g);

/// D^alpha f computed as F^{-1}[(i xi)^alpha F f].
Field spectral_derivative(const Field& f, const std::vector<int>& alpha);

/// Shift f by y along one axis via the e^{i xi y} frequency phase
/// (band-limited interpolation, periodic wraparound).
Field spectral_shift(const Field& f, int axis, double y);

/// L_q(grid; E) norm with the pointwise E-norm given by `enorm` applied to
/// the component vector.  q = infinity selects the sup form.
double lq_grid_norm(const Field& f, double q, const VectorNorm& enorm = {});

/// Convenience pointwise norms.
double euclidean_enorm(std::span<const cd> v);

}  // namespace besovlab
