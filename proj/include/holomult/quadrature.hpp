// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "holomult/domains.hpp"
#include "holomult/series.hpp"

namespace holomult {

/// A complex function of n complex variables.
using Evaluable = std::function<Complex(std::span<const Complex>)>;

/// Trapezoidal nodes and weights along one axis of a polycontour. Unions of
/// circles are concatenated into a single axis; the weights carry the
/// orientation and the 1/(2 pi i) normalisation, so a tensor contraction of
/// samples with the weights is the normalised integral.
struct AxisRule {
    std::vector<Complex> nodes;
    std::vector<Complex> weights;
};

/// N equally spaced nodes per circle at angles 2 pi k / N + phase.
AxisRule axis_rule(const CircleUnion& curves, int nodes, double phase = 0.0);
std::vector<AxisRule> tensor_rules(const PolyContour& contour, std::span<const int> nodes, double phase = 0.0);
std::vector<AxisRule> tensor_rules(const PolyContour& contour, int nodes, double phase = 0.0);

std::vector<std::vector<Complex>> axis_nodes(std::span<const AxisRule> rules);
std::size_t grid_size(std::span<const AxisRule> rules);

/// Row-major samples of g over the tensor grid of `rules`. A non-finite
/// sample is reported as a contour placement failure.
std::vector<Complex> sample_on_grid(const Evaluable& g, std::span<const AxisRule> rules);
/// Row-major samples of g over the tensor product of the given axis points.
std::vector<Complex> sample_tensor(const Evaluable& g, std::span<const std::vector<Complex>> axes);

/// A rows x len row-major matrix acting on one tensor axis.
struct AxisMatrix {
    std::size_t rows = 0;
    std::vector<Complex> entries;
};
/// out[i_1..i_n] = sum over k of samples[k_1..k_n] prod_j M_j[i_j][k_j].
std::vector<Complex> tensor_contract(std::span<const Complex> samples, std::span<const AxisMatrix> matrices);

/// Contraction of grid samples with the tensor weights.
Complex integrate_samples(std::span<const Complex> samples, std::span<const AxisRule> rules);
/// Contraction of grid samples with one weight vector per axis.
Complex contract_weights(std::span<const Complex> samples, std::span<const std::span<const Complex>> weights);

/// For every alpha in `box`: sum over the grid of sample * prod_j weight_j * node_j^alpha_j.
/// With kernel samples this is the moment tensor T(zeta^alpha).
TaylorPoly power_moments(std::span<const Complex> samples, std::span<const AxisRule> rules,
                         const TruncationBox& box);

/// max(64, 2 (max_j D_j + 1)) rounded up to a power of two.
int default_nodes(const TruncationBox& box);
int next_power_of_two(int n);

/// (1/(2 pi i))^n times the integral of g over the polycontour.
Complex contour_integral(const Evaluable& g, const PolyContour& contour, int nodes);
Complex contour_integral(const Evaluable& g, const PolyContour& contour, std::span<const int> nodes);

/// Cauchy coefficients of f about `center` on the polycircle of the given
/// radii, for every alpha in the box, from one sample tensor. f must be
/// holomorphic on a neighbourhood of the closed polydisc; this is not checked.
TaylorPoly taylor_coefficients(const Evaluable& f, const Point& center, std::span<const double> radii,
                               const TruncationBox& box, int nodes);

/// The same extraction from samples already taken on the circles (angles
/// 2 pi k / N_j, zero phase) about any centre.
TaylorPoly coefficients_from_samples(std::span<const Complex> samples, std::span<const int> nodes,
                                     std::span<const double> radii, const TruncationBox& box);
/// m_alpha = (1/(2 pi i))^n integral over |zeta_j| = r_j of zeta^alpha psi(zeta).
/// When singular_radii is non-empty every radius must exceed it.
TaylorPoly laurent_moments(const Evaluable& psi, std::span<const double> radii, const TruncationBox& box,
                           int nodes, std::span<const double> singular_radii = {});

Complex pairwise_sum(std::span<const Complex> values);

} // namespace holomult
