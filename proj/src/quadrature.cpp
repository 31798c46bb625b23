// SPDX-License-Identifier: Apache-2.0
#include "holomult/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "holomult/error.hpp"

namespace holomult {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

// Replaces axis j of a row-major tensor (extent shape[j]) by `modes` outputs,
// out[.., a, ..] = sum_k in[.., k, ..] * matrix[a * shape[j] + k].
std::vector<Complex> contract_axis(const std::vector<Complex>& in, std::vector<std::size_t>& shape,
                                   std::size_t j, std::size_t modes, const std::vector<Complex>& matrix) {
    std::size_t outer = 1, inner = 1;
    for (std::size_t i = 0; i < j; ++i) outer *= shape[i];
    for (std::size_t i = j + 1; i < shape.size(); ++i) inner *= shape[i];
    const std::size_t len = shape[j];
    std::vector<Complex> out(outer * modes * inner);
    if (inner == 1) {
        std::vector<Complex> line(len);
        for (std::size_t o = 0; o < outer; ++o) {
            const Complex* row = in.data() + o * len;
            for (std::size_t a = 0; a < modes; ++a) {
                const Complex* m = matrix.data() + a * len;
                for (std::size_t k = 0; k < len; ++k) line[k] = row[k] * m[k];
                out[o * modes + a] = pairwise_sum(line);
            }
        }
    } else {
        // Fixed k order per output entry; the contiguous index runs innermost.
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t a = 0; a < modes; ++a) {
                Complex* dst = out.data() + (o * modes + a) * inner;
                for (std::size_t k = 0; k < len; ++k) {
                    const Complex w = matrix[a * len + k];
                    const Complex* src = in.data() + (o * len + k) * inner;
                    for (std::size_t i = 0; i < inner; ++i) dst[i] += src[i] * w;
                }
            }
        }
    }
    shape[j] = modes;
    return out;
}

// c_alpha = prod_j (1/N_j) sum_k s_k exp(sign * 2 pi i k (alpha_j + shift) / N_j)
// over the box; the shared kernel of coefficient and moment extraction.
std::vector<Complex> circle_modes(const std::vector<Complex>& samples, std::span<const int> nodes,
                                  const TruncationBox& box, int sign, int shift) {
    const std::size_t n = box.dim();
    std::vector<std::size_t> shape(nodes.begin(), nodes.end());
    std::vector<Complex> current = samples;
    for (std::size_t j = n; j-- > 0;) {
        const auto big_n = static_cast<std::size_t>(nodes[j]);
        const auto modes = static_cast<std::size_t>(box.bound(j) + 1);
        std::vector<Complex> twiddle(big_n);
        for (std::size_t m = 0; m < big_n; ++m) {
            twiddle[m] = std::polar(1.0 / static_cast<double>(big_n),
                                    sign * kTwoPi * static_cast<double>(m) / static_cast<double>(big_n));
        }
        std::vector<Complex> matrix(modes * big_n);
        for (std::size_t a = 0; a < modes; ++a) {
            for (std::size_t k = 0; k < big_n; ++k) matrix[a * big_n + k] = twiddle[(k * (a + shift)) % big_n];
        }
        current = contract_axis(current, shape, j, modes, matrix);
    }
    return current;
}

void require_nodes_for_box(std::span<const int> nodes, const TruncationBox& box) {
    for (std::size_t j = 0; j < box.dim(); ++j) {
        if (nodes[j] < 2 * (box.bound(j) + 1)) {
            throw NodeCountError("node count " + std::to_string(nodes[j]) + " is below 2(D+1) = " +
                                 std::to_string(2 * (box.bound(j) + 1)) + " for variable " + std::to_string(j));
        }
    }
}

} // namespace

Complex pairwise_sum(std::span<const Complex> values) {
    if (values.size() <= 8) {
        Complex s = 0.0;
        for (auto v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

AxisRule axis_rule(const CircleUnion& curves, int nodes, double phase) {
    if (nodes < 4) throw NodeCountError("quadrature needs at least 4 nodes per circle");
    AxisRule rule;
    for (const auto& c : curves) {
        if (!(c.radius > 0.0)) throw InvalidArgument("contour circle radius must be positive");
        for (int k = 0; k < nodes; ++k) {
            const Complex e = std::polar(1.0, kTwoPi * k / nodes + phase);
            rule.nodes.push_back(c.center + c.radius * e);
            // (1/(2 pi i)) d zeta = (r / 2 pi) e^{i theta} d theta
            rule.weights.push_back(static_cast<double>(c.orientation) * c.radius / nodes * e);
        }
    }
    return rule;
}

std::vector<AxisRule> tensor_rules(const PolyContour& contour, std::span<const int> nodes, double phase) {
    if (nodes.size() != contour.dim()) throw DimensionMismatch("one node count per contour factor");
    std::vector<AxisRule> rules;
    for (std::size_t j = 0; j < contour.dim(); ++j) rules.push_back(axis_rule(contour.factors[j], nodes[j], phase));
    return rules;
}

std::vector<AxisRule> tensor_rules(const PolyContour& contour, int nodes, double phase) {
    std::vector<int> n(contour.dim(), nodes);
    return tensor_rules(contour, n, phase);
}

std::vector<std::vector<Complex>> axis_nodes(std::span<const AxisRule> rules) {
    std::vector<std::vector<Complex>> nodes;
    for (const auto& r : rules) nodes.push_back(r.nodes);
    return nodes;
}

std::size_t grid_size(std::span<const AxisRule> rules) {
    std::size_t s = 1;
    for (const auto& r : rules) s *= r.nodes.size();
    return s;
}

std::vector<Complex> sample_tensor(const Evaluable& g, std::span<const std::vector<Complex>> axes) {
    const std::size_t n = axes.size();
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.size();
    std::vector<Complex> samples(total);
    if (total == 0) return samples;
    std::vector<std::size_t> idx(n, 0);
    std::vector<Complex> point(n);
    for (std::size_t flat = 0; flat < total; ++flat) {
        for (std::size_t j = 0; j < n; ++j) point[j] = axes[j][idx[j]];
        const Complex v = g(point);
        if (!finite(v)) throw ContourPlacementError("integrand is not finite on a quadrature node");
        samples[flat] = v;
        for (std::size_t j = n; j-- > 0;) {
            if (++idx[j] < axes[j].size()) break;
            idx[j] = 0;
        }
    }
    return samples;
}

std::vector<Complex> sample_on_grid(const Evaluable& g, std::span<const AxisRule> rules) {
    return sample_tensor(g, axis_nodes(rules));
}

std::vector<Complex> tensor_contract(std::span<const Complex> samples, std::span<const AxisMatrix> matrices) {
    std::vector<std::size_t> shape;
    std::size_t total = 1;
    for (const auto& m : matrices) {
        if (m.rows == 0 || m.entries.size() % m.rows != 0) throw DimensionMismatch("malformed axis matrix");
        shape.push_back(m.entries.size() / m.rows);
        total *= shape.back();
    }
    if (samples.size() != total) throw DimensionMismatch("samples do not match the axis matrices");
    // Axes that shrink the tensor most go first; ties keep the last axis first.
    std::vector<std::size_t> order(matrices.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = order.size() - 1 - j;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return matrices[a].rows * shape[b] < matrices[b].rows * shape[a];
    });
    std::vector<Complex> current(samples.begin(), samples.end());
    for (std::size_t j : order) current = contract_axis(current, shape, j, matrices[j].rows, matrices[j].entries);
    return current;
}

Complex integrate_samples(std::span<const Complex> samples, std::span<const AxisRule> rules) {
    std::vector<std::span<const Complex>> w;
    for (const auto& r : rules) w.emplace_back(r.weights);
    return contract_weights(samples, w);
}

Complex contract_weights(std::span<const Complex> samples, std::span<const std::span<const Complex>> weights) {
    std::size_t total = 1;
    for (const auto& w : weights) total *= w.size();
    if (samples.size() != total) throw DimensionMismatch("samples do not match the grid");
    // Contract the last (contiguous) axis first; every pass reads whole lines.
    std::vector<Complex> buf;
    std::span<const Complex> current = samples;
    std::vector<Complex> line;
    for (std::size_t j = weights.size(); j-- > 0;) {
        const std::size_t len = weights[j].size();
        const std::size_t lines = current.size() / len;
        std::vector<Complex> out(lines);
        line.resize(len);
        for (std::size_t o = 0; o < lines; ++o) {
            const Complex* row = current.data() + o * len;
            for (std::size_t k = 0; k < len; ++k) line[k] = row[k] * weights[j][k];
            out[o] = pairwise_sum(line);
        }
        buf = std::move(out);
        current = buf;
    }
    return current.front();
}

TaylorPoly power_moments(std::span<const Complex> samples, std::span<const AxisRule> rules,
                         const TruncationBox& box) {
    if (box.dim() != rules.size()) throw DimensionMismatch("moment box vs contour dimension");
    std::vector<std::size_t> shape;
    for (const auto& r : rules) shape.push_back(r.nodes.size());
    std::vector<Complex> current(samples.begin(), samples.end());
    for (std::size_t j = rules.size(); j-- > 0;) {
        const auto len = rules[j].nodes.size();
        const auto modes = static_cast<std::size_t>(box.bound(j) + 1);
        std::vector<Complex> matrix(modes * len);
        for (std::size_t k = 0; k < len; ++k) {
            Complex p = rules[j].weights[k];
            for (std::size_t a = 0; a < modes; ++a) {
                matrix[a * len + k] = p;
                p *= rules[j].nodes[k];
            }
        }
        current = contract_axis(current, shape, j, modes, matrix);
    }
    return TaylorPoly(box, std::move(current));
}

int next_power_of_two(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

int default_nodes(const TruncationBox& box) {
    return next_power_of_two(std::max(64, 2 * (box.max_bound() + 1)));
}

Complex contour_integral(const Evaluable& g, const PolyContour& contour, std::span<const int> nodes) {
    auto rules = tensor_rules(contour, nodes);
    auto samples = sample_on_grid(g, rules);
    return integrate_samples(samples, rules);
}

Complex contour_integral(const Evaluable& g, const PolyContour& contour, int nodes) {
    std::vector<int> n(contour.dim(), nodes);
    return contour_integral(g, contour, n);
}

TaylorPoly taylor_coefficients(const Evaluable& f, const Point& center, std::span<const double> radii,
                               const TruncationBox& box, int nodes) {
    const std::size_t n = box.dim();
    if (center.dim() != n || radii.size() != n) throw DimensionMismatch("taylor_coefficients: dimension mismatch");
    std::vector<int> counts(n, nodes);
    require_nodes_for_box(counts, box);
    PolyContour circle;
    for (std::size_t j = 0; j < n; ++j) circle.factors.push_back({Circle{center[j], radii[j], +1}});
    return coefficients_from_samples(sample_on_grid(f, tensor_rules(circle, counts)), counts, radii, box);
}

TaylorPoly coefficients_from_samples(std::span<const Complex> samples, std::span<const int> nodes,
                                     std::span<const double> radii, const TruncationBox& box) {
    const std::size_t n = box.dim();
    if (nodes.size() != n || radii.size() != n) throw DimensionMismatch("coefficient extraction: dimension mismatch");
    require_nodes_for_box(nodes, box);
    auto modes = circle_modes(std::vector<Complex>(samples.begin(), samples.end()), nodes, box, -1, 0);
    for (std::size_t flat = 0; flat < modes.size(); ++flat) {
        auto alpha = box.multi_index(flat);
        for (std::size_t j = 0; j < n; ++j) modes[flat] *= std::pow(radii[j], -alpha[j]);
    }
    return TaylorPoly(box, std::move(modes));
}

TaylorPoly laurent_moments(const Evaluable& psi, std::span<const double> radii, const TruncationBox& box,
                           int nodes, std::span<const double> singular_radii) {
    const std::size_t n = box.dim();
    if (radii.size() != n) throw DimensionMismatch("laurent_moments: dimension mismatch");
    if (!singular_radii.empty()) {
        if (singular_radii.size() != n) throw DimensionMismatch("laurent_moments: singular radii dimension");
        for (std::size_t j = 0; j < n; ++j) {
            if (!(radii[j] > singular_radii[j])) {
                throw ContourPlacementError("moment circle radius " + std::to_string(radii[j]) +
                                            " does not exceed the singular radius " +
                                            std::to_string(singular_radii[j]));
            }
        }
    }
    std::vector<int> counts(n, nodes);
    require_nodes_for_box(counts, box);
    PolyContour circle;
    for (std::size_t j = 0; j < n; ++j) circle.factors.push_back({Circle{0.0, radii[j], +1}});
    auto rules = tensor_rules(circle, counts);
    auto modes = circle_modes(sample_on_grid(psi, rules), counts, box, +1, 1);
    for (std::size_t flat = 0; flat < modes.size(); ++flat) {
        auto alpha = box.multi_index(flat);
        for (std::size_t j = 0; j < n; ++j) modes[flat] *= std::pow(radii[j], alpha[j] + 1);
    }
    return TaylorPoly(box, std::move(modes));
}

} // namespace holomult
