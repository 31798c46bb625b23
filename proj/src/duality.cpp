// SPDX-License-Identifier: Apache-2.0
#include "holomult/duality.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "holomult/error.hpp"

namespace holomult {

bool encloses(const CircleUnion& curves, const ClosedDisc& compact) {
    for (const auto& c : curves) {
        const double d = std::abs(compact.center - c.center);
        if (!(std::abs(d - c.radius) > compact.radius)) return false;
    }
    return winding(curves, compact.center) == 1;
}

PolyContour enclosing_contour(const Germ& kernel, double ratio) {
    PolyContour p;
    for (std::size_t j = 0; j < kernel.dim(); ++j) {
        const double extent = kernel.singular_extent(j, 0.0);
        const double r = extent > 0.0 ? ratio * extent : kernel.scale_hint(j).value_or(1.0);
        p.factors.push_back({Circle{0.0, r, +1}});
    }
    return p;
}

AnalyticFunctional::AnalyticFunctional(Germ kernel, PolyContour contour, int nodes)
    : kernel_(std::move(kernel)), contour_(std::move(contour)), nodes_(nodes) {
    if (contour_.dim() != kernel_.dim()) throw DimensionMismatch("functional contour vs kernel dimension");
    if (nodes_ < 4) throw NodeCountError("functional needs at least 4 nodes per circle");
    for (std::size_t j = 0; j < dim(); ++j) {
        if (contour_.factors[j].empty()) throw InvalidArgument("empty contour factor");
        for (const auto& s : kernel_.singular_set(j)) {
            if (!encloses(contour_.factors[j], s)) {
                throw ContourPlacementError("contour of variable " + std::to_string(j) +
                                            " does not wind once around the kernel singularities");
            }
        }
    }
}

AnalyticFunctional AnalyticFunctional::point_evaluation(const Point& a, int nodes) {
    std::vector<std::vector<Complex>> poles;
    for (auto c : a.coords()) poles.push_back({c});
    return around(Germ::product_poles(poles), nodes);
}

AnalyticFunctional AnalyticFunctional::around(Germ kernel, int nodes) {
    auto contour = enclosing_contour(kernel);
    return AnalyticFunctional(std::move(kernel), std::move(contour), nodes);
}

AnalyticFunctional AnalyticFunctional::zero(std::size_t dim, int nodes) {
    return around(Germ::zero(dim, Expansion::AtInfinity), nodes);
}

AnalyticFunctional AnalyticFunctional::relocated(PolyContour contour) const {
    return AnalyticFunctional(kernel_, std::move(contour), nodes_);
}

AnalyticFunctional AnalyticFunctional::with_nodes(int nodes) const {
    return AnalyticFunctional(kernel_, contour_, nodes);
}

AnalyticFunctional AnalyticFunctional::scaled(Complex c) const {
    return AnalyticFunctional(kernel_.scaled(c), contour_, nodes_);
}

Complex act(const AnalyticFunctional& t, const Evaluable& h) {
    if (t.kernel().is_zero()) return 0.0;
    const auto& kernel = t.kernel();
    return contour_integral([&](std::span<const Complex> w) { return h(w) * kernel(w); }, t.contour(), t.nodes());
}

namespace {

// Kernel samples times the tensor weights, shared by every evaluation of f_T.
struct TransformData {
    std::vector<AxisRule> rules;
    std::vector<Complex> samples;
    PolyContour contour;
};

Complex transform_at(const TransformData& data, std::span<const Complex> zeta) {
    std::vector<std::vector<Complex>> weights(data.rules.size());
    for (std::size_t j = 0; j < data.rules.size(); ++j) {
        if (winding(data.contour.factors[j], zeta[j]) != 0) {
            throw DomainError("Cauchy transform evaluated inside the functional's contour");
        }
        for (const auto& c : data.contour.factors[j]) {
            if (std::abs(std::abs(zeta[j] - c.center) - c.radius) == 0.0) {
                throw DomainError("Cauchy transform evaluated on the functional's contour");
            }
        }
        const auto& r = data.rules[j];
        weights[j].resize(r.nodes.size());
        for (std::size_t k = 0; k < r.nodes.size(); ++k) weights[j][k] = r.weights[k] / (zeta[j] - r.nodes[k]);
    }
    std::vector<std::span<const Complex>> views(weights.begin(), weights.end());
    return contract_weights(data.samples, views);
}

// Row i holds the Cauchy weights w_k / (x_i - t_k) of axis j at the point x_i.
AxisMatrix cauchy_matrix(const TransformData& data, std::size_t j, std::span<const Complex> points) {
    const auto& r = data.rules[j];
    const std::size_t len = r.nodes.size();
    AxisMatrix m;
    m.rows = points.size();
    m.entries.resize(points.size() * len);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Complex x = points[i];
        if (winding(data.contour.factors[j], x) != 0) {
            throw DomainError("Cauchy transform evaluated inside the functional's contour");
        }
        for (const auto& c : data.contour.factors[j]) {
            if (std::abs(x - c.center) == c.radius) {
                throw DomainError("Cauchy transform evaluated on the functional's contour");
            }
        }
        for (std::size_t k = 0; k < len; ++k) m.entries[i * len + k] = r.weights[k] / (x - r.nodes[k]);
    }
    return m;
}

std::vector<Complex> transform_on_grid(const TransformData& data, std::span<const std::vector<Complex>> axes) {
    if (axes.size() != data.rules.size()) throw DimensionMismatch("Cauchy transform: dimension mismatch");
    std::vector<AxisMatrix> mats;
    for (std::size_t j = 0; j < axes.size(); ++j) mats.push_back(cauchy_matrix(data, j, axes[j]));
    return tensor_contract(data.samples, mats);
}

// Moment matrix times Cauchy matrix per axis, then one contraction of T's samples.
TaylorPoly transform_moments(const TransformData& data, std::span<const AxisRule> rules, const TruncationBox& box) {
    if (rules.size() != data.rules.size() || box.dim() != rules.size()) {
        throw DimensionMismatch("Cauchy transform moments: dimension mismatch");
    }
    std::vector<AxisMatrix> mats;
    for (std::size_t j = 0; j < rules.size(); ++j) {
        const AxisMatrix c = cauchy_matrix(data, j, rules[j].nodes);
        const std::size_t len = data.rules[j].nodes.size();
        const auto modes = static_cast<std::size_t>(box.bound(j) + 1);
        AxisMatrix m;
        m.rows = modes;
        m.entries.assign(modes * len, 0.0);
        for (std::size_t i = 0; i < rules[j].nodes.size(); ++i) {
            Complex p = rules[j].weights[i];
            for (std::size_t a = 0; a < modes; ++a) {
                for (std::size_t k = 0; k < len; ++k) m.entries[a * len + k] += p * c.entries[i * len + k];
                p *= rules[j].nodes[i];
            }
        }
        mats.push_back(std::move(m));
    }
    return TaylorPoly(box, tensor_contract(data.samples, mats));
}

TransformData transform_data(const AnalyticFunctional& t) {
    TransformData d;
    d.rules = tensor_rules(t.contour(), t.nodes());
    d.samples = sample_on_grid(t.kernel().evaluator(), d.rules);
    d.contour = t.contour();
    return d;
}

} // namespace

Complex cauchy_transform(const AnalyticFunctional& t, const Point& zeta) {
    if (zeta.dim() != t.dim()) throw DimensionMismatch("Cauchy transform: dimension mismatch");
    return transform_at(transform_data(t), zeta.coords());
}

Germ cauchy_transform_germ(const AnalyticFunctional& t) {
    auto data = std::make_shared<TransformData>(transform_data(t));
    std::vector<std::vector<ClosedDisc>> singular(t.dim());
    for (std::size_t j = 0; j < t.dim(); ++j) {
        for (const auto& c : t.contour().factors[j]) {
            if (c.orientation > 0) singular[j].push_back({c.center, c.radius});
        }
    }
    auto eval = [data](std::span<const Complex> zeta) { return transform_at(*data, zeta); };
    auto grid = [data](std::span<const std::vector<Complex>> axes) { return transform_on_grid(*data, axes); };
    auto mom = [data](std::span<const AxisRule> rules, const TruncationBox& box) {
        return transform_moments(*data, rules, box);
    };
    return Germ::from_evaluator(t.dim(), eval, std::move(singular), Expansion::AtInfinity)
        .with_grid_evaluator(grid)
        .with_moment_evaluator(mom);
}

TaylorPoly moments(const AnalyticFunctional& t, const TruncationBox& box) {
    if (box.dim() != t.dim()) throw DimensionMismatch("moments: box vs functional dimension");
    if (t.kernel().is_zero()) return TaylorPoly::zero(box);
    auto rules = tensor_rules(t.contour(), t.nodes());
    return t.kernel().grid_moments(rules, box);
}

AnalyticFunctional dual_functional(const AnalyticFunctional& t, double spread) {
    if (!(spread > 1.0)) throw InvalidArgument("dual contour must be strictly wider");
    PolyContour wider = t.contour();
    for (auto& curves : wider.factors) {
        for (auto& c : curves) {
            if (c.orientation < 0) throw UnsupportedGeometry("dual functional needs positively oriented circles");
            c.radius *= spread;
        }
    }
    // Aliasing of the poles at T's nodes decays like spread^{-N}.
    const int need = static_cast<int>(std::ceil(std::log(1e-18) / -std::log(spread)));
    const int nodes = std::max(t.nodes(), next_power_of_two(need));
    return AnalyticFunctional(cauchy_transform_germ(t), std::move(wider), nodes);
}

std::optional<TaylorPoly> exact_moments(const AnalyticFunctional& t, const TruncationBox& box) {
    if (box.dim() != t.dim()) throw DimensionMismatch("moments: box vs functional dimension");
    if (t.kernel().expansion() != Expansion::AtInfinity) return std::nullopt;
    return t.kernel().exact_sequence(box);
}

double moment_discrepancy(const TaylorPoly& a, const TaylorPoly& b, const TaylorPoly& reference) {
    if (a.box() != b.box() || a.box() != reference.box()) throw DimensionMismatch("moment tables differ in box");
    double e = 0.0;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const double d = std::abs(a.coeffs()[i] - b.coeffs()[i]);
        const double ref = std::abs(reference.coeffs()[i]);
        e = std::max(e, ref == 0.0 ? d : d / ref);
    }
    return e;
}

RoundtripReport duality_roundtrip(const AnalyticFunctional& t, const TruncationBox& box, double spread) {
    RoundtripReport r;
    r.before = moments(t, box);
    r.after = moments(dual_functional(t, spread), box);
    r.reference = exact_moments(t, box).value_or(r.before);
    r.max_rel_error = moment_discrepancy(r.after, r.before, r.reference);
    return r;
}

double quadrature_bound(const AnalyticFunctional& t) {
    auto rules = tensor_rules(t.contour(), t.nodes());
    auto samples = sample_on_grid(t.kernel().evaluator(), rules);
    double sup = 0.0;
    for (auto s : samples) sup = std::max(sup, std::abs(s));
    double length = 1.0;
    for (const auto& f : t.contour().factors) {
        double l = 0.0;
        for (const auto& c : f) l += c.length();
        length *= l / (2.0 * std::numbers::pi);
    }
    return sup * length;
}

double boundary_sup(const Evaluable& f, const CompactBox& k, int nodes) {
    std::vector<AxisRule> rules;
    for (std::size_t j = 0; j < k.dim(); ++j) {
        const auto& d = k.factor(j);
        if (d.radius > 0.0) {
            rules.push_back(axis_rule({Circle{d.center, d.radius, +1}}, nodes));
        } else {
            rules.push_back(AxisRule{{d.center}, {1.0}});
        }
    }
    double sup = 0.0;
    for (auto v : sample_on_grid(f, rules)) sup = std::max(sup, std::abs(v));
    return sup;
}

CarrierReport carrier_bound_check(const AnalyticFunctional& t, const CompactBox& carrier,
                                  std::span<const Evaluable> samples, std::optional<double> c_user,
                                  int boundary_nodes) {
    if (carrier.dim() != t.dim()) throw DimensionMismatch("carrier vs functional dimension");
    CarrierReport report;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double value = std::abs(act(t, samples[i]));
        const double norm = boundary_sup(samples[i], carrier, boundary_nodes);
        if (norm > 0.0) report.c_estimate = std::max(report.c_estimate, value / norm);
        if (c_user && value > *c_user * norm) report.violations.push_back(i);
    }
    return report;
}

} // namespace holomult
