// SPDX-License-Identifier: Apache-2.0
#include "holomult/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holomult/error.hpp"

namespace holomult {

namespace {

std::vector<Point> product_grid(const std::vector<std::vector<Complex>>& axes) {
    std::vector<Point> out;
    if (axes.empty() || std::any_of(axes.begin(), axes.end(), [](const auto& a) { return a.empty(); })) return out;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        std::vector<Complex> c(axes.size());
        for (std::size_t j = 0; j < axes.size(); ++j) c[j] = axes[j][idx[j]];
        out.emplace_back(std::move(c));
        std::size_t j = axes.size();
        while (true) {
            if (j == 0) return out;
            --j;
            if (++idx[j] < axes[j].size()) break;
            idx[j] = 0;
        }
    }
}

void require_window(const DeltaSequence& delta, int top) {
    if (delta.length() < top) {
        throw InvalidArgument("delta sequence too short: need index " + std::to_string(top) + ", have " +
                              std::to_string(delta.length()));
    }
}

} // namespace

DeltaSequence::DeltaSequence(std::vector<double> delta) : delta_(std::move(delta)) {
    if (delta_.empty()) throw InvalidArgument("delta sequence is empty");
    for (std::size_t k = 0; k < delta_.size(); ++k) {
        if (!(delta_[k] > 0.0) || !std::isfinite(delta_[k])) throw InvalidArgument("delta entries must be positive");
        if (k > 0 && delta_[k] > delta_[k - 1]) throw InvalidArgument("delta sequence must be non-increasing");
    }
    if (delta_.size() > 1 && !(delta_.back() < delta_.front())) {
        throw InvalidArgument("delta sequence must decrease over its window");
    }
    double acc = 1.0;
    for (double d : delta_) cumulative_.push_back(acc *= d);
}

DeltaSequence DeltaSequence::geometric(double q, int length) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("geometric delta needs 0 < q < 1");
    if (length < 0) throw InvalidArgument("delta length must be non-negative");
    std::vector<double> d;
    for (int k = 0; k <= length; ++k) d.push_back(std::pow(q, k));
    return DeltaSequence(std::move(d));
}

double DeltaSequence::cumulative(int k) const { return cumulative_.at(static_cast<std::size_t>(k)); }

SeminormReport germ_seminorm(const Germ& f, const ProductDomain& v, const DeltaSequence& delta,
                             const TruncationBox& box, const SeminormOptions& options) {
    const std::size_t n = v.dim();
    if (f.dim() != n || box.dim() != n) throw DimensionMismatch("germ, box and domain differ in dimension");
    require_window(delta, box.diameter());
    SeminormReport rep;
    rep.box = box;
    rep.witness.alpha = MultiIndex::zero(n);
    if (f.is_zero()) return rep;

    std::vector<double> weight(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) weight[i] = delta.cumulative(box.multi_index(i).total());
    bool first = true;
    auto consider = [&](const TaylorPoly& c, bool at_inf, const Point& p) {
        for (std::size_t i = 0; i < c.coeffs().size(); ++i) {
            const double val = std::abs(c.coeffs()[i]) * weight[i];
            if (first || val > rep.value) {
                first = false;
                rep.value = val;
                rep.witness.at_infinity = at_inf;
                rep.witness.boundary = p;
                rep.witness.alpha = box.multi_index(i);
            }
        }
    };

    // Boundary branch. Local circles about every boundary point are sampled
    // in blocks: all local nodes of the last axis at once, one boundary point
    // on each of the other axes.
    const PolyContour bd = distinguished_boundary(v);
    const int local = next_power_of_two(std::max(16, 2 * (box.max_bound() + 1)));
    const auto L = static_cast<std::size_t>(local);
    std::vector<std::vector<Complex>> points(n), local_axes(n);
    std::vector<std::vector<double>> local_radii(n);
    for (std::size_t j = 0; j < n; ++j) {
        points[j] = axis_rule(bd.factors[j], options.boundary_points).nodes;
        for (Complex p : points[j]) {
            double d = f.singular_distance(j, p);
            if (!std::isfinite(d)) d = v.factor(j).is_disc() ? v.factor(j).as_disc().radius : std::abs(p);
            if (!(d > 0.0)) throw ContourPlacementError("germ is singular on the distinguished boundary");
            const double r = options.local_fraction * d;
            local_radii[j].push_back(r);
            for (std::size_t k = 0; k < L; ++k) {
                local_axes[j].push_back(p + std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / local));
            }
        }
    }
    const std::size_t last = n - 1;
    const std::size_t m_last = points[last].size();
    std::vector<std::size_t> head(last, 0);
    std::vector<int> counts(n, local);
    std::vector<double> radii(n);
    std::vector<Complex> sub(static_cast<std::size_t>(std::pow(L, n)));
    while (true) {
        std::vector<std::vector<Complex>> axes(n);
        for (std::size_t j = 0; j < last; ++j) {
            axes[j].assign(local_axes[j].begin() + static_cast<std::ptrdiff_t>(head[j] * L),
                           local_axes[j].begin() + static_cast<std::ptrdiff_t>((head[j] + 1) * L));
            radii[j] = local_radii[j][head[j]];
        }
        axes[last] = local_axes[last];
        const std::vector<Complex> block = f.eval_on_grid(axes);
        // block shape: L x ... x L x (m_last * L)
        const std::size_t row = m_last * L;
        for (std::size_t b = 0; b < m_last; ++b) {
            for (std::size_t outer = 0; outer < sub.size() / L; ++outer) {
                for (std::size_t k = 0; k < L; ++k) sub[outer * L + k] = block[outer * row + b * L + k];
            }
            radii[last] = local_radii[last][b];
            std::vector<Complex> c(n);
            for (std::size_t j = 0; j < last; ++j) c[j] = points[j][head[j]];
            c[last] = points[last][b];
            consider(coefficients_from_samples(sub, counts, radii, box), false, Point(std::move(c)));
        }
        std::size_t j = last;
        bool done = true;
        while (j > 0) {
            --j;
            if (++head[j] < points[j].size()) {
                done = false;
                break;
            }
            head[j] = 0;
        }
        if (done) break;
    }

    // Branch at infinity: Taylor coefficients of f(1/zeta) at 0.
    for (std::size_t j = 0; j < n; ++j) {
        const double ext = f.singular_extent(j, 0.0);
        radii[j] = ext > 0.0 ? 0.5 / ext : 1.0;
    }
    const int inf_nodes = next_power_of_two(std::max(64, 2 * (box.max_bound() + 1)));
    PolyContour circle;
    for (std::size_t j = 0; j < n; ++j) circle.factors.push_back({Circle{0.0, radii[j], +1}});
    std::vector<std::vector<Complex>> inv = axis_nodes(tensor_rules(circle, inf_nodes));
    for (auto& axis : inv) {
        for (auto& w : axis) w = 1.0 / w;
    }
    const std::vector<int> inf_counts(n, inf_nodes);
    const Point none;
    consider(coefficients_from_samples(f.eval_on_grid(inv), inf_counts, radii, box), true, none);
    return rep;
}

std::vector<Point> compact_grid(const CompactBox& k, int radii, int angles) {
    if (radii < 1 || angles < 1) throw InvalidArgument("compact grid needs at least one radius and angle");
    std::vector<std::vector<Complex>> axes;
    for (std::size_t j = 0; j < k.dim(); ++j) {
        const auto& d = k.factor(j);
        std::vector<Complex> pts{d.center};
        if (d.radius > 0.0) {
            for (int i = 1; i <= radii; ++i) {
                for (int a = 0; a < angles; ++a) {
                    pts.push_back(d.center + std::polar(d.radius * i / radii, 2.0 * std::numbers::pi * a / angles + 0.3));
                }
            }
        }
        std::erase_if(pts, [](Complex p) { return p == 0.0; });
        axes.push_back(std::move(pts));
    }
    return product_grid(axes);
}

SeminormReport upsilon(const GermFamily& family, const ProductDomain& omega, const CompactBox& k,
                       const DeltaSequence& delta, const TruncationBox& box, const SeminormOptions& options) {
    if (k.dim() != omega.dim() || box.dim() != omega.dim()) {
        throw DimensionMismatch("compact, box and domain differ in dimension");
    }
    if (!k.inside(omega)) throw DomainError("compact set is not inside the domain");
    const std::vector<Point> grid = compact_grid(k, options.grid_radii, options.grid_angles);
    SeminormReport rep;
    rep.box = box;
    rep.z_grid_size = grid.size();
    rep.witness.alpha = MultiIndex::zero(omega.dim());
    bool first = true;
    for (const Point& z : grid) {
        Germ g = Germ::zero(omega.dim(), Expansion::AtInfinity);
        try {
            g = family(z);
        } catch (const Error& e) {
            throw MembershipError(std::string("germ family has no extension at a grid point: ") + e.what());
        }
        SeminormReport r = germ_seminorm(g, inverse_scale(omega, z), delta, box, options);
        if (first || r.value > rep.value) {
            first = false;
            rep.value = r.value;
            rep.witness = r.witness;
            rep.witness.z = z;
        }
    }
    return rep;
}

SeminormReport functional_seminorm(const AnalyticFunctional& t, const ProductDomain& omega, const CompactBox& k,
                                   const DeltaSequence& delta, const TruncationBox& box,
                                   const SeminormOptions& options) {
    const GermFamily family = [&](const Point& z) {
        if (t.kernel().is_zero()) return Germ::zero(t.dim(), Expansion::AtInfinity);
        const Placement p = place_kernel_contour(t.kernel(), inverse_scale(omega, z), EngineOptions{}, box, true);
        const int nodes = std::max(t.nodes(), *std::max_element(p.nodes.begin(), p.nodes.end()));
        return cauchy_transform_germ(t.relocated(p.contour).with_nodes(nodes));
    };
    return upsilon(family, omega, k, delta, box, options);
}

ProbeReport boundedness_probe(const Multiplier& m, const CompactBox& k, TestFamily family,
                              const DeltaSequence& delta, const TruncationBox& box, const SeminormOptions& options) {
    const std::size_t n = m.dim();
    if (k.dim() != n || box.dim() != n) throw DimensionMismatch("compact, box and multiplier differ in dimension");
    if (!k.inside(m.domain())) throw DomainError("compact set is not inside the domain");
    const std::vector<Point> grid = compact_grid(k, options.grid_radii, options.grid_angles);
    ProbeReport rep;
    rep.grid_size = grid.size();

    auto consider = [&](double v) {
        if (rep.family_size == 0 || v > rep.sup_value) {
            rep.sup_value = v;
            rep.witness = rep.family_size;
        }
        ++rep.family_size;
    };

    if (family == TestFamily::Monomials) {
        require_window(delta, box.diameter() + static_cast<int>(n));
        // sup over the grid of |M(zeta^a)|, scaled per member afterwards.
        std::vector<double> sup(box.size(), 0.0);
        for (const Point& z : grid) {
            const TaylorPoly v = evaluate_monomials(m, z, box);
            for (std::size_t i = 0; i < box.size(); ++i) sup[i] = std::max(sup[i], std::abs(v.coeffs()[i]));
        }
        for (std::size_t i = 0; i < box.size(); ++i) {
            consider(sup[i] * delta.cumulative(box.multi_index(i).total() + static_cast<int>(n)));
        }
        return rep;
    }

    // Cauchy kernels: parameters z on the K grid, w on a circle outside z^{-1} Omega.
    require_window(delta, box.diameter());
    const int w_angles = 4;
    for (const Point& z : grid) {
        const ProductDomain target = inverse_scale(m.domain(), z);
        std::vector<std::vector<Complex>> w_axes;
        for (std::size_t j = 0; j < n; ++j) {
            const auto& d = target.factor(j).as_disc();
            std::vector<Complex> ws;
            for (int a = 0; a < w_angles; ++a) {
                ws.push_back(d.center + std::polar(1.25 * d.radius, 2.0 * std::numbers::pi * a / w_angles + 0.7));
            }
            w_axes.push_back(std::move(ws));
        }
        for (const Point& w : product_grid(w_axes)) {
            for (std::size_t i = 0; i < box.size(); ++i) {
                const MultiIndex a = box.multi_index(i);
                const double scale = delta.cumulative(a.total());
                const Evaluable h = [w, z, a, scale](std::span<const Complex> s) {
                    Complex p = scale;
                    for (std::size_t j = 0; j < s.size(); ++j) p /= std::pow(w[j] - s[j] / z[j], a[j] + 1);
                    return p;
                };
                double sup = 0.0;
                for (const Point& x : grid) sup = std::max(sup, std::abs(evaluate_at(m, h, x)));
                consider(sup);
            }
        }
    }
    return rep;
}

} // namespace holomult
