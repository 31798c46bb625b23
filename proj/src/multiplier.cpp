// SPDX-License-Identifier: Apache-2.0
#include "holomult/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <type_traits>
#include <string>

#include "holomult/error.hpp"

namespace holomult {

namespace {

constexpr double kAliasTarget = 1e-18;

void require_runge(const ProductDomain& omega) {
    if (!omega.is_runge()) {
        throw UnsupportedGeometry("multipliers are only supported on products of discs");
    }
}

std::string describe(const Point& z) {
    std::string s = "(";
    for (std::size_t j = 0; j < z.dim(); ++j) {
        if (j > 0) s += ", ";
        s += std::to_string(z[j].real()) + (z[j].imag() < 0 ? "" : "+") + std::to_string(z[j].imag()) + "i";
    }
    return s + ")";
}

struct AxisPlacement {
    double radius;
    double ratio; // extent / radius, 0 when only the centre is singular
};

/// Circle about the centre of `outer` (radius R) enclosing a singular extent.
AxisPlacement place_axis(double extent, std::optional<double> hint, double outer, const EngineOptions& opt) {
    if (!(extent < outer)) {
        throw ContourPlacementError("singularities reach the boundary (extent " + std::to_string(extent) +
                                    ", radius " + std::to_string(outer) + ")");
    }
    if (extent == 0.0) {
        const double want = hint.value_or(1.0);
        return {std::min(want, outer / opt.contour_ratio), 0.0};
    }
    const double r = std::min(opt.contour_ratio * extent, std::sqrt(extent * outer));
    return {r, extent / r};
}

int nodes_for(double q, const TruncationBox& box, const EngineOptions& opt) {
    if (opt.nodes > 0) return opt.nodes;
    const int base = default_nodes(box);
    int n = base;
    if (q > 0.0) {
        const double need = std::ceil(std::log(kAliasTarget) / std::log(q));
        if (need > static_cast<double>(opt.max_nodes)) {
            n = std::max(base, opt.max_nodes);
        } else {
            n = std::max(base, next_power_of_two(static_cast<int>(need)));
        }
    }
    return std::min(n, std::max(base, opt.max_nodes));
}

void require_point(const ProductDomain& omega, const Point& z) {
    if (z.dim() != omega.dim()) throw DimensionMismatch("point and domain differ in dimension");
    if (!omega.contains(z)) throw DomainError("point " + describe(z) + " lies outside the domain");
}

/// Extent of the pairing of psi_hat about 0: max 1/|w| over its singular set.
double reciprocal_extent(const Germ& psi_hat, std::size_t j) {
    const double d = psi_hat.singular_distance(j, 0.0);
    if (!std::isfinite(d)) return 0.0;
    if (!(d > 0.0)) throw InvalidArgument("Taylor germ is singular at the origin");
    return 1.0 / d;
}

std::optional<double> reciprocal_hint(const Germ& psi_hat, std::size_t j) {
    if (auto h = psi_hat.scale_hint(j)) return 1.0 / *h;
    return std::nullopt;
}

/// Radius of the largest origin-centred disc inside the factor.
double origin_room(const PlanarFactor& f) {
    const auto& d = f.as_disc();
    const double room = d.radius - std::abs(d.center);
    if (!(room > 0.0)) {
        throw UnsupportedGeometry("Taylor-germ application needs 0 inside every factor of z^{-1} Omega");
    }
    return room;
}

std::vector<Complex> multiply(std::vector<Complex> a, std::span<const Complex> b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    return a;
}

Complex evaluate_off(const Multiplier& m, const TaylorPoly& f, const Point& z);
Complex evaluate_off(const Multiplier& m, const Evaluable& f, const Point& z);

Germ laurent_kernel(const Multiplier& m) {
    if (const auto* p = std::get_if<FromLaurentGerm>(&m.provenance())) return p->germ;
    if (const auto* p = std::get_if<FromFunctional>(&m.provenance())) return p->functional.kernel();
    return psi_of(m);
}

template <class F>
Complex evaluate_generic(const Multiplier& m, const F& f, const Point& z) {
    require_point(m.domain(), z);
    if (!z.on_hyperplane()) return evaluate_off(m, f, z);

    // Cauchy mean in the vanishing coordinates only.
    const std::size_t n = z.dim();
    std::vector<std::size_t> axes;
    for (std::size_t j = 0; j < n; ++j) {
        if (z[j] == 0.0) axes.push_back(j);
    }
    PolyContour circles;
    std::vector<int> counts;
    for (std::size_t j : axes) {
        const double rho = 0.5 * m.domain().factor(j).boundary_distance(0.0);
        circles.factors.push_back({Circle{0.0, rho, +1}});
        int d = m.box().bound(j);
        if constexpr (std::is_same_v<F, TaylorPoly>) d = std::max(d, f.box().bound(j));
        counts.push_back(next_power_of_two(std::max(8, 2 * (d + 1))));
        if constexpr (!std::is_same_v<F, TaylorPoly>) counts.back() = std::max(counts.back(), 64);
    }
    std::vector<AxisRule> rules;
    for (std::size_t k = 0; k < axes.size(); ++k) {
        rules.push_back(axis_rule(circles.factors[k], counts[k], std::numbers::pi / counts[k]));
    }
    const Evaluable g = [&](std::span<const Complex> s) {
        std::vector<Complex> c(z.coords().begin(), z.coords().end());
        Complex den = 1.0;
        for (std::size_t k = 0; k < axes.size(); ++k) {
            c[axes[k]] = s[k];
            den *= s[k];
        }
        return evaluate_off(m, f, Point(std::move(c))) / den;
    };
    return integrate_samples(sample_on_grid(g, rules), rules);
}

Complex evaluate_off(const Multiplier& m, const TaylorPoly& f, const Point& z) {
    if (std::holds_alternative<FromSequence>(m.provenance())) return eval(apply_sequence(m, f), z);
    if (const auto* p = std::get_if<FromTaylorGerm>(&m.provenance())) {
        return TaylorApplication(p->germ, z, m.domain(), m.options(), f.box()).apply(f);
    }
    return LaurentApplication(laurent_kernel(m), z, m.domain(), m.options(), f.box()).apply(f);
}

Complex evaluate_off(const Multiplier& m, const Evaluable& f, const Point& z) {
    if (const auto* p = std::get_if<FromTaylorGerm>(&m.provenance())) {
        return TaylorApplication(p->germ, z, m.domain(), m.options(), m.box(), false).apply(f);
    }
    return LaurentApplication(laurent_kernel(m), z, m.domain(), m.options(), m.box(), false).apply(f);
}

/// Root-test radius of the sequence per variable, used as the circle radius
/// for truncated germs whose only singularity is the origin.
std::vector<double> sequence_scale(const TaylorPoly& s) {
    const std::size_t n = s.dim();
    double top = 0.0;
    for (Complex c : s.coeffs()) top = std::max(top, std::abs(c));
    std::vector<double> r(n, 1.0);
    if (top == 0.0) return r;
    std::vector<double> best(n, 0.0);
    for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
        const double a = std::abs(s.coeffs()[i]) / top;
        if (a == 0.0) continue;
        const MultiIndex alpha = s.box().multi_index(i);
        for (std::size_t j = 0; j < n; ++j) {
            if (alpha[j] > 0) best[j] = std::max(best[j], std::pow(a, 1.0 / alpha[j]));
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (best[j] > 0.0) r[j] = std::max(best[j], 1e-3);
    }
    return r;
}

void check_laurent_membership(const Germ& psi, const ProductDomain& omega, const EngineOptions& opt) {
    for (const Point& z : interior_grid(omega, opt.membership_radii, opt.membership_angles)) {
        const ProductDomain target = inverse_scale(omega, z);
        for (std::size_t j = 0; j < omega.dim(); ++j) {
            const auto& d = target.factor(j).as_disc();
            if (!(psi.singular_extent(j, d.center) < d.radius)) {
                throw MembershipError("kernel singularities do not fit inside z^{-1} Omega at z = " + describe(z));
            }
        }
    }
}

void check_taylor_membership(const Germ& psi_hat, const ProductDomain& omega, const EngineOptions& opt) {
    for (const Point& z : interior_grid(omega, opt.membership_radii, opt.membership_angles)) {
        const ProductDomain target = inverse_scale(omega, z);
        for (std::size_t j = 0; j < omega.dim(); ++j) {
            const auto& d = target.factor(j).as_disc();
            const double room = d.radius - std::abs(d.center);
            if (!(room > 0.0) || !(reciprocal_extent(psi_hat, j) < room)) {
                throw MembershipError("Taylor germ does not define a multiplier at z = " + describe(z));
            }
        }
    }
}

} // namespace

// ---- Multiplier -----------------------------------------------------------

Multiplier::Multiplier(ProductDomain omega, TaylorPoly sequence, Provenance provenance, EngineOptions options)
    : domain_(std::move(omega)), sequence_(std::move(sequence)), provenance_(std::move(provenance)),
      options_(options) {
    require_runge(domain_);
    if (sequence_.dim() != domain_.dim()) throw DimensionMismatch("sequence and domain differ in dimension");
}

Multiplier Multiplier::from_sequence(ProductDomain omega, TaylorPoly sequence, EngineOptions options) {
    return Multiplier(std::move(omega), std::move(sequence), FromSequence{}, options);
}

Multiplier Multiplier::from_laurent_germ(ProductDomain omega, Germ psi, const TruncationBox& box,
                                         EngineOptions options) {
    require_runge(omega);
    if (psi.dim() != omega.dim() || box.dim() != omega.dim()) {
        throw DimensionMismatch("germ, box and domain differ in dimension");
    }
    if (psi.expansion() != Expansion::AtInfinity) throw InvalidArgument("expected a germ at infinity");
    check_laurent_membership(psi, omega, options);
    if (auto exact = psi.exact_sequence(box)) {
        return Multiplier(std::move(omega), std::move(*exact), FromLaurentGerm{std::move(psi)}, options);
    }

    const std::size_t n = omega.dim();
    std::vector<double> radii(n), singular(n);
    double q = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        singular[j] = psi.singular_extent(j, 0.0);
        if (singular[j] > 0.0) {
            radii[j] = options.contour_ratio * singular[j];
            q = std::max(q, 1.0 / options.contour_ratio);
        } else {
            radii[j] = psi.scale_hint(j).value_or(1.0);
        }
    }
    TaylorPoly seq = laurent_moments(psi.evaluator(), radii, box, nodes_for(q, box, options), singular);
    return Multiplier(std::move(omega), std::move(seq), FromLaurentGerm{std::move(psi)}, options);
}

Multiplier Multiplier::from_taylor_germ(ProductDomain omega, Germ psi_hat, const TruncationBox& box,
                                        EngineOptions options) {
    require_runge(omega);
    if (psi_hat.dim() != omega.dim() || box.dim() != omega.dim()) {
        throw DimensionMismatch("germ, box and domain differ in dimension");
    }
    if (psi_hat.expansion() != Expansion::AtOrigin) throw InvalidArgument("expected a germ at the origin");
    check_taylor_membership(psi_hat, omega, options);
    if (auto exact = psi_hat.exact_sequence(box)) {
        return Multiplier(std::move(omega), std::move(*exact), FromTaylorGerm{std::move(psi_hat)}, options);
    }

    const std::size_t n = omega.dim();
    std::vector<double> radii(n);
    double q = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = psi_hat.singular_distance(j, 0.0);
        if (std::isfinite(d)) {
            radii[j] = d / options.contour_ratio;
            q = std::max(q, 1.0 / options.contour_ratio);
        } else {
            radii[j] = psi_hat.scale_hint(j).value_or(1.0);
        }
    }
    TaylorPoly seq =
        taylor_coefficients(psi_hat.evaluator(), Point::zeros(n), radii, box, nodes_for(q, box, options));
    return Multiplier(std::move(omega), std::move(seq), FromTaylorGerm{std::move(psi_hat)}, options);
}

Multiplier Multiplier::identity(ProductDomain omega, const TruncationBox& box, EngineOptions options) {
    return from_sequence(std::move(omega), TaylorPoly::ones(box), options);
}

Multiplier Multiplier::dilation(ProductDomain omega, const Point& c, const TruncationBox& box,
                                EngineOptions options) {
    std::vector<std::vector<Complex>> poles;
    for (Complex cj : c.coords()) poles.push_back({cj});
    return from_laurent_germ(std::move(omega), Germ::product_poles(poles), box, options);
}

// ---- construction and the two maps ---------------------------------------

std::vector<Point> interior_grid(const ProductDomain& omega, int radii, int angles) {
    if (radii < 1 || angles < 1) throw InvalidArgument("interior grid needs at least one radius and angle");
    std::vector<std::vector<Complex>> axes;
    for (const auto& f : omega.factors()) {
        std::vector<Complex> pts;
        const double two_pi = 2.0 * std::numbers::pi;
        if (f.is_disc()) {
            const auto& d = f.as_disc();
            for (int i = 1; i <= radii; ++i) {
                for (int k = 0; k < angles; ++k) {
                    const double t = two_pi * k / angles + 0.3;
                    pts.push_back(d.center + std::polar(d.radius * i / (radii + 1.0), t));
                }
            }
        } else {
            const auto& a = f.as_annulus();
            for (int i = 1; i <= radii; ++i) {
                const double r = a.r_in + (a.r_out - a.r_in) * i / (radii + 1.0);
                for (int k = 0; k < angles; ++k) pts.push_back(std::polar(r, two_pi * k / angles + 0.3));
            }
        }
        std::erase_if(pts, [](Complex p) { return std::abs(p) < 1e-14; });
        axes.push_back(std::move(pts));
    }
    std::vector<Point> out;
    std::vector<std::size_t> idx(axes.size(), 0);
    if (std::any_of(axes.begin(), axes.end(), [](const auto& a) { return a.empty(); })) return out;
    while (true) {
        std::vector<Complex> c(axes.size());
        for (std::size_t j = 0; j < axes.size(); ++j) c[j] = axes[j][idx[j]];
        out.emplace_back(std::move(c));
        std::size_t j = axes.size();
        while (j > 0) {
            --j;
            if (++idx[j] < axes[j].size()) break;
            idx[j] = 0;
            if (j == 0) return out;
        }
    }
}

Placement place_kernel_contour(const Germ& kernel, const ProductDomain& target, const EngineOptions& options,
                               const TruncationBox& box, bool entire_integrand) {
    require_runge(target);
    if (kernel.dim() != target.dim()) throw DimensionMismatch("kernel and domain differ in dimension");
    Placement p;
    for (std::size_t j = 0; j < target.dim(); ++j) {
        const auto& d = target.factor(j).as_disc();
        const double extent = kernel.singular_extent(j, d.center);
        // The hint describes circles about the origin; use it only when the
        // centre is the origin.
        const std::optional<double> hint = d.center == 0.0 ? kernel.scale_hint(j) : std::nullopt;
        const AxisPlacement a = place_axis(extent, hint, d.radius, options);
        const double q = std::max(a.ratio, entire_integrand ? 0.0 : a.radius / d.radius);
        p.contour.factors.push_back({Circle{d.center, a.radius, +1}});
        p.nodes.push_back(nodes_for(q, box, options));
    }
    return p;
}

Multiplier phi(const AnalyticFunctional& t, const ProductDomain& omega, const TruncationBox& box,
               const EngineOptions& options) {
    require_runge(omega);
    if (t.dim() != omega.dim() || box.dim() != omega.dim()) {
        throw DimensionMismatch("functional, box and domain differ in dimension");
    }
    check_laurent_membership(t.kernel(), omega, options);
    std::optional<TaylorPoly> seq = exact_moments(t, box);
    if (!seq) seq = moments(t, box);
    return Multiplier(omega, std::move(*seq), FromFunctional{t}, options);
}

AnalyticFunctional theta(const Multiplier& m) {
    const ProductDomain& omega = m.domain();
    const Point one = Point::ones(m.dim());
    if (!omega.contains(one)) throw DomainError("Theta needs the point (1, ..., 1) inside the domain");

    Germ kernel = Germ::zero(m.dim(), Expansion::AtInfinity);
    if (const auto* p = std::get_if<FromTaylorGerm>(&m.provenance())) {
        kernel = reciprocal_pairing(p->germ);
    } else {
        kernel = laurent_kernel(m);
    }
    Placement pl = place_kernel_contour(kernel, omega, m.options(), m.box(), true);
    const int nodes = *std::max_element(pl.nodes.begin(), pl.nodes.end());
    return AnalyticFunctional(std::move(kernel), std::move(pl.contour), nodes);
}

TaylorPoly apply_sequence(const Multiplier& m, const TaylorPoly& f) {
    if (f.dim() != m.dim()) throw DimensionMismatch("function and multiplier differ in dimension");
    return hadamard(m.sequence(), f);
}

// ---- Laurent-germ application ----------------------------------------------

namespace {

/// The terms of a rational germ as separate germs; other germs stay whole.
std::vector<Germ> split_terms(const Germ& g) {
    const auto& terms = g.rational_terms();
    if (!terms || terms->size() < 2) return {g};
    std::vector<Germ> out;
    for (const auto& t : *terms) out.push_back(Germ::rational({t}, g.expansion()));
    return out;
}

/// Samples of each one-variable factor of a single-term germ, divided by the
/// node for Taylor kernels.
void sample_axes(KernelPart& part, const Germ& term, bool divide) {
    const auto& terms = term.rational_terms();
    if (!terms || terms->size() != 1) return;
    const RationalTerm& t = terms->front();
    if (t.factors.size() != part.rules.size()) return;
    part.weight = t.weight;
    for (std::size_t j = 0; j < t.factors.size(); ++j) {
        std::vector<Complex> v;
        for (Complex w : part.rules[j].nodes) v.push_back(divide ? t.factors[j](w) / w : t.factors[j](w));
        part.axis_kernel.push_back(std::move(v));
    }
}

/// Power moments of a separable part as an outer product of one-axis moments.
TaylorPoly separable_moments(const KernelPart& part, std::span<const AxisRule> rules, const TruncationBox& box) {
    std::vector<std::vector<Complex>> axis;
    for (std::size_t j = 0; j < rules.size(); ++j) {
        const TaylorPoly mj = power_moments(part.axis_kernel[j], rules.subspan(j, 1), TruncationBox{box.bound(j)});
        axis.emplace_back(mj.coeffs().begin(), mj.coeffs().end());
    }
    std::vector<Complex> out;
    out.reserve(box.size());
    std::vector<std::size_t> idx(axis.size(), 0);
    for (std::size_t i = 0; i < box.size(); ++i) {
        Complex v = part.weight;
        for (std::size_t j = 0; j < axis.size(); ++j) v *= axis[j][idx[j]];
        out.push_back(v);
        for (std::size_t j = axis.size(); j-- > 0;) {
            if (++idx[j] < axis[j].size()) break;
            idx[j] = 0;
        }
    }
    return TaylorPoly(box, std::move(out));
}

std::vector<AxisRule> inverted(std::vector<AxisRule> rules) {
    for (auto& r : rules) {
        for (auto& w : r.nodes) w = 1.0 / w;
    }
    return rules;
}

Complex dot(const TaylorPoly& f, const TaylorPoly& m) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) s += f.coeffs()[i] * m.coeffs()[i];
    return s;
}

Complex sum_parts(const std::vector<KernelPart>& parts, const std::function<std::vector<Complex>(const KernelPart&)>& f) {
    Complex s = 0.0;
    for (const auto& p : parts) s += integrate_samples(multiply(f(p), p.kernel), p.rules);
    return s;
}

} // namespace

LaurentApplication::LaurentApplication(const Germ& psi, const Point& z, const ProductDomain& omega,
                                       const EngineOptions& options, const TruncationBox& box,
                                       bool entire_integrand)
    : z_(z) {
    require_runge(omega);
    if (psi.dim() != omega.dim() || box.dim() != omega.dim()) {
        throw DimensionMismatch("germ, box and domain differ in dimension");
    }
    require_point(omega, z);
    if (z.on_hyperplane()) throw HyperplaneError("contour formula needs every z_j nonzero");
    const ProductDomain target = inverse_scale(omega, z);
    for (const Germ& term : split_terms(psi)) {
        KernelPart part;
        Placement pl = place_kernel_contour(term, target, options, box, entire_integrand);
        part.rules = tensor_rules(pl.contour, pl.nodes);
        part.contour = std::move(pl.contour);
        part.kernel = term.eval_on_grid(axis_nodes(part.rules));
        sample_axes(part, term, false);
        parts_.push_back(std::move(part));
    }
}

Complex LaurentApplication::apply(const TaylorPoly& f) const {
    if (f.dim() != z_.dim()) throw DimensionMismatch("function and point differ in dimension");
    Complex s = 0.0;
    for (const auto& p : parts_) {
        if (!p.axis_kernel.empty()) {
            s += dot(f, dilate(separable_moments(p, p.rules, f.box()), z_));
            continue;
        }
        auto nodes = axis_nodes(p.rules);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            for (auto& w : nodes[j]) w *= z_[j];
        }
        s += integrate_samples(multiply(f.eval_on_grid(nodes), p.kernel), p.rules);
    }
    return s;
}

Complex LaurentApplication::apply(const Evaluable& f) const {
    std::vector<Complex> buf(z_.dim());
    const Evaluable g = [&](std::span<const Complex> s) {
        for (std::size_t j = 0; j < buf.size(); ++j) buf[j] = z_[j] * s[j];
        return f(buf);
    };
    return sum_parts(parts_, [&](const KernelPart& p) { return sample_on_grid(g, p.rules); });
}

TaylorPoly LaurentApplication::apply_monomials(const TruncationBox& box) const {
    TaylorPoly m = TaylorPoly::zero(box);
    for (const auto& p : parts_) {
        m = m + (p.axis_kernel.empty() ? power_moments(p.kernel, p.rules, box) : separable_moments(p, p.rules, box));
    }
    return dilate(m, z_);
}

// ---- Taylor-germ application -----------------------------------------------

TaylorApplication::TaylorApplication(const Germ& psi_hat, const Point& z, const ProductDomain& omega,
                                     const EngineOptions& options, const TruncationBox& box,
                                     bool entire_integrand)
    : z_(z) {
    require_runge(omega);
    if (psi_hat.dim() != omega.dim() || box.dim() != omega.dim()) {
        throw DimensionMismatch("germ, box and domain differ in dimension");
    }
    if (psi_hat.expansion() != Expansion::AtOrigin) throw InvalidArgument("expected a germ at the origin");
    require_point(omega, z);
    if (z.on_hyperplane()) throw HyperplaneError("contour formula needs every z_j nonzero");

    const ProductDomain target = inverse_scale(omega, z);
    for (const Germ& term : split_terms(psi_hat)) {
        KernelPart part;
        std::vector<int> counts;
        for (std::size_t j = 0; j < omega.dim(); ++j) {
            const double room = origin_room(target.factor(j));
            const AxisPlacement a = place_axis(reciprocal_extent(term, j), reciprocal_hint(term, j), room, options);
            const double q = std::max(a.ratio, entire_integrand ? 0.0 : a.radius / room);
            // gamma is |w| = radius; its image under w -> 1/w runs clockwise.
            part.contour.factors.push_back({Circle{0.0, 1.0 / a.radius, -1}});
            counts.push_back(nodes_for(q, box, options));
        }
        part.rules = tensor_rules(part.contour, counts);
        const Evaluable k = [&](std::span<const Complex> w) {
            Complex prod = 1.0;
            for (Complex c : w) prod *= c;
            return term(w) / prod;
        };
        part.kernel = sample_on_grid(k, part.rules);
        sample_axes(part, term, true);
        parts_.push_back(std::move(part));
    }
    sign_ = omega.dim() % 2 == 0 ? 1.0 : -1.0;
}

Complex TaylorApplication::apply(const TaylorPoly& f) const {
    if (f.dim() != z_.dim()) throw DimensionMismatch("function and point differ in dimension");
    Complex s = 0.0;
    for (const auto& p : parts_) {
        if (!p.axis_kernel.empty()) {
            s += dot(f, dilate(separable_moments(p, inverted(p.rules), f.box()), z_));
            continue;
        }
        auto nodes = axis_nodes(p.rules);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            for (auto& w : nodes[j]) w = z_[j] / w;
        }
        s += integrate_samples(multiply(f.eval_on_grid(nodes), p.kernel), p.rules);
    }
    return sign_ * s;
}

Complex TaylorApplication::apply(const Evaluable& f) const {
    std::vector<Complex> buf(z_.dim());
    const Evaluable g = [&](std::span<const Complex> s) {
        for (std::size_t j = 0; j < buf.size(); ++j) buf[j] = z_[j] / s[j];
        return f(buf);
    };
    return sign_ * sum_parts(parts_, [&](const KernelPart& p) { return sample_on_grid(g, p.rules); });
}

TaylorPoly TaylorApplication::apply_monomials(const TruncationBox& box) const {
    TaylorPoly m = TaylorPoly::zero(box);
    for (const auto& p : parts_) {
        const std::vector<AxisRule> inv = inverted(p.rules);
        m = m + (p.axis_kernel.empty() ? power_moments(p.kernel, inv, box) : separable_moments(p, inv, box));
    }
    return dilate(m, z_).scaled(sign_);
}

Complex apply_laurent(const Germ& psi, const TaylorPoly& f, const Point& z, const ProductDomain& omega,
                      const EngineOptions& options) {
    return LaurentApplication(psi, z, omega, options, f.box()).apply(f);
}

Complex apply_laurent(const Germ& psi, const Evaluable& f, const Point& z, const ProductDomain& omega,
                      const EngineOptions& options) {
    return LaurentApplication(psi, z, omega, options, TruncationBox::uniform(omega.dim(), 0), false).apply(f);
}

Complex apply_taylor(const Germ& psi_hat, const TaylorPoly& f, const Point& z, const ProductDomain& omega,
                     const EngineOptions& options) {
    return TaylorApplication(psi_hat, z, omega, options, f.box()).apply(f);
}

Complex apply_taylor(const Germ& psi_hat, const Evaluable& f, const Point& z, const ProductDomain& omega,
                     const EngineOptions& options) {
    return TaylorApplication(psi_hat, z, omega, options, TruncationBox::uniform(omega.dim(), 0), false).apply(f);
}

Complex evaluate_at(const Multiplier& m, const TaylorPoly& f, const Point& z) {
    if (f.dim() != m.dim()) throw DimensionMismatch("function and multiplier differ in dimension");
    return evaluate_generic(m, f, z);
}

Complex evaluate_at(const Multiplier& m, const Evaluable& f, const Point& z) { return evaluate_generic(m, f, z); }

Multiplier compose(const Multiplier& m1, const Multiplier& m2) {
    if (!(m1.domain() == m2.domain())) throw DomainError("composition needs multipliers on the same domain");
    return Multiplier::from_sequence(m1.domain(), hadamard(m1.sequence(), m2.sequence()), m1.options());
}

Germ psi_of(const Multiplier& m) {
    const TaylorPoly seq = m.sequence();
    const std::size_t n = m.dim();
    Evaluable e = [seq](std::span<const Complex> w) {
        std::vector<Complex> inv(w.size());
        Complex prod = 1.0;
        for (std::size_t j = 0; j < w.size(); ++j) {
            inv[j] = 1.0 / w[j];
            prod *= inv[j];
        }
        return eval(seq, Point(std::move(inv))) * prod;
    };
    std::vector<std::vector<ClosedDisc>> singular(n, std::vector<ClosedDisc>{ClosedDisc{0.0, 0.0}});
    return Germ::from_evaluator(n, std::move(e), std::move(singular), Expansion::AtInfinity, sequence_scale(seq));
}

Germ psi_hat_of(const Multiplier& m) {
    const TaylorPoly seq = m.sequence();
    const std::size_t n = m.dim();
    Evaluable e = [seq](std::span<const Complex> w) {
        return eval(seq, Point(std::vector<Complex>(w.begin(), w.end())));
    };
    std::vector<double> hint = sequence_scale(seq);
    for (double& h : hint) h = 1.0 / h;
    return Germ::from_evaluator(n, std::move(e), std::vector<std::vector<ClosedDisc>>(n), Expansion::AtOrigin,
                                std::move(hint));
}

// ---- eigenvector checks ----------------------------------------------------

double relative_error(Complex got, Complex expected) {
    const double d = std::abs(got - expected);
    const double s = std::abs(expected);
    return s == 0.0 ? d : d / s;
}

EigenReport eigencheck(const Multiplier& m, const MultiIndex& alpha, const std::vector<Point>& z_samples) {
    EigenReport r;
    r.worst_alpha = alpha;
    const TaylorPoly mono = TaylorPoly::monomial(alpha);
    const Complex m_alpha = m.sequence().coeff(alpha);
    for (std::size_t i = 0; i < z_samples.size(); ++i) {
        const double e = relative_error(evaluate_at(m, mono, z_samples[i]), m_alpha * z_samples[i].power(alpha));
        if (e > r.max_rel_error || r.checks == 0) {
            r.max_rel_error = std::max(e, r.max_rel_error);
            r.worst_sample = i;
        }
        ++r.checks;
    }
    return r;
}

TaylorPoly evaluate_monomials(const Multiplier& m, const Point& z, const TruncationBox& box) {
    require_point(m.domain(), z);
    if (box.dim() != m.dim()) throw DimensionMismatch("box and multiplier differ in dimension");
    if (!z.on_hyperplane() && !std::holds_alternative<FromSequence>(m.provenance())) {
        if (const auto* p = std::get_if<FromTaylorGerm>(&m.provenance())) {
            return TaylorApplication(p->germ, z, m.domain(), m.options(), box).apply_monomials(box);
        }
        return LaurentApplication(laurent_kernel(m), z, m.domain(), m.options(), box).apply_monomials(box);
    }
    std::vector<Complex> out(box.size());
    for (std::size_t k = 0; k < box.size(); ++k) out[k] = evaluate_at(m, TaylorPoly::monomial(box.multi_index(k)), z);
    return TaylorPoly(box, std::move(out));
}

EigenReport eigencheck_all(const Multiplier& m, int max_total, const std::vector<Point>& z_samples) {
    EigenReport r;
    const TruncationBox& box = m.box();
    r.worst_alpha = MultiIndex::zero(m.dim());
    auto record = [&](double e, std::size_t i, const MultiIndex& a) {
        if (e > r.max_rel_error || r.checks == 0) {
            r.max_rel_error = std::max(e, r.max_rel_error);
            r.worst_sample = i;
            r.worst_alpha = a;
        }
        ++r.checks;
    };
    for (std::size_t i = 0; i < z_samples.size(); ++i) {
        const Point& z = z_samples[i];
        require_point(m.domain(), z);
        const TaylorPoly got = evaluate_monomials(m, z, box);
        for (std::size_t k = 0; k < box.size(); ++k) {
            const MultiIndex a = box.multi_index(k);
            if (a.total() > max_total) continue;
            record(relative_error(got.coeffs()[k], m.sequence().coeffs()[k] * z.power(a)), i, a);
        }
    }
    return r;
}

} // namespace holomult
