// SPDX-License-Identifier: Apache-2.0
#include "holomult/germ.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "holomult/error.hpp"

namespace holomult {

namespace {

int degree(const std::vector<Complex>& c) {
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] != 0.0) return static_cast<int>(i);
    }
    return -1;
}

Complex horner(const std::vector<Complex>& c, Complex w) {
    Complex acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * w + c[i];
    return acc;
}

Complex eval_terms(const std::vector<RationalTerm>& terms, std::span<const Complex> w) {
    Complex sum = 0.0;
    for (const auto& t : terms) {
        Complex p = t.weight;
        for (std::size_t j = 0; j < t.factors.size(); ++j) p *= t.factors[j](w[j]);
        sum += p;
    }
    return sum;
}

std::vector<std::vector<ClosedDisc>> points_to_sets(const std::vector<std::vector<Complex>>& pts) {
    std::vector<std::vector<ClosedDisc>> s(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
        for (auto p : pts[j]) s[j].push_back({p, 0.0});
    }
    return s;
}

} // namespace

// ---- RationalFactor -------------------------------------------------------

Complex RationalFactor::operator()(Complex w) const { return horner(num, w) / horner(den, w); }

int RationalFactor::num_degree() const { return degree(num); }
int RationalFactor::den_degree() const { return degree(den); }

std::vector<Complex> RationalFactor::poles() const {
    const int d = den_degree();
    if (d < 0) throw InvalidArgument("rational factor has a zero denominator");
    std::vector<Complex> roots;
    int low = 0;
    while (den[static_cast<std::size_t>(low)] == 0.0) {
        roots.push_back(0.0);
        ++low;
    }
    const int m = d - low;
    if (m > 0) {
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(m, m);
        const Complex lead = den[static_cast<std::size_t>(d)];
        for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
        for (int i = 0; i < m; ++i) companion(i, m - 1) = -den[static_cast<std::size_t>(low + i)] / lead;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        for (int i = 0; i < m; ++i) roots.push_back(solver.eigenvalues()(i));
    }
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : std::arg(a) < std::arg(b);
    });
    return roots;
}

RationalFactor RationalFactor::reciprocal() const {
    const int dp = std::max(num_degree(), 0);
    const int dq = den_degree();
    if (dq < 0) throw InvalidArgument("rational factor has a zero denominator");
    // R(1/w)/w = w^m P(1/w) / (w^{m+1} Q(1/w)) with m = max(dp, dq - 1).
    const int m = std::max(dp, dq - 1);
    std::vector<Complex> p(static_cast<std::size_t>(m + 1), 0.0), q(static_cast<std::size_t>(m + 2), 0.0);
    for (int i = 0; i <= dp && i < static_cast<int>(num.size()); ++i) p[static_cast<std::size_t>(m - i)] = num[static_cast<std::size_t>(i)];
    for (int i = 0; i <= dq; ++i) q[static_cast<std::size_t>(m + 1 - i)] = den[static_cast<std::size_t>(i)];
    while (p.size() > 1 && q.size() > 1 && p.front() == 0.0 && q.front() == 0.0) {
        p.erase(p.begin());
        q.erase(q.begin());
    }
    while (p.size() > 1 && p.back() == 0.0) p.pop_back();
    while (q.size() > 1 && q.back() == 0.0) q.pop_back();
    return {std::move(p), std::move(q)};
}

std::vector<Complex> series_coefficients(const RationalFactor& r, int D, Expansion expansion) {
    const int dp = r.num_degree();
    const int dq = r.den_degree();
    if (dq < 0) throw InvalidArgument("rational factor has a zero denominator");
    std::vector<Complex> out(static_cast<std::size_t>(D + 1), 0.0);
    if (dp < 0) return out;
    auto at = [](const std::vector<Complex>& v, int i) { return i >= 0 && i < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(i)] : Complex(0.0); };
    if (expansion == Expansion::AtOrigin) {
        const Complex q0 = at(r.den, 0);
        if (q0 == 0.0) throw InvalidArgument("germ at the origin has a pole at the origin");
        for (int k = 0; k <= D; ++k) {
            Complex acc = at(r.num, k);
            for (int i = 1; i <= std::min(k, dq); ++i) acc -= at(r.den, i) * out[static_cast<std::size_t>(k - i)];
            out[static_cast<std::size_t>(k)] = acc / q0;
        }
        return out;
    }
    // In u = 1/w: P/Q = u^{dq-dp} A(u)/B(u) with reversed coefficient lists.
    const int shift = dq - dp;
    if (shift < 1) throw InvalidArgument("germ at infinity must vanish there");
    const int len = D + 2 - shift;
    std::vector<Complex> s(static_cast<std::size_t>(std::max(len, 0)), 0.0);
    const Complex b0 = at(r.den, dq);
    for (int k = 0; k < len; ++k) {
        Complex acc = at(r.num, dp - k);
        for (int i = 1; i <= std::min(k, dq); ++i) acc -= at(r.den, dq - i) * s[static_cast<std::size_t>(k - i)];
        s[static_cast<std::size_t>(k)] = acc / b0;
    }
    // Coefficient of u^{k+1} is s_{k+1-shift}.
    for (int k = 0; k <= D; ++k) {
        const int i = k + 1 - shift;
        if (i >= 0) out[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(i)];
    }
    return out;
}

// ---- Germ -----------------------------------------------------------------

Germ Germ::rational(std::vector<RationalTerm> terms, Expansion expansion) {
    if (terms.empty()) throw InvalidArgument("rational germ needs at least one term");
    const std::size_t n = terms.front().factors.size();
    if (n == 0) throw InvalidArgument("rational germ needs dimension >= 1");
    std::vector<std::vector<Complex>> poles(n);
    for (const auto& t : terms) {
        if (t.factors.size() != n) throw DimensionMismatch("rational germ terms disagree on dimension");
        for (std::size_t j = 0; j < n; ++j) {
            const auto& f = t.factors[j];
            if (expansion == Expansion::AtInfinity && f.num_degree() >= f.den_degree()) {
                throw InvalidArgument("germ at infinity must vanish there: numerator degree below denominator degree");
            }
            for (auto p : f.poles()) {
                if (expansion == Expansion::AtOrigin && std::abs(p) == 0.0) {
                    throw InvalidArgument("germ at the origin has a pole at the origin");
                }
                if (std::none_of(poles[j].begin(), poles[j].end(), [&](Complex q) { return q == p; })) {
                    poles[j].push_back(p);
                }
            }
        }
    }
    Germ g;
    g.dim_ = n;
    g.expansion_ = expansion;
    g.singular_ = points_to_sets(poles);
    g.terms_ = std::move(terms);
    g.evaluator_ = [terms = *g.terms_](std::span<const Complex> w) { return eval_terms(terms, w); };
    g.zero_ = std::all_of(g.terms_->begin(), g.terms_->end(), [](const RationalTerm& t) { return t.weight == 0.0; });
    return g;
}

Germ Germ::product_poles(const std::vector<std::vector<Complex>>& poles, Complex scale) {
    if (poles.empty()) throw InvalidArgument("product-pole germ needs dimension >= 1");
    RationalTerm term{scale, {}};
    for (const auto& pj : poles) {
        if (pj.empty()) throw InvalidArgument("each variable needs at least one pole to vanish at infinity");
        std::vector<Complex> den{1.0};
        for (auto p : pj) {
            std::vector<Complex> next(den.size() + 1, 0.0);
            for (std::size_t i = 0; i < den.size(); ++i) {
                next[i + 1] += den[i];
                next[i] -= p * den[i];
            }
            den = std::move(next);
        }
        term.factors.push_back({{1.0}, std::move(den)});
    }
    Germ g = rational({term}, Expansion::AtInfinity);
    // Keep the poles exactly as given rather than via eigenvalues.
    g.singular_ = points_to_sets(poles);
    return g;
}

Germ Germ::from_evaluator(std::size_t dim, Evaluable evaluator, std::vector<std::vector<ClosedDisc>> singular,
                          Expansion expansion, std::vector<double> scale_hint) {
    if (dim == 0) throw InvalidArgument("germ needs dimension >= 1");
    if (singular.size() != dim) throw DimensionMismatch("one singular set per variable");
    if (!scale_hint.empty() && scale_hint.size() != dim) throw DimensionMismatch("one scale hint per variable");
    Germ g;
    g.dim_ = dim;
    g.evaluator_ = std::move(evaluator);
    g.singular_ = std::move(singular);
    g.expansion_ = expansion;
    g.scale_hint_ = std::move(scale_hint);
    return g;
}

Germ Germ::zero(std::size_t dim, Expansion expansion) {
    Germ g = from_evaluator(
        dim, [](std::span<const Complex>) { return Complex(0.0); }, std::vector<std::vector<ClosedDisc>>(dim),
        expansion);
    g.zero_ = true;
    return g;
}

double Germ::singular_extent(std::size_t j, Complex center) const {
    double e = 0.0;
    for (const auto& d : singular_[j]) e = std::max(e, std::abs(d.center - center) + d.radius);
    return e;
}

double Germ::singular_distance(std::size_t j, Complex p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& s : singular_[j]) d = std::min(d, std::abs(p - s.center) - s.radius);
    return d;
}

std::optional<double> Germ::scale_hint(std::size_t j) const {
    if (scale_hint_.empty()) return std::nullopt;
    return scale_hint_[j];
}

std::vector<Complex> Germ::eval_on_grid(std::span<const std::vector<Complex>> axes) const {
    if (axes.size() != dim_) throw DimensionMismatch("grid and germ differ in dimension");
    if (grid_) return grid_(axes);
    return sample_tensor(evaluator_, axes);
}

Germ Germ::with_grid_evaluator(GridEvaluator grid) const {
    Germ g = *this;
    g.grid_ = std::move(grid);
    return g;
}

TaylorPoly Germ::grid_moments(std::span<const AxisRule> rules, const TruncationBox& box) const {
    if (moments_) return moments_(rules, box);
    return power_moments(eval_on_grid(axis_nodes(rules)), rules, box);
}

Germ Germ::with_moment_evaluator(MomentEvaluator moments) const {
    Germ g = *this;
    g.moments_ = std::move(moments);
    return g;
}

Germ Germ::scaled(Complex c) const {
    Germ g = *this;
    if (moments_) {
        g.moments_ = [inner = moments_, c](std::span<const AxisRule> rules, const TruncationBox& box) {
            return inner(rules, box).scaled(c);
        };
    }
    g.evaluator_ = [inner = evaluator_, c](std::span<const Complex> w) { return c * inner(w); };
    if (grid_) {
        g.grid_ = [inner = grid_, c](std::span<const std::vector<Complex>> axes) {
            auto v = inner(axes);
            for (auto& x : v) x *= c;
            return v;
        };
    }
    if (g.terms_) {
        for (auto& t : *g.terms_) t.weight *= c;
    }
    g.zero_ = zero_ || c == 0.0;
    return g;
}

Germ operator+(const Germ& a, const Germ& b) {
    if (a.dim_ != b.dim_) throw DimensionMismatch("germ sum: dimension mismatch");
    if (a.expansion_ != b.expansion_) throw InvalidArgument("germ sum: expansions differ");
    Germ g;
    g.dim_ = a.dim_;
    g.expansion_ = a.expansion_;
    g.evaluator_ = [x = a.evaluator_, y = b.evaluator_](std::span<const Complex> w) { return x(w) + y(w); };
    if (a.grid_ || b.grid_) {
        g.grid_ = [a, b](std::span<const std::vector<Complex>> axes) {
            auto v = a.eval_on_grid(axes);
            const auto u = b.eval_on_grid(axes);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += u[i];
            return v;
        };
    }
    g.singular_ = a.singular_;
    for (std::size_t j = 0; j < g.dim_; ++j) {
        g.singular_[j].insert(g.singular_[j].end(), b.singular_[j].begin(), b.singular_[j].end());
    }
    if (a.terms_ && b.terms_) {
        auto t = *a.terms_;
        t.insert(t.end(), b.terms_->begin(), b.terms_->end());
        g.terms_ = std::move(t);
    }
    if (!a.scale_hint_.empty() && !b.scale_hint_.empty()) {
        g.scale_hint_.resize(g.dim_);
        for (std::size_t j = 0; j < g.dim_; ++j) g.scale_hint_[j] = std::max(a.scale_hint_[j], b.scale_hint_[j]);
    }
    g.zero_ = a.zero_ && b.zero_;
    return g;
}

std::optional<TaylorPoly> Germ::exact_sequence(const TruncationBox& box) const {
    if (box.dim() != dim_) throw DimensionMismatch("box and germ differ in dimension");
    if (zero_) return TaylorPoly::zero(box);
    if (!terms_) return std::nullopt;
    std::vector<Complex> acc(box.size(), 0.0);
    for (const auto& t : *terms_) {
        std::vector<std::vector<Complex>> c;
        for (std::size_t j = 0; j < dim_; ++j) c.push_back(series_coefficients(t.factors[j], box.bound(j), expansion_));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            const MultiIndex a = box.multi_index(i);
            Complex p = t.weight;
            for (std::size_t j = 0; j < dim_; ++j) p *= c[j][static_cast<std::size_t>(a[j])];
            acc[i] += p;
        }
    }
    return TaylorPoly(box, std::move(acc));
}

bool Germ::decays_at_infinity() const {
    if (zero_) return true;
    for (double theta : {0.3, 1.9, 4.1}) {
        std::vector<Complex> near(dim_), far(dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            const Complex e = std::polar(1.0, theta + 0.7 * static_cast<double>(j));
            near[j] = 1e3 * e;
            far[j] = 1e6 * e;
        }
        if (!(std::abs(evaluator_(far)) < std::abs(evaluator_(near)))) return false;
    }
    return true;
}

Germ reciprocal_pairing(const Germ& g) {
    const std::size_t n = g.dim();
    const Expansion target = g.expansion() == Expansion::AtInfinity ? Expansion::AtOrigin : Expansion::AtInfinity;
    if (g.is_zero()) return Germ::zero(n, target);
    if (g.rational_terms()) {
        auto terms = *g.rational_terms();
        for (auto& t : terms) {
            for (auto& f : t.factors) f = f.reciprocal();
        }
        return Germ::rational(std::move(terms), target);
    }
    std::vector<std::vector<ClosedDisc>> singular(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto& s : g.singular_set(j)) {
            if (s.radius != 0.0) throw UnsupportedGeometry("reciprocal pairing needs point singularities");
            if (s.center != 0.0) singular[j].push_back({1.0 / s.center, 0.0});
        }
        if (target == Expansion::AtInfinity) singular[j].push_back({0.0, 0.0});
    }
    std::vector<double> hint;
    for (std::size_t j = 0; j < n && g.scale_hint(0); ++j) hint.push_back(1.0 / *g.scale_hint(j));
    auto inner = g.evaluator();
    auto eval = [inner, n](std::span<const Complex> w) {
        std::vector<Complex> inv(n);
        Complex prod = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            inv[j] = 1.0 / w[j];
            prod *= w[j];
        }
        return inner(inv) / prod;
    };
    return Germ::from_evaluator(n, eval, std::move(singular), target, std::move(hint));
}

} // namespace holomult
