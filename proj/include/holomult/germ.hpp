// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "holomult/domains.hpp"
#include "holomult/quadrature.hpp"

namespace holomult {

/// Univariate P(w)/Q(w); coefficients in ascending order.
struct RationalFactor {
    std::vector<Complex> num;
    std::vector<Complex> den;

    Complex operator()(Complex w) const;
    int num_degree() const;
    int den_degree() const;
    /// Roots of the denominator (companion-matrix eigenvalues).
    std::vector<Complex> poles() const;
    /// w -> R(1/w) / w, again as a reduced P/Q.
    RationalFactor reciprocal() const;
};

/// weight * prod_j factors[j](w_j)
struct RationalTerm {
    Complex weight = 1.0;
    std::vector<RationalFactor> factors;
};

enum class Expansion;

/// First D+1 series coefficients of P/Q by recursive division: c_k of
/// w^{-(k+1)} at infinity, or of w^k at the origin.
std::vector<Complex> series_coefficients(const RationalFactor& r, int D, Expansion expansion);

/// Batched evaluation over the tensor product of per-axis point lists.
using GridEvaluator = std::function<std::vector<Complex>(std::span<const std::vector<Complex>>)>;
/// power_moments of the germ's samples on the rules' grid, computed without
/// forming that grid.
using MomentEvaluator = std::function<TaylorPoly(std::span<const AxisRule>, const TruncationBox&)>;

/// Where the germ's expansion lives: Laurent series at (inf, ..., inf) or a
/// Taylor series at the origin.
enum class Expansion { AtInfinity, AtOrigin };

/// A holomorphic germ with declared singular compacts per variable. The
/// germ is holomorphic at w whenever every w_j avoids the singular set of
/// variable j. Rational germs keep their closed form alongside the evaluator.
class Germ {
public:
    static Germ rational(std::vector<RationalTerm> terms, Expansion expansion);
    /// prod_j prod_k 1/(w_j - p_jk), scaled; repeated poles raise the order.
    static Germ product_poles(const std::vector<std::vector<Complex>>& poles, Complex scale = 1.0);
    static Germ from_evaluator(std::size_t dim, Evaluable evaluator,
                               std::vector<std::vector<ClosedDisc>> singular, Expansion expansion,
                               std::vector<double> scale_hint = {});
    static Germ zero(std::size_t dim, Expansion expansion);

    std::size_t dim() const noexcept { return dim_; }
    Expansion expansion() const noexcept { return expansion_; }
    Complex operator()(std::span<const Complex> w) const { return evaluator_(w); }
    const Evaluable& evaluator() const noexcept { return evaluator_; }
    /// Row-major values over a tensor grid; uses the batched evaluator when
    /// one is attached.
    std::vector<Complex> eval_on_grid(std::span<const std::vector<Complex>> axes) const;
    Germ with_grid_evaluator(GridEvaluator grid) const;
    /// power_moments(eval_on_grid(nodes), rules, box), through the attached
    /// moment evaluator when there is one.
    TaylorPoly grid_moments(std::span<const AxisRule> rules, const TruncationBox& box) const;
    Germ with_moment_evaluator(MomentEvaluator moments) const;

    const std::vector<ClosedDisc>& singular_set(std::size_t j) const { return singular_[j]; }
    /// max |c - center| + r over singular compacts of variable j; 0 if none.
    double singular_extent(std::size_t j, Complex center) const;
    /// Distance from p to the singular set of variable j; +inf if none.
    double singular_distance(std::size_t j, Complex p) const;
    bool has_singularities(std::size_t j) const { return !singular_[j].empty(); }
    /// Preferred circle radius when the singular set is only the centre point.
    std::optional<double> scale_hint(std::size_t j) const;

    const std::optional<std::vector<RationalTerm>>& rational_terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return zero_; }
    /// Closed-form sequence over the box for rational germs (exact zeros
    /// stay exact); nullopt for evaluator-only germs.
    std::optional<TaylorPoly> exact_sequence(const TruncationBox& box) const;

    Germ scaled(Complex c) const;
    friend Germ operator+(const Germ& a, const Germ& b);

    /// Sampled check that |germ| decreases from radius 1e3 to 1e6 along rays.
    bool decays_at_infinity() const;

private:
    Germ() = default;

    std::size_t dim_ = 0;
    Evaluable evaluator_;
    GridEvaluator grid_;
    MomentEvaluator moments_;
    std::vector<std::vector<ClosedDisc>> singular_;
    Expansion expansion_ = Expansion::AtInfinity;
    std::vector<double> scale_hint_;
    std::optional<std::vector<RationalTerm>> terms_;
    bool zero_ = false;
};

/// w -> g(1/w) / (w_1 ... w_n). Maps the Laurent germ sum m_a / w^{a+1} to the
/// Taylor germ sum m_a w^a and back (the map is an involution). Singular sets
/// must consist of points.
Germ reciprocal_pairing(const Germ& g);

} // namespace holomult
