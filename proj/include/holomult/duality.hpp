// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "holomult/germ.hpp"

namespace holomult {

/// True when every point of `compact` has winding number one with respect
/// to `curves` and no circle meets it.
bool encloses(const CircleUnion& curves, const ClosedDisc& compact);

/// Origin-centred circles around a kernel's singularities: radius
/// `ratio` times the singular extent, or the scale hint (default 1) when
/// the only singularity is the origin.
PolyContour enclosing_contour(const Germ& kernel, double ratio = 1.5);

/// An analytic functional in quadrature form,
///     T(h) = (2 pi i)^{-n} integral over contour of h * kernel.
/// The contour must wind once around every singular compact of the kernel.
class AnalyticFunctional {
public:
    AnalyticFunctional(Germ kernel, PolyContour contour, int nodes);

    /// delta_a, with kernel prod 1/(zeta_j - a_j).
    static AnalyticFunctional point_evaluation(const Point& a, int nodes = 128);
    static AnalyticFunctional around(Germ kernel, int nodes = 128);
    static AnalyticFunctional zero(std::size_t dim, int nodes = 128);

    std::size_t dim() const noexcept { return kernel_.dim(); }
    const Germ& kernel() const noexcept { return kernel_; }
    const PolyContour& contour() const noexcept { return contour_; }
    int nodes() const noexcept { return nodes_; }

    /// Same kernel on another admissible contour; the functional on entire
    /// functions is unchanged.
    AnalyticFunctional relocated(PolyContour contour) const;
    AnalyticFunctional with_nodes(int nodes) const;
    AnalyticFunctional scaled(Complex c) const;

private:
    Germ kernel_;
    PolyContour contour_;
    int nodes_;
};

Complex act(const AnalyticFunctional& t, const Evaluable& h);

/// f_T(zeta) = T(prod_j 1/(zeta_j - .)); zeta_j must lie outside the
/// region enclosed by the contour of variable j.
Complex cauchy_transform(const AnalyticFunctional& t, const Point& zeta);

/// f_T as a germ at infinity, singular on the closed discs the contour encloses.
Germ cauchy_transform_germ(const AnalyticFunctional& t);

/// T_{f_T}: the functional whose kernel is the Cauchy transform of T, on
/// concentric circles `spread` times wider than T's positive circles.
AnalyticFunctional dual_functional(const AnalyticFunctional& t, double spread = 1.1);

/// T(zeta^alpha) for every alpha in the box from one kernel sample tensor.
TaylorPoly moments(const AnalyticFunctional& t, const TruncationBox& box);

/// Closed-form moments for kernels with a rational form at infinity (the
/// Laurent coefficients of the kernel); nullopt otherwise.
std::optional<TaylorPoly> exact_moments(const AnalyticFunctional& t, const TruncationBox& box);

/// max |a - b| / |reference| over the box, absolute where the reference vanishes.
double moment_discrepancy(const TaylorPoly& a, const TaylorPoly& b, const TaylorPoly& reference);

struct RoundtripReport {
    TaylorPoly before;    // moments of T
    TaylorPoly after;     // moments of T_{f_T}
    TaylorPoly reference; // exact moments when known, else `before`
    /// max |after - before| / |reference|, absolute where the reference vanishes.
    double max_rel_error = 0.0;
};

/// Moments of T against those of dual_functional(t, spread) on the box.
RoundtripReport duality_roundtrip(const AnalyticFunctional& t, const TruncationBox& box, double spread = 1.1);

/// (2 pi)^{-n} sup_gamma |kernel| prod_j length(gamma_j).
double quadrature_bound(const AnalyticFunctional& t);

struct CarrierReport {
    double c_estimate = 0.0;
    std::vector<std::size_t> violations; // sample indices with |Tf| > C ||f||
};

/// Empirical constant in |Tf| <= C ||f||_K over the sample functions, with
/// ||f||_K sampled on the distinguished boundary of K.
CarrierReport carrier_bound_check(const AnalyticFunctional& t, const CompactBox& carrier,
                                  std::span<const Evaluable> samples, std::optional<double> c_user = std::nullopt,
                                  int boundary_nodes = 64);

/// sup of |f| over the tensor grid on the distinguished boundary of K
/// (degenerate factors contribute their single point).
double boundary_sup(const Evaluable& f, const CompactBox& k, int nodes);

} // namespace holomult
