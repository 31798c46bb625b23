// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "holomult/duality.hpp"

namespace holomult {

/// Numerical knobs shared by every application path.
struct EngineOptions {
    /// Quadrature nodes per circle; 0 picks them from the box and the contour geometry.
    int nodes = 0;
    int max_nodes = 1024;
    /// Contour radius / singular extent, capped by the geometric mean of
    /// the extent and the outer radius.
    double contour_ratio = 1.5;
    /// Sampling density of the carrier test over Omega \ N, per factor.
    int membership_radii = 5;
    int membership_angles = 8;
};

struct FromSequence {};
struct FromFunctional {
    AnalyticFunctional functional;
};
struct FromLaurentGerm {
    Germ germ;
};
struct FromTaylorGerm {
    Germ germ;
};

using Provenance = std::variant<FromSequence, FromFunctional, FromLaurentGerm, FromTaylorGerm>;

/// A multiplier on H(Omega) for a product of discs, known through its
/// sequence on a truncation box and, when available, the germ or functional
/// it came from. Values are immutable.
class Multiplier {
public:
    static Multiplier from_sequence(ProductDomain omega, TaylorPoly sequence, EngineOptions options = {});
    /// Sequence = Laurent coefficients of psi at infinity.
    static Multiplier from_laurent_germ(ProductDomain omega, Germ psi, const TruncationBox& box,
                                        EngineOptions options = {});
    /// Sequence = Taylor coefficients of psi_hat at the origin.
    static Multiplier from_taylor_germ(ProductDomain omega, Germ psi_hat, const TruncationBox& box,
                                       EngineOptions options = {});
    static Multiplier identity(ProductDomain omega, const TruncationBox& box, EngineOptions options = {});
    /// f -> f(c .), via the Laurent germ prod 1/(w_j - c_j).
    static Multiplier dilation(ProductDomain omega, const Point& c, const TruncationBox& box,
                               EngineOptions options = {});

    const ProductDomain& domain() const noexcept { return domain_; }
    const TaylorPoly& sequence() const noexcept { return sequence_; }
    const TruncationBox& box() const noexcept { return sequence_.box(); }
    const Provenance& provenance() const noexcept { return provenance_; }
    const EngineOptions& options() const noexcept { return options_; }
    std::size_t dim() const noexcept { return domain_.dim(); }

private:
    Multiplier(ProductDomain omega, TaylorPoly sequence, Provenance provenance, EngineOptions options);

    friend Multiplier phi(const AnalyticFunctional&, const ProductDomain&, const TruncationBox&,
                          const EngineOptions&);

    ProductDomain domain_;
    TaylorPoly sequence_;
    Provenance provenance_;
    EngineOptions options_;
};

/// Grid over Omega \ N: per disc factor `radii` radii times `angles` angles.
std::vector<Point> interior_grid(const ProductDomain& omega, int radii, int angles);

/// Contour around the kernel's singularities inside `target` (one factor at
/// a time), with node counts chosen from the separation ratios.
struct Placement {
    PolyContour contour;
    std::vector<int> nodes;
};
Placement place_kernel_contour(const Germ& kernel, const ProductDomain& target, const EngineOptions& options,
                               const TruncationBox& box, bool entire_integrand);

/// Phi(T): the multiplier whose sequence is the moment sequence of T.
/// Checks on a grid of z that the kernel fits inside z^{-1} Omega.
Multiplier phi(const AnalyticFunctional& t, const ProductDomain& omega, const TruncationBox& box,
               const EngineOptions& options = {});

/// Theta(M) = delta_{1} o M in quadrature form.
AnalyticFunctional theta(const Multiplier& m);

/// Coefficientwise m_alpha f_alpha.
TaylorPoly apply_sequence(const Multiplier& m, const TaylorPoly& f);

/// Samples of one kernel term on its own quadrature grid.
struct KernelPart {
    PolyContour contour;
    std::vector<AxisRule> rules;
    std::vector<Complex> kernel;
    /// Per-axis samples when the term is a product of one-variable factors.
    Complex weight = 1.0;
    std::vector<std::vector<Complex>> axis_kernel;
};

/// M_psi(f)(z) = (2 pi i)^{-n} integral over gamma of f(z zeta) psi(zeta),
/// with gamma separating the singularities of psi from the complement of
/// z^{-1} Omega. Prepared once per z; reusable for many f. Each term of a
/// rational germ gets its own contour and the results are summed.
class LaurentApplication {
public:
    LaurentApplication(const Germ& psi, const Point& z, const ProductDomain& omega, const EngineOptions& options,
                       const TruncationBox& box, bool entire_integrand = true);

    Complex apply(const TaylorPoly& f) const;
    Complex apply(const Evaluable& f) const;
    /// M(zeta^alpha)(z) for every alpha in the box.
    TaylorPoly apply_monomials(const TruncationBox& box) const;
    const std::vector<KernelPart>& parts() const noexcept { return parts_; }

private:
    Point z_;
    std::vector<KernelPart> parts_;
};

/// M(f)(z) = (-1/(2 pi i))^n integral over 1/gamma of f(z / zeta) psi_hat(zeta) / zeta,
/// where 1/gamma is the inverted (clockwise) image of an origin-centred gamma.
class TaylorApplication {
public:
    TaylorApplication(const Germ& psi_hat, const Point& z, const ProductDomain& omega, const EngineOptions& options,
                      const TruncationBox& box, bool entire_integrand = true);

    Complex apply(const TaylorPoly& f) const;
    Complex apply(const Evaluable& f) const;
    TaylorPoly apply_monomials(const TruncationBox& box) const;
    const std::vector<KernelPart>& parts() const noexcept { return parts_; }

private:
    Point z_;
    std::vector<KernelPart> parts_;
    double sign_;
};

Complex apply_laurent(const Germ& psi, const TaylorPoly& f, const Point& z, const ProductDomain& omega,
                      const EngineOptions& options = {});
Complex apply_laurent(const Germ& psi, const Evaluable& f, const Point& z, const ProductDomain& omega,
                      const EngineOptions& options = {});
Complex apply_taylor(const Germ& psi_hat, const TaylorPoly& f, const Point& z, const ProductDomain& omega,
                     const EngineOptions& options = {});
Complex apply_taylor(const Germ& psi_hat, const Evaluable& f, const Point& z, const ProductDomain& omega,
                     const EngineOptions& options = {});

/// M(f)(z) for any z in Omega. Off the coordinate hyperplanes this uses the
/// provenance's own formula; on them, the Cauchy mean of those values over a
/// small polycircle about z whose nodes avoid the hyperplanes.
Complex evaluate_at(const Multiplier& m, const TaylorPoly& f, const Point& z);
/// Same, for a general holomorphic f (germ or functional provenance; a
/// sequence multiplier acts through its truncated Laurent germ).
Complex evaluate_at(const Multiplier& m, const Evaluable& f, const Point& z);
/// evaluate_at(M, zeta^alpha, z) for every alpha in the box, sharing one
/// kernel sample tensor when z is off the hyperplanes.
TaylorPoly evaluate_monomials(const Multiplier& m, const Point& z, const TruncationBox& box);

Multiplier compose(const Multiplier& m1, const Multiplier& m2);

/// Truncated sum m_alpha / w^{alpha+1}.
Germ psi_of(const Multiplier& m);
/// Truncated sum m_alpha w^alpha.
Germ psi_hat_of(const Multiplier& m);

struct EigenReport {
    double max_rel_error = 0.0;
    std::size_t worst_sample = 0;
    MultiIndex worst_alpha;
    std::size_t checks = 0;
};

/// |a - b| / |b|, or |a| when b == 0.
double relative_error(Complex got, Complex expected);

/// evaluate_at(M, zeta^alpha, z) against m_alpha z^alpha.
EigenReport eigencheck(const Multiplier& m, const MultiIndex& alpha, const std::vector<Point>& z_samples);
/// The same check for every alpha in the box with |alpha| <= max_total,
/// sharing one kernel sample tensor per z.
EigenReport eigencheck_all(const Multiplier& m, int max_total, const std::vector<Point>& z_samples);

} // namespace holomult
