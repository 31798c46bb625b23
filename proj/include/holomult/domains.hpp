// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

#include "holomult/series.hpp"

namespace holomult {

struct Disc {
    Complex center;
    double radius;
};

/// Origin-centred open annulus r_in < |z| < r_out.
struct Annulus {
    double r_in;
    double r_out;
};

/// One planar factor Omega_j of a product domain.
class PlanarFactor {
public:
    static PlanarFactor disc(Complex center, double radius);
    static PlanarFactor annulus(double r_in, double r_out);

    bool is_disc() const noexcept { return std::holds_alternative<Disc>(shape_); }
    const Disc& as_disc() const;
    const Annulus& as_annulus() const;

    bool contains(Complex z) const noexcept;
    /// Points w with z*w in the factor.
    PlanarFactor inverse_scaled(Complex z) const;
    /// Distance from p to the factor boundary (negative outside).
    double boundary_distance(Complex p) const noexcept;

    friend bool operator==(const PlanarFactor& a, const PlanarFactor& b);

private:
    explicit PlanarFactor(std::variant<Disc, Annulus> shape) : shape_(shape) {}
    std::variant<Disc, Annulus> shape_;
};

class ProductDomain {
public:
    explicit ProductDomain(std::vector<PlanarFactor> factors);
    static ProductDomain polydisc(const std::vector<Complex>& centers, const std::vector<double>& radii);
    static ProductDomain uniform_polydisc(std::size_t dim, double radius);

    std::size_t dim() const noexcept { return factors_.size(); }
    const PlanarFactor& factor(std::size_t j) const { return factors_[j]; }
    const std::vector<PlanarFactor>& factors() const noexcept { return factors_; }

    /// Products of discs only; annulus factors are kept for geometry.
    bool is_runge() const noexcept;
    bool contains(const Point& z) const;

    friend bool operator==(const ProductDomain&, const ProductDomain&) = default;

private:
    std::vector<PlanarFactor> factors_;
};

/// z^{-1} Omega = { w : zw in Omega }.
ProductDomain inverse_scale(const ProductDomain& omega, const Point& z);

/// V(Omega) = { z : z Omega subset Omega } for origin-centred factors.
class DilationSet {
public:
    enum class Factor { ClosedUnitDisc, UnitCircle };

    explicit DilationSet(std::vector<Factor> factors) : factors_(std::move(factors)) {}
    std::size_t dim() const noexcept { return factors_.size(); }
    Factor factor(std::size_t j) const { return factors_[j]; }
    bool contains(const Point& z, double tol = 1e-12) const;

private:
    std::vector<Factor> factors_;
};

DilationSet dilation_set(const ProductDomain& omega);

struct ClosedDisc {
    Complex center;
    double radius; // >= 0; zero is a single point
};

struct ClosedAnnulus {
    double r_in;
    double r_out;
};

using PlanarCompact = std::variant<ClosedDisc, ClosedAnnulus>;

/// K = K_1 x ... x K_n with every K_j a closed disc.
class CompactBox {
public:
    explicit CompactBox(std::vector<ClosedDisc> factors);
    static CompactBox point(const Point& p);

    std::size_t dim() const noexcept { return factors_.size(); }
    const ClosedDisc& factor(std::size_t j) const { return factors_[j]; }
    bool contains(const Point& z) const;
    /// K subset Omega, checked factorwise with the compact strictly inside.
    bool inside(const ProductDomain& omega) const;

private:
    std::vector<ClosedDisc> factors_;
};

struct Circle {
    Complex center;
    double radius;
    int orientation = 1; // +1 counter-clockwise, -1 clockwise

    /// Exact winding number of the circle about p (p must not lie on it).
    int winding(Complex p) const noexcept;
    double length() const noexcept;
};

using CircleUnion = std::vector<Circle>;

int winding(const CircleUnion& curves, Complex p) noexcept;

/// gamma_1 x ... x gamma_n, each gamma_j a finite union of circles.
struct PolyContour {
    std::vector<CircleUnion> factors;

    std::size_t dim() const noexcept { return factors.size(); }
};

/// Radius placement policy. The radius is the geometric mean of the inner
/// extent (floored at margin * outer) and the outer radius, optionally
/// capped at max_ratio times the inner extent.
struct ContourRule {
    double margin = 0.05;
    double max_ratio = std::numeric_limits<double>::infinity();
};

/// Circles winding once around `inner` and lying inside `outer`.
CircleUnion separating_contour(const PlanarCompact& inner, const PlanarFactor& outer,
                               const ContourRule& rule = {});

PolyContour distinguished_boundary(const CompactBox& k);
PolyContour distinguished_boundary(const ProductDomain& omega);

} // namespace holomult
