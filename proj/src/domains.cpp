// SPDX-License-Identifier: Apache-2.0
#include "holomult/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "holomult/error.hpp"

namespace holomult {

// ---- PlanarFactor ---------------------------------------------------------

PlanarFactor PlanarFactor::disc(Complex center, double radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("disc radius must be positive");
    return PlanarFactor(Disc{center, radius});
}

PlanarFactor PlanarFactor::annulus(double r_in, double r_out) {
    if (!(r_in > 0.0) || !(r_in < r_out) || !std::isfinite(r_out)) {
        throw InvalidArgument("annulus needs 0 < r_in < r_out");
    }
    return PlanarFactor(Annulus{r_in, r_out});
}

const Disc& PlanarFactor::as_disc() const {
    if (!is_disc()) throw UnsupportedGeometry("factor is not a disc");
    return std::get<Disc>(shape_);
}

const Annulus& PlanarFactor::as_annulus() const {
    if (is_disc()) throw UnsupportedGeometry("factor is not an annulus");
    return std::get<Annulus>(shape_);
}

bool PlanarFactor::contains(Complex z) const noexcept {
    if (const auto* d = std::get_if<Disc>(&shape_)) return std::abs(z - d->center) < d->radius;
    const auto& a = std::get<Annulus>(shape_);
    const double r = std::abs(z);
    return a.r_in < r && r < a.r_out;
}

PlanarFactor PlanarFactor::inverse_scaled(Complex z) const {
    if (z == 0.0) throw HyperplaneError("cannot scale a factor by 1/0");
    const double s = std::abs(z);
    if (const auto* d = std::get_if<Disc>(&shape_)) return disc(d->center / z, d->radius / s);
    const auto& a = std::get<Annulus>(shape_);
    return annulus(a.r_in / s, a.r_out / s);
}

double PlanarFactor::boundary_distance(Complex p) const noexcept {
    if (const auto* d = std::get_if<Disc>(&shape_)) return d->radius - std::abs(p - d->center);
    const auto& a = std::get<Annulus>(shape_);
    const double r = std::abs(p);
    return std::min(r - a.r_in, a.r_out - r);
}

bool operator==(const PlanarFactor& a, const PlanarFactor& b) {
    if (a.is_disc() != b.is_disc()) return false;
    if (a.is_disc()) {
        return a.as_disc().center == b.as_disc().center && a.as_disc().radius == b.as_disc().radius;
    }
    return a.as_annulus().r_in == b.as_annulus().r_in && a.as_annulus().r_out == b.as_annulus().r_out;
}

// ---- ProductDomain --------------------------------------------------------

ProductDomain::ProductDomain(std::vector<PlanarFactor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw InvalidArgument("product domain needs at least one factor");
}

ProductDomain ProductDomain::polydisc(const std::vector<Complex>& centers, const std::vector<double>& radii) {
    if (centers.size() != radii.size()) throw DimensionMismatch("polydisc centers vs radii");
    std::vector<PlanarFactor> f;
    for (std::size_t j = 0; j < centers.size(); ++j) f.push_back(PlanarFactor::disc(centers[j], radii[j]));
    return ProductDomain(std::move(f));
}

ProductDomain ProductDomain::uniform_polydisc(std::size_t dim, double radius) {
    return polydisc(std::vector<Complex>(dim, 0.0), std::vector<double>(dim, radius));
}

bool ProductDomain::is_runge() const noexcept {
    return std::all_of(factors_.begin(), factors_.end(), [](const PlanarFactor& f) { return f.is_disc(); });
}

bool ProductDomain::contains(const Point& z) const {
    if (z.dim() != dim()) throw DimensionMismatch("domain membership: dimension mismatch");
    for (std::size_t j = 0; j < dim(); ++j) {
        if (!factors_[j].contains(z[j])) return false;
    }
    return true;
}

ProductDomain inverse_scale(const ProductDomain& omega, const Point& z) {
    if (z.dim() != omega.dim()) throw DimensionMismatch("inverse_scale: dimension mismatch");
    if (z.on_hyperplane()) throw HyperplaneError("inverse_scale needs a point off the coordinate hyperplanes");
    std::vector<PlanarFactor> f;
    for (std::size_t j = 0; j < omega.dim(); ++j) f.push_back(omega.factor(j).inverse_scaled(z[j]));
    return ProductDomain(std::move(f));
}

// ---- dilation sets --------------------------------------------------------

bool DilationSet::contains(const Point& z, double tol) const {
    if (z.dim() != dim()) throw DimensionMismatch("dilation set membership: dimension mismatch");
    for (std::size_t j = 0; j < dim(); ++j) {
        const double r = std::abs(z[j]);
        if (factors_[j] == Factor::ClosedUnitDisc ? r > 1.0 + tol : std::abs(r - 1.0) > tol) return false;
    }
    return true;
}

DilationSet dilation_set(const ProductDomain& omega) {
    std::vector<DilationSet::Factor> f;
    for (const auto& factor : omega.factors()) {
        if (factor.is_disc()) {
            if (factor.as_disc().center != 0.0) {
                throw UnsupportedGeometry("dilation set of an off-centre disc is not a supported region");
            }
            f.push_back(DilationSet::Factor::ClosedUnitDisc);
        } else {
            f.push_back(DilationSet::Factor::UnitCircle);
        }
    }
    return DilationSet(std::move(f));
}

// ---- compacts -------------------------------------------------------------

CompactBox::CompactBox(std::vector<ClosedDisc> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw InvalidArgument("compact box needs at least one factor");
    for (const auto& d : factors_) {
        if (!(d.radius >= 0.0)) throw InvalidArgument("compact disc radius must be non-negative");
    }
}

CompactBox CompactBox::point(const Point& p) {
    std::vector<ClosedDisc> f;
    for (auto c : p.coords()) f.push_back({c, 0.0});
    return CompactBox(std::move(f));
}

bool CompactBox::contains(const Point& z) const {
    if (z.dim() != dim()) throw DimensionMismatch("compact membership: dimension mismatch");
    for (std::size_t j = 0; j < dim(); ++j) {
        if (std::abs(z[j] - factors_[j].center) > factors_[j].radius) return false;
    }
    return true;
}

bool CompactBox::inside(const ProductDomain& omega) const {
    if (omega.dim() != dim()) throw DimensionMismatch("compact inclusion: dimension mismatch");
    for (std::size_t j = 0; j < dim(); ++j) {
        const auto& k = factors_[j];
        const auto& f = omega.factor(j);
        if (f.is_disc()) {
            const auto& d = f.as_disc();
            if (std::abs(k.center - d.center) + k.radius >= d.radius) return false;
        } else {
            const auto& a = f.as_annulus();
            const double c = std::abs(k.center);
            if (c - k.radius <= a.r_in || c + k.radius >= a.r_out) return false;
        }
    }
    return true;
}

// ---- circles --------------------------------------------------------------

int Circle::winding(Complex p) const noexcept {
    return std::abs(p - center) < radius ? orientation : 0;
}

double Circle::length() const noexcept { return 2.0 * std::numbers::pi * radius; }

int winding(const CircleUnion& curves, Complex p) noexcept {
    int w = 0;
    for (const auto& c : curves) w += c.winding(p);
    return w;
}

namespace {

double placed_radius(double extent, double outer, const ContourRule& rule) {
    const double eff = std::max(extent, rule.margin * outer);
    return std::min(std::sqrt(eff * outer), rule.max_ratio * eff);
}

} // namespace

CircleUnion separating_contour(const PlanarCompact& inner, const PlanarFactor& outer, const ContourRule& rule) {
    if (!(rule.margin > 0.0 && rule.margin < 1.0) || !(rule.max_ratio > 1.0)) {
        throw InvalidArgument("contour rule needs 0 < margin < 1 and max_ratio > 1");
    }
    if (outer.is_disc()) {
        const auto* k = std::get_if<ClosedDisc>(&inner);
        if (k == nullptr) throw UnsupportedGeometry("an annulus cannot sit inside a disc factor");
        const auto& d = outer.as_disc();
        const double extent = std::abs(k->center - d.center) + k->radius;
        if (!(extent < d.radius)) {
            throw ContourPlacementError("inner compact reaches the disc boundary (extent " +
                                        std::to_string(extent) + ", radius " + std::to_string(d.radius) + ")");
        }
        return {Circle{d.center, placed_radius(extent, d.radius, rule), +1}};
    }

    const auto& a = outer.as_annulus();
    const auto* k = std::get_if<ClosedAnnulus>(&inner);
    if (k == nullptr) throw UnsupportedGeometry("annulus factors need an annular inner compact");
    if (!(a.r_in < k->r_in && k->r_in <= k->r_out && k->r_out < a.r_out)) {
        throw ContourPlacementError("inner annulus touches the factor boundary");
    }
    const double r_outer = placed_radius(k->r_out, a.r_out, rule);
    // Mirror image of the outer rule under r -> 1/r.
    const double r_inner = 1.0 / placed_radius(1.0 / k->r_in, 1.0 / a.r_in, rule);
    return {Circle{0.0, r_outer, +1}, Circle{0.0, r_inner, -1}};
}

PolyContour distinguished_boundary(const CompactBox& k) {
    PolyContour p;
    for (std::size_t j = 0; j < k.dim(); ++j) {
        const auto& d = k.factor(j);
        if (!(d.radius > 0.0)) throw UnsupportedGeometry("degenerate compact factor has no boundary circle");
        p.factors.push_back({Circle{d.center, d.radius, +1}});
    }
    return p;
}

PolyContour distinguished_boundary(const ProductDomain& omega) {
    PolyContour p;
    for (const auto& f : omega.factors()) {
        if (f.is_disc()) {
            p.factors.push_back({Circle{f.as_disc().center, f.as_disc().radius, +1}});
        } else {
            const auto& a = f.as_annulus();
            p.factors.push_back({Circle{0.0, a.r_out, +1}, Circle{0.0, a.r_in, +1}});
        }
    }
    return p;
}

} // namespace holomult
