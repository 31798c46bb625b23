// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "holomult/error.hpp"
#include "holomult/seminorms.hpp"
#include "support.hpp"

using namespace holomult;
using holomult::testing::Gen;
using holomult::testing::rel_err;

namespace {

constexpr Complex I{0.0, 1.0};

Germ random_poles(Gen& g, std::size_t dim) {
    std::vector<std::vector<Complex>> poles(dim);
    for (auto& p : poles) {
        const int k = g.integer(1, 2);
        for (int i = 0; i < k; ++i) p.push_back(g.complex_in_annulus(0.05, 0.8));
    }
    return Germ::product_poles(poles, g.complex_in_annulus(0.5, 1.5));
}

/// |f|_{V,delta} for f = prod 1/(zeta_j - a_j) on a polydisc about 0, over
/// the same boundary grid and box, from closed-form derivatives.
double pole_seminorm_oracle(const Point& a, const std::vector<double>& radii, const DeltaSequence& delta,
                            const TruncationBox& box, int boundary_points) {
    const std::size_t n = a.dim();
    // inv[j][k] = max over boundary points of 1 / |zeta_j - a_j|^(k+1).
    std::vector<std::vector<double>> inv(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (int k = 0; k <= box.bound(j); ++k) {
            double best = 0.0;
            for (int i = 0; i < boundary_points; ++i) {
                const Complex p = std::polar(radii[j], 2.0 * std::numbers::pi * i / boundary_points);
                best = std::max(best, std::pow(1.0 / std::abs(p - a[j]), k + 1));
            }
            inv[j].push_back(best);
        }
    }
    double value = 0.0;
    for (std::size_t i = 0; i < box.size(); ++i) {
        const MultiIndex al = box.multi_index(i);
        const double w = delta.cumulative(al.total());
        double bd = w;
        double at_inf = w;
        for (std::size_t j = 0; j < n; ++j) {
            bd *= inv[j][static_cast<std::size_t>(al[j])];
            // f(1/zeta) = prod zeta_j / (1 - a_j zeta_j) has coefficient a_j^(k-1) for k >= 1.
            at_inf *= al[j] == 0 ? 0.0 : std::pow(std::abs(a[j]), al[j] - 1);
        }
        value = std::max({value, bd, at_inf});
    }
    return value;
}

CompactBox disc_box(std::size_t dim, double radius) {
    return CompactBox(std::vector<ClosedDisc>(dim, ClosedDisc{0.0, radius}));
}

} // namespace

TEST_CASE("delta sequence invariants") {
    const DeltaSequence d = DeltaSequence::geometric(0.5, 6);
    CHECK(d.length() == 6);
    double prev = 2.0;
    for (int k = 0; k <= d.length(); ++k) {
        CHECK(d[k] == std::pow(0.5, k));
        CHECK(d.cumulative(k) == std::pow(0.5, k * (k + 1) / 2));
        CHECK(d.cumulative(k) > 0.0);
        CHECK(d.cumulative(k) < prev);
        prev = d.cumulative(k);
    }
    CHECK_THROWS_AS(DeltaSequence({}), InvalidArgument);
    CHECK_THROWS_AS(DeltaSequence({1.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(DeltaSequence({0.5, 0.7}), InvalidArgument);
    CHECK_THROWS_AS(DeltaSequence({0.5, 0.5}), InvalidArgument);
    CHECK_THROWS_AS(DeltaSequence::geometric(1.0, 3), InvalidArgument);
    CHECK(DeltaSequence({0.9}).cumulative(0) == 0.9);
}

TEST_CASE("germ seminorm of 1/zeta on the disc of radius 2") {
    const Germ f = Germ::product_poles({{0.0}});
    const ProductDomain v = ProductDomain::uniform_polydisc(1, 2.0);
    const TruncationBox box{16};
    const DeltaSequence delta = DeltaSequence::geometric(0.5, 16);
    const SeminormReport r = germ_seminorm(f, v, delta, box);
    CHECK(std::abs(r.value - 0.5) <= 1e-8);
    CHECK(r.value >= 0.0);
    CHECK(r.box.dim() == 1);
    CHECK_THROWS_AS(germ_seminorm(f, v, DeltaSequence::geometric(0.5, 4), box), InvalidArgument);
}

TEST_CASE("germ seminorm of zero") {
    const ProductDomain v = ProductDomain::uniform_polydisc(2, 1.5);
    const SeminormReport r = germ_seminorm(Germ::zero(2, Expansion::AtInfinity), v, DeltaSequence::geometric(0.5, 10),
                                           TruncationBox{4, 4});
    CHECK(r.value == 0.0);
}

TEST_CASE("germ seminorm matches closed-form pole derivatives") {
    Gen g(81);
    const TruncationBox box{6, 6};
    const DeltaSequence delta = DeltaSequence::geometric(0.5, 12);
    for (int trial = 0; trial < 4; ++trial) {
        const Point a = g.point(2, 0.1, 0.9);
        const std::vector<double> radii{1.3, 1.6};
        const ProductDomain v = ProductDomain::polydisc({0.0, 0.0}, radii);
        const SeminormReport r = germ_seminorm(Germ::product_poles({{a[0]}, {a[1]}}), v, delta, box);
        CHECK(rel_err(r.value, pole_seminorm_oracle(a, radii, delta, box, SeminormOptions{}.boundary_points)) <= 1e-8);
    }
}

TEST_CASE("germ seminorm is absolutely homogeneous and subadditive") {
    Gen g(82);
    const ProductDomain v = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{5, 5};
    const DeltaSequence delta = DeltaSequence::geometric(0.6, 10);
    for (int trial = 0; trial < 5; ++trial) {
        const Germ f = random_poles(g, 2);
        const Germ h = random_poles(g, 2);
        const Complex c = g.complex_in_annulus(0.2, 3.0);
        const double sf = germ_seminorm(f, v, delta, box).value;
        const double sh = germ_seminorm(h, v, delta, box).value;
        CHECK(rel_err(germ_seminorm(f.scaled(c), v, delta, box).value, std::abs(c) * sf) <= 1e-10);
        CHECK(germ_seminorm(f + h, v, delta, box).value <= sf + sh + 1e-10 * std::max(1.0, sf + sh));
    }
}

TEST_CASE("upsilon of a point evaluation at the unit point") {
    const Point a{0.3 + 0.2 * I, -0.4};
    const ProductDomain omega = ProductDomain::polydisc({0.0, 0.0}, {1.4, 1.7});
    const TruncationBox box{6, 6};
    const DeltaSequence delta = DeltaSequence::geometric(0.5, 12);
    const CompactBox k = CompactBox::point(Point::ones(2));
    const AnalyticFunctional t = AnalyticFunctional::point_evaluation(a);
    const double oracle = pole_seminorm_oracle(a, {1.4, 1.7}, delta, box, SeminormOptions{}.boundary_points);

    const SeminormReport u = functional_seminorm(t, omega, k, delta, box);
    CHECK(u.z_grid_size == 1);
    CHECK(rel_err(u.value, oracle) <= 1e-8);

    // The germ family itself, without quadrature.
    const GermFamily exact = [&](const Point&) { return Germ::product_poles({{a[0]}, {a[1]}}); };
    CHECK(rel_err(upsilon(exact, omega, k, delta, box).value, oracle) <= 1e-8);
}

TEST_CASE("functional seminorm of a one-variable point evaluation") {
    const ProductDomain omega = ProductDomain::uniform_polydisc(1, 2.0);
    const TruncationBox box{12};
    const DeltaSequence delta = DeltaSequence::geometric(0.5, 12);
    for (Complex a : {Complex(0.5), Complex(-0.2, 0.7), Complex(0.0, -1.1)}) {
        const SeminormReport r =
            functional_seminorm(AnalyticFunctional::point_evaluation(Point{a}), omega, CompactBox::point(Point{1.0}), delta, box);
        CHECK(rel_err(r.value, pole_seminorm_oracle(Point{a}, {2.0}, delta, box, 64)) <= 1e-8);
    }
}

TEST_CASE("upsilon and functional seminorm of zero") {
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const CompactBox k = disc_box(2, 0.8);
    const DeltaSequence delta = DeltaSequence::geometric(0.5, 10);
    const TruncationBox box{4, 4};
    const GermFamily zero = [](const Point&) { return Germ::zero(2, Expansion::AtInfinity); };
    CHECK(upsilon(zero, omega, k, delta, box).value == 0.0);
    CHECK(functional_seminorm(AnalyticFunctional::zero(2), omega, k, delta, box).value == 0.0);
}

TEST_CASE("upsilon is monotone on nested grids") {
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{4, 4};
    const DeltaSequence delta = DeltaSequence::geometric(0.5, 10);
    const AnalyticFunctional t = AnalyticFunctional::point_evaluation(Point{0.3, -0.2 * I});
    SeminormOptions coarse;
    coarse.grid_radii = 1;
    coarse.grid_angles = 2;
    SeminormOptions fine = coarse;
    fine.grid_radii = 2;
    fine.grid_angles = 4;
    fine.boundary_points = 16;
    coarse.boundary_points = 16;
    const CompactBox k = disc_box(2, 0.8);
    const SeminormReport small = functional_seminorm(t, omega, k, delta, box, coarse);
    const SeminormReport large = functional_seminorm(t, omega, k, delta, box, fine);
    CHECK(small.z_grid_size < large.z_grid_size);
    CHECK(large.value >= small.value);

    // A larger compact set with the same grid contains the smaller one's
    // samples when its radius doubles and the radius count doubles.
    SeminormOptions twice = coarse;
    twice.grid_radii = 2;
    CHECK(functional_seminorm(t, omega, disc_box(2, 1.2), delta, box, twice).value >=
          functional_seminorm(t, omega, disc_box(2, 0.6), delta, box, coarse).value);
}

TEST_CASE("germ seminorm is monotone in the box") {
    Gen g(83);
    const ProductDomain v = ProductDomain::uniform_polydisc(2, 1.5);
    const DeltaSequence delta = DeltaSequence::geometric(0.7, 16);
    for (int trial = 0; trial < 3; ++trial) {
        const Germ f = random_poles(g, 2);
        CHECK(germ_seminorm(f, v, delta, TruncationBox{7, 7}).value >= germ_seminorm(f, v, delta, TruncationBox{3, 3}).value);
    }
}

TEST_CASE("functional seminorm is absolutely homogeneous and subadditive") {
    Gen g(84);
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{4, 4};
    const DeltaSequence delta = DeltaSequence::geometric(0.5, 10);
    SeminormOptions opt;
    opt.grid_radii = 1;
    opt.grid_angles = 2;
    opt.boundary_points = 32;
    const CompactBox k = disc_box(2, 0.7);
    for (int trial = 0; trial < 3; ++trial) {
        const AnalyticFunctional s = AnalyticFunctional::point_evaluation(g.point(2, 0.1, 0.6));
        const AnalyticFunctional t = AnalyticFunctional::point_evaluation(g.point(2, 0.1, 0.6));
        const Complex c = g.complex_in_annulus(0.2, 3.0);
        const double ns = functional_seminorm(s, omega, k, delta, box, opt).value;
        const double nt = functional_seminorm(t, omega, k, delta, box, opt).value;
        CHECK(rel_err(functional_seminorm(s.scaled(c), omega, k, delta, box, opt).value, std::abs(c) * ns) <= 1e-10);
        const AnalyticFunctional sum = AnalyticFunctional::around(s.kernel() + t.kernel());
        CHECK(functional_seminorm(sum, omega, k, delta, box, opt).value <= ns + nt + 1e-10 * std::max(1.0, ns + nt));
    }
}

TEST_CASE("functional seminorm is upsilon of the Cauchy transform") {
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{4, 4};
    const DeltaSequence delta = DeltaSequence::geometric(0.5, 10);
    SeminormOptions opt;
    opt.grid_radii = 1;
    opt.grid_angles = 2;
    opt.boundary_points = 32;
    const CompactBox k = disc_box(2, 0.7);
    const AnalyticFunctional t = AnalyticFunctional::point_evaluation(Point{0.2 - 0.3 * I, 0.5});
    const GermFamily family = [&](const Point& z) {
        const Placement p = place_kernel_contour(t.kernel(), inverse_scale(omega, z), EngineOptions{}, box, true);
        const int nodes = std::max(t.nodes(), *std::max_element(p.nodes.begin(), p.nodes.end()));
        return cauchy_transform_germ(t.relocated(p.contour).with_nodes(nodes));
    };
    const SeminormReport a = functional_seminorm(t, omega, k, delta, box, opt);
    const SeminormReport b = upsilon(family, omega, k, delta, box, opt);
    CHECK(a.value == b.value);
    CHECK(a.witness.alpha == b.witness.alpha);
}

TEST_CASE("upsilon rejects compact sets outside the domain") {
    const ProductDomain omega = ProductDomain::uniform_polydisc(1, 1.0);
    const GermFamily zero = [](const Point&) { return Germ::zero(1, Expansion::AtInfinity); };
    CHECK_THROWS_AS(upsilon(zero, omega, disc_box(1, 1.0), DeltaSequence::geometric(0.5, 4), TruncationBox{2}),
                    DomainError);
}

TEST_CASE("compact grid skips the hyperplanes") {
    const std::vector<Point> grid = compact_grid(disc_box(2, 1.0), 3, 4);
    CHECK(grid.size() == 12 * 12);
    for (const Point& z : grid) CHECK_FALSE(z.on_hyperplane());
    CHECK(compact_grid(CompactBox::point(Point{0.5, 1.0}), 5, 8).size() == 1);
}

TEST_CASE("boundedness probe with monomials") {
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{4, 4};
    const DeltaSequence delta = DeltaSequence::geometric(0.5, 12);
    const CompactBox k = disc_box(2, 1.0);
    const ProbeReport id = boundedness_probe(Multiplier::identity(omega, box), k, TestFamily::Monomials, delta, box);
    CHECK(id.family_size == box.size());
    CHECK(rel_err(id.sup_value, 0.125) <= 1e-12);

    const ProbeReport zero = boundedness_probe(Multiplier::from_sequence(omega, TaylorPoly::zero(box)), k,
                                               TestFamily::Monomials, delta, box);
    CHECK(zero.sup_value == 0.0);

    Gen g(85);
    for (int trial = 0; trial < 3; ++trial) {
        const Point c = g.point(2, 0.1, 1.0);
        const ProbeReport d =
            boundedness_probe(Multiplier::dilation(omega, c, box), k, TestFamily::Monomials, delta, box);
        CHECK(d.sup_value <= 0.125 * (1.0 + 1e-12));
    }
}

TEST_CASE("boundedness probe with Cauchy kernels") {
    const ProductDomain omega = ProductDomain::uniform_polydisc(1, 1.5);
    const TruncationBox box{3};
    const DeltaSequence delta = DeltaSequence::geometric(0.5, 6);
    SeminormOptions opt;
    opt.grid_radii = 2;
    opt.grid_angles = 3;
    const CompactBox k = disc_box(1, 0.6);
    const ProbeReport r = boundedness_probe(Multiplier::identity(omega, box), k, TestFamily::CauchyKernels, delta, box, opt);

    // A sequence multiplier keeps the Taylor terms inside the box, so the
    // identity returns the truncated binomial series of each kernel.
    const std::vector<Point> grid = compact_grid(k, opt.grid_radii, opt.grid_angles);
    double oracle = 0.0;
    for (const Point& z : grid) {
        const double rad = 1.25 * 1.5 / std::abs(z[0]);
        for (int a = 0; a < 4; ++a) {
            const Complex w = std::polar(rad, std::numbers::pi * a / 2.0 + 0.7);
            for (int e = 0; e <= box.bound(0); ++e) {
                for (const Point& x : grid) {
                    const Complex u = x[0] / (z[0] * w);
                    Complex sum = 0.0;
                    double binom = 1.0;
                    for (int k = 0; k <= box.bound(0); ++k) {
                        sum += binom * std::pow(u, k);
                        binom = binom * (k + 1 + e) / (k + 1);
                    }
                    oracle = std::max(oracle, delta.cumulative(e) * std::abs(sum / std::pow(w, e + 1)));
                }
            }
        }
    }
    CHECK(r.family_size == grid.size() * 4 * box.size());
    CHECK(rel_err(r.sup_value, oracle) <= 1e-9);

    const ProbeReport zero = boundedness_probe(Multiplier::from_sequence(omega, TaylorPoly::zero(box)), k,
                                               TestFamily::CauchyKernels, delta, box, opt);
    CHECK(zero.sup_value == 0.0);
}
