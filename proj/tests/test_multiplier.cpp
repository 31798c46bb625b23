// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"

#include "holomult/config.hpp"
#include "holomult/error.hpp"
#include "holomult/multiplier.hpp"
#include "support.hpp"

using namespace holomult;
using holomult::testing::Gen;
using holomult::testing::rel_err;

namespace {

const Complex I(0.0, 1.0);

std::vector<Point> samples(const ProductDomain& omega, std::size_t count, std::uint64_t seed) {
    config::Rng rng(seed);
    return config::random_points(omega, count, rng);
}

// Random Laurent germ: one or two product-pole terms, poles inside |c| <= 0.9.
Germ random_laurent_germ(Gen& g, std::size_t dim) {
    auto term = [&] {
        std::vector<std::vector<Complex>> poles(dim);
        for (auto& p : poles) {
            const int k = g.integer(1, 3);
            for (int i = 0; i < k; ++i) p.push_back(g.complex_in_annulus(0.05, 0.9));
        }
        return Germ::product_poles(poles, g.complex_in_annulus(0.5, 1.5));
    };
    Germ psi = term();
    if (g.integer(0, 1) == 1) psi = psi + term();
    return psi;
}

Multiplier dilation_by(const ProductDomain& omega, const Point& c, const TruncationBox& box) {
    return Multiplier::dilation(omega, c, box);
}

Evaluable as_function(const TaylorPoly& p) {
    return [p](std::span<const Complex> z) { return eval(p, Point(std::vector<Complex>(z.begin(), z.end()))); };
}

double max_rel(const TaylorPoly& got, const TaylorPoly& want) { return holomult::testing::max_rel_err(got, want); }

} // namespace

TEST_CASE("multipliers refuse non-Runge domains") {
    const ProductDomain ann({PlanarFactor::annulus(0.5, 2.0)});
    CHECK_THROWS_AS(Multiplier::identity(ann, TruncationBox{4}), UnsupportedGeometry);
    CHECK_THROWS_AS(phi(AnalyticFunctional::point_evaluation(Point{1.0}), ann, TruncationBox{4}), UnsupportedGeometry);
}

TEST_CASE("phi examples") {
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{10, 10};
    const Point c{0.4 + 0.1 * I, -0.5};
    const Multiplier m = phi(AnalyticFunctional::point_evaluation(c), omega, box);
    CHECK(max_rel(m.sequence(), holomult::testing::geometric(box, c)) <= 1e-10);

    const Multiplier id = phi(AnalyticFunctional::point_evaluation(Point::ones(2)), omega, box);
    CHECK(max_rel(id.sequence(), TaylorPoly::ones(box)) <= 1e-10);

    const Multiplier z = phi(AnalyticFunctional::zero(2), omega, box);
    CHECK(max_rel(z.sequence(), TaylorPoly::zero(box)) == 0.0);

    // delta at a point outside the dilation set is not in the multiplier class.
    CHECK_THROWS_AS(phi(AnalyticFunctional::point_evaluation(Point{1.2, 0.3}), omega, box), MembershipError);
}

TEST_CASE("theta examples") {
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{10, 10};
    const AnalyticFunctional t = theta(Multiplier::identity(omega, box));
    CHECK(max_rel(moments(t, box), TaylorPoly::ones(box)) <= 1e-9);
    const Point one = Point::ones(2);
    Gen g(74);
    const TaylorPoly f = g.poly(box);
    const Evaluable fe = [&](std::span<const Complex> w) { return eval(f, Point(std::vector<Complex>(w.begin(), w.end()))); };
    CHECK(rel_err(act(t, fe), eval(f, one)) <= 1e-9);

    const Point c{0.3 - 0.2 * I, 0.6};
    const AnalyticFunctional d = theta(dilation_by(omega, c, box));
    CHECK(max_rel(moments(d, box), holomult::testing::geometric(box, c)) <= 1e-9);

    CHECK_THROWS_AS(theta(Multiplier::identity(ProductDomain::uniform_polydisc(2, 0.9), box)), DomainError);
}

TEST_CASE("phi after theta reproduces random rational-germ multipliers") {
    Gen g(61);
    const ProductDomain omega = ProductDomain::polydisc({0.0, 0.0}, {1.5, 2.0});
    const TruncationBox box{10, 10};
    for (int trial = 0; trial < 20; ++trial) {
        const Multiplier m = Multiplier::from_laurent_germ(omega, random_laurent_germ(g, 2), box);
        const Multiplier back = phi(theta(m), omega, box);
        double e = 0.0;
        for (std::size_t i = 0; i < box.size(); ++i) {
            e = std::max(e, rel_err(back.sequence().coeffs()[i], m.sequence().coeffs()[i]));
        }
        CHECK(e <= 1e-9);
    }
}

TEST_CASE("theta after phi preserves moments") {
    Gen g(62);
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{10, 10};
    for (int trial = 0; trial < 20; ++trial) {
        const AnalyticFunctional t = AnalyticFunctional::around(random_laurent_germ(g, 2));
        const TaylorPoly m0 = *exact_moments(t, box);
        const TaylorPoly m1 = moments(theta(phi(t, omega, box)), box);
        double e = 0.0;
        for (std::size_t i = 0; i < box.size(); ++i) e = std::max(e, rel_err(m1.coeffs()[i], m0.coeffs()[i]));
        CHECK(e <= 1e-9);
    }
}

TEST_CASE("apply_sequence examples") {
    Gen g(63);
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{5, 5};
    const TaylorPoly f = g.poly(box);
    CHECK(max_rel(apply_sequence(Multiplier::identity(omega, box), f), f) == 0.0);

    const Point c{0.5, -0.3 * I};
    const Multiplier m = Multiplier::from_sequence(omega, holomult::testing::geometric(box, c));
    CHECK(max_rel(apply_sequence(m, f), dilate(f, c)) <= 1e-15);

    std::vector<Complex> alpha1(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) alpha1[i] = box.multi_index(i)[0];
    const Multiplier a1 = Multiplier::from_sequence(omega, TaylorPoly(box, alpha1));
    std::vector<Complex> h(box.size());
    h[box.flat_index(MultiIndex{1, 0})] = 1.0;
    h[box.flat_index(MultiIndex{1, 2})] = 1.0;
    const TaylorPoly hp(box, h);
    CHECK(max_rel(apply_sequence(a1, hp), hp) == 0.0);
}

TEST_CASE("apply_laurent examples") {
    Gen g(64);
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        const Point c = g.point(2, 0.05, 0.95);
        const Germ psi = Germ::product_poles({{c[0]}, {c[1]}});
        const TaylorPoly f = g.poly(TruncationBox{8, 8});
        for (const Point& z : samples(omega, 5, 100 + trial)) {
            CHECK(rel_err(apply_laurent(psi, f, z, omega), eval(f, c * z)) <= 1e-10);
        }
    }
    const ProductDomain d1 = ProductDomain::uniform_polydisc(1, 2.0);
    const Germ inv = Germ::product_poles({{0.0}});
    const TaylorPoly f1 = g.poly(TruncationBox{9});
    for (const Point& z : samples(d1, 10, 7)) {
        CHECK(rel_err(apply_laurent(inv, f1, z, d1), f1.coeff(MultiIndex{0})) <= 1e-12);
        CHECK(std::abs(apply_laurent(inv, TaylorPoly::zero(TruncationBox{9}), z, d1)) == 0.0);
    }
    CHECK_THROWS_AS(apply_laurent(inv, f1, Point{0.0}, d1), HyperplaneError);
}

TEST_CASE("apply_laurent on a general holomorphic function") {
    const ProductDomain omega = ProductDomain::uniform_polydisc(1, 2.0);
    const Germ psi = Germ::product_poles({{0.6 * I}});
    const Evaluable f = [](std::span<const Complex> z) { return std::exp(z[0]) / (3.0 - z[0]); };
    for (const Point& z : samples(omega, 10, 8)) {
        const Complex cz = 0.6 * I * z[0];
        CHECK(rel_err(apply_laurent(psi, f, z, omega), std::exp(cz) / (3.0 - cz)) <= 1e-10);
    }
}

TEST_CASE("apply_taylor examples") {
    Gen g(65);
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        const Point c = g.point(2, 0.05, 0.95);
        const Germ hat = Germ::rational({RationalTerm{1.0, {RationalFactor{{1.0}, {1.0, -c[0]}},
                                                            RationalFactor{{1.0}, {1.0, -c[1]}}}}},
                                        Expansion::AtOrigin);
        const TaylorPoly f = g.poly(TruncationBox{8, 8});
        for (const Point& z : samples(omega, 5, 200 + trial)) {
            CHECK(rel_err(apply_taylor(hat, f, z, omega), eval(f, c * z)) <= 1e-9);
        }
    }
    const ProductDomain d1 = ProductDomain::uniform_polydisc(1, 2.0);
    const Germ one = Germ::rational({RationalTerm{1.0, {RationalFactor{{1.0}, {1.0}}}}}, Expansion::AtOrigin);
    const TaylorPoly f1 = g.poly(TruncationBox{9});
    for (const Point& z : samples(d1, 10, 9)) {
        CHECK(rel_err(apply_taylor(one, f1, z, d1), f1.coeff(MultiIndex{0})) <= 1e-12);
    }

    // Monomials are eigenvectors with the Taylor coefficients as eigenvalues.
    const Germ hat = Germ::rational({RationalTerm{1.0, {RationalFactor{{1.0, 0.5}, {1.0, -0.4, 0.1}}}}},
                                    Expansion::AtOrigin);
    const auto seq = *hat.exact_sequence(TruncationBox{12});
    for (const Point& z : samples(d1, 5, 10)) {
        for (int k = 0; k <= 12; ++k) {
            const Complex got = apply_taylor(hat, TaylorPoly::monomial(MultiIndex{k}), z, d1);
            CHECK(rel_err(got, seq.coeff(MultiIndex{k}) * std::pow(z[0], k)) <= 1e-9);
        }
    }
}

TEST_CASE("taylor formula requires the origin in every factor") {
    const ProductDomain off({PlanarFactor::disc(2.0, 1.0)});
    const Germ one = Germ::rational({RationalTerm{1.0, {RationalFactor{{1.0}, {1.0}}}}}, Expansion::AtOrigin);
    CHECK_THROWS_AS(apply_taylor(one, TaylorPoly::ones(TruncationBox{3}), Point{2.0}, off), UnsupportedGeometry);
}

TEST_CASE("formula equivalence across the three paths") {
    Gen g(66);
    const ProductDomain omega = ProductDomain::polydisc({0.0, 0.0}, {1.5, 1.2});
    const TruncationBox box{10, 10};
    for (int trial = 0; trial < 10; ++trial) {
        const Germ psi = random_laurent_germ(g, 2);
        const Multiplier m = Multiplier::from_laurent_germ(omega, psi, box);
        const Germ hat = reciprocal_pairing(psi);
        const TaylorPoly f = g.poly(box);
        for (const Point& z : samples(omega, 5, 300 + trial)) {
            const Complex seq = eval(apply_sequence(m, f), z);
            const Complex lau = apply_laurent(psi, f, z, omega);
            const Complex tay = apply_taylor(hat, f, z, omega);
            CHECK(rel_err(lau, seq) <= 1e-9);
            CHECK(rel_err(tay, seq) <= 1e-9);
            CHECK(rel_err(tay, lau) <= 1e-9);
        }
    }
}

TEST_CASE("evaluate_at on coordinate hyperplanes") {
    Gen g(67);
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.0);
    const TruncationBox box{8, 8};
    const TaylorPoly f = g.poly(box);
    const Point z{0.0, 0.5};
    CHECK(rel_err(evaluate_at(Multiplier::identity(omega, box), f, z), eval(f, z)) <= 1e-10);

    for (int trial = 0; trial < 10; ++trial) {
        const Point c = g.point(2, 0.05, 0.95);
        const Multiplier m = dilation_by(omega, c, box);
        const TaylorPoly h = g.poly(box);
        const std::vector<Point> zs{Point{0.0, g.complex_in_annulus(0.1, 0.9)}, Point{g.complex_in_annulus(0.1, 0.9), 0.0},
                                    Point::zeros(2)};
        for (const Point& p : zs) CHECK(rel_err(evaluate_at(m, h, p), eval(h, c * p)) <= 1e-9);
        const Evaluable e = [](std::span<const Complex> w) { return std::exp(w[0] + 2.0 * w[1]); };
        // The origin needs a two-level grid for general functions; sample it on two trials.
        for (std::size_t i = 0; i < (trial < 2 ? 3u : 2u); ++i) {
            CHECK(rel_err(evaluate_at(m, e, zs[i]), std::exp(c[0] * zs[i][0] + 2.0 * c[1] * zs[i][1])) <= 1e-9);
        }
    }
    CHECK_THROWS_AS(evaluate_at(Multiplier::identity(omega, box), f, Point{1.0, 0.0}), DomainError);
}

TEST_CASE("evaluate_at off the hyperplanes agrees with the sequence path") {
    Gen g(68);
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{10, 10};
    for (int trial = 0; trial < 10; ++trial) {
        const Multiplier m = Multiplier::from_laurent_germ(omega, random_laurent_germ(g, 2), box);
        const Multiplier s = Multiplier::from_sequence(omega, m.sequence());
        const TaylorPoly f = g.poly(box);
        for (const Point& z : samples(omega, 5, 400 + trial)) {
            CHECK(rel_err(evaluate_at(m, f, z), evaluate_at(s, f, z)) <= 1e-10);
        }
    }
}

TEST_CASE("compose examples") {
    Gen g(69);
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{10, 10};
    const Multiplier m = Multiplier::from_laurent_germ(omega, random_laurent_germ(g, 2), box);
    CHECK(max_rel(compose(Multiplier::identity(omega, box), m).sequence(), m.sequence()) == 0.0);

    const Point a = g.point(2, 0.1, 0.9), b = g.point(2, 0.1, 0.9);
    const Multiplier ab = compose(dilation_by(omega, a, box), dilation_by(omega, b, box));
    CHECK(max_rel(ab.sequence(), dilation_by(omega, a * b, box).sequence()) <= 1e-13);

    const Multiplier m2 = Multiplier::from_laurent_germ(omega, random_laurent_germ(g, 2), box);
    const Multiplier x = compose(m, m2), y = compose(m2, m);
    for (int trial = 0; trial < 5; ++trial) {
        const TaylorPoly f = g.poly(box);
        for (const Point& z : samples(omega, 3, 500 + trial)) {
            CHECK(rel_err(evaluate_at(x, f, z), evaluate_at(y, f, z)) <= 1e-10);
        }
    }
    CHECK_THROWS_AS(compose(m, Multiplier::identity(ProductDomain::uniform_polydisc(2, 1.2), box)), DomainError);
}

TEST_CASE("composition is the operator product") {
    Gen g(70);
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{10, 10};
    for (int pair = 0; pair < 5; ++pair) {
        const Multiplier m1 = Multiplier::from_laurent_germ(omega, random_laurent_germ(g, 2), box);
        const Multiplier m2 = Multiplier::from_laurent_germ(omega, random_laurent_germ(g, 2), box);
        const Multiplier c = compose(m1, m2);
        CHECK(max_rel(c.sequence(), hadamard(m1.sequence(), m2.sequence())) == 0.0);
        for (int trial = 0; trial < 3; ++trial) {
            const TaylorPoly f = g.poly(box);
            for (const Point& z : samples(omega, 3, 600 + 10 * pair + trial)) {
                const Complex lhs = eval(apply_sequence(c, f), z);
                CHECK(rel_err(evaluate_at(m1, apply_sequence(m2, f), z), lhs) <= 1e-9);
            }
        }
    }
}

TEST_CASE("psi_of and psi_hat_of") {
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{12, 12};
    const Point c{0.4, -0.3 * I};
    const Multiplier m = Multiplier::from_sequence(omega, holomult::testing::geometric(box, c));
    const Germ psi = psi_of(m);
    Gen g(71);
    for (int k = 0; k < 20; ++k) {
        const Point w = g.point(2, 0.8, 2.0);
        const std::vector<Complex> wv(w.coords().begin(), w.coords().end());
        const Complex exact = 1.0 / ((w[0] - c[0]) * (w[1] - c[1]));
        // Tail of the truncated geometric series in each variable.
        double bound = 0.0;
        double head = 1.0;
        for (std::size_t j = 0; j < 2; ++j) {
            const double q = std::abs(c[j]) / std::abs(w[j]);
            head *= 1.0 / (1.0 - q);
            bound += std::pow(q, 13) / (1.0 - q);
        }
        bound *= head / (std::abs(w[0]) * std::abs(w[1]));
        CHECK(std::abs(psi(wv) - exact) <= bound * (1.0 + 1e-9) + 1e-15);
    }
    // Radii matched to the decay of the sequence keep every sample of comparable size.
    const double r[] = {std::abs(c[0]), std::abs(c[1])};
    CHECK(max_rel(laurent_moments(psi.evaluator(), r, box, 64), m.sequence()) <= 1e-9);

    const Germ hat = psi_hat_of(m);
    const double rr[] = {1.0 / std::abs(c[0]), 1.0 / std::abs(c[1])};
    CHECK(max_rel(taylor_coefficients(hat.evaluator(), Point::zeros(2), rr, box, 64), m.sequence()) <= 1e-9);

    const Multiplier zero = Multiplier::from_sequence(omega, TaylorPoly::zero(box));
    const std::vector<Complex> w{1.3, 0.7 * I};
    CHECK(psi_of(zero)(w) == Complex(0.0));
    CHECK(psi_hat_of(zero)(w) == Complex(0.0));
}

TEST_CASE("eigencheck examples") {
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{12, 12};
    const std::vector<Point> zs = samples(omega, 25, 1);
    CHECK(eigencheck_all(Multiplier::identity(omega, box), 24, zs).max_rel_error <= 1e-12);
    const Multiplier d = dilation_by(omega, Point{0.4 + 0.1 * I, 0.4 + 0.1 * I}, box);
    CHECK(max_rel(d.sequence(), holomult::testing::geometric(box, Point{0.4 + 0.1 * I, 0.4 + 0.1 * I})) <= 1e-14);
    CHECK(eigencheck_all(d, 24, zs).max_rel_error <= 1e-9);
    const EigenReport single = eigencheck(d, MultiIndex{3, 5}, zs);
    CHECK(single.checks == 25u);
    CHECK(single.max_rel_error <= 1e-9);

    // 1/(w^2 (w - 0.3)); sequence checked against quadrature moments.
    const ProductDomain d1 = ProductDomain::uniform_polydisc(1, 1.5);
    const Germ psi = Germ::product_poles({{0.0, 0.0, 0.3}});
    const Multiplier m = Multiplier::from_laurent_germ(d1, psi, TruncationBox{24});
    const double r[] = {0.6};
    const TaylorPoly oracle = laurent_moments(psi.evaluator(), r, TruncationBox{24}, 256);
    CHECK(holomult::testing::max_abs_diff(m.sequence(), oracle) <= 1e-12);
    CHECK(m.sequence().coeff(MultiIndex{0}) == Complex(0.0));
    CHECK(m.sequence().coeff(MultiIndex{1}) == Complex(0.0));
    CHECK(eigencheck_all(m, 24, samples(d1, 25, 2)).max_rel_error <= 1e-9);
}

TEST_CASE("eigenvector property for random germ and functional multipliers") {
    Gen g(72);
    const ProductDomain omega = ProductDomain::polydisc({0.0, 0.0}, {1.2, 1.8});
    const TruncationBox box{12, 12};
    const std::vector<Point> zs = samples(omega, 25, 3);
    for (int trial = 0; trial < 5; ++trial) {
        const Germ psi = random_laurent_germ(g, 2);
        CHECK(eigencheck_all(Multiplier::from_laurent_germ(omega, psi, box), 24, zs).max_rel_error <= 1e-9);
        CHECK(eigencheck_all(Multiplier::from_taylor_germ(omega, reciprocal_pairing(psi), box), 24, zs).max_rel_error <=
              1e-9);
        CHECK(eigencheck_all(phi(AnalyticFunctional::around(psi), omega, box), 24, zs).max_rel_error <= 1e-9);
    }
}

TEST_CASE("application paths are linear in f") {
    Gen g(73);
    const ProductDomain omega = ProductDomain::uniform_polydisc(2, 1.5);
    const TruncationBox box{8, 8};
    const Germ psi = random_laurent_germ(g, 2);
    const Germ hat = reciprocal_pairing(psi);
    for (int trial = 0; trial < 5; ++trial) {
        const TaylorPoly f = g.poly(box), h = g.poly(box);
        const Complex a = g.complex_in_square(), b = g.complex_in_square();
        const TaylorPoly mix = f.scaled(a) + h.scaled(b);
        for (const Point& z : samples(omega, 3, 700 + trial)) {
            const Complex l = apply_laurent(psi, mix, z, omega);
            const Complex lr = a * apply_laurent(psi, f, z, omega) + b * apply_laurent(psi, h, z, omega);
            CHECK(std::abs(l - lr) <= 1e-11 * std::max(1.0, std::abs(lr)));
            const Complex t = apply_taylor(hat, mix, z, omega);
            const Complex tr = a * apply_taylor(hat, f, z, omega) + b * apply_taylor(hat, h, z, omega);
            CHECK(std::abs(t - tr) <= 1e-11 * std::max(1.0, std::abs(tr)));
            const Complex e = apply_laurent(psi, as_function(mix), z, omega);
            CHECK(std::abs(e - lr) <= 1e-11 * std::max(1.0, std::abs(lr)));
        }
    }
}

TEST_CASE("interior grid avoids the hyperplanes") {
    const ProductDomain omega = ProductDomain::polydisc({0.0, 0.5}, {1.0, 2.0});
    const auto grid = interior_grid(omega, 5, 8);
    CHECK(grid.size() == 40u * 40u);
    for (const auto& p : grid) {
        CHECK(omega.contains(p));
        CHECK_FALSE(p.on_hyperplane());
    }
}
