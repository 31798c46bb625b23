// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "holomult/series.hpp"

namespace holomult::testing {

/// Seeded generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Complex complex_in_square() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

    /// Uniform in the annulus lo <= |c| <= hi.
    Complex complex_in_annulus(double lo, double hi) {
        const double r = std::sqrt(uniform(lo * lo, hi * hi));
        return std::polar(r, uniform(0.0, 2.0 * M_PI));
    }

    Point point(std::size_t dim, double lo, double hi) {
        std::vector<Complex> c;
        for (std::size_t j = 0; j < dim; ++j) c.push_back(complex_in_annulus(lo, hi));
        return Point(std::move(c));
    }

    TaylorPoly poly(const TruncationBox& box) {
        std::vector<Complex> c(box.size());
        for (auto& v : c) v = complex_in_square();
        return TaylorPoly(box, std::move(c));
    }

private:
    std::mt19937_64 rng_;
};

inline double rel_err(Complex got, Complex expected) {
    const double e = std::abs(expected);
    return e == 0.0 ? std::abs(got) : std::abs(got - expected) / e;
}

inline double max_rel_err(const TaylorPoly& got, const TaylorPoly& expected) {
    double e = 0.0;
    for (std::size_t i = 0; i < expected.box().size(); ++i) {
        const MultiIndex a = expected.box().multi_index(i);
        e = std::max(e, rel_err(got.coeff(a), expected.coeff(a)));
    }
    return e;
}

inline double max_abs_diff(const TaylorPoly& got, const TaylorPoly& expected) {
    double e = 0.0;
    for (std::size_t i = 0; i < expected.box().size(); ++i) {
        const MultiIndex a = expected.box().multi_index(i);
        e = std::max(e, std::abs(got.coeff(a) - expected.coeff(a)));
    }
    return e;
}

/// Monomial coefficients alpha -> c^alpha, computed by repeated multiplication.
inline TaylorPoly geometric(const TruncationBox& box, const Point& c) {
    std::vector<Complex> out(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
        const MultiIndex a = box.multi_index(i);
        Complex v = 1.0;
        for (std::size_t j = 0; j < a.dim(); ++j) {
            for (int k = 0; k < a[j]; ++k) v *= c[j];
        }
        out[i] = v;
    }
    return TaylorPoly(box, std::move(out));
}

/// Direct sum of f_alpha z^alpha with explicit powers.
inline Complex naive_eval(const TaylorPoly& f, const Point& z) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < f.box().size(); ++i) {
        const MultiIndex a = f.box().multi_index(i);
        Complex p = 1.0;
        for (std::size_t j = 0; j < a.dim(); ++j) p *= std::pow(z[j], a[j]);
        s += f.coeffs()[i] * p;
    }
    return s;
}

} // namespace holomult::testing
