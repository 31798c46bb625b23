// SPDX-License-Identifier: Apache-2.0
#include "holomult/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "holomult/error.hpp"

namespace holomult {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                                " vs " + std::to_string(b));
    }
}

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

} // namespace

// ---- MultiIndex -----------------------------------------------------------

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw InvalidArgument("multi-index must have dimension >= 1");
    for (int a : entries_) {
        if (a < 0) throw InvalidArgument("multi-index entries must be non-negative");
    }
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

MultiIndex MultiIndex::zero(std::size_t dim) { return MultiIndex(std::vector<int>(dim, 0)); }

int MultiIndex::total() const noexcept {
    return std::accumulate(entries_.begin(), entries_.end(), 0);
}

double MultiIndex::factorial() const noexcept {
    double f = 1.0;
    for (int a : entries_) f *= std::tgamma(a + 1.0);
    return f;
}

// ---- TruncationBox --------------------------------------------------------

TruncationBox::TruncationBox(std::vector<int> bounds) : bounds_(std::move(bounds)) {
    if (bounds_.empty()) throw InvalidArgument("truncation box must have dimension >= 1");
    for (int d : bounds_) {
        if (d < 0) throw InvalidArgument("truncation box bounds must be non-negative");
    }
}

TruncationBox::TruncationBox(std::initializer_list<int> bounds)
    : TruncationBox(std::vector<int>(bounds)) {}

TruncationBox TruncationBox::uniform(std::size_t dim, int bound) {
    return TruncationBox(std::vector<int>(dim, bound));
}

int TruncationBox::max_bound() const noexcept {
    return bounds_.empty() ? 0 : *std::max_element(bounds_.begin(), bounds_.end());
}

int TruncationBox::diameter() const noexcept {
    return std::accumulate(bounds_.begin(), bounds_.end(), 0);
}

std::size_t TruncationBox::size() const noexcept {
    std::size_t s = 1;
    for (int d : bounds_) s *= static_cast<std::size_t>(d + 1);
    return bounds_.empty() ? 0 : s;
}

bool TruncationBox::contains(const MultiIndex& alpha) const noexcept {
    if (alpha.dim() != dim()) return false;
    for (std::size_t j = 0; j < dim(); ++j) {
        if (alpha[j] > bounds_[j]) return false;
    }
    return true;
}

std::size_t TruncationBox::flat_index(const MultiIndex& alpha) const {
    require_same_dim(alpha.dim(), dim(), "flat_index");
    if (!contains(alpha)) throw OutOfBox("multi-index outside truncation box");
    std::size_t flat = 0;
    for (std::size_t j = 0; j < dim(); ++j) {
        flat = flat * static_cast<std::size_t>(bounds_[j] + 1) + static_cast<std::size_t>(alpha[j]);
    }
    return flat;
}

MultiIndex TruncationBox::multi_index(std::size_t flat) const {
    if (flat >= size()) throw OutOfBox("flat index outside truncation box");
    std::vector<int> e(dim());
    for (std::size_t j = dim(); j-- > 0;) {
        auto extent = static_cast<std::size_t>(bounds_[j] + 1);
        e[j] = static_cast<int>(flat % extent);
        flat /= extent;
    }
    return MultiIndex(std::move(e));
}

TruncationBox TruncationBox::intersect(const TruncationBox& other) const {
    require_same_dim(dim(), other.dim(), "box intersection");
    std::vector<int> b(dim());
    for (std::size_t j = 0; j < dim(); ++j) b[j] = std::min(bounds_[j], other.bounds_[j]);
    return TruncationBox(std::move(b));
}

// ---- Point ----------------------------------------------------------------

Point::Point(std::vector<Complex> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw InvalidArgument("point must have dimension >= 1");
    for (auto c : coords_) {
        if (!finite(c)) throw InvalidArgument("point coordinates must be finite");
    }
}

Point::Point(std::initializer_list<Complex> coords) : Point(std::vector<Complex>(coords)) {}

Point Point::ones(std::size_t dim) { return Point(std::vector<Complex>(dim, 1.0)); }
Point Point::zeros(std::size_t dim) { return Point(std::vector<Complex>(dim, 0.0)); }

bool Point::on_hyperplane() const noexcept {
    return std::any_of(coords_.begin(), coords_.end(), [](Complex c) { return c == 0.0; });
}

Point Point::inverse() const {
    if (on_hyperplane()) throw HyperplaneError("cannot invert a point with a zero coordinate");
    std::vector<Complex> inv(coords_.size());
    for (std::size_t j = 0; j < coords_.size(); ++j) inv[j] = 1.0 / coords_[j];
    return Point(std::move(inv));
}

Complex Point::power(const MultiIndex& alpha) const {
    require_same_dim(alpha.dim(), dim(), "monomial");
    Complex p = 1.0;
    for (std::size_t j = 0; j < dim(); ++j) p *= std::pow(coords_[j], alpha[j]);
    return p;
}

Point operator*(const Point& a, const Point& b) {
    require_same_dim(a.dim(), b.dim(), "coordinatewise product");
    std::vector<Complex> c(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j) c[j] = a[j] * b[j];
    return Point(std::move(c));
}

// ---- TaylorPoly -----------------------------------------------------------

TaylorPoly::TaylorPoly(TruncationBox box, std::vector<Complex> coeffs)
    : box_(std::move(box)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != box_.size()) {
        throw InvalidArgument("coefficient tensor size " + std::to_string(coeffs_.size()) +
                              " does not match box size " + std::to_string(box_.size()));
    }
    for (auto c : coeffs_) {
        if (!finite(c)) throw InvalidArgument("series coefficients must be finite");
    }
}

TaylorPoly TaylorPoly::zero(TruncationBox box) {
    auto n = box.size();
    return TaylorPoly(std::move(box), std::vector<Complex>(n, 0.0));
}

TaylorPoly TaylorPoly::ones(TruncationBox box) {
    auto n = box.size();
    return TaylorPoly(std::move(box), std::vector<Complex>(n, 1.0));
}

TaylorPoly TaylorPoly::monomial(const MultiIndex& alpha, Complex coeff) {
    TruncationBox box(std::vector<int>(alpha.begin(), alpha.end()));
    std::vector<Complex> c(box.size(), 0.0);
    c.back() = coeff;
    return TaylorPoly(std::move(box), std::move(c));
}

Complex TaylorPoly::coeff(const MultiIndex& alpha) const {
    require_same_dim(alpha.dim(), dim(), "coefficient access");
    if (!box_.contains(alpha)) return 0.0;
    return coeffs_[box_.flat_index(alpha)];
}

std::vector<Complex> TaylorPoly::eval_on_grid(std::span<const std::vector<Complex>> axis_nodes) const {
    require_same_dim(axis_nodes.size(), dim(), "grid evaluation");
    const std::size_t n = dim();
    std::vector<std::size_t> shape(n);
    for (std::size_t j = 0; j < n; ++j) shape[j] = static_cast<std::size_t>(box_.bound(j) + 1);

    std::vector<Complex> current = coeffs_;
    // Replace the coefficient axis j by the node axis j, one Horner sweep per line.
    for (std::size_t j = n; j-- > 0;) {
        std::size_t outer = 1, inner = 1;
        for (std::size_t i = 0; i < j; ++i) outer *= shape[i];
        for (std::size_t i = j + 1; i < n; ++i) inner *= shape[i];
        const std::size_t deg = shape[j];
        const auto& nodes = axis_nodes[j];
        std::vector<Complex> next(outer * nodes.size() * inner);
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                const Complex x = nodes[k];
                for (std::size_t i = 0; i < inner; ++i) {
                    Complex acc = 0.0;
                    for (std::size_t a = deg; a-- > 0;) {
                        acc = acc * x + current[(o * deg + a) * inner + i];
                    }
                    next[(o * nodes.size() + k) * inner + i] = acc;
                }
            }
        }
        shape[j] = nodes.size();
        current = std::move(next);
    }
    return current;
}

TaylorPoly TaylorPoly::reshaped(const TruncationBox& box) const {
    require_same_dim(box.dim(), dim(), "reshape");
    std::vector<Complex> c(box.size(), 0.0);
    for (std::size_t flat = 0; flat < c.size(); ++flat) c[flat] = coeff(box.multi_index(flat));
    return TaylorPoly(box, std::move(c));
}

TaylorPoly TaylorPoly::scaled(Complex s) const {
    std::vector<Complex> c(coeffs_);
    for (auto& x : c) x *= s;
    return TaylorPoly(box_, std::move(c));
}

TaylorPoly operator+(const TaylorPoly& a, const TaylorPoly& b) {
    require_same_dim(a.dim(), b.dim(), "series sum");
    std::vector<int> bounds(a.dim());
    for (std::size_t j = 0; j < a.dim(); ++j) bounds[j] = std::max(a.box().bound(j), b.box().bound(j));
    TruncationBox box(std::move(bounds));
    std::vector<Complex> c(box.size());
    for (std::size_t flat = 0; flat < c.size(); ++flat) {
        auto alpha = box.multi_index(flat);
        c[flat] = a.coeff(alpha) + b.coeff(alpha);
    }
    return TaylorPoly(std::move(box), std::move(c));
}

// ---- operations -----------------------------------------------------------

Complex eval(const TaylorPoly& f, const Point& z) {
    require_same_dim(f.dim(), z.dim(), "eval");
    std::vector<std::vector<Complex>> nodes(z.dim());
    for (std::size_t j = 0; j < z.dim(); ++j) nodes[j] = {z[j]};
    return f.eval_on_grid(nodes).front();
}

TaylorPoly dilate(const TaylorPoly& f, const Point& z) {
    require_same_dim(f.dim(), z.dim(), "dilate");
    const auto& box = f.box();
    std::vector<Complex> c(f.coeffs().begin(), f.coeffs().end());
    for (std::size_t flat = 0; flat < c.size(); ++flat) c[flat] *= z.power(box.multi_index(flat));
    return TaylorPoly(box, std::move(c));
}

TaylorPoly hadamard(const TaylorPoly& f, const TaylorPoly& g) {
    require_same_dim(f.dim(), g.dim(), "hadamard");
    auto box = f.box().intersect(g.box());
    std::vector<Complex> c(box.size());
    for (std::size_t flat = 0; flat < c.size(); ++flat) {
        auto alpha = box.multi_index(flat);
        c[flat] = f.coeff(alpha) * g.coeff(alpha);
    }
    return TaylorPoly(std::move(box), std::move(c));
}

Complex scaled_derivative(const TaylorPoly& f, const MultiIndex& alpha) {
    require_same_dim(f.dim(), alpha.dim(), "scaled_derivative");
    if (!f.box().contains(alpha)) throw OutOfBox("derivative order outside truncation box");
    return f.coeff(alpha);
}

} // namespace holomult
