// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace holomult {

using Complex = std::complex<double>;

/// Multi-index alpha in N^n.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    MultiIndex(std::initializer_list<int> entries);

    static MultiIndex zero(std::size_t dim);

    std::size_t dim() const noexcept { return entries_.size(); }
    int operator[](std::size_t j) const { return entries_[j]; }
    int total() const noexcept;
    double factorial() const noexcept;
    std::span<const int> entries() const noexcept { return entries_; }

    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

private:
    std::vector<int> entries_;
};

/// Per-variable degree caps D = (D_1, ..., D_n). Enumeration is row-major,
/// i.e. lexicographic with the last variable running fastest.
class TruncationBox {
public:
    TruncationBox() = default;
    explicit TruncationBox(std::vector<int> bounds);
    TruncationBox(std::initializer_list<int> bounds);

    static TruncationBox uniform(std::size_t dim, int bound);

    std::size_t dim() const noexcept { return bounds_.size(); }
    int bound(std::size_t j) const { return bounds_[j]; }
    int max_bound() const noexcept;
    int diameter() const noexcept; // sum of bounds, the largest |alpha| in the box
    std::span<const int> bounds() const noexcept { return bounds_; }
    std::size_t size() const noexcept;

    bool contains(const MultiIndex& alpha) const noexcept;
    std::size_t flat_index(const MultiIndex& alpha) const;
    MultiIndex multi_index(std::size_t flat) const;
    TruncationBox intersect(const TruncationBox& other) const;

    friend bool operator==(const TruncationBox&, const TruncationBox&) = default;

private:
    std::vector<int> bounds_;
};

/// A coordinate tuple in C^n.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<Complex> coords);
    Point(std::initializer_list<Complex> coords);

    static Point ones(std::size_t dim);
    static Point zeros(std::size_t dim);

    std::size_t dim() const noexcept { return coords_.size(); }
    Complex operator[](std::size_t j) const { return coords_[j]; }
    std::span<const Complex> coords() const noexcept { return coords_; }

    /// Membership in the coordinate hyperplane union C^n \ C_*^n.
    bool on_hyperplane() const noexcept;
    Point inverse() const;
    Complex power(const MultiIndex& alpha) const;

    friend Point operator*(const Point& a, const Point& b);
    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<Complex> coords_;
};

/// Truncated multivariate Taylor series sum f_alpha zeta^alpha, stored as a
/// dense row-major tensor over a truncation box. Also used to hold
/// multiplier sequences, which live on the same index set.
class TaylorPoly {
public:
    TaylorPoly() = default;
    TaylorPoly(TruncationBox box, std::vector<Complex> coeffs);

    static TaylorPoly zero(TruncationBox box);
    static TaylorPoly ones(TruncationBox box);
    static TaylorPoly monomial(const MultiIndex& alpha, Complex coeff = 1.0);

    std::size_t dim() const noexcept { return box_.dim(); }
    const TruncationBox& box() const noexcept { return box_; }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }

    /// Coefficient at alpha; zero outside the box.
    Complex coeff(const MultiIndex& alpha) const;

    /// Values at every point of a tensor grid, axis j running over axis_nodes[j].
    /// Row-major output of shape prod |axis_nodes[j]|.
    std::vector<Complex> eval_on_grid(std::span<const std::vector<Complex>> axis_nodes) const;

    /// Restriction to a smaller box, or zero extension into a larger one.
    TaylorPoly reshaped(const TruncationBox& box) const;

    TaylorPoly scaled(Complex c) const;
    friend TaylorPoly operator+(const TaylorPoly& a, const TaylorPoly& b);

private:
    TruncationBox box_;
    std::vector<Complex> coeffs_;
};

/// sum_alpha f_alpha z^alpha by nested Horner evaluation.
Complex eval(const TaylorPoly& f, const Point& z);

/// f_z(w) = f(zw): coefficient alpha becomes f_alpha z^alpha.
TaylorPoly dilate(const TaylorPoly& f, const Point& z);

/// Coefficientwise product on the intersection of the two boxes.
TaylorPoly hadamard(const TaylorPoly& f, const TaylorPoly& g);

/// D^alpha f(0) / alpha!, which is the stored coefficient.
Complex scaled_derivative(const TaylorPoly& f, const MultiIndex& alpha);

} // namespace holomult
