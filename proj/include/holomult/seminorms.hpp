// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "holomult/multiplier.hpp"

namespace holomult {

/// delta_0, ..., delta_L with cumulative products delta_(k) = delta_0 ... delta_k.
class DeltaSequence {
public:
    explicit DeltaSequence(std::vector<double> delta);
    /// delta_k = q^k for k = 0..length.
    static DeltaSequence geometric(double q, int length);

    int length() const noexcept { return static_cast<int>(delta_.size()) - 1; }
    double operator[](int k) const { return delta_.at(static_cast<std::size_t>(k)); }
    double cumulative(int k) const;
    const std::vector<double>& values() const noexcept { return delta_; }

private:
    std::vector<double> delta_;
    std::vector<double> cumulative_;
};

struct SeminormWitness {
    bool at_infinity = false;
    Point z;        // upsilon grid point (empty for a single germ)
    Point boundary; // point of the distinguished boundary (boundary branch only)
    MultiIndex alpha;
};

struct SeminormReport {
    double value = 0.0;
    SeminormWitness witness;
    TruncationBox box;
    std::size_t z_grid_size = 0;
};

struct SeminormOptions {
    int boundary_points = 64;
    /// Local Cauchy circles have this fraction of the distance to the singular set.
    double local_fraction = 0.1;
    int grid_radii = 5;
    int grid_angles = 8;
};

/// max of sup over the boundary grid of |D^a f| / a! delta_(|a|) and of the
/// Taylor coefficients of f(1/zeta) at 0 times delta_(|a|). A lower bound of
/// the supremum over the full boundary and all multi-indices.
SeminormReport germ_seminorm(const Germ& f, const ProductDomain& v, const DeltaSequence& delta,
                             const TruncationBox& box, const SeminormOptions& options = {});

/// Grid over K \ N: the centre of each factor plus `radii` radii
/// (fractions i / radii, boundary included) times `angles` angles.
std::vector<Point> compact_grid(const CompactBox& k, int radii, int angles);

using GermFamily = std::function<Germ(const Point& z)>;

/// sup over the K grid of germ_seminorm(family(z), z^{-1} Omega).
SeminormReport upsilon(const GermFamily& family, const ProductDomain& omega, const CompactBox& k,
                       const DeltaSequence& delta, const TruncationBox& box, const SeminormOptions& options = {});

/// upsilon of z -> Cauchy transform of T with its contour moved inside z^{-1} Omega.
SeminormReport functional_seminorm(const AnalyticFunctional& t, const ProductDomain& omega, const CompactBox& k,
                                   const DeltaSequence& delta, const TruncationBox& box,
                                   const SeminormOptions& options = {});

enum class TestFamily {
    Monomials,    // h_a(zeta) = delta_(|a|+n) zeta^a
    CauchyKernels // h(zeta) = delta_(|a|) / prod (w_j - zeta_j / z_j)^{a_j + 1}
};

struct ProbeReport {
    double sup_value = 0.0;
    std::size_t family_size = 0;
    std::size_t grid_size = 0;
    std::size_t witness = 0;
};

/// sup over the test family of sup over the K grid of |M h|. Cauchy kernels
/// take z on the K grid and w on 4 points (angles pi k / 2 + 0.7) of the
/// circle 1.25 times the size of each factor of z^{-1} Omega.
ProbeReport boundedness_probe(const Multiplier& m, const CompactBox& k, TestFamily family,
                              const DeltaSequence& delta, const TruncationBox& box, const SeminormOptions& options = {});

} // namespace holomult
