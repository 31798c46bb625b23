// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "holomult/error.hpp"
#include "holomult/seminorms.hpp"

namespace holomult::config {

using Json = nlohmann::json;

/// Invalid configuration; `path` points into the JSON document (".box", ".source.sequence[3]").
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

using Rng = std::mt19937_64;

const Json& require(const Json& j, const std::string& key, const std::string& path);
Complex parse_complex(const Json& j, const std::string& path);
std::vector<Complex> parse_complex_list(const Json& j, const std::string& path);
double parse_positive(const Json& j, const std::string& path);
int parse_int(const Json& j, const std::string& path, int min_value);

TruncationBox parse_box(const Json& j, const std::string& path);
Point parse_point(const Json& j, const std::string& path);
ProductDomain parse_domain(const Json& j, const std::string& path);
CompactBox parse_compact(const Json& j, const std::string& path);
/// Kernel at infinity ("product_poles", "rational") or at the origin ("rational" with expansion "origin").
Germ parse_germ(const Json& j, const std::string& path, Expansion default_expansion = Expansion::AtInfinity);
AnalyticFunctional parse_functional(const Json& j, const std::string& path);
Multiplier parse_multiplier(const Json& source, const std::string& path, const ProductDomain& omega,
                            const TruncationBox& box, const EngineOptions& options);
/// {"coeffs": [...]} row-major over "box" (default `box`), or {"random": {...}}.
TaylorPoly parse_polynomial(const Json& j, const std::string& path, const TruncationBox& box, Rng& rng);
DeltaSequence parse_delta(const Json& j, const std::string& path, int default_length);

/// Uniform random polynomial: coefficients in the unit square.
TaylorPoly random_polynomial(const TruncationBox& box, Rng& rng);
/// Random points of Omega \ N with every coordinate at most `fraction` of the way to the factor boundary.
std::vector<Point> random_points(const ProductDomain& omega, std::size_t count, Rng& rng, double fraction = 0.9);
std::vector<Point> parse_points(const Json& j, const std::string& path, const ProductDomain& omega, Rng& rng);

Json to_json(Complex c);
Json to_json(const Point& p);
Json to_json(const MultiIndex& a);

} // namespace holomult::config
