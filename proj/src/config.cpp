// SPDX-License-Identifier: Apache-2.0
#include "holomult/config.hpp"

#include <cmath>
#include <numbers>

namespace holomult::config {

namespace {

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string key(const std::string& path, const std::string& k) { return path + "." + k; }

const Json& require_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array");
    return j;
}

template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
}

Expansion parse_expansion(const Json& j, const std::string& path, Expansion fallback) {
    if (!j.contains("expansion")) return fallback;
    const Json& e = j["expansion"];
    if (e == "infinity") return Expansion::AtInfinity;
    if (e == "origin") return Expansion::AtOrigin;
    throw ConfigError(key(path, "expansion"), "expected \"infinity\" or \"origin\"");
}

std::vector<std::vector<Complex>> parse_pole_lists(const Json& j, const std::string& path) {
    require_array(j, path);
    std::vector<std::vector<Complex>> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex_list(j[i], at(path, i)));
    if (out.empty()) throw ConfigError(path, "need one pole list per variable");
    return out;
}

} // namespace

const Json& require(const Json& j, const std::string& k, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path.empty() ? "." : path, "expected an object");
    if (!j.contains(k)) throw ConfigError(key(path, k), "missing required field");
    return j[k];
}

Complex parse_complex(const Json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    if (j.is_object() && j.contains("re")) {
        const double im = j.contains("im") ? j["im"].get<double>() : 0.0;
        return {j["re"].get<double>(), im};
    }
    throw ConfigError(path, "expected a complex number: x, [re, im] or {\"re\": x, \"im\": y}");
}

std::vector<Complex> parse_complex_list(const Json& j, const std::string& path) {
    require_array(j, path);
    std::vector<Complex> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], at(path, i)));
    return out;
}

double parse_positive(const Json& j, const std::string& path) {
    if (!j.is_number() || !(j.get<double>() > 0.0)) throw ConfigError(path, "expected a positive number");
    return j.get<double>();
}

int parse_int(const Json& j, const std::string& path, int min_value) {
    if (!j.is_number_integer() || j.get<long long>() < min_value) {
        throw ConfigError(path, "expected an integer >= " + std::to_string(min_value));
    }
    return j.get<int>();
}

TruncationBox parse_box(const Json& j, const std::string& path) {
    require_array(j, path);
    if (j.empty()) throw ConfigError(path, "box needs at least one degree bound");
    std::vector<int> b;
    for (std::size_t i = 0; i < j.size(); ++i) b.push_back(parse_int(j[i], at(path, i), 0));
    return TruncationBox(std::move(b));
}

Point parse_point(const Json& j, const std::string& path) {
    auto c = parse_complex_list(j, path);
    if (c.empty()) throw ConfigError(path, "point needs at least one coordinate");
    return Point(std::move(c));
}

ProductDomain parse_domain(const Json& j, const std::string& path) {
    return guarded(path, [&] {
        if (j.is_object() && j.contains("polydisc")) {
            const Json& p = j["polydisc"];
            const std::string pp = key(path, "polydisc");
            auto centers = parse_complex_list(require(p, "centers", pp), key(pp, "centers"));
            const Json& r = require(p, "radii", pp);
            require_array(r, key(pp, "radii"));
            std::vector<double> radii;
            for (std::size_t i = 0; i < r.size(); ++i) radii.push_back(parse_positive(r[i], at(key(pp, "radii"), i)));
            if (radii.size() != centers.size()) throw ConfigError(pp, "centers and radii differ in length");
            return ProductDomain::polydisc(centers, radii);
        }
        if (j.is_object() && j.contains("uniform_polydisc")) {
            const Json& p = j["uniform_polydisc"];
            const std::string pp = key(path, "uniform_polydisc");
            const int n = parse_int(require(p, "dim", pp), key(pp, "dim"), 1);
            return ProductDomain::uniform_polydisc(static_cast<std::size_t>(n),
                                                   parse_positive(require(p, "radius", pp), key(pp, "radius")));
        }
        if (j.is_object() && j.contains("factors")) {
            const std::string pp = key(path, "factors");
            const Json& f = require_array(j["factors"], pp);
            std::vector<PlanarFactor> factors;
            for (std::size_t i = 0; i < f.size(); ++i) {
                const std::string fp = at(pp, i);
                if (f[i].contains("disc")) {
                    const Json& d = f[i]["disc"];
                    factors.push_back(PlanarFactor::disc(parse_complex(require(d, "center", fp + ".disc"), fp + ".disc.center"),
                                                         parse_positive(require(d, "radius", fp + ".disc"), fp + ".disc.radius")));
                } else if (f[i].contains("annulus")) {
                    const Json& a = f[i]["annulus"];
                    factors.push_back(PlanarFactor::annulus(
                        parse_positive(require(a, "r_in", fp + ".annulus"), fp + ".annulus.r_in"),
                        parse_positive(require(a, "r_out", fp + ".annulus"), fp + ".annulus.r_out")));
                } else {
                    throw ConfigError(fp, "expected {\"disc\": ...} or {\"annulus\": ...}");
                }
            }
            return ProductDomain(std::move(factors));
        }
        throw ConfigError(path, "expected \"polydisc\", \"uniform_polydisc\" or \"factors\"");
    });
}

CompactBox parse_compact(const Json& j, const std::string& path) {
    return guarded(path, [&] {
        if (j.is_object() && j.contains("point")) return CompactBox::point(parse_point(j["point"], key(path, "point")));
        if (j.is_object() && j.contains("factors")) {
            const std::string pp = key(path, "factors");
            const Json& f = require_array(j["factors"], pp);
            std::vector<ClosedDisc> discs;
            for (std::size_t i = 0; i < f.size(); ++i) {
                const std::string fp = at(pp, i);
                const Json& r = require(f[i], "radius", fp);
                if (!r.is_number() || r.get<double>() < 0.0) throw ConfigError(fp + ".radius", "expected a number >= 0");
                discs.push_back({parse_complex(require(f[i], "center", fp), fp + ".center"), r.get<double>()});
            }
            return CompactBox(std::move(discs));
        }
        throw ConfigError(path, "expected {\"point\": [...]} or {\"factors\": [...]}");
    });
}

Germ parse_germ(const Json& j, const std::string& path, Expansion default_expansion) {
    return guarded(path, [&] {
        if (j.is_object() && j.contains("product_poles")) {
            const Complex scale = j.contains("scale") ? parse_complex(j["scale"], key(path, "scale")) : Complex(1.0);
            return Germ::product_poles(parse_pole_lists(j["product_poles"], key(path, "product_poles")), scale);
        }
        if (j.is_object() && j.contains("rational")) {
            const Json& r = j["rational"];
            const std::string rp = key(path, "rational");
            const Expansion e = parse_expansion(r, rp, default_expansion);
            const std::string tp = key(rp, "terms");
            const Json& terms = require_array(require(r, "terms", rp), tp);
            std::vector<RationalTerm> out;
            for (std::size_t i = 0; i < terms.size(); ++i) {
                const std::string ip = at(tp, i);
                RationalTerm t;
                if (terms[i].contains("weight")) t.weight = parse_complex(terms[i]["weight"], ip + ".weight");
                const Json& fs = require_array(require(terms[i], "factors", ip), ip + ".factors");
                for (std::size_t k = 0; k < fs.size(); ++k) {
                    const std::string fp = at(ip + ".factors", k);
                    t.factors.push_back({parse_complex_list(require(fs[k], "num", fp), fp + ".num"),
                                         parse_complex_list(require(fs[k], "den", fp), fp + ".den")});
                }
                out.push_back(std::move(t));
            }
            return Germ::rational(std::move(out), e);
        }
        throw ConfigError(path, "expected \"product_poles\" or \"rational\"");
    });
}

AnalyticFunctional parse_functional(const Json& j, const std::string& path) {
    return guarded(path, [&] {
        const int nodes = j.is_object() && j.contains("nodes") ? parse_int(j["nodes"], key(path, "nodes"), 4) : 128;
        if (j.is_object() && j.contains("point_evaluation")) {
            return AnalyticFunctional::point_evaluation(parse_point(j["point_evaluation"], key(path, "point_evaluation")),
                                                        nodes);
        }
        if (j.is_object() && j.contains("zero")) {
            return AnalyticFunctional::zero(static_cast<std::size_t>(parse_int(j["zero"], key(path, "zero"), 1)), nodes);
        }
        if (j.is_object() && j.contains("kernel")) {
            return AnalyticFunctional::around(parse_germ(j["kernel"], key(path, "kernel")), nodes);
        }
        throw ConfigError(path, "expected \"point_evaluation\", \"kernel\" or \"zero\"");
    });
}

Multiplier parse_multiplier(const Json& source, const std::string& path, const ProductDomain& omega,
                            const TruncationBox& box, const EngineOptions& options) {
    if (box.dim() != omega.dim()) throw ConfigError(".box", "box and domain differ in dimension");
    return guarded(path, [&] {
        if (!source.is_object() || source.size() != 1) {
            throw ConfigError(path, "expected exactly one multiplier source");
        }
        const std::string kind = source.begin().key();
        const Json& v = source.begin().value();
        const std::string vp = key(path, kind);
        if (kind == "laurent_poles") {
            return Multiplier::from_laurent_germ(omega, Germ::product_poles(parse_pole_lists(v, vp)), box, options);
        }
        if (kind == "laurent_rational") {
            return Multiplier::from_laurent_germ(omega, parse_germ(Json{{"rational", v}}, path, Expansion::AtInfinity),
                                                 box, options);
        }
        if (kind == "taylor_rational") {
            return Multiplier::from_taylor_germ(omega, parse_germ(Json{{"rational", v}}, path, Expansion::AtOrigin),
                                                box, options);
        }
        if (kind == "dilation") return Multiplier::dilation(omega, parse_point(v, vp), box, options);
        if (kind == "identity") return Multiplier::identity(omega, box, options);
        if (kind == "zero") return Multiplier::from_sequence(omega, TaylorPoly::zero(box), options);
        if (kind == "functional") return phi(parse_functional(v, vp), omega, box, options);
        if (kind == "sequence") {
            if (v.is_array()) {
                auto c = parse_complex_list(v, vp);
                if (c.size() != box.size()) {
                    throw ConfigError(vp, "expected " + std::to_string(box.size()) + " row-major entries for the box");
                }
                return Multiplier::from_sequence(omega, TaylorPoly(box, std::move(c)), options);
            }
            if (v.is_object() && v.contains("constant")) {
                return Multiplier::from_sequence(omega, TaylorPoly::ones(box).scaled(parse_complex(v["constant"], vp + ".constant")),
                                                 options);
            }
            if (v.is_object() && v.contains("geometric")) {
                const Point c = parse_point(v["geometric"], vp + ".geometric");
                if (c.dim() != box.dim()) throw ConfigError(vp + ".geometric", "one ratio per variable");
                std::vector<Complex> s(box.size());
                for (std::size_t i = 0; i < s.size(); ++i) s[i] = c.power(box.multi_index(i));
                return Multiplier::from_sequence(omega, TaylorPoly(box, std::move(s)), options);
            }
            throw ConfigError(vp, "expected a list, {\"constant\": c} or {\"geometric\": [...]}");
        }
        throw ConfigError(vp, "unknown multiplier source");
    });
}

TaylorPoly random_polynomial(const TruncationBox& box, Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> c(box.size());
    for (auto& x : c) {
        const double re = u(rng);
        x = {re, u(rng)};
    }
    return TaylorPoly(box, std::move(c));
}

TaylorPoly parse_polynomial(const Json& j, const std::string& path, const TruncationBox& box, Rng& rng) {
    if (j.is_string() && j == "random") return random_polynomial(box, rng);
    if (!j.is_object()) throw ConfigError(path, "expected \"random\" or an object");
    const TruncationBox b = j.contains("box") ? parse_box(j["box"], key(path, "box")) : box;
    if (b.dim() != box.dim()) throw ConfigError(key(path, "box"), "dimension differs from the configuration box");
    if (j.contains("random")) return random_polynomial(b, rng);
    if (j.contains("dim") && parse_int(j["dim"], key(path, "dim"), 1) != static_cast<int>(b.dim())) {
        throw ConfigError(key(path, "dim"), "dimension differs from the box");
    }
    const Json* sparse = j.contains("coeffs") ? &j["coeffs"] : nullptr;
    if (sparse && sparse->is_array() && !sparse->empty() && (*sparse)[0].is_object() && (*sparse)[0].contains("alpha")) {
        std::vector<Complex> c(b.size());
        for (std::size_t i = 0; i < sparse->size(); ++i) {
            const std::string ep = key(path, "coeffs") + "[" + std::to_string(i) + "]";
            const Json& e = (*sparse)[i];
            if (!e.is_object()) throw ConfigError(ep, "expected {\"alpha\", \"re\", \"im\"}");
            const Json& a = require(e, "alpha", ep);
            if (!a.is_array() || a.size() != b.dim()) throw ConfigError(ep + ".alpha", "expected one entry per variable");
            std::vector<int> alpha;
            for (std::size_t k = 0; k < a.size(); ++k) {
                alpha.push_back(parse_int(a[k], ep + ".alpha[" + std::to_string(k) + "]", 0));
            }
            const MultiIndex mi(std::move(alpha));
            if (!b.contains(mi)) throw ConfigError(ep + ".alpha", "outside the box");
            c[b.flat_index(mi)] += parse_complex(e, ep);
        }
        return guarded(path, [&] { return TaylorPoly(b, std::move(c)); });
    }
    if (sparse) {
        auto c = parse_complex_list(*sparse, key(path, "coeffs"));
        if (c.size() != b.size()) {
            throw ConfigError(key(path, "coeffs"), "expected " + std::to_string(b.size()) + " row-major coefficients");
        }
        return guarded(path, [&] { return TaylorPoly(b, std::move(c)); });
    }
    throw ConfigError(path, "expected \"coeffs\" or \"random\"");
}

DeltaSequence parse_delta(const Json& j, const std::string& path, int default_length) {
    return guarded(path, [&] {
        if (j.is_array()) {
            std::vector<double> d;
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (!j[i].is_number()) throw ConfigError(at(path, i), "expected a number");
                d.push_back(j[i].get<double>());
            }
            return DeltaSequence(std::move(d));
        }
        if (j.is_object() && j.value("kind", std::string()) == "geometric") {
            const double q = parse_positive(require(j, "ratio", path), key(path, "ratio"));
            const int len = j.contains("length") ? parse_int(j["length"], key(path, "length"), 0) : default_length;
            return DeltaSequence::geometric(q, len);
        }
        throw ConfigError(path, "expected {\"kind\": \"geometric\", ...} or a list");
    });
}

std::vector<Point> random_points(const ProductDomain& omega, std::size_t count, Rng& rng, double fraction) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point> out;
    while (out.size() < count) {
        std::vector<Complex> c;
        for (const auto& f : omega.factors()) {
            const double t = 2.0 * std::numbers::pi * u(rng);
            const double s = u(rng);
            if (f.is_disc()) {
                const auto& d = f.as_disc();
                c.push_back(d.center + std::polar(fraction * d.radius * std::sqrt(s), t));
            } else {
                const auto& a = f.as_annulus();
                const double mid = 0.5 * (a.r_in + a.r_out), half = 0.5 * (a.r_out - a.r_in);
                c.push_back(std::polar(mid + fraction * half * (2.0 * s - 1.0), t));
            }
        }
        Point p(std::move(c));
        if (!p.on_hyperplane() && omega.contains(p)) out.push_back(std::move(p));
    }
    return out;
}

std::vector<Point> parse_points(const Json& j, const std::string& path, const ProductDomain& omega, Rng& rng) {
    if (j.is_object() && j.contains("points")) {
        const std::string pp = key(path, "points");
        const Json& ps = require_array(j["points"], pp);
        std::vector<Point> out;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            Point p = parse_point(ps[i], at(pp, i));
            if (p.dim() != omega.dim()) throw ConfigError(at(pp, i), "point dimension differs from the domain");
            if (!omega.contains(p)) throw ConfigError(at(pp, i), "point lies outside the domain");
            out.push_back(std::move(p));
        }
        return out;
    }
    if (j.is_object() && j.contains("grid")) {
        const Json& g = j["grid"];
        const std::string gp = key(path, "grid");
        const int r = g.contains("radii") ? parse_int(g["radii"], gp + ".radii", 1) : 5;
        const int a = g.contains("angles") ? parse_int(g["angles"], gp + ".angles", 1) : 8;
        return interior_grid(omega, r, a);
    }
    if (j.is_object() && j.contains("random")) {
        return random_points(omega, static_cast<std::size_t>(parse_int(j["random"], key(path, "random"), 1)), rng);
    }
    throw ConfigError(path, "expected \"points\", \"grid\" or \"random\"");
}

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const Point& p) {
    Json a = Json::array();
    for (Complex c : p.coords()) a.push_back(to_json(c));
    return a;
}

Json to_json(const MultiIndex& a) {
    Json j = Json::array();
    for (int v : a) j.push_back(v);
    return j;
}

} // namespace holomult::config
