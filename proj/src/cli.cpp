// SPDX-License-Identifier: Apache-2.0
#include "holomult/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

namespace holomult::cli {

namespace {

using config::ConfigError;
using config::require;
using config::to_json;

std::string num(double x) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", x);
    return b;
}

struct Row {
    std::string check;
    std::string anchor;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::string detail;
};

class Report {
public:
    void add(Row r) { rows_.push_back(std::move(r)); }
    void check(std::string check, std::string anchor, double err, double tol, std::string detail = {}) {
        add(Row{std::move(check), std::move(anchor), err, tol, err <= tol, std::move(detail)});
    }
    bool pass() const {
        return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.pass; });
    }
    Json rows() const {
        Json a = Json::array();
        for (const auto& r : rows_) {
            Json j{{"check", r.check}, {"anchor", r.anchor}, {"max_error", r.max_error},
                   {"tolerance", r.tolerance}, {"pass", r.pass}};
            if (!r.detail.empty()) j["detail"] = r.detail;
            a.push_back(std::move(j));
        }
        return a;
    }

private:
    std::vector<Row> rows_;
};

struct Context {
    const Json& cfg;
    TruncationBox box;
    EngineOptions options;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    config::Rng rng;
    Json env = Json::object();
};

Context make_context(const Json& cfg, const Overrides& ov, bool needs_box = true) {
    if (!cfg.is_object()) throw ConfigError(".", "config must be a JSON object");
    Context c{cfg, {}, {}, 1e-9, 1, config::Rng(1), Json::object()};
    if (ov.box) {
        c.box = *ov.box;
    } else if (needs_box) {
        c.box = config::parse_box(require(cfg, "box", ""), ".box");
    }
    if (ov.nodes) {
        c.options.nodes = *ov.nodes;
    } else if (cfg.contains("nodes")) {
        c.options.nodes = config::parse_int(cfg["nodes"], ".nodes", 0);
    }
    if (c.options.nodes != 0 && c.options.nodes < 4) throw ConfigError(".nodes", "node count must be 0 (auto) or >= 4");
    if (ov.tol) {
        c.tol = *ov.tol;
    } else if (cfg.contains("tol")) {
        c.tol = config::parse_positive(cfg["tol"], ".tol");
    }
    if (ov.seed) {
        c.seed = *ov.seed;
    } else if (cfg.contains("seed")) {
        c.seed = static_cast<std::uint64_t>(config::parse_int(cfg["seed"], ".seed", 0));
    }
    c.rng.seed(c.seed);
    if (needs_box || ov.box) c.env["box"] = Json(std::vector<int>(c.box.bounds().begin(), c.box.bounds().end()));
    c.env["nodes"] = c.options.nodes;
    c.env["seed"] = c.seed;
    c.env["tolerance"] = c.tol;
    return c;
}

ProductDomain domain_of(const Context& c, const std::string& k = "domain") {
    ProductDomain omega = config::parse_domain(require(c.cfg, k, ""), "." + k);
    if (c.box.dim() != 0 && c.box.dim() != omega.dim()) throw ConfigError(".box", "box and domain differ in dimension");
    return omega;
}

Multiplier multiplier_of(const Context& c, const ProductDomain& omega, const std::string& k = "source") {
    return config::parse_multiplier(require(c.cfg, k, ""), "." + k, omega, c.box, c.options);
}

std::vector<Point> points_of(Context& c, const ProductDomain& omega, const std::string& k, std::size_t fallback) {
    if (c.cfg.contains(k)) return config::parse_points(c.cfg[k], "." + k, omega, c.rng);
    return config::random_points(omega, fallback, c.rng);
}

std::vector<TaylorPoly> functions_of(Context& c) {
    std::vector<TaylorPoly> fs;
    if (c.cfg.contains("function")) {
        fs.push_back(config::parse_polynomial(c.cfg["function"], ".function", c.box, c.rng));
        return fs;
    }
    const int count = c.cfg.contains("functions") ? config::parse_int(c.cfg["functions"], ".functions", 1) : 3;
    for (int i = 0; i < count; ++i) fs.push_back(config::random_polynomial(c.box, c.rng));
    return fs;
}

/// Laurent germ at infinity attached to a multiplier, whatever its provenance.
Germ laurent_germ_of(const Multiplier& m) {
    if (const auto* p = std::get_if<FromLaurentGerm>(&m.provenance())) return p->germ;
    if (const auto* p = std::get_if<FromFunctional>(&m.provenance())) return p->functional.kernel();
    if (const auto* p = std::get_if<FromTaylorGerm>(&m.provenance())) return reciprocal_pairing(p->germ);
    return psi_of(m);
}

Germ taylor_germ_of(const Multiplier& m) {
    if (const auto* p = std::get_if<FromTaylorGerm>(&m.provenance())) return p->germ;
    if (const auto* p = std::get_if<FromLaurentGerm>(&m.provenance())) return reciprocal_pairing(p->germ);
    if (const auto* p = std::get_if<FromFunctional>(&m.provenance())) return reciprocal_pairing(p->functional.kernel());
    return psi_hat_of(m);
}

bool origin_in_every_factor(const ProductDomain& omega) {
    return std::all_of(omega.factors().begin(), omega.factors().end(), [](const PlanarFactor& f) { return f.contains(0.0); });
}

double max_rel(const TaylorPoly& got, const TaylorPoly& expected) {
    double e = 0.0;
    const TruncationBox b = got.box().intersect(expected.box());
    for (std::size_t i = 0; i < b.size(); ++i) {
        const MultiIndex a = b.multi_index(i);
        e = std::max(e, relative_error(got.coeff(a), expected.coeff(a)));
    }
    return e;
}

std::string csv_header_points(std::size_t n) {
    std::string h;
    for (std::size_t j = 1; j <= n; ++j) h += "z" + std::to_string(j) + "_re,z" + std::to_string(j) + "_im,";
    return h;
}

std::string csv_point(const Point& z) {
    std::string s;
    for (Complex c : z.coords()) s += num(c.real()) + "," + num(c.imag()) + ",";
    return s;
}

std::string csv_header_alpha(std::size_t n) {
    std::string h;
    for (std::size_t j = 1; j <= n; ++j) h += "alpha" + std::to_string(j) + ",";
    return h;
}

std::string csv_alpha(const MultiIndex& a) {
    std::string s;
    for (int v : a) s += std::to_string(v) + ",";
    return s;
}

// ---- apply -------------------------------------------------------------------

Outcome cmd_apply(Context& c, Report& rep) {
    const ProductDomain omega = domain_of(c);
    const Multiplier m = multiplier_of(c, omega);
    TaylorPoly f = c.cfg.contains("function") ? config::parse_polynomial(c.cfg["function"], ".function", c.box, c.rng)
                                              : config::random_polynomial(c.box, c.rng);
    const std::vector<Point> zs = points_of(c, omega, "z", 25);
    const std::string path = c.cfg.value("path", std::string("auto"));
    std::function<Complex(const Point&)> value;
    if (path == "auto") {
        value = [&](const Point& z) { return evaluate_at(m, f, z); };
    } else if (path == "laurent") {
        const Germ psi = laurent_germ_of(m);
        value = [&, psi](const Point& z) { return apply_laurent(psi, f, z, omega, c.options); };
    } else if (path == "taylor") {
        const Germ psi_hat = taylor_germ_of(m);
        value = [&, psi_hat](const Point& z) { return apply_taylor(psi_hat, f, z, omega, c.options); };
    } else if (path == "sequence") {
        const TaylorPoly g = apply_sequence(m, f);
        value = [g](const Point& z) { return eval(g, z); };
    } else {
        throw ConfigError(".path", "expected \"auto\", \"laurent\", \"taylor\" or \"sequence\"");
    }
    c.env["path"] = path;
    c.env["z_samples"] = zs.size();

    const TaylorPoly oracle_poly = apply_sequence(m, f);
    std::string csv = csv_header_points(omega.dim()) + "value_re,value_im,oracle_re,oracle_im,abs_err\n";
    double worst = 0.0;
    for (const Point& z : zs) {
        const Complex v = value(z);
        const Complex o = eval(oracle_poly, z);
        worst = std::max(worst, relative_error(v, o));
        csv += csv_point(z) + num(v.real()) + "," + num(v.imag()) + "," + num(o.real()) + "," + num(o.imag()) + "," +
               num(std::abs(v - o)) + "\n";
    }
    rep.check("apply-vs-coefficient-oracle", path == "taylor" ? "taylor-contour-formula" : "laurent-contour-formula",
              worst, c.tol);
    return {0, {}, csv};
}

// ---- verify ------------------------------------------------------------------

void trapezoid_row(Report& rep) {
    // (1/(2 pi i)) integral over |zeta| = 1 of 1/(zeta - 0.3) = 1.
    const Evaluable g = [](std::span<const Complex> w) { return 1.0 / (w[0] - 0.3); };
    const PolyContour unit{{{Circle{0.0, 1.0, +1}}}};
    double prev = 0.0;
    bool ok = true;
    double last = 0.0;
    std::string detail;
    for (int n : {8, 16, 32, 64}) {
        const double e = std::abs(contour_integral(g, unit, n) - 1.0);
        detail += (detail.empty() ? "" : ", ") + std::string("N=") + std::to_string(n) + ": " + num(e);
        if (prev > 1e-13 && !(e <= prev / 4.0) && e > 1e-13) ok = false;
        prev = e;
        last = e;
    }
    rep.add(Row{"trapezoid-convergence", "trapezoid-convergence", last, 1e-13, ok && last <= 1e-13, detail});
}

Outcome cmd_verify(Context& c, Report& rep) {
    const ProductDomain omega = domain_of(c);
    const Multiplier m = multiplier_of(c, omega);
    const std::vector<Point> zs = points_of(c, omega, "z", 25);
    const std::vector<TaylorPoly> fs = functions_of(c);
    c.env["z_samples"] = zs.size();
    c.env["functions"] = fs.size();
    const double tol = c.tol;

    auto guarded_row = [&](const std::string& name, const std::string& anchor, double row_tol,
                           const std::function<double()>& body) {
        try {
            rep.check(name, anchor, body(), row_tol);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            rep.add(Row{name, anchor, std::numeric_limits<double>::infinity(), row_tol, false, e.what()});
        }
    };

    guarded_row("eigencheck", "monomial-eigenvectors", tol,
                [&] { return eigencheck_all(m, m.box().diameter(), zs).max_rel_error; });

    std::vector<std::vector<Complex>> oracle(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const TaylorPoly g = apply_sequence(m, fs[i]);
        for (const Point& z : zs) oracle[i].push_back(eval(g, z));
    }
    const Germ psi = laurent_germ_of(m);
    std::vector<std::vector<Complex>> laurent(fs.size());
    guarded_row("laurent-formula-vs-sequence", "laurent-contour-formula", tol, [&] {
        double e = 0.0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            for (std::size_t k = 0; k < zs.size(); ++k) {
                laurent[i].push_back(apply_laurent(psi, fs[i], zs[k], omega, c.options));
                e = std::max(e, relative_error(laurent[i][k], oracle[i][k]));
            }
        }
        return e;
    });
    if (origin_in_every_factor(omega)) {
        guarded_row("taylor-formula-vs-sequence-and-laurent", "taylor-contour-formula", tol, [&] {
            const Germ psi_hat = taylor_germ_of(m);
            double e = 0.0;
            for (std::size_t i = 0; i < fs.size(); ++i) {
                for (std::size_t k = 0; k < zs.size(); ++k) {
                    const Complex t = apply_taylor(psi_hat, fs[i], zs[k], omega, c.options);
                    e = std::max(e, relative_error(t, oracle[i][k]));
                    if (k < laurent[i].size()) e = std::max(e, relative_error(t, laurent[i][k]));
                }
            }
            return e;
        });
    } else {
        c.env["skipped"].push_back("taylor-formula: 0 is not in every factor");
    }

    const bool has_one = omega.contains(Point::ones(omega.dim()));
    if (has_one) {
        guarded_row("phi-theta-roundtrip", "functional-multiplier-bijection", tol, [&] {
            return max_rel(phi(theta(m), omega, m.box(), c.options).sequence(), m.sequence());
        });
        guarded_row("theta-phi-roundtrip", "functional-multiplier-bijection", tol, [&] {
            const AnalyticFunctional t = theta(m);
            const TaylorPoly before = moments(t, m.box());
            const TaylorPoly after = moments(theta(phi(t, omega, m.box(), c.options)), m.box());
            return moment_discrepancy(after, before, exact_moments(t, m.box()).value_or(before));
        });
    } else {
        c.env["skipped"].push_back("roundtrips: (1, ..., 1) is not in the domain");
    }

    const Multiplier mm = compose(m, m);
    guarded_row("composition-sequence", "hadamard-composition", 0.0, [&] {
        double e = 0.0;
        for (std::size_t i = 0; i < m.box().size(); ++i) {
            const Complex s = m.sequence().coeffs()[i];
            e = std::max(e, std::abs(mm.sequence().coeffs()[i] - s * s));
        }
        return e;
    });
    guarded_row("composition-operator", "hadamard-composition", tol, [&] {
        double e = 0.0;
        for (const auto& f : fs) {
            const TaylorPoly lhs = apply_sequence(mm, f);
            const TaylorPoly inner = apply_sequence(m, f);
            for (const Point& z : zs) e = std::max(e, relative_error(evaluate_at(m, inner, z), eval(lhs, z)));
        }
        return e;
    });

    guarded_row("duality-roundtrip", "cauchy-transform-duality", tol, [&] {
        const AnalyticFunctional t = has_one ? theta(m) : AnalyticFunctional::around(psi, 128);
        return duality_roundtrip(t, m.box()).max_rel_error;
    });

    std::vector<std::size_t> zero_axes;
    for (std::size_t j = 0; j < omega.dim(); ++j) {
        if (omega.factor(j).contains(0.0)) zero_axes.push_back(j);
    }
    if (!zero_axes.empty()) {
        guarded_row("hyperplane-evaluation", "hyperplane-cauchy-mean", tol, [&] {
            double e = 0.0;
            const std::size_t count = std::min<std::size_t>(zs.size(), 5);
            for (std::size_t k = 0; k < count; ++k) {
                std::vector<Complex> p(zs[k].coords().begin(), zs[k].coords().end());
                p[zero_axes[k % zero_axes.size()]] = 0.0;
                const Point z(std::move(p));
                for (std::size_t i = 0; i < fs.size(); ++i) {
                    e = std::max(e, relative_error(evaluate_at(m, fs[i], z), eval(apply_sequence(m, fs[i]), z)));
                }
            }
            return e;
        });
    }

    guarded_row("linearity", "plumbing", tol * 1e-2, [&] {
        const Complex a(0.7, -0.2), b(-1.1, 0.4);
        double e = 0.0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const TaylorPoly& f = fs[i];
            const TaylorPoly& g = fs[(i + 1) % fs.size()];
            const TaylorPoly h = f.scaled(a) + g.scaled(b);
            for (std::size_t k = 0; k < std::min<std::size_t>(zs.size(), 5); ++k) {
                const Complex lhs = evaluate_at(m, h, zs[k]);
                const Complex rhs = a * evaluate_at(m, f, zs[k]) + b * evaluate_at(m, g, zs[k]);
                e = std::max(e, relative_error(lhs, rhs));
            }
        }
        return e;
    });

    trapezoid_row(rep);

    const int extraction_nodes = c.options.nodes > 0 ? c.options.nodes : std::max(default_nodes(m.box()), 128);
    c.env["extraction_nodes"] = extraction_nodes;
    auto extraction_row = [&](const std::string& name, const std::string& anchor,
                              const std::function<TaylorPoly()>& body) {
        try {
            rep.check(name, anchor, max_rel(body(), m.sequence()), tol);
        } catch (const NodeCountError& e) {
            rep.add(Row{name, anchor, std::numeric_limits<double>::infinity(), tol, false,
                        std::string("aliasing: ") + e.what()});
        } catch (const Error& e) {
            rep.add(Row{name, anchor, std::numeric_limits<double>::infinity(), tol, false, e.what()});
        }
    };
    extraction_row("taylor-coefficient-extraction", "taylor-germ-coefficients", [&] {
        const Germ psi_hat = taylor_germ_of(m);
        std::vector<double> radii;
        for (std::size_t j = 0; j < omega.dim(); ++j) {
            const double d = psi_hat.singular_distance(j, 0.0);
            radii.push_back(std::isfinite(d) ? d / c.options.contour_ratio : psi_hat.scale_hint(j).value_or(1.0));
        }
        return taylor_coefficients(psi_hat.evaluator(), Point::zeros(omega.dim()), radii, m.box(), extraction_nodes);
    });
    extraction_row("laurent-moment-extraction", "laurent-germ-coefficients", [&] {
        std::vector<double> radii;
        for (std::size_t j = 0; j < omega.dim(); ++j) {
            const double ext = psi.singular_extent(j, 0.0);
            radii.push_back(ext > 0.0 ? c.options.contour_ratio * ext : psi.scale_hint(j).value_or(1.0));
        }
        return laurent_moments(psi.evaluator(), radii, m.box(), extraction_nodes);
    });
    return {};
}

// ---- moments / transform -----------------------------------------------------

Outcome cmd_moments(Context& c, Report& rep) {
    const AnalyticFunctional t = config::parse_functional(require(c.cfg, "functional", ""), ".functional");
    if (t.dim() != c.box.dim()) throw ConfigError(".box", "box and functional differ in dimension");
    const TaylorPoly mom = moments(t, c.box);
    std::string csv = csv_header_alpha(t.dim()) + "moment_re,moment_im\n";
    for (std::size_t i = 0; i < mom.coeffs().size(); ++i) {
        const Complex v = mom.coeffs()[i];
        csv += csv_alpha(c.box.multi_index(i)) + num(v.real()) + "," + num(v.imag()) + "\n";
    }
    const Json& spec = c.cfg["functional"];
    if (spec.contains("point_evaluation")) {
        const Point a = config::parse_point(spec["point_evaluation"], ".functional.point_evaluation");
        double e = 0.0;
        for (std::size_t i = 0; i < mom.coeffs().size(); ++i) {
            e = std::max(e, relative_error(mom.coeffs()[i], a.power(c.box.multi_index(i))));
        }
        rep.check("point-evaluation-moments", "functional-multiplier-bijection", e, c.tol);
    }
    return {0, {}, csv};
}

Outcome cmd_transform(Context& c, Report& rep) {
    const AnalyticFunctional t = config::parse_functional(require(c.cfg, "functional", ""), ".functional");
    if (t.dim() != c.box.dim()) throw ConfigError(".box", "box and functional differ in dimension");
    if (c.cfg.value("roundtrip", false)) {
        const RoundtripReport r = duality_roundtrip(t, c.box);
        std::string csv = csv_header_alpha(t.dim()) + "moment_re,moment_im,roundtrip_re,roundtrip_im,abs_diff\n";
        for (std::size_t i = 0; i < r.before.coeffs().size(); ++i) {
            const Complex a = r.before.coeffs()[i], b = r.after.coeffs()[i];
            csv += csv_alpha(c.box.multi_index(i)) + num(a.real()) + "," + num(a.imag()) + "," + num(b.real()) + "," +
                   num(b.imag()) + "," + num(std::abs(a - b)) + "\n";
        }
        rep.check("duality-roundtrip", "cauchy-transform-duality", r.max_rel_error, c.tol);
        return {0, {}, csv};
    }
    const Json& pts = require(c.cfg, "points", "");
    if (!pts.is_array()) throw ConfigError(".points", "expected an array of points");
    std::string csv = csv_header_points(t.dim()) + "value_re,value_im\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string path = ".points[" + std::to_string(i) + "]";
        const Point z = config::parse_point(pts[i], path);
        if (z.dim() != t.dim()) throw ConfigError(path, "point dimension differs from the functional");
        Complex v;
        try {
            v = cauchy_transform(t, z);
        } catch (const DomainError& e) {
            throw ConfigError(path, e.what());
        }
        csv += csv_point(z) + num(v.real()) + "," + num(v.imag()) + "\n";
    }
    rep.add(Row{"transform-evaluated", "cauchy-transform-duality", 0.0, c.tol, true, {}});
    return {0, {}, csv};
}

// ---- seminorm ----------------------------------------------------------------

Outcome cmd_seminorm(Context& c, Report& rep) {
    const int n = static_cast<int>(c.box.dim());
    const DeltaSequence delta = c.cfg.contains("delta")
                                    ? config::parse_delta(c.cfg["delta"], ".delta", c.box.diameter() + n)
                                    : DeltaSequence::geometric(0.5, c.box.diameter() + n);
    SeminormOptions opt;
    if (c.cfg.contains("boundary_points")) opt.boundary_points = config::parse_int(c.cfg["boundary_points"], ".boundary_points", 4);
    if (c.cfg.contains("grid")) {
        const Json& g = c.cfg["grid"];
        if (g.contains("radii")) opt.grid_radii = config::parse_int(g["radii"], ".grid.radii", 1);
        if (g.contains("angles")) opt.grid_angles = config::parse_int(g["angles"], ".grid.angles", 1);
    }
    SeminormReport r;
    if (c.cfg.contains("germ")) {
        const Germ f = config::parse_germ(c.cfg["germ"], ".germ");
        const ProductDomain v = config::parse_domain(require(c.cfg, "V", ""), ".V");
        if (v.dim() != c.box.dim() || f.dim() != c.box.dim()) throw ConfigError(".box", "box, germ and V differ in dimension");
        r = germ_seminorm(f, v, delta, c.box, opt);
    } else if (c.cfg.contains("functional")) {
        const AnalyticFunctional t = config::parse_functional(c.cfg["functional"], ".functional");
        const ProductDomain omega = domain_of(c);
        const CompactBox k = config::parse_compact(require(c.cfg, "compact", ""), ".compact");
        if (t.dim() != omega.dim() || k.dim() != omega.dim()) throw ConfigError(".compact", "dimension mismatch");
        r = functional_seminorm(t, omega, k, delta, c.box, opt);
    } else {
        throw ConfigError(".germ", "expected \"germ\" (with \"V\") or \"functional\" (with \"domain\" and \"compact\")");
    }
    Json data{{"value", r.value},
              {"at_infinity", r.witness.at_infinity},
              {"alpha", to_json(r.witness.alpha)},
              {"z_grid_size", r.z_grid_size}};
    if (r.witness.z.dim() > 0) data["z"] = to_json(r.witness.z);
    if (r.witness.boundary.dim() > 0) data["boundary_point"] = to_json(r.witness.boundary);
    if (c.cfg.contains("expected")) {
        const double want = c.cfg["expected"].get<double>();
        rep.check("seminorm-value", "delta-seminorm", std::abs(r.value - want), c.tol);
    } else {
        rep.add(Row{"seminorm-value", "delta-seminorm", 0.0, c.tol, std::isfinite(r.value), {}});
    }
    c.env["seminorm"] = data;
    return {0, {}, data.dump(2) + "\n"};
}

// ---- compose -----------------------------------------------------------------

Outcome cmd_compose(Context& c, Report& rep) {
    const ProductDomain omega = domain_of(c);
    const Multiplier m1 = multiplier_of(c, omega, "first");
    const Multiplier m2 = multiplier_of(c, omega, "second");
    const Multiplier mc = compose(m1, m2);
    std::string csv = csv_header_alpha(omega.dim()) +
                      "first_re,first_im,second_re,second_im,composite_re,composite_im\n";
    double exact = 0.0;
    for (std::size_t i = 0; i < c.box.size(); ++i) {
        const Complex a = m1.sequence().coeffs()[i], b = m2.sequence().coeffs()[i], p = mc.sequence().coeffs()[i];
        exact = std::max(exact, std::abs(p - a * b));
        csv += csv_alpha(c.box.multi_index(i)) + num(a.real()) + "," + num(a.imag()) + "," + num(b.real()) + "," +
               num(b.imag()) + "," + num(p.real()) + "," + num(p.imag()) + "\n";
    }
    rep.check("composition-sequence", "hadamard-composition", exact, 0.0);
    const std::vector<TaylorPoly> fs = functions_of(c);
    const std::vector<Point> zs = points_of(c, omega, "z", 10);
    double e = 0.0;
    for (const auto& f : fs) {
        const TaylorPoly lhs = apply_sequence(mc, f);
        const TaylorPoly inner = apply_sequence(m2, f);
        for (const Point& z : zs) e = std::max(e, relative_error(evaluate_at(m1, inner, z), eval(lhs, z)));
    }
    rep.check("composition-operator", "hadamard-composition", e, c.tol);
    c.env["z_samples"] = zs.size();
    c.env["functions"] = fs.size();
    return {0, {}, csv};
}

// ---- bench -------------------------------------------------------------------

Outcome cmd_bench(Context& c, Report& rep) {
    const Complex pole = c.cfg.contains("pole") ? config::parse_complex(c.cfg["pole"], ".pole") : Complex(0.3);
    const double radius = c.cfg.contains("radius") ? config::parse_positive(c.cfg["radius"], ".radius") : 1.0;
    if (!(std::abs(pole) < radius)) throw ConfigError(".pole", "pole must lie inside the circle");
    std::vector<int> counts{4, 8, 16, 32, 64, 128, 256, 512, 1024};
    if (c.options.nodes > 0) counts = {c.options.nodes};
    const Evaluable g = [pole](std::span<const Complex> w) { return 1.0 / (w[0] - pole); };
    const PolyContour circle{{{Circle{0.0, radius, +1}}}};
    std::string csv = "nodes,abs_err,seconds\n";
    double last = 0.0;
    for (int n : counts) {
        const auto t0 = std::chrono::steady_clock::now();
        const double e = std::abs(contour_integral(g, circle, n) - 1.0);
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        csv += std::to_string(n) + "," + num(e) + "," + num(dt) + "\n";
        last = e;
    }
    rep.check("trapezoid-final-error", "trapezoid-convergence", last, std::max(c.tol, 1e-13));
    return {0, {}, csv};
}

} // namespace

Outcome run(const std::string& command, const Json& cfg, const Overrides& overrides) {
    Report rep;
    Outcome out;
    Json env = Json::object();
    try {
        const bool needs_box = command != "bench";
        Context c = make_context(cfg, overrides, needs_box);
        if (command == "apply") {
            out = cmd_apply(c, rep);
        } else if (command == "verify") {
            out = cmd_verify(c, rep);
        } else if (command == "moments") {
            out = cmd_moments(c, rep);
        } else if (command == "transform") {
            out = cmd_transform(c, rep);
        } else if (command == "seminorm") {
            out = cmd_seminorm(c, rep);
        } else if (command == "compose") {
            out = cmd_compose(c, rep);
        } else if (command == "bench") {
            out = cmd_bench(c, rep);
        } else {
            throw ConfigError(".", "unknown command \"" + command + "\"");
        }
        env = c.env;
        out.exit_code = rep.pass() ? 0 : 1;
    } catch (const ConfigError& e) {
        out.exit_code = 2;
        out.data.clear();
        out.report = Json{{"command", command}, {"status", "config-error"}, {"path", e.path()}, {"error", e.what()}};
        return out;
    } catch (const Error& e) {
        out.exit_code = 1;
        rep.add(Row{"run", "plumbing", std::numeric_limits<double>::infinity(), 0.0, false, e.what()});
    }
    out.report = Json{{"command", command},
                      {"status", out.exit_code == 0 ? "pass" : "fail"},
                      {"rows", rep.rows()},
                      {"environment", env}};
    return out;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiplier engine batch runner"};
    app.require_subcommand(1);
    std::string config_path, out_path, box_text;
    int nodes = -1;
    long long seed = -1;
    double tol = -1.0;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"apply", "evaluate M(f) on a z-grid against the coefficient oracle"},
        {"verify", "run the invariant battery on one multiplier"},
        {"moments", "moment table of an analytic functional"},
        {"transform", "Cauchy transform values or the duality roundtrip"},
        {"seminorm", "delta-seminorm of a germ or functional"},
        {"compose", "composition of two multipliers"},
        {"bench", "trapezoid convergence table"}};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_path, "output file for CSV/JSON data");
        sub->add_option("--nodes", nodes, "quadrature nodes per circle (0 = automatic)");
        sub->add_option("--box", box_text, "truncation box D1,D2,...");
        sub->add_option("--seed", seed, "seed for randomized checks");
        sub->add_option("--tol", tol, "tolerance");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    auto config_error = [&](const std::string& path, const std::string& what) {
        out << Json{{"command", command}, {"status", "config-error"}, {"path", path}, {"error", what}}.dump(2) << "\n";
        return 2;
    };
    Overrides ov;
    if (nodes >= 0) ov.nodes = nodes;
    if (seed >= 0) ov.seed = static_cast<std::uint64_t>(seed);
    if (tol >= 0.0) {
        if (!(tol > 0.0)) return config_error("--tol", "tolerance must be positive");
        ov.tol = tol;
    }
    if (!box_text.empty()) {
        std::vector<int> b;
        std::stringstream ss(box_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                const int v = std::stoi(item, &used);
                if (used != item.size() || v < 0) throw std::invalid_argument(item);
                b.push_back(v);
            } catch (const std::exception&) {
                return config_error("--box", "expected comma-separated non-negative integers");
            }
        }
        if (b.empty()) return config_error("--box", "empty box");
        ov.box = TruncationBox(std::move(b));
    }
    std::ifstream in(config_path);
    if (!in) return config_error(config_path, "cannot open config file");
    Json cfg;
    try {
        cfg = Json::parse(in);
    } catch (const Json::exception& e) {
        return config_error(".", std::string("malformed JSON: ") + e.what());
    }
    Outcome o;
    try {
        o = run(command, cfg, ov);
    } catch (const Json::exception& e) {
        return config_error(".", std::string("config value has the wrong type: ") + e.what());
    }
    out << o.report.dump(2) << "\n";
    if (!out_path.empty() && o.exit_code != 2) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            err << "cannot write " << out_path << "\n";
            return 2;
        }
        f << (o.data.empty() ? o.report.dump(2) + "\n" : o.data);
    }
    return o.exit_code;
}

} // namespace holomult::cli
