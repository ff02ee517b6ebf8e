// Copyright (c) 2026, The aapot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aapot/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "aapot/cubature.hpp"
#include "aapot/densities.hpp"
#include "aapot/error.hpp"

namespace aapot::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15e", v);
    return buf;
}

std::string echo_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

double parse_double(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ConfigError("cannot parse number '" + std::string(s) + "'");
    }
    return v;
}

void echo_config(const std::string& command, const RunConfig& c, std::ostream& out) {
    out << "# aapot " << kVersion << '\n';
    out << "# command=" << command << '\n';
    out << "# a=" << echo_num(c.a) << '\n';
    out << "# b=" << echo_num(c.b) << '\n';
    out << "# density=" << c.density << '\n';
    out << "# lambda2=" << echo_num(c.lambda2) << '\n';
    for (double h : c.h_list) out << "# h=" << echo_num(h) << '\n';
    out << "# D=" << echo_num(c.D) << '\n';
    out << "# M=" << c.M << '\n';
    out << "# r=" << echo_num(c.r) << '\n';
    out << "# alpha=" << echo_num(c.rule.alpha) << '\n';
    out << "# beta=" << echo_num(c.rule.beta) << '\n';
    out << "# tau=" << echo_num(c.rule.tau) << '\n';
    out << "# smin=" << c.rule.s_min << '\n';
    out << "# smax=" << c.rule.s_max << '\n';
    if (command == "converge") {
        out << "# reference=" << c.reference << '\n';
        if (c.reference == "richardson") out << "# order=" << c.richardson_order << '\n';
    }
}

EllipseDomain domain_of(const RunConfig& c) { return EllipseDomain(c.a, c.b); }

}  // namespace

void RunConfig::validate() const {
    (void)domain_of(*this);
    if (density != "f" && density != "g" && density != "g_div" && density != "oscill") {
        throw ConfigError("unknown density '" + density + "' (expected f, g, g_div or oscill)");
    }
    if (h_list.empty()) throw ConfigError("at least one h is required");
    for (double h : h_list) params(h).validate();
    rule.validate();
    if (threads < 1) throw ConfigError("threads must be at least 1");
    if (reference != "exact" && reference != "finest" && reference != "richardson") {
        throw ConfigError("reference must be 'exact', 'finest' or 'richardson'");
    }
    if (richardson_order < 1) throw ConfigError("richardson order must be positive");
    for (const auto& p : points) {
        if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw ConfigError("non-finite evaluation point");
    }
    if (require_exact && density == "oscill") {
        throw ConfigError("density 'oscill' has no exact potential; --exact cannot be honoured");
    }
}

RunParams RunConfig::params(double h) const {
    RunParams p;
    p.h = h;
    p.D = D;
    p.M = M;
    p.r = r;
    p.lambda2 = lambda2;
    return p;
}

std::vector<Point2> parse_points(const std::string& text) {
    std::vector<double> vals;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) vals.push_back(parse_double(token));
        token.clear();
    };
    bool comment = false;
    for (char ch : text) {
        if (comment) {
            if (ch == '\n') comment = false;
            continue;
        }
        if (ch == '#') {
            flush();
            comment = true;
        } else if (ch == ',' || ch == ';' || std::isspace(static_cast<unsigned char>(ch))) {
            flush();
        } else {
            token.push_back(ch);
        }
    }
    flush();
    if (vals.size() % 2 != 0) throw ConfigError("points need an even number of coordinates");
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < vals.size(); i += 2) pts.push_back({vals[i], vals[i + 1]});
    return pts;
}

double parse_step(const std::string& text) {
    const auto caret = text.find('^');
    if (caret == std::string::npos) return parse_double(text);
    const double base = parse_double(std::string_view(text).substr(0, caret));
    const double expo = parse_double(std::string_view(text).substr(caret + 1));
    return std::pow(base, expo);
}

void cmd_eval(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    if (cfg.h_list.size() != 1) throw ConfigError("eval takes exactly one h");
    const EllipseDomain dom = domain_of(cfg);
    const auto density = make_density(cfg.density, dom, cfg.lambda2);
    const RunParams p = cfg.params(cfg.h_list.front());

    echo_config("eval", cfg, out);
    out << "x1,x2,exact,approx,abs_error,rel_error\n";
    if (cfg.points.empty()) return;
    EvalOptions opts;
    opts.threads = cfg.threads;
    CubatureEvaluator ev(dom, *density, p, cfg.rule, opts);
    for (const Point2& x : cfg.points) {
        PotentialResult r;
        try {
            r = ev.at_grid(grid_index_of(x, p.h));
        } catch (const ConfigError&) {
            r = ev.at_point(x);
        }
        out << num(x[0]) << ',' << num(x[1]) << ',' << opt_num(r.exact) << ',' << num(r.value)
            << ',' << opt_num(r.abs_error) << ',' << opt_num(r.rel_error) << '\n';
    }
}

void cmd_converge(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    const EllipseDomain dom = domain_of(cfg);
    const auto density = make_density(cfg.density, dom, cfg.lambda2);
    ConvergenceOptions opts;
    opts.reference = cfg.reference == "richardson" ? Reference::richardson
                     : cfg.reference == "finest"   ? Reference::finest
                                                   : Reference::exact;
    opts.richardson_order = cfg.richardson_order;
    opts.eval.threads = cfg.threads;
    // Validate grid membership before any work.
    for (double h : cfg.h_list)
        for (const Point2& x : cfg.points) (void)grid_index_of(x, h);
    std::ostringstream body;
    body << "h_inv,point,x1,x2,approx,reference,error,rate\n";
    if (!cfg.points.empty()) {
        const ConvergenceTable t = convergence_study(dom, *density, cfg.points, cfg.h_list,
                                                     cfg.params(cfg.h_list.front()), cfg.rule, opts);
        for (const auto& row : t.rows) {
            body << num(1.0 / row.h) << ',' << row.point << ',' << num(row.x[0]) << ','
                 << num(row.x[1]) << ',' << num(row.value) << ',' << num(row.reference) << ','
                 << num(row.error) << ',' << opt_num(row.rate) << '\n';
        }
        echo_config("converge", cfg, out);
        for (std::size_t q = 0; q < t.observed_order.size(); ++q)
            if (t.observed_order[q])
                out << "# observed_order point=" << q << " p=" << num(*t.observed_order[q]) << '\n';
    } else {
        echo_config("converge", cfg, out);
    }
    out << body.str();
}

void cmd_coeffs(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    if (cfg.h_list.size() != 1) throw ConfigError("coeffs takes exactly one h");
    const EllipseDomain dom = domain_of(cfg);
    const RunParams p = cfg.params(cfg.h_list.front());
    if (cfg.node_pairs.size() % 2 != 0) throw ConfigError("node pairs must come as k,m");
    echo_config("coeffs", cfg, out);
    out << "kind,ksq,k1,k2,m1,m2,rho_scaled,value\n";
    const DeNodes nodes(cfg.rule);
    for (std::int64_t key : cfg.ksq) {
        if (key < 0) throw ConfigError("ksq must be non-negative");
        const double v = coeff::a_scaled(p.M, p.n, static_cast<double>(key) / p.D, p.lam2h2D(), nodes);
        out << "a," << key << ",,,,,," << num(v) << '\n';
    }
    const double inv_sqrt_d = 1.0 / std::sqrt(p.D);
    for (std::size_t q = 0; q < cfg.node_pairs.size(); q += 2) {
        const GridIndex k = cfg.node_pairs[q];
        const GridIndex m = cfg.node_pairs[q + 1];
        const LocalFrame frame = local_frame(
            dom, {p.h * static_cast<double>(m.i), p.h * static_cast<double>(m.j)});
        const Point2 d{static_cast<double>(k.i - m.i), static_cast<double>(k.j - m.j)};
        const double a = frame.rho / p.scale();
        const double v = coeff::b_scaled(p.M, p.n, coeff::strip_point(d, frame, inv_sqrt_d), a,
                                         p.lam2h2D(), nodes);
        const std::int64_t di = k.i - m.i;
        const std::int64_t dj = k.j - m.j;
        out << "b," << di * di + dj * dj << ',' << k.i << ',' << k.j << ',' << m.i << ',' << m.j
            << ',' << num(a) << ',' << num(v) << '\n';
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Volume potentials of the modified Helmholtz operator by boundary-corrected "
                 "Gaussian cubature"};
    app.set_help_flag("--help", "Print help and exit");
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "key=value configuration file; flags override it");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::vector<std::string> h_text;
    std::string points_text;
    std::string rule_preset;
    double alpha = cfg.rule.alpha, beta = cfg.rule.beta, tau = cfg.rule.tau;
    int smin = cfg.rule.s_min, smax = cfg.rule.s_max;

    app.add_option("--a", cfg.a, "Major semi-axis")->capture_default_str();
    app.add_option("--b", cfg.b, "Minor semi-axis (b <= a)")->capture_default_str();
    app.add_option("--density", cfg.density, "f | g | g_div | oscill")->capture_default_str();
    app.add_option("--lambda2", cfg.lambda2, "lambda^2 > 0")->capture_default_str();
    app.add_option("--h", h_text, "Grid step, decimal or 2^p; repeat for a list")->take_all();
    app.add_option("--D", cfg.D, "Shape parameter D >= 1")->capture_default_str();
    app.add_option("--M", cfg.M, "Order M in {1,2,3}")->capture_default_str();
    app.add_option("--r", cfg.r, "Strip radius in units of h sqrt(D)")->capture_default_str();
    app.add_option("--rule", rule_preset, "Quadrature preset: coarse | fine (explicit values win)");
    auto* o_alpha = app.add_option("--alpha", alpha, "DE alpha")->capture_default_str();
    auto* o_beta = app.add_option("--beta", beta, "DE beta")->capture_default_str();
    auto* o_tau = app.add_option("--tau", tau, "Trapezoid step")->capture_default_str();
    auto* o_smin = app.add_option("--smin", smin, "First node index (< 0)")->capture_default_str();
    auto* o_smax = app.add_option("--smax", smax, "Last node index (> 0)")->capture_default_str();
    app.add_option("--points", points_text, "File of points or inline 'x1,x2;x1,x2'");
    app.add_option("--out", cfg.out, "Output CSV path (default: standard output)");
    app.add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();

    auto* eval = app.add_subcommand("eval", "Potential at points");
    eval->add_flag("--exact", cfg.require_exact, "Require the exact potential");
    auto* converge = app.add_subcommand("converge", "Errors and rates over an h list");
    converge->add_option("--reference", cfg.reference, "exact | finest | richardson")->capture_default_str();
    converge->add_option("--order", cfg.richardson_order, "Richardson order")->capture_default_str();
    auto* coeffs = app.add_subcommand("coeffs", "Cubature coefficients");
    std::vector<std::string> pair_text;
    coeffs->add_option("--ksq", cfg.ksq, "Interior key |k-m|^2; repeatable")->take_all();
    coeffs->add_option("--pair", pair_text, "Strip pair 'k1,k2,m1,m2'; repeatable")->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (!h_text.empty()) {
            cfg.h_list.clear();
            for (const auto& s : h_text) cfg.h_list.push_back(parse_step(s));
        }
        if (!rule_preset.empty()) {
            if (rule_preset == "coarse") cfg.rule = QuadratureRule::coarse();
            else if (rule_preset == "fine") cfg.rule = QuadratureRule::fine();
            else throw ConfigError("unknown quadrature preset '" + rule_preset + "'");
        }
        if (rule_preset.empty() || o_alpha->count()) cfg.rule.alpha = alpha;
        if (rule_preset.empty() || o_beta->count()) cfg.rule.beta = beta;
        if (rule_preset.empty() || o_tau->count()) cfg.rule.tau = tau;
        if (rule_preset.empty() || o_smin->count()) cfg.rule.s_min = smin;
        if (rule_preset.empty() || o_smax->count()) cfg.rule.s_max = smax;
        if (!points_text.empty()) {
            std::ifstream file(points_text);
            if (file) {
                std::stringstream ss;
                ss << file.rdbuf();
                cfg.points = parse_points(ss.str());
            } else {
                cfg.points = parse_points(points_text);
            }
        }
        for (const auto& s : pair_text) {
            std::vector<double> v;
            for (const auto& pt : parse_points(s)) {
                v.push_back(pt[0]);
                v.push_back(pt[1]);
            }
            if (v.size() != 4) throw ConfigError("--pair expects 'k1,k2,m1,m2'");
            for (double c : v)
                if (c != std::floor(c)) throw ConfigError("--pair entries must be integers");
            cfg.node_pairs.push_back({static_cast<std::int64_t>(v[0]), static_cast<std::int64_t>(v[1])});
            cfg.node_pairs.push_back({static_cast<std::int64_t>(v[2]), static_cast<std::int64_t>(v[3])});
        }

        std::ofstream file;
        std::ostream* sink = &out;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw ConfigError("cannot open output file '" + cfg.out + "'");
            sink = &file;
        }
        std::ostringstream buffer;
        if (*eval) cmd_eval(cfg, buffer);
        else if (*converge) cmd_converge(cfg, buffer);
        else if (*coeffs) cmd_coeffs(cfg, buffer);
        *sink << buffer.str();
        sink->flush();
        if (!*sink) throw NumericalError("failed writing output");
    } catch (const ConfigError& e) {
        err << "aapot: configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "aapot: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "aapot: error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace aapot::cli
