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

// Acceptance run: one PASS/FAIL line per criterion, followed by the
// measurements behind it. Exit status is non-zero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "aapot/cubature.hpp"
#include "aapot/densities.hpp"
#include "aapot/genfun.hpp"
#include "aapot/kernels.hpp"
#include "aapot/quadrature.hpp"
#include "support/oracles.hpp"

using namespace aapot;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& note) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "ok    " : "MISS  ") + note);
    }
    void info(const std::string& note) { notes.push_back("      " + note); }
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunParams make_params(double h, double D, int M, double lambda2) {
    RunParams p;
    p.h = h;
    p.D = D;
    p.M = M;
    p.r = 6.0;
    p.lambda2 = lambda2;
    return p;
}

std::vector<double> levels(int from, int to) {
    std::vector<double> hs;
    for (int p = from; p <= to; ++p) hs.push_back(std::ldexp(1.0, -p));
    return hs;
}

std::vector<double> rates_of(const ConvergenceTable& t) {
    std::vector<double> r;
    for (const auto& row : t.rows)
        if (row.rate) r.push_back(*row.rate);
    return r;
}

// Criterion 1: circle R = 1.5, lambda^2 = 2.
Outcome circle_values() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const EllipseDomain dom(1.5, 1.5);
    const DensityF f(dom, 2.0);
    CubatureEvaluator ev(dom, f, make_params(1.0 / 128, 3.0, 3, 2.0), QuadratureRule::coarse());
    const PotentialResult c = ev.at_grid({0, 0});
    const PotentialResult q = ev.at_grid({128, 128});
    const double dt = seconds_since(t0);
    o.require(std::fabs(*c.exact - 0.8414709848) <= 1e-10, fmt("exact u(0,0) = %.10f (ref 0.8414709848)", *c.exact));
    o.require(std::fabs(*c.rel_error) <= 1e-8,
              fmt("(0,0): approx %.12f, rel error %.3e, tol 1e-8 (ref 4.70e-11)", c.value, *c.rel_error));
    o.require(std::fabs(*q.exact - 0.0123453654) <= 1e-10, fmt("exact u(1,1) = %.10f (ref 0.0123453654)", *q.exact));
    o.require(std::fabs(*q.rel_error) <= 1e-6,
              fmt("(1,1): approx %.12e, rel error %.3e, tol 1e-6 (ref 5.81e-9)", q.value, *q.rel_error));
    o.require(dt <= 300.0, fmt("runtime %.1f s, budget 300 s", dt));
    return o;
}

// Criterion 2: ellipse 1.5 x 0.5, lambda^2 = 0.2.
Outcome ellipse_value() {
    Outcome o;
    const EllipseDomain dom(1.5, 0.5);
    const DensityF f(dom, 0.2);
    CubatureEvaluator ev(dom, f, make_params(1.0 / 128, 3.0, 3, 0.2), QuadratureRule::coarse());
    const PotentialResult c = ev.at_grid({0, 0});
    o.require(std::fabs(*c.rel_error) <= 3e-5,
              fmt("(0,0): exact %.10f approx %.12f, rel error %.3e, tol 3e-5 (ref 2.86e-7)", *c.exact, c.value,
                  *c.rel_error));
    return o;
}

// Criterion 3: density f rates at (0.5, 0).
Outcome f_rates() {
    Outcome o;
    const std::vector<Point2> pt{{0.5, 0.0}};
    const auto hs = levels(4, 7);
    struct Block {
        int M;
        double b;
        double target, tol;
        std::array<double, 3> ref;
    };
    for (const Block& blk : {Block{1, 1.5, 2.0, 0.05, {1.997, 2.000, 2.000}}, Block{3, 1.0, 6.0, 0.3, {6.189, 6.066, 6.018}}}) {
        const EllipseDomain dom(1.5, blk.b);
        const DensityF f(dom, 1.0);
        const auto t = convergence_study(dom, f, pt, hs, make_params(hs[0], 4.0, blk.M, 1.0), QuadratureRule::fine());
        const auto r = rates_of(t);
        for (std::size_t i = 0; i < r.size(); ++i) {
            o.require(std::fabs(r[i] - blk.target) <= blk.tol,
                      fmt("M=%d b=%.1f h=2^-%zu: error %.3e rate %.3f, target %.1f +- %.2f (ref %.3f)", blk.M, blk.b,
                          i + 5, t.rows[i + 1].error, r[i], blk.target, blk.tol, blk.ref[i]));
        }
    }
    return o;
}

// Criterion 4: density g rates at (0,0), M = 2, compared row by row.
Outcome g_rates() {
    Outcome o;
    const std::array<double, 4> ref{2.952, 3.599, 3.882, 3.969};
    const std::vector<Point2> pt{{0.0, 0.0}};
    const auto hs = levels(2, 6);
    const EllipseDomain dom(1.5, 1.5);
    for (const char* name : {"g", "g_div"}) {
        const auto dens = make_density(name, dom, 1.0);
        const auto t = convergence_study(dom, *dens, pt, hs, make_params(hs[0], 4.0, 2, 1.0), QuadratureRule::fine());
        const auto r = rates_of(t);
        const bool official = std::string(name) == "g";
        for (std::size_t i = 0; i < r.size(); ++i) {
            const std::string note = fmt("density %s h=2^-%zu: error %.3e rate %.3f, ref %.3f +- 0.3", name, i + 3,
                                         t.rows[i + 1].error, r[i], ref[i]);
            if (official) o.require(std::fabs(r[i] - ref[i]) <= 0.3, note);
            else o.info(note + (std::fabs(r[i] - ref[i]) <= 0.3 ? " (within)" : " (outside)"));
        }
    }
    o.info("density g is the specified u = w^2 (1 + |x|^2); g_div is the u = w^2 / (1 + |x|^2) reading, reported only");
    return o;
}

// Criterion 5: oscillatory density, finest level as reference.
Outcome oscill_rate() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Point2> pt{{0.25, 0.0}};
    const auto hs = levels(8, 10);
    const EllipseDomain dom(1.5, 1.5);
    const auto dens = density_oscill(1.0);
    ConvergenceOptions opts;
    opts.reference = Reference::finest;
    const auto t = convergence_study(dom, *dens, pt, hs, make_params(hs[0], 4.0, 3, 1.0), QuadratureRule::fine(), opts);
    const double dt = seconds_since(t0);
    const double rate = *t.rows[1].rate;
    o.info(fmt("values: 2^-8 %.15f, 2^-9 %.15f, 2^-10 %.15f", t.rows[0].value, t.rows[1].value, t.rows[0].reference));
    o.info(fmt("errors vs finest: 2^-8 %.3e, 2^-9 %.3e (ref 3.56e-6, 9.06e-7)", t.rows[0].error, t.rows[1].error));
    o.require(std::fabs(rate - 2.0) <= 0.2, fmt("M=3 rate 2^-8 -> 2^-9: %.3f, target 2.0 +- 0.2 (ref 1.972)", rate));
    o.info(fmt("runtime %.1f s (budget 600 s; M=1 fallback not needed)", dt));
    return o;
}

// Criterion 6: oracle equivalences.
Outcome oracle_equivalences() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();

    double worst_phi = 0.0;
    bool phi_ok = true;
    for (int k = 0; k <= 2; ++k)
        for (double t : {0.1, 1.0, 10.0})
            for (double p : {-1.0, 0.0, 0.7})
                for (double x : {-0.5, 0.0, 1.3}) {
                    const double c = kernels::phi_k_closed(k, x, t, p);
                    const double d = oracle::phi_k(k, x, t, p);
                    const double err = std::fabs(c - d);
                    phi_ok = phi_ok && err <= std::max(1e-10 * std::fabs(d), 1e-13);
                    if (std::fabs(d) > 1e-13) worst_phi = std::max(worst_phi, err / std::fabs(d));
                }
    o.require(phi_ok, fmt("phi_k closed form vs direct integration, 81 samples: worst rel %.2e, tol 1e-10", worst_phi));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), ut(0.01, 10.0), ua(-3.0, 3.0);
    double worst_pq = 0.0;
    for (int s = 0; s < 100; ++s) {
        const double x1 = ux(rng), x2 = ux(rng), t = ut(rng), a = ua(rng);
        const double r2 = x1 * x1 + x2 * x2;
        auto rel = [](double v, double ref) { return std::fabs(v - ref) / std::max(1.0, std::fabs(v)); };
        for (int M = 1; M <= 3; ++M) worst_pq = std::max(worst_pq, rel(kernels::p_poly(M, 2, r2, t), oracle::p_closed(M, r2, t)));
        worst_pq = std::max(worst_pq, std::fabs(kernels::q_poly(1, 2, x1 * x1, x2, t, a)));
        worst_pq = std::max(worst_pq, rel(kernels::q_poly(2, 2, x1 * x1, x2, t, a), oracle::q2(x2, t, a)));
        worst_pq = std::max(worst_pq, rel(kernels::q_poly(3, 2, x1 * x1, x2, t, a), oracle::q3(r2, x2, t, a)));
    }
    o.require(worst_pq <= 1e-12, fmt("P_M, Q_M general sums vs planar closed forms, 100 samples: worst %.2e, tol 1e-12", worst_pq));

    struct Case {
        int M;
        double lam2h2D, x1, x2, a;
    };
    const Case cases[] = {{1, 0.5, 0.3, 0.2, 0.0}, {2, 0.5, -0.5, 1.0, 0.4}, {3, 0.2, 0.1, -0.3, -0.8},
                          {3, 1.0, 1.2, 0.6, 1.5}, {2, 0.05, 0.0, 0.0, -2.0}};
    const DeNodes nodes(QuadratureRule::coarse());
    double worst_b = 0.0;
    for (const auto& c : cases) {
        const double b = coeff::b_scaled(c.M, 2, {c.x1 * c.x1, c.x2}, c.a, c.lam2h2D, nodes);
        const double ref = oracle::pi * oracle::halfplane_potential(c.M, std::sqrt(c.lam2h2D), c.x1, c.x2, c.a);
        worst_b = std::max(worst_b, std::fabs(b - ref));
    }
    o.require(worst_b <= 1e-8, fmt("strip coefficient vs 2-D half-plane integration, 5 configurations: worst %.2e, tol 1e-8", worst_b));

    double worst_in = 0.0, worst_out = 0.0;
    for (int M = 1; M <= 3; ++M) {
        for (double x2 : {0.0, 0.7, 3.0}) {
            for (double xn : {-1.0, 0.0, 0.5}) {
                const kernels::ScaledPoint xs{x2, xn};
                const double lam = 0.3;
                const double a = coeff::a_scaled(M, 2, xs.norm_sq(), lam, nodes);
                const double deep = coeff::b_scaled(M, 2, xs, -6.0, lam, nodes);
                const double far = coeff::b_scaled(M, 2, xs, 6.0, lam, nodes);
                worst_in = std::max(worst_in, std::fabs(deep - a) / std::max(1.0, std::fabs(a)));
                worst_out = std::max(worst_out, std::fabs(far));
            }
        }
    }
    o.require(worst_in <= 1e-12, fmt("b(a=-6) = a coefficient: worst %.2e, tol 1e-12", worst_in));
    o.require(worst_out <= 1e-12, fmt("|b(a=+6)|: worst %.2e, tol 1e-12", worst_out));
    const double dt = seconds_since(t0);
    o.require(dt <= 120.0, fmt("runtime %.1f s, budget 120 s", dt));
    return o;
}

// Criterion 7: moment conditions.
Outcome moments() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int count = 0;
    for (int M = 1; M <= 3; ++M)
        for (int a1 = 0; a1 < 2 * M; ++a1)
            for (int a2 = 0; a1 + a2 < 2 * M; ++a2) {
                const std::array<int, 2> alpha{a1, a2};
                worst = std::max(worst, genfun::moment_defect({M, 2}, alpha));
                ++count;
            }
    const double dt = seconds_since(t0);
    o.require(worst <= 1e-10, fmt("%d multi-indices, worst defect %.2e, tol 1e-10", count, worst));
    o.require(dt <= 60.0, fmt("runtime %.1f s, budget 60 s", dt));
    return o;
}

// Criterion 8: DE self-convergence over the offsets the cubature runs use.
// At step h the node box of the 1.5 circle spans 2 ceil(1.5/h + r sqrt(D))
// indices per axis, which bounds |k - m|^2.
Outcome self_convergence() {
    Outcome o;
    struct Set {
        const char* name;
        QuadratureRule rule;
        double D;
        std::vector<double> lambda2;
        std::vector<double> hs;
    };
    const Set sets[] = {
        {"tau=0.01, s in [-80,100] (D=3, h=2^-7)", QuadratureRule::coarse(), 3.0, {2.0, 0.2}, {1.0 / 128}},
        {"tau=0.006, s in [-160,200] (D=4, h=2^-2..2^-7)", QuadratureRule::fine(), 4.0, {1.0}, levels(2, 7)},
    };
    for (const Set& s : sets) {
        const DeNodes base(s.rule), fine(s.rule.refined());
        double worst = 0.0, at = 0.0, at_h = 0.0;
        std::int64_t first_bad = -1;
        std::int64_t largest = 0;
        for (double h : s.hs) {
            const auto span = 2 * static_cast<std::int64_t>(std::ceil(1.5 / h + 6.0 * std::sqrt(s.D)));
            const std::int64_t kmax = 2 * span * span;
            largest = std::max(largest, kmax);
            std::vector<std::int64_t> keys;
            for (std::int64_t k = 0; k <= std::min<std::int64_t>(200, kmax); ++k) keys.push_back(k);
            for (double k = 200; k < static_cast<double>(kmax); k *= 1.05) keys.push_back(static_cast<std::int64_t>(k));
            keys.push_back(kmax);
            for (double l2 : s.lambda2)
                for (int M = 1; M <= 3; ++M)
                    for (std::int64_t k : keys) {
                        const double x2 = static_cast<double>(k) / s.D;
                        const double lam = l2 * h * h * s.D;
                        const double v = coeff::a_scaled(M, 2, x2, lam, base);
                        const double w = coeff::a_scaled(M, 2, x2, lam, fine);
                        const double rel = std::fabs(v - w) / std::fabs(w);
                        if (rel > worst) {
                            worst = rel;
                            at = static_cast<double>(k);
                            at_h = h;
                        }
                        if (rel > 1e-12 && (first_bad < 0 || k < first_bad)) first_bad = k;
                    }
        }
        std::string note = fmt("%s: worst rel change %.2e at ksq=%.0f, h=1/%.0f (ksq up to %lld)", s.name, worst, at,
                               1.0 / at_h, static_cast<long long>(largest));
        if (first_bad >= 0) note += fmt("; exceeds 1e-12 from ksq=%lld", static_cast<long long>(first_bad));
        o.require(worst <= 1e-12, note);
    }
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "circle, lambda^2 = 2", circle_values},
        {2, "ellipse 1.5 x 0.5, lambda^2 = 0.2", ellipse_value},
        {3, "rates, density f", f_rates},
        {4, "rates, density g, M = 2", g_rates},
        {5, "saturation rate, oscillatory density, M = 3", oscill_rate},
        {6, "oracle equivalences", oracle_equivalences},
        {7, "moment conditions", moments},
        {8, "DE self-convergence of interior coefficients", self_convergence},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("error: ") + e.what());
        }
        std::printf("%s %d: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, seconds_since(t0));
        for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
