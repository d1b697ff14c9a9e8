/*
   Copyright 2026 The hyperl Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Statement-level experiments around negative moments: the majorant
// coefficients b_beta(n), the lower bound for log|L| they feed, a cosine-sum
// estimate, and scans of |L|^{-m} against its predicted shape.

#ifndef HYPERL_BOUNDS_LAB_HPP
#define HYPERL_BOUNDS_LAB_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hyperl/conjecture.hpp"
#include "hyperl/ensemble.hpp"
#include "hyperl/lfun.hpp"

namespace hyperl {

// Regression thresholds, calibrated once on exhaustive q = 5 runs and frozen.
// They guard against drift; they are not proven constants.
inline constexpr double kLbGapFloor = 0.1;         // lower-bound gap >= -0.1 (worst seen -0.072, g = 3)
inline constexpr double kTrigSumSlack = 3.0;       // |cosine sum - log min{...}| <= 3 (worst seen 1.03)
inline constexpr double kNegMomentRatioCap = 2.0;  // |L|^{-1} mean / log g <= 2 at t = 0 (worst seen 1.45, g = 2)

// ---------------------------------------------------------------------------
// Majorant coefficients

struct BBetaSeries {
    double value = 0.0;
    int terms = 0;  // j = 0 .. terms-1 summed
};

/// Constant term of the optimal majorant: -(2/(N+1)) log((1 - q^{-(N+1)beta}) / (1 - q^{-2(N+1)})).
inline double majorant_constant(std::uint32_t q, int N, double beta) {
    const double L = std::log(static_cast<double>(q)), M = N + 1.0;
    return -(2.0 / M) * std::log(-std::expm1(-M * beta * L) / -std::expm1(-2.0 * M * L));
}

namespace detail {
// (q^{-m beta} - q^{-2m}) / m, m > 0.
inline double bb_piece(double L, double m, double beta) { return (std::exp(-m * beta * L) - std::exp(-2.0 * m * L)) / m; }

inline double bb_term(double L, int n, int N, double beta, int j) {
    const double M = N + 1.0;
    return (j + 1.0) * (bb_piece(L, n + j * M, beta) - bb_piece(L, (j + 2.0) * M - n, beta));
}
}  // namespace detail

/// b_beta(n) from its full series, including the q^{-2(.)} pieces; exactly `terms` terms when
/// terms > 0, otherwise summed until an increment falls below 1e-14 and the
/// remaining tail is bounded below 1e-15. n = 0 returns the majorant
/// constant term.
inline BBetaSeries b_beta_series(std::uint32_t q, int n, int N, double beta, int terms = 0) {
    if (N < 1) throw precondition_error("b_beta: N must be >= 1");
    if (!(beta > 0.0)) throw precondition_error("b_beta: beta must be > 0");
    n = std::abs(n);
    if (n > N) throw precondition_error("b_beta: need |n| <= N");
    if (n == 0) return {majorant_constant(q, N, beta), 0};
    const double L = std::log(static_cast<double>(q));
    const double r = std::exp(-(N + 1.0) * beta * L);
    CompensatedSum s;
    constexpr int kCap = 1'000'000;
    int j = 0;
    for (;; ++j) {
        if (terms > 0 && j == terms) break;
        if (j == kCap) throw divergence_error("b_beta: series did not settle within 1e6 terms");
        const double t = detail::bb_term(L, n, N, beta, j);
        s.add(t);
        // Terms shrink like (j+1) r^j; stop once the increment and the geometric tail bound are both negligible.
        const double rj = r * (j + 2.0) / (j + 1.0);
        if (terms == 0 && j >= 1 && std::abs(t) < 1e-14 && rj < 1.0 && std::abs(t) * rj / (1.0 - rj) < 1e-15) {
            ++j;
            break;
        }
    }
    return {s.value(), j};
}

inline double b_beta(std::uint32_t q, int n, int N, double beta) { return b_beta_series(q, n, N, beta).value; }

struct MajorantCoeffs {
    std::uint32_t q = 0;
    int N = 0;
    double beta = 0.0;
    std::vector<double> b;  // b[0..N]
};

inline MajorantCoeffs majorant_coeffs(std::uint32_t q, int N, double beta) {
    MajorantCoeffs c{q, N, beta, {}};
    for (int n = 0; n <= N; ++n) c.b.push_back(b_beta(q, n, N, beta));
    return c;
}

// ---------------------------------------------------------------------------
// Lower bound for log|L(1/2 + beta + it)|

/// (2g/(N+1)) log(...) + Re sum_{n<=N} b(n) q^{-n(1/2+it)} s_n, s_n = sum_{d(f)=n} Lambda(f) chi_D(f).
inline double lemma_lb_rhs(const LPolynomial& L, const MajorantCoeffs& c, double t) {
    const auto s = power_sums_from_coefficients(L, c.N);
    const double lq = std::log(static_cast<double>(L.q));
    CompensatedSum acc;
    acc.add(-L.g * majorant_constant(L.q, c.N, c.beta));
    for (int n = 1; n <= c.N; ++n)
        acc.add(c.b[n] * std::exp(-0.5 * n * lq) * std::cos(n * t * lq) * static_cast<double>(s[n]));
    return acc.value();
}

/// log|L| - rhs; nullopt when L(1/2 + beta + it) is numerically zero.
inline std::optional<double> lemma_lb_gap(const LPolynomial& L, const MajorantCoeffs& c, double t) {
    if (L.q != c.q) throw precondition_error("lemma_lb_gap: field mismatch");
    const double a = std::abs(evaluate_shifted(L, c.beta, t));
    if (a < kZeroLValue) return std::nullopt;
    return std::log(a) - lemma_lb_rhs(L, c, t);
}

inline std::optional<double> lemma_lb_gap(const PolyFq& D, double beta, double t, int N) {
    return lemma_lb_gap(l_coefficients(D), majorant_coeffs(D.q(), N, beta), t);
}

struct LbScanRow {
    int g = 0;
    double beta = 0.0;
    int N = 0;
    double t = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    double max_gap = -std::numeric_limits<double>::infinity();
    std::string argmin;  // D attaining min_gap
    std::uint64_t n_used = 0, n_excluded = 0;
};

/// Min and max of the gap over the ensemble for each (beta, N) pair, one pass.
inline std::vector<LbScanRow> lb_scan(const EnsembleSpec& spec, const std::vector<double>& betas, const std::vector<int>& Ns, double t = 0.0) {
    std::vector<MajorantCoeffs> cs;
    std::vector<LbScanRow> rows;
    for (double b : betas)
        for (int N : Ns) {
            cs.push_back(majorant_coeffs(spec.q, N, b));
            rows.push_back(LbScanRow{spec.g, b, N, t, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), {}, 0, 0});
        }
    const PrimeSymbolTable table = ensemble_table(spec);
    for_each_L(spec, table, [&](const EnsembleItem& it) {
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const auto gap = lemma_lb_gap(it.L, cs[i], t);
            LbScanRow& r = rows[i];
            if (!gap) {
                ++r.n_excluded;
                continue;
            }
            ++r.n_used;
            if (*gap < r.min_gap) {
                r.min_gap = *gap;
                r.argmin = to_symbolic(it.D());
            }
            r.max_gap = std::max(r.max_gap, *gap);
        }
    });
    return rows;
}

// ---------------------------------------------------------------------------
// Cosine sum

struct TrigSumResult {
    double lhs = 0.0, predicted = 0.0, diff = 0.0;
};

/// sum_{n=1}^g cos(n theta) / (n q^{an}) against log min{1/a, g, 1/tbar}.
inline TrigSumResult trig_sum(std::uint32_t q, std::int64_t g, double a, double theta) {
    if (!(a > 0.0)) throw precondition_error("trig_sum: a must be > 0");
    if (g < 1) throw precondition_error("trig_sum: g must be >= 1");
    const double la = a * std::log(static_cast<double>(q));
    CompensatedSum s;
    for (std::int64_t n = 1; n <= g; ++n) s.add(std::cos(n * theta) * std::exp(-la * n) / static_cast<double>(n));
    const double tb = t_bar(theta);
    double inner = static_cast<double>(g);
    if (tb > 0.0) inner = std::min(inner, 1.0 / tb);
    TrigSumResult r;
    r.lhs = s.value();
    r.predicted = std::log(std::min(1.0 / a, inner));
    r.diff = r.lhs - r.predicted;
    return r;
}

// ---------------------------------------------------------------------------
// Negative-moment scans

struct NegScanRow {
    EnsembleReport report;
    double beta = 0.0, m = 0.0;
    int k = 0;
    std::vector<double> ts;
    std::string branch;  // per shift: which side of min{1/beta, 1/tbar} is taken
    bool in_window = false;  // beta > g^{-1/(2km)}
    double ratio = 0.0;      // empirical / shape
};

inline std::string negmoment_branch(double beta, const std::vector<double>& ts) {
    std::string s;
    for (std::size_t j = 0; j < ts.size(); ++j) {
        const double tb = t_bar(ts[j]);
        s += (j ? ";" : "");
        s += (tb <= beta) ? "beta" : "tbar";
    }
    return s;
}

/// k equal shifts beta + i t_j per row; one ensemble pass per genus.
inline std::vector<NegScanRow> negmoment_scan(EnsembleSpec spec, const std::vector<int>& g_list, const std::vector<double>& beta_grid, double m,
                                              const std::vector<double>& ts) {
    const int k = static_cast<int>(ts.size());
    if (k < 1) throw precondition_error("negmoment_scan: need at least one t");
    std::vector<NegScanRow> rows;
    for (int g : g_list) {
        spec.g = g;
        std::vector<Statistic> stats;
        for (double b : beta_grid) stats.push_back(NegMomentStat{std::vector<double>(k, b), ts, m});
        const auto reports = empirical_statistics(spec, stats);
        for (std::size_t i = 0; i < beta_grid.size(); ++i) {
            NegScanRow r;
            r.report = reports[i];
            r.beta = beta_grid[i];
            r.m = m;
            r.k = k;
            r.ts = ts;
            r.branch = negmoment_branch(r.beta, ts);
            r.in_window = r.beta > std::pow(static_cast<double>(g), -1.0 / (2.0 * k * m));
            r.ratio = r.report.empirical.real() / r.report.predicted.real();
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

}  // namespace hyperl

#endif  // HYPERL_BOUNDS_LAB_HPP
