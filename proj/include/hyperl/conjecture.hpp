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

#ifndef HYPERL_CONJECTURE_HPP
#define HYPERL_CONJECTURE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "shifts.hpp"

namespace hyperl {

// ---------------------------------------------------------------------------
// zeta function of F_q[x]

/// zeta_q(s) = 1 / (1 - q^{1-s}).
inline cplx zeta_q(double q, cplx s) {
    const cplx w = qpow(q, s - 1.0);
    if (std::abs(1.0 - w) < 1e-14) throw pole_error("zeta_q: pole at s = " + format_shift(s));
    return 1.0 / (1.0 - w);
}

/// 1 / zeta_q(s), entire: vanishes at the poles of zeta_q.
inline cplx inv_zeta_q(double q, cplx s) { return 1.0 - qpow(q, s - 1.0); }

/// Z(u) = 1 / (1 - q u).
inline cplx zeta_u(double q, cplx u) {
    if (std::abs(1.0 - q * u) < 1e-14) throw pole_error("Z(u): pole at u = 1/q");
    return 1.0 / (1.0 - q * u);
}

/// Shifts closer than this to a zeta pole are treated as confluent.
inline constexpr double kConfluenceGap = 1e-6;

inline void require_off_pole(double q, cplx s_minus_one, const std::string& what) {
    // Poles of zeta_q(1 + z) sit at z in (2 pi i / log q) Z.
    const double period = 2.0 * std::numbers::pi / std::log(q);
    const double k = std::round(s_minus_one.imag() / period);
    if (std::abs(cplx(s_minus_one.real(), s_minus_one.imag() - k * period)) < kConfluenceGap)
        throw pole_error(what + ": shifts are confluent (pair sum " + format_shift(s_minus_one) + " at a zeta pole)");
}

// ---------------------------------------------------------------------------
// Degree-grouped Euler products

struct EulerOptions {
    double tol = 1e-10;
    int cap = 200;
    int fixed_degree = 0;  // > 0: stop exactly at this prime degree
};

struct EulerTruncation {
    int max_prime_degree = 0;
    double tail_estimate = 0.0;  // bound on |log(full product) - log(truncated product)|
};

struct EulerResult {
    cplx value;
    EulerTruncation trunc;
};

/// prod over primes of factor(P), where log factor depends on P only through
/// d = d(P): exp(sum_d pi_q(d) log_factor(d)). rho_bound bounds the geometric
/// decay rate of the per-degree contributions; it is derived from the shifts,
/// since past d ~ 20 the computed contributions are dominated by rounding and
/// observed ratios say nothing.
template <class LogFactor>
EulerResult euler_product(double q, LogFactor&& log_factor, double rho_bound, const EulerOptions& opt, const std::string& what) {
    if (!(rho_bound < 1.0)) throw divergence_error(what + ": Euler product diverges for these parameters (decay rate " + format_double(rho_bound) + ")");
    CompensatedComplexSum acc;
    double prev = 0.0, prev2 = 0.0;
    for (int d = 1; d <= opt.cap; ++d) {
        const cplx contrib = prime_count_real(q, d) * log_factor(d);
        if (!std::isfinite(contrib.real()) || !std::isfinite(contrib.imag())) throw divergence_error(what + ": non-finite factor at prime degree " + std::to_string(d));
        acc.add(contrib);
        const double t = std::abs(contrib);
        double rho = rho_bound;
        if (d >= 3 && d <= 12 && prev > 0.0) rho = std::max(rho, t / prev);  // early degrees: trust observation too
        // Envelope through the last three contributions guards against an accidental near-zero.
        const double env = std::max({t, prev * rho, prev2 * rho * rho});
        const double tail = rho < 1.0 ? env * rho / (1.0 - rho) : std::numeric_limits<double>::infinity();
        prev2 = prev;
        prev = t;
        if (opt.fixed_degree > 0) {
            if (d == opt.fixed_degree) return {std::exp(acc.value()), {d, tail}};
            continue;
        }
        if (d >= 4 && tail < opt.tol) return {std::exp(acc.value()), {d, tail}};
    }
    throw divergence_error(what + ": truncation tolerance not reached by prime degree " + std::to_string(opt.cap));
}

/// h_0..h_n and e_0..e_n of the scaled variables z_i = scale * q^{-d gamma_i}.
/// With scale = u^d |P|^{-1/2} these are tau_C(P^j) and mu_C(P^j) times
/// (u^d |P|^{-1/2})^j, which stay bounded where the unscaled values overflow.
inline TauMu scaled_tau_mu(const ShiftSet& C, double q, int d, cplx scale, int n) {
    TauMu out{std::vector<cplx>(static_cast<std::size_t>(n) + 1, 0.0), std::vector<cplx>(static_cast<std::size_t>(n) + 1, 0.0)};
    out.tau[0] = out.mu[0] = 1.0;
    for (const cplx& g : C) {
        const cplx z = scale * qpow(q, static_cast<double>(d) * g);
        for (int j = 1; j <= n; ++j) out.tau[j] += z * out.tau[j - 1];
        for (int j = n; j >= 1; --j) out.mu[j] -= z * out.mu[j - 1];
    }
    return out;
}

inline double min_real_pair_sum(const ShiftSet& C) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < C.size(); ++i)
        for (std::size_t j = i; j < C.size(); ++j) m = std::min(m, C[i].real() + C[j].real());
    return m;
}

inline double max_abs_real(const ShiftSet& C) {
    double m = 0.0;
    for (const auto& g : C) m = std::max(m, std::abs(g.real()));
    return m;
}

/// Prime-power series for one prime of degree d, w = u^{2d} / |P|.
struct PrimeSeries {
    cplx even_from1;  // sum_{j>=1} tau(P^{2j}) w^j
    cplx odd;         // sum_{j>=0} tau(P^{2j+1}) w^j
};

inline PrimeSeries prime_series(const ShiftSet& C, double q, int d, cplx u, bool need_odd, const std::string& what) {
    const cplx s = std::pow(u, static_cast<double>(d)) * std::pow(q, -0.5 * d);  // s^2 = w
    if (s == 0.0) {
        cplx t = 0;
        for (const auto& g : C) t += qpow(q, static_cast<double>(d) * g);
        return {0.0, t};
    }
    for (int n = 32; n <= 2048; n *= 2) {
        const auto h = scaled_tau_mu(C, q, d, s, 2 * n + 1).tau;  // h[m] = tau(P^m) s^m
        CompensatedComplexSum even, odd;
        double last = 0.0;
        for (int j = 0; j <= n; ++j) {
            if (j) even.add(h[2 * j]);
            if (need_odd) odd.add(h[2 * j + 1]);
            if (j >= n - 1) last = std::max({last, std::abs(h[2 * j]), std::abs(h[2 * j + 1])});
        }
        const double scale = std::max({1.0, std::abs(even.value()), std::abs(odd.value())});
        if (std::isfinite(last) && last < 1e-17 * scale) return {even.value(), odd.value() / s};
    }
    throw divergence_error(what + ": inner prime-power series does not converge");
}

// ---------------------------------------------------------------------------
// Twists

/// h = h1 h2^2 with h1 square-free.
struct TwistPoly {
    PolyFq h{FieldParams(5)};
    PolyFq h1{FieldParams(5)};
    PolyFq h2{FieldParams(5)};
    std::vector<std::pair<PolyFq, int>> primes;  // distinct primes of h with exponents

    static TwistPoly from(const PolyFq& h) {
        if (!h.is_monic()) throw precondition_error("twist polynomial must be monic");
        TwistPoly t;
        t.h = h;
        t.h1 = PolyFq::one(h.field());
        t.h2 = PolyFq::one(h.field());
        if (h.degree() > 0)
            for (const auto& [p, e] : factor(h).factors) {
                t.primes.emplace_back(p, e);
                if (e % 2) t.h1 = t.h1 * p;
                t.h2 = t.h2 * pow(p, static_cast<unsigned>(e / 2));
            }
        return t;
    }
};

// ---------------------------------------------------------------------------
// Main-term factors

/// log of the A_C(u) factor at one prime of degree d.
///
/// With z_i = u^d |P|^{-1/2 - gamma_i} and x_ij = z_i z_j, the even part of
/// prod_i (1 - z_i t)^{-1} at t = 1 is N / prod_i (1 - x_ii) where
/// N = sum_m e_{2m}(z). The factor then collapses to
///   prod_{i<j} (1 - x_ij) (N + prod_i (1 - x_ii) / |P|) / (1 + 1/|P|),
/// and the first-order terms of prod_{i<j}(1 - x_ij) N cancel identically.
/// Dropping them exactly keeps large degrees free of rounding noise.
inline cplx A_C_log_factor(const ShiftSet& C, double q, int d, cplx u) {
    const std::size_t k = C.size();
    const double Pn = std::pow(q, static_cast<double>(d));
    const cplx s = std::pow(u, static_cast<double>(d)) / std::sqrt(Pn);
    std::vector<cplx> z(k);
    for (std::size_t i = 0; i < k; ++i) z[i] = s * qpow(q, static_cast<double>(d) * C[i]);
    std::vector<cplx> e(k + 1, 0.0);
    e[0] = 1.0;
    for (const cplx& zi : z)
        for (std::size_t j = k; j >= 1; --j) e[j] += zi * e[j - 1];
    // Q(t) = prod_{i<j} (1 - t x_ij) * sum_m e_{2m} t^m; Q(0) = 1, Q'(0) = 0.
    std::vector<cplx> Q(k / 2 + 1);
    for (std::size_t m = 0; 2 * m <= k; ++m) Q[m] = e[2 * m];
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            Q.push_back(0.0);
            for (std::size_t m = Q.size() - 1; m >= 1; --m) Q[m] -= z[i] * z[j] * Q[m - 1];
        }
    cplx q_minus_1 = 0;
    for (std::size_t m = 2; m < Q.size(); ++m) q_minus_1 += Q[m];
    cplx N = 0, diag = 1.0;
    for (std::size_t m = 0; 2 * m <= k; ++m) N += e[2 * m];
    for (const cplx& zi : z) diag *= 1.0 - zi * zi;
    return log1p(q_minus_1) + log1p((diag - N) / (N * (Pn + 1.0)));
}

/// Euler factor A_C(u) in degree-grouped form.
inline EulerResult A_C(const ShiftSet& C, double q, cplx u, const EulerOptions& opt = {}) {
    if (C.empty()) throw precondition_error("A_C: empty shift set");
    const double sigma = min_real_pair_sum(C);
    const double au2 = std::norm(u);
    const double rho = std::max(au2 * std::pow(q, -1.0 - sigma), au2 * au2 * std::pow(q, -1.0 - 2.0 * sigma));
    if (!(au2 * std::pow(q, -1.0 + 2.0 * max_abs_real(C)) < 1.0)) throw divergence_error("A_C: inner series diverges for |u|, shifts given");
    return euler_product(q, [&](int d) { return A_C_log_factor(C, q, d, u); }, rho, opt, "A_C");
}

/// Finite product B_C(h; u) over the primes of h.
inline cplx B_C(const ShiftSet& C, const TwistPoly& h, double q, cplx u) {
    cplx r = 1.0;
    for (const auto& [P, e] : h.primes) {
        const int d = P.degree();
        const double Pn = std::pow(q, static_cast<double>(d));
        const PrimeSeries ps = prime_series(C, q, d, u, true, "B_C");
        r /= 1.0 + 1.0 / Pn + ps.even_from1;
        if (e % 2)
            r *= ps.odd;
        else
            r *= 1.0 + ps.even_from1;
    }
    return r;
}

/// The shift set (A \ R) u R^- for the subset encoded by mask: bit i negates alpha_i.
inline ShiftSet swap_subset(const ShiftSet& A, unsigned mask, cplx& sumR) {
    std::vector<cplx> c(A.values());
    sumR = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (mask >> i & 1u) {
            sumR += c[i];
            c[i] = -c[i];
        }
    return ShiftSet(std::move(c));
}

struct MainTerm {
    cplx value;
    EulerTruncation trunc;  // worst truncation over the Euler products used
};

inline void merge_trunc(EulerTruncation& into, const EulerTruncation& t) {
    into.max_prime_degree = std::max(into.max_prime_degree, t.max_prime_degree);
    into.tail_estimate = std::max(into.tail_estimate, t.tail_estimate);
}

/// S~_C(h) = A_C(1) B_C(h;1) prod_{i<=j} zeta_q(1 + gamma_i + gamma_j).
inline MainTerm S_tilde(const ShiftSet& C, const TwistPoly& h, double q, const EulerOptions& opt = {}) {
    cplx z = 1.0;
    for (std::size_t i = 0; i < C.size(); ++i)
        for (std::size_t j = i; j < C.size(); ++j) {
            require_off_pole(q, C[i] + C[j], "twisted main term");
            z *= zeta_q(q, 1.0 + C[i] + C[j]);
        }
    const EulerResult a = A_C(C, q, 1.0, opt);
    return {a.value * B_C(C, h, q, 1.0) * z, a.trunc};
}

/// Predicted twisted moment (1/sqrt|h1|) sum_{R subset A} q^{-2g sum R} S~_{(A\R) u R^-}(h).
inline MainTerm twisted_main(const ShiftSet& A, const TwistPoly& h, double q, int g, const EulerOptions& opt = {}) {
    if (A.empty()) throw precondition_error("twisted_main: empty shift set");
    if (A.size() > 16) throw precondition_error("twisted_main: too many shifts");
    A.require_numerator();
    MainTerm out{0.0, {}};
    for (unsigned mask = 0; mask < (1u << A.size()); ++mask) {
        cplx sumR;
        const ShiftSet C = swap_subset(A, mask, sumR);
        const MainTerm s = S_tilde(C, h, q, opt);
        out.value += qpow(q, 2.0 * g * sumR) * s.value;
        merge_trunc(out.trunc, s.trunc);
    }
    out.value /= std::sqrt(std::pow(q, static_cast<double>(h.h1.degree())));
    return out;
}

/// Ratios main-term piece S_C for the denominator shifts B.
inline MainTerm S_ratio(const ShiftSet& C, const ShiftSet& B, double q, const EulerOptions& opt = {}) {
    const std::size_t k = C.size();
    if (B.size() != k) throw precondition_error("ratios: numerator and denominator sets must have equal size");
    cplx zeta_block = 1.0;
    double sigma = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            require_off_pole(q, C[i] + C[j], "ratios main term");
            zeta_block *= zeta_q(q, 1.0 + C[i] + C[j]);
            sigma = std::min(sigma, (C[i] + C[j]).real());
            if (i < j) {
                require_off_pole(q, B[i] + B[j], "ratios main term");
                zeta_block *= zeta_q(q, 1.0 + B[i] + B[j]);
                sigma = std::min(sigma, (B[i] + B[j]).real());
            }
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            zeta_block *= inv_zeta_q(q, 1.0 + B[i] + C[j]);
            sigma = std::min(sigma, (B[i] + C[j]).real());
        }
    const double rho = std::max(std::pow(q, -1.0 - sigma), std::pow(q, -1.0 - 2.0 * sigma));
    auto lf = [&](int d) {
        const double dd = d;
        const double Pn = std::pow(q, dd);
        cplx s = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i; j < k; ++j) {
                s += log1p(-qpow(q, dd * (1.0 + C[i] + C[j])));
                if (i < j) s += log1p(-qpow(q, dd * (1.0 + B[i] + B[j])));
            }
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) s -= log1p(-qpow(q, dd * (1.0 + B[i] + C[j])));
        // sum over i + j >= 2 even of mu_B(P^i) tau_C(P^j) |P|^{-(i+j)/2}; mu_B vanishes past i = k.
        const cplx scale = std::pow(Pn, -0.5);
        const auto mb = scaled_tau_mu(B, q, d, scale, static_cast<int>(k)).mu;
        int n = 64;
        while (true) {
            const auto tc = scaled_tau_mu(C, q, d, scale, n).tau;
            CompensatedComplexSum acc;
            double last = 0.0;
            for (std::size_t i = 0; i <= k; ++i) {
                for (int j = (i % 2 == 0 ? 0 : 1); j <= n; j += 2) {
                    if (static_cast<int>(i) + j < 2) continue;
                    const cplx t = mb[i] * tc[j];
                    acc.add(t);
                    if (j >= n - 1) last = std::max(last, std::abs(t));
                }
            }
            if (last < 1e-17 * std::max(1.0, std::abs(acc.value()))) return s + log1p(acc.value() / (1.0 + 1.0 / Pn));
            if (n >= 4096) throw divergence_error("ratios main term: inner series does not converge");
            n *= 2;
        }
    };
    const EulerResult e = euler_product(q, lf, rho, opt, "ratios main term");
    return {zeta_block * e.value, e.trunc};
}

/// Ratios prediction sum_{R subset A} q^{-2g sum R} S_{(A\R) u R^-}.
inline MainTerm ratios_main(const ShiftSet& A, const ShiftSet& B, double q, int g, const EulerOptions& opt = {}, bool waive_window = false) {
    if (A.empty()) throw precondition_error("ratios_main: empty shift set");
    if (A.size() > 16) throw precondition_error("ratios_main: too many shifts");
    A.require_numerator();
    B.require_denominator(waive_window);
    MainTerm out{0.0, {}};
    for (unsigned mask = 0; mask < (1u << A.size()); ++mask) {
        cplx sumR;
        const ShiftSet C = swap_subset(A, mask, sumR);
        const MainTerm s = S_ratio(C, B, q, opt);
        out.value += qpow(q, 2.0 * g * sumR) * s.value;
        merge_trunc(out.trunc, s.trunc);
    }
    return out;
}

/// A(alpha, beta) of the one-over-one ratio in closed per-prime form.
inline EulerResult A_alpha_beta(cplx alpha, cplx beta, double q, const EulerOptions& opt = {}) {
    const double sigma = std::min({(alpha + beta).real(), 2.0 * alpha.real()});
    const double rho = std::max(std::pow(q, -1.0 - sigma), std::pow(q, -1.0 - 2.0 * sigma));
    auto lf = [&](int d) {
        const double dd = d;
        const double Pn = std::pow(q, dd);
        return -log1p(-qpow(q, dd * (1.0 + alpha + beta))) + log1p(-(qpow(q, dd * (alpha + beta)) + qpow(q, dd * (1.0 + 2.0 * alpha))) / (Pn + 1.0));
    };
    return euler_product(q, lf, rho, opt, "A(alpha,beta)");
}

inline MainTerm ratio_k1_closed(cplx alpha, cplx beta, double q, int g, const EulerOptions& opt = {}) {
    require_off_pole(q, 2.0 * alpha, "ratio_k1_closed");
    const EulerResult a = A_alpha_beta(alpha, beta, q, opt);
    const EulerResult b = A_alpha_beta(-alpha, beta, q, opt);
    MainTerm out;
    out.value = a.value * zeta_q(q, 1.0 + 2.0 * alpha) * inv_zeta_q(q, 1.0 + alpha + beta) +
                qpow(q, 2.0 * g * alpha) * b.value * zeta_q(q, 1.0 - 2.0 * alpha) * inv_zeta_q(q, 1.0 - alpha + beta);
    out.trunc = a.trunc;
    merge_trunc(out.trunc, b.trunc);
    return out;
}

// ---------------------------------------------------------------------------
// One-level density

struct DensityPrediction {
    double value = 0.0;
    bool outside_window = false;  // N >= 4g: the asymptotic formula is not claimed there
};

/// Main term of the averaged sum over zeros of Phi(2g theta). samples[k] holds
/// PhiHat(k / (2g)) for k = 0..N; PhiHat vanishes past N / (2g).
inline DensityPrediction density_main(const std::vector<double>& samples, double q, int g, int N) {
    if (g < 1) throw precondition_error("density_main: genus must be >= 1");
    if (N < 0) throw precondition_error("density_main: N must be >= 0");
    if (static_cast<int>(samples.size()) != N + 1)
        throw precondition_error("density_main: need PhiHat samples at k/(2g) for every k = 0..N, got " + std::to_string(samples.size()));
    auto phihat_at_2g = [&](int k) { return k <= N ? samples[k] : 0.0; };  // PhiHat(k/(2g))
    DensityPrediction out;
    out.outside_window = N >= 4 * g;
    CompensatedSum s;
    s.add(phihat_at_2g(0));
    for (int n = 1; n <= g; ++n) s.add(-phihat_at_2g(2 * n) / g);
    s.add(-phihat_at_2g(2 * g) / (g * (q - 1.0)));
    for (int n = 1; n <= N / 2; ++n) {
        double inner = 0.0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) inner += d * prime_count_real(q, d) / (std::pow(q, d) + 1.0);
        s.add(phihat_at_2g(2 * n) * std::pow(q, -static_cast<double>(n)) * inner / g);
    }
    out.value = s.value();
    return out;
}

// ---------------------------------------------------------------------------
// Error-term scales (exponents only; the constants are not explicit)

/// Ratio-average error scale for k = |A| = |B| in {1, 2, 3}.
inline double ratio_error_scale(const ShiftSet& A, const ShiftSet& B, double q, int g) {
    double a = max_abs_real(A);
    double b = std::numeric_limits<double>::infinity();
    for (const auto& x : B) b = std::min(b, x.real());
    const double gb = g * b;
    switch (A.size()) {
        case 1:
            return A[0].real() >= 0 ? std::pow(q, -gb * (3.0 + 2.0 * a)) : std::pow(q, -gb * (3.0 - 4.0 * a));
        case 2:
            return std::pow(q, -gb * std::min((1.0 - 4.0 * a) / (1.0 + b), (1.0 - 2.0 * a) / (2.0 + b)));
        case 3:
            return std::pow(q, -gb * std::min((0.25 - 4.0 * a) / b, (0.5 - 4.0 * a) / (3.0 + b)));
        default:
            return std::numeric_limits<double>::quiet_NaN();
    }
}

/// Twisted-moment error scale; for k = 1 the dominant q^{-3g/2 + 2g|Re alpha|}.
inline double twisted_error_scale(const ShiftSet& A, const TwistPoly& h, double q, int g) {
    const double a = max_abs_real(A);
    const double nh = std::pow(q, static_cast<double>(h.h.degree()));
    const double nh1 = std::pow(q, static_cast<double>(h.h1.degree()));
    switch (A.size()) {
        case 1:
            return std::pow(q, -1.5 * g + 2.0 * g * a);
        case 2:
            return std::sqrt(nh) * std::pow(q, -(1.0 - 2.0 * a) * g) + std::pow(q, -(1.0 - 4.0 * a) * g);
        case 3:
            return std::sqrt(nh) * std::pow(q, -(0.5 - 4.0 * a) * g) + std::pow(q, -(1.0 - 6.0 * a) * g) +
                   std::pow(nh1, -0.75) * std::pow(q, -(0.25 - 4.0 * a) * g);
        default:
            return std::numeric_limits<double>::quiet_NaN();
    }
}

inline double density_error_scale(double q, int g, int N) { return std::pow(q, 0.5 * N - 2.0 * g); }


// ---------------------------------------------------------------------------
// Negative moments: upper-bound shape (no constant)

/// Distance from t to the nearest multiple of 2 pi.
inline double t_bar(double t) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double r = std::fmod(std::fmod(t, two_pi) + two_pi, two_pi);
    return std::min(r, two_pi - r);
}

/// (1/beta)^{k^2 m^2 / 2} prod_j min{1/beta_j, 1/tbar_j}^{-m/2} (log g)^{km(km+1)/2}, beta = min beta_j.
inline double negmoment_shape(const std::vector<double>& betas, const std::vector<double>& ts, double m, int g) {
    if (betas.empty() || betas.size() != ts.size()) throw precondition_error("negmoment_shape: need one t per beta");
    if (g < 2) throw precondition_error("negmoment_shape: log g needs g >= 2");
    const double k = static_cast<double>(betas.size());
    const double beta = *std::min_element(betas.begin(), betas.end());
    if (!(beta > 0.0)) throw precondition_error("negmoment_shape: beta must be > 0");
    double r = std::pow(1.0 / beta, k * k * m * m / 2.0) * std::pow(std::log(static_cast<double>(g)), k * m * (k * m + 1.0) / 2.0);
    for (std::size_t j = 0; j < betas.size(); ++j) {
        const double tb = t_bar(ts[j]);
        const double mn = tb == 0.0 ? 1.0 / betas[j] : std::min(1.0 / betas[j], 1.0 / tb);
        r *= std::pow(mn, -m / 2.0);
    }
    return r;
}

}  // namespace hyperl

#endif  // HYPERL_CONJECTURE_HPP
