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

// Identity suites: exact or near-exact checks that compare two independent
// routes to the same quantity. Shared by the command-line driver and the
// acceptance run. Random inputs come from mt19937_64 with fixed seeds.

#ifndef HYPERL_VERIFY_HPP
#define HYPERL_VERIFY_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hyperl/characters.hpp"
#include "hyperl/ensemble.hpp"
#include "hyperl/lfun.hpp"

namespace hyperl {

struct CheckResult {
    std::string check;
    std::uint32_t q = 0;
    int g = 0;
    std::uint64_t cases = 0;
    double max_residual = 0.0;
    double threshold = 0.0;

    bool pass() const { return max_residual <= threshold; }
};

struct VerifyConfig {
    std::uint32_t q = 5;
    int g = 2;
    std::uint64_t seed = 1;
};

namespace detail {

inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::vector<PolyFq> random_members(std::uint32_t q, int g, std::uint64_t count, std::uint64_t seed) {
    EnsembleSpec s;
    s.q = q;
    s.g = g;
    s.mode = SampleMode::sampled;
    s.count = count;
    s.seed = seed;
    std::vector<PolyFq> out;
    const FieldParams F(q);
    for (std::uint64_t k : sample_indices(s)) out.push_back(monic_from_index(F, s.degree(), k));
    return out;
}

inline std::vector<PolyFq> monic_upto(const FieldParams& F, int d) {
    std::vector<PolyFq> v;
    for (int n = 0; n <= d; ++n)
        for (std::uint64_t k = 0; k < monic_count(F, n); ++k) v.push_back(monic_from_index(F, n, k));
    return v;
}

}  // namespace detail

/// Functional equation on every D of the ensemble. The top half of the
/// coefficients is computed from prime sums up to degree 2g, not filled in.
inline CheckResult check_functional_equation(const EnsembleSpec& spec) {
    validate(spec);
    const PrimeSymbolTable table = ensemble_table(spec, 2 * spec.g);
    SymbolEvaluator ev(table, spec.degree());
    std::vector<std::int64_t> A, B;
    CheckResult r{"fe", spec.q, spec.g};
    auto visit = [&](std::uint64_t k) {
        ev.seek(k);
        if (!ev.squarefree_upto(spec.g)) return;
        ev.prime_sums(2 * spec.g, A, B);
        const LPolynomial L = l_polynomial_from_prime_sums(spec.q, spec.g, A, B, true);
        r.max_residual = std::max(r.max_residual, static_cast<double>(verify_functional_equation(L)));
        ++r.cases;
    };
    if (spec.mode == SampleMode::sampled) {
        for (std::uint64_t k : sample_indices(spec)) visit(k);
    } else {
        const std::uint64_t total = monic_count(FieldParams(spec.q), spec.degree());
        for (std::uint64_t k = 0; k < total; ++k) visit(k);
    }
    return r;
}

/// Recursion-mode coefficients against direct enumeration of chi_D over M_n; exact.
inline CheckResult check_coefficients(const VerifyConfig& cfg, std::uint64_t count = 100) {
    CheckResult r{"coeff", cfg.q, cfg.g};
    for (const PolyFq& D : detail::random_members(cfg.q, cfg.g, count, cfg.seed)) {
        const LPolynomial a = l_coefficients(D, CoefficientMode::recursion);
        const LPolynomial b = l_coefficients(D, CoefficientMode::direct);
        for (std::size_t n = 0; n < a.c.size(); ++n)
            r.max_residual = std::max(r.max_residual, std::abs(static_cast<double>(a.c[n] - b.c[n])));
        ++r.cases;
    }
    return r;
}

/// Zeros on |u| = q^{-1/2}.
inline CheckResult check_rh(const VerifyConfig& cfg, std::uint64_t count = 1000) {
    CheckResult r{"rh", cfg.q, cfg.g, 0, 0.0, 1e-6};
    for (const PolyFq& D : detail::random_members(cfg.q, cfg.g, count, cfg.seed + 1)) {
        r.max_residual = std::max(r.max_residual, zeros(l_coefficients(D)).radii_residual);
        ++r.cases;
    }
    return r;
}

/// Zero side against prime side for random even trigonometric polynomials of
/// length N + 1 <= 2g + 1, coefficients uniform in [-1, 1). Prime sums come
/// from residue symbols, independent of the coefficients the zeros use.
inline CheckResult check_explicit(const VerifyConfig& cfg, std::uint64_t count = 100, int polys = 10) {
    CheckResult r{"explicit", cfg.q, cfg.g, 0, 0.0, 1e-8};
    std::mt19937_64 rng(cfg.seed + 2);
    const int M = 2 * cfg.g;
    for (const PolyFq& D : detail::random_members(cfg.q, cfg.g, count, cfg.seed + 2)) {
        const LPolynomial L = l_coefficients(D);
        const ZeroSet z = zeros(L);
        std::vector<std::int64_t> A, B;
        prime_sums_from_symbols(chi_on_primes(D, M), M, A, B);
        const auto s = power_sums_from_prime_sums(A, B, M);
        for (int i = 0; i < polys; ++i) {
            TrigPoly h;
            const int N = static_cast<int>(rng() % static_cast<std::uint64_t>(M + 1));
            for (int n = 0; n <= N; ++n) h.hhat.push_back(2.0 * detail::unit_uniform(rng) - 1.0);
            r.max_residual = std::max(r.max_residual, std::abs(zero_sum(z, h) - explicit_prime_side(L.q, L.g, h, s)));
            ++r.cases;
        }
    }
    return r;
}

/// Approximate functional equation against Horner products, relative error,
/// for every multiset of k = 1, 2, 3 shifts from a grid with |Re alpha| <= 0.2
/// (both sides are symmetric in the shifts).
inline CheckResult check_afe(const VerifyConfig& cfg, std::uint64_t count = 10) {
    CheckResult r{"afe", cfg.q, cfg.g, 0, 0.0, 1e-9};
    const std::vector<cplx> grid{-0.2, cplx(-0.1, 0.3), 0.0, 0.1, cplx(0.2, -0.5)};
    std::vector<ShiftSet> sets;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sets.push_back(ShiftSet{grid[i]});
        for (std::size_t j = i; j < grid.size(); ++j) {
            sets.push_back(ShiftSet{grid[i], grid[j]});
            for (std::size_t k = j; k < grid.size(); ++k) sets.push_back(ShiftSet{grid[i], grid[j], grid[k]});
        }
    }
    for (const PolyFq& D : detail::random_members(cfg.q, cfg.g, count, cfg.seed + 3)) {
        const LPolynomial L = l_coefficients(D);
        for (const ShiftSet& A : sets) {
            cplx prod = 1.0;
            for (const cplx& a : A) prod *= evaluate_shifted(L, a);
            const cplx afe = approx_fe_product(D, A);
            r.max_residual = std::max(r.max_residual, std::abs(afe - prod) / std::abs(prod));
            ++r.cases;
        }
    }
    return r;
}

/// Closed-form Gauss sums of prime powers against the definition: every monic
/// prime P of degree <= 2, j <= 3, and every V of degree <= 3 (zero included).
/// The second row is G(1, chi_x), the classical quadratic Gauss sum of F_q.
inline std::vector<CheckResult> check_gauss(const VerifyConfig& cfg) {
    const FieldParams F(cfg.q);
    std::vector<PolyFq> Vs{PolyFq(F)};
    for (const PolyFq& m : detail::monic_upto(F, 3))
        for (Residue c = 1; c < cfg.q; ++c) Vs.push_back(m.scaled(c));
    CheckResult r{"gauss", cfg.q, 0, 0, 0.0, 1e-9};
    for (int d = 1; d <= 2; ++d)
        for (std::uint64_t k = 0; k < monic_count(F, d); ++k) {
            const PolyFq P = monic_from_index(F, d, k);
            if (!is_irreducible(P)) continue;
            for (int j = 1; j <= 3; ++j) {
                const GaussSum G(pow(P, static_cast<unsigned>(j)));
                for (const PolyFq& V : Vs) {
                    r.max_residual = std::max(r.max_residual, std::abs(G(V) - gauss_sum_closed(V, P, j)));
                    ++r.cases;
                }
            }
        }
    // q = 1 mod 4: sqrt(q); q = 3 mod 4: i sqrt(q). Holds for prime q.
    const double rq = std::sqrt(static_cast<double>(cfg.q));
    const cplx expect = cfg.q % 4 == 1 ? cplx(rq) : cplx(0.0, rq);
    const PolyFq x = PolyFq::monomial(F, 1);
    CheckResult u{"gauss_x", cfg.q, 0, 1, std::abs(gauss_sum_direct(PolyFq::one(F), x) - expect), 1e-12};
    return {r, u};
}

/// Character sum over H_{2g+1} both ways, every monic f of degree <= 4; exact.
inline CheckResult check_l1(const VerifyConfig& cfg, int max_f_degree = 4) {
    const FieldParams F(cfg.q);
    CheckResult r{"l1", cfg.q, cfg.g};
    for (const PolyFq& f : detail::monic_upto(F, max_f_degree)) {
        const L1Sides s = char_sum_L1_sides(f, cfg.g);
        r.max_residual = std::max(r.max_residual, std::abs(static_cast<double>(s.lhs - s.rhs)));
        ++r.cases;
    }
    return r;
}

/// Sum of chi_f over M_m by enumeration and through Gauss sums, every monic
/// nonconstant f of degree <= 4 and m <= 4.
inline CheckResult check_l3(const VerifyConfig& cfg, int max_f_degree = 4, int max_m = 4) {
    const FieldParams F(cfg.q);
    CheckResult r{"l3", cfg.q, 0, 0, 0.0, 1e-9};
    for (const PolyFq& f : detail::monic_upto(F, max_f_degree)) {
        if (f.degree() < 1) continue;
        for (int m = 0; m <= max_m; ++m) {
            const L3Sides s = char_sum_L3(f, m);
            r.max_residual = std::max(r.max_residual, std::abs(s.direct - s.closed));
            ++r.cases;
        }
    }
    return r;
}

/// Mean of chi_D(f^2) against prod_{P | f} (1 + 1/|P|)^{-1}, within 10 q^{-2g},
/// for f in {x, x + 1, x(x + 1)}.
inline std::vector<EnsembleReport> l5_reports(const EnsembleSpec& spec) {
    const FieldParams F(spec.q);
    std::vector<Statistic> stats;
    for (const PolyFq& f : {PolyFq(F, {0, 1}), PolyFq(F, {1, 1}), PolyFq(F, {0, 1, 1})}) stats.push_back(ChiSquareStat{f});
    return empirical_statistics(spec, stats);
}

inline CheckResult check_l5(const EnsembleSpec& spec) {
    CheckResult r{"l5", spec.q, spec.g, 0, 0.0, 10.0 * std::pow(static_cast<double>(spec.q), -2.0 * spec.g)};
    for (const EnsembleReport& e : l5_reports(spec)) {
        r.max_residual = std::max(r.max_residual, e.abs_err);
        ++r.cases;
    }
    return r;
}

}  // namespace hyperl

#endif  // HYPERL_VERIFY_HPP
