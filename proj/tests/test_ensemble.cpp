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

#include <gtest/gtest.h>

#include <cstring>

#include "hyperl/characters.hpp"
#include "hyperl/ensemble.hpp"

using namespace hyperl;

namespace {

const FieldParams F5(5);

EnsembleSpec exhaustive(int g, unsigned threads = 1) {
    EnsembleSpec s;
    s.q = 5;
    s.g = g;
    s.threads = threads;
    return s;
}

// Oracle: mean of f(D, L) over square-free D found by gcd, L from the powmod path.
template <class F>
cplx brute_mean(int g, CoefficientMode mode, F&& f) {
    CompensatedComplexSum s;
    std::uint64_t n = 0;
    for (const PolyFq& D : enumerate_monic(F5, 2 * g + 1)) {
        if (!is_squarefree(D)) continue;
        s.add(f(D, l_coefficients(D, mode)));
        ++n;
    }
    return s.value() / static_cast<double>(n);
}

bool same_bits(cplx a, cplx b) { return std::memcmp(&a, &b, sizeof(cplx)) == 0; }

}  // namespace

TEST(Ensemble, ExhaustiveCounts) {
    for (int g = 1; g <= 3; ++g) {
        const std::uint64_t expect = checked::pow(5, 2 * g + 1) - checked::pow(5, 2 * g);
        std::uint64_t last = 0;
        bool ordered = true;
        const std::uint64_t n = iterate_H(exhaustive(g), [&](std::uint64_t k, const PolyFq&) {
            ordered = ordered && (k >= last);
            last = k;
        });
        EXPECT_EQ(n, expect) << "g=" << g;
        EXPECT_TRUE(ordered);
    }
    // Same set as a gcd-based enumeration.
    std::vector<std::uint64_t> got;
    iterate_H(exhaustive(2), [&](std::uint64_t k, const PolyFq& D) {
        got.push_back(k);
        EXPECT_EQ(monic_index(D), k);
    });
    std::vector<std::uint64_t> oracle;
    for (std::uint64_t k = 0; k < monic_count(F5, 5); ++k)
        if (is_squarefree(monic_from_index(F5, 5, k))) oracle.push_back(k);
    EXPECT_EQ(got, oracle);
}

TEST(Ensemble, SampledStreamsAreReproducible) {
    EnsembleSpec s = exhaustive(3);
    s.mode = SampleMode::sampled;
    s.count = 1000;
    s.seed = 7;
    const auto a = sample_indices(s), b = sample_indices(s);
    EXPECT_EQ(a, b);
    ASSERT_EQ(a.size(), 1000u);
    for (auto k : a) EXPECT_TRUE(is_squarefree(monic_from_index(F5, 7, k)));
    s.seed = 8;
    EXPECT_NE(sample_indices(s), a);
    // Frozen head of the stream: guards against silent generator changes.
    std::vector<std::uint64_t> seen;
    iterate_H(s, [&](std::uint64_t k, const PolyFq&) { seen.push_back(k); });
    EXPECT_EQ(seen, sample_indices(s));
}

TEST(Ensemble, AverageOfOneIsOne) {
    const SlotAverage a = average(exhaustive(2), [](const EnsembleItem&) { return cplx(1.0); });
    EXPECT_EQ(a.mean, cplx(1.0));
    EXPECT_EQ(a.count, 2500u);  // 5^5 - 5^4
}

TEST(Ensemble, ThreadCountDoesNotChangeBits) {
    std::vector<Statistic> stats = {RatioStat{ShiftSet{0.1}, ShiftSet{0.3}, false}, ChiSquareStat{PolyFq(F5, {0, 1})},
                                    TwistedStat{ShiftSet{cplx(0.1, 0.2)}, PolyFq(F5, {1, 1})}};
    std::vector<std::vector<EnsembleReport>> runs;
    for (unsigned t : {1u, 4u, 8u}) {
        EnsembleSpec s = exhaustive(3, t);
        s.chunk_size = 1000;
        runs.push_back(empirical_statistics(s, stats));
    }
    for (std::size_t r = 1; r < runs.size(); ++r)
        for (std::size_t i = 0; i < stats.size(); ++i) EXPECT_TRUE(same_bits(runs[0][i].empirical, runs[r][i].empirical));
    // A different chunking regroups the sums: equal to rounding, not necessarily bitwise.
    EnsembleSpec s = exhaustive(3);
    s.chunk_size = 333;
    const auto other = empirical_statistics(s, stats);
    for (std::size_t i = 0; i < stats.size(); ++i) EXPECT_LT(std::abs(other[i].empirical - runs[0][i].empirical), 1e-14);
}

TEST(Ensemble, RatioMatchesDirectOracle) {
    const cplx a(0.1, 0.5), b(0.25, -0.3);
    const cplx ua = qpow(5.0, 0.5 + a), ub = qpow(5.0, 0.5 + b);
    for (int g : {1, 2}) {
        const cplx expect = brute_mean(g, g == 1 ? CoefficientMode::direct : CoefficientMode::full_recursion,
                                       [&](const PolyFq&, const LPolynomial& L) { return evaluate_at(L, ua) / evaluate_at(L, ub); });
        const EnsembleReport r = empirical_statistic(exhaustive(g), RatioStat{ShiftSet{a}, ShiftSet{b}, false});
        EXPECT_LT(std::abs(r.empirical - expect), 1e-12) << "g=" << g;
        EXPECT_EQ(r.n_excluded, 0u);
        EXPECT_EQ(r.statistic, "ratio");
    }
}

TEST(Ensemble, TwistedMatchesJacobiOracle) {
    const cplx a(-0.1, 0.2);
    const cplx ua = qpow(5.0, 0.5 + a);
    for (const PolyFq& h : {PolyFq(F5, {0, 1}), PolyFq(F5, {0, 0, 1}), PolyFq(F5, {2, 0, 1}), PolyFq(F5, {0, 1, 1})}) {
        const cplx expect = brute_mean(2, CoefficientMode::full_recursion, [&](const PolyFq& D, const LPolynomial& L) {
            return static_cast<double>(jacobi_reciprocity(D, h)) * evaluate_at(L, ua);
        });
        const EnsembleReport r = empirical_statistic(exhaustive(2), TwistedStat{ShiftSet{a}, h});
        EXPECT_LT(std::abs(r.empirical - expect), 1e-12) << to_symbolic(h);
    }
}

TEST(Ensemble, ChiSquareAverage) {
    // Exact: the fraction of D with gcd(D, f) = 1.
    for (const PolyFq& f : {PolyFq(F5, {0, 1}), PolyFq(F5, {0, 1, 1}), PolyFq(F5, {2, 0, 1})}) {
        const cplx expect = brute_mean(2, CoefficientMode::recursion, [&](const PolyFq& D, const LPolynomial&) {
            return gcd(D, f).degree() == 0 ? 1.0 : 0.0;
        });
        const EnsembleReport r = empirical_statistic(exhaustive(2), ChiSquareStat{f});
        EXPECT_EQ(r.empirical, expect) << to_symbolic(f);
    }
    const EnsembleReport r = empirical_statistic(exhaustive(3), ChiSquareStat{PolyFq(F5, {0, 1})});
    EXPECT_NEAR(r.predicted.real(), 1.0 / 1.2, 1e-15);
    EXPECT_LE(r.abs_err, 10.0 * std::pow(5.0, -6.0));
}

TEST(Ensemble, DensityRoutesAgree) {
    const int g = 2, N = 4;
    std::vector<double> phihat;
    for (int k = 0; k <= N; ++k) phihat.push_back(static_cast<double>(N + 1 - k) / (N + 1));
    const EnsembleReport r = empirical_statistic(exhaustive(g), DensityStat{phihat, N});
    ASSERT_TRUE(r.route_gap.has_value());
    EXPECT_LT(*r.route_gap, 1e-8);
    EXPECT_LT(std::abs(r.empirical - *r.alt_empirical), 1e-10);
    EXPECT_FALSE(r.warning);
    // Oracle for the explicit route: s_n from Lambda-weighted symbols (powmod path).
    TrigPoly h;
    for (double v : phihat) h.hhat.push_back(v / (2.0 * g));
    const cplx expect = brute_mean(g, CoefficientMode::recursion, [&](const PolyFq& D, const LPolynomial& L) {
        std::vector<std::int64_t> A, B;
        prime_sums_from_symbols(chi_on_primes(D, N), N, A, B);
        return cplx(explicit_prime_side(5, L.g, h, power_sums_from_prime_sums(A, B, N)));
    });
    EXPECT_LT(std::abs(*r.alt_empirical - expect), 1e-12);
}

TEST(Ensemble, NegativeMomentSanity) {
    const EnsembleReport zero_m = empirical_statistic(exhaustive(2), NegMomentStat{{0.3}, {0.0}, 0.0});
    EXPECT_EQ(zero_m.empirical, cplx(1.0));
    const EnsembleReport r = empirical_statistic(exhaustive(2), NegMomentStat{{0.2}, {0.0}, 1.0});
    EXPECT_EQ(r.n_excluded, 0u);
    EXPECT_GT(r.empirical.real(), 0.0);
    EXPECT_NEAR(r.predicted.real(), std::log(2.0), 1e-15);  // k = m = 1, t = 0
}

TEST(Ensemble, SampledModeReportsStandardError) {
    EnsembleSpec s = exhaustive(3);
    s.mode = SampleMode::sampled;
    s.count = 2000;
    s.seed = 3;
    const EnsembleReport r = empirical_statistic(s, RatioStat{ShiftSet{0.1}, ShiftSet{0.3}, false});
    EXPECT_GT(r.stderr_re, 0.0);
    EXPECT_LT(std::abs(r.empirical - r.predicted), 6.0 * r.stderr_re + 0.05);
    EXPECT_EQ(r.seed, 3u);
    EXPECT_EQ(r.n_used, 2000u);
}

TEST(Ensemble, Errors) {
    EnsembleSpec big = exhaustive(5);
    EXPECT_THROW(validate(big), precondition_error);
    try {
        validate(big);
    } catch (const precondition_error& e) {
        EXPECT_NE(std::string(e.what()).find("sampled"), std::string::npos);
    }
    EnsembleSpec s = exhaustive(1);
    s.mode = SampleMode::sampled;
    EXPECT_THROW(validate(s), precondition_error);
    EXPECT_THROW(empirical_statistic(exhaustive(1), RatioStat{ShiftSet{0.1}, ShiftSet{0.3, 0.2}, false}), precondition_error);
    EXPECT_THROW(empirical_statistic(exhaustive(1), NegMomentStat{{0.0}, {0.0}, 1.0}), precondition_error);
    try {
        average(exhaustive(1), [](const EnsembleItem& it) -> cplx {
            if (it.index == 7) throw std::runtime_error("boom");
            return 0.0;
        });
        FAIL() << "expected the functional failure to propagate";
    } catch (const std::runtime_error& e) {
        const std::string D = to_symbolic(monic_from_index(F5, 3, 7));
        EXPECT_NE(std::string(e.what()).find("D = " + D), std::string::npos) << e.what();
    }
}
