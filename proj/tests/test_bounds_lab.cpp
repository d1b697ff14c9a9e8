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

#include <numbers>

#include "hyperl/bounds_lab.hpp"

using namespace hyperl;

namespace {

const FieldParams F5(5);

EnsembleSpec exhaustive(int g) {
    EnsembleSpec s;
    s.q = 5;
    s.g = g;
    return s;
}

}  // namespace

TEST(BBeta, SeriesSettles) {
    for (std::uint32_t q : {5u, 13u})
        for (int N : {1, 2, 4, 8})
            for (double beta : {0.01, 0.1, 0.3, 1.0})
                for (int n = 1; n <= N; ++n) {
                    const BBetaSeries s = b_beta_series(q, n, N, beta);
                    const BBetaSeries twice = b_beta_series(q, n, N, beta, 2 * s.terms);
                    EXPECT_LT(std::abs(twice.value - s.value), 1e-14) << q << " " << N << " " << beta << " " << n;
                }
}

TEST(BBeta, PositiveOnGrid) {
    // Observed, not proven: the majorant coefficients stay positive for beta < 1/2.
    for (std::uint32_t q : {5u, 13u})
        for (int N : {2, 4, 6, 10})
            for (double beta : {0.05, 0.1, 0.3, 0.45})
                for (int n = 1; n <= N; ++n) EXPECT_GT(b_beta(q, n, N, beta), 0.0) << q << " " << N << " " << beta << " " << n;
}

TEST(BBeta, LimitsAndSpecialValues) {
    const double L5 = std::log(5.0);
    // N -> infinity at fixed n: only the j = 0 leading piece survives.
    for (int n : {1, 2, 3}) {
        const double lim = (std::exp(-n * 0.3 * L5) - std::exp(-2.0 * n * L5)) / n;
        EXPECT_NEAR(b_beta(5, n, 200, 0.3), lim, 1e-12);
    }
    // Large beta: the j = 0 term carries everything. Its leading piece is q^{-n beta}/n - q^{-2n}/n,
    // so b_beta(n) ~ q^{-n beta}/n only while beta < 2.
    auto piece = [&](double m, double beta) { return (std::exp(-m * beta * L5) - std::exp(-2.0 * m * L5)) / m; };
    for (double beta : {1.0, 1.5, 3.0})
        for (int n = 1; n <= 4; ++n) {
            const double j0 = piece(n, beta) - piece(10.0 - n, beta);
            EXPECT_LT(std::abs(b_beta(5, n, 4, beta) - j0), 1e-3 * std::abs(j0)) << beta << " " << n;
        }
    EXPECT_DOUBLE_EQ(b_beta(5, 0, 4, 0.3), majorant_constant(5, 4, 0.3));
    EXPECT_DOUBLE_EQ(b_beta(5, -2, 4, 0.3), b_beta(5, 2, 4, 0.3));
    EXPECT_THROW(b_beta(5, 5, 4, 0.3), precondition_error);
    EXPECT_THROW(b_beta(5, 1, 4, 0.0), precondition_error);
}

TEST(LemmaLb, GapMatchesSymbolRoute) {
    // Oracle: prime sums from residue symbols instead of Newton identities.
    const MajorantCoeffs c = majorant_coeffs(5, 4, 0.3);
    for (const PolyFq& D : {PolyFq(F5, {1, 1, 0, 0, 0, 1}), PolyFq(F5, {2, 0, 3, 1, 0, 1}), PolyFq(F5, {0, 4, 0, 1})})
        for (double t : {0.0, 0.7}) {
            const LPolynomial L = l_coefficients(D);
            std::vector<std::int64_t> A, B;
            prime_sums_from_symbols(chi_on_primes(D, 4), 4, A, B);
            const auto s = power_sums_from_prime_sums(A, B, 4);
            double rhs = (2.0 * L.g / 5.0) * std::log((1.0 - std::pow(5.0, -1.5)) / (1.0 - std::pow(5.0, -10.0)));
            for (int n = 1; n <= 4; ++n)
                rhs += (c.b[n] * std::pow(5.0, -0.5 * n) * std::polar(1.0, -n * t * std::log(5.0)) * static_cast<double>(s[n])).real();
            const double expect = std::log(std::abs(evaluate_shifted(L, 0.3, t))) - rhs;
            EXPECT_NEAR(*lemma_lb_gap(D, 0.3, t, 4), expect, 1e-12) << to_symbolic(D);
        }
}

TEST(LemmaLb, ScanIsBoundedBelow) {
    for (int g = 1; g <= 2; ++g) {
        std::vector<int> Ns{2, 4};
        if (2 * g > 4) Ns.push_back(2 * g);
        for (const LbScanRow& r : lb_scan(exhaustive(g), {0.1, 0.3}, Ns)) {
            EXPECT_GE(r.min_gap, -kLbGapFloor) << "g=" << g << " beta=" << r.beta << " N=" << r.N << " at " << r.argmin;
            EXPECT_EQ(r.n_excluded, 0u);
            EXPECT_EQ(r.n_used, g == 1 ? 100u : 2500u);
        }
    }
}

TEST(LemmaLb, LargeBeta) {
    // log|L| -> 0, but b_beta(n) -> -q^{-2n}/n keeps a small residue: |gap| <= |const| + 2g sum |b(n)|.
    const MajorantCoeffs c = majorant_coeffs(5, 4, 30.0);
    double bound = 2.0 * 2 / 5.0 * std::abs(std::log1p(-std::pow(5.0, -10.0)));
    for (int n = 1; n <= 4; ++n) bound += 2.0 * 2 * std::abs(c.b[n]);
    for (const LbScanRow& r : lb_scan(exhaustive(2), {30.0}, {4})) {
        EXPECT_LE(-r.min_gap, bound + 1e-12);
        EXPECT_LE(r.max_gap, bound + 1e-12);
    }
}

TEST(TrigSum, Examples) {
    const TrigSumResult r = trig_sum(5, 100, 1e-3, 0.0);
    EXPECT_LT(std::abs(r.lhs - std::log(100.0)), 1.0);
    EXPECT_DOUBLE_EQ(r.predicted, std::log(100.0));
    // One term by hand.
    EXPECT_NEAR(trig_sum(13, 1, 0.5, 1.0).lhs, std::cos(1.0) / std::sqrt(13.0), 1e-15);
    // a >= 1: predicted log(1/a) <= 0.
    EXPECT_LE(trig_sum(5, 10, 1.0, 0.1).predicted, 0.0);
    // theta near pi: the 1/tbar branch.
    EXPECT_DOUBLE_EQ(trig_sum(5, 100, 1e-3, 3.0).predicted, std::log(1.0 / 3.0));
    EXPECT_DOUBLE_EQ(t_bar(2.0 * std::numbers::pi + 0.1), t_bar(0.1));
    EXPECT_THROW(trig_sum(5, 10, 0.0, 0.0), precondition_error);
}

TEST(TrigSum, GridWithinCalibratedConstant) {
    for (std::uint32_t q : {5u, 13u})
        for (double a : {1e-3, 1e-2, 1e-1, 1.0})
            for (double th : {0.0, 0.01, 0.1, 1.0, 3.0})
                for (std::int64_t g : {10, 100, 10000}) EXPECT_LE(std::abs(trig_sum(q, g, a, th).diff), kTrigSumSlack) << q << " " << a << " " << th << " " << g;
}

TEST(NegScan, RowsAndBranches) {
    const auto rows = negmoment_scan(exhaustive(2), {2, 3}, {0.2, 0.4}, 1.0, {0.0});
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& r : rows) {
        EXPECT_EQ(r.branch, "beta");
        EXPECT_EQ(r.report.n_excluded, 0u);
        EXPECT_NEAR(r.report.predicted.real(), std::log(static_cast<double>(r.report.g)), 1e-15);
        EXPECT_DOUBLE_EQ(r.ratio, r.report.empirical.real() / r.report.predicted.real());
        EXPECT_FALSE(r.in_window);  // beta <= g^{-1/2} here
    }
    EXPECT_EQ(negmoment_branch(0.2, {3.0, 0.1}), "tbar;beta");
    // m = 0: every moment is 1.
    for (const auto& r : negmoment_scan(exhaustive(2), {2}, {0.3}, 0.0, {0.0, 1.0})) EXPECT_EQ(r.report.empirical, cplx(1.0));
}
