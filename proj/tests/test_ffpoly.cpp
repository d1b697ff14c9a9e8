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

#include <map>
#include <set>

#include "hyperl/primes.hpp"

using namespace hyperl;

namespace {

const FieldParams F5(5);

PolyFq P(std::initializer_list<std::int64_t> c) { return PolyFq(F5, c); }

// Oracle: irreducibles of degree <= n found by sieving out every product of two
// monic polynomials of positive degree. Independent of the library's test.
std::map<int, std::set<std::uint64_t>> sieve_primes(const FieldParams& F, int n) {
    std::map<int, std::set<std::uint64_t>> composite;
    for (int a = 1; a < n; ++a)
        for (int b = a; a + b <= n; ++b)
            for (const auto& f : enumerate_monic(F, a))
                for (const auto& g : enumerate_monic(F, b)) composite[a + b].insert(monic_index(f * g));
    std::map<int, std::set<std::uint64_t>> primes;
    for (int d = 1; d <= n; ++d)
        for (std::uint64_t k = 0; k < monic_count(F, d); ++k)
            if (!composite[d].count(k)) primes[d].insert(k);
    return primes;
}

}  // namespace

TEST(FieldParams, RejectsBadModuli) {
    EXPECT_THROW(FieldParams(3), precondition_error);
    EXPECT_THROW(FieldParams(7), precondition_error);
    EXPECT_THROW(FieldParams(9), precondition_error);
    EXPECT_THROW(FieldParams(21), precondition_error);
    EXPECT_NO_THROW(FieldParams(13));
    EXPECT_EQ(F5.legendre(2), -1);
    EXPECT_EQ(F5.legendre(4), 1);
    EXPECT_EQ(F5.legendre(0), 0);
}

TEST(PolyRing, GcdOfQuadraticAndLinear) {
    const PolyFq a = P({1, 0, 1});  // x^2+1
    const PolyFq b = P({2, 1});     // x+2
    EXPECT_EQ(P({2, 1}) * P({3, 1}), a);
    EXPECT_EQ(gcd(a, b), b);
    EXPECT_EQ(gcd(a, P({1, 1})), PolyFq::one(F5));
    EXPECT_TRUE(gcd(PolyFq(F5), PolyFq(F5)).is_zero());
    EXPECT_EQ(gcd(P({0, 3}), PolyFq(F5)), P({0, 1}));
}

TEST(PolyRing, DerivativeVanishesInCharacteristic) {
    EXPECT_TRUE(derivative(PolyFq::monomial(F5, 5)).is_zero());
    EXPECT_EQ(derivative(P({1, 2, 3})), P({2, 6}));
}

TEST(PolyRing, PowmodAndDivmod) {
    EXPECT_EQ(powmod(P({0, 1}), 2, P({1, 0, 1})), P({4}));
    const PolyFq a = P({3, 1, 4, 1, 2});
    const PolyFq b = P({2, 0, 3});
    auto [quo, rem] = divmod(a, b);
    EXPECT_LT(rem.degree(), b.degree());
    EXPECT_EQ(quo * b + rem, a);
    EXPECT_THROW(divmod(a, PolyFq(F5)), std::domain_error);
    EXPECT_THROW(a + PolyFq(FieldParams(13), {1}), precondition_error);
}

TEST(PolyRing, ParseAndFormat) {
    EXPECT_EQ(parse_poly(F5, "x^3+2*x+1"), P({1, 2, 0, 1}));
    EXPECT_EQ(parse_poly(F5, "1,2,0,1"), P({1, 2, 0, 1}));
    EXPECT_EQ(parse_poly(F5, "x^2 - 1"), P({4, 0, 1}));
    EXPECT_EQ(parse_poly(F5, "3x+7"), P({2, 3}));
    EXPECT_EQ(to_string(P({1, 2, 0, 1})), "1,2,0,1");
    EXPECT_EQ(to_symbolic(P({1, 2, 0, 1})), "x^3+2*x+1");
    EXPECT_EQ(to_string(PolyFq(F5)), "0");
    EXPECT_THROW(parse_poly(F5, "x^^2"), precondition_error);
    EXPECT_THROW(parse_poly(F5, ""), precondition_error);
    for (const auto& f : enumerate_monic(F5, 3)) {
        EXPECT_EQ(parse_poly(F5, to_string(f)), f);
        EXPECT_EQ(parse_poly(F5, to_symbolic(f)), f);
    }
}

TEST(Enumeration, CanonicalOrder) {
    EXPECT_EQ(enumerate_monic(F5, 0), std::vector<PolyFq>{PolyFq::one(F5)});
    const auto lin = enumerate_monic(F5, 1);
    ASSERT_EQ(lin.size(), 5u);
    for (int a = 0; a < 5; ++a) EXPECT_EQ(lin[a], P({a, 1}));
    const auto cub = enumerate_monic(F5, 3);
    ASSERT_EQ(cub.size(), 125u);
    EXPECT_EQ(cub[7], P({2, 1, 0, 1}));
    for (std::uint64_t k = 0; k < cub.size(); ++k) EXPECT_EQ(monic_index(cub[k]), k);
    EXPECT_THROW(monic_from_index(F5, 2, 25), precondition_error);
}

TEST(Squarefree, Examples) {
    EXPECT_TRUE(is_squarefree(P({1, 0, 1})));
    EXPECT_FALSE(is_squarefree(P({1, 2, 1})));
    EXPECT_FALSE(is_squarefree(P({1, 0, 0, 0, 0, 1})));
    EXPECT_THROW(is_squarefree(PolyFq(F5)), precondition_error);
}

TEST(Squarefree, CountMatchesFormula) {
    for (int n = 2; n <= 7; ++n) {
        std::uint64_t count = 0;
        for (std::uint64_t k = 0; k < monic_count(F5, n); ++k) count += is_squarefree(monic_from_index(F5, n, k));
        EXPECT_EQ(count, monic_count(F5, n) - monic_count(F5, n - 1)) << "n=" << n;
    }
}

TEST(Primes, CountsAgainstSieve) {
    EXPECT_EQ(prime_count(5, 1), 5);
    EXPECT_EQ(prime_count(5, 2), 10);
    EXPECT_EQ(prime_count(5, 4), 150);
    EXPECT_THROW(prime_count(5, 0), precondition_error);
    const auto sieve = sieve_primes(F5, 4);
    const PrimeTable table(F5, 4);
    for (int d = 1; d <= 4; ++d) {
        std::set<std::uint64_t> got;
        for (const auto& p : table.of_degree(d)) got.insert(monic_index(p));
        EXPECT_EQ(got, sieve.at(d)) << "d=" << d;
        EXPECT_EQ(static_cast<std::int64_t>(got.size()), prime_count(5, d));
    }
}

TEST(Primes, PrimePolynomialTheorem) {
    for (int n = 1; n <= 8; ++n) {
        std::int64_t s = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) s += d * prime_count(5, d);
        EXPECT_EQ(s, checked::pow(5, n));
    }
    for (int n = 1; n <= 6; ++n) {
        std::int64_t s = 0;
        for (const auto& f : enumerate_monic(F5, n)) s += arith_functions(f).von_mangoldt;
        EXPECT_EQ(s, checked::pow(5, n)) << "n=" << n;
    }
}

TEST(Factor, Examples) {
    const auto fx = factor(P({1, 0, 1}));
    ASSERT_EQ(fx.factors.size(), 2u);
    EXPECT_EQ(fx.factors[0].first, P({2, 1}));
    EXPECT_EQ(fx.factors[1].first, P({3, 1}));
    const auto cube = factor(pow(P({1, 1}), 3));
    ASSERT_EQ(cube.factors.size(), 1u);
    EXPECT_EQ(cube.factors[0].second, 3);
    EXPECT_EQ(factor(P({0, 1})).factors.size(), 1u);
    EXPECT_THROW(factor(PolyFq(F5)), precondition_error);
    const auto nm = factor(P({3, 0, 3}));
    EXPECT_EQ(nm.unit, 3u);
    EXPECT_EQ(nm.product(F5), P({3, 0, 3}));
}

TEST(Factor, RoundTripExhaustive) {
    const PrimeTable table(F5, 3);
    for (int n = 0; n <= 6; ++n)
        for (const auto& f : enumerate_monic(F5, n)) {
            const auto fac = factor(f, table);
            ASSERT_EQ(fac.product(F5), f) << to_string(f);
            for (const auto& [p, e] : fac.factors) {
                EXPECT_TRUE(p.is_monic());
                EXPECT_TRUE(is_irreducible(p));
                EXPECT_GE(e, 1);
            }
        }
}

TEST(ArithFunctions, Examples) {
    EXPECT_EQ(arith_functions(P({1, 0, 1})).mobius, 1);
    EXPECT_EQ(arith_functions(P({0, 0, 1})).von_mangoldt, 1);
    const PolyFq p2q = pow(P({0, 1}), 2) * P({1, 1});
    EXPECT_EQ(arith_functions(p2q).nu, (Rational{1, 2}));
    EXPECT_EQ(arith_functions(p2q).mobius, 0);
    EXPECT_EQ(arith_functions(PolyFq::one(F5)).mobius, 1);
    EXPECT_EQ(arith_functions(P({2, 0, 1})).von_mangoldt, 2);  // x^2+2 is irreducible mod 5
    EXPECT_THROW(arith_functions(P({1, 2})), precondition_error);
}

TEST(ArithFunctions, MultiplicativityAndSupport) {
    std::vector<PolyFq> all;
    for (int n = 0; n <= 2; ++n)
        for (const auto& f : enumerate_monic(F5, n)) all.push_back(f);
    for (const auto& a : all)
        for (const auto& b : all) {
            if (gcd(a, b).degree() != 0) continue;
            EXPECT_EQ(arith_functions(a * b).mobius, arith_functions(a).mobius * arith_functions(b).mobius);
        }
    for (int n = 1; n <= 4; ++n)
        for (const auto& f : enumerate_monic(F5, n)) {
            const auto fac = factor(f);
            const int lam = arith_functions(fac).von_mangoldt;
            EXPECT_EQ(lam != 0, fac.factors.size() == 1);
        }
}

TEST(FactorTable, MatchesFactor) {
    const FactorTable ft(F5, 4);
    for (int n = 0; n <= 4; ++n)
        for (std::uint64_t k = 0; k < monic_count(F5, n); k += 7) {
            PolyFq prod = PolyFq::one(F5);
            for (const auto& [id, e] : ft.at(n, k)) prod = prod * pow(ft.primes()[id], static_cast<unsigned>(e));
            EXPECT_EQ(prod, monic_from_index(F5, n, k));
        }
}

TEST(Checked, OverflowDetected) {
    EXPECT_THROW(checked::pow(5, 40), overflow_error);
    EXPECT_EQ(checked::pow(5, 20), 95367431640625LL);
}
