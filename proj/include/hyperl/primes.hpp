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

#ifndef HYPERL_PRIMES_HPP
#define HYPERL_PRIMES_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace hyperl {

/// Classical Moebius function of a positive integer.
inline int mobius_int(std::int64_t n) {
    if (n < 1) throw precondition_error("mobius_int: n must be >= 1");
    int sign = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

/// Number of monic irreducibles of degree d over F_q: (1/d) sum_{e|d} mu(e) q^{d/e}.
inline std::int64_t prime_count(std::uint32_t q, int d) {
    if (d <= 0) throw precondition_error("prime_count: degree must be >= 1, got " + std::to_string(d));
    std::int64_t s = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        const int mu = mobius_int(e);
        if (mu != 0) s = checked::add(s, mu * checked::pow(q, static_cast<unsigned>(d / e)));
    }
    return s / d;
}

/// Same count as a double, for Euler-product exponents at large d.
inline double prime_count_real(double q, int d) {
    if (d <= 0) throw precondition_error("prime_count: degree must be >= 1");
    double s = 0.0;
    for (int e = 1; e <= d; ++e)
        if (d % e == 0) s += mobius_int(e) * std::pow(q, static_cast<double>(d / e));
    return s / d;
}

/// Rabin's test: f of degree d is irreducible iff x^{q^d} = x mod f and
/// gcd(x^{q^{d/r}} - x, f) = 1 for every prime r dividing d.
inline bool is_irreducible(const PolyFq& f) {
    if (f.is_zero()) throw precondition_error("is_irreducible of the zero polynomial");
    const int d = f.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    const auto& F = f.field();
    const PolyFq x = PolyFq::monomial(F, 1);
    std::vector<PolyFq> frob;  // frob[k] = x^{q^k} mod f
    frob.push_back(x % f);
    for (int k = 1; k <= d; ++k) frob.push_back(powmod(frob.back(), F.q(), f));
    if (!((frob[d] - x) % f).is_zero()) return false;
    for (int r = 2; r <= d; ++r) {
        if (d % r || !FieldParams::is_prime(static_cast<std::uint32_t>(r))) continue;
        if (gcd(frob[d / r] - x, f).degree() != 0) return false;
    }
    return true;
}

/// Monic irreducibles listed by degree, in canonical monic-index order.
class PrimeTable {
   public:
    PrimeTable(FieldParams field, int max_degree) : field_(field), max_degree_(max_degree) {
        if (max_degree < 0) throw precondition_error("PrimeTable: max degree must be >= 0");
        by_degree_.resize(static_cast<std::size_t>(max_degree) + 1);
        for (int d = 1; d <= max_degree; ++d) {
            const std::uint64_t n = monic_count(field, d);
            for (std::uint64_t k = 0; k < n; ++k) {
                PolyFq f = monic_from_index(field, d, k);
                if (is_irreducible(f)) by_degree_[d].push_back(std::move(f));
            }
        }
    }

    const FieldParams& field() const noexcept { return field_; }
    int max_degree() const noexcept { return max_degree_; }
    const std::vector<PolyFq>& of_degree(int d) const {
        if (d < 1 || d > max_degree_) throw precondition_error("PrimeTable: degree out of table range");
        return by_degree_[d];
    }
    std::int64_t count(int d) const { return prime_count(field_.q(), d); }

   private:
    FieldParams field_;
    int max_degree_;
    std::vector<std::vector<PolyFq>> by_degree_;
};

/// Process-wide cache of prime tables; each table is immutable once published.
inline std::shared_ptr<const PrimeTable> shared_prime_table(const FieldParams& F, int max_degree) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::shared_ptr<const PrimeTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[F.q()];
    if (!slot || slot->max_degree() < max_degree) slot = std::make_shared<const PrimeTable>(F, max_degree);
    return slot;
}

struct Factorization {
    Residue unit = 1;
    std::vector<std::pair<PolyFq, int>> factors;  // distinct monic primes, ascending degree

    PolyFq product(const FieldParams& F) const {
        PolyFq r = PolyFq::constant(F, unit);
        for (const auto& [p, e] : factors) r = r * pow(p, static_cast<unsigned>(e));
        return r;
    }
};

/// Trial division against the table up to half the degree; the cofactor is prime.
inline Factorization factor(const PolyFq& f, const PrimeTable& table) {
    if (f.is_zero()) throw precondition_error("factor of the zero polynomial");
    Factorization out;
    out.unit = f.leading();
    PolyFq rest = f.monic();
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        if (d > table.max_degree()) throw precondition_error("factor: prime table too small for degree " + std::to_string(f.degree()));
        for (const PolyFq& p : table.of_degree(d)) {
            if (2 * d > rest.degree()) break;
            int e = 0;
            while (true) {
                auto [quo, rem] = divmod(rest, p);
                if (!rem.is_zero()) break;
                rest = std::move(quo);
                ++e;
            }
            if (e) out.factors.emplace_back(p, e);
        }
    }
    if (rest.degree() > 0) {
        bool merged = false;
        for (auto& [p, e] : out.factors)
            if (p == rest) {
                ++e;
                merged = true;
            }
        if (!merged) out.factors.emplace_back(rest, 1);
    }
    return out;
}

inline Factorization factor(const PolyFq& f) {
    if (f.is_zero()) throw precondition_error("factor of the zero polynomial");
    return factor(f, *shared_prime_table(f.field(), std::max(1, f.degree() / 2)));
}

struct Rational {
    std::int64_t num;
    std::int64_t den;
    friend bool operator==(const Rational&, const Rational&) = default;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct ArithValues {
    int mobius;
    int von_mangoldt;  // degree-unit convention: d(P) on prime powers
    Rational nu;       // prod over P^a || f of 1/a!
};

inline ArithValues arith_functions(const Factorization& fac) {
    ArithValues v{1, 0, {1, 1}};
    for (const auto& [p, e] : fac.factors) {
        v.mobius = e > 1 ? 0 : -v.mobius;
        for (int i = 2; i <= e; ++i) v.nu.den = checked::mul(v.nu.den, i);
    }
    if (fac.factors.size() == 1) v.von_mangoldt = fac.factors[0].first.degree();
    return v;
}

inline ArithValues arith_functions(const PolyFq& f) {
    if (!f.is_monic()) throw precondition_error("arith_functions requires a monic polynomial");
    return arith_functions(factor(f));
}

/// Factorizations of every monic polynomial of degree <= max_degree, stored as
/// (prime id, exponent) lists. Prime ids index primes().
class FactorTable {
   public:
    FactorTable(FieldParams field, int max_degree) : field_(field), max_degree_(max_degree) {
        const PrimeTable table(field, std::max(1, max_degree));
        std::map<std::uint64_t, std::uint32_t> id_of[64];
        for (int d = 1; d <= max_degree; ++d)
            for (const PolyFq& p : table.of_degree(d)) {
                id_of[d][monic_index(p)] = static_cast<std::uint32_t>(primes_.size());
                primes_.push_back(p);
            }
        entries_.resize(static_cast<std::size_t>(max_degree) + 1);
        for (int n = 0; n <= max_degree; ++n) {
            const std::uint64_t count = monic_count(field, n);
            entries_[n].resize(count);
            for (std::uint64_t k = 0; k < count; ++k) {
                const Factorization fac = factor(monic_from_index(field, n, k), table);
                for (const auto& [p, e] : fac.factors) entries_[n][k].emplace_back(id_of[p.degree()].at(monic_index(p)), e);
            }
        }
    }

    int max_degree() const noexcept { return max_degree_; }
    const std::vector<PolyFq>& primes() const noexcept { return primes_; }
    const std::vector<std::pair<std::uint32_t, int>>& at(int n, std::uint64_t k) const { return entries_.at(n).at(k); }

   private:
    FieldParams field_;
    int max_degree_;
    std::vector<PolyFq> primes_;
    std::vector<std::vector<std::vector<std::pair<std::uint32_t, int>>>> entries_;
};

}  // namespace hyperl

#endif  // HYPERL_PRIMES_HPP
