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

#ifndef HYPERL_CHARACTERS_HPP
#define HYPERL_CHARACTERS_HPP

#include <cmath>
#include <climits>
#include <cstdint>
#include <numbers>
#include <vector>

#include "primes.hpp"

namespace hyperl {

/// (f | P) for a monic irreducible P, computed as f^{(|P|-1)/2} mod P.
/// The caller guarantees that P is irreducible.
inline int residue_symbol_unchecked(const PolyFq& f, const PolyFq& P) {
    const PolyFq r = f % P;
    if (r.is_zero()) return 0;
    const PolyFq s = powmod(r, (P.norm() - 1) / 2, P);
    if (s.degree() != 0) throw std::logic_error("residue_symbol: modulus is not irreducible");
    return s.coeff(0) == 1 ? 1 : -1;
}

inline int residue_symbol(const PolyFq& f, const PolyFq& P) {
    PolyFq::same_field(f, P);
    if (!P.is_monic() || !is_irreducible(P)) throw precondition_error("residue_symbol: modulus must be monic irreducible, got " + to_string(P));
    return residue_symbol_unchecked(f, P);
}

/// Jacobi symbol (f | Q) as the product of residue symbols over the factorization of Q.
inline int jacobi_symbol(const PolyFq& f, const Factorization& Q) {
    int s = 1;
    for (const auto& [P, e] : Q.factors) {
        const int r = residue_symbol_unchecked(f, P);
        if (r == 0) return 0;
        if (e % 2 && r < 0) s = -s;
    }
    return s;
}

inline int jacobi_symbol(const PolyFq& f, const PolyFq& Q) {
    PolyFq::same_field(f, Q);
    if (Q.is_zero()) throw precondition_error("jacobi_symbol: zero modulus");
    if (!Q.is_monic()) throw precondition_error("jacobi_symbol: modulus must be monic");
    if (Q.degree() == 0) return 1;
    return jacobi_symbol(f, factor(Q));
}

/// Jacobi symbol by the Euclidean reciprocity descent. For q = 1 (mod 4) and
/// coprime monic A, B reciprocity is sign-free, and a constant c contributes
/// legendre(c)^{deg B}.
inline int jacobi_reciprocity(PolyFq a, PolyFq b) {
    PolyFq::same_field(a, b);
    if (b.is_zero() || !b.is_monic()) throw precondition_error("jacobi_reciprocity: modulus must be monic");
    const FieldParams F = b.field();
    int s = 1;
    while (b.degree() > 0) {
        a = a % b;
        if (a.is_zero()) return 0;
        if (b.degree() % 2 && F.legendre(a.leading()) < 0) s = -s;
        a = a.monic();
        std::swap(a, b);
    }
    return s;
}

/// chi_D(f) = (D | f).
inline int chi(const PolyFq& D, const PolyFq& f) { return jacobi_symbol(D, f); }

/// The q-th roots of unity exp(2 pi i k / q).
class RootsOfUnity {
   public:
    explicit RootsOfUnity(std::uint32_t q) : w_(q) {
        for (std::uint32_t k = 0; k < q; ++k) {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q);
            w_[k] = {std::cos(t), std::sin(t)};
        }
    }
    const cplx& operator[](std::uint32_t k) const { return w_[k % w_.size()]; }

   private:
    std::vector<cplx> w_;
};

/// Coefficient of 1/x in the Laurent expansion of a/f at infinity.
inline Residue laurent_a1(const PolyFq& a, const PolyFq& f) {
    PolyFq::same_field(a, f);
    if (f.is_zero()) throw precondition_error("exp_linear: zero denominator");
    const int n = f.degree();
    if (n == 0) return 0;
    const PolyFq r = a % f;
    const auto& F = f.field();
    return F.mul(r.coeff(static_cast<std::size_t>(n - 1)), F.inv(f.leading()));
}

/// e(a/f) = exp(2 pi i a_1 / q). The trace down to F_p is the identity for prime q.
inline cplx exp_linear(const PolyFq& a, const PolyFq& f) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(laurent_a1(a, f)) / static_cast<double>(f.q());
    return {std::cos(t), std::sin(t)};
}

/// Character table of chi_f(u) = (u | f) over all residues u mod f, indexed by
/// the base-q digits of u's coefficients (degree < n, zero included).
class GaussSum {
   public:
    explicit GaussSum(const PolyFq& f) : f_(f), roots_(f.q()) {
        if (!f.is_monic() || f.degree() < 1) throw precondition_error("gauss_sum: modulus must be monic nonconstant");
        const auto& F = f.field();
        const Factorization fac = factor(f);
        const int n = f.degree();
        const std::uint64_t count = monic_count(F, n);
        chi_.resize(count);
        std::vector<Residue> digits(static_cast<std::size_t>(n), 0);
        for (std::uint64_t k = 0; k < count; ++k) {
            std::uint64_t t = k;
            for (int i = 0; i < n; ++i) {
                digits[i] = static_cast<Residue>(t % F.q());
                t /= F.q();
            }
            chi_[k] = static_cast<std::int8_t>(jacobi_symbol(PolyFq(F, digits), fac));
        }
    }

    const PolyFq& modulus() const noexcept { return f_; }
    int chi_at(std::uint64_t index) const { return chi_.at(index); }

    /// G(V, chi_f). The map u -> a_1(uV/f) is F_q-linear, so it is fixed by its
    /// values on the basis x^i, and the sum collapses to q buckets.
    cplx operator()(const PolyFq& V) const {
        const auto& F = f_.field();
        const int n = f_.degree();
        std::vector<Residue> w(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) w[i] = laurent_a1(PolyFq::monomial(F, i) * V, f_);
        std::vector<std::int64_t> bucket(F.q(), 0);
        std::vector<Residue> digits(static_cast<std::size_t>(n), 0);
        for (std::uint64_t k = 0; k < chi_.size(); ++k) {
            if (chi_[k] != 0) {
                Residue a = 0;
                for (int i = 0; i < n; ++i) a = F.add(a, F.mul(digits[i], w[i]));
                bucket[a] += chi_[k];
            }
            for (int i = 0; i < n; ++i) {
                if (++digits[i] < F.q()) break;
                digits[i] = 0;
            }
        }
        CompensatedComplexSum s;
        for (std::uint32_t c = 0; c < F.q(); ++c) s.add(static_cast<double>(bucket[c]) * roots_[c]);
        return s.value();
    }

   private:
    PolyFq f_;
    RootsOfUnity roots_;
    std::vector<std::int8_t> chi_;
};

inline cplx gauss_sum_direct(const PolyFq& V, const PolyFq& f) {
    PolyFq::same_field(V, f);
    return GaussSum(f)(V);
}

/// Closed form of G(V, chi_{P^j}) for a prime P, by the order of P in V.
inline cplx gauss_sum_closed(const PolyFq& V, const PolyFq& P, int j) {
    PolyFq::same_field(V, P);
    if (j < 1) throw precondition_error("gauss_sum_closed: j must be >= 1");
    if (!P.is_monic() || !is_irreducible(P)) throw precondition_error("gauss_sum_closed: P must be monic irreducible");
    const double normP = static_cast<double>(P.norm());
    int alpha = 0;
    PolyFq V1 = V;
    const bool infinite = V.is_zero();
    if (!infinite) {
        while (true) {
            auto [quo, rem] = divmod(V1, P);
            if (!rem.is_zero()) break;
            V1 = std::move(quo);
            ++alpha;
        }
    }
    if (infinite || j <= alpha) {
        if (j % 2) return 0.0;
        return std::pow(normP, j) * (1.0 - 1.0 / normP);
    }
    if (j == alpha + 1) {
        if (j % 2 == 0) return -std::pow(normP, j - 1);
        return static_cast<double>(residue_symbol_unchecked(V1, P)) * std::pow(normP, j - 0.5);
    }
    return 0.0;
}

/// Sum of chi_f(r) over r in M_m, by enumeration.
inline std::int64_t char_sum_direct(const PolyFq& f, int m) {
    if (m < 0) return 0;
    const auto& F = f.field();
    if (f.degree() == 0) return static_cast<std::int64_t>(monic_count(F, m));
    const Factorization fac = factor(f);
    std::int64_t s = 0;
    const std::uint64_t count = monic_count(F, m);
    for (std::uint64_t k = 0; k < count; ++k) s += jacobi_symbol(monic_from_index(F, m, k), fac);
    return s;
}

struct L1Sides {
    std::int64_t lhs;
    std::int64_t rhs;
};

/// Both sides of the hyperelliptic character-sum identity for chi_D(f) summed over H_{2g+1}.
inline L1Sides char_sum_L1_sides(const PolyFq& f, int g) {
    if (!f.is_monic()) throw precondition_error("char_sum_L1: f must be monic");
    if (g < 1) throw precondition_error("char_sum_L1: genus must be >= 1");
    const auto& F = f.field();
    L1Sides out{0, 0};

    const int n = 2 * g + 1;
    const std::uint64_t count = monic_count(F, n);
    const bool trivial = f.degree() == 0;
    const Factorization fac = trivial ? Factorization{} : factor(f);
    for (std::uint64_t k = 0; k < count; ++k) {
        const PolyFq D = monic_from_index(F, n, k);
        if (!is_squarefree(D)) continue;
        out.lhs += trivial ? 1 : jacobi_symbol(D, fac);
    }

    // C runs over monic products of the primes of f with 2 d(C) <= 2g+1.
    std::vector<int> prime_deg;
    for (const auto& [P, e] : fac.factors) prime_deg.push_back(P.degree());
    std::vector<int> multiplicity(prime_deg.size(), 0);
    std::vector<std::int64_t> cache(static_cast<std::size_t>(n) + 1, INT64_MIN);
    auto sum_m = [&](int m) -> std::int64_t {
        if (m < 0) return 0;
        if (cache[m] == INT64_MIN) cache[m] = char_sum_direct(f, m);
        return cache[m];
    };
    while (true) {
        int dC = 0;
        for (std::size_t i = 0; i < prime_deg.size(); ++i) dC += prime_deg[i] * multiplicity[i];
        if (2 * dC <= n) {
            out.rhs += sum_m(n - 2 * dC);
            out.rhs -= static_cast<std::int64_t>(F.q()) * sum_m(n - 2 - 2 * dC);
        }
        // Odometer over exponent vectors, bounded by the degree budget.
        std::size_t i = 0;
        for (; i < multiplicity.size(); ++i) {
            ++multiplicity[i];
            int budget = 0;
            for (std::size_t t = 0; t < prime_deg.size(); ++t) budget += prime_deg[t] * multiplicity[t];
            if (2 * budget <= n) break;
            multiplicity[i] = 0;
        }
        if (i == multiplicity.size()) break;
    }
    return out;
}

struct L3Sides {
    cplx direct;
    cplx closed;
};

/// Sum of chi_f over M_m, by enumeration and by the Gauss-sum expansion.
inline L3Sides char_sum_L3(const PolyFq& f, int m) {
    if (!f.is_monic() || f.degree() < 1) throw precondition_error("char_sum_L3: f must be monic nonconstant");
    if (m < 0) throw precondition_error("char_sum_L3: m must be >= 0");
    const auto& F = f.field();
    const int n = f.degree();
    const double q = F.q();
    const double normf = std::pow(q, n);
    const GaussSum G(f);
    auto sum_monic = [&](int lo, int hi) {
        CompensatedComplexSum s;
        for (int d = lo; d <= hi; ++d) {
            const std::uint64_t c = monic_count(F, d);
            for (std::uint64_t k = 0; k < c; ++k) s.add(G(monic_from_index(F, d, k)));
        }
        return s.value();
    };
    L3Sides out;
    out.direct = static_cast<double>(char_sum_direct(f, m));
    if (n % 2 == 0) {
        const cplx inner = G(PolyFq(F)) + q * sum_monic(0, n - m - 2) - sum_monic(0, n - m - 1);
        out.closed = std::pow(q, m) / normf * inner;
    } else {
        out.closed = std::pow(q, m + 0.5) / normf * sum_monic(n - m - 1, n - m - 1);
    }
    return out;
}

}  // namespace hyperl

#endif  // HYPERL_CHARACTERS_HPP
