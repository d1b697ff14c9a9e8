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

#ifndef HYPERL_SHIFTS_HPP
#define HYPERL_SHIFTS_HPP

#include <cctype>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "primes.hpp"

namespace hyperl {

/// Ordered list of complex shifts.
class ShiftSet {
   public:
    ShiftSet() = default;
    ShiftSet(std::initializer_list<cplx> s) : s_(s) {}
    explicit ShiftSet(std::vector<cplx> s) : s_(std::move(s)) {}

    std::size_t size() const noexcept { return s_.size(); }
    bool empty() const noexcept { return s_.empty(); }
    const cplx& operator[](std::size_t i) const { return s_[i]; }
    auto begin() const noexcept { return s_.begin(); }
    auto end() const noexcept { return s_.end(); }
    const std::vector<cplx>& values() const noexcept { return s_; }

    cplx sum() const {
        cplx t = 0;
        for (const auto& a : s_) t += a;
        return t;
    }
    ShiftSet reflected() const {
        std::vector<cplx> r;
        for (const auto& a : s_) r.push_back(-a);
        return ShiftSet(std::move(r));
    }

    /// Numerator shifts: |Re alpha| < 1/4.
    void require_numerator() const {
        for (const auto& a : s_)
            if (!(std::abs(a.real()) < 0.25))
                throw precondition_error("numerator shift outside |Re| < 1/4: " + format_double(a.real()));
    }
    /// Denominator shifts: 0 < Re beta < 1/2, unless the window check is waived.
    void require_denominator(bool waive_window = false) const {
        for (const auto& b : s_) {
            if (!(b.real() > 0.0)) throw precondition_error("denominator shift needs Re > 0: " + format_double(b.real()));
            if (!waive_window && !(b.real() < 0.5))
                throw precondition_error("denominator shift outside 0 < Re < 1/2: " + format_double(b.real()));
        }
    }

   private:
    std::vector<cplx> s_;
};

/// Parse "re", "re+im i", "re-im i", "im i" (spaces ignored; 'j' accepted for i).
inline cplx parse_shift(std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch == 'j' ? 'i' : ch;
    if (s.empty()) throw precondition_error("empty shift literal");
    auto to_double = [&](const std::string& tok) {
        if (tok.empty() || tok == "+" || tok == "-") return tok == "-" ? -1.0 : 1.0;
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size()) throw precondition_error("malformed shift literal: '" + std::string(text) + "'");
        return v;
    };
    if (s.back() != 'i') return {to_double(s), 0.0};
    s.pop_back();
    // Split at the last sign that is not an exponent sign and not leading.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;)
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    if (split == std::string::npos) return {0.0, to_double(s)};
    return {to_double(s.substr(0, split)), to_double(s.substr(split))};
}

inline ShiftSet parse_shift_list(std::string_view text) {
    std::vector<cplx> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        out.push_back(parse_shift(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return ShiftSet(std::move(out));
}

inline std::string format_shift(cplx z) {
    std::string s = format_double(z.real());
    if (z.imag() != 0.0) s += (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i";
    return s;
}

inline std::string format_shift_list(const ShiftSet& A) {
    std::string s;
    for (std::size_t i = 0; i < A.size(); ++i) s += (i ? ";" : "") + format_shift(A[i]);
    return s;
}

/// (tau_C(P^j), mu_C(P^j)) for j = 0..jmax and a prime of degree d: the
/// coefficients of prod_i (1 - x q^{-d gamma_i})^{-1} and prod_i (1 - x q^{-d gamma_i}).
struct TauMu {
    std::vector<cplx> tau;
    std::vector<cplx> mu;
};

inline TauMu tau_mu_series(const ShiftSet& C, double q, int d, int jmax) {
    if (jmax < 0) throw precondition_error("tau_mu: j must be >= 0");
    TauMu out{std::vector<cplx>(static_cast<std::size_t>(jmax) + 1, 0.0), std::vector<cplx>(static_cast<std::size_t>(jmax) + 1, 0.0)};
    out.tau[0] = out.mu[0] = 1.0;
    for (const cplx& g : C) {
        const cplx z = qpow(q, static_cast<double>(d) * g);
        for (int j = 1; j <= jmax; ++j) out.tau[j] += z * out.tau[j - 1];  // multiply by 1/(1 - zx)
        for (int j = jmax; j >= 1; --j) out.mu[j] -= z * out.mu[j - 1];    // multiply by (1 - zx)
    }
    return out;
}

inline std::pair<cplx, cplx> tau_mu_prime_power(const ShiftSet& C, double q, int d, int j) {
    const TauMu t = tau_mu_series(C, q, d, j);
    return {t.tau[j], t.mu[j]};
}

/// tau_C(f) computed multiplicatively over the factorization.
inline cplx tau_general(const ShiftSet& C, const PolyFq& f) {
    if (!f.is_monic()) throw precondition_error("tau_general requires a monic polynomial");
    cplx r = 1.0;
    if (f.degree() == 0) return r;
    for (const auto& [p, e] : factor(f).factors) r *= tau_mu_prime_power(C, f.q(), p.degree(), e).first;
    return r;
}

/// tau_C(f) by enumerating ordered factorizations f = f_1 ... f_k into monics.
inline cplx tau_brute_force(const ShiftSet& C, const PolyFq& f) {
    if (!f.is_monic()) throw precondition_error("tau_brute_force requires a monic polynomial");
    const double q = f.q();
    if (C.empty()) return f.degree() == 0 ? 1.0 : 0.0;
    std::vector<PolyFq> divisors;
    for (int d = 0; d <= f.degree(); ++d)
        for (const auto& g : enumerate_monic(f.field(), d))
            if ((f % g).is_zero()) divisors.push_back(g);
    auto rec = [&](auto&& self, const PolyFq& rest, std::size_t i) -> cplx {
        if (i + 1 == C.size()) return qpow(q, static_cast<double>(rest.degree()) * C[i]);
        cplx s = 0;
        for (const auto& g : divisors) {
            if (g.degree() > rest.degree()) continue;
            auto [quo, rem] = divmod(rest, g);
            if (!rem.is_zero()) continue;
            s += qpow(q, static_cast<double>(g.degree()) * C[i]) * self(self, quo, i + 1);
        }
        return s;
    };
    return rec(rec, f, 0);
}

}  // namespace hyperl

#endif  // HYPERL_SHIFTS_HPP
