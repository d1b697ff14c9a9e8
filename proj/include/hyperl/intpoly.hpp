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

// Small exact integer polynomials: primitive gcd and square-free
// decomposition over Q. Coefficients are 128-bit with every operation
// overflow-checked; callers fall back to floating point on overflow.

#ifndef HYPERL_INTPOLY_HPP
#define HYPERL_INTPOLY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "hyperl/numeric.hpp"

namespace hyperl::intpoly {

using i128 = __int128;
using Poly = std::vector<i128>;  // low degree first, no trailing zeros; empty is 0

namespace detail {
inline i128 mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("integer polynomial overflow");
    return r;
}
inline i128 sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("integer polynomial overflow");
    return r;
}
inline i128 abs(i128 a) { return a < 0 ? -a : a; }
inline i128 gcd(i128 a, i128 b) {
    a = abs(a);
    b = abs(b);
    while (b) a = std::exchange(b, a % b);
    return a;
}
}  // namespace detail

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

/// Divide out the content and make the leading coefficient positive.
inline Poly primitive(Poly p) {
    trim(p);
    if (p.empty()) return p;
    i128 c = 0;
    for (i128 v : p) c = detail::gcd(c, v);
    if (p.back() < 0) c = -c;
    for (i128& v : p) v /= c;
    return p;
}

inline Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(detail::mul(static_cast<i128>(i), p[i]));
    trim(d);
    return d;
}

/// Pseudo-division: lc(b)^k a = quo b + rem for some k >= 0, deg rem < deg b.
inline std::pair<Poly, Poly> pseudo_divmod(Poly a, const Poly& b) {
    if (b.empty()) throw precondition_error("pseudo_divmod: division by zero polynomial");
    trim(a);
    const int db = degree(b);
    if (degree(a) < db) return {Poly{}, a};
    const i128 lc = b.back();
    Poly quo(static_cast<std::size_t>(degree(a) - db + 1), 0);
    while (degree(a) >= db) {
        const int shift = degree(a) - db;
        const i128 t = a.back();
        for (i128& v : quo) v = detail::mul(v, lc);
        quo[shift] = t;
        for (i128& v : a) v = detail::mul(v, lc);
        for (int i = 0; i <= db; ++i) a[shift + i] = detail::sub(a[shift + i], detail::mul(t, b[i]));
        trim(a);
        if (a.empty()) break;
    }
    return {quo, a};
}

/// Primitive gcd over Q (content dropped).
inline Poly gcd(Poly a, Poly b) {
    a = primitive(std::move(a));
    b = primitive(std::move(b));
    while (!b.empty()) {
        Poly r = primitive(pseudo_divmod(a, b).second);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// a / b over Q, up to a rational scalar; b must divide a.
inline Poly exact_quotient(const Poly& a, const Poly& b) {
    auto [quo, rem] = pseudo_divmod(a, b);
    if (!rem.empty()) throw precondition_error("exact_quotient: not divisible");
    return primitive(std::move(quo));
}

/// Square-free decomposition by repeated gcds: p = c * prod_i factors[i]^{i+1}, each
/// factor square-free and primitive (possibly constant). f_k = gcd(f_{k-1}, f_{k-1}') and
/// s_k = f_{k-1} / f_k collects the roots of multiplicity >= k; factors are s_k / s_{k+1}.
inline std::vector<Poly> squarefree_decomposition(const Poly& p) {
    std::vector<Poly> s;
    Poly prev = primitive(p);
    while (degree(prev) >= 1) {
        Poly next = gcd(prev, derivative(prev));
        s.push_back(exact_quotient(prev, next));
        prev = std::move(next);
    }
    std::vector<Poly> out;
    for (std::size_t k = 0; k < s.size(); ++k) out.push_back(k + 1 < s.size() ? exact_quotient(s[k], s[k + 1]) : s[k]);
    return out;
}

}  // namespace hyperl::intpoly

#endif  // HYPERL_INTPOLY_HPP
