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

#ifndef HYPERL_POLY_HPP
#define HYPERL_POLY_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "numeric.hpp"

namespace hyperl {

using Residue = std::uint32_t;

/// The prime field F_q. Only primes q = 1 (mod 4) are admitted, which makes
/// quadratic reciprocity in F_q[x] sign-free.
class FieldParams {
   public:
    explicit FieldParams(std::uint32_t q) : q_(q) {
        if (q < 5 || !is_prime(q)) throw precondition_error("q must be a prime >= 5, got " + std::to_string(q));
        if (q % 4 != 1) throw precondition_error("q must be 1 mod 4, got " + std::to_string(q));
        if (q >= (1u << 16)) throw precondition_error("q too large for this implementation");
    }

    std::uint32_t q() const noexcept { return q_; }

    Residue reduce(std::int64_t a) const noexcept {
        const std::int64_t r = a % static_cast<std::int64_t>(q_);
        return static_cast<Residue>(r < 0 ? r + q_ : r);
    }
    Residue add(Residue a, Residue b) const noexcept { return (a + b) % q_; }
    Residue sub(Residue a, Residue b) const noexcept { return (a + q_ - b) % q_; }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : q_ - a; }
    Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % q_);
    }
    Residue pow(Residue a, std::uint64_t e) const noexcept {
        std::uint64_t r = 1, x = a % q_;
        while (e) {
            if (e & 1) r = r * x % q_;
            x = x * x % q_;
            e >>= 1;
        }
        return static_cast<Residue>(r);
    }
    Residue inv(Residue a) const {
        if (a % q_ == 0) throw std::domain_error("inverse of zero in F_q");
        return pow(a, q_ - 2);
    }
    /// Legendre symbol (a | q) in {-1, 0, 1}.
    int legendre(Residue a) const noexcept {
        a %= q_;
        if (a == 0) return 0;
        return pow(a, (q_ - 1) / 2) == 1 ? 1 : -1;
    }

    friend bool operator==(const FieldParams&, const FieldParams&) = default;

    static bool is_prime(std::uint32_t n) noexcept {
        if (n < 2) return false;
        for (std::uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

   private:
    std::uint32_t q_;
};

/// A polynomial over F_q with coefficients stored in ascending order and no
/// trailing zeros. The zero polynomial has an empty coefficient vector and
/// degree -1.
class PolyFq {
   public:
    explicit PolyFq(FieldParams field) : field_(field) {}
    PolyFq(FieldParams field, std::vector<Residue> ascending) : field_(field), c_(std::move(ascending)) {
        for (auto& v : c_) v %= field_.q();
        trim();
    }
    PolyFq(FieldParams field, std::initializer_list<std::int64_t> ascending) : field_(field) {
        c_.reserve(ascending.size());
        for (auto v : ascending) c_.push_back(field_.reduce(v));
        trim();
    }

    static PolyFq constant(FieldParams field, std::int64_t c) { return PolyFq(field, {c}); }
    static PolyFq one(FieldParams field) { return constant(field, 1); }
    static PolyFq monomial(FieldParams field, int n, Residue c = 1) {
        std::vector<Residue> v(static_cast<std::size_t>(n) + 1, 0);
        v.back() = c;
        return PolyFq(field, std::move(v));
    }

    const FieldParams& field() const noexcept { return field_; }
    std::uint32_t q() const noexcept { return field_.q(); }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
    Residue leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
    Residue coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
    std::span<const Residue> coeffs() const noexcept { return c_; }

    /// q^deg, the norm |f|. Undefined for the zero polynomial.
    std::uint64_t norm() const {
        if (is_zero()) throw precondition_error("norm of zero polynomial");
        return static_cast<std::uint64_t>(checked::pow(q(), static_cast<unsigned>(degree())));
    }

    PolyFq monic() const {
        if (is_zero()) throw precondition_error("cannot normalize the zero polynomial");
        return scaled(field_.inv(leading()));
    }
    PolyFq scaled(Residue s) const {
        std::vector<Residue> v(c_);
        for (auto& x : v) x = field_.mul(x, s);
        return PolyFq(field_, std::move(v));
    }

    friend bool operator==(const PolyFq& a, const PolyFq& b) noexcept {
        return a.field_ == b.field_ && a.c_ == b.c_;
    }

    friend PolyFq operator+(const PolyFq& a, const PolyFq& b) {
        same_field(a, b);
        std::vector<Residue> v(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.field_.add(a.coeff(i), b.coeff(i));
        return PolyFq(a.field_, std::move(v));
    }
    friend PolyFq operator-(const PolyFq& a, const PolyFq& b) {
        same_field(a, b);
        std::vector<Residue> v(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.field_.sub(a.coeff(i), b.coeff(i));
        return PolyFq(a.field_, std::move(v));
    }
    friend PolyFq operator*(const PolyFq& a, const PolyFq& b) {
        same_field(a, b);
        if (a.is_zero() || b.is_zero()) return PolyFq(a.field_);
        const std::uint64_t q = a.q();
        std::vector<std::uint64_t> acc(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a.c_[i]} * b.c_[j]) % q;
        std::vector<Residue> v(acc.begin(), acc.end());
        return PolyFq(a.field_, std::move(v));
    }

    static void same_field(const PolyFq& a, const PolyFq& b) {
        if (!(a.field_ == b.field_))
            throw precondition_error("mixed moduli: q=" + std::to_string(a.q()) + " and q=" + std::to_string(b.q()));
    }

   private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    FieldParams field_;
    std::vector<Residue> c_;
};

/// Quotient and remainder of a by b.
inline std::pair<PolyFq, PolyFq> divmod(const PolyFq& a, const PolyFq& b) {
    PolyFq::same_field(a, b);
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const auto& F = a.field();
    if (a.degree() < b.degree()) return {PolyFq(F), a};
    std::vector<Residue> r(a.coeffs().begin(), a.coeffs().end());
    const int db = b.degree();
    const Residue inv_lead = F.inv(b.leading());
    std::vector<Residue> quo(static_cast<std::size_t>(a.degree() - db + 1), 0);
    for (int i = a.degree(); i >= db; --i) {
        const Residue t = F.mul(r[i], inv_lead);
        quo[i - db] = t;
        if (t == 0) continue;
        for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(t, b.coeff(j)));
    }
    r.resize(static_cast<std::size_t>(db));
    return {PolyFq(F, std::move(quo)), PolyFq(F, std::move(r))};
}

inline PolyFq operator%(const PolyFq& a, const PolyFq& b) { return divmod(a, b).second; }
inline PolyFq operator/(const PolyFq& a, const PolyFq& b) { return divmod(a, b).first; }

/// Monic gcd; gcd(0, 0) is the zero polynomial.
inline PolyFq gcd(PolyFq a, PolyFq b) {
    PolyFq::same_field(a, b);
    while (!b.is_zero()) {
        PolyFq r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

/// Formal derivative d/dx.
inline PolyFq derivative(const PolyFq& f) {
    const auto& F = f.field();
    if (f.degree() < 1) return PolyFq(F);
    std::vector<Residue> v(static_cast<std::size_t>(f.degree()), 0);
    for (int i = 1; i <= f.degree(); ++i) v[i - 1] = F.mul(F.reduce(i), f.coeff(i));
    return PolyFq(F, std::move(v));
}

/// base^e mod m by square-and-multiply.
inline PolyFq powmod(const PolyFq& base, std::uint64_t e, const PolyFq& m) {
    PolyFq::same_field(base, m);
    if (m.is_zero()) throw std::domain_error("powmod with zero modulus");
    PolyFq result = PolyFq::one(m.field()) % m;
    PolyFq b = base % m;
    while (e) {
        if (e & 1) result = (result * b) % m;
        e >>= 1;
        if (e) b = (b * b) % m;
    }
    return result;
}

inline PolyFq pow(const PolyFq& base, unsigned e) {
    PolyFq r = PolyFq::one(base.field());
    for (unsigned i = 0; i < e; ++i) r = r * base;
    return r;
}

/// Evaluate f at a point of F_q.
inline Residue evaluate(const PolyFq& f, Residue x) {
    const auto& F = f.field();
    Residue acc = 0;
    for (int i = f.degree(); i >= 0; --i) acc = F.add(F.mul(acc, x), f.coeff(i));
    return acc;
}

/// Canonical monic encoding: the k-th monic polynomial of degree n has the
/// base-q digits of k as its coefficients of x^0 .. x^{n-1}.
inline std::uint64_t monic_count(const FieldParams& F, int n) {
    if (n < 0) return 0;
    return static_cast<std::uint64_t>(checked::pow(F.q(), static_cast<unsigned>(n)));
}

inline PolyFq monic_from_index(const FieldParams& F, int n, std::uint64_t k) {
    if (n < 0) throw precondition_error("monic degree must be >= 0");
    std::vector<Residue> v(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        v[i] = static_cast<Residue>(k % F.q());
        k /= F.q();
    }
    if (k != 0) throw precondition_error("monic index out of range");
    v[n] = 1;
    return PolyFq(F, std::move(v));
}

inline std::uint64_t monic_index(const PolyFq& f) {
    if (!f.is_monic()) throw precondition_error("monic_index requires a monic polynomial");
    std::uint64_t k = 0;
    for (int i = f.degree() - 1; i >= 0; --i) k = k * f.q() + f.coeff(i);
    return k;
}

inline std::vector<PolyFq> enumerate_monic(const FieldParams& F, int n) {
    if (n < 0) throw precondition_error("enumerate_monic: degree must be >= 0");
    const std::uint64_t count = monic_count(F, n);
    std::vector<PolyFq> out;
    out.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) out.push_back(monic_from_index(F, n, k));
    return out;
}

/// True iff no square of a nonconstant polynomial divides f.
inline bool is_squarefree(const PolyFq& f) {
    if (f.is_zero()) throw precondition_error("is_squarefree of the zero polynomial");
    if (f.degree() < 1) return true;
    const PolyFq df = derivative(f);
    if (df.is_zero()) return false;
    return gcd(f, df).degree() == 0;
}

/// Canonical text form: ascending coefficient list "c0,c1,...,cn"; zero is "0".
inline std::string to_string(const PolyFq& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (int i = 0; i <= f.degree(); ++i) {
        if (i) s += ',';
        s += std::to_string(f.coeff(i));
    }
    return s;
}

/// Human-readable form, highest degree first, e.g. "x^3+2*x+1".
inline std::string to_symbolic(const PolyFq& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (int i = f.degree(); i >= 0; --i) {
        const Residue c = f.coeff(i);
        if (c == 0) continue;
        if (!s.empty()) s += '+';
        if (i == 0) {
            s += std::to_string(c);
            continue;
        }
        if (c != 1) s += std::to_string(c) + "*";
        s += "x";
        if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
}

inline std::ostream& operator<<(std::ostream& os, const PolyFq& f) { return os << to_symbolic(f); }

namespace detail {

inline std::int64_t parse_int(std::string_view s, std::string_view whole) {
    if (s.empty()) throw precondition_error("malformed polynomial literal: '" + std::string(whole) + "'");
    std::int64_t v = 0;
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw precondition_error("malformed polynomial literal: '" + std::string(whole) + "'");
        v = checked::add(checked::mul(v, 10), ch - '0');
    }
    return v;
}

}  // namespace detail

/// Parse either an ascending coefficient list "c0,c1,...,cn" or a symbolic
/// sum of terms such as "x^3+2*x+1", "x^2-1", "3x".
inline PolyFq parse_poly(const FieldParams& F, std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw precondition_error("empty polynomial literal");

    const bool symbolic = s.find('x') != std::string::npos || s.find('X') != std::string::npos;
    if (!symbolic && s.find('+') == std::string::npos) {
        std::vector<Residue> v;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = s.find(',', start);
            std::string_view tok = std::string_view(s).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            bool negative = !tok.empty() && tok.front() == '-';
            if (negative) tok.remove_prefix(1);
            const std::int64_t val = detail::parse_int(tok, text);
            v.push_back(F.reduce(negative ? -val : val));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return PolyFq(F, std::move(v));
    }

    std::vector<std::int64_t> acc;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string_view term = std::string_view(s).substr(i, j - i);
        if (term.empty()) throw precondition_error("malformed polynomial literal: '" + std::string(text) + "'");
        std::int64_t coef = 1;
        int exponent = 0;
        const std::size_t xpos = term.find_first_of("xX");
        if (xpos == std::string_view::npos) {
            coef = detail::parse_int(term, text);
        } else {
            std::string_view lead = term.substr(0, xpos);
            if (!lead.empty() && lead.back() == '*') lead.remove_suffix(1);
            if (!lead.empty()) coef = detail::parse_int(lead, text);
            std::string_view tail = term.substr(xpos + 1);
            if (tail.empty()) {
                exponent = 1;
            } else if (tail.front() == '^') {
                exponent = static_cast<int>(detail::parse_int(tail.substr(1), text));
            } else {
                throw precondition_error("malformed polynomial literal: '" + std::string(text) + "'");
            }
        }
        if (acc.size() <= static_cast<std::size_t>(exponent)) acc.resize(exponent + 1, 0);
        acc[exponent] += sign * coef;
        i = j;
    }
    std::vector<Residue> v;
    v.reserve(acc.size());
    for (auto a : acc) v.push_back(F.reduce(a));
    return PolyFq(F, std::move(v));
}

}  // namespace hyperl

#endif  // HYPERL_POLY_HPP
