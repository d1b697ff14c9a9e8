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

#ifndef HYPERL_NUMERIC_HPP
#define HYPERL_NUMERIC_HPP

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace hyperl {

using cplx = std::complex<double>;

/// Raised when a documented precondition of an operation does not hold.
class precondition_error : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Evaluation at (or numerically on top of) a pole of a zeta factor.
class pole_error : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// An Euler product or inner series that does not converge for the given parameters.
class divergence_error : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Exact integer overflow in checked arithmetic.
class overflow_error : public std::overflow_error {
   public:
    using std::overflow_error::overflow_error;
};

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error("checked add overflow");
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("checked sub overflow");
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("checked mul overflow");
    return r;
}

inline std::int64_t pow(std::int64_t base, unsigned e) {
    std::int64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r = mul(r, base);
    return r;
}

}  // namespace checked

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
   public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

   private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
   public:
    void add(cplx z) noexcept {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const noexcept { return {re_.value(), im_.value()}; }

   private:
    CompensatedSum re_;
    CompensatedSum im_;
};

/// log(1 + z) accurate for small |z|.
inline cplx log1p(cplx z) {
    const double r = std::abs(z);
    if (r >= 0.25) return std::log(1.0 + z);
    if (r == 0.0) return {0.0, 0.0};
    cplx term = z;
    cplx sum = z;
    for (int n = 2; n < 200; ++n) {
        term *= -z;
        const cplx inc = term / static_cast<double>(n);
        sum += inc;
        if (std::abs(inc) <= 1e-18 * r) break;
    }
    return sum;
}

/// q^{-s} for real q > 0 and complex s.
inline cplx qpow(double q, cplx s) { return std::exp(-s * std::log(q)); }

inline std::string format_double(double x) {
    // Shortest text that reads back to the same double.
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

}  // namespace hyperl

#endif  // HYPERL_NUMERIC_HPP
