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

#ifndef HYPERL_LFUN_HPP
#define HYPERL_LFUN_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "characters.hpp"
#include "intpoly.hpp"
#include "shifts.hpp"

namespace hyperl {

/// Coefficients c_0..c_{2g} of the L-polynomial of chi_D, D in H_{2g+1}.
struct LPolynomial {
    std::uint32_t q = 0;
    int g = 0;
    std::vector<std::int64_t> c;
    PolyFq D{FieldParams(5)};
};

enum class CoefficientMode {
    recursion,       // prime symbols up to degree g, then c_{2g-n} = q^{g-n} c_n
    full_recursion,  // prime symbols up to degree 2g, no symmetry used
    direct,          // sum of chi_D(f) over each M_n
};

/// Genus of D in H_{2g+1}; throws unless D is monic, square-free, of odd degree >= 3.
inline int hyperelliptic_genus(const PolyFq& D) {
    if (!D.is_monic()) throw precondition_error("D must be monic");
    if (D.degree() < 3 || D.degree() % 2 == 0) throw precondition_error("D must have odd degree 2g+1 >= 3, got degree " + std::to_string(D.degree()));
    if (!is_squarefree(D)) throw precondition_error("D must be square-free: " + to_string(D));
    return (D.degree() - 1) / 2;
}

/// (D | P) for every tabled monic prime of degree <= max_d, generic powmod path.
inline std::vector<std::pair<PolyFq, int>> chi_on_primes(const PolyFq& D, int max_d) {
    if (!D.is_monic() || !is_squarefree(D)) throw precondition_error("chi_on_primes: D must be monic square-free");
    std::vector<std::pair<PolyFq, int>> out;
    if (max_d < 1) return out;
    const auto table = shared_prime_table(D.field(), max_d);
    for (int d = 1; d <= max_d; ++d)
        for (const auto& P : table->of_degree(d)) out.emplace_back(P, residue_symbol_unchecked(D, P));
    return out;
}

/// s_m = sum over f in M_m of Lambda(f) chi_D(f) = sum_{d | m} d sum_{d(P)=d} chi_D(P)^{m/d},
/// from A[d] = sum chi_D(P) and B[d] = sum chi_D(P)^2 over primes of degree d.
inline std::vector<std::int64_t> power_sums_from_prime_sums(const std::vector<std::int64_t>& A, const std::vector<std::int64_t>& B, int M) {
    if (static_cast<int>(A.size()) <= M || static_cast<int>(B.size()) <= M) throw precondition_error("power sums: prime sums too short");
    std::vector<std::int64_t> s(static_cast<std::size_t>(M) + 1, 0);
    for (int m = 1; m <= M; ++m)
        for (int d = 1; d <= m; ++d)
            if (m % d == 0) s[m] += d * ((m / d) % 2 ? A[d] : B[d]);
    return s;
}

inline void prime_sums_from_symbols(const std::vector<std::pair<PolyFq, int>>& symbols, int max_d, std::vector<std::int64_t>& A,
                                    std::vector<std::int64_t>& B) {
    A.assign(static_cast<std::size_t>(max_d) + 1, 0);
    B.assign(static_cast<std::size_t>(max_d) + 1, 0);
    for (const auto& [P, s] : symbols) {
        if (P.degree() > max_d) continue;
        A[P.degree()] += s;
        B[P.degree()] += s * s;
    }
}

/// Newton's identities n c_n = sum_{m=1}^n s_m c_{n-m} for n <= M, exact.
inline std::vector<std::int64_t> coefficients_from_power_sums(const std::vector<std::int64_t>& s, int M) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(M) + 1, 0);
    c[0] = 1;
    for (int n = 1; n <= M; ++n) {
        std::int64_t acc = 0;
        for (int m = 1; m <= n; ++m) acc = checked::add(acc, checked::mul(s[m], c[n - m]));
        if (acc % n != 0) throw std::logic_error("Newton recursion: inexact division at n=" + std::to_string(n));
        c[n] = acc / n;
    }
    return c;
}

/// Inverse direction: s_n = n c_n - sum_{m<n} s_m c_{n-m}, valid for every n (c_n = 0 past 2g).
inline std::vector<std::int64_t> power_sums_from_coefficients(const LPolynomial& L, int M) {
    std::vector<std::int64_t> s(static_cast<std::size_t>(std::max(M, 0)) + 1, 0);
    auto c = [&](int n) -> std::int64_t { return n < static_cast<int>(L.c.size()) ? L.c[n] : 0; };
    for (int n = 1; n <= M; ++n) {
        std::int64_t acc = checked::mul(n, c(n));
        for (int m = 1; m < n; ++m) acc = checked::sub(acc, checked::mul(s[m], c(n - m)));
        s[n] = acc;
    }
    return s;
}

/// Assemble the L-polynomial from per-degree prime sums. With full = false the
/// sums are needed up to degree g and the top half comes from the functional equation.
inline LPolynomial l_polynomial_from_prime_sums(std::uint32_t q, int g, const std::vector<std::int64_t>& A, const std::vector<std::int64_t>& B,
                                                bool full) {
    LPolynomial L;
    L.q = q;
    L.g = g;
    const int M = full ? 2 * g : g;
    const auto s = power_sums_from_prime_sums(A, B, M);
    auto c = coefficients_from_power_sums(s, M);
    c.resize(static_cast<std::size_t>(2 * g) + 1, 0);
    if (!full)
        for (int n = 0; n < g; ++n) c[2 * g - n] = checked::mul(checked::pow(q, static_cast<unsigned>(g - n)), c[n]);
    L.c = std::move(c);
    return L;
}

/// Process-wide cache of factor tables, immutable once published.
inline std::shared_ptr<const FactorTable> shared_factor_table(const FieldParams& F, int max_degree) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::shared_ptr<const FactorTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[F.q()];
    if (!slot || slot->max_degree() < max_degree) slot = std::make_shared<const FactorTable>(F, max_degree);
    return slot;
}

/// chi_D(f) for every monic f of degree <= n_max, laid out as [n][canonical index],
/// from the residue symbols of the primes and the cached factorizations.
inline std::vector<std::vector<std::int8_t>> chi_on_monics(const PolyFq& D, int n_max) {
    const auto ft = shared_factor_table(D.field(), n_max);
    std::vector<std::int8_t> prime_chi(ft->primes().size());
    for (std::size_t i = 0; i < prime_chi.size(); ++i)
        if (ft->primes()[i].degree() <= n_max) prime_chi[i] = static_cast<std::int8_t>(residue_symbol_unchecked(D, ft->primes()[i]));
    std::vector<std::vector<std::int8_t>> out(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const std::uint64_t count = monic_count(D.field(), n);
        out[n].resize(count);
        for (std::uint64_t k = 0; k < count; ++k) {
            int v = 1;
            for (const auto& [id, e] : ft->at(n, k)) {
                const int s = prime_chi[id];
                if (s == 0) {
                    v = 0;
                    break;
                }
                if (e % 2 && s < 0) v = -v;
            }
            out[n][k] = static_cast<std::int8_t>(v);
        }
    }
    return out;
}

inline LPolynomial l_coefficients(const PolyFq& D, CoefficientMode mode = CoefficientMode::recursion) {
    const int g = hyperelliptic_genus(D);
    LPolynomial L;
    if (mode == CoefficientMode::direct) {
        L.q = D.q();
        L.g = g;
        const auto chi = chi_on_monics(D, 2 * g);
        for (int n = 0; n <= 2 * g; ++n) {
            std::int64_t s = 0;
            for (auto v : chi[n]) s += v;
            L.c.push_back(s);
        }
    } else {
        const bool full = mode == CoefficientMode::full_recursion;
        const int M = full ? 2 * g : g;
        std::vector<std::int64_t> A, B;
        prime_sums_from_symbols(chi_on_primes(D, M), M, A, B);
        L = l_polynomial_from_prime_sums(D.q(), g, A, B, full);
    }
    L.D = D;
    return L;
}

/// max over 0 <= n <= g of |c_{2g-n} - q^{g-n} c_n|; zero for a genuine L-polynomial.
inline std::int64_t verify_functional_equation(const LPolynomial& L) {
    if (static_cast<int>(L.c.size()) != 2 * L.g + 1) throw precondition_error("LPolynomial: expected 2g+1 coefficients");
    std::int64_t worst = 0;
    for (int n = 0; n <= L.g; ++n) {
        const std::int64_t r = checked::sub(L.c[2 * L.g - n], checked::mul(checked::pow(L.q, static_cast<unsigned>(L.g - n)), L.c[n]));
        worst = std::max(worst, r < 0 ? -r : r);
    }
    return worst;
}

/// Horner evaluation of the L-polynomial at u.
inline cplx evaluate_at(const LPolynomial& L, cplx u) {
    cplx acc = 0;
    for (auto it = L.c.rbegin(); it != L.c.rend(); ++it) acc = acc * u + static_cast<double>(*it);
    return acc;
}

/// L(1/2 + alpha + i t, chi_D), i.e. the polynomial at u = q^{-1/2-alpha-it}.
inline cplx evaluate_shifted(const LPolynomial& L, cplx alpha, double t = 0.0) {
    return evaluate_at(L, qpow(L.q, cplx(0.5, 0.0) + alpha + cplx(0.0, t)));
}

/// Both sums of the approximate functional equation for prod_j L(1/2 + alpha_j, chi_D).
inline cplx approx_fe_product(const PolyFq& D, const ShiftSet& A) {
    const int g = hyperelliptic_genus(D);
    const int k = static_cast<int>(A.size());
    if (k < 1) throw precondition_error("approx_fe_product: need at least one shift");
    const double q = D.q();
    const int top = k * g;
    const auto ft = shared_factor_table(D.field(), top);
    const auto chi = chi_on_monics(D, top);
    const ShiftSet Am = A.reflected();
    std::vector<TauMu> tp(static_cast<std::size_t>(top) + 1), tm(static_cast<std::size_t>(top) + 1);
    for (int d = 1; d <= top; ++d) {
        tp[d] = tau_mu_series(A, q, d, top / d);
        tm[d] = tau_mu_series(Am, q, d, top / d);
    }
    CompensatedComplexSum first, second;
    for (int n = 0; n <= top; ++n) {
        const double w = std::pow(q, -0.5 * n);
        for (std::uint64_t idx = 0; idx < chi[n].size(); ++idx) {
            if (chi[n][idx] == 0) continue;
            cplx ta = 1.0, tb = 1.0;
            for (const auto& [id, e] : ft->at(n, idx)) {
                const int d = ft->primes()[id].degree();
                ta *= tp[d].tau[e];
                tb *= tm[d].tau[e];
            }
            first.add(static_cast<double>(chi[n][idx]) * w * ta);
            if (n <= top - 1) second.add(static_cast<double>(chi[n][idx]) * w * tb);
        }
    }
    return first.value() + qpow(q, 2.0 * g * A.sum()) * second.value();
}

/// Angles theta_j in [0, 1) with L(u) = prod_j (1 - u sqrt(q) e^{-2 pi i theta_j}).
struct ZeroSet {
    std::vector<double> thetas;
    double radii_residual = 0.0;  // max | |u_j| sqrt(q) - 1 | before projection
    double max_residual = 0.0;    // max |P(v_j)| at the reported angles, P the unit-circle normalization
};

namespace detail {

/// R in Z[w] with L(u) = u^g R(w), w = qu + 1/u. Uses c_{g+k} = q^k c_{g-k} and
/// (qu)^k + u^{-k} = p_k(w), p_0 = 2, p_1 = w, p_k = w p_{k-1} - q p_{k-2}.
inline intpoly::Poly reciprocal_reduction(const LPolynomial& L) {
    using intpoly::i128;
    const int g = L.g;
    intpoly::Poly R(static_cast<std::size_t>(g) + 1, 0);
    R[0] = L.c[g];
    intpoly::Poly pm2{2}, pm1{0, 1};
    for (int k = 1; k <= g; ++k) {
        const intpoly::Poly& pk = pm1;
        for (std::size_t i = 0; i < pk.size(); ++i) {
            i128 t;
            if (__builtin_mul_overflow(static_cast<i128>(L.c[g - k]), pk[i], &t) || __builtin_add_overflow(R[i], t, &R[i]))
                throw overflow_error("reciprocal reduction overflow");
        }
        intpoly::Poly next(pk.size() + 1, 0);
        for (std::size_t i = 0; i < pk.size(); ++i) next[i + 1] = pk[i];
        for (std::size_t i = 0; i < pm2.size(); ++i) next[i] = intpoly::detail::sub(next[i], intpoly::detail::mul(static_cast<i128>(L.q), pm2[i]));
        pm2 = std::move(pm1);
        pm1 = std::move(next);
    }
    intpoly::trim(R);
    return R;
}

/// Complex roots of a real polynomial (low degree first, a.back() != 0), companion matrix then two Newton steps.
inline std::vector<cplx> polynomial_roots(const std::vector<double>& a) {
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<cplx> out;
    if (n < 1) return out;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -a[i] / a[n];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("zeros: eigensolver did not converge");
    for (int j = 0; j < n; ++j) {
        cplx v = es.eigenvalues()[j];
        for (int it = 0; it < 2; ++it) {
            cplx p = 0, dp = 0;
            for (int i = n; i >= 0; --i) {
                dp = dp * v + p;
                p = p * v + a[i];
            }
            if (std::abs(dp) == 0.0) break;
            v -= p / dp;
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace detail

/// Zeros via the real-rooted reduction R(w): its exact square-free factors have simple
/// roots, so repeated zeros of L (common for small q) come out to rounding accuracy.
/// Falls back to the degree-2g companion matrix if the exact step overflows.
inline ZeroSet zeros(const LPolynomial& L) {
    const int n = 2 * L.g;
    ZeroSet out;
    if (n == 0) return out;
    const double sq = std::sqrt(static_cast<double>(L.q));
    // v = sqrt(q) u maps the zeros to the unit circle; a_n = c_n q^{-n/2}, a_{2g} = 1.
    std::vector<double> a(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) a[i] = static_cast<double>(L.c[i]) * std::pow(static_cast<double>(L.q), -0.5 * i);
    auto unit_poly = [&](cplx v) {
        cplx p = 0;
        for (int i = n; i >= 0; --i) p = p * v + a[i];
        return p;
    };
    auto push = [&](double th, int mult) {
        const cplx v = std::polar(1.0, 2.0 * std::numbers::pi * th);
        out.max_residual = std::max(out.max_residual, std::abs(unit_poly(v)));
        for (int m = 0; m < mult; ++m) out.thetas.push_back(th);
    };

    std::vector<intpoly::Poly> factors;
    try {
        factors = intpoly::squarefree_decomposition(detail::reciprocal_reduction(L));
    } catch (const overflow_error&) {
        factors.clear();
    }
    if (!factors.empty()) {
        for (std::size_t k = 0; k < factors.size(); ++k) {
            // x = w / sqrt(q) lies in [-2, 2] on the circle.
            std::vector<double> b(factors[k].size());
            for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<double>(factors[k][i]) * std::pow(sq, static_cast<double>(i));
            for (const cplx& x : detail::polynomial_roots(b)) {
                const cplx v = (x + std::sqrt(x * x - 4.0)) / 2.0;  // v + 1/v = x
                out.radii_residual = std::max(out.radii_residual, std::abs(std::abs(v) - 1.0));
                const double th = std::acos(std::clamp(x.real() / 2.0, -1.0, 1.0)) / (2.0 * std::numbers::pi);
                push(th, static_cast<int>(k) + 1);
                push(th == 0.0 ? 0.0 : 1.0 - th, static_cast<int>(k) + 1);
            }
        }
        if (static_cast<int>(out.thetas.size()) != n) throw std::logic_error("zeros: factor degrees do not add up to 2g");
    } else {
        for (const cplx& v0 : detail::polynomial_roots(a)) {
            out.radii_residual = std::max(out.radii_residual, std::abs(std::abs(v0) - 1.0));
            // u_j = q^{-1/2} e^{2 pi i theta_j} means v_j = e^{2 pi i theta_j}.
            double th = std::arg(v0) / (2.0 * std::numbers::pi);
            if (th < 0) th += 1.0;
            if (th >= 1.0) th -= 1.0;
            push(th, 1);
        }
    }
    std::sort(out.thetas.begin(), out.thetas.end());
    return out;
}

/// Real even trigonometric polynomial h(theta) = hhat(0) + 2 sum_{n=1}^N hhat(n) cos(2 pi n theta).
struct TrigPoly {
    std::vector<double> hhat;  // hhat[0..N]

    int N() const noexcept { return static_cast<int>(hhat.size()) - 1; }
    double operator()(double theta) const {
        double s = hhat.empty() ? 0.0 : hhat[0];
        for (int n = 1; n <= N(); ++n) s += 2.0 * hhat[n] * std::cos(2.0 * std::numbers::pi * n * theta);
        return s;
    }
};

/// Sum of h over the zeros.
inline double zero_sum(const ZeroSet& z, const TrigPoly& h) {
    CompensatedSum s;
    for (double th : z.thetas) s.add(h(th));
    return s.value();
}

/// Prime side 2g hhat(0) - 2 sum_n hhat(n) q^{-n/2} s_n, with s_n the Lambda-weighted character sums.
inline double explicit_prime_side(std::uint32_t q, int g, const TrigPoly& h, const std::vector<std::int64_t>& s) {
    if (h.N() < 0) return 0.0;
    if (static_cast<int>(s.size()) <= h.N()) throw precondition_error("explicit formula: need power sums up to N");
    CompensatedSum acc;
    acc.add(2.0 * g * h.hhat[0]);
    for (int n = 1; n <= h.N(); ++n) acc.add(-2.0 * h.hhat[n] * std::pow(static_cast<double>(q), -0.5 * n) * static_cast<double>(s[n]));
    return acc.value();
}

/// |sum_j h(theta_j) - prime side|, with the prime side built from residue symbols directly.
inline double explicit_formula_residual(const PolyFq& D, const TrigPoly& h) {
    if (h.N() < 0) throw precondition_error("explicit formula: empty trigonometric polynomial");
    const LPolynomial L = l_coefficients(D);
    std::vector<std::int64_t> A, B;
    prime_sums_from_symbols(chi_on_primes(D, h.N()), h.N(), A, B);
    const auto s = power_sums_from_prime_sums(A, B, h.N());
    return std::abs(zero_sum(zeros(L), h) - explicit_prime_side(L.q, L.g, h, s));
}

inline std::string lpolynomial_csv_header(int g) {
    std::string s = "q,g";
    for (int i = 0; i <= 2 * g + 1; ++i) s += ",d" + std::to_string(i);
    for (int i = 0; i <= 2 * g; ++i) s += ",c" + std::to_string(i);
    return s;
}

inline std::string to_csv_row(const LPolynomial& L) {
    std::string s = std::to_string(L.q) + "," + std::to_string(L.g);
    for (int i = 0; i <= 2 * L.g + 1; ++i) s += "," + std::to_string(L.D.coeff(static_cast<std::size_t>(i)));
    for (auto c : L.c) s += "," + std::to_string(c);
    return s;
}

}  // namespace hyperl

#endif  // HYPERL_LFUN_HPP
