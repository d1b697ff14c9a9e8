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

#ifndef HYPERL_SYMBOL_TABLE_HPP
#define HYPERL_SYMBOL_TABLE_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "primes.hpp"

namespace hyperl {

/// F_{q^e} modelled as F_q[t]/(Q_e), Q_e the first monic irreducible of degree e.
/// Elements are indexed by the base-q digits of their coordinates on 1, t, .., t^{e-1}.
class ExtensionField {
   public:
    ExtensionField(FieldParams field, int e, const PolyFq& modulus) : field_(field), e_(e), modulus_(modulus) {
        if (modulus.degree() != e) throw precondition_error("ExtensionField: modulus degree mismatch");
        size_ = monic_count(field, e);
    }

    int degree() const noexcept { return e_; }
    std::uint64_t size() const noexcept { return size_; }
    const PolyFq& modulus() const noexcept { return modulus_; }

    PolyFq element(std::uint64_t index) const {
        std::vector<Residue> v(static_cast<std::size_t>(e_));
        for (int i = 0; i < e_; ++i) {
            v[i] = static_cast<Residue>(index % field_.q());
            index /= field_.q();
        }
        return PolyFq(field_, std::move(v));
    }
    std::uint64_t index(const PolyFq& a) const {
        std::uint64_t k = 0;
        for (int i = e_ - 1; i >= 0; --i) k = k * field_.q() + a.coeff(static_cast<std::size_t>(i));
        return k;
    }
    PolyFq mul(const PolyFq& a, const PolyFq& b) const { return (a * b) % modulus_; }
    PolyFq frobenius(const PolyFq& a) const { return powmod(a, field_.q(), modulus_); }

    /// +1 on nonzero squares, -1 on non-squares, 0 on zero.
    std::vector<std::int8_t> quadratic_character() const {
        std::vector<std::int8_t> chi(size_, -1);
        chi[0] = 0;
        for (std::uint64_t k = 1; k < size_; ++k) chi[index(mul(element(k), element(k)))] = 1;
        return chi;
    }

   private:
    FieldParams field_;
    int e_;
    PolyFq modulus_;
    std::uint64_t size_;
};

/// For every monic prime P of degree <= max_prime_degree, a root theta_P in the
/// fixed model of F_{q^{d(P)}} and its powers theta_P^i for i <= max_power.
/// Then (D | P) is the quadratic character of D(theta_P) in that field.
class PrimeSymbolTable {
   public:
    PrimeSymbolTable(FieldParams field, int max_prime_degree, int max_power)
        : field_(field), max_degree_(max_prime_degree), max_power_(max_power) {
        if (max_prime_degree < 1) throw precondition_error("PrimeSymbolTable: prime degree must be >= 1");
        const PrimeTable table(field, max_prime_degree);
        chi_.resize(static_cast<std::size_t>(max_prime_degree) + 1);
        degree_begin_.assign(static_cast<std::size_t>(max_prime_degree) + 2, 0);
        std::vector<std::vector<std::vector<Residue>>> powers;  // per prime: powers[i] coordinates
        for (int e = 1; e <= max_prime_degree; ++e) {
            degree_begin_[e] = static_cast<std::uint32_t>(primes_.size());
            const auto& list = table.of_degree(e);
            const ExtensionField K(field, e, list.front());
            chi_[e] = K.quadratic_character();

            std::unordered_map<std::uint64_t, std::uint32_t> id_by_index;
            for (std::uint32_t i = 0; i < list.size(); ++i) id_by_index[monic_index(list[i])] = i;
            std::vector<std::uint64_t> root_of(list.size(), UINT64_MAX);
            std::vector<char> seen(K.size(), 0);
            std::size_t found = 0;
            for (std::uint64_t k = 0; k < K.size() && found < list.size(); ++k) {
                if (seen[k]) continue;
                std::vector<PolyFq> orbit{K.element(k)};
                seen[k] = 1;
                while (true) {
                    PolyFq nxt = K.frobenius(orbit.back());
                    if (nxt == orbit.front()) break;
                    seen[K.index(nxt)] = 1;
                    orbit.push_back(std::move(nxt));
                }
                if (static_cast<int>(orbit.size()) != e) continue;
                const PolyFq mp = minimal_polynomial(K, orbit);
                const std::uint32_t id = id_by_index.at(monic_index(mp));
                root_of[id] = k;
                ++found;
            }
            for (std::uint32_t i = 0; i < list.size(); ++i) {
                if (root_of[i] == UINT64_MAX) throw std::logic_error("PrimeSymbolTable: missing root");
                primes_.push_back(list[i]);
                degree_.push_back(e);
                offset_.push_back(static_cast<std::uint32_t>(slots_));
                slots_ += static_cast<std::size_t>(e);
                std::vector<std::vector<Residue>> pw;
                PolyFq acc = PolyFq::one(field);
                const PolyFq theta = K.element(root_of[i]);
                for (int p = 0; p <= max_power; ++p) {
                    std::vector<Residue> coords(static_cast<std::size_t>(e));
                    for (int c = 0; c < e; ++c) coords[c] = acc.coeff(static_cast<std::size_t>(c));
                    pw.push_back(std::move(coords));
                    acc = K.mul(acc, theta);
                }
                powers.push_back(std::move(pw));
            }
        }
        degree_begin_[max_prime_degree + 1] = static_cast<std::uint32_t>(primes_.size());
        pow_.assign(static_cast<std::size_t>(max_power + 1) * slots_, 0);
        for (std::size_t p = 0; p < primes_.size(); ++p)
            for (int i = 0; i <= max_power; ++i)
                for (int c = 0; c < degree_[p]; ++c) pow_[i * slots_ + offset_[p] + c] = powers[p][i][c];
    }

    const FieldParams& field() const noexcept { return field_; }
    int max_degree() const noexcept { return max_degree_; }
    int max_power() const noexcept { return max_power_; }
    std::size_t prime_total() const noexcept { return primes_.size(); }
    std::size_t slots() const noexcept { return slots_; }
    const PolyFq& prime(std::size_t id) const { return primes_.at(id); }
    int degree(std::size_t id) const { return degree_[id]; }
    std::uint32_t offset(std::size_t id) const { return offset_[id]; }
    std::uint32_t degree_begin(int e) const { return degree_begin_[e]; }
    std::uint32_t degree_end(int e) const { return degree_begin_[e + 1]; }
    const Residue* power_row(int i) const { return pow_.data() + static_cast<std::size_t>(i) * slots_; }
    const std::vector<std::int8_t>& character(int e) const { return chi_[e]; }

    /// Prime id of a monic prime, or -1 if it is not in the table.
    long find(const PolyFq& p) const {
        if (p.degree() < 1 || p.degree() > max_degree_ || !p.is_monic()) return -1;
        for (std::uint32_t id = degree_begin_[p.degree()]; id < degree_begin_[p.degree() + 1]; ++id)
            if (primes_[id] == p) return static_cast<long>(id);
        return -1;
    }

   private:
    static PolyFq minimal_polynomial(const ExtensionField& K, const std::vector<PolyFq>& orbit) {
        // Coefficients live in K; multiply out prod (x - a_i).
        const FieldParams& F = K.modulus().field();
        std::vector<PolyFq> coef{PolyFq::one(F)};
        for (const PolyFq& a : orbit) {
            std::vector<PolyFq> next(coef.size() + 1, PolyFq(F));
            for (std::size_t i = 0; i < coef.size(); ++i) {
                next[i + 1] = next[i + 1] + coef[i];
                next[i] = next[i] - K.mul(coef[i], a);
            }
            coef = std::move(next);
        }
        std::vector<Residue> out;
        for (const PolyFq& c : coef) {
            if (c.degree() > 0) throw std::logic_error("minimal polynomial not over F_q");
            out.push_back(c.coeff(0));
        }
        return PolyFq(F, std::move(out));
    }

    FieldParams field_;
    int max_degree_;
    int max_power_;
    std::vector<PolyFq> primes_;
    std::vector<int> degree_;
    std::vector<std::uint32_t> offset_;
    std::vector<std::uint32_t> degree_begin_;
    std::size_t slots_ = 0;
    std::vector<Residue> pow_;  // pow_[i * slots + slot]: coordinates of theta_P^i
    std::vector<std::vector<std::int8_t>> chi_;
};

/// Running evaluation of D(theta_P) for all tabled primes as D walks through
/// monic polynomials of a fixed degree. Moving to a nearby index only touches
/// the coordinates of the changed digits.
class SymbolEvaluator {
   public:
    SymbolEvaluator(const PrimeSymbolTable& table, int degree)
        : t_(table), n_(degree), digits_(static_cast<std::size_t>(degree) + 1, 0), acc_(table.slots(), 0) {
        if (degree > table.max_power()) throw precondition_error("SymbolEvaluator: degree exceeds tabled powers");
        digits_[n_] = 1;
        add_row(n_, 1);
    }

    int degree() const noexcept { return n_; }
    std::uint64_t index() const noexcept { return index_; }

    /// Position the evaluator on the monic polynomial with the given canonical index.
    void seek(std::uint64_t k) {
        const std::uint32_t q = t_.field().q();
        index_ = k;
        for (int i = 0; i < n_; ++i) {
            const Residue d = static_cast<Residue>(k % q);
            k /= q;
            if (d != digits_[i]) {
                add_row(i, (d + q - digits_[i]) % q);
                digits_[i] = d;
            }
        }
    }

    PolyFq polynomial() const { return PolyFq(t_.field(), digits_); }
    const std::vector<Residue>& digits() const noexcept { return digits_; }

    /// (D | P) for the prime with the given id.
    int symbol(std::size_t id) const { return t_.character(t_.degree(id))[element_index(id)]; }

    /// A[d] = sum of (D | P) and B[d] = number of P not dividing D, over primes of degree d.
    void prime_sums(int max_d, std::vector<std::int64_t>& A, std::vector<std::int64_t>& B) const {
        A.assign(static_cast<std::size_t>(max_d) + 1, 0);
        B.assign(static_cast<std::size_t>(max_d) + 1, 0);
        for (int d = 1; d <= max_d; ++d) {
            const auto& chi = t_.character(d);
            std::int64_t a = 0, b = 0;
            for (std::uint32_t id = t_.degree_begin(d); id < t_.degree_end(d); ++id) {
                const int s = chi[element_index(id)];
                a += s;
                b += s * s;
            }
            A[d] = a;
            B[d] = b;
        }
    }

    /// True iff P^2 divides D for no tabled P of degree <= max_check.
    bool squarefree_upto(int max_check) const {
        const std::uint32_t q = t_.field().q();
        for (std::uint32_t id = t_.degree_begin(1); id < t_.degree_end(max_check); ++id) {
            if (element_index(id) != 0) continue;
            // D'(theta) = sum_i i d_i theta^{i-1}
            const int e = t_.degree(id);
            const std::uint32_t off = t_.offset(id);
            bool zero = true;
            for (int c = 0; c < e && zero; ++c) {
                std::uint64_t s = 0;
                for (int i = 1; i <= n_; ++i) s += static_cast<std::uint64_t>(i % q) * digits_[i] * t_.power_row(i - 1)[off + c];
                zero = s % q == 0;
            }
            if (zero) return false;
        }
        return true;
    }

   private:
    std::uint64_t element_index(std::size_t id) const {
        const std::uint32_t q = t_.field().q();
        const std::uint32_t off = t_.offset(id);
        std::uint64_t k = 0;
        for (int c = t_.degree(id) - 1; c >= 0; --c) k = k * q + acc_[off + c];
        return k;
    }

    void add_row(int i, Residue times) {
        const std::uint32_t q = t_.field().q();
        const Residue* row = t_.power_row(i);
        const std::size_t S = acc_.size();
        if (times == 1) {
            for (std::size_t s = 0; s < S; ++s) {
                Residue v = acc_[s] + row[s];
                acc_[s] = v >= q ? v - q : v;
            }
        } else {
            for (std::size_t s = 0; s < S; ++s) acc_[s] = (acc_[s] + times * row[s]) % q;
        }
    }

    const PrimeSymbolTable& t_;
    int n_;
    std::vector<Residue> digits_;
    std::vector<Residue> acc_;
    std::uint64_t index_ = 0;
};

}  // namespace hyperl

#endif  // HYPERL_SYMBOL_TABLE_HPP
