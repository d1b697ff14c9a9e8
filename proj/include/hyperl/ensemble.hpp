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

#ifndef HYPERL_ENSEMBLE_HPP
#define HYPERL_ENSEMBLE_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "conjecture.hpp"
#include "lfun.hpp"
#include "symbol_table.hpp"

namespace hyperl {

enum class SampleMode { exhaustive, sampled };

inline const char* mode_name(SampleMode m) { return m == SampleMode::exhaustive ? "exhaustive" : "sampled"; }

struct EnsembleSpec {
    std::uint32_t q = 5;
    int g = 1;
    SampleMode mode = SampleMode::exhaustive;
    std::uint64_t count = 0;  // sampled mode: number of D drawn
    std::uint64_t seed = 0;
    std::uint64_t chunk_size = 4096;  // reduction granularity; part of the result's identity
    unsigned threads = 1;             // never changes results
    std::uint64_t budget = 10'000'000;  // exhaustive mode refuses q^{2g+1} beyond this

    int degree() const noexcept { return 2 * g + 1; }
};

/// Draw count square-free monic polynomials of degree 2g+1, uniformly with
/// replacement. The generator is mt19937_64 (fully specified by the standard)
/// and bounded integers come from plain rejection, so streams are portable.
inline std::vector<std::uint64_t> sample_indices(const EnsembleSpec& spec) {
    const FieldParams F(spec.q);
    const std::uint64_t range = monic_count(F, spec.degree());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::mt19937_64 rng(spec.seed);
    std::vector<std::uint64_t> out;
    out.reserve(spec.count);
    while (out.size() < spec.count) {
        std::uint64_t x;
        do x = rng();
        while (x >= limit);
        x %= range;
        if (is_squarefree(monic_from_index(F, spec.degree(), x))) out.push_back(x);
    }
    return out;
}

inline void validate(const EnsembleSpec& spec) {
    const FieldParams F(spec.q);
    if (spec.g < 1) throw precondition_error("ensemble: genus must be >= 1");
    if (spec.chunk_size == 0) throw precondition_error("ensemble: chunk size must be positive");
    if (spec.mode == SampleMode::exhaustive) {
        const std::uint64_t n = checked::pow(spec.q, static_cast<unsigned>(spec.degree()));
        if (n > spec.budget)
            throw precondition_error("ensemble: exhaustive enumeration of " + std::to_string(n) + " polynomials exceeds the budget of " +
                                     std::to_string(spec.budget) + "; use sampled mode");
    } else if (spec.count == 0) {
        throw precondition_error("ensemble: sampled mode needs a positive sample count");
    }
}

/// What a functional sees for one D.
struct EnsembleItem {
    std::uint64_t index;  // canonical monic index of D
    const SymbolEvaluator& symbols;
    const LPolynomial& L;

    PolyFq D() const { return symbols.polynomial(); }
};

/// One functional output; excluded values do not enter the mean.
struct Sample {
    cplx value = 0.0;
    bool excluded = false;
};

struct SlotAverage {
    cplx mean = 0.0;
    std::uint64_t count = 0;     // values that entered the mean
    std::uint64_t excluded = 0;
    double max_abs = 0.0;        // largest |value| seen
    double stderr_re = 0.0, stderr_im = 0.0;
};

struct PassResult {
    std::vector<SlotAverage> slots;
    std::uint64_t visited = 0;  // number of D in the ensemble
};

namespace detail {

struct SlotAccumulator {
    CompensatedComplexSum sum;
    CompensatedSum sq_re, sq_im;
    std::uint64_t count = 0, excluded = 0;
    double max_abs = 0.0;

    void add(const Sample& s) {
        if (s.excluded) {
            ++excluded;
            return;
        }
        sum.add(s.value);
        sq_re.add(s.value.real() * s.value.real());
        sq_im.add(s.value.imag() * s.value.imag());
        ++count;
        max_abs = std::max(max_abs, std::abs(s.value));
    }
    void merge(const SlotAccumulator& o) {
        sum.add(o.sum.value());
        sq_re.add(o.sq_re.value());
        sq_im.add(o.sq_im.value());
        count += o.count;
        excluded += o.excluded;
        max_abs = std::max(max_abs, o.max_abs);
    }
};

}  // namespace detail

/// Symbol table for an ensemble: primes up to max(g, extra_degree), powers up to 2g+1.
inline PrimeSymbolTable ensemble_table(const EnsembleSpec& spec, int extra_degree = 0) {
    return PrimeSymbolTable(FieldParams(spec.q), std::max(spec.g, extra_degree), spec.degree());
}

/// Run fn over every D of the ensemble; fn(item, out) fills n_slots samples and
/// must be safe to call concurrently. Chunks of chunk_size consecutive D
/// (index order, or sorted sample order) reduce in order, then chunks merge in
/// chunk order, so results do not depend on the thread count.
template <class Fn>
PassResult run_pass(const EnsembleSpec& spec, const PrimeSymbolTable& table, std::size_t n_slots, Fn&& fn) {
    validate(spec);
    const FieldParams F(spec.q);
    const int n = spec.degree();
    if (table.field().q() != spec.q || table.max_degree() < spec.g || table.max_power() < n)
        throw precondition_error("run_pass: symbol table does not cover the ensemble");

    std::vector<std::uint64_t> samples;
    std::uint64_t total;
    if (spec.mode == SampleMode::sampled) {
        samples = sample_indices(spec);
        std::sort(samples.begin(), samples.end());
        total = samples.size();
    } else {
        total = monic_count(F, n);
    }
    const std::uint64_t chunks = (total + spec.chunk_size - 1) / spec.chunk_size;

    struct ChunkResult {
        std::vector<detail::SlotAccumulator> acc;
        std::uint64_t visited = 0;
        std::exception_ptr error;
    };
    std::vector<ChunkResult> results(chunks);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&]() {
        SymbolEvaluator ev(table, n);
        std::vector<std::int64_t> A, B;
        std::vector<Sample> out(n_slots);
        for (std::uint64_t c; (c = next.fetch_add(1)) < chunks;) {
            ChunkResult& r = results[c];
            r.acc.assign(n_slots, {});
            const std::uint64_t lo = c * spec.chunk_size, hi = std::min(total, lo + spec.chunk_size);
            std::uint64_t idx = 0;
            try {
                for (std::uint64_t pos = lo; pos < hi; ++pos) {
                    idx = samples.empty() ? pos : samples[pos];
                    ev.seek(idx);
                    if (!ev.squarefree_upto(spec.g)) continue;
                    ev.prime_sums(spec.g, A, B);
                    const LPolynomial L = l_polynomial_from_prime_sums(spec.q, spec.g, A, B, false);
                    std::fill(out.begin(), out.end(), Sample{});
                    fn(EnsembleItem{idx, ev, L}, std::span<Sample>(out));
                    for (std::size_t s = 0; s < n_slots; ++s) r.acc[s].add(out[s]);
                    ++r.visited;
                }
            } catch (const std::exception& e) {
                r.error = std::make_exception_ptr(
                    std::runtime_error(std::string("ensemble functional failed on D = ") + to_symbolic(monic_from_index(F, n, idx)) + ": " + e.what()));
            }
        }
    };
    const unsigned nt = std::max(1u, spec.threads);
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<detail::SlotAccumulator> acc(n_slots);
    PassResult res;
    for (const ChunkResult& r : results) {
        if (r.error) std::rethrow_exception(r.error);
        for (std::size_t s = 0; s < n_slots; ++s) acc[s].merge(r.acc[s]);
        res.visited += r.visited;
    }
    for (const auto& a : acc) {
        SlotAverage sa;
        sa.count = a.count;
        sa.excluded = a.excluded;
        sa.max_abs = a.max_abs;
        if (a.count) {
            const double cnt = static_cast<double>(a.count);
            sa.mean = a.sum.value() / cnt;
            if (a.count > 1) {
                const double vr = std::max(0.0, (a.sq_re.value() - cnt * sa.mean.real() * sa.mean.real()) / (cnt - 1.0));
                const double vi = std::max(0.0, (a.sq_im.value() - cnt * sa.mean.imag() * sa.mean.imag()) / (cnt - 1.0));
                sa.stderr_re = std::sqrt(vr / cnt);
                sa.stderr_im = std::sqrt(vi / cnt);
            }
        }
        res.slots.push_back(sa);
    }
    return res;
}

/// Visit D in ensemble order; returns the number visited.
inline std::uint64_t iterate_H(const EnsembleSpec& spec, const std::function<void(std::uint64_t, const PolyFq&)>& visit) {
    validate(spec);
    const FieldParams F(spec.q);
    const int n = spec.degree();
    std::uint64_t visited = 0;
    if (spec.mode == SampleMode::sampled) {
        for (std::uint64_t k : sample_indices(spec)) {
            visit(k, monic_from_index(F, n, k));
            ++visited;
        }
        return visited;
    }
    const PrimeSymbolTable table(F, spec.g, n);
    SymbolEvaluator ev(table, n);
    const std::uint64_t total = monic_count(F, n);
    for (std::uint64_t k = 0; k < total; ++k) {
        ev.seek(k);
        if (!ev.squarefree_upto(spec.g)) continue;
        visit(k, ev.polynomial());
        ++visited;
    }
    return visited;
}

/// Sequential visit with the L-polynomial attached; for scans that keep minima rather than means.
inline std::uint64_t for_each_L(const EnsembleSpec& spec, const PrimeSymbolTable& table, const std::function<void(const EnsembleItem&)>& visit) {
    validate(spec);
    const int n = spec.degree();
    if (table.field().q() != spec.q || table.max_degree() < spec.g || table.max_power() < n)
        throw precondition_error("for_each_L: symbol table does not cover the ensemble");
    std::vector<std::uint64_t> samples;
    if (spec.mode == SampleMode::sampled) {
        samples = sample_indices(spec);
        std::sort(samples.begin(), samples.end());
    }
    const std::uint64_t total = samples.empty() ? monic_count(FieldParams(spec.q), n) : samples.size();
    SymbolEvaluator ev(table, n);
    std::vector<std::int64_t> A, B;
    std::uint64_t visited = 0;
    for (std::uint64_t pos = 0; pos < total; ++pos) {
        const std::uint64_t idx = samples.empty() ? pos : samples[pos];
        ev.seek(idx);
        if (!ev.squarefree_upto(spec.g)) continue;
        ev.prime_sums(spec.g, A, B);
        visit(EnsembleItem{idx, ev, l_polynomial_from_prime_sums(spec.q, spec.g, A, B, false)});
        ++visited;
    }
    return visited;
}

/// Mean of a complex functional of D.
inline SlotAverage average(const EnsembleSpec& spec, const std::function<cplx(const EnsembleItem&)>& f) {
    return run_pass(spec, ensemble_table(spec), 1, [&](const EnsembleItem& it, std::span<Sample> out) { out[0].value = f(it); }).slots.front();
}

// ---------------------------------------------------------------------------
// Statistics

/// Denominator L-values below this are treated as zero and the D is excluded.
inline constexpr double kZeroLValue = 1e-14;

struct RatioStat {
    ShiftSet A, B;
    bool waive_window = false;  // allow Re beta >= 1/2 (limit checks)
};
struct TwistedStat {
    ShiftSet A;
    PolyFq h{FieldParams(5)};
};
struct NegMomentStat {
    std::vector<double> betas;
    std::vector<double> ts;
    double m = 1.0;
};
/// phihat[k] = PhiHat(k / (2g)) for k = 0..N.
struct DensityStat {
    std::vector<double> phihat;
    int N = 0;
};
struct ChiSquareStat {
    PolyFq f{FieldParams(5)};
};
using Statistic = std::variant<RatioStat, TwistedStat, NegMomentStat, DensityStat, ChiSquareStat>;

struct EnsembleReport {
    std::string statistic;
    std::uint32_t q = 0;
    int g = 0;
    std::string params;
    cplx empirical = 0.0;
    cplx predicted = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double predicted_error_scale = std::numeric_limits<double>::quiet_NaN();
    std::uint64_t n_excluded = 0;
    std::uint64_t n_used = 0;
    SampleMode mode = SampleMode::exhaustive;
    std::uint64_t seed = 0;
    double runtime_s = 0.0;
    double stderr_re = 0.0, stderr_im = 0.0;
    // density only: the explicit-formula route and its largest per-D gap to the zero route
    std::optional<cplx> alt_empirical;
    std::optional<double> route_gap;
    bool warning = false;  // prediction used outside its claimed range
    std::string note;

    void finish() {
        abs_err = std::abs(empirical - predicted);
        rel_err = abs_err / std::max(std::abs(predicted), 1e-300);
    }
};

namespace detail {

inline std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_double(v[i]);
    return s;
}

/// chi_D(f) from the tabled prime symbols; f monic.
struct CharacterProbe {
    std::vector<std::pair<std::size_t, int>> ids;  // prime id, exponent
    bool coprime_only = false;                     // chi_D(f^2): 1 iff gcd(D, f) = 1

    static int max_degree(const PolyFq& f) {
        int m = 0;
        if (f.degree() > 0)
            for (const auto& [p, e] : factor(f).factors) m = std::max(m, p.degree());
        return m;
    }
    void bind(const PrimeSymbolTable& table, const PolyFq& f) {
        ids.clear();
        if (f.degree() > 0)
            for (const auto& [p, e] : factor(f).factors) ids.emplace_back(static_cast<std::size_t>(table.find(p)), e);
    }
    int operator()(const SymbolEvaluator& ev) const {
        int r = 1;
        for (const auto& [id, e] : ids) {
            const int s = ev.symbol(id);
            if (s == 0) return 0;
            if (!coprime_only && e % 2) r *= s;
        }
        return r;
    }
};

}  // namespace detail

/// Compute several statistics in one pass over the ensemble.
inline std::vector<EnsembleReport> empirical_statistics(const EnsembleSpec& spec, const std::vector<Statistic>& stats, const EulerOptions& euler = {}) {
    validate(spec);
    const FieldParams F(spec.q);
    const double q = spec.q;
    const int g = spec.g;

    // Slot layout and the prime degrees the character probes need.
    std::vector<std::size_t> first_slot;
    std::size_t n_slots = 0;
    int need_degree = g;
    for (const auto& st : stats) {
        first_slot.push_back(n_slots);
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, RatioStat>) {
                    if (s.A.empty() || s.A.size() != s.B.size()) throw precondition_error("ratio statistic: |A| = |B| >= 1 required");
                    s.A.require_numerator();
                    s.B.require_denominator(s.waive_window);
                    n_slots += 1;
                } else if constexpr (std::is_same_v<T, TwistedStat>) {
                    if (s.A.empty()) throw precondition_error("twisted statistic: empty shift set");
                    if (s.h.q() != spec.q || !s.h.is_monic()) throw precondition_error("twisted statistic: h must be monic over F_q");
                    need_degree = std::max(need_degree, detail::CharacterProbe::max_degree(s.h));
                    n_slots += 1;
                } else if constexpr (std::is_same_v<T, NegMomentStat>) {
                    if (s.betas.empty() || s.betas.size() != s.ts.size()) throw precondition_error("negative moment: need one t per beta");
                    for (double b : s.betas)
                        if (!(b > 0.0 && b < 0.5)) throw precondition_error("negative moment: 0 < beta < 1/2 required, got " + format_double(b));
                    if (!(s.m >= 0.0)) throw precondition_error("negative moment: m must be >= 0");
                    n_slots += 1;
                } else if constexpr (std::is_same_v<T, DensityStat>) {
                    if (static_cast<int>(s.phihat.size()) != s.N + 1)
                        throw precondition_error("density statistic: need PhiHat samples at k/(2g) for k = 0..N");
                    n_slots += 3;  // zero route, explicit route, per-D difference
                } else {
                    if (s.f.q() != spec.q || !s.f.is_monic() || s.f.degree() < 1) throw precondition_error("chi-square statistic: f must be monic of degree >= 1");
                    need_degree = std::max(need_degree, detail::CharacterProbe::max_degree(s.f));
                    n_slots += 1;
                }
            },
            st);
    }

    // Per-statistic precomputation shared by all workers (read-only during the pass).
    const PrimeSymbolTable table = ensemble_table(spec, need_degree);
    std::vector<detail::CharacterProbe> probes(stats.size());
    std::vector<std::vector<cplx>> num_u(stats.size()), den_u(stats.size());
    std::vector<TrigPoly> density_h(stats.size());
    int max_power_sum = 0;
    for (std::size_t i = 0; i < stats.size(); ++i) {
        if (const auto* r = std::get_if<RatioStat>(&stats[i])) {
            for (const auto& a : r->A) num_u[i].push_back(qpow(q, 0.5 + a));
            for (const auto& b : r->B) den_u[i].push_back(qpow(q, 0.5 + b));
        } else if (const auto* t = std::get_if<TwistedStat>(&stats[i])) {
            for (const auto& a : t->A) num_u[i].push_back(qpow(q, 0.5 + a));
            probes[i].bind(table, t->h);
        } else if (const auto* nm = std::get_if<NegMomentStat>(&stats[i])) {
            for (std::size_t j = 0; j < nm->betas.size(); ++j) den_u[i].push_back(qpow(q, cplx(0.5 + nm->betas[j], nm->ts[j])));
        } else if (const auto* d = std::get_if<DensityStat>(&stats[i])) {
            // Phi(2g theta) = phi(theta) with phihat(n) = PhiHat(n / (2g)) / (2g).
            for (double v : d->phihat) density_h[i].hhat.push_back(v / (2.0 * g));
            max_power_sum = std::max(max_power_sum, d->N);
        } else if (const auto* c = std::get_if<ChiSquareStat>(&stats[i])) {
            probes[i].bind(table, c->f);
            probes[i].coprime_only = true;
        }
    }

    const auto t0 = std::chrono::steady_clock::now();
    const PassResult pass = run_pass(spec, table, n_slots, [&](const EnsembleItem& it, std::span<Sample> out) {
        std::optional<ZeroSet> zs;
        std::vector<std::int64_t> psums;
        for (std::size_t i = 0; i < stats.size(); ++i) {
            Sample* o = out.data() + first_slot[i];
            switch (stats[i].index()) {
                case 0: {  // ratio
                    cplx v = 1.0;
                    for (const cplx& u : num_u[i]) v *= evaluate_at(it.L, u);
                    for (const cplx& u : den_u[i]) {
                        const cplx l = evaluate_at(it.L, u);
                        if (std::abs(l) < kZeroLValue) {
                            o->excluded = true;
                            break;
                        }
                        v /= l;
                    }
                    o->value = v;
                    break;
                }
                case 1: {  // twisted
                    const int chi = probes[i](it.symbols);
                    cplx v = static_cast<double>(chi);
                    if (chi != 0)
                        for (const cplx& u : num_u[i]) v *= evaluate_at(it.L, u);
                    o->value = v;
                    break;
                }
                case 2: {  // negative moment
                    const double m = std::get<NegMomentStat>(stats[i]).m;
                    double v = 1.0;
                    for (const cplx& u : den_u[i]) {
                        const double a = std::abs(evaluate_at(it.L, u));
                        if (a < kZeroLValue) {
                            o->excluded = true;
                            break;
                        }
                        v *= std::pow(a, -m);
                    }
                    o->value = v;
                    break;
                }
                case 3: {  // density
                    if (!zs) zs = zeros(it.L);
                    if (psums.empty()) psums = power_sums_from_coefficients(it.L, max_power_sum);
                    const double via_zeros = zero_sum(*zs, density_h[i]);
                    const double via_primes = explicit_prime_side(it.L.q, it.L.g, density_h[i], psums);
                    o[0].value = via_zeros;
                    o[1].value = via_primes;
                    o[2].value = via_zeros - via_primes;
                    break;
                }
                case 4:  // chi_D(f^2)
                    o->value = static_cast<double>(probes[i](it.symbols));
                    break;
            }
        }
    });
    const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::vector<EnsembleReport> reports;
    for (std::size_t i = 0; i < stats.size(); ++i) {
        EnsembleReport r;
        r.q = spec.q;
        r.g = g;
        r.mode = spec.mode;
        r.seed = spec.mode == SampleMode::sampled ? spec.seed : 0;
        r.runtime_s = runtime;
        const SlotAverage& a = pass.slots[first_slot[i]];
        r.empirical = a.mean;
        r.n_excluded = a.excluded;
        r.n_used = a.count;
        r.stderr_re = a.stderr_re;
        r.stderr_im = a.stderr_im;
        std::visit(
            [&](const auto& s) {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, RatioStat>) {
                    r.statistic = "ratio";
                    r.params = "A=" + format_shift_list(s.A) + ";B=" + format_shift_list(s.B);
                    r.predicted = ratios_main(s.A, s.B, q, g, euler, s.waive_window).value;
                    r.predicted_error_scale = ratio_error_scale(s.A, s.B, q, g);
                } else if constexpr (std::is_same_v<T, TwistedStat>) {
                    r.statistic = "twisted";
                    r.params = "A=" + format_shift_list(s.A) + ";h=" + to_symbolic(s.h);
                    const TwistPoly tp = TwistPoly::from(s.h);
                    r.predicted = twisted_main(s.A, tp, q, g, euler).value;
                    r.predicted_error_scale = twisted_error_scale(s.A, tp, q, g);
                } else if constexpr (std::is_same_v<T, NegMomentStat>) {
                    r.statistic = "negmoment";
                    r.params = "beta=" + detail::join_doubles(s.betas) + ";t=" + detail::join_doubles(s.ts) + ";m=" + format_double(s.m);
                    r.predicted = g >= 2 ? negmoment_shape(s.betas, s.ts, s.m, g) : std::numeric_limits<double>::quiet_NaN();
                    r.note = "predicted is the upper-bound shape without its constant";
                } else if constexpr (std::is_same_v<T, DensityStat>) {
                    r.statistic = "density";
                    r.params = "N=" + std::to_string(s.N) + ";phihat=" + detail::join_doubles(s.phihat);
                    const DensityPrediction dp = density_main(s.phihat, q, g, s.N);
                    r.predicted = dp.value;
                    r.warning = dp.outside_window;
                    if (dp.outside_window) r.note = "N >= 4g: outside the range where the main term is claimed";
                    r.predicted_error_scale = density_error_scale(q, g, s.N);
                    r.alt_empirical = pass.slots[first_slot[i] + 1].mean;
                    r.route_gap = pass.slots[first_slot[i] + 2].max_abs;
                } else {
                    r.statistic = "chi_square_avg";
                    r.params = "f=" + to_symbolic(s.f);
                    double p = 1.0;
                    for (const auto& [P, e] : factor(s.f).factors) p /= 1.0 + std::pow(q, -static_cast<double>(P.degree()));
                    r.predicted = p;
                    r.predicted_error_scale = std::pow(q, -2.0 * g);
                }
            },
            stats[i]);
        r.finish();
        reports.push_back(std::move(r));
    }
    return reports;
}

inline EnsembleReport empirical_statistic(const EnsembleSpec& spec, const Statistic& stat, const EulerOptions& euler = {}) {
    return empirical_statistics(spec, {stat}, euler).front();
}

}  // namespace hyperl

#endif  // HYPERL_ENSEMBLE_HPP
