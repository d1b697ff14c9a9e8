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

// tools/hyperl_cli.cpp
//
// Command-line driver: identity suites, ensemble statistics against their
// predictions, and the negative-moment experiments, reported as CSV or JSON.
//
// Usage:
//   hyperl-cli <command> [options]
//
//   primes     [--max-degree 12]                     pi_q(d) table
//   lpoly      --D "x^5+x+1"                         coefficients, zeros, residuals
//   verify     [--checks fe,rh,explicit,gauss,l1,l3,l5,coeff,afe]
//   ratios     --alpha 0.1 --beta 0.3                k-shift sets; ';' separates sets
//   twisted    --alpha 0.1 --h "x^2"                 ';' separates sets and twists
//   density    --phihat triangle|<file>|<v0,v1,...> --N 4
//   negmom     --beta 0.2,0.3 --m 1 --t 0            beta grid, one t per shift
//   boundslab  --suite trig|lb|scan
//
// Global options (before or after the command):
//   --q 5 --g 2 --mode exhaustive|sample:<count> --seed 1 --threads 1
//   --trunc-tol 1e-10 --format csv|json --out <path> --timing --config <file>
//
// The config file holds "key = value" lines (CLI11 INI); command-line flags
// win. With --out the resolved settings are echoed to <out>.ini, which can be
// passed back through --config to reproduce the report byte for byte.
//
// Exit status: 0 ok; 1 precondition, pole, divergence or overflow error;
// 2 usage error; 3 a check or frozen threshold was breached.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperl/hyperl.hpp"

namespace {

using namespace hyperl;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBreach = 3;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::uint32_t q = 5;
    int g = 2;
    std::string mode = "exhaustive";
    std::uint64_t seed = 1;
    unsigned threads = 1;
    double trunc_tol = 1e-10;
    std::string format = "csv";
    std::string out;
    bool timing = false;

    EnsembleSpec spec() const {
        EnsembleSpec s;
        s.q = q;
        s.g = g;
        s.seed = seed;
        s.threads = threads;
        if (mode != "exhaustive") {
            s.mode = SampleMode::sampled;
            s.count = std::stoull(mode.substr(7));
        }
        return s;
    }
    EulerOptions euler() const {
        EulerOptions e;
        e.tol = trunc_tol;
        return e;
    }
};

// ---------------------------------------------------------------------------
// Literal parsing. Malformed text is a usage error; well-formed but
// inadmissible values surface later as module errors.

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double parse_real(const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw usage_error("not a number: '" + tok + "'");
    }
    while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
    if (used != tok.size()) throw usage_error("not a number: '" + tok + "'");
    return v;
}

std::vector<double> parse_reals(const std::string& s) {
    std::vector<double> v;
    for (const auto& tok : split(s, ',')) v.push_back(parse_real(tok));
    if (v.empty()) throw usage_error("empty number list");
    return v;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> v;
    for (double x : parse_reals(s)) {
        if (x != std::floor(x)) throw usage_error("not an integer: " + format_double(x));
        v.push_back(static_cast<int>(x));
    }
    return v;
}

std::vector<ShiftSet> parse_shift_sets(const std::string& s) {
    std::vector<ShiftSet> out;
    for (const auto& part : split(s, ';')) try {
            out.push_back(parse_shift_list(part));
        } catch (const precondition_error& e) {
            throw usage_error(e.what());
        }
    return out;
}

PolyFq parse_poly_literal(const FieldParams& F, const std::string& s) {
    try {
        return parse_poly(F, s);
    } catch (const precondition_error& e) {
        throw usage_error(e.what());
    }
}

/// "triangle", a file of numbers, or an inline comma list; PhiHat(k/(2g)) for k = 0..N.
std::vector<double> parse_phihat(const std::string& s, int N) {
    if (s == "triangle") {
        std::vector<double> v;
        for (int k = 0; k <= N; ++k) v.push_back(static_cast<double>(N + 1 - k) / (N + 1));
        return v;
    }
    std::string text = s;
    if (std::filesystem::is_regular_file(s)) {
        std::ifstream in(s);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    for (char& ch : text)
        if (ch == '\n' || ch == '\r' || ch == '\t' || ch == ' ') ch = ',';
    std::string joined;
    for (const auto& tok : split(text, ','))
        if (!tok.empty()) joined += (joined.empty() ? "" : ",") + tok;
    return parse_reals(joined);
}

// ---------------------------------------------------------------------------
// Output

void emit(const RunConfig& cfg, const Table& t) {
    const std::string body = cfg.format == "json" ? to_json(t) : to_csv(t);
    if (cfg.out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + cfg.out);
    f << body;
}

std::string status(bool ok) { return ok ? "pass" : "FAIL"; }

// ---------------------------------------------------------------------------
// Commands

int cmd_primes(const RunConfig& cfg, int max_degree) {
    if (max_degree < 1) throw precondition_error("primes: --max-degree must be >= 1");
    Table t;
    t.columns = {"q", "d", "pi_q"};
    for (int d = 1; d <= max_degree; ++d) t.add({std::int64_t{cfg.q}, std::int64_t{d}, prime_count(cfg.q, d)});
    emit(cfg, t);
    return 0;
}

int cmd_lpoly(const RunConfig& cfg, const std::string& text) {
    const PolyFq D = parse_poly_literal(FieldParams(cfg.q), text);
    const LPolynomial L = l_coefficients(D, CoefficientMode::full_recursion);
    const ZeroSet z = zeros(L);
    Table t;
    t.columns = {"q", "g", "D"};
    for (int n = 0; n <= 2 * L.g; ++n) t.columns.push_back("c" + std::to_string(n));
    t.columns.insert(t.columns.end(), {"fe_residual", "radii_residual", "max_residual"});
    for (int j = 1; j <= 2 * L.g; ++j) t.columns.push_back("theta" + std::to_string(j));
    std::vector<Cell> row{std::int64_t{L.q}, std::int64_t{L.g}, to_symbolic(D)};
    for (auto c : L.c) row.emplace_back(c);
    row.insert(row.end(), {verify_functional_equation(L), z.radii_residual, z.max_residual});
    for (double th : z.thetas) row.emplace_back(th);
    t.add(std::move(row));
    emit(cfg, t);
    return verify_functional_equation(L) == 0 ? 0 : kExitBreach;
}

int cmd_verify(const RunConfig& cfg, const std::string& checks) {
    const VerifyConfig vc{cfg.q, cfg.g, cfg.seed};
    std::vector<CheckResult> results;
    for (const auto& c : split(checks, ',')) {
        if (c == "fe")
            results.push_back(check_functional_equation(cfg.spec()));
        else if (c == "coeff")
            results.push_back(check_coefficients(vc));
        else if (c == "rh")
            results.push_back(check_rh(vc));
        else if (c == "explicit")
            results.push_back(check_explicit(vc));
        else if (c == "afe")
            results.push_back(check_afe(vc));
        else if (c == "gauss")
            for (auto& r : check_gauss(vc)) results.push_back(r);
        else if (c == "l1")
            results.push_back(check_l1(vc));
        else if (c == "l3")
            results.push_back(check_l3(vc));
        else if (c == "l5")
            results.push_back(check_l5(cfg.spec()));
        else
            throw usage_error("unknown check '" + c + "'");
    }
    Table t;
    t.columns = {"check", "q", "g", "cases", "max_residual", "threshold", "status"};
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.pass();
        t.add({r.check, std::int64_t{r.q}, r.g ? Cell(std::int64_t{r.g}) : Cell(NA{}), static_cast<std::int64_t>(r.cases), r.max_residual, r.threshold,
               status(r.pass())});
    }
    emit(cfg, t);
    return ok ? 0 : kExitBreach;
}

int emit_reports(const RunConfig& cfg, const std::vector<Statistic>& stats) {
    Table t = report_table();
    for (const auto& r : empirical_statistics(cfg.spec(), stats, cfg.euler())) t.add(report_row(r, cfg.timing));
    emit(cfg, t);
    return 0;
}

int cmd_ratios(const RunConfig& cfg, const std::string& alpha, const std::string& beta) {
    std::vector<Statistic> stats;
    for (const auto& A : parse_shift_sets(alpha))
        for (const auto& B : parse_shift_sets(beta)) stats.push_back(RatioStat{A, B});
    return emit_reports(cfg, stats);
}

int cmd_twisted(const RunConfig& cfg, const std::string& alpha, const std::string& h) {
    const FieldParams F(cfg.q);
    std::vector<Statistic> stats;
    for (const auto& A : parse_shift_sets(alpha))
        for (const auto& hs : split(h, ';')) stats.push_back(TwistedStat{A, parse_poly_literal(F, hs)});
    return emit_reports(cfg, stats);
}

int cmd_density(const RunConfig& cfg, const std::string& phihat, int N) {
    if (N < 0) throw precondition_error("density: --N must be >= 0");
    const auto reports = empirical_statistics(cfg.spec(), {DensityStat{parse_phihat(phihat, N), N}}, cfg.euler());
    Table t = report_table({"alt_empirical", "route_gap", "note"});
    for (const auto& r : reports) {
        auto row = report_row(r, cfg.timing);
        row.emplace_back(r.alt_empirical ? Cell(r.alt_empirical->real()) : Cell(NA{}));
        row.emplace_back(r.route_gap ? Cell(*r.route_gap) : Cell(NA{}));
        row.emplace_back(r.note);
        t.add(std::move(row));
    }
    emit(cfg, t);
    return 0;
}

/// Scan rows; the frozen ratio cap applies only where it was calibrated (m = 1, one shift, t = 0).
int emit_scan(const RunConfig& cfg, const std::vector<NegScanRow>& rows) {
    Table t = report_table({"beta", "m", "k", "t", "branch", "in_window", "ratio", "status"});
    bool ok = true;
    for (const auto& r : rows) {
        auto row = report_row(r.report, cfg.timing);
        const bool calibrated = r.m == 1.0 && r.k == 1 && r.ts[0] == 0.0;
        const bool pass = r.ratio <= kNegMomentRatioCap && r.report.n_excluded == 0;
        ok = ok && (!calibrated || pass);
        row.insert(row.end(), {r.beta, r.m, std::int64_t{r.k}, detail::join_doubles(r.ts), r.branch, std::string(r.in_window ? "yes" : "no"), r.ratio,
                               calibrated ? status(pass) : std::string("NA")});
        t.add(std::move(row));
    }
    emit(cfg, t);
    return ok ? 0 : kExitBreach;
}

int cmd_negmom(const RunConfig& cfg, const std::string& beta, double m, const std::string& ts) {
    return emit_scan(cfg, negmoment_scan(cfg.spec(), {cfg.g}, parse_reals(beta), m, parse_reals(ts)));
}

int cmd_boundslab(const RunConfig& cfg, const std::string& suite, const std::string& beta, const std::string& Ns, const std::string& t_text,
                  double m, const std::string& g_list) {
    if (suite == "trig") {
        Table t;
        t.columns = {"q", "g", "a", "theta", "lhs", "predicted", "diff", "status"};
        bool ok = true;
        for (std::uint32_t q : {5u, 13u})
            for (double a : {1e-3, 1e-2, 1e-1, 1.0})
                for (double th : {0.0, 0.01, 0.1, 1.0, 3.0})
                    for (std::int64_t g : {10, 100, 10000}) {
                        const TrigSumResult r = trig_sum(q, g, a, th);
                        const bool pass = std::abs(r.diff) <= kTrigSumSlack;
                        ok = ok && pass;
                        t.add({std::int64_t{q}, g, a, th, r.lhs, r.predicted, r.diff, status(pass)});
                    }
        emit(cfg, t);
        return ok ? 0 : kExitBreach;
    }
    if (suite == "lb") {
        std::vector<int> N = Ns.empty() ? std::vector<int>{2, 4} : parse_ints(Ns);
        if (Ns.empty() && 2 * cfg.g > 4) N.push_back(2 * cfg.g);
        const double t0 = t_text.empty() ? 0.0 : parse_real(t_text);
        Table t;
        t.columns = {"q", "g", "beta", "N", "t", "min_gap", "max_gap", "argmin", "n_used", "n_excluded", "mode", "seed", "status"};
        bool ok = true;
        const EnsembleSpec spec = cfg.spec();
        for (const auto& r : lb_scan(spec, beta.empty() ? std::vector<double>{0.1, 0.3} : parse_reals(beta), N, t0)) {
            const bool pass = r.min_gap >= -kLbGapFloor;
            ok = ok && pass;
            t.add({std::int64_t{cfg.q}, std::int64_t{r.g}, r.beta, std::int64_t{r.N}, r.t, r.min_gap, r.max_gap, r.argmin,
                   static_cast<std::int64_t>(r.n_used), static_cast<std::int64_t>(r.n_excluded), std::string(mode_name(spec.mode)),
                   spec.mode == SampleMode::sampled ? Cell(static_cast<std::int64_t>(spec.seed)) : Cell(NA{}), status(pass)});
        }
        emit(cfg, t);
        return ok ? 0 : kExitBreach;
    }
    if (suite == "scan") {
        const std::vector<int> gs = g_list.empty() ? std::vector<int>{2, 3, 4} : parse_ints(g_list);
        const std::vector<double> betas = beta.empty() ? std::vector<double>{0.2, 0.3, 0.4} : parse_reals(beta);
        return emit_scan(cfg, negmoment_scan(cfg.spec(), gs, betas, m, t_text.empty() ? std::vector<double>{0.0} : parse_reals(t_text)));
    }
    throw usage_error("unknown suite '" + suite + "'");
}

/// Resolved settings next to the report: every global key plus the keys of
/// the command that ran.
void echo_config(const CLI::App& app, const std::string& out) {
    const std::string sub = app.get_subcommands().front()->get_name();
    std::ofstream f(out + ".ini", std::ios::binary);
    f << "# hyperl-cli " << sub << " --config " << out << ".ini\n";
    std::istringstream all(app.config_to_str(true, false));
    for (std::string line; std::getline(all, line);) {
        const auto eq = line.find('=');
        const auto dot = line.find('.');
        if (eq == std::string::npos) continue;
        if (dot == std::string::npos || dot > eq || line.rfind(sub + ".", 0) == 0) f << line << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperl-cli: quadratic L-functions over F_q[x], averaged over square-free D of degree 2g+1"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "Read key = value settings from a file; command-line flags win");

    RunConfig cfg;
    app.add_option("--q", cfg.q, "Field size (a prime)")->capture_default_str()->check(CLI::Range(2u, 1u << 16));
    app.add_option("--g", cfg.g, "Genus; D has degree 2g+1")->capture_default_str()->check(CLI::Range(1, 64));
    app.add_option("--mode", cfg.mode, "exhaustive or sample:<count>")
        ->capture_default_str()
        ->check(CLI::Validator(
            [](std::string& s) -> std::string {
                if (s == "exhaustive") return {};
                if (s.rfind("sample:", 0) == 0 && s.size() > 7 && s.find_first_not_of("0123456789", 7) == std::string::npos) return {};
                return "expected exhaustive or sample:<count>";
            },
            "MODE"));
    app.add_option("--seed", cfg.seed, "Sampling and random-input seed")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads; never changes results")->capture_default_str()->check(CLI::Range(1u, 1024u));
    app.add_option("--trunc-tol", cfg.trunc_tol, "Euler product truncation tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out, "Output file (default stdout)");
    app.add_flag("--timing", cfg.timing, "Fill runtime_s (output then varies between runs)");

    int max_degree = 12;
    auto* primes = app.add_subcommand("primes", "Number of monic irreducibles of each degree");
    primes->add_option("--max-degree", max_degree, "Largest degree")->capture_default_str();

    std::string D;
    auto* lpoly = app.add_subcommand("lpoly", "L-polynomial of one D with zeros and residuals");
    lpoly->add_option("--D", D, "Monic square-free polynomial of odd degree, e.g. \"x^5+2x+1\"")->required();

    std::string checks = "fe,rh,explicit,gauss,l1,l3,l5";
    auto* verify = app.add_subcommand("verify", "Identity suites");
    verify->add_option("--checks", checks, "Comma list of fe,rh,explicit,gauss,l1,l3,l5,coeff,afe")->capture_default_str();

    std::string alpha, beta, h;
    auto* ratios = app.add_subcommand("ratios", "Ratio averages against the conjectured main term");
    ratios->add_option("--alpha", alpha, "Numerator shifts, e.g. \"0.1,0.05+0.2i\"; ';' separates sets")->required();
    ratios->add_option("--beta", beta, "Denominator shifts; ';' separates sets")->required();

    auto* twisted = app.add_subcommand("twisted", "Twisted moments against the predicted main term");
    twisted->set_help_flag("--help", "Print this help message and exit");  // frees -h for the twist
    twisted->add_option("--alpha", alpha, "Shifts; ';' separates sets")->required();
    twisted->add_option("--h", h, "Monic twist polynomial; ';' separates twists")->required();

    std::string phihat;
    int N = 0;
    auto* density = app.add_subcommand("density", "One-level density against its main term");
    density->add_option("--phihat", phihat, "triangle, a file, or a comma list of PhiHat(k/(2g)), k = 0..N")->required();
    density->add_option("--N", N, "Support of the Fourier transform in units of 1/(2g)")->required();

    double m = 1.0;
    std::string ts;
    auto* negmom = app.add_subcommand("negmom", "Negative moments of |L| against the predicted shape");
    negmom->add_option("--beta", beta, "Grid of real shifts in (0, 1/2)")->required();
    negmom->add_option("--m", m, "Moment exponent")->capture_default_str();
    negmom->add_option("--t", ts, "One imaginary part per L-factor")->default_str("0");

    std::string suite, Ns, g_list;
    auto* boundslab = app.add_subcommand("boundslab", "Lower-bound gap, cosine-sum and negative-moment scans");
    boundslab->add_option("--suite", suite, "trig, lb or scan")->required()->check(CLI::IsMember({"trig", "lb", "scan"}));
    boundslab->add_option("--beta", beta, "lb: 0.1,0.3; scan: 0.2,0.3,0.4");
    boundslab->add_option("--N", Ns, "lb: majorant lengths (default 2,4,2g)");
    boundslab->add_option("--t", ts, "lb: one t; scan: one per L-factor (default 0)");
    boundslab->add_option("--m", m, "scan: moment exponent")->capture_default_str();
    boundslab->add_option("--g-list", g_list, "scan: genera (default 2,3,4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    if (ts.empty() && negmom->parsed()) ts = "0";

    try {
        if (!cfg.out.empty()) echo_config(app, cfg.out);
        if (*primes) return cmd_primes(cfg, max_degree);
        if (*lpoly) return cmd_lpoly(cfg, D);
        if (*verify) return cmd_verify(cfg, checks);
        if (*ratios) return cmd_ratios(cfg, alpha, beta);
        if (*twisted) return cmd_twisted(cfg, alpha, h);
        if (*density) return cmd_density(cfg, phihat, N);
        if (*negmom) return cmd_negmom(cfg, beta, m, ts);
        if (*boundslab) return cmd_boundslab(cfg, suite, beta, Ns, ts, m, g_list);
    } catch (const usage_error& e) {
        std::cerr << "hyperl-cli: usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "hyperl-cli: error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
