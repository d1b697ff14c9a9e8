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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "hyperl/report.hpp"
#include "hyperl/verify.hpp"

using namespace hyperl;

namespace {

struct CliRun {
    int status = -1;
    std::string out;
};

// stdout captured, stderr discarded.
CliRun cli(const std::string& args) {
    const std::string cmd = std::string(HYPERL_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    ADD_FAILURE() << "no column " << name;
    return 0;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "hyperl_cli_" + name; }

}  // namespace

TEST(Report, CsvQuotingAndNA) {
    Table t;
    t.columns = {"a", "b", "c", "d"};
    t.add({NA{}, std::int64_t{-3}, 0.1, std::string("x,\"y\"")});
    t.add({std::numeric_limits<double>::quiet_NaN(), std::int64_t{0}, 1e300, std::string("plain")});
    EXPECT_EQ(to_csv(t), "a,b,c,d\nNA,-3,0.1,\"x,\"\"y\"\"\"\nNA,0,1e+300,plain\n");
    EXPECT_THROW(t.add({NA{}}), std::logic_error);
}

TEST(Report, JsonMirrorsColumns) {
    Table t = report_table({"extra"});
    EnsembleReport r;
    r.statistic = "ratio";
    r.q = 5;
    r.g = 2;
    r.empirical = 1.5;
    r.predicted = 1.25;
    r.finish();
    auto row = report_row(r, false);
    row.emplace_back(std::string("e"));
    t.add(row);
    const auto j = nlohmann::ordered_json::parse(to_json(t));
    ASSERT_EQ(j.size(), 1u);
    ASSERT_EQ(j[0].size(), t.columns.size());
    EXPECT_EQ(j[0]["abs_err"].get<double>(), 0.25);
    EXPECT_TRUE(j[0]["runtime_s"].is_null());
    EXPECT_TRUE(j[0]["predicted_error_scale"].is_null());
    EXPECT_EQ(j[0]["extra"], "e");
    // Key order follows the columns.
    std::size_t i = 0;
    for (auto it = j[0].begin(); it != j[0].end(); ++it) EXPECT_EQ(it.key(), t.columns[i++]);
}

TEST(VerifySuites, SmallGenusPasses) {
    const VerifyConfig vc{5, 1, 3};
    EnsembleSpec spec;
    spec.g = 1;
    for (const CheckResult& r : {check_functional_equation(spec), check_coefficients(vc, 20), check_rh(vc, 50), check_explicit(vc, 10, 5), check_l1(vc, 2),
                                 check_l3(vc, 2, 2), check_l5(spec)})
        EXPECT_TRUE(r.pass()) << r.check << " " << r.max_residual;
    EXPECT_EQ(check_functional_equation(spec).cases, 100u);
}

TEST(Cli, VerifyFunctionalEquation) {
    const CliRun r = cli("verify --q 5 --g 2 --checks fe");
    ASSERT_EQ(r.status, 0);
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1][column(rows[0], "check")], "fe");
    EXPECT_EQ(rows[1][column(rows[0], "cases")], "2500");
    EXPECT_EQ(rows[1][column(rows[0], "max_residual")], "0");
    EXPECT_EQ(rows[1][column(rows[0], "status")], "pass");
}

TEST(Cli, RatiosRow) {
    const CliRun r = cli("ratios --q 5 --g 3 --alpha 0.1 --beta 0.3");
    ASSERT_EQ(r.status, 0);
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], report_columns());
    const auto& row = rows[1];
    EXPECT_EQ(row[column(rows[0], "statistic")], "ratio");
    EXPECT_EQ(row[column(rows[0], "g")], "3");
    EXPECT_EQ(row[column(rows[0], "mode")], "exhaustive");
    EXPECT_EQ(row[column(rows[0], "runtime_s")], "NA");
    const double emp = std::stod(row[column(rows[0], "empirical_re")]), pred = std::stod(row[column(rows[0], "predicted_re")]);
    EXPECT_NEAR(std::stod(row[column(rows[0], "rel_err")]), std::abs(emp - pred) / pred, 1e-15);
    EXPECT_LT(std::stod(row[column(rows[0], "rel_err")]), 1e-3);
}

TEST(Cli, BoundsLabTrig) {
    const CliRun r = cli("boundslab --suite trig");
    ASSERT_EQ(r.status, 0);
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 121u);
    const std::size_t d = column(rows[0], "diff");
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(std::abs(std::stod(rows[i][d])), 3.0);
}

TEST(Cli, LpolyRow) {
    const CliRun r = cli("lpoly --q 5 --D \"x^5+x+1\"");
    ASSERT_EQ(r.status, 0);
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1][column(rows[0], "g")], "2");
    EXPECT_EQ(rows[1][column(rows[0], "fe_residual")], "0");
    // c_4 = q^2 c_0
    EXPECT_EQ(rows[1][column(rows[0], "c4")], "25");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("").status, 2);
    EXPECT_EQ(cli("ratios --alpha 0.1").status, 2);  // missing --beta
    EXPECT_EQ(cli("ratios --bogus 1 --alpha 0.1 --beta 0.3").status, 2);
    EXPECT_EQ(cli("ratios --mode sample:x --alpha 0.1 --beta 0.3").status, 2);
    EXPECT_EQ(cli("ratios --format xml --alpha 0.1 --beta 0.3").status, 2);
    EXPECT_EQ(cli("ratios --alpha 0.1zz --beta 0.3").status, 2);
    EXPECT_EQ(cli("verify --checks nope").status, 2);
    EXPECT_EQ(cli("ratios --g 2 --alpha 0.1 --beta 0.7").status, 1);  // denominator window
    EXPECT_EQ(cli("lpoly --D \"x^5+2*x^3+x\"").status, 1);  // x^5 + 2x^3 + x = x(x^2+1)^2
    EXPECT_EQ(cli("ratios --q 4 --alpha 0.1 --beta 0.3").status, 1);  // not a prime
    EXPECT_EQ(cli("ratios --g 7 --alpha 0.1 --beta 0.3").status, 1);  // exhaustive budget
    EXPECT_EQ(cli("density --g 2 --phihat 1,0.5 --N 4").status, 1);  // wrong sample count
    EXPECT_EQ(cli("--help").status, 0);
}

TEST(Cli, DeterministicAcrossThreads) {
    std::string first;
    for (const char* t : {"1", "4", "8"}) {
        const CliRun r = cli(std::string("ratios --g 3 --alpha \"0.1;0.05+0.2i\" --beta 0.3 --mode sample:4000 --seed 9 --threads ") + t);
        ASSERT_EQ(r.status, 0);
        if (first.empty())
            first = r.out;
        else
            EXPECT_EQ(r.out, first) << "threads " << t;
    }
    EXPECT_EQ(cli("ratios --g 3 --alpha \"0.1;0.05+0.2i\" --beta 0.3 --mode sample:4000 --seed 10").out == first, false);
}

TEST(Cli, JsonMirrorsCsv) {
    const CliRun c = cli("twisted --g 2 --alpha 0.1 --h \"x;x^2\"");
    const CliRun j = cli("twisted --g 2 --alpha 0.1 --h \"x;x^2\" --format json");
    ASSERT_EQ(c.status, 0);
    ASSERT_EQ(j.status, 0);
    const auto rows = parse_csv(c.out);
    const auto js = nlohmann::json::parse(j.out);
    ASSERT_EQ(js.size() + 1, rows.size());
    for (std::size_t i = 0; i < js.size(); ++i)
        for (std::size_t k = 0; k < rows[0].size(); ++k) {
            const auto& v = js[i][rows[0][k]];
            const std::string& cell = rows[i + 1][k];
            if (v.is_null())
                EXPECT_EQ(cell, "NA");
            else if (v.is_string())
                EXPECT_EQ(v.get<std::string>(), cell);
            else
                EXPECT_EQ(v.get<double>(), std::stod(cell)) << rows[0][k];
        }
}

TEST(Cli, ConfigFileMergesUnderFlags) {
    const std::string cfg = temp_path("run.ini");
    {
        std::ofstream f(cfg);
        f << "# comment\ng = 2\nformat = json\nseed = 4\n";
    }
    // The file sets g and format; the command line overrides format.
    const CliRun a = cli("--config " + cfg + " primes --max-degree 3 --format csv");
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, "q,d,pi_q\n5,1,5\n5,2,10\n5,3,40\n");
    const CliRun b = cli("ratios --config " + cfg + " --alpha 0.1 --beta 0.3");
    ASSERT_EQ(b.status, 0);
    EXPECT_EQ(nlohmann::json::parse(b.out)[0]["g"], 2);
    const CliRun c = cli("ratios --config " + cfg + " --g 3 --alpha 0.1 --beta 0.3");
    EXPECT_EQ(nlohmann::json::parse(c.out)[0]["g"], 3);
}

TEST(Cli, EchoedConfigReproducesReport) {
    const std::string out = temp_path("neg.csv"), again = temp_path("neg2.csv");
    ASSERT_EQ(cli("negmom --g 2 --beta 0.2,0.4 --mode sample:800 --seed 3 --threads 4 --out " + out).status, 0);
    const std::string echo = slurp(out + ".ini");
    EXPECT_NE(echo.find("negmom.beta"), std::string::npos);
    EXPECT_NE(echo.find("seed=3"), std::string::npos);
    ASSERT_EQ(cli("negmom --config " + out + ".ini --threads 1 --out " + again).status, 0);
    EXPECT_EQ(slurp(again), slurp(out));
    EXPECT_FALSE(slurp(out).empty());
}

TEST(Cli, BoundsLabStatusColumns) {
    // lb passes the frozen floor; a scan outside the calibrated setting has no status.
    const CliRun lb = cli("boundslab --suite lb --g 2");
    EXPECT_EQ(lb.status, 0);
    const CliRun scan = cli("boundslab --suite scan --g-list 2 --beta 0.3 --m 2");
    EXPECT_EQ(scan.status, 0);
    const auto rows = parse_csv(scan.out);
    EXPECT_EQ(rows[1][column(rows[0], "status")], "NA");
    EXPECT_EQ(rows[1][column(rows[0], "branch")], "beta");
}
