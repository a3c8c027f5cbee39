#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "tlcat/report.hpp"
#include "tlcat/suites.hpp"

using namespace tlcat;

namespace {

VerificationReport sample() {
    VerificationReport r;
    r.algebra = "2,2";
    r.suites = {"bounds"};
    r.K = 3;
    r.tol = 1e-9;
    r.seed = 4;
    r.budget = 20000;
    CheckRecord a{"bounds", "x", "anchor", Status::Pass, {{"m", 0.5}}, {{"m", 1.0}}, 0.25, ""};
    CheckRecord b{"bounds", "y", "anchor", Status::Fail, {{"v", std::numeric_limits<double>::quiet_NaN()}},
                  {{"v", -0.4376}}, 0.5, "not real"};
    CheckRecord c{"bounds", "z", "anchor", Status::Skipped, {}, {}, 0.0, "budget"};
    r.records = {a, b, c};
    return r;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(TLCAT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Report, SummaryAndExit) {
    const VerificationReport r = sample();
    const ReportSummary s = r.summary();
    EXPECT_EQ(s.pass, 1);
    EXPECT_EQ(s.fail, 1);
    EXPECT_EQ(s.skipped, 1);
    EXPECT_EQ(r.exit_code(), 1);
    VerificationReport ok = r;
    ok.records.erase(ok.records.begin() + 1);
    EXPECT_EQ(ok.exit_code(), 0);
}

TEST(Report, JsonRoundTrip) {
    const VerificationReport r = sample();
    const VerificationReport back = report_from_json(report_to_json(r));
    EXPECT_TRUE(equivalent(r, back));
    EXPECT_TRUE(std::isnan(back.records[1].measured.at("v")));
    EXPECT_DOUBLE_EQ(back.records[0].runtime, 0.25);
    EXPECT_EQ(report_to_json(back), report_to_json(r));
}

TEST(Report, SchemaVersionChecked) {
    std::string s = report_to_json(sample());
    const auto pos = s.find("\"schema_version\": 1");
    ASSERT_NE(pos, std::string::npos);
    s.replace(pos, 19, "\"schema_version\": 9");
    EXPECT_THROW(report_from_json(s), std::invalid_argument);
}

TEST(Report, TextHasSummaryLine) {
    const std::string t = report_to_text(sample());
    EXPECT_NE(t.find("summary: 1 pass, 1 fail, 0 info, 1 skipped"), std::string::npos);
}

TEST(Suites, ExpandAndValidate) {
    EXPECT_EQ(expand_suites({"all"}).size(), 9u);
    EXPECT_EQ(expand_suites({"rd", "jw", "jw"}), (std::vector<std::string>{"jw", "rd"}));
    EXPECT_THROW(expand_suites({"nope"}), ConfigError);
    RunConfig c;
    c.tol = 0.1;
    EXPECT_THROW(validate(c), ConfigError);
    c.tol = 1e-9;
    c.budget = 10;
    c.suites = {"jw"};
    EXPECT_THROW(validate(c), ResourceError);
    c.budget = 100;
    c.algebra = "2,q";
    EXPECT_THROW(validate(c), ConfigError);
}

TEST(Suites, EmptySuiteListGivesEmptyReport) {
    RunConfig c;
    const VerificationReport r = run(c);
    EXPECT_TRUE(r.records.empty());
    EXPECT_EQ(r.exit_code(), 0);
    EXPECT_TRUE(equivalent(report_from_json(report_to_json(r)), r));
}

TEST(Suites, DeterministicAcrossWorkerCounts) {
    RunConfig c;
    c.suites = {"qarith", "diagrams"};
    c.seed = 17;
    const VerificationReport a = run(c);
    c.workers = 2;
    const VerificationReport b = run(c);
    EXPECT_EQ(report_to_json(a, false), report_to_json(b, false));
    for (const auto& r : a.records) {
        EXPECT_FALSE(r.anchor.empty());
        EXPECT_EQ(r.status, Status::Pass) << r.id;
    }
}

TEST(Suites, BudgetExhaustionSkipsChecks) {
    RunConfig c;
    c.suites = {"decomp"};
    c.budget = 100;  // holds B (x) B for C(X_5), not B^3
    const VerificationReport r = run(c);
    EXPECT_GT(r.summary().skipped, 0);
    EXPECT_EQ(r.summary().fail, 0);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("verify --suites qarith --output -"), 0);
    EXPECT_EQ(run_cli("verify --suites nope"), 2);
    EXPECT_EQ(run_cli("verify --tol 0.5 --suites jw"), 2);
    EXPECT_EQ(run_cli("verify --suites jw --budget 10"), 3);
    EXPECT_EQ(run_cli("--bogus"), 2);
    EXPECT_EQ(run_cli("table dims --dimB 5 --kmax 6"), 0);
}

TEST(Cli, DimsTable) {
    const std::string path = ::testing::TempDir() + "dims.csv";
    ASSERT_EQ(run_cli("table dims --dimB 5 --kmax 6 --output " + path), 0);
    std::istringstream in(slurp(path));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "k,d_k,Pi_k");
    std::vector<std::string> d;
    while (std::getline(in, line)) d.push_back(line.substr(line.find(',') + 1, line.rfind(',') - line.find(',') - 1));
    EXPECT_EQ(d, (std::vector<std::string>{"1", "4", "11", "29", "76", "199", "521"}));
}

TEST(Cli, BoundsTableFirstRow) {
    const std::string path = ::testing::TempDir() + "f.csv";
    ASSERT_EQ(run_cli("bounds f --grid 8:100 --output " + path), 0);
    std::istringstream in(slurp(path));
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    EXPECT_EQ(header, "delta2,delta,q,C,f,g,valid");
    std::vector<std::string> cols;
    std::stringstream ss(first);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    ASSERT_EQ(cols.size(), 7u);
    EXPECT_NEAR(std::stod(cols[4]), 0.1111, 5e-4);
    int rows = 1;
    while (std::getline(in, first)) ++rows;
    EXPECT_EQ(rows, 93);
}

TEST(Cli, ConfigFileAndByteStableJson) {
    const std::string cfg = ::testing::TempDir() + "tlcat.ini";
    const std::string a = ::testing::TempDir() + "a.json", b = ::testing::TempDir() + "b.json";
    {
        std::ofstream f(cfg);
        f << "suites=qarith\nseed=5\nalgebra=\"2,1\"\n";
    }
    ASSERT_EQ(run_cli("verify --config " + cfg + " --no-runtimes --quiet --output " + a), 0);
    ASSERT_EQ(run_cli("verify --config " + cfg + " --no-runtimes --quiet --output " + b), 0);
    const std::string ja = slurp(a);
    EXPECT_EQ(ja, slurp(b));
    const VerificationReport r = report_from_json(ja);
    EXPECT_EQ(r.algebra, "2,1");
    EXPECT_EQ(r.seed, 5u);
    EXPECT_EQ(r.suites, std::vector<std::string>{"qarith"});
}
