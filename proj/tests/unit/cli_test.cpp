#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"
#include "nilcps/cli.hpp"

using namespace nilcps;
namespace cli = nilcps::cli;

namespace {
struct Run {
    int code;
    std::string out, err;
};
Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}
std::string scheme(const char* n) { return nilcps::testing::data_path(std::string("schemes/") + n + ".json"); }
std::string fixture(const char* n) { return nilcps::testing::data_path(std::string("fixtures/") + n); }
}  // namespace

TEST(Cli, GenerateWritesModelSet) {
    auto r = run({"generate", "--scheme", scheme("fibonacci"), "--sample-radius", "50"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto t = cli::read_csv(r.out);
    EXPECT_EQ(t.kind, "model-set");
    EXPECT_EQ(t.columns.front(), "q1_0");
    EXPECT_EQ(t.rows.size(), model_set(nilcps::testing::bundled("fibonacci"), Rational(50)).size());
    bool gaps = false;
    for (const auto& f : t.footer) gaps = gaps || f.rfind("gaps=", 0) == 0;
    EXPECT_TRUE(gaps);
}

TEST(Cli, SlabCsvAndFit) {
    auto r = run({"slab", "--scheme", scheme("heisenberg"), "--r-grid", "1,2,3", "--no-timing"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto t = cli::read_csv(r.out);
    ASSERT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(t.rows[1][1], "41");
    EXPECT_EQ(t.rows[1][4], "NA");
    EXPECT_NE(r.err.find("[slab]"), std::string::npos);  // progress on stderr
}

TEST(Cli, ComplexityIsDeterministic) {
    std::vector<std::string> args{"complexity", "--scheme", scheme("fibonacci"), "--r-grid", "2,4,8",
                                  "--no-timing", "--samples", "200", "--seed", "7"};
    auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    auto t = cli::read_csv(a.out);
    EXPECT_EQ(t.kind, "census");
    EXPECT_EQ(t.columns[1], "p_hat");
    EXPECT_EQ(t.footer.front(), "scheme=fibonacci predicted_exponent=1");
}

TEST(Cli, RegionsReport) {
    auto r = run({"regions", "--arrangement", fixture("three-generic-lines.arr"), "--body", fixture("box10.body")});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("regions: 7\n"), std::string::npos);
    EXPECT_NE(r.out.find("oracle: pass"), std::string::npos);
    // chi needs 2^n subsets; a cap below n omits it and reports exit 3
    auto c = run({"regions", "--arrangement", fixture("three-generic-lines.arr"), "--body", fixture("box10.body"),
                  "--cap", "2"});
    EXPECT_EQ(c.code, 3);
    EXPECT_NE(c.out.find("regions: 7\n"), std::string::npos);
    EXPECT_NE(c.out.find("chi: omitted"), std::string::npos);
}

TEST(Cli, ValidationErrorsExitTwo) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"slab", "--scheme", "/nonexistent.json"}).code, 2);
    EXPECT_EQ(run({"slab", "--scheme", scheme("fibonacci"), "--r-grid", "2,1"}).code, 2);
    EXPECT_EQ(run({"slab", "--scheme", scheme("fibonacci"), "--r-grid", "-1"}).code, 2);
    EXPECT_EQ(run({"generate", "--scheme", scheme("fibonacci"), "--sample-radius", "0"}).code, 2);
    EXPECT_EQ(run({"complexity", "--scheme", scheme("fibonacci"), "--bounds", "some"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, BudgetGivesPartialOutput) {
    auto r = run({"slab", "--scheme", scheme("heisenberg"), "--r-grid", "1,8,9", "--budget-seconds", "0.05"});
    EXPECT_EQ(r.code, 3);
    auto t = cli::read_csv(r.out);
    EXPECT_LT(t.rows.size(), 3u);
    EXPECT_EQ(t.footer.back(), "status=partial reason=budget");
}

TEST(Cli, BeckCampaign) {
    auto r = run({"beck-check", "--instances", "50", "--grid-m", "101", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto t = cli::read_csv(r.out);
    EXPECT_EQ(t.rows.size(), 50u);
    EXPECT_EQ(t.footer[0], "instances=50 violations=0");
    EXPECT_NE(t.footer[2].find("certified=yes"), std::string::npos) << t.footer[2];
    EXPECT_NE(t.footer[3].find("certified=no"), std::string::npos) << t.footer[3];
}

TEST(Csv, RejectsUnknownVersionsAndKinds) {
    cli::CsvTable t{"census", 1, {"r", "p_hat"}, {{"1", "2"}}, {"note"}};
    auto text = cli::write_csv(t);
    auto back = cli::read_csv(text);
    EXPECT_EQ(back.rows, t.rows);
    EXPECT_EQ(back.footer, t.footer);
    auto v2 = text;
    v2.replace(v2.find("v1"), 2, "v2");
    EXPECT_THROW(cli::read_csv(v2), std::runtime_error);
    auto other = text;
    other.replace(other.find("census"), 6, "widget");
    EXPECT_THROW(cli::read_csv(other), std::runtime_error);
    EXPECT_THROW(cli::read_csv("r,p\n1,2\n"), std::runtime_error);
}

TEST(Cli, FitReadsCsvAndRejectsVersion) {
    auto dir = ::testing::TempDir();
    std::string path = dir + "/slab.csv";
    auto r = run({"slab", "--scheme", scheme("heisenberg"), "--r-grid", "2,3,4", "--out", path, "--no-timing"});
    ASSERT_EQ(r.code, 0);
    auto f = run({"fit", "--in", path});
    ASSERT_EQ(f.code, 0) << f.err;
    EXPECT_EQ(f.out.rfind("slope=", 0), 0u);

    std::string bad = dir + "/bad.csv";
    {
        std::ofstream o(bad);
        o << "# nilcps-csv slab v9\nr,slab_size\n1,1\n";
    }
    auto b = run({"fit", "--in", bad});
    EXPECT_EQ(b.code, 2);
    EXPECT_NE(b.err.find("version"), std::string::npos);
}
