#include "heatdist/catalog.hpp"
#include "heatdist/cli/commands.hpp"
#include "heatdist/cli/initial_spec.hpp"
#include "heatdist/error.hpp"
#include "heatdist/kernel.hpp"
#include "support.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace heatdist;
using namespace heatdist::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(-2.0) == "-2");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
    // shortest form round-trips
    const double v = 0.1 + 0.2;
    CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("initial-data specifications") {
    const auto s = parse_spec_syntax("gauss:s=0.3");
    CHECK(s.key == "gauss");
    CHECK(s.params.at("s") == 0.3);
    CHECK(parse_spec_syntax("zero").params.empty());
    CHECK(parse_spec_syntax("csv:/tmp/a.csv,limit_pos=1").path == "/tmp/a.csv");

    const auto ng = parse_initial_spec("neg-gauss:s=2,space=weighted:tau=1.5");
    CHECK(ng.weighted());
    CHECK(ng.tau() == 1.5);
    const auto dd = parse_initial_spec("dirac-diff:n=3");
    CHECK(dd.order() == 3);
    CHECK(std::holds_alternative<AlexNSpace>(dd.space()));
    CHECK(parse_initial_spec("gauss:s=0.2").primitive()(0.0) == doctest::Approx(0.5));

    for (const char* bad : {"", ":s=1", "gauss:", "gauss:s", "gauss:=1", "gauss:s=", "gauss:s=abc", "gauss:s=1,s=2",
                            "nope", "gauss:q=1", "gauss:space=hilbert", "gauss:space=alexn",
                            "dirac-diff:n=2,space=alex", "gauss:order=0", "gauss:order=1.5", "csv:",
                            "csv:/nonexistent/file.csv"}) {
        INFO(bad);
        CHECK_THROWS_AS(parse_initial_spec(bad), InvalidArgument);
    }
}

TEST_CASE("csv initial data") {
    const auto path = std::filesystem::temp_directory_path() / "heatdist_cli_test.csv";
    {
        std::ofstream f(path);
        f << "x,F\n-1,0\n0,0.5\n1,1\n";
    }
    const auto d = parse_initial_spec("csv:" + path.string());
    CHECK(d.primitive()(0.0) == 0.5);
    CHECK(*d.primitive().limit_pos() == 1.0);
    const auto r = run({"norm", "--initial", "csv:" + path.string()});
    CHECK(r.code == kExitOk);
    CHECK(csv_rows(r.out).at(1).at(1) == "1");
    CHECK_THROWS_AS(parse_initial_spec("csv:" + path.string() + ",s=1"), InvalidArgument);
    std::filesystem::remove(path);
}

TEST_CASE("evolve subcommand") {
    auto r = run({"evolve", "--initial", "gauss:s=0.2", "--t", "0.1", "--x-min", "-1", "--x-max", "1", "--samples",
                  "5"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"x", "u_t=0.1"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double x = std::stod(rows[i][0]);
        CHECK(std::stod(rows[i][1]) == doctest::Approx(kernel::theta(0.3, x)).epsilon(1e-10));
    }

    r = run({"evolve", "--initial", "poly:n=3", "--t", "0.5,0.25", "--x-min", "0", "--x-max", "2", "--samples",
             "3"});
    REQUIRE(r.code == kExitOk);
    const auto p = csv_rows(r.out);
    CHECK(p[0] == std::vector<std::string>{"x", "u_t=0.25", "u_t=0.5"});
    CHECK(std::stod(p[3][1]) == doctest::Approx(8.0 + 6 * 2 * 0.25));
    CHECK(std::stod(p[3][2]) == doctest::Approx(14.0));

    r = run({"evolve", "--initial", "zero", "--t", "1", "--samples", "4"});
    for (std::size_t i = 1; i < 5; ++i) CHECK(csv_rows(r.out)[i][1] == "0");

    r = run({"evolve", "--initial", "gauss", "--t", "0.1", "--samples", "2", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["x"].size() == 2);
    CHECK(j["columns"][0]["t"] == 0.1);
    CHECK(j["columns"][0]["u"].size() == 2);
}

TEST_CASE("horizon violations fail per column") {
    const auto r = run({"evolve", "--initial", "neg-gauss:s=2,space=weighted:tau=1.5", "--t", "1,2", "--samples",
                        "3"});
    CHECK(r.code == kExitFail);
    const auto rows = csv_rows(r.out);
    CHECK(rows[0] == std::vector<std::string>{"x", "u_t=1", "u_t=2"});
    CHECK(rows[1][1] != "nan");
    CHECK(rows[1][2] == "nan");
    CHECK(r.err.find("t=2") != std::string::npos);
}

TEST_CASE("norm and converge subcommands") {
    auto r = run({"norm", "--initial", "step", "--t", "0.5"});
    REQUIRE(r.code == kExitOk);
    auto rows = csv_rows(r.out);
    CHECK(rows[0][0] == "t");
    CHECK(rows[1][0] == "0");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(1.0));
    CHECK(std::stod(rows[2][1]) <= 1.0 + 1e-9);

    r = run({"converge", "--initial", "gauss-prime:s=0.25", "--t", "0.001,0.1,0.01"});
    REQUIRE(r.code == kExitOk);
    rows = csv_rows(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[1][0] == "0.1");
    CHECK(rows[3][0] == "0.001");
    CHECK(std::stod(rows[1][1]) > std::stod(rows[2][1]));
    CHECK(std::stod(rows[2][1]) > std::stod(rows[3][1]));

    r = run({"converge", "--initial", "zero", "--t", "0.1,0.01"});
    CHECK(csv_rows(r.out)[1][1] == "0");

    r = run({"converge", "--initial", "cantor-deriv:space=weighted:tau=1", "--t", "0.1"});
    CHECK(r.code == kExitConfig);
}

TEST_CASE("eulerian subcommand") {
    auto r = run({"eulerian", "--n", "3", "--format", "csv"});
    REQUIRE(r.code == kExitOk);
    const auto rows = csv_rows(r.out);
    CHECK(rows[0] == std::vector<std::string>{"n", "l", "A"});
    bool found = false;
    for (const auto& row : rows) found = found || row == std::vector<std::string>{"3", "1", "4"};
    CHECK(found);

    r = run({"eulerian", "--n", "22", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["n_max"] == 22);
    bool string_rows = false;
    for (const auto& row : j["rows"]) {
        if (row["n"] == 22 && row["l"] == 0) string_rows = row["A"].is_string();
    }
    CHECK(string_rows);
    CHECK(run({"eulerian", "--n", "0"}).code == kExitConfig);
    CHECK(run({"eulerian", "--n", "201"}).code == kExitConfig);
}

TEST_CASE("verify subcommand") {
    auto r = run({"verify", "semigroup"});
    CHECK(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["check"] == "semigroup");
    CHECK(j["pass"] == true);
    for (const char* key : {"params", "lhs", "rhs", "tolerance", "cases"}) CHECK(j.contains(key));
    CHECK(std::abs(j["lhs"].get<double>() - j["rhs"].get<double>()) <= j["tolerance"].get<double>());

    r = run({"verify", "eulerian-table", "--param", "n=6"});
    CHECK(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out)["params"]["n"] == 6);

    r = run({"verify", "semigroup", "eulerian-table"});
    CHECK(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out).is_array());

    CHECK(run({"verify", "no-such-check"}).code == kExitConfig);
    CHECK(run({"verify"}).code == kExitConfig);
    CHECK(run({"verify", "semigroup", "eulerian-table", "--param", "n=6"}).code == kExitConfig);
    CHECK(run({"verify", "semigroup", "--param", "bogus=1"}).code == kExitConfig);
}

TEST_CASE("probe subcommand") {
    auto r = run({"probe", "--trajectory", "delta-prime"});
    REQUIRE(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["classification"] == "diverging");
    CHECK(j["hypothesis_holds"] == false);
    CHECK(j["slope"].get<double>() == doctest::Approx(-0.5).epsilon(1e-6));

    r = run({"probe", "--initial", "gauss-prime", "--t", "0.001,0.01,0.1"});
    REQUIRE(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out)["classification"] == "bounded");

    CHECK(run({"probe", "--trajectory", "delta-prime", "--t", "0.1,0.2"}).code == kExitConfig);
    CHECK(run({"probe", "--trajectory", "sideways"}).code == kExitConfig);
    CHECK(run({"probe", "--trajectory", "delta-prime", "--initial", "gauss"}).code == kExitConfig);
}

TEST_CASE("configuration errors") {
    CHECK(run({}).code == kExitConfig);
    CHECK(run({"frobnicate"}).code == kExitConfig);
    CHECK(run({"evolve", "--t", "0.1"}).code == kExitConfig);
    CHECK(run({"evolve", "--initial", "gauss"}).code == kExitConfig);
    CHECK(run({"evolve", "--initial", "gauss", "--t", "-1"}).code == kExitConfig);
    CHECK(run({"evolve", "--initial", "gauss", "--t", "0.1", "--format", "xml"}).code == kExitConfig);
    CHECK(run({"evolve", "--initial", "gauss", "--t", "0.1", "--samples", "1"}).code == kExitConfig);
    CHECK(run({"evolve", "--initial", "gauss:bogus=1", "--t", "0.1"}).code == kExitConfig);
    CHECK(run({"evolve", "--initial", "gauss", "--t", "0.1", "--unknown-flag"}).code == kExitConfig);
    CHECK(run({"--help"}).code == kExitOk);
    const auto l = run({"list"});
    CHECK(l.code == kExitOk);
    for (const auto& k : catalog::catalog_list()) CHECK(l.out.find(k) != std::string::npos);
}

TEST_CASE("output is byte-stable") {
    const std::vector<std::vector<std::string>> cmds{
        {"evolve", "--initial", "step", "--t", "0.1,1", "--samples", "21"},
        {"norm", "--initial", "dirac-diff:n=3", "--t", "0.5", "--format", "json"},
        {"eulerian", "--n", "8"},
        {"verify", "semigroup"}};
    for (const auto& c : cmds) {
        const auto a = run(c);
        const auto b = run(c);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("json reports") {
    CheckResult r;
    r.check = "x";
    r.lhs = std::numeric_limits<double>::infinity();
    r.cases.push_back({"c", Relation::AtMost, 1.0, 2.0, 0.0, true});
    const auto j = to_json(r);
    CHECK(j["lhs"] == "inf");
    CHECK(j["cases"][0]["relation"] == relation_symbol(Relation::AtMost));
    uniqueness::ProbeReport p;
    p.classification = "bounded";
    p.psi.push_back({0.1, 2.0});
    const auto jp = to_json(p);
    CHECK(jp["classification"] == "bounded");
    CHECK(jp["psi"][0]["y"] == 0.1);
}
