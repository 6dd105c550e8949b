#include <doctest.h>

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "cli_runner.hpp"
#include "ladder/plane.hpp"

TEST_SUITE("cli") {
  TEST_CASE("eval examples") {
    const auto ground = cli::run("eval --family M --n 0 --alpha 0 --x 0");
    CHECK(ground.exit_code == 0);
    CHECK(ground.out == "1\n");

    const auto z = cli::run("eval --family Z --j 1 --m 1 --r 1 --phi 0");
    CHECK(z.exit_code == 0);
    const ladder::Complex expected = ladder::eval_Z(ladder::ModeIndex(1, 1), 1.0, 0.0);
    CHECK(std::stod(z.out) == doctest::Approx(expected.real()).epsilon(1e-16));

    const auto bad = cli::run("eval --family M --n 1 --alpha -5 --x 1");
    CHECK(bad.exit_code == 2);
    CHECK(bad.err.find("n + alpha must be non-negative") != std::string::npos);
  }

  TEST_CASE("eval prints 17 significant digits") {
    const auto r = cli::run("eval --family scriptM --n 2 --p 2 --x 1");
    CHECK(r.out == "-0.30326532985631671\n");
  }

  TEST_CASE("usage errors exit with 2") {
    CHECK(cli::run("").exit_code == 2);
    CHECK(cli::run("frobnicate").exit_code == 2);
    CHECK(cli::run("eval --family Q --x 1").exit_code == 2);
    CHECK(cli::run("verify --nmax 0").exit_code == 2);
    CHECK(cli::run("verify --angular 48").exit_code == 2);
    CHECK(cli::run("verify --suite exact", "LADDER_WORKERS=zero").exit_code == 2);
    CHECK(cli::run("eval --family Z --j 1 --m 1 --r 1 --phi 4").exit_code == 2);
  }

  TEST_CASE("table") {
    const auto r = cli::run("table --family M --n 1 --alpha 0 --from 0 --to 2 --count 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "x,value\n0,1\n1,0\n2,-0.36787944117144233\n");
  }

  TEST_CASE("verify report is deterministic JSON") {
    const auto a = cli::run("verify --suite exact --nmax 6");
    const auto b = cli::run("verify --suite exact --nmax 6", "LADDER_WORKERS=3");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    const auto report = nlohmann::json::parse(a.out);
    CHECK(report["pass"] == true);
    CHECK(report["version"] == "1.0.0");
    CHECK(report["suites"][0]["checks"][0]["mode"] == "exact");
  }

  TEST_CASE("decompose round trip through the CSV contract") {
    const auto field = cli::run("modes --mode 2,1 --synthesize --order 16 --angular 16");
    REQUIRE(field.exit_code == 0);
    {
      std::ofstream("cli_field.csv") << field.out;
    }
    const auto modes = cli::run("decompose cli_field.csv --jmax 3");
    CHECK(modes.exit_code == 0);
    std::istringstream lines(modes.out);
    std::string header;
    std::string row;
    std::getline(lines, header);
    CHECK(header == "j,m,re,im,power");
    REQUIRE(std::getline(lines, row));
    CHECK(row.rfind("2,1,", 0) == 0);
    CHECK(std::stod(row.substr(row.rfind(',') + 1)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_FALSE(std::getline(lines, row));
    CHECK(modes.err.find("total power") != std::string::npos);

    const auto too_fine = cli::run("decompose cli_field.csv --jmax 16");
    CHECK(too_fine.exit_code == 2);
    CHECK(too_fine.err.find("required order 17") != std::string::npos);
  }

  TEST_CASE("malformed CSV names the line") {
    const auto field = cli::run("modes --mode 0,0 --synthesize --order 4 --angular 4");
    std::istringstream in(field.out);
    std::ofstream out("cli_bad.csv");
    std::string line;
    for (int n = 1; std::getline(in, line); ++n) out << (n == 7 ? "0.5,abc,1,0" : line) << '\n';
    out.close();
    const auto r = cli::run("decompose cli_bad.csv --jmax 0");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 7") != std::string::npos);
    CHECK(cli::run("decompose does_not_exist.csv").exit_code == 2);
  }

  TEST_CASE("ground mode with jmax 0") {
    const auto field = cli::run("modes --mode 0,0 --synthesize --order 8 --angular 4");
    std::ofstream("cli_ground.csv") << field.out;
    const auto r = cli::run("decompose cli_ground.csv --jmax 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("j,m,re,im,power\n0,0,", 0) == 0);
    const std::string row = r.out.substr(r.out.find('\n') + 1);
    CHECK(std::stod(row.substr(4)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("mode operators") {
    const auto r = cli::run("modes --mode 1,0 --apply Jplus");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "j,m,re,im,power\n1,1,1.4142135623730951,0,2.0000000000000004\n");
    CHECK(cli::run("modes --mode 1,0 --apply Kplus").exit_code == 2);
    CHECK(cli::run("modes --mode 1,3").exit_code == 2);
  }

  TEST_CASE("gram dump") {
    const auto r = cli::run("gram --alpha 2 --nmax 1 --order 8");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("n,m,value\n0,0,", 0) == 0);
    CHECK(cli::run("gram --kind plane --jmax 3 --order 2").exit_code == 2);
  }
}
