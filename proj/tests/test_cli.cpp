#include "rabc/cli.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rabc;
using namespace rabc::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(std::string const &name)
{
  fs::path const dir = fs::path(RABC_TEST_TMPDIR) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Result
{
  int         code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args)
{
  args.insert(args.begin(), "rabc-sim");
  std::ostringstream out, err;
  int const          code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(fs::path const &p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::size_t count_lines(fs::path const &p)
{
  std::ifstream in(p);
  std::size_t   n = 0;
  std::string   line;
  while (std::getline(in, line))
    ++n;
  return n;
}

bool close6(double a, double b)
{
  if (a == b)
    return true;
  return std::abs(a - b) <= 5e-6 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("compare writes one row per mechanism and round")
{
  auto const dir = scratch("compare");
  auto const r = invoke({"compare", "--rounds", "12", "--runs", "3", "--out", dir.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(count_lines(dir / "series.csv") == 1 + 3 * 12);
  CHECK(count_lines(dir / "summary.csv") == 1 + 3);
  CHECK(fs::exists(dir / "manifest.txt"));
  CHECK(r.out.find("ra-abcdr") != std::string::npos);

  auto const rows = read_series_csv(dir / "series.csv");
  REQUIRE(rows.size() == 36);
  CHECK(rows.front().mechanism == Mechanism::RaAbc);
  CHECK(rows.front().round == 1);
  CHECK(rows.back().mechanism == Mechanism::Tullock);
  CHECK(rows.back().round == 12);
  CHECK_FALSE(rows.front().sweep_value.has_value());
}

TEST_CASE("identical invocations produce identical bytes, and the manifest replays them")
{
  auto const a = scratch("det_a");
  auto const b = scratch("det_b");
  auto const c = scratch("det_c");
  std::vector<std::string> const common{"--rounds", "20", "--runs", "4", "--seed", "31337"};

  auto args_a = std::vector<std::string>{"compare"};
  args_a.insert(args_a.end(), common.begin(), common.end());
  auto args_b = args_a;
  args_a.insert(args_a.end(), {"--out", a.string(), "--workers", "1"});
  args_b.insert(args_b.end(), {"--out", b.string(), "--workers", "3"});
  REQUIRE(invoke(args_a).code == kExitOk);
  REQUIRE(invoke(args_b).code == kExitOk);
  CHECK(slurp(a / "series.csv") == slurp(b / "series.csv"));
  CHECK(slurp(a / "summary.csv") == slurp(b / "summary.csv"));
  CHECK(slurp(a / "manifest.txt") == slurp(b / "manifest.txt"));

  REQUIRE(invoke({"compare", "--config", (a / "manifest.txt").string(), "--out", c.string()}).code ==
          kExitOk);
  CHECK(slurp(a / "series.csv") == slurp(c / "series.csv"));
  CHECK(slurp(a / "summary.csv") == slurp(c / "summary.csv"));
}

TEST_CASE("sweep manifest replays under the sweep command only")
{
  auto const a = scratch("sweep_a");
  auto const b = scratch("sweep_b");
  auto const r = invoke({"sweep", "--param", "threshold", "--values", "0.5,0.6,0.7,0.8",
                         "--rounds", "10", "--runs", "2", "--out", a.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(count_lines(a / "series.csv") == 1 + 2 * 4 * 10);
  for (auto v : {"0.5", "0.6", "0.7", "0.8"})
    CHECK(r.out.find(std::string("\n") + v + "  ") != std::string::npos);

  REQUIRE(invoke({"sweep", "--config", (a / "manifest.txt").string(), "--out", b.string()}).code ==
          kExitOk);
  CHECK(slurp(a / "series.csv") == slurp(b / "series.csv"));
  CHECK(invoke({"compare", "--config", (a / "manifest.txt").string(), "--out", b.string()}).code ==
        kExitConfigError);
}

TEST_CASE("series CSV round-trips aggregates to six significant digits")
{
  ScenarioConfig base;
  base.num_rounds = 25;
  base.num_runs   = 3;
  auto plan       = ExperimentPlan::from_config(base, {Mechanism::RaAbc, Mechanism::Tullock});
  auto const series = run_experiment(plan);

  auto const dir = scratch("roundtrip");
  write_series_csv(series, dir / "series.csv");
  auto const rows = read_series_csv(dir / "series.csv");
  REQUIRE(rows.size() == 50);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    auto const &s = series[i / 25];
    auto const  t = i % 25;
    auto const &row = rows[i];
    CHECK(row.mechanism == s.mechanism);
    CHECK(row.round == t + 1);
    CHECK(close6(*row.active_mean, s.active.mean[t]));
    CHECK(close6(*row.active_std, s.active.stddev[t]));
    CHECK(close6(*row.auction_cost_mean, s.auction_cost.mean[t]));
    CHECK(close6(*row.auction_cost_std, s.auction_cost.stddev[t]));
    CHECK(close6(*row.bai_mean, s.bai.mean[t]));
    CHECK(close6(*row.roi_mean, s.roi.mean[t]));
    CHECK(close6(*row.dropped_mean, s.dropped.mean[t]));
    CHECK(row.bar_mean.has_value() == !std::isnan(s.bar.mean[t]));
    if (row.mpi_mean)
      CHECK(close6(*row.mpi_mean, s.mpi.mean[t]));
  }
}

TEST_CASE("empty series writes a header-only file")
{
  auto const dir = scratch("empty");
  write_series_csv({}, dir / "series.csv");
  CHECK(slurp(dir / "series.csv") == std::string(kSeriesHeader) + "\n");
  CHECK(read_series_csv(dir / "series.csv").empty());
}

TEST_CASE("number formatting")
{
  CHECK(format_number(100.0) == "100");
  CHECK(format_number(1.0 / 3.0) == "0.333333");
  CHECK(format_number(123456789.0) == "1.23457e+08");
  CHECK(format_number(std::nan("")).empty());
  CHECK(format_optional(std::nullopt).empty());
}

TEST_CASE("configuration errors exit with 1")
{
  auto const dir = scratch("errors");
  CHECK(invoke({"run", "--rounds", "0", "--out", dir.string()}).code == kExitConfigError);
  CHECK(invoke({"run", "--bogus", "1"}).code == kExitConfigError);
  CHECK(invoke({}).code == kExitConfigError);
  CHECK(invoke({"run", "--mechanism", "vickrey", "--out", dir.string()}).code == kExitConfigError);
  CHECK(invoke({"run", "--winners", "200", "--out", dir.string()}).code == kExitConfigError);
  CHECK(invoke({"sweep", "--param", "threshold", "--out", dir.string()}).code == kExitConfigError);
  CHECK(invoke({"sweep", "--param", "colour", "--values", "1", "--out", dir.string()}).code ==
        kExitConfigError);
  CHECK(invoke({"run", "--set", "ewma_alpha", "--out", dir.string()}).code == kExitConfigError);
  CHECK(invoke({"run", "--config", (dir / "missing.txt").string()}).code == kExitConfigError);

  std::ofstream(dir / "bad.txt") << "rounds=5\nunknown_key=3\n";
  CHECK(invoke({"run", "--config", (dir / "bad.txt").string(), "--out", dir.string()}).code ==
        kExitConfigError);
  std::ofstream(dir / "malformed.txt") << "rounds 5\n";
  CHECK(invoke({"run", "--config", (dir / "malformed.txt").string(), "--out", dir.string()})
            .code == kExitConfigError);
}

TEST_CASE("help exits with 0")
{
  auto const r = invoke({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("compare") != std::string::npos);
}

TEST_CASE("unwritable output is a runtime error")
{
  auto const dir = scratch("unwritable");
  std::ofstream(dir / "file") << "x";
  auto const r = invoke({"run", "--rounds", "2", "--runs", "1", "--out", (dir / "file" / "sub").string()});
  CHECK(r.code == kExitRuntime);
  CHECK_THROWS_AS(write_series_csv({}, dir / "file" / "x.csv"), IoError);
}

TEST_CASE("flags override the config file, which overrides defaults")
{
  auto const dir = scratch("precedence");
  std::ofstream(dir / "cfg.txt") << "# comment\n\nrounds = 7\nruns=2\nwinners=10\n";
  REQUIRE(invoke({"run", "--config", (dir / "cfg.txt").string(), "--rounds", "9", "--out",
                  dir.string()})
              .code == kExitOk);
  auto const manifest = read_key_value_file(dir / "manifest.txt");
  auto value = [&](std::string const &key) {
    for (auto const &[k, v] : manifest)
      if (k == key)
        return v;
    return std::string("<missing>");
  };
  CHECK(value("rounds") == "9");
  CHECK(value("runs") == "2");
  CHECK(value("winners") == "10");
  CHECK(value("participants") == "100");
  CHECK(value("command") == "run");
  CHECK(count_lines(dir / "series.csv") == 1 + 9);
}

TEST_CASE("run honours --mechanism and --set")
{
  auto const dir = scratch("mechanism");
  REQUIRE(invoke({"run", "--mechanism", "tullock", "--set", "tullock_exponent=2", "--rounds",
                  "5", "--runs", "2", "--out", dir.string()})
              .code == kExitOk);
  auto const rows = read_series_csv(dir / "series.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].mechanism == Mechanism::Tullock);
  CHECK(*rows[0].auction_cost_mean == 100.0);
}
