#include "rabc/cli.hpp"

#include "rabc/metrics.hpp"
#include "rabc/parameters.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

namespace rabc::cli {

namespace {

struct Flags
{
  std::uint32_t            participants = 0;
  std::uint32_t            winners      = 0;
  std::uint32_t            rounds       = 0;
  double                   threshold    = 0.0;
  std::uint32_t            runs         = 0;
  std::uint64_t            seed         = 0;
  double                   recruitment_rate = 0.0;
  std::string              out_dir      = "results";
  std::string              config_file;
  std::uint32_t            workers      = 0;
  std::vector<std::string> overrides;
  std::string              mechanism;
  std::string              mechanisms;
  std::string              param;
  std::string              values;

  std::map<std::string, CLI::Option *> options;

  bool given(std::string const &name) const
  {
    auto it = options.find(name);
    return it != options.end() && it->second->count() > 0;
  }
};

void add_common(CLI::App *cmd, Flags &f)
{
  f.options["participants"] =
      cmd->add_option("--participants", f.participants, "Initial bidders (default 100)");
  f.options["winners"] = cmd->add_option("--winners", f.winners, "Winners per round (default 20)");
  f.options["rounds"]  = cmd->add_option("--rounds", f.rounds, "Auction rounds (default 100)");
  f.options["threshold"] =
      cmd->add_option("--threshold", f.threshold, "Satisfaction threshold S (default 0.5)");
  f.options["runs"] = cmd->add_option("--runs", f.runs, "Seeded runs per cell (default 50)");
  f.options["seed"] = cmd->add_option("--seed", f.seed, "Master seed");
  f.options["recruitment-rate"] = cmd->add_option(
      "--recruitment-rate", f.recruitment_rate, "Mean arrivals per round for ra-abcdr (default 1)");
  f.options["out"] = cmd->add_option("--out", f.out_dir, "Output directory (default results)");
  f.options["config"] =
      cmd->add_option("--config", f.config_file, "key=value config file; flags override it");
  f.options["workers"] =
      cmd->add_option("--workers", f.workers, "Concurrent runs (default: hardware threads)");
  f.options["set"] = cmd->add_option("--set", f.overrides, "Extra parameter as key=value")
                         ->allow_extra_args(false);
}

std::vector<Mechanism> parse_mechanism_list(std::string const &text)
{
  std::vector<Mechanism> out;
  std::stringstream      in(text);
  std::string            item;
  while (std::getline(in, item, ','))
  {
    if (!item.empty())
    {
      out.push_back(parse_mechanism(item));
    }
  }
  if (out.empty())
  {
    throw ConfigError("mechanism list is empty");
  }
  return out;
}

std::vector<double> parse_value_list(std::string const &text)
{
  std::vector<double> out;
  std::stringstream   in(text);
  std::string         item;
  while (std::getline(in, item, ','))
  {
    char        *end = nullptr;
    double const v   = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size())
    {
      throw ConfigError("sweep value '" + item + "' is not a number");
    }
    out.push_back(v);
  }
  if (out.empty())
  {
    throw ConfigError("sweep values are empty");
  }
  return out;
}

bool same_set(std::vector<Mechanism> a, std::vector<Mechanism> b)
{
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return a == b;
}

// Resolves defaults < config file < flags into a plan.
ExperimentPlan build_plan(Command command, Flags const &f)
{
  ScenarioConfig                        config;
  std::optional<std::vector<Mechanism>> mechanisms;
  std::optional<std::string>            sweep_param;
  std::optional<std::vector<double>>    sweep_values;

  if (!f.config_file.empty())
  {
    for (auto const &[key, value] : read_key_value_file(f.config_file))
    {
      if (is_parameter(key))
      {
        set_parameter(config, key, value);
      }
      else if (key == "command")
      {
        if (value != to_string(command))
        {
          throw ConfigError("config file was written for '" + value + "', not '" +
                            std::string(to_string(command)) + "'");
        }
      }
      else if (key == "mechanisms")
      {
        mechanisms = parse_mechanism_list(value);
      }
      else if (key == "sweep_param")
      {
        sweep_param = value;
      }
      else if (key == "sweep_values")
      {
        sweep_values = parse_value_list(value);
      }
      else if (key.rfind("run_seed.", 0) == 0)
      {
        // Derived from the master seed; informational only.
      }
      else
      {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  }

  if (f.given("participants"))
    config.initial_population = f.participants;
  if (f.given("winners"))
    config.winners_per_round = f.winners;
  if (f.given("rounds"))
    config.num_rounds = f.rounds;
  if (f.given("threshold"))
    config.satisfaction_threshold = f.threshold;
  if (f.given("runs"))
    config.num_runs = f.runs;
  if (f.given("seed"))
    config.seed = f.seed;
  if (f.given("recruitment-rate"))
    config.recruitment_rate = f.recruitment_rate;
  for (auto const &kv : f.overrides)
  {
    auto const eq = kv.find('=');
    if (eq == std::string::npos)
    {
      throw ConfigError("--set expects key=value, got '" + kv + "'");
    }
    set_parameter(config, kv.substr(0, eq), kv.substr(eq + 1));
  }

  ExperimentPlan plan;
  switch (command)
  {
  case Command::Run:
    if (f.given("mechanism"))
    {
      config.mechanism = parse_mechanism(f.mechanism);
    }
    else if (mechanisms)
    {
      if (mechanisms->size() != 1)
      {
        throw ConfigError("run takes exactly one mechanism");
      }
      config.mechanism = mechanisms->front();
    }
    plan = ExperimentPlan::from_config(config, {config.mechanism});
    break;

  case Command::Compare: {
    std::vector<Mechanism> all(std::begin(kAllMechanisms), std::end(kAllMechanisms));
    if (mechanisms && !same_set(*mechanisms, all))
    {
      throw ConfigError("compare always runs all three mechanisms");
    }
    plan = ExperimentPlan::from_config(config, all);
    break;
  }

  case Command::Sweep: {
    std::vector<Mechanism> chosen{Mechanism::RaAbc, Mechanism::RaAbcDr};
    if (f.given("mechanisms"))
      chosen = parse_mechanism_list(f.mechanisms);
    else if (mechanisms)
      chosen = *mechanisms;
    if (f.given("param"))
      sweep_param = f.param;
    if (f.given("values"))
      sweep_values = parse_value_list(f.values);
    if (!sweep_param || !sweep_values)
    {
      throw ConfigError("sweep requires --param and --values");
    }
    plan       = ExperimentPlan::from_config(config, chosen);
    plan.sweep = SweepAxis{*sweep_param, *sweep_values};
    break;
  }
  }
  plan.workers = f.given("workers") ? f.workers : 0;
  plan.validate();
  return plan;
}

std::string fixed(double v, int decimals = 2)
{
  if (std::isnan(v))
  {
    return "n/a";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void print_report(Command command, std::vector<MetricSeries> const &series, std::ostream &out)
{
  if (command == Command::Sweep)
  {
    out << "sweep_value";
    std::vector<Mechanism> mechs;
    for (auto const &s : series)
    {
      if (std::find(mechs.begin(), mechs.end(), s.mechanism) == mechs.end())
        mechs.push_back(s.mechanism);
    }
    for (auto m : mechs)
    {
      out << "  " << to_string(m) << ":active  " << to_string(m) << ":cost";
    }
    out << '\n';
    std::map<double, std::map<Mechanism, SummaryRow>> table;
    for (auto const &s : series)
    {
      table[s.sweep_value.value_or(0.0)][s.mechanism] = summarize(s);
    }
    for (auto const &[value, row] : table)
    {
      out << format_exact(value);
      for (auto m : mechs)
      {
        auto it = row.find(m);
        out << "  " << (it == row.end() ? "n/a" : fixed(it->second.mean_active)) << "  "
            << (it == row.end() ? "n/a" : fixed(it->second.mean_auction_cost));
      }
      out << '\n';
    }
    return;
  }

  out << "mechanism  final_active  mean_active  mean_cost  mean_mpi  mean_bar  mean_roi\n";
  std::vector<LabeledSeries> retention;
  for (auto const &s : series)
  {
    auto const r = summarize(s);
    out << to_string(s.mechanism) << "  " << fixed(r.final_active_mean) << "  "
        << fixed(r.mean_active) << "  " << fixed(r.mean_auction_cost) << "  "
        << fixed(r.mean_mpi, 4) << "  " << fixed(r.mean_bar, 4) << "  " << fixed(r.mean_roi, 4)
        << '\n';
    retention.push_back({std::string(to_string(s.mechanism)), s.active.mean});
  }
  if (command == Command::Compare && retention.size() > 1)
  {
    auto const report = retention_vs_average(retention);
    out << "active participants vs. average (" << fixed(report.grand_mean) << "):";
    for (auto const &e : report.entries)
    {
      out << "  " << e.label << ' ' << (e.percent_delta >= 0 ? "+" : "") << fixed(e.percent_delta, 1)
          << '%';
    }
    out << '\n';
  }
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Multi-round reverse-auction simulator for crowd-sensing incentives",
               "rabc-sim"};
  app.require_subcommand(1);

  auto *run_cmd     = app.add_subcommand("run", "Run one mechanism");
  auto *compare_cmd = app.add_subcommand("compare", "Run ra-abc, ra-abcdr and tullock");
  auto *sweep_cmd   = app.add_subcommand("sweep", "Vary one parameter across values");

  // Subcommands own separate option objects; keep per-command flag maps.
  Flags run_flags, compare_flags, sweep_flags;
  add_common(run_cmd, run_flags);
  run_flags.options["mechanism"] = run_cmd->add_option(
      "--mechanism", run_flags.mechanism, "ra-abc, ra-abcdr or tullock (default ra-abc)");
  add_common(compare_cmd, compare_flags);
  add_common(sweep_cmd, sweep_flags);
  sweep_flags.options["param"] =
      sweep_cmd->add_option("--param", sweep_flags.param, "Parameter to vary, e.g. threshold");
  sweep_flags.options["values"] =
      sweep_cmd->add_option("--values", sweep_flags.values, "Comma-separated values");
  sweep_flags.options["mechanisms"] = sweep_cmd->add_option(
      "--mechanisms", sweep_flags.mechanisms, "Comma-separated (default ra-abc,ra-abcdr)");

  std::vector<char *> argv;
  for (auto &a : args)
  {
    argv.push_back(a.data());
  }
  try
  {
    app.parse(static_cast<int>(argv.size()), argv.data());
  }
  catch (CLI::ParseError const &e)
  {
    int const code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  Command command = Command::Run;
  Flags  *chosen  = &run_flags;
  if (*compare_cmd)
  {
    command = Command::Compare;
    chosen  = &compare_flags;
  }
  else if (*sweep_cmd)
  {
    command = Command::Sweep;
    chosen  = &sweep_flags;
  }

  ExperimentPlan plan;
  try
  {
    plan = build_plan(command, *chosen);
  }
  catch (ConfigError const &e)
  {
    err << "config error: " << e.what() << '\n' << "run 'rabc-sim --help' for usage\n";
    return kExitConfigError;
  }
  catch (IoError const &e)
  {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try
  {
    auto const series = run_experiment(plan);

    std::filesystem::path const dir(chosen->out_dir);
    std::error_code             ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
    {
      throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    write_series_csv(series, dir / "series.csv");
    write_summary_csv(series, dir / "summary.csv");
    write_manifest(manifest_entries(command, plan), dir / "manifest.txt");

    print_report(command, series, out);
    out << "wrote " << (dir / "series.csv").string() << ", " << (dir / "summary.csv").string()
        << ", " << (dir / "manifest.txt").string() << '\n';
  }
  catch (ConfigError const &e)
  {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  catch (std::exception const &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace rabc::cli
