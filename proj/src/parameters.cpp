#include "rabc/parameters.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>

namespace rabc {

namespace {

double parse_double(std::string_view key, std::string_view text)
{
  std::string const buf(text);
  char             *end = nullptr;
  double const      v   = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v))
  {
    throw ConfigError("parameter '" + std::string(key) + "': not a finite number: '" + buf + "'");
  }
  return v;
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text)
{
  Int        v{};
  auto const res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size())
  {
    throw ConfigError("parameter '" + std::string(key) + "': not a non-negative integer: '" +
                      std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text)
{
  if (text == "true" || text == "1")
  {
    return true;
  }
  if (text == "false" || text == "0")
  {
    return false;
  }
  throw ConfigError("parameter '" + std::string(key) + "': expected true or false");
}

std::uint32_t integral_u32(std::string_view key, double value)
{
  if (!(value >= 0.0) || value != std::floor(value) ||
      value > std::numeric_limits<std::uint32_t>::max())
  {
    throw ConfigError("parameter '" + std::string(key) + "' requires a non-negative integer");
  }
  return static_cast<std::uint32_t>(value);
}

enum class Kind
{
  Real,
  Count,
  Other,
};

struct Entry
{
  std::string_view                                              key;
  Kind                                                          kind;
  std::function<void(ScenarioConfig &, std::string_view)>       set;
  std::function<std::string(ScenarioConfig const &)>            get;
  double ScenarioConfig::*                                      real  = nullptr;
  std::uint32_t ScenarioConfig::*                               count = nullptr;
};

Entry real_entry(std::string_view key, double ScenarioConfig::*field)
{
  return Entry{key, Kind::Real,
               [key, field](ScenarioConfig &c, std::string_view v) {
                 c.*field = parse_double(key, v);
               },
               [field](ScenarioConfig const &c) { return format_exact(c.*field); }, field,
               nullptr};
}

Entry count_entry(std::string_view key, std::uint32_t ScenarioConfig::*field)
{
  return Entry{key, Kind::Count,
               [key, field](ScenarioConfig &c, std::string_view v) {
                 c.*field = parse_integer<std::uint32_t>(key, v);
               },
               [field](ScenarioConfig const &c) { return std::to_string(c.*field); }, nullptr,
               field};
}

Entry bool_entry(std::string_view key, bool ScenarioConfig::*field)
{
  return Entry{key, Kind::Other,
               [key, field](ScenarioConfig &c, std::string_view v) {
                 c.*field = parse_bool(key, v);
               },
               [field](ScenarioConfig const &c) {
                 return std::string(c.*field ? "true" : "false");
               }};
}

std::vector<Entry> const &registry()
{
  static std::vector<Entry> const entries = [] {
    std::vector<Entry> e;
    e.push_back(count_entry("participants", &ScenarioConfig::initial_population));
    e.push_back(count_entry("winners", &ScenarioConfig::winners_per_round));
    e.push_back(count_entry("rounds", &ScenarioConfig::num_rounds));
    e.push_back(real_entry("threshold", &ScenarioConfig::satisfaction_threshold));
    e.push_back(real_entry("risk_alpha", &ScenarioConfig::risk_alpha));
    e.push_back(real_entry("ewma_alpha", &ScenarioConfig::ewma_alpha));
    e.push_back(real_entry("ewma_beta", &ScenarioConfig::ewma_beta));
    e.push_back(real_entry("penalty_gamma", &ScenarioConfig::penalty_gamma));
    e.push_back(real_entry("prior_variance", &ScenarioConfig::prior_variance));
    e.push_back(real_entry("observation_variance", &ScenarioConfig::observation_variance));
    e.push_back(real_entry("cost_mean", &ScenarioConfig::cost_mean));
    e.push_back(real_entry("cost_stddev", &ScenarioConfig::cost_stddev));
    e.push_back(real_entry("recruitment_rate", &ScenarioConfig::recruitment_rate));
    e.push_back(real_entry("initial_roi_epsilon", &ScenarioConfig::initial_roi_epsilon));
    e.push_back(real_entry("participation_fee", &ScenarioConfig::participation_fee));
    e.push_back(real_entry("tullock_exponent", &ScenarioConfig::tullock_exponent));
    e.push_back(real_entry("tolerance_min", &ScenarioConfig::tolerance_min));
    e.push_back(real_entry("tolerance_max", &ScenarioConfig::tolerance_max));
    e.push_back(count_entry("rejoin_patience", &ScenarioConfig::rejoin_patience));
    e.push_back(bool_entry("clamp_monotone", &ScenarioConfig::clamp_monotone));
    e.push_back(bool_entry("freeze_dropped_trackers", &ScenarioConfig::freeze_dropped_trackers));
    e.push_back(Entry{"mpi_population", Kind::Other,
                      [](ScenarioConfig &c, std::string_view v) {
                        if (v == "current")
                          c.mpi_population = MpiPopulation::Current;
                        else if (v == "ever-seen")
                          c.mpi_population = MpiPopulation::EverSeen;
                        else
                          throw ConfigError("mpi_population must be 'current' or 'ever-seen'");
                      },
                      [](ScenarioConfig const &c) {
                        return std::string(c.mpi_population == MpiPopulation::Current
                                               ? "current"
                                               : "ever-seen");
                      }});
    e.push_back(Entry{"mechanism", Kind::Other,
                      [](ScenarioConfig &c, std::string_view v) {
                        c.mechanism = parse_mechanism(v);
                      },
                      [](ScenarioConfig const &c) { return std::string(to_string(c.mechanism)); }});
    e.push_back(Entry{"seed", Kind::Other,
                      [](ScenarioConfig &c, std::string_view v) {
                        c.seed = parse_integer<std::uint64_t>("seed", v);
                      },
                      [](ScenarioConfig const &c) { return std::to_string(c.seed); }});
    e.push_back(count_entry("runs", &ScenarioConfig::num_runs));
    return e;
  }();
  return entries;
}

Entry const *find(std::string_view key)
{
  for (auto const &e : registry())
  {
    if (e.key == key)
    {
      return &e;
    }
  }
  return nullptr;
}

Entry const &require_entry(std::string_view key)
{
  auto const *e = find(key);
  if (e == nullptr)
  {
    throw ConfigError("unknown parameter '" + std::string(key) + "'");
  }
  return *e;
}

}  // namespace

bool is_parameter(std::string_view key)
{
  return find(key) != nullptr;
}

void set_parameter(ScenarioConfig &config, std::string_view key, std::string_view value)
{
  require_entry(key).set(config, value);
}

bool is_numeric_parameter(std::string_view key)
{
  auto const *e = find(key);
  return e != nullptr && e->kind != Kind::Other;
}

void set_numeric_parameter(ScenarioConfig &config, std::string_view key, double value)
{
  auto const &e = require_entry(key);
  if (!std::isfinite(value))
  {
    throw ConfigError("parameter '" + std::string(key) + "' requires a finite value");
  }
  switch (e.kind)
  {
  case Kind::Real:
    config.*(e.real) = value;
    return;
  case Kind::Count:
    config.*(e.count) = integral_u32(key, value);
    return;
  case Kind::Other:
    break;
  }
  throw ConfigError("parameter '" + std::string(key) + "' is not numeric and cannot be swept");
}

std::vector<std::pair<std::string, std::string>> to_key_values(ScenarioConfig const &config)
{
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(registry().size());
  for (auto const &e : registry())
  {
    out.emplace_back(std::string(e.key), e.get(config));
  }
  return out;
}

std::string format_exact(double value)
{
  char buf[40];
  // Prefer the shortest of %.15g / %.17g that parses back to the same bits.
  std::snprintf(buf, sizeof buf, "%.15g", value);
  if (std::strtod(buf, nullptr) != value)
  {
    std::snprintf(buf, sizeof buf, "%.17g", value);
  }
  return buf;
}

}  // namespace rabc
