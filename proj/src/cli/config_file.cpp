#include "rabc/cli.hpp"

#include <fstream>

namespace rabc::cli {

namespace {

std::string trim(std::string_view s)
{
  auto const first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
  {
    return {};
  }
  auto const last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

KeyValues read_key_value_file(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw IoError("cannot read " + path.string());
  }
  KeyValues   entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    std::string const text = trim(line);
    if (text.empty() || text.front() == '#')
    {
      continue;
    }
    auto const eq = text.find('=');
    if (eq == std::string::npos)
    {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(std::string_view(text).substr(0, eq));
    if (key.empty())
    {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": empty key");
    }
    entries.emplace_back(std::move(key), trim(std::string_view(text).substr(eq + 1)));
  }
  if (in.bad())
  {
    throw IoError("error while reading " + path.string());
  }
  return entries;
}

}  // namespace rabc::cli
