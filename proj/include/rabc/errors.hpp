#pragma once

#include <stdexcept>
#include <string>

namespace rabc {

// An invalid scenario, plan or command-line value.
class ConfigError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// A metric or ratio evaluated where it has no defined value.
class UndefinedMetricError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

// An operation issued against an engine or participant in the wrong state.
class StateError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

// A filesystem read or write failed.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace rabc
