#pragma once

#include <stdexcept>
#include <string>

namespace chipopt {

enum class Errc {
  GenerationExhausted,
  MutationExhausted,
  MergeExhausted,
  NoValidMove,
  UnreachablePair,
  DegeneratePopulation,
  NonPositiveTemperature,
  BaselineInfeasible,
  ConfigError,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace chipopt
