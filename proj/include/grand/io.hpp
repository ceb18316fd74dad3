#pragma once

// Function files and run configuration.
//
// csv rows are "index,weight,value"; jsonl rows are {"i":..,"w":..,"v":..}.
// Blank lines are skipped. Rows may come in any order; atoms are sorted by
// index.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "grand/measure.hpp"
#include "grand/window.hpp"

namespace grand::io {

class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class FunctionFormat { csv, jsonl };

FunctionFormat parse_format(const std::string& name);

SampledFunction parse_function(std::istream& in, FunctionFormat format,
                               Topology topology = Topology::interval,
                               const std::string& label = "file");
SampledFunction load_function(const std::filesystem::path& path, FunctionFormat format,
                              Topology topology = Topology::interval);

void write_function(std::ostream& out, const SampledFunction& f, FunctionFormat format);

enum class SpaceKind { interval, cyclic, counting };

struct RunConfig {
  struct Grid {
    std::size_t points = 64;
    double min_eps_fraction = 1e-6;
    std::size_t refinement_rounds = 4;
    double tolerance = 1e-9;
    bool include_zero_limit = true;
  } eps_grid;

  struct Space {
    SpaceKind kind = SpaceKind::interval;
    std::optional<std::size_t> atoms;
    bool probability = true;  // false: counting weights
  } space;

  struct Exponents {
    double p = 2.0;
    std::optional<double> q;  // defaults to p
    double theta = 1.0;
  } exponents;

  struct WindowSpec {
    std::optional<std::size_t> size;
    std::size_t start = 0;
    std::vector<std::size_t> members;
  } window;

  struct BupuSpec {
    std::optional<std::size_t> block_size;
    bool allow_ragged = false;
  } bupu;

  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t witness_m = 2;

  GrandExponent local() const { return GrandExponent(exponents.p, exponents.theta); }
  GrandExponent global() const {
    return GrandExponent(exponents.q.value_or(exponents.p), exponents.theta);
  }
  EpsilonGrid grid_for(const GrandExponent& exp) const;
  Topology topology() const {
    return space.kind == SpaceKind::cyclic ? Topology::cyclic : Topology::interval;
  }
  bool has_window() const { return window.size.has_value() || !window.members.empty(); }
  /// Builds the configured window on `space`; throws InputError when none is configured.
  Window make_window(const MeasureSpace& space) const;
  /// Space described by the config alone (needs space.atoms).
  MeasureSpace make_space() const;
};

/// Unknown keys anywhere in the document are rejected.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace grand::io
