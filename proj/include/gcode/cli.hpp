#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "gcode/chain.hpp"
#include "gcode/code.hpp"
#include "gcode/group.hpp"
#include "gcode/verify.hpp"

namespace gcode {

// A group, a chain over it, a code and a generator set, resolved from gr1n:<r>,<n>, catalog:<name> or file:<path>.
struct Setup {
  std::string name;
  GroupPtr group;
  std::shared_ptr<const SubgroupChain> chain;
  std::shared_ptr<const Code> code;
  std::vector<ElementId> generators;  // X_G for the nearest-neighbor and step checks
  std::vector<std::vector<std::string>> stage_generator_names;
  std::optional<std::pair<int, std::size_t>> gr1n;  // (r, n) when the source is gr1n
  TieReport ties;
};

Setup resolve_setup(const std::string& source);

struct VerifyOptions {
  bool all = false;
  std::size_t samples = 2000;
  std::uint64_t seed = 1;
};

// The reports selected by the options; algebraic checks always, sampled and exhaustive decoding with all.
std::vector<CheckReport> run_verification(const Setup& setup, const VerifyOptions& opt);

// Entry point of the gcode executable; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gcode
