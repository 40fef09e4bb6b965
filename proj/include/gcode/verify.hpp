#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gcode/chain.hpp"
#include "gcode/code.hpp"
#include "gcode/decode.hpp"
#include "gcode/graph.hpp"
#include "json.hpp"

namespace gcode {

enum class Verdict { Pass, Fail, Inconclusive };
std::string verdict_name(Verdict v);

struct Witness {
  std::vector<ElementId> elements;
  std::optional<CVector> point;
  std::size_t stage = 0;  // 0 when not stage-specific
  std::string note;
};

struct CheckReport {
  std::string property;
  Verdict verdict = Verdict::Pass;
  std::vector<Witness> witnesses;
  std::size_t samples_used = 0;
  bool exhaustive = true;
  std::string note;

  bool passed() const { return verdict == Verdict::Pass; }
  void fail(Witness w);
  // Union of witnesses; the worse verdict wins (fail over inconclusive over pass).
  void merge(const CheckReport& other);
};

nlohmann::json report_to_json(const CheckReport& report, const GroupAction& group);

// Membership tests for FR(H) built on the code's cached orbit: ||h x - x0|| = ||x - h^{-1} x0||.
class FundamentalRegion {
 public:
  FundamentalRegion(const Code& code, const Subgroup& h);

  const Subgroup& subgroup() const { return h_; }
  double margin(std::span<const Complex> x) const;
  bool contains(std::span<const Complex> x) const;  // margin > tolerance
  ElementId minimizer(std::span<const Complex> x) const;
  // g^{-1} x0 + noise for random g, moved into FR(H); nullopt near the boundary.
  std::optional<CVector> sample(std::mt19937_64& rng, double radius_fraction = 0.5) const;

 private:
  const Code* code_;
  Subgroup h_;
  std::vector<CVector> others_;        // distinct points of H x0 other than x0
  std::vector<ElementId> realizers_;   // a with a x0 = others_[i]
};

struct SamplingOptions {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  double radius_fraction = 0.75;
};

CheckReport check_minimal(const Code& code, std::span<const ElementId> leaders, const Subgroup& h);
CheckReport check_induced_minimal(const SubgroupChain& chain, const Code& code);
CheckReport check_greed_compatible(const Code& code, std::span<const ElementId> leaders, const Subgroup& h,
                                   const Subgroup& k, const SamplingOptions& opt = {});
CheckReport check_region_minimal(const Code& code, std::span<const ElementId> leaders, const Subgroup& h,
                                 const Subgroup& k, const SamplingOptions& opt = {});

struct EquivalenceReport {
  CheckReport greed;
  CheckReport region;
  CheckReport combined;  // pass when both agree, inconclusive otherwise
};
EquivalenceReport check_greed_region_equivalence(const Code& code, std::span<const ElementId> leaders, const Subgroup& h,
                                          const Subgroup& k, const SamplingOptions& opt = {});

CheckReport check_error_control(const SubgroupChain& chain);
CheckReport check_nearest_neighbors_property(const Code& code, std::span<const ElementId> x);
CheckReport check_one_factor_error(const SubgroupChain& chain, ElementId g, ElementId b);
// Every g in G and every b in X_m u X_m^{-1}.
CheckReport check_one_factor_error_all(const SubgroupChain& chain);
CheckReport check_dagger(const Code& code, std::span<const ElementId> x);

// Every codeword decodes back to its message (mod the stabilizer) with no noise.
CheckReport check_zero_noise_decoding(const SubgroupChain& chain, const Code& code);
// Codewords plus noise of norm below radius, for random messages.
CheckReport check_noisy_decoding(const SubgroupChain& chain, const Code& code, double radius,
                                 const SamplingOptions& opt = {});

// Replays of stored witnesses; each returns true when the violation reproduces.
bool replay_minimal_witness(const Code& code, const Subgroup& h, ElementId c, ElementId ch);
bool replay_greed_witness(const Code& code, std::span<const ElementId> leaders, const Subgroup& k,
                          std::span<const Complex> x);
bool replay_region_witness(const Code& code, ElementId c, const Subgroup& h, std::span<const Complex> x);
bool replay_error_control_witness(const SubgroupChain& chain, std::size_t stage, ElementId b, ElementId c);
bool replay_dagger_witness(const Code& code, std::span<const ElementId> x, ElementId w);

// Checks every stage of a chain: minimality, greed compatibility, region minimality.
std::vector<CheckReport> check_chain_stages(const SubgroupChain& chain, const Code& code, const SamplingOptions& opt);

}  // namespace gcode
