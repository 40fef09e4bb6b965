#pragma once

#include <optional>

#include "gcode/code.hpp"
#include "gcode/gr1n.hpp"
#include "gcode/graph.hpp"

namespace gcode {

template <class Element>
struct BasicDecodeResult {
  std::vector<std::size_t> leaders;  // chosen digit per stage, stage 1 first
  Element element{};                 // d_m ... d_1
  std::size_t comparisons = 0;
  std::size_t ties = 0;              // stages where the chosen leader was tied within tolerance
  std::vector<double> trajectory;    // ||r_k - x0|| after each stage
};

using DecodeResult = BasicDecodeResult<ElementId>;
using MonomialDecodeResult = BasicDecodeResult<MonomialElement>;

CVector encode(const Code& code, ElementId g);

// Greedy stage-wise decoding, evaluating every leader of every stage.
DecodeResult subgroup_decode(std::span<const Complex> r, const SubgroupChain& chain, std::span<const Complex> x0,
                             double tol = kTolerance);

// Spanning trees of the stage coset leader graphs, for descent decoding.
class StageNavigator {
 public:
  explicit StageNavigator(const SubgroupChain& chain);
  const SpanningTree& tree(std::size_t k) const { return trees_.at(k - 1); }

 private:
  std::vector<SpanningTree> trees_;
};

// Per stage: start at I and move to the best child while that strictly improves.
DecodeResult subgroup_decode(std::span<const Complex> r, const SubgroupChain& chain, std::span<const Complex> x0,
                             const StageNavigator& nav, double tol = kTolerance);

// Phase rounding plus insertion sort for the standard G(r,1,n) chain.
// Counts one comparison per phase decision and one per insertion comparison.
MonomialDecodeResult fast_gr1n_decode(std::span<const Complex> r, int r_param, std::span<const Complex> x0);

// Exponent k maximizing Re(xi^k z), by rounding; exact half-way cases take the smaller exponent.
int nearest_phase_exponent(Complex z, int r);

struct MlResult {
  std::vector<ElementId> minimizers;  // all a with ||a r - x0|| within tolerance of the minimum
  double distance = 0.0;
  bool unique_mod_stabilizer = true;  // all minimizers send r to the same codeword
};

MlResult ml_decode(std::span<const Complex> r, const Code& code);

enum class PrimitiveVariant { BestStep, FirstStep };

struct PrimitiveResult {
  std::vector<ElementId> steps;
  ElementId element = 0;         // c_k ... c_1
  std::size_t step_count = 0;
  bool terminated = true;        // false when the step guard fired
  bool certified = false;        // final residual below delta/3
  double residual = 0.0;         // ||r_k - x0|| at termination
};

PrimitiveResult primitive_decode(std::span<const Complex> r, const Code& code, std::span<const ElementId> x,
                                 double delta, PrimitiveVariant variant);

struct PrimitiveDelta {
  double delta = 0.0;
  std::optional<ElementId> stuck;  // element g with codeword g x0 that no step improves
  bool ok() const { return !stuck.has_value(); }
};

// Minimal generators are taken over (X u X^{-1}) u {I}.
PrimitiveDelta compute_delta_primitive(const Code& code, std::span<const ElementId> x);

struct InducedViolation {
  std::size_t stage = 0;
  ElementId leader = 0;  // induced leader C = c_m ... c_{k+1}
  ElementId h = 0;       // element of G_k - G_{k-1}
  double gap = 0.0;
};

struct ChainDelta {
  double delta = 0.0;
  std::vector<double> per_stage;  // delta_1 .. delta_m
  std::optional<InducedViolation> violation;
};

ChainDelta compute_chain_delta(const SubgroupChain& chain, const Code& code);

}  // namespace gcode
