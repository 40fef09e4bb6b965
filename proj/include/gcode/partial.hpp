#pragma once

#include <cstdint>
#include <string>

#include "gcode/decode.hpp"
#include "gcode/gr1n.hpp"

namespace gcode {

// Codewords g^{-1} x0 of G(r,1,n) whose canonical exponents satisfy m_j | k_j.
struct PartialCodeSpec {
  int r = 0;
  std::size_t n = 0;
  std::vector<int> m;  // m_1 .. m_n with m_n = 1 and m_{j+1} | m_j | r

  void validate() const;  // throws std::invalid_argument
};

std::uint64_t partial_size(const PartialCodeSpec& spec);
bool partial_contains(const MonomialElement& g, const PartialCodeSpec& spec);
// All members, enumerated through canonical forms in index order.
std::vector<MonomialElement> partial_members(const PartialCodeSpec& spec, std::size_t limit = 1000000);

// Greedy stage decoding with stage leaders a_j^t restricted to m_j | t.
MonomialDecodeResult partial_decode(std::span<const Complex> r, const PartialCodeSpec& spec,
                                    std::span<const Complex> x0, double tol = kTolerance);

// The member whose codeword is nearest to r (first on ties), by enumeration.
MonomialElement partial_nearest(std::span<const Complex> r, const PartialCodeSpec& spec,
                                std::span<const Complex> x0);

// Minimum pairwise distance among the distinct codewords; |W| is capped at 1e4.
double partial_dmin_exhaustive(const PartialCodeSpec& spec, std::span<const Complex> x0);

struct GeneratorDistance {
  std::string name;  // "a1^4", "b2", ...
  double distance = 0.0;
};

struct GeneratorDistanceTable {
  double beta_over_alpha = 0.0;
  std::vector<GeneratorDistance> rows;  // a_k^{m_k} for k = 1..n, then b_j
  double ratio = 1.0;                   // max / min
  double minimum = 0.0;                 // for the normalized x0
};

// ||g x0 - x0|| for g in {a_k^{m_k}} u {b_j} with x0 = (a, a+b, ..., a+(n-1)b) normalized.
GeneratorDistanceTable generator_distance_table(const PartialCodeSpec& spec, double beta_over_alpha);

// The two readings of a stated ratio: as given, and scaled by sqrt(2)
// (the ratio |xi - 1| a = b instead of sqrt(1 - cos(2 pi / r)) a = b).
struct ConventionComparison {
  GeneratorDistanceTable stated;
  GeneratorDistanceTable scaled;
};
ConventionComparison generator_distance_conventions(const PartialCodeSpec& spec, double beta_over_alpha);

std::string generator_distance_csv(const std::vector<GeneratorDistanceTable>& tables);

struct SweepCell {
  std::vector<int> m;
  double beta_over_alpha = 0.0;
  double ratio = 0.0;
  double minimum = 0.0;
  std::uint64_t size = 0;
};

// Every valid divisor chain for (r, n) crossed with the ratio grid.
std::vector<SweepCell> partial_sweep(int r, std::size_t n, std::span<const double> ratios);
std::vector<std::vector<int>> divisor_chains(int r, std::size_t n);

}  // namespace gcode
