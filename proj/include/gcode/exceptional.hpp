#pragma once

#include <map>
#include <string>

#include "gcode/chain.hpp"
#include "gcode/code.hpp"

namespace gcode {

struct CatalogEntry {
  std::string name;
  std::shared_ptr<const FiniteUnitaryGroup> group;
  std::vector<CMatrix> generators;
  std::vector<std::string> generator_names;
  std::map<std::string, CVector> vectors;
  std::vector<std::string> notes;
  bool complete = true;
};

// The tetrahedral reflection group of order 24, with vectors x0 and y0.
CatalogEntry g4();

// Rank-2 groups with A^k = B^k = I and ABA = BAB: k = 3, 4, 5 give orders 24, 96, 600.
// k = 3 is g4(); otherwise A = diag(1, z), B = I + (z - 1) v v^H with z = exp(-2 pi i / k)
// and |v_2|^2 = 1 / |1 - z|^2.
CatalogEntry braid_group(int k);

// Looks up "g4", "g8" or "g16".
CatalogEntry catalog_entry(const std::string& name);
std::vector<std::string> catalog_names();

// Checks A^k = B^k = I and ABA = BAB; throws std::runtime_error otherwise.
void check_braid_relations(const CMatrix& a, const CMatrix& b, int k, double tol = kTolerance);

// Element ids of words in the named generators, e.g. "B*A^2*B".
ElementId word_element(const CatalogEntry& entry, const std::string& word);

// {I} < H < G with H generated by h_generators; leaders of H are its members (identity first),
// leaders of G/H minimize the displacement of x0 (ties reported, first minimizer kept).
struct TwoStageChain {
  SubgroupChain chain;
  TieReport ties;
};
TwoStageChain two_stage_chain(const CatalogEntry& entry, std::span<const ElementId> h_generators,
                              std::span<const Complex> x0);

// x0 = (cos t, sin t e^{i phi}) with t chosen by bisection so that A^{-1} and B^{-1} move x0 equally.
CVector balanced_vector(const CatalogEntry& entry, double phi);
// The pinned G8 vector, phi = 25 pi / 72.
CVector g8_initial_vector();

struct G16Tie {
  ElementId first = 0;   // B^3 A^4 B^3
  ElementId second = 0;  // B^3 A^4 B^3 A^4, in the same <A>-coset
  Complex c;             // exp(pi i / 5)
  bool first_is_scalar = false;
  bool second_is_scalar = false;
  bool first_is_diag_conjugate = false;  // diag(c, conj c)
  bool second_is_diag_conjugate = false;
  double displacement_gap = 0.0;         // for the supplied x0
};
G16Tie g16_tie(const CatalogEntry& g16, std::span<const Complex> x0);

}  // namespace gcode
