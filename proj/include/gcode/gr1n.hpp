#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "gcode/chain.hpp"

namespace gcode {

// Monomial matrix of G(r,1,n): (g v)_i = xi^{k_i} v_{sigma(i)}, xi = exp(2 pi i / r).
// Permutations are 0-based image arrays.
class MonomialElement {
 public:
  MonomialElement() = default;
  MonomialElement(int r, std::vector<std::size_t> sigma, std::vector<int> k);

  static MonomialElement identity(int r, std::size_t n);
  static MonomialElement a(int r, std::size_t n, std::size_t i);  // xi in slot i (1-based)
  static MonomialElement b(int r, std::size_t n, std::size_t j);  // transposition (j j+1), 1-based

  int modulus() const { return r_; }
  std::size_t dimension() const { return sigma_.size(); }
  const std::vector<std::size_t>& sigma() const { return sigma_; }
  const std::vector<int>& exponents() const { return k_; }
  bool is_identity() const;

  MonomialElement operator*(const MonomialElement& h) const;
  MonomialElement inverse() const;
  MonomialElement pow(long e) const;

  CVector apply(std::span<const Complex> v) const;
  MonomialMap to_map() const;
  CMatrix to_matrix() const;

  // perm=[images, 1-based];k=[exponents];r=<r>
  std::string to_string() const;
  static MonomialElement parse(std::string_view text);

  bool operator==(const MonomialElement&) const = default;

 private:
  int r_ = 1;
  std::vector<std::size_t> sigma_;
  std::vector<int> k_;
};

Complex root_of_unity(int r, long k);

// g = tau_{l_n} a_n^{k_n} ... tau_{l_2} a_2^{k_2} a_1^{k_1}; cycle_start[j-2] = l_j in 1..j, l_j = j is the identity.
struct CanonicalForm {
  std::vector<int> k;
  std::vector<std::size_t> cycle_start;
  bool operator==(const CanonicalForm&) const = default;
};

std::uint64_t gr1n_order(int r, std::size_t n);

// Stage leaders of the standard chain, stage s in 1..2n-1, digit t.
// Stage 1: a_1^t. Stage 2l: a_{l+1}^t. Stage 2l+1: b_{l+1-t} ... b_l (t = 0 is I).
MonomialElement stage_leader(int r, std::size_t n, std::size_t s, std::size_t t);
std::size_t stage_radix(int r, std::size_t s);
// Whether g lies in G_s of the standard chain.
bool in_stage_subgroup(const MonomialElement& g, std::size_t s);

std::vector<std::size_t> form_to_stage_digits(const CanonicalForm& f);
CanonicalForm stage_digits_to_form(std::span<const std::size_t> digits, std::size_t n);

CanonicalForm factorize(const MonomialElement& g);
std::vector<std::size_t> factorize_stage_digits(const MonomialElement& g);
MonomialElement compose(int r, const CanonicalForm& f);
MonomialElement compose_stage_digits(int r, std::size_t n, std::span<const std::size_t> digits);

// Mixed radix over (k_1, ..., k_n, t_2, ..., t_n), k_1 least significant, t_j = j - l_j.
std::uint64_t element_to_index(const MonomialElement& g);
MonomialElement index_to_element(int r, std::size_t n, std::uint64_t index);

struct Gr1nChain {
  int r = 0;
  std::size_t n = 0;
  std::vector<std::vector<MonomialElement>> leaders;     // per stage, stage 1 first
  std::vector<std::vector<MonomialElement>> generators;  // X_k per stage
  std::vector<std::vector<std::string>> generator_names;
};

Gr1nChain gr1n_chain(int r, std::size_t n);

// X = {a_1, ..., a_n, b_1, ..., b_{n-1}} in that order.
std::vector<MonomialElement> full_generator_set(int r, std::size_t n);

// G(r,1,n) with element ids equal to message indices.
class Gr1nGroup final : public GroupAction {
 public:
  Gr1nGroup(int r, std::size_t n);

  int r() const { return r_; }
  std::size_t n() const { return n_; }
  std::size_t order() const override { return order_; }
  std::size_t dimension() const override { return n_; }
  ElementId identity() const override { return 0; }
  ElementId multiply(ElementId a, ElementId b) const override;
  ElementId inverse(ElementId a) const override;
  LinearMap linear_map(ElementId a) const override;
  std::string label(ElementId a) const override;
  CVector apply(ElementId a, std::span<const Complex> v) const override;

  MonomialElement element(ElementId a) const { return index_to_element(r_, n_, a); }
  ElementId id_of(const MonomialElement& g) const;

 private:
  int r_;
  std::size_t n_;
  std::size_t order_;
};

SubgroupChain gr1n_subgroup_chain(const std::shared_ptr<const Gr1nGroup>& group);

// Membership predicate for G(r,p,n): product of all phases is an (r/p)-th root of unity.
bool in_grpn(const MonomialElement& g, int p);

}  // namespace gcode
