#include "gcode/exceptional.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace gcode {

namespace {

CMatrix power(const CMatrix& m, int e) {
  CMatrix out = CMatrix::identity(m.rows());
  for (int i = 0; i < e; ++i) out = mat_mul(out, m);
  return out;
}

}  // namespace

void check_braid_relations(const CMatrix& a, const CMatrix& b, int k, double tol) {
  const CMatrix id = CMatrix::identity(a.rows());
  if (max_abs_diff(power(a, k), id) > tol || max_abs_diff(power(b, k), id) > tol)
    throw std::runtime_error("braid relations: A^k or B^k is not the identity");
  if (max_abs_diff(mat_mul(mat_mul(a, b), a), mat_mul(mat_mul(b, a), b)) > tol)
    throw std::runtime_error("braid relations: ABA != BAB");
}

CatalogEntry g4() {
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  const CMatrix a{{1.0, 0.0}, {0.0, Complex(-0.5, s3 / 2.0)}};
  const Complex off(1.0 / s2, -1.0 / s6);
  const CMatrix b{{Complex(0.0, 1.0 / s3), off}, {off, Complex(0.5, 1.0 / (2.0 * s3))}};
  check_braid_relations(a, b, 3);
  CatalogEntry e;
  e.name = "g4";
  e.generators = {a, b};
  e.generator_names = {"A", "B"};
  e.group = FiniteUnitaryGroup::generate(e.generators, e.generator_names);
  e.vectors["x0"] = normalized(CVector{0.8881, 0.4597});
  e.vectors["y0"] = CVector{Complex(1.0 / s2, 0.5), 0.5};
  e.notes = {"x0 = (0.8881, 0.4597) rescaled to unit norm",
             "{I} < <A> < G: the coset {C, D, CA^2} with C = BA^2B, D = CA has a displacement tie",
             "{I} < <C> < G with y0: leaders I, B, B^2, A^2B^2 are minimal"};
  return e;
}

CatalogEntry braid_group(int k) {
  if (k == 3) return g4();
  if (k != 4 && k != 5) throw std::invalid_argument("braid_group: k must be 3, 4 or 5");
  const Complex z = std::polar(1.0, -2.0 * kPi / k);
  const double v2sq = 1.0 / std::norm(1.0 - z);
  const CVector v{std::sqrt(1.0 - v2sq), std::sqrt(v2sq)};
  const CMatrix a{{1.0, 0.0}, {0.0, z}};
  CMatrix b = CMatrix::identity(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) b(i, j) += (z - 1.0) * v[i] * std::conj(v[j]);
  check_braid_relations(a, b, k);
  CatalogEntry e;
  e.name = k == 4 ? "g8" : "g16";
  e.generators = {a, b};
  e.generator_names = {"A", "B"};
  e.group = FiniteUnitaryGroup::generate(e.generators, e.generator_names);
  if (k == 4) {
    e.vectors["x0"] = balanced_vector(e, 25.0 * kPi / 72.0);
    e.notes = {"reflection pair A = diag(1, z), B = I + (z-1) v v^H with z = exp(-2 pi i/4), |v_2|^2 = 1/|1-z|^2",
               "x0 balances ||A^-1 x0 - x0|| = ||B^-1 x0 - x0|| at phase 25 pi / 72",
               "{I} < <A> < G has minimal leaders for x0"};
  } else {
    e.vectors["x0"] = balanced_vector(e, 25.0 * kPi / 72.0);
    e.notes = {"reflection pair A = diag(1, z), B = I + (z-1) v v^H with z = exp(-2 pi i/5), |v_2|^2 = 1/|1-z|^2",
               "B^3A^4B^3 = diag(c, conj c) and B^3A^4B^3A^4 = cI with c = exp(pi i/5) in this representation",
               "the two lie in one <A>-coset and tie for every unit x0"};
  }
  return e;
}

std::vector<std::string> catalog_names() { return {"g4", "g8", "g16"}; }

CatalogEntry catalog_entry(const std::string& name) {
  if (name == "g4") return g4();
  if (name == "g8") return braid_group(4);
  if (name == "g16") return braid_group(5);
  throw std::invalid_argument("unknown catalog entry: " + name);
}

ElementId word_element(const CatalogEntry& entry, const std::string& word) {
  const FiniteUnitaryGroup& g = *entry.group;
  ElementId out = g.identity();
  std::size_t i = 0;
  while (i < word.size()) {
    if (word[i] == '*' || std::isspace(static_cast<unsigned char>(word[i]))) {
      ++i;
      continue;
    }
    if (word[i] == 'I' && (i + 1 == word.size() || word[i + 1] == '*')) {
      ++i;
      continue;
    }
    std::size_t best = entry.generator_names.size();
    std::size_t best_len = 0;
    for (std::size_t gi = 0; gi < entry.generator_names.size(); ++gi) {
      const auto& nm = entry.generator_names[gi];
      if (nm.size() > best_len && word.compare(i, nm.size(), nm) == 0) {
        best = gi;
        best_len = nm.size();
      }
    }
    if (best == entry.generator_names.size()) throw std::invalid_argument("word_element: cannot parse " + word);
    i += best_len;
    long e = 1;
    if (i < word.size() && word[i] == '^') {
      std::size_t used = 0;
      e = std::stol(word.substr(i + 1), &used);
      i += 1 + used;
    }
    ElementId gen = g.generator_ids()[best];
    if (e < 0) {
      gen = g.inverse(gen);
      e = -e;
    }
    for (long j = 0; j < e; ++j) out = g.multiply(out, gen);
  }
  return out;
}

TwoStageChain two_stage_chain(const CatalogEntry& entry, std::span<const ElementId> h_generators,
                              std::span<const Complex> x0) {
  const GroupPtr g = entry.group;
  const Subgroup h = Subgroup::generated_by(g, h_generators);
  auto sel = select_coset_leaders(Subgroup::whole(g), h, x0);
  std::vector<ElementId> h_members;
  h_members.push_back(g->identity());
  // Members of H in breadth-first order from the identity.
  for (std::size_t head = 0; head < h_members.size(); ++head)
    for (ElementId s : h_generators) {
      const ElementId p = g->multiply(s, h_members[head]);
      if (std::find(h_members.begin(), h_members.end(), p) == h_members.end()) h_members.push_back(p);
    }
  std::vector<ChainStage> stages{{h_members, {h_generators.begin(), h_generators.end()}},
                                 {sel.leaders.leaders, entry.group->generator_ids()}};
  return {SubgroupChain(g, std::move(stages)), std::move(sel.report)};
}

CVector balanced_vector(const CatalogEntry& entry, double phi) {
  const FiniteUnitaryGroup& g = *entry.group;
  const ElementId ai = g.inverse(g.generator_ids()[0]);
  const ElementId bi = g.inverse(g.generator_ids()[1]);
  auto vec = [&](double t) { return CVector{std::cos(t), std::sin(t) * std::polar(1.0, phi)}; };
  auto gap = [&](double t) {
    const CVector x = vec(t);
    return distance(g.apply(ai, x), x) - distance(g.apply(bi, x), x);
  };
  double lo = 1e-6, hi = kPi / 2.0 - 1e-6;
  if (gap(lo) * gap(hi) > 0.0) throw std::runtime_error("balanced_vector: no sign change on (0, pi/2)");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((gap(lo) < 0.0) == (gap(mid) < 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return vec(0.5 * (lo + hi));
}

CVector g8_initial_vector() { return balanced_vector(braid_group(4), 25.0 * kPi / 72.0); }

G16Tie g16_tie(const CatalogEntry& g16, std::span<const Complex> x0) {
  G16Tie t;
  t.first = word_element(g16, "B^3*A^4*B^3");
  t.second = word_element(g16, "B^3*A^4*B^3*A^4");
  t.c = std::polar(1.0, kPi / 5.0);
  const FiniteUnitaryGroup& g = *g16.group;
  const CMatrix scalar = CMatrix::diagonal(CVector{t.c, t.c});
  const CMatrix diag = CMatrix::diagonal(CVector{t.c, std::conj(t.c)});
  t.first_is_scalar = max_abs_diff(g.element(t.first), scalar) <= 1e-9;
  t.second_is_scalar = max_abs_diff(g.element(t.second), scalar) <= 1e-9;
  t.first_is_diag_conjugate = max_abs_diff(g.element(t.first), diag) <= 1e-9;
  t.second_is_diag_conjugate = max_abs_diff(g.element(t.second), diag) <= 1e-9;
  t.displacement_gap = std::abs(distance(g.apply(t.first, x0), x0) - distance(g.apply(t.second, x0), x0));
  return t;
}

}  // namespace gcode
