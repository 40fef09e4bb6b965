#include <random>

#include "doctest.h"
#include "gcode/decode.hpp"
#include "gcode/gr1n.hpp"
#include "oracle.hpp"

using namespace gcode;

namespace {

CVector gaussian(std::size_t n, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, sigma);
  CVector v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

// Brute-force nearest codeword: the dense monomial M maximizing closeness of M r to x0.
CMatrix ml_oracle(const std::vector<CMatrix>& all, const CVector& r, const CVector& x0) {
  std::size_t best = 0;
  double best_d = 1e300;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const double d = oracle::dist(oracle::naive_apply(all[i], r), x0);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return all[best];
}

}  // namespace

TEST_SUITE("decode") {
  TEST_CASE("phase rounding picks the best root of unity") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 2000; ++trial) {
      const int r = 2 + trial % 9;
      const Complex z(g(rng), g(rng));
      int best = 0;
      for (int k = 1; k < r; ++k)
        if ((oracle::xi_pow(r, k) * z).real() > (oracle::xi_pow(r, best) * z).real()) best = k;
      CHECK(nearest_phase_exponent(z, r) == best);
    }
    // 1 - i sits halfway between the exponents 0 and 1 for r = 4.
    CHECK(nearest_phase_exponent(Complex(1.0, -1.0), 4) == 0);
    CHECK(nearest_phase_exponent(Complex(-1.0, 0.0), 2) == 1);
  }

  TEST_CASE("fast decoder is maximum likelihood for the standard code") {
    std::mt19937_64 rng(5);
    for (int r : {3, 4, 5})
      for (std::size_t n : {2u, 3u}) {
        const auto all = oracle::all_monomials(r, n);
        const CVector x0 = standard_initial_vector(r, n);
        for (int trial = 0; trial < 60; ++trial) {
          const CVector noisy = add(x0, gaussian(n, 0.35, rng));
          const auto res = fast_gr1n_decode(noisy, r, x0);
          CHECK(oracle::max_diff(res.element.to_matrix(), ml_oracle(all, noisy, x0)) < 1e-12);
        }
      }
  }

  TEST_CASE("fast and stage-wise decoders agree") {
    std::mt19937_64 rng(8);
    for (int r : {3, 4, 6})
      for (std::size_t n : {2u, 3u, 4u}) {
        auto g = std::make_shared<const Gr1nGroup>(r, n);
        const auto chain = gr1n_subgroup_chain(g);
        const CVector x0 = standard_initial_vector(r, n);
        for (int trial = 0; trial < 40; ++trial) {
          const CVector noisy = add(x0, gaussian(n, 0.3, rng));
          const auto fast = fast_gr1n_decode(noisy, r, x0);
          const auto slow = subgroup_decode(noisy, chain, x0);
          CHECK(g->id_of(fast.element) == slow.element);
          CHECK(fast.leaders == slow.leaders);
        }
      }
  }

  TEST_CASE("fast decoder input validation") {
    const CVector up{0.3, 0.5}, down{0.5, 0.3};
    CHECK_NOTHROW(fast_gr1n_decode(up, 4, up));
    CHECK_THROWS_AS(fast_gr1n_decode(up, 4, down), std::invalid_argument);
    CHECK_THROWS_AS(fast_gr1n_decode(CVector{1.0}, 4, up), std::invalid_argument);
  }

  TEST_CASE("average comparisons over every codeword") {
    // Without noise every ordering of the values is equally likely across the group.
    for (std::size_t n : {2u, 3u, 4u}) {
      const int r = 3;
      const CVector x0 = standard_initial_vector(r, n);
      const std::uint64_t order = gr1n_order(r, n);
      double total = 0.0;
      for (std::uint64_t i = 0; i < order; ++i) {
        const auto g = index_to_element(r, n, i);
        const CVector word = g.inverse().apply(x0);
        const auto res = fast_gr1n_decode(word, r, x0);
        CHECK(res.element == g);
        std::vector<double> v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = std::abs(word[j]);
        CHECK(res.comparisons == n + oracle::insertion_comparisons(v));
        total += static_cast<double>(res.comparisons);
      }
      CHECK(total / static_cast<double>(order) == doctest::Approx(oracle::expected_comparisons(n)).epsilon(1e-12));
    }
  }

  TEST_CASE("stage-wise decoding without noise") {
    auto g = std::make_shared<const Gr1nGroup>(3, 3);
    const auto chain = gr1n_subgroup_chain(g);
    const Code code(g, standard_initial_vector(3, 3));
    const StageNavigator nav(chain);
    for (ElementId e = 0; e < g->order(); ++e) {
      const auto full = subgroup_decode(encode(code, e), chain, code.x0());
      CHECK(full.element == e);
      CHECK(full.comparisons == 3 + 3 + 2 + 3 + 3);
      CHECK(full.trajectory.back() < 1e-9);
      const auto tree = subgroup_decode(encode(code, e), chain, code.x0(), nav);
      CHECK(tree.element == e);
      CHECK(chain.compose(full.leaders) == e);
    }
  }

  TEST_CASE("ml decoding over the code") {
    auto g = std::make_shared<const Gr1nGroup>(4, 2);
    const Code code(g, standard_initial_vector(4, 2));
    std::mt19937_64 rng(3);
    for (ElementId e = 0; e < g->order(); ++e) {
      const auto ml = ml_decode(add(code.codeword(e), gaussian(2, 0.05, rng)), code);
      REQUIRE(ml.minimizers.size() == 1);
      CHECK(ml.minimizers[0] == e);
      CHECK(ml.unique_mod_stabilizer);
    }
    // Halfway between two codewords both are minimizers.
    const ElementId a = g->id_of(MonomialElement::a(4, 2, 1));
    const CVector mid = scale(add(code.codeword(0), code.codeword(a)), 0.5);
    const auto tie = ml_decode(mid, code);
    CHECK(tie.minimizers.size() >= 2);
    CHECK_FALSE(tie.unique_mod_stabilizer);
  }

  TEST_CASE("primitive decoding with a positive delta") {
    auto g = std::make_shared<const Gr1nGroup>(4, 3);
    const auto chain = gr1n_subgroup_chain(g);
    const Code code(g, standard_initial_vector(4, 3));
    const auto& x = chain.generators(chain.length());
    const auto pd = compute_delta_primitive(code, x);
    REQUIRE(pd.ok());
    CHECK(pd.delta > 0.0);
    std::mt19937_64 rng(12);
    for (auto variant : {PrimitiveVariant::BestStep, PrimitiveVariant::FirstStep})
      for (ElementId e = 0; e < g->order(); e += 3) {
        const CVector noise = random_ball_vector(3, pd.delta / 6.0, rng);
        const auto res = primitive_decode(add(code.codeword(e), noise), code, x, pd.delta, variant);
        CHECK(res.terminated);
        CHECK(res.certified);
        CHECK(res.element == e);
        CHECK(res.step_count == res.steps.size());
      }
    CHECK_THROWS_AS(primitive_decode(code.x0(), code, x, 0.0, PrimitiveVariant::BestStep), std::invalid_argument);
  }

  TEST_CASE("primitive delta with no steps is stuck") {
    auto g = std::make_shared<const Gr1nGroup>(3, 2);
    const Code code(g, standard_initial_vector(3, 2));
    const auto pd = compute_delta_primitive(code, std::vector<ElementId>{});
    CHECK_FALSE(pd.ok());
    CHECK(pd.delta == 0.0);
  }

  TEST_CASE("chain delta for the standard code") {
    auto g = std::make_shared<const Gr1nGroup>(4, 3);
    const auto chain = gr1n_subgroup_chain(g);
    const Code code(g, standard_initial_vector(4, 3));
    const auto d = compute_chain_delta(chain, code);
    CHECK_FALSE(d.violation.has_value());
    CHECK(d.per_stage.back() == doctest::Approx(code.dmin()));
    CHECK(d.delta > 0.0);
    CHECK(d.delta <= code.dmin());
    // Brute force over induced leaders and stage differences.
    for (std::size_t k = 1; k < chain.length(); ++k) {
      double best = 1e300;
      const Subgroup gk = chain.subgroup(k), below = chain.subgroup(k - 1);
      for (ElementId c : chain.induced_leaders(k, chain.length()))
        for (ElementId h : gk.members())
          if (!below.contains(h))
            best = std::min(best, oracle::dist(code.image(g->multiply(c, h)), code.x0()) -
                                      oracle::dist(code.image(c), code.x0()));
      CHECK(d.per_stage[k - 1] == doctest::Approx(best));
    }
  }
}
