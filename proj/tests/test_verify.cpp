#include <random>

#include "doctest.h"
#include "gcode/cli.hpp"
#include "gcode/exceptional.hpp"
#include "gcode/gr1n.hpp"
#include "gcode/verify.hpp"
#include "oracle.hpp"

using namespace gcode;

namespace {

struct Standard {
  std::shared_ptr<const Gr1nGroup> g;
  SubgroupChain chain;
  Code code;
  Standard(int r, std::size_t n)
      : g(std::make_shared<const Gr1nGroup>(r, n)), chain(gr1n_subgroup_chain(g)), code(g, standard_initial_vector(r, n)) {}
};

// Minimality straight from dense matrices: every c beats every c h with h x0 != x0.
bool minimal_oracle(const Gr1nGroup& g, const std::vector<ElementId>& leaders, const Subgroup& h, const CVector& x0) {
  for (ElementId c : leaders) {
    const CMatrix cm = g.element(c).to_matrix();
    const double base = oracle::dist(oracle::naive_apply(cm, x0), x0);
    for (ElementId a : h.members()) {
      const CMatrix am = g.element(a).to_matrix();
      if (oracle::dist(oracle::naive_apply(am, x0), x0) < 1e-9) continue;
      if (oracle::dist(oracle::naive_apply(oracle::naive_mul(cm, am), x0), x0) <= base + 1e-9) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("report bookkeeping") {
    CheckReport a;
    a.property = "p";
    CHECK(a.passed());
    CheckReport b;
    b.verdict = Verdict::Inconclusive;
    b.samples_used = 4;
    b.exhaustive = false;
    a.merge(b);
    CHECK(a.verdict == Verdict::Inconclusive);
    CHECK(a.samples_used == 4);
    CHECK_FALSE(a.exhaustive);
    for (int i = 0; i < 40; ++i) a.fail({{1, 2}, std::nullopt, 0, "w"});
    CHECK(a.verdict == Verdict::Fail);
    CHECK(a.witnesses.size() == 16);
    a.merge(CheckReport{});
    CHECK(a.verdict == Verdict::Fail);
    CHECK(verdict_name(Verdict::Inconclusive) == "inconclusive");
  }

  TEST_CASE("json reports carry labels") {
    const Standard s(3, 2);
    CheckReport rep;
    rep.property = "minimal";
    rep.fail({{0, 1}, CVector{1.0, 0.0}, 2, "note"});
    const auto j = report_to_json(rep, *s.g);
    CHECK(j["property"] == "minimal");
    CHECK(j["verdict"] == "fail");
    CHECK(j["witnesses"][0]["elements"][0] == s.g->label(0));
    CHECK(j["witnesses"][0]["stage"] == 2);
  }

  TEST_CASE("minimality agrees with a dense oracle") {
    const Standard s(3, 3);
    std::mt19937_64 rng(6);
    for (std::size_t k = 1; k <= s.chain.length(); ++k) {
      const Subgroup h = s.chain.subgroup(k - 1);
      const auto cosets = left_cosets(s.chain.subgroup(k), h);
      const auto& leaders = s.chain.stage(k).leaders;
      CHECK(check_minimal(s.code, leaders, h).passed());
      CHECK(minimal_oracle(*s.g, leaders, h, s.code.x0()));
      // Random transversals of the same cosets.
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<ElementId> pick;
        for (const auto& c : cosets) pick.push_back(c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng)]);
        const auto rep = check_minimal(s.code, pick, h);
        CHECK(rep.passed() == minimal_oracle(*s.g, pick, h, s.code.x0()));
        for (const auto& w : rep.witnesses) CHECK(replay_minimal_witness(s.code, h, w.elements[0], w.elements[1]));
      }
    }
  }

  TEST_CASE("a non-minimal leader is caught") {
    const Standard s(3, 2);
    const ElementId a1 = s.g->id_of(MonomialElement::a(3, 2, 1));
    const ElementId b1 = s.g->id_of(MonomialElement::b(3, 2, 1));
    const Subgroup h = s.chain.subgroup(2);
    const std::vector<ElementId> leaders{s.g->identity(), s.g->multiply(b1, a1)};
    const auto rep = check_minimal(s.code, leaders, h);
    REQUIRE_FALSE(rep.passed());
    CHECK(replay_minimal_witness(s.code, h, rep.witnesses[0].elements[0], rep.witnesses[0].elements[1]));
  }

  TEST_CASE("standard chain properties") {
    const Standard s(4, 3);
    CHECK(check_induced_minimal(s.chain, s.code).passed());
    CHECK(check_error_control(s.chain).passed());
    const auto& x = s.chain.generators(s.chain.length());
    CHECK(check_nearest_neighbors_property(s.code, x).passed());
    CHECK(check_dagger(s.code, x).passed());
    CHECK(check_one_factor_error_all(s.chain).passed());
    CHECK(check_zero_noise_decoding(s.chain, s.code).passed());
    const double delta = compute_chain_delta(s.chain, s.code).delta;
    CHECK(check_noisy_decoding(s.chain, s.code, delta / 2.0, {500, 3, 0.75}).passed());
    const auto stages = check_chain_stages(s.chain, s.code, {300, 2, 0.75});
    CHECK(stages.size() == 3 * s.chain.length());
    for (const auto& rep : stages) CHECK_MESSAGE(rep.verdict != Verdict::Fail, rep.property);
  }

  TEST_CASE("greed and region checks agree on the standard stages") {
    const Standard s(4, 2);
    for (std::size_t k = 1; k <= s.chain.length(); ++k) {
      const auto eq = check_greed_region_equivalence(s.code, s.chain.stage(k).leaders, s.chain.subgroup(k - 1),
                                              s.chain.subgroup(k), {400, 5, 0.75});
      CHECK(eq.greed.passed());
      CHECK(eq.region.passed());
      CHECK(eq.combined.passed());
      CHECK(eq.combined.note == "both pass");
    }
  }

  TEST_CASE("one-factor errors need steps from the top generator set") {
    const Standard s(3, 2);
    const ElementId a2 = s.g->id_of(MonomialElement::a(3, 2, 2));
    CHECK_THROWS_AS(check_one_factor_error(s.chain, 0, a2), std::invalid_argument);
    const ElementId b1 = s.g->id_of(MonomialElement::b(3, 2, 1));
    CHECK(check_one_factor_error(s.chain, 5, b1).passed());
  }

  TEST_CASE("error control oracle") {
    // Recompute the error-control condition with dense matrices on G(3,1,2).
    const Standard s(3, 2);
    bool expect = true;
    for (std::size_t k = 1; k <= s.chain.length(); ++k) {
      std::vector<ElementId> steps, below;
      for (ElementId e : s.chain.generators(k)) {
        steps.push_back(e);
        steps.push_back(s.g->inverse(e));
      }
      if (k > 1)
        for (ElementId e : s.chain.generators(k - 1)) {
          below.push_back(e);
          below.push_back(s.g->inverse(e));
        }
      const auto& leaders = s.chain.stage(k).leaders;
      auto is_one_of = [&](const CMatrix& m, const std::vector<ElementId>& set) {
        for (ElementId e : set)
          if (oracle::max_diff(m, s.g->element(e).to_matrix()) < 1e-12) return true;
        return false;
      };
      for (ElementId b : steps)
        for (ElementId c : leaders) {
          const CMatrix bm = s.g->element(b).to_matrix(), cm = s.g->element(c).to_matrix();
          const CMatrix bc = oracle::naive_mul(bm, cm);
          const CMatrix conj = oracle::naive_mul(s.g->element(s.g->inverse(c)).to_matrix(), bc);
          if (!is_one_of(bc, leaders) && !is_one_of(conj, below)) expect = false;
        }
    }
    CHECK(check_error_control(s.chain).passed() == expect);
  }

  TEST_CASE("exceptional chain findings replay") {
    const Setup g4s = resolve_setup("catalog:g4");
    const auto& chain = *g4s.chain;
    const auto& code = *g4s.code;
    CHECK(check_minimal(code, chain.stage(2).leaders, chain.subgroup(1)).passed());
    CHECK(check_zero_noise_decoding(chain, code).passed());
    const auto ec = check_error_control(chain);
    REQUIRE_FALSE(ec.passed());
    for (const auto& w : ec.witnesses)
      CHECK(replay_error_control_witness(chain, w.stage, w.elements[0], w.elements[1]));
    const auto eq = check_greed_region_equivalence(code, chain.stage(2).leaders, chain.subgroup(1), chain.subgroup(2),
                                            {2000, 1, 0.75});
    if (eq.greed.verdict == Verdict::Fail)
      for (const auto& w : eq.greed.witnesses)
        CHECK(replay_greed_witness(code, chain.stage(2).leaders, chain.subgroup(2), *w.point));
    if (eq.region.verdict == Verdict::Fail)
      for (const auto& w : eq.region.witnesses)
        CHECK(replay_region_witness(code, w.elements[0], chain.subgroup(1), *w.point));
    CHECK(eq.combined.verdict != Verdict::Fail);
  }

  TEST_CASE("dagger failures replay") {
    // Steps drawn from a proper subgroup cannot bring every codeword home.
    const Standard s(3, 2);
    const std::vector<ElementId> x{s.g->id_of(MonomialElement::a(3, 2, 1))};
    const auto rep = check_dagger(s.code, x);
    REQUIRE_FALSE(rep.passed());
    for (const auto& w : rep.witnesses) CHECK(replay_dagger_witness(s.code, x, w.elements[0]));
    CHECK_FALSE(check_nearest_neighbors_property(s.code, x).passed());
  }

  TEST_CASE("fundamental region sampling") {
    const Standard s(4, 2);
    const Subgroup h = s.chain.subgroup(2);
    const FundamentalRegion fr(s.code, h);
    std::mt19937_64 rng(1);
    int got = 0;
    for (int i = 0; i < 300; ++i) {
      const auto x = fr.sample(rng);
      if (!x) continue;
      ++got;
      CHECK(fr.contains(*x));
      CHECK(in_fundamental_region(*x, h, s.code.x0()));
      CHECK(fr.minimizer(*x) == s.g->identity());
    }
    CHECK(got > 250);
  }
}
