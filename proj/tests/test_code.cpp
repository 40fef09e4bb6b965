#include <random>

#include "doctest.h"
#include "gcode/code.hpp"
#include "gcode/exceptional.hpp"
#include "gcode/gr1n.hpp"
#include "gcode/verify.hpp"
#include "oracle.hpp"

using namespace gcode;

TEST_SUITE("code") {
  TEST_CASE("standard vector shape") {
    const CVector x = standard_initial_vector(4, 3);
    CHECK(norm(x) == doctest::Approx(1.0));
    const double q = std::sqrt(1.0 - std::cos(2.0 * M_PI / 4.0));
    CHECK((x[1] - x[0]).real() / x[0].real() == doctest::Approx(q));
    CHECK((x[2] - x[1]).real() == doctest::Approx((x[1] - x[0]).real()));
    CHECK_THROWS(standard_beta_ratio(1));
  }

  TEST_CASE("minimum distance agrees with a pairwise oracle") {
    for (int r = 3; r <= 5; ++r)
      for (std::size_t n = 2; n <= 3; ++n) {
        const CVector x0 = standard_initial_vector(r, n);
        std::vector<CVector> pts;
        for (const auto& m : oracle::all_monomials(r, n)) pts.push_back(oracle::naive_apply(m, x0));
        const double expect = oracle::pairwise_min(pts);
        CHECK(gr1n_dmin_exhaustive(r, n, x0) == doctest::Approx(expect).epsilon(1e-12));
        const Code code(std::make_shared<const Gr1nGroup>(r, n), x0);
        CHECK(code.dmin() == doctest::Approx(expect).epsilon(1e-12));
        CHECK(standard_dmin_formula(r, n) == doctest::Approx(expect).epsilon(1e-9));
      }
  }

  TEST_CASE("minimum distance table against reference values") {
    const double expected[6][3] = {{.71, .41, .27}, {.63, .38, .26}, {.56, .35, .24},
                                    {.51, .32, .23}, {.46, .30, .21}, {.42, .28, .20}};
    const auto cells = dmin_table({3, 4, 5, 6, 7, 8}, {2, 3, 4});
    REQUIRE(cells.size() == 18);
    for (const auto& c : cells) {
      CHECK(std::abs(c.measured - expected[c.r - 3][c.n - 2]) <= 0.005);
      CHECK(c.measured == doctest::Approx(c.formula).epsilon(1e-9));
    }
    const std::string csv = dmin_table_csv(cells);
    CHECK(csv.rfind("r,n=2,n=3,n=4\n3,0.7101,", 0) == 0);
  }

  TEST_CASE("stabilizer and full orbits") {
    auto g = std::make_shared<const Gr1nGroup>(3, 2);
    const Code full(g, standard_initial_vector(3, 2));
    CHECK(full.full_orbit());
    CHECK(full.orbit().size() == 18);
    const Code half(g, normalized(CVector{1.0, 1.0}));
    CHECK(half.stabilizer().size() == 2);
    CHECK(half.orbit().size() == 9);
    // Codewords of stabilizer-mates coincide.
    const ElementId b = g->id_of(MonomialElement::b(3, 2, 1));
    CHECK(distance(half.codeword(b), half.codeword(g->identity())) < 1e-12);
    CHECK_THROWS_AS(Code(g, CVector{1.0, 1.0}), std::invalid_argument);
  }

  TEST_CASE("trivial orbit has no minimum distance") {
    const auto g = FiniteUnitaryGroup::generate({CMatrix{{1.0, 0.0}, {0.0, -1.0}}});
    const Code code(g, CVector{1.0, 0.0});
    CHECK_THROWS_AS(code.dmin(), std::domain_error);
    CHECK_THROWS_AS(code.neighbor_elements(), std::domain_error);
  }

  TEST_CASE("nearest neighbors of the standard code are generators") {
    for (int r = 3; r <= 6; ++r)
      for (std::size_t n = 2; n <= 3; ++n) {
        auto g = std::make_shared<const Gr1nGroup>(r, n);
        const Code code(g, standard_initial_vector(r, n));
        std::vector<MonomialElement> allowed{MonomialElement::a(r, n, 1), MonomialElement::a(r, n, 1).inverse()};
        for (std::size_t j = 1; j < n; ++j) allowed.push_back(MonomialElement::b(r, n, j));
        for (ElementId e : code.neighbor_elements()) {
          const auto m = g->element(e);
          CHECK(std::find(allowed.begin(), allowed.end(), m) != allowed.end());
          CHECK(code.displacement(e) == doctest::Approx(code.dmin()));
        }
      }
  }

  TEST_CASE("initial vector transforms move neighbors predictably") {
    const auto e = g4();
    const Code base(e.group, e.vectors.at("y0"));
    // A unit scalar multiple keeps d_min and the neighbor elements.
    const Code rotated(e.group, scale(e.vectors.at("y0"), std::polar(1.0, 0.7)));
    CHECK(rotated.dmin() == doctest::Approx(base.dmin()));
    CHECK(rotated.neighbor_elements() == base.neighbor_elements());
    // z0 = b y0 has neighbors b N b^-1.
    const FiniteUnitaryGroup& g = *e.group;
    for (ElementId b = 0; b < g.order(); ++b) {
      const Code moved(e.group, g.apply(b, e.vectors.at("y0")));
      std::vector<ElementId> conj;
      for (ElementId a : base.neighbor_elements()) conj.push_back(g.multiply(g.multiply(b, a), g.inverse(b)));
      std::sort(conj.begin(), conj.end());
      auto got = moved.neighbor_elements();
      std::sort(got.begin(), got.end());
      CHECK(got == conj);
    }
  }

  TEST_CASE("region predicates") {
    auto g = std::make_shared<const Gr1nGroup>(3, 2);
    const Code code(g, standard_initial_vector(3, 2));
    const Subgroup whole = Subgroup::whole(g);
    CHECK(in_fundamental_region(code.x0(), whole, code.x0()));
    const ElementId a1 = g->id_of(MonomialElement::a(3, 2, 1));
    CHECK_FALSE(in_fundamental_region(code.image(a1), whole, code.x0()));
    CHECK(in_decoding_region(code.codeword(a1), a1, code));
    CHECK_FALSE(in_decoding_region(code.codeword(a1), g->identity(), code));
    std::mt19937_64 rng(9);
    const FundamentalRegion fr(code, whole);
    for (int i = 0; i < 200; ++i) {
      const CVector x = add(code.x0(), random_ball_vector(2, 0.8, rng));
      CHECK(fr.margin(x) == doctest::Approx(fundamental_margin(x, whole, code.x0())).epsilon(1e-9));
      CHECK(fr.minimizer(x) == region_minimizer(x, whole, code.x0()));
      const auto y = sample_fundamental_region(code, whole, rng);
      if (y) CHECK(in_fundamental_region(*y, whole, code.x0()));
    }
  }

  TEST_CASE("ball sampling stays inside the ball") {
    std::mt19937_64 rng(1);
    double mean = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const double len = norm(random_ball_vector(1, 2.0, rng));
      CHECK(len < 2.0);
      mean += len / 20000.0;
    }
    // In real dimension 2 the radius has density 2 rho / R^2, mean 2R/3.
    CHECK(mean == doctest::Approx(4.0 / 3.0).epsilon(0.02));
  }
}
