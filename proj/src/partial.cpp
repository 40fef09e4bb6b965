#include "gcode/partial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "gcode/code.hpp"

namespace gcode {

namespace {

// Exponent divisor constraining stage s, or 1 for the permutation stages.
int stage_divisor(const PartialCodeSpec& spec, std::size_t s) {
  if (s == 1) return spec.m[0];
  if (s % 2 == 0) return spec.m[s / 2];
  return 1;
}

}  // namespace

void PartialCodeSpec::validate() const {
  if (r < 1 || n < 1) throw std::invalid_argument("partial code: r and n must be positive");
  if (m.size() != n) throw std::invalid_argument("partial code: need exactly n divisors");
  if (m.back() != 1) throw std::invalid_argument("partial code: m_n must be 1");
  for (int v : m)
    if (v < 1) throw std::invalid_argument("partial code: divisors must be positive");
  if (r % m[0] != 0) throw std::invalid_argument("partial code: m_1 must divide r");
  for (std::size_t j = 0; j + 1 < n; ++j)
    if (m[j] % m[j + 1] != 0) throw std::invalid_argument("partial code: m_{j+1} must divide m_j");
}

std::uint64_t partial_size(const PartialCodeSpec& spec) {
  spec.validate();
  std::uint64_t size = 1;
  for (std::size_t j = 1; j <= spec.n; ++j) size *= j;
  for (int mj : spec.m) size *= static_cast<std::uint64_t>(spec.r / mj);
  return size;
}

bool partial_contains(const MonomialElement& g, const PartialCodeSpec& spec) {
  const CanonicalForm f = factorize(g);
  for (std::size_t j = 0; j < spec.n; ++j)
    if (f.k[j] % spec.m[j] != 0) return false;
  return true;
}

std::vector<MonomialElement> partial_members(const PartialCodeSpec& spec, std::size_t limit) {
  if (partial_size(spec) > limit) throw std::length_error("partial_members: code too large to enumerate");
  const std::size_t stages = 2 * spec.n - 1;
  std::vector<std::size_t> radix(stages), digits(stages, 0);
  for (std::size_t s = 1; s <= stages; ++s)
    radix[s - 1] = stage_radix(spec.r, s) / static_cast<std::size_t>(stage_divisor(spec, s));
  // Order: k_1 fastest, then k_2, ..., then the permutation digits, as in the message index.
  std::vector<std::size_t> order{0};
  for (std::size_t s = 2; s <= stages; s += 2) order.push_back(s - 1);
  for (std::size_t s = 3; s <= stages; s += 2) order.push_back(s - 1);
  std::vector<MonomialElement> out;
  std::vector<std::size_t> actual(stages);
  while (true) {
    for (std::size_t s = 1; s <= stages; ++s)
      actual[s - 1] = digits[s - 1] * static_cast<std::size_t>(stage_divisor(spec, s));
    out.push_back(compose_stage_digits(spec.r, spec.n, actual));
    std::size_t p = 0;
    while (p < order.size()) {
      const std::size_t s = order[p];
      if (++digits[s] < radix[s]) break;
      digits[s] = 0;
      ++p;
    }
    if (p == order.size()) break;
  }
  return out;
}

MonomialDecodeResult partial_decode(std::span<const Complex> r, const PartialCodeSpec& spec,
                                    std::span<const Complex> x0, double tol) {
  spec.validate();
  if (r.size() != spec.n || x0.size() != spec.n) throw std::invalid_argument("partial_decode: dimension mismatch");
  MonomialDecodeResult res;
  res.element = MonomialElement::identity(spec.r, spec.n);
  CVector cur(r.begin(), r.end());
  CVector trial(cur.size());
  std::vector<double> dist;
  std::vector<std::size_t> allowed;
  for (std::size_t s = 1; s <= 2 * spec.n - 1; ++s) {
    const std::size_t step = static_cast<std::size_t>(stage_divisor(spec, s));
    allowed.clear();
    for (std::size_t t = 0; t < stage_radix(spec.r, s); t += step) allowed.push_back(t);
    std::vector<LinearMap> maps;
    std::vector<MonomialElement> leaders;
    for (std::size_t t : allowed) {
      leaders.push_back(stage_leader(spec.r, spec.n, s, t));
      maps.emplace_back(leaders.back().to_map());
    }
    dist.assign(maps.size(), 0.0);
    for (std::size_t i = 0; i < maps.size(); ++i) {
      maps[i].apply_into(cur, trial);
      dist[i] = distance(trial, x0);
      ++res.comparisons;
    }
    const double best = *std::min_element(dist.begin(), dist.end());
    std::size_t pick = 0;
    while (dist[pick] > best + tol) ++pick;
    for (std::size_t i = pick + 1; i < dist.size(); ++i)
      if (dist[i] <= best + tol) {
        ++res.ties;
        break;
      }
    res.leaders.push_back(allowed[pick]);
    cur = maps[pick].apply(cur);
    res.element = leaders[pick] * res.element;
    res.trajectory.push_back(dist[pick]);
  }
  return res;
}

MonomialElement partial_nearest(std::span<const Complex> r, const PartialCodeSpec& spec,
                                std::span<const Complex> x0) {
  const auto members = partial_members(spec);
  double best = std::numeric_limits<double>::infinity();
  MonomialElement out = members.front();
  for (const auto& g : members) {
    const double d = distance(r, g.inverse().apply(x0));
    if (d < best) {
      best = d;
      out = g;
    }
  }
  return out;
}

double partial_dmin_exhaustive(const PartialCodeSpec& spec, std::span<const Complex> x0) {
  const auto members = partial_members(spec, 10000);
  std::vector<CVector> pts;
  ProximityIndex seen(x0.size(), kTolerance);
  for (const auto& g : members) {
    CVector p = g.inverse().apply(x0);
    if (seen.find(p)) continue;
    seen.insert(p, pts.size());
    pts.push_back(std::move(p));
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, distance(pts[i], pts[j]));
  if (!std::isfinite(best)) throw std::domain_error("partial_dmin_exhaustive: fewer than two codewords");
  return best;
}

GeneratorDistanceTable generator_distance_table(const PartialCodeSpec& spec, double beta_over_alpha) {
  spec.validate();
  const CVector x0 = standard_form_vector(spec.n, beta_over_alpha);
  GeneratorDistanceTable t;
  t.beta_over_alpha = beta_over_alpha;
  for (std::size_t k = 1; k <= spec.n; ++k) {
    const int mk = spec.m[k - 1];
    const auto g = MonomialElement::a(spec.r, spec.n, k).pow(mk);
    std::string name = "a" + std::to_string(k);
    if (mk != 1) name += "^" + std::to_string(mk);
    t.rows.push_back({name, distance(g.apply(x0), x0)});
  }
  for (std::size_t j = 1; j < spec.n; ++j) {
    const auto g = MonomialElement::b(spec.r, spec.n, j);
    t.rows.push_back({"b" + std::to_string(j), distance(g.apply(x0), x0)});
  }
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& row : t.rows) {
    // a_k^{m_k} is the identity when m_k = r; it constrains nothing.
    if (row.distance <= kTolerance) continue;
    lo = std::min(lo, row.distance);
    hi = std::max(hi, row.distance);
  }
  t.minimum = std::isfinite(lo) ? lo : 0.0;
  t.ratio = std::isfinite(lo) ? hi / lo : 1.0;
  return t;
}

ConventionComparison generator_distance_conventions(const PartialCodeSpec& spec, double beta_over_alpha) {
  return {generator_distance_table(spec, beta_over_alpha),
          generator_distance_table(spec, beta_over_alpha * std::sqrt(2.0))};
}

std::string generator_distance_csv(const std::vector<GeneratorDistanceTable>& tables) {
  std::ostringstream os;
  os << "beta_over_alpha,generator,distance\n";
  char buf[128];
  for (const auto& t : tables) {
    for (const auto& row : t.rows) {
      std::snprintf(buf, sizeof buf, "%.6f,%s,%.6f\n", t.beta_over_alpha, row.name.c_str(), row.distance);
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%.6f,max/min,%.6f\n", t.beta_over_alpha, t.ratio);
    os << buf;
    std::snprintf(buf, sizeof buf, "%.6f,min,%.6f\n", t.beta_over_alpha, t.minimum);
    os << buf;
  }
  return os.str();
}

std::vector<std::vector<int>> divisor_chains(int r, std::size_t n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 1);
  // Fill m_{n-1} down to m_1, each a multiple of the next and a divisor of r.
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == 0) {
      out.push_back(cur);
      return;
    }
    const int below = cur[j];
    for (int v = below; v <= r; v += below)
      if (r % v == 0) {
        cur[j - 1] = v;
        self(self, j - 1);
      }
  };
  if (n == 1) return {{1}};
  rec(rec, n - 1);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SweepCell> partial_sweep(int r, std::size_t n, std::span<const double> ratios) {
  std::vector<SweepCell> cells;
  for (const auto& m : divisor_chains(r, n)) {
    const PartialCodeSpec spec{r, n, m};
    for (double q : ratios) {
      const auto t = generator_distance_table(spec, q);
      cells.push_back({m, q, t.ratio, t.minimum, partial_size(spec)});
    }
  }
  return cells;
}

}  // namespace gcode
