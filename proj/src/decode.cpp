#include "gcode/decode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gcode {

CVector encode(const Code& code, ElementId g) { return code.codeword(g); }

DecodeResult subgroup_decode(std::span<const Complex> r, const SubgroupChain& chain, std::span<const Complex> x0,
                             double tol) {
  const GroupAction& g = chain.action();
  if (r.size() != g.dimension() || x0.size() != g.dimension())
    throw std::invalid_argument("subgroup_decode: dimension mismatch");
  DecodeResult res;
  res.element = g.identity();
  CVector cur(r.begin(), r.end());
  CVector trial(cur.size());
  std::vector<double> dist;
  for (std::size_t k = 1; k <= chain.length(); ++k) {
    const auto& maps = chain.leader_maps(k);
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
    res.leaders.push_back(pick);
    cur = maps[pick].apply(cur);
    res.element = g.multiply(chain.stage(k).leaders[pick], res.element);
    res.trajectory.push_back(dist[pick]);
  }
  return res;
}

StageNavigator::StageNavigator(const SubgroupChain& chain) {
  for (const auto& graph : chain_graphs(chain)) trees_.push_back(graph.spanning_tree());
  for (std::size_t k = 0; k < trees_.size(); ++k)
    if (!trees_[k].spans)
      throw std::invalid_argument("StageNavigator: coset leader graph of stage " + std::to_string(k + 1) +
                                  " is not connected");
}

DecodeResult subgroup_decode(std::span<const Complex> r, const SubgroupChain& chain, std::span<const Complex> x0,
                             const StageNavigator& nav, double tol) {
  const GroupAction& g = chain.action();
  if (r.size() != g.dimension() || x0.size() != g.dimension())
    throw std::invalid_argument("subgroup_decode: dimension mismatch");
  DecodeResult res;
  res.element = g.identity();
  CVector cur(r.begin(), r.end());
  CVector trial(cur.size());
  for (std::size_t k = 1; k <= chain.length(); ++k) {
    const auto& maps = chain.leader_maps(k);
    const SpanningTree& tree = nav.tree(k);
    std::size_t at = 0;
    double here = distance(cur, x0);
    ++res.comparisons;
    while (true) {
      std::optional<std::size_t> next;
      double next_d = here;
      for (std::size_t child : tree.children[at]) {
        maps[child].apply_into(cur, trial);
        const double d = distance(trial, x0);
        ++res.comparisons;
        if (d < next_d - tol) {
          next_d = d;
          next = child;
        } else if (next && std::abs(d - next_d) <= tol) {
          ++res.ties;
        }
      }
      if (!next) break;
      at = *next;
      here = next_d;
    }
    res.leaders.push_back(at);
    cur = maps[at].apply(cur);
    res.element = g.multiply(chain.stage(k).leaders[at], res.element);
    res.trajectory.push_back(here);
  }
  return res;
}

int nearest_phase_exponent(Complex z, int r) {
  double theta = std::arg(z);
  if (theta < 0.0) theta += 2.0 * kPi;
  const double t = r - r * theta / (2.0 * kPi);
  const double fl = std::floor(t);
  const double frac = t - fl;
  const int lo = static_cast<int>(fl) % r;
  const int hi = (lo + 1) % r;
  if (frac < 0.5) return lo;
  if (frac > 0.5) return hi;
  return std::min(lo, hi);
}

MonomialDecodeResult fast_gr1n_decode(std::span<const Complex> r, int r_param, std::span<const Complex> x0) {
  const std::size_t n = x0.size();
  if (n == 0 || r.size() != n) throw std::invalid_argument("fast_gr1n_decode: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(x0[i].imag()) > kTolerance || !(x0[i].real() > 0.0) ||
        (i > 0 && !(x0[i].real() > x0[i - 1].real())))
      throw std::invalid_argument("fast_gr1n_decode: x0 must be real, positive and strictly increasing");
  }
  MonomialDecodeResult res;
  res.leaders.assign(2 * n - 1, 0);
  std::vector<int> k(n);
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    k[j] = nearest_phase_exponent(r[j], r_param);
    v[j] = (root_of_unity(r_param, k[j]) * r[j]).real();
    ++res.comparisons;
  }
  std::vector<std::size_t> order{0};
  order.reserve(n);
  res.leaders[0] = static_cast<std::size_t>(k[0]);
  for (std::size_t j = 1; j < n; ++j) {
    res.leaders[2 * j - 1] = static_cast<std::size_t>(k[j]);
    std::size_t p = j;
    while (p > 0) {
      ++res.comparisons;
      if (v[j] < v[order[p - 1]]) {
        --p;
      } else {
        break;
      }
    }
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(p), j);
    res.leaders[2 * j] = j - p;
  }
  std::vector<int> phase(n);
  for (std::size_t i = 0; i < n; ++i) phase[i] = k[order[i]];
  res.element = MonomialElement(r_param, order, std::move(phase));
  return res;
}

MlResult ml_decode(std::span<const Complex> r, const Code& code) {
  const GroupAction& g = code.action();
  if (r.size() != code.dimension()) throw std::invalid_argument("ml_decode: dimension mismatch");
  std::vector<double> d(g.order());
  double best = std::numeric_limits<double>::infinity();
  for (ElementId a = 0; a < g.order(); ++a) {
    d[a] = distance(r, code.codeword(a));
    best = std::min(best, d[a]);
  }
  MlResult out;
  out.distance = best;
  for (ElementId a = 0; a < g.order(); ++a)
    if (d[a] <= best + code.tolerance()) out.minimizers.push_back(a);
  const CVector& first = code.codeword(out.minimizers.front());
  for (ElementId a : out.minimizers)
    if (distance(code.codeword(a), first) > code.tolerance()) out.unique_mod_stabilizer = false;
  return out;
}

PrimitiveResult primitive_decode(std::span<const Complex> r, const Code& code, std::span<const ElementId> x,
                                 double delta, PrimitiveVariant variant) {
  if (!(delta > 0.0)) throw std::invalid_argument("primitive_decode: delta must be positive");
  const GroupAction& g = code.action();
  const auto steps = symmetric_step_set(g, x);
  std::vector<LinearMap> maps;
  for (ElementId c : steps) maps.push_back(g.linear_map(c));
  const std::size_t guard = static_cast<std::size_t>(std::floor(6.0 / delta)) + 1;

  PrimitiveResult res;
  res.element = g.identity();
  CVector cur(r.begin(), r.end());
  CVector trial(cur.size());
  double here = distance(cur, code.x0());
  while (true) {
    std::optional<std::size_t> pick;
    double pick_d = here - delta / 3.0;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      maps[i].apply_into(cur, trial);
      const double d = distance(trial, code.x0());
      if (d < pick_d) {
        pick = i;
        pick_d = d;
        if (variant == PrimitiveVariant::FirstStep) break;
      }
    }
    if (!pick) break;
    if (res.step_count == guard) {
      res.terminated = false;
      break;
    }
    cur = maps[*pick].apply(cur);
    here = pick_d;
    res.steps.push_back(steps[*pick]);
    res.element = g.multiply(steps[*pick], res.element);
    ++res.step_count;
  }
  res.residual = here;
  res.certified = res.terminated && here < delta / 3.0;
  return res;
}

PrimitiveDelta compute_delta_primitive(const Code& code, std::span<const ElementId> x) {
  const GroupAction& g = code.action();
  const auto steps = symmetric_step_set(g, x);
  PrimitiveDelta out;
  out.delta = std::numeric_limits<double>::infinity();
  for (ElementId w = 0; w < g.order(); ++w) {
    const double own = code.displacement(w);
    if (own <= code.tolerance()) continue;
    double best = own;
    for (ElementId c : steps) best = std::min(best, code.displacement(g.multiply(c, w)));
    if (own - best <= code.tolerance()) {
      out.stuck = w;
      out.delta = 0.0;
      return out;
    }
    out.delta = std::min(out.delta, own - best);
  }
  if (!std::isfinite(out.delta)) out.delta = 0.0;
  return out;
}

ChainDelta compute_chain_delta(const SubgroupChain& chain, const Code& code) {
  const GroupAction& g = chain.action();
  const std::size_t m = chain.length();
  ChainDelta out;
  out.per_stage.assign(m, 0.0);
  out.per_stage[m - 1] = code.dmin();
  for (std::size_t k = 1; k < m; ++k) {
    const auto induced = chain.induced_leaders(k, m);
    const Subgroup gk = chain.subgroup(k);
    const Subgroup below = chain.subgroup(k - 1);
    double best = std::numeric_limits<double>::infinity();
    InducedViolation worst;
    for (ElementId c : induced) {
      const double base = code.displacement(c);
      for (ElementId h : gk.members()) {
        if (below.contains(h)) continue;
        const double gap = code.displacement(g.multiply(c, h)) - base;
        if (gap < best) {
          best = gap;
          worst = {k, c, h, gap};
        }
      }
    }
    out.per_stage[k - 1] = best;
    if (best <= code.tolerance() && !out.violation) out.violation = worst;
  }
  out.delta = out.violation ? 0.0 : *std::min_element(out.per_stage.begin(), out.per_stage.end());
  return out;
}

}  // namespace gcode
