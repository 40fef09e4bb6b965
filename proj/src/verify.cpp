#include "gcode/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gcode/json_io.hpp"

namespace gcode {

namespace {

int severity(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Inconclusive: return 1;
    case Verdict::Fail: return 2;
  }
  return 0;
}

constexpr std::size_t kWitnessCap = 16;

bool in_steps(std::span<const ElementId> steps, ElementId g) {
  return std::find(steps.begin(), steps.end(), g) != steps.end();
}

std::vector<LinearMap> maps_of(const GroupAction& g, std::span<const ElementId> ids) {
  std::vector<LinearMap> maps;
  maps.reserve(ids.size());
  for (ElementId a : ids) maps.push_back(g.linear_map(a));
  return maps;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

void CheckReport::fail(Witness w) {
  verdict = Verdict::Fail;
  if (witnesses.size() < kWitnessCap) witnesses.push_back(std::move(w));
}

void CheckReport::merge(const CheckReport& other) {
  if (severity(other.verdict) > severity(verdict)) verdict = other.verdict;
  for (const auto& w : other.witnesses)
    if (witnesses.size() < kWitnessCap) witnesses.push_back(w);
  samples_used += other.samples_used;
  exhaustive = exhaustive && other.exhaustive;
}

nlohmann::json report_to_json(const CheckReport& report, const GroupAction& group) {
  nlohmann::json j;
  j["property"] = report.property;
  j["verdict"] = verdict_name(report.verdict);
  j["exhaustive"] = report.exhaustive;
  j["samples"] = report.samples_used;
  if (!report.note.empty()) j["note"] = report.note;
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : report.witnesses) {
    nlohmann::json wj;
    wj["elements"] = nlohmann::json::array();
    for (ElementId e : w.elements) wj["elements"].push_back(group.label(e));
    if (w.point) wj["point"] = to_json(std::span<const Complex>(*w.point));
    if (w.stage) wj["stage"] = w.stage;
    if (!w.note.empty()) wj["note"] = w.note;
    j["witnesses"].push_back(std::move(wj));
  }
  return j;
}

FundamentalRegion::FundamentalRegion(const Code& code, const Subgroup& h) : code_(&code), h_(h) {
  const GroupAction& g = code.action();
  ProximityIndex seen(code.dimension(), code.tolerance());
  std::vector<std::pair<double, ElementId>> order;
  for (ElementId b : h.members()) {
    if (code.displacement(b) <= code.tolerance()) continue;
    const CVector& p = code.image(b);
    if (seen.find(p)) continue;
    seen.insert(p, order.size());
    order.push_back({code.displacement(b), b});
  }
  // Nearest points first so that membership usually fails fast.
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [d, b] : order) {
    others_.push_back(code.image(b));
    realizers_.push_back(g.inverse(b));
  }
}

double FundamentalRegion::margin(std::span<const Complex> x) const {
  const double base = distance(x, code_->x0());
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : others_) m = std::min(m, distance(x, p) - base);
  return m;
}

bool FundamentalRegion::contains(std::span<const Complex> x) const {
  const double base = distance(x, code_->x0()) + code_->tolerance();
  for (const auto& p : others_)
    if (distance(x, p) <= base) return false;
  return true;
}

ElementId FundamentalRegion::minimizer(std::span<const Complex> x) const {
  ElementId best = code_->action().identity();
  double best_d = distance(x, code_->x0());
  for (std::size_t i = 0; i < others_.size(); ++i) {
    const double d = distance(x, others_[i]);
    if (d < best_d) {
      best_d = d;
      best = realizers_[i];
    }
  }
  return best;
}

std::optional<CVector> FundamentalRegion::sample(std::mt19937_64& rng, double radius_fraction) const {
  const GroupAction& act = code_->action();
  std::uniform_int_distribution<std::size_t> pick(0, act.order() - 1);
  const ElementId g = pick(rng);
  const double scale_len = code_->stabilizer().size() < act.order() ? code_->dmin() : 1.0;
  const CVector noise = random_ball_vector(code_->dimension(), radius_fraction * scale_len, rng);
  const CVector x = add(code_->codeword(g), noise);
  CVector y = act.apply(minimizer(x), x);
  if (margin(y) <= code_->tolerance()) return std::nullopt;
  return y;
}

CheckReport check_minimal(const Code& code, std::span<const ElementId> leaders, const Subgroup& h) {
  const GroupAction& g = code.action();
  const double tol = code.tolerance();
  CheckReport rep;
  rep.property = "minimal";
  for (ElementId c : leaders) {
    const double base = code.displacement(c);
    for (ElementId a : h.members()) {
      if (code.displacement(a) <= tol) continue;
      const ElementId ca = g.multiply(c, a);
      if (code.displacement(ca) - base <= tol) rep.fail({{c, ca}, std::nullopt, 0, "||c x0 - x0|| >= ||c h x0 - x0||"});
    }
  }
  return rep;
}

bool replay_minimal_witness(const Code& code, const Subgroup& h, ElementId c, ElementId ch) {
  const GroupAction& g = code.action();
  const ElementId a = g.multiply(g.inverse(c), ch);
  return h.contains(a) && code.displacement(a) > code.tolerance() &&
         code.displacement(ch) - code.displacement(c) <= code.tolerance();
}

CheckReport check_induced_minimal(const SubgroupChain& chain, const Code& code) {
  if (chain.action().order() > 100000)
    throw std::length_error("check_induced_minimal: group order exceeds 1e5");
  CheckReport rep;
  rep.property = "induced_minimal";
  const std::size_t m = chain.length();
  for (std::size_t k = 0; k < m; ++k) {
    const Subgroup gk = chain.subgroup(k);
    for (std::size_t l = k + 1; l <= m; ++l) {
      CheckReport part = check_minimal(code, chain.induced_leaders(k, l), gk);
      for (auto& w : part.witnesses) {
        w.stage = l;
        w.note = "induced leaders of G_" + std::to_string(l) + "/G_" + std::to_string(k);
      }
      rep.merge(part);
    }
  }
  return rep;
}

CheckReport check_greed_compatible(const Code& code, std::span<const ElementId> leaders, const Subgroup& h,
                                   const Subgroup& k, const SamplingOptions& opt) {
  CheckReport rep;
  rep.property = "greed_compatible";
  rep.exhaustive = false;
  if (h.size() == k.size()) return rep;
  const GroupAction& g = code.action();
  const double tol = code.tolerance();
  const FundamentalRegion fr_h(code, h);
  const FundamentalRegion fr_k(code, k);
  const auto maps = maps_of(g, leaders);
  std::mt19937_64 rng(opt.seed);
  CVector y(code.dimension());
  std::size_t boundary = 0;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const auto x = fr_h.sample(rng, opt.radius_fraction);
    if (!x) {
      ++boundary;
      continue;
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& mp : maps) {
      mp.apply_into(*x, y);
      if (fr_k.contains(y)) {
        best = std::numeric_limits<double>::infinity();
        break;
      }
      best = std::max(best, fr_k.margin(y));
    }
    if (best > tol) {
      ++rep.samples_used;
    } else if (best < -tol) {
      ++rep.samples_used;
      rep.fail({{}, *x, 0, "no leader maps x into FR(K)"});
    } else {
      ++boundary;
    }
  }
  if (boundary) rep.note = std::to_string(boundary) + " boundary samples discarded";
  return rep;
}

bool replay_greed_witness(const Code& code, std::span<const ElementId> leaders, const Subgroup& k,
                          std::span<const Complex> x) {
  const FundamentalRegion fr_k(code, k);
  for (ElementId c : leaders)
    if (fr_k.margin(code.action().apply(c, x)) >= -code.tolerance()) return false;
  return true;
}

CheckReport check_region_minimal(const Code& code, std::span<const ElementId> leaders, const Subgroup& h,
                                 const Subgroup& k, const SamplingOptions& opt) {
  CheckReport rep;
  rep.property = "region_minimal";
  rep.exhaustive = false;
  if (h.size() == k.size()) return rep;
  const GroupAction& g = code.action();
  const double tol = code.tolerance();
  const FundamentalRegion fr_h(code, h);
  const FundamentalRegion fr_k(code, k);
  std::vector<ElementId> inv;
  for (ElementId c : leaders) inv.push_back(g.inverse(c));
  const auto maps = maps_of(g, inv);
  std::mt19937_64 rng(opt.seed);
  CVector y(code.dimension());
  std::size_t boundary = 0;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const auto x = fr_k.sample(rng, opt.radius_fraction);
    if (!x) {
      ++boundary;
      continue;
    }
    bool near_edge = false;
    bool failed = false;
    for (std::size_t j = 0; j < maps.size(); ++j) {
      maps[j].apply_into(*x, y);
      if (fr_h.contains(y)) continue;
      if (fr_h.margin(y) < -tol) {
        failed = true;
        rep.fail({{leaders[j]}, *x, 0, "c^-1 x leaves FR(H)"});
      } else {
        near_edge = true;
      }
    }
    if (near_edge && !failed) {
      ++boundary;
    } else {
      ++rep.samples_used;
    }
  }
  if (boundary) rep.note = std::to_string(boundary) + " boundary samples discarded";
  return rep;
}

bool replay_region_witness(const Code& code, ElementId c, const Subgroup& h, std::span<const Complex> x) {
  const FundamentalRegion fr_h(code, h);
  const GroupAction& g = code.action();
  return fr_h.margin(g.apply(g.inverse(c), x)) < -code.tolerance();
}

EquivalenceReport check_greed_region_equivalence(const Code& code, std::span<const ElementId> leaders, const Subgroup& h,
                                          const Subgroup& k, const SamplingOptions& opt) {
  EquivalenceReport out;
  out.greed = check_greed_compatible(code, leaders, h, k, opt);
  out.region = check_region_minimal(code, leaders, h, k, opt);
  out.combined.property = "greed_region_equivalence";
  out.combined.exhaustive = false;
  out.combined.samples_used = out.greed.samples_used + out.region.samples_used;
  if (out.greed.verdict == out.region.verdict) {
    out.combined.verdict = Verdict::Pass;
    out.combined.note = "both " + verdict_name(out.greed.verdict);
  } else {
    out.combined.verdict = Verdict::Inconclusive;
    out.combined.note = "greed " + verdict_name(out.greed.verdict) + ", region " + verdict_name(out.region.verdict) +
                        " (tolerance artifact)";
  }
  return out;
}

CheckReport check_error_control(const SubgroupChain& chain) {
  const GroupAction& g = chain.action();
  CheckReport rep;
  rep.property = "error_control";
  for (std::size_t k = 1; k <= chain.length(); ++k) {
    const auto& leaders = chain.stage(k).leaders;
    const auto steps = symmetric_step_set(g, chain.generators(k));
    const auto below = symmetric_step_set(g, chain.generators(k - 1));
    std::vector<ElementId> sorted(leaders.begin(), leaders.end());
    std::sort(sorted.begin(), sorted.end());
    for (ElementId b : steps)
      for (ElementId c : leaders) {
        if (std::binary_search(sorted.begin(), sorted.end(), g.multiply(b, c))) continue;
        const ElementId conj = g.multiply(g.inverse(c), g.multiply(b, c));
        if (in_steps(below, conj)) continue;
        rep.fail({{b, c}, std::nullopt, k, "bc not a leader and c^-1 b c not in X u X^-1 below"});
      }
  }
  return rep;
}

bool replay_error_control_witness(const SubgroupChain& chain, std::size_t stage, ElementId b, ElementId c) {
  const GroupAction& g = chain.action();
  const auto& leaders = chain.stage(stage).leaders;
  if (in_steps(leaders, g.multiply(b, c))) return false;
  const auto below = symmetric_step_set(g, chain.generators(stage - 1));
  return !in_steps(below, g.multiply(g.inverse(c), g.multiply(b, c)));
}

CheckReport check_nearest_neighbors_property(const Code& code, std::span<const ElementId> x) {
  CheckReport rep;
  rep.property = "nearest_neighbors";
  if (code.stabilizer().size() == code.action().order()) return rep;
  const auto steps = symmetric_step_set(code.action(), x);
  for (ElementId n : code.neighbor_elements())
    if (!in_steps(steps, n)) rep.fail({{n}, std::nullopt, 0, "nearest neighbor outside X u X^-1"});
  return rep;
}

namespace {

CheckReport one_factor(const SubgroupChain& chain, const std::vector<CosetLeaderGraph>& graphs, ElementId g,
                       ElementId b) {
  CheckReport rep;
  rep.property = "one_factor_error";
  const GroupAction& act = chain.action();
  const auto before = chain.factorize(g);
  const auto after = chain.factorize(act.multiply(b, g));
  std::vector<std::size_t> diff;
  for (std::size_t i = 0; i < before.size(); ++i)
    if (before[i] != after[i]) diff.push_back(i);
  if (diff.size() != 1) {
    rep.fail({{g, b}, std::nullopt, 0, std::to_string(diff.size()) + " stages differ"});
    return rep;
  }
  const std::size_t k = diff[0] + 1;
  const auto& leaders = chain.stage(k).leaders;
  if (!graphs[k - 1].adjacent(leaders[before[diff[0]]], leaders[after[diff[0]]]))
    rep.fail({{g, b}, std::nullopt, k, "differing leaders are not adjacent"});
  return rep;
}

}  // namespace

CheckReport check_one_factor_error(const SubgroupChain& chain, ElementId g, ElementId b) {
  const auto steps = symmetric_step_set(chain.action(), chain.generators(chain.length()));
  if (!in_steps(steps, b)) throw std::invalid_argument("check_one_factor_error: b is not in X u X^-1");
  if (!check_error_control(chain).passed()) {
    CheckReport rep;
    rep.property = "one_factor_error";
    rep.verdict = Verdict::Inconclusive;
    rep.note = "error control fails; hypothesis unmet";
    return rep;
  }
  return one_factor(chain, chain_graphs(chain), g, b);
}

CheckReport check_one_factor_error_all(const SubgroupChain& chain) {
  CheckReport rep;
  rep.property = "one_factor_error";
  if (!check_error_control(chain).passed()) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = "error control fails; hypothesis unmet";
    return rep;
  }
  const auto graphs = chain_graphs(chain);
  const GroupAction& act = chain.action();
  const auto steps = symmetric_step_set(act, chain.generators(chain.length()));
  for (ElementId g = 0; g < act.order(); ++g)
    for (ElementId b : steps) rep.merge(one_factor(chain, graphs, g, b));
  return rep;
}

CheckReport check_dagger(const Code& code, std::span<const ElementId> x) {
  const GroupAction& g = code.action();
  CheckReport rep;
  rep.property = "dagger";
  const auto steps = symmetric_step_set(g, x);
  ProximityIndex seen(code.dimension(), code.tolerance());
  for (ElementId w = 0; w < g.order(); ++w) {
    const double own = code.displacement(w);
    if (own <= code.tolerance()) continue;
    if (seen.find(code.image(w))) continue;
    seen.insert(code.image(w), w);
    bool improves = false;
    for (ElementId c : steps)
      if (code.displacement(g.multiply(c, w)) < own - code.tolerance()) {
        improves = true;
        break;
      }
    if (!improves) rep.fail({{w}, code.image(w), 0, "no step moves this codeword closer to x0"});
  }
  return rep;
}

bool replay_dagger_witness(const Code& code, std::span<const ElementId> x, ElementId w) {
  const GroupAction& g = code.action();
  if (code.displacement(w) <= code.tolerance()) return false;
  for (ElementId c : symmetric_step_set(g, x))
    if (code.displacement(g.multiply(c, w)) < code.displacement(w) - code.tolerance()) return false;
  return true;
}

CheckReport check_zero_noise_decoding(const SubgroupChain& chain, const Code& code) {
  const GroupAction& g = chain.action();
  CheckReport rep;
  rep.property = "zero_noise_decoding";
  for (ElementId a = 0; a < g.order(); ++a) {
    const auto res = subgroup_decode(code.codeword(a), chain, code.x0(), code.tolerance());
    if (distance(code.codeword(res.element), code.codeword(a)) > code.tolerance())
      rep.fail({{a, res.element}, std::nullopt, 0, "decoded to a different codeword"});
  }
  return rep;
}

CheckReport check_noisy_decoding(const SubgroupChain& chain, const Code& code, double radius,
                                 const SamplingOptions& opt) {
  const GroupAction& g = chain.action();
  CheckReport rep;
  rep.property = "noisy_decoding";
  rep.exhaustive = false;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const ElementId a = pick(rng);
    const CVector r = add(code.codeword(a), random_ball_vector(code.dimension(), radius, rng));
    const auto res = subgroup_decode(r, chain, code.x0(), code.tolerance());
    ++rep.samples_used;
    if (distance(code.codeword(res.element), code.codeword(a)) > code.tolerance())
      rep.fail({{a, res.element}, r, 0, "decoded to a different codeword"});
  }
  return rep;
}

std::vector<CheckReport> check_chain_stages(const SubgroupChain& chain, const Code& code,
                                            const SamplingOptions& opt) {
  std::vector<CheckReport> out;
  for (std::size_t k = 1; k <= chain.length(); ++k) {
    const Subgroup h = chain.subgroup(k - 1);
    const Subgroup kk = chain.subgroup(k);
    const auto& leaders = chain.stage(k).leaders;
    for (CheckReport rep : {check_minimal(code, leaders, h), check_greed_compatible(code, leaders, h, kk, opt),
                            check_region_minimal(code, leaders, h, kk, opt)}) {
      rep.property += "[stage " + std::to_string(k) + "]";
      for (auto& w : rep.witnesses) w.stage = k;
      out.push_back(std::move(rep));
    }
  }
  return out;
}

}  // namespace gcode
