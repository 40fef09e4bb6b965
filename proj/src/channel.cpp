#include "gcode/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace gcode {

CVector awgn(std::size_t dim, double sigma, std::mt19937_64& rng) {
  if (sigma < 0.0) throw std::invalid_argument("awgn: sigma must be non-negative");
  CVector n(dim);
  if (sigma == 0.0) return n;
  std::normal_distribution<double> gauss(0.0, sigma);
  for (auto& z : n) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = {re, im};
  }
  return n;
}

double sigma_from_snr_db(double snr_db, std::size_t dim) {
  return std::pow(10.0, -snr_db / 20.0) / std::sqrt(2.0 * static_cast<double>(dim));
}

double snr_db_from_sigma(double sigma, std::size_t dim) {
  return -20.0 * std::log10(sigma * std::sqrt(2.0 * static_cast<double>(dim)));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(trial)));
}

std::size_t default_workers() {
  if (const char* env = std::getenv("GCODE_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

bool Scheme::equivalent(std::span<const std::size_t> a, std::span<const std::size_t> b) const {
  return distance(encode(a), encode(b)) <= kTolerance;
}

Gr1nFastScheme::Gr1nFastScheme(int r, std::size_t n) : Gr1nFastScheme(r, n, standard_initial_vector(r, n)) {}

Gr1nFastScheme::Gr1nFastScheme(int r, std::size_t n, CVector x0) : r_(r), n_(n), x0_(std::move(x0)) {
  if (x0_.size() != n_) throw std::invalid_argument("Gr1nFastScheme: x0 dimension mismatch");
}

std::string Gr1nFastScheme::name() const { return "gr1n:" + std::to_string(r_) + "," + std::to_string(n_); }

std::vector<std::size_t> Gr1nFastScheme::radices() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 1; s <= 2 * n_ - 1; ++s) out.push_back(stage_radix(r_, s));
  return out;
}

CVector Gr1nFastScheme::encode(std::span<const std::size_t> digits) const {
  return compose_stage_digits(r_, n_, digits).inverse().apply(x0_);
}

SchemeDecode Gr1nFastScheme::decode(std::span<const Complex> r) const {
  auto res = fast_gr1n_decode(r, r_, x0_);
  return {std::move(res.leaders), res.comparisons, res.ties};
}

ChainScheme::ChainScheme(std::shared_ptr<const SubgroupChain> chain, std::shared_ptr<const Code> code,
                         std::string name, bool use_tree)
    : chain_(std::move(chain)), code_(std::move(code)), name_(std::move(name)) {
  if (use_tree) nav_.emplace(*chain_);
}

CVector ChainScheme::encode(std::span<const std::size_t> digits) const {
  return code_->codeword(chain_->compose(digits));
}

SchemeDecode ChainScheme::decode(std::span<const Complex> r) const {
  auto res = nav_ ? subgroup_decode(r, *chain_, code_->x0(), *nav_, code_->tolerance())
                  : subgroup_decode(r, *chain_, code_->x0(), code_->tolerance());
  return {std::move(res.leaders), res.comparisons, res.ties};
}

bool ChainScheme::equivalent(std::span<const std::size_t> a, std::span<const std::size_t> b) const {
  return distance(encode(a), encode(b)) <= code_->tolerance();
}

double SimStats::wer() const { return trials ? static_cast<double>(word_errors) / static_cast<double>(trials) : 0.0; }

double SimStats::one_factor_fraction() const {
  if (word_errors == 0) return 0.0;
  const std::uint64_t one = factor_histogram.size() > 1 ? factor_histogram[1] : 0;
  return static_cast<double>(one) / static_cast<double>(word_errors);
}

double SimStats::mean_comparisons() const {
  return trials ? static_cast<double>(comparison_total) / static_cast<double>(trials) : 0.0;
}

std::size_t SimStats::comparison_percentile(double p) const {
  if (trials == 0) return 0;
  const auto target = static_cast<std::uint64_t>(std::ceil(p / 100.0 * static_cast<double>(trials)));
  std::uint64_t seen = 0;
  for (const auto& [c, count] : comparison_histogram) {
    seen += count;
    if (seen >= std::max<std::uint64_t>(target, 1)) return c;
  }
  return comparison_histogram.rbegin()->first;
}

void SimStats::merge(const SimStats& other) {
  trials += other.trials;
  word_errors += other.word_errors;
  if (factor_histogram.size() < other.factor_histogram.size()) factor_histogram.resize(other.factor_histogram.size());
  for (std::size_t i = 0; i < other.factor_histogram.size(); ++i) factor_histogram[i] += other.factor_histogram[i];
  if (stage_errors.size() < other.stage_errors.size()) stage_errors.resize(other.stage_errors.size());
  for (std::size_t i = 0; i < other.stage_errors.size(); ++i) stage_errors[i] += other.stage_errors[i];
  for (const auto& [c, count] : other.comparison_histogram) comparison_histogram[c] += count;
  comparison_total += other.comparison_total;
  ties += other.ties;
}

namespace {

SimStats run_block(const Scheme& scheme, const ChannelConfig& config, std::uint64_t begin, std::uint64_t end) {
  const auto radix = scheme.radices();
  SimStats st;
  st.factor_histogram.assign(radix.size() + 1, 0);
  st.stage_errors.assign(radix.size(), 0);
  std::vector<std::size_t> msg(radix.size());
  for (std::uint64_t t = begin; t < end; ++t) {
    auto rng = trial_rng(config.seed, t);
    for (std::size_t s = 0; s < radix.size(); ++s)
      msg[s] = std::uniform_int_distribution<std::size_t>(0, radix[s] - 1)(rng);
    const CVector x = scheme.encode(msg);
    const CVector r = add(x, awgn(x.size(), config.sigma, rng));
    const SchemeDecode d = scheme.decode(r);
    ++st.trials;
    st.comparison_total += d.comparisons;
    ++st.comparison_histogram[d.comparisons];
    st.ties += d.ties;
    if (d.digits == msg || scheme.equivalent(d.digits, msg)) {
      ++st.factor_histogram[0];
      continue;
    }
    ++st.word_errors;
    std::size_t differ = 0;
    for (std::size_t s = 0; s < radix.size(); ++s)
      if (d.digits[s] != msg[s]) {
        ++differ;
        ++st.stage_errors[s];
      }
    ++st.factor_histogram[differ];
  }
  return st;
}

}  // namespace

SimStats simulate(const Scheme& scheme, const ChannelConfig& config) {
  if (config.sigma < 0.0) throw std::invalid_argument("simulate: sigma must be non-negative");
  if (config.trials < 1) throw std::invalid_argument("simulate: trials must be at least 1");
  const std::size_t workers = std::clamp<std::size_t>(config.workers, 1, config.trials);
  std::vector<SimStats> parts(workers);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (config.trials + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min<std::uint64_t>(config.trials, w * chunk);
    const std::uint64_t end = std::min<std::uint64_t>(config.trials, begin + chunk);
    if (workers == 1) {
      parts[w] = run_block(scheme, config, begin, end);
    } else {
      pool.emplace_back([&, w, begin, end] { parts[w] = run_block(scheme, config, begin, end); });
    }
  }
  for (auto& th : pool) th.join();
  SimStats total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

std::vector<SweepRow> simulate_sweep(const Scheme& scheme, std::span<const double> snr_db, std::uint64_t trials,
                                     std::uint64_t seed, std::size_t workers) {
  std::vector<SweepRow> rows;
  for (double snr : snr_db) {
    ChannelConfig cfg{sigma_from_snr_db(snr, scheme.dimension()), trials, seed, workers};
    rows.push_back({snr, simulate(scheme, cfg)});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, std::uint64_t seed) {
  std::ostringstream os;
  os << "snr_db,wer,one_factor_fraction,mean_comparisons,trials,seed\n";
  char buf[256];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.4f,%.6f,%.6f,%.4f,%llu,%llu\n", row.snr_db, row.stats.wer(),
                  row.stats.one_factor_fraction(), row.stats.mean_comparisons(),
                  static_cast<unsigned long long>(row.stats.trials), static_cast<unsigned long long>(seed));
    os << buf;
  }
  return os.str();
}

double measured_comparisons(int r, std::size_t n, std::uint64_t trials, std::uint64_t seed, std::size_t workers) {
  const Gr1nFastScheme scheme(r, n);
  return simulate(scheme, {0.0, trials, seed, workers}).mean_comparisons();
}

std::vector<ComparisonRow> comparison_table(std::span<const std::size_t> ns, int r, std::uint64_t trials,
                                            std::uint64_t seed, std::size_t workers) {
  std::vector<ComparisonRow> rows;
  for (std::size_t n : ns) {
    const double ref = static_cast<double>(n) + std::lgamma(static_cast<double>(n) + 1.0) / std::log(2.0);
    rows.push_back({n, measured_comparisons(r, n, trials, seed, workers), ref});
  }
  return rows;
}

std::string comparison_table_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream os;
  os << "n,measured,reference\n";
  char buf[128];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.2f,%.2f\n", row.n, row.measured, row.reference);
    os << buf;
  }
  return os.str();
}

}  // namespace gcode
