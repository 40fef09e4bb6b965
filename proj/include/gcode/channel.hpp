#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>

#include "gcode/decode.hpp"

namespace gcode {

// i.i.d. N(0, sigma^2) real and imaginary parts.
CVector awgn(std::size_t dim, double sigma, std::mt19937_64& rng);

// SNR in dB = -20 log10(sigma sqrt(2 dim)) for unit-norm codewords.
double sigma_from_snr_db(double snr_db, std::size_t dim);
double snr_db_from_sigma(double sigma, std::size_t dim);

std::uint64_t splitmix64(std::uint64_t x);
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

// Worker count from GCODE_WORKERS, else the hardware concurrency (at least 1).
std::size_t default_workers();

struct SchemeDecode {
  std::vector<std::size_t> digits;  // per stage
  std::size_t comparisons = 0;
  std::size_t ties = 0;
};

// A message space addressed by per-stage digits, an encoder and a decoder.
class Scheme {
 public:
  virtual ~Scheme() = default;
  virtual std::string name() const = 0;
  virtual std::vector<std::size_t> radices() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual CVector encode(std::span<const std::size_t> digits) const = 0;
  virtual SchemeDecode decode(std::span<const Complex> r) const = 0;
  // Whether two messages share a codeword.
  virtual bool equivalent(std::span<const std::size_t> a, std::span<const std::size_t> b) const;
};

// The standard G(r,1,n) code with phase rounding and insertion sort.
class Gr1nFastScheme final : public Scheme {
 public:
  Gr1nFastScheme(int r, std::size_t n);
  Gr1nFastScheme(int r, std::size_t n, CVector x0);

  std::string name() const override;
  std::vector<std::size_t> radices() const override;
  std::size_t dimension() const override { return n_; }
  CVector encode(std::span<const std::size_t> digits) const override;
  SchemeDecode decode(std::span<const Complex> r) const override;
  const CVector& x0() const { return x0_; }

 private:
  int r_;
  std::size_t n_;
  CVector x0_;
};

// Generic greedy subgroup decoding over an arbitrary chain.
class ChainScheme final : public Scheme {
 public:
  ChainScheme(std::shared_ptr<const SubgroupChain> chain, std::shared_ptr<const Code> code, std::string name = "chain",
              bool use_tree = false);

  std::string name() const override { return name_; }
  std::vector<std::size_t> radices() const override { return chain_->radices(); }
  std::size_t dimension() const override { return code_->dimension(); }
  CVector encode(std::span<const std::size_t> digits) const override;
  SchemeDecode decode(std::span<const Complex> r) const override;
  bool equivalent(std::span<const std::size_t> a, std::span<const std::size_t> b) const override;

 private:
  std::shared_ptr<const SubgroupChain> chain_;
  std::shared_ptr<const Code> code_;
  std::string name_;
  std::optional<StageNavigator> nav_;
};

struct SimStats {
  std::uint64_t trials = 0;
  std::uint64_t word_errors = 0;
  std::vector<std::uint64_t> factor_histogram;  // index = number of differing stages, sums to trials
  std::vector<std::uint64_t> stage_errors;      // per stage, how often its digit was wrong
  std::map<std::size_t, std::uint64_t> comparison_histogram;
  std::uint64_t comparison_total = 0;
  std::uint64_t ties = 0;

  double wer() const;
  double one_factor_fraction() const;  // among word errors
  double mean_comparisons() const;
  std::size_t comparison_percentile(double p) const;
  void merge(const SimStats& other);
  bool operator==(const SimStats&) const = default;
};

struct ChannelConfig {
  double sigma = 0.0;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
};

// Trial t draws its message and noise from trial_rng(seed, t), so results do not depend on workers.
SimStats simulate(const Scheme& scheme, const ChannelConfig& config);

struct SweepRow {
  double snr_db = 0.0;
  SimStats stats;
};

std::vector<SweepRow> simulate_sweep(const Scheme& scheme, std::span<const double> snr_db, std::uint64_t trials,
                                     std::uint64_t seed, std::size_t workers);
std::string sweep_csv(const std::vector<SweepRow>& rows, std::uint64_t seed);

// Mean comparison count of the fast decoder over random messages without noise.
double measured_comparisons(int r, std::size_t n, std::uint64_t trials, std::uint64_t seed, std::size_t workers = 1);

struct ComparisonRow {
  std::size_t n = 0;
  double measured = 0.0;
  double reference = 0.0;  // n + log2(n!)
};
std::vector<ComparisonRow> comparison_table(std::span<const std::size_t> ns, int r, std::uint64_t trials,
                                            std::uint64_t seed, std::size_t workers = 1);
std::string comparison_table_csv(const std::vector<ComparisonRow>& rows);

}  // namespace gcode
