#include "gcode/gr1n.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gcode {

namespace {

int mod(long x, int r) {
  long m = x % r;
  return static_cast<int>(m < 0 ? m + r : m);
}

void require_compatible(const MonomialElement& g, const MonomialElement& h) {
  if (g.modulus() != h.modulus() || g.dimension() != h.dimension())
    throw std::invalid_argument("MonomialElement: mismatched r or n");
}

std::vector<std::size_t> parse_list(std::string_view s) {
  std::vector<std::size_t> out;
  std::string item;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(std::stoul(item));
      item.clear();
    } else if (ch != ' ') {
      item.push_back(ch);
    }
  }
  if (!item.empty()) out.push_back(std::stoul(item));
  return out;
}

std::string_view field(std::string_view text, std::string_view key) {
  const auto pos = text.find(key);
  if (pos == std::string_view::npos) throw std::invalid_argument("MonomialElement::parse: missing " + std::string(key));
  auto rest = text.substr(pos + key.size());
  const auto end = rest.find(';');
  return end == std::string_view::npos ? rest : rest.substr(0, end);
}

}  // namespace

Complex root_of_unity(int r, long k) {
  const int e = mod(k, r);
  if (e == 0) return {1.0, 0.0};
  if (4 * e == r) return {0.0, 1.0};
  if (2 * e == r) return {-1.0, 0.0};
  if (4 * e == 3 * r) return {0.0, -1.0};
  return std::polar(1.0, 2.0 * kPi * e / r);
}

MonomialElement::MonomialElement(int r, std::vector<std::size_t> sigma, std::vector<int> k)
    : r_(r), sigma_(std::move(sigma)), k_(std::move(k)) {
  if (r < 1) throw std::invalid_argument("MonomialElement: r must be positive");
  if (sigma_.size() != k_.size()) throw std::invalid_argument("MonomialElement: sigma and k differ in length");
  std::vector<char> hit(sigma_.size(), 0);
  for (std::size_t s : sigma_) {
    if (s >= sigma_.size() || hit[s]) throw std::invalid_argument("MonomialElement: sigma is not a permutation");
    hit[s] = 1;
  }
  for (int& e : k_) e = mod(e, r_);
}

MonomialElement MonomialElement::identity(int r, std::size_t n) {
  std::vector<std::size_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = i;
  return MonomialElement(r, std::move(s), std::vector<int>(n, 0));
}

MonomialElement MonomialElement::a(int r, std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw std::out_of_range("a_i: index out of range");
  auto g = identity(r, n);
  g.k_[i - 1] = mod(1, r);
  return g;
}

MonomialElement MonomialElement::b(int r, std::size_t n, std::size_t j) {
  if (j < 1 || j >= n) throw std::out_of_range("b_j: index out of range");
  auto g = identity(r, n);
  std::swap(g.sigma_[j - 1], g.sigma_[j]);
  return g;
}

bool MonomialElement::is_identity() const {
  for (std::size_t i = 0; i < sigma_.size(); ++i)
    if (sigma_[i] != i || k_[i] != 0) return false;
  return true;
}

MonomialElement MonomialElement::operator*(const MonomialElement& h) const {
  require_compatible(*this, h);
  MonomialElement out;
  out.r_ = r_;
  const std::size_t n = sigma_.size();
  out.sigma_.resize(n);
  out.k_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.sigma_[i] = h.sigma_[sigma_[i]];
    out.k_[i] = (k_[i] + h.k_[sigma_[i]]) % r_;
  }
  return out;
}

MonomialElement MonomialElement::inverse() const {
  MonomialElement out;
  out.r_ = r_;
  const std::size_t n = sigma_.size();
  out.sigma_.resize(n);
  out.k_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.sigma_[sigma_[i]] = i;
    out.k_[sigma_[i]] = mod(-k_[i], r_);
  }
  return out;
}

MonomialElement MonomialElement::pow(long e) const {
  MonomialElement base = e < 0 ? inverse() : *this;
  unsigned long p = static_cast<unsigned long>(e < 0 ? -e : e);
  MonomialElement acc = identity(r_, dimension());
  while (p) {
    if (p & 1) acc = acc * base;
    base = base * base;
    p >>= 1;
  }
  return acc;
}

CVector MonomialElement::apply(std::span<const Complex> v) const {
  if (v.size() != sigma_.size()) throw std::invalid_argument("MonomialElement::apply: dimension mismatch");
  CVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = root_of_unity(r_, k_[i]) * v[sigma_[i]];
  return out;
}

MonomialMap MonomialElement::to_map() const {
  MonomialMap m;
  m.source = sigma_;
  m.phase.resize(sigma_.size());
  for (std::size_t i = 0; i < sigma_.size(); ++i) m.phase[i] = root_of_unity(r_, k_[i]);
  return m;
}

CMatrix MonomialElement::to_matrix() const { return LinearMap(to_map()).to_matrix(); }

std::string MonomialElement::to_string() const {
  std::ostringstream os;
  os << "perm=[";
  for (std::size_t i = 0; i < sigma_.size(); ++i) os << (i ? "," : "") << sigma_[i] + 1;
  os << "];k=[";
  for (std::size_t i = 0; i < k_.size(); ++i) os << (i ? "," : "") << k_[i];
  os << "];r=" << r_;
  return os.str();
}

MonomialElement MonomialElement::parse(std::string_view text) {
  auto strip = [](std::string_view s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
      throw std::invalid_argument("MonomialElement::parse: expected [..]");
    return s.substr(1, s.size() - 2);
  };
  auto perm = parse_list(strip(field(text, "perm=")));
  auto ks = parse_list(strip(field(text, "k=")));
  const int r = std::stoi(std::string(field(text, "r=")));
  for (auto& p : perm) {
    if (p == 0) throw std::invalid_argument("MonomialElement::parse: perm is 1-based");
    --p;
  }
  std::vector<int> k(ks.begin(), ks.end());
  return MonomialElement(r, std::move(perm), std::move(k));
}

std::uint64_t gr1n_order(int r, std::size_t n) {
  std::uint64_t order = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    if (order > std::numeric_limits<std::uint64_t>::max() / (static_cast<std::uint64_t>(r) * j))
      throw std::overflow_error("gr1n_order: overflow");
    order *= static_cast<std::uint64_t>(r) * j;
  }
  return order;
}

std::size_t stage_radix(int r, std::size_t s) {
  if (s == 0) throw std::out_of_range("stage_radix: stages start at 1");
  if (s == 1 || s % 2 == 0) return static_cast<std::size_t>(r);
  return (s - 1) / 2 + 1;
}

MonomialElement stage_leader(int r, std::size_t n, std::size_t s, std::size_t t) {
  if (s < 1 || s > 2 * n - 1) throw std::out_of_range("stage_leader: stage out of range");
  if (t >= stage_radix(r, s)) throw std::out_of_range("stage_leader: digit out of range");
  if (s == 1) return MonomialElement::a(r, n, 1).pow(static_cast<long>(t));
  if (s % 2 == 0) return MonomialElement::a(r, n, s / 2 + 1).pow(static_cast<long>(t));
  const std::size_t l = (s - 1) / 2;
  auto g = MonomialElement::identity(r, n);
  for (std::size_t j = l + 1 - t; j <= l; ++j) g = g * MonomialElement::b(r, n, j);
  return g;
}

bool in_stage_subgroup(const MonomialElement& g, std::size_t s) {
  const std::size_t n = g.dimension();
  // Coordinates from `fixed` on are untouched by sigma; phases vanish from `phase_free` on.
  std::size_t fixed, phase_free;
  if (s == 0) {
    fixed = 0;
    phase_free = 0;
  } else if (s % 2 == 1) {
    fixed = (s + 1) / 2;
    phase_free = fixed;
  } else {
    fixed = s / 2;
    phase_free = s / 2 + 1;
  }
  for (std::size_t i = fixed; i < n; ++i)
    if (g.sigma()[i] != i) return false;
  for (std::size_t i = phase_free; i < n; ++i)
    if (g.exponents()[i] != 0) return false;
  return true;
}

std::vector<std::size_t> form_to_stage_digits(const CanonicalForm& f) {
  const std::size_t n = f.k.size();
  std::vector<std::size_t> d;
  d.reserve(2 * n - 1);
  d.push_back(static_cast<std::size_t>(f.k[0]));
  for (std::size_t j = 2; j <= n; ++j) {
    d.push_back(static_cast<std::size_t>(f.k[j - 1]));
    d.push_back(j - f.cycle_start[j - 2]);
  }
  return d;
}

CanonicalForm stage_digits_to_form(std::span<const std::size_t> digits, std::size_t n) {
  if (n == 0 || digits.size() != 2 * n - 1) throw std::invalid_argument("stage_digits_to_form: wrong digit count");
  CanonicalForm f;
  f.k.resize(n);
  f.cycle_start.resize(n - 1);
  f.k[0] = static_cast<int>(digits[0]);
  for (std::size_t j = 2; j <= n; ++j) {
    f.k[j - 1] = static_cast<int>(digits[2 * j - 3]);
    const std::size_t t = digits[2 * j - 2];
    if (t >= j) throw std::invalid_argument("stage_digits_to_form: cycle digit out of range");
    f.cycle_start[j - 2] = j - t;
  }
  return f;
}

std::vector<std::size_t> factorize_stage_digits(const MonomialElement& g) {
  const int r = g.modulus();
  const std::size_t n = g.dimension();
  const std::size_t m = 2 * n - 1;
  std::vector<std::size_t> digits(m, 0);
  MonomialElement h = g;
  for (std::size_t s = m; s >= 1; --s) {
    if (s == 1 || s % 2 == 0) {
      // h in G_s has only slot `slot` left to clear among the top coordinates.
      const std::size_t slot = s == 1 ? 0 : s / 2;
      const int e = h.exponents()[slot];
      digits[s - 1] = static_cast<std::size_t>(e);
      h = MonomialElement::a(r, n, slot + 1).pow(-e) * h;
    } else {
      const std::size_t radix = stage_radix(r, s);
      bool found = false;
      for (std::size_t t = 0; t < radix && !found; ++t) {
        MonomialElement cand = stage_leader(r, n, s, t).inverse() * h;
        if (in_stage_subgroup(cand, s - 1)) {
          digits[s - 1] = t;
          h = std::move(cand);
          found = true;
        }
      }
      if (!found) throw std::logic_error("factorize: no leader matched");
    }
  }
  if (!h.is_identity()) throw std::logic_error("factorize: residue is not the identity");
  return digits;
}

CanonicalForm factorize(const MonomialElement& g) { return stage_digits_to_form(factorize_stage_digits(g), g.dimension()); }

MonomialElement compose_stage_digits(int r, std::size_t n, std::span<const std::size_t> digits) {
  if (digits.size() != 2 * n - 1) throw std::invalid_argument("compose: wrong digit count");
  auto g = MonomialElement::identity(r, n);
  for (std::size_t s = 1; s <= digits.size(); ++s) g = stage_leader(r, n, s, digits[s - 1]) * g;
  return g;
}

MonomialElement compose(int r, const CanonicalForm& f) {
  return compose_stage_digits(r, f.k.size(), form_to_stage_digits(f));
}

std::uint64_t element_to_index(const MonomialElement& g) {
  const auto f = factorize(g);
  const std::size_t n = f.k.size();
  std::uint64_t idx = 0;
  for (std::size_t j = n; j >= 2; --j) idx = idx * j + (j - f.cycle_start[j - 2]);
  for (std::size_t i = n; i >= 1; --i) idx = idx * static_cast<std::uint64_t>(g.modulus()) + f.k[i - 1];
  return idx;
}

MonomialElement index_to_element(int r, std::size_t n, std::uint64_t index) {
  if (index >= gr1n_order(r, n)) throw std::out_of_range("index_to_element: index out of range");
  CanonicalForm f;
  f.k.resize(n);
  f.cycle_start.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    f.k[i] = static_cast<int>(index % static_cast<std::uint64_t>(r));
    index /= static_cast<std::uint64_t>(r);
  }
  for (std::size_t j = 2; j <= n; ++j) {
    f.cycle_start[j - 2] = j - static_cast<std::size_t>(index % j);
    index /= j;
  }
  return compose(r, f);
}

std::vector<MonomialElement> full_generator_set(int r, std::size_t n) {
  std::vector<MonomialElement> x;
  for (std::size_t i = 1; i <= n; ++i) x.push_back(MonomialElement::a(r, n, i));
  for (std::size_t j = 1; j < n; ++j) x.push_back(MonomialElement::b(r, n, j));
  return x;
}

Gr1nChain gr1n_chain(int r, std::size_t n) {
  if (r < 2 || n < 1) throw std::invalid_argument("gr1n_chain: need r >= 2 and n >= 1");
  Gr1nChain c;
  c.r = r;
  c.n = n;
  for (std::size_t s = 1; s <= 2 * n - 1; ++s) {
    std::vector<MonomialElement> leaders;
    for (std::size_t t = 0; t < stage_radix(r, s); ++t) leaders.push_back(stage_leader(r, n, s, t));
    c.leaders.push_back(std::move(leaders));

    const std::size_t l = s == 1 ? 1 : (s % 2 == 1 ? (s + 1) / 2 : s / 2);
    std::vector<MonomialElement> gens{MonomialElement::a(r, n, 1)};
    std::vector<std::string> names{"a1"};
    for (std::size_t j = 1; j + 1 <= l; ++j) {
      gens.push_back(MonomialElement::b(r, n, j));
      names.push_back("b" + std::to_string(j));
    }
    if (s % 2 == 0) {
      gens.push_back(MonomialElement::a(r, n, l + 1));
      names.push_back("a" + std::to_string(l + 1));
    }
    c.generators.push_back(std::move(gens));
    c.generator_names.push_back(std::move(names));
  }
  return c;
}

Gr1nGroup::Gr1nGroup(int r, std::size_t n) : r_(r), n_(n) {
  if (r < 1 || n < 1) throw std::invalid_argument("Gr1nGroup: need r >= 1 and n >= 1");
  const std::uint64_t order = gr1n_order(r, n);
  if (order > 50'000'000) throw std::invalid_argument("Gr1nGroup: group too large to address by id");
  order_ = static_cast<std::size_t>(order);
}

ElementId Gr1nGroup::multiply(ElementId a, ElementId b) const {
  return element_to_index(element(a) * element(b));
}

ElementId Gr1nGroup::inverse(ElementId a) const { return element_to_index(element(a).inverse()); }

LinearMap Gr1nGroup::linear_map(ElementId a) const { return LinearMap(element(a).to_map()); }

std::string Gr1nGroup::label(ElementId a) const { return element(a).to_string(); }

CVector Gr1nGroup::apply(ElementId a, std::span<const Complex> v) const { return element(a).apply(v); }

ElementId Gr1nGroup::id_of(const MonomialElement& g) const {
  if (g.modulus() != r_ || g.dimension() != n_) throw std::invalid_argument("Gr1nGroup::id_of: wrong r or n");
  return element_to_index(g);
}

SubgroupChain gr1n_subgroup_chain(const std::shared_ptr<const Gr1nGroup>& group) {
  const auto t1 = gr1n_chain(group->r(), group->n());
  std::vector<ChainStage> stages;
  for (std::size_t s = 0; s < t1.leaders.size(); ++s) {
    ChainStage st;
    for (const auto& c : t1.leaders[s]) st.leaders.push_back(group->id_of(c));
    for (const auto& x : t1.generators[s]) st.generators.push_back(group->id_of(x));
    stages.push_back(std::move(st));
  }
  return SubgroupChain(group, std::move(stages));
}

bool in_grpn(const MonomialElement& g, int p) {
  if (p < 1 || g.modulus() % p != 0) throw std::invalid_argument("in_grpn: p must divide r");
  long sum = 0;
  for (int e : g.exponents()) sum += e;
  return sum % p == 0;
}

}  // namespace gcode
