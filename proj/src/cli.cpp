#include "gcode/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gcode/channel.hpp"
#include "gcode/decode.hpp"
#include "gcode/exceptional.hpp"
#include "gcode/gr1n.hpp"
#include "gcode/graph.hpp"
#include "gcode/group_spec.hpp"
#include "gcode/partial.hpp"

namespace gcode {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

Setup setup_from_entry(const CatalogEntry& entry, const std::string& name, ElementId h_gen,
                       const std::string& h_name, const CVector& x0) {
  Setup s;
  s.name = name;
  s.group = entry.group;
  const std::vector<ElementId> hg{h_gen};
  auto two = two_stage_chain(entry, hg, x0);
  s.chain = std::make_shared<SubgroupChain>(std::move(two.chain));
  s.ties = std::move(two.ties);
  s.code = std::make_shared<Code>(entry.group, x0);
  s.generators = entry.group->generator_ids();
  s.stage_generator_names = {{h_name}, entry.generator_names};
  return s;
}

// Parses "a:step:b" or "x,y,z".
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("grid must be start:step:stop");
    const double a = std::stod(parts[0]), step = std::stod(parts[1]), b = std::stod(parts[2]);
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(a + static_cast<double>(i) * step);
  } else {
    for (const auto& p : split(text, ',')) out.push_back(std::stod(p));
  }
  return out;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

}  // namespace

Setup resolve_setup(const std::string& source) {
  const auto colon = source.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("group must be gr1n:<r>,<n>, catalog:<name> or file:<path>");
  const std::string kind = source.substr(0, colon);
  const std::string arg = source.substr(colon + 1);
  if (kind == "gr1n") {
    const auto parts = split(arg, ',');
    if (parts.size() != 2) throw std::invalid_argument("gr1n group needs r,n");
    const int r = std::stoi(parts[0]);
    const auto n = static_cast<std::size_t>(std::stoul(parts[1]));
    if (r < 2 || n < 1) throw std::invalid_argument("gr1n group needs r >= 2 and n >= 1");
    auto g = std::make_shared<const Gr1nGroup>(r, n);
    Setup s;
    s.name = source;
    s.group = g;
    s.chain = std::make_shared<SubgroupChain>(gr1n_subgroup_chain(g));
    s.code = std::make_shared<Code>(g, standard_initial_vector(r, n));
    s.generators = s.chain->generators(s.chain->length());
    s.stage_generator_names = gr1n_chain(r, n).generator_names;
    s.gr1n = std::make_pair(r, n);
    return s;
  }
  if (kind == "catalog") {
    const CatalogEntry e = catalog_entry(arg);
    if (arg == "g4") return setup_from_entry(e, source, word_element(e, "B*A^2*B"), "C", e.vectors.at("y0"));
    return setup_from_entry(e, source, e.group->generator_ids()[0], "A", e.vectors.at("x0"));
  }
  if (kind == "file") {
    const CatalogEntry e = load_entry(arg);
    if (e.vectors.empty()) throw std::invalid_argument("group file has no vectors");
    const CVector x0 = e.vectors.count("x0") ? e.vectors.at("x0") : e.vectors.begin()->second;
    return setup_from_entry(e, source, e.group->generator_ids()[0], e.generator_names[0], normalized(x0));
  }
  throw std::invalid_argument("unknown group source: " + kind);
}

std::vector<CheckReport> run_verification(const Setup& setup, const VerifyOptions& opt) {
  const SubgroupChain& chain = *setup.chain;
  const Code& code = *setup.code;
  const GroupAction& g = *setup.group;
  std::vector<CheckReport> out;
  for (std::size_t k = 1; k <= chain.length(); ++k) {
    CheckReport rep = check_minimal(code, chain.stage(k).leaders, chain.subgroup(k - 1));
    rep.property += "[stage " + std::to_string(k) + "]";
    for (auto& w : rep.witnesses) w.stage = k;
    out.push_back(std::move(rep));
  }
  if (g.order() <= 100000) out.push_back(check_induced_minimal(chain, code));
  out.push_back(check_error_control(chain));
  out.push_back(check_nearest_neighbors_property(code, setup.generators));
  if (!opt.all) return out;

  const SamplingOptions sampling{opt.samples, opt.seed, 0.75};
  for (std::size_t k = 1; k <= chain.length(); ++k) {
    const Subgroup h = chain.subgroup(k - 1);
    const Subgroup kk = chain.subgroup(k);
    auto eq = check_greed_region_equivalence(code, chain.stage(k).leaders, h, kk, sampling);
    for (CheckReport* rep : {&eq.greed, &eq.region, &eq.combined}) {
      rep->property += "[stage " + std::to_string(k) + "]";
      out.push_back(std::move(*rep));
    }
  }
  if (g.order() * 2 * setup.generators.size() <= 1000000) out.push_back(check_one_factor_error_all(chain));
  if (g.order() <= 100000) {
    out.push_back(check_zero_noise_decoding(chain, code));
    const ChainDelta delta = compute_chain_delta(chain, code);
    CheckReport drep;
    drep.property = "positive_delta";
    char buf[64];
    std::snprintf(buf, sizeof buf, "delta = %.6f", delta.delta);
    drep.note = buf;
    if (delta.violation) {
      drep.fail({{delta.violation->leader, delta.violation->h}, std::nullopt, delta.violation->stage,
                 "induced leader does not move x0 strictly less than its coset-mate"});
    }
    out.push_back(drep);
    if (delta.delta > 0.0) {
      CheckReport noisy = check_noisy_decoding(chain, code, 0.5 * delta.delta, sampling);
      noisy.note = "noise radius delta/2";
      out.push_back(std::move(noisy));
    }
  }
  return out;
}

namespace {

int cmd_tables(const std::string& which, std::uint64_t trials, std::uint64_t seed, std::size_t workers,
               const std::string& path, std::ostream& out) {
  if (which == "dmin") {
    write_output(path, dmin_table_csv(dmin_table({3, 4, 5, 6, 7, 8}, {2, 3, 4})), out);
  } else if (which == "comparisons") {
    const std::vector<std::size_t> ns{4, 8, 16, 32};
    write_output(path, comparison_table_csv(comparison_table(ns, 4, trials, seed, workers)), out);
  } else {
    throw std::invalid_argument("tables: expected dmin or comparisons");
  }
  return 0;
}

int cmd_verify(const std::string& group, const VerifyOptions& opt, const std::string& path, std::ostream& out) {
  const Setup setup = resolve_setup(group);
  const auto reports = run_verification(setup, opt);
  nlohmann::json bundle;
  bundle["group"] = setup.name;
  bundle["order"] = setup.group->order();
  bundle["seed"] = opt.seed;
  bundle["reports"] = nlohmann::json::array();
  bool ok = true;
  for (const auto& rep : reports) {
    bundle["reports"].push_back(report_to_json(rep, *setup.group));
    ok = ok && rep.passed();
  }
  bundle["verdict"] = ok ? "pass" : "fail";
  write_output(path, bundle.dump(2) + "\n", out);
  return ok ? 0 : 1;
}

int cmd_simulate(const std::string& group, const std::string& snr, std::uint64_t trials, std::uint64_t seed,
                 std::size_t workers, const std::string& decoder, const std::string& path, std::ostream& out) {
  const auto grid = parse_grid(snr);
  std::unique_ptr<Scheme> scheme;
  if (group.rfind("gr1n:", 0) == 0 && decoder == "fast") {
    const auto parts = split(group.substr(5), ',');
    if (parts.size() != 2) throw std::invalid_argument("gr1n group needs r,n");
    scheme = std::make_unique<Gr1nFastScheme>(std::stoi(parts[0]), std::stoul(parts[1]));
  } else {
    const Setup s = resolve_setup(group);
    scheme = std::make_unique<ChainScheme>(s.chain, s.code, s.name, decoder == "tree");
  }
  write_output(path, sweep_csv(simulate_sweep(*scheme, grid, trials, seed, workers), seed), out);
  return 0;
}

int cmd_graph(const std::string& group, const std::string& stage, const std::string& path, std::ostream& out) {
  const Setup s = resolve_setup(group);
  const auto graphs = chain_graphs(*s.chain, s.stage_generator_names);
  std::string text;
  for (std::size_t k = 1; k <= graphs.size(); ++k) {
    if (stage != "all" && std::to_string(k) != stage) continue;
    text += graphs[k - 1].to_dot("stage " + std::to_string(k));
  }
  if (text.empty()) throw std::invalid_argument("graph: no such stage " + stage);
  write_output(path, text, out);
  return 0;
}

int cmd_partial(int r, std::size_t n, const std::string& m, double beta, const std::string& path,
                std::ostream& out) {
  PartialCodeSpec spec{r, n, {}};
  for (const auto& p : split(m, ',')) spec.m.push_back(std::stoi(p));
  spec.validate();
  const auto both = generator_distance_conventions(spec, beta);
  std::string text = generator_distance_csv({both.stated, both.scaled});
  text += "# size " + std::to_string(partial_size(spec)) + "\n";
  text += "# rows at beta_over_alpha*sqrt(2) read the stated ratio as |xi-1|-scaled\n";
  write_output(path, text, out);
  return 0;
}

int cmd_catalog_export(const std::string& dir, std::ostream& out) {
  std::filesystem::create_directories(dir);
  for (const auto& name : catalog_names()) {
    const std::string file = (std::filesystem::path(dir) / (name + ".json")).string();
    save_entry(catalog_entry(name), file);
    out << file << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group codes from finite complex isometry groups", "gcode"};
  app.require_subcommand(1);
  std::string out_path;
  std::uint64_t seed = 1;
  std::size_t workers = default_workers();

  auto* tables = app.add_subcommand("tables", "Reproduce the minimum-distance or comparison-count table");
  std::string which;
  std::uint64_t table_trials = 20000;
  tables->add_option("which", which, "dmin or comparisons")->required()->check(CLI::IsMember({"dmin", "comparisons"}));
  tables->add_option("--trials", table_trials, "Messages per row for comparisons");
  tables->add_option("--seed", seed);
  tables->add_option("--workers", workers);
  tables->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "Run the decoding-correctness checks on a group setup");
  std::string group;
  VerifyOptions vopt;
  verify->add_option("--group", group, "gr1n:<r>,<n> | catalog:<name> | file:<path>")->required();
  verify->add_flag("--all", vopt.all, "Include sampled and exhaustive decoding checks");
  verify->add_option("--samples", vopt.samples);
  verify->add_option("--seed", vopt.seed);
  verify->add_option("--out", out_path);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo error rates over an SNR grid");
  std::string snr = "0:2:20";
  std::string decoder = "fast";
  std::uint64_t trials = 10000;
  simulate->add_option("--group", group)->required();
  simulate->add_option("--snr", snr, "start:step:stop or a comma list, in dB");
  simulate->add_option("--trials", trials);
  simulate->add_option("--seed", seed);
  simulate->add_option("--workers", workers);
  simulate->add_option("--decoder", decoder)->check(CLI::IsMember({"fast", "chain", "tree"}));
  simulate->add_option("--out", out_path);

  auto* graph = app.add_subcommand("graph", "Coset leader graphs as DOT");
  std::string stage = "all";
  graph->add_option("--group", group)->required();
  graph->add_option("--stage", stage);
  graph->add_option("--out", out_path);

  auto* partial = app.add_subcommand("partial", "Divisor-chain partial codes");
  auto* analyze = partial->add_subcommand("analyze", "Generator distance table as CSV");
  partial->require_subcommand(1);
  int pr = 16;
  std::size_t pn = 4;
  std::string pm = "1,1,1,1";
  double beta = 0.2759;
  analyze->add_option("--r", pr)->required();
  analyze->add_option("--n", pn)->required();
  analyze->add_option("--m", pm, "m_1,...,m_n")->required();
  analyze->add_option("--beta-alpha", beta);
  analyze->add_option("--out", out_path);

  auto* catalog = app.add_subcommand("catalog", "Exceptional-group catalog");
  auto* exp = catalog->add_subcommand("export", "Write the catalog as group-specification JSON");
  catalog->require_subcommand(1);
  std::string dir = "catalog";
  exp->add_option("--dir", dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  if (workers == 0) workers = 1;

  try {
    if (*tables) return cmd_tables(which, table_trials, seed, workers, out_path, out);
    if (*verify) return cmd_verify(group, vopt, out_path, out);
    if (*simulate) return cmd_simulate(group, snr, trials, seed, workers, decoder, out_path, out);
    if (*graph) return cmd_graph(group, stage, out_path, out);
    if (*analyze) return cmd_partial(pr, pn, pm, beta, out_path, out);
    if (*exp) return cmd_catalog_export(dir, out);
  } catch (const std::exception& e) {
    err << "gcode: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace gcode
