// Command-line front end: enumeration dumps, formula evaluation, lattice
// sampling, and seeded experiments with machine-readable output.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rogers/centered.hpp"
#include "rogers/experiments.hpp"
#include "rogers/lattice.hpp"
#include "rogers/lifts.hpp"
#include "rogers/moments.hpp"
#include "rogers/partition.hpp"
#include "rogers/version.hpp"

namespace {

using rogers::Rat;

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<Rat> parse_rational_list(const std::string& s) {
  std::vector<Rat> out;
  for (auto& tok : split_commas(s)) out.push_back(rogers::parse_rational(tok));
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  for (auto& tok : split_commas(s)) out.push_back(std::stoll(tok));
  return out;
}

/// Flat key=value config file; '#' starts a comment. Returns argv-style
/// tokens so command-line flags can override file values.
std::vector<std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::FileError("config file not found: " + path);
  std::vector<std::string> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto ltrim = line.find_first_not_of(" \t\r");
    if (ltrim == std::string::npos) continue;
    auto rtrim = line.find_last_not_of(" \t\r");
    line = line.substr(ltrim, rtrim - ltrim + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= line.size() ||
        line.find('=', eq + 1) != std::string::npos) {
      throw CLI::ParseError("config parse error at line " + std::to_string(line_no) + ": '" +
                                line + "'",
                            2);
    }
    auto key = line.substr(0, eq);
    auto value = line.substr(eq + 1);
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t");
      auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    key = trim(key);
    value = trim(value);
    if (key.empty() || value.empty())
      throw CLI::ParseError("config parse error at line " + std::to_string(line_no), 2);
    tokens.push_back("--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
  }
}

struct CommonFlags {
  int d = 10;
  int k = 2;
  std::int64_t q = 3;
  std::string p_vec_str;
  std::string volume = "100";
  std::string volumes;
  std::string lambda = "1";
  std::int64_t samples = 1000;
  std::uint64_t seed = 1;
  std::int64_t prime = 1000003;
  std::string t_grid;
  int n_points = 5;
  std::int64_t u_max = 2;
  std::int64_t t_max = 50;
  std::int64_t entry_bound = 2;
  std::int64_t e_max = 64;
  std::int64_t mc_budget = 0;
  int workers = 1;
  std::string out_path;
  std::string format = "json";
  bool check = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--d", f.d, "ambient dimension");
  cmd->add_option("--k", f.k, "moment order / row count");
  cmd->add_option("--q", f.q, "congruence denominator");
  cmd->add_option("--p-vec", f.p_vec_str, "congruence numerator vector, comma separated");
  cmd->add_option("--volume", f.volume, "region volume (rational)");
  cmd->add_option("--volumes", f.volumes, "volume list, comma separated rationals");
  cmd->add_option("--lambda", f.lambda, "Poisson intensity (rational)");
  cmd->add_option("--samples", f.samples, "Monte Carlo sample count");
  cmd->add_option("--seed", f.seed, "master seed (env ROGERS_LAB_SEED default)");
  cmd->add_option("--prime", f.prime, "Hecke sampler prime");
  cmd->add_option("--t-grid", f.t_grid, "functional CLT times, comma separated rationals");
  cmd->add_option("--n-points", f.n_points, "Poisson experiment point count");
  cmd->add_option("--u-max", f.u_max, "denominator window");
  cmd->add_option("--t-max", f.t_max, "rank-one series window");
  cmd->add_option("--entry-bound", f.entry_bound, "matrix entry window");
  cmd->add_option("--e-max", f.e_max, "N_D series truncation");
  cmd->add_option("--mc-budget", f.mc_budget, "samples per non-exact term integral");
  cmd->add_option("--workers", f.workers, "worker threads");
  cmd->add_option("--out", f.out_path, "output file (default stdout)");
  cmd->add_option("--format", f.format, "json|csv|table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  cmd->add_flag("--check", f.check, "exit 3 when an acceptance band fails");
}

rogers::Truncation truncation_from(const CommonFlags& f) {
  rogers::Truncation t;
  t.u_max = f.u_max;
  t.t_max = f.t_max;
  t.entry_bound = f.entry_bound;
  t.e_max = f.e_max;
  t.mc_budget = f.mc_budget;
  return t;
}

int emit_report(const rogers::Report& rep, const CommonFlags& f) {
  if (f.format == "table") {
    emit(rep.to_table(), f.out_path);
  } else {
    emit(rep.to_json().dump(2), f.out_path);
  }
  if (f.check && !rep.all_pass()) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rogers_lab: exact moment combinatorics and random-lattice experiments"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", rogers::kVersion);

  CommonFlags f;
  if (const char* env_seed = std::getenv("ROGERS_LAB_SEED")) f.seed = std::stoull(env_seed);

  std::string config_path;
  app.add_option("--config", config_path, "flat key=value config file; flags override");

  // ---------------------------------------------------------------- enumerate
  auto* enumerate = app.add_subcommand("enumerate", "dump matrix families as JSON lines");
  std::string family = "admissible";
  int en_r = 1, en_m = 2, en_n = 1;
  std::int64_t en_u = 1, en_bound = 1, en_ell = 2;
  std::string en_context = "affine";
  enumerate->add_option("--family", family,
                        "admissible|affine-lift|congruence-rank1|congruence-lift|main|centered")
      ->check(CLI::IsMember({"admissible", "affine-lift", "congruence-rank1", "congruence-lift",
                             "main", "centered"}));
  enumerate->add_option("--r", en_r, "column count");
  enumerate->add_option("--m", en_m, "lifted column count");
  enumerate->add_option("--n", en_n, "centered-term rank");
  enumerate->add_option("--u", en_u, "denominator");
  enumerate->add_option("--bound", en_bound, "entry bound");
  enumerate->add_option("--ell-bound", en_ell, "congruence l window");
  enumerate->add_option("--context", en_context, "affine|congruence-q3|congruence-q2")
      ->check(CLI::IsMember({"affine", "congruence-q3", "congruence-q2"}));
  add_common(enumerate, f);

  // ------------------------------------------------------------------ moments
  auto* moments = app.add_subcommand("moments", "evaluate moment formulas");
  bool m_poisson = false, m_affine_main = false, m_cong_main = false, m_affine = false,
       m_cong = false, m_centered_limit = false, m_centered = false;
  std::string m_c = "1", m_orders = "2";
  moments->add_flag("--poisson", m_poisson, "Poisson joint moment");
  moments->add_flag("--affine-main", m_affine_main, "affine main term");
  moments->add_flag("--congruence-main", m_cong_main, "congruence main term");
  moments->add_flag("--affine", m_affine, "truncated affine moment");
  moments->add_flag("--congruence", m_cong, "truncated congruence moment");
  moments->add_flag("--centered-limit", m_centered_limit, "limit centered moments");
  moments->add_flag("--centered", m_centered, "truncated centered moment");
  moments->add_option("--c", m_c, "variance constants, comma separated rationals");
  moments->add_option("--orders", m_orders, "moment orders, comma separated");
  add_common(moments, f);

  // ------------------------------------------------------------------- sample
  auto* sample = app.add_subcommand("sample", "draw random lattices");
  std::string sp_space = "affine";
  double sp_radius = 0.0;
  bool sp_points = false;
  sample->add_option("--space", sp_space, "unimodular|affine|congruence")
      ->check(CLI::IsMember({"unimodular", "affine", "congruence"}));
  sample->add_flag("--points", sp_points, "emit enumerated points as CSV");
  sample->add_option("--radius", sp_radius, "enumeration radius for --points");
  add_common(sample, f);

  // --------------------------------------------------------------- experiment
  auto* experiment = app.add_subcommand("experiment", "run a seeded experiment");
  std::string ex_space = "affine";
  experiment->add_option("--space", ex_space, "affine|congruence")
      ->check(CLI::IsMember({"affine", "congruence"}));
  auto* ex_clt = experiment->add_subcommand("clt", "normalized count CLT");
  auto* ex_fclt = experiment->add_subcommand("fclt", "functional CLT on nested scalings");
  auto* ex_poisson = experiment->add_subcommand("poisson", "Poisson process statistics");
  auto* ex_cross = experiment->add_subcommand("crosscheck", "empirical vs analytic moments");
  experiment->require_subcommand(1);
  add_common(experiment, f);

  // Two-phase parse: a config file contributes argv tokens before the real
  // flags, so explicit flags override file values.
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    for (size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] == "--config") {
        auto extra = load_config(args[i + 1]);
        args.insert(args.begin() + static_cast<long>(i) + 2, extra.begin(), extra.end());
        break;
      }
    }
    // CLI11 parses reversed vectors.
    std::vector<std::string> rargs(args.rbegin(), args.rend());
    app.parse(rargs);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*enumerate) {
      std::ostringstream lines;
      auto push = [&lines](const nlohmann::json& j) { lines << j.dump() << "\n"; };
      if (family == "admissible") {
        for (auto& m : rogers::enumerate_admissible(f.k, en_r, en_u, en_bound))
          push(rogers::admissible_to_json(m));
      } else if (family == "affine-lift") {
        for (auto& lift : rogers::enumerate_affine_lifts(f.k, en_m, en_u, en_bound)) {
          auto j = rogers::admissible_to_json(lift.matrix);
          j["source"] = rogers::admissible_to_json(lift.source);
          push(j);
        }
      } else if (family == "congruence-rank1") {
        for (auto& t : rogers::enumerate_congruence_rank1(f.k, f.q, f.t_max, en_ell, f.d)) {
          auto j = rogers::admissible_to_json(t.matrix);
          j["coefficient"] = rogers::rat_to_string(t.coefficient);
          j["t"] = t.t;
          push(j);
        }
      } else if (family == "congruence-lift") {
        for (auto& t : rogers::enumerate_congruence_lifts(f.k, en_m, f.q, f.u_max, f.t_max,
                                                          en_ell, en_bound, f.d, f.e_max)) {
          auto j = rogers::admissible_to_json(t.matrix);
          j["coefficient"] = rogers::rat_to_string(t.coefficient);
          j["t"] = t.t;
          j["u"] = t.u;
          push(j);
        }
      } else if (family == "main") {
        auto fam = en_context == "affine"
                       ? rogers::MainFamily::Affine
                       : (en_context == "congruence-q2" ? rogers::MainFamily::CongruenceQ2
                                                        : rogers::MainFamily::CongruenceQ3Plus);
        for (auto& m : rogers::enumerate_main_family(f.k, fam)) push(rogers::admissible_to_json(m));
      } else if (family == "centered") {
        auto famc = en_context == "affine" ? rogers::CenteredFamily::AffineS
                                           : rogers::CenteredFamily::CongruenceT;
        for (auto& t : rogers::enumerate_centered(f.k, en_n, en_u, en_bound, famc, f.d, f.q)) {
          auto j = rogers::admissible_to_json(t.matrix);
          j["coefficient"] = rogers::rat_to_string(t.coefficient);
          j["sign_exponent"] = t.sign_exponent;
          j["case"] = t.case_tag == rogers::CenteredCase::A
                          ? "a"
                          : (t.case_tag == rogers::CenteredCase::B ? "b" : "c");
          push(j);
        }
      }
      emit(lines.str(), f.out_path);
      return 0;
    }

    if (*moments) {
      auto vols = f.volumes.empty() ? std::vector<Rat>{rogers::parse_rational(f.volume)}
                                    : parse_rational_list(f.volumes);
      nlohmann::json j;
      if (m_poisson) {
        auto v = rogers::poisson_joint_moment(rogers::parse_rational(f.lambda), vols);
        emit(rogers::rat_to_string(v), f.out_path);
        return 0;
      } else if (m_affine_main) {
        auto v = rogers::affine_main_term(static_cast<int>(vols.size()), vols);
        emit(rogers::rat_to_string(v), f.out_path);
        return 0;
      } else if (m_cong_main) {
        auto v = rogers::congruence_main_term(static_cast<int>(vols.size()), vols, f.q);
        emit(rogers::rat_to_string(v), f.out_path);
        return 0;
      } else if (m_centered_limit) {
        auto cs = parse_rational_list(m_c);
        std::vector<int> orders;
        for (auto x : parse_int_list(m_orders)) orders.push_back(static_cast<int>(x));
        auto v = rogers::centered_moment_limit(cs, orders);
        emit(rogers::rat_to_string(v), f.out_path);
        return 0;
      } else if (m_affine || m_cong || m_centered) {
        auto regions = rogers::RegionFamily::balls(
            f.d, std::vector<Rat>(static_cast<size_t>(f.k), rogers::parse_rational(f.volume)));
        rogers::MomentEval eval;
        if (m_affine) {
          eval = rogers::affine_moment(f.k, f.d, regions, truncation_from(f));
        } else if (m_cong) {
          eval = rogers::congruence_moment(f.k, f.d, f.q, regions, truncation_from(f));
        } else {
          eval = rogers::centered_moment_finite(f.k, f.d, regions, truncation_from(f),
                                                rogers::CenteredFamily::AffineS);
        }
        j = eval.to_json();
        j["truncation"] = truncation_from(f).to_json();
        j["version"] = rogers::kVersion;
        emit(j.dump(2), f.out_path);
        return 0;
      }
      std::cerr << "usage error: moments needs one of --poisson/--affine-main/"
                   "--congruence-main/--affine/--congruence/--centered-limit/--centered\n";
      return 2;
    }

    if (*sample) {
      std::ostringstream lines;
      for (std::int64_t i = 0; i < f.samples; ++i) {
        auto gen = rogers::rng::substream(f.seed, static_cast<std::uint64_t>(i));
        rogers::Lattice lat;
        if (sp_space == "unimodular") {
          lat = rogers::sample_unimodular(f.d, f.prime, gen);
        } else if (sp_space == "affine") {
          lat = rogers::sample_affine(f.d, f.prime, gen);
        } else {
          auto pv = f.p_vec_str.empty() ? std::vector<std::int64_t>() : parse_int_list(f.p_vec_str);
          if (pv.empty()) {
            pv.assign(static_cast<size_t>(f.d), 0);
            pv[0] = 1;
          }
          lat = rogers::sample_congruence(f.d, pv, f.q, f.prime, gen);
        }
        lat.provenance.seed = f.seed;
        lat.provenance.index = static_cast<std::uint64_t>(i);
        if (sp_points) {
          if (sp_radius <= 0) {
            std::cerr << "usage error: --points requires --radius\n";
            return 2;
          }
          lines << rogers::point_cloud_csv(rogers::enumerate_in_ball(lat, sp_radius));
        } else {
          lines << rogers::lattice_to_json(lat).dump() << "\n";
        }
      }
      emit(lines.str(), f.out_path);
      return 0;
    }

    if (*experiment) {
      rogers::ExperimentConfig cfg;
      cfg.space = ex_space == "affine" ? rogers::SpaceKind::Affine : rogers::SpaceKind::Congruence;
      cfg.d = f.d;
      cfg.volume = rogers::parse_rational(f.volume);
      cfg.k_max = f.k;
      cfg.samples = f.samples;
      cfg.seed = f.seed;
      cfg.prime = f.prime;
      cfg.n_points = f.n_points;
      cfg.q = f.q;
      if (!f.p_vec_str.empty()) cfg.p_vec = parse_int_list(f.p_vec_str);
      cfg.trunc = truncation_from(f);
      cfg.workers = f.workers;
      if (!f.t_grid.empty()) cfg.t_grid = parse_rational_list(f.t_grid);
      if (*ex_clt) cfg.kind = rogers::ExperimentKind::CLT;
      if (*ex_fclt) {
        cfg.kind = rogers::ExperimentKind::FunctionalCLT;
        if (cfg.t_grid.empty()) cfg.t_grid = {Rat(1, 4), Rat(1, 2), Rat(1)};
      }
      if (*ex_poisson) cfg.kind = rogers::ExperimentKind::Poisson;
      if (*ex_cross) cfg.kind = rogers::ExperimentKind::Crosscheck;
      auto rep = rogers::run_experiment(cfg);
      return emit_report(rep, f);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
