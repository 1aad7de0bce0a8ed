#include "cli_app.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxtree/arborescence.hpp"
#include "maxtree/dequantize.hpp"
#include "maxtree/digraph.hpp"
#include "maxtree/matrix_io.hpp"
#include "maxtree/ranking.hpp"
#include "maxtree/semiring.hpp"
#include "maxtree/spectral.hpp"

namespace maxtree::cli {
namespace {

using nlohmann::json;

enum class Format { json, csv };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  double tol = 1e-9;
  std::vector<int> p_sweep;
  Format format = Format::json;
  std::size_t max_enum = kDefaultEnumerationCap;
  bool renormalize = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything user-facing is 1-based.
json nodes_json(const std::vector<Node>& nodes) {
  json a = json::array();
  for (Node v : nodes) a.push_back(v + 1);
  return a;
}

json components_json(const std::vector<std::vector<Node>>& comps) {
  json a = json::array();
  for (const auto& c : comps) a.push_back(nodes_json(c));
  return a;
}

json edges_json(const std::vector<EdgePair>& edges) {
  json a = json::array();
  for (const auto& [t, h] : edges) a.push_back({t + 1, h + 1});
  return a;
}

json itree_json(const ITree& t) {
  return {{"root", t.root + 1}, {"edges", edges_json(t.edges)}, {"weight", t.weight}};
}

json rst_json(const RstReport& r) {
  json witnesses = json::array();
  for (const auto& t : r.witnesses) witnesses.push_back(itree_json(t));
  return {{"w", io::vector_to_json(r.vector)}, {"witnesses", witnesses}, {"residual", r.residual}};
}

json ranking_json(const RankingResult& r) {
  return {{"weights", io::vector_to_json(r.weights)},
          {"order", nodes_json(r.order)},
          {"ties", components_json(r.ties)},
          {"residual", r.residual}};
}

std::string vector_csv(const std::string& header, const NonnegVector& v) {
  std::string s = "index," + header + "\n";
  for (std::size_t i = 0; i < v.size(); ++i) s += std::to_string(i + 1) + "," + io::format_double(v[i]) + "\n";
  return s;
}

std::string ranking_csv(const RankingResult& r) {
  std::string s = "rank,index,weight\n";
  for (std::size_t k = 0; k < r.order.size(); ++k) {
    s += std::to_string(k + 1) + "," + std::to_string(r.order[k] + 1) + "," +
         io::format_double(r.weights[r.order[k]]) + "\n";
  }
  return s;
}

NonnegMatrix load(const RunConfig& cfg, std::size_t k = 0) {
  return io::read_matrix_file(cfg.inputs.at(k));
}

void require_inputs(const RunConfig& cfg, std::size_t lo, std::size_t hi) {
  if (cfg.inputs.size() < lo || cfg.inputs.size() > hi) {
    throw UsageError("'" + cfg.command + "' takes " +
                     (lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi)) +
                     " input file(s)");
  }
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

void json_only(const RunConfig& cfg) {
  if (cfg.format != Format::json) throw UsageError("'" + cfg.command + "' only supports --format json");
}

// --- commands -----------------------------------------------------------

int cmd_echo(const RunConfig& cfg, std::ostream& out) {
  const NonnegMatrix a = load(cfg);
  if (cfg.format == Format::csv) {
    out << io::matrix_to_csv(a);
  } else {
    emit(out, io::matrix_to_json(a));
  }
  return kOk;
}

int cmd_mu(const RunConfig& cfg, std::ostream& out) {
  const double mu = max_cycle_geometric_mean(load(cfg));
  if (cfg.format == Format::csv) {
    out << io::format_double(mu) << '\n';
  } else {
    emit(out, json{{"mu", mu}});
  }
  return kOk;
}

int cmd_kleene(const RunConfig& cfg, std::ostream& out) {
  const KleeneStar ks = kleene_star(load(cfg), Tolerance(cfg.tol), {cfg.renormalize});
  if (cfg.format == Format::csv) {
    out << io::matrix_to_csv(ks.star);
  } else {
    json doc = io::matrix_to_json(ks.star);
    doc["positive"] = ks.positive;
    emit(out, doc);
  }
  return kOk;
}

int cmd_critical(const RunConfig& cfg, std::ostream& out) {
  json_only(cfg);
  const CriticalStructure cs = critical_structure(load(cfg), Tolerance(cfg.tol));
  emit(out, json{{"mu", cs.mu},
                 {"critical_nodes", nodes_json(cs.critical_nodes)},
                 {"critical_edges", edges_json(cs.critical_edges)},
                 {"dc_components", components_json(cs.dc_components)},
                 {"dcstar_components", components_json(cs.dcstar_components)}});
  return kOk;
}

int cmd_rst(const RunConfig& cfg, std::ostream& out) {
  const RstReport r = max_rst_vector(load(cfg));
  if (cfg.format == Format::csv) {
    out << vector_csv("w", r.vector);
  } else {
    emit(out, rst_json(r));
  }
  return kOk;
}

int cmd_classical_rst(const RunConfig& cfg, std::ostream& out) {
  const RstReport r = sum_rst_vector(load(cfg), cfg.max_enum);
  double total = 0.0;
  for (double v : r.vector.values()) total += v;
  std::vector<double> pi(r.vector.size());
  for (std::size_t i = 0; i < pi.size(); ++i) pi[i] = r.vector[i] / total;
  if (cfg.format == Format::csv) {
    out << "index,w,stationary\n";
    for (std::size_t i = 0; i < pi.size(); ++i) {
      out << i + 1 << ',' << io::format_double(r.vector[i]) << ',' << io::format_double(pi[i]) << '\n';
    }
  } else {
    json doc = rst_json(r);
    doc["stationary"] = pi;
    emit(out, doc);
  }
  return kOk;
}

int cmd_dequantize(const RunConfig& cfg, std::ostream& out) {
  const NonnegMatrix a = load(cfg);
  const Tolerance tol(cfg.tol);
  const std::vector<int> sweep = cfg.p_sweep.empty() ? default_p_sweep(p0_threshold(a, tol)) : cfg.p_sweep;
  const ConvergenceRun run = convergence_run(a, sweep, tol, cfg.max_enum);
  if (cfg.format == Format::csv) {
    out << "p,err_matrix,err_vector,bound\n";
    for (const auto& s : run.steps) {
      out << s.p << ',' << io::format_double(s.err_matrix) << ',' << io::format_double(s.err_vector)
          << ',' << io::format_double(s.bound) << '\n';
    }
    return kOk;
  }
  json steps = json::array();
  for (const auto& s : run.steps) {
    steps.push_back({{"p", s.p},
                     {"err_matrix", s.err_matrix},
                     {"err_vector", s.err_vector},
                     {"bound", s.bound},
                     {"wp", io::vector_to_json(s.wp)}});
  }
  emit(out, json{{"p0", run.p0},
                 {"w_max", io::vector_to_json(run.w_max)},
                 {"steps", steps},
                 {"err_matrix_nonincreasing", run.err_matrix_nonincreasing},
                 {"err_vector_nonincreasing", run.err_vector_nonincreasing}});
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  json_only(cfg);
  const NonnegMatrix a = load(cfg);
  const Tolerance tol(cfg.tol);
  json checks = json::array();
  bool all = true;
  const auto record = [&](const std::string& name, const char* status, const json& value) {
    checks.push_back({{"name", name}, {"status", status}, {"value", value}});
    if (std::string(status) == "fail") all = false;
  };
  const auto check = [&](const std::string& name, bool ok, const json& value) {
    record(name, ok ? "pass" : "fail", value);
  };
  const auto finish = [&]() {
    emit(out, json{{"pass", all}, {"checks", checks}});
    return all ? kOk : kDomainError;
  };

  a.require_square("verify");
  const bool stochastic = is_max_stochastic(a, tol);
  const bool irreducible = is_irreducible(a);
  check("max_stochastic", stochastic, stochastic);
  check("irreducible", irreducible, irreducible);
  if (!stochastic || !irreducible) return finish();

  const RstReport rst = max_rst_vector(a);
  check("max_mctt_residual", rst.residual <= tol.rel_eps(), rst.residual);

  const CriticalStructure cs = critical_structure(a, tol);
  const KleeneStar ks = kleene_star(a, tol);
  const NonnegVector bound = min_critical_row(ks, cs);
  const NonnegVector& w = rst.vector;

  bool column_min_ok = true;
  for (Node j = 0; j < a.n(); ++j) {
    double colmin = ks.star(0, j);
    for (Node i = 1; i < a.n(); ++i) colmin = std::min(colmin, ks.star(i, j));
    column_min_ok = column_min_ok && tol.equal(colmin, bound[j]);
  }
  check("column_min_attained_on_critical_rows", column_min_ok, io::vector_to_json(bound));

  bool below = true;
  for (Node j = 0; j < a.n(); ++j) below = below && tol.less_equal(w[j], bound[j]);
  check("w_below_min_critical_row", below, io::vector_to_json(bound));

  const std::size_t r = cs.dc_components.size();
  if (r == 1) {
    bool eq = true;
    for (Node j = 0; j < a.n(); ++j) eq = eq && tol.equal(w[j], bound[j]);
    check("w_equals_min_critical_row", eq, r);
    bool ones = true;
    for (Node q : cs.critical_nodes) ones = ones && tol.equal(w[q], 1.0);
    check("critical_coordinates_one", ones, r);
  } else {
    record("w_equals_min_critical_row", "skipped", r);
    record("critical_coordinates_one", "skipped", r);
  }
  if (r <= 2) {
    bool eq = true;
    for (Node q : cs.critical_nodes) eq = eq && tol.equal(w[q], bound[q]);
    check("w_equals_bound_on_critical_nodes", eq, r);
  } else {
    record("w_equals_bound_on_critical_nodes", "skipped", r);
  }

  const BlockLawReport blocks = verify_vis_kleene_blocks(a, tol);
  check("kleene_block_law", blocks.holds && blocks.reduced_structure_ok, blocks.violations.size());

  double eig = 0.0;
  for (const auto& col : critical_column_eigenvectors(ks, cs)) {
    const NonnegVector image = max_matvec(a, col.column);
    for (Node i = 0; i < a.n(); ++i)
      eig = std::max(eig, std::fabs(image[i] - col.column[i]) / std::max(col.column[i], 1.0));
  }
  check("critical_columns_are_eigenvectors", eig <= tol.rel_eps(), eig);
  return finish();
}

int cmd_judges(const RunConfig& cfg, std::ostream& out) {
  const JudgeCompetitorResult res = judge_competitor_rank(load(cfg, 0), load(cfg, 1), Tolerance(cfg.tol));
  if (cfg.format == Format::csv) {
    out << ranking_csv(res.ranking);
  } else {
    json doc = ranking_json(res.ranking);
    doc["combined"] = io::matrix_to_json(res.combined);
    emit(out, doc);
  }
  return kOk;
}

int cmd_rank(const RunConfig& cfg, std::ostream& out) {
  if (cfg.inputs.size() == 2) return cmd_judges(cfg, out);
  const NonnegMatrix a = load(cfg);
  const Tolerance tol(cfg.tol);
  if (!is_sr_matrix(a, tol)) throw DomainError("input is not a symmetrically reciprocal matrix");
  const RankingResult r = ahp_rank(a, tol);
  if (cfg.format == Format::csv) {
    out << ranking_csv(r);
  } else {
    emit(out, ranking_json(r));
  }
  return kOk;
}

struct Command {
  const char* name;
  const char* help;
  std::size_t min_inputs;
  std::size_t max_inputs;
  std::function<int(const RunConfig&, std::ostream&)> run;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> table{
      {"mu", "maximum cycle geometric mean", 1, 1, cmd_mu},
      {"kleene", "Kleene star A*", 1, 1, cmd_kleene},
      {"critical", "critical nodes, edges and components", 1, 1, cmd_critical},
      {"rst", "maximal rooted-spanning-tree vector with witness trees", 1, 1, cmd_rst},
      {"classical-rst", "sum-product tree vector and stationary distribution", 1, 1, cmd_classical_rst},
      {"dequantize", "p-semiring convergence sweep", 1, 1, cmd_dequantize},
      {"verify", "check the tree-theorem, bound and block-law identities", 1, 1, cmd_verify},
      {"rank", "rank an SR matrix (or a judge/competitor pair)", 1, 2, cmd_rank},
      {"judges", "rank competitors from judge (m x n) and competitor (n x m) scores", 2, 2, cmd_judges},
      {"echo", "parse a matrix and print it back", 1, 1, cmd_echo},
  };
  return table;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"maxtree-cli: max-algebra spanning tree toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "json";
  app.add_option("--tol", cfg.tol, "relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--p", cfg.p_sweep, "dequantize p sweep, e.g. 4,8,16")->delimiter(',');
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--max-enum", cfg.max_enum, "tree enumeration cap")->check(CLI::PositiveNumber);

  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& c : commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("inputs", cfg.inputs, "matrix file(s)")->required();
    if (std::string(c.name) == "kleene") {
      sub->add_flag("--renormalize", cfg.renormalize, "divide by mu when 1 < mu <= 1 + tol");
    }
    subs.emplace_back(sub, &c);
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kInputError;
  }
  cfg.format = format == "csv" ? Format::csv : Format::json;

  try {
    for (const auto& [sub, cmd] : subs) {
      if (!sub->parsed()) continue;
      cfg.command = cmd->name;
      require_inputs(cfg, cmd->min_inputs, cmd->max_inputs);
      return cmd->run(cfg, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInputError;
}

}  // namespace maxtree::cli
