// Copyright 2026 The Hotelling Attraction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hotelling: evaluate, solve, verify, reproduce and corpus subcommands.
//
// Exit codes: 0 success or certified, 3 equilibrium refuted (or corpus bound
// violated), 2 usage or input error, 1 internal error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hotelling/analysis.hpp"
#include "hotelling/config.hpp"
#include "hotelling/corpus.hpp"
#include "hotelling/reproduce.hpp"
#include "hotelling/support_dynamics.hpp"
#include "hotelling/verifier.hpp"
#include "hotelling/winner_ne.hpp"

namespace {

using namespace hotelling;

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kUsage = 2;
constexpr int kRefuted = 3;

struct Flags {
  std::string config;
  std::string profile;
  std::string mode;
  std::string epsilon;
  std::string grid_step;
  std::string seed;
  std::string format;
  std::string out;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "configuration file");
  cmd->add_option("--profile", f.profile, "comma-separated locations, e.g. 0.2,13/20,4/5");
  cmd->add_option("--mode", f.mode, "support or winner");
  cmd->add_option("--epsilon", f.epsilon, "dynamics improvement threshold");
  cmd->add_option("--grid-step", f.grid_step, "lattice step for grid verification");
  cmd->add_option("--seed", f.seed, "corpus seed");
  cmd->add_option("--format", f.format, "table or records");
  cmd->add_option("--out", f.out, "write output to this file");
}

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (const char* env = std::getenv("HOTELLING_FORMAT"); env && *env) cfg.format = parse_format(env);
  if (!f.config.empty()) cfg = load_config(f.config, cfg);
  if (!f.profile.empty()) cfg.profile = parse_rational_list("profile", f.profile);
  if (!f.mode.empty()) apply_setting(cfg, "mode", f.mode);
  if (!f.epsilon.empty()) apply_setting(cfg, "epsilon", f.epsilon);
  if (!f.grid_step.empty()) apply_setting(cfg, "grid_step", f.grid_step);
  if (!f.seed.empty()) apply_setting(cfg, "seed", f.seed);
  if (!f.format.empty()) apply_setting(cfg, "format", f.format);
  return cfg;
}

Profile require_profile(const RunConfig& cfg) {
  if (!cfg.profile) throw ConfigError("profile: none given (use --profile or a profile line in the config)");
  return *cfg.profile;
}

// Long-format records: section,index,field,value.
class Emitter {
 public:
  Emitter(std::ostream& out, OutputFormat format) : out_(out), format_(format) {}

  bool table() const { return format_ == OutputFormat::kTable; }
  std::ostream& os() { return out_; }

  void record(const std::string& section, std::size_t index, const std::string& field, const std::string& value) {
    if (table()) return;
    if (!writer_) writer_ = std::make_unique<RecordWriter>(out_, std::vector<std::string>{"section", "index", "field", "value"});
    writer_->row({section, std::to_string(index), field, value});
  }

  void line(const std::string& label, const std::string& value) {
    if (table()) out_ << std::left << std::setw(16) << label << value << '\n';
  }

 private:
  std::ostream& out_;
  OutputFormat format_;
  std::unique_ptr<RecordWriter> writer_;
};

std::string index_set(const std::vector<std::size_t>& w) {
  std::string s = "{";
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? ", " : "") + std::to_string(w[k] + 1);
  return s + "}";
}

std::string joined(const Profile& p, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? sep : "") + p[i].str();
  return s;
}

void emit_certificate(Emitter& e, const NeCertificate& c) {
  e.record("certificate", 0, "verdict", to_string(c.verdict));
  e.record("certificate", 0, "mode", to_string(c.mode));
  e.record("certificate", 0, "method", to_string(c.method));
  e.record("certificate", 0, "tolerance", c.tolerance.str());
  e.record("certificate", 0, "coarse", c.coarse ? "1" : "0");
  for (std::size_t i = 0; i < c.gaps.size(); ++i) e.record("gap", i + 1, "value", c.gaps[i].str());
  if (c.best_deviation) {
    const Deviation& d = *c.best_deviation;
    e.record("deviation", d.agent + 1, "location", d.location.str());
    e.record("deviation", d.agent + 1, "old_utility", d.old_utility.str());
    e.record("deviation", d.agent + 1, "new_utility", d.new_utility.str());
  }
  if (!e.table()) return;
  e.line("verdict", to_string(c.verdict) + (c.coarse ? " (coarse)" : ""));
  e.line("method", to_string(c.method) + ", " + to_string(c.mode) + " mode, tolerance " + c.tolerance.str());
  for (std::size_t i = 0; i < c.gaps.size(); ++i) e.line("gap agent " + std::to_string(i + 1), render(c.gaps[i]));
  if (c.best_deviation) {
    const Deviation& d = *c.best_deviation;
    e.line("deviation", "agent " + std::to_string(d.agent + 1) + " -> " + render(d.location));
    e.line("utility", render(d.old_utility) + " -> " + render(d.new_utility));
  }
}

void emit_profile(Emitter& e, const Profile& p) {
  for (std::size_t i = 0; i < p.size(); ++i) e.record("profile", i + 1, "location", p[i].str());
  if (!e.table()) return;
  for (std::size_t i = 0; i < p.size(); ++i) e.line("x" + std::to_string(i + 1), render(p[i]));
}

int cmd_evaluate(const RunConfig& cfg, Emitter& e) {
  const Game game = cfg.game();
  const Profile x = require_profile(cfg);
  const UtilityReport r = utility_report(game, x);
  const StepFunction c = congestion(game, x);
  const Rational phi = potential(game, x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    e.record("agent", i + 1, "location", x[i].str());
    e.record("agent", i + 1, "width", game.width(i).str());
    e.record("agent", i + 1, "support", r.supports[i].str());
    e.record("agent", i + 1, "utility", r.utilities[i].str());
  }
  for (std::size_t k = 0; k < c.values().size(); ++k) {
    e.record("congestion", k + 1, "lower", c.breakpoints()[k].str());
    e.record("congestion", k + 1, "upper", c.breakpoints()[k + 1].str());
    e.record("congestion", k + 1, "count", c.values()[k].str());
  }
  for (std::size_t i : r.winner_set) e.record("winner", i + 1, "agent", std::to_string(i + 1));
  e.record("summary", 0, "mode", to_string(r.mode));
  e.record("summary", 0, "covered_mass", r.covered_mass.str());
  e.record("summary", 0, "potential", phi.str());
  if (e.table()) {
    auto& os = e.os();
    e.line("mode", to_string(r.mode));
    os << std::left << std::setw(7) << "agent" << std::setw(22) << "location" << std::setw(22) << "width"
       << std::setw(22) << "support" << "utility\n";
    for (std::size_t i = 0; i < x.size(); ++i)
      os << std::setw(7) << i + 1 << std::setw(22) << render(x[i]) << std::setw(22) << render(game.width(i))
         << std::setw(22) << render(r.supports[i]) << render(r.utilities[i]) << '\n';
    e.line("winner set", index_set(r.winner_set));
    e.line("covered mass", render(r.covered_mass));
    e.line("potential", render(phi));
    os << "congestion\n";
    for (std::size_t k = 0; k < c.values().size(); ++k)
      os << "  [" << c.breakpoints()[k].str() << ", " << c.breakpoints()[k + 1].str() << "]  " << c.values()[k].str()
         << '\n';
  }
  return kOk;
}

std::vector<std::string> applicable_methods(const Game& g) {
  if (g.mode() == UtilityMode::kSupport) return {"dynamics"};
  std::vector<std::string> m;
  if (g.agents() == 0 || !g.equal_widths()) return m;
  const Rational w = g.width(0);
  if (g.agents() == 2) m.push_back("two-agent");
  if (g.agents() == 3) m.push_back("alg1");
  if (w == Rational(1, 2)) m.push_back("alg2");
  if (w >= Rational(1, 2) && w < Rational(1)) m.push_back("reduce");
  return m;
}

int cmd_solve(const RunConfig& cfg, const std::string& method, Emitter& e) {
  const Game game = cfg.game();
  const auto ok = applicable_methods(game);
  if (std::find(ok.begin(), ok.end(), method) == ok.end()) {
    std::string list;
    for (const auto& m : ok) list += (list.empty() ? "" : ", ") + m;
    throw UnsupportedConfiguration("method " + method + " does not apply to this " + to_string(game.mode()) +
                                   "-mode game with " + std::to_string(game.agents()) +
                                   " agents; applicable: " + (list.empty() ? "none" : list));
  }
  if (method == "dynamics") {
    DynamicsOptions opts;
    opts.epsilon = cfg.epsilon;
    opts.round_limit = cfg.round_limit;
    const DynamicsResult run = run_dynamics(game, cfg.profile ? *cfg.profile : stacked_profile(game), opts);
    const NeCertificate cert = verify_support_ne(game, run.profile, cfg.epsilon);
    e.record("trace", 0, "potential_after", run.trace.initial_potential.str());
    for (std::size_t k = 0; k < run.trace.rounds.size(); ++k) {
      const DynamicsStep& s = run.trace.rounds[k];
      e.record("trace", k + 1, "agent", std::to_string(s.agent + 1));
      e.record("trace", k + 1, "from", s.from.str());
      e.record("trace", k + 1, "to", s.to.str());
      e.record("trace", k + 1, "gain", s.gain.str());
      e.record("trace", k + 1, "potential_after", s.potential_after.str());
    }
    e.record("summary", 0, "stop_reason", to_string(run.trace.reason));
    e.record("summary", 0, "moves", std::to_string(run.trace.rounds.size()));
    emit_profile(e, run.profile);
    e.line("method", "dynamics (" + to_string(opts.order) + ", epsilon " + opts.epsilon.str() + ")");
    e.line("stopped", to_string(run.trace.reason) + " after " + std::to_string(run.trace.rounds.size()) + " moves");
    e.line("potential", render(run.trace.initial_potential) + " -> " + render(potential(game, run.profile)));
    emit_certificate(e, cert);
    return cert.equilibrium() && run.trace.terminated ? kOk : kRefuted;
  }
  const ConstructionResult c = method == "two-agent" ? two_agent_ne(game)
                               : method == "alg1"    ? algorithm1(game)
                               : method == "alg2"    ? algorithm2(game)
                                                     : reduced_ne(game);
  e.record("summary", 0, "case", to_string(c.case_tag));
  if (c.inner_tag) e.record("summary", 0, "inner_case", to_string(*c.inner_tag));
  e.record("summary", 0, "entrant_share", c.entrant_share_rule);
  e.record("summary", 0, "degenerate", c.degenerate ? "1" : "0");
  for (const auto& [k, v] : c.intermediate) e.record("intermediate", 0, k, v.str());
  emit_profile(e, c.profile);
  e.line("case", to_string(c.case_tag) + (c.inner_tag ? " / " + to_string(*c.inner_tag) : "") +
                     (c.degenerate ? " (degenerate)" : ""));
  for (const auto& [k, v] : c.intermediate) e.line(k, render(v));
  emit_certificate(e, c.certificate);
  return c.certificate.equilibrium() ? kOk : kRefuted;
}

int cmd_verify(const RunConfig& cfg, bool grid, Emitter& e) {
  const Game game = cfg.game();
  const Profile x = require_profile(cfg);
  const NeCertificate c = grid ? grid_verify(game, x, cfg.grid_step) : verify_exact(game, x);
  emit_certificate(e, c);
  return c.equilibrium() ? kOk : kRefuted;
}

int cmd_reproduce(const std::string& which, long n, Emitter& e) {
  const std::vector<Check> checks = reproduce(which, n);
  bool all = true;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const Check& c = checks[k];
    all = all && c.pass();
    e.record(c.target, k + 1, c.name, c.observed);
    if (e.table())
      e.os() << (c.pass() ? "pass  " : "FAIL  ") << std::left << std::setw(18) << c.target << std::setw(42) << c.name
             << c.observed << (c.pass() ? "" : "  (expected " + c.expected + ")") << '\n';
  }
  if (!all) std::cerr << "reproduction mismatch\n";
  return all ? kOk : kInternal;
}

int cmd_corpus(RunConfig cfg, const std::string& suite, long instances, int starts, Emitter& e) {
  if (!suite.empty()) cfg.corpus.suite = parse_suite(suite);
  if (instances >= 0) cfg.corpus.instances = instances;
  if (starts >= 0) cfg.corpus.random_starts = starts;
  const auto records = run_corpus(cfg.corpus);
  const CorpusSummary s = summarize(records);
  std::vector<std::string> cols{"seed", "n", "widths"};
  for (const auto& r : records)
    if (r.error.empty()) {
      for (const auto& f : r.fields) cols.push_back(f.first);
      break;
    }
  cols.emplace_back("error");
  if (e.table()) {
    for (const auto& r : records) {
      e.os() << "seed " << r.seed << "  n " << r.n << "  ";
      if (!r.error.empty()) e.os() << "error: " << r.error;
      for (const auto& [k, v] : r.fields) e.os() << k << " " << v << "  ";
      e.os() << '\n';
    }
    e.os() << "suite " << to_string(cfg.corpus.suite) << "  instances " << s.instances << "  certified " << s.certified
           << "  violations " << s.violations << "  errors " << s.errors << '\n';
  } else {
    RecordWriter w(e.os(), cols);
    for (const auto& r : records) {
      std::vector<std::string> row{std::to_string(r.seed), std::to_string(r.n), joined(r.widths, ";")};
      if (r.error.empty())
        for (const auto& f : r.fields) row.push_back(f.second);
      else
        row.resize(cols.size() - 1);
      std::string err = r.error;
      std::replace(err.begin(), err.end(), ',', ';');
      row.push_back(err);
      w.row(row);
    }
    std::cerr << "suite " << to_string(cfg.corpus.suite) << " instances " << s.instances << " certified "
              << s.certified << " violations " << s.violations << " errors " << s.errors << '\n';
  }
  if (s.errors) return kInternal;
  return s.violations ? kRefuted : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for the Hotelling game with limited attraction"};
  app.require_subcommand(1);
  Flags flags;

  auto* evaluate = app.add_subcommand("evaluate", "supports, winners, congestion and potential of a profile");
  add_common(evaluate, flags);

  std::string method = "dynamics";
  auto* solve = app.add_subcommand("solve", "compute an equilibrium and certify it");
  add_common(solve, flags);
  solve->add_option("--method", method, "dynamics, two-agent, alg1, alg2 or reduce")
      ->check(CLI::IsMember({"dynamics", "two-agent", "alg1", "alg2", "reduce"}));

  bool grid = false;
  auto* verify = app.add_subcommand("verify", "certify or refute a profile as an equilibrium");
  add_common(verify, flags);
  verify->add_flag("--grid", grid, "use the lattice verifier instead of the exact one");

  std::vector<std::string> target;
  auto* repro = app.add_subcommand("reproduce", "check the built-in worked instances");
  add_common(repro, flags);
  repro->add_option("target", target, "example2 | example4 | ordinal | fairness-tight | poa-family N | all")
      ->expected(1, 2);

  std::string suite;
  long instances = -1;
  int starts = -1;
  auto* corpus = app.add_subcommand("corpus", "run a seeded random-instance suite");
  add_common(corpus, flags);
  corpus->add_option("--suite", suite, "support-bounds, two-agent, alg1, alg2 or reduce");
  corpus->add_option("--instances", instances, "number of instances");
  corpus->add_option("--starts", starts, "random dynamics starts per instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const RunConfig cfg = resolve(flags);
    std::ofstream file;
    if (!flags.out.empty()) {
      file.open(flags.out);
      if (!file) throw ConfigError("cannot write " + flags.out);
    }
    std::ostream& out = flags.out.empty() ? std::cout : file;
    Emitter e(out, cfg.format);
    if (*evaluate) return cmd_evaluate(cfg, e);
    if (*solve) return cmd_solve(cfg, method, e);
    if (*verify) return cmd_verify(cfg, grid, e);
    if (*repro) {
      if (target.empty()) target = {"all"};
      long n = 10;
      if (target[0] == "poa-family" && target.size() == 2) n = detail::field_long("poa-family", target[1]);
      else if (target.size() == 2) throw ParseError("only poa-family takes an argument");
      return cmd_reproduce(target[0], n, e);
    }
    return cmd_corpus(cfg, suite, instances, starts, e);
  } catch (const InternalInvariantError& err) {
    std::cerr << "internal error: " << err.what() << '\n';
    return kInternal;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const ArithmeticError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kUsage;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << '\n';
    return kInternal;
  }
}
