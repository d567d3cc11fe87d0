// Copyright 2026 The plknot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "plknot/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "plknot/analysis.hpp"
#include "plknot/errors.hpp"
#include "plknot/generators.hpp"
#include "plknot/realizability.hpp"
#include "plknot/service.hpp"
#include "plknot/shadow_io.hpp"

namespace plknot::cli {

namespace {

using nlohmann::json;

constexpr const char* kBitsHelp =
    "one character per crossing, in ascending crossing id order; 1 = FIRST_OVER (the edge "
    "with the smaller index passes over), 0 = SECOND_OVER";

struct Format {
  std::string value = "table";
  bool json() const { return value == "json"; }
};

void add_format(CLI::App* cmd, Format& f) {
  cmd->add_option("--format", f.value, "output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::string values_text(const std::vector<std::size_t>& ids,
                        const std::vector<CrossingAssignment>& values) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(ids[i]) + "=" + std::string(to_string(values[i]));
  }
  return s;
}

json propagation_json(const PropagationOutcome& o) {
  json derived = json::array();
  for (const auto& f : o.derived) {
    derived.push_back(
        {{"crossing", f.crossing}, {"value", std::string(to_string(f.value))}, {"wave", f.wave}});
  }
  return {{"status", std::string(to_string(o.status))},
          {"derived", std::move(derived)},
          {"remaining", o.remaining}};
}

void print_propagation(std::ostream& out, const PropagationOutcome& o) {
  out << "propagation: " << to_string(o.status) << "\n";
  for (const auto& f : o.derived) {
    out << "  wave " << f.wave << ": crossing " << f.crossing << " " << to_string(f.value) << "\n";
  }
  if (!o.remaining.empty()) {
    out << "  remaining:";
    for (auto id : o.remaining) out << " " << id;
    out << "\n";
  }
}

json heights_json(const std::vector<Rational>& heights) {
  json out = json::array();
  for (const auto& h : heights) out.push_back(to_string(h));
  return out;
}

std::string join_ids(const std::vector<std::size_t>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? " " : "") + std::to_string(ids[i]);
  return s;
}

std::map<std::string, std::string> distribution(const WeReSet& set) {
  std::map<std::string, std::string> d;
  for (const auto& [name, p] : set.entries) d[name] = to_string(p);
  if (set.empty_prob != 0) d["empty"] = to_string(set.empty_prob);
  return d;
}

/// "0_1=3/4,empty=1/4" -> {"0_1": "3/4", "empty": "1/4"} with reduced values.
std::map<std::string, std::string> parse_target(const std::string& text) {
  std::map<std::string, std::string> target;
  std::stringstream ss(text);
  std::string item;
  Rational total = 0;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ValidationError("target entry needs name=p/q: " + item);
    const Rational p = parse_rational(item.substr(eq + 1));
    if (p <= 0) throw ValidationError("target probabilities must be positive: " + item);
    total += p;
    target[item.substr(0, eq)] = to_string(p);
  }
  if (total != 1) throw ValidationError("target probabilities sum to " + to_string(total));
  return target;
}

std::string distribution_text(const std::map<std::string, std::string>& d) {
  std::string s = "{";
  for (const auto& [name, p] : d) s += (s.size() > 1 ? "," : "") + name + ":" + p;
  return s + "}";
}

Pseudodiagram with_bits(const Pseudodiagram& doc, const std::string& bits) {
  try {
    return resolution_from_bits(doc.shadow_ptr(), bits);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
}

struct Commands {
  // gen
  int n = 5;
  int subdiv = 2;
  int vertices = 5;
  std::uint64_t seed = 1;
  std::string output;
  // analysis
  std::string file;
  std::string bits;
  bool smooth = false;
  unsigned threads = 0;
  std::optional<std::size_t> max_size;
  std::uint64_t budget = kDefaultMaxForcedBudget;
  Format format;
  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  // search
  int search_crossings = 3;
  std::uint64_t seed_start = 1;
  std::uint64_t count = 10000;
  std::string target;
  std::string log;
};

int emit_generated(const Commands& c, const ShadowPtr& shadow, std::ostream& out) {
  const Pseudodiagram p(shadow);
  if (c.output.empty()) {
    out << write_shadow(p);
  } else {
    write_shadow_file(c.output, p);
    out << "wrote " << c.output << " (" << shadow->vertex_count() << " vertices, "
        << shadow->crossing_count() << " crossings)\n";
  }
  return kExitOk;
}

int cmd_crossings(const Commands& c, std::ostream& out) {
  const auto p = read_shadow_file(c.file);
  if (c.format.json()) {
    print_json(out, service::crossings_json(p.shadow()));
    return kExitOk;
  }
  out << "id  edge_a  edge_b  s  t  point  assignment\n";
  const auto& xs = p.shadow().crossings();
  for (std::size_t id = 0; id < xs.size(); ++id) {
    const auto& x = xs[id];
    const auto a = p.at(id);
    out << id << "  " << x.edge_a << "  " << x.edge_b << "  " << to_string(x.s) << "  "
        << to_string(x.t) << "  (" << to_string(x.point.x) << ", " << to_string(x.point.y)
        << ")  " << (a ? std::string(to_string(*a)) : std::string("-")) << "\n";
  }
  return kExitOk;
}

int cmd_realizable(const Commands& c, std::ostream& out) {
  auto p = read_shadow_file(c.file);
  if (!c.bits.empty()) p = with_bits(p, c.bits);
  const auto partial = is_partial_realizable(p);
  std::optional<std::vector<std::size_t>> core;
  if (!partial.realizable) core = minimal_infeasible_core(build_constraints(p));

  if (c.format.json()) {
    json j{{"status", partial.realizable ? "FEASIBLE" : "INFEASIBLE"},
           {"witness", partial.realizable ? heights_json(*partial.witness) : json()},
           {"core", core ? json(*core) : json()}};
    if (p.is_resolution()) j["bits"] = to_bits(p);
    print_json(out, j);
    return kExitOk;
  }
  out << (partial.realizable ? "FEASIBLE" : "INFEASIBLE") << "\n";
  if (partial.realizable) {
    out << "witness:";
    for (const auto& h : *partial.witness) out << " " << to_string(h);
    out << "\n";
  } else {
    out << "core: " << join_ids(*core) << "\n";
  }
  return kExitOk;
}

int cmd_were(const Commands& c, std::ostream& out) {
  const auto p = read_shadow_file(c.file);
  const auto set = were_set(p, c.smooth ? WereMode::kSmooth : WereMode::kPL, c.threads);
  if (c.format.json()) {
    print_json(out, json{{"mode", c.smooth ? "smooth" : "pl"},
                         {"precrossings", set.precrossings},
                         {"distribution", distribution(set)},
                         {"counts", set.counts},
                         {"empty_count", set.empty_count}});
    return kExitOk;
  }
  out << "mode: " << (c.smooth ? "smooth" : "pl") << ", precrossings: " << set.precrossings
      << "\n";
  out << std::left << std::setw(10) << "class" << std::setw(14) << "probability" << "count\n";
  for (const auto& [name, prob] : set.entries) {
    out << std::setw(10) << name << std::setw(14) << to_string(prob) << set.counts.at(name)
        << "\n";
  }
  if (set.empty_count > 0) {
    // setw counts bytes; the empty-set sign is two bytes wide in UTF-8.
    out << "∅" << std::string(8, ' ') << std::setw(14) << to_string(set.empty_prob)
        << set.empty_count << "\n";
  }
  return kExitOk;
}

int cmd_forcing(const Commands& c, std::ostream& out) {
  const auto p = read_shadow_file(c.file);
  const auto report = forcing_number(p, c.max_size);
  if (c.format.json()) {
    json values = json::array();
    for (auto v : report.witness_assignment) values.push_back(std::string(to_string(v)));
    print_json(out,
               json{{"forcing_number",
                     report.forcing_number ? json(*report.forcing_number) : json()},
                    {"precrossings", report.precrossings},
                    {"searched_up_to", report.searched_up_to},
                    {"vacuous", report.vacuous},
                    {"witness", {{"crossings", report.witness_set}, {"values", values}}},
                    {"propagation", report.forcing_number
                                        ? propagation_json(report.propagation_trace)
                                        : json()}});
    return kExitOk;
  }
  if (!report.forcing_number) {
    out << "forcing number: none up to size " << report.searched_up_to << "\n";
    return kExitOk;
  }
  out << "forcing number: " << *report.forcing_number << "\n";
  out << "witness: " << values_text(report.witness_set, report.witness_assignment) << "\n";
  out << "vacuous: " << (report.vacuous ? "yes" : "no") << "\n";
  print_propagation(out, report.propagation_trace);
  return kExitOk;
}

int cmd_maxforced(const Commands& c, std::ostream& out, std::ostream& err) {
  const auto p = read_shadow_file(c.file);
  const auto report = max_forced(p, c.budget);
  if (c.format.json()) {
    json assignment = json::object();
    for (std::size_t id = 0; id < report.maximizing_assignment.size(); ++id) {
      if (auto a = report.maximizing_assignment[id]) {
        assignment[std::to_string(id)] = std::string(to_string(*a));
      }
    }
    print_json(out, json{{"max_forced", report.max_forced},
                         {"assignment", assignment},
                         {"propagation", propagation_json(report.maximizing_trace)},
                         {"states_examined", report.states_examined},
                         {"states_total", report.states_total},
                         {"budget_exceeded", report.budget_exceeded}});
  } else {
    out << "max forced: " << report.max_forced << (report.budget_exceeded ? " (lower bound)" : "")
        << "\n";
    out << "states: " << report.states_examined << " of " << report.states_total << "\n";
    out << "assignment:";
    for (std::size_t id = 0; id < report.maximizing_assignment.size(); ++id) {
      if (auto a = report.maximizing_assignment[id]) out << " " << id << "=" << to_string(*a);
    }
    out << "\n";
    print_propagation(out, report.maximizing_trace);
  }
  if (report.budget_exceeded) {
    err << "budget of " << c.budget << " states exhausted before the enumeration finished\n";
    return kExitBudget;
  }
  return kExitOk;
}

int cmd_iis(const Commands& c, std::ostream& out) {
  auto p = read_shadow_file(c.file);
  if (!c.bits.empty()) p = with_bits(p, c.bits);
  const auto core = minimal_infeasible_core(build_constraints(p));
  std::vector<CrossingAssignment> values;
  for (auto id : core) values.push_back(*p.at(id));
  if (c.format.json()) {
    json v = json::array();
    for (auto a : values) v.push_back(std::string(to_string(a)));
    print_json(out, json{{"core", core}, {"values", v}});
    return kExitOk;
  }
  out << "core: " << values_text(core, values) << "\n";
  return kExitOk;
}

int cmd_serve(const Commands& c, std::ostream& out, std::ostream& err) {
  service::ServiceCore core;
  service::HttpServer server(core, c.static_dir);
  if (!server.bind(c.host, c.port)) {
    err << "cannot bind " << c.host << ":" << c.port << "\n";
    return kExitValidation;
  }
  out << "listening on http://" << c.host << ":" << c.port << "\n" << std::flush;
  server.listen();
  return kExitOk;
}

int cmd_search(const Commands& c, std::ostream& out, std::ostream& err) {
  const auto target = parse_target(c.target);
  std::ofstream log_file;
  if (!c.log.empty()) {
    log_file.open(c.log);
    if (!log_file) throw ValidationError("cannot write " + c.log);
  }
  auto log = [&](const std::string& line) {
    if (log_file) log_file << line << "\n";
  };
  log("# search vertices=" + std::to_string(c.vertices) +
      " crossings=" + std::to_string(c.search_crossings) + " target=" + distribution_text(target) +
      " seeds=" + std::to_string(c.seed_start) + ".." +
      std::to_string(c.seed_start + c.count - 1));

  std::uint64_t candidates = 0;
  std::map<std::string, std::uint64_t> histogram;
  for (std::uint64_t seed = c.seed_start; seed < c.seed_start + c.count; ++seed) {
    const auto shadow = gen_random(c.vertices, seed);
    if (shadow->crossing_count() != static_cast<std::size_t>(c.search_crossings)) continue;
    ++candidates;
    const auto d = distribution(were_set(Pseudodiagram(shadow), WereMode::kPL, 1));
    const auto text = distribution_text(d);
    ++histogram[text];
    const bool hit = d == target;
    log("seed=" + std::to_string(seed) + " were=" + text + (hit ? " MATCH" : ""));
    if (!hit) continue;

    log("# found after " + std::to_string(candidates) + " candidates");
    out << "match: seed " << seed << " " << text << "\n";
    if (!c.output.empty()) {
      write_shadow_file(c.output, Pseudodiagram(shadow));
      out << "wrote " << c.output << "\n";
    }
    return kExitOk;
  }
  log("# no match among " + std::to_string(candidates) + " candidates");
  for (const auto& [text, n] : histogram) log("# seen " + std::to_string(n) + "x " + text);
  err << "no match among " << candidates << " candidates with " << c.search_crossings
      << " crossings\n";
  return kExitBudget;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"plknot: PL knot pseudodiagram workbench"};
  app.require_subcommand(1);
  Commands c;

  auto* gen = app.add_subcommand("gen", "generate a shadow document");
  gen->require_subcommand(1);
  auto* star = gen->add_subcommand("star", "{n/2} star polygon");
  star->add_option("--n", c.n, "odd number of points, >= 5")->required();
  auto* torus = gen->add_subcommand("torus", "(n,2)-torus shadow");
  torus->add_option("--n", c.n, "odd number of crossings, >= 3")->required();
  torus->add_option("--subdiv", c.subdiv, "pieces per star edge, >= 2")->capture_default_str();
  auto* random = gen->add_subcommand("random", "pseudorandom polygon in general position");
  random->add_option("--vertices", c.vertices, "number of vertices, >= 3")->required();
  random->add_option("--seed", c.seed, "generator seed")->capture_default_str();
  for (auto* g : {star, torus, random}) {
    g->add_option("-o,--output", c.output, "write to FILE instead of standard output");
  }

  auto* crossings = app.add_subcommand("crossings", "list the crossings of a shadow");
  auto* realizable = app.add_subcommand(
      "realizable", "decide realizability of the document's assignment or of --bits");
  realizable->add_option("--bits", c.bits, kBitsHelp);
  auto* were = app.add_subcommand("were", "weighted resolution set over the precrossings");
  were->add_flag("--smooth", c.smooth, "classify every completion, ignoring realizability");
  were->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  auto* forcing = app.add_subcommand("forcing", "forcing number by exhaustive search");
  forcing->add_option("--max-size", c.max_size, "largest set size to try");
  auto* maxforced =
      app.add_subcommand("maxforced", "largest number of crossings propagation derives");
  maxforced->add_option("--budget", c.budget, "maximum partial assignments to examine")
      ->capture_default_str();
  auto* iis = app.add_subcommand("iis", "minimal infeasible core of a resolution");
  iis->add_option("--bits", c.bits, kBitsHelp);
  for (auto* cmd : {crossings, realizable, were, forcing, maxforced, iis}) {
    cmd->add_option("FILE", c.file, "shadow document")->required();
    add_format(cmd, c.format);
  }

  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--host", c.host)->capture_default_str();
  serve->add_option("--port", c.port)->capture_default_str();
  serve->add_option("--static-dir", c.static_dir, "directory served at /");

  auto* search = app.add_subcommand(
      "search", "scan gen_random seeds for a shadow with a given PL weighted resolution set");
  search->add_option("--vertices", c.vertices, "polygon vertices")->required();
  search->add_option("--crossings", c.search_crossings, "required crossing count")->required();
  search->add_option("--target", c.target, "e.g. 0_1=3/4,empty=1/4")->required();
  search->add_option("--seed-start", c.seed_start)->capture_default_str();
  search->add_option("--count", c.count, "seeds to try")->capture_default_str();
  search->add_option("--log", c.log, "write one line per candidate to FILE");
  search->add_option("-o,--output", c.output, "write the first match to FILE");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (star->parsed()) return emit_generated(c, gen_star(c.n), out);
    if (torus->parsed()) return emit_generated(c, gen_torus(c.n, c.subdiv), out);
    if (random->parsed()) return emit_generated(c, gen_random(c.vertices, c.seed), out);
    if (crossings->parsed()) return cmd_crossings(c, out);
    if (realizable->parsed()) return cmd_realizable(c, out);
    if (were->parsed()) return cmd_were(c, out);
    if (forcing->parsed()) return cmd_forcing(c, out);
    if (maxforced->parsed()) return cmd_maxforced(c, out, err);
    if (iis->parsed()) return cmd_iis(c, out);
    if (serve->parsed()) return cmd_serve(c, out, err);
    if (search->parsed()) return cmd_search(c, out, err);
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ExhaustedRetriesError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace plknot::cli
