// ktf: command-line front end for the operator engine.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ktf/catalog.hpp"
#include "ktf/engine.hpp"
#include "ktf/error.hpp"
#include "ktf/kge.hpp"
#include "ktf/model_io.hpp"
#include "ktf/rewrite.hpp"
#include "ktf/space_search.hpp"
#include "ktf/verify.hpp"

namespace {

using nlohmann::json;
using namespace ktf;

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2, kInvariant = 3 };

struct Output {
  std::string format = "text";
  bool json() const { return format == "json"; }
  bool dot() const { return format == "dot"; }
};

void add_format(CLI::App* cmd, Output& out, bool allow_dot = false) {
  std::vector<std::string> allowed{"text", "json"};
  if (allow_dot) allowed.push_back("dot");
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember(allowed))
      ->capture_default_str();
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

json words_json(const std::vector<OpWord>& ws) {
  json a = json::array();
  for (const auto& w : ws) a.push_back(to_string(w));
  return a;
}

std::uint32_t check_n(std::uint32_t n) {
  if (n < 1) throw UsageError("-n must be at least 1");
  return n;
}

// ---------------------------------------------------------------------------

int cmd_enumerate(std::uint32_t n, const Output& out) {
  check_n(n);
  const auto groups = enumerate_kge(n);
  const auto total = count_kge(n).total;
  if (out.json()) {
    json types = json::array();
    for (const auto& g : groups) {
      types.push_back({{"type", label(g.type)},
                       {"count", g.words.size()},
                       {"words", words_json(g.words)}});
    }
    print_json({{"n", n}, {"total", total}, {"p_n", p_polynomial(n)}, {"types", types}});
    return kOk;
  }
  for (const auto& g : groups) {
    std::cout << label(g.type) << " (" << g.words.size() << "):";
    for (const auto& w : g.words) std::cout << " " << to_string(w);
    std::cout << "\n";
  }
  std::cout << "total " << total << ", p(" << n << ") = " << p_polynomial(n) << "\n";
  return kOk;
}

int cmd_normalize(std::uint32_t n, const std::string& text, const Output& out) {
  check_n(n);
  const OpWord w = parse_word(text);
  const OpWord nf = normalize(w, n);
  if (out.json()) {
    json j{{"n", n}, {"input", to_string(w)}, {"normal_form", to_string(nf)},
           {"length", nf.length()}};
    const OpWord core = nf.is_constant() || nf.gens().empty() || nf.gens()[0] != Generator::c()
                            ? nf
                            : OpWord(std::vector<Generator>(nf.gens().begin() + 1,
                                                            nf.gens().end()));
    j["odd"] = nf.is_one() || core != nf;
    if (auto t = classify(nf.is_one() ? OpWord::zero() : core, n)) j["type"] = label(*t);
    print_json(j);
    return kOk;
  }
  std::cout << to_string(nf) << "\n";
  return kOk;
}

int cmd_orbit(const std::string& model_spec, const std::string& set_text,
              const std::string& gens_text, const Output& out) {
  const auto doc = resolve_model(model_spec);
  const auto& model = doc.model;
  const AtomMask set = parse_mask(model, set_text);
  const auto gens = parse_generators(gens_text);
  for (const auto& g : gens) {
    if (g.kind != Kind::C) model.check_topology(g.index);
  }
  const auto r = orbit(model, set, gens);
  if (out.json()) {
    json sets = json::array();
    for (std::size_t i = 0; i < r.size(); ++i) {
      sets.push_back({{"set", mask_to_json(model, r.sets[i])},
                      {"word", to_string(r.witnesses[i])}});
    }
    print_json({{"model", doc.name.empty() ? model_spec : doc.name},
                {"initial", mask_to_json(model, set)},
                {"generators", to_string(std::span<const Generator>(r.generators))},
                {"size", r.size()},
                {"orbit", sets}});
    return kOk;
  }
  std::cout << "orbit of " << format_mask(model, set) << " under "
            << to_string(std::span<const Generator>(r.generators)) << ": " << r.size()
            << " sets\n";
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::cout << "  " << to_string(r.witnesses[i]) << "  " << format_mask(model, r.sets[i])
              << "\n";
  }
  return kOk;
}

std::vector<OpWord> read_words(const std::string& spec, std::uint32_t n) {
  if (spec == "canonical") return kge_words(n);
  std::ifstream in(spec);
  if (!in) throw UsageError("--words: expected 'canonical' or a readable file, got '" + spec + "'");
  std::vector<OpWord> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_word(line));
  }
  if (out.empty()) throw UsageError("--words file '" + spec + "' lists no words");
  return out;
}

int cmd_poset(const std::string& model_spec, const std::string& words_spec, bool dot,
              const Output& out) {
  const auto doc = resolve_model(model_spec);
  const auto n = static_cast<std::uint32_t>(doc.model.topology_count());
  const auto words = read_words(words_spec, n);
  for (const auto& w : words) {
    if (w.max_index() > n) {
      throw UsageError("word " + to_string(w) + " uses a topology beyond n = " +
                       std::to_string(n));
    }
  }
  const auto po = partial_order(doc.model, words);
  if (dot || out.dot()) {
    std::cout << hasse_dot(po);
    return kOk;
  }
  if (out.json()) {
    json classes = json::array();
    for (std::size_t r : po.representatives) {
      json members = json::array();
      for (std::size_t i = 0; i < po.elements.size(); ++i) {
        if (po.class_of[i] == po.class_of[r]) members.push_back(to_string(po.elements[i]));
      }
      classes.push_back(members);
    }
    json hasse = json::array();
    for (const auto& [a, b] : po.hasse) {
      hasse.push_back({to_string(po.elements[po.representatives[a]]),
                       to_string(po.elements[po.representatives[b]])});
    }
    print_json({{"model", doc.name.empty() ? model_spec : doc.name},
                {"words", po.elements.size()},
                {"classes", classes},
                {"hasse", hasse}});
    return kOk;
  }
  std::cout << po.elements.size() << " words, " << po.representatives.size()
            << " distinct operators, " << po.hasse.size() << " covering relations\n";
  for (const auto& [a, b] : po.hasse) {
    std::cout << "  " << to_string(po.elements[po.representatives[a]]) << " < "
              << to_string(po.elements[po.representatives[b]]) << "\n";
  }
  return kOk;
}

int cmd_separate(std::uint32_t n, const std::string& a_text, const std::string& b_text,
                 const Output& out) {
  check_n(n);
  // Inputs are reduced first; equal normal forms cannot be separated.
  const OpWord a = normalize(parse_word(a_text), n);
  const OpWord b = normalize(parse_word(b_text), n);
  if (a == b) {
    if (out.json()) {
      print_json({{"n", n}, {"a", to_string(a)}, {"b", to_string(b)}, {"separated", false}});
    } else {
      std::cout << "both words normalize to " << to_string(a) << "\n";
    }
    return kVerifyFailed;
  }
  const auto w = separate_pair(a, b, n);
  if (out.json()) {
    json j{{"n", n}, {"a", to_string(a)}, {"b", to_string(b)}, {"separated", w.has_value()}};
    if (w) {
      const auto model = staircase(n, w->staircase);
      j["model"] = "staircase:" + std::to_string(n) + ":" + std::to_string(w->staircase);
      j["subset"] = mask_to_json(model, w->subset);
      j["a_value"] = mask_to_json(model, evaluate(a, model, w->subset));
      j["b_value"] = mask_to_json(model, evaluate(b, model, w->subset));
    }
    print_json(j);
    return w ? kOk : kVerifyFailed;
  }
  if (!w) {
    std::cout << to_string(a) << " and " << to_string(b)
              << " agree on every staircase model for n = " << n << "\n";
    return kVerifyFailed;
  }
  const auto model = staircase(n, w->staircase);
  std::cout << "staircase:" << n << ":" << w->staircase << " subset "
            << format_mask(model, w->subset) << "\n"
            << "  " << to_string(a) << " -> " << format_mask(model, evaluate(a, model, w->subset))
            << "\n"
            << "  " << to_string(b) << " -> " << format_mask(model, evaluate(b, model, w->subset))
            << "\n";
  return kOk;
}

int cmd_verify(const std::string& suite, const VerifyOptions& opt, const Output& out) {
  std::vector<CriterionResult> results;
  if (suite == "all") {
    for (const auto& s : suites()) {
      results.push_back(run_suite(s.name, opt));
      if (!out.json()) {
        std::cout << summary_line(results.back()) << "\n";
        for (const auto& d : results.back().details) std::cout << "    " << d << "\n";
        std::cout.flush();
      }
    }
  } else {
    results.push_back(run_suite(suite, opt));
    if (!out.json()) {
      std::cout << summary_line(results.back()) << "\n";
      for (const auto& d : results.back().details) std::cout << "    " << d << "\n";
    }
  }
  bool ok = true;
  json arr = json::array();
  for (const auto& r : results) {
    ok = ok && r.passed;
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"passed", r.passed},
                   {"seconds", r.seconds},
                   {"budget_seconds", r.budget_seconds},
                   {"details", r.details}});
  }
  if (out.json()) {
    print_json({{"passed", ok}, {"criteria", arr}});
  } else if (results.size() > 1) {
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.passed;
    std::cout << passed << "/" << results.size() << " criteria passed\n";
  }
  return ok ? kOk : kVerifyFailed;
}

json search_json(const SearchResult& r) {
  json stages = json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"points", s.points},
                      {"method", s.method},
                      {"spaces", s.spaces},
                      {"found", s.found},
                      {"complete", s.complete}});
  }
  json j{{"target", to_string(r.target)},
         {"points", r.min_points},
         {"minimal", r.minimal},
         {"value", r.value},
         {"stages", stages},
         {"seconds", r.seconds}};
  ModelDocument doc{r.space.to_model(), std::string(to_string(r.target)) + " witness", "",
                    json::object()};
  j["model"] = model_to_json(doc);
  if (r.set) j["set"] = mask_to_json(doc.model, *r.set);
  return j;
}

int cmd_search(const std::string& target_text, std::size_t points, std::size_t limit,
               const SearchOptions& opt, const Output& out) {
  const auto target = search_target_from_string(target_text);
  if (!target) throw UsageError("--target must be EVEN17, SET14 or SET34");
  std::optional<SearchResult> r;
  if (points > 0) {
    r = search_points(*target, points, opt);
  } else {
    try {
      r = find_min_points(*target, limit, opt);
    } catch (const NotFoundWithinLimit& e) {
      if (out.json()) {
        print_json({{"target", to_string(*target)}, {"found", false}, {"limit", limit},
                    {"message", e.what()}});
      } else {
        std::cout << e.what() << "\n";
      }
      return kVerifyFailed;
    }
  }
  if (!r) {
    if (out.json()) {
      print_json({{"target", to_string(*target)}, {"found", false}, {"points", points}});
    } else {
      std::cout << "no " << to_string(*target) << " witness on " << points << " points\n";
    }
    return kVerifyFailed;
  }
  if (out.json()) {
    auto j = search_json(*r);
    j["found"] = true;
    print_json(j);
    return kOk;
  }
  const auto model = r->space.to_model();
  std::cout << to_string(r->target) << ": " << r->min_points << " points"
            << (r->minimal ? " (minimal)" : "") << ", value " << r->value << "\n";
  for (const auto& s : r->stages) {
    std::cout << "  " << s.points << " points, " << s.method << ": " << s.spaces
              << " spaces" << (s.found ? ", found" : "") << "\n";
  }
  if (r->set) std::cout << "set " << format_mask(model, *r->set) << "\n";
  std::cout << serialize_model(model);
  return kOk;
}

int cmd_model(const std::string& spec, bool list, bool check, const Output& out) {
  if (list || spec.empty()) {
    const auto entries = builtin_models();
    if (out.json()) {
      json a = json::array();
      for (const auto& e : entries) a.push_back({{"name", e.name}, {"description", e.description}});
      print_json(a);
    } else {
      for (const auto& e : entries) std::cout << e.name << "  " << e.description << "\n";
    }
    return kOk;
  }
  const auto doc = resolve_model(spec);
  if (!check) {
    std::cout << serialize_model(doc);
    return kOk;
  }
  const auto rep = validate(doc.model);
  if (out.json()) {
    json checks = json::object();
    for (const auto* c : rep.checks()) {
      checks[c->name] = {{"passed", c->passed}, {"counterexample", c->counterexample}};
    }
    print_json({{"model", spec}, {"ok", rep.ok()}, {"exhaustive", rep.exhaustive},
                {"checks", checks}});
  } else {
    for (const auto* c : rep.checks()) {
      std::cout << (c->passed ? "ok   " : "FAIL ") << c->name;
      if (!c->passed) std::cout << ": " << c->counterexample;
      std::cout << "\n";
    }
  }
  return rep.ok() ? kOk : kVerifyFailed;
}

int run(int argc, char** argv) {
  CLI::App app{"Closure, interior, frontier and complement operators on polytopological spaces"};
  app.require_subcommand(1);
  Output out;

  std::uint32_t n = 1;
  std::string word, word2, model_spec, set_text, gens_text, words_spec = "canonical";
  bool dot = false;

  auto* en = app.add_subcommand("enumerate", "List the canonical even words for n topologies");
  en->add_option("-n", n, "Number of topologies")->required();
  add_format(en, out);

  auto* no = app.add_subcommand("normalize", "Reduce a word to canonical form");
  no->add_option("-n", n, "Number of topologies")->required();
  no->add_option("word", word, "Word, e.g. \"i1 f2 k1\"")->required();
  add_format(no, out);

  auto* orb = app.add_subcommand("orbit", "Orbit of a set under a generator list");
  orb->add_option("--model", model_spec, "Builtin name or model file")->required();
  orb->add_option("--set", set_text, "Atom names or hex mask")->required();
  orb->add_option("--gens", gens_text, "Generators, e.g. k1,f1,c")->required();
  add_format(orb, out);

  auto* po = app.add_subcommand("poset", "Order among operators on a model");
  po->add_option("--model", model_spec, "Builtin name or model file")->required();
  po->add_option("--words", words_spec, "'canonical' or a file with one word per line")
      ->capture_default_str();
  po->add_flag("--dot", dot, "Emit the Hasse diagram in DOT");
  add_format(po, out, true);

  auto* se = app.add_subcommand("separate", "Find a staircase subset separating two words");
  se->add_option("-n", n, "Number of topologies")->required();
  se->add_option("a", word, "First word")->required();
  se->add_option("b", word2, "Second word")->required();
  add_format(se, out);

  VerifyOptions vopt;
  vopt.threads = default_threads();
  std::string suite = "all";
  auto* ve = app.add_subcommand("verify", "Run acceptance suites");
  ve->add_option("--suite", suite, "Suite name, number or 'all'")->capture_default_str();
  ve->add_option("--threads", vopt.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  ve->add_option("--set14-budget", vopt.set14_budget_seconds, "Seconds for the 7-point 14-set search")
      ->capture_default_str();
  ve->add_option("--set34-budget", vopt.set34_budget_seconds,
                 "Seconds for the 8-point 34-set search (0 skips)")
      ->capture_default_str();
  ve->add_option("--seed", vopt.seed, "Random seed")->capture_default_str();
  bool list_suites = false;
  ve->add_flag("--list", list_suites, "List suites and exit");
  add_format(ve, out);

  SearchOptions sopt;
  std::string target = "EVEN17";
  std::size_t points = 0, limit = 7;
  auto* sr = app.add_subcommand("search", "Search small finite spaces");
  sr->add_option("--target", target, "EVEN17, SET14 or SET34")->capture_default_str();
  sr->add_option("--points", points, "Search this size only")
      ->check(CLI::Range(std::size_t{1}, kMaxSearchPoints));
  sr->add_option("--limit", limit, "Largest size tried when minimizing")
      ->check(CLI::Range(std::size_t{1}, kMaxSearchPoints))
      ->capture_default_str();
  sr->add_flag("--bounded", sopt.bounded, "Allow randomized search above 7 points");
  sr->add_option("--seed", sopt.seed, "Random seed")->capture_default_str();
  sr->add_option("--time-budget", sopt.time_budget_seconds, "Seconds")->capture_default_str();
  add_format(sr, out);

  bool list_models = false, check_model = false;
  auto* mo = app.add_subcommand("model", "Print, list or validate models");
  mo->add_option("spec", model_spec, "Builtin name or model file");
  mo->add_flag("--list", list_models, "List builtin models");
  mo->add_flag("--validate", check_model, "Check the closure axioms and saturation");
  add_format(mo, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*en) return cmd_enumerate(n, out);
    if (*no) return cmd_normalize(n, word, out);
    if (*orb) return cmd_orbit(model_spec, set_text, gens_text, out);
    if (*po) return cmd_poset(model_spec, words_spec, dot, out);
    if (*se) return cmd_separate(n, word, word2, out);
    if (*ve) {
      if (list_suites) {
        for (const auto& s : suites()) {
          std::cout << s.id << "  " << s.name << "  " << s.summary << "\n";
        }
        return kOk;
      }
      return cmd_verify(suite, vopt, out);
    }
    if (*sr) return cmd_search(target, points, limit, sopt, out);
    if (*mo) return cmd_model(model_spec, list_models, check_model, out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SizeGuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
