#include "ktf/catalog.hpp"

#include <charconv>
#include <filesystem>

#include "ktf/embedded_data.hpp"
#include "ktf/error.hpp"

namespace ktf {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw UsageError(std::string("constants: missing '") + key + "'");
  }
  return j.at(key);
}

std::uint64_t parse_uint(std::string_view s, const std::string& what) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw UsageError("constants: bad integer '" + std::string(s) + "' in " + what);
  }
  return v;
}

Formula parse_formula(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) {
    throw UsageError("constants: formula for " + what + " must be a nonempty list");
  }
  Formula f;
  for (const auto& t : j) {
    FormulaTerm term;
    if (!t.is_object() || !t.contains("coef") || !t["coef"].is_number_integer()) {
      throw UsageError("constants: term of " + what + " lacks an integer coef");
    }
    term.coef = t["coef"].get<std::int64_t>();
    if (t.contains("binom")) {
      const auto& b = t["binom"];
      if (!b.is_array() || b.size() != 2 || !b[0].is_number_integer() ||
          !b[1].is_number_integer()) {
        throw UsageError("constants: binom of " + what + " must be [offset, k]");
      }
      term.binomial = true;
      term.top_offset = b[0].get<std::int64_t>();
      term.k = b[1].get<std::int64_t>();
    }
    if (t.contains("power")) {
      if (!t["power"].is_number_unsigned()) {
        throw UsageError("constants: power of " + what + " must be a natural number");
      }
      term.power = t["power"].get<std::uint32_t>();
    }
    f.push_back(term);
  }
  return f;
}

std::vector<OpWord> parse_words(const json& j, const std::string& what) {
  if (!j.is_array()) throw UsageError("constants: " + what + " must be a list");
  std::vector<OpWord> out;
  for (const auto& w : j) {
    if (!w.is_string()) throw UsageError("constants: " + what + " holds a non-string");
    out.push_back(parse_word(w.get<std::string>()));
  }
  return out;
}

ModelDocument load_embedded_model(std::string_view file) {
  return parse_model(embedded_file(file));
}

std::int64_t binomial(std::int64_t top, std::int64_t k) {
  if (k < 0 || top < k) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (top - k + i) / i;
  return r;
}

}  // namespace

std::string_view embedded_file(std::string_view name) {
  for (std::size_t i = 0; i < detail::kEmbeddedFileCount; ++i) {
    if (detail::kEmbeddedFiles[i].name == name) return detail::kEmbeddedFiles[i].content;
  }
  throw UsageError("no embedded data file '" + std::string(name) + "'");
}

const ModelDocument& p_model_document() {
  static const ModelDocument doc = load_embedded_model("pmodel.json");
  return doc;
}

ClosureModel p_model() { return p_model_document().model; }

ClosureModel staircase(std::uint32_t n, std::uint32_t m) {
  if (n < 1) throw UsageError("staircase needs n >= 1");
  if (m > n) {
    throw UsageError("staircase level m = " + std::to_string(m) +
                     " out of range 0.." + std::to_string(n));
  }
  const ClosureModel& p = p_model_document().model;
  std::vector<std::vector<AtomMask>> rows;
  for (std::uint32_t t = 1; t <= n; ++t) {
    const std::size_t src = t <= m ? 1 : 2;
    std::vector<AtomMask> r;
    for (std::size_t a = 0; a < p.atom_count(); ++a) r.push_back(p.row(src, a));
    rows.push_back(std::move(r));
  }
  return ClosureModel(p.atom_names(), std::move(rows), ModelKind::BlockQuotient);
}

ClosureModel usual13() { return staircase(1, 0); }

const ModelDocument& n1_reference() {
  static const ModelDocument doc = load_embedded_model("n1_reference.json");
  return doc;
}

std::int64_t evaluate(const Formula& f, std::int64_t n) {
  std::int64_t total = 0;
  for (const auto& t : f) {
    std::int64_t v = t.coef;
    if (t.binomial) v *= binomial(n + t.top_offset, t.k);
    for (std::uint32_t i = 0; i < t.power; ++i) v *= n;
    total += v;
  }
  return total;
}

Constants parse_constants(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("constants: invalid JSON: ") + e.what());
  }
  Constants c;
  const auto& pt = require(j, "p_table");
  if (!pt.is_object()) throw UsageError("constants: p_table must be an object");
  for (auto it = pt.begin(); it != pt.end(); ++it) {
    if (!it->is_number_unsigned()) throw UsageError("constants: p_table value");
    c.p_table[static_cast<std::uint32_t>(parse_uint(it.key(), "p_table"))] =
        it->get<std::uint64_t>();
  }
  const auto& pp = require(j, "p_polynomial");
  for (const auto& v : require(pp, "coefficients")) {
    if (!v.is_number_integer()) throw UsageError("constants: p coefficients");
    c.p_coefficients.push_back(v.get<std::int64_t>());
  }
  if (!require(pp, "denominator").is_number_integer() ||
      pp["denominator"].get<std::int64_t>() <= 0) {
    throw UsageError("constants: p denominator");
  }
  c.p_denominator = pp["denominator"].get<std::int64_t>();
  c.p_binomial_form = parse_formula(require(j, "p_binomial_form"), "p_binomial_form");

  const auto& tf = require(j, "type_formulas");
  if (!tf.is_object()) throw UsageError("constants: type_formulas must be an object");
  for (auto it = tf.begin(); it != tf.end(); ++it) {
    const auto t = word_type_from_label(it.key());
    if (!t) throw UsageError("constants: unknown word type '" + it.key() + "'");
    c.type_formulas[*t] = parse_formula(*it, it.key());
  }
  if (c.type_formulas.size() != kWordTypeCount) {
    throw UsageError("constants: type_formulas must cover all " +
                     std::to_string(kWordTypeCount) + " word types");
  }

  c.kf1_words = parse_words(require(j, "kf1_words"), "kf1_words");
  const auto& byl = require(j, "n2_words_by_length");
  if (!byl.is_object()) throw UsageError("constants: n2_words_by_length");
  for (auto it = byl.begin(); it != byl.end(); ++it) {
    c.n2_words_by_length[parse_uint(it.key(), "n2_words_by_length")] =
        parse_words(*it, "n2_words_by_length");
  }

  const auto& nodes = require(j, "n1_order_nodes");
  if (!nodes.is_object()) throw UsageError("constants: n1_order_nodes");
  for (auto it = nodes.begin(); it != nodes.end(); ++it) {
    if (!it->is_string()) throw UsageError("constants: n1 order node word");
    c.n1_order_nodes[it.key()] = parse_word(it->get<std::string>());
  }
  for (const auto& e : require(j, "n1_order_edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw UsageError("constants: n1 order edges must be [from, to] pairs");
    }
    const auto a = e[0].get<std::string>();
    const auto b = e[1].get<std::string>();
    if (!c.n1_order_nodes.count(a) || !c.n1_order_nodes.count(b)) {
      throw UsageError("constants: n1 order edge " + a + "->" + b +
                       " names an unknown node");
    }
    c.n1_order_edges.emplace_back(a, b);
  }

  for (const auto& r : require(j, "n2_inequalities")) {
    OrderRelation rel;
    rel.item = require(r, "item").get<std::string>();
    rel.lower = parse_word(require(r, "lower").get<std::string>());
    rel.upper = parse_word(require(r, "upper").get<std::string>());
    c.n2_inequalities.push_back(std::move(rel));
  }

  if (!require(j, "kfkf_n4_count").is_number_unsigned()) {
    throw UsageError("constants: kfkf_n4_count");
  }
  c.kfkf_n4_count = j["kfkf_n4_count"].get<std::uint64_t>();

  if (j.contains("provenance")) {
    for (auto it = j["provenance"].begin(); it != j["provenance"].end(); ++it) {
      c.provenance[it.key()] = it->get<std::string>();
    }
  }
  return c;
}

const Constants& constants() {
  static const Constants c = parse_constants(embedded_file("constants.json"));
  return c;
}

std::vector<CatalogEntry> builtin_models() {
  return {
      {"pmodel", "13 blocks, n = 2: Sorgenfrey-like tau_1, usual-like tau_2"},
      {"usual13", "13 blocks, n = 1: the usual-like rows alone"},
      {"n1ref", "smallest single-topology space with 17 distinct even operators"},
      {"staircase:N:M", "13 blocks, n = N: tau_1..tau_M Sorgenfrey-like, the rest usual-like"},
  };
}

ModelDocument resolve_model(std::string_view spec) {
  if (spec == "pmodel") return p_model_document();
  if (spec == "usual13") return {usual13(), "usual13", "", json()};
  if (spec == "n1ref") return n1_reference();
  if (spec.rfind("staircase:", 0) == 0) {
    const auto rest = spec.substr(10);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) {
      throw UsageError("staircase model must be written staircase:N:M");
    }
    const auto n = parse_uint(rest.substr(0, colon), "staircase n");
    const auto m = parse_uint(rest.substr(colon + 1), "staircase m");
    if (n < 1 || n > 64) throw UsageError("staircase n must be in 1..64");
    return {staircase(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(m)),
            std::string(spec), "", json()};
  }
  const std::filesystem::path path{std::string(spec)};
  if (!std::filesystem::exists(path)) {
    throw UsageError("unknown model '" + std::string(spec) +
                     "' (not a builtin and no such file)");
  }
  return load_model_file(path);
}

}  // namespace ktf
