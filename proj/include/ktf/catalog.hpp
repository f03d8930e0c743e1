#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ktf/closure_model.hpp"
#include "ktf/kge.hpp"
#include "ktf/model_io.hpp"
#include "ktf/word.hpp"

namespace ktf {

// Contents of a data file compiled into the library; throws UsageError for
// unknown names.
std::string_view embedded_file(std::string_view name);

// The 13-block Sorgenfrey/usual quotient model: atoms P0..P12, tau_1 the
// Sorgenfrey-like rows, tau_2 the usual-like rows.
const ModelDocument& p_model_document();
ClosureModel p_model();

// 13 blocks, n topologies: 1..m use the tau_1 rows of p_model, m+1..n the
// tau_2 rows.
ClosureModel staircase(std::uint32_t n, std::uint32_t m);

// staircase(1, 0): the usual-like rows alone.
ClosureModel usual13();

// Smallest single-topology space found realizing all 17 even operators
// distinctly, with its search parameters in `extra`.
const ModelDocument& n1_reference();

// One term coef * C(n + top_offset, k) * n^power; `binomial` false means
// the binomial factor is 1.
struct FormulaTerm {
  std::int64_t coef = 1;
  bool binomial = false;
  std::int64_t top_offset = 0;
  std::int64_t k = 0;
  std::uint32_t power = 0;
};

using Formula = std::vector<FormulaTerm>;

std::int64_t evaluate(const Formula& f, std::int64_t n);

struct OrderRelation {
  std::string item;
  OpWord lower;
  OpWord upper;
};

struct Constants {
  std::map<std::uint32_t, std::uint64_t> p_table;
  std::vector<std::int64_t> p_coefficients;  // constant term first
  std::int64_t p_denominator = 1;
  Formula p_binomial_form;
  std::map<WordType, Formula> type_formulas;
  std::vector<OpWord> kf1_words;
  std::map<std::size_t, std::vector<OpWord>> n2_words_by_length;
  std::map<std::string, OpWord> n1_order_nodes;
  std::vector<std::pair<std::string, std::string>> n1_order_edges;
  std::vector<OrderRelation> n2_inequalities;
  std::uint64_t kfkf_n4_count = 0;
  std::map<std::string, std::string> provenance;
};

// Throws UsageError on any schema violation.
Constants parse_constants(std::string_view text);
const Constants& constants();

struct CatalogEntry {
  std::string name;
  std::string description;
};

std::vector<CatalogEntry> builtin_models();

// "pmodel", "usual13", "n1ref", "staircase:N:M", or a path to a model file.
ModelDocument resolve_model(std::string_view spec);

}  // namespace ktf
