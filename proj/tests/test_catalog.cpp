#include <doctest.h>

#include "ktf/catalog.hpp"
#include "ktf/engine.hpp"
#include "ktf/error.hpp"
#include "ktf/kge.hpp"
#include "ktf/model_io.hpp"

using namespace ktf;

TEST_CASE("builtin models") {
  const auto m = p_model();
  CHECK(m.atom_count() == 13);
  CHECK(m.topology_count() == 2);
  CHECK(format_mask(m, m.row(1, 6)) == "{P0,P5,P6,P7}");
  CHECK(format_mask(m, m.row(2, 9)) == "{P0,P8,P9,P10}");
  CHECK(validate(m).ok());
  const auto s21 = staircase(2, 1);
  for (std::size_t j = 1; j <= 2; ++j) {
    for (std::size_t a = 0; a < 13; ++a) CHECK(s21.row(j, a) == m.row(j, a));
  }
  const auto s30 = staircase(3, 0);
  for (std::size_t a = 0; a < 13; ++a) {
    CHECK(s30.row(1, a) == m.row(2, a));
    CHECK(s30.row(3, a) == m.row(2, a));
  }
  const auto s42 = staircase(4, 2);
  CHECK(validate(s42).ok());
  CHECK(compile(parse_word("k2 i*"), s42) == compile(parse_word("k2 i3"), s42));
  CHECK_THROWS_AS(staircase(2, 3), UsageError);

  const auto ref = n1_reference();
  CHECK(ref.model.atom_count() == 4);
  CHECK(validate(ref.model).ok());
  CHECK(distinct_operators(ref.model, kge_words(1)).classes.size() == 17);
  CHECK(ref.extra.contains("search"));
}

TEST_CASE("model resolution") {
  CHECK(resolve_model("pmodel").model.topology_count() == 2);
  CHECK(resolve_model("usual13").model.topology_count() == 1);
  CHECK(resolve_model("staircase:3:2").model.topology_count() == 3);
  CHECK(resolve_model("n1ref").model.atom_count() == 4);
  CHECK_THROWS_AS(resolve_model("staircase:3"), UsageError);
  CHECK_THROWS_AS(resolve_model("nope"), UsageError);
  CHECK(builtin_models().size() == 4);
}

TEST_CASE("constants cross-check against computation") {
  const auto& k = constants();
  CHECK(k.p_table.at(3) == 157);
  for (const auto& [n, v] : k.p_table) CHECK(count_kge(n).total == v);
  REQUIRE(k.kf1_words.size() == 17);
  CHECK(to_string(k.kf1_words.back()) == "f1 i1 f1");
  CHECK(k.n1_order_edges.size() == 27);
  CHECK(k.n1_order_nodes.size() == 17);
  std::size_t total = 0;
  for (const auto& [len, ws] : k.n2_words_by_length) total += ws.size();
  CHECK(total == 60);
  for (std::int64_t n = 1; n <= 20; ++n) {
    CHECK(evaluate(k.p_binomial_form, n) == static_cast<std::int64_t>(p_polynomial(n)));
  }
  CHECK(k.kfkf_n4_count == 31);
}

TEST_CASE("constants schema violations are reported") {
  CHECK_THROWS_AS(parse_constants("[]"), UsageError);
  CHECK_THROWS_AS(parse_constants("{\"p_table\": {\"x\": 1}}"), UsageError);
  auto j = nlohmann::json::parse(embedded_file("constants.json"));
  j["type_formulas"].erase("(KFKF)_r");
  CHECK_THROWS_AS(parse_constants(j.dump()), UsageError);
  j = nlohmann::json::parse(embedded_file("constants.json"));
  j["n1_order_edges"].push_back({"a", "nowhere"});
  CHECK_THROWS_AS(parse_constants(j.dump()), UsageError);
}
