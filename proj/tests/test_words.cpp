#include <doctest.h>

#include <random>
#include <set>

#include "ktf/catalog.hpp"
#include "ktf/engine.hpp"
#include "ktf/error.hpp"
#include "ktf/kge.hpp"
#include "ktf/rewrite.hpp"
#include "ktf/word.hpp"

using namespace ktf;

namespace {

OpWord w(const char* s) { return parse_word(s); }

std::vector<Generator> all_generators(std::uint32_t n) {
  std::vector<Generator> g;
  for (std::uint32_t j = 1; j <= n; ++j) {
    g.push_back(Generator::k(j));
    g.push_back(Generator::i(j));
    g.push_back(Generator::f(j));
  }
  g.push_back(Generator::c());
  return g;
}

}  // namespace

TEST_CASE("word syntax") {
  for (const char* s : {"Id", "0", "1", "k1", "k1 i2 f1", "c k2 f1 k2 i* k*", "f1 i1 f*"}) {
    CHECK(to_string(parse_word(s)) == s);
  }
  CHECK(w("k1i2") == w("k1 i2"));
  CHECK_THROWS_AS(parse_word(""), UsageError);
  CHECK_THROWS_AS(parse_word("c 0"), UsageError);
  CHECK(w("0").length() == 3);
  CHECK(w("1").length() == 4);
  CHECK(w("k2 f1 k2 i* k*").length() == 5);
  CHECK_THROWS_AS(parse_word("q1"), UsageError);
  CHECK_THROWS_AS(parse_word("k"), UsageError);
  CHECK_THROWS_AS(parse_word("k0"), UsageError);
}

TEST_CASE("shortlex order") {
  CHECK(shortlex_less(w("Id"), w("k1")));
  CHECK(shortlex_less(w("k2"), w("k1 k1")));
  CHECK(shortlex_less(w("k1"), w("k2")));
  CHECK(shortlex_less(w("k2"), w("i1")));
  CHECK(shortlex_less(w("0"), w("i* f* k*")));
  CHECK_FALSE(shortlex_less(w("k1"), w("k1")));
}

TEST_CASE("constants absorb on the left") {
  CHECK(prepend(Generator::k(1), OpWord::zero()) == OpWord::zero());
  CHECK(prepend(Generator::c(), OpWord::zero()) == OpWord::one());
  CHECK(prepend(Generator::c(), OpWord::one()) == OpWord::zero());
  CHECK(prepend(Generator::f(1), OpWord::one()) == OpWord::zero());
  CHECK(prepend(Generator::i(2), OpWord::one()) == OpWord::one());
  CHECK(concat(w("k1 f2"), w("i1")) == w("k1 f2 i1"));
  CHECK(concat(OpWord::zero(), w("k1")) == OpWord::zero());
}

TEST_CASE("parity decomposition") {
  const auto r = parity_reduce(w("k1 c i1 c c k1 c f1 k1 c"));
  CHECK(r.parity == Parity::Even);
  CHECK(r.core == w("k1 i1 f1 i1"));
  CHECK(parity_reduce(w("Id")).parity == Parity::Even);
  CHECK(parity_reduce(w("Id")).core == w("Id"));
  CHECK(parity_reduce(w("c")).parity == Parity::Odd);
  CHECK(parity_reduce(w("c")).core == w("Id"));
}

TEST_CASE("normalization examples") {
  CHECK(normalize(w("i1 f2 k1"), 2) == OpWord::zero());
  CHECK(normalize(w("f1 k2 f1 k1"), 2) == w("k2 f1 k1"));
  CHECK(normalize(w("k2 i1"), 2) == w("k2 i*"));
  CHECK(normalize(w("f1 f2"), 2) == w("f1 f2"));
  CHECK(normalize(w("c c"), 1) == w("Id"));
  CHECK(normalize(OpWord::one(), 2) == OpWord::one());
  CHECK(normalize(w("c i1 f2 k1"), 2) == OpWord::one());
  CHECK(normalize(w("k1 c i1 c c k1 c f1 k1 c"), 1) == OpWord::zero());
  CHECK_THROWS_AS(normalize(w("k3"), 2), UsageError);
}

TEST_CASE("canonical word enumeration") {
  CHECK(kge_words(1).size() == 17);
  CHECK(kge_words(2).size() == 60);
  std::vector<OpWord> kfi;
  for (const auto& g : enumerate_kge(2)) {
    if (g.type == WordType::KFI_R) kfi = g.words;
  }
  CHECK(kfi == std::vector<OpWord>{w("k2 f1 i1"), w("k2 f1 i2")});
  CHECK(count_kge(4).per_type.at(WordType::KFKF_R) == 31);
  for (auto t : all_word_types()) {
    if (shape(t).kinds.size() >= 3 && label(t).front() == '(') {
      CHECK(count_kge(1).per_type.at(t) == 0);
    }
    CHECK(word_type_from_label(label(t)) == t);
  }
  for (std::uint32_t n = 1; n <= 8; ++n) CHECK(count_kge(n).total == p_polynomial(n));
  CHECK(classify(w("0"), 3) == WordType::IFK);
  CHECK(classify(w("Id"), 3) == WordType::Id);
  CHECK_FALSE(is_kge(w("k1 k1"), 2));
  CHECK(is_canonical(w("c k1 i*"), 1));
  CHECK(is_canonical(OpWord::one(), 1));
}

TEST_CASE("rule set") {
  std::set<std::string> names;
  for (const auto& r : rewrite_rules()) {
    CHECK(names.insert(std::string(r.name)).second);
    CHECK_FALSE(describe(r).empty());
  }
  // Every application strictly decreases the measure.
  std::mt19937 rng(7);
  const auto gens = all_generators(3);
  for (int t = 0; t < 2000; ++t) {
    std::vector<Generator> g;
    const int len = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) {
      Generator x = gens[rng() % (gens.size() - 1)];
      g.push_back(x);
    }
    const OpWord word(g);
    for (const auto& app : rewrites(word)) {
      CHECK(measure(app.result) < measure(word));
    }
  }
  CHECK(instantiate_stars(w("k2 f1 k2 i* k*")) == w("k2 f1 k2 i2 k2"));
  CHECK(instantiate_stars(w("i* k1")) == w("i1 k1"));
  CHECK(stars_justified(w("k1 i* k*")));
  CHECK_FALSE(stars_justified(w("f1 k*")));
}

TEST_CASE("normal forms are semantically equal to their inputs") {
  // Exhaustive over all words of length <= 4 with n = 2.
  const std::vector<ClosureModel> models{staircase(2, 0), staircase(2, 1), staircase(2, 2)};
  const auto gens = all_generators(2);
  std::vector<OpWord> layer{OpWord::identity()};
  std::size_t checked = 0;
  for (int len = 0; len <= 4; ++len) {
    std::vector<OpWord> next;
    for (const auto& word : layer) {
      const auto nf = normalize(word, 2);
      REQUIRE(is_canonical(nf, 2));
      REQUIRE(normalize(nf, 2) == nf);
      for (const auto& m : models) REQUIRE(compile(word, m) == compile(nf, m));
      ++checked;
      for (const auto& g : gens) next.push_back(prepend(g, word));
    }
    layer = std::move(next);
  }
  CHECK(checked == 1 + 7 + 49 + 343 + 2401);
}
