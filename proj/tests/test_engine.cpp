#include <doctest.h>

#include <deque>
#include <set>

#include "ktf/catalog.hpp"
#include "ktf/engine.hpp"
#include "ktf/error.hpp"
#include "ktf/kge.hpp"
#include "ktf/rewrite.hpp"
#include "ktf/space_search.hpp"

using namespace ktf;

namespace {

OpWord w(const char* s) { return parse_word(s); }

// Plain BFS over masks, one generator application at a time.
std::set<AtomMask> oracle_orbit(const ClosureModel& m, const AtomMask& a,
                                const std::vector<Generator>& gens) {
  std::set<AtomMask> seen{a};
  std::deque<AtomMask> todo{a};
  while (!todo.empty()) {
    const auto s = todo.front();
    todo.pop_front();
    for (const auto& g : gens) {
      AtomMask t = g.kind == Kind::C   ? s.complement()
                   : g.kind == Kind::K ? closure(m, g.index, s)
                   : g.kind == Kind::I ? interior(m, g.index, s)
                                       : frontier(m, g.index, s);
      if (seen.insert(t).second) todo.push_back(t);
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("compiled transformations") {
  const auto m = p_model();
  const auto id = compile(w("Id"), m);
  for (std::uint32_t s = 0; s < id.size(); ++s) REQUIRE(id[s] == s);
  for (const auto& model : {m, usual13(), n1_reference().model}) {
    const auto z = compile(w("i1 f1 k1"), model);
    CHECK(z == Transformation::constant(model.atom_count(), 0));
  }
  const auto p2 = AtomMask::from_bits(13, 1u << 2);
  CHECK(compile(w("k1 i*"), m).at(p2) == closure(m, 1, interior(m, 1, p2)));
  for (std::uint32_t s = 0; s < 8192; s += 97) {
    const auto a = AtomMask::from_bits(13, s);
    CHECK(compile(w("c f2 k1 i2"), m).at(a) ==
          evaluate(w("c f2 k1 i2"), m, a));
  }
  CHECK(compile(w("i2"), m).leq(compile(w("k1"), m)));
  CHECK_FALSE(compile(w("k1"), m).leq(compile(w("i2"), m)));
}

TEST_CASE("orbits match a plain breadth-first oracle") {
  const auto m = p_model();
  CHECK(orbit(m, m.empty_mask(), {Generator::k(1), Generator::c()}).size() == 2);
  const std::vector<std::vector<Generator>> gen_sets{
      {Generator::k(2), Generator::c()},
      {Generator::k(1), Generator::k(2), Generator::c()},
      {Generator::k(1), Generator::f(2), Generator::i(1), Generator::c()}};
  for (const auto& gens : gen_sets) {
    for (std::uint64_t s = 0; s < 8192; s += 131) {
      const auto a = AtomMask::from_bits(13, s);
      const auto r = orbit(m, a, gens);
      const auto o = oracle_orbit(m, a, gens);
      REQUIRE(r.size() == o.size());
      REQUIRE(std::set<AtomMask>(r.sets.begin(), r.sets.end()) == o);
      REQUIRE(orbit_size(m, s, gens) == o.size());
      for (std::size_t i = 0; i < r.size(); ++i) {
        REQUIRE(evaluate(r.witnesses[i], m, a) == r.sets[i]);
      }
    }
  }
}

TEST_CASE("orbit maxima on the two-topology model") {
  const auto m = p_model();
  auto max_orbit = [&](std::vector<Generator> gens) {
    std::size_t best = 0;
    for (std::uint64_t s = 0; s <= m.full_bits(); ++s) best = std::max(best, orbit_size(m, s, gens));
    return best;
  };
  CHECK(max_orbit({Generator::k(2), Generator::c()}) == 14);
  CHECK(max_orbit({Generator::k(1), Generator::k(2), Generator::c()}) == 26);
  CHECK(max_orbit({Generator::k(2), Generator::f(2), Generator::c()}) <= 34);
  // The general bound 2 p(n) for the full generator set.
  CHECK(max_orbit({Generator::k(1), Generator::k(2), Generator::f(1), Generator::f(2),
                   Generator::c()}) <= 2 * p_polynomial(2));
}

TEST_CASE("distinct operators and order") {
  const auto m = p_model();
  const auto words = kge_words(2);
  const auto part = distinct_operators(m, words);
  CHECK(part.classes.size() == 60);
  const std::vector<OpWord> zeros{w("i1 f2 k1"), w("i2 f1 i1")};
  CHECK(distinct_operators(m, zeros).classes.size() == 1);
  CHECK(distinct_operators(usual13(), kge_words(1)).classes.size() == 17);

  const auto po = partial_order(m, words);
  CHECK(is_reflexive(po.leq));
  CHECK(is_transitive(po.leq));
  CHECK(is_antisymmetric(po.leq));
  const auto reduced = transitive_reduction(po.leq);
  CHECK(transitive_closure(po.leq.size(), reduced) == po.leq);
  const auto dot = hasse_dot(po);
  CHECK(dot.rfind("digraph", 0) == 0);
}

TEST_CASE("transitive closure and reduction") {
  const std::vector<std::pair<std::size_t, std::size_t>> chain{{0, 1}, {1, 2}, {0, 2}};
  const auto c = transitive_closure(3, chain);
  CHECK(c[0][2]);
  CHECK_FALSE(c[2][0]);
  const auto r = transitive_reduction(c);
  CHECK(r == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
}

TEST_CASE("separation") {
  const auto s = separate_pair(w("k1"), w("k2"), 2);
  REQUIRE(s);
  const auto m = staircase(2, s->staircase);
  CHECK(compile(w("k1"), m).at(s->subset) != compile(w("k2"), m).at(s->subset));
  const auto p0 = separate_pair(w("k1"), w("k2"), 2);
  CHECK(p0 == s);
  CHECK_THROWS_AS(separate_pair(w("k1"), w("k1"), 2), UsageError);
  CHECK_THROWS_AS(separate_pair(w("k1 k1"), w("k1"), 2), UsageError);

  const auto words = kge_words(3);
  const auto pairs = separate_all(words, 3, 2);
  CHECK(pairs.size() == 157 * 156 / 2);
  for (const auto& p : pairs) REQUIRE(p.witness);
  // Thread count does not change the result.
  const auto one = separate_all(std::span<const OpWord>(words).first(40), 3, 1);
  const auto many = separate_all(std::span<const OpWord>(words).first(40), 3, 3);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].witness == many[i].witness);
}

TEST_CASE("generated monoids") {
  const auto m = p_model();
  CHECK(monoid_closure(m, {Generator::k(2)}).elements.size() == 2);
  const auto even = monoid_closure(m, parse_generators("k1,k2,i1,i2,f1,f2"));
  CHECK(even.elements.size() == 60);
  for (std::size_t i = 0; i < even.elements.size(); ++i) {
    CHECK(compile(even.witnesses[i], m) == even.elements[i]);
  }
  CHECK_THROWS_AS(monoid_closure(m, parse_generators("k1,k2,i1,i2,f1,f2"), 59),
                  SizeGuardExceeded);
  CHECK_THROWS_AS(parse_generators("k1,,c"), UsageError);
  CHECK_THROWS_AS(parse_generators("k*"), UsageError);
}

TEST_CASE("unsaturated pairs of topologies can exceed the saturated bound") {
  // Scan pairs of three-point topologies that are not nested; the bound of
  // 60 even operators needs saturation and fails on some of them.
  std::vector<PreorderSpace> spaces;
  enumerate_spaces(3, [&](const PreorderSpace& s) {
    spaces.push_back(s);
    return true;
  });
  std::size_t best = 0;
  std::optional<ClosureModel> worst;
  for (const auto& a : spaces) {
    for (const auto& b : spaces) {
      std::vector<std::vector<AtomMask>> rows(2);
      for (std::size_t p = 0; p < 3; ++p) {
        rows[0].push_back(AtomMask::from_bits(3, a.down[p]));
        rows[1].push_back(AtomMask::from_bits(3, b.down[p]));
      }
      ClosureModel model({"x", "y", "z"}, rows);
      const auto size = monoid_closure(model, parse_generators("k1,k2,i1,i2,f1,f2")).elements.size();
      if (size > best) {
        best = size;
        worst.emplace(model);
      }
    }
  }
  MESSAGE("largest even monoid over pairs of 3-point topologies: " << best);
  REQUIRE(worst);
  CHECK(best > 60);
  CHECK_FALSE(validate(*worst).ok());
  CHECK_THROWS_AS(monoid_closure(*worst, parse_generators("k1,k2,i1,i2,f1,f2"), 60),
                  SizeGuardExceeded);
}
