#include <doctest.h>

#include <json.hpp>
#include <map>
#include <set>
#include <string>

#include "ktf/catalog.hpp"
#include "ktf/closure_model.hpp"
#include "ktf/error.hpp"
#include "ktf/model_io.hpp"

using namespace ktf;

namespace {

// Row-table oracle straight from the data file: closure is the union of
// the listed rows.
using NameSet = std::set<std::string>;

NameSet oracle_closure(std::size_t j, const NameSet& s) {
  const auto j_doc = nlohmann::json::parse(embedded_file("pmodel.json"));
  const auto& atoms = j_doc["atoms"];
  NameSet out;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    if (!s.count(atoms[a].get<std::string>())) continue;
    for (const auto& name : j_doc["rows"][j - 1][a]) out.insert(name.get<std::string>());
  }
  return out;
}

NameSet names(const ClosureModel& m, const AtomMask& s) {
  NameSet out;
  s.for_each([&](std::size_t a) { out.insert(m.atom_names()[a]); });
  return out;
}

AtomMask mask(const ClosureModel& m, const NameSet& s) {
  AtomMask out(m.atom_count());
  for (const auto& n : s) out.set(*m.find_atom(n));
  return out;
}

NameSet all_atoms(const ClosureModel& m) {
  return NameSet(m.atom_names().begin(), m.atom_names().end());
}

NameSet complement_of(const ClosureModel& m, const NameSet& s) {
  NameSet out;
  for (const auto& a : m.atom_names()) {
    if (!s.count(a)) out.insert(a);
  }
  return out;
}

}  // namespace

TEST_CASE("atom masks") {
  AtomMask a(70);
  a.set(0);
  a.set(69);
  CHECK(a.count() == 2);
  CHECK(a.complement().count() == 68);
  CHECK((a | a.complement()) == AtomMask::full(70));
  CHECK_THROWS_AS(a.set(70), UsageError);
  CHECK_THROWS_AS(a |= AtomMask(3), UsageError);
  CHECK(AtomMask::from_bits(13, 0x914).to_u64() == 0x914);
  AtomMask big(100);
  a.embed_into(big, 30);
  CHECK(big.test(30));
  CHECK(big.test(99));
  CHECK(big.slice(30, 70) == a);
}

TEST_CASE("closure examples on the two-topology model") {
  const auto m = p_model();
  CHECK(names(m, closure(m, 1, mask(m, {"P2"}))) == NameSet{"P0", "P1", "P2"});
  CHECK(closure(m, 1, m.empty_mask()).none());
  CHECK(names(m, closure(m, 2, mask(m, {"P6", "P9"}))) ==
        NameSet{"P0", "P1", "P5", "P6", "P7", "P8", "P9", "P10"});
  CHECK(names(m, closure(m, 1, mask(m, {"P6"}))) == NameSet{"P0", "P5", "P6", "P7"});
  CHECK(names(m, closure(m, 2, mask(m, {"P9"}))) == NameSet{"P0", "P8", "P9", "P10"});

  CHECK(interior(m, 1, m.full_mask()) == m.full_mask());
  CHECK(interior(m, 1, mask(m, {"P11"})).none());
  const auto i2 = names(m, interior(m, 2, mask(m, complement_of(m, {"P9"}))));
  CHECK(i2 == complement_of(m, oracle_closure(2, {"P9"})));
  CHECK_FALSE(i2.count("P9"));

  CHECK(frontier(m, 1, m.empty_mask()).none());
  CHECK(names(m, frontier(m, 2, mask(m, {"P9"}))) == NameSet{"P0", "P8", "P10"});
}

TEST_CASE("closure, interior and frontier agree with the row-table oracle") {
  const auto m = p_model();
  for (std::uint64_t bits = 0; bits <= m.full_bits(); bits += 37) {
    const auto s = AtomMask::from_bits(m.atom_count(), bits);
    const auto sn = names(m, s);
    for (std::size_t j = 1; j <= 2; ++j) {
      const auto k = oracle_closure(j, sn);
      CHECK(names(m, closure(m, j, s)) == k);
      const auto ic = complement_of(m, oracle_closure(j, complement_of(m, sn)));
      CHECK(names(m, interior(m, j, s)) == ic);
      NameSet fr;
      const auto kc = oracle_closure(j, complement_of(m, sn));
      for (const auto& a : k) {
        if (kc.count(a)) fr.insert(a);
      }
      CHECK(names(m, frontier(m, j, s)) == fr);
    }
  }
}

TEST_CASE("closure axioms hold exhaustively on the builtin models") {
  for (const auto& m : {p_model(), usual13(), n1_reference().model, staircase(3, 1)}) {
    const auto n = m.topology_count();
    for (std::uint64_t s = 0; s <= m.full_bits(); ++s) {
      for (std::size_t j = 1; j <= n; ++j) {
        const auto k = m.closure_bits(j, s);
        REQUIRE((s & ~k) == 0);
        REQUIRE(m.closure_bits(j, k) == k);
        REQUIRE(m.interior_bits(j, s) == (m.full_bits() & ~m.closure_bits(j, m.full_bits() & ~s)));
        REQUIRE(m.frontier_bits(j, s) == m.frontier_bits(j, m.full_bits() & ~s));
        if (j < n) REQUIRE((k & ~m.closure_bits(j + 1, s)) == 0);
        // additivity against a fixed second set, and monotonicity
        const std::uint64_t t = (s * 2654435761u) & m.full_bits();
        REQUIRE(m.closure_bits(j, s | t) == (k | m.closure_bits(j, t)));
        REQUIRE((k & ~m.closure_bits(j, s | t)) == 0);
      }
    }
  }
}

TEST_CASE("validation") {
  CHECK(validate(p_model()).ok());
  CHECK(validate(p_model()).saturation_checks_agree());
  CHECK(validate(staircase(4, 2)).ok());

  // P1 missing from its own closure.
  const ClosureModel bad_ext({"P0", "P1"}, {{AtomMask::from_bits(2, 1), AtomMask::from_bits(2, 1)}});
  const auto r1 = validate(bad_ext);
  CHECK_FALSE(r1.extensive.passed);
  CHECK(r1.extensive.counterexample.find("P1") != std::string::npos);

  // tau_1 closure of a strictly larger than its tau_2 closure.
  const ClosureModel bad_nest({"a", "b"}, {{AtomMask::from_bits(2, 3), AtomMask::from_bits(2, 2)},
                                           {AtomMask::from_bits(2, 1), AtomMask::from_bits(2, 2)}});
  const auto r2 = validate(bad_nest);
  CHECK(r2.extensive.passed);
  CHECK_FALSE(r2.nested.passed);
  CHECK(r2.nested.counterexample.find("a") != std::string::npos);

  // Two incomparable chains on three points are not jointly saturated.
  const ClosureModel unsat({"x", "y", "z"},
                           {{AtomMask::from_bits(3, 1), AtomMask::from_bits(3, 3), AtomMask::from_bits(3, 4)},
                            {AtomMask::from_bits(3, 1), AtomMask::from_bits(3, 3), AtomMask::from_bits(3, 7)}});
  const auto r3 = validate(unsat);
  CHECK(r3.nested.passed);
  CHECK(r3.saturation_checks_agree());
}

TEST_CASE("disjoint unions act blockwise") {
  const auto m = p_model();
  const auto s1 = mask(m, {"P2", "P9"});
  const auto s2 = mask(m, {"P6"});
  const std::vector<ClosureModel> models{m, m};
  const std::vector<AtomMask> sets{s1, s2};
  const auto u = disjoint_union(models, sets);
  CHECK(u.model.atom_count() == 26);
  CHECK(u.model.atom_names()[13] == "c1.P0");
  for (std::size_t j = 1; j <= 2; ++j) {
    const auto k = closure(u.model, j, u.set);
    CHECK(k.slice(0, 13) == closure(m, j, s1));
    CHECK(k.slice(13, 13) == closure(m, j, s2));
  }
  CHECK(validate(u.model).ok());
}

TEST_CASE("model files round-trip byte for byte") {
  for (const char* file : {"pmodel.json", "n1_reference.json"}) {
    const auto text = std::string(embedded_file(file));
    CHECK(serialize_model(parse_model(text)) == text);
  }
  const auto m = p_model();
  CHECK(format_mask(m, parse_mask(m, "P0,P3")) == "{P0,P3}");
  CHECK(parse_mask(m, "{P0, P3}") == parse_mask(m, "0x9"));
  CHECK(parse_mask(m, "{}").none());
  CHECK_THROWS_AS(parse_mask(m, "P13"), UsageError);
  CHECK_THROWS_AS(parse_model("{\"n\": 1}"), UsageError);
  CHECK_THROWS_AS(parse_model("not json"), UsageError);
}
