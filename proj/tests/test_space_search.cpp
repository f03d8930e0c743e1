#include <doctest.h>

#include "ktf/closure_model.hpp"
#include "ktf/error.hpp"
#include "ktf/space_search.hpp"

using namespace ktf;

namespace {

// Counts reflexive transitive relations by checking every relation.
std::uint64_t oracle_preorders(std::size_t p) {
  const std::size_t off = p * p;
  std::uint64_t count = 0;
  for (std::uint64_t r = 0; r < (1ull << off); ++r) {
    auto has = [&](std::size_t a, std::size_t b) { return (r >> (a * p + b)) & 1u; };
    bool ok = true;
    for (std::size_t a = 0; a < p && ok; ++a) {
      ok = has(a, a);
      for (std::size_t b = 0; b < p && ok; ++b) {
        for (std::size_t c = 0; c < p && ok; ++c) {
          if (has(a, b) && has(b, c) && !has(a, c)) ok = false;
        }
      }
    }
    count += ok;
  }
  return count;
}

}  // namespace

TEST_CASE("labeled topology counts") {
  const std::vector<std::uint64_t> want{1, 4, 29, 355, 6942};
  for (std::size_t p = 1; p <= 5; ++p) {
    std::uint64_t valid = 0;
    const auto n = enumerate_spaces(p, [&](const PreorderSpace& s) {
      valid += s.valid() && validate(s.to_model()).ok();
      return true;
    });
    CHECK(n == want[p - 1]);
    CHECK(valid == n);
    if (p <= 4) {
      CHECK(oracle_preorders(p) == n);
      CHECK(count_preorders_bruteforce(p) == n);
    }
  }
  CHECK(enumerate_natural_posets(4, [](const PreorderSpace&) { return true; }) == 40);
  CHECK(enumerate_unlabeled(4).size() == 33);
  CHECK_THROWS_AS(enumerate_spaces(8, [](const PreorderSpace&) { return true; }), UsageError);
}

TEST_CASE("canonical forms") {
  PreorderSpace s{3, {0b001, 0b011, 0b100}};
  PreorderSpace t{3, {0b001, 0b010, 0b110}};
  REQUIRE(s.valid());
  REQUIRE(t.valid());
  CHECK(canonical_form(s) == canonical_form(t));
  CHECK((PreorderSpace{2, {0b01, 0b11}}.valid()));
  CHECK_FALSE((PreorderSpace{2, {0b11, 0b01}}.valid()));
  CHECK_FALSE((PreorderSpace{2, {0b10, 0b10}}.valid()));
}

TEST_CASE("minimal spaces") {
  const auto r = find_min_points(SearchTarget::Even17, 5);
  CHECK(r.min_points == 4);
  CHECK(r.minimal);
  CHECK(distinct_even_operators(r.space) == 17);
  CHECK(validate(r.space.to_model()).ok());
  CHECK_THROWS_AS(find_min_points(SearchTarget::Set14, 6), NotFoundWithinLimit);

  PreorderSpace one{1, {1}};
  for (std::uint32_t a = 0; a < 2; ++a) {
    CHECK(kc_orbit_size(one, a) <= 4);
    CHECK(kc_orbit_size(one, a) != 14);
  }
  // Same flags, same answer.
  const auto again = find_min_points(SearchTarget::Even17, 5);
  CHECK(again.space == r.space);
  CHECK(search_target_from_string("SET34") == SearchTarget::Set34);
  CHECK_FALSE(search_target_from_string("set34"));
  CHECK_THROWS_AS(search_points(SearchTarget::Set34, 8), UsageError);
}
