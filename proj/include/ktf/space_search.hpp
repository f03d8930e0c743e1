#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ktf/atom_mask.hpp"
#include "ktf/closure_model.hpp"

namespace ktf {

// Spaces handled by the search have at most this many points.
inline constexpr std::size_t kMaxSearchPoints = 8;
// Exhaustive labeled enumeration is refused above this many points unless
// explicitly bounded.
inline constexpr std::size_t kMaxExhaustivePoints = 7;

// A finite topology as its specialization preorder: down[a] is the set of
// points b with b <= a, which is the closure of {a}.
struct PreorderSpace {
  std::size_t points = 0;
  std::vector<std::uint8_t> down;

  bool valid() const;  // reflexive and transitive
  // Row-concatenated relation, the order used for canonical forms.
  std::uint64_t encoding() const;
  ClosureModel to_model() const;

  friend bool operator==(const PreorderSpace&, const PreorderSpace&) = default;
};

// Every labeled topology on `points` points exactly once, in a fixed order.
// Returns the number of spaces visited. The callback may return false to
// stop early.
std::uint64_t enumerate_spaces(std::size_t points,
                               const std::function<bool(const PreorderSpace&)>& f);

// Posets whose order is compatible with the point labels (b < a implies
// b's label is smaller); every finite T0 topology appears at least once up
// to relabeling.
std::uint64_t enumerate_natural_posets(
    std::size_t points, const std::function<bool(const PreorderSpace&)>& f);

// Independent count: all reflexive relations filtered for transitivity.
std::uint64_t count_preorders_bruteforce(std::size_t points);

// The relabeling with the smallest encoding.
PreorderSpace canonical_form(const PreorderSpace& s);

// One representative per homeomorphism class, sorted by encoding.
std::vector<PreorderSpace> enumerate_unlabeled(std::size_t points);

enum class SearchTarget { Even17, Set14, Set34 };

std::string_view to_string(SearchTarget t);
std::optional<SearchTarget> search_target_from_string(std::string_view s);

struct SearchOptions {
  std::uint64_t seed = 1;
  // Applies to the 7-point orbit scans and the randomized search.
  double time_budget_seconds = 60.0;
  // Also search above kMaxExhaustivePoints (randomized, no minimality).
  bool bounded = false;
};

struct SearchStage {
  std::size_t points = 0;
  std::string method;  // "exhaustive" or "random"
  std::uint64_t spaces = 0;
  bool found = false;
  // Every space of this size was examined (no early stop on the budget).
  bool complete = false;
};

struct SearchResult {
  SearchTarget target = SearchTarget::Even17;
  std::size_t min_points = 0;
  // True when every smaller size was ruled out exhaustively.
  bool minimal = false;
  PreorderSpace space;
  std::optional<AtomMask> set;  // initial set, for the orbit targets
  std::size_t value = 0;        // distinct operators or orbit size
  std::vector<SearchStage> stages;
  double seconds = 0;
};

// Distinct even single-topology operators on a space, and the largest
// orbit of one set under {k, c} and {k, f, c}.
std::size_t distinct_even_operators(const PreorderSpace& s);
std::size_t kc_orbit_size(const PreorderSpace& s, std::uint32_t set);
std::size_t kfc_orbit_size(const PreorderSpace& s, std::uint32_t set);

// Smallest number of points (<= limit) with a witness for the target.
// Throws NotFoundWithinLimit when the scan ends without one.
SearchResult find_min_points(SearchTarget target, std::size_t limit,
                             const SearchOptions& options = {});

// Search restricted to one size; nullopt when nothing was found.
std::optional<SearchResult> search_points(SearchTarget target, std::size_t points,
                                          const SearchOptions& options = {});

}  // namespace ktf
