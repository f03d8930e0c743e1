#include "ktf/space_search.hpp"

#include <algorithm>
#include <array>
#include <bitset>
#include <chrono>
#include <numeric>
#include <random>
#include <set>

#include "ktf/error.hpp"
#include "ktf/kge.hpp"
#include "ktf/rewrite.hpp"

namespace ktf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_points(std::size_t points) {
  if (points < 1 || points > kMaxSearchPoints) {
    throw UsageError("number of points must be in 1.." +
                     std::to_string(kMaxSearchPoints));
  }
}

// Closure lookup for one space: cl[s] is the closure of the point set s.
struct SmallSpace {
  std::uint32_t full = 0;
  std::array<std::uint8_t, 256> cl{};

  explicit SmallSpace(const PreorderSpace& s) {
    full = (1u << s.points) - 1;
    for (std::uint32_t m = 1; m <= full; ++m) {
      const auto low = static_cast<std::size_t>(std::countr_zero(m));
      cl[m] = static_cast<std::uint8_t>(cl[m & (m - 1)] | s.down[low]);
    }
  }
  std::uint32_t k(std::uint32_t s) const { return cl[s]; }
  std::uint32_t i(std::uint32_t s) const { return full & ~cl[full & ~s]; }
  std::uint32_t f(std::uint32_t s) const { return cl[s] & cl[full & ~s]; }
  std::uint32_t c(std::uint32_t s) const { return full & ~s; }
};

// Even single-topology operators as generator kind strings, applied right
// to left.
const std::vector<std::vector<Kind>>& even_operator_kinds() {
  static const std::vector<std::vector<Kind>> ops = [] {
    std::vector<std::vector<Kind>> out;
    for (const auto& w : kge_words(1)) {
      std::vector<Kind> kinds;
      for (const auto& g : w.spelled()) kinds.push_back(g.kind);
      out.push_back(std::move(kinds));
    }
    return out;
  }();
  return ops;
}

template <typename Step>
std::size_t orbit_count(std::uint32_t set, Step&& step) {
  std::bitset<256> seen;
  std::array<std::uint32_t, 256> queue{};
  std::size_t head = 0;
  std::size_t tail = 0;
  queue[tail++] = set;
  seen.set(set);
  while (head < tail) {
    const std::uint32_t s = queue[head++];
    step(s, [&](std::uint32_t t) {
      if (!seen.test(t)) {
        seen.set(t);
        queue[tail++] = t;
      }
    });
  }
  return tail;
}

std::size_t kc_orbit(const SmallSpace& sp, std::uint32_t set) {
  return orbit_count(set, [&](std::uint32_t s, auto&& push) {
    push(sp.k(s));
    push(sp.c(s));
  });
}

std::size_t kfc_orbit(const SmallSpace& sp, std::uint32_t set) {
  return orbit_count(set, [&](std::uint32_t s, auto&& push) {
    push(sp.k(s));
    push(sp.f(s));
    push(sp.c(s));
  });
}

std::size_t even_distinct(const SmallSpace& sp) {
  const std::size_t size = std::size_t{sp.full} + 1;
  std::vector<std::vector<std::uint8_t>> tables;
  for (const auto& kinds : even_operator_kinds()) {
    std::vector<std::uint8_t> t(size);
    for (std::uint32_t s = 0; s < size; ++s) {
      std::uint32_t v = s;
      for (auto it = kinds.rbegin(); it != kinds.rend(); ++it) {
        switch (*it) {
          case Kind::K: v = sp.k(v); break;
          case Kind::I: v = sp.i(v); break;
          case Kind::F: v = sp.f(v); break;
          case Kind::C: v = sp.c(v); break;
        }
      }
      t[s] = static_cast<std::uint8_t>(v);
    }
    tables.push_back(std::move(t));
  }
  std::sort(tables.begin(), tables.end());
  return static_cast<std::size_t>(
      std::unique(tables.begin(), tables.end()) - tables.begin());
}

// Whether some set in the space reaches the target; returns that set.
std::optional<std::uint32_t> witness_set(SearchTarget target,
                                         const PreorderSpace& s) {
  const SmallSpace sp(s);
  switch (target) {
    case SearchTarget::Even17:
      if (even_distinct(sp) == 17) return 0u;
      return std::nullopt;
    case SearchTarget::Set14:
      for (std::uint32_t a = 0; a <= sp.full; ++a) {
        if (kc_orbit(sp, a) == 14) return a;
      }
      return std::nullopt;
    case SearchTarget::Set34:
      for (std::uint32_t a = 0; a <= sp.full; ++a) {
        if (kfc_orbit(sp, a) == 34) return a;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

std::size_t target_value(SearchTarget t) {
  switch (t) {
    case SearchTarget::Even17: return 17;
    case SearchTarget::Set14: return 14;
    case SearchTarget::Set34: return 34;
  }
  return 0;
}

// Down-sets (or up-sets) of the relation on the first k points.
std::vector<std::uint8_t> closed_subsets(const std::vector<std::uint8_t>& rel,
                                         std::size_t k) {
  std::vector<std::uint8_t> out;
  for (std::uint32_t d = 0; d < (1u << k); ++d) {
    bool ok = true;
    for (std::size_t b = 0; b < k && ok; ++b) {
      if (((d >> b) & 1u) && (rel[b] & ~d) != 0) ok = false;
    }
    if (ok) out.push_back(static_cast<std::uint8_t>(d));
  }
  return out;
}

bool extend(PreorderSpace& s, std::size_t k, bool posets_only,
            std::uint64_t& count,
            const std::function<bool(const PreorderSpace&)>& f) {
  if (k == s.points) {
    ++count;
    return f(s);
  }
  std::vector<std::uint8_t> up(k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if ((s.down[b] >> a) & 1u) up[a] = static_cast<std::uint8_t>(up[a] | (1u << b));
    }
  }
  const auto downs = closed_subsets(s.down, k);
  const auto ups = posets_only ? std::vector<std::uint8_t>{0} : closed_subsets(up, k);
  const auto saved = s.down;
  const std::uint8_t bit = static_cast<std::uint8_t>(1u << k);
  for (auto d : downs) {
    for (auto u : ups) {
      bool ok = true;
      for (std::size_t b = 0; b < k && ok; ++b) {
        if (((u >> b) & 1u) && (d & ~s.down[b]) != 0) ok = false;
      }
      if (!ok) continue;
      for (std::size_t b = 0; b < k; ++b) {
        if ((u >> b) & 1u) s.down[b] = static_cast<std::uint8_t>(s.down[b] | bit);
      }
      s.down[k] = static_cast<std::uint8_t>(d | bit);
      const bool go_on = extend(s, k + 1, posets_only, count, f);
      s.down = saved;
      if (!go_on) return false;
    }
  }
  return true;
}

std::uint64_t enumerate(std::size_t points, bool posets_only,
                        const std::function<bool(const PreorderSpace&)>& f) {
  check_points(points);
  if (points > kMaxExhaustivePoints) {
    throw UsageError("exhaustive enumeration supports at most " +
                     std::to_string(kMaxExhaustivePoints) + " points");
  }
  PreorderSpace s;
  s.points = points;
  s.down.assign(points, 0);
  std::uint64_t count = 0;
  extend(s, 0, posets_only, count, f);
  return count;
}

// Reflexive-transitive closure of a relation given as below[a] = points
// directly below a.
PreorderSpace close_relation(std::size_t points,
                             const std::vector<std::uint8_t>& below) {
  PreorderSpace s;
  s.points = points;
  s.down.assign(points, 0);
  for (std::size_t a = 0; a < points; ++a) {
    s.down[a] = static_cast<std::uint8_t>(below[a] | (1u << a));
  }
  for (std::size_t m = 0; m < points; ++m) {
    for (std::size_t a = 0; a < points; ++a) {
      if ((s.down[a] >> m) & 1u) s.down[a] = static_cast<std::uint8_t>(s.down[a] | s.down[m]);
    }
  }
  return s;
}

std::size_t best_kfc_orbit(const PreorderSpace& s, std::uint32_t& best_set) {
  const SmallSpace sp(s);
  std::size_t best = 0;
  for (std::uint32_t a = 0; a <= sp.full; ++a) {
    const std::size_t v = kfc_orbit(sp, a);
    if (v > best) {
      best = v;
      best_set = a;
    }
  }
  return best;
}

// Hill climbing over preorders (relation entries flipped one at a time),
// scored by the target value; restarts when stuck.
std::optional<std::pair<PreorderSpace, std::uint32_t>> random_search(
    SearchTarget target, std::size_t points, const SearchOptions& options,
    std::uint64_t& spaces) {
  std::mt19937_64 rng(options.seed);
  const auto t0 = Clock::now();
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t a = 0; a < points; ++a) {
    for (std::size_t b = 0; b < points; ++b) {
      if (b != a) slots.emplace_back(a, b);
    }
  }
  if (slots.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
  auto score = [&](const PreorderSpace& s, std::uint32_t& set) -> std::size_t {
    ++spaces;
    if (target == SearchTarget::Even17) {
      set = 0;
      return even_distinct(SmallSpace(s));
    }
    if (target == SearchTarget::Set14) {
      const SmallSpace sp(s);
      std::size_t best = 0;
      for (std::uint32_t a = 0; a <= sp.full; ++a) {
        const std::size_t v = kc_orbit(sp, a);
        if (v > best) {
          best = v;
          set = a;
        }
      }
      return best;
    }
    return best_kfc_orbit(s, set);
  };
  const std::size_t goal = target_value(target);
  while (seconds_since(t0) < options.time_budget_seconds) {
    std::vector<std::uint8_t> below(points, 0);
    const double density = std::uniform_real_distribution<double>(0.05, 0.35)(rng);
    std::bernoulli_distribution edge(density);
    for (const auto& [a, b] : slots) {
      if (edge(rng)) below[a] = static_cast<std::uint8_t>(below[a] | (1u << b));
    }
    std::uint32_t set = 0;
    std::size_t cur = score(close_relation(points, below), set);
    std::size_t stale = 0;
    while (stale < 200 && seconds_since(t0) < options.time_budget_seconds) {
      if (cur >= goal) {
        return std::make_pair(close_relation(points, below), set);
      }
      const auto [a, b] = slots[pick(rng)];
      below[a] = static_cast<std::uint8_t>(below[a] ^ (1u << b));
      std::uint32_t cand_set = 0;
      const std::size_t v = score(close_relation(points, below), cand_set);
      if (v >= cur) {
        if (v > cur) stale = 0; else ++stale;
        cur = v;
        set = cand_set;
      } else {
        below[a] = static_cast<std::uint8_t>(below[a] ^ (1u << b));
        ++stale;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

bool PreorderSpace::valid() const {
  if (points < 1 || points > kMaxSearchPoints || down.size() != points) return false;
  for (std::size_t a = 0; a < points; ++a) {
    if (((down[a] >> a) & 1u) == 0) return false;
    if ((down[a] >> points) != 0) return false;
    for (std::size_t b = 0; b < points; ++b) {
      if (((down[a] >> b) & 1u) && (down[b] & ~down[a]) != 0) return false;
    }
  }
  return true;
}

std::uint64_t PreorderSpace::encoding() const {
  std::uint64_t e = 0;
  for (std::size_t a = 0; a < points; ++a) {
    e |= static_cast<std::uint64_t>(down[a]) << (8 * a);
  }
  return e;
}

ClosureModel PreorderSpace::to_model() const {
  if (!valid()) throw UsageError("not a preorder");
  std::vector<std::string> names;
  std::vector<AtomMask> rows;
  for (std::size_t a = 0; a < points; ++a) {
    names.push_back("p" + std::to_string(a));
    rows.push_back(AtomMask::from_bits(points, down[a]));
  }
  return ClosureModel(std::move(names), {std::move(rows)}, ModelKind::PointSpace);
}

std::uint64_t enumerate_spaces(std::size_t points,
                               const std::function<bool(const PreorderSpace&)>& f) {
  return enumerate(points, false, f);
}

std::uint64_t enumerate_natural_posets(
    std::size_t points, const std::function<bool(const PreorderSpace&)>& f) {
  return enumerate(points, true, f);
}

std::uint64_t count_preorders_bruteforce(std::size_t points) {
  if (points < 1 || points > 5) {
    throw UsageError("brute-force preorder count supports 1..5 points");
  }
  std::vector<std::pair<std::size_t, std::size_t>> off;
  for (std::size_t a = 0; a < points; ++a) {
    for (std::size_t b = 0; b < points; ++b) {
      if (a != b) off.emplace_back(a, b);
    }
  }
  std::uint64_t count = 0;
  std::vector<std::uint32_t> rel(points);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << off.size()); ++bits) {
    for (std::size_t a = 0; a < points; ++a) rel[a] = 1u << a;
    for (std::size_t i = 0; i < off.size(); ++i) {
      if ((bits >> i) & 1u) rel[off[i].first] |= 1u << off[i].second;
    }
    // rel[a] holds the b with a R b; transitive iff R o R is inside R.
    bool transitive = true;
    for (std::size_t a = 0; a < points && transitive; ++a) {
      for (std::size_t b = 0; b < points && transitive; ++b) {
        if (((rel[a] >> b) & 1u) && (rel[b] & ~rel[a]) != 0) transitive = false;
      }
    }
    if (transitive) ++count;
  }
  return count;
}

PreorderSpace canonical_form(const PreorderSpace& s) {
  std::vector<std::size_t> perm(s.points);
  std::iota(perm.begin(), perm.end(), 0);
  PreorderSpace best = s;
  std::uint64_t best_enc = s.encoding();
  PreorderSpace cand;
  cand.points = s.points;
  cand.down.assign(s.points, 0);
  do {
    for (std::size_t a = 0; a < s.points; ++a) {
      std::uint8_t d = 0;
      for (std::size_t b = 0; b < s.points; ++b) {
        if ((s.down[a] >> b) & 1u) d = static_cast<std::uint8_t>(d | (1u << perm[b]));
      }
      cand.down[perm[a]] = d;
    }
    const std::uint64_t enc = cand.encoding();
    if (enc < best_enc) {
      best_enc = enc;
      best = cand;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<PreorderSpace> enumerate_unlabeled(std::size_t points) {
  if (points > kMaxExhaustivePoints - 1) {
    throw UsageError("unlabeled census supports at most " +
                     std::to_string(kMaxExhaustivePoints - 1) + " points");
  }
  std::set<std::uint64_t> seen;
  std::vector<PreorderSpace> out;
  enumerate_spaces(points, [&](const PreorderSpace& s) {
    PreorderSpace c = canonical_form(s);
    if (seen.insert(c.encoding()).second) out.push_back(std::move(c));
    return true;
  });
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.encoding() < b.encoding();
  });
  return out;
}

std::string_view to_string(SearchTarget t) {
  switch (t) {
    case SearchTarget::Even17: return "EVEN17";
    case SearchTarget::Set14: return "SET14";
    case SearchTarget::Set34: return "SET34";
  }
  return "?";
}

std::optional<SearchTarget> search_target_from_string(std::string_view s) {
  for (auto t : {SearchTarget::Even17, SearchTarget::Set14, SearchTarget::Set34}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::size_t distinct_even_operators(const PreorderSpace& s) {
  if (!s.valid()) throw UsageError("not a preorder");
  return even_distinct(SmallSpace(s));
}

std::size_t kc_orbit_size(const PreorderSpace& s, std::uint32_t set) {
  if (!s.valid() || set >= (1u << s.points)) throw UsageError("bad space or set");
  return kc_orbit(SmallSpace(s), set);
}

std::size_t kfc_orbit_size(const PreorderSpace& s, std::uint32_t set) {
  if (!s.valid() || set >= (1u << s.points)) throw UsageError("bad space or set");
  return kfc_orbit(SmallSpace(s), set);
}

namespace {

using Hit = std::optional<std::pair<PreorderSpace, std::uint32_t>>;

std::pair<SearchStage, Hit> run_stage(SearchTarget target, std::size_t points,
                                      const SearchOptions& options) {
  check_points(points);
  SearchStage stage;
  stage.points = points;
  Hit hit;
  auto scan = [&](const PreorderSpace& s) {
    if (auto set = witness_set(target, s)) {
      hit.emplace(s, *set);
      return false;
    }
    return true;
  };
  if (points <= kMaxExhaustivePoints) {
    stage.method = "exhaustive";
    if (points == kMaxExhaustivePoints && target != SearchTarget::Even17) {
      // The largest exhaustive size is only scanned until a witness turns up
      // or the time budget runs out.
      const auto t0 = Clock::now();
      bool timed_out = false;
      stage.spaces = enumerate_spaces(points, [&](const PreorderSpace& s) {
        if (!scan(s)) return false;
        timed_out = seconds_since(t0) >= options.time_budget_seconds;
        return !timed_out;
      });
      stage.complete = !hit && !timed_out;
    } else {
      stage.spaces = enumerate_spaces(points, scan);
      stage.complete = !hit;
    }
  } else {
    if (!options.bounded) {
      throw UsageError("searching " + std::to_string(points) +
                       " points needs the bounded (randomized) mode");
    }
    stage.method = "random";
    hit = random_search(target, points, options, stage.spaces);
  }
  stage.found = hit.has_value();
  return {stage, hit};
}

SearchResult make_result(SearchTarget target, std::size_t points,
                         const std::pair<PreorderSpace, std::uint32_t>& hit) {
  SearchResult r;
  r.target = target;
  r.min_points = points;
  r.space = hit.first;
  if (target != SearchTarget::Even17) {
    r.set = AtomMask::from_bits(points, hit.second);
  }
  r.value = target_value(target);
  return r;
}

}  // namespace

std::optional<SearchResult> search_points(SearchTarget target, std::size_t points,
                                          const SearchOptions& options) {
  const auto t0 = Clock::now();
  auto [stage, hit] = run_stage(target, points, options);
  if (!hit) return std::nullopt;
  SearchResult r = make_result(target, points, *hit);
  r.stages.push_back(stage);
  r.seconds = seconds_since(t0);
  return r;
}

SearchResult find_min_points(SearchTarget target, std::size_t limit,
                             const SearchOptions& options) {
  check_points(limit);
  const auto t0 = Clock::now();
  std::vector<SearchStage> stages;
  bool all_exhaustive = true;
  SearchOptions opt = options;
  // 34-sets are only ever searched heuristically above the exhaustive range.
  if (target == SearchTarget::Set34) opt.bounded = true;
  if (limit > kMaxExhaustivePoints && !opt.bounded) {
    throw UsageError("limits above " + std::to_string(kMaxExhaustivePoints) +
                     " points need the bounded (randomized) mode");
  }
  for (std::size_t p = 1; p <= limit; ++p) {
    auto [stage, hit] = run_stage(target, p, opt);
    stages.push_back(stage);
    if (hit) {
      SearchResult r = make_result(target, p, *hit);
      r.stages = std::move(stages);
      r.minimal = all_exhaustive;
      r.seconds = seconds_since(t0);
      return r;
    }
    if (!stage.complete) all_exhaustive = false;
  }
  throw NotFoundWithinLimit("no " + std::string(to_string(target)) +
                            " witness with at most " + std::to_string(limit) +
                            " points");
}

}  // namespace ktf
