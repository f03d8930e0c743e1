#include "ktf/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "ktf/error.hpp"
#include "ktf/kge.hpp"

namespace ktf {

namespace {

constexpr Kind K = Kind::K;
constexpr Kind I = Kind::I;
constexpr Kind F = Kind::F;
constexpr int X = 0;
constexpr int Y = 1;
constexpr int Z = 2;
constexpr int Any = kAnyIndex;

RuleOut var(Kind k, int a) { return {k, IndexExpr::Var, a, 0}; }
RuleOut max_of(Kind k, int a, int b) { return {k, IndexExpr::Max, a, b}; }
RuleOut star(Kind k) { return {k, IndexExpr::Star, 0, 0}; }
RuleOut keep(Kind k, int pos) { return {k, IndexExpr::Keep, pos, 0}; }

bool x_le_y(const RuleVars& v) { return v[X] <= v[Y]; }
bool y_lt_x(const RuleVars& v) { return v[Y] < v[X]; }
bool y_le_x(const RuleVars& v) { return v[Y] <= v[X]; }
bool x_gt_y(const RuleVars& v) { return v[X] > v[Y]; }
bool y_le_max_xz(const RuleVars& v) { return v[Y] <= std::max(v[X], v[Z]); }

std::vector<RewriteRule> build_rules() {
  std::vector<RewriteRule> r;
  auto add = [&](std::string_view name, std::vector<RuleSlot> lhs,
                 std::vector<RuleOut> rhs, std::string_view cond = {},
                 bool (*holds)(const RuleVars&) = nullptr) {
    r.push_back({name, std::move(lhs), std::move(rhs), false, cond, holds});
  };
  auto add_zero = [&](std::string_view name, std::vector<RuleSlot> lhs) {
    r.push_back({name, std::move(lhs), {}, true, {}, nullptr});
  };

  add("kk", {{K, X}, {K, Y}}, {max_of(K, X, Y)});
  add("ii", {{I, X}, {I, Y}}, {max_of(I, X, Y)});
  add("kiki", {{K, X}, {I, Any}, {K, Any}, {I, Any}}, {var(K, X), star(I)});
  add("ikik", {{I, X}, {K, Any}, {I, Any}, {K, Any}}, {var(I, X), star(K)});
  add("kf", {{K, X}, {F, Y}}, {var(F, Y)}, "x <= y", x_le_y);
  add("ki", {{K, Any}, {I, Y}}, {keep(K, 0), star(I)});
  add("ik", {{I, Any}, {K, Y}}, {keep(I, 0), star(K)});
  add("if", {{I, Any}, {F, Y}}, {keep(I, 0), star(F)});
  add("fk", {{F, X}, {K, Y}}, {var(F, X), var(K, X)}, "y < x", y_lt_x);
  add("fi", {{F, X}, {I, Y}}, {var(F, X), var(I, X)}, "y < x", y_lt_x);
  add("fkf", {{F, X}, {K, Y}, {F, Z}}, {var(F, X), var(F, Z)},
      "y <= max(x, z)", y_le_max_xz);
  add("fiki", {{F, X}, {I, Y}, {K, Any}, {I, Any}},
      {var(F, X), var(K, X), star(I)}, "y <= x", y_le_x);
  add("fkik", {{F, X}, {K, Y}, {I, Any}, {K, Any}},
      {var(F, X), var(I, X), star(K)}, "y <= x", y_le_x);
  add("fkif", {{F, X}, {K, Y}, {I, Any}, {F, Any}},
      {var(F, X), var(I, X), star(F)}, "y <= x", y_le_x);
  add_zero("ifk", {{I, Any}, {F, Any}, {K, Any}});
  add_zero("ifi", {{I, Any}, {F, Any}, {I, Any}});
  for (Kind last : {K, I, F}) {
    const char* lift = last == K ? "ffk" : last == I ? "ffi" : "fff";
    const char* drop = last == K ? "ffk-drop" : last == I ? "ffi-drop"
                                                          : "fff-drop";
    add(lift, {{F, X}, {F, Y}, {last, Any}},
        {var(K, X), var(F, Y), keep(last, 2)}, "x > y", x_gt_y);
    add(drop, {{F, X}, {F, Y}, {last, Any}}, {var(F, Y), keep(last, 2)},
        "x <= y", x_le_y);
  }
  add("fkfk", {{F, X}, {K, Y}, {F, Any}, {K, Any}},
      {max_of(K, X, Y), keep(F, 2), keep(K, 3)});
  add("fkfi", {{F, X}, {K, Y}, {F, Any}, {I, Any}},
      {max_of(K, X, Y), keep(F, 2), keep(I, 3)});

  const std::size_t primary = r.size();
  add_zero("iff", {{I, Any}, {F, Any}, {F, Any}});
  add("fkff", {{F, X}, {K, Y}, {F, Any}, {F, Any}},
      {max_of(K, X, Y), keep(F, 2), keep(F, 3)});
  add("ikf", {{I, Any}, {K, Any}, {F, Any}}, {keep(I, 0), keep(F, 2)});
  add("ikif", {{I, Any}, {K, Any}, {I, Any}, {F, Any}},
      {keep(I, 0), star(F)});
  add("ikk", {{I, Any}, {K, Any}, {K, Any}}, {keep(I, 0), star(K)});
  add("kii", {{K, Any}, {I, Any}, {I, Any}}, {keep(K, 0), star(I)});
  for (std::size_t i = primary; i < r.size(); ++i) r[i].derived = true;
  return r;
}

std::string var_name(int v) {
  static const char* kNames[] = {"x", "y", "z", "w"};
  return v >= 0 && v < 4 ? kNames[v] : "?";
}

char letter(Kind k) {
  switch (k) {
    case Kind::K: return 'k';
    case Kind::I: return 'i';
    case Kind::F: return 'f';
    case Kind::C: return 'c';
  }
  return '?';
}

struct Match {
  RuleVars vars{};
};

bool match_at(const RewriteRule& rule, const std::vector<Generator>& g,
              std::size_t pos, Match& m) {
  if (pos + rule.lhs.size() > g.size()) return false;
  std::array<bool, 4> bound{};
  for (std::size_t j = 0; j < rule.lhs.size(); ++j) {
    const auto& slot = rule.lhs[j];
    const auto& gen = g[pos + j];
    if (gen.kind != slot.kind) return false;
    if (slot.var == kAnyIndex) continue;
    if (gen.is_star()) return false;
    const auto v = static_cast<std::size_t>(slot.var);
    if (bound[v] && m.vars[v] != gen.index) return false;
    bound[v] = true;
    m.vars[v] = gen.index;
  }
  return rule.holds == nullptr || rule.holds(m.vars);
}

std::vector<Generator> replacement(const RewriteRule& rule,
                                   const std::vector<Generator>& lhs_gens,
                                   const RuleVars& vars) {
  std::vector<Generator> out;
  for (const auto& o : rule.rhs) {
    std::uint32_t idx = kStar;
    switch (o.expr) {
      case IndexExpr::Var:
        idx = vars[static_cast<std::size_t>(o.a)];
        break;
      case IndexExpr::Max:
        idx = std::max(vars[static_cast<std::size_t>(o.a)],
                       vars[static_cast<std::size_t>(o.b)]);
        break;
      case IndexExpr::Star:
        idx = kStar;
        break;
      case IndexExpr::Keep:
        idx = lhs_gens[static_cast<std::size_t>(o.a)].index;
        break;
    }
    out.push_back({o.kind, idx});
  }
  return out;
}

OpWord apply(const RewriteRule& rule, const std::vector<Generator>& g,
             std::size_t pos, const Match& m) {
  if (rule.to_zero) return OpWord::zero();
  std::vector<Generator> lhs(g.begin() + static_cast<std::ptrdiff_t>(pos),
                             g.begin() + static_cast<std::ptrdiff_t>(
                                             pos + rule.lhs.size()));
  auto rep = replacement(rule, lhs, m.vars);
  std::vector<Generator> out(g.begin(),
                             g.begin() + static_cast<std::ptrdiff_t>(pos));
  out.insert(out.end(), rep.begin(), rep.end());
  out.insert(out.end(),
             g.begin() + static_cast<std::ptrdiff_t>(pos + rule.lhs.size()),
             g.end());
  return OpWord(std::move(out));
}

bool star_allowed_after(Kind left, Kind k) {
  return (left == Kind::K && k == Kind::I) ||
         (left == Kind::I && (k == Kind::K || k == Kind::F));
}

constexpr std::size_t kReduceLimit = 100000;

}  // namespace

ParityReduction parity_reduce(const OpWord& w) {
  if (w.is_zero()) return {Parity::Even, OpWord::zero()};
  if (w.is_one()) return {Parity::Odd, OpWord::zero()};
  bool odd = false;
  std::vector<Generator> core;  // reversed while building
  const auto& g = w.gens();
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    Generator x = *it;
    switch (x.kind) {
      case Kind::C:
        odd = !odd;
        continue;
      case Kind::K:
        if (odd) x.kind = Kind::I;
        break;
      case Kind::I:
        if (odd) x.kind = Kind::K;
        break;
      case Kind::F:
        odd = false;
        break;
    }
    if (!core.empty() && core.back().kind == x.kind &&
        (x.kind == Kind::K || x.kind == Kind::I) && !x.is_star() &&
        !core.back().is_star()) {
      core.back().index = std::max(core.back().index, x.index);
    } else {
      core.push_back(x);
    }
  }
  std::reverse(core.begin(), core.end());
  return {odd ? Parity::Odd : Parity::Even, OpWord(std::move(core))};
}

const std::vector<RewriteRule>& rewrite_rules() {
  static const std::vector<RewriteRule> rules = build_rules();
  return rules;
}

std::string describe(const RewriteRule& rule) {
  std::string lhs;
  char any = 'a';
  for (const auto& s : rule.lhs) {
    if (!lhs.empty()) lhs += ' ';
    lhs += letter(s.kind);
    lhs += '_';
    lhs += s.var == kAnyIndex ? std::string(1, any++) : var_name(s.var);
  }
  std::string rhs;
  if (rule.to_zero) {
    rhs = "0";
  } else {
    for (const auto& o : rule.rhs) {
      if (!rhs.empty()) rhs += ' ';
      rhs += letter(o.kind);
      rhs += '_';
      switch (o.expr) {
        case IndexExpr::Var:
          rhs += var_name(o.a);
          break;
        case IndexExpr::Max:
          rhs += "max(" + var_name(o.a) + "," + var_name(o.b) + ")";
          break;
        case IndexExpr::Star:
          rhs += "*";
          break;
        case IndexExpr::Keep: {
          const auto& s = rule.lhs[static_cast<std::size_t>(o.a)];
          if (s.var != kAnyIndex) {
            rhs += var_name(s.var);
          } else {
            char c = 'a';
            for (std::size_t j = 0; j < static_cast<std::size_t>(o.a); ++j) {
              if (rule.lhs[j].var == kAnyIndex) ++c;
            }
            rhs += c;
          }
          break;
        }
      }
    }
  }
  std::string out = lhs + " -> " + rhs;
  if (!rule.condition.empty()) out += "  if " + std::string(rule.condition);
  return out;
}

std::vector<RuleApplication> rewrites(const OpWord& w) {
  std::vector<RuleApplication> out;
  if (w.is_constant()) return out;
  const auto& g = w.gens();
  const auto& rules = rewrite_rules();
  for (std::size_t pos = 0; pos < g.size(); ++pos) {
    for (std::size_t r = 0; r < rules.size(); ++r) {
      Match m;
      if (match_at(rules[r], g, pos, m)) {
        out.push_back({r, pos, apply(rules[r], g, pos, m)});
      }
    }
  }
  return out;
}

std::vector<std::pair<OpWord, OpWord>> rule_instances(const RewriteRule& rule,
                                                      std::uint32_t n) {
  std::vector<std::pair<OpWord, OpWord>> out;
  const std::size_t len = rule.lhs.size();
  std::vector<std::uint32_t> idx(len, 1);
  while (true) {
    std::vector<Generator> lhs;
    for (std::size_t j = 0; j < len; ++j) {
      lhs.push_back({rule.lhs[j].kind, idx[j]});
    }
    Match m;
    if (match_at(rule, lhs, 0, m)) {
      out.emplace_back(OpWord(lhs), apply(rule, lhs, 0, m));
    }
    std::size_t p = len;
    while (p > 0 && idx[p - 1] == n) idx[--p] = 1;
    if (p == 0) break;
    ++idx[p - 1];
  }
  return out;
}

OpWord instantiate_stars(const OpWord& w) {
  if (w.is_constant()) return w;
  std::vector<Generator> g = w.gens();
  std::uint32_t anchor = 1;
  bool anchored = false;
  for (auto& x : g) {
    if (x.kind == Kind::C) continue;
    if (x.is_star()) {
      x.index = anchored ? anchor : 1;
    } else {
      anchor = x.index;
      anchored = true;
    }
  }
  return OpWord(std::move(g));
}

bool stars_justified(const OpWord& w) {
  if (w.is_constant()) return true;
  const auto& g = w.gens();
  for (std::size_t p = 0; p < g.size(); ++p) {
    if (!g[p].is_star()) continue;
    if (p == 0 || !star_allowed_after(g[p - 1].kind, g[p].kind)) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const RewriteMeasure& a,
                                 const RewriteMeasure& b) {
  if (a.zero != b.zero) {
    return a.zero ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.length <=> b.length; c != 0) return c;
  if (auto c = a.kinds <=> b.kinds; c != 0) return c;
  if (auto c = a.lifts <=> b.lifts; c != 0) return c;
  return a.indices <=> b.indices;
}

RewriteMeasure measure(const OpWord& w) {
  RewriteMeasure m;
  if (w.is_zero()) {
    m.zero = true;
    return m;
  }
  const auto g = w.spelled();
  m.length = g.size();
  for (std::size_t p = 0; p < g.size(); ++p) {
    m.kinds.push_back(static_cast<std::uint8_t>(g[p].kind));
    m.indices.push_back(g[p].index);
    if (p + 1 < g.size() && g[p].kind == Kind::F && !g[p].is_star() &&
        (g[p + 1].kind == Kind::K || g[p + 1].kind == Kind::I) &&
        !g[p + 1].is_star() && g[p + 1].index < g[p].index) {
      ++m.lifts;
    }
  }
  return m;
}

OpWord reduce(const OpWord& w) {
  if (w.has_complement() && !w.is_constant()) {
    throw UsageError("reduce expects a complement-free word");
  }
  if (!stars_justified(w)) {
    throw UsageError("word has a star whose value matters: " + to_string(w));
  }
  std::set<OpWord, ShortlexLess> seen{w};
  std::deque<OpWord> queue{w};
  std::optional<OpWord> best;
  while (!queue.empty()) {
    OpWord cur = std::move(queue.front());
    queue.pop_front();
    const auto steps = rewrites(cur);
    if (steps.empty()) {
      if (!best || shortlex_less(cur, *best)) best = cur;
      continue;
    }
    const auto before = measure(cur);
    for (const auto& s : steps) {
      const auto& rule = rewrite_rules()[s.rule];
      if (!(measure(s.result) < before)) {
        throw InvariantViolation("rule " + std::string(rule.name) +
                                 " did not decrease the measure on " +
                                 to_string(cur));
      }
      if (!stars_justified(s.result)) {
        throw InvariantViolation("rule " + std::string(rule.name) +
                                 " produced an unjustified star from " +
                                 to_string(cur));
      }
      if (seen.insert(s.result).second) {
        if (seen.size() > kReduceLimit) {
          throw InvariantViolation("rewrite search exploded on " +
                                   to_string(w));
        }
        queue.push_back(s.result);
      }
    }
  }
  return *best;
}

OpWord normalize(const OpWord& w, std::uint32_t n) {
  if (n < 1) throw UsageError("n must be at least 1");
  if (w.max_index() > n) {
    throw UsageError("word " + to_string(w) + " uses an index above n = " +
                     std::to_string(n));
  }
  const auto pr = parity_reduce(instantiate_stars(w));
  OpWord acc = OpWord::identity();
  if (pr.core.is_zero()) {
    acc = OpWord::zero();
  } else {
    const auto& g = pr.core.gens();
    for (auto it = g.rbegin(); it != g.rend(); ++it) {
      acc = reduce(prepend(*it, acc));
      if (!is_kge(acc, n)) {
        throw NormalFormOutsideGrammar(
            "fixpoint " + to_string(acc) + " of " + to_string(w) +
            " is not a canonical word for n = " + std::to_string(n));
      }
      if (acc.is_zero()) break;
    }
  }
  if (pr.parity == Parity::Even) return acc;
  return prepend(Generator::c(), acc);
}

}  // namespace ktf
