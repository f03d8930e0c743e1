#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ktf/word.hpp"

namespace ktf {

enum class Parity { Even, Odd };

struct ParityReduction {
  Parity parity = Parity::Even;
  OpWord core;  // no complement generators
};

// Pushes every complement to the front using k_x c = c i_x, i_x c = c k_x,
// f_x c = f_x and c c = Id, then merges adjacent k_x k_y and i_x i_y.
// The input equals core (even) or c . core (odd).
ParityReduction parity_reduce(const OpWord& w);

// A position in a rule's left side. `var` names an index variable
// (0..3 = x, y, z, w) that must bind a concrete index, or is kAnyIndex to
// match any index including a star.
inline constexpr int kAnyIndex = -1;

struct RuleSlot {
  Kind kind;
  int var;
};

enum class IndexExpr : std::uint8_t {
  Var,   // variable a
  Max,   // max of variables a and b
  Star,  // star index
  Keep,  // index matched at left-side position a
};

struct RuleOut {
  Kind kind;
  IndexExpr expr;
  int a = 0;
  int b = 0;
};

using RuleVars = std::array<std::uint32_t, 4>;

struct RewriteRule {
  std::string_view name;
  std::vector<RuleSlot> lhs;
  std::vector<RuleOut> rhs;  // ignored when to_zero
  bool to_zero = false;
  std::string_view condition;  // empty when unconditional
  bool (*holds)(const RuleVars&) = nullptr;
  // Consequence of the primary identities, added so that every product of
  // a generator with a canonical word reduces to canonical form.
  bool derived = false;
};

const std::vector<RewriteRule>& rewrite_rules();

// "f_x k_y -> f_x k_x  if y < x"
std::string describe(const RewriteRule& rule);

struct RuleApplication {
  std::size_t rule;
  std::size_t position;
  OpWord result;
};

// Every single-step rewrite of w (w must not contain c).
std::vector<RuleApplication> rewrites(const OpWord& w);

// Concrete instances of a rule for indices 1..n: (left, right) pairs with
// stars on the right left in place. Positions matching any index range
// over 1..n.
std::vector<std::pair<OpWord, OpWord>> rule_instances(const RewriteRule& rule,
                                                      std::uint32_t n);

// Replaces each star by the nearest concrete index to its left, or by 1
// when there is none.
OpWord instantiate_stars(const OpWord& w);

// Every star sits right after a generator that makes its value irrelevant:
// k_x i_*, i_x k_*, i_x f_*.
bool stars_justified(const OpWord& w);

// Termination measure, strictly decreased by every rule application: ZERO
// first, then length, kind sequence, the number of f_x followed by a
// concrete k_y or i_y with y < x, and the index sequence.
struct RewriteMeasure {
  bool zero = false;
  std::size_t length = 0;
  std::vector<std::uint8_t> kinds;
  std::size_t lifts = 0;
  std::vector<std::uint32_t> indices;

  friend bool operator==(const RewriteMeasure&, const RewriteMeasure&) = default;
  friend std::strong_ordering operator<=>(const RewriteMeasure& a,
                                          const RewriteMeasure& b);
};

RewriteMeasure measure(const OpWord& w);

// Shortlex-least irreducible word reachable from a complement-free word.
OpWord reduce(const OpWord& w);

// Canonical form: ZERO, a KGE-word, ONE, or c followed by a KGE-word.
// Throws UsageError for indices above n and NormalFormOutsideGrammar when
// the fixpoint is not canonical.
OpWord normalize(const OpWord& w, std::uint32_t n);

}  // namespace ktf
