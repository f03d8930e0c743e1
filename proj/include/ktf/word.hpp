#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ktf {

// Generator kinds in their canonical order: closure, interior, frontier,
// complement.
enum class Kind : std::uint8_t { K = 0, I = 1, F = 2, C = 3 };

// Index value of a star position: an index whose value does not affect the
// operator.
inline constexpr std::uint32_t kStar = 0;

struct Generator {
  Kind kind = Kind::K;
  std::uint32_t index = 1;  // topology index, kStar, or 0 for C

  static constexpr Generator k(std::uint32_t j) { return {Kind::K, j}; }
  static constexpr Generator i(std::uint32_t j) { return {Kind::I, j}; }
  static constexpr Generator f(std::uint32_t j) { return {Kind::F, j}; }
  static constexpr Generator c() { return {Kind::C, 0}; }

  bool is_star() const noexcept { return kind != Kind::C && index == kStar; }

  friend bool operator==(const Generator&, const Generator&) = default;
  // Kind first (K < I < F < C), then index with star lowest.
  friend std::strong_ordering operator<=>(const Generator& a,
                                          const Generator& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    return a.index <=> b.index;
  }
};

std::string to_string(const Generator& g);

// An operator word, read right to left as an operator (the rightmost
// generator is applied first). The empty word is the identity. Two
// constants stand for the zero operator and the one operator (complement of
// zero).
class OpWord {
 public:
  enum class Constant : std::uint8_t { None, Zero, One };

  OpWord() = default;
  explicit OpWord(std::vector<Generator> gens) : gens_(std::move(gens)) {}

  static OpWord identity() { return OpWord(); }
  static OpWord zero() { return OpWord(Constant::Zero); }
  static OpWord one() { return OpWord(Constant::One); }

  bool is_zero() const noexcept { return constant_ == Constant::Zero; }
  bool is_one() const noexcept { return constant_ == Constant::One; }
  bool is_constant() const noexcept { return constant_ != Constant::None; }
  bool is_identity() const noexcept { return !is_constant() && gens_.empty(); }
  Constant constant() const noexcept { return constant_; }

  const std::vector<Generator>& gens() const noexcept { return gens_; }

  // Number of generators; the constants count as their defining words
  // (zero = i* f* k*, one = c i* f* k*).
  std::size_t length() const noexcept;

  // Generator sequence with constants spelled out as their defining words.
  std::vector<Generator> spelled() const;

  std::uint32_t max_index() const noexcept;
  bool has_complement() const noexcept;
  bool has_star() const noexcept;

  friend bool operator==(const OpWord&, const OpWord&) = default;

 private:
  explicit OpWord(Constant c) : constant_(c) {}

  std::vector<Generator> gens_;
  Constant constant_ = Constant::None;
};

// g . w: g applied after w. Prepending to a constant gives the constant's
// image (g.0 = 0 for K, I, F; c.0 = 1; c.1 = 0; K/I/F . 1 keeps the
// generator applied to the whole space, which is returned spelled out).
OpWord prepend(const Generator& g, const OpWord& w);
OpWord concat(const OpWord& left, const OpWord& right);

// Shortlex order: shorter words first, then generator by generator.
bool shortlex_less(const OpWord& a, const OpWord& b);

struct ShortlexLess {
  bool operator()(const OpWord& a, const OpWord& b) const {
    return shortlex_less(a, b);
  }
};

// Whitespace separated tokens: k<j> i<j> f<j> with j a positive integer or
// '*', the token c, "Id" for the identity, and the constants 0 and 1.
OpWord parse_word(std::string_view text);
std::string to_string(const OpWord& w);

struct OpWordHash {
  std::size_t operator()(const OpWord& w) const noexcept;
};

}  // namespace ktf
