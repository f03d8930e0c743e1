#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "ktf/word.hpp"

namespace ktf {

// The 32 shapes of canonical even words. The `R` suffix marks the types
// whose index tuples are restricted by order conditions.
enum class WordType : std::uint8_t {
  Id, IFK, I, K, IK, KI, IKI, KIK, F, IF, FF, FI, FK, FIF, KIF, FIK, FKI,
  KF_R, KFK_R, KFI_R, KFF_R, FKF_R, FIKI_R, FKIK_R, FKIF_R, KFIK_R, KFKI_R,
  KFIF_R, KFKF_R, KFIKI_R, KFKIK_R, KFKIF_R,
};

inline constexpr std::size_t kWordTypeCount = 32;

// All types in table order (Id first, (KFKIF)_r last).
const std::array<WordType, kWordTypeCount>& all_word_types();

// Display label, e.g. "Id", "IFK", "(KFKF)_r".
std::string_view label(WordType t);
std::optional<WordType> word_type_from_label(std::string_view s);

// Shape of a type: kinds of its generators, whether each index is a star,
// and the grammar conditions on the concrete indices.
struct TypeShape {
  WordType type;
  std::vector<Kind> kinds;
  std::vector<bool> star;
  std::string_view condition;  // human readable, empty if unconditional
};

const TypeShape& shape(WordType t);

// Whether the concrete index tuple (in order of the non-star positions)
// satisfies the type's grammar condition for the given n.
bool satisfies(WordType t, const std::vector<std::uint32_t>& concrete,
               std::uint32_t n);

// The type of a canonical even word, or nullopt when w is not a KGE-word
// for n. ZERO maps to IFK; the identity to Id.
std::optional<WordType> classify(const OpWord& w, std::uint32_t n);

inline bool is_kge(const OpWord& w, std::uint32_t n) {
  return classify(w, n).has_value();
}

// A canonical word for n: a KGE-word, or c followed by one, or ONE.
bool is_canonical(const OpWord& w, std::uint32_t n);

struct KgeGroup {
  WordType type;
  std::vector<OpWord> words;  // index tuples in lexicographic order
};

// Every KGE-word for n, grouped by type in table order.
std::vector<KgeGroup> enumerate_kge(std::uint32_t n);
std::vector<OpWord> kge_words(std::uint32_t n);

struct KgeCount {
  std::map<WordType, std::uint64_t> per_type;
  std::uint64_t total = 0;
};

// Counts by direct enumeration of index tuples (no word materialization).
KgeCount count_kge(std::uint32_t n);

// The closed form (5n^4 + 74n^3 + 79n^2 + 202n + 48) / 24.
std::uint64_t p_polynomial(std::uint64_t n);

}  // namespace ktf
