#include "ktf/kge.hpp"

#include <algorithm>

#include "ktf/error.hpp"

namespace ktf {

namespace {

using Idx = std::vector<std::uint32_t>;

struct TypeInfo {
  TypeShape shape;
  std::string_view label;
  bool (*cond)(const Idx&);
};

bool none(const Idx&) { return true; }
bool le01(const Idx& v) { return v[0] <= v[1]; }
bool lt01(const Idx& v) { return v[0] < v[1]; }
bool gt01(const Idx& v) { return v[0] > v[1]; }
bool gt01_le12(const Idx& v) { return v[0] > v[1] && v[1] <= v[2]; }
bool gt01_lt12(const Idx& v) { return v[0] > v[1] && v[1] < v[2]; }
bool peak_middle(const Idx& v) { return v[1] > v[0] && v[1] > v[2]; }
bool zigzag(const Idx& v) {
  return v[0] > v[1] && v[1] < v[2] && v[2] > v[3];
}

constexpr Kind K = Kind::K;
constexpr Kind I = Kind::I;
constexpr Kind F = Kind::F;

TypeInfo make(WordType t, std::string_view label, std::vector<Kind> kinds,
              std::vector<bool> star, bool (*cond)(const Idx&),
              std::string_view condition = {}) {
  return TypeInfo{TypeShape{t, std::move(kinds), std::move(star), condition},
                  label, cond};
}

const std::vector<TypeInfo>& table() {
  static const std::vector<TypeInfo> t = [] {
    using W = WordType;
    const bool s = true;
    const bool v = false;
    std::vector<TypeInfo> out;
    out.push_back(make(W::Id, "Id", {}, {}, none));
    out.push_back(make(W::IFK, "IFK", {I, F, K}, {s, s, s}, none));
    out.push_back(make(W::I, "I", {I}, {v}, none));
    out.push_back(make(W::K, "K", {K}, {v}, none));
    out.push_back(make(W::IK, "IK", {I, K}, {v, s}, none));
    out.push_back(make(W::KI, "KI", {K, I}, {v, s}, none));
    out.push_back(make(W::IKI, "IKI", {I, K, I}, {v, s, s}, none));
    out.push_back(make(W::KIK, "KIK", {K, I, K}, {v, s, s}, none));
    out.push_back(make(W::F, "F", {F}, {v}, none));
    out.push_back(make(W::IF, "IF", {I, F}, {v, s}, none));
    out.push_back(make(W::FF, "FF", {F, F}, {v, v}, none));
    out.push_back(make(W::FI, "FI", {F, I}, {v, v}, le01, "x <= y"));
    out.push_back(make(W::FK, "FK", {F, K}, {v, v}, le01, "x <= y"));
    out.push_back(make(W::FIF, "FIF", {F, I, F}, {v, v, s}, le01, "x <= y"));
    out.push_back(make(W::KIF, "KIF", {K, I, F}, {v, s, s}, none));
    out.push_back(make(W::FIK, "FIK", {F, I, K}, {v, v, s}, le01, "x <= y"));
    out.push_back(make(W::FKI, "FKI", {F, K, I}, {v, v, s}, le01, "x <= y"));
    out.push_back(make(W::KF_R, "(KF)_r", {K, F}, {v, v}, gt01, "x > y"));
    out.push_back(make(W::KFK_R, "(KFK)_r", {K, F, K}, {v, v, v}, gt01_le12,
                       "x > y, y <= z"));
    out.push_back(make(W::KFI_R, "(KFI)_r", {K, F, I}, {v, v, v}, gt01_le12,
                       "x > y, y <= z"));
    out.push_back(make(W::KFF_R, "(KFF)_r", {K, F, F}, {v, v, v}, gt01,
                       "x > y"));
    out.push_back(make(W::FKF_R, "(FKF)_r", {F, K, F}, {v, v, v}, peak_middle,
                       "y > x, y > z"));
    out.push_back(make(W::FIKI_R, "(FIKI)_r", {F, I, K, I}, {v, v, s, s},
                       lt01, "x < y"));
    out.push_back(make(W::FKIK_R, "(FKIK)_r", {F, K, I, K}, {v, v, s, s},
                       lt01, "x < y"));
    out.push_back(make(W::FKIF_R, "(FKIF)_r", {F, K, I, F}, {v, v, s, s},
                       lt01, "x < y"));
    out.push_back(make(W::KFIK_R, "(KFIK)_r", {K, F, I, K}, {v, v, v, s},
                       gt01_le12, "x > y, y <= z"));
    out.push_back(make(W::KFKI_R, "(KFKI)_r", {K, F, K, I}, {v, v, v, s},
                       gt01_le12, "x > y, y <= z"));
    out.push_back(make(W::KFIF_R, "(KFIF)_r", {K, F, I, F}, {v, v, v, s},
                       gt01_le12, "x > y, y <= z"));
    out.push_back(make(W::KFKF_R, "(KFKF)_r", {K, F, K, F}, {v, v, v, v},
                       zigzag, "x > y, y < z, z > w"));
    out.push_back(make(W::KFIKI_R, "(KFIKI)_r", {K, F, I, K, I},
                       {v, v, v, s, s}, gt01_lt12, "x > y, y < z"));
    out.push_back(make(W::KFKIK_R, "(KFKIK)_r", {K, F, K, I, K},
                       {v, v, v, s, s}, gt01_lt12, "x > y, y < z"));
    out.push_back(make(W::KFKIF_R, "(KFKIF)_r", {K, F, K, I, F},
                       {v, v, v, s, s}, gt01_lt12, "x > y, y < z"));
    return out;
  }();
  return t;
}

const TypeInfo& info(WordType t) {
  return table()[static_cast<std::size_t>(t)];
}

std::size_t concrete_count(const TypeShape& s) {
  return static_cast<std::size_t>(
      std::count(s.star.begin(), s.star.end(), false));
}

// Calls f(tuple) for every tuple in {1..n}^len in lexicographic order.
template <typename Fn>
void for_each_tuple(std::size_t len, std::uint32_t n, Fn&& f) {
  Idx v(len, 1);
  if (len == 0) {
    f(v);
    return;
  }
  if (n == 0) return;
  while (true) {
    f(v);
    std::size_t p = len;
    while (p > 0) {
      --p;
      if (v[p] < n) {
        ++v[p];
        std::fill(v.begin() + static_cast<std::ptrdiff_t>(p) + 1, v.end(), 1);
        break;
      }
      if (p == 0) return;
    }
  }
}

OpWord build(const TypeShape& s, const Idx& concrete) {
  std::vector<Generator> gens;
  std::size_t c = 0;
  for (std::size_t p = 0; p < s.kinds.size(); ++p) {
    gens.push_back({s.kinds[p], s.star[p] ? kStar : concrete[c++]});
  }
  return OpWord(std::move(gens));
}

}  // namespace

const std::array<WordType, kWordTypeCount>& all_word_types() {
  static const std::array<WordType, kWordTypeCount> types = [] {
    std::array<WordType, kWordTypeCount> a{};
    for (std::size_t i = 0; i < kWordTypeCount; ++i) {
      a[i] = static_cast<WordType>(i);
    }
    return a;
  }();
  return types;
}

std::string_view label(WordType t) { return info(t).label; }

std::optional<WordType> word_type_from_label(std::string_view s) {
  for (const auto& ti : table()) {
    if (ti.label == s) return ti.shape.type;
  }
  return std::nullopt;
}

const TypeShape& shape(WordType t) { return info(t).shape; }

bool satisfies(WordType t, const std::vector<std::uint32_t>& concrete,
               std::uint32_t n) {
  const auto& ti = info(t);
  if (concrete.size() != concrete_count(ti.shape)) return false;
  for (auto v : concrete) {
    if (v < 1 || v > n) return false;
  }
  return ti.cond(concrete);
}

std::optional<WordType> classify(const OpWord& w, std::uint32_t n) {
  if (w.is_zero()) return WordType::IFK;
  if (w.is_one()) return std::nullopt;
  const auto& g = w.gens();
  for (const auto& ti : table()) {
    if (ti.shape.type == WordType::IFK) continue;
    const auto& s = ti.shape;
    if (s.kinds.size() != g.size()) continue;
    bool match = true;
    Idx concrete;
    for (std::size_t p = 0; p < g.size() && match; ++p) {
      if (g[p].kind != s.kinds[p] || g[p].is_star() != s.star[p]) {
        match = false;
      } else if (!s.star[p]) {
        concrete.push_back(g[p].index);
      }
    }
    if (match && satisfies(s.type, concrete, n)) return s.type;
  }
  return std::nullopt;
}

bool is_canonical(const OpWord& w, std::uint32_t n) {
  if (w.is_constant()) return true;
  const auto& g = w.gens();
  if (!g.empty() && g.front().kind == Kind::C) {
    return is_kge(OpWord(std::vector<Generator>(g.begin() + 1, g.end())), n);
  }
  return is_kge(w, n);
}

std::vector<KgeGroup> enumerate_kge(std::uint32_t n) {
  if (n < 1) throw UsageError("n must be at least 1");
  std::vector<KgeGroup> out;
  for (const auto& ti : table()) {
    KgeGroup group{ti.shape.type, {}};
    if (ti.shape.type == WordType::IFK) {
      group.words.push_back(OpWord::zero());
    } else {
      for_each_tuple(concrete_count(ti.shape), n, [&](const Idx& v) {
        if (ti.cond(v)) group.words.push_back(build(ti.shape, v));
      });
    }
    out.push_back(std::move(group));
  }
  return out;
}

std::vector<OpWord> kge_words(std::uint32_t n) {
  std::vector<OpWord> out;
  for (auto& g : enumerate_kge(n)) {
    for (auto& w : g.words) out.push_back(std::move(w));
  }
  return out;
}

KgeCount count_kge(std::uint32_t n) {
  if (n < 1) throw UsageError("n must be at least 1");
  KgeCount out;
  for (const auto& ti : table()) {
    std::uint64_t c = 0;
    if (ti.shape.type == WordType::IFK) {
      c = 1;
    } else {
      for_each_tuple(concrete_count(ti.shape), n, [&](const Idx& v) {
        if (ti.cond(v)) ++c;
      });
    }
    out.per_type[ti.shape.type] = c;
    out.total += c;
  }
  return out;
}

std::uint64_t p_polynomial(std::uint64_t n) {
  const std::uint64_t num =
      5 * n * n * n * n + 74 * n * n * n + 79 * n * n + 202 * n + 48;
  if (num % 24 != 0) throw InvariantViolation("p(n) numerator not divisible");
  return num / 24;
}

}  // namespace ktf
