#include "ktf/word.hpp"

#include <algorithm>
#include <cctype>

#include "ktf/error.hpp"

namespace ktf {

namespace {

const std::vector<Generator> kZeroSpelled = {Generator::i(kStar),
                                             Generator::f(kStar),
                                             Generator::k(kStar)};
const std::vector<Generator> kOneSpelled = {
    Generator::c(), Generator::i(kStar), Generator::f(kStar),
    Generator::k(kStar)};

char kind_letter(Kind k) {
  switch (k) {
    case Kind::K: return 'k';
    case Kind::I: return 'i';
    case Kind::F: return 'f';
    case Kind::C: return 'c';
  }
  return '?';
}

}  // namespace

std::string to_string(const Generator& g) {
  std::string out(1, kind_letter(g.kind));
  if (g.kind == Kind::C) return out;
  if (g.index == kStar) return out + "*";
  return out + std::to_string(g.index);
}

std::size_t OpWord::length() const noexcept {
  switch (constant_) {
    case Constant::Zero: return kZeroSpelled.size();
    case Constant::One: return kOneSpelled.size();
    case Constant::None: break;
  }
  return gens_.size();
}

std::vector<Generator> OpWord::spelled() const {
  switch (constant_) {
    case Constant::Zero: return kZeroSpelled;
    case Constant::One: return kOneSpelled;
    case Constant::None: break;
  }
  return gens_;
}

std::uint32_t OpWord::max_index() const noexcept {
  std::uint32_t m = 0;
  for (const auto& g : gens_) m = std::max(m, g.index);
  return m;
}

bool OpWord::has_complement() const noexcept {
  return is_one() || std::any_of(gens_.begin(), gens_.end(), [](const auto& g) {
           return g.kind == Kind::C;
         });
}

bool OpWord::has_star() const noexcept {
  return std::any_of(gens_.begin(), gens_.end(),
                     [](const auto& g) { return g.is_star(); });
}

OpWord prepend(const Generator& g, const OpWord& w) {
  if (w.is_zero()) return g.kind == Kind::C ? OpWord::one() : OpWord::zero();
  if (w.is_one()) {
    if (g.kind == Kind::C) return OpWord::zero();
    // k1 = 1, i1 = 1, f1 = 0 on every space.
    if (g.kind == Kind::F) return OpWord::zero();
    return OpWord::one();
  }
  std::vector<Generator> gens;
  gens.reserve(w.gens().size() + 1);
  gens.push_back(g);
  gens.insert(gens.end(), w.gens().begin(), w.gens().end());
  return OpWord(std::move(gens));
}

OpWord concat(const OpWord& left, const OpWord& right) {
  // A constant on the left ignores its argument.
  if (left.is_constant()) return left;
  OpWord out = right;
  const auto& l = left.gens();
  for (auto it = l.rbegin(); it != l.rend(); ++it) out = prepend(*it, out);
  return out;
}

bool shortlex_less(const OpWord& a, const OpWord& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  const auto sa = a.spelled();
  const auto sb = b.spelled();
  if (sa != sb) {
    return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(),
                                        sb.end());
  }
  // Same spelling: the constant sorts before its spelled-out word.
  return a.is_constant() && !b.is_constant();
}

OpWord parse_word(std::string_view text) {
  std::vector<Generator> gens;
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> UsageError {
    return UsageError("cannot parse word '" + std::string(text) + "': " + why);
  };
  while (pos < text.size()) {
    const char ch = text[pos];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++pos;
      continue;
    }
    if (text.substr(pos, 2) == "Id") {
      tokens.emplace_back("Id");
      pos += 2;
      continue;
    }
    if (ch == '0' || ch == '1') {
      tokens.emplace_back(1, ch);
      ++pos;
      continue;
    }
    if (ch == 'c') {
      gens.push_back(Generator::c());
      tokens.emplace_back("c");
      ++pos;
      continue;
    }
    Kind kind;
    if (ch == 'k') {
      kind = Kind::K;
    } else if (ch == 'i') {
      kind = Kind::I;
    } else if (ch == 'f') {
      kind = Kind::F;
    } else {
      throw fail(std::string("unexpected character '") + ch + "'");
    }
    ++pos;
    if (pos < text.size() && text[pos] == '*') {
      gens.push_back({kind, kStar});
      ++pos;
    } else {
      std::uint64_t v = 0;
      const std::size_t start = pos;
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        if (v > 1'000'000) throw fail("index too large");
        ++pos;
      }
      if (pos == start) throw fail("generator without index");
      if (v == 0) throw fail("topology indices start at 1");
      gens.push_back({kind, static_cast<std::uint32_t>(v)});
    }
    tokens.emplace_back("g");
  }
  const bool has_special = std::any_of(tokens.begin(), tokens.end(), [](auto& t) {
    return t == "Id" || t == "0" || t == "1";
  });
  if (has_special) {
    if (tokens.size() != 1) {
      throw fail("'Id', '0' and '1' must stand alone");
    }
    if (tokens[0] == "0") return OpWord::zero();
    if (tokens[0] == "1") return OpWord::one();
    return OpWord::identity();
  }
  if (tokens.empty()) throw fail("empty word (use Id)");
  return OpWord(std::move(gens));
}

std::string to_string(const OpWord& w) {
  if (w.is_zero()) return "0";
  if (w.is_one()) return "1";
  if (w.gens().empty()) return "Id";
  std::string out;
  for (const auto& g : w.gens()) {
    if (!out.empty()) out += ' ';
    out += to_string(g);
  }
  return out;
}

std::size_t OpWordHash::operator()(const OpWord& w) const noexcept {
  std::size_t h = static_cast<std::size_t>(w.constant()) * 0x9e3779b97f4a7c15ull;
  for (const auto& g : w.gens()) {
    const std::size_t v =
        (static_cast<std::size_t>(g.kind) << 32) ^ static_cast<std::size_t>(g.index);
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace ktf
