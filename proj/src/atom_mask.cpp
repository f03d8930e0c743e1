#include "ktf/atom_mask.hpp"

#include "ktf/error.hpp"

namespace ktf {

namespace {

constexpr std::size_t word_count(std::size_t width) { return (width + 63) / 64; }

constexpr std::uint64_t tail_mask(std::size_t width) {
  const std::size_t r = width % 64;
  return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

}  // namespace

AtomMask::AtomMask(std::size_t width)
    : width_(width), words_(word_count(width), 0) {}

AtomMask AtomMask::from_bits(std::size_t width, std::uint64_t bits) {
  AtomMask m(width);
  if (width < 64 && (bits >> width) != 0) {
    throw UsageError("mask has bits beyond width " + std::to_string(width));
  }
  if (!m.words_.empty()) m.words_[0] = bits;
  return m;
}

AtomMask AtomMask::full(std::size_t width) {
  AtomMask m(width);
  for (auto& w : m.words_) w = ~std::uint64_t{0};
  if (!m.words_.empty()) m.words_.back() &= tail_mask(width);
  return m;
}

bool AtomMask::test(std::size_t atom) const {
  if (atom >= width_) throw UsageError("atom index out of range");
  return (words_[atom / 64] >> (atom % 64)) & 1u;
}

void AtomMask::set(std::size_t atom, bool value) {
  if (atom >= width_) throw UsageError("atom index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (atom % 64);
  if (value) {
    words_[atom / 64] |= bit;
  } else {
    words_[atom / 64] &= ~bit;
  }
}

bool AtomMask::none() const noexcept {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t AtomMask::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

AtomMask AtomMask::complement() const {
  AtomMask m(width_);
  for (std::size_t i = 0; i < words_.size(); ++i) m.words_[i] = ~words_[i];
  if (!m.words_.empty()) m.words_.back() &= tail_mask(width_);
  return m;
}

void AtomMask::check_width(const AtomMask& other) const {
  if (other.width_ != width_) {
    throw UsageError("mask width mismatch: " + std::to_string(width_) +
                     " vs " + std::to_string(other.width_));
  }
}

bool AtomMask::subset_of(const AtomMask& other) const {
  check_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

bool AtomMask::intersects(const AtomMask& other) const {
  check_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) return true;
  }
  return false;
}

AtomMask& AtomMask::operator|=(const AtomMask& other) {
  check_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

AtomMask& AtomMask::operator&=(const AtomMask& other) {
  check_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

AtomMask& AtomMask::operator^=(const AtomMask& other) {
  check_width(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::strong_ordering operator<=>(const AtomMask& a, const AtomMask& b) {
  if (auto c = a.width_ <=> b.width_; c != 0) return c;
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (auto c = a.words_[i] <=> b.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::uint64_t AtomMask::to_u64() const {
  if (width_ > 64) throw UsageError("mask wider than 64 atoms");
  return words_.empty() ? 0 : words_[0];
}

void AtomMask::embed_into(AtomMask& target, std::size_t offset) const {
  if (offset + width_ > target.width_) {
    throw UsageError("embedding exceeds target width");
  }
  for_each([&](std::size_t a) { target.set(offset + a); });
}

AtomMask AtomMask::slice(std::size_t offset, std::size_t width) const {
  if (offset + width > width_) throw UsageError("slice exceeds mask width");
  AtomMask out(width);
  for (std::size_t a = 0; a < width; ++a) {
    if (test(offset + a)) out.set(a);
  }
  return out;
}

std::string AtomMask::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string digits;
  for (std::size_t nibble = 0; nibble * 4 < width_; ++nibble) {
    const std::size_t bit = nibble * 4;
    const unsigned v =
        static_cast<unsigned>((words_[bit / 64] >> (bit % 64)) & 0xf);
    digits.push_back(kDigits[v]);
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (digits.empty()) digits = "0";
  return "0x" + std::string(digits.rbegin(), digits.rend());
}

std::size_t AtomMask::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ width_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace ktf
