#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ktf {

// A subset of a finite model's atoms. The width is the atom count of the
// owning model; bits at positions >= width are always zero.
class AtomMask {
 public:
  AtomMask() = default;
  explicit AtomMask(std::size_t width);

  static AtomMask from_bits(std::size_t width, std::uint64_t bits);
  static AtomMask full(std::size_t width);

  std::size_t width() const noexcept { return width_; }

  bool test(std::size_t atom) const;
  void set(std::size_t atom, bool value = true);
  void reset(std::size_t atom) { set(atom, false); }

  bool none() const noexcept;
  std::size_t count() const noexcept;

  AtomMask complement() const;
  bool subset_of(const AtomMask& other) const;
  bool intersects(const AtomMask& other) const;

  AtomMask& operator|=(const AtomMask& other);
  AtomMask& operator&=(const AtomMask& other);
  AtomMask& operator^=(const AtomMask& other);

  friend AtomMask operator|(AtomMask a, const AtomMask& b) { return a |= b; }
  friend AtomMask operator&(AtomMask a, const AtomMask& b) { return a &= b; }
  friend AtomMask operator^(AtomMask a, const AtomMask& b) { return a ^= b; }

  friend bool operator==(const AtomMask&, const AtomMask&) = default;
  // Numeric order: width first, then the mask read as a binary number.
  friend std::strong_ordering operator<=>(const AtomMask& a,
                                          const AtomMask& b);

  // Requires width() <= 64.
  std::uint64_t to_u64() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  // Bits of this mask copied into a wider mask starting at `offset`.
  void embed_into(AtomMask& target, std::size_t offset) const;
  AtomMask slice(std::size_t offset, std::size_t width) const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  // Hex string, least significant bit = atom 0, e.g. "0x1f".
  std::string to_hex() const;

  std::size_t hash() const noexcept;

 private:
  void check_width(const AtomMask& other) const;

  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct AtomMaskHash {
  std::size_t operator()(const AtomMask& m) const noexcept { return m.hash(); }
};

}  // namespace ktf
