#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sgt {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) noexcept { return (bits + kWordBits - 1) / kWordBits; }

inline std::size_t popcount(std::span<const Word> a) noexcept {
  std::size_t total = 0;
  for (Word w : a) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

/// |a & b|
inline std::size_t popcount_and(std::span<const Word> a, std::span<const Word> b) noexcept {
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return total;
}

/// |a & ~b|
inline std::size_t popcount_andnot(std::span<const Word> a, std::span<const Word> b) noexcept {
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += static_cast<std::size_t>(std::popcount(a[i] & ~b[i]));
  return total;
}

/// Fixed-length packed bit vector. Bits past size() are always zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}
  BitVector(std::size_t size, std::span<const Word> words);

  /// Parses a string over {0,1}; throws InvalidCharacter otherwise.
  static BitVector from_string(std::string_view text);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i, bool value = true) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (value)
      words_[i / kWordBits] |= mask;
    else
      words_[i / kWordBits] &= ~mask;
  }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  std::size_t count() const noexcept { return popcount(words_); }
  bool none() const noexcept { return count() == 0; }
  std::vector<std::size_t> support() const;
  std::string to_string() const;

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  BitVector& operator|=(const BitVector& other);
  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);

  /// True when every set bit of *this is also set in other.
  bool is_subset_of(const BitVector& other) const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// Calls fn(index) for each set bit in ascending order.
template <typename Fn>
void for_each_set_bit(std::span<const Word> words, Fn&& fn) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    Word bits = words[w];
    while (bits != 0) {
      fn(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

}  // namespace sgt
