#include "sgt/bits.hpp"

#include <algorithm>

#include "sgt/error.hpp"

namespace sgt {

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b)
    throw Error(Errc::LengthMismatch, "bit vectors of length " + std::to_string(a) + " and " + std::to_string(b));
}

}  // namespace

BitVector::BitVector(std::size_t size, std::span<const Word> words) : size_(size), words_(words_for(size), 0) {
  if (words.size() != words_.size()) throw Error(Errc::LengthMismatch, "word count does not match bit length");
  std::copy(words.begin(), words.end(), words_.begin());
  if (size_ % kWordBits != 0 && !words_.empty()) words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
}

BitVector BitVector::from_string(std::string_view text) {
  BitVector out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      out.set(i);
    else if (text[i] != '0')
      throw Error(Errc::InvalidCharacter, "unexpected character at position " + std::to_string(i));
  }
  return out;
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each_set_bit(words_, [&](std::size_t i) { out.push_back(i); });
  return out;
}

std::string BitVector::to_string() const {
  std::string out(size_, '0');
  for_each_set_bit(words_, [&](std::size_t i) { out[i] = '1'; });
  return out;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  require_same_size(size_, other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  require_same_size(size_, other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  require_same_size(size_, other.size_);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

bool BitVector::is_subset_of(const BitVector& other) const {
  require_same_size(size_, other.size_);
  return popcount_andnot(words_, other.words_) == 0;
}

}  // namespace sgt
