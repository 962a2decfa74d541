#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hexz {

// MSB-first bit packer.
class BitWriter {
 public:
  void put(bool bit) {
    if (count_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (count_ % 8));
    ++count_;
  }

  // Writes the low `n` bits of `value`, most significant first.
  void put_bits(std::uint32_t value, int n) {
    for (int i = n - 1; i >= 0; --i) put(((value >> i) & 1u) != 0);
  }

  void append(const BitWriter& other) {
    for (std::size_t i = 0; i < other.size(); ++i) put(other.bit(i));
  }

  bool bit(std::size_t i) const { return (bytes_[i / 8] >> (7 - i % 8)) & 1u; }
  std::size_t size() const { return count_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t count_ = 0;
};

// Reads at most `limit` bits; get() yields nullopt past the end.
class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::size_t limit)
      : bytes_(bytes), limit_(std::min(limit, bytes.size() * 8)) {}

  std::optional<bool> get() {
    if (pos_ >= limit_) return std::nullopt;
    const bool b = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
    ++pos_;
    return b;
  }

  bool exhausted() const { return pos_ >= limit_; }
  std::size_t position() const { return pos_; }
  std::size_t limit() const { return limit_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t limit_;
  std::size_t pos_ = 0;
};

}  // namespace hexz
