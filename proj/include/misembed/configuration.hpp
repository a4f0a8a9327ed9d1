#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace misembed {

/// Fixed-length vertex subset of one graph. Bit i is the occupation n_i of
/// vertex i.
///
/// Ordering is the numeric order of the bit vector read as an unsigned
/// integer with vertex 0 as the least significant bit (the order of the hex
/// form used in files).
class Configuration {
public:
  Configuration() = default;
  explicit Configuration(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}
  Configuration(std::size_t size, std::initializer_list<std::size_t> selected);

  static Configuration from_vertices(std::size_t size, const std::vector<std::size_t> &selected);
  /// Parses the hex form written by `to_hex`; `size` fixes the length.
  static Configuration from_hex(std::string_view hex, std::size_t size);

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value = true) {
    const auto mask = std::uint64_t{1} << (i & 63);
    if (value)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t count() const;
  bool none() const { return count() == 0; }
  std::vector<std::size_t> selected() const;
  std::size_t hamming(const Configuration &other) const;

  std::string to_hex() const;
  const std::vector<std::uint64_t> &words() const { return words_; }

  friend bool operator==(const Configuration &, const Configuration &) = default;
  friend std::strong_ordering operator<=>(const Configuration &a, const Configuration &b);

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace misembed
