#include "misembed/configuration.hpp"

#include "misembed/errors.hpp"

#include <bit>

namespace misembed {

Configuration::Configuration(std::size_t size, std::initializer_list<std::size_t> selected) : Configuration(size) {
  for (auto v : selected) {
    if (v >= size)
      throw StructuralError("vertex " + std::to_string(v) + " out of range");
    set(v);
  }
}

Configuration Configuration::from_vertices(std::size_t size, const std::vector<std::size_t> &selected) {
  Configuration c(size);
  for (auto v : selected) {
    if (v >= size)
      throw StructuralError("vertex " + std::to_string(v) + " out of range");
    c.set(v);
  }
  return c;
}

Configuration Configuration::from_hex(std::string_view hex, std::size_t size) {
  Configuration c(size);
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
    const char ch = *it;
    unsigned nibble = 0;
    if (ch >= '0' && ch <= '9')
      nibble = static_cast<unsigned>(ch - '0');
    else if (ch >= 'a' && ch <= 'f')
      nibble = static_cast<unsigned>(ch - 'a' + 10);
    else if (ch >= 'A' && ch <= 'F')
      nibble = static_cast<unsigned>(ch - 'A' + 10);
    else
      throw ParseError("config_hex", "invalid hex digit");
    for (unsigned k = 0; k < 4; ++k) {
      if (!((nibble >> k) & 1U))
        continue;
      if (bit + k >= size)
        throw ParseError("config_hex", "bit beyond configuration length");
      c.set(bit + k);
    }
  }
  return c;
}

std::size_t Configuration::count() const {
  std::size_t total = 0;
  for (auto w : words_)
    total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<std::size_t> Configuration::selected() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i))
      out.push_back(i);
  return out;
}

std::size_t Configuration::hamming(const Configuration &other) const {
  if (other.size_ != size_)
    throw StructuralError("hamming distance between configurations of different length");
  std::size_t total = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    total += static_cast<std::size_t>(std::popcount(words_[i] ^ other.words_[i]));
  return total;
}

std::string Configuration::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  const std::size_t n_digits = size_ == 0 ? 1 : (size_ + 3) / 4;
  std::string out(n_digits, '0');
  for (std::size_t d = 0; d < n_digits; ++d) {
    unsigned nibble = 0;
    for (unsigned k = 0; k < 4; ++k) {
      const auto bit = 4 * d + k;
      if (bit < size_ && test(bit))
        nibble |= 1U << k;
    }
    out[n_digits - 1 - d] = digits[nibble];
  }
  return out;
}

std::strong_ordering operator<=>(const Configuration &a, const Configuration &b) {
  if (auto c = a.size_ <=> b.size_; c != 0)
    return c;
  for (std::size_t i = a.words_.size(); i-- > 0;)
    if (auto c = a.words_[i] <=> b.words_[i]; c != 0)
      return c;
  return std::strong_ordering::equal;
}

} // namespace misembed
