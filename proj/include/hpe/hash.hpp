#ifndef HPE_HASH_HPP
#define HPE_HASH_HPP

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "hpe/base_field.hpp"
#include "hpe/error.hpp"

namespace hpe {

using Digest = std::array<unsigned char, 32>;

inline Digest sha256(std::string_view data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != out.size()) {
    throw Error(ErrorCode::InvalidParams, "SHA-256 failed");
  }
  return out;
}

// n digits over F_q from SHA-256 in counter mode: block i is
// SHA-256(message || i as 4 big-endian bytes), the blocks are read as one bit
// stream (most significant bit first) and each digit takes ceil(log2 q) bits
// reduced mod q.
inline Vec hash_to_y(unsigned q, std::size_t n, std::string_view message) {
  unsigned bits_per_digit = 0;
  while ((1U << bits_per_digit) < q) ++bits_per_digit;

  std::vector<unsigned char> stream;
  const std::size_t needed = (n * bits_per_digit + 7) / 8;
  std::string buffer(message);
  buffer.append(4, '\0');
  for (std::uint32_t counter = 0; stream.size() < needed; ++counter) {
    for (int b = 0; b < 4; ++b)
      buffer[message.size() + b] = static_cast<char>((counter >> (8 * (3 - b))) & 0xFFU);
    const Digest d = sha256(buffer);
    stream.insert(stream.end(), d.begin(), d.end());
  }

  Vec y(n);
  std::size_t bit = 0;
  for (std::size_t i = 0; i < n; ++i) {
    unsigned value = 0;
    for (unsigned k = 0; k < bits_per_digit; ++k, ++bit)
      value = (value << 1U) | ((stream[bit / 8] >> (7 - bit % 8)) & 1U);
    y[i] = static_cast<Fq>(value % q);
  }
  return y;
}

}  // namespace hpe

#endif  // HPE_HASH_HPP
