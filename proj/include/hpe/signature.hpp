#ifndef HPE_SIGNATURE_HPP
#define HPE_SIGNATURE_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hpe/error.hpp"
#include "hpe/hash.hpp"
#include "hpe/keys.hpp"
#include "hpe/rng.hpp"
#include "hpe/scheme.hpp"

namespace hpe {

// x solves the signer's public equations together with y = H(M || salt).
struct Signature {
  std::uint64_t salt = 0;
  Vec x;
  bool operator==(const Signature&) const = default;
};

// H(M || salt), the salt as 8 big-endian bytes.
inline Vec signing_target(unsigned q, std::size_t n, std::string_view message, std::uint64_t salt) {
  std::string salted(message);
  for (int b = 7; b >= 0; --b) salted += static_cast<char>((salt >> (8 * b)) & 0xFFU);
  return hash_to_y(q, n, salted);
}

// A hash has no synonyms, so a rootless f(X, v) is retried with the next
// salt. Throws SigningFailed after max_trials salts.
inline Signature sign(const PrivateKey& sk, std::string_view message, Rng& rng, unsigned max_trials = 10) {
  if (max_trials == 0) throw Error(ErrorCode::InvalidParams, "max_trials must be >= 1");
  const PublicKey& pk = sk.pub;
  for (std::uint64_t salt = 0; salt < max_trials; ++salt) {
    const Vec y = signing_target(pk.q(), pk.n(), message, salt);
    const auto preimages = invert_private(sk, y, rng);
    if (preimages.empty()) continue;
    return Signature{salt, preimages[rng.uniform(preimages.size())]};
  }
  throw Error(ErrorCode::SigningFailed, "no salt below " + std::to_string(max_trials) + " gave a solvable hash");
}

inline bool verify(const PublicKey& pk, std::string_view message, const Signature& sig) {
  if (sig.x.size() != pk.n()) return false;
  for (Fq d : sig.x)
    if (d >= pk.q()) return false;
  return pk.satisfied(sig.x, signing_target(pk.q(), pk.n(), message, sig.salt));
}

// The sender inverts its own trapdoor on the encoded message, then encrypts
// the raw preimage for the receiver: a random element of
// F_receiver(F_sender^-1(X)). Throws SigncryptionFailed.
inline Vec signcrypt(const PrivateKey& sender, const PublicKey& receiver, const std::string& message, Rng& rng,
                     const EncryptConfig& cfg = {}) {
  const PublicKey& own = sender.pub;
  if (own.q() != receiver.q() || own.n() != receiver.n()) {
    throw Error(ErrorCode::InvalidParams, "sender and receiver must share q and n");
  }
  if (cfg.max_trials == 0) throw Error(ErrorCode::InvalidParams, "max_trials must be >= 1");
  const Alphabet& alphabet = own.alphabet();
  Encoding enc = encode(alphabet, own.n(), message, rng);
  const auto letters = alphabet.letter_indices(message);
  std::set<std::vector<std::size_t>> tried;
  for (unsigned trial = 0; trial < cfg.max_trials; ++trial) {
    tried.insert(enc.choice);
    auto preimages = invert_private(sender, enc.x, rng);
    rng.shuffle(preimages);
    for (const Vec& x : preimages)
      if (auto y = encrypt_raw(receiver, x, rng)) return *y;
    auto next = detail::next_choice(alphabet, letters, enc.choice, tried, rng);
    if (!next) break;
    enc.choice = std::move(*next);
    enc.x = alphabet.assemble(letters, enc.choice);
  }
  throw Error(ErrorCode::SigncryptionFailed, "no encoding could be signed and encrypted");
}

inline constexpr std::uint64_t kUnsigncryptEnumerationLimit = std::uint64_t{1} << 16;

// Distinct alphabet-valid messages, sorted. The receiver recovers every raw
// preimage with its private key, then solves the sender's public equations
// for the sender's y block and decodes.
inline std::vector<std::string> unsigncrypt_candidates(const PrivateKey& receiver, const PublicKey& sender,
                                                       std::span<const Fq> ciphertext) {
  Rng rng(0x5eed);
  std::set<std::string> messages;
  const BaseField& f = sender.field();
  for (const Vec& x : invert_private(receiver, ciphertext, rng)) {
    const auto sol = solve_linear(f, sender.system_at(x));
    if (!sol) continue;
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < sol->kernel.size(); ++k) {
      count *= f.q();
      if (count > kUnsigncryptEnumerationLimit) {
        throw Error(ErrorCode::TooLarge, "sender system has a solution space of dimension " +
                                             std::to_string(sol->kernel.size()));
      }
    }
    for (std::uint64_t idx = 0; idx < count; ++idx)
      if (auto m = sender.alphabet().decode(sol->element(f, idx))) messages.insert(*m);
  }
  return {messages.begin(), messages.end()};
}

// Throws NoValidCandidate when nothing decodes.
inline std::vector<std::string> unsigncrypt(const PrivateKey& receiver, const PublicKey& sender,
                                            std::span<const Fq> ciphertext) {
  auto out = unsigncrypt_candidates(receiver, sender, ciphertext);
  if (out.empty()) throw Error(ErrorCode::NoValidCandidate, "no candidate decodes through the sender's alphabet");
  return out;
}

}  // namespace hpe

#endif  // HPE_SIGNATURE_HPP
