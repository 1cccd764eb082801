#ifndef HPE_SCHEME_HPP
#define HPE_SCHEME_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hpe/alphabet.hpp"
#include "hpe/error.hpp"
#include "hpe/extension_field.hpp"
#include "hpe/keys.hpp"
#include "hpe/kpoly.hpp"
#include "hpe/linalg.hpp"
#include "hpe/rng.hpp"
#include "hpe/upoly.hpp"

namespace hpe {

struct KeyGenParams {
  unsigned q = 2;
  unsigned n = 16;
  unsigned t_max = 3;
  unsigned degx_max = 9;
  unsigned n_mixed = 3;  // mixed monomials X^i Y^(q^j); their i and their j are pairwise distinct
  unsigned n_pure = 2;   // pure X^i monomials
  AlphabetSpec alphabet;
  unsigned max_regenerations = 64;
};

// Sorted theta multisets of the given size with sum q^theta <= bound and
// theta < n.
inline std::vector<std::vector<unsigned>> decompositions(unsigned q, unsigned n, std::size_t size,
                                                         std::uint64_t bound) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned, std::uint64_t)> rec = [&](unsigned min_theta, std::uint64_t sum) {
    if (cur.size() == size) {
      out.push_back(cur);
      return;
    }
    std::uint64_t power = 1;
    for (unsigned k = 0; k < min_theta; ++k) power *= q;
    for (unsigned theta = min_theta; theta < n; ++theta, power *= q) {
      // Remaining slots take at least q^theta each.
      if (sum + power * (size - cur.size()) > bound) break;
      cur.push_back(theta);
      rec(theta, sum + power);
      cur.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

inline bool is_power_of(std::uint64_t i, unsigned q) {
  while (i % q == 0) i /= q;
  return i == 1;
}

// Valid x-decompositions for mixed terms: 2 <= n_i <= t_max - 1, i <= degx_max
// and i not a power of q (u^(q^k) is linear in x, which would leave the
// equations x-linear).
inline std::vector<std::vector<unsigned>> mixed_decompositions(const KeyGenParams& p) {
  std::vector<std::vector<unsigned>> out;
  for (std::size_t size = 2; size + 1 <= p.t_max; ++size)
    for (auto& d : decompositions(p.q, p.n, size, p.degx_max))
      if (!is_power_of(exponent_of(d, p.q), p.q)) out.push_back(std::move(d));
  return out;
}

// Mixed decompositions grouped by exponent i. Two mixed terms sharing X^i
// collapse into X^i L(Y) for one linearized L, which lets bilinear
// relations through, so each group is used at most once.
inline std::vector<std::vector<std::vector<unsigned>>> mixed_exponent_groups(const KeyGenParams& p) {
  std::map<std::uint64_t, std::vector<std::vector<unsigned>>> by_exponent;
  for (auto& d : mixed_decompositions(p)) by_exponent[exponent_of(d, p.q)].push_back(std::move(d));
  std::vector<std::vector<std::vector<unsigned>>> out;
  for (auto& [i, group] : by_exponent) out.push_back(std::move(group));
  return out;
}

inline std::vector<std::vector<unsigned>> pure_decompositions(const KeyGenParams& p) {
  std::vector<std::vector<unsigned>> out;
  for (std::size_t size = 1; size <= p.t_max; ++size)
    for (auto& d : decompositions(p.q, p.n, size, p.degx_max)) out.push_back(std::move(d));
  return out;
}

inline void validate(const KeyGenParams& p) {
  if (p.n < 2) throw Error(ErrorCode::InvalidDegree, "n must be >= 2");
  if (p.t_max < 2) throw Error(ErrorCode::InvalidParams, "t_max must be >= 2");
  if (p.degx_max < 2 || p.degx_max > 64) throw Error(ErrorCode::InvalidParams, "degx_max must be in [2, 64]");
  if (p.n_mixed == 0) throw Error(ErrorCode::InvalidParams, "at least one mixed monomial is required");
  if (p.n_mixed > p.n) throw Error(ErrorCode::InvalidParams, "more mixed monomials than distinct Y exponents");
  if (p.alphabet.block_len == 0 || p.n % p.alphabet.block_len != 0) {
    throw Error(ErrorCode::InvalidParams, "alphabet block length must divide n");
  }
  if (p.max_regenerations == 0) throw Error(ErrorCode::InvalidParams, "regeneration budget must be positive");
}

inline PrivatePolynomial sample_private_polynomial(const ExtensionField& K, const KeyGenParams& p,
                                                   const std::vector<std::vector<std::vector<unsigned>>>& mixed_groups,
                                                   const std::vector<std::vector<unsigned>>& pure_choices,
                                                   Rng& rng) {
  PrivatePolynomial f;
  std::vector<unsigned> y_thetas(p.n);
  for (unsigned i = 0; i < p.n; ++i) y_thetas[i] = i;
  rng.shuffle(y_thetas);
  std::vector<std::size_t> groups(mixed_groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) groups[g] = g;
  rng.shuffle(groups);
  for (unsigned k = 0; k < p.n_mixed; ++k) {
    MixedTerm term;
    term.coeff = K.random_nonzero(rng);
    const auto& group = mixed_groups[groups[k]];
    term.x_thetas = group[rng.uniform(group.size())];
    term.y_theta = y_thetas[k];
    f.mixed.push_back(std::move(term));
  }
  for (unsigned k = 0; k < p.n_pure && !pure_choices.empty(); ++k) {
    PureTerm term;
    term.coeff = K.random_nonzero(rng);
    term.x_thetas = pure_choices[rng.uniform(pure_choices.size())];
    f.pure.push_back(std::move(term));
  }
  // A zero constant would make u = 0 a root for every v.
  f.constant = K.random_nonzero(rng);
  return f;
}

// The n coordinate equations of f(Ax + c, By + d) = 0 over F_q. Each
// u^(q^theta), v^(q^theta) becomes an affine form through the Frobenius
// table, the forms of a term are multiplied in K, and x^q = x is applied.
inline std::vector<MultiPoly> expand_public(const ExtensionField& K, const PrivatePolynomial& f,
                                            const AffinePair& affine) {
  const unsigned n = K.n();
  const std::size_t nv = 2 * n;
  std::vector<std::optional<KPoly>> u_forms(n), v_forms(n);
  auto u_form = [&](unsigned theta) -> const KPoly& {
    if (!u_forms[theta])
      u_forms[theta] = KPoly::frobenius_of_affine(K, nv, VarBlock{0, n}, affine.A, affine.c, theta);
    return *u_forms[theta];
  };
  auto v_form = [&](unsigned theta) -> const KPoly& {
    if (!v_forms[theta])
      v_forms[theta] = KPoly::frobenius_of_affine(K, nv, VarBlock{n, n}, affine.B, affine.d, theta);
    return *v_forms[theta];
  };
  auto x_product = [&](const std::vector<unsigned>& thetas) {
    KPoly prod = u_form(thetas.at(0));
    for (std::size_t k = 1; k < thetas.size(); ++k) prod = multiply(K, prod, u_form(thetas[k]), true);
    return prod;
  };

  KPoly total = KPoly::constant(nv, f.constant);
  for (const auto& m : f.mixed) {
    const KPoly prod = multiply(K, x_product(m.x_thetas), v_form(m.y_theta), true);
    accumulate(K, total, scale(K, m.coeff, prod));
  }
  for (const auto& p : f.pure) accumulate(K, total, scale(K, p.coeff, x_product(p.x_thetas)));
  return coordinates(K, total);
}

struct KeyPair {
  PublicKey pub;
  PrivateKey priv;
};

// Throws GenerationFailed when the parameters admit no valid f or no key
// passes the shape audit within the regeneration budget.
inline KeyPair keygen(const KeyGenParams& p, Rng& rng) {
  validate(p);
  const ExtensionField K = ExtensionField::build(p.q, p.n);
  const auto mixed_groups = mixed_exponent_groups(p);
  if (mixed_groups.empty()) {
    throw Error(ErrorCode::GenerationFailed,
                "t_max=" + std::to_string(p.t_max) + ", degx_max=" + std::to_string(p.degx_max) +
                    " admit no mixed monomial X^i Y^(q^j) with n_i >= 2 and i not a power of q");
  }
  if (mixed_groups.size() < p.n_mixed) {
    throw Error(ErrorCode::GenerationFailed, "only " + std::to_string(mixed_groups.size()) +
                                                 " distinct mixed exponents i are available for n_mixed=" +
                                                 std::to_string(p.n_mixed));
  }
  const auto pure_choices = pure_decompositions(p);
  const Alphabet alphabet = Alphabet::generate(p.q, p.alphabet, rng);

  for (unsigned attempt = 0; attempt < p.max_regenerations; ++attempt) {
    PrivatePolynomial f = sample_private_polynomial(K, p, mixed_groups, pure_choices, rng);
    AffinePair affine = AffinePair::random(K.base(), p.n, rng);
    PublicKey pub(p.q, p.n, f.degree_bound(), expand_public(K, f, affine), alphabet);
    if (!pub.audit().ok()) continue;
    PrivateKey priv{K, std::move(f), std::move(affine), pub};
    return KeyPair{std::move(pub), std::move(priv)};
  }
  throw Error(ErrorCode::GenerationFailed,
              "no key passed the shape audit in " + std::to_string(p.max_regenerations) + " attempts");
}

// f(u, v) computed in K next to the public equations at
// (x, y) = (A^-1 (u - c), B^-1 (v - d)). The public values are exactly the
// coordinates of f(u, v).
struct RelationCheck {
  FieldElement relation;
  Vec public_values;
  bool relation_vanishes() const { return relation.is_zero(); }
  bool public_vanishes() const {
    return std::all_of(public_values.begin(), public_values.end(), [](Fq c) { return c == 0; });
  }
  bool coincide() const { return relation.coords() == public_values; }
};

inline RelationCheck private_relation_check(const PrivateKey& sk, const FieldElement& u, const FieldElement& v) {
  const BaseField& f = sk.field.base();
  RelationCheck r;
  r.relation = sk.f.evaluate(sk.field, u, v);
  r.public_values = sk.pub.evaluate(sk.affine.x_of(f, u.coords()), sk.affine.y_of(f, v.coords()));
  return r;
}

// All x with f(A x + c, B y + d) = 0, sorted.
inline std::vector<Vec> invert_private(const PrivateKey& sk, std::span<const Fq> y, Rng& rng) {
  const ExtensionField& K = sk.field;
  if (y.size() != K.n()) throw Error(ErrorCode::LengthMismatch, "ciphertext must have n digits");
  const FieldElement v(sk.affine.v_of(K.base(), y));
  const UniPolyK g = sk.f.univariate_in_x(K, v);
  std::vector<Vec> out;
  for (const FieldElement& u : upoly::roots(K, g, rng)) out.push_back(sk.affine.x_of(K.base(), u.coords()));
  std::sort(out.begin(), out.end());
  return out;
}

struct EncryptConfig {
  unsigned max_trials = 10;
};

// One encryption trial for a raw plaintext vector: a uniform element of the
// solution space of PK(x, y) = 0 in y, or nullopt when the system is
// inconsistent.
inline std::optional<Vec> encrypt_raw(const PublicKey& pk, std::span<const Fq> x, Rng& rng) {
  auto sol = solve_linear(pk.field(), pk.system_at(x));
  if (!sol) return std::nullopt;
  return sol->sample(pk.field(), rng);
}

namespace detail {

// Picks the next synonym choice: a one-letter change to an encoding not tried
// yet when possible, otherwise any untried encoding. nullopt once every
// encoding has been tried.
inline std::optional<std::vector<std::size_t>> next_choice(const Alphabet& alphabet,
                                                           const std::vector<std::size_t>& letters,
                                                           const std::vector<std::size_t>& current,
                                                           const std::set<std::vector<std::size_t>>& tried,
                                                           Rng& rng) {
  std::vector<std::vector<std::size_t>> neighbours;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    for (std::size_t s = 0; s < alphabet.synonym_count(letters[i]); ++s) {
      if (s == current[i]) continue;
      auto next = current;
      next[i] = s;
      if (!tried.contains(next)) neighbours.push_back(std::move(next));
    }
  }
  if (!neighbours.empty()) return neighbours[rng.uniform(neighbours.size())];

  double total = 1;
  for (std::size_t letter : letters) total *= static_cast<double>(alphabet.synonym_count(letter));
  if (static_cast<double>(tried.size()) >= total) return std::nullopt;
  for (;;) {
    std::vector<std::size_t> next(letters.size());
    for (std::size_t i = 0; i < letters.size(); ++i) next[i] = rng.uniform(alphabet.synonym_count(letters[i]));
    if (!tried.contains(next)) return next;
  }
}

}  // namespace detail

struct Encryption {
  Vec y;
  Vec x;            // the encoding that was encrypted
  unsigned trials;  // systems solved
};

// Throws EncryptionFailed when no encoding tried within max_trials yields a
// consistent system.
inline Encryption encrypt_detailed(const PublicKey& pk, const std::string& message, const EncryptConfig& cfg,
                                   Rng& rng) {
  if (cfg.max_trials == 0) throw Error(ErrorCode::InvalidParams, "max_trials must be >= 1");
  const Alphabet& alphabet = pk.alphabet();
  Encoding enc = encode(alphabet, pk.n(), message, rng);
  const auto letters = alphabet.letter_indices(message);
  std::set<std::vector<std::size_t>> tried;
  for (unsigned trial = 1; trial <= cfg.max_trials; ++trial) {
    tried.insert(enc.choice);
    if (auto y = encrypt_raw(pk, enc.x, rng)) return Encryption{std::move(*y), std::move(enc.x), trial};
    if (trial == cfg.max_trials) break;
    auto next = detail::next_choice(alphabet, letters, enc.choice, tried, rng);
    if (!next) break;
    enc.choice = std::move(*next);
    enc.x = alphabet.assemble(letters, enc.choice);
  }
  throw Error(ErrorCode::EncryptionFailed, "no consistent system after " + std::to_string(tried.size()) + " encodings");
}

inline Vec encrypt(const PublicKey& pk, const std::string& message, const EncryptConfig& cfg, Rng& rng) {
  return encrypt_detailed(pk, message, cfg, rng).y;
}

struct DecryptionCandidates {
  std::vector<Vec> preimages;         // every x from a root, before alphabet filtering
  std::vector<std::string> messages;  // distinct alphabet-valid decodings, sorted
};

inline DecryptionCandidates decrypt_candidates(const PrivateKey& sk, std::span<const Fq> y) {
  // Root splitting is randomized, but its output is not: a fixed stream keeps
  // decryption a pure function.
  Rng rng(0x5eed);
  DecryptionCandidates out;
  out.preimages = invert_private(sk, y, rng);
  std::set<std::string> messages;
  for (const Vec& x : out.preimages)
    if (auto m = sk.pub.alphabet().decode(x)) messages.insert(*m);
  out.messages.assign(messages.begin(), messages.end());
  return out;
}

// Throws NoValidCandidate or AmbiguousDecryptionError.
inline std::string decrypt(const PrivateKey& sk, std::span<const Fq> y) {
  auto c = decrypt_candidates(sk, y);
  if (c.messages.empty()) throw Error(ErrorCode::NoValidCandidate, "no root decodes through the alphabet");
  if (c.messages.size() > 1) throw AmbiguousDecryptionError(std::move(c.messages));
  return c.messages.front();
}

inline constexpr std::uint64_t kExhaustiveLimit = std::uint64_t{1} << 24;

// Every x with PK(x, y) = 0, by enumeration in lexicographic order (x_1
// most significant). Throws TooLarge when q^n > 2^24.
inline std::vector<Vec> exhaustive_invert(const PublicKey& pk, std::span<const Fq> y) {
  std::uint64_t count = 1;
  for (unsigned i = 0; i < pk.n(); ++i) {
    count *= pk.q();
    if (count > kExhaustiveLimit) throw Error(ErrorCode::TooLarge, "q^n exceeds the enumeration limit 2^24");
  }
  const auto fixed = pk.fix_y(y);
  std::vector<Vec> out;
  Vec x(pk.n(), 0);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    if (fixed.vanishes(x)) out.push_back(x);
    for (std::size_t i = x.size(); i-- > 0;) {
      if (x[i] + 1U < pk.q()) {
        ++x[i];
        break;
      }
      x[i] = 0;
    }
  }
  return out;
}

}  // namespace hpe

#endif  // HPE_SCHEME_HPP
