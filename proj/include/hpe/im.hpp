#ifndef HPE_IM_HPP
#define HPE_IM_HPP

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hpe/error.hpp"
#include "hpe/extension_field.hpp"
#include "hpe/keys.hpp"
#include "hpe/kpoly.hpp"
#include "hpe/linalg.hpp"
#include "hpe/multipoly.hpp"
#include "hpe/rng.hpp"
#include "hpe/scheme.hpp"

namespace hpe {

// Public side of an Imai-Matsumoto key: y_i = forms[i](x), quadratic in x.
struct IMPublicKey {
  BaseField field;
  unsigned n = 0;
  std::vector<MultiPoly> forms;

  unsigned q() const { return field.q(); }

  Vec encrypt(std::span<const Fq> x) const {
    if (x.size() != n) throw Error(ErrorCode::LengthMismatch, "plaintext must have n digits");
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = forms[i].eval(field, x);
    return y;
  }

  bool operator==(const IMPublicKey&) const = default;
};

// v = u^h with h = q^theta + 1, u = A x + c, v = B y + d.
struct IMKeyPair {
  ExtensionField field;
  unsigned theta = 0;
  std::uint64_t h = 0;
  std::uint64_t h_inv = 0;  // h * h_inv = 1 mod q^n - 1
  AffinePair affine;
  IMPublicKey pub;
};

namespace detail {

inline std::uint64_t group_order(const ExtensionField& K) {
  if (!K.order()) throw Error(ErrorCode::TooLarge, "q^n does not fit in 64 bits");
  return *K.order() - 1;
}

inline std::uint64_t q_power(unsigned q, unsigned k) {
  std::uint64_t v = 1;
  for (unsigned i = 0; i < k; ++i) v *= q;
  return v;
}

// Inverse of a modulo m by the extended Euclidean algorithm; gcd(a, m) = 1.
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  __int128 r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const __int128 quot = r0 / r1;
    __int128 tmp = r0 - quot * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - quot * s1;
    s0 = s1;
    s1 = tmp;
  }
  if (s0 < 0) s0 += m;
  return static_cast<std::uint64_t>(s0);
}

// h = q^theta + 1 after checking theta in [1, n) and gcd(h, q^n - 1) = 1.
inline std::uint64_t check_theta(const ExtensionField& K, unsigned theta) {
  const std::uint64_t order = group_order(K);
  if (theta == 0 || theta >= K.n()) throw Error(ErrorCode::BadTheta, "theta must lie in [1, n)");
  const std::uint64_t h = q_power(K.q(), theta) + 1;
  const std::uint64_t g = std::gcd(h, order);
  if (g != 1) {
    throw Error(ErrorCode::BadTheta, "gcd(q^theta + 1, q^n - 1) = gcd(" + std::to_string(h) + ", " +
                                         std::to_string(order) + ") = " + std::to_string(g));
  }
  return h;
}

}  // namespace detail

// gcd(q^theta + 1, q^n - 1).
inline std::uint64_t im_gcd(unsigned q, unsigned n, unsigned theta) {
  return std::gcd(detail::q_power(q, theta) + 1, detail::q_power(q, n) - 1);
}

// Least theta >= 1 for which u -> u^(q^theta + 1) is a bijection of K.
inline std::optional<unsigned> im_default_theta(unsigned q, unsigned n) {
  for (unsigned theta = 1; theta < n; ++theta)
    if (im_gcd(q, n, theta) == 1) return theta;
  return std::nullopt;
}

// Builds the key for a given field, theta and affine pair. Throws BadTheta
// when gcd(q^theta + 1, q^n - 1) != 1 or theta is not in [1, n).
inline IMKeyPair im_assemble(const ExtensionField& K, unsigned theta, AffinePair affine) {
  const BaseField& f = K.base();
  const unsigned n = K.n();
  IMKeyPair kp;
  kp.field = K;
  kp.theta = theta;
  kp.h = detail::check_theta(K, theta);
  kp.h_inv = detail::inverse_mod(kp.h, detail::group_order(K));
  kp.affine = std::move(affine);

  // Coordinates of v = u^(q^theta) * u as quadratic forms in x.
  const VarBlock xs{0, n};
  const KPoly v = multiply(K, KPoly::frobenius_of_affine(K, n, xs, kp.affine.A, kp.affine.c, theta),
                           KPoly::frobenius_of_affine(K, n, xs, kp.affine.A, kp.affine.c, 0), true);
  std::vector<MultiPoly> vk = coordinates(K, v);
  for (std::size_t k = 0; k < n; ++k) vk[k] = sub(f, vk[k], MultiPoly::constant(n, kp.affine.d[k]));

  // y = B^-1 (v - d).
  kp.pub.field = f;
  kp.pub.n = n;
  kp.pub.forms.assign(n, MultiPoly(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (kp.affine.B_inv(i, k) != 0) kp.pub.forms[i] = add(f, kp.pub.forms[i], scale(f, kp.affine.B_inv(i, k), vk[k]));
  return kp;
}

inline IMKeyPair im_keygen(unsigned q, unsigned n, unsigned theta, Rng& rng) {
  const ExtensionField K = ExtensionField::build(q, n);
  detail::check_theta(K, theta);
  return im_assemble(K, theta, AffinePair::random(K.base(), n, rng));
}

// B^-1 ((A x + c)^h - d), computed in K.
inline Vec im_private_encrypt(const IMKeyPair& kp, std::span<const Fq> x) {
  const BaseField& f = kp.field.base();
  const FieldElement u(kp.affine.u_of(f, x));
  const FieldElement v = kp.field.pow(u, kp.h);
  return kp.affine.y_of(f, v.coords());
}

inline Vec im_decrypt(const IMKeyPair& kp, std::span<const Fq> y) {
  if (y.size() != kp.field.n()) throw Error(ErrorCode::LengthMismatch, "ciphertext must have n digits");
  const BaseField& f = kp.field.base();
  const FieldElement v(kp.affine.v_of(f, y));
  const FieldElement u = kp.field.pow(v, kp.h_inv);
  return kp.affine.x_of(f, u.coords());
}

// sum gamma_ij x_i y_j + sum delta_i x_i + sum epsilon_j y_j + zeta, stored
// in the column order x_i y_j (i major), x_i, y_j, 1.
struct BilinearRelation {
  std::size_t n = 0;
  Vec coeffs;

  Fq gamma(std::size_t i, std::size_t j) const { return coeffs[i * n + j]; }
  Fq delta(std::size_t i) const { return coeffs[n * n + i]; }
  Fq epsilon(std::size_t j) const { return coeffs[n * n + n + j]; }
  Fq zeta() const { return coeffs[n * n + 2 * n]; }

  Fq evaluate(const BaseField& f, std::span<const Fq> x, std::span<const Fq> y) const {
    Fq acc = zeta();
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      Fq inner = delta(i);
      for (std::size_t j = 0; j < n; ++j) inner = f.add(inner, f.mul(gamma(i, j), y[j]));
      acc = f.add(acc, f.mul(x[i], inner));
    }
    for (std::size_t j = 0; j < n; ++j) acc = f.add(acc, f.mul(epsilon(j), y[j]));
    return acc;
  }
};

inline std::size_t bilinear_monomial_count(std::size_t n) { return n * n + 2 * n + 1; }

struct PlainCipherPair {
  Vec x, y;
};

// Basis of all bilinear relations vanishing on the given pairs.
inline std::vector<BilinearRelation> relations_from_pairs(const BaseField& f, std::size_t n,
                                                          const std::vector<PlainCipherPair>& pairs) {
  const std::size_t cols = bilinear_monomial_count(n);
  Matrix m(pairs.size(), cols);
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const Vec& x = pairs[r].x;
    const Vec& y = pairs[r].y;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(r, i * n + j) = f.mul(x[i], y[j]);
    for (std::size_t i = 0; i < n; ++i) m(r, n * n + i) = x[i];
    for (std::size_t j = 0; j < n; ++j) m(r, n * n + n + j) = y[j];
    m(r, cols - 1) = 1;
  }
  std::vector<BilinearRelation> out;
  for (Vec& v : nullspace(f, m)) out.push_back(BilinearRelation{n, std::move(v)});
  return out;
}

inline std::size_t default_sample_count(std::size_t n) { return 2 * bilinear_monomial_count(n); }

// Pairs come from the public key alone: random x, y = PK(x).
inline std::vector<BilinearRelation> harvest_relations(const IMPublicKey& pk, std::size_t sample_count, Rng& rng) {
  if (sample_count < bilinear_monomial_count(pk.n)) {
    throw Error(ErrorCode::InvalidParams, "sample_count must be at least n^2 + 2n + 1");
  }
  const BaseField& f = pk.field;
  std::vector<PlainCipherPair> pairs;
  for (std::size_t s = 0; s < sample_count; ++s) {
    Vec x = random_vector(f, pk.n, rng);
    Vec y = pk.encrypt(x);
    pairs.push_back({std::move(x), std::move(y)});
  }
  return relations_from_pairs(f, pk.n, pairs);
}

// The same harvest against an HPE public key: random x, and a random
// solution y of PK(x, y) = 0 whenever one exists.
inline std::vector<BilinearRelation> harvest_relations(const PublicKey& pk, std::size_t sample_count, Rng& rng) {
  if (sample_count < bilinear_monomial_count(pk.n())) {
    throw Error(ErrorCode::InvalidParams, "sample_count must be at least n^2 + 2n + 1");
  }
  std::vector<PlainCipherPair> pairs;
  while (pairs.size() < sample_count) {
    Vec x = random_vector(pk.field(), pk.n(), rng);
    if (auto y = encrypt_raw(pk, x, rng)) pairs.push_back({std::move(x), std::move(*y)});
  }
  return relations_from_pairs(pk.field(), pk.n(), pairs);
}

inline constexpr std::uint64_t kAttackEnumerationLimit = std::uint64_t{1} << 20;

struct AttackResult {
  std::vector<Vec> candidates;  // every x in the affine space with PK(x) = y
  std::uint64_t enumerated = 0; // size of the affine space that was searched
};

// Fixes y in every relation, solves the resulting linear system in x and
// filters its solution space by re-encryption. Throws
// SolutionSpaceTooLarge above 2^20 points.
inline AttackResult patarin_attack(const IMPublicKey& pk, const std::vector<BilinearRelation>& relations,
                                   std::span<const Fq> y) {
  if (relations.empty()) throw Error(ErrorCode::InvalidParams, "no relations to attack with");
  if (y.size() != pk.n) throw Error(ErrorCode::LengthMismatch, "ciphertext must have n digits");
  const BaseField& f = pk.field;
  const std::size_t n = pk.n;
  LinearSystem sys{Matrix(relations.size(), n), Vec(relations.size(), 0)};
  for (std::size_t r = 0; r < relations.size(); ++r) {
    const BilinearRelation& rel = relations[r];
    for (std::size_t i = 0; i < n; ++i) {
      Fq c = rel.delta(i);
      for (std::size_t j = 0; j < n; ++j) c = f.add(c, f.mul(rel.gamma(i, j), y[j]));
      sys.matrix(r, i) = c;
    }
    Fq constant = rel.zeta();
    for (std::size_t j = 0; j < n; ++j) constant = f.add(constant, f.mul(rel.epsilon(j), y[j]));
    sys.rhs[r] = f.neg(constant);
  }
  AttackResult out;
  const auto sol = solve_linear(f, sys);
  if (!sol) return out;
  std::uint64_t size = 1;
  for (std::size_t k = 0; k < sol->kernel.size(); ++k) {
    size *= pk.q();
    if (size > kAttackEnumerationLimit) {
      throw Error(ErrorCode::SolutionSpaceTooLarge,
                  "affine solution space has dimension " + std::to_string(sol->kernel.size()));
    }
  }
  out.enumerated = size;
  const Vec target(y.begin(), y.end());
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    Vec x = sol->element(f, idx);
    if (pk.encrypt(x) == target) out.candidates.push_back(std::move(x));
  }
  return out;
}

}  // namespace hpe

#endif  // HPE_IM_HPP
