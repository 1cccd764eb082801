#ifndef HPE_UPOLY_HPP
#define HPE_UPOLY_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "hpe/error.hpp"
#include "hpe/extension_field.hpp"
#include "hpe/rng.hpp"

namespace hpe {

// Univariate polynomial over K, coefficients low to high. Kept trimmed: the
// leading coefficient is nonzero, the zero polynomial is empty.
using UniPolyK = std::vector<FieldElement>;

namespace upoly {

inline void trim(UniPolyK& g) {
  while (!g.empty() && g.back().is_zero()) g.pop_back();
}

inline int degree(const UniPolyK& g) { return static_cast<int>(g.size()) - 1; }

inline FieldElement eval(const ExtensionField& K, const UniPolyK& g, const FieldElement& x) {
  FieldElement acc = K.zero();
  for (std::size_t i = g.size(); i-- > 0;) acc = K.add(K.mul(acc, x), g[i]);
  return acc;
}

inline UniPolyK add(const ExtensionField& K, const UniPolyK& a, const UniPolyK& b) {
  UniPolyK out(std::max(a.size(), b.size()), K.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = K.add(out[i], b[i]);
  trim(out);
  return out;
}

inline UniPolyK sub(const ExtensionField& K, const UniPolyK& a, const UniPolyK& b) {
  UniPolyK out(std::max(a.size(), b.size()), K.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = K.sub(out[i], b[i]);
  trim(out);
  return out;
}

inline UniPolyK mul(const ExtensionField& K, const UniPolyK& a, const UniPolyK& b) {
  if (a.empty() || b.empty()) return {};
  UniPolyK out(a.size() + b.size() - 1, K.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = K.add(out[i + j], K.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

// a = quot * d + rem with deg rem < deg d. Throws DivisionByZero for d = 0.
inline std::pair<UniPolyK, UniPolyK> divmod(const ExtensionField& K, UniPolyK a, const UniPolyK& d) {
  trim(a);
  if (d.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (degree(a) < degree(d)) return {UniPolyK{}, std::move(a)};
  const FieldElement lead_inv = K.inv(d.back());
  UniPolyK quot(a.size() - d.size() + 1, K.zero());
  while (degree(a) >= degree(d)) {
    const FieldElement factor = K.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - d.size();
    quot[shift] = factor;
    for (std::size_t i = 0; i < d.size(); ++i) a[shift + i] = K.sub(a[shift + i], K.mul(factor, d[i]));
    trim(a);
  }
  trim(quot);
  return {std::move(quot), std::move(a)};
}

inline UniPolyK mod(const ExtensionField& K, UniPolyK a, const UniPolyK& d) {
  return divmod(K, std::move(a), d).second;
}

inline UniPolyK monic(const ExtensionField& K, UniPolyK g) {
  trim(g);
  if (g.empty()) return g;
  const FieldElement lead_inv = K.inv(g.back());
  for (auto& c : g) c = K.mul(c, lead_inv);
  return g;
}

// Monic gcd; gcd(g, 0) = monic(g).
inline UniPolyK gcd(const ExtensionField& K, UniPolyK a, UniPolyK b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UniPolyK r = mod(K, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(K, std::move(a));
}

inline UniPolyK mulmod(const ExtensionField& K, const UniPolyK& a, const UniPolyK& b, const UniPolyK& m) {
  return mod(K, mul(K, a, b), m);
}

inline UniPolyK powmod(const ExtensionField& K, UniPolyK base, std::uint64_t e, const UniPolyK& m) {
  UniPolyK result = mod(K, UniPolyK{K.one()}, m);
  base = mod(K, std::move(base), m);
  while (e != 0) {
    if (e & 1U) result = mulmod(K, result, base, m);
    e >>= 1U;
    if (e != 0) base = mulmod(K, base, base, m);
  }
  return result;
}

// h^q mod m, using (sum h_i X^i)^q = sum h_i^q X^(iq) and the Frobenius table.
inline UniPolyK qpower_mod(const ExtensionField& K, const UniPolyK& h, const UniPolyK& m) {
  if (h.empty()) return {};
  const std::size_t q = K.q();
  UniPolyK spread((h.size() - 1) * q + 1, K.zero());
  for (std::size_t i = 0; i < h.size(); ++i) spread[i * q] = K.frobenius_apply(h[i], 1);
  return mod(K, std::move(spread), m);
}

// h^p mod m for p the characteristic.
inline UniPolyK char_power_mod(const ExtensionField& K, const UniPolyK& h, const UniPolyK& m) {
  if (h.empty()) return {};
  const std::size_t p = K.base().p();
  UniPolyK spread((h.size() - 1) * p + 1, K.zero());
  for (std::size_t i = 0; i < h.size(); ++i) spread[i * p] = K.char_power(h[i]);
  return mod(K, std::move(spread), m);
}

namespace detail {

// Splits a monic squarefree product of distinct linear factors into its roots.
inline void split_linear(const ExtensionField& K, const UniPolyK& h, Rng& rng, std::vector<FieldElement>& roots) {
  if (degree(h) <= 0) return;
  if (degree(h) == 1) {
    roots.push_back(K.neg(h[0]));
    return;
  }
  const BaseField& F = K.base();
  const unsigned ext_bits = F.r() * K.n();  // [K : F_p]
  for (;;) {
    const FieldElement delta = K.random(rng);
    UniPolyK test;
    if (F.p() == 2) {
      // Absolute trace Tr(delta X) = sum_{i < [K:F_2]} (delta X)^(2^i).
      UniPolyK w = mod(K, UniPolyK{K.zero(), delta}, h);
      test = w;
      for (unsigned i = 1; i < ext_bits; ++i) {
        w = char_power_mod(K, w, h);
        test = add(K, test, w);
      }
    } else {
      // (X + delta)^((q^n - 1)/2) = (prod_k (X + delta)^(q^k))^((q-1)/2).
      UniPolyK w = mod(K, UniPolyK{delta, K.one()}, h);
      UniPolyK norm = w;
      for (unsigned k = 1; k < K.n(); ++k) {
        w = qpower_mod(K, w, h);
        norm = mulmod(K, norm, w, h);
      }
      test = sub(K, powmod(K, norm, (F.q() - 1) / 2, h), UniPolyK{K.one()});
    }
    UniPolyK d = gcd(K, h, test);
    if (degree(d) > 0 && degree(d) < degree(h)) {
      split_linear(K, d, rng, roots);
      split_linear(K, divmod(K, h, d).first, rng, roots);
      return;
    }
  }
}

}  // namespace detail

// All roots of g in K, without multiplicity, sorted. Throws ZeroPolynomial.
inline std::vector<FieldElement> roots(const ExtensionField& K, const UniPolyK& g_in, Rng& rng) {
  UniPolyK g = monic(K, g_in);
  if (g.empty()) throw Error(ErrorCode::ZeroPolynomial, "root finding on the zero polynomial");
  std::vector<FieldElement> out;
  if (degree(g) == 0) return out;

  // X^(q^n) mod g by n applications of the coefficient-wise Frobenius.
  const UniPolyK x{K.zero(), K.one()};
  UniPolyK power = mod(K, x, g);
  for (unsigned k = 0; k < K.n(); ++k) power = qpower_mod(K, power, g);
  const UniPolyK linear_part = gcd(K, g, sub(K, power, x));

  detail::split_linear(K, linear_part, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace upoly
}  // namespace hpe

#endif  // HPE_UPOLY_HPP
