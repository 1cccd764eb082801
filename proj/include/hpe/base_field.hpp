#ifndef HPE_BASE_FIELD_HPP
#define HPE_BASE_FIELD_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hpe/error.hpp"

namespace hpe {

// An element of F_q. For q = p^r with r > 1 the value is the integer
// sum c_i p^i of the coordinates over the prime field.
using Fq = std::uint8_t;

// A vector over F_q.
using Vec = std::vector<Fq>;

inline constexpr unsigned kMaxBaseOrder = 256;

// The base field F_q, q = p^r <= 256, with full operation tables.
class BaseField {
 public:
  BaseField() = default;

  // Throws InvalidOrder unless q is a prime power in [2, 256].
  static BaseField make(unsigned q);

  unsigned p() const { return data_->p; }
  unsigned r() const { return data_->r; }
  unsigned q() const { return data_->q; }
  bool binary_characteristic() const { return data_->p == 2; }

  // Defining polynomial of F_q over F_p (low to high, monic); empty for r = 1.
  const std::vector<unsigned>& modulus() const { return data_->modulus; }

  Fq add(Fq a, Fq b) const { return data_->add[a * data_->q + b]; }
  Fq sub(Fq a, Fq b) const { return data_->sub[a * data_->q + b]; }
  Fq mul(Fq a, Fq b) const { return data_->mul[a * data_->q + b]; }
  Fq neg(Fq a) const { return data_->neg[a]; }
  Fq inv(Fq a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 in F_q");
    return data_->inv[a];
  }
  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
  Fq pow(Fq a, std::uint64_t e) const {
    Fq result = 1;
    while (e != 0) {
      if (e & 1U) result = mul(result, a);
      a = mul(a, a);
      e >>= 1U;
    }
    return result;
  }

  // Row of the multiplication table for a fixed left factor.
  const Fq* mul_row(Fq a) const { return &data_->mul[a * data_->q]; }

  bool operator==(const BaseField& other) const {
    return data_ == other.data_ || (data_ && other.data_ && q() == other.q());
  }

 private:
  struct Tables {
    unsigned p = 0, r = 0, q = 0;
    std::vector<unsigned> modulus;
    std::vector<Fq> add, sub, mul, neg, inv;
  };
  std::shared_ptr<const Tables> data_;

  static BaseField make_prime(unsigned p);
};

namespace detail {

// Dense polynomials over F_q, coefficients low to high, trimmed so the last
// coefficient is nonzero (the zero polynomial is empty).
inline void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Vec& a) { return static_cast<int>(a.size()) - 1; }

inline Vec poly_sub(const BaseField& f, const Vec& a, const Vec& b) {
  Vec out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = f.sub(out[i], b[i]);
  trim(out);
  return out;
}

inline Vec poly_mul(const BaseField& f, const Vec& a, const Vec& b) {
  if (a.empty() || b.empty()) return {};
  Vec out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    const Fq* row = f.mul_row(a[i]);
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], row[b[j]]);
  }
  trim(out);
  return out;
}

// Remainder of a modulo m; m nonzero.
inline Vec poly_mod(const BaseField& f, Vec a, const Vec& m) {
  trim(a);
  const int dm = degree(m);
  if (dm < 0) throw Error(ErrorCode::DivisionByZero, "polynomial modulus is zero");
  const Fq lead_inv = f.inv(m.back());
  while (degree(a) >= dm) {
    const Fq factor = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = f.sub(a[shift + i], f.mul(factor, m[i]));
    }
    trim(a);
  }
  return a;
}

inline Vec poly_monic(const BaseField& f, Vec a) {
  trim(a);
  if (a.empty()) return a;
  const Fq lead_inv = f.inv(a.back());
  for (Fq& c : a) c = f.mul(c, lead_inv);
  return a;
}

inline Vec poly_gcd(const BaseField& f, Vec a, Vec b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Vec rem = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(rem);
  }
  return poly_monic(f, std::move(a));
}

inline Vec poly_mulmod(const BaseField& f, const Vec& a, const Vec& b, const Vec& m) {
  return poly_mod(f, poly_mul(f, a, b), m);
}

inline Vec poly_powmod(const BaseField& f, Vec base, std::uint64_t e, const Vec& m) {
  Vec result = poly_mod(f, Vec{1}, m);
  base = poly_mod(f, std::move(base), m);
  while (e != 0) {
    if (e & 1U) result = poly_mulmod(f, result, base, m);
    base = poly_mulmod(f, base, base, m);
    e >>= 1U;
  }
  return result;
}

// Distinct-degree test: a monic m of degree n is irreducible over F_q iff
// gcd(m, z^(q^i) - z) = 1 for every 1 <= i <= n/2.
inline bool is_irreducible(const BaseField& f, const Vec& m) {
  const int n = degree(m);
  if (n < 1) return false;
  if (n == 1) return true;
  const Vec z{0, 1};
  Vec power = poly_mod(f, z, m);
  for (int i = 1; i <= n / 2; ++i) {
    power = poly_powmod(f, power, f.q(), m);
    const Vec g = poly_gcd(f, m, poly_sub(f, power, z));
    if (degree(g) > 0) return false;
  }
  return true;
}

// Least monic irreducible of degree n, ordering candidates by the base-q
// integer whose least significant digit is the constant coefficient.
inline Vec least_irreducible(const BaseField& f, unsigned n) {
  Vec candidate(n + 1, 0);
  candidate[n] = 1;
  for (;;) {
    if (candidate[0] != 0 && is_irreducible(f, candidate)) return candidate;
    unsigned i = 0;
    while (i < n) {
      if (candidate[i] + 1U < f.q()) {
        ++candidate[i];
        break;
      }
      candidate[i] = 0;
      ++i;
    }
    if (i == n) throw Error(ErrorCode::NotIrreducible, "no irreducible polynomial found");
  }
}

inline bool prime_power(unsigned q, unsigned& p, unsigned& r) {
  if (q < 2) return false;
  p = 0;
  for (unsigned d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;
  r = 0;
  unsigned rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++r;
  }
  return rest == 1;
}

}  // namespace detail

inline BaseField BaseField::make_prime(unsigned p) {
  auto t = std::make_shared<Tables>();
  t->p = p;
  t->r = 1;
  t->q = p;
  t->add.resize(p * p);
  t->sub.resize(p * p);
  t->mul.resize(p * p);
  t->neg.resize(p);
  t->inv.resize(p, 0);
  for (unsigned a = 0; a < p; ++a) {
    t->neg[a] = static_cast<Fq>((p - a) % p);
    for (unsigned b = 0; b < p; ++b) {
      t->add[a * p + b] = static_cast<Fq>((a + b) % p);
      t->sub[a * p + b] = static_cast<Fq>((a + p - b) % p);
      t->mul[a * p + b] = static_cast<Fq>((a * b) % p);
      if ((a * b) % p == 1) t->inv[a] = static_cast<Fq>(b);
    }
  }
  BaseField field;
  field.data_ = std::move(t);
  return field;
}

inline BaseField BaseField::make(unsigned q) {
  unsigned p = 0, r = 0;
  if (q > kMaxBaseOrder || !detail::prime_power(q, p, r)) {
    throw Error(ErrorCode::InvalidOrder,
                "q = " + std::to_string(q) + " is not a prime power in [2, 256]");
  }
  BaseField prime = make_prime(p);
  if (r == 1) return prime;

  const Vec modulus = detail::least_irreducible(prime, r);
  auto t = std::make_shared<Tables>();
  t->p = p;
  t->r = r;
  t->q = q;
  t->modulus.assign(modulus.begin(), modulus.end());

  auto to_poly = [&](unsigned value) {
    Vec coeffs(r, 0);
    for (unsigned i = 0; i < r; ++i) {
      coeffs[i] = static_cast<Fq>(value % p);
      value /= p;
    }
    detail::trim(coeffs);
    return coeffs;
  };
  auto from_poly = [&](const Vec& coeffs) {
    unsigned value = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) value = value * p + coeffs[i];
    return static_cast<Fq>(value);
  };

  t->add.resize(q * q);
  t->sub.resize(q * q);
  t->mul.resize(q * q);
  t->neg.resize(q);
  t->inv.resize(q, 0);
  std::vector<Vec> polys(q);
  for (unsigned a = 0; a < q; ++a) polys[a] = to_poly(a);
  for (unsigned a = 0; a < q; ++a) {
    for (unsigned b = 0; b < q; ++b) {
      unsigned sum = 0, diff = 0, scale = 1;
      unsigned x = a, y = b;
      for (unsigned i = 0; i < r; ++i) {
        sum += ((x % p + y % p) % p) * scale;
        diff += ((x % p + p - y % p) % p) * scale;
        x /= p;
        y /= p;
        scale *= p;
      }
      t->add[a * q + b] = static_cast<Fq>(sum);
      t->sub[a * q + b] = static_cast<Fq>(diff);
      const Fq prod = from_poly(detail::poly_mod(prime, detail::poly_mul(prime, polys[a], polys[b]), modulus));
      t->mul[a * q + b] = prod;
      if (prod == 1) t->inv[a] = static_cast<Fq>(b);
    }
    t->neg[a] = t->sub[0 * q + a];
  }
  BaseField field;
  field.data_ = std::move(t);
  return field;
}

}  // namespace hpe

#endif  // HPE_BASE_FIELD_HPP
