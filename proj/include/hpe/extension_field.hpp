#ifndef HPE_EXTENSION_FIELD_HPP
#define HPE_EXTENSION_FIELD_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hpe/base_field.hpp"
#include "hpe/error.hpp"
#include "hpe/linalg.hpp"
#include "hpe/rng.hpp"

namespace hpe {

// An element of K, held as its coordinate vector over F_q in the basis
// beta_i = z^(i-1). With a polynomial basis the coordinate vector and the
// residue polynomial coincide, so vector <-> element conversion is the identity.
class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(Vec coords) : coords_(std::move(coords)) {}

  const Vec& coords() const { return coords_; }
  Vec& coords() { return coords_; }
  std::size_t size() const { return coords_.size(); }
  Fq operator[](std::size_t i) const { return coords_[i]; }
  Fq& operator[](std::size_t i) { return coords_[i]; }

  bool is_zero() const {
    for (Fq c : coords_)
      if (c != 0) return false;
    return true;
  }

  auto operator<=>(const FieldElement&) const = default;
  bool operator==(const FieldElement&) const = default;

 private:
  Vec coords_;
};

// K = F_q[z]/(modulus) of degree n over F_q, together with the Frobenius
// matrices P^(k) (row i = coordinates of beta_i^(q^k)) and the multiplication
// tensor m_ijk (beta_i beta_j = sum_k m_ijk beta_k). Immutable and cheap to
// copy; copies share the tables.
class ExtensionField {
 public:
  ExtensionField() = default;

  // Throws InvalidOrder, InvalidDegree (n < 2 or bad modulus length) or
  // NotIrreducible. Without a modulus the least irreducible one is chosen.
  static ExtensionField build(unsigned q, unsigned n, std::optional<Vec> modulus = std::nullopt) {
    BaseField base = BaseField::make(q);
    if (n < 2) throw Error(ErrorCode::InvalidDegree, "extension degree must be >= 2, got " + std::to_string(n));
    Vec m;
    if (modulus) {
      m = *modulus;
      if (m.size() != n + 1 || m.back() != 1) {
        throw Error(ErrorCode::InvalidDegree, "modulus must be monic of degree " + std::to_string(n));
      }
      for (Fq c : m)
        if (c >= q) throw Error(ErrorCode::InvalidParams, "modulus coefficient out of range");
      if (!detail::is_irreducible(base, m)) throw Error(ErrorCode::NotIrreducible, "supplied modulus is reducible");
    } else {
      m = detail::least_irreducible(base, n);
    }
    return ExtensionField(std::move(base), n, std::move(m));
  }

  const BaseField& base() const { return d_->base; }
  unsigned n() const { return d_->n; }
  unsigned q() const { return d_->base.q(); }
  const Vec& modulus() const { return d_->modulus; }

  // q^n when it fits in 64 bits.
  std::optional<std::uint64_t> order() const { return d_->order; }

  const Matrix& frobenius(unsigned k) const { return d_->frobenius.at(k); }
  Fq tensor(std::size_t i, std::size_t j, std::size_t k) const {
    return d_->tensor[(i * d_->n + j) * d_->n + k];
  }

  FieldElement zero() const { return FieldElement(Vec(n(), 0)); }
  FieldElement one() const { return basis(0); }
  FieldElement basis(std::size_t i) const {
    Vec v(n(), 0);
    v.at(i) = 1;
    return FieldElement(std::move(v));
  }
  FieldElement scalar(Fq c) const {
    Vec v(n(), 0);
    v[0] = c;
    return FieldElement(std::move(v));
  }

  FieldElement add(const FieldElement& a, const FieldElement& b) const {
    return FieldElement(hpe::add(base(), a.coords(), b.coords()));
  }
  FieldElement sub(const FieldElement& a, const FieldElement& b) const {
    return FieldElement(hpe::sub(base(), a.coords(), b.coords()));
  }
  FieldElement neg(const FieldElement& a) const {
    Vec v(a.coords());
    for (Fq& c : v) c = base().neg(c);
    return FieldElement(std::move(v));
  }
  FieldElement scale(Fq s, const FieldElement& a) const {
    const Fq* row = base().mul_row(s);
    Vec v(a.coords());
    for (Fq& c : v) c = row[c];
    return FieldElement(std::move(v));
  }

  // coords_k = sum_{i,j} a_i b_j m_ijk. For the polynomial basis m_ijk depends
  // only on i + j (it is row i+j of the reduction table), so the sum is
  // evaluated by first collecting a_i b_j by i + j.
  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    const BaseField& f = base();
    const std::size_t dim = n();
    Vec conv(2 * dim - 1, 0);
    for (std::size_t i = 0; i < dim; ++i) {
      if (a[i] == 0) continue;
      const Fq* row = f.mul_row(a[i]);
      for (std::size_t j = 0; j < dim; ++j) conv[i + j] = f.add(conv[i + j], row[b[j]]);
    }
    Vec out(conv.begin(), conv.begin() + static_cast<std::ptrdiff_t>(dim));
    for (std::size_t s = dim; s < conv.size(); ++s) {
      if (conv[s] == 0) continue;
      const Fq* row = f.mul_row(conv[s]);
      auto red = d_->reduction.row(s);
      for (std::size_t k = 0; k < dim; ++k) out[k] = f.add(out[k], row[red[k]]);
    }
    return FieldElement(std::move(out));
  }

  // The literal triple sum over the stored tensor.
  FieldElement mul_tensor(const FieldElement& a, const FieldElement& b) const {
    const BaseField& f = base();
    const std::size_t dim = n();
    Vec out(dim, 0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        const Fq ab = f.mul(a[i], b[j]);
        if (ab == 0) continue;
        for (std::size_t k = 0; k < dim; ++k) out[k] = f.add(out[k], f.mul(ab, tensor(i, j, k)));
      }
    return FieldElement(std::move(out));
  }

  FieldElement pow(FieldElement a, std::uint64_t e) const {
    FieldElement result = one();
    while (e != 0) {
      if (e & 1U) result = mul(result, a);
      e >>= 1U;
      if (e != 0) a = mul(a, a);
    }
    return result;
  }

  // Extended Euclid on residue polynomials. Throws DivisionByZero for 0.
  FieldElement inv(const FieldElement& a) const {
    if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of 0 in K");
    const BaseField& f = base();
    Vec r0 = modulus(), r1 = a.coords();
    detail::trim(r1);
    Vec s0, s1{1};
    while (detail::degree(r1) > 0) {
      // r0 = quot * r1 + rem
      Vec rem = r0, quot(r0.size(), 0);
      const Fq lead_inv = f.inv(r1.back());
      while (detail::degree(rem) >= detail::degree(r1)) {
        const Fq factor = f.mul(rem.back(), lead_inv);
        const std::size_t shift = rem.size() - r1.size();
        quot[shift] = factor;
        for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] = f.sub(rem[shift + i], f.mul(factor, r1[i]));
        detail::trim(rem);
      }
      detail::trim(quot);
      Vec s2 = detail::poly_sub(f, s0, detail::poly_mul(f, quot, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    const Fq c = f.inv(r1.at(0));
    Vec out(n(), 0);
    for (std::size_t i = 0; i < s1.size(); ++i) out[i] = f.mul(s1[i], c);
    return FieldElement(std::move(out));
  }

  // a^(q^k) as the coordinate row of a times P^(k); 0 <= k < n.
  FieldElement frobenius_apply(const FieldElement& a, unsigned k) const {
    if (k >= n()) throw Error(ErrorCode::InvalidParams, "Frobenius index out of range");
    return FieldElement(multiply(base(), a.coords(), frobenius(k)));
  }

  // a^p for p the characteristic.
  FieldElement char_power(const FieldElement& a) const {
    if (base().r() == 1) return frobenius_apply(a, 1);
    return pow(a, base().p());
  }

  FieldElement random(Rng& rng) const { return FieldElement(random_vector(base(), n(), rng)); }
  FieldElement random_nonzero(Rng& rng) const {
    for (;;) {
      FieldElement a = random(rng);
      if (!a.is_zero()) return a;
    }
  }

  // Enumeration order: coordinates as base-q digits, coordinate 0 least significant.
  FieldElement element(std::uint64_t index) const {
    Vec v(n(), 0);
    for (unsigned i = 0; i < n(); ++i) {
      v[i] = static_cast<Fq>(index % q());
      index /= q();
    }
    return FieldElement(std::move(v));
  }
  std::uint64_t index(const FieldElement& a) const {
    std::uint64_t idx = 0;
    for (std::size_t i = n(); i-- > 0;) idx = idx * q() + a[i];
    return idx;
  }

  // "F <p> <r> <n> <modulus coefficients low to high>"
  std::string descriptor() const {
    std::ostringstream out;
    out << "F " << base().p() << ' ' << base().r() << ' ' << n();
    for (Fq c : modulus()) out << ' ' << static_cast<unsigned>(c);
    return out.str();
  }

  bool operator==(const ExtensionField& other) const {
    return q() == other.q() && n() == other.n() && modulus() == other.modulus();
  }

 private:
  struct Data {
    BaseField base;
    unsigned n = 0;
    Vec modulus;
    std::optional<std::uint64_t> order;
    Matrix reduction;  // row s = coordinates of z^s, 0 <= s <= 2n-2
    std::vector<Matrix> frobenius;
    Vec tensor;
  };
  std::shared_ptr<const Data> d_;

  ExtensionField(BaseField base, unsigned n, Vec modulus) {
    auto d = std::make_shared<Data>();
    d->base = std::move(base);
    d->n = n;
    d->modulus = std::move(modulus);
    const BaseField& f = d->base;

    unsigned __int128 order = 1;
    for (unsigned i = 0; i < n && order <= ~std::uint64_t{0}; ++i) order *= f.q();
    if (order <= ~std::uint64_t{0}) d->order = static_cast<std::uint64_t>(order);

    // z^s mod modulus, built by repeated multiplication by z.
    d->reduction = Matrix(2 * n - 1, n);
    Vec cur(n, 0);
    cur[0] = 1;
    for (std::size_t s = 0; s < 2 * n - 1; ++s) {
      for (unsigned k = 0; k < n; ++k) d->reduction(s, k) = cur[k];
      const Fq top = cur[n - 1];
      for (unsigned k = n - 1; k > 0; --k) cur[k] = cur[k - 1];
      cur[0] = 0;
      if (top != 0)
        for (unsigned k = 0; k < n; ++k) cur[k] = f.sub(cur[k], f.mul(top, d->modulus[k]));
    }

    d->tensor.assign(static_cast<std::size_t>(n) * n * n, 0);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        for (unsigned k = 0; k < n; ++k) d->tensor[(i * n + j) * n + k] = d->reduction(i + j, k);

    d_ = d;

    // P^(1): row i = beta_i^q, then P^(k) = P^(k-1) P^(1).
    Matrix p1(n, n);
    for (unsigned i = 0; i < n; ++i) {
      const FieldElement b = pow(basis(i), f.q());
      for (unsigned j = 0; j < n; ++j) p1(i, j) = b[j];
    }
    d->frobenius.reserve(n);
    d->frobenius.push_back(Matrix::identity(n));
    for (unsigned k = 1; k < n; ++k) d->frobenius.push_back(multiply(f, d->frobenius.back(), p1));
  }
};

}  // namespace hpe

#endif  // HPE_EXTENSION_FIELD_HPP
