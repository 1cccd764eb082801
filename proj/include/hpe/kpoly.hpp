#ifndef HPE_KPOLY_HPP
#define HPE_KPOLY_HPP

#include <map>
#include <span>
#include <vector>

#include "hpe/extension_field.hpp"
#include "hpe/linalg.hpp"
#include "hpe/multipoly.hpp"

namespace hpe {

// Polynomial in F_q-valued variables with coefficients in K. Projecting each
// coefficient onto the basis gives n polynomials over F_q: this is how a
// relation in K becomes n coordinate equations.
class KPoly {
 public:
  using Terms = std::map<Monomial, FieldElement>;

  KPoly() = default;
  explicit KPoly(std::size_t nvars) : nvars_(nvars) {}

  static KPoly constant(std::size_t nvars, const FieldElement& c) {
    KPoly p(nvars);
    if (!c.is_zero()) p.terms_.emplace(Monomial(nvars, 0), c);
    return p;
  }

  // (M z + c)^(q^k) where z is the variable block and M z + c is read as an
  // element of K. Frobenius is F_q-linear and z_j^q = z_j on F_q, so the
  // result stays affine: coefficient of z_j is (column j of M)^(q^k).
  static KPoly frobenius_of_affine(const ExtensionField& K, std::size_t nvars, VarBlock block, const Matrix& M,
                                   std::span<const Fq> c, unsigned k) {
    KPoly p(nvars);
    const FieldElement shift = K.frobenius_apply(FieldElement(Vec(c.begin(), c.end())), k);
    if (!shift.is_zero()) p.terms_.emplace(Monomial(nvars, 0), shift);
    for (std::size_t j = 0; j < block.size; ++j) {
      Vec column(K.n());
      for (std::size_t i = 0; i < K.n(); ++i) column[i] = M(i, j);
      FieldElement coeff = K.frobenius_apply(FieldElement(std::move(column)), k);
      if (coeff.is_zero()) continue;
      Monomial m(nvars, 0);
      m[block.offset + j] = 1;
      p.terms_.emplace(std::move(m), std::move(coeff));
    }
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }

  void add_term(const ExtensionField& K, const Monomial& m, const FieldElement& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second = K.add(it->second, c);
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

inline KPoly scale(const ExtensionField& K, const FieldElement& s, const KPoly& a) {
  KPoly out(a.nvars());
  for (const auto& [m, c] : a.terms()) out.add_term(K, m, K.mul(s, c));
  return out;
}

inline void accumulate(const ExtensionField& K, KPoly& acc, const KPoly& a) {
  for (const auto& [m, c] : a.terms()) acc.add_term(K, m, c);
}

// Product in K[z]; coefficients multiply through the multiplication tensor.
// With reduce = true exponents are folded by z^q = z after every product.
inline KPoly multiply(const ExtensionField& K, const KPoly& a, const KPoly& b, bool reduce) {
  if (a.nvars() != b.nvars()) throw Error(ErrorCode::VariableMismatch, "K-polynomials differ in variable count");
  const BaseField& f = K.base();
  const std::size_t n = K.n();

  // Multiplication-by-c matrices for the right operand: row i = beta_i * c.
  std::vector<std::pair<const Monomial*, Matrix>> right;
  right.reserve(b.terms().size());
  for (const auto& [m, c] : b.terms()) {
    Matrix mult(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const FieldElement prod = K.mul(K.basis(i), c);
      for (std::size_t k = 0; k < n; ++k) mult(i, k) = prod[k];
    }
    right.emplace_back(&m, std::move(mult));
  }

  KPoly out(a.nvars());
  Monomial m(a.nvars());
  Vec prod(n);
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, mult] : right) {
      std::fill(prod.begin(), prod.end(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (ca[i] == 0) continue;
        const Fq* scale_row = f.mul_row(ca[i]);
        auto row = mult.row(i);
        for (std::size_t k = 0; k < n; ++k) prod[k] = f.add(prod[k], scale_row[row[k]]);
      }
      for (std::size_t v = 0; v < m.size(); ++v) m[v] = ma[v] + (*mb)[v];
      if (reduce) reduce_exponents(m, f.q());
      out.add_term(K, m, FieldElement(prod));
    }
  }
  return out;
}

// The n coordinate polynomials over F_q.
inline std::vector<MultiPoly> coordinates(const ExtensionField& K, const KPoly& a) {
  const BaseField& f = K.base();
  std::vector<MultiPoly> out(K.n(), MultiPoly(a.nvars()));
  for (const auto& [m, c] : a.terms())
    for (std::size_t k = 0; k < K.n(); ++k) out[k].add_term(f, m, c[k]);
  return out;
}

}  // namespace hpe

#endif  // HPE_KPOLY_HPP
