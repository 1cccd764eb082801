#ifndef HPE_MULTIPOLY_HPP
#define HPE_MULTIPOLY_HPP

#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "hpe/base_field.hpp"
#include "hpe/error.hpp"
#include "hpe/linalg.hpp"

namespace hpe {

// Exponent vector, one entry per variable.
using Monomial = std::vector<std::uint32_t>;

inline unsigned monomial_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0U);
}

// x^q = x on F_q: every positive exponent e becomes 1 + (e - 1) mod (q - 1).
inline void reduce_exponents(Monomial& m, unsigned q) {
  for (auto& e : m)
    if (e > 0) e = 1 + (e - 1) % (q - 1);
}

// A contiguous range of variables, e.g. the x block [0, n) or the y block [n, 2n).
struct VarBlock {
  std::size_t offset = 0;
  std::size_t size = 0;
};

// Sparse polynomial over F_q. No zero coefficients are stored.
class MultiPoly {
 public:
  using Terms = std::map<Monomial, Fq>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, Fq c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_.emplace(Monomial(nvars, 0), c);
    return p;
  }

  static MultiPoly variable(std::size_t nvars, std::size_t index) {
    MultiPoly p(nvars);
    Monomial m(nvars, 0);
    m.at(index) = 1;
    p.terms_.emplace(std::move(m), 1);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Fq coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Fq{0} : it->second;
  }

  void add_term(const BaseField& f, const Monomial& m, Fq c) {
    if (m.size() != nvars_) throw Error(ErrorCode::VariableMismatch, "monomial length differs from nvars");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second = f.add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
  }

  // Largest per-term degree restricted to the variables of `block`.
  unsigned block_degree(VarBlock block) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
      unsigned sum = 0;
      for (std::size_t i = 0; i < block.size; ++i) sum += m[block.offset + i];
      d = std::max(d, sum);
    }
    return d;
  }

  Fq eval(const BaseField& f, std::span<const Fq> point) const {
    if (point.size() != nvars_) throw Error(ErrorCode::VariableMismatch, "evaluation point has wrong length");
    Fq acc = 0;
    for (const auto& [m, c] : terms_) {
      Fq value = c;
      for (std::size_t i = 0; i < nvars_ && value != 0; ++i)
        if (m[i] != 0) value = f.mul(value, f.pow(point[i], m[i]));
      acc = f.add(acc, value);
    }
    return acc;
  }

  bool operator==(const MultiPoly&) const = default;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

namespace detail {
inline void check_vars(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars() != b.nvars()) throw Error(ErrorCode::VariableMismatch, "polynomials have different variable counts");
}
}  // namespace detail

inline MultiPoly add(const BaseField& f, const MultiPoly& a, const MultiPoly& b) {
  detail::check_vars(a, b);
  MultiPoly out = a;
  for (const auto& [m, c] : b.terms()) out.add_term(f, m, c);
  return out;
}

inline MultiPoly scale(const BaseField& f, Fq s, const MultiPoly& a) {
  MultiPoly out(a.nvars());
  if (s == 0) return out;
  for (const auto& [m, c] : a.terms()) out.add_term(f, m, f.mul(s, c));
  return out;
}

inline MultiPoly sub(const BaseField& f, const MultiPoly& a, const MultiPoly& b) {
  return add(f, a, scale(f, f.neg(1), b));
}

inline MultiPoly mul(const BaseField& f, const MultiPoly& a, const MultiPoly& b) {
  detail::check_vars(a, b);
  MultiPoly out(a.nvars());
  Monomial m(a.nvars());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(f, m, f.mul(ca, cb));
    }
  }
  return out;
}

// Reduces every exponent with x^q -> x; the result agrees with the input as
// a function on F_q^nvars.
inline MultiPoly normalize_exponents(const BaseField& f, const MultiPoly& a) {
  MultiPoly out(a.nvars());
  for (const auto& [m, c] : a.terms()) {
    Monomial r = m;
    reduce_exponents(r, f.q());
    out.add_term(f, r, c);
  }
  return out;
}

// Replaces each variable u_i of `block` by sum_j M_ij u_j + c_i (block
// variables on the right as well) and expands. Throws SingularMatrix when M
// is not invertible.
inline MultiPoly substitute_affine(const BaseField& f, const MultiPoly& poly, const Matrix& M,
                                   std::span<const Fq> c, VarBlock block) {
  if (M.rows() != block.size || M.cols() != block.size || c.size() != block.size ||
      block.offset + block.size > poly.nvars()) {
    throw Error(ErrorCode::VariableMismatch, "affine map does not match the variable block");
  }
  if (rank(f, M) != block.size) throw Error(ErrorCode::SingularMatrix, "substitution matrix is singular");

  const std::size_t nv = poly.nvars();
  std::vector<MultiPoly> forms;
  forms.reserve(block.size);
  for (std::size_t i = 0; i < block.size; ++i) {
    MultiPoly form = MultiPoly::constant(nv, c[i]);
    for (std::size_t j = 0; j < block.size; ++j) {
      if (M(i, j) == 0) continue;
      Monomial m(nv, 0);
      m[block.offset + j] = 1;
      form.add_term(f, m, M(i, j));
    }
    forms.push_back(std::move(form));
  }
  // powers[i][e] = forms[i]^e, grown on demand.
  std::vector<std::vector<MultiPoly>> powers(block.size);
  auto power = [&](std::size_t i, std::uint32_t e) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly::constant(nv, 1));
    while (cache.size() <= e) cache.push_back(mul(f, cache.back(), forms[i]));
    return cache[e];
  };

  MultiPoly out(nv);
  for (const auto& [m, coeff] : poly.terms()) {
    Monomial outside = m;
    for (std::size_t i = 0; i < block.size; ++i) outside[block.offset + i] = 0;
    MultiPoly term(nv);
    term.add_term(f, outside, coeff);
    for (std::size_t i = 0; i < block.size; ++i) {
      const std::uint32_t e = m[block.offset + i];
      if (e != 0) term = mul(f, term, power(i, e));
    }
    for (const auto& [tm, tc] : term.terms()) out.add_term(f, tm, tc);
  }
  return out;
}

}  // namespace hpe

#endif  // HPE_MULTIPOLY_HPP
