#ifndef HPE_KEYS_HPP
#define HPE_KEYS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hpe/alphabet.hpp"
#include "hpe/base_field.hpp"
#include "hpe/error.hpp"
#include "hpe/extension_field.hpp"
#include "hpe/linalg.hpp"
#include "hpe/multipoly.hpp"
#include "hpe/upoly.hpp"

namespace hpe {

// i = sum_k q^theta_k.
inline std::uint64_t exponent_of(std::span<const unsigned> thetas, unsigned q) {
  std::uint64_t i = 0;
  for (unsigned theta : thetas) {
    std::uint64_t term = 1;
    for (unsigned k = 0; k < theta; ++k) term *= q;
    i += term;
  }
  return i;
}

// a * X^i * Y^(q^y_theta), i given by its decomposition.
struct MixedTerm {
  FieldElement coeff;
  std::vector<unsigned> x_thetas;
  unsigned y_theta = 0;
  bool operator==(const MixedTerm&) const = default;
};

// b * X^i.
struct PureTerm {
  FieldElement coeff;
  std::vector<unsigned> x_thetas;
  bool operator==(const PureTerm&) const = default;
};

// The hidden relation f(X, Y) = sum mixed + sum pure + constant over K.
struct PrivatePolynomial {
  std::vector<MixedTerm> mixed;
  std::vector<PureTerm> pure;
  FieldElement constant;

  // max(n_i + n_j) over the nonzero terms.
  unsigned degree_bound() const {
    std::size_t t = 0;
    for (const auto& m : mixed) t = std::max(t, m.x_thetas.size() + 1);
    for (const auto& p : pure) t = std::max(t, p.x_thetas.size());
    return static_cast<unsigned>(t);
  }

  std::uint64_t degree_in_x(unsigned q) const {
    std::uint64_t d = 0;
    for (const auto& m : mixed) d = std::max(d, exponent_of(m.x_thetas, q));
    for (const auto& p : pure) d = std::max(d, exponent_of(p.x_thetas, q));
    return d;
  }

  // f(u, v) in K, term by term through Frobenius powers.
  FieldElement evaluate(const ExtensionField& K, const FieldElement& u, const FieldElement& v) const {
    auto x_part = [&](const std::vector<unsigned>& thetas) {
      FieldElement acc = K.one();
      for (unsigned theta : thetas) acc = K.mul(acc, K.frobenius_apply(u, theta));
      return acc;
    };
    FieldElement sum = constant;
    for (const auto& m : mixed)
      sum = K.add(sum, K.mul(m.coeff, K.mul(x_part(m.x_thetas), K.frobenius_apply(v, m.y_theta))));
    for (const auto& p : pure) sum = K.add(sum, K.mul(p.coeff, x_part(p.x_thetas)));
    return sum;
  }

  // g(X) = f(X, v), degree at most degree_in_x.
  UniPolyK univariate_in_x(const ExtensionField& K, const FieldElement& v) const {
    UniPolyK g(degree_in_x(K.q()) + 1, K.zero());
    g[0] = constant;
    for (const auto& m : mixed) {
      const auto i = exponent_of(m.x_thetas, K.q());
      g[i] = K.add(g[i], K.mul(m.coeff, K.frobenius_apply(v, m.y_theta)));
    }
    for (const auto& p : pure) {
      const auto i = exponent_of(p.x_thetas, K.q());
      g[i] = K.add(g[i], p.coeff);
    }
    upoly::trim(g);
    return g;
  }

  bool operator==(const PrivatePolynomial&) const = default;
};

// u = A x + c, v = B y + d.
struct AffinePair {
  Matrix A, A_inv, B, B_inv;
  Vec c, d;

  static AffinePair make(const BaseField& f, Matrix A, Vec c, Matrix B, Vec d) {
    AffinePair p;
    p.A_inv = invert(f, A);
    p.B_inv = invert(f, B);
    p.A = std::move(A);
    p.B = std::move(B);
    p.c = std::move(c);
    p.d = std::move(d);
    return p;
  }

  static AffinePair random(const BaseField& f, std::size_t n, Rng& rng) {
    Matrix A = random_invertible(f, n, rng);
    Vec c = random_vector(f, n, rng);
    Matrix B = random_invertible(f, n, rng);
    Vec d = random_vector(f, n, rng);
    return make(f, std::move(A), std::move(c), std::move(B), std::move(d));
  }

  Vec u_of(const BaseField& f, std::span<const Fq> x) const { return add(f, multiply(f, A, x), c); }
  Vec v_of(const BaseField& f, std::span<const Fq> y) const { return add(f, multiply(f, B, y), d); }
  Vec x_of(const BaseField& f, std::span<const Fq> u) const { return multiply(f, A_inv, sub(f, u, c)); }
  Vec y_of(const BaseField& f, std::span<const Fq> v) const { return multiply(f, B_inv, sub(f, v, d)); }

  bool operator==(const AffinePair& o) const { return A == o.A && B == o.B && c == o.c && d == o.d; }
};

// Per-equation structural findings.
struct ShapeReport {
  std::size_t y_nonlinear = 0;  // equations with a term of y-degree >= 2
  std::size_t y_free = 0;       // equations with no y term
  std::size_t x_linear = 0;     // equations without a term of x-degree >= 2
  std::size_t over_degree = 0;  // equations of total degree > t + 1
  bool ok() const { return y_nonlinear == 0 && y_free == 0 && x_linear == 0 && over_degree == 0; }
};

// n polynomials over F_q in x_1..x_n, y_1..y_n, each of degree <= 1 in y.
// Evaluation goes through a compiled form: the distinct x-monomials are
// evaluated once, then every equation is a sparse combination of them per
// y-slot (slot n is the y-free part).
class PublicKey {
 public:
  PublicKey() = default;

  // Throws InvalidParams when the equations do not have the expected shape.
  PublicKey(unsigned q, unsigned n, unsigned t, std::vector<MultiPoly> equations, Alphabet alphabet)
      : field_(BaseField::make(q)), n_(n), t_(t), equations_(std::move(equations)), alphabet_(std::move(alphabet)) {
    if (equations_.size() != n_) throw Error(ErrorCode::InvalidParams, "public key needs n equations");
    if (alphabet_.q() != q) throw Error(ErrorCode::InvalidParams, "alphabet is over a different field");
    alphabet_.letters_per_message(n_);
    compile();
  }

  unsigned q() const { return field_.q(); }
  unsigned n() const { return n_; }
  unsigned t() const { return t_; }
  const BaseField& field() const { return field_; }
  const std::vector<MultiPoly>& equations() const { return equations_; }
  const Alphabet& alphabet() const { return alphabet_; }

  std::size_t term_count() const {
    std::size_t total = 0;
    for (const auto& e : equations_) total += e.term_count();
    return total;
  }

  // The linear system in y obtained by fixing x: M y = rhs.
  LinearSystem system_at(std::span<const Fq> x) const {
    const Vec mono = monomial_values(x);
    LinearSystem sys{Matrix(n_, n_), Vec(n_, 0)};
    for (std::size_t k = 0; k < n_; ++k) {
      for (std::size_t j = 0; j < n_; ++j) sys.matrix(k, j) = combine(slot(k, j), mono);
      sys.rhs[k] = field_.neg(combine(slot(k, n_), mono));
    }
    return sys;
  }

  Vec evaluate(std::span<const Fq> x, std::span<const Fq> y) const {
    check_lengths(x, y);
    const Vec mono = monomial_values(x);
    Vec out(n_, 0);
    for (std::size_t k = 0; k < n_; ++k) {
      Fq acc = combine(slot(k, n_), mono);
      for (std::size_t j = 0; j < n_; ++j)
        if (y[j] != 0) acc = field_.add(acc, field_.mul(y[j], combine(slot(k, j), mono)));
      out[k] = acc;
    }
    return out;
  }

  bool satisfied(std::span<const Fq> x, std::span<const Fq> y) const {
    const Vec v = evaluate(x, y);
    return std::all_of(v.begin(), v.end(), [](Fq c) { return c == 0; });
  }

  // The equations with y fixed, as polynomials in x over the monomial table.
  class FixedY {
   public:
    // True when every equation vanishes at x.
    bool vanishes(std::span<const Fq> x) const {
      const Vec mono = key_->monomial_values(x);
      for (const auto& eq : eqs_)
        if (key_->combine(eq, mono) != 0) return false;
      return true;
    }

   private:
    friend class PublicKey;
    const PublicKey* key_ = nullptr;
    std::vector<std::vector<std::pair<std::uint32_t, Fq>>> eqs_;
  };

  FixedY fix_y(std::span<const Fq> y) const {
    if (y.size() != n_) throw Error(ErrorCode::LengthMismatch, "ciphertext must have n digits");
    FixedY out;
    out.key_ = this;
    out.eqs_.resize(n_);
    std::vector<Fq> dense(monomials_.size());
    for (std::size_t k = 0; k < n_; ++k) {
      std::fill(dense.begin(), dense.end(), 0);
      for (const auto& [id, c] : slot(k, n_)) dense[id] = field_.add(dense[id], c);
      for (std::size_t j = 0; j < n_; ++j) {
        if (y[j] == 0) continue;
        const Fq* row = field_.mul_row(y[j]);
        for (const auto& [id, c] : slot(k, j)) dense[id] = field_.add(dense[id], row[c]);
      }
      for (std::uint32_t id = 0; id < dense.size(); ++id)
        if (dense[id] != 0) out.eqs_[k].emplace_back(id, dense[id]);
    }
    return out;
  }

  ShapeReport audit() const {
    ShapeReport r;
    const VarBlock xs{0, n_}, ys{n_, n_};
    for (const auto& eq : equations_) {
      bool has_y = false, nonlinear_x = false, y_bad = false;
      for (const auto& [m, c] : eq.terms()) {
        unsigned dx = 0, dy = 0;
        for (std::size_t i = 0; i < n_; ++i) dx += m[xs.offset + i];
        for (std::size_t i = 0; i < n_; ++i) dy += m[ys.offset + i];
        has_y = has_y || dy >= 1;
        y_bad = y_bad || dy >= 2;
        nonlinear_x = nonlinear_x || dx >= 2;
      }
      if (y_bad) ++r.y_nonlinear;
      if (!has_y) ++r.y_free;
      if (!nonlinear_x) ++r.x_linear;
      if (eq.total_degree() > t_ + 1) ++r.over_degree;
    }
    return r;
  }

  bool operator==(const PublicKey& o) const {
    return q() == o.q() && n_ == o.n_ && t_ == o.t_ && equations_ == o.equations_ && alphabet_ == o.alphabet_;
  }

 private:
  using Sparse = std::vector<std::pair<std::uint32_t, Fq>>;
  // x-monomial as (variable, exponent) pairs.
  using XMonomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

  BaseField field_;
  unsigned n_ = 0;
  unsigned t_ = 0;
  std::vector<MultiPoly> equations_;
  Alphabet alphabet_;
  std::vector<XMonomial> monomials_;
  std::vector<Sparse> slots_;  // index k * (n + 1) + j

  const Sparse& slot(std::size_t k, std::size_t j) const { return slots_[k * (n_ + 1) + j]; }

  void check_lengths(std::span<const Fq> x, std::span<const Fq> y) const {
    if (x.size() != n_ || y.size() != n_) throw Error(ErrorCode::LengthMismatch, "x and y must have n digits");
  }

  void compile() {
    std::map<Monomial, std::uint32_t> ids;
    slots_.assign(static_cast<std::size_t>(n_) * (n_ + 1), {});
    for (std::size_t k = 0; k < n_; ++k) {
      const MultiPoly& eq = equations_[k];
      if (eq.nvars() != 2 * n_) throw Error(ErrorCode::InvalidParams, "equation must have 2n variables");
      for (const auto& [m, c] : eq.terms()) {
        std::size_t y_slot = n_;
        unsigned dy = 0;
        for (std::size_t j = 0; j < n_; ++j) {
          if (m[n_ + j] == 0) continue;
          dy += m[n_ + j];
          y_slot = j;
        }
        if (dy > 1) throw Error(ErrorCode::InvalidParams, "public equation is not linear in y");
        Monomial xm(m.begin(), m.begin() + n_);
        auto [it, inserted] = ids.emplace(xm, static_cast<std::uint32_t>(monomials_.size()));
        if (inserted) {
          XMonomial compact;
          for (std::uint32_t i = 0; i < n_; ++i)
            if (xm[i] != 0) compact.emplace_back(i, xm[i]);
          monomials_.push_back(std::move(compact));
        }
        slots_[k * (n_ + 1) + y_slot].emplace_back(it->second, c);
      }
    }
  }

  Vec monomial_values(std::span<const Fq> x) const {
    if (x.size() != n_) throw Error(ErrorCode::LengthMismatch, "x must have n digits");
    Vec out(monomials_.size());
    for (std::size_t id = 0; id < monomials_.size(); ++id) {
      Fq v = 1;
      for (const auto& [var, e] : monomials_[id]) {
        const Fq xv = x[var];
        if (xv == 0) {
          v = 0;
          break;
        }
        v = field_.mul(v, e == 1 ? xv : field_.pow(xv, e));
      }
      out[id] = v;
    }
    return out;
  }

  Fq combine(const Sparse& terms, const Vec& mono) const {
    Fq acc = 0;
    for (const auto& [id, c] : terms)
      if (mono[id] != 0) acc = field_.add(acc, field_.mul(c, mono[id]));
    return acc;
  }
};

struct PrivateKey {
  ExtensionField field;
  PrivatePolynomial f;
  AffinePair affine;
  PublicKey pub;
};

}  // namespace hpe

#endif  // HPE_KEYS_HPP
