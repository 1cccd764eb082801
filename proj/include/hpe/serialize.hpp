#ifndef HPE_SERIALIZE_HPP
#define HPE_SERIALIZE_HPP

#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hpe/alphabet.hpp"
#include "hpe/error.hpp"
#include "hpe/extension_field.hpp"
#include "hpe/im.hpp"
#include "hpe/keys.hpp"
#include "hpe/signature.hpp"

// Text formats. Digit strings over F_q use one character per digit
// (0-9 then a-z) when q <= 36 and two lowercase hex characters otherwise.
//
// Public key:            Private key:
//   HPE1 <q> <n> <t>       HPE1 <q> <n> <t>
//   ALPHABET <L> <e> <s>   F <p> <r> <n> <modulus low to high>
//   <codepoint> <syn>...   ALPHABET / EQUATIONS sections as in the public key
//   EQUATIONS <n>          PRIVPOLY <mixed> <pure>
//   VARS x1 .. yn          M <coeff> <y theta> <k> <theta>...
//   EQ <i> <terms>         P <coeff> <k> <theta>...
//   <coeff> : <e1> ..      C <coeff>
//   END                    AFFINE, then A rows, c, B rows, d
//                          END
namespace hpe {

inline std::size_t digit_width(unsigned q) { return q <= 36 ? 1 : 2; }

inline std::string digits_to_string(unsigned q, std::span<const Fq> digits) {
  static constexpr char kChars[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string out;
  out.reserve(digits.size() * digit_width(q));
  for (Fq d : digits) {
    if (q <= 36) {
      out += kChars[d];
    } else {
      out += kChars[d >> 4];
      out += kChars[d & 0xF];
    }
  }
  return out;
}

// Throws ParseError on bad characters, digits >= q or a length other than
// `expected` digits (when given).
inline Vec digits_from_string(unsigned q, std::string_view text, std::optional<std::size_t> expected = std::nullopt) {
  auto value = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
  };
  const std::size_t w = digit_width(q);
  if (text.size() % w != 0) throw Error(ErrorCode::ParseError, "digit string has odd length");
  Vec out;
  for (std::size_t i = 0; i < text.size(); i += w) {
    int d = value(text[i]);
    if (w == 2) {
      const int lo = value(text[i + 1]);
      d = (d < 0 || d > 15 || lo < 0 || lo > 15) ? -1 : d * 16 + lo;
    }
    if (d < 0 || static_cast<unsigned>(d) >= q) {
      throw Error(ErrorCode::ParseError, "invalid digit in '" + std::string(text) + "'");
    }
    out.push_back(static_cast<Fq>(d));
  }
  if (expected && out.size() != *expected) {
    throw Error(ErrorCode::ParseError,
                "expected " + std::to_string(*expected) + " digits, found " + std::to_string(out.size()));
  }
  return out;
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = text.find('\n', start);
      std::string_view line = text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) lines_.emplace_back(line);
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
  }

  bool done() const { return pos_ == lines_.size(); }

  std::string_view peek_keyword() const {
    if (done()) return {};
    std::string_view line = lines_[pos_];
    return line.substr(0, line.find(' '));
  }

  // Tokens of the next line; its first token must equal `keyword` when given.
  std::vector<std::string> next(std::string_view keyword = {}) {
    if (done()) fail("unexpected end of input");
    std::istringstream in(lines_[pos_++]);
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) tokens.push_back(t);
    if (!keyword.empty() && (tokens.empty() || tokens[0] != keyword)) {
      fail("expected '" + std::string(keyword) + "'");
    }
    return tokens;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(pos_) + ": " + what);
  }

  std::uint64_t number(const std::string& token, std::uint64_t max = ~std::uint64_t{0}) const {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || v > max) fail("bad number '" + token + "'");
    return v;
  }

  void expect_count(const std::vector<std::string>& tokens, std::size_t count) const {
    if (tokens.size() != count) {
      fail("expected " + std::to_string(count) + " fields, found " + std::to_string(tokens.size()));
    }
  }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

inline void emit_alphabet(std::ostream& out, const Alphabet& a) {
  out << "ALPHABET " << a.letter_count() << ' ' << a.block_len() << ' ' << a.synonym_count(0) << '\n';
  for (std::size_t i = 0; i < a.letter_count(); ++i) {
    out << static_cast<unsigned>(static_cast<unsigned char>(a.letters()[i]));
    for (const Vec& w : a.synonyms(i)) out << ' ' << digits_to_string(a.q(), w);
    out << '\n';
  }
}

inline Alphabet parse_alphabet(LineReader& in, unsigned q) {
  auto head = in.next("ALPHABET");
  in.expect_count(head, 4);
  const auto letters = in.number(head[1], 256), e = in.number(head[2], 4096), s = in.number(head[3], 1U << 20);
  std::string symbols;
  std::vector<std::vector<Vec>> synonyms;
  for (std::uint64_t i = 0; i < letters; ++i) {
    auto row = in.next();
    in.expect_count(row, s + 1);
    symbols += static_cast<char>(in.number(row[0], 255));
    std::vector<Vec> set;
    for (std::uint64_t k = 0; k < s; ++k) set.push_back(digits_from_string(q, row[k + 1], e));
    synonyms.push_back(std::move(set));
  }
  try {
    return Alphabet(q, static_cast<unsigned>(e), symbols, std::move(synonyms));
  } catch (const Error& err) {
    in.fail(err.what());
  }
}

// Equations in 2n (or n for IM keys) variables named by `names`.
inline void emit_equations(std::ostream& out, const std::vector<MultiPoly>& eqs, const std::vector<std::string>& names) {
  out << "EQUATIONS " << eqs.size() << '\n' << "VARS";
  for (const auto& name : names) out << ' ' << name;
  out << '\n';
  for (std::size_t k = 0; k < eqs.size(); ++k) {
    out << "EQ " << k + 1 << ' ' << eqs[k].term_count() << '\n';
    for (const auto& [m, c] : eqs[k].terms()) {
      out << static_cast<unsigned>(c) << " :";
      for (auto e : m) out << ' ' << e;
      out << '\n';
    }
  }
}

inline std::vector<MultiPoly> parse_equations(LineReader& in, const BaseField& f, std::size_t count,
                                              const std::vector<std::string>& names) {
  auto head = in.next("EQUATIONS");
  in.expect_count(head, 2);
  if (in.number(head[1]) != count) in.fail("wrong number of equations");
  auto vars = in.next("VARS");
  if (std::vector<std::string>(vars.begin() + 1, vars.end()) != names) in.fail("unexpected variable names");
  std::vector<MultiPoly> eqs;
  for (std::size_t k = 0; k < count; ++k) {
    auto eq = in.next("EQ");
    in.expect_count(eq, 3);
    if (in.number(eq[1]) != k + 1) in.fail("equations out of order");
    const auto terms = in.number(eq[2], 1U << 28);
    MultiPoly p(names.size());
    for (std::uint64_t t = 0; t < terms; ++t) {
      auto row = in.next();
      in.expect_count(row, names.size() + 2);
      if (row[1] != ":") in.fail("expected ':' after the coefficient");
      const Fq c = static_cast<Fq>(in.number(row[0], f.q() - 1));
      if (c == 0) in.fail("zero coefficient");
      Monomial m(names.size());
      for (std::size_t i = 0; i < names.size(); ++i) m[i] = static_cast<std::uint32_t>(in.number(row[i + 2], 1U << 30));
      if (p.coeff(m) != 0) in.fail("repeated monomial");
      p.add_term(f, m, c);
    }
    eqs.push_back(std::move(p));
  }
  return eqs;
}

inline std::vector<std::string> variable_names(std::size_t n, bool with_y) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  if (with_y)
    for (std::size_t i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
  return names;
}

inline ExtensionField parse_field(LineReader& in, unsigned q, unsigned n) {
  auto row = in.next("F");
  in.expect_count(row, 5 + n);
  const auto p = in.number(row[1], 256), r = in.number(row[2], 8), deg = in.number(row[3], 1U << 16);
  std::uint64_t power = 1;
  for (std::uint64_t i = 0; i < r; ++i) power *= p;
  if (power != q || deg != n) in.fail("field descriptor does not match the header");
  Vec modulus;
  for (std::size_t i = 0; i <= n; ++i) modulus.push_back(static_cast<Fq>(in.number(row[4 + i], q - 1)));
  try {
    return ExtensionField::build(q, n, modulus);
  } catch (const Error& err) {
    in.fail(err.what());
  }
}

inline void emit_affine(std::ostream& out, unsigned q, const AffinePair& a) {
  out << "AFFINE\n";
  for (std::size_t r = 0; r < a.A.rows(); ++r) out << "A " << digits_to_string(q, a.A.row(r)) << '\n';
  out << "c " << digits_to_string(q, a.c) << '\n';
  for (std::size_t r = 0; r < a.B.rows(); ++r) out << "B " << digits_to_string(q, a.B.row(r)) << '\n';
  out << "d " << digits_to_string(q, a.d) << '\n';
}

inline AffinePair parse_affine(LineReader& in, const BaseField& f, unsigned n) {
  in.next("AFFINE");
  auto matrix = [&](std::string_view name) {
    Matrix m(n, n);
    for (unsigned r = 0; r < n; ++r) {
      auto row = in.next(name);
      in.expect_count(row, 2);
      const Vec v = digits_from_string(f.q(), row[1], n);
      for (unsigned c = 0; c < n; ++c) m(r, c) = v[c];
    }
    return m;
  };
  auto vector = [&](std::string_view name) {
    auto row = in.next(name);
    in.expect_count(row, 2);
    return digits_from_string(f.q(), row[1], n);
  };
  Matrix A = matrix("A");
  Vec c = vector("c");
  Matrix B = matrix("B");
  Vec d = vector("d");
  try {
    return AffinePair::make(f, std::move(A), std::move(c), std::move(B), std::move(d));
  } catch (const Error& err) {
    in.fail(err.what());
  }
}

inline std::vector<unsigned> parse_thetas(LineReader& in, const std::vector<std::string>& row, std::size_t at,
                                          unsigned n) {
  const auto k = in.number(row.at(at), 64);
  in.expect_count(row, at + 1 + k);
  std::vector<unsigned> thetas;
  for (std::uint64_t i = 0; i < k; ++i) thetas.push_back(static_cast<unsigned>(in.number(row[at + 1 + i], n - 1)));
  if (thetas.empty()) in.fail("empty exponent decomposition");
  return thetas;
}

inline void emit_thetas(std::ostream& out, const std::vector<unsigned>& thetas) {
  out << ' ' << thetas.size();
  for (unsigned t : thetas) out << ' ' << t;
}

struct Header {
  unsigned q = 0, n = 0, t = 0;
};

inline Header parse_header(LineReader& in) {
  auto row = in.next("HPE1");
  in.expect_count(row, 4);
  Header h{static_cast<unsigned>(in.number(row[1], 256)), static_cast<unsigned>(in.number(row[2], 4096)),
           static_cast<unsigned>(in.number(row[3], 4096))};
  if (h.n < 2) in.fail("n must be >= 2");
  return h;
}

inline PublicKey parse_public_body(LineReader& in, const Header& h, const BaseField& f) {
  Alphabet alphabet = parse_alphabet(in, h.q);
  auto eqs = parse_equations(in, f, h.n, variable_names(h.n, true));
  try {
    return PublicKey(h.q, h.n, h.t, std::move(eqs), std::move(alphabet));
  } catch (const Error& err) {
    in.fail(err.what());
  }
}

inline BaseField base_field_or_fail(LineReader& in, unsigned q) {
  try {
    return BaseField::make(q);
  } catch (const Error& err) {
    in.fail(err.what());
  }
}

}  // namespace detail

inline std::string emit_public_key(const PublicKey& pk) {
  std::ostringstream out;
  out << "HPE1 " << pk.q() << ' ' << pk.n() << ' ' << pk.t() << '\n';
  detail::emit_alphabet(out, pk.alphabet());
  detail::emit_equations(out, pk.equations(), detail::variable_names(pk.n(), true));
  out << "END\n";
  return out.str();
}

// Throws ParseError.
inline PublicKey parse_public_key(std::string_view text) {
  detail::LineReader in(text);
  const auto h = detail::parse_header(in);
  if (in.peek_keyword() == "F") in.fail("this is a private key file");
  const BaseField f = detail::base_field_or_fail(in, h.q);
  PublicKey pk = detail::parse_public_body(in, h, f);
  in.next("END");
  if (!in.done()) in.fail("trailing content after END");
  return pk;
}

inline std::string emit_private_key(const PrivateKey& sk) {
  const PublicKey& pk = sk.pub;
  const unsigned q = pk.q();
  std::ostringstream out;
  out << "HPE1 " << q << ' ' << pk.n() << ' ' << pk.t() << '\n';
  out << sk.field.descriptor() << '\n';
  detail::emit_alphabet(out, pk.alphabet());
  detail::emit_equations(out, pk.equations(), detail::variable_names(pk.n(), true));
  out << "PRIVPOLY " << sk.f.mixed.size() << ' ' << sk.f.pure.size() << '\n';
  for (const auto& m : sk.f.mixed) {
    out << "M " << digits_to_string(q, m.coeff.coords()) << ' ' << m.y_theta;
    detail::emit_thetas(out, m.x_thetas);
    out << '\n';
  }
  for (const auto& p : sk.f.pure) {
    out << "P " << digits_to_string(q, p.coeff.coords());
    detail::emit_thetas(out, p.x_thetas);
    out << '\n';
  }
  out << "C " << digits_to_string(q, sk.f.constant.coords()) << '\n';
  detail::emit_affine(out, q, sk.affine);
  out << "END\n";
  return out.str();
}

inline PrivateKey parse_private_key(std::string_view text) {
  detail::LineReader in(text);
  const auto h = detail::parse_header(in);
  if (in.peek_keyword() != "F") in.fail("missing field descriptor; is this a public key?");
  PrivateKey sk;
  sk.field = detail::parse_field(in, h.q, h.n);
  const BaseField& f = sk.field.base();
  sk.pub = detail::parse_public_body(in, h, f);

  auto head = in.next("PRIVPOLY");
  in.expect_count(head, 3);
  const auto mixed = in.number(head[1], h.n), pure = in.number(head[2], 1U << 16);
  for (std::uint64_t i = 0; i < mixed; ++i) {
    auto row = in.next("M");
    if (row.size() < 4) in.fail("short mixed term");
    MixedTerm m;
    m.coeff = FieldElement(digits_from_string(h.q, row[1], h.n));
    m.y_theta = static_cast<unsigned>(in.number(row[2], h.n - 1));
    m.x_thetas = detail::parse_thetas(in, row, 3, h.n);
    sk.f.mixed.push_back(std::move(m));
  }
  for (std::uint64_t i = 0; i < pure; ++i) {
    auto row = in.next("P");
    if (row.size() < 3) in.fail("short pure term");
    PureTerm p;
    p.coeff = FieldElement(digits_from_string(h.q, row[1], h.n));
    p.x_thetas = detail::parse_thetas(in, row, 2, h.n);
    sk.f.pure.push_back(std::move(p));
  }
  auto c = in.next("C");
  in.expect_count(c, 2);
  sk.f.constant = FieldElement(digits_from_string(h.q, c[1], h.n));
  if (sk.f.degree_in_x(h.q) > 64) in.fail("private polynomial degree in X exceeds 64");

  sk.affine = detail::parse_affine(in, f, h.n);
  in.next("END");
  if (!in.done()) in.fail("trailing content after END");
  return sk;
}

// Whether the stored public equations are exactly those of (field, f, affine).
inline bool consistent(const PrivateKey& sk) {
  return expand_public(sk.field, sk.f, sk.affine) == sk.pub.equations();
}

inline std::string emit_ciphertext(const PublicKey& pk, std::span<const Fq> y) { return digits_to_string(pk.q(), y); }

// Surrounding whitespace is ignored.
inline Vec parse_ciphertext(unsigned q, unsigned n, std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  return digits_from_string(q, text, n);
}

// "SIG1 <salt> <digits>"
inline std::string emit_signature(unsigned q, const Signature& sig) {
  return "SIG1 " + std::to_string(sig.salt) + ' ' + digits_to_string(q, sig.x) + '\n';
}

inline Signature parse_signature(unsigned q, unsigned n, std::string_view text) {
  detail::LineReader in(text);
  auto row = in.next("SIG1");
  in.expect_count(row, 3);
  Signature sig;
  sig.salt = in.number(row[1]);
  sig.x = digits_from_string(q, row[2], n);
  if (!in.done()) in.fail("trailing content after the signature");
  return sig;
}

// IM public key: "IM1 <q> <n>", the n explicit forms y_i(x), "END".
inline std::string emit_im_public_key(const IMPublicKey& pk) {
  std::ostringstream out;
  out << "IM1 " << pk.q() << ' ' << pk.n << '\n';
  detail::emit_equations(out, pk.forms, detail::variable_names(pk.n, false));
  out << "END\n";
  return out.str();
}

inline IMPublicKey parse_im_public_key(std::string_view text) {
  detail::LineReader in(text);
  auto head = in.next("IM1");
  in.expect_count(head, 3);
  IMPublicKey pk;
  pk.field = detail::base_field_or_fail(in, static_cast<unsigned>(in.number(head[1], 256)));
  pk.n = static_cast<unsigned>(in.number(head[2], 4096));
  if (pk.n < 2) in.fail("n must be >= 2");
  pk.forms = detail::parse_equations(in, pk.field, pk.n, detail::variable_names(pk.n, false));
  in.next("END");
  if (!in.done()) in.fail("trailing content after END");
  return pk;
}

// IM private key: "IM1 <q> <n>", field descriptor, "THETA <theta>", affine
// section, "END". The public forms are rebuilt on parsing.
inline std::string emit_im_private_key(const IMKeyPair& kp) {
  std::ostringstream out;
  out << "IM1 " << kp.field.q() << ' ' << kp.field.n() << '\n' << kp.field.descriptor() << '\n';
  out << "THETA " << kp.theta << '\n';
  detail::emit_affine(out, kp.field.q(), kp.affine);
  out << "END\n";
  return out.str();
}

inline IMKeyPair parse_im_private_key(std::string_view text) {
  detail::LineReader in(text);
  auto head = in.next("IM1");
  in.expect_count(head, 3);
  const auto q = static_cast<unsigned>(in.number(head[1], 256)), n = static_cast<unsigned>(in.number(head[2], 4096));
  if (n < 2) in.fail("n must be >= 2");
  const ExtensionField K = detail::parse_field(in, q, n);
  auto theta = in.next("THETA");
  in.expect_count(theta, 2);
  AffinePair affine = detail::parse_affine(in, K.base(), n);
  in.next("END");
  if (!in.done()) in.fail("trailing content after END");
  try {
    return im_assemble(K, static_cast<unsigned>(in.number(theta[1], n)), std::move(affine));
  } catch (const Error& err) {
    in.fail(err.what());
  }
}

}  // namespace hpe

#endif  // HPE_SERIALIZE_HPP
