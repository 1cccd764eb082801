// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hpe/hpe.hpp"
#include "oracles.hpp"

namespace {

using namespace hpe;

struct Outcome {
  bool pass;
  std::string detail;
};

KeyGenParams desk_params(unsigned n, unsigned block_len) {
  KeyGenParams p;
  p.n = n;
  p.t_max = 3;
  p.degx_max = 9;
  p.alphabet = AlphabetSpec{"01", block_len, 4};
  return p;
}

std::string random_message(const Alphabet& a, std::size_t n, Rng& rng) {
  std::string msg;
  for (std::size_t i = 0; i < a.letters_per_message(n); ++i) msg += a.letters()[rng.uniform(a.letter_count())];
  return msg;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// 1. Single-trial success rate over 2000 fresh (key, message) pairs.
Outcome encryption_success_probability() {
  Rng rng(101);
  constexpr int kTrials = 2000;
  int success = 0;
  for (int k = 0; k < kTrials; ++k) {
    const KeyPair kp = keygen(desk_params(16, 8), rng);
    const Encoding enc = encode(kp.pub.alphabet(), 16, random_message(kp.pub.alphabet(), 16, rng), rng);
    success += encrypt_raw(kp.pub, enc.x, rng).has_value();
  }
  const double rate = static_cast<double>(success) / kTrials;
  return {rate >= 0.58 && rate <= 0.68, fmt("rate=%.4f over %d trials, accepted [0.58, 0.68]", rate, kTrials)};
}

// 2. Failure rate with 10 encodings per message.
Outcome retry_bound() {
  Rng rng(102);
  constexpr int kKeys = 100, kPerKey = 100;
  int failures = 0;
  for (int k = 0; k < kKeys; ++k) {
    const KeyPair kp = keygen(desk_params(16, 8), rng);
    for (int m = 0; m < kPerKey; ++m) {
      try {
        encrypt(kp.pub, random_message(kp.pub.alphabet(), 16, rng), EncryptConfig{10}, rng);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EncryptionFailed) throw;
        ++failures;
      }
    }
  }
  const double rate = static_cast<double>(failures) / (kKeys * kPerKey);
  return {rate <= 1e-3, fmt("failures=%d/%d (rate %.2e, bound 1e-3)", failures, kKeys * kPerKey, rate)};
}

// 3. Honest round trips at q=2, n=16.
Outcome round_trip() {
  Rng rng(103);
  int recovered = 0, unique = 0;
  for (int k = 0; k < 10; ++k) {
    const KeyPair kp = keygen(desk_params(16, 8), rng);
    for (int m = 0; m < 10; ++m) {
      const std::string msg = random_message(kp.pub.alphabet(), 16, rng);
      const Vec y = encrypt(kp.pub, msg, EncryptConfig{10}, rng);
      const auto c = decrypt_candidates(kp.priv, y);
      recovered += std::find(c.messages.begin(), c.messages.end(), msg) != c.messages.end();
      unique += c.messages == std::vector<std::string>{msg};
    }
  }
  return {recovered == 100 && unique >= 95, fmt("recovered=%d/100 unique=%d/100 (need 100 and >=95)", recovered, unique)};
}

// 4. Roots before alphabet filtering never exceed degX_max.
Outcome root_bound() {
  Rng rng(104);
  const KeyGenParams p = desk_params(16, 8);
  std::size_t worst = 0, checked = 0, violations = 0;
  for (int k = 0; k < 20; ++k) {
    const KeyPair kp = keygen(p, rng);
    const std::uint64_t bound = std::min<std::uint64_t>(p.degx_max, kp.priv.f.degree_in_x(p.q));
    for (int m = 0; m < 100; ++m, checked += 2) {
      const Vec honest = encrypt(kp.pub, random_message(kp.pub.alphabet(), 16, rng), EncryptConfig{10}, rng);
      const Vec noise = random_vector(kp.pub.field(), 16, rng);
      for (const Vec& y : {honest, noise}) {
        const std::size_t roots = decrypt_candidates(kp.priv, y).preimages.size();
        worst = std::max(worst, roots);
        violations += roots > bound;
      }
    }
  }
  return {violations == 0, fmt("max roots=%zu over %zu ciphertexts, degX_max=%u, violations=%zu", worst, checked,
                                p.degx_max, violations)};
}

// 5. Decryption against brute force at q=2, n=12.
Outcome oracle_equivalence() {
  Rng rng(105);
  int equal = 0;
  for (int k = 0; k < 5; ++k) {
    const KeyPair kp = keygen(desk_params(12, 6), rng);
    for (int m = 0; m < 10; ++m) {
      const Vec y = encrypt(kp.pub, random_message(kp.pub.alphabet(), 12, rng), EncryptConfig{10}, rng);
      std::set<std::string> brute;
      for (const Vec& x : exhaustive_invert(kp.pub, y))
        if (auto msg = kp.pub.alphabet().decode(x)) brute.insert(*msg);
      equal += decrypt_candidates(kp.priv, y).messages == std::vector<std::string>(brute.begin(), brute.end());
    }
  }
  return {equal == 50, fmt("identical candidate sets for %d/50 ciphertexts", equal)};
}

// 6. f(u, v) and the public equations vanish together, every (u, v).
Outcome linearization_correctness() {
  Rng rng(106);
  struct Shape {
    unsigned q, n;
  };
  std::uint64_t pairs = 0, mismatches = 0;
  std::string fields;
  for (const Shape s : {Shape{2, 8}, Shape{4, 4}, Shape{16, 2}, Shape{3, 5}}) {
    KeyGenParams p;
    p.q = s.q;
    p.n = s.n;
    p.alphabet = AlphabetSpec{"01", s.n, 2};
    // Small fields host fewer distinct mixed exponents.
    p.n_mixed = std::min<unsigned>({3, s.n, static_cast<unsigned>(mixed_exponent_groups(p).size())});
    const KeyPair kp = keygen(p, rng);
    const ExtensionField& K = kp.priv.field;
    const std::uint64_t order = *K.order();
    for (std::uint64_t i = 0; i < order; ++i) {
      const FieldElement u = K.element(i);
      for (std::uint64_t j = 0; j < order; ++j, ++pairs) {
        const RelationCheck r = private_relation_check(kp.priv, u, K.element(j));
        mismatches += r.relation_vanishes() != r.public_vanishes() || !r.coincide();
      }
    }
    fields += fmt(" %u^%u", s.q, s.n);
  }
  return {mismatches == 0, fmt("%llu pairs over fields%s, mismatches=%llu", static_cast<unsigned long long>(pairs),
                               fields.c_str(), static_cast<unsigned long long>(mismatches))};
}

// 7. Frobenius against repeated multiplication; root finding against
// exhaustive evaluation.
Outcome field_oracles() {
  Rng rng(107);
  std::uint64_t frob_checks = 0, frob_bad = 0;
  struct Shape {
    unsigned q, n;
  };
  for (const Shape s : {Shape{2, 12}, Shape{2, 9}, Shape{3, 7}, Shape{4, 6}, Shape{5, 5}, Shape{16, 3}, Shape{64, 2}}) {
    const ExtensionField K = ExtensionField::build(s.q, s.n);
    for (std::uint64_t i = 0; i < *K.order(); ++i) {
      const FieldElement a = K.element(i);
      FieldElement power = a;  // a^(q^k)
      for (unsigned k = 0; k < s.n; ++k, ++frob_checks) {
        frob_bad += K.frobenius_apply(a, k) != power;
        FieldElement next = power;
        for (unsigned m = 1; m < s.q; ++m) next = K.mul(next, power);
        power = next;
      }
      frob_bad += power != a;  // a^(q^n) = a
    }
  }

  std::uint64_t root_bad = 0;
  int polys = 0;
  for (const Shape s : {Shape{2, 12}, Shape{3, 7}, Shape{4, 6}, Shape{16, 3}}) {
    const ExtensionField K = ExtensionField::build(s.q, s.n);
    for (int k = 0; k < 50; ++k, ++polys) {
      const int deg = 1 + static_cast<int>(rng.uniform(8));
      UniPolyK g;
      if (k % 2 == 0) {
        // Split part times a random cofactor, to exercise repeated roots.
        g = {K.one()};
        const int linear = 1 + static_cast<int>(rng.uniform(deg));
        const FieldElement r0 = K.random(rng);
        for (int j = 0; j < linear; ++j)
          g = upoly::mul(K, g, {K.neg(j % 3 == 2 ? r0 : K.random(rng)), K.one()});
        UniPolyK cof;
        for (int j = 0; j <= deg - linear; ++j) cof.push_back(K.random(rng));
        cof.back() = K.random_nonzero(rng);
        g = upoly::mul(K, g, cof);
      } else {
        for (int j = 0; j <= deg; ++j) g.push_back(K.random(rng));
        g.back() = K.random_nonzero(rng);
      }
      auto got = upoly::roots(K, g, rng);
      auto want = oracle::exhaustive_roots(K, g);
      auto key = [&](const FieldElement& a) { return K.index(a); };
      std::sort(got.begin(), got.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
      std::sort(want.begin(), want.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
      root_bad += got != want;
    }
  }
  return {frob_bad == 0 && root_bad == 0,
          fmt("frobenius checks=%llu mismatches=%llu; root sets for %d polynomials, mismatches=%llu",
              static_cast<unsigned long long>(frob_checks), static_cast<unsigned long long>(frob_bad), polys,
              static_cast<unsigned long long>(root_bad))};
}

// 8. Signatures.
Outcome signature_suite() {
  Rng rng(108);
  int accepted = 0, flips = 0, flip_rejected = 0, cross = 0, cross_rejected = 0;
  for (int k = 0; k < 10; ++k) {
    const KeyPair kp = keygen(desk_params(16, 8), rng);
    for (int m = 0; m < 10; ++m) {
      const std::string msg = "message " + std::to_string(k) + "/" + std::to_string(m);
      const Signature sig = sign(kp.priv, msg, rng, 20);
      accepted += verify(kp.pub, msg, sig);
      for (int f = 0; f < 10; ++f, ++flips) {
        Signature bad = sig;
        bad.x[rng.uniform(16)] ^= 1;
        flip_rejected += !verify(kp.pub, msg, bad);
      }
      ++cross;
      cross_rejected += !verify(kp.pub, msg + " (amended)", sig);
    }
  }
  const bool pass = accepted == 100 && flip_rejected * 100 >= flips * 99 && cross_rejected == cross;
  return {pass, fmt("accepted=%d/100, tampered rejected=%d/%d, other message rejected=%d/%d", accepted, flip_rejected,
                    flips, cross_rejected, cross)};
}

// 9. Signcryption round trips.
Outcome signcryption_suite() {
  Rng rng(109);
  int recovered = 0, unique = 0;
  for (int k = 0; k < 10; ++k) {
    const KeyPair alice = keygen(desk_params(16, 8), rng), bob = keygen(desk_params(16, 8), rng);
    for (int m = 0; m < 10; ++m) {
      const std::string msg = random_message(bob.pub.alphabet(), 16, rng);
      const Vec ct = signcrypt(bob.priv, alice.pub, msg, rng, EncryptConfig{16});
      const auto got = unsigncrypt_candidates(alice.priv, bob.pub, ct);
      recovered += std::find(got.begin(), got.end(), msg) != got.end();
      unique += got == std::vector<std::string>{msg};
    }
  }
  return {recovered == 100 && unique >= 99, fmt("recovered=%d/100 unique=%d/100 (need 100 and >=99)", recovered, unique)};
}

// 10. The bilinear relation attack at q=2, n=9, theta=1.
Outcome patarin_reproduction() {
  Rng rng(110);
  const IMKeyPair kp = im_keygen(2, 9, 1, rng);
  const IMPublicKey& pk = kp.pub;  // the attacker sees nothing else
  const auto start = std::chrono::steady_clock::now();
  const auto relations = harvest_relations(pk, default_sample_count(9), rng);
  int exact = 0;
  std::uint64_t largest = 0;
  for (int k = 0; k < 100; ++k) {
    const Vec x = random_vector(pk.field, 9, rng);
    const AttackResult r = patarin_attack(pk, relations, pk.encrypt(x));
    largest = std::max(largest, r.enumerated);
    exact += r.candidates == std::vector<Vec>{x};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {exact == 100 && secs <= 60.0, fmt("recovered=%d/100, relation dim=%zu, largest search=%llu, %.3f s", exact,
                                            relations.size(), static_cast<unsigned long long>(largest), secs)};
}

// 11. The same harvest against HPE keys.
Outcome contrast_experiment() {
  Rng rng(111);
  int empty = 0;
  std::size_t largest = 0;
  for (int k = 0; k < 50; ++k) {
    const KeyPair kp = keygen(desk_params(16, 8), rng);
    const auto relations = harvest_relations(kp.pub, default_sample_count(16), rng);
    empty += relations.empty();
    largest = std::max(largest, relations.size());
  }
  return {empty * 100 >= 50 * 95, fmt("relation dim 0 for %d/50 keys (need >=48), largest dim=%zu", empty, largest)};
}

// 12. Shape of generated public keys, checked term by term.
Outcome shape_audit() {
  Rng rng(112);
  std::size_t equations = 0, violations = 0;
  for (int k = 0; k < 100; ++k) {
    const KeyPair kp = keygen(desk_params(16, 8), rng);
    const std::size_t n = kp.pub.n();
    for (const MultiPoly& eq : kp.pub.equations()) {
      ++equations;
      bool y_linear = true, x_nonlinear = false, has_y = false;
      for (const auto& [m, c] : eq.terms()) {
        unsigned dx = 0, dy = 0;
        for (std::size_t i = 0; i < n; ++i) dx += m[i];
        for (std::size_t i = n; i < 2 * n; ++i) dy += m[i];
        y_linear = y_linear && dy <= 1;
        has_y = has_y || dy == 1;
        x_nonlinear = x_nonlinear || dx >= 2;
      }
      violations += !(y_linear && has_y && x_nonlinear);
    }
  }
  return {violations == 0 && equations == 1600, fmt("%zu equations in 100 keys, violations=%zu", equations, violations)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"encryption success probability", encryption_success_probability},
      {"retry bound", retry_bound},
      {"round-trip correctness", round_trip},
      {"decryption root bound", root_bound},
      {"oracle equivalence", oracle_equivalence},
      {"linearization correctness", linearization_correctness},
      {"field-engine oracles", field_oracles},
      {"signature suite", signature_suite},
      {"signcryption suite", signcryption_suite},
      {"linearization attack reproduction", patarin_reproduction},
      {"contrast experiment", contrast_experiment},
      {"public-key shape audit", shape_audit},
  };
  constexpr double kBudget[] = {300, 600, 600, 600, 600, 600, 600, 600, 600, 60, 600, 600};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > kBudget[i]) {
      out.pass = false;
      out.detail += fmt(" [over the %.0f s budget]", kBudget[i]);
    }
    failed += !out.pass;
    std::printf("%s %2zu %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, out.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
