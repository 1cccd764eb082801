// hpe: key generation, encryption, signatures, signcryption and the
// linearization attack experiment from the command line.
//
// Exit codes: 0 success, 1 protocol failure or rejection, 2 attack
// infeasible, 3 ambiguous decryption, 64 usage, 65 unreadable data.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "hpe/hpe.hpp"

namespace {

using namespace hpe;

constexpr int kExitReject = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitAmbiguous = 3;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

// Failures that carry their own exit code.
struct CliFailure {
  int code;
  std::string message;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidOrder:
    case ErrorCode::InvalidDegree:
    case ErrorCode::InvalidParams:
    case ErrorCode::NotIrreducible:
    case ErrorCode::BadTheta:
      return kExitUsage;
    case ErrorCode::ParseError:
    case ErrorCode::SymbolOutOfAlphabet:
    case ErrorCode::LengthMismatch:
      return kExitData;
    case ErrorCode::SolutionSpaceTooLarge:
    case ErrorCode::TooLarge:
      return kExitInfeasible;
    case ErrorCode::AmbiguousDecryption:
      return kExitAmbiguous;
    default:
      return kExitReject;
  }
}

struct Options {
  unsigned q = 2;
  unsigned n = 32;
  unsigned t = 3;
  unsigned degx = 9;
  unsigned mixed = 3;
  unsigned pure = 2;
  std::optional<std::uint64_t> seed;
  unsigned trials = 10;
  std::string pub, priv, in, out, sig;
  std::string target;  // keygen defaults to hpe, attack to im
  std::string letters = default_letters();
  unsigned block_len = 8;
  unsigned synonyms = 2;
  std::optional<unsigned> theta;
  std::optional<std::size_t> samples;
};

Rng make_rng(const Options& o) { return o.seed ? Rng(*o.seed) : Rng::from_entropy(); }

std::string read_text(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{kExitData, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw CliFailure{kExitData, "cannot write " + path};
}

// Message text without its trailing line break.
std::string read_message(const std::string& path) {
  std::string text = read_text(path);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

std::string require(const std::string& value, const char* flag) {
  if (value.empty()) throw CliFailure{kExitUsage, std::string(flag) + " is required"};
  return value;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

KeyGenParams keygen_params(const Options& o) {
  KeyGenParams p;
  p.q = o.q;
  p.n = o.n;
  p.t_max = o.t;
  p.degx_max = o.degx;
  p.n_mixed = o.mixed;
  p.n_pure = o.pure;
  p.alphabet = AlphabetSpec{o.letters, o.block_len, o.synonyms};
  return p;
}

int cmd_keygen(const Options& o) {
  const std::string pub_path = require(o.pub, "--pub"), priv_path = require(o.priv, "--priv");
  Rng rng = make_rng(o);
  const auto start = std::chrono::steady_clock::now();
  const std::string target = o.target.empty() ? "hpe" : o.target;
  if (target == "im") {
    const auto theta = o.theta ? o.theta : im_default_theta(o.q, o.n);
    if (!theta) throw CliFailure{kExitUsage, "no theta gives a bijection for these q and n"};
    const IMKeyPair kp = im_keygen(o.q, o.n, *theta, rng);
    write_text(pub_path, emit_im_public_key(kp.pub));
    write_text(priv_path, emit_im_private_key(kp));
    std::size_t terms = 0;
    for (const MultiPoly& p : kp.pub.forms) terms += p.term_count();
    std::cout << "target=im\nq=" << o.q << "\nn=" << o.n << "\ntheta=" << *theta << "\nequations=" << o.n
              << "\nterms=" << terms << '\n';
    return 0;
  }
  if (target != "hpe") throw CliFailure{kExitUsage, "--target must be hpe or im"};
  const KeyPair kp = keygen(keygen_params(o), rng);
  const double elapsed = seconds_since(start);
  write_text(pub_path, emit_public_key(kp.pub));
  write_text(priv_path, emit_private_key(kp.priv));
  std::cout << "target=hpe\nq=" << o.q << "\nn=" << o.n << "\nequations=" << kp.pub.equations().size()
            << "\nterms=" << kp.pub.term_count() << "\nt=" << kp.pub.t()
            << "\nn_pow_t_plus_1=" << std::pow(static_cast<double>(o.n), kp.pub.t() + 1.0)
            << "\nkeygen_seconds=" << elapsed << '\n';
  return 0;
}

int cmd_encrypt(const Options& o) {
  const PublicKey pk = parse_public_key(read_text(require(o.pub, "--pub")));
  Rng rng = make_rng(o);
  const Vec y = encrypt(pk, read_message(o.in), EncryptConfig{o.trials}, rng);
  write_text(o.out, emit_ciphertext(pk, y) + '\n');
  return 0;
}

int cmd_decrypt(const Options& o) {
  const PrivateKey sk = parse_private_key(read_text(require(o.priv, "--priv")));
  const Vec y = parse_ciphertext(sk.pub.q(), sk.pub.n(), read_text(o.in));
  const auto c = decrypt_candidates(sk, y);
  std::string text;
  for (const auto& m : c.messages) text += m + '\n';
  if (c.messages.empty()) {
    std::cerr << "hpe: no root decodes through the alphabet (" << c.preimages.size() << " roots)\n";
    return kExitReject;
  }
  write_text(o.out, text);
  if (c.messages.size() > 1) {
    std::cerr << "hpe: ambiguous decryption, " << c.messages.size() << " candidates\n";
    return kExitAmbiguous;
  }
  return 0;
}

int cmd_sign(const Options& o) {
  const PrivateKey sk = parse_private_key(read_text(require(o.priv, "--priv")));
  Rng rng = make_rng(o);
  const Signature sig = sign(sk, read_message(o.in), rng, o.trials);
  write_text(o.out, emit_signature(sk.pub.q(), sig));
  return 0;
}

int cmd_verify(const Options& o) {
  const PublicKey pk = parse_public_key(read_text(require(o.pub, "--pub")));
  const Signature sig = parse_signature(pk.q(), pk.n(), read_text(require(o.sig, "--sig")));
  const bool ok = verify(pk, read_message(o.in), sig);
  std::cout << (ok ? "accept" : "reject") << '\n';
  return ok ? 0 : kExitReject;
}

int cmd_signcrypt(const Options& o) {
  const PrivateKey sender = parse_private_key(read_text(require(o.priv, "--priv")));
  const PublicKey receiver = parse_public_key(read_text(require(o.pub, "--pub")));
  Rng rng = make_rng(o);
  const Vec y = signcrypt(sender, receiver, read_message(o.in), rng, EncryptConfig{o.trials});
  write_text(o.out, emit_ciphertext(receiver, y) + '\n');
  return 0;
}

int cmd_unsigncrypt(const Options& o) {
  const PrivateKey receiver = parse_private_key(read_text(require(o.priv, "--priv")));
  const PublicKey sender = parse_public_key(read_text(require(o.pub, "--pub")));
  const Vec y = parse_ciphertext(receiver.pub.q(), receiver.pub.n(), read_text(o.in));
  const auto messages = unsigncrypt(receiver, sender, y);
  std::string text;
  for (const auto& m : messages) text += m + '\n';
  write_text(o.out, text);
  if (messages.size() > 1) {
    std::cerr << "hpe: ambiguous unsigncryption, " << messages.size() << " candidates\n";
    return kExitAmbiguous;
  }
  return 0;
}

// Report lines are key=value.
int cmd_attack(const Options& o) {
  Rng rng = make_rng(o);
  const std::string text = read_text(require(o.pub, "--pub"));
  const std::string target = o.target.empty() ? "im" : o.target;
  std::ostringstream report;
  report << "target=" << target << '\n';
  auto finish = [&](bool success, int failure_code) {
    report << "success=" << (success ? "true" : "false") << '\n';
    write_text(o.out, report.str());
    return success ? 0 : failure_code;
  };

  if (target == "hpe") {
    const PublicKey pk = parse_public_key(text);
    const std::size_t samples = o.samples.value_or(default_sample_count(pk.n()));
    const auto start = std::chrono::steady_clock::now();
    const auto relations = harvest_relations(pk, samples, rng);
    report << "n=" << pk.n() << "\nt=" << pk.t() << "\nsamples=" << samples << "\nrelation_dim=" << relations.size()
           << "\nharvest_seconds=" << seconds_since(start) << '\n';
    return finish(!relations.empty(), kExitInfeasible);
  }
  if (target != "im") throw CliFailure{kExitUsage, "--target must be hpe or im"};

  const IMPublicKey pk = parse_im_public_key(text);
  const std::size_t samples = o.samples.value_or(default_sample_count(pk.n));
  auto start = std::chrono::steady_clock::now();
  const auto relations = harvest_relations(pk, samples, rng);
  report << "n=" << pk.n << "\nsamples=" << samples << "\nrelation_dim=" << relations.size()
         << "\nharvest_seconds=" << seconds_since(start) << '\n';
  if (relations.empty()) return finish(false, kExitInfeasible);

  start = std::chrono::steady_clock::now();
  std::uint64_t largest = 0;
  try {
    if (!o.in.empty()) {
      const Vec y = parse_ciphertext(pk.q(), pk.n, read_text(o.in));
      const AttackResult r = patarin_attack(pk, relations, y);
      largest = r.enumerated;
      report << "enumerated=" << largest << "\ncandidates=" << r.candidates.size() << '\n';
      for (const Vec& x : r.candidates) report << "plaintext=" << digits_to_string(pk.q(), x) << '\n';
      report << "attack_seconds=" << seconds_since(start) << '\n';
      return finish(r.candidates.size() == 1, kExitInfeasible);
    }
    // Without a ciphertext, attack fresh challenges made with the public key.
    unsigned recovered = 0;
    for (unsigned k = 0; k < o.trials; ++k) {
      const Vec x = random_vector(pk.field, pk.n, rng);
      const AttackResult r = patarin_attack(pk, relations, pk.encrypt(x));
      largest = std::max(largest, r.enumerated);
      recovered += r.candidates == std::vector<Vec>{x};
    }
    report << "challenges=" << o.trials << "\nrecovered=" << recovered << "\nmax_enumerated=" << largest
           << "\nattack_seconds=" << seconds_since(start) << '\n';
    return finish(recovered == o.trials, kExitInfeasible);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SolutionSpaceTooLarge) throw;
    report << "error=" << e.what() << '\n';
    return finish(false, kExitInfeasible);
  }
}

int cmd_bench(const Options& o) {
  Rng rng = make_rng(o);
  auto start = std::chrono::steady_clock::now();
  const KeyPair kp = keygen(keygen_params(o), rng);
  const double keygen_seconds = seconds_since(start);
  const Alphabet& a = kp.pub.alphabet();
  const std::size_t letters = a.letters_per_message(o.n);

  unsigned single = 0, encrypted = 0, unique = 0;
  std::size_t roots = 0;
  double encrypt_seconds = 0, decrypt_seconds = 0;
  for (unsigned k = 0; k < o.trials; ++k) {
    std::string msg;
    for (std::size_t i = 0; i < letters; ++i) msg += a.letters()[rng.uniform(a.letter_count())];
    single += encrypt_raw(kp.pub, encode(a, o.n, msg, rng).x, rng).has_value();
    start = std::chrono::steady_clock::now();
    Encryption e;
    try {
      e = encrypt_detailed(kp.pub, msg, EncryptConfig{10}, rng);
    } catch (const Error&) {
      continue;
    }
    encrypt_seconds += seconds_since(start);
    ++encrypted;
    start = std::chrono::steady_clock::now();
    const auto c = decrypt_candidates(kp.priv, e.y);
    decrypt_seconds += seconds_since(start);
    roots += c.preimages.size();
    unique += c.messages == std::vector<std::string>{msg};
  }
  const double denom = encrypted == 0 ? 1.0 : encrypted;
  std::cout << "q=" << o.q << "\nn=" << o.n << "\nt=" << kp.pub.t() << "\nterms=" << kp.pub.term_count()
            << "\nkeygen_seconds=" << keygen_seconds << "\ntrials=" << o.trials
            << "\nsingle_trial_rate=" << (o.trials ? static_cast<double>(single) / o.trials : 0.0)
            << "\nencrypted=" << encrypted << "\nunique_decryptions=" << unique
            << "\nmean_roots=" << roots / denom << "\nmean_encrypt_ms=" << 1e3 * encrypt_seconds / denom
            << "\nmean_decrypt_ms=" << 1e3 * decrypt_seconds / denom << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hidden-polynomial encryption, signatures and the linearization attack"};
  app.require_subcommand(1);
  Options o;

  auto key_params = [&](CLI::App* cmd) {
    cmd->add_option("--q", o.q, "Base field order")->capture_default_str();
    cmd->add_option("--n", o.n, "Extension degree (variables per block)")->capture_default_str();
    cmd->add_option("--t", o.t, "Maximum q-weight of exponents of X")->capture_default_str();
    cmd->add_option("--degx", o.degx, "Maximum degree in X of the private polynomial")->capture_default_str();
    cmd->add_option("--mixed", o.mixed, "Number of terms containing Y")->capture_default_str();
    cmd->add_option("--pure", o.pure, "Number of terms in X only")->capture_default_str();
    cmd->add_option("--letters", o.letters, "Alphabet symbols");
    cmd->add_option("--block-len", o.block_len, "Field elements per letter")->capture_default_str();
    cmd->add_option("--synonyms", o.synonyms, "Synonyms per letter")->capture_default_str();
  };
  auto seed = [&](CLI::App* cmd) { cmd->add_option("--seed", o.seed, "Deterministic random seed"); };
  auto io = [&](CLI::App* cmd) {
    cmd->add_option("--in", o.in, "Input file (default stdin)");
    cmd->add_option("--out", o.out, "Output file (default stdout)");
  };

  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key pair");
  key_params(keygen_cmd);
  seed(keygen_cmd);
  keygen_cmd->add_option("--pub", o.pub, "Public key output")->required();
  keygen_cmd->add_option("--priv", o.priv, "Private key output")->required();
  keygen_cmd->add_option("--target", o.target, "hpe (default) or im");
  keygen_cmd->add_option("--theta", o.theta, "Frobenius index for im keys");

  auto* encrypt_cmd = app.add_subcommand("encrypt", "Encrypt a message");
  encrypt_cmd->add_option("--pub", o.pub, "Receiver public key")->required();
  encrypt_cmd->add_option("--trials", o.trials, "Encodings to try")->capture_default_str();
  seed(encrypt_cmd);
  io(encrypt_cmd);

  auto* decrypt_cmd = app.add_subcommand("decrypt", "Decrypt a ciphertext, printing every candidate");
  decrypt_cmd->add_option("--priv", o.priv, "Private key")->required();
  io(decrypt_cmd);

  auto* sign_cmd = app.add_subcommand("sign", "Sign a message");
  sign_cmd->add_option("--priv", o.priv, "Signer private key")->required();
  sign_cmd->add_option("--trials", o.trials, "Salts to try")->capture_default_str();
  seed(sign_cmd);
  io(sign_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Verify a signature (exit 0 accept, 1 reject)");
  verify_cmd->add_option("--pub", o.pub, "Signer public key")->required();
  verify_cmd->add_option("--sig", o.sig, "Signature file")->required();
  verify_cmd->add_option("--in", o.in, "Message file (default stdin)");

  auto* signcrypt_cmd = app.add_subcommand("signcrypt", "Sign with --priv and encrypt for --pub");
  signcrypt_cmd->add_option("--priv", o.priv, "Sender private key")->required();
  signcrypt_cmd->add_option("--pub", o.pub, "Receiver public key")->required();
  signcrypt_cmd->add_option("--trials", o.trials, "Encodings to try")->capture_default_str();
  seed(signcrypt_cmd);
  io(signcrypt_cmd);

  auto* unsigncrypt_cmd = app.add_subcommand("unsigncrypt", "Decrypt with --priv and check against sender --pub");
  unsigncrypt_cmd->add_option("--priv", o.priv, "Receiver private key")->required();
  unsigncrypt_cmd->add_option("--pub", o.pub, "Sender public key")->required();
  io(unsigncrypt_cmd);

  auto* attack_cmd = app.add_subcommand("attack", "Bilinear relation attack on a public key");
  attack_cmd->add_option("--pub", o.pub, "Public key under attack")->required();
  attack_cmd->add_option("--target", o.target, "im (default) or hpe");
  attack_cmd->add_option("--samples", o.samples, "Plaintext/ciphertext pairs to harvest");
  attack_cmd->add_option("--trials", o.trials, "Random challenges when no --in is given")->capture_default_str();
  seed(attack_cmd);
  io(attack_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "Time keygen, encryption and decryption");
  key_params(bench_cmd);
  seed(bench_cmd);
  bench_cmd->add_option("--trials", o.trials, "Messages to encrypt")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*keygen_cmd) return cmd_keygen(o);
    if (*encrypt_cmd) return cmd_encrypt(o);
    if (*decrypt_cmd) return cmd_decrypt(o);
    if (*sign_cmd) return cmd_sign(o);
    if (*verify_cmd) return cmd_verify(o);
    if (*signcrypt_cmd) return cmd_signcrypt(o);
    if (*unsigncrypt_cmd) return cmd_unsigncrypt(o);
    if (*attack_cmd) return cmd_attack(o);
    if (*bench_cmd) return cmd_bench(o);
  } catch (const CliFailure& f) {
    std::cerr << "hpe: " << f.message << '\n';
    return f.code;
  } catch (const AmbiguousDecryptionError& e) {
    for (const auto& m : e.candidates()) std::cout << m << '\n';
    std::cerr << "hpe: " << e.what() << '\n';
    return kExitAmbiguous;
  } catch (const Error& e) {
    std::cerr << "hpe: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitUsage;
}
