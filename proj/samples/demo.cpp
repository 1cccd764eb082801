// Walks through the library: a key pair, one encryption, a signature, a
// signcrypted message between two parties and the attack on the older
// quadratic scheme.

#include <iostream>

#include "hpe/hpe.hpp"

int main() {
  using namespace hpe;
  Rng rng(2024);

  KeyGenParams params;
  params.n = 16;
  params.alphabet = AlphabetSpec{"01", 8, 4};
  const KeyPair alice = keygen(params, rng), bob = keygen(params, rng);
  std::cout << "public key: " << alice.pub.equations().size() << " equations, " << alice.pub.term_count()
            << " terms, degree " << alice.pub.t() << " in x\n";

  const Encryption e = encrypt_detailed(alice.pub, "10", EncryptConfig{}, rng);
  std::cout << "ciphertext " << emit_ciphertext(alice.pub, e.y) << " after " << e.trials << " encoding(s)\n";
  std::cout << "decrypted  " << decrypt(alice.priv, e.y) << '\n';

  const Signature sig = sign(alice.priv, "pay bob 5", rng);
  std::cout << "signature  " << emit_signature(2, sig);
  std::cout << "verify: " << verify(alice.pub, "pay bob 5", sig) << ", tampered message: "
            << verify(alice.pub, "pay bob 50", sig) << '\n';

  const Vec sc = signcrypt(bob.priv, alice.pub, "01", rng, EncryptConfig{16});
  for (const auto& m : unsigncrypt(alice.priv, bob.pub, sc)) std::cout << "from bob   " << m << '\n';

  const IMKeyPair im = im_keygen(2, 9, 1, rng);
  const auto relations = harvest_relations(im.pub, default_sample_count(9), rng);
  const Vec secret = random_vector(im.pub.field, 9, rng);
  const AttackResult r = patarin_attack(im.pub, relations, im.pub.encrypt(secret));
  std::cout << "attack: " << relations.size() << " relations, " << r.enumerated << " points searched, recovered "
            << (r.candidates == std::vector<Vec>{secret} ? "the plaintext" : "nothing") << '\n';
}
