#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hpe/serialize.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(HPE_CLI_WORK) / ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Runs `hpe <args>` inside the work directory; stderr is discarded.
  Result run(const std::string& args) const { return shell("'" HPE_CLI "' " + args); }

  Result shell(const std::string& line) const {
    const std::string cmd = "cd '" + dir_.string() + "' && { " + line + "; } 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    for (std::size_t got; (got = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
  }

  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  void put(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  static std::string value(const std::string& report, const std::string& key) {
    std::istringstream in(report);
    for (std::string line; std::getline(in, line);)
      if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
    return {};
  }

  static constexpr const char* kDesk = "--n 16 --letters 01 --block-len 8 --synonyms 4";

  fs::path dir_;
};

TEST_F(Cli, SeededKeygenIsReproducible) {
  ASSERT_EQ(run(std::string("keygen ") + kDesk + " --t 3 --seed 7 --pub a.pub --priv a.priv").code, 0);
  ASSERT_EQ(run(std::string("keygen ") + kDesk + " --t 3 --seed 7 --pub b.pub --priv b.priv").code, 0);
  EXPECT_EQ(slurp("a.pub"), slurp("b.pub"));
  EXPECT_EQ(slurp("a.priv"), slurp("b.priv"));
  ASSERT_EQ(run(std::string("keygen ") + kDesk + " --t 3 --seed 8 --pub c.pub --priv c.priv").code, 0);
  EXPECT_NE(slurp("a.pub"), slurp("c.pub"));
  // Files written by the tool parse back to the same bytes.
  EXPECT_EQ(hpe::emit_public_key(hpe::parse_public_key(slurp("a.pub"))), slurp("a.pub"));
  EXPECT_EQ(hpe::emit_private_key(hpe::parse_private_key(slurp("a.priv"))), slurp("a.priv"));
}

TEST_F(Cli, KeygenStatisticsGrowWithN) {
  long previous = 0;
  for (int n : {8, 16, 32}) {
    const Result r = run("keygen --n " + std::to_string(n) +
                      " --letters 01 --block-len 4 --synonyms 2 --seed 1 --pub k.pub --priv k.priv");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(value(r.out, "equations"), std::to_string(n));
    EXPECT_EQ(value(r.out, "t"), "3");
    const long terms = std::stol(value(r.out, "terms"));
    EXPECT_GT(terms, previous);
    previous = terms;
  }
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("keygen --n 1 --pub a --priv b").code, 64);
  EXPECT_EQ(run("keygen --t 1 --pub a --priv b").code, 64);
  EXPECT_EQ(run("frobnicate").code, 64);
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("encrypt").code, 64);
  EXPECT_EQ(run("keygen --target im --n 8 --pub a --priv b").code, 64);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, DataErrors) {
  EXPECT_EQ(run("decrypt --priv missing.priv --in nothing").code, 65);
  EXPECT_EQ(run("attack --pub missing.pub").code, 65);
  put("garbage.pub", "HPE1 2 16\n");
  EXPECT_EQ(run("encrypt --pub garbage.pub --in garbage.pub").code, 65);
  ASSERT_EQ(run(std::string("keygen ") + kDesk + " --seed 1 --pub a.pub --priv a.priv").code, 0);
  put("m", "0x\n");
  EXPECT_EQ(run("encrypt --pub a.pub --in m").code, 65);
  put("ct", "0101\n");
  EXPECT_EQ(run("decrypt --priv a.priv --in ct").code, 65);
}

TEST_F(Cli, EncryptDecryptPipeline) {
  ASSERT_EQ(run(std::string("keygen ") + kDesk + " --seed 11 --pub a.pub --priv a.priv").code, 0);
  for (const char* msg : {"01", "10", "11", "00"}) {
    const Result r = shell(std::string("printf '") + msg + "\\n' | '" HPE_CLI "' encrypt --pub a.pub --seed 5 | '" HPE_CLI
                        "' decrypt --priv a.priv");
    EXPECT_EQ(r.code, 0) << msg;
    EXPECT_EQ(r.out, std::string(msg) + "\n");
  }
  put("m", "10\n");
  ASSERT_EQ(run("encrypt --pub a.pub --in m --out c1 --seed 3").code, 0);
  ASSERT_EQ(run("encrypt --pub a.pub --in m --out c2 --seed 3").code, 0);
  EXPECT_EQ(slurp("c1"), slurp("c2"));
  EXPECT_EQ(slurp("c1").size(), 17U);
  EXPECT_EQ(run("decrypt --priv a.priv --in c1 --out plain").code, 0);
  EXPECT_EQ(slurp("plain"), "10\n");
}

TEST_F(Cli, WrongKeyIsRejected) {
  ASSERT_EQ(run(std::string("keygen ") + kDesk + " --seed 21 --pub a.pub --priv a.priv").code, 0);
  ASSERT_EQ(run(std::string("keygen ") + kDesk + " --seed 22 --pub b.pub --priv b.priv").code, 0);
  put("m", "01\n");
  int rejected = 0;
  for (int k = 0; k < 50; ++k) {
    ASSERT_EQ(run("encrypt --pub a.pub --in m --out c --seed " + std::to_string(k)).code, 0);
    rejected += run("decrypt --priv b.priv --in c").code == 1;
  }
  EXPECT_GE(rejected, 49);
}

TEST_F(Cli, SignVerify) {
  ASSERT_EQ(run(std::string("keygen ") + kDesk + " --seed 31 --pub a.pub --priv a.priv").code, 0);
  put("m", "transfer 10 units\n");
  ASSERT_EQ(run("sign --priv a.priv --in m --out s --seed 1 --trials 20").code, 0);
  const Result ok = run("verify --pub a.pub --sig s --in m");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "accept\n");
  const hpe::Signature sig = hpe::parse_signature(2, 16, slurp("s"));
  hpe::Signature bad = sig;
  bad.x[3] ^= 1;
  put("bad", hpe::emit_signature(2, bad));
  const Result tampered = run("verify --pub a.pub --sig bad --in m");
  EXPECT_EQ(tampered.code, 1);
  EXPECT_EQ(tampered.out, "reject\n");
  put("m2", "transfer 99 units\n");
  EXPECT_EQ(run("verify --pub a.pub --sig s --in m2").code, 1);
  put("broken", "SIG1 x 0101\n");
  EXPECT_EQ(run("verify --pub a.pub --sig broken --in m").code, 65);
}

TEST_F(Cli, SigncryptPipeline) {
  ASSERT_EQ(run(std::string("keygen ") + kDesk + " --seed 41 --pub a.pub --priv a.priv").code, 0);
  ASSERT_EQ(run(std::string("keygen ") + kDesk + " --seed 42 --pub b.pub --priv b.priv").code, 0);
  put("m", "11\n");
  ASSERT_EQ(run("signcrypt --priv b.priv --pub a.pub --in m --out c --seed 1 --trials 16").code, 0);
  const Result r = run("unsigncrypt --priv a.priv --pub b.pub --in c");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "11\n");
  // Checked against the wrong sender nothing decodes.
  ASSERT_EQ(run(std::string("keygen ") + kDesk + " --seed 43 --pub e.pub --priv e.priv").code, 0);
  EXPECT_EQ(run("unsigncrypt --priv a.priv --pub e.pub --in c").code, 1);
}

TEST_F(Cli, AttackReports) {
  ASSERT_EQ(run("keygen --target im --n 9 --seed 51 --pub im.pub --priv im.priv").code, 0);
  const Result im = run("attack --pub im.pub --seed 1 --trials 100");
  EXPECT_EQ(im.code, 0);
  EXPECT_EQ(value(im.out, "success"), "true");
  EXPECT_EQ(value(im.out, "recovered"), "100");
  EXPECT_GE(std::stoi(value(im.out, "relation_dim")), 9);
  EXPECT_FALSE(value(im.out, "harvest_seconds").empty());
  EXPECT_FALSE(value(im.out, "attack_seconds").empty());

  // A single ciphertext: the recovered plaintext is printed.
  const auto kp = hpe::parse_im_private_key(slurp("im.priv"));
  const hpe::Vec x{1, 0, 1, 1, 0, 0, 1, 0, 1};
  put("ct", hpe::digits_to_string(2, kp.pub.encrypt(x)) + "\n");
  const Result one = run("attack --pub im.pub --in ct --seed 2");
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(value(one.out, "plaintext"), "101100101");

  // Fewer samples than bilinear monomials is a usage error.
  const Result starved = run("attack --pub im.pub --samples 10 --seed 3");
  EXPECT_EQ(starved.code, 64);

  ASSERT_EQ(run(std::string("keygen ") + kDesk + " --t 3 --seed 52 --pub h.pub --priv h.priv").code, 0);
  const Result hpe = run("attack --target hpe --pub h.pub --seed 4");
  EXPECT_EQ(hpe.code, 2);
  EXPECT_EQ(value(hpe.out, "relation_dim"), "0");
  EXPECT_EQ(value(hpe.out, "success"), "false");
}

TEST_F(Cli, Bench) {
  const Result r = run(std::string("bench ") + kDesk + " --seed 1 --trials 50");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(value(r.out, "trials"), "50");
  EXPECT_FALSE(value(r.out, "single_trial_rate").empty());
}

}  // namespace
