#include <doctest.h>

#include <set>

#include "oss/error.hpp"
#include "oss/keys.hpp"
#include "oss/sigscheme.hpp"
#include "support.hpp"

using namespace oss;

namespace {

template <typename F>
Errc error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected oss::Error");
  return Errc::invalid_parameter;
}

const KeyPair& small_keys() {
  static const KeyPair kp = import_keys(209, 6);
  return kp;
}

}  // namespace

TEST_CASE("sign_residue worked example n = 209") {
  const KeyPair& kp = small_keys();
  const SignaturePair sig = sign_residue(Residue(10, 209), kp.priv, 3);
  CHECK(sig.s1.value() == 38);
  CHECK(sig.s2.value() == 1);
  CHECK(verify_residue(Residue(10, 209), sig, kp.pub));
}

TEST_CASE("M = r^2 forces s2 = 0") {
  const KeyPair& kp = small_keys();
  CHECK(sign_residue(Residue(9, 209), kp.priv, 3).s2.value() == 0);
  std::mt19937_64 gen(4);
  SeededRng rng(4);
  const KeyPair big = keygen(128, 64, rng);
  for (int i = 0; i < 50; ++i) {
    const BigInt r = pick_r(big.pub.n, rng);
    const Residue m = canonical(r * r, big.pub.n);
    CHECK(sign_residue(m, big.priv, r).s2.is_zero());
  }
}

TEST_CASE("sign_residue on the published signature walkthrough") {
  const KeyPair kp = import_keys(239915931, 658);
  const SignaturePair sig = sign_residue(Residue(82, 239915931), kp.priv, 17);
  // 371/34 and -68103/17 reduced mod n.
  CHECK(sig.s1.value() == 232859591);
  CHECK(sig.s2.value() == 155235714);
  CHECK(verify_residue(Residue(82, 239915931), sig, kp.pub));
}

TEST_CASE("sign_residue rejects r sharing a factor with n") {
  const KeyPair& kp = small_keys();
  CHECK(error_code([&] { sign_residue(Residue(10, 209), kp.priv, 11); }) == Errc::not_coprime);
  CHECK(error_code([&] { sign_residue(Residue(10, 209), kp.priv, 0); }) == Errc::not_coprime);
}

TEST_CASE("verify_residue examples") {
  const KeyPair& kp = small_keys();
  CHECK(verify_residue(Residue(10, 209), {Residue(38, 209), Residue(1, 209)}, kp.pub));
  CHECK_FALSE(verify_residue(Residue(10, 209), {Residue(39, 209), Residue(1, 209)}, kp.pub));
  CHECK(verify_residue(Residue(9, 209), {Residue(3, 209), Residue(0, 209)}, kp.pub));
  // Residues under a different modulus never verify.
  CHECK_FALSE(verify_residue(Residue(10, 211), {Residue(38, 209), Residue(1, 209)}, kp.pub));
}

TEST_CASE("completeness: every M and every coprime r verify for n = 209") {
  const KeyPair& kp = small_keys();
  for (long r = 1; r < 209; ++r) {
    if (test::binary_gcd(r, 209) != 1) continue;
    for (long m = 0; m < 209; ++m) {
      const SignaturePair sig = sign_residue(Residue(m, 209), kp.priv, r);
      CHECK(verify_residue(Residue(m, 209), sig, kp.pub));
      // And the congruence by hand.
      const BigInt lhs = (sig.s1.value() * sig.s1.value() + BigInt(29) * sig.s2.value() * sig.s2.value()) % 209;
      CHECK(lhs == m);
    }
  }
}

TEST_CASE("pick_r") {
  SeededRng a(10), b(10);
  CHECK(pick_r(209, a) == pick_r(209, b));

  SeededRng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const BigInt r = pick_r(209, rng);
    CHECK(r >= 2);
    CHECK(r <= 208);
    CHECK(test::binary_gcd(r, 209) == 1);
  }

  const std::set<unsigned> coprime_to_15 = {2, 4, 7, 8, 11, 13, 14};
  std::set<unsigned> seen;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    SeededRng s(seed);
    seen.insert(pick_r(15, s).convert_to<unsigned>());
  }
  CHECK(seen == coprime_to_15);

  SeededRng tiny(0);
  CHECK(error_code([&] { pick_r(13, tiny); }) == Errc::invalid_parameter);
}

TEST_CASE("sign_bytes and verify_bytes") {
  SeededRng key_rng(2024);
  const KeyPair kp = keygen(128, 64, key_rng);

  SUBCASE("empty message") {
    SeededRng rng(1);
    const SignedMessage sm = sign_bytes("", kp.priv, rng);
    CHECK(sm.pairs.empty());
    CHECK(verify_bytes(sm, kp.pub));
  }

  SUBCASE("fixed r repeats pairs for repeated bytes") {
    const KeyPair table_keys = import_keys(BigInt("1000000000000000000000007"), 938);  // odd, > 1e9, coprime to 938 and 6186
    SeededRng rng(1);
    const SignedMessage sm = sign_bytes("Robbi", table_keys.priv, rng, RMode::fixed(6186));
    REQUIRE(sm.pairs.size() == 5);
    CHECK(sm.pairs[2] == sm.pairs[3]);
    CHECK(sm.pairs[0] != sm.pairs[1]);
    CHECK(verify_bytes(sm, table_keys.pub));
    CHECK(sm.r_mode == RMode::fixed(6186));
  }

  SUBCASE("fresh r gives distinct pairs for repeated bytes") {
    SeededRng rng(5);
    const SignedMessage sm = sign_bytes("Robbi", kp.priv, rng);
    CHECK(sm.pairs[2] != sm.pairs[3]);
    CHECK(verify_bytes(sm, kp.pub));
  }

  SUBCASE("fixed r must be coprime") {
    SeededRng rng(5);
    CHECK(error_code([&] { sign_bytes("x", small_keys().priv, rng, RMode::fixed(19)); }) == Errc::not_coprime);
    CHECK(error_code([&] { sign_bytes("x", small_keys().priv, rng, RMode::fixed(0)); }) == Errc::not_coprime);
  }

  SUBCASE("high bytes are signed as unsigned values") {
    SeededRng rng(6);
    const std::string msg = "\xff\x80\x00\x7f";
    const SignedMessage sm = sign_bytes(std::string(msg.data(), 4), kp.priv, rng);
    CHECK(verify_bytes(sm, kp.pub));
    CHECK(verify_residue(Residue(255, kp.pub.n), sm.pairs[0], kp.pub));
  }
}

TEST_CASE("verify_bytes detects edits and truncation") {
  SeededRng key_rng(77);
  const KeyPair kp = keygen(128, 64, key_rng);
  std::mt19937_64 gen(77);
  SeededRng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::string msg = test::printable_ascii(gen, 1 + gen() % 20);
    const SignedMessage sm = sign_bytes(msg, kp.priv, rng);
    REQUIRE(verify_bytes(sm, kp.pub));

    SignedMessage flipped = sm;
    const std::size_t pos = gen() % msg.size();
    flipped.message[pos] = static_cast<char>(flipped.message[pos] ^ (1 + gen() % 255));
    const Verification v = verify_bytes(flipped, kp.pub);
    CHECK_FALSE(v);
    CHECK_FALSE(v.per_byte[pos]);
    CHECK_FALSE(v.reason.has_value());

    SignedMessage truncated = sm;
    truncated.pairs.pop_back();
    const Verification t = verify_bytes(truncated, kp.pub);
    CHECK_FALSE(t);
    REQUIRE(t.reason.has_value());
    CHECK(*t.reason == Errc::length_mismatch);
  }
}

TEST_CASE("signatures under different r differ but both verify") {
  SeededRng rng(31);
  const KeyPair kp = keygen(128, 64, rng);
  const Residue m = canonical(123456789, kp.pub.n);
  const BigInt r1 = pick_r(kp.pub.n, rng);
  const BigInt r2 = pick_r(kp.pub.n, rng);
  const SignaturePair a = sign_residue(m, kp.priv, r1);
  const SignaturePair b = sign_residue(m, kp.priv, r2);
  CHECK(a != b);
  CHECK(verify_residue(m, a, kp.pub));
  CHECK(verify_residue(m, b, kp.pub));
  // -r gives the same s1 and negated s2, also valid.
  const SignaturePair c = sign_residue(m, kp.priv, kp.pub.n - r1);
  CHECK(c.s1 == -a.s1);
  CHECK(verify_residue(m, c, kp.pub));
}
