#include <vector>

#include "doctest.h"
#include "rcpolar/crc.hpp"
#include "rcpolar/rng.hpp"

using namespace rcpolar;

namespace {

// independent oracle: schoolbook GF(2) long division of payload * x^len by
// the generator polynomial, bit arrays only
uint32_t crc_longdiv(const BitVec& payload, int len, uint32_t poly) {
  std::vector<uint8_t> work(payload.begin(), payload.end());
  work.insert(work.end(), len, 0);
  std::vector<uint8_t> gen(len + 1);
  gen[0] = 1;  // implicit leading term
  for (int i = 0; i < len; i++) gen[1 + i] = uint8_t((poly >> (len - 1 - i)) & 1u);
  for (size_t i = 0; i + len < work.size(); i++) {
    if (!work[i]) continue;
    for (int j = 0; j <= len; j++) work[i + j] ^= gen[j];
  }
  uint32_t rem = 0;
  for (int i = 0; i < len; i++) rem = (rem << 1) | work[payload.size() + i];
  return rem;
}

BitVec random_bits(Rng& rng, size_t n) {
  BitVec v(n);
  for (auto& b : v) b = rng.bit();
  return v;
}

}  // namespace

TEST_CASE("compute matches long division oracle") {
  Rng rng(2024);
  Crc crcs[] = {crc24a(), Crc{8, 0x07}, Crc{16, 0x1021}, Crc{4, 0x3}};
  for (const Crc& c : crcs) {
    for (int t = 0; t < 50; t++) {
      BitVec p = random_bits(rng, 1 + rng.below(120));
      CHECK(c.compute(p) == crc_longdiv(p, c.len, c.poly));
    }
  }
}

TEST_CASE("all-zero payload gives all-zero crc") {
  BitVec p(40, 0);
  CHECK(crc24a().compute(p) == 0);
  BitVec w = crc24a().attach(p);
  CHECK(w.size() == 64);
  for (uint8_t b : w) CHECK(b == 0);
}

TEST_CASE("attach then check round trips") {
  Rng rng(7);
  Crc c = crc24a();
  for (int t = 0; t < 100; t++) {
    BitVec p = random_bits(rng, 1 + rng.below(200));
    BitVec w = c.attach(p);
    REQUIRE(w.size() == p.size() + 24);
    CHECK(c.check(w));
  }
}

TEST_CASE("any single bit flip is detected") {
  Rng rng(8);
  Crc c = crc24a();
  for (int t = 0; t < 100; t++) {
    BitVec w = c.attach(random_bits(rng, 1 + rng.below(100)));
    size_t pos = rng.below(w.size());
    w[pos] ^= 1;
    CHECK(!c.check(w));
  }
}

TEST_CASE("crc is linear over GF(2)") {
  // zero initial register and no final xor make the remainder map linear
  Rng rng(9);
  Crc c = crc24a();
  for (int t = 0; t < 50; t++) {
    size_t n = 1 + rng.below(90);
    BitVec a = random_bits(rng, n), b = random_bits(rng, n), x(n);
    for (size_t i = 0; i < n; i++) x[i] = a[i] ^ b[i];
    CHECK(c.compute(x) == (c.compute(a) ^ c.compute(b)));
  }
}

TEST_CASE("check rejects words shorter than the crc") {
  BitVec w(10, 0);
  CHECK_THROWS(crc24a().check(w));
}
