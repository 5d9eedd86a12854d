#include "rcpolar/crc.hpp"

namespace rcpolar {

uint32_t Crc::compute(const BitVec& bits) const {
  if (len <= 0) return 0;
  uint32_t reg = 0;
  const uint32_t mask = (len == 32) ? ~0u : ((1u << len) - 1);
  for (uint8_t b : bits) {
    uint32_t fb = ((reg >> (len - 1)) ^ b) & 1u;
    reg = (reg << 1) & mask;
    if (fb) reg ^= poly & mask;
  }
  return reg;
}

BitVec Crc::attach(const BitVec& payload) const {
  if (payload.empty()) throw std::invalid_argument("crc_attach: empty payload");
  BitVec out = payload;
  uint32_t r = compute(payload);
  for (int i = len - 1; i >= 0; i--) out.push_back((r >> i) & 1u);
  return out;
}

bool Crc::check(const BitVec& word) const {
  if ((int)word.size() < len) throw std::invalid_argument("crc_check: word shorter than crc");
  if (len == 0) return true;
  return compute(word) == 0;  // division of payload+crc leaves zero remainder
}

}  // namespace rcpolar
