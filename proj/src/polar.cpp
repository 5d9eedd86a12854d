#include "rcpolar/polar.hpp"

#include <algorithm>

namespace rcpolar {

void CodeSpec::validate() const {
  if (n < 0 || n > 24) throw ConfigError("CodeSpec: n out of range");
  if (info_set.empty()) throw ConfigError("CodeSpec: empty info set");
  if (!std::is_sorted(info_set.begin(), info_set.end()))
    throw ConfigError("CodeSpec: info set not sorted");
  if (std::adjacent_find(info_set.begin(), info_set.end()) != info_set.end())
    throw ConfigError("CodeSpec: duplicate info index");
  if (info_set.back() >= (uint32_t)N()) throw ConfigError("CodeSpec: info index >= N");
  if (crc_len < 0 || crc_len >= k()) throw ConfigError("CodeSpec: crc_len must be < k");
}

IndexSet bit_reversal_perm(int n) {
  if (n < 0) throw std::invalid_argument("bit_reversal_perm: n < 0");
  IndexSet p(1u << n);
  for (uint32_t i = 0; i < p.size(); i++) p[i] = reverse_bits(i, n);
  return p;
}

void encode_natural_inplace(BitVec& x) {
  size_t N = x.size();
  if (!is_pow2(N)) throw std::invalid_argument("encode: length not a power of two");
  for (size_t s = 1; s < N; s <<= 1)
    for (size_t i = 0; i < N; i += 2 * s)
      for (size_t j = i; j < i + s; j++) x[j] ^= x[j + s];
}

BitVec encode_natural(const BitVec& u, int n) {
  if (u.size() != (size_t)1 << n) throw std::invalid_argument("encode: length mismatch");
  BitVec x = u;
  encode_natural_inplace(x);
  return x;
}

BitVec encode(const BitVec& u, int n) {
  if (u.size() != (size_t)1 << n) throw std::invalid_argument("encode: length mismatch");
  BitVec x(u.size());
  for (uint32_t j = 0; j < x.size(); j++) x[j] = u[reverse_bits(j, n)];
  encode_natural_inplace(x);
  return x;
}

BitVec place_info(const CodeSpec& spec, const BitVec& info) {
  if ((int)info.size() != spec.k()) throw std::invalid_argument("place_info: length mismatch");
  BitVec u(spec.N(), 0);
  for (size_t i = 0; i < info.size(); i++) u[spec.info_set[i]] = info[i];
  return u;
}

BitVec extract_info(const CodeSpec& spec, const BitVec& u) {
  BitVec info(spec.k());
  for (size_t i = 0; i < info.size(); i++) info[i] = u[spec.info_set[i]];
  return info;
}

BitVec encode_payload(const CodeSpec& spec, const BitVec& payload) {
  if ((int)payload.size() != spec.payload_len())
    throw std::invalid_argument("encode_payload: length mismatch");
  BitVec info = spec.crc_len > 0 ? spec.crc().attach(payload) : payload;
  return encode(place_info(spec, info), spec.n);
}

BitVec systematic_encode(const BitVec& info, const CodeSpec& spec) {
  if ((int)info.size() != spec.k())
    throw std::invalid_argument("systematic_encode: length mismatch");
  BitVec x = place_info(spec, info);
  encode_natural_inplace(x);
  // zero the frozen positions of the intermediate word, encode again;
  // works because F^{(x)n} is an involution
  BitVec is_info(spec.N(), 0);
  for (uint32_t i : spec.info_set) is_info[i] = 1;
  for (int i = 0; i < spec.N(); i++)
    if (!is_info[i]) x[i] = 0;
  encode_natural_inplace(x);
  return x;
}

}  // namespace rcpolar
