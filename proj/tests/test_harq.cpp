#include <cmath>

#include "doctest.h"
#include "rcpolar/construction.hpp"
#include "rcpolar/harq.hpp"

using namespace rcpolar;

namespace {

PunctureOrder identity_order(int p) {
  PunctureOrder po;
  po.base_n = p;
  for (uint32_t i = 0; i < (1u << p); i++) po.order.push_back(i);
  return po;
}

RateMatchConfig make_cfg(int p, int q, uint32_t L) {
  RateMatchConfig cfg;
  cfg.p = p;
  cfg.q = q;
  cfg.L = L;
  cfg.order = identity_order(p);
  cfg.validate();
  return cfg;
}

}  // namespace

TEST_CASE("start column rule") {
  for (int r = 1; r <= 4; r++) CHECK(harq_start_column(HarqScheme::CC, r, 4, 5) == 0);
  uint32_t want[] = {0, 8, 16, 24};
  for (int r = 1; r <= 4; r++) CHECK(harq_start_column(HarqScheme::IR, r, 4, 5) == want[r - 1]);
  CHECK(harq_start_column(HarqScheme::IR, 1, 1, 5) == 0);
  CHECK_THROWS(harq_start_column(HarqScheme::IR, 0, 4, 5));
  CHECK_THROWS(harq_start_column(HarqScheme::IR, 5, 4, 5));
}

TEST_CASE("start column rounds when t does not divide the columns") {
  // shift = round((r-1) * 32 / 3)
  CHECK(harq_start_column(HarqScheme::IR, 2, 3, 5) == 11);
  CHECK(harq_start_column(HarqScheme::IR, 3, 3, 5) == 21);
}

TEST_CASE("chase combining doubles the buffer where it transmits") {
  RateMatchConfig cfg = make_cfg(2, 3, 24);  // N=32, 3 of 4 columns
  HarqSession s = make_session(cfg, Modulation::BPSK, HarqScheme::CC, 3);
  SoftBuffer round(24, 1.5);
  RoundPlan p1 = next_redundancy(s);
  CHECK(p1.r == 1);
  CHECK(p1.start_column == 0);
  combine(s, round);
  SoftBuffer after1 = s.buffer;
  RoundPlan p2 = next_redundancy(s);
  CHECK(p2.start_column == 0);
  combine(s, round);
  for (size_t i = 0; i < 32; i++) {
    CHECK(s.buffer[i] == doctest::Approx(2.0 * after1[i]).epsilon(1e-15));
  }
  int zeros = 0;
  for (double v : s.buffer) zeros += (v == 0.0);
  CHECK(zeros == 8);  // the untransmitted column stays silent under CC
}

TEST_CASE("incremental redundancy covers every position") {
  RateMatchConfig cfg = make_cfg(3, 3, 16);  // N=64, t*L = N
  HarqSession s = make_session(cfg, Modulation::BPSK, HarqScheme::IR, 4);
  for (int r = 1; r <= 4; r++) {
    RoundPlan plan = next_redundancy(s);
    CHECK(plan.start_column == harq_start_column(HarqScheme::IR, r, 4, 3));
    combine(s, SoftBuffer(16, 1.0));
  }
  for (double v : s.buffer) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(next_redundancy(s), std::runtime_error);
}

TEST_CASE("cc session buffer equals a scaled single shot") {
  RateMatchConfig cfg = make_cfg(2, 4, 40);
  Rng rng(91);
  SoftBuffer round(40);
  for (auto& v : round) v = 2.0 * rng.uniform() - 1.0;
  HarqSession s = make_session(cfg, Modulation::BPSK, HarqScheme::CC, 3);
  for (int r = 0; r < 3; r++) {
    next_redundancy(s);
    combine(s, round);
  }
  SoftBuffer single = derate_match(round, cfg);
  for (size_t i = 0; i < single.size(); i++) {
    CHECK(s.buffer[i] == doctest::Approx(3.0 * single[i]).epsilon(1e-12));
  }
}

TEST_CASE("throughput formula") {
  CHECK(throughput(0.5, Modulation::QPSK, 1.0, 1.0) == 0.0);
  CHECK(throughput(0.5, Modulation::QPSK, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(throughput(11.0 / 32.0, Modulation::QAM16, 0.1, 2.5) ==
        doctest::Approx(0.495).epsilon(1e-12));
  CHECK_THROWS(throughput(0.5, Modulation::QPSK, -0.1, 1.0));
  CHECK_THROWS(throughput(0.5, Modulation::QPSK, 0.5, 0.9));
}

TEST_CASE("run_session succeeds on the first clean round") {
  CodeSpec spec;
  spec.n = 5;
  spec.info_set = select_info_set(ga_construct(5, 3.0, {}), 12);
  RateMatchConfig cfg = make_cfg(2, 3, 32);
  Rng rng(92);
  BitVec payload(12);
  for (auto& b : payload) b = rng.bit();
  BitVec x = encode_payload(spec, payload);
  HarqSession s = make_session(cfg, Modulation::BPSK, HarqScheme::IR, 4);
  auto round_llrs = [&](const RoundPlan& plan) {
    BitVec tx = select_bits(build_buffer(x, cfg), cfg.L, plan.start_column);
    SoftBuffer llrs(tx.size());
    for (size_t i = 0; i < tx.size(); i++) llrs[i] = tx[i] ? -8.0 : 8.0;
    return llrs;
  };
  HarqOutcome out = run_session(s, spec, 1, false, round_llrs, &payload);
  CHECK(out.success);
  CHECK(out.rounds == 1);
  CHECK(s.success_round == 1);
  CHECK(out.result.payload == payload);
}

TEST_CASE("run_session exhausts on erased rounds") {
  CodeSpec spec;
  spec.n = 5;
  spec.info_set = select_info_set(ga_construct(5, 3.0, {}), 12);
  RateMatchConfig cfg = make_cfg(2, 3, 32);
  Rng rng(93);
  BitVec payload(12, 1);  // all-ones payload cannot come out of zero llrs
  HarqSession s = make_session(cfg, Modulation::BPSK, HarqScheme::CC, 3);
  auto round_llrs = [&](const RoundPlan&) { return SoftBuffer(32, 0.0); };
  HarqOutcome out = run_session(s, spec, 1, false, round_llrs, &payload);
  CHECK(!out.success);
  CHECK(out.rounds == 3);
  CHECK(s.success_round == 0);
}

TEST_CASE("run_session uses the crc for acknowledgement when present") {
  CodeSpec spec;
  spec.n = 6;
  spec.crc_len = 8;
  spec.crc_poly = 0x07;
  spec.info_set = select_info_set(ga_construct(6, 2.5, {}), 24);
  RateMatchConfig cfg = make_cfg(3, 3, 64);
  Rng rng(94);
  BitVec payload(16);
  for (auto& b : payload) b = rng.bit();
  BitVec x = encode_payload(spec, payload);
  HarqSession s = make_session(cfg, Modulation::BPSK, HarqScheme::IR, 2);
  auto round_llrs = [&](const RoundPlan& plan) {
    BitVec tx = select_bits(build_buffer(x, cfg), cfg.L, plan.start_column);
    SoftBuffer llrs(tx.size());
    for (size_t i = 0; i < tx.size(); i++) llrs[i] = tx[i] ? -8.0 : 8.0;
    return llrs;
  };
  HarqOutcome out = run_session(s, spec, 4, true, round_llrs, nullptr);
  CHECK(out.success);
  CHECK(out.result.crc_pass);
  CHECK(out.result.payload == payload);
}

TEST_CASE("ir assignments follow the shifted start columns") {
  RateMatchConfig cfg = make_cfg(5, 5, 256);
  HarqSession s = make_session(cfg, Modulation::QAM16, HarqScheme::IR, 4);
  for (int r = 1; r <= 4; r++) {
    RoundPlan plan = next_redundancy(s);
    CHECK(plan.assignment.start_column == harq_start_column(HarqScheme::IR, r, 4, 5));
    combine(s, SoftBuffer(256, 1.0));
  }
}
