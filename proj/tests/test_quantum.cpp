// Copyright 2026 The seqproc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "seqproc/quantum.hpp"

using namespace seqproc;
using cd = std::complex<double>;

namespace {

const cd kI(0, 1);
const double kS = 1 / std::sqrt(2.0);

// Two-photon transform from U (x) U restricted to the symmetric subspace.
TwoPhotonUnitary symmetric_lift(const ModeUnitary &u) {
  Eigen::Matrix4cd uu;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) uu(2 * a + b, 2 * c + d) = u(a, c) * u(b, d);
  Eigen::Matrix<cd, 4, 3> basis = Eigen::Matrix<cd, 4, 3>::Zero();
  basis(0, 0) = 1;
  basis(1, 1) = kS;
  basis(2, 1) = kS;
  basis(3, 2) = 1;
  return basis.adjoint() * uu * basis;
}

ModeUnitary random_unitary(std::mt19937_64 &rng) {
  std::normal_distribution<double> n;
  Eigen::Matrix2cd g;
  for (int i = 0; i < 4; ++i) g(i / 2, i % 2) = cd(n(rng), n(rng));
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
  return qr.householderQ();
}

PureState state_of(std::initializer_list<cd> amps) {
  PureState s;
  s.amplitudes = Eigen::VectorXcd(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) s.amplitudes(i++) = a;
  return s;
}

}  // namespace

TEST_SUITE("quantum") {
  TEST_CASE("gate tables") {
    CHECK(gate_for(0, 0, GateFamily::kStandard).isApprox(ModeUnitary::Identity()));
    ModeUnitary x;
    x << 0, 1, 1, 0;
    CHECK(gate_for(0, 1, GateFamily::kStandard).isApprox(x));
    ModeUnitary h;
    h << kS, kI * kS, kI * kS, kS;
    CHECK(gate_for(1, 0, GateFamily::kStandard).isApprox(h));
    ModeUnitary alt;
    alt << 0, 1, -1, 0;
    CHECK(gate_for(0, 1, GateFamily::kAltFirst).isApprox(alt));
    ModeUnitary z;
    z << -1, 0, 0, 1;
    CHECK(gate_for(1, 0, GateFamily::kAltFirst).isApprox(z));
    for (auto family : {GateFamily::kStandard, GateFamily::kAltFirst})
      for (int b = 0; b < 4; ++b) CHECK(is_unitary(gate_for(b >> 1, b & 1, family), 1e-12));
    CHECK_THROWS_AS(gate_for(2, 0, GateFamily::kStandard), ContractError);
  }

  TEST_CASE("two-photon lift examples") {
    CHECK(lift_two_photon(ModeUnitary::Identity()).isApprox(TwoPhotonUnitary::Identity()));
    ModeUnitary x;
    x << 0, 1, 1, 0;
    TwoPhotonUnitary swap;
    swap << 0, 0, 1, 0, 1, 0, 1, 0, 0;
    CHECK(lift_two_photon(x).isApprox(swap));
    Eigen::Vector3cd out = lift_two_photon(gate_for(1, 0, GateFamily::kStandard)) * Eigen::Vector3cd(1, 0, 0);
    CHECK(std::abs(out(0) - cd(0.5, 0)) < 1e-12);
    CHECK(std::abs(out(1) - kI * kS) < 1e-12);
    CHECK(std::abs(out(2) - cd(-0.5, 0)) < 1e-12);
    CHECK(std::abs(out.norm() - 1) < 1e-12);
    ModeUnitary bad;
    bad << 1, 1, 0, 1;
    CHECK_THROWS_AS(lift_two_photon(bad), ContractError);
  }

  TEST_CASE("lift of random unitaries is unitary and matches the symmetric-subspace oracle") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10000; ++trial) {
      ModeUnitary u = random_unitary(rng);
      TwoPhotonUnitary lifted = lift_two_photon(u);
      CHECK(is_unitary(lifted, 1e-10));
      CHECK((lifted - symmetric_lift(u)).norm() < 1e-10);
    }
  }

  TEST_CASE("single-qubit circuit examples") {
    auto spec = make_processor(ProcessorKind::kQubit3);
    auto zero = run_circuit(spec, InputWord{0, 0, 0, 0, 0, 0});
    CHECK(std::abs(zero.amplitudes(0) - cd(1, 0)) < 1e-12);
    CHECK(std::abs(zero.amplitudes(1)) < 1e-12);

    auto sup = run_circuit(spec, InputWord{0, 0, 1, 0, 0, 0});
    CHECK(std::abs(sup.amplitudes(0) - cd(kS, 0)) < 1e-12);
    CHECK(std::abs(sup.amplitudes(1) - kI * kS) < 1e-12);
    CHECK(classify_deterministic(sup) == 0);

    auto twice = run_circuit(spec, InputWord{0, 0, 1, 0, 1, 0});
    CHECK(twice.probability(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(classify_deterministic(twice) == -1);
    CHECK(classify_deterministic(zero) == 1);
  }

  TEST_CASE("classification of two-photon states") {
    CHECK(classify_deterministic(state_of({0, 0, 1})) == -1);
    CHECK(classify_deterministic(state_of({1, 0, 0})) == 1);
    CHECK(classify_deterministic(state_of({0, 1, 0})) == 0);
    CHECK(classify_deterministic(state_of({0.5, kI * kS, -0.5})) == 0);
    CHECK_THROWS_AS(classify_deterministic(state_of({1, 1, 0})), ContractError);
  }

  TEST_CASE("every circuit output is normalized and deterministic entries are sharp") {
    for (auto kind : {ProcessorKind::kQubit3, ProcessorKind::kQutrit3, ProcessorKind::kQutrit4}) {
      auto spec = make_processor(kind);
      auto target = generate_target(spec);
      for (std::uint32_t w = 0; w < spec.topology.num_words(); ++w) {
        auto s = run_circuit(spec, w);
        CHECK(std::abs(s.amplitudes.squaredNorm() - 1) < 1e-10);
        if (target[w] != 0) {
          const std::size_t basis = target[w] < 0 ? 0 : s.dimension() - 1;
          CHECK(s.probability(basis) >= 1 - 1e-9);
        }
      }
    }
  }

  TEST_CASE("generated targets reproduce the reference matrices") {
    CHECK(generate_target(make_processor(ProcessorKind::kQubit3)).values() == fixtures::kQubit3Matrix);
    CHECK(generate_target(make_processor(ProcessorKind::kQutrit4)).values() == fixtures::kQutrit4Matrix);
  }

  TEST_CASE("sign convention negates values and keeps the zero pattern") {
    for (auto kind : {ProcessorKind::kQubit3, ProcessorKind::kQutrit3, ProcessorKind::kQutrit4}) {
      auto spec = make_processor(kind);
      auto negative = generate_target(spec, SignConvention::kFirstBasisNegative);
      auto positive = generate_target(spec, SignConvention::kFirstBasisPositive);
      CHECK(positive == negative.negated());
    }
    CHECK(parse_sign_convention("first-basis-positive") == SignConvention::kFirstBasisPositive);
    CHECK_THROWS_AS(parse_sign_convention("text"), ContractError);
  }

  TEST_CASE("three-module trit target is the first block up to a row relabeling") {
    auto target = generate_target(make_processor(ProcessorKind::kQutrit3));
    auto rows = reshape(target, 2);
    auto block = reshape(fixtures::qutrit3_block_target(), 2);
    std::vector<std::vector<std::int8_t>> mine, printed;
    for (std::size_t r = 0; r < 4; ++r) {
      mine.emplace_back(rows.row(r).begin(), rows.row(r).end());
      printed.emplace_back(block.row(r).begin(), block.row(r).end());
    }
    std::sort(mine.begin(), mine.end());
    std::sort(printed.begin(), printed.end());
    CHECK(mine == printed);
    // It coincides exactly with the block whose first gate acts trivially.
    std::vector<std::int8_t> last_block(fixtures::kQutrit4Matrix.begin() + 192, fixtures::kQutrit4Matrix.end());
    CHECK(target.values() == last_block);
  }

  TEST_CASE("shot sampling is reproducible and respects deterministic words") {
    auto spec = make_processor(ProcessorKind::kQutrit4);
    auto target = generate_target(spec);
    auto a = sample_shots(spec, 3000, 42);
    auto b = sample_shots(spec, 3000, 42);
    auto c = sample_shots(spec, 3000, 42, 1.0);
    REQUIRE(a.size() == b.size());
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      same = same && a[i].word == b[i].word && a[i].outcome == b[i].outcome && a[i].word == c[i].word &&
             a[i].outcome == c[i].outcome;
    }
    CHECK(same);
    std::size_t accepted = 0, discarded = 0;
    for (const auto &s : a) {
      if (s.discarded()) {
        ++discarded;
        CHECK(s.basis == 1);
        continue;
      }
      ++accepted;
      if (target[s.word] != 0) CHECK(s.outcome == target[s.word]);
    }
    CHECK(accepted == 3000);
    CHECK(discarded > 0);
    CHECK_THROWS_AS(sample_shots(spec, 10, 1, 1.5), ContractError);
  }

  TEST_CASE("white noise pulls deterministic words toward chance") {
    auto spec = make_processor(ProcessorKind::kQubit3);
    auto target = generate_target(spec);
    auto shots = sample_shots(spec, 20000, 9, 0.0);
    auto stats = subset_statistics(shots, target, 1000);
    CHECK(std::abs(stats.mean) < 5 * stats.standard_error + 1e-9);
  }

  TEST_CASE("subset statistics") {
    auto target = fixtures::qubit3_target();
    std::vector<ShotRecord> perfect;
    for (std::uint32_t w = 0; w < 64; ++w) {
      if (target[w] != 0) perfect.push_back({w, target[w], 0});
    }
    auto all = subset_statistics(perfect, target, 8);
    CHECK(all.correlations.size() == 4);
    CHECK(all.mean == doctest::Approx(1.0));
    CHECK(all.standard_error == doctest::Approx(0.0));

    // Two-word subsets with correlations 1, 1/2, 1, 1/2.
    std::vector<ShotRecord> mixed{{0, -1, 0}, {1, 1, 0}, {0, -1, 0}, {2, 1, 0},
                                  {0, -1, 0}, {1, 1, 0}, {0, -1, 0}, {2, -1, 0}, {5, 0, 1}};
    auto stats = subset_statistics(mixed, target, 2);
    REQUIRE(stats.correlations.size() == 4);
    CHECK(stats.correlations[0] == doctest::Approx(1.0));
    CHECK(stats.correlations[1] == doctest::Approx(0.5));
    CHECK(stats.discarded == 1);
    CHECK(stats.accepted == 8);
    double mean = 0;
    for (double c : stats.correlations) mean += c;
    mean /= 4;
    double var = 0;
    for (double c : stats.correlations) var += (c - mean) * (c - mean);
    var /= 3;
    CHECK(stats.mean == doctest::Approx(mean));
    CHECK(stats.standard_error == doctest::Approx(std::sqrt(var / 4)));
  }

  TEST_CASE("ideal sampler means sit at one half") {
    for (auto [kind, shots] : {std::pair{ProcessorKind::kQubit3, 85000}, std::pair{ProcessorKind::kQutrit4, 65000}}) {
      auto spec = make_processor(kind);
      auto target = generate_target(spec);
      auto stats = subset_statistics(sample_shots(spec, static_cast<std::size_t>(shots), 7), target, 1000);
      CHECK(stats.correlations.size() == static_cast<std::size_t>(shots / 1000));
      CHECK(std::abs(stats.mean - 0.5) < 3 * stats.standard_error);
    }
  }
}
