// Copyright 2026 The qchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qchan/channels.hpp"
#include "qchan/errors.hpp"
#include "qchan/generators.hpp"

namespace qchan {
namespace {

ComplexMatrix pauli_z() {
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

ComplexVector plus() { return ComplexVector::Ones(2) / std::sqrt(2.0); }

ComplexMatrix random_density(Index d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

TEST(ValidateCptp, Examples) {
  EXPECT_NO_THROW(validate_cptp({ComplexMatrix::Identity(2, 2)}));
  const double p = 0.5;
  EXPECT_NO_THROW(validate_cptp(
      {std::sqrt(p) * ComplexMatrix::Identity(2, 2), std::sqrt(1 - p) * pauli_z()}));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 0.9;
  try {
    validate_cptp({d});
    FAIL() << "expected NotTracePreservingError";
  } catch (const NotTracePreservingError& e) {
    EXPECT_NEAR(e.deviation(), 1.0 - 0.81, 1e-12);
  }
}

TEST(ValidateCptp, ShapeErrors) {
  EXPECT_THROW(validate_cptp({ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)}),
               DimensionError);
  EXPECT_THROW(validate_cptp({ComplexMatrix::Identity(2, 2)}, 3, 2), DimensionError);
  EXPECT_THROW(validate_cptp({}), DimensionError);
}

TEST(Apply, IdentityAndFullDepolarizing) {
  Rng rng(Seed{1});
  const ComplexMatrix rho = random_density(2, rng);
  EXPECT_LT(max_abs_diff(qchan::apply(KrausChannel::identity(2), rho), rho), 1e-15);
  const KrausChannel dep = named_channel("depolarizing", 1.0, 2);
  EXPECT_LT(max_abs_diff(qchan::apply(dep, rho), ComplexMatrix::Identity(2, 2) / 2.0), 1e-14);
  EXPECT_THROW(qchan::apply(dep, ComplexMatrix::Identity(3, 3)), DimensionError);
}

TEST(Choi, IdentityIsUnnormalizedBellProjector) {
  const ChoiMatrix c = choi(KrausChannel::identity(2));
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0;
  EXPECT_LT(max_abs_diff(c.matrix, outer(phi)), 1e-15);
}

TEST(Choi, ConstantPureIsIdentityTensorOmega) {
  const ComplexVector w = plus();
  const ChoiMatrix c = choi(constant_pure_channel(w, 3));
  EXPECT_LT(max_abs_diff(c.matrix, oracle::kron(ComplexMatrix::Identity(3, 3), outer(w))), 1e-15);
}

TEST(Choi, MatchesBlockOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const KrausChannel ch = random_cptp(2 + seed % 2, 1 + seed % 3, 3 + seed % 4, Seed{seed});
    EXPECT_LT(max_abs_diff(choi(ch).matrix, oracle::choi(ch.kraus())), 1e-13);
  }
}

TEST(KrausFromChoi, IdentityGivesSingleOperator) {
  const KrausChannel k = kraus_from_choi(choi(KrausChannel::identity(3)));
  ASSERT_EQ(k.kraus().size(), 1u);
  EXPECT_LT(max_abs_diff(k.kraus()[0], ComplexMatrix::Identity(3, 3)), 1e-12);
}

TEST(KrausFromChoi, DephasingRoundtrip) {
  const KrausChannel deph = validate_cptp(
      {std::sqrt(0.5) * ComplexMatrix::Identity(2, 2), std::sqrt(0.5) * pauli_z()});
  const KrausChannel back = kraus_from_choi(choi(deph));
  EXPECT_EQ(back.kraus().size(), 2u);
  EXPECT_TRUE(channels_equal(deph, back));
}

TEST(KrausFromChoi, RedundantListIsMinimized) {
  const KrausChannel deph = validate_cptp(
      {std::sqrt(0.5) * ComplexMatrix::Identity(2, 2), std::sqrt(0.5) * pauli_z()});
  // Split each operator in two equal halves: 4 operators, same channel.
  std::vector<ComplexMatrix> four;
  for (const auto& x : deph.kraus()) {
    four.push_back(x / std::sqrt(2.0));
    four.push_back(x / std::sqrt(2.0));
  }
  const KrausChannel redundant = validate_cptp(four);
  const KrausChannel minimal = kraus_from_choi(choi(redundant));
  EXPECT_EQ(minimal.kraus().size(), 2u);
  EXPECT_EQ(static_cast<Index>(minimal.kraus().size()),
            oracle::gaussian_rank(oracle::choi(redundant.kraus()), 1e-8));
  EXPECT_TRUE(channels_equal(redundant, minimal));
}

TEST(KrausFromChoi, RejectsInvalidChoi) {
  ChoiMatrix bad{2, 2, -ComplexMatrix::Identity(4, 4)};
  EXPECT_THROW(kraus_from_choi(bad), InvalidChoiError);
  ChoiMatrix not_tp{2, 2, ComplexMatrix::Identity(4, 4)};
  EXPECT_THROW(kraus_from_choi(not_tp), InvalidChoiError);
  ChoiMatrix wrong{2, 2, ComplexMatrix::Identity(3, 3)};
  EXPECT_THROW(kraus_from_choi(wrong), InvalidChoiError);
}

TEST(Tensor, IdentitiesAndUnitaries) {
  EXPECT_TRUE(channels_equal(tensor(KrausChannel::identity(2), KrausChannel::identity(3)),
                             KrausChannel::identity(6)));
  Rng rng(Seed{4});
  const ComplexMatrix u = haar_unitary(2, rng), v = haar_unitary(3, rng);
  const ComplexVector psi = random_unit_vector(6, rng);
  const ComplexMatrix out =
      qchan::apply(tensor(KrausChannel::conjugation(u), KrausChannel::conjugation(v)), outer(psi));
  const ComplexMatrix uv = oracle::kron(u, v);
  EXPECT_LT(max_abs_diff(out, uv * outer(psi) * uv.adjoint()), 1e-13);
}

TEST(Compose, IdentityIsNeutralAndOrderMatters) {
  const KrausChannel ch = random_cptp(2, 3, 2, Seed{5});
  EXPECT_TRUE(channels_equal(compose(KrausChannel::identity(3), ch), ch));
  EXPECT_TRUE(channels_equal(compose(ch, KrausChannel::identity(2)), ch));
  EXPECT_THROW(compose(ch, ch), DimensionError);
  Rng rng(Seed{6});
  const KrausChannel after = random_cptp(3, 2, 2, rng);
  const ComplexMatrix rho = random_density(2, rng);
  EXPECT_LT(max_abs_diff(qchan::apply(compose(after, ch), rho), qchan::apply(after, qchan::apply(ch, rho))), 1e-13);
}

TEST(ChannelsEqual, Examples) {
  // Remix Kraus operators by a random unitary on the index space.
  const KrausChannel ch = random_cptp(3, 3, 3, Seed{7});
  Rng rng(Seed{8});
  const ComplexMatrix w = haar_unitary(3, rng);
  std::vector<ComplexMatrix> remixed(3, ComplexMatrix::Zero(3, 3));
  for (Index j = 0; j < 3; ++j)
    for (Index k = 0; k < 3; ++k) remixed[j] += w(j, k) * ch.kraus()[k];
  EXPECT_TRUE(channels_equal(ch, validate_cptp(remixed)));
  EXPECT_FALSE(channels_equal(KrausChannel::identity(2), named_channel("dephasing", 0.1, 2)));
  EXPECT_TRUE(channels_equal(ch, kraus_from_choi(choi(ch))));
}

TEST(Classify, Examples) {
  const ChannelClass h = classify(KrausChannel::conjugation(hadamard()));
  EXPECT_EQ(h.tag, ChannelTag::Unitary);
  ASSERT_TRUE(h.isometry.has_value());
  // Witness equals H up to a global phase.
  const Complex phase = (*h.isometry)(0, 0) / hadamard()(0, 0);
  EXPECT_LT(max_abs_diff(*h.isometry, phase * hadamard()), 1e-12);

  const ComplexVector w = plus();
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2), k1 = ComplexMatrix::Zero(2, 2);
  k0.col(0) = w;
  k1.col(1) = w;
  const ChannelClass cp = classify(validate_cptp({k0, k1}));
  EXPECT_EQ(cp.tag, ChannelTag::ConstantPure);
  ASSERT_TRUE(cp.omega.has_value());
  EXPECT_NEAR(std::abs(cp.omega->dot(w)), 1.0, 1e-12);

  const ChannelClass deph = classify(named_channel("dephasing", 0.5, 2));
  EXPECT_EQ(deph.tag, ChannelTag::Other);
  EXPECT_EQ(deph.kraus_rank, 2);
  EXPECT_FALSE(is_pure_preserving_behavioral(named_channel("dephasing", 0.5, 2), 50, Seed{0})
                   .pure_preserving);
}

TEST(Classify, IsometricAndRankOneNonConstant) {
  const ChannelClass iso = classify(KrausChannel::conjugation(random_isometry(2, 4, Seed{1})));
  EXPECT_EQ(iso.tag, ChannelTag::Isometric);
  // Measure-and-prepare onto the computational basis: rank-1 Kraus operators,
  // not constant.
  std::vector<ComplexMatrix> ops;
  for (Index k = 0; k < 2; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(2, 2);
    e(k, k) = 1.0;
    ops.push_back(e);
  }
  EXPECT_EQ(classify(validate_cptp(ops)).tag, ChannelTag::Other);
}

TEST(PurityProbe, Examples) {
  Rng rng(Seed{9});
  EXPECT_TRUE(is_pure_preserving_behavioral(KrausChannel::conjugation(haar_unitary(3, rng)), 50,
                                            Seed{1})
                  .pure_preserving);
  EXPECT_TRUE(
      is_pure_preserving_behavioral(constant_pure_channel(plus(), 3), 50, Seed{1}).pure_preserving);
  const PurityProbe dep =
      is_pure_preserving_behavioral(named_channel("depolarizing", 0.5, 2), 50, Seed{1});
  EXPECT_FALSE(dep.pure_preserving);
  ASSERT_TRUE(dep.counterexample.has_value());
  ASSERT_TRUE(dep.counterexample_purity.has_value());
  const ComplexMatrix out =
      oracle::apply(named_channel("depolarizing", 0.5, 2).kraus(), outer(*dep.counterexample));
  EXPECT_NEAR(oracle::purity(out), *dep.counterexample_purity, 1e-12);
  EXPECT_LT(*dep.counterexample_purity, 1.0 - 1e-8);
}

TEST(PurityProbe, DeterministicForSeed) {
  const KrausChannel ch = random_cptp(2, 2, 2, Seed{3});
  const PurityProbe a = is_pure_preserving_behavioral(ch, 10, Seed{77});
  const PurityProbe b = is_pure_preserving_behavioral(ch, 10, Seed{77});
  ASSERT_TRUE(a.counterexample && b.counterexample);
  EXPECT_EQ(*a.counterexample, *b.counterexample);
  EXPECT_THROW(is_pure_preserving_behavioral(ch, 0, Seed{0}), ContractError);
}

}  // namespace
}  // namespace qchan
