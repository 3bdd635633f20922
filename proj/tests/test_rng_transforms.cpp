// Copyright 2026 The gdppca Authors.
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
//

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "gdppca/rng.hpp"
#include "gdppca/transforms.hpp"
#include "gdppca/errors.hpp"

namespace gdppca {
namespace {

TEST(Rng, ReplayAndIndependence) {
  RngStream a(7, 3);
  RngStream b(7, 3);
  RngStream c(7, 4);
  bool any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    any_diff = any_diff || x != c.next_u64();
  }
  EXPECT_TRUE(any_diff);
  EXPECT_EQ(a.counter(), 100u);
}

TEST(Rng, SubstreamDependsOnlyOnIds) {
  RngStream parent(11, 1);
  const RngStream early = parent.substream(5);
  for (int i = 0; i < 10; ++i) parent.next_u64();
  RngStream late = parent.substream(5);
  RngStream early_copy = early;
  EXPECT_EQ(early_copy.next_u64(), late.next_u64());
  EXPECT_NE(parent.substream(5).next_u64(), parent.substream(6).next_u64());
}

TEST(Rng, StableHashIsFnv1a) {
  EXPECT_EQ(stable_hash(""), 0xCBF29CE484222325ULL);
  EXPECT_EQ(stable_hash("a"), 0xAF63DC4C8601EC8CULL);
}

TEST(Rng, UniformAndNormalMoments) {
  RngStream rng(1, 1);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sn / n, 0.0, 4 / std::sqrt(n));
  EXPECT_NEAR(sn2 / n, 1.0, 4 * std::sqrt(2.0 / n));
}

TEST(Rng, UniformIndexCoversRange) {
  RngStream rng(2, 2);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto k = rng.uniform_index(7);
    ASSERT_LT(k, 7u);
    seen.insert(k);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(rng.uniform_index(1), 0u);
}

TEST(Transform, Examples) {
  Vector t(2);
  t << 3, 4;
  const Vector s = Transform::spherical().apply(t);
  EXPECT_NEAR(s(0), 0.6, 1e-15);
  EXPECT_NEAR(s(1), 0.8, 1e-15);
  const Vector w = Transform::winsorized(2.0).apply(t);
  EXPECT_NEAR(w(0), 1.2, 1e-15);
  EXPECT_NEAR(w(1), 1.6, 1e-15);
  const Vector inside = Transform::winsorized(10.0).apply(t);
  EXPECT_EQ(inside(0), 3.0);
  EXPECT_EQ(inside(1), 4.0);
}

TEST(Transform, SupNorm) {
  EXPECT_EQ(Transform::spherical().sup_norm(), 1.0);
  EXPECT_EQ(Transform::winsorized(std::sqrt(25.0)).sup_norm(), 5.0);
  EXPECT_EQ(Transform::winsorized(2.0).sup_norm(), 2.0);
  EXPECT_THROW(Transform::winsorized(0.0), ConfigError);
  EXPECT_THROW(Transform::winsorized(-1.0), ConfigError);
  EXPECT_THROW(Transform::winsorized(INFINITY), ConfigError);
}

TEST(Transform, ZeroAndExtremeInputs) {
  const Vector zero = Vector::Zero(3);
  EXPECT_EQ(Transform::spherical().apply(zero).norm(), 0.0);
  EXPECT_EQ(Transform::winsorized(1.0).apply(zero).norm(), 0.0);
  Vector huge(2);
  huge << 1e200, 1e200;
  EXPECT_NEAR(Transform::spherical().apply(huge).norm(), 1.0, 1e-14);
  Vector tiny(2);
  tiny << 1e-200, -1e-200;
  EXPECT_NEAR(Transform::spherical().apply(tiny).norm(), 1.0, 1e-14);
}

TEST(Transform, NeverExceedsSupNorm) {
  RngStream rng(9, 0);
  const Transform g = Transform::winsorized(1.5);
  for (int i = 0; i < 1000; ++i) {
    Vector t(4);
    for (Index j = 0; j < 4; ++j) t(j) = rng.normal() * std::exp(3 * rng.normal());
    EXPECT_LE(g.apply(t).norm(), g.sup_norm() * (1 + 1e-14));
    EXPECT_LE(Transform::spherical().apply(t).norm(), 1 + 1e-14);
  }
}

}  // namespace
}  // namespace gdppca
