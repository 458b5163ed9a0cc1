#include <algorithm>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "povm_discrim/error.hpp"
#include "povm_discrim/outcomes.hpp"

using namespace povm_discrim;

namespace {

OutcomePattern pattern(std::vector<std::size_t> c) {
  const std::size_t blocks = c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
  return {std::move(c), blocks};
}

std::vector<Permutation> all_permutations(std::size_t k) {
  std::vector<std::size_t> m(k);
  std::iota(m.begin(), m.end(), 0);
  std::vector<Permutation> out;
  do out.emplace_back(m);
  while (std::next_permutation(m.begin(), m.end()));
  return out;
}

}  // namespace

TEST(Canonicalize, SameOutcomesShareAPattern) {
  EXPECT_EQ(canonicalize({{0, 0}, 2}), pattern({0, 0}));
  EXPECT_EQ(canonicalize({{1, 1}, 2}), pattern({0, 0}));
}

TEST(Canonicalize, FirstAppearanceRelabeling) {
  const auto p = canonicalize({{1, 4, 1}, 5});
  EXPECT_EQ(p.canonical, (std::vector<std::size_t>{0, 1, 0}));
  EXPECT_EQ(p.block_count, 2u);
}

TEST(Canonicalize, ThreeShotsThreeOutcomesGiveFiveClasses) {
  std::set<std::vector<std::size_t>> seen;
  for (const auto& s : all_sequences(3, 3)) seen.insert(canonicalize(s).canonical);
  const std::set<std::vector<std::size_t>> expected{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 2}};
  EXPECT_EQ(seen, expected);
}

TEST(Canonicalize, InvariantUnderEveryRelabeling) {
  for (std::size_t k = 1; k <= 4; ++k) {
    const auto perms = all_permutations(k);
    for (std::size_t n = 1; n <= 4; ++n)
      for (const auto& s : all_sequences(n, k)) {
        const auto p = canonicalize(s);
        for (const auto& pi : perms) ASSERT_EQ(canonicalize(pi.act(s)), p);
      }
  }
}

TEST(EnumeratePatterns, SmallCounts) {
  EXPECT_EQ(enumerate_patterns(2, 2).size(), 2u);
  EXPECT_EQ(enumerate_patterns(2, 7).size(), 2u);
  EXPECT_EQ(enumerate_patterns(3, 3).size(), 5u);
  EXPECT_EQ(enumerate_patterns(3, 9).size(), 5u);
  EXPECT_EQ(enumerate_patterns(4, 2).size(), 8u);
}

TEST(EnumeratePatterns, MatchesStirlingSums) {
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::size_t k = 1; k <= 8; ++k) EXPECT_EQ(enumerate_patterns(n, k).size(), oracle::orbit_count(n, k)) << n << "," << k;
}

TEST(EnumeratePatterns, MatchesBruteForceCanonicalization) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t k = 1; k <= 4; ++k) {
      std::set<std::vector<std::size_t>> got;
      for (const auto& p : enumerate_patterns(n, k)) got.insert(p.canonical);
      EXPECT_EQ(got, oracle::brute_force_orbits(n, k)) << n << "," << k;
    }
}

TEST(EnumeratePatterns, LexicographicRestrictedGrowthStrings) {
  const auto ps = enumerate_patterns(5, 3);
  EXPECT_TRUE(std::is_sorted(ps.begin(), ps.end()));
  for (const auto& p : ps) {
    std::size_t max_seen = 0;
    ASSERT_EQ(p.canonical[0], 0u);
    for (std::size_t i = 1; i < p.canonical.size(); ++i) {
      ASSERT_LE(p.canonical[i], max_seen + 1);
      max_seen = std::max(max_seen, p.canonical[i]);
    }
    EXPECT_EQ(p.block_count, max_seen + 1);
    EXPECT_LE(p.block_count, 3u);
  }
}

TEST(EnumeratePatterns, RejectsBadArguments) {
  EXPECT_EQ(oracle::kind_of([] { enumerate_patterns(0, 2); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(oracle::kind_of([] { enumerate_patterns(2, 0); }), ErrorKind::InvalidArgument);
  // Bell(15) is about 1.4e9.
  EXPECT_EQ(oracle::kind_of([] { enumerate_patterns(15, 15); }), ErrorKind::Overflow);
}

TEST(ExpandPattern, Examples) {
  const auto same = expand_pattern(pattern({0, 0}), 2);
  ASSERT_EQ(same.size(), 2u);
  EXPECT_EQ(same[0].indices, (std::vector<std::size_t>{0, 0}));
  EXPECT_EQ(same[1].indices, (std::vector<std::size_t>{1, 1}));
  const auto diff = expand_pattern(pattern({0, 1}), 2);
  ASSERT_EQ(diff.size(), 2u);
  EXPECT_EQ(diff[0].indices, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(diff[1].indices, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(expand_pattern(pattern({0, 1, 2}), 3).size(), 6u);
}

TEST(ExpandPattern, RoundTripAndPartition) {
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t n = 1; n <= 4; ++n) {
      std::size_t covered = 0;
      std::set<std::vector<std::size_t>> all;
      for (const auto& p : enumerate_patterns(n, k)) {
        const auto orbit = expand_pattern(p, k);
        EXPECT_EQ(orbit.size(), orbit_size(p.block_count, k));
        covered += orbit.size();
        for (const auto& s : orbit) {
          EXPECT_EQ(canonicalize(s), p);
          EXPECT_TRUE(all.insert(s.indices).second);
        }
      }
      std::size_t kn = 1;
      for (std::size_t i = 0; i < n; ++i) kn *= k;
      EXPECT_EQ(covered, kn);
      for (const auto& s : all_sequences(n, k)) {
        const auto orbit = expand_pattern(canonicalize(s), k);
        EXPECT_NE(std::find(orbit.begin(), orbit.end(), s), orbit.end());
      }
    }
}

TEST(OrbitSize, FallingFactorial) {
  EXPECT_EQ(orbit_size(1, 3), 3u);
  EXPECT_EQ(orbit_size(2, 3), 6u);
  EXPECT_EQ(orbit_size(3, 3), 6u);
  EXPECT_EQ(orbit_size(4, 3), 0u);
}

TEST(PatternName, Letters) {
  const auto ps = enumerate_patterns(3, 3);
  std::vector<std::string> names;
  for (const auto& p : ps) names.push_back(pattern_name(p));
  EXPECT_EQ(names, (std::vector<std::string>{"xxx", "xxy", "xyx", "xyy", "xyz"}));
  for (const auto& p : enumerate_patterns(5, 5)) EXPECT_EQ(parse_pattern_name(pattern_name(p)), p);
  EXPECT_FALSE(parse_pattern_name("yx").has_value());
  EXPECT_FALSE(parse_pattern_name("").has_value());
}

TEST(Permutation, GroupLaws) {
  const auto perms = all_permutations(4);
  for (const auto& a : perms) {
    EXPECT_TRUE(a.compose(a.inverse()).is_identity());
    for (const auto& b : perms)
      for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(a.compose(b)(j), a(b(j)));
  }
  EXPECT_EQ(oracle::kind_of([] { Permutation({0, 0}); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(oracle::kind_of([] { Permutation({0, 2}); }), ErrorKind::InvalidArgument);
}
