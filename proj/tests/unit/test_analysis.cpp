#include <gtest/gtest.h>

#include <random>

#include "csrstat/analysis.hpp"
#include "oracles.hpp"

using namespace csrstat;

namespace {

std::vector<DeltaRecord> records(const std::string& species, MoleculeKind kind,
                                 const std::vector<std::pair<double, std::vector<double>>>& by_time) {
  std::vector<DeltaRecord> out;
  int n = 0;
  for (const auto& [t, deltas] : by_time)
    for (double d : deltas) out.push_back({species + std::to_string(n++), species, kind, t, d});
  return out;
}

Profile profile(const std::string& species, MoleculeKind kind, std::vector<double> medians) {
  Profile p{species, kind, {}, std::move(medians), std::nullopt};
  for (std::size_t i = 0; i < p.medians.size(); ++i) p.times.push_back(static_cast<double>(i));
  return p;
}

} // namespace

TEST(Profiles, MedianPerTimePoint) {
  const auto recs = records("Arhgdia", MoleculeKind::mRNA, {{2, {1, 3}}, {3, {5}}, {5, {2, 2}}, {7, {4}}});
  const auto profiles = build_profiles(recs);
  ASSERT_EQ(profiles.size(), 1u);
  EXPECT_EQ(profiles[0].times, (std::vector<double>{2, 3, 5, 7}));
  EXPECT_EQ(profiles[0].medians, (std::vector<double>{2, 5, 2, 4}));
  ASSERT_TRUE(profiles[0].normalized.has_value());
  const auto& z = *profiles[0].normalized;
  double mean = 0.0, var = 0.0;
  for (double v : z) mean += v / 4;
  for (double v : z) var += (v - mean) * (v - mean) / 4;
  EXPECT_NEAR(mean, 0.0, 1e-12);
  EXPECT_NEAR(var, 1.0, 1e-12);
}

TEST(Profiles, ConstantMediansHaveNoNormalization) {
  const auto profiles = build_profiles(records("X", MoleculeKind::Protein, {{1, {2}}, {2, {2, 2}}}));
  EXPECT_FALSE(profiles[0].normalized.has_value());
  EXPECT_FALSE(standardize(std::vector<double>{3, 3, 3}).has_value());
}

TEST(Profiles, GroupsBySpeciesAndKind) {
  auto recs = records("A", MoleculeKind::mRNA, {{1, {1}}, {2, {2}}});
  const auto more = records("A", MoleculeKind::Protein, {{1, {3}}, {2, {1}}});
  recs.insert(recs.end(), more.begin(), more.end());
  const auto profiles = build_profiles(recs);
  ASSERT_EQ(profiles.size(), 2u);
  EXPECT_NE(profiles[0].kind, profiles[1].kind);
}

TEST(Profiles, Errors) {
  EXPECT_THROW(build_profiles(records("A", MoleculeKind::mRNA, {{1, {1, 2}}})), InputError);
  EXPECT_TRUE(build_profiles(std::vector<DeltaRecord>{}).empty());
  EXPECT_THROW(parse_molecule_kind("dna"), InputError);
  EXPECT_EQ(parse_molecule_kind("protein"), MoleculeKind::Protein);
  EXPECT_EQ(parse_molecule_kind("mRNA"), MoleculeKind::mRNA);
}

TEST(Pearson, Examples) {
  const std::vector<double> x{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(pearson(x, x), 1.0);
  EXPECT_DOUBLE_EQ(pearson(x, std::vector<double>{-1, -2, -3, -4}), -1.0);
  EXPECT_NEAR(pearson(x, std::vector<double>{1, 2, 4, 3}), 0.8, 1e-15);
}

TEST(Pearson, AffineInvariance) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> a(7), b(7), a2(7), b2(7);
    for (int i = 0; i < 7; ++i) {
      a[i] = n(rng);
      b[i] = n(rng);
      a2[i] = 3.5 * a[i] - 2.0;
      b2[i] = 0.01 * b[i] + 100.0;
    }
    EXPECT_NEAR(pearson(a, b), pearson(a2, b2), 1e-10);
  }
}

TEST(Pearson, Errors) {
  EXPECT_THROW(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), InputError);
  EXPECT_THROW(pearson(std::vector<double>{1}, std::vector<double>{1}), InputError);
  EXPECT_THROW(pearson(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), NumericalError);
}

TEST(MannWhitney, Examples) {
  EXPECT_NEAR(mann_whitney_one_tailed(std::vector<double>{3, 4}, std::vector<double>{1, 2}), 1.0 / 6.0, 1e-15);
  EXPECT_GE(mann_whitney_one_tailed(std::vector<double>{2}, std::vector<double>{2}), 0.5);
  EXPECT_NEAR(mann_whitney_one_tailed(std::vector<double>{1, 2}, std::vector<double>{3, 4}), 1.0, 1e-15);
  EXPECT_THROW(mann_whitney_one_tailed(std::vector<double>{}, std::vector<double>{1}), InputError);
}

TEST(MannWhitney, ExactPathMatchesEnumeration) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 2; n <= 12; ++n)
    for (std::size_t na = 1; na < n; ++na) {
      std::vector<double> a(na), b(n - na);
      // Small integer values so that ties occur often.
      std::uniform_int_distribution<int> v(0, 5);
      for (double& x : a) x = v(rng);
      for (double& x : b) x = v(rng);
      EXPECT_NEAR(mann_whitney_one_tailed(a, b), oracle::mann_whitney_bruteforce(a, b), 1e-12) << na << "," << n - na;
    }
}

TEST(MannWhitney, NormalApproximationIsClose) {
  // Compare against enumeration just past the exact limit.
  std::vector<double> a{0.9, 0.8, 0.85, 0.3, 0.95}, b{0.1, 0.2, 0.5, 0.4, 0.35, 0.6, 0.05, 0.15};
  const double approx = mann_whitney_one_tailed(a, b);
  const double exact = oracle::mann_whitney_bruteforce(a, b);
  EXPECT_NEAR(approx, exact, 0.01);
}

TEST(ZScore, Examples) {
  // Pair (0,0) with comparisons r[0][1] = 0 and r[1][0] = 0.5.
  EXPECT_NEAR(pair_zscore(0, 0, CorrelationMatrix{{1.0, 0.0}, {0.5, 0.7}}), 3.0, 1e-12);
  // Comparisons 0.2, 0.8, 0.5 have mean 0.5.
  EXPECT_NEAR(pair_zscore(0, 0, CorrelationMatrix{{0.5, 0.2, 0.8}, {0.5, 0.1, 0.4}}), 0.0, 1e-12);
}

TEST(ZScore, ComparisonSetSize) {
  // In a 4x4 matrix every pair is compared with 3 same-row and 3 same-column entries.
  CorrelationMatrix r(4, std::vector<double>(4, 0.0));
  const std::vector<double> cmp{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  r[1][2] = 0.9;
  r[1][0] = cmp[0];
  r[1][1] = cmp[1];
  r[1][3] = cmp[2];
  r[0][2] = cmp[3];
  r[2][2] = cmp[4];
  r[3][2] = cmp[5];
  r[0][0] = 100.0; // not in the comparison set
  double mean = 0.35, ss = 0.0;
  for (double c : cmp) ss += (c - mean) * (c - mean);
  EXPECT_NEAR(pair_zscore(1, 2, r), (0.9 - mean) / std::sqrt(ss / 6), 1e-12);
}

TEST(ZScore, Errors) {
  EXPECT_THROW(pair_zscore(0, 0, CorrelationMatrix{{1.0}}), InputError);
  EXPECT_THROW(pair_zscore(0, 0, CorrelationMatrix{{1.0, 0.3}, {0.3, 0.1}}), NumericalError);
  EXPECT_THROW(pair_zscore(2, 0, CorrelationMatrix{{1.0, 0.3}, {0.3, 0.1}}), InputError);
}

TEST(Pairings, PlantedPairStandsOut) {
  const std::vector<Profile> profiles{
      profile("A", MoleculeKind::mRNA, {1, 4, 2, 8}),    profile("A", MoleculeKind::Protein, {1, 4, 2, 8}),
      profile("B", MoleculeKind::mRNA, {3, 1, 2, 2.5}),  profile("B", MoleculeKind::Protein, {2, 2, 1, 3}),
      profile("C", MoleculeKind::mRNA, {5, 5.5, 1, 2}),  profile("C", MoleculeKind::Protein, {1, 3, 3, 1}),
  };
  const auto rep = analyze_pairings(profiles);
  EXPECT_EQ(rep.mrna_species, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(rep.corresponding.size(), 3u);
  EXPECT_EQ(rep.others.size(), 6u);
  EXPECT_NEAR(rep.correlations[0][0], 1.0, 1e-12);
  ASSERT_TRUE(rep.mann_whitney_p.has_value());
  ASSERT_EQ(rep.zscores.size(), 3u);
  EXPECT_EQ(rep.zscores[0].species, "A");
  for (const auto& z : rep.zscores) EXPECT_LE(z.z, rep.zscores[0].z);
}

TEST(Pairings, Errors) {
  EXPECT_THROW(analyze_pairings(std::vector<Profile>{profile("A", MoleculeKind::mRNA, {1, 2})}), InputError);
  EXPECT_THROW(analyze_pairings(std::vector<Profile>{profile("A", MoleculeKind::mRNA, {1, 2}),
                                                     profile("A", MoleculeKind::Protein, {1, 2, 3})}),
               InputError);
}
