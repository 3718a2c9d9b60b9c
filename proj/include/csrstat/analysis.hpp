#pragma once

// Degree-of-clustering time profiles and mRNA/protein pairing statistics.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csrstat/errors.hpp"

namespace csrstat {

enum class MoleculeKind { mRNA, Protein };

inline MoleculeKind parse_molecule_kind(const std::string& s) {
  if (s == "mRNA" || s == "mrna" || s == "rna") return MoleculeKind::mRNA;
  if (s == "protein") return MoleculeKind::Protein;
  throw InputError("unknown molecule kind '" + s + "' (expected mRNA or protein)");
}

inline std::string to_string(MoleculeKind k) { return k == MoleculeKind::mRNA ? "mRNA" : "protein"; }

/// Degree of clustering measured on one cell.
struct DeltaRecord {
  std::string id;
  std::string species;
  MoleculeKind kind = MoleculeKind::mRNA;
  double time = 0.0; ///< hours
  double delta = 0.0;
};

struct Profile {
  std::string species;
  MoleculeKind kind = MoleculeKind::mRNA;
  std::vector<double> times;   ///< strictly increasing
  std::vector<double> medians; ///< median delta per time point
  /// Mean-subtracted, unit (population) variance medians; empty when the
  /// medians are constant over time.
  std::optional<std::vector<double>> normalized;
};

inline double median(std::vector<double> xs) {
  if (xs.empty()) throw InputError("median of an empty list");
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

/// Mean-subtracted values scaled to unit population variance, or nullopt when
/// the input is constant.
inline std::optional<std::vector<double>> standardize(std::span<const double> xs) {
  if (xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / n);
  if (!(sd > 1e-15 * std::max(1.0, std::abs(mean)))) return std::nullopt;
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back((x - mean) / sd);
  return out;
}

/// Groups per-cell deltas by (species, kind) and time, takes the median per
/// time point and standardizes each profile independently.
inline std::vector<Profile> build_profiles(std::span<const DeltaRecord> records) {
  std::map<std::pair<std::string, MoleculeKind>, std::map<double, std::vector<double>>> groups;
  for (const auto& r : records) {
    if (!std::isfinite(r.delta) || !std::isfinite(r.time)) throw InputError("non-finite delta or time");
    groups[{r.species, r.kind}][r.time].push_back(r.delta);
  }
  std::vector<Profile> out;
  for (auto& [key, by_time] : groups) {
    if (by_time.size() < 2)
      throw InputError("profile for " + key.first + " (" + to_string(key.second) + ") needs at least 2 time points");
    Profile p{key.first, key.second, {}, {}, std::nullopt};
    for (auto& [t, deltas] : by_time) {
      p.times.push_back(t);
      p.medians.push_back(median(std::move(deltas)));
    }
    p.normalized = standardize(p.medians);
    out.push_back(std::move(p));
  }
  return out;
}

/// Sample Pearson correlation.
inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InputError("pearson inputs differ in length");
  if (xs.size() < 2) throw InputError("pearson needs at least 2 observations");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw NumericalError("pearson correlation of a constant series");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace detail {

/// Average ranks (1-based) of the pooled sample, ties share their mean rank.
inline std::vector<double> midranks(std::span<const double> pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double r = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

} // namespace detail

inline constexpr std::size_t kMannWhitneyExactLimit = 12;

/// One-tailed Mann-Whitney p-value for "group_a tends to exceed group_b".
///
/// Exact when n_a + n_b <= 12: the fraction of all C(n, n_a) assignments of
/// the pooled midranks to group a whose rank sum is at least the observed one.
/// Otherwise the normal approximation with tie and continuity corrections.
inline double mann_whitney_one_tailed(std::span<const double> group_a, std::span<const double> group_b) {
  if (group_a.empty() || group_b.empty()) throw InputError("Mann-Whitney needs two nonempty groups");
  std::vector<double> pooled(group_a.begin(), group_a.end());
  pooled.insert(pooled.end(), group_b.begin(), group_b.end());
  const std::size_t na = group_a.size(), nb = group_b.size(), n = na + nb;
  const auto ranks = detail::midranks(pooled);
  double observed = 0.0;
  for (std::size_t i = 0; i < na; ++i) observed += ranks[i];

  if (n <= kMannWhitneyExactLimit) {
    std::uint64_t hits = 0, total = 0;
    // Enumerate na-subsets of {0..n-1} as bitmasks with exactly na bits.
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != na) continue;
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) s += ranks[i];
      ++total;
      if (s >= observed - 1e-9) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
  }

  const double dna = static_cast<double>(na), dnb = static_cast<double>(nb), dn = static_cast<double>(n);
  const double u = observed - dna * (dna + 1.0) / 2.0;
  std::vector<double> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  const double var = dna * dnb / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (!(var > 0.0)) return 1.0;
  const double z = (u - dna * dnb / 2.0 - 0.5) / std::sqrt(var);
  return std::clamp(0.5 * std::erfc(z / std::sqrt(2.0)), std::numeric_limits<double>::min(), 1.0);
}

/// Correlations indexed [mRNA i][protein j].
using CorrelationMatrix = std::vector<std::vector<double>>;

/// Z-score of r[i][j] against every other pair sharing exactly one member
/// with (i, j): row i without column j, and column j without row i. Uses the
/// population standard deviation of that comparison set.
inline double pair_zscore(std::size_t i, std::size_t j, const CorrelationMatrix& r) {
  if (i >= r.size() || j >= r[i].size()) throw InputError("pair index outside the correlation matrix");
  std::vector<double> cmp;
  for (std::size_t k = 0; k < r[i].size(); ++k)
    if (k != j) cmp.push_back(r[i][k]);
  for (std::size_t k = 0; k < r.size(); ++k)
    if (k != i) cmp.push_back(r[k][j]);
  if (cmp.size() < 2) throw InputError("Z-score needs at least 2 comparison pairs");
  const double n = static_cast<double>(cmp.size());
  const double mean = std::accumulate(cmp.begin(), cmp.end(), 0.0) / n;
  double ss = 0.0;
  for (double c : cmp) ss += (c - mean) * (c - mean);
  const double sd = std::sqrt(ss / n);
  if (!(sd > 0.0)) throw NumericalError("zero-variance comparison set");
  return (r[i][j] - mean) / sd;
}

struct PairZ {
  std::string species;
  double r = 0.0;
  double z = 0.0;
};

struct PairingReport {
  std::vector<std::string> mrna_species;    ///< matrix rows
  std::vector<std::string> protein_species; ///< matrix columns
  CorrelationMatrix correlations;
  std::vector<double> corresponding; ///< r of same-species pairs
  std::vector<double> others;        ///< r of all other pairs
  std::optional<double> mann_whitney_p;
  std::vector<PairZ> zscores;
};

/// Correlates every mRNA profile with every protein profile, matching the
/// k-th mRNA time point to the k-th protein time point, then tests whether
/// same-species pairs correlate more strongly than the rest.
inline PairingReport analyze_pairings(std::span<const Profile> profiles) {
  std::vector<const Profile*> mrna, protein;
  for (const auto& p : profiles) (p.kind == MoleculeKind::mRNA ? mrna : protein).push_back(&p);
  if (mrna.empty() || protein.empty()) throw InputError("pairing analysis needs both mRNA and protein profiles");
  PairingReport rep;
  rep.correlations.assign(mrna.size(), std::vector<double>(protein.size(), 0.0));
  for (std::size_t i = 0; i < mrna.size(); ++i) {
    rep.mrna_species.push_back(mrna[i]->species);
    for (std::size_t j = 0; j < protein.size(); ++j) {
      if (i == 0) rep.protein_species.push_back(protein[j]->species);
      if (mrna[i]->medians.size() != protein[j]->medians.size())
        throw InputError("profiles " + mrna[i]->species + "/" + protein[j]->species +
                         " have different numbers of time points");
      const double r = pearson(mrna[i]->medians, protein[j]->medians);
      rep.correlations[i][j] = r;
      (mrna[i]->species == protein[j]->species ? rep.corresponding : rep.others).push_back(r);
    }
  }
  if (!rep.corresponding.empty() && !rep.others.empty())
    rep.mann_whitney_p = mann_whitney_one_tailed(rep.corresponding, rep.others);
  for (std::size_t i = 0; i < mrna.size(); ++i)
    for (std::size_t j = 0; j < protein.size(); ++j)
      if (mrna[i]->species == protein[j]->species)
        rep.zscores.push_back({mrna[i]->species, rep.correlations[i][j], pair_zscore(i, j, rep.correlations)});
  return rep;
}

} // namespace csrstat
