#pragma once

#include "hpv/rational.hpp"

#include <vector>

namespace hpv {

/// A true value and the individual signals predicting it. Scalar is Rat for
/// exact identities or double for the CLI path.
template <class Scalar>
struct PredictionEnsemble {
  Scalar truth{};
  std::vector<Scalar> signals;
};

/// The error decomposition: collective prediction c, squared collective error
/// SE, mean individual squared error MSE, predictive diversity (the biased
/// variance estimate), and the sharp bound SEmax = MSE.
template <class Scalar>
struct Decomposition {
  Scalar collective{};
  Scalar se{};
  Scalar mse{};
  Scalar diversity{};
  Scalar se_max{};
};

template <class Scalar>
Decomposition<Scalar> decompose(const PredictionEnsemble<Scalar>& ensemble) {
  const auto& s = ensemble.signals;
  if (s.empty()) throw ValidationError("decompose: at least one signal required");
  const Scalar n = static_cast<Scalar>(static_cast<int>(s.size()));

  Decomposition<Scalar> d;
  Scalar sum{};
  for (const auto& v : s) sum = sum + v;
  d.collective = sum / n;

  Scalar err = d.collective - ensemble.truth;
  d.se = err * err;

  Scalar mse{};
  Scalar spread{};
  for (const auto& v : s) {
    Scalar e = v - ensemble.truth;
    mse = mse + e * e;
    Scalar g = v - d.collective;
    spread = spread + g * g;
  }
  d.mse = mse / n;
  d.diversity = spread / n;
  d.se_max = d.mse;
  return d;
}

/// Reconstruction of the paper's two-triangle comparison: a tight ensemble
/// (diversity 0.04, SE 0.0025) against a spread one (diversity 0.14,
/// SE 0.105625), both around truth 1/2. Raising diversity more than threefold
/// raises the squared error more than fortyfold.
struct Figure3Verdict {
  PredictionEnsemble<double> low;   // the tight case
  PredictionEnsemble<double> high;  // the spread case
  Decomposition<double> low_decomp;
  Decomposition<double> high_decomp;
  double se_ratio = 0;
  double diversity_ratio = 0;
  bool se_ratio_exceeds_40 = false;
  bool diversity_ratio_exceeds_3 = false;
};

Figure3Verdict figure3_check();

/// Bound-monotonicity report for a base/perturbed ensemble pair: how MSE,
/// diversity, SE and SEmax move, plus the flag for the case where diversity
/// rose and the realized error rose with it.
template <class Scalar>
struct SeMaxReport {
  Scalar d_mse{};
  Scalar d_diversity{};
  Scalar d_se{};
  Scalar d_se_max{};
  bool mse_drop_shrinks_bound = false;  // d_mse < 0 implies d_se_max < 0
  bool diversity_up_error_up = false;   // the "madness" exhibit
};

template <class Scalar>
SeMaxReport<Scalar> se_max_monotonicity(const PredictionEnsemble<Scalar>& base,
                                        const PredictionEnsemble<Scalar>& perturbed) {
  auto b = decompose(base);
  auto p = decompose(perturbed);
  SeMaxReport<Scalar> r;
  r.d_mse = p.mse - b.mse;
  r.d_diversity = p.diversity - b.diversity;
  r.d_se = p.se - b.se;
  r.d_se_max = p.se_max - b.se_max;
  r.mse_drop_shrinks_bound = !(r.d_mse < Scalar{}) || r.d_se_max < Scalar{};
  r.diversity_up_error_up = r.d_diversity > Scalar{} && r.d_se > Scalar{};
  return r;
}

}  // namespace hpv
