#pragma once

#include <cstddef>

#include "oodlab/distributions.hpp"
#include "oodlab/domain.hpp"
#include "oodlab/hypothesis.hpp"

namespace oodlab {

enum class RiskKind { kExact, kMonteCarlo };

struct RiskEstimate {
  RiskKind kind = RiskKind::kExact;
  double value = 0.0;
  double ci_half_width = 0.0;  // 0 for exact values
  std::size_t m = 0;           // samples per component; 0 for exact values

  bool exact() const { return kind == RiskKind::kExact; }
};

/// Hoeffding half-width at confidence 0.999: sqrt(ln(2000) / (2m)).
double hoeffding_half_width(std::size_t m);

struct RiskTarget {
  enum class Kind { kId, kOod, kMixed } kind = Kind::kMixed;
  double alpha = 0.5;

  static RiskTarget id() { return {Kind::kId, 0.0}; }
  static RiskTarget ood() { return {Kind::kOod, 1.0}; }
  static RiskTarget mixed(double alpha) { return {Kind::kMixed, alpha}; }
};

struct RiskMode {
  enum class Kind { kExactOnly, kExactIfPossible, kMonteCarlo } kind =
      Kind::kExactIfPossible;
  std::size_t m = 10000;  // Monte Carlo sample count per component

  static RiskMode exact_only() { return {Kind::kExactOnly, 0}; }
  static RiskMode exact_if_possible(std::size_t m = 10000) {
    return {Kind::kExactIfPossible, m};
  }
  static RiskMode monte_carlo(std::size_t m) { return {Kind::kMonteCarlo, m}; }
};

/// id risk P_in[h = 0], ood risk P_out[h = 1], mixed (1 - alpha) id + alpha ood.
/// The mixed Monte Carlo estimate draws m points from each component, so the
/// identity holds exactly for the returned numbers.
/// Throws ExactUnavailable (exact-only mode), InvalidArgument (m = 0) and
/// DimensionMismatch.
RiskEstimate risk(const Hypothesis& h, const Domain& d, RiskTarget which, RiskMode mode,
                  Rng& rng);

inline constexpr double kDefaultFloorStep = 1e-4;

/// Integral of min{(1 - alpha) f_in, alpha f_out} by composite Simpson,
/// split at the density breakpoints of both laws. Throws InvalidArgument
/// for laws without a density (atoms, other spaces).
double bayes_floor_1d(const DistributionSpec& in, const DistributionSpec& out,
                      double alpha, double step = kDefaultFloorStep);

}  // namespace oodlab
