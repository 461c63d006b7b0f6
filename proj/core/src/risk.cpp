#include "oodlab/risk.hpp"

#include <algorithm>
#include <cmath>

#include "oodlab/errors.hpp"

namespace oodlab {

namespace {

RiskEstimate component_risk(const Hypothesis& h, const DistributionSpec& spec,
                            bool id_side, RiskMode mode, Rng& rng) {
  if (mode.kind != RiskMode::Kind::kMonteCarlo) {
    if (auto mass = region_mass(spec, h)) {
      const double v = id_side ? 1.0 - *mass : *mass;
      return {RiskKind::kExact, std::clamp(v, 0.0, 1.0), 0.0, 0};
    }
    if (mode.kind == RiskMode::Kind::kExactOnly) {
      throw ExactUnavailable("no closed-form mass for " + spec.type_name() +
                             " against this hypothesis");
    }
  }
  if (mode.m == 0) throw InvalidArgument("Monte Carlo risk needs m > 0");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < mode.m; ++i) {
    const bool inside = h.contains(sample(spec, rng));
    if (inside != id_side) ++errors;
  }
  return {RiskKind::kMonteCarlo,
          static_cast<double>(errors) / static_cast<double>(mode.m),
          hoeffding_half_width(mode.m), mode.m};
}

}  // namespace

double hoeffding_half_width(std::size_t m) {
  if (m == 0) throw InvalidArgument("Hoeffding width needs m > 0");
  return std::sqrt(std::log(2.0 / 0.001) / (2.0 * static_cast<double>(m)));
}

RiskEstimate risk(const Hypothesis& h, const Domain& d, RiskTarget which, RiskMode mode,
                  Rng& rng) {
  if (h.dim() != 0 && (h.dim() != d.dim() ||
                       h.discrete() != (d.space() == SpaceKind::kDiscrete))) {
    throw DimensionMismatch("risk: hypothesis and domain spaces differ");
  }
  switch (which.kind) {
    case RiskTarget::Kind::kId:
      return component_risk(h, d.id, true, mode, rng);
    case RiskTarget::Kind::kOod:
      return component_risk(h, d.ood, false, mode, rng);
    case RiskTarget::Kind::kMixed:
      break;
  }
  const double a = which.alpha;
  if (!(a >= 0.0 && a <= 1.0)) throw InvalidArgument("alpha must be in [0, 1]");
  const RiskEstimate in = component_risk(h, d.id, true, mode, rng);
  const RiskEstimate out = component_risk(h, d.ood, false, mode, rng);
  RiskEstimate r;
  r.kind = (in.exact() && out.exact()) ? RiskKind::kExact : RiskKind::kMonteCarlo;
  r.value = (1.0 - a) * in.value + a * out.value;
  r.ci_half_width = (1.0 - a) * in.ci_half_width + a * out.ci_half_width;
  r.m = std::max(in.m, out.m);
  return r;
}

double bayes_floor_1d(const DistributionSpec& in, const DistributionSpec& out,
                      double alpha, double step) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must be in [0, 1]");
  if (!(step > 0.0)) throw InvalidArgument("integration step must be positive");
  for (const auto* s : {&in, &out}) {
    if (!density_1d(*s, 0.0)) {
      throw InvalidArgument("bayes_floor_1d: " + s->type_name() +
                           " has no 1-D density (not integrable)");
    }
  }
  auto f = [&](double x) {
    return std::min((1.0 - alpha) * *density_1d(in, x), alpha * *density_1d(out, x));
  };
  auto [lo_a, hi_a] = effective_support_1d(in);
  auto [lo_b, hi_b] = effective_support_1d(out);
  const double lo = std::min(lo_a, lo_b);
  const double hi = std::max(hi_a, hi_b);
  std::vector<double> cuts = breakpoints_1d(in);
  const auto more = breakpoints_1d(out);
  cuts.insert(cuts.end(), more.begin(), more.end());
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Each piece is smooth inside; its end values are one-sided limits, taken
  // by nudging the evaluation points inward.
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = std::max(cuts[k], lo);
    const double b = std::min(cuts[k + 1], hi);
    if (!(b > a)) continue;
    auto pieces = static_cast<std::size_t>(std::ceil((b - a) / step));
    pieces = std::max<std::size_t>(2, pieces + (pieces % 2));
    const double hstep = (b - a) / static_cast<double>(pieces);
    const double nudge = 1e-9 * hstep;
    double s = f(a + nudge) + f(b - nudge);
    for (std::size_t i = 1; i < pieces; ++i) {
      s += (i % 2 ? 4.0 : 2.0) * f(a + static_cast<double>(i) * hstep);
    }
    total += s * hstep / 3.0;
  }
  return total;
}

}  // namespace oodlab
