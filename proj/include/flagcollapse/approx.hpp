#pragma once

// Approximate backward collapse: trade an interleaving bound for removals.

#include <stdexcept>
#include <string>

#include "flagcollapse/collapse.hpp"

namespace flagcollapse {

enum class ApproxMode { additive, multiplicative };

struct ApproxParams {
  ApproxMode mode = ApproxMode::additive;
  Grade epsilon = 0;  // additive delay
  Grade alpha = 1;    // multiplicative factor

  static ApproxParams additive(Grade eps) { return {ApproxMode::additive, eps, 1}; }
  static ApproxParams multiplicative(Grade a) { return {ApproxMode::multiplicative, 0, a}; }

  void validate() const {
    if (mode == ApproxMode::additive && !(epsilon >= 0))
      throw std::invalid_argument("epsilon must be non-negative, got " + std::to_string(epsilon));
    if (mode == ApproxMode::multiplicative && !(alpha >= 1))
      throw std::invalid_argument("alpha must be at least 1, got " + std::to_string(alpha));
  }

  /// Where the first domination test of an edge born at t happens.
  Grade first_check(Grade t) const {
    return mode == ApproxMode::additive ? t + epsilon : t * alpha;
  }
};

/// Backward collapse whose first domination test for edge e happens at
/// t(e)+eps (or alpha*t(e)). Dominated there: ordinary shifting resumes from
/// that grade. Not dominated: e keeps its original grade. The output module
/// is eps-interleaved (multiplicatively alpha-interleaved) with the input.
///
/// Multiplicative mode is the additive scheme on log grades; since every
/// step only compares grades, alpha*t is used directly and all edge grades
/// must be positive.
inline CollapseResult approx_collapse(const FilteredGraph& g, const ApproxParams& p,
                                      NeighborhoodLayout layout = NeighborhoodLayout::dense) {
  p.validate();
  if (p.mode == ApproxMode::multiplicative)
    for (const auto& e : g.edges())
      if (!(e.t > 0))
        throw std::invalid_argument("multiplicative mode needs positive grades, edge " +
                                    describe_edge(e.u, e.v) + " has " + std::to_string(e.t));
  return detail::backward_pass(g.edges(), g.births(), layout,
                               [&p](Grade t) { return p.first_check(t); });
}

}  // namespace flagcollapse
