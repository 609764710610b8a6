#pragma once

/// @file acceptance.hpp
/// Full verification suite over the scenario catalog: conservation, the
/// sup-norm and variation envelopes, comparison, contraction, the
/// isometry-flow TVD dichotomy, entropy residuals, oracle convergence,
/// the vanishing-viscosity trend, and the time-Lipschitz bound.

#include <iosfwd>

namespace mclaw {

/// Runs every criterion, printing one [PASS]/[FAIL] line per criterion.
/// Returns the number of failed criteria.
int acceptance_run(std::ostream& out);

}  // namespace mclaw
