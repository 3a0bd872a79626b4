#pragma once

#include <map>
#include <string>

#include "cylsat/rational.hpp"

namespace cylsat {

/// Environment for the small formula language the step scripts use:
/// rational literals ("1/2"), variables (q, l, n1, n2, L1, L2, L3),
/// + - * / ^ and parentheses. Exact rational evaluation.
using ExprEnv = std::map<std::string, Rat>;

Rat eval_expr(const std::string& expr, const ExprEnv& env);

}  // namespace cylsat
