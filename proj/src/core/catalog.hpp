#pragma once

#include <string>
#include <vector>

#include "core/density.hpp"

namespace lsilab {

// Named test functions with analytic gradients. Unless noted, they act on the
// first coordinate only.
//   one    1
//   exp    exp(x_1)
//   tanh   1 + 0.5 tanh(x_1)
//   quad   1 + 0.25 |x|^2
//   sq     1 + |x|^2
//   sin    1 + 0.5 sin(x_1)
//   sin2   2 + sin(x_1)
RelativeFunction named_function(const std::string& name, int n);
std::vector<std::string> named_function_list();

// Phi((x_1 - shift) / eps), a smoothed half-space indicator.
RelativeFunction halfspace_function(int n, double shift, double eps);
// Phi((u.x - b) / s)
RelativeFunction probit_ridge(const Vector& direction, double offset, double scale);
// 1 / (1 + exp(-(u.x - b) / s))
RelativeFunction logistic_ridge(const Vector& direction, double offset, double scale);

// A [0,1]-valued probit ridge aligned with the leading principal axis of an
// analytic density, used to run Bobkov's inequality over density corpora.
RelativeFunction derived_bobkov_function(const Density& g);

}  // namespace lsilab
