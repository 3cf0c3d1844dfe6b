#pragma once

// Function literals used by the CLI and config files:
//   "h:k"                       single 1-d Hermite polynomial h_k
//   "expand:[(n,c),...]"        1-d expansion
//   "expand:[((n1,n2),c),...]"  multi-dimensional expansion
//   "family:random:N:seed"      1-d expansion of degree N with seeded
//                               uniform(-1, 1) coefficients

#include <cstdint>
#include <string>

#include "gvs/hermite.hpp"

namespace gvs {

/// Throws DomainError on malformed input.
HermiteExpansion parse_function_literal(const std::string& text);

/// Degree-N expansion in dimension dim with uniform(-1, 1) coefficients.
HermiteExpansion random_expansion(int degree, std::uint64_t seed, int dim = 1);

}  // namespace gvs
