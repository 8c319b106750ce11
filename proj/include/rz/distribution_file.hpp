#pragma once

// Distribution files: a JSON object
//
//   { "dim": 2,
//     "atoms": [[0, 1], [1, 0], [1, 1]],
//     "weights": ["1/3", "1/3", "1/3"] }
//
// where weights are numbers or exact "p/q" strings. Errors carry the line
// of the offending token or field.

#include <string>
#include <string_view>

#include "rz/charfn.hpp"

namespace rz {

DiscreteDistribution parse_distribution(std::string_view text);
DiscreteDistribution load_distribution(const std::string& path);

}  // namespace rz
