#pragma once

#include <string>
#include <string_view>

#include "dicke/model.hpp"

namespace dicke {

/// {"modes": M, "mean": [...], "cov": [[...], ...]} with row-major cov.
std::string state_to_json(const GaussianState& state);
GaussianState state_from_json(std::string_view text);

/// DickeDerived with its fields under their member names, plus the inputs.
std::string derived_to_json(const DickeDerived& derived);

}  // namespace dicke
