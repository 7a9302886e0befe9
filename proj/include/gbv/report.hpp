#pragma once

#include <json.hpp>

#include "gbv/inequalities.hpp"
#include "gbv/measures.hpp"
#include "gbv/seqclass.hpp"

namespace gbv {

/// Finite doubles as numbers; ±inf as the strings "inf" / "-inf"; NaN as null.
nlohmann::json json_number(double v);

}  // namespace gbv
