#pragma once

// Convenience header: the whole exact and numeric library (the io/ headers need
// yaml-cpp and nlohmann_json and are included separately).

#include "bar_oracle.hpp"
#include "checks.hpp"
#include "dimensions.hpp"
#include "errors.hpp"
#include "koszul.hpp"
#include "phase.hpp"
#include "qlaurent.hpp"
#include "seminorms.hpp"
