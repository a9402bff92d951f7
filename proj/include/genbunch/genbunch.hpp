#pragma once

#include "genbunch/errors.hpp"
#include "genbunch/partitions.hpp"
#include "genbunch/symgroup.hpp"
#include "genbunch/symfunc.hpp"
#include "genbunch/linalg.hpp"
#include "genbunch/occupation.hpp"
#include "genbunch/parallel.hpp"
#include "genbunch/bunching.hpp"
#include "genbunch/fock_oracle.hpp"
#include "genbunch/thermometry.hpp"

namespace genbunch {

inline constexpr const char* version = "0.1.0";

} // namespace genbunch
