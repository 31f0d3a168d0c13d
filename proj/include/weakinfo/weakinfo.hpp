#pragma once

#include "weakinfo/detection.hpp"
#include "weakinfo/errors.hpp"
#include "weakinfo/infotheory.hpp"
#include "weakinfo/oracle.hpp"
#include "weakinfo/reversal.hpp"
#include "weakinfo/state.hpp"
#include "weakinfo/sweep.hpp"

namespace weakinfo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace weakinfo
