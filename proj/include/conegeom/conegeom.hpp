#pragma once

#include "conegeom/cone_core.hpp"
#include "conegeom/error.hpp"
#include "conegeom/kernel_analysis.hpp"
#include "conegeom/matrix_analysis.hpp"
#include "conegeom/power_iteration.hpp"
