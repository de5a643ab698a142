#pragma once

#include "flagcollapse/approx.hpp"
#include "flagcollapse/collapse.hpp"
#include "flagcollapse/core.hpp"
#include "flagcollapse/io.hpp"
#include "flagcollapse/parallel.hpp"
#include "flagcollapse/samplers.hpp"
#include "flagcollapse/zigzag.hpp"
