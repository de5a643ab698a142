#pragma once

#include "flagcollapse/oracle/diagram.hpp"
#include "flagcollapse/oracle/gf2.hpp"
#include "flagcollapse/oracle/persistence.hpp"
#include "flagcollapse/oracle/zigzag_persistence.hpp"
