#pragma once

#include "rational.hpp"
#include "combinatorics.hpp"
#include "laurent.hpp"
#include "json_io.hpp"
#include "rootdata.hpp"
#include "satake.hpp"
#include "characters.hpp"
#include "sampling.hpp"
