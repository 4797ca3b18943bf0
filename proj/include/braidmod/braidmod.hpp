#pragma once

#include "braid.hpp"
#include "cabling.hpp"
#include "classify.hpp"
#include "error.hpp"
#include "io.hpp"
#include "sl2.hpp"
#include "surface.hpp"
