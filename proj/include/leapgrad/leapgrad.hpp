#pragma once

#include "analytic.hpp"
#include "bench.hpp"
#include "catalog.hpp"
#include "competitors.hpp"
#include "lga.hpp"
#include "polynomial.hpp"
