#pragma once

#include "hot/binomial.hpp"
#include "hot/constructions.hpp"
#include "hot/counting.hpp"
#include "hot/errors.hpp"
#include "hot/geometry.hpp"
#include "hot/hot1.hpp"
#include "hot/orientation.hpp"
#include "hot/report.hpp"
#include "hot/rng.hpp"
#include "hot/search.hpp"
#include "hot/subset.hpp"
#include "hot/tournament.hpp"
