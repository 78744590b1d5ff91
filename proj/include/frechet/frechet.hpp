#pragma once

#include "frechet/cost.hpp"
#include "frechet/distance.hpp"
#include "frechet/entropy.hpp"
#include "frechet/error.hpp"
#include "frechet/estimator.hpp"
#include "frechet/harness.hpp"
#include "frechet/inequality.hpp"
#include "frechet/lemmas.hpp"
#include "frechet/parallel.hpp"
#include "frechet/plane.hpp"
#include "frechet/point.hpp"
#include "frechet/population.hpp"
#include "frechet/random.hpp"
#include "frechet/report.hpp"
#include "frechet/space.hpp"
#include "frechet/stats.hpp"
#include "frechet/structure.hpp"
#include "frechet/tree.hpp"
