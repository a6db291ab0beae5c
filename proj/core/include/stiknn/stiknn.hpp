#pragma once

// Umbrella header for the stiknn core library.

#include "stiknn/analysis.hpp"
#include "stiknn/bench.hpp"
#include "stiknn/csv.hpp"
#include "stiknn/datagen.hpp"
#include "stiknn/dataset.hpp"
#include "stiknn/errors.hpp"
#include "stiknn/heatmap.hpp"
#include "stiknn/knn.hpp"
#include "stiknn/matrix.hpp"
#include "stiknn/openml.hpp"
#include "stiknn/oracle.hpp"
#include "stiknn/sti_knn.hpp"
#include "stiknn/valuation.hpp"
#include "stiknn/verify.hpp"
