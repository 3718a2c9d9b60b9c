#pragma once

#include "csrstat/analysis.hpp"
#include "csrstat/autocorrelation.hpp"
#include "csrstat/csr_test.hpp"
#include "csrstat/errors.hpp"
#include "csrstat/io.hpp"
#include "csrstat/measure.hpp"
#include "csrstat/null_models.hpp"
#include "csrstat/parallel.hpp"
#include "csrstat/ripley.hpp"
#include "csrstat/rng.hpp"
#include "csrstat/svg.hpp"
#include "csrstat/synthgen.hpp"
