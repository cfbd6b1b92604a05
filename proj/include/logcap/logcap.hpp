#pragma once

// Umbrella header.

#include "logcap/capacity.hpp"
#include "logcap/commands.hpp"
#include "logcap/convex_newton.hpp"
#include "logcap/exp_linear.hpp"
#include "logcap/fixtures.hpp"
#include "logcap/inequalities.hpp"
#include "logcap/json_io.hpp"
#include "logcap/log_concavity.hpp"
#include "logcap/multi_index.hpp"
#include "logcap/permanent.hpp"
#include "logcap/random.hpp"
#include "logcap/rational.hpp"
#include "logcap/report.hpp"
#include "logcap/sequences.hpp"
#include "logcap/simplex.hpp"
#include "logcap/sparse_poly.hpp"
#include "logcap/support_geometry.hpp"
#include "logcap/univariate.hpp"
