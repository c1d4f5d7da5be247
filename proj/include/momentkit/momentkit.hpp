#pragma once

#include "momentkit/common.hpp"
#include "momentkit/gamma.hpp"
#include "momentkit/grid.hpp"
#include "momentkit/measure.hpp"
#include "momentkit/moments.hpp"
#include "momentkit/polylog.hpp"
#include "momentkit/proofcore.hpp"
#include "momentkit/quadrature.hpp"
#include "momentkit/rational.hpp"
#include "momentkit/report.hpp"
#include "momentkit/stieltjes.hpp"
#include "momentkit/tolerance.hpp"
#include "momentkit/verify.hpp"
