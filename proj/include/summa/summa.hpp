#pragma once

#include "summa/asymptotics.hpp"
#include "summa/casimir.hpp"
#include "summa/cutoff.hpp"
#include "summa/error.hpp"
#include "summa/euler_maclaurin.hpp"
#include "summa/exact_core.hpp"
#include "summa/extrapolation.hpp"
#include "summa/jet.hpp"
#include "summa/parallel.hpp"
#include "summa/quadrature.hpp"
#include "summa/rational.hpp"
#include "summa/real.hpp"
#include "summa/smoothed.hpp"
#include "summa/summability.hpp"
