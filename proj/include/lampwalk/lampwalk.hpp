#pragma once

#include "lampwalk/analyze.hpp"
#include "lampwalk/contfrac.hpp"
#include "lampwalk/errors.hpp"
#include "lampwalk/io.hpp"
#include "lampwalk/matrix.hpp"
#include "lampwalk/oracle.hpp"
#include "lampwalk/perturb.hpp"
#include "lampwalk/simulate.hpp"
#include "lampwalk/walk.hpp"
