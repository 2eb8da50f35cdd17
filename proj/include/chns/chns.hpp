#pragma once

#include "chns/core/errors.hpp"
#include "chns/core/fields.hpp"
#include "chns/fd/operators.hpp"
#include "chns/convection/weno.hpp"
#include "chns/semidisc/manufactured.hpp"
#include "chns/semidisc/rhs.hpp"
#include "chns/linsolve/stencil_matrix.hpp"
#include "chns/linsolve/banded.hpp"
#include "chns/linsolve/multigrid.hpp"
#include "chns/linsolve/dct.hpp"
#include "chns/linsolve/pcg.hpp"
#include "chns/imex/tableau.hpp"
#include "chns/imex/stepper.hpp"
#include "chns/imex/stage_systems.hpp"
#include "chns/imex/chns_problem.hpp"
#include "chns/driver/config.hpp"
#include "chns/driver/initial.hpp"
#include "chns/driver/timestep.hpp"
#include "chns/driver/diagnostics.hpp"
#include "chns/driver/snapshot.hpp"
#include "chns/driver/run.hpp"
#include "chns/driver/spinodal.hpp"
#include "chns/driver/experiments.hpp"
