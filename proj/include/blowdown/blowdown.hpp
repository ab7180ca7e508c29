#pragma once

#include "blowdown/contfrac.hpp"
#include "blowdown/diagram.hpp"
#include "blowdown/domain.hpp"
#include "blowdown/job.hpp"
#include "blowdown/json_io.hpp"
#include "blowdown/lattice.hpp"
#include "blowdown/rational.hpp"
#include "blowdown/surgery.hpp"
#include "blowdown/svg.hpp"
