#pragma once

#include "error.hpp"
#include "partition.hpp"
#include "orbit.hpp"
#include "gf2.hpp"
#include "modp.hpp"
#include "richardson.hpp"
#include "series.hpp"
#include "formal_local.hpp"
#include "local_checks.hpp"
#include "isotropic.hpp"
#include "prym_weil.hpp"
#include "report.hpp"
