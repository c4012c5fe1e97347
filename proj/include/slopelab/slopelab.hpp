#pragma once

#include "bundles.hpp"
#include "errors.hpp"
#include "families.hpp"
#include "invariants.hpp"
#include "oracle.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "report_io.hpp"
#include "sweep.hpp"
#include "ring.hpp"
#include "tower.hpp"
#include "verdicts.hpp"
