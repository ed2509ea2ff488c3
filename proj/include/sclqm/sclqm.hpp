#pragma once

#include "sclqm/amalgam.hpp"
#include "sclqm/amalgam_io.hpp"
#include "sclqm/brooks.hpp"
#include "sclqm/error.hpp"
#include "sclqm/finite_group.hpp"
#include "sclqm/freewords.hpp"
#include "sclqm/mean_cycle.hpp"
#include "sclqm/rational.hpp"
#include "sclqm/report.hpp"
#include "sclqm/scl.hpp"
