#pragma once

#include "pbsched/classify.hpp"
#include "pbsched/error.hpp"
#include "pbsched/generate.hpp"
#include "pbsched/io.hpp"
#include "pbsched/matching.hpp"
#include "pbsched/model.hpp"
#include "pbsched/oracle.hpp"
#include "pbsched/rational.hpp"
#include "pbsched/schedule.hpp"
#include "pbsched/solvers.hpp"
