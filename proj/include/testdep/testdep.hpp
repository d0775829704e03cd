#pragma once

#include "testdep/builtin_data.hpp"
#include "testdep/errors.hpp"
#include "testdep/filtering.hpp"
#include "testdep/graph.hpp"
#include "testdep/manifest.hpp"
#include "testdep/nlp.hpp"
#include "testdep/pipeline.hpp"
#include "testdep/report.hpp"
#include "testdep/scheduler.hpp"
#include "testdep/simulator.hpp"
#include "testdep/suite.hpp"
#include "testdep/validator.hpp"
