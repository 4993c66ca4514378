#pragma once

#include "smtkit/benchmarks.hpp"
#include "smtkit/emit.hpp"
#include "smtkit/error.hpp"
#include "smtkit/model.hpp"
#include "smtkit/oracle.hpp"
#include "smtkit/response.hpp"
#include "smtkit/sexpr.hpp"
#include "smtkit/simplify.hpp"
#include "smtkit/solver.hpp"
#include "smtkit/sort.hpp"
#include "smtkit/term.hpp"
#include "smtkit/value.hpp"
