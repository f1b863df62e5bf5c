#pragma once

#include "opz/canon.hpp"
#include "opz/checks.hpp"
#include "opz/errors.hpp"
#include "opz/grid.hpp"
#include "opz/hereditary.hpp"
#include "opz/io.hpp"
#include "opz/model.hpp"
#include "opz/permutation.hpp"
#include "opz/prob.hpp"
#include "opz/process.hpp"
#include "opz/random.hpp"
#include "opz/relation.hpp"
