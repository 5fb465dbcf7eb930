#pragma once

#include "lvl3/word.hpp"
#include "lvl3/pushdown.hpp"
#include "lvl3/kpda.hpp"
#include "lvl3/morphism.hpp"
#include "lvl3/polynomial.hpp"
#include "lvl3/recurrence.hpp"
#include "lvl3/lowering.hpp"
#include "lvl3/groebner.hpp"
#include "lvl3/equivalence.hpp"
#include "lvl3/systemfile.hpp"
