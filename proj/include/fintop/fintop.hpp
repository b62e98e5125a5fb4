#pragma once

#include "fintop/space.hpp"
#include "fintop/canonical.hpp"
#include "fintop/notation.hpp"
#include "fintop/lifting.hpp"
#include "fintop/census.hpp"
#include "fintop/classify.hpp"
#include "fintop/orthogonal.hpp"
