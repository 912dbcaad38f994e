#pragma once

#include "idealforge/basecase_plan.hpp"
#include "idealforge/combinators.hpp"
#include "idealforge/constructions.hpp"
#include "idealforge/error.hpp"
#include "idealforge/family.hpp"
#include "idealforge/formula.hpp"
#include "idealforge/io.hpp"
#include "idealforge/numeric.hpp"
#include "idealforge/oracle.hpp"
#include "idealforge/recount.hpp"
