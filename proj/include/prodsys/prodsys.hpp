#pragma once

// Umbrella header: the full library in dependency order.

#include "prodsys/rational.hpp"
#include "prodsys/step_function.hpp"
#include "prodsys/product_system.hpp"
#include "prodsys/inductive_limit.hpp"
#include "prodsys/sections.hpp"
#include "prodsys/dilation.hpp"
#include "prodsys/frames.hpp"
#include "prodsys/operators.hpp"
#include "prodsys/semigroup.hpp"
#include "prodsys/oracles.hpp"
#include "prodsys/serialization.hpp"
#include "prodsys/report.hpp"
#include "prodsys/random.hpp"
#include "prodsys/scenario.hpp"
#include "prodsys/suites.hpp"
#include "prodsys/describe.hpp"
