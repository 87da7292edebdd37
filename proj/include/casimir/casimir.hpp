#pragma once

#include "casimir/config.hpp"
#include "casimir/errors.hpp"
#include "casimir/kernel.hpp"
#include "casimir/limits.hpp"
#include "casimir/numerics.hpp"
#include "casimir/output.hpp"
#include "casimir/permittivity.hpp"
#include "casimir/polarizability.hpp"
#include "casimir/quantities.hpp"
#include "casimir/self_check.hpp"
#include "casimir/sweep.hpp"
