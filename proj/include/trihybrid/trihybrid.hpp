// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "trihybrid/ee_solvers.hpp"
#include "trihybrid/errors.hpp"
#include "trihybrid/harness.hpp"
#include "trihybrid/metrics.hpp"
#include "trihybrid/numerics.hpp"
#include "trihybrid/oracles.hpp"
#include "trihybrid/rc_cod.hpp"
#include "trihybrid/se_pdd.hpp"
#include "trihybrid/system_model.hpp"
#include "trihybrid/types.hpp"
