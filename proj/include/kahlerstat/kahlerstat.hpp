// Copyright 2026 The kahlerstat Authors
// SPDX-License-Identifier: Apache-2.0

/// Umbrella header.

#pragma once

#include "errors.hpp"
#include "fermion_reduction.hpp"
#include "geometry.hpp"
#include "hypergeometric.hpp"
#include "linalg.hpp"
#include "oscillator.hpp"
#include "planar.hpp"
#include "quadrature.hpp"
#include "sphere.hpp"
#include "statistics.hpp"
#include "statmech.hpp"
#include "table.hpp"
#include "vortex.hpp"
