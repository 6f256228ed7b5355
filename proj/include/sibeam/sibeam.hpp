// SPDX-License-Identifier: Apache-2.0
//
// sibeam - RF beamforming self-interference suppression toolkit
// Copyright (C) 2026 sibeam contributors

#pragma once

#include "sibeam/array_geometry.hpp"
#include "sibeam/beamformer.hpp"
#include "sibeam/channel_io.hpp"
#include "sibeam/objective.hpp"
#include "sibeam/pso.hpp"
#include "sibeam/schemes.hpp"
#include "sibeam/si_channel.hpp"
#include "sibeam/sweep.hpp"
