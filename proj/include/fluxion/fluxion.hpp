#pragma once

#include "fluxion/adiabatic.hpp"
#include "fluxion/commands.hpp"
#include "fluxion/config.hpp"
#include "fluxion/csv.hpp"
#include "fluxion/dynamics.hpp"
#include "fluxion/error.hpp"
#include "fluxion/linalg.hpp"
#include "fluxion/model.hpp"
#include "fluxion/spectrum.hpp"
