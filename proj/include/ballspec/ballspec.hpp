#pragma once

// Umbrella header: spectral theory of curl and grad div on a ball.

#include "ballspec/geometry.hpp"
#include "ballspec/specfun.hpp"
#include "ballspec/ballquad.hpp"
#include "ballspec/eigenbasis.hpp"
#include "ballspec/spectral.hpp"
#include "ballspec/solver.hpp"
#include "ballspec/fieldio.hpp"
#include "ballspec/config.hpp"
#include "ballspec/streamline.hpp"
