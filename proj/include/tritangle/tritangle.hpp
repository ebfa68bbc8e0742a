// tritangle.hpp
// Umbrella header.

#pragma once

#include "tritangle/qcore.hpp"
#include "tritangle/state_io.hpp"
#include "tritangle/entanglement.hpp"
#include "tritangle/convex_roof.hpp"
#include "tritangle/quadrature.hpp"
#include "tritangle/teleport.hpp"
#include "tritangle/noisy_channel.hpp"
#include "tritangle/random.hpp"
#include "tritangle/validation.hpp"
