#pragma once

// Spectral verification toolkit for the balance laws of half-harmonic circle
// maps and stationary planar harmonic maps.

#include "poho/vec.hpp"
#include "poho/fft.hpp"
#include "poho/spectral.hpp"
#include "poho/conformal.hpp"
#include "poho/kernels.hpp"
#include "poho/zoo.hpp"
#include "poho/report.hpp"
#include "poho/identities.hpp"
#include "poho/planar.hpp"
#include "poho/flow.hpp"
#include "poho/manifest.hpp"
#include "poho/config.hpp"
#include "poho/suite.hpp"
