#pragma once

// Umbrella header for the tally social-choice engine.

#include "tally/axioms.hpp"
#include "tally/fixtures.hpp"
#include "tally/io.hpp"
#include "tally/margins.hpp"
#include "tally/methods.hpp"
#include "tally/profile.hpp"
#include "tally/search.hpp"
#include "tally/transforms.hpp"
#include "tally/version.hpp"
