#pragma once

// Umbrella header.
#include "ordperm/rational.hpp"
#include "ordperm/interval_set.hpp"
#include "ordperm/pl_map.hpp"
#include "ordperm/lex.hpp"
#include "ordperm/rng.hpp"
#include "ordperm/generators.hpp"
#include "ordperm/certificate.hpp"
#include "ordperm/witnesses.hpp"
#include "ordperm/scenario.hpp"
