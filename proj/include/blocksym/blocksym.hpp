// Umbrella header: the whole library in one include.
#pragma once

#include "blocksym/algebra.hpp"
#include "blocksym/bloch.hpp"
#include "blocksym/errors.hpp"
#include "blocksym/extraction.hpp"
#include "blocksym/matrix.hpp"
#include "blocksym/random_gen.hpp"
#include "blocksym/selftest.hpp"
#include "blocksym/serialization.hpp"
#include "blocksym/states.hpp"
#include "blocksym/symmetry.hpp"
#include "blocksym/thomsen.hpp"
