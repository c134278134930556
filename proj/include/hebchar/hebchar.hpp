#pragma once

#include "hebchar/error.hpp"
#include "hebchar/harness.hpp"
#include "hebchar/hebnet.hpp"
#include "hebchar/pnm.hpp"
#include "hebchar/preprocess.hpp"
#include "hebchar/prototypes.hpp"
#include "hebchar/rng.hpp"
