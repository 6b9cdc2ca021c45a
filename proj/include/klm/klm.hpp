#pragma once

#include "config.hpp"
#include "coverability.hpp"
#include "decide.hpp"
#include "decomp.hpp"
#include "dioph.hpp"
#include "io.hpp"
#include "klm_sequence.hpp"
#include "linalg.hpp"
#include "lp.hpp"
#include "numeric.hpp"
#include "oracle.hpp"
#include "ordinal.hpp"
#include "random.hpp"
#include "vass.hpp"
#include "witness.hpp"
