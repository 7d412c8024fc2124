#pragma once

// Umbrella header for the prime + non-squarefree verification toolkit.

#include "nsf/arith.hpp"
#include "nsf/bigint.hpp"
#include "nsf/criterion.hpp"
#include "nsf/errors.hpp"
#include "nsf/golden_section.hpp"
#include "nsf/grh_gate.hpp"
#include "nsf/primality.hpp"
#include "nsf/range_verifier.hpp"
#include "nsf/representations.hpp"
#include "nsf/sieve.hpp"
