#pragma once

// Umbrella header for the whole library.

#include "pandigital/bigint.hpp"
#include "pandigital/digits.hpp"
#include "pandigital/oeis.hpp"
#include "pandigital/primality.hpp"
#include "pandigital/residues.hpp"
#include "pandigital/search.hpp"
#include "pandigital/squares.hpp"
