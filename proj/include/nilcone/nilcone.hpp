#pragma once

#include "nilcone/rational.hpp"
#include "nilcone/linalg.hpp"
#include "nilcone/simplex.hpp"
#include "nilcone/lie_bracket.hpp"
#include "nilcone/derivations.hpp"
#include "nilcone/polytope.hpp"
#include "nilcone/moment.hpp"
#include "nilcone/certifier.hpp"
#include "nilcone/catalog.hpp"
