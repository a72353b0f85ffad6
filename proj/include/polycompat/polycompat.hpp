#pragma once

#include "polycompat/block_system.hpp"
#include "polycompat/eig.hpp"
#include "polycompat/fixtures.hpp"
#include "polycompat/hermitian.hpp"
#include "polycompat/hypergraph.hpp"
#include "polycompat/inclusion.hpp"
#include "polycompat/json_io.hpp"
#include "polycompat/lp.hpp"
#include "polycompat/magic.hpp"
#include "polycompat/matrix.hpp"
#include "polycompat/models.hpp"
#include "polycompat/polytope.hpp"
#include "polycompat/rational.hpp"
#include "polycompat/shared_effect.hpp"
#include "polycompat/tuples.hpp"
#include "polycompat/version.hpp"
