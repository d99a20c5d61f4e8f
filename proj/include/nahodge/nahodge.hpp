#pragma once

#include "nahodge/birkhoff.hpp"
#include "nahodge/errors.hpp"
#include "nahodge/gm_action.hpp"
#include "nahodge/jump_loci.hpp"
#include "nahodge/lambda_family.hpp"
#include "nahodge/langton.hpp"
#include "nahodge/laurent.hpp"
#include "nahodge/matrix.hpp"
#include "nahodge/ratfun.hpp"
#include "nahodge/rational.hpp"
#include "nahodge/rees.hpp"
#include "nahodge/scalar.hpp"
#include "nahodge/smith.hpp"
#include "nahodge/twistor.hpp"
