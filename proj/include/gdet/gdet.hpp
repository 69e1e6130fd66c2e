#pragma once

#include "gdet/error.hpp"
#include "gdet/exact_algebra.hpp"
#include "gdet/lemma_lab.hpp"
#include "gdet/mat_operator.hpp"
#include "gdet/matrix.hpp"
#include "gdet/permutation.hpp"
#include "gdet/rng.hpp"
#include "gdet/scalar.hpp"
#include "gdet/sign_patterns.hpp"
#include "gdet/stab_engine.hpp"
#include "gdet/sym_poly.hpp"
