#pragma once

#include "freearr/als.hpp"
#include "freearr/arrangement.hpp"
#include "freearr/catalog.hpp"
#include "freearr/derivation.hpp"
#include "freearr/errors.hpp"
#include "freearr/io.hpp"
#include "freearr/monomial.hpp"
#include "freearr/nullspace.hpp"
#include "freearr/parallel.hpp"
#include "freearr/rational.hpp"
#include "freearr/saito_tensor.hpp"
#include "freearr/scores.hpp"
#include "freearr/search.hpp"
#include "freearr/verify.hpp"
