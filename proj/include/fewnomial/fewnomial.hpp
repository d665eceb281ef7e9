#ifndef FEWNOMIAL_FEWNOMIAL_HPP
#define FEWNOMIAL_FEWNOMIAL_HPP

#include "fewnomial/bounds.hpp"
#include "fewnomial/coeff_poly.hpp"
#include "fewnomial/compensator.hpp"
#include "fewnomial/derivation.hpp"
#include "fewnomial/errors.hpp"
#include "fewnomial/laurent.hpp"
#include "fewnomial/numeric.hpp"
#include "fewnomial/seed.hpp"
#include "fewnomial/serialize.hpp"

#endif  // FEWNOMIAL_FEWNOMIAL_HPP
