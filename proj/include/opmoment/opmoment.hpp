#pragma once

#include "opmoment/fields.hpp"
#include "opmoment/multiindex.hpp"
#include "opmoment/matrix.hpp"
#include "opmoment/jacobi.hpp"
#include "opmoment/psd.hpp"
#include "opmoment/polynomial.hpp"
#include "opmoment/region.hpp"
#include "opmoment/positivity.hpp"
#include "opmoment/choi.hpp"
#include "opmoment/linop.hpp"
#include "opmoment/measures.hpp"
#include "opmoment/moments.hpp"
#include "opmoment/random.hpp"
#include "opmoment/preserver.hpp"
#include "opmoment/serialize.hpp"
#include "opmoment/convert.hpp"
