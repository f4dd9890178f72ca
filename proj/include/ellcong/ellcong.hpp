#pragma once

#include "ellcong/cache.hpp"
#include "ellcong/congruence.hpp"
#include "ellcong/counting.hpp"
#include "ellcong/curve.hpp"
#include "ellcong/errors.hpp"
#include "ellcong/factor.hpp"
#include "ellcong/families.hpp"
#include "ellcong/fp.hpp"
#include "ellcong/gl2.hpp"
#include "ellcong/integer.hpp"
#include "ellcong/primes.hpp"
#include "ellcong/report.hpp"
#include "ellcong/survey.hpp"
#include "ellcong/torsion.hpp"
