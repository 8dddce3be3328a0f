#pragma once

#include "gaussgcd/analytic.hpp"
#include "gaussgcd/errors.hpp"
#include "gaussgcd/fit.hpp"
#include "gaussgcd/gaussian.hpp"
#include "gaussgcd/gcd_statistics.hpp"
#include "gaussgcd/int128.hpp"
#include "gaussgcd/output.hpp"
#include "gaussgcd/primes.hpp"
#include "gaussgcd/sieve_tables.hpp"
