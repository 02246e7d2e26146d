#pragma once

#include "opn/natural.hpp"
#include "opn/rational.hpp"
#include "opn/primality.hpp"
#include "opn/sieve.hpp"
#include "opn/factorization.hpp"
#include "opn/multiplicative.hpp"
#include "opn/identity.hpp"
#include "opn/candidate.hpp"
#include "opn/random_triples.hpp"
#include "opn/scan.hpp"
#include "opn/checkpoint.hpp"
#include "opn/experiments.hpp"
