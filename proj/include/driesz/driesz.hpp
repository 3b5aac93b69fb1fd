#ifndef DRIESZ_DRIESZ_HPP
#define DRIESZ_DRIESZ_HPP

#include "core.hpp"
#include "fft_convolution.hpp"
#include "norms.hpp"
#include "operators.hpp"
#include "weights.hpp"
#include "whitney.hpp"
#include "verify/experiments.hpp"

#endif
