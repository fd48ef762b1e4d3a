#pragma once

#include "fracgn/error.hpp"
#include "fracgn/numeric.hpp"
#include "fracgn/fft.hpp"
#include "fracgn/corpus.hpp"
#include "fracgn/lpdecomp.hpp"
#include "fracgn/norms.hpp"
#include "fracgn/pointwise.hpp"
#include "fracgn/exponents.hpp"
#include "fracgn/inequalities.hpp"
#include "fracgn/studies.hpp"
#include "fracgn/io.hpp"
#include "fracgn/suite.hpp"
