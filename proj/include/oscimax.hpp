#ifndef OSCIMAX_HPP
#define OSCIMAX_HPP

#include "oscimax/error.hpp"
#include "oscimax/bump.hpp"
#include "oscimax/grid.hpp"
#include "oscimax/fft.hpp"
#include "oscimax/spectral.hpp"
#include "oscimax/norms.hpp"
#include "oscimax/parallel.hpp"
#include "oscimax/maximal.hpp"
#include "oscimax/quadrature.hpp"
#include "oscimax/kernels.hpp"
#include "oscimax/fit.hpp"
#include "oscimax/counterexamples.hpp"
#include "oscimax/section5.hpp"
#include "oscimax/experiments.hpp"
#include "oscimax/scenarios.hpp"
#include "oscimax/io.hpp"

#endif  // OSCIMAX_HPP
