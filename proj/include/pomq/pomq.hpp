#ifndef POMQ_POMQ_HPP
#define POMQ_POMQ_HPP

#include "borel.hpp"
#include "core.hpp"
#include "fock.hpp"
#include "io.hpp"
#include "phase_space.hpp"
#include "pom.hpp"
#include "quadrature.hpp"
#include "quantizer.hpp"
#include "sampling.hpp"

#endif
