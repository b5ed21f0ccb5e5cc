#ifndef NAHM_NAHM_HPP
#define NAHM_NAHM_HPP

#include "numeric.hpp"
#include "rational.hpp"
#include "dynkin.hpp"
#include "jet.hpp"
#include "report.hpp"
#include "ysystem.hpp"
#include "dilog.hpp"
#include "solver.hpp"
#include "bloch.hpp"
#include "verify.hpp"
#include "qseries.hpp"
#include "io.hpp"

#endif  // NAHM_NAHM_HPP
