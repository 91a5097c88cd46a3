#pragma once

// Recurrence coefficients of generalized Meixner orthogonal polynomials on
// three lattices, the discrete and continuous (Painleve V / Toda) systems
// they satisfy, and numerical verification of the transformation theory.

#include "meixnerpv/backlund.hpp"
#include "meixnerpv/dynamics.hpp"
#include "meixnerpv/errors.hpp"
#include "meixnerpv/finite_diff.hpp"
#include "meixnerpv/jet.hpp"
#include "meixnerpv/measure.hpp"
#include "meixnerpv/ode.hpp"
#include "meixnerpv/painleve.hpp"
#include "meixnerpv/pv_cases.hpp"
#include "meixnerpv/real.hpp"
#include "meixnerpv/report.hpp"
#include "meixnerpv/special_functions.hpp"
#include "meixnerpv/stieltjes.hpp"
#include "meixnerpv/verify.hpp"
