#pragma once

#include "otfs/autodiff.hpp"
#include "otfs/core_model.hpp"
#include "otfs/defaults.hpp"
#include "otfs/dictionary_io.hpp"
#include "otfs/dual.hpp"
#include "otfs/errors.hpp"
#include "otfs/experiments.hpp"
#include "otfs/interpolant.hpp"
#include "otfs/interpolant_io.hpp"
#include "otfs/kernel.hpp"
#include "otfs/loocv.hpp"
#include "otfs/metrics.hpp"
#include "otfs/ode.hpp"
#include "otfs/poly_basis.hpp"
#include "otfs/quadrature.hpp"
#include "otfs/random.hpp"
#include "otfs/simulation.hpp"
#include "otfs/surrogate.hpp"
#include "otfs/systems.hpp"
#include "otfs/trajectory_io.hpp"
