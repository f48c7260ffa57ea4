#pragma once

// Glue between dynamics/surrogates and the CT/DT integrators.

#include "otfs/autodiff.hpp"
#include "otfs/ode.hpp"
#include "otfs/surrogate.hpp"

#include <functional>

namespace otfs {

/// u(t); must return a vector of length nu.
using InputSignal = std::function<Vector(double t)>;

InputSignal zero_input(int nu);
InputSignal constant_input(Vector u);
/// u(t) = amplitude sin(2 pi frequency t), scalar input.
InputSignal sine_input(double amplitude, double frequency);

CtRhs make_ct_rhs(const DynamicsFn& f, Vector eta, InputSignal input);
CtRhs make_ct_rhs(const SurrogateModel& model, Vector eta, InputSignal input);

/// The DT map x -> f(x, u(k), eta) for either representation.
DtMap make_dt_map(const DynamicsFn& f, Vector eta, InputSignal input);
DtMap make_dt_map(const SurrogateModel& model, Vector eta, InputSignal input);

} // namespace otfs
