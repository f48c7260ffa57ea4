#include "otfs/simulation.hpp"

#include "otfs/errors.hpp"

#include <cmath>
#include <numbers>

namespace otfs {

InputSignal zero_input(int nu) {
    return [nu](double) { return Vector::Zero(nu).eval(); };
}

InputSignal constant_input(Vector u) {
    return [u = std::move(u)](double) { return u; };
}

InputSignal sine_input(double amplitude, double frequency) {
    return [amplitude, frequency](double t) {
        return Vector::Constant(1, amplitude * std::sin(2.0 * std::numbers::pi * frequency * t)).eval();
    };
}

namespace {

void check_eta(const Dims& dims, const Vector& eta) {
    if (eta.size() != dims.neta)
        throw DimensionError("parameter vector has length " + std::to_string(eta.size()) + ", expected " +
                             std::to_string(dims.neta));
}

} // namespace

CtRhs make_ct_rhs(const DynamicsFn& f, Vector eta, InputSignal input) {
    check_eta(f.dims(), eta);
    return [f, eta = std::move(eta), input = std::move(input)](double t, const Vector& x) {
        return f(x, input(t), eta);
    };
}

CtRhs make_ct_rhs(const SurrogateModel& model, Vector eta, InputSignal input) {
    check_eta(model.dims(), eta);
    return [model, eta = std::move(eta), input = std::move(input)](double t, const Vector& x) {
        return model.rhs(x, input(t), eta);
    };
}

DtMap make_dt_map(const DynamicsFn& f, Vector eta, InputSignal input) {
    check_eta(f.dims(), eta);
    return [f, eta = std::move(eta), input = std::move(input)](long k, const Vector& x) {
        return f(x, input(static_cast<double>(k)), eta);
    };
}

DtMap make_dt_map(const SurrogateModel& model, Vector eta, InputSignal input) {
    check_eta(model.dims(), eta);
    return [model, eta = std::move(eta), input = std::move(input)](long k, const Vector& x) {
        return model.rhs(x, input(static_cast<double>(k)), eta);
    };
}

} // namespace otfs
