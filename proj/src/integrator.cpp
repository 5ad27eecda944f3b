#include "thermogeom/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "thermogeom/errors.hpp"

namespace thermogeom {

namespace {

using State = StepDoublingRk4::State;

State axpy(const State& y, double h, const State& k)
{
    State out;
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
    return out;
}

std::optional<State> rk4_step(const StepDoublingRk4::Rhs& f, const State& y, double h)
{
    const auto k1 = f(y);
    if (!k1) return std::nullopt;
    const auto k2 = f(axpy(y, 0.5 * h, *k1));
    if (!k2) return std::nullopt;
    const auto k3 = f(axpy(y, 0.5 * h, *k2));
    if (!k3) return std::nullopt;
    const auto k4 = f(axpy(y, h, *k3));
    if (!k4) return std::nullopt;
    State out;
    for (std::size_t i = 0; i < y.size(); ++i) {
        out[i] = y[i] + h / 6.0 * ((*k1)[i] + 2.0 * ((*k2)[i] + (*k3)[i]) + (*k4)[i]);
    }
    return out;
}

} // namespace

StepDoublingRk4::StepDoublingRk4(double initial_step, double tolerance)
    : initial_step_(initial_step), tolerance_(tolerance)
{
    if (!(initial_step > 0.0) || !(tolerance > 0.0)) {
        throw std::invalid_argument("step and tolerance must be positive");
    }
}

StepDoublingRk4::Result StepDoublingRk4::integrate(const Rhs& rhs, const State& y0, double t_end) const
{
    Result result;
    result.times.push_back(0.0);
    result.states.push_back(y0);
    if (!rhs(y0)) throw DomainError("initial state is outside the domain");

    const double min_step = 1e-14 * std::max(1.0, t_end);
    double t = 0.0;
    double h = initial_step_;
    State y = y0;
    while (t < t_end) {
        double step = std::min(h, t_end - t);
        // Absorb a remainder left over by rounding in t.
        if (t_end - t - step <= 1e-9 * step) step = t_end - t;
        const auto full = rk4_step(rhs, y, step);
        const auto mid = full ? rk4_step(rhs, y, 0.5 * step) : std::nullopt;
        const auto half = mid ? rk4_step(rhs, *mid, 0.5 * step) : std::nullopt;
        if (!half) {
            if (step < min_step) {
                result.outcome = Outcome::DomainExit;
                return result;
            }
            h = 0.5 * step;
            continue;
        }
        double err = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            err = std::max(err, std::abs((*full)[i] - (*half)[i]) / std::max(1.0, std::abs((*half)[i])));
        }
        if (!(err <= tolerance_)) {
            if (step < min_step) {
                throw StepUnderflowError("step size underflow at tau = " + std::to_string(t));
            }
            h = 0.5 * step;
            continue;
        }
        t = (step == t_end - t) ? t_end : t + step;
        y = *half;
        result.times.push_back(t);
        result.states.push_back(y);
        if (err < tolerance_ / 64.0) h = std::min(2.0 * h, initial_step_);
    }
    return result;
}

} // namespace thermogeom
