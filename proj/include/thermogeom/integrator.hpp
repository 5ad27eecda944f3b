#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace thermogeom {

/// Classical fourth-order Runge-Kutta with step-doubling error control.
/// The right-hand side returns nullopt when the state leaves its domain.
class StepDoublingRk4 {
public:
    using State = std::array<double, 4>;
    using Rhs = std::function<std::optional<State>(const State&)>;

    enum class Outcome { Complete, DomainExit };

    struct Result {
        std::vector<double> times;
        std::vector<State> states;
        Outcome outcome = Outcome::Complete;
    };

    /// `initial_step` is the largest step ever taken; it is halved until the
    /// local error max_i |y_full - y_half| / max(1, |y_half|) is below
    /// `tolerance` and doubled back after comfortable steps. Throws
    /// StepUnderflowError if the tolerance cannot be met.
    StepDoublingRk4(double initial_step, double tolerance);

    Result integrate(const Rhs& rhs, const State& y0, double t_end) const;

private:
    double initial_step_;
    double tolerance_;
};

} // namespace thermogeom
