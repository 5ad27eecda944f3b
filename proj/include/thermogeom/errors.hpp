#pragma once

#include <stdexcept>
#include <string>

namespace thermogeom {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point lies outside the chart or metric domain, or a stencil left it.
class DomainError : public Error {
public:
    using Error::Error;
};

/// |det g| fell below the inversion floor.
class SingularMetricError : public Error {
public:
    using Error::Error;
};

/// A zero coordinate product was raised to a negative odd power.
class SingularProductError : public Error {
public:
    using Error::Error;
};

/// The minimum-entropy state (origin of the log chart) was supplied.
class ThirdLawError : public Error {
public:
    using Error::Error;
};

class StepUnderflowError : public Error {
public:
    using Error::Error;
};

} // namespace thermogeom
