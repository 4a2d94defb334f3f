#pragma once

#include <functional>
#include <string>

namespace primecouple {

struct QuadratureSpec {
    std::string method = "adaptive-gk15";
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
};

struct QuadratureResult {
    double value = 0;
    double error_estimate = 0;
    int subdivisions = 0;
};

// adaptive Gauss-Kronrod 15(7) on a finite interval
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec = {});

}  // namespace primecouple
