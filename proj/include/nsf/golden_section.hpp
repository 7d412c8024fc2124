#pragma once

#include <cmath>
#include <utility>

namespace nsf::opt {

// Golden-section search for the minimum of f on [a, b]. Assumes f is
// unimodal on the bracket; returns (x, f(x)) once the bracket is narrower
// than xtol.
template <typename F>
std::pair<double, double> golden_section_min(F&& f, double a, double b, double xtol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > xtol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

} // namespace nsf::opt
