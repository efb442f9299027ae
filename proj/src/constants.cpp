#include "hp/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hp {

double unit_sphere_area(int n) {
    const double pi = std::numbers::pi;
    return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
}

Constants constants(int n) {
    if (n < 3 || n > 7)
        throw std::invalid_argument("dimension out of range: n=" + std::to_string(n) +
                                    " (need 3 <= n <= 7)");
    Constants c;
    c.n = n;
    c.p = 2.0 * (n - 1) / (n - 2);
    c.k = 4.0 / (n - 2);
    c.omega = unit_sphere_area(n);
    return c;
}

} // namespace hp
