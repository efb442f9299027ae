#pragma once

namespace hp {

// Dimensional constants: p = 2(n-1)/(n-2), k = 4/(n-2), omega = area of the
// unit (n-1)-sphere. Area measures scale as u^p and the conformal factor
// enters the metric as u^k.
struct Constants {
    int n;
    double p;
    double k;
    double omega;
};

// Valid for 3 <= n <= 7; throws std::invalid_argument otherwise.
Constants constants(int n);

// Area of the unit (n-1)-sphere, 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

} // namespace hp
