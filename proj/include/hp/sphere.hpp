#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hp {

// Gauss-Legendre nodes/weights on [-1,1] (weights sum to 2).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// Quadrature grid on S^{n-1} with an orthonormal sphere-harmonic mode basis.
//
// n = 3: product grid, Gauss-Legendre in cos(theta) x uniform azimuth, with
// real spherical harmonics Y_{l,m} up to degree l_max (orthonormal for the
// unit-sphere measure). Axisymmetric data lives on the polar rings; the ring
// weight aggregates the azimuth nodes of one ring.
//
// n > 3: radial-only resolution (l_max = 0): a single node carrying the full
// sphere area as its weight, with the constant mode Y_00 = omega^{-1/2}.
class AngularGrid {
public:
    struct Mode { int l, m; };

    static AngularGrid build(int n, int l_max, int resolution);

    int dim() const { return n_; }
    int l_max() const { return l_max_; }
    double omega() const { return omega_; }

    std::size_t node_count() const { return weight_.size(); }
    std::size_t ring_count() const { return static_cast<std::size_t>(n_polar_); }
    std::size_t azimuth_count() const { return static_cast<std::size_t>(n_az_); }
    std::size_t ring_of(std::size_t node) const { return node / n_az_; }
    std::size_t node_of(std::size_t ring, std::size_t az) const { return ring * n_az_ + az; }

    double node_theta(std::size_t node) const { return theta_[node / n_az_]; }
    double node_phi(std::size_t node) const { return phi_[node % n_az_]; }
    double node_weight(std::size_t node) const { return weight_[node]; }
    double ring_theta(std::size_t ring) const { return theta_[ring]; }
    double ring_mu(std::size_t ring) const { return mu_[ring]; }
    double ring_weight(std::size_t ring) const { return ring_weight_[ring]; }

    std::size_t mode_count() const { return modes_.size(); }
    const Mode& mode(std::size_t i) const { return modes_[i]; }
    std::size_t mode_index(int l, int m) const; // throws if absent

    double y(std::size_t mode, std::size_t node) const { return y_[mode * node_count() + node]; }
    double dy_dtheta(std::size_t mode, std::size_t node) const {
        return dy_[mode * node_count() + node];
    }
    double dy_dphi(std::size_t mode, std::size_t node) const;

    // m = 0 basis value on a ring (azimuth independent).
    double y_ring(int l, std::size_t ring) const;
    double dy_dtheta_ring(int l, std::size_t ring) const;

    // Integral over the unit sphere of node samples.
    double integrate(std::span<const double> node_values) const;
    // Coefficients of node samples against the mode basis.
    std::vector<double> project(std::span<const double> node_values) const;

    // Expand ring samples (axisymmetric data) to all nodes.
    std::vector<double> expand_rings(std::span<const double> ring_values) const;
    // Average node samples over each ring.
    std::vector<double> ring_average(std::span<const double> node_values) const;

private:
    int n_ = 3, l_max_ = 0, n_polar_ = 1, n_az_ = 1;
    double omega_ = 0.0;
    std::vector<double> theta_, mu_, phi_;
    std::vector<double> weight_, ring_weight_;
    std::vector<Mode> modes_;
    std::vector<double> y_, dy_;
};

// Validating constructor for the supported (n, l_max) combinations.
AngularGrid sphere_quadrature(int n, int l_max, int resolution);

// Real orthonormal harmonics Y_{l,m}(theta, phi) up to l_max at an arbitrary
// direction, in the grid's mode order (l ascending, m from -l to l).
void evaluate_real_harmonics(int l_max, double theta, double phi, std::vector<double>& out);

} // namespace hp
