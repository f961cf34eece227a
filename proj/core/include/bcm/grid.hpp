#ifndef BCM_GRID_HPP
#define BCM_GRID_HPP

#include <complex>
#include <vector>

#include "bcm/errors.hpp"

namespace bcm {

/// Discretization of the parameter domain. Rectangles sample a cartesian
/// nx x ny lattice; annuli sample nx radii times ny angles (angles wrap).
struct GridSpec {
    enum class Shape { Rectangle, Annulus };

    Shape shape = Shape::Rectangle;
    // rectangle bounds
    double x_min = -0.5, x_max = 0.5;
    double y_min = -0.5, y_max = 0.5;
    // annulus bounds (angles cover [0, 2pi))
    double r_min = 0.1, r_max = 1.0;

    int nx = 32;
    int ny = 32;

    void validate() const;

    int node_count() const { return nx * ny; }
    int index(int i, int j) const { return i * ny + j; }
    std::complex<double> node(int i, int j) const;

    /// Whether faces wrap around in the j direction (annulus angles).
    bool wraps() const { return shape == Shape::Annulus; }

    /// Scale the domain by k about the origin (both shapes are star-shaped
    /// with respect to 0 in the coordinates used here).
    GridSpec scaled(double k) const;
};

} // namespace bcm

#endif
