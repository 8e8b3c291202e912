#pragma once

#include <string>

#include "swimopt/curve.hpp"

namespace swimopt {

/// R = a sin t, Z = a cos t.
GeneratingCurve sphere_curve(double radius = 1.0);

/// Prolate spheroid R = b sin t, Z = c cos t (c >= b along the axis).
GeneratingCurve spheroid_curve(double b, double c);

/// Closed forms for a spheroid with semi-axes c (axial) and b.
double spheroid_volume(double b, double c);
double spheroid_area(double b, double c);
/// Axial towing force at unit speed and unit viscosity (prolate, c >= b).
double prolate_drag(double b, double c);

/// Axial aspect ratio c/b of the prolate spheroid with reduced volume nu.
double spheroid_aspect_for_nu(double nu);

/// Peanut-like test shape R = sin t (1 + beta cos 2t), Z = q cos t.
GeneratingCurve peanut_curve(double beta, double q);
/// q such that the peanut with the given beta has reduced volume nu.
double peanut_height_for_nu(double nu, double beta = 0.3);

/// Spline presets: "sphere", "spheroid" (reduced volume nu), "peanut"
/// (reduced volume nu). Sizes are normalised to area 4 pi.
GeneratingCurve preset_curve(const std::string& name, double nu, int n_intervals);

}  // namespace swimopt
