#pragma once

namespace slicelab {

/// s_{n-1} = 2 pi^{n/2} / Gamma(n/2), the surface area of S^{n-1} (s_0 = 2).
double sphere_area(int n);

/// c(n, p) = Gamma((p+n)/2) / (2 pi^{(n-1)/2} Gamma((p+1)/2)), so that
/// |x|^p = c(n, p) * int_{S^{n-1}} |(x, theta)|^p dtheta. Evaluated in log space.
double spherical_constant(int n, double p);

}  // namespace slicelab
