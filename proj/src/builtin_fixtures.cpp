#include "gbc/fixtures.hpp"

namespace gbc {

// Standard desk-scale fixtures: circle, torus, and the 2-sphere in polar-cap
// and stereographic atlases, with flat bundles, the round tangent bundle, the
// charge-m monopole bundle, sections, chains, and the Dirac pair.
//
// Conventions:
//  * all charts are positively oriented w.r.t. the outward normal;
//  * the polar south cap uses (theta, phi) with embedding
//    (sin t cos p, -sin t sin p, -cos t), i.e. (theta,phi)_south =
//    (pi - theta, -phi)_north on the overlap band;
//  * stereographic charts: stereo_s covers everything but the north pole
//    (south pole at the origin), stereo_n everything but the south pole,
//    transition w -> 1/w.

static const std::string kBuiltinFixtures = R"FIX(
param m 1
param warp 0.1

atlas s1
chart main
  coords theta
  box theta -7.3 7.3
  periodic theta 2*pi
  embed cos(theta), sin(theta)

atlas t2
chart main
  coords x y
  box x -7.3 7.3
  box y -7.3 7.3
  periodic x 2*pi
  periodic y 2*pi
  embed cos(x), sin(x), cos(y), sin(y)

atlas s2_polar
chart north
  coords theta phi
  box theta -1.2 2.7
  box phi -7.3 7.3
  periodic phi 2*pi
  embed sin(theta)*cos(phi), sin(theta)*sin(phi), cos(theta)
chart south
  coords theta phi
  box theta -1.2 2.7
  box phi -7.3 7.3
  periodic phi 2*pi
  embed sin(theta)*cos(phi), -sin(theta)*sin(phi), -cos(theta)
transition north south
  map pi - theta, -phi
  sample theta 0.9 2.2
  sample phi 0.3 6.0

atlas s2_stereo
chart stereo_s
  coords u v
  box u -45 45
  box v -45 45
  embed 2*u/(1+u^2+v^2), -2*v/(1+u^2+v^2), (u^2+v^2-1)/(1+u^2+v^2)
chart stereo_n
  coords u v
  box u -45 45
  box v -45 45
  embed 2*u/(1+u^2+v^2), 2*v/(1+u^2+v^2), (1-u^2-v^2)/(1+u^2+v^2)
transition stereo_s stereo_n
  map u/(u^2+v^2), -v/(u^2+v^2)
  sample u 0.5 1.3
  sample v 0.5 1.3

bundle trivial_s1_r2 on s1
  rank 2

bundle trivial_t2_r2 on t2
  rank 2

bundle trivial_t2_r4 on t2
  rank 4

bundle trivial_s2_r2 on s2_polar
  rank 2

bundle monopole on s2_polar
  rank 2
  omega north 1 2 : 0, (m/2)*(1-cos(theta))
  omega south 1 2 : 0, (m/2)*(1-cos(theta))
  frame north south : cos(m*phi), sin(m*phi), -sin(m*phi), cos(m*phi)

bundle tangent_s2 on s2_stereo
  rank 2
  omega stereo_s 1 2 : -2*v/(1+u^2+v^2), 2*u/(1+u^2+v^2)
  omega stereo_n 1 2 : -2*v/(1+u^2+v^2), 2*u/(1+u^2+v^2)
  frame stereo_s stereo_n : (v^2-u^2)/(u^2+v^2), -2*u*v/(u^2+v^2), 2*u*v/(u^2+v^2), (v^2-u^2)/(u^2+v^2)

# constant sections of the flat bundles
section t2_const of trivial_t2_r2
  on main : 1, 0
section t2_const_b of trivial_t2_r2
  on main : 0.6, 0.8
section s1_const of trivial_s1_r2
  on main : 1, 0
section t2_linearish of trivial_t2_r2
  on main : sin(x), cos(y)

# monopole sections (m zeros in total, Euler number = m):
#   mono_a = cos(theta/2)^m            zero at the south pole only
#   mono_b = sin(theta/2)^m e^{im phi} zero at the north pole only
#   mono_mix = mono_a + mono_b         m zeros on the equator
section mono_a of monopole
  on north : cos(theta/2)^m, 0
  on south : sin(theta/2)^m*cos(m*phi), sin(theta/2)^m*sin(m*phi)
section mono_b of monopole
  on north : sin(theta/2)^m*cos(m*phi), sin(theta/2)^m*sin(m*phi)
  on south : cos(theta/2)^m, 0
section mono_mix of monopole
  on north : cos(theta/2)^m + sin(theta/2)^m*cos(m*phi), sin(theta/2)^m*sin(m*phi)
  on south : cos(theta/2)^m + sin(theta/2)^m*cos(m*phi), sin(theta/2)^m*sin(m*phi)

# coordinate vector field d/du of stereo_s; index-2 zero at the north pole
section ts2_du of tangent_s2
  on stereo_s : 2/(1+u^2+v^2), 0
  on stereo_n : -2*(u^2-v^2)/(1+u^2+v^2), -4*u*v/(1+u^2+v^2)

chain s1_circle on s1 dim 1
  cell main : 2*pi*u1

chain t2_loop on t2 dim 1
  cell main : 2*pi*u1, 0.5

chain t2_full on t2 dim 2
  cell main : 2*pi*u1, 2*pi*u2

chain equator on s2_polar dim 1
  cell north : pi/2, 2*pi*u1

chain latitude_pi3 on s2_polar dim 1
  cell north : pi/3, 2*pi*u1

chain cap_pi3 on s2_polar dim 2
  cell north : (pi/3)*u1, 2*pi*u2

chain upper_hemisphere on s2_polar dim 2
  cell north : (pi/2)*u1, 2*pi*u2

chain lower_hemisphere on s2_polar dim 2
  cell south : (pi/2)*u1, 2*pi*u2

chain full_sphere on s2_polar dim 2
  cell north : (pi/2)*u1, 2*pi*u2
  cell south : (pi/2)*u1, 2*pi*u2

chain band_pi3_equator on s2_polar dim 2
  cell north : pi/3 + (pi/6)*u1, 2*pi*u2

# cap parametrized with a rational warp so the quadrature error at moderate
# orders sits well above machine precision (convergence studies)
chain warped_sphere on s2_polar dim 2
  cell north : (pi/2)*u1*(1+warp)/(u1+warp), 2*pi*u2
  cell south : (pi/2)*u1*(1+warp)/(u1+warp), 2*pi*u2

chain equator_stereo on s2_stereo dim 1
  cell stereo_s : cos(2*pi*u1), sin(2*pi*u1)

chain latitude_pi3_stereo on s2_stereo dim 1
  cell stereo_s : sqrt(3)*cos(2*pi*u1), sqrt(3)*sin(2*pi*u1)

chain cap_pi3_stereo on s2_stereo dim 2
  cell stereo_n : (1/sqrt(3))*u1*cos(2*pi*u2), (1/sqrt(3))*u1*sin(2*pi*u2)

chain hemisphere_north_stereo on s2_stereo dim 2
  cell stereo_n : u1*cos(2*pi*u2), u1*sin(2*pi*u2)

chain hemisphere_south_stereo on s2_stereo dim 2
  cell stereo_s : u1*cos(2*pi*u2), u1*sin(2*pi*u2)

chain full_sphere_stereo on s2_stereo dim 2
  cell stereo_s : u1*cos(2*pi*u2), u1*sin(2*pi*u2)
  cell stereo_n : u1*cos(2*pi*u2), u1*sin(2*pi*u2)

# full sphere with every formal boundary edge away from the south pole: the
# southern piece is a square-to-disk cell whose cube boundary lands on the
# equator (admissible for the Dirac pair, period = 1)
chain sphere_adm on s2_stereo dim 2
  cell stereo_s : (2*u1-1)*sqrt(1-(2*u2-1)^2/2), (2*u2-1)*sqrt(1-(2*u1-1)^2/2)
  cell stereo_n : u1*cos(2*pi*u2), u1*sin(2*pi*u2)

form area_s2 on s2_polar degree 2
  coeff north theta phi : sin(theta)
  coeff south theta phi : sin(theta)

form dtheta_s1 on s1 degree 1
  coeff main theta : 1

# Dirac pair: omega = (area form)/(4 pi) with total integral 1, phi the
# monopole potential, singular at the south pole (origin of stereo_s)
pair dirac on s2_stereo degree 2
  modulus 1
  clearance 0.001
  omega stereo_s u v : 1/(pi*(1+u^2+v^2)^2)
  omega stereo_n u v : 1/(pi*(1+u^2+v^2)^2)
  phi stereo_s u : v/(2*pi*(u^2+v^2)*(1+u^2+v^2))
  phi stereo_s v : -u/(2*pi*(u^2+v^2)*(1+u^2+v^2))
  phi stereo_n u : -v/(2*pi*(1+u^2+v^2))
  phi stereo_n v : u/(2*pi*(1+u^2+v^2))
  singular phi stereo_s dim 0 : 0, 0
)FIX";

const std::string& builtin_fixture_text() { return kBuiltinFixtures; }

} // namespace gbc
