#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "entsec/states.hpp"

namespace entsec {

enum class BaseSpace : std::uint8_t { S2, S3, S4, T4 };

/// Meshed base space. Vertices carry both parametric coordinates and a
/// canonical point representation (embedding coordinates for spheres, angles
/// for the torus). Cell measures are analytic per coordinate block, so the
/// total volume matches the continuum value.
struct Mesh {
    BaseSpace base;
    int resolution;
    Eigen::MatrixXd params; // per-vertex parametric coordinates
    Eigen::MatrixXd points; // per-vertex canonical coordinates
    std::vector<std::vector<int>> cells; // oriented corner loops / blocks
    Eigen::VectorXd cell_volume;
    std::array<int, 4> grid{}; // structured-grid dims where applicable

    int n_vertices() const { return static_cast<int>(points.rows()); }
    double total_volume() const { return cell_volume.sum(); }
};

/// Latitude-longitude mesh with polar caps; n latitude bands, 2n longitudes.
Mesh make_mesh_s2(int n);
/// Hopf-coordinate grid (eta, theta1, theta2) with n cells per coordinate.
Mesh make_mesh_s3(int n);
/// Polar-angle levels times a Hopf subgrid; n_phi bands, and an S3 grid of
/// (max(2, n_s3/2), n_s3, n_s3) points per interior level.
Mesh make_mesh_s4(int n_phi, int n_s3);
/// Periodic n^4 grid over [0, 2pi)^4.
Mesh make_mesh_t4(int n);

/// Two-chart bundle: the transition maps south-chart fiber coordinates to
/// north-chart ones, evaluated at a base point in canonical coordinates.
struct ChartedBundle {
    BaseSpace base;
    int fiber_dim;
    std::function<Eigen::MatrixXcd(const Eigen::VectorXd& x)> transition;
};

ChartedBundle trivial_bundle(BaseSpace base, int fiber_dim);
/// Line bundle over S^2 with first Chern number c1 (equatorial transition
/// e^{i c1 phi}).
ChartedBundle line_bundle_s2(int c1);
/// The C^2 bundle over S^4 with c2 = 1, clutched by the unit quaternions.
ChartedBundle hopf_bundle_s4();
ChartedBundle conj_bundle(const ChartedBundle& b);
ChartedBundle tensor_bundle(const ChartedBundle& b1, const ChartedBundle& b2);
ChartedBundle sym2_bundle(const ChartedBundle& b);    // fiber 2 -> 3
ChartedBundle lambda2_bundle(const ChartedBundle& b); // fiber 2 -> 1

/// q = w + xi + yj + zk -> [[w+ix, y+iz], [-y+iz, w-ix]]; special unitary.
Eigen::Matrix2cd hopf_clutching(const Eigen::Vector4d& q);

Eigen::Vector4d quat_mul(const Eigen::Vector4d& p, const Eigen::Vector4d& q);

/// Symmetric-square restriction of a 2x2 map in the orthonormal basis
/// {|00>, (|01>+|10>)/sqrt(2), |11>}.
Eigen::Matrix3cd sym2_restrict(const Eigen::Matrix2cd& c);

struct DegreeResult {
    int degree;
    double residual; // |raw - degree| before rounding
};

/// Degree of a map S^3 -> SU(2) by the Maurer-Cartan volume integral
/// (1/24pi^2) of tr((c^-1 dc)^3), cellwise finite differences on an S3 mesh.
/// Orientation convention: the identity map on unit quaternions has degree +1.
DegreeResult clutching_degree(const std::function<Eigen::Matrix2cd(const Eigen::Vector4d&)>& c,
                              const Mesh& mesh);

/// Winding number of t: S^1 -> U(1) from principal-branch phase increments.
int winding_c1(const std::function<cxd(double)>& t, int n_samples);

/// First Chern number of the phase bundle of a projective section over an S^2
/// mesh: plaquette-wise Berry-phase sum / 2pi. `values` holds one nonvanishing
/// fiber vector per vertex (rows).
int chern1_berry(const Mesh& s2, const Eigen::MatrixXcd& values);

/// Degree-1 collapse map T^4 -> S^4: fundamental domain [0,2pi)^4, radial
/// smooth bump around the center, boundary region sent to the south pole.
Eigen::Matrix<double, 5, 1> collapse_t4_to_s4(const Eigen::Vector4d& angles);
/// Polar angle phi(f(x)) of the collapse image.
double collapse_polar_angle(const Eigen::Vector4d& angles);
/// Radius in the fundamental domain mapping to the equator phi = pi/2.
double collapse_equator_radius();

/// Pull an S^4 bundle back along the collapse map.
ChartedBundle pullback_t4(const ChartedBundle& s4_bundle);

/// Blend/polar coordinate in [0, pi] of a mesh vertex: polar angle for
/// spheres, collapse polar angle for T^4.
double polar_angle(const Mesh& mesh, int v);

/// Overlap parameter passed to a bundle transition for a mesh vertex.
Eigen::VectorXd transition_point(const Mesh& mesh, int v);

/// Mesh-sampled section in up to two charts.
struct SectionField {
    const Mesh* mesh = nullptr;
    ChartedBundle bundle;
    Eigen::MatrixXcd north, south; // n_vertices x fiber_dim
    std::vector<std::uint8_t> in_north, in_south;
};

/// Max over overlap vertices of || north - transition * south ||.
double seam_check(const SectionField& s);

} // namespace entsec
