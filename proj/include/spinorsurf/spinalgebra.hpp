#pragma once
// Spin algebra of Euclidean 3-space in its 2-dimensional complex representation.
//
// Conventions (fixed for the whole library):
//   e_j acts by E_j = -i * sigma_j  (sigma_j: Pauli matrices), so that
//   E_j E_k + E_k E_j = -2 delta_jk and E_1 E_2 = E_3.
//   Hermitian product (a, b) = sum_k a_k conj(b_k), linear in the first slot.
//   Quaternionic structure alpha(c1, c2) = (-conj(c2), conj(c1)).

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "spinorsurf/errors.hpp"

namespace spinorsurf {

template <typename Scalar>
using Spinor = Eigen::Matrix<std::complex<Scalar>, 2, 1>;
template <typename Scalar>
using SpinMatrix = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

using Spinord = Spinor<double>;
using SpinMatrixd = SpinMatrix<double>;

// Clifford generator E_j for j in {0,1,2} (e1, e2, e3).
template <typename Scalar>
SpinMatrix<Scalar> clifford_generator(int j) {
    using C = std::complex<Scalar>;
    const C zero(0), one(1), i(0, 1);
    SpinMatrix<Scalar> m;
    switch (j) {
        case 0:  // -i sigma_x
            m << zero, -i, -i, zero;
            break;
        case 1:  // -i sigma_y
            m << zero, -one, one, zero;
            break;
        case 2:  // -i sigma_z
            m << -i, zero, zero, i;
            break;
        default:
            throw InvalidArgument("clifford_generator: index out of range");
    }
    return m;
}

template <typename Derived>
SpinMatrix<typename Derived::Scalar> clifford_matrix(const Eigen::MatrixBase<Derived>& v) {
    using Scalar = typename Derived::Scalar;
    using C = std::complex<Scalar>;
    const C i(0, 1);
    // v1 E1 + v2 E2 + v3 E3, written out
    SpinMatrix<Scalar> m;
    m << -i * v(2), -i * v(0) - v(1), -i * v(0) + v(1), i * v(2);
    return m;
}

template <typename Derived>
Spinor<typename Derived::Scalar> clifford_mul(const Eigen::MatrixBase<Derived>& v,
                                              const Spinor<typename Derived::Scalar>& phi) {
    return clifford_matrix(v) * phi;
}

// Clifford action of a tangent vector given by its coefficients in (e1, e2).
template <typename Scalar>
Spinor<Scalar> tangent_mul(const Eigen::Matrix<Scalar, 2, 1>& x, const Spinor<Scalar>& phi) {
    return clifford_mul(Eigen::Matrix<Scalar, 3, 1>(x(0), x(1), Scalar(0)), phi);
}

// (a, b), linear in a.
template <typename Scalar>
std::complex<Scalar> inner(const Spinor<Scalar>& a, const Spinor<Scalar>& b) {
    return a(0) * std::conj(b(0)) + a(1) * std::conj(b(1));
}

template <typename Scalar>
Spinor<Scalar> alpha(const Spinor<Scalar>& phi) {
    return Spinor<Scalar>(-std::conj(phi(1)), std::conj(phi(0)));
}

template <typename Scalar>
struct SplitSpinor {
    Spinor<Scalar> plus;
    Spinor<Scalar> minus;
};

namespace detail {
template <typename Derived>
void require_unit(const Eigen::MatrixBase<Derived>& n, typename Derived::Scalar tol) {
    using std::abs;
    if (!(abs(n.norm() - 1) <= tol)) throw InvalidArgument("normal vector is not a unit vector");
}
}  // namespace detail

// phi = phi+ + phi-, with i N . phi(+/-) = +/- phi(+/-).
template <typename Derived>
SplitSpinor<typename Derived::Scalar> split_pm(const Spinor<typename Derived::Scalar>& phi,
                                               const Eigen::MatrixBase<Derived>& normal,
                                               typename Derived::Scalar tol = 1e-10) {
    using Scalar = typename Derived::Scalar;
    detail::require_unit(normal, tol);
    const std::complex<Scalar> i(0, 1);
    const Spinor<Scalar> inphi = i * clifford_mul(normal, phi);
    return {Scalar(0.5) * (phi + inphi), Scalar(0.5) * (phi - inphi)};
}

// phi* = phi+ - i phi-
template <typename Derived>
Spinor<typename Derived::Scalar> star_spinor(const Spinor<typename Derived::Scalar>& phi,
                                             const Eigen::MatrixBase<Derived>& normal,
                                             typename Derived::Scalar tol = 1e-10) {
    using Scalar = typename Derived::Scalar;
    const auto s = split_pm(phi, normal, tol);
    return s.plus - std::complex<Scalar>(0, 1) * s.minus;
}

// Unit quaternion (w, x, y, z) -> w + x E1 + y E2 + z E3.
template <typename Scalar>
SpinMatrix<Scalar> spin_matrix(const Eigen::Quaternion<Scalar>& q) {
    using C = std::complex<Scalar>;
    SpinMatrix<Scalar> u = SpinMatrix<Scalar>::Identity() * C(q.w());
    u += C(q.x()) * clifford_generator<Scalar>(0);
    u += C(q.y()) * clifford_generator<Scalar>(1);
    u += C(q.z()) * clifford_generator<Scalar>(2);
    return u;
}

// One of the two SU(2) elements U with U E_j U* = sum_k R_kj E_k.
template <typename Scalar>
SpinMatrix<Scalar> spin_lift(const Eigen::Matrix<Scalar, 3, 3>& rotation) {
    Eigen::Quaternion<Scalar> q(rotation);
    q.normalize();
    if (q.w() < 0) q.coeffs() = -q.coeffs();
    return spin_matrix(q);
}

// Rotation angle between two rotations, from their relative rotation.
template <typename Scalar>
Scalar rotation_angle(const Eigen::Matrix<Scalar, 3, 3>& a, const Eigen::Matrix<Scalar, 3, 3>& b) {
    using std::acos;
    using std::clamp;
    const Scalar c = ((a.transpose() * b).trace() - 1) / 2;
    return acos(clamp(c, Scalar(-1), Scalar(1)));
}

// Field of spin lifts over a rectangular node grid (nu x nv, node index j*nu + i).
struct SpinLiftField {
    std::vector<SpinMatrixd> lifts;
    // -1 when the lift changes sign across the identified edge of a periodic direction.
    double seam_u = 1.0;
    double seam_v = 1.0;
};

// Continuous lift of a rotation field. Signs propagate breadth-first from `base`
// over grid adjacency (row-major neighbour order). Neighbouring rotations must
// differ by less than pi/2, otherwise LiftAmbiguity is thrown.
SpinLiftField su2_lift_grid(const std::vector<Eigen::Matrix3d>& rotations, int nu, int nv, bool periodic_u,
                            bool periodic_v, int base);

}  // namespace spinorsurf
