#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>

#include "stackvol/errors.hpp"
#include "stackvol/quadrature.hpp"

namespace stackvol {

template <typename Scalar>
using Matrix2c = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;

/// Pauli matrix k in {0, 1, 2}.
template <typename Scalar>
Matrix2c<Scalar> pauli(int k) {
  using C = std::complex<Scalar>;
  Matrix2c<Scalar> s;
  switch (k) {
    case 0: s << C(0), C(1), C(1), C(0); break;
    case 1: s << C(0), C(0, -1), C(0, 1), C(0); break;
    default: s << C(1), C(0), C(0), C(-1); break;
  }
  return s;
}

/// su(2) basis u_k = i * pauli(k).
template <typename Scalar>
Matrix2c<Scalar> su2_basis(int k) {
  return std::complex<Scalar>(0, 1) * pauli<Scalar>(k);
}

template <typename Scalar>
Matrix2c<Scalar> su2_element(const Vector3<Scalar>& x) {
  return x(0) * su2_basis<Scalar>(0) + x(1) * su2_basis<Scalar>(1) + x(2) * su2_basis<Scalar>(2);
}

/// Inverse of su2_element on su(2): tr(pauli_k X) = 2i x_k.
template <typename Scalar>
Vector3<Scalar> su2_coordinates(const Matrix2c<Scalar>& X) {
  Vector3<Scalar> x;
  for (int k = 0; k < 3; ++k) x(k) = (pauli<Scalar>(k) * X).trace().imag() / 2;
  return x;
}

/// Matrix of ad_X = [X, .] in the basis u_k.
template <typename Scalar>
Matrix3<Scalar> su2_ad(const Vector3<Scalar>& x) {
  const Matrix2c<Scalar> X = su2_element(x);
  Matrix3<Scalar> ad;
  for (int k = 0; k < 3; ++k) {
    const Matrix2c<Scalar> u = su2_basis<Scalar>(k);
    ad.col(k) = su2_coordinates<Scalar>(X * u - u * X);
  }
  return ad;
}

/// Density of left Haar measure in exponential coordinates,
/// |det((1 - exp(-ad X)) / ad X)|, summed as a power series.
template <typename Scalar>
Scalar su2_haar_density(const Vector3<Scalar>& x) {
  const Matrix3<Scalar> minus_ad = -su2_ad(x);
  Matrix3<Scalar> term = Matrix3<Scalar>::Identity();
  Matrix3<Scalar> sum = term;
  for (int k = 1; k < 200; ++k) {
    term = term * minus_ad / static_cast<Scalar>(k + 1);
    sum += term;
    if (term.norm() < std::numeric_limits<Scalar>::epsilon() * sum.norm()) break;
  }
  return std::abs(sum.determinant());
}

/// Lattice data of the maximal torus exp(R u_3) and the positive root on it.
template <typename Scalar>
struct CartanData {
  Vector3<Scalar> lattice_generator;  ///< generator of ker(exp) on the Cartan line
  Scalar generator_radius{0};         ///< spectral radius of the generator as a 2x2 matrix
  Scalar root_on_generator{0};        ///< positive root evaluated on the generator
  Scalar haar_volume{0};              ///< volume of SU(2) for Lebesgue measure in the u_k coordinates
};

template <typename Scalar>
Scalar spectral_radius(const Matrix2c<Scalar>& X) {
  Eigen::ComplexEigenSolver<Matrix2c<Scalar>> solver(X, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

/// Chamber coordinate of X: the t >= 0 with X conjugate to t * generator.
/// In the u_k coordinates the spectral radius of X is |x|.
template <typename Scalar>
Scalar chamber_parameter(const Vector3<Scalar>& x, const CartanData<Scalar>& cartan) {
  return x.norm() / cartan.generator_radius;
}

template <typename Scalar>
CartanData<Scalar> su2_cartan() {
  const Scalar pi = static_cast<Scalar>(EIGEN_PI);
  CartanData<Scalar> c;
  const Vector3<Scalar> axis(0, 0, 1);
  const Matrix2c<Scalar> U = su2_element<Scalar>(axis);
  // exp(s U) has eigenvalues exp(+-i s |lambda|): the kernel is generated at s = 2 pi / |lambda|
  const Scalar lambda = spectral_radius<Scalar>(U);
  c.lattice_generator = (2 * pi / lambda) * axis;
  const Matrix2c<Scalar> E = su2_element<Scalar>(c.lattice_generator);
  const Matrix2c<Scalar> identity = Matrix2c<Scalar>::Identity();
  const Scalar closure = (E.exp() - identity).norm();
  const Scalar halfway = (Matrix2c<Scalar>(E / Scalar(2)).exp() - identity).norm();
  if (!(closure < 1e-9) || !(halfway > 1)) {
    throw NumericalError("lattice generator of the maximal torus failed the exp-periodicity check");
  }
  c.generator_radius = spectral_radius<Scalar>(E);

  Eigen::EigenSolver<Matrix3<Scalar>> ad(su2_ad<Scalar>(c.lattice_generator), false);
  c.root_on_generator = ad.eigenvalues().imag().cwiseAbs().maxCoeff();

  // Ad-invariant density: integrate radially up to the injectivity radius (half the lattice length)
  const Scalar reach = c.lattice_generator.norm() / 2;
  auto shell = [&](Scalar r) {
    return 4 * pi * r * r * su2_haar_density<Scalar>(Vector3<Scalar>(0, 0, r));
  };
  c.haar_volume = integrate_1d<Scalar>(shell, Scalar(0), reach, Scalar(1e-11)).value;
  return c;
}

}  // namespace stackvol
