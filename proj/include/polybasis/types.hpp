#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace polybasis {

using cdouble = std::complex<double>;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;
using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generator set is not a set of rotations or does not close to a polyhedral group.
class InvalidGenerators : public Error {
 public:
  using Error::Error;
};

/// Irrep data that violates a group-theoretic identity (homomorphism, character sums).
class CorruptedIrrep : public Error {
 public:
  using Error::Error;
};

/// A numerical construction did not reach its tolerance.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent persisted data.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace polybasis
