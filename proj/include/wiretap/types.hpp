#pragma once

#include <complex>
#include <Eigen/Dense>

namespace wiretap {

using cd = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using RowC = Eigen::RowVectorXcd;
using Mat2C = Eigen::Matrix2cd;
using Vec2C = Eigen::Vector2cd;
using Row2C = Eigen::RowVector2cd;
using Vec2 = Eigen::Vector2d;

}  // namespace wiretap
