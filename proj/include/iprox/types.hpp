#pragma once

#include <Eigen/Dense>

namespace iprox {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace iprox
