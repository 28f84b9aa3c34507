#pragma once

#include <Eigen/Core>

namespace conedist {

using Vector = Eigen::VectorXd;

}  // namespace conedist
