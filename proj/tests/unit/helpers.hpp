#pragma once

#include <Eigen/Dense>

#include "../support/oracles.hpp"

inline oracle::Matrix to_oracle(const Eigen::MatrixXd& m)
{
    oracle::Matrix out = oracle::zeros(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    }
    return out;
}

inline double max_diff(const Eigen::MatrixXd& a, const oracle::Matrix& b)
{
    return static_cast<double>(oracle::max_abs_diff(to_oracle(a), b));
}
