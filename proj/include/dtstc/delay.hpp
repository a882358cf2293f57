#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace dtstc {

// (delta_max + rows) x rows shift matrix: identity block starting at row
// delta_k, zeros elsewhere. Columns are orthonormal by construction.
inline Eigen::MatrixXd build_delay_matrix(int delta_k, int delta_max, int rows) {
    if (rows < 1) throw std::invalid_argument("build_delay_matrix: rows >= 1");
    if (delta_k < 0 || delta_k > delta_max)
        throw std::invalid_argument("build_delay_matrix: need 0 <= delta_k <= delta_max");
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(delta_max + rows, rows);
    d.block(delta_k, 0, rows, rows).setIdentity();
    return d;
}

// Delay operator in the slot-major stacked sample space: shifts a relay's
// t-slot block of n_dest-sample groups down by delta_k slots.
inline Eigen::MatrixXd delay_operator(int delta_k, int delta_max, int slots,
                                      int n_dest) {
    const Eigen::MatrixXd s = build_delay_matrix(delta_k, delta_max, slots);
    Eigen::MatrixXd out =
        Eigen::MatrixXd::Zero(s.rows() * n_dest, s.cols() * n_dest);
    for (int r = 0; r < s.rows(); ++r)
        for (int c = 0; c < s.cols(); ++c)
            if (s(r, c) != 0.0)
                out.block(r * n_dest, c * n_dest, n_dest, n_dest)
                    .setIdentity();
    return out;
}

}  // namespace dtstc
