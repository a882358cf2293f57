#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dtstc {

// Exponentially-weighted recursive least squares estimating a matrix map
// W : C^x_len -> C^d_rows from regressor/desired pairs. The recursion keeps
// the exact identity W = Z * P, with Z the weighted cross-correlation and
// P the inverse of the regularized weighted autocorrelation Psi.
class RlsFilter {
  public:
    RlsFilter(int d_rows, int x_len, double lambda, double delta)
        : lambda_(lambda),
          w_(Eigen::MatrixXcd::Zero(d_rows, x_len)),
          z_(Eigen::MatrixXcd::Zero(d_rows, x_len)),
          p_(Eigen::MatrixXcd::Identity(x_len, x_len) / delta) {
        if (!(lambda > 0.0 && lambda <= 1.0))
            throw std::invalid_argument("rls: lambda must be in (0,1]");
        if (delta <= 0.0) throw std::invalid_argument("rls: delta must be > 0");
    }

    // Gain vector for regressor x with the current inverse correlation.
    Eigen::VectorXcd gain(const Eigen::VectorXcd& x) const {
        const Eigen::VectorXcd px = p_ * x;
        const double denom = lambda_ + std::real(x.dot(px));
        return px / denom;
    }

    // One update with pair (x, d). Returns the a-priori error d - W x.
    Eigen::VectorXcd step(const Eigen::VectorXcd& x,
                          const Eigen::VectorXcd& d) {
        const Eigen::VectorXcd k = gain(x);
        const Eigen::VectorXcd err = d - w_ * x;
        w_ += err * k.adjoint();
        const Eigen::RowVectorXcd xhp = x.adjoint() * p_;
        p_ = (p_ - k * xhp) / lambda_;
        p_ = 0.5 * (p_ + p_.adjoint().eval());  // keep P Hermitian
        z_ = lambda_ * z_ + d * x.adjoint();
        for (int i = 0; i < p_.rows(); ++i) p_(i, i) += perturb_p;
        return err;
    }

    // Positive definiteness check on the tracked inverse correlation.
    bool p_is_positive_definite() const {
        Eigen::LLT<Eigen::MatrixXcd> llt(p_);
        return llt.info() == Eigen::Success;
    }

    const Eigen::MatrixXcd& weights() const { return w_; }
    const Eigen::MatrixXcd& cross_correlation() const { return z_; }
    const Eigen::MatrixXcd& inverse_correlation() const { return p_; }
    double lambda() const { return lambda_; }

    // Diagonal perturbation injected into P after every step; zero in
    // normal operation, used as a negative control in verification.
    double perturb_p = 0.0;

  private:
    double lambda_;
    Eigen::MatrixXcd w_;
    Eigen::MatrixXcd z_;
    Eigen::MatrixXcd p_;
};

// Closed-form exponentially-weighted least squares over a full sample
// history, with the same initial regularization as the recursion.
inline Eigen::MatrixXcd batch_ls_oracle(
    const std::vector<Eigen::VectorXcd>& xs,
    const std::vector<Eigen::VectorXcd>& ds, double lambda, double delta) {
    if (xs.empty() || xs.size() != ds.size())
        throw std::invalid_argument("batch_ls_oracle: bad sample history");
    const int x_len = static_cast<int>(xs.front().size());
    const int d_rows = static_cast<int>(ds.front().size());
    const std::size_t n = xs.size();
    Eigen::MatrixXcd psi = std::pow(lambda, static_cast<double>(n)) * delta *
                           Eigen::MatrixXcd::Identity(x_len, x_len);
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(d_rows, x_len);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = std::pow(lambda, static_cast<double>(n - 1 - i));
        psi += w * xs[i] * xs[i].adjoint();
        z += w * ds[i] * xs[i].adjoint();
    }
    return z * psi.inverse();
}

}  // namespace dtstc
