#pragma once

#include <Eigen/Dense>
#include <limits>

#include "dtstc/channel.hpp"
#include "dtstc/qpsk.hpp"

namespace dtstc {

struct DetectionResult {
    Eigen::VectorXcd s_hat;
    int candidate_index = 0;
    double metric = 0.0;
};

// Noiseless received vector for every candidate symbol vector, one column
// per candidate. Columns follow build_candidate_set ordering.
inline Eigen::MatrixXcd build_candidate_responses(const SystemConfig& cfg,
                                                  const ChannelRealization& ch,
                                                  const CodeMatrix& code) {
    const Eigen::MatrixXcd cands = build_candidate_set(cfg.n);
    Eigen::MatrixXcd resp(cfg.received_length(), cands.cols());
    for (int c = 0; c < cands.cols(); ++c)
        resp.col(c) = noiseless_received(cfg, ch, code, cands.col(c));
    return resp;
}

// Exhaustive ML over the candidate responses; ties resolve to the lowest
// candidate index.
inline DetectionResult ml_detect(const Eigen::VectorXcd& r,
                                 const Eigen::MatrixXcd& responses, int n) {
    DetectionResult out;
    double best = std::numeric_limits<double>::infinity();
    for (int c = 0; c < responses.cols(); ++c) {
        const double d = (r - responses.col(c)).squaredNorm();
        if (d < best) {
            best = d;
            out.candidate_index = c;
        }
    }
    out.metric = best;
    out.s_hat = build_candidate_set(n).col(out.candidate_index);
    return out;
}

inline DetectionResult ml_detect(const Eigen::VectorXcd& r,
                                 const SystemConfig& cfg,
                                 const ChannelRealization& ch,
                                 const CodeMatrix& code) {
    return ml_detect(r, build_candidate_responses(cfg, ch, code), cfg.n);
}

}  // namespace dtstc
