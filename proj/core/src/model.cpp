#include "ksrg/model.hpp"

#include <stdexcept>

namespace ksrg {

VertexId VertexSet::push_back(std::span<const double> position, double mark) {
    if (static_cast<int>(position.size()) != dim_) {
        throw std::invalid_argument("vertex position has wrong dimension");
    }
    if (!(mark >= 1.0)) throw std::invalid_argument("vertex mark must be >= 1");
    coords_.insert(coords_.end(), position.begin(), position.end());
    marks_.push_back(mark);
    return static_cast<VertexId>(marks_.size() - 1);
}

double kernel_eval(const Kernel& kernel, double w1, double w2, int d) {
    if (kernel.kind == KernelKind::Sum) {
        const double inv_d = 1.0 / d;
        return std::pow(std::pow(w1, inv_d) + std::pow(w2, inv_d), d);
    }
    const double hi = std::max(w1, w2);
    const double lo = std::min(w1, w2);
    return hi * std::pow(lo, kernel.sigma);
}

double distance_pow_d(std::span<const double> x, std::span<const double> y) {
    const std::size_t d = x.size();
    if (d == 1) return std::abs(x[0] - y[0]);
    double sq = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double diff = x[k] - y[k];
        sq += diff * diff;
    }
    if (d == 2) return sq;
    if (d % 2 == 0) return std::pow(sq, static_cast<double>(d / 2));
    return std::pow(std::sqrt(sq), static_cast<double>(d));
}

EdgeProbability connection_prob(const MarkedVertex& u, const MarkedVertex& v, const ModelParams& params) {
    const ConnectionRule rule(params);
    const double dist_d = distance_pow_d(u.position, v.position);
    return {rule.prob(rule.kernel(u.mark, v.mark), dist_d), dist_d == 0.0};
}

ConnectionRule::ConnectionRule(const ModelParams& params)
    : dim_(params.d),
      inv_d_(1.0 / params.d),
      beta_(params.beta),
      p_(params.p),
      alpha_(params.alpha.is_finite() ? params.alpha.value() : 0.0),
      sigma_(params.kernel.effective_sigma()),
      threshold_(params.threshold()),
      sum_kernel_(params.kernel.kind == KernelKind::Sum) {
    if (!threshold_) {
        if (alpha_ == 1.0) alpha_form_ = AlphaForm::One;
        else if (alpha_ == 1.5) alpha_form_ = AlphaForm::OneAndHalf;
        else if (alpha_ == 2.0) alpha_form_ = AlphaForm::Two;
        else if (alpha_ == 3.0) alpha_form_ = AlphaForm::Three;
    }
}

}  // namespace ksrg
