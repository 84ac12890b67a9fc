#pragma once

#include <cmath>
#include <span>

#include "ksrg/params.hpp"
#include "ksrg/vertex_set.hpp"

namespace ksrg {

/// kappa_sigma(w1,w2) = max * min^sigma, or kappa_sum = (w1^(1/d) + w2^(1/d))^d.
double kernel_eval(const Kernel& kernel, double w1, double w2, int d);

/// ||x - y||^d in the plain (non-periodic) box.
double distance_pow_d(std::span<const double> x, std::span<const double> y);

struct EdgeProbability {
    double value = 0.0;
    bool degenerate = false;  // positions coincided; value is the cap p
};

/// Pairwise connection probability p(u, v).
EdgeProbability connection_prob(const MarkedVertex& u, const MarkedVertex& v, const ModelParams& params);

/// Precomputed form of the connection rule used on hot paths. Both
/// generators evaluate pairs through this class so that they agree bit for
/// bit on every probability.
class ConnectionRule {
public:
    explicit ConnectionRule(const ModelParams& params);

    double kernel(double w1, double w2) const {
        if (sum_kernel_) {
            if (dim_ == 1) return w1 + w2;
            const double s = std::pow(w1, inv_d_) + std::pow(w2, inv_d_);
            return dim_ == 2 ? s * s : std::pow(s, dim_);
        }
        const double hi = w1 < w2 ? w2 : w1;
        const double lo = w1 < w2 ? w1 : w2;
        if (sigma_ == 0.0) return hi;
        if (sigma_ == 1.0) return hi * lo;
        return hi * std::pow(lo, sigma_);
    }

    /// Probability from kappa and ||x-y||^d. dist_d == 0 yields the cap p.
    double prob(double kappa, double dist_d) const {
        const double scaled = beta_ * kappa;
        if (threshold_) return scaled >= dist_d ? p_ : 0.0;
        if (scaled >= dist_d) return p_;
        return p_ * ratio_pow(scaled / dist_d);
    }

    double pair_prob(double w1, std::span<const double> x1, double w2, std::span<const double> x2) const {
        return prob(kernel(w1, w2), distance_pow_d(x1, x2));
    }

    double p() const { return p_; }
    double beta() const { return beta_; }
    bool threshold() const { return threshold_; }
    int dim() const { return dim_; }

private:
    double ratio_pow(double r) const {
        switch (alpha_form_) {
            case AlphaForm::One: return r;
            case AlphaForm::OneAndHalf: return r * std::sqrt(r);
            case AlphaForm::Two: return r * r;
            case AlphaForm::Three: return r * r * r;
            default: return std::pow(r, alpha_);
        }
    }

    enum class AlphaForm { General, One, OneAndHalf, Two, Three };

    int dim_;
    double inv_d_;
    double beta_;
    double p_;
    double alpha_;
    double sigma_;
    bool threshold_;
    bool sum_kernel_;
    AlphaForm alpha_form_ = AlphaForm::General;
};

}  // namespace ksrg
