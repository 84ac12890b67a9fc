#include "ksrg/params.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "ksrg/error.hpp"

namespace ksrg {

std::string ExtReal::to_string() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    std::ostringstream out;
    out.precision(17);
    out << value_;
    return out.str();
}

ExtReal ExtReal::parse(const std::string& text) {
    if (text == "inf" || text == "+inf" || text == "infinity") return pos_inf();
    if (text == "-inf" || text == "-infinity") return neg_inf();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::Parse, "not a number: " + text);
    }
    return ExtReal(v);
}

const ModelParams& validate(const ModelParams& params) {
    auto reject = [](const std::string& what) { throw Error(ErrorCode::RejectDomain, what); };

    if (params.d < 1) reject("dimension d must be >= 1");
    if (params.tau.is_neg_inf() || (params.tau.is_finite() && !(params.tau.value() > 2.0))) {
        reject("tau must satisfy tau > 2 or tau = inf");
    }
    if (params.alpha.is_neg_inf() || (params.alpha.is_finite() && !(params.alpha.value() > 1.0))) {
        reject("alpha must satisfy alpha > 1 or alpha = inf");
    }
    if (params.kernel.kind == KernelKind::Interpolation && !(params.kernel.sigma >= 0.0)) {
        reject("sigma must be >= 0");
    }
    if (!(params.beta > 0.0) || !std::isfinite(params.beta)) reject("beta must be finite and > 0");
    if (!(params.p > 0.0 && params.p <= 1.0)) reject("p must lie in (0, 1]");

    const bool threshold = params.profile == ProfileKind::Threshold;
    if (threshold != params.alpha.is_pos_inf()) {
        throw Error(ErrorCode::RejectInconsistent,
                    "threshold profile must be paired with alpha = inf and vice versa");
    }
    return params;
}

std::string to_string(ConnectionType type) {
    switch (type) {
        case ConnectionType::Short: return "short";
        case ConnectionType::LowLow: return "ll";
        case ConnectionType::HighLow: return "hl";
        case ConnectionType::HighHigh: return "hh";
    }
    return "?";
}

bool exponents_tie(const ExtReal& a, const ExtReal& b) {
    if (!a.is_finite() || !b.is_finite()) return a.kind() == b.kind();
    return std::abs(a.value() - b.value()) <= kExponentTieTolerance;
}

ExponentReport compute_exponents(const ModelParams& raw) {
    const ModelParams& params = validate(raw);
    const bool tau_inf = params.tau.is_pos_inf();
    const bool alpha_inf = params.alpha.is_pos_inf();
    const double tau = params.tau.value();
    const double alpha = params.alpha.value();
    const double sigma = params.kernel.effective_sigma();
    const double d = params.d;

    ExponentReport r;
    r.zeta_short = (d - 1.0) / d;

    // Low-low: vanishes under the threshold profile.
    if (alpha_inf) {
        r.zeta_ll = ExtReal::neg_inf();
    } else {
        r.zeta_ll = 2.0 - alpha;
        r.eta_ll = 1.0 / alpha;
        if (!tau_inf) r.gamma_ll = (alpha - 1.0) / (tau - 1.0);
    }

    // High-low: needs both heavy marks and a polynomial profile.
    if (tau_inf || alpha_inf) {
        r.zeta_hl = ExtReal::neg_inf();
    } else {
        const double gamma_hl = 1.0 - 1.0 / alpha;
        r.gamma_hl = gamma_hl;
        r.zeta_hl = (tau - 1.0) / alpha - (tau - 2.0);
        r.eta_hl = 1.0 - gamma_hl * (tau - 1.0) / alpha;
    }

    // High-high: two-branch formula, alpha -> inf limit taken termwise.
    if (tau_inf) {
        r.zeta_hh = ExtReal::neg_inf();
    } else {
        const double inv_alpha = alpha_inf ? 0.0 : 1.0 / alpha;
        double gamma_hh = 0.0;
        if (tau <= sigma + 2.0) {
            gamma_hh = (1.0 - inv_alpha) / (sigma + 1.0 - (tau - 1.0) * inv_alpha);
        } else {
            gamma_hh = 1.0 / (sigma + 1.0);
        }
        r.gamma_hh = gamma_hh;
        r.zeta_hh = 1.0 - gamma_hh * (tau - 1.0);
        r.eta_hh = 1.0 - sigma * gamma_hh;
    }

    double zeta_long = 0.0;
    for (const ExtReal& z : {r.zeta_ll, r.zeta_hl, r.zeta_hh}) {
        if (z.is_finite()) zeta_long = std::max(zeta_long, z.value());
    }
    r.zeta_long = zeta_long;
    r.zeta_star = std::max(r.zeta_short.value(), zeta_long);

    const std::array<std::pair<ConnectionType, ExtReal>, 4> all{{
        {ConnectionType::Short, r.zeta_short},
        {ConnectionType::LowLow, r.zeta_ll},
        {ConnectionType::HighLow, r.zeta_hl},
        {ConnectionType::HighHigh, r.zeta_hh},
    }};
    ExtReal top = ExtReal::neg_inf();
    for (const auto& [type, z] : all) top = std::max(top, z, [](const ExtReal& a, const ExtReal& b) { return a < b; });
    r.multiplicity = 0;
    for (const auto& [type, z] : all) {
        if (exponents_tie(z, top)) {
            ++r.multiplicity;
            r.dominant_types.push_back(type);
        }
    }

    if (!tau_inf && r.zeta_hh.is_finite() && sigma > tau - 1.0 &&
        std::abs(r.zeta_hh.value() - zeta_long) <= kExponentTieTolerance) {
        const double inv_alpha = alpha_inf ? 0.0 : 1.0 / alpha;
        r.cluster_decay_alt_exponent = 1.0 / (sigma + 1.0 - (tau - 1.0) * inv_alpha);
    }
    return r;
}

}  // namespace ksrg
