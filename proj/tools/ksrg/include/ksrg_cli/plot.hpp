#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ksrg/experiments.hpp"

namespace ksrg::cli {

struct PlotResult {
    std::string svg;
    std::string statistic;
    /// Fit of log(value) on log(n); absent with fewer than 3 positive points.
    std::optional<ScalingFit> fit;
};

/// Log-log scatter of one statistic with its least-squares line. The slope
/// is printed in shortest round-trip form next to the predicted zeta_star.
/// Throws Error{Parse} when the statistic is absent from the rows.
PlotResult render_plot(const std::vector<ResultRow>& rows, const std::optional<std::string>& statistic,
                       const ExponentReport& exponents);

}  // namespace ksrg::cli
