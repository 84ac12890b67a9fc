#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ksrg/ext_real.hpp"

namespace ksrg {

enum class KernelKind { Interpolation, Sum };
enum class ProfileKind { Threshold, Polynomial };
enum class VertexProcess { Ppp, Lattice };

struct Kernel {
    KernelKind kind = KernelKind::Interpolation;
    double sigma = 0.0;  // ignored for the sum kernel

    /// Exponent formulas treat the sum kernel as sigma = 0.
    double effective_sigma() const { return kind == KernelKind::Sum ? 0.0 : sigma; }
};

/// Full parameter tuple of a kernel-based spatial random graph.
///
/// tau = inf encodes constant marks, alpha = inf encodes the threshold
/// profile. Use validate() before handing a tuple to any sampler.
struct ModelParams {
    int d = 1;
    ExtReal tau = ExtReal::pos_inf();
    ExtReal alpha = 2.0;
    Kernel kernel{};
    double beta = 1.0;
    double p = 1.0;
    ProfileKind profile = ProfileKind::Polynomial;
    VertexProcess vertex_process = VertexProcess::Ppp;

    bool constant_marks() const { return tau.is_pos_inf(); }
    bool threshold() const { return profile == ProfileKind::Threshold; }
};

/// Returns params unchanged or throws Error{RejectDomain|RejectInconsistent}.
const ModelParams& validate(const ModelParams& params);

enum class ConnectionType { Short, LowLow, HighLow, HighHigh };

std::string to_string(ConnectionType type);

/// Closed-form phase exponents of the downward vertex boundary.
struct ExponentReport {
    ExtReal zeta_short;
    ExtReal zeta_ll;
    ExtReal zeta_hl;
    ExtReal zeta_hh;
    double zeta_long = 0.0;
    double zeta_star = 0.0;

    std::optional<double> gamma_ll;
    std::optional<double> gamma_hl;
    std::optional<double> gamma_hh;
    std::optional<double> eta_ll;
    std::optional<double> eta_hl;
    std::optional<double> eta_hh;

    int multiplicity = 1;
    std::vector<ConnectionType> dominant_types;

    // Alternative cluster-decay upper-bound exponent 1/(sigma+1-(tau-1)/alpha),
    // present only when zeta_long = zeta_hh and sigma > tau - 1.
    std::optional<double> cluster_decay_alt_exponent;
};

inline constexpr double kExponentTieTolerance = 1e-9;

ExponentReport compute_exponents(const ModelParams& params);

/// True if the two values tie under kExponentTieTolerance (sentinels tie with
/// themselves only).
bool exponents_tie(const ExtReal& a, const ExtReal& b);

}  // namespace ksrg
