#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

namespace ksrg {

/// Real number extended with explicit +inf / -inf sentinels.
///
/// The sentinels are tracked as a separate kind rather than as IEEE
/// infinities so serialized output never depends on how a platform prints
/// `inf`. Text form is "inf" / "-inf" for the sentinels.
class ExtReal {
public:
    enum class Kind { Finite, PosInf, NegInf };

    constexpr ExtReal() = default;
    constexpr ExtReal(double v) : value_(v) {}  // NOLINT: implicit by design of the domain

    static constexpr ExtReal pos_inf() { return ExtReal(Kind::PosInf); }
    static constexpr ExtReal neg_inf() { return ExtReal(Kind::NegInf); }

    constexpr Kind kind() const { return kind_; }
    constexpr bool is_finite() const { return kind_ == Kind::Finite; }
    constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }

    /// Finite value; only meaningful when is_finite().
    constexpr double value() const { return value_; }

    /// IEEE view for arithmetic inside formulas.
    double as_double() const {
        switch (kind_) {
            case Kind::PosInf: return std::numeric_limits<double>::infinity();
            case Kind::NegInf: return -std::numeric_limits<double>::infinity();
            default: return value_;
        }
    }

    static ExtReal from_double(double v) {
        if (std::isinf(v)) return v > 0 ? pos_inf() : neg_inf();
        return ExtReal(v);
    }

    std::string to_string() const;
    /// Throws Error{Parse} on anything but a finite number or an inf token.
    static ExtReal parse(const std::string& text);

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
    }
    friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
        return a.as_double() <=> b.as_double();
    }

private:
    constexpr explicit ExtReal(Kind k) : kind_(k) {}

    Kind kind_ = Kind::Finite;
    double value_ = 0.0;
};

}  // namespace ksrg
