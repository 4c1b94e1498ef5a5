// extreal.hpp — extended real values; divergences and exponents are finite or +inf

#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace explab {

/// Extended real number. Divergence outputs are finite or +inf; the psi
/// cumulant functions may additionally be -inf (orthogonal supports).
class ExtReal {
public:
    constexpr ExtReal() = default;
    constexpr ExtReal(double v) : v_(v) {}

    static constexpr ExtReal infinity() {
        return ExtReal(std::numeric_limits<double>::infinity());
    }

    constexpr double value() const { return v_; }
    bool finite() const { return std::isfinite(v_); }
    bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
    bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }

    friend constexpr bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
    friend constexpr auto operator<=>(ExtReal a, ExtReal b) { return a.v_ <=> b.v_; }

    friend constexpr ExtReal operator+(ExtReal a, ExtReal b) { return {a.v_ + b.v_}; }
    friend constexpr ExtReal operator-(ExtReal a, ExtReal b) { return {a.v_ - b.v_}; }
    friend constexpr ExtReal operator*(double t, ExtReal a) { return {t * a.v_}; }
    friend constexpr ExtReal operator-(ExtReal a) { return {-a.v_}; }

private:
    double v_ = 0.0;
};

inline std::string to_string(ExtReal x) {
    if (x.is_pos_inf()) return "inf";
    if (x.is_neg_inf()) return "-inf";
    return std::to_string(x.value());
}

inline std::ostream& operator<<(std::ostream& os, ExtReal x) {
    if (x.is_pos_inf()) return os << "inf";
    if (x.is_neg_inf()) return os << "-inf";
    return os << x.value();
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace explab
