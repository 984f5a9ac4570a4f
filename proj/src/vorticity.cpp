#include "vorwave/vorticity.hpp"
#include "vorwave/errors.hpp"

#include <cmath>
#include <string>

namespace vorwave {

namespace {

double horner(const std::vector<double>& c, double s) {
    double v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * s + c[i];
    return v;
}

std::vector<double> derivative_coeffs(const std::vector<double>& c) {
    std::vector<double> d;
    for (size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
    return d;
}

} // namespace

RangeSign classify_sign(const std::vector<double>& poly, double s_max, int samples) {
    bool has_pos = false, has_neg = false;
    // Scale-aware zero band so that e.g. coefficients {1, -2} classify as mixed,
    // not as "nonnegative with rounding".
    double scale = 0.0;
    for (double c : poly) scale = std::max(scale, std::fabs(c));
    const double tol = 1e-14 * std::max(1.0, scale);
    for (int k = 0; k < samples; ++k) {
        double s = s_max * static_cast<double>(k) / static_cast<double>(samples - 1);
        double v = horner(poly, s);
        if (v > tol) has_pos = true;
        if (v < -tol) has_neg = true;
    }
    if (has_pos && has_neg) return RangeSign::mixed;
    if (has_pos) return RangeSign::nonnegative;
    if (has_neg) return RangeSign::nonpositive;
    return RangeSign::zero;
}

VorticitySpec::VorticitySpec(std::vector<double> coefficients, double s_max)
    : coeffs_(std::move(coefficients)), s_max_(s_max) {
    if (!(s_max_ > 0.0)) throw DomainError("VorticitySpec: s_max must be positive (s_max = -p0)");
    is_zero_ = true;
    for (double c : coeffs_)
        if (c != 0.0) { is_zero_ = false; break; }
    sign_ = classify_sign(coeffs_, s_max_);
    dsign_ = classify_sign(derivative_coeffs(coeffs_), s_max_);
    ddsign_ = classify_sign(derivative_coeffs(derivative_coeffs(coeffs_)), s_max_);
    strictly_negative_ = (sign_ == RangeSign::nonpositive);
}

double VorticitySpec::eval(double s) const {
    if (s < -1e-12 || s > s_max_ + 1e-12)
        throw DomainError("vorticity evaluated at s=" + std::to_string(s) +
                          " outside [0, " + std::to_string(s_max_) + "]");
    return horner(coeffs_, s);
}

double VorticitySpec::eval_derivative(double s) const {
    if (s < -1e-12 || s > s_max_ + 1e-12)
        throw DomainError("vorticity derivative evaluated at s=" + std::to_string(s) +
                          " outside [0, " + std::to_string(s_max_) + "]");
    return horner(derivative_coeffs(coeffs_), s);
}

double VorticitySpec::eval_second_derivative(double s) const {
    if (s < -1e-12 || s > s_max_ + 1e-12)
        throw DomainError("vorticity second derivative evaluated at s=" + std::to_string(s) +
                          " outside [0, " + std::to_string(s_max_) + "]");
    return horner(derivative_coeffs(derivative_coeffs(coeffs_)), s);
}

} // namespace vorwave
