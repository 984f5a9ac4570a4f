#pragma once

#include <vector>

namespace vorwave {

/// Sign classification of a function sampled densely over an interval.
enum class RangeSign { zero, nonpositive, nonnegative, mixed };

/// Polynomial vorticity function gamma(s) on s in [0, s_max], s = -p.
/// An empty coefficient list is the irrotational case gamma == 0.
/// Sign flags are determined by dense sampling of the polynomial.
class VorticitySpec {
public:
    VorticitySpec() = default;
    VorticitySpec(std::vector<double> coefficients, double s_max);

    double eval(double s) const;            // throws DomainError outside [0, s_max]
    double eval_derivative(double s) const;
    double eval_second_derivative(double s) const;

    const std::vector<double>& coefficients() const { return coeffs_; }
    double s_max() const { return s_max_; }

    bool is_zero() const { return is_zero_; }
    RangeSign sign() const { return sign_; }
    RangeSign derivative_sign() const { return dsign_; }
    RangeSign second_derivative_sign() const { return ddsign_; }

    bool nonpositive() const { return sign_ == RangeSign::nonpositive || sign_ == RangeSign::zero; }
    bool strictly_negative_somewhere() const { return strictly_negative_; }

private:
    std::vector<double> coeffs_;
    double s_max_ = 0.0;
    bool is_zero_ = true;
    bool strictly_negative_ = false;
    RangeSign sign_ = RangeSign::zero;
    RangeSign dsign_ = RangeSign::zero;
    RangeSign ddsign_ = RangeSign::zero;
};

/// Brute-force sign classification by sampling; also used by the property tests.
RangeSign classify_sign(const std::vector<double>& poly, double s_max, int samples = 2001);

} // namespace vorwave
