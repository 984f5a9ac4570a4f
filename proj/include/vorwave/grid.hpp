#pragma once

#include <cstddef>
#include <vector>

namespace vorwave {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

/// Problem parameters. The wave period is fixed to 2*pi (wavenumber k = 1).
struct WaveParameters {
    double g = 9.81;   // gravitational acceleration, > 0
    double p0 = -1.0;  // relative mass flux, < 0
    int nq = 128;      // periodic q-samples, even, >= 16
    int np = 64;       // p-intervals, >= 8
    double tol = 1e-10;
    int max_iter = 25;

    void validate() const; // throws DomainError on bad ranges
};

/// Uniform grid on the fixed rectangle [-pi, pi) x [p0, 0].
/// q_i = -pi + i*dq for i in [0, nq) (periodic, no duplicate at +pi);
/// p_j = p0 + j*dp for j in [0, np], so j = 0 is the bed and j = np the surface.
struct HodographGrid {
    int nq = 0;
    int np = 0;
    double p0 = 0.0;
    double dq = 0.0;
    double dp = 0.0;

    HodographGrid() = default;
    HodographGrid(int nq_, int np_, double p0_);

    double q(int i) const { return -kPi + dq * i; }
    double p(int j) const { return p0 + dp * j; }
    int rows() const { return np + 1; }
    int crest_index() const { return nq / 2; } // q = 0
    int trough_index() const { return 0; }     // q = -pi (== pi)
};

/// Dense real field on a HodographGrid, stored row-major by p-level.
class GridField {
public:
    GridField() = default;
    GridField(int nq, int rows, double fill = 0.0)
        : nq_(nq), rows_(rows), v_(static_cast<size_t>(nq) * rows, fill) {}

    int nq() const { return nq_; }
    int rows() const { return rows_; }
    double& at(int i, int j) { return v_[static_cast<size_t>(j) * nq_ + i]; }
    double at(int i, int j) const { return v_[static_cast<size_t>(j) * nq_ + i]; }
    /// q-index with periodic wrap (accepts i in [-nq, 2nq)).
    double atw(int i, int j) const {
        if (i < 0) i += nq_;
        else if (i >= nq_) i -= nq_;
        return at(i, j);
    }
    double* row(int j) { return v_.data() + static_cast<size_t>(j) * nq_; }
    const double* row(int j) const { return v_.data() + static_cast<size_t>(j) * nq_; }
    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    size_t size() const { return v_.size(); }

    double max_abs() const;

private:
    int nq_ = 0;
    int rows_ = 0;
    std::vector<double> v_;
};

// Discrete calculus on grid fields (kernel-dispatched).
GridField diff_q(const GridField& f, const HodographGrid& g);
GridField diff_p(const GridField& f, const HodographGrid& g);
GridField diff_qq(const GridField& f, const HodographGrid& g);
GridField diff_pp(const GridField& f, const HodographGrid& g);

/// Full-period integral of one p-row (trapezoid; exact for trig polynomials
/// of degree < nq/2).
double integrate_q_period(const double* row, int nq, double dq);

/// Integral over the half period q in [0, pi] (trapezoid with endpoint halves;
/// node q = pi is the wrap of node 0).
double integrate_q_half(const double* row, int nq, double dq);

} // namespace vorwave
