#include "vorwave/banded.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace vorwave {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1),
      ab_(static_cast<size_t>(n) * (2 * kl + ku + 1), 0.0), ipiv_(n, 0) {}

void BandedMatrix::check_band(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_ || j - i > ku_ || i - j > kl_)
        throw std::logic_error("BandedMatrix: entry (" + std::to_string(i) + "," +
                               std::to_string(j) + ") outside the declared band");
}

void BandedMatrix::add(int i, int j, double v) {
    check_band(i, j);
    ab_[idx(i, j)] += v;
}

void BandedMatrix::set(int i, int j, double v) {
    check_band(i, j);
    ab_[idx(i, j)] = v;
}

double BandedMatrix::get(int i, int j) const {
    if (j - i > ku_ + (factored_ ? kl_ : 0) || i - j > kl_) return 0.0;
    return ab_[idx(i, j)];
}

bool BandedMatrix::factor() {
    // Unblocked banded LU with partial pivoting (dgbtf2 layout).
    const int kv = kl_ + ku_;
    for (int j = 0; j < n_; ++j) {
        const int km = std::min(kl_, n_ - 1 - j);
        // pivot search in column j, rows j .. j+km
        int jp = 0;
        double amax = std::fabs(ab_[idx(j, j)]);
        for (int t = 1; t <= km; ++t) {
            double a = std::fabs(ab_[idx(j + t, j)]);
            if (a > amax) {
                amax = a;
                jp = t;
            }
        }
        ipiv_[j] = j + jp;
        if (amax == 0.0) return false;
        const int ju = std::min(j + kv, n_ - 1);
        if (jp != 0)
            for (int c = j; c <= ju; ++c) std::swap(ab_[idx(j, c)], ab_[idx(j + jp, c)]);
        const double pivot = ab_[idx(j, j)];
        for (int t = 1; t <= km; ++t) ab_[idx(j + t, j)] /= pivot;
        for (int c = j + 1; c <= ju; ++c) {
            const double ujc = ab_[idx(j, c)];
            if (ujc != 0.0)
                for (int t = 1; t <= km; ++t) ab_[idx(j + t, c)] -= ab_[idx(j + t, j)] * ujc;
        }
    }
    factored_ = true;
    return true;
}

void BandedMatrix::solve(std::vector<double>& b) const {
    if (!factored_ || static_cast<int>(b.size()) != n_)
        throw std::logic_error("BandedMatrix::solve: not factored or size mismatch");
    const int kv = kl_ + ku_;
    for (int j = 0; j < n_; ++j) {
        if (ipiv_[j] != j) std::swap(b[j], b[ipiv_[j]]);
        const int km = std::min(kl_, n_ - 1 - j);
        for (int t = 1; t <= km; ++t) b[j + t] -= ab_[idx(j + t, j)] * b[j];
    }
    for (int j = n_ - 1; j >= 0; --j) {
        b[j] /= ab_[idx(j, j)];
        const int top = std::max(0, j - kv);
        for (int i = top; i < j; ++i) b[i] -= ab_[idx(i, j)] * b[j];
    }
}

} // namespace vorwave
