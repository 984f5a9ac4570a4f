#pragma once

#include <vector>

namespace vorwave {

/// General banded matrix with LU factorization and partial pivoting
/// (LAPACK band storage: kl extra superdiagonals for pivot fill).
class BandedMatrix {
public:
    BandedMatrix(int n, int kl, int ku);

    int n() const { return n_; }
    void add(int i, int j, double v);
    void set(int i, int j, double v);
    double get(int i, int j) const;

    /// Factor in place. Returns false on an exactly-zero pivot.
    bool factor();

    /// Solve A x = b using the factorization; b is overwritten with x.
    void solve(std::vector<double>& b) const;

private:
    size_t idx(int i, int j) const {
        return static_cast<size_t>(j) * ldab_ + (kl_ + ku_ + i - j);
    }
    void check_band(int i, int j) const;
    int n_, kl_, ku_, ldab_;
    bool factored_ = false;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
};

} // namespace vorwave
