#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rig {

/// Dense square matrix, row-major. Sized for the small systems this
/// toolkit deals in (6x6 state matrices, 7x7 augmented ones).
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    static Matrix identity(std::size_t n);

    std::size_t size() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

    const double* data() const { return a_.data(); }
    double* data() { return a_.data(); }

    /// Max absolute row sum.
    double inf_norm() const;

    Matrix& operator*=(double s);
    Matrix& operator+=(const Matrix& other);

    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);

    /// y = A x
    void multiply(const double* x, double* y) const;

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// Thrown when a factorization meets a pivot below the singularity threshold.
struct SingularMatrixError : std::runtime_error {
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// LU factorization with partial pivoting. Factor once, solve many times.
/// A pivot of magnitude below 1e-14 times the matrix max-norm is treated
/// as singular.
class LuFactorization {
public:
    explicit LuFactorization(const Matrix& a);

    /// Solves A x = b in place (b becomes x).
    void solve(double* b) const;

    std::size_t size() const { return lu_.size(); }

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

/// exp(A) by scaling-and-squaring over a truncated power series.
Matrix matrix_exponential(const Matrix& a);

}  // namespace rig
