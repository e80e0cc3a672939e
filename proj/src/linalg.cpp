#include "rig/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

namespace rig {

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

double Matrix::inf_norm() const
{
    double norm = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
            row += std::abs(a_[i * n_ + j]);
        norm = std::max(norm, row);
    }
    return norm;
}

Matrix& Matrix::operator*=(double s)
{
    for (double& v : a_)
        v *= s;
    return *this;
}

Matrix& Matrix::operator+=(const Matrix& other)
{
    for (std::size_t k = 0; k < a_.size(); ++k)
        a_[k] += other.a_[k];
    return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs)
{
    const std::size_t n = lhs.size();
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const double lik = lhs(i, k);
            if (lik == 0.0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += lik * rhs(k, j);
        }
    }
    return out;
}

void Matrix::multiply(const double* x, double* y) const
{
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
            acc += a_[i * n_ + j] * x[j];
        y[i] = acc;
    }
}

LuFactorization::LuFactorization(const Matrix& a) : lu_(a), perm_(a.size())
{
    const std::size_t n = lu_.size();
    if (n == 0 || n > 16)
        throw std::length_error("LuFactorization supports 1..16 unknowns, got " + std::to_string(n));
    double maxnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            maxnorm = std::max(maxnorm, std::abs(lu_(i, j)));
    const double threshold = 1e-14 * maxnorm;

    for (std::size_t i = 0; i < n; ++i)
        perm_[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = col;
        double pivot = std::abs(lu_(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(lu_(r, col)) > pivot) {
                pivot = std::abs(lu_(r, col));
                pivot_row = r;
            }
        }
        if (pivot <= threshold)
            throw SingularMatrixError("singular matrix: pivot " + std::to_string(pivot) +
                                      " at column " + std::to_string(col));
        if (pivot_row != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(lu_(col, j), lu_(pivot_row, j));
            std::swap(perm_[col], perm_[pivot_row]);
        }
        const double inv = 1.0 / lu_(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double m = lu_(r, col) * inv;
            lu_(r, col) = m;
            for (std::size_t j = col + 1; j < n; ++j)
                lu_(r, j) -= m * lu_(col, j);
        }
    }
}

void LuFactorization::solve(double* b) const
{
    const std::size_t n = lu_.size();
    double x[16];  // size guarded in the constructor
    for (std::size_t i = 0; i < n; ++i)
        x[i] = b[perm_[i]];
    // forward substitution, unit lower triangle
    for (std::size_t i = 1; i < n; ++i) {
        double acc = x[i];
        for (std::size_t j = 0; j < i; ++j)
            acc -= lu_(i, j) * x[j];
        x[i] = acc;
    }
    // back substitution
    for (std::size_t i = n; i-- > 0;) {
        double acc = x[i];
        for (std::size_t j = i + 1; j < n; ++j)
            acc -= lu_(i, j) * x[j];
        x[i] = acc / lu_(i, i);
    }
    for (std::size_t i = 0; i < n; ++i)
        b[i] = x[i];
}

Matrix matrix_exponential(const Matrix& a)
{
    const std::size_t n = a.size();

    // Scale so the power series converges fast, square back afterwards.
    int squarings = 0;
    double norm = a.inf_norm();
    while (norm > 0.5) {
        norm *= 0.5;
        ++squarings;
    }

    Matrix scaled = a;
    scaled *= std::ldexp(1.0, -squarings);

    Matrix sum = Matrix::identity(n);
    Matrix term = Matrix::identity(n);
    for (int k = 1; k <= 64; ++k) {
        term = term * scaled;
        term *= 1.0 / static_cast<double>(k);
        sum += term;
        if (term.inf_norm() <= 1e-18 * sum.inf_norm())
            break;
    }

    for (int s = 0; s < squarings; ++s)
        sum = sum * sum;
    return sum;
}

}  // namespace rig
