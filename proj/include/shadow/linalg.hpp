#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "shadow/rational.hpp"

namespace shadow {

/// Dense rational vector with explicit dimension.
class Vec {
public:
    Vec() = default;
    explicit Vec(int n) : v_(static_cast<size_t>(n)) {}
    Vec(std::initializer_list<Rational> xs) : v_(xs) {}

    int size() const { return static_cast<int>(v_.size()); }
    Rational& operator[](int i) { return v_[static_cast<size_t>(i)]; }
    const Rational& operator[](int i) const { return v_[static_cast<size_t>(i)]; }

    bool operator==(const Vec& o) const { return v_ == o.v_; }
    bool is_zero() const;

    Vec& operator+=(const Vec& o);
    Vec& operator-=(const Vec& o);
    Vec& operator*=(const Rational& r);

    auto begin() { return v_.begin(); }
    auto end() { return v_.end(); }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

private:
    std::vector<Rational> v_;
};

Vec operator+(Vec a, const Vec& b);
Vec operator-(Vec a, const Vec& b);
Vec operator*(const Rational& r, Vec a);

Rational dot(const Vec& a, const Vec& b);
Rational norm_sq(const Vec& a);
std::string to_string(const Vec& v);

/// Rational approximation of 1/||v||: exact when ||v||^2 is a perfect
/// square, otherwise rounded down at the default denominator bound.
/// Never returns zero. Throws ZeroRow on a zero vector.
Rational approx_inv_norm(const Vec& v);

/// Dense rational matrix, row-major.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    Mat(std::initializer_list<std::initializer_list<Rational>> rows);

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Vec row(int i) const;
    void set_row(int i, const Vec& v);
    Vec col(int j) const;

    Mat transposed() const;
    Mat times(const Mat& o) const;
    Vec times(const Vec& x) const;

    /// Rows selected by `idx`, in the given order.
    Mat select_rows(const std::vector<int>& idx) const;

    bool operator==(const Mat& o) const = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

/// Unique solution of M x = rhs for invertible square M. Throws SingularMatrix.
Vec solve_square(const Mat& m, const Vec& rhs);

/// Inverse of a square matrix. Throws SingularMatrix.
Mat inverse(const Mat& m);

/// Columns of M^{-1}. Throws SingularMatrix.
std::vector<Vec> inverse_columns(const Mat& m);

/// Column transform U = A_B^{-1} so that (A U)_B = I_n; returns (A U, U).
/// Objectives transform as c -> U^T c. Throws SingularBasis when the basis
/// rows are dependent.
std::pair<Mat, Mat> gauss_column_transform(const Mat& a, const std::vector<int>& basis_rows);

int rank(const Mat& m);
Rational determinant(const Mat& m);

/// One nonzero vector in the null space of the rows of `m`, or a zero vector
/// when the rows have full column rank.
Vec nullspace_vector(const Mat& m);

}  // namespace shadow
