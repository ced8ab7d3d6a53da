#include "shadow/linalg.hpp"

#include <cassert>
#include <sstream>

#include "shadow/errors.hpp"

namespace shadow {

bool Vec::is_zero() const {
    for (const auto& x : v_)
        if (sgn(x) != 0) return false;
    return true;
}

Vec& Vec::operator+=(const Vec& o) {
    assert(size() == o.size());
    for (int i = 0; i < size(); ++i) v_[i] += o[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& o) {
    assert(size() == o.size());
    for (int i = 0; i < size(); ++i) v_[i] -= o[i];
    return *this;
}

Vec& Vec::operator*=(const Rational& r) {
    for (auto& x : v_) x *= r;
    return *this;
}

Vec operator+(Vec a, const Vec& b) { return a += b; }
Vec operator-(Vec a, const Vec& b) { return a -= b; }
Vec operator*(const Rational& r, Vec a) { return a *= r; }

Rational dot(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    Rational s = 0;
    for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational norm_sq(const Vec& a) { return dot(a, a); }

Rational approx_inv_norm(const Vec& v) {
    Rational nsq = norm_sq(v);
    if (sgn(nsq) == 0) throw ZeroRow();
    if (auto root = exact_sqrt(nsq)) return 1 / *root;
    Rational hi = 1 / sqrt_lower(nsq);
    Rational r = round_down_to_denominator(hi, default_denominator_bound());
    if (sgn(r) <= 0) r = 1 / sqrt_upper(nsq);  // norm too large for the bound
    return r;
}

std::string to_string(const Vec& v) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << to_string(v[i]);
    }
    os << ")";
    return os.str();
}

Mat::Mat(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        assert(static_cast<int>(r.size()) == cols_);
        for (const auto& x : r) a_.push_back(x);
    }
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Vec Mat::row(int i) const {
    Vec v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

void Mat::set_row(int i, const Vec& v) {
    assert(v.size() == cols_);
    for (int j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

Vec Mat::col(int j) const {
    Vec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat Mat::times(const Mat& o) const {
    assert(cols_ == o.rows_);
    Mat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& aik = (*this)(i, k);
            if (sgn(aik) == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

Vec Mat::times(const Vec& x) const {
    assert(cols_ == x.size());
    Vec r(rows_);
    for (int i = 0; i < rows_; ++i) {
        Rational s = 0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

Mat Mat::select_rows(const std::vector<int>& idx) const {
    Mat r(static_cast<int>(idx.size()), cols_);
    for (int i = 0; i < r.rows(); ++i) {
        assert(idx[i] >= 0 && idx[i] < rows_);
        for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
    }
    return r;
}

namespace {

// Gauss-Jordan on [m | rhs]; pivot on first nonzero entry per column.
// Returns false when m is singular.
bool gauss_jordan(Mat& m, Mat& rhs) {
    const int n = m.rows();
    assert(m.cols() == n && rhs.rows() == n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (sgn(m(i, col)) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return false;
        if (piv != col) {
            for (int j = 0; j < n; ++j) swap(m(piv, j), m(col, j));
            for (int j = 0; j < rhs.cols(); ++j) swap(rhs(piv, j), rhs(col, j));
        }
        Rational inv_p = 1 / m(col, col);
        for (int j = 0; j < n; ++j) m(col, j) *= inv_p;
        for (int j = 0; j < rhs.cols(); ++j) rhs(col, j) *= inv_p;
        for (int i = 0; i < n; ++i) {
            if (i == col || sgn(m(i, col)) == 0) continue;
            Rational f = m(i, col);
            for (int j = 0; j < n; ++j) m(i, j) -= f * m(col, j);
            for (int j = 0; j < rhs.cols(); ++j) rhs(i, j) -= f * rhs(col, j);
        }
    }
    return true;
}

}  // namespace

Vec solve_square(const Mat& m, const Vec& rhs) {
    assert(m.rows() == m.cols() && m.rows() == rhs.size());
    Mat a = m;
    Mat b(m.rows(), 1);
    for (int i = 0; i < rhs.size(); ++i) b(i, 0) = rhs[i];
    if (!gauss_jordan(a, b)) throw SingularMatrix();
    Vec x(m.rows());
    for (int i = 0; i < m.rows(); ++i) x[i] = b(i, 0);
    return x;
}

Mat inverse(const Mat& m) {
    assert(m.rows() == m.cols());
    Mat a = m;
    Mat b = Mat::identity(m.rows());
    if (!gauss_jordan(a, b)) throw SingularMatrix();
    return b;
}

std::vector<Vec> inverse_columns(const Mat& m) {
    Mat inv = inverse(m);
    std::vector<Vec> cols;
    cols.reserve(static_cast<size_t>(inv.cols()));
    for (int j = 0; j < inv.cols(); ++j) cols.push_back(inv.col(j));
    return cols;
}

std::pair<Mat, Mat> gauss_column_transform(const Mat& a, const std::vector<int>& basis_rows) {
    assert(static_cast<int>(basis_rows.size()) == a.cols());
    Mat ab = a.select_rows(basis_rows);
    Mat u;
    try {
        u = inverse(ab);
    } catch (const SingularMatrix&) {
        throw SingularBasis();
    }
    return {a.times(u), u};
}

int rank(const Mat& m) {
    Mat a = m;
    int r = 0;
    const int rows = a.rows(), cols = a.cols();
    for (int col = 0; col < cols && r < rows; ++col) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (sgn(a(i, col)) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) swap(a(piv, j), a(r, j));
        for (int i = r + 1; i < rows; ++i) {
            if (sgn(a(i, col)) == 0) continue;
            Rational f = a(i, col) / a(r, col);
            for (int j = col; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

Rational determinant(const Mat& m) {
    assert(m.rows() == m.cols());
    Mat a = m;
    const int n = a.rows();
    Rational det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (sgn(a(i, col)) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (sgn(a(i, col)) == 0) continue;
            Rational f = a(i, col) / a(col, col);
            for (int j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

Vec nullspace_vector(const Mat& m) {
    const int rows = m.rows(), cols = m.cols();
    Mat a = m;
    // Row echelon with column pivot tracking.
    std::vector<int> pivot_col;
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (sgn(a(i, col)) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) swap(a(piv, j), a(r, j));
        for (int i = 0; i < rows; ++i) {
            if (i == r || sgn(a(i, col)) == 0) continue;
            Rational f = a(i, col) / a(r, col);
            for (int j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }
    Vec x(cols);
    // Find first free column, back-substitute pivot rows against it.
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    int free_col = -1;
    for (int j = 0; j < cols; ++j)
        if (!is_pivot[static_cast<size_t>(j)]) {
            free_col = j;
            break;
        }
    if (free_col < 0) return x;  // full column rank, only the zero vector
    x[free_col] = 1;
    for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) {
        int pc = pivot_col[static_cast<size_t>(i)];
        x[pc] = -a(i, free_col) / a(i, pc);
    }
    return x;
}

}  // namespace shadow
