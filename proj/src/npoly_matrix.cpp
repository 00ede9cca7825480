#include "siegel/npoly_matrix.hpp"

namespace siegel {

NPolyMatrix::NPolyMatrix(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
}

NPolyMatrix::NPolyMatrix(FieldPtr field, int rows, int cols, std::vector<Mat> coeffs)
    : field_(std::move(field)), rows_(rows), cols_(cols), coeffs_(std::move(coeffs)) {
    for (const auto& m : coeffs_) {
        require_same(field_, m.field());
        if (m.rows() != rows_ || m.cols() != cols_)
            throw DimensionMismatch("coefficient matrix dimensions differ");
    }
    trim();
}

NPolyMatrix NPolyMatrix::from_entries(FieldPtr field, int rows, int cols,
                                      const std::vector<std::vector<Poly>>& entries) {
    NPolyMatrix out(field, rows, cols);
    if (static_cast<int>(entries.size()) != rows)
        throw DimensionMismatch("entry rows differ from declared rows");
    int deg = -1;
    for (const auto& row : entries) {
        if (static_cast<int>(row.size()) != cols)
            throw DimensionMismatch("entry cols differ from declared cols");
        for (const auto& p : row) deg = std::max(deg, p.degree());
    }
    for (int i = 0; i <= deg; ++i) out.coeffs_.push_back(Mat::zero(field, rows, cols));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            for (int i = 0; i <= entries[static_cast<size_t>(r)][static_cast<size_t>(c)].degree(); ++i)
                out.coeffs_[static_cast<size_t>(i)].set(
                    r, c, entries[static_cast<size_t>(r)][static_cast<size_t>(c)].coeff(i));
    out.trim();
    return out;
}

NPolyMatrix NPolyMatrix::scalar_power(FieldPtr field, int n, const FieldValue& c, int power) {
    NPolyMatrix out(field, n, n);
    if (c.is_zero()) return out;
    for (int i = 0; i < power; ++i) out.coeffs_.push_back(Mat::zero(field, n, n));
    out.coeffs_.push_back(Mat::identity(field, n).scaled(c));
    return out;
}

Mat NPolyMatrix::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Mat::zero(field_, rows_, cols_);
    return coeffs_[static_cast<size_t>(i)];
}

void NPolyMatrix::set_coeff(int i, Mat m) {
    require_same(field_, m.field());
    if (m.rows() != rows_ || m.cols() != cols_) throw DimensionMismatch("coefficient dimensions differ");
    if (i < 0) throw DimensionMismatch("negative N-degree");
    while (static_cast<int>(coeffs_.size()) <= i) coeffs_.push_back(Mat::zero(field_, rows_, cols_));
    coeffs_[static_cast<size_t>(i)] = std::move(m);
    trim();
}

Poly NPolyMatrix::entry(int r, int c) const {
    std::vector<FieldValue> coeffs;
    coeffs.reserve(coeffs_.size());
    for (const auto& m : coeffs_) coeffs.push_back(m.at(r, c));
    return Poly(field_, std::move(coeffs));
}

NPolyMatrix NPolyMatrix::operator+(const NPolyMatrix& o) const {
    require_same(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("npoly add shape mismatch");
    NPolyMatrix out(field_, rows_, cols_);
    int deg = std::max(degree(), o.degree());
    for (int i = 0; i <= deg; ++i) out.coeffs_.push_back(coeff(i) + o.coeff(i));
    out.trim();
    return out;
}

NPolyMatrix NPolyMatrix::operator-(const NPolyMatrix& o) const { return *this + (-o); }

NPolyMatrix NPolyMatrix::operator-() const {
    NPolyMatrix out(field_, rows_, cols_);
    for (const auto& m : coeffs_) out.coeffs_.push_back(-m);
    return out;
}

NPolyMatrix NPolyMatrix::transpose() const {
    NPolyMatrix out(field_, cols_, rows_);
    for (const auto& m : coeffs_) out.coeffs_.push_back(m.transpose());
    return out;
}

bool NPolyMatrix::operator==(const NPolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !field_->same(*o.field_)) return false;
    int deg = std::max(degree(), o.degree());
    for (int i = 0; i <= deg; ++i)
        if (coeff(i) != o.coeff(i)) return false;
    return true;
}

bool NPolyMatrix::is_zero() const {
    for (const auto& m : coeffs_)
        if (!m.is_zero()) return false;
    return true;
}

void NPolyMatrix::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

NPolyMatrix npoly_matmul(const NPolyMatrix& A, const NPolyMatrix& B) {
    require_same(A.field(), B.field());
    if (A.cols() != B.rows()) throw DimensionMismatch("npoly product shape mismatch");
    NPolyMatrix out(A.field(), A.rows(), B.cols());
    if (A.degree() < 0 || B.degree() < 0) return out;
    for (int mu = 0; mu <= A.degree() + B.degree(); ++mu) {
        Mat acc = Mat::zero(A.field(), A.rows(), B.cols());
        for (int g = std::max(0, mu - B.degree()); g <= std::min(mu, A.degree()); ++g)
            acc = acc + A.coeff(g) * B.coeff(mu - g);
        out.set_coeff(mu, std::move(acc));
    }
    out.trim();
    return out;
}

}  // namespace siegel
