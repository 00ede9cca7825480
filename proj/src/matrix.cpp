#include "siegel/matrix.hpp"

#include <numeric>

namespace siegel {

Mat::Mat(FieldPtr field, int rows, int cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
    a_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), FieldValue::zero(field_));
}

Mat::Mat(FieldPtr field, int rows, int cols, std::vector<FieldValue> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
    if (a_.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
        throw DimensionMismatch("entry count does not match dimensions");
    for (const auto& v : a_) require_same(field_, v.spec());
}

Mat Mat::identity(FieldPtr field, int n) {
    Mat m(field, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, FieldValue::one(field));
    return m;
}

const FieldValue& Mat::at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw DimensionMismatch("matrix index out of range");
    return a_[static_cast<size_t>(r) * cols_ + c];
}

void Mat::set(int r, int c, FieldValue v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw DimensionMismatch("matrix index out of range");
    require_same(field_, v.spec());
    a_[static_cast<size_t>(r) * cols_ + c] = std::move(v);
}

Mat Mat::operator+(const Mat& o) const {
    require_same(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix add shape mismatch");
    Mat r(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const { return *this + (-o); }

Mat Mat::operator-() const {
    Mat r(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    require_same(field_, o.field_);
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Mat r(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const FieldValue& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const FieldValue& bkj = o.at(k, j);
                if (bkj.is_zero()) continue;
                r.set(i, j, r.at(i, j) + aik * bkj);
            }
        }
    return r;
}

Mat Mat::transpose() const {
    Mat r(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

Mat Mat::scaled(const FieldValue& c) const {
    Mat r(field_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

bool Mat::operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && field_->same(*o.field_) && a_ == o.a_;
}

bool Mat::is_zero() const {
    for (const auto& v : a_)
        if (!v.is_zero()) return false;
    return true;
}

bool Mat::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (i == j && !at(i, j).is_one()) return false;
            if (i != j && !at(i, j).is_zero()) return false;
        }
    return true;
}

Mat Mat::col(int c) const {
    Mat r(field_, rows_, 1);
    for (int i = 0; i < rows_; ++i) r.set(i, 0, at(i, c));
    return r;
}

// ---------------------------------------------------------------------------
// Gaussian elimination
// ---------------------------------------------------------------------------

namespace {

// Row echelon reduction of [A | B] in place; returns pivot columns of A.
// Pivot choice: first nonzero in the column (exact fields make magnitude
// irrelevant, and the fixed rule keeps results deterministic).
std::vector<int> forward_eliminate(std::vector<std::vector<FieldValue>>& M, int acols,
                                   const FieldPtr& field) {
    std::vector<int> pivot_cols;
    int rows = static_cast<int>(M.size());
    int row = 0;
    for (int col = 0; col < acols && row < rows; ++col) {
        int pr = -1;
        for (int i = row; i < rows; ++i)
            if (!M[i][col].is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(M[row], M[pr]);
        FieldValue inv = M[row][col].inv();
        for (size_t j = static_cast<size_t>(col); j < M[row].size(); ++j)
            M[row][j] = M[row][j] * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == row || M[i][col].is_zero()) continue;
            FieldValue f = M[i][col];
            for (size_t j = static_cast<size_t>(col); j < M[i].size(); ++j)
                M[i][j] = M[i][j] - f * M[row][j];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    (void)field;
    return pivot_cols;
}

std::vector<std::vector<FieldValue>> augmented(const Mat& A, const Mat* B) {
    std::vector<std::vector<FieldValue>> M;
    M.reserve(static_cast<size_t>(A.rows()));
    for (int i = 0; i < A.rows(); ++i) {
        std::vector<FieldValue> row;
        row.reserve(static_cast<size_t>(A.cols() + (B ? B->cols() : 0)));
        for (int j = 0; j < A.cols(); ++j) row.push_back(A.at(i, j));
        if (B)
            for (int j = 0; j < B->cols(); ++j) row.push_back(B->at(i, j));
        M.push_back(std::move(row));
    }
    return M;
}

}  // namespace

Mat solve_exact(const Mat& A, const Mat& B) {
    require_same(A.field(), B.field());
    if (A.rows() != B.rows()) throw DimensionMismatch("solve: row counts differ");
    auto M = augmented(A, &B);
    std::vector<int> pivots = forward_eliminate(M, A.cols(), A.field());
    int rank = static_cast<int>(pivots.size());
    // rows beyond the rank must have vanished entirely
    for (int i = rank; i < A.rows(); ++i)
        for (int j = A.cols(); j < A.cols() + B.cols(); ++j)
            if (!M[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero())
                throw Inconsistent("solve: inconsistent system");
    if (rank < A.cols()) throw Singular("solve: matrix does not have full column rank");
    Mat X(A.field(), A.cols(), B.cols());
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < B.cols(); ++j)
            X.set(pivots[static_cast<size_t>(i)], j,
                  M[static_cast<size_t>(i)][static_cast<size_t>(A.cols() + j)]);
    return X;
}

Mat express_in_span(const std::vector<Mat>& vectors, const Mat& target) {
    if (vectors.empty()) {
        if (!target.is_zero()) throw NotInSpan("target outside span of empty family");
        return Mat(target.field(), 0, target.cols());
    }
    int dim = vectors.front().rows();
    Mat A(vectors.front().field(), dim, static_cast<int>(vectors.size()));
    for (size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].rows() != dim || vectors[j].cols() != 1)
            throw DimensionMismatch("express_in_span expects column vectors of equal dimension");
        for (int i = 0; i < dim; ++i) A.set(i, static_cast<int>(j), vectors[j].at(i, 0));
    }
    try {
        return solve_exact(A, target);
    } catch (const Inconsistent&) {
        throw NotInSpan("target outside the span of the given vectors");
    }
}

int rank(const Mat& A) {
    auto M = augmented(A, nullptr);
    return static_cast<int>(forward_eliminate(M, A.cols(), A.field()).size());
}

Mat kernel_basis(const Mat& A) {
    auto M = augmented(A, nullptr);
    std::vector<int> pivots = forward_eliminate(M, A.cols(), A.field());
    std::vector<bool> is_pivot(static_cast<size_t>(A.cols()), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < A.cols(); ++c)
        if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
    Mat K(A.field(), A.cols(), static_cast<int>(free_cols.size()));
    for (size_t fj = 0; fj < free_cols.size(); ++fj) {
        int fc = free_cols[fj];
        K.set(fc, static_cast<int>(fj), FieldValue::one(A.field()));
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            K.set(pivots[pi], static_cast<int>(fj), -M[pi][static_cast<size_t>(fc)]);
    }
    return K;
}

// ---------------------------------------------------------------------------
// EchelonBasis
// ---------------------------------------------------------------------------

EchelonBasis::EchelonBasis(FieldPtr field, int dim) : field_(std::move(field)), dim_(dim) {}

bool EchelonBasis::try_add(const Mat& v) {
    if (v.rows() != dim_ || v.cols() != 1) throw DimensionMismatch("echelon vector dimension");
    std::vector<FieldValue> w;
    w.reserve(static_cast<size_t>(dim_));
    for (int i = 0; i < dim_; ++i) w.push_back(v.at(i, 0));
    for (size_t k = 0; k < rows_.size(); ++k) {
        FieldValue c = w[static_cast<size_t>(pivots_[k])];
        if (c.is_zero()) continue;
        for (int j = 0; j < dim_; ++j) w[static_cast<size_t>(j)] = w[static_cast<size_t>(j)] - c * rows_[k][static_cast<size_t>(j)];
    }
    int pivot = -1;
    for (int j = 0; j < dim_; ++j)
        if (!w[static_cast<size_t>(j)].is_zero()) {
            pivot = j;
            break;
        }
    if (pivot < 0) return false;
    FieldValue inv = w[static_cast<size_t>(pivot)].inv();
    for (int j = 0; j < dim_; ++j) w[static_cast<size_t>(j)] = w[static_cast<size_t>(j)] * inv;
    rows_.push_back(std::move(w));
    pivots_.push_back(pivot);
    return true;
}

bool EchelonBasis::contains(const Mat& v) const {
    std::vector<FieldValue> w;
    w.reserve(static_cast<size_t>(dim_));
    for (int i = 0; i < dim_; ++i) w.push_back(v.at(i, 0));
    for (size_t k = 0; k < rows_.size(); ++k) {
        FieldValue c = w[static_cast<size_t>(pivots_[k])];
        if (c.is_zero()) continue;
        for (int j = 0; j < dim_; ++j) w[static_cast<size_t>(j)] = w[static_cast<size_t>(j)] - c * rows_[k][static_cast<size_t>(j)];
    }
    for (const auto& x : w)
        if (!x.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Blocks
// ---------------------------------------------------------------------------

BlockShape BlockShape::skew(const std::vector<int>& k) {
    BlockShape s;
    s.row_sizes = k;
    s.col_sizes.assign(k.rbegin(), k.rend());
    return s;
}

BlockShape BlockShape::square(const std::vector<int>& k) {
    BlockShape s;
    s.row_sizes = k;
    s.col_sizes = k;
    return s;
}

int BlockShape::row_offset(int a) const {
    if (a < 1 || a > row_blocks() + 1) throw BadBlockIndex("block row index out of range");
    return std::accumulate(row_sizes.begin(), row_sizes.begin() + (a - 1), 0);
}

int BlockShape::col_offset(int b) const {
    if (b < 1 || b > col_blocks() + 1) throw BadBlockIndex("block column index out of range");
    return std::accumulate(col_sizes.begin(), col_sizes.begin() + (b - 1), 0);
}

int BlockShape::total_rows() const { return std::accumulate(row_sizes.begin(), row_sizes.end(), 0); }
int BlockShape::total_cols() const { return std::accumulate(col_sizes.begin(), col_sizes.end(), 0); }

Mat block_get(const Mat& M, const BlockShape& shape, int a, int b) {
    if (a < 1 || a > shape.row_blocks() || b < 1 || b > shape.col_blocks())
        throw BadBlockIndex("block index out of range");
    if (M.rows() != shape.total_rows() || M.cols() != shape.total_cols())
        throw SizeMismatch("matrix does not match block shape");
    int r0 = shape.row_offset(a), c0 = shape.col_offset(b);
    int h = shape.row_sizes[static_cast<size_t>(a - 1)], w = shape.col_sizes[static_cast<size_t>(b - 1)];
    Mat out(M.field(), h, w);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) out.set(i, j, M.at(r0 + i, c0 + j));
    return out;
}

void block_set(Mat& M, const BlockShape& shape, int a, int b, const Mat& value) {
    if (a < 1 || a > shape.row_blocks() || b < 1 || b > shape.col_blocks())
        throw BadBlockIndex("block index out of range");
    if (M.rows() != shape.total_rows() || M.cols() != shape.total_cols())
        throw SizeMismatch("matrix does not match block shape");
    int h = shape.row_sizes[static_cast<size_t>(a - 1)], w = shape.col_sizes[static_cast<size_t>(b - 1)];
    if (value.rows() != h || value.cols() != w)
        throw SizeMismatch("block value has wrong dimensions");
    int r0 = shape.row_offset(a), c0 = shape.col_offset(b);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) M.set(r0 + i, c0 + j, value.at(i, j));
}

Mat block_unitriangular_inverse(const Mat& M, const std::vector<int>& block_sizes) {
    int n = std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
    if (M.rows() != n || M.cols() != n)
        throw SizeMismatch("matrix does not match block sizes");
    BlockShape shape = BlockShape::square(block_sizes);
    int nb = shape.row_blocks();
    for (int a = 1; a <= nb; ++a) {
        if (!block_get(M, shape, a, a).is_identity())
            throw NotUnitriangular("diagonal block is not the identity");
        for (int b = 1; b < a; ++b)
            if (!block_get(M, shape, a, b).is_zero())
                throw NotUnitriangular("nonzero block below the diagonal");
    }
    // back-substitution on block columns: X_{ab} = -sum_{c in (a,b]} M_{ac} X_{cb}
    Mat X = Mat::identity(M.field(), n);
    for (int b = 2; b <= nb; ++b)
        for (int a = b - 1; a >= 1; --a) {
            Mat acc = Mat::zero(M.field(), shape.row_sizes[static_cast<size_t>(a - 1)],
                                shape.col_sizes[static_cast<size_t>(b - 1)]);
            for (int c = a + 1; c <= b; ++c)
                acc = acc + block_get(M, shape, a, c) * block_get(X, shape, c, b);
            block_set(X, shape, a, b, -acc);
        }
    return X;
}

}  // namespace siegel
